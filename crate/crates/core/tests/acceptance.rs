//! Acceptance gate. Runs without the libtest harness so that every criterion
//! prints exactly one line, then exits non-zero if any of them failed.

mod support;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use symsq::ampleness::{
    classify_log_symsq, intersection_table, log_canonical_sq, surface_invariants, AmpleStatus,
    Discrepancy, SurfaceKind, TestCurve,
};
use symsq::curve_model::{
    enumerate_stable_graphs, graphs_isomorphic, hyperelliptic_variants, parse_dual_graph,
    EnumerationOptions, IsoMode,
};
use symsq::local_algebra::{
    buchberger, equivariance_check, find_parametrization, minors_identity, paper_relations, reduce,
    s_polynomial, verify_parametrization, ActionBehaviour,
};
use symsq::mmp::{relative_canonical_model, relative_minimal_model, Rule, StableKind};
use symsq::reconstruction::{forget, reconstruct};
use symsq::stability::is_hilb2_stable;
use symsq::surface_model::build_hilb2_model;
use symsq::Hyperelliptic;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn expected_ample(g: u32, d: u32, flag: Hyperelliptic) -> bool {
    match g {
        0 => d > 3,
        1 => d > 2,
        2 => d > 1,
        3 if flag == Hyperelliptic::Yes => d > 0,
        _ => true,
    }
}

fn expected_nef(g: u32, d: u32) -> bool {
    match g {
        0 => d > 2,
        1 => d > 1,
        _ => true,
    }
}

fn ampleness_table() -> Outcome {
    let mut checked = 0;
    for g in 0..=6 {
        for d in 0..=6 {
            for flag in [Hyperelliptic::Yes, Hyperelliptic::No] {
                let verdict = match classify_log_symsq(g, d, flag) {
                    Err(_) if g <= 2 && flag == Hyperelliptic::No => continue,
                    Err(e) => return Err(format!("({g},{d},{flag:?}): {e}")),
                    Ok(v) => v,
                };
                checked += 1;
                let ample = verdict.status == AmpleStatus::Ample;
                ensure(ample == expected_ample(g, d, flag), || {
                    format!("ample mismatch at ({g},{d},{flag:?}): {}", verdict.status)
                })?;
                if (g, d) == (2, 0) {
                    ensure(
                        verdict.status == AmpleStatus::NotNef
                            && verdict.witness(TestCurve::Gamma) == Some(-2)
                            && verdict.discrepancy_flags == [Discrepancy::GenusTwoNefList],
                        || "genus-2 discrepancy not reported".into(),
                    )?;
                } else {
                    ensure(verdict.status.is_nef() == expected_nef(g, d), || {
                        format!("nef mismatch at ({g},{d},{flag:?}): {}", verdict.status)
                    })?;
                    ensure(verdict.discrepancy_flags.is_empty(), || {
                        format!("unexpected flag at ({g},{d})")
                    })?;
                }
                if verdict.status == AmpleStatus::NotNef {
                    ensure(verdict.witnesses.iter().any(|w| w.degree < 0), || {
                        format!("NotNef without a negative witness at ({g},{d})")
                    })?;
                }
            }
        }
    }
    Ok(format!("{checked} cases"))
}

fn closed_form() -> Outcome {
    let mut checked = 0u32;
    for g in 0..=200 {
        for d in 0..=400 {
            let expansion = intersection_table(g, d).log_canonical_expansion();
            ensure(log_canonical_sq(g, d) == expansion, || {
                format!("({g},{d}): {} vs {expansion}", log_canonical_sq(g, d))
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} exact checks"))
}

fn invariant_dichotomy() -> Outcome {
    for g1 in 0..=50 {
        for g2 in 0..=50 {
            let (chi, k_sq) = surface_invariants(SurfaceKind::Product { g1, g2 });
            ensure(k_sq == 8 * chi, || format!("product ({g1},{g2})"))?;
        }
    }
    for g in 0..=50 {
        let (chi, k_sq) = surface_invariants(SurfaceKind::SymSq { g });
        ensure((k_sq == 8 * chi) == (g == 1), || {
            format!("Sym^2 of genus {g}")
        })?;
    }
    Ok("2601 products, 51 symmetric squares".into())
}

fn round_trip() -> Outcome {
    let mut total = 0;
    for genus in 3..=5 {
        let opts = EnumerationOptions::new(genus, 5, false);
        let graphs = enumerate_stable_graphs(&opts).map_err(|e| e.to_string())?;
        let naive = support::naive_stable_graphs(genus, 5, false).len();
        ensure(graphs.len() == naive, || {
            format!(
                "genus {genus}: {} graphs, naive generator {naive}",
                graphs.len()
            )
        })?;
        for base in &graphs {
            for g in hyperelliptic_variants(base) {
                total += 1;
                let model = build_hilb2_model(&g).map_err(|e| format!("{g}: {e}"))?;
                let (minimal, _) = relative_minimal_model(&model);
                let report = reconstruct(&forget(&minimal)).map_err(|e| format!("{g}: {e}"))?;
                ensure(
                    graphs_isomorphic(&g, &report.graph, IsoMode::Strict).is_some(),
                    || format!("{g}\nrebuilt as\n{}", report.graph),
                )?;
            }
        }
    }
    Ok(format!("{total} curves, zero failures"))
}

fn examples_pipeline() -> Outcome {
    let run = |text: &str| {
        let graph = parse_dual_graph(text).map_err(|e| e.to_string())?;
        let model = build_hilb2_model(&graph).map_err(|e| e.to_string())?;
        relative_canonical_model(&model).map_err(|e| e.to_string())
    };
    let log_of = |log: &[symsq::mmp::ContractionMove]| -> Vec<(Rule, String)> {
        log.iter().map(|m| (m.rule, m.target.clone())).collect()
    };

    let (m, log) = run("component C1 genus=2\ncomponent C2 genus=1\nnode C1 C2")?;
    ensure(
        log_of(&log)
            == [
                (Rule::CollapseEllipticRuled, "Sym(C2)".to_string()),
                (Rule::BlowDownMinusOne, "Bl(C1,C2)".to_string()),
                (Rule::BlowDownMinusOne, "Sym(C1)".to_string()),
            ],
        || format!("elliptic tail log: {:?}", log_of(&log)),
    )?;
    let has_jacobian = m.components.iter().any(
        |c| matches!(&c.kind, StableKind::AbelianSurface { jacobian_of, .. } if jacobian_of == "C1"),
    );
    let has_product = m
        .components
        .iter()
        .any(|c| matches!(c.kind, StableKind::Product { .. }));
    ensure(
        m.components.len() == 2 && has_jacobian && has_product,
        || "elliptic tail components".into(),
    )?;
    ensure(
        m.gluing_curves.len() == 1
            && m.gluing_curves[0].curve_label == "C1"
            && m.gluing_curves[0].curve_genus == 2,
        || "elliptic tail gluing curve".into(),
    )?;

    let (m, log) = run("component A genus=3 hyperelliptic=true")?;
    ensure(
        log_of(&log) == [(Rule::BlowDownMinusTwo, "Sym(A)".to_string())]
            && matches!(m.components[0].kind, StableKind::SymSquareCanonical { .. }),
        || format!("genus 3 log: {:?}", log_of(&log)),
    )?;

    let (m, log) = run("component R genus=0\ncomponent E genus=1\nnode R E\nnode R E\nnode R E")?;
    ensure(
        log_of(&log) == [(Rule::CollapsePlaneComponent, "Sym(R)".to_string())]
            && m.components
                .iter()
                .any(|c| matches!(c.kind, StableKind::CollapsedPoint { .. })),
        || format!("rational bridge log: {:?}", log_of(&log)),
    )?;
    Ok("elliptic tail, smooth hyperelliptic genus 3, triple-node rational bridge".into())
}

fn local_algebra() -> Outcome {
    ensure(minors_identity().holds, || "minors do not match".into())?;

    let map = find_parametrization(2).map_err(|e| e.to_string())?;
    let report = verify_parametrization(&map);
    ensure(report.accepted() && report.equivariant(), || {
        format!("parametrization {map} rejected")
    })?;

    let basis = buchberger(&paper_relations()).map_err(|e| e.to_string())?;
    let gens = basis.generators();
    for (i, f) in gens.iter().enumerate() {
        for g in &gens[i + 1..] {
            ensure(
                reduce(&s_polynomial(f, g, basis.order()), &basis).is_zero(),
                || format!("S({f}, {g}) does not reduce to zero"),
            )?;
        }
    }

    let base = equivariance_check();
    let base = base.base_parameter();
    ensure(
        base.behaviour == ActionBehaviour::AntiInvariant && base.image == -&base.polynomial,
        || format!("xv - yu maps to {}", base.image),
    )?;
    Ok(format!("{map}; basis of {} elements", gens.len()))
}

fn stability_cross_check() -> Outcome {
    let mut total = 0;
    for genus in 2..=6 {
        let opts = EnumerationOptions::new(genus, 2 * genus as usize - 2, true);
        let graphs = enumerate_stable_graphs(&opts).map_err(|e| e.to_string())?;
        for base in &graphs {
            for g in hyperelliptic_variants(base) {
                total += 1;
                let report = is_hilb2_stable(&g).map_err(|e| format!("{g}: {e}"))?;
                ensure(report.classifier_agrees, || format!("disagreement on\n{g}"))?;
            }
        }
    }
    Ok(format!("{total} curves"))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (
            "ampleness classification table",
            Duration::from_secs(1),
            ampleness_table,
        ),
        (
            "closed-form self-intersection",
            Duration::from_secs(1),
            closed_form,
        ),
        (
            "K^2 = 8 chi dichotomy",
            Duration::from_secs(1),
            invariant_dichotomy,
        ),
        (
            "round-trip reconstruction",
            Duration::from_secs(60),
            round_trip,
        ),
        (
            "worked curves through the MMP",
            Duration::from_secs(1),
            examples_pipeline,
        ),
        (
            "local algebra of the bad point",
            Duration::from_secs(5),
            local_algebra,
        ),
        (
            "stability clause cross-check",
            Duration::from_secs(60),
            stability_cross_check,
        ),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let line = match outcome {
            Ok(detail) if elapsed <= *limit => format!("PASS  {name}: {detail}"),
            Ok(detail) => format!("FAIL  {name}: {detail}, but over the {limit:?} limit"),
            Err(why) => format!("FAIL  {name}: {why}"),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("criterion {} {line} [{:.3}s]", i + 1, elapsed.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
