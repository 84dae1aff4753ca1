use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use symsq::ampleness::{classify_log_symsq, intersection_table, AmpleStatus, TestCurve};
use symsq::curve_model::{
    enumerate_stable_graphs, graphs_isomorphic, hyperelliptic_variants, parse_dual_graph,
    CurveStability, EnumerationOptions, IsoMode,
};
use symsq::local_algebra::{
    buchberger, central_fiber_ideal, equivariance_check, find_parametrization, minors_identity,
    paper_relations, parse_ideal_file, verify_parametrization, AlgebraError, TermOrder,
};
use symsq::mmp::{
    relative_canonical_model, relative_minimal_model, CollapseImage, ContractionMove, StableKind,
    StableSurfaceModel,
};
use symsq::reconstruction::{forget, reconstruct as rebuild};
use symsq::stability::is_hilb2_stable;
use symsq::surface_model::{
    build_hilb2_model, point_census, ComponentKind, CurveRef, SurfaceModel,
};
use symsq::{DualGraph, Hyperelliptic};

use crate::render::{doc, domain, polynomial, table, Outcome};
use crate::{CliError, Flag, Order};

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_curve(path: &Path) -> Result<DualGraph, CliError> {
    parse_dual_graph(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn flag(f: Flag) -> Hyperelliptic {
    match f {
        Flag::Yes => Hyperelliptic::Yes,
        Flag::No => Hyperelliptic::No,
        Flag::Unknown => Hyperelliptic::Unknown,
    }
}

pub fn curve_check(path: &Path) -> Result<Outcome, CliError> {
    let g = read_curve(path)?;
    let stability = g.stability();
    let mut rows = vec![vec![
        "component".into(),
        "genus".into(),
        "hyperelliptic".into(),
        "delta".into(),
    ]];
    let mut comps = Vec::new();
    for (i, c) in g.components().iter().enumerate() {
        rows.push(vec![
            c.id.clone(),
            c.genus.to_string(),
            c.hyperelliptic.to_string(),
            g.delta_at(i).to_string(),
        ]);
        comps.push(json!({
            "id": c.id, "genus": c.genus, "hyperelliptic": c.hyperelliptic,
            "label": c.label, "delta": g.delta_at(i),
        }));
    }
    let mut text = match &stability {
        CurveStability::Stable => format!(
            "stable curve of arithmetic genus {}\n",
            g.arithmetic_genus()
        ),
        CurveStability::Unstable(reasons) => {
            let mut t = format!(
                "unstable curve of arithmetic genus {}\n",
                g.arithmetic_genus()
            );
            for r in reasons {
                t.push_str(&format!("  {r}\n"));
            }
            t
        }
    };
    text.push_str(&table(&rows));
    let doc = json!({
        "arithmetic_genus": g.arithmetic_genus(),
        "stability": doc(&stability),
        "components": comps,
        "node_count": g.node_count(),
    });
    Ok(Outcome::new(text, doc).negative_if(!stability.is_stable()))
}

pub fn curve_genus(path: &Path) -> Result<Outcome, CliError> {
    let g = read_curve(path)?;
    let p = g.arithmetic_genus();
    Ok(Outcome::new(
        p.to_string(),
        json!({ "arithmetic_genus": p }),
    ))
}

pub fn enumerate(
    genus: u32,
    max_components: Option<usize>,
    allow_self_nodes: bool,
    variants: bool,
    cap: usize,
) -> Result<Outcome, CliError> {
    let max_components = max_components.unwrap_or((2 * genus as usize).saturating_sub(2).max(1));
    let opts = EnumerationOptions {
        genus,
        max_components,
        allow_self_nodes,
        cap,
    };
    let mut graphs = enumerate_stable_graphs(&opts).map_err(domain)?;
    if variants {
        graphs = graphs.iter().flat_map(hyperelliptic_variants).collect();
    }
    let mut text = format!(
        "# {} stable graphs of genus {genus} with at most {max_components} components\n",
        graphs.len()
    );
    for (i, g) in graphs.iter().enumerate() {
        text.push_str(&format!("\n# graph {}\n{}", i + 1, g.to_curve_file()));
    }
    let doc = json!({
        "genus": genus,
        "max_components": max_components,
        "allow_self_nodes": allow_self_nodes,
        "hyperelliptic_variants": variants,
        "count": graphs.len(),
        "graphs": doc(&graphs),
    });
    Ok(Outcome::new(text, doc))
}

fn curve_ref(c: &CurveRef) -> String {
    format!("{} (genus {})", c.label, c.genus)
}

fn blown_up(n: u32) -> String {
    match n {
        1 => "blown up once".into(),
        n => format!("blown up {n} times"),
    }
}

fn model_text(m: &SurfaceModel) -> String {
    let mut rows = Vec::new();
    for c in &m.components {
        let what = match &c.kind {
            ComponentKind::SymSquare { curve, delta } => {
                format!("symmetric square of {}, delta {delta}", curve_ref(curve))
            }
            ComponentKind::ProductBlowup {
                factors,
                blowup_count,
            } => format!(
                "{} x {} {}",
                curve_ref(&factors[0]),
                curve_ref(&factors[1]),
                blown_up(*blowup_count)
            ),
        };
        let note = if c.ambiguous_kind {
            "  [numerically ambiguous]"
        } else {
            ""
        };
        rows.push(vec![format!("  {}", c.id), format!("{what}{note}")]);
    }
    let mut out = format!("components\n{}", table(&rows));
    let section = |title: &str, lines: Vec<String>| {
        if lines.is_empty() {
            String::new()
        } else {
            format!("{title}\n{}\n", lines.join("\n"))
        }
    };
    out.push_str(&section(
        "incidence curves",
        m.incidence_curves
            .iter()
            .map(|c| {
                format!(
                    "  {} -- {} along {} (genus {}) [{}]",
                    c.endpoints.0, c.endpoints.1, c.curve_label, c.curve_genus, c.origin
                )
            })
            .collect(),
    ));
    out.push_str(&section(
        "exceptional curves",
        m.exceptional_curves
            .iter()
            .map(|e| {
                format!(
                    "  on {} touching {} [{}]{}",
                    e.home,
                    if e.touches.is_empty() {
                        "nothing".into()
                    } else {
                        e.touches.join(", ")
                    },
                    e.origin,
                    if e.k_zero { " K-trivial" } else { "" }
                )
            })
            .collect(),
    ));
    out.push_str(&section(
        "point contacts",
        m.point_contacts
            .iter()
            .map(|p| format!("  {} . {} [{}]", p.endpoints.0, p.endpoints.1, p.origin))
            .collect(),
    ));
    out.push_str(&section(
        "collapsed curves",
        m.collapsed_curves
            .iter()
            .map(|c| {
                format!(
                    "  {} collapsed onto {} along {} (genus {}) [{}]",
                    c.collapsed_component, c.host, c.curve_label, c.curve_genus, c.origin
                )
            })
            .collect(),
    ));
    out
}

pub fn hilb2_model(path: &Path) -> Result<Outcome, CliError> {
    let g = read_curve(path)?;
    let model = build_hilb2_model(&g).map_err(domain)?;
    let census = point_census(&g);
    let mut text = model_text(&model);
    text.push_str(&format!(
        "bad points {}, pairs of distinct nodes {}\n",
        census.bad_points, census.distinct_node_pairs
    ));
    Ok(Outcome::new(text, doc(&model)))
}

pub fn hilb2_stability(path: &Path) -> Result<Outcome, CliError> {
    let g = read_curve(path)?;
    let report = is_hilb2_stable(&g).map_err(domain)?;
    let mut rows = vec![[
        "component",
        "genus",
        "hyperelliptic",
        "delta",
        "clause",
        "verdict",
        "classifier",
    ]
    .map(String::from)
    .to_vec()];
    for c in &report.components {
        rows.push(vec![
            c.id.clone(),
            c.genus.to_string(),
            c.hyperelliptic.to_string(),
            c.delta.to_string(),
            format!("{:?}", c.clause),
            if c.stable {
                "ok".into()
            } else {
                "fails".into()
            },
            c.classifier_status.to_string(),
        ]);
    }
    let mut text = format!(
        "Hilb2 is {}\n",
        if report.stable {
            "a stable surface"
        } else {
            "not a stable surface"
        }
    );
    text.push_str(&table(&rows));
    if !report.classifier_agrees {
        text.push_str("warning: the clause list and the ampleness classifier disagree\n");
    }
    let negative = !report.stable;
    Ok(Outcome::new(text, doc(&report)).negative_if(negative))
}

pub fn ample_classify(g: u32, d: u32, f: Flag) -> Result<Outcome, CliError> {
    let verdict = classify_log_symsq(g, d, flag(f)).map_err(domain)?;
    let t = intersection_table(g, d);
    let mut text = format!("{}\n", verdict.status);
    let rows: Vec<Vec<String>> = verdict
        .witnesses
        .iter()
        .map(|w| vec![format!("  {}", w.curve.name()), w.degree.to_string()])
        .collect();
    text.push_str("witnesses\n");
    text.push_str(&table(&rows));
    text.push_str(&format!(
        "intersections on C x C: K^2={} D^2={} Delta^2={} K.D={} K.Delta={} D.Delta={}\n",
        t.k_sq, t.d_sq, t.delta_sq, t.k_dot_d, t.k_dot_delta, t.d_dot_delta
    ));
    for flag in &verdict.discrepancy_flags {
        text.push_str(&format!("note: {}\n", flag.describe()));
    }
    let doc = json!({
        "genus": g,
        "delta": d,
        "hyperelliptic": flag(f),
        "verdict": doc(&verdict),
        "intersections": doc(&t),
    });
    let negative = verdict.status != AmpleStatus::Ample;
    Ok(Outcome::new(text, doc).negative_if(negative))
}

pub fn ample_table(gmax: u32, dmax: u32) -> Result<Outcome, CliError> {
    let mut header = vec!["g \\ d".to_string()];
    header.extend((0..=dmax).map(|d| d.to_string()));
    let mut rows = vec![header];
    let mut entries = Vec::new();
    for g in 0..=gmax {
        let flags: &[(Hyperelliptic, &str)] = match g {
            0..=2 => &[(Hyperelliptic::Yes, "")],
            3 => &[
                (Hyperelliptic::Yes, " hyp"),
                (Hyperelliptic::No, " non-hyp"),
            ],
            _ => &[(Hyperelliptic::Unknown, "")],
        };
        for &(flag, suffix) in flags {
            let mut row = vec![format!("{g}{suffix}")];
            for d in 0..=dmax {
                let v = classify_log_symsq(g, d, flag).map_err(domain)?;
                let mut cell = match v.status {
                    AmpleStatus::Ample => "A",
                    AmpleStatus::NefNotAmple => "N",
                    AmpleStatus::NotNef => "-",
                }
                .to_string();
                if !v.discrepancy_flags.is_empty() {
                    cell.push('*');
                }
                row.push(cell);
                entries.push(json!({
                    "genus": g,
                    "delta": d,
                    "hyperelliptic": flag,
                    "status": v.status,
                    "gamma_degree": v.witness(TestCurve::Gamma),
                    "witnesses": doc(&v.witnesses),
                    "discrepancy_flags": doc(&v.discrepancy_flags),
                }));
            }
            rows.push(row);
        }
    }
    let mut text = table(&rows);
    text.push_str(
        "A ample, N nef but not ample, - not nef, * differs from the published nef list\n",
    );
    Ok(Outcome::new(
        text,
        json!({ "gmax": gmax, "dmax": dmax, "entries": entries }),
    ))
}

fn moves_text(log: &[ContractionMove]) -> String {
    if log.is_empty() {
        return "moves: none\n".into();
    }
    let mut out = "moves\n".to_string();
    for (i, m) in log.iter().enumerate() {
        out.push_str(&format!("  {}. {m}\n", i + 1));
    }
    out
}

fn stable_kind_text(k: &StableKind) -> String {
    match k {
        StableKind::SymSquare { curve, delta } => {
            format!("symmetric square of {}, delta {delta}", curve_ref(curve))
        }
        StableKind::ProductBlowup {
            factors,
            blowup_count,
        } => format!(
            "{} x {} {}",
            curve_ref(&factors[0]),
            curve_ref(&factors[1]),
            blown_up(*blowup_count)
        ),
        StableKind::Product { factors } => {
            format!("{} x {}", curve_ref(&factors[0]), curve_ref(&factors[1]))
        }
        StableKind::AbelianSurface { jacobian_of, .. } => format!("Jacobian of {jacobian_of}"),
        StableKind::SymSquareCanonical { curve } => {
            format!(
                "symmetric square of {} with its (-2)-curve contracted",
                curve_ref(curve)
            )
        }
        StableKind::CollapsedPoint { curve } => {
            format!(
                "point, image of the symmetric square of {}",
                curve_ref(curve)
            )
        }
    }
}

fn stable_model_text(m: &StableSurfaceModel) -> String {
    let rows: Vec<Vec<String>> = m
        .components
        .iter()
        .map(|c| vec![format!("  {}", c.id), stable_kind_text(&c.kind)])
        .collect();
    let mut out = format!("components\n{}", table(&rows));
    if !m.gluing_curves.is_empty() {
        out.push_str("gluing curves\n");
        for c in &m.gluing_curves {
            out.push_str(&format!(
                "  {} -- {} along {} (genus {}) [{}]\n",
                c.endpoints.0, c.endpoints.1, c.curve_label, c.curve_genus, c.origin
            ));
        }
    }
    if !m.exceptional_curves.is_empty() {
        out.push_str("exceptional curves\n");
        for e in &m.exceptional_curves {
            out.push_str(&format!("  on {} [{}]\n", e.home, e.origin));
        }
    }
    if !m.point_contacts.is_empty() {
        out.push_str("point contacts\n");
        for p in &m.point_contacts {
            out.push_str(&format!(
                "  {} . {} [{}]\n",
                p.endpoints.0, p.endpoints.1, p.origin
            ));
        }
    }
    if !m.collapses.is_empty() {
        out.push_str("collapses\n");
        for c in &m.collapses {
            let image = match &c.image {
                CollapseImage::Curve { label, genus } => format!("curve {label} (genus {genus})"),
                CollapseImage::Point => "a point".into(),
            };
            out.push_str(&format!(
                "  {} onto {} of {} [{}]\n",
                c.collapsed, image, c.host, c.origin
            ));
        }
    }
    out
}

pub fn mmp_minimal(path: &Path) -> Result<Outcome, CliError> {
    let g = read_curve(path)?;
    let model = build_hilb2_model(&g).map_err(domain)?;
    let (minimal, log) = relative_minimal_model(&model);
    let text = format!("{}{}", moves_text(&log), model_text(&minimal));
    Ok(Outcome::new(
        text,
        json!({ "moves": doc(&log), "model": doc(&minimal) }),
    ))
}

pub fn mmp_canonical(path: &Path) -> Result<Outcome, CliError> {
    let g = read_curve(path)?;
    let model = build_hilb2_model(&g).map_err(domain)?;
    let (canonical, log) = relative_canonical_model(&model).map_err(domain)?;
    let text = format!("{}{}", moves_text(&log), stable_model_text(&canonical));
    Ok(Outcome::new(
        text,
        json!({ "moves": doc(&log), "model": doc(&canonical) }),
    ))
}

pub fn reconstruct(path: &Path) -> Result<Outcome, CliError> {
    let bad = |e: serde_json::Error| CliError::Input(format!("{}: {e}", path.display()));
    let value: Value = serde_json::from_str(&read(path)?).map_err(bad)?;
    let value = match value.get("model") {
        Some(inner) => inner.clone(),
        None => value,
    };
    let model: SurfaceModel = serde_json::from_value(value).map_err(bad)?;
    let (minimal, _) = relative_minimal_model(&model);
    let report = rebuild(&forget(&minimal)).map_err(domain)?;
    let mut text = String::new();
    for n in &report.notes {
        text.push_str(&format!("# {}: {}\n", n.component, n.resolution));
    }
    text.push_str(&report.graph.to_curve_file());
    Ok(Outcome::new(text, doc(&report)))
}

pub fn roundtrip(genus: u32, max_components: usize) -> Result<Outcome, CliError> {
    if genus < 3 {
        return Err(CliError::Domain(format!(
            "reconstruction needs arithmetic genus at least 3, got {genus}"
        )));
    }
    let opts = EnumerationOptions::new(genus, max_components, false);
    let graphs = enumerate_stable_graphs(&opts).map_err(domain)?;
    let mut curves = 0;
    let mut failures = Vec::new();
    for base in &graphs {
        for g in hyperelliptic_variants(base) {
            curves += 1;
            let outcome = build_hilb2_model(&g)
                .map_err(|e| e.to_string())
                .and_then(|m| {
                    rebuild(&forget(&relative_minimal_model(&m).0)).map_err(|e| e.to_string())
                })
                .and_then(|r| {
                    graphs_isomorphic(&g, &r.graph, IsoMode::Strict)
                        .map(|_| ())
                        .ok_or_else(|| format!("rebuilt a different curve:\n{}", r.graph))
                });
            if let Err(why) = outcome {
                failures.push(json!({ "curve": g.to_curve_file(), "error": why }));
            }
        }
    }
    let mut text = format!(
        "genus {genus}, at most {max_components} components: {} graphs, {curves} curves, {} failures\n",
        graphs.len(),
        failures.len()
    );
    for f in &failures {
        text.push_str(&format!(
            "\n{}{}\n",
            f["curve"].as_str().unwrap(),
            f["error"].as_str().unwrap()
        ));
    }
    let negative = !failures.is_empty();
    let doc = json!({
        "genus": genus,
        "max_components": max_components,
        "graphs": graphs.len(),
        "curves": curves,
        "failures": failures,
    });
    Ok(Outcome::new(text, doc).negative_if(negative))
}

pub fn local_minors() -> Result<Outcome, CliError> {
    let report = minors_identity();
    let relations = paper_relations();
    let mut rows = vec![["columns", "minor", "relation", "sign"]
        .map(String::from)
        .to_vec()];
    for m in &report.matches {
        rows.push(vec![
            format!("({},{})", m.columns.0 + 1, m.columns.1 + 1),
            m.minor.clone(),
            m.relation
                .map(|k| {
                    relations.generators()[k]
                        .display_in(TermOrder::GrevLex)
                        .to_string()
                })
                .unwrap_or_else(|| "none".into()),
            match m.sign {
                1 => "+".into(),
                -1 => "-".into(),
                _ => "?".into(),
            },
        ]);
    }
    let mut text = "2x2 minors of [[a1, a3, a4, a6], [a3, a2, a5, a7]]\n".to_string();
    text.push_str(&table(&rows));
    text.push_str(if report.holds {
        "the minors are the relations up to sign\n"
    } else {
        "the minors and the relations differ\n"
    });
    let negative = !report.holds;
    Ok(Outcome::new(text, doc(&report)).negative_if(negative))
}

pub fn local_find_param(bound: u32) -> Result<Outcome, CliError> {
    let map = match find_parametrization(bound) {
        Ok(map) => map,
        Err(e @ AlgebraError::NoMapFound { .. }) => {
            let doc = json!({ "degree_bound": bound, "found": false });
            return Ok(Outcome::new(format!("{e}\n"), doc).negative_if(true));
        }
        Err(e) => return Err(domain(e)),
    };
    let report = verify_parametrization(&map);
    let mut text = format!("{map}\n");
    let mut rows = vec![["relation", "image", "residue mod xy - uv", "vanishing"]
        .map(String::from)
        .to_vec()];
    let mut relations = Vec::new();
    for r in &report.relations {
        rows.push(vec![
            r.relation.display_in(TermOrder::GrevLex).to_string(),
            r.image.to_string(),
            r.residue.to_string(),
            format!("{:?}", r.vanishing),
        ]);
        relations.push(json!({
            "relation": polynomial(&r.relation, TermOrder::GrevLex),
            "image": polynomial(&r.image, TermOrder::Lex),
            "residue": polynomial(&r.residue, TermOrder::Lex),
            "vanishing": r.vanishing,
        }));
    }
    text.push_str(&table(&rows));
    text.push_str(&format!(
        "invariant images {:?}, pair equivariant {}, nondegenerate {}\n",
        report.invariant, report.pair_equivariant, report.nondegenerate
    ));
    let doc = json!({
        "degree_bound": bound,
        "found": true,
        "map": doc(&map),
        "map_text": map.to_string(),
        "relations": relations,
        "invariant": report.invariant,
        "pair_equivariant": report.pair_equivariant,
        "nondegenerate": report.nondegenerate,
        "accepted": report.accepted(),
    });
    Ok(Outcome::new(text, doc))
}

fn ideal_doc(ideal: &symsq::local_algebra::Ideal) -> Value {
    json!({
        "variables": ideal.vars().as_ref(),
        "order": ideal.order().name(),
        "generators": ideal
            .generators()
            .iter()
            .map(|g| polynomial(g, ideal.order()))
            .collect::<Vec<_>>(),
    })
}

fn ideal_text(ideal: &symsq::local_algebra::Ideal) -> String {
    ideal
        .generators()
        .iter()
        .map(|g| format!("{}\n", g.display_in(ideal.order())))
        .collect()
}

pub fn local_central_fiber() -> Result<Outcome, CliError> {
    let ideal = central_fiber_ideal();
    let text = format!("vars {}\n{}", ideal.vars().join(", "), ideal_text(&ideal));
    Ok(Outcome::new(text, ideal_doc(&ideal)))
}

pub fn local_equivariance() -> Result<Outcome, CliError> {
    let report = equivariance_check();
    let mut rows = vec![["polynomial", "image under (x,u) -> (-x,-u)", "behaviour"]
        .map(String::from)
        .to_vec()];
    let mut entries = Vec::new();
    for e in &report.entries {
        rows.push(vec![
            e.polynomial.to_string(),
            e.image.to_string(),
            e.behaviour.to_string(),
        ]);
        entries.push(json!({
            "polynomial": polynomial(&e.polynomial, TermOrder::Lex),
            "image": polynomial(&e.image, TermOrder::Lex),
            "behaviour": e.behaviour,
        }));
    }
    Ok(Outcome::new(table(&rows), json!({ "entries": entries })))
}

pub fn local_groebner(path: &Path, order: Option<Order>) -> Result<Outcome, CliError> {
    let mut ideal = parse_ideal_file(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if let Some(o) = order {
        ideal = ideal.with_order(match o {
            Order::Lex => TermOrder::Lex,
            Order::Grevlex => TermOrder::GrevLex,
        });
    }
    let basis = buchberger(&ideal).map_err(domain)?;
    let text = format!(
        "reduced basis ({}, {})\n{}",
        basis.order().name(),
        basis.vars().join(" > "),
        ideal_text(&basis)
    );
    Ok(Outcome::new(
        text,
        json!({ "input": ideal_doc(&ideal), "basis": ideal_doc(&basis) }),
    ))
}
