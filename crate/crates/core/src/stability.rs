use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ampleness::{classify_log_symsq, AmpleStatus};
use crate::curve_model::{CurveStability, DualGraph, Hyperelliptic, InstabilityReason};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error("the input is not a stable curve")]
    UnstableCurve(Vec<InstabilityReason>),
}

/// The condition on `δ` a component of a given genus has to meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// Genus 0: `δ > 3`.
    Rational,
    /// Genus 1: `δ > 2`.
    Elliptic,
    /// Genus 2: `δ > 1`.
    GenusTwo,
    /// Genus 3, hyperelliptic or not known to be otherwise: `δ > 0`.
    HyperellipticGenusThree,
    Unconstrained,
}

impl Clause {
    pub fn for_component(genus: u32, hyperelliptic: Hyperelliptic) -> Self {
        match genus {
            0 => Clause::Rational,
            1 => Clause::Elliptic,
            2 => Clause::GenusTwo,
            3 if hyperelliptic.is_conservatively_hyperelliptic() => Clause::HyperellipticGenusThree,
            _ => Clause::Unconstrained,
        }
    }

    /// `δ` must be strictly larger than this.
    pub fn threshold(self) -> Option<u32> {
        match self {
            Clause::Rational => Some(3),
            Clause::Elliptic => Some(2),
            Clause::GenusTwo => Some(1),
            Clause::HyperellipticGenusThree => Some(0),
            Clause::Unconstrained => None,
        }
    }

    pub fn holds(self, delta: u32) -> bool {
        self.threshold().is_none_or(|t| delta > t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentStability {
    pub id: String,
    pub genus: u32,
    pub hyperelliptic: Hyperelliptic,
    pub delta: u32,
    pub stable: bool,
    pub clause: Clause,
    /// Status of the log-canonical class of `(C_i^(2), δ_i)`.
    pub classifier_status: AmpleStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub stable: bool,
    pub components: Vec<ComponentStability>,
    /// Whether the clause list and the ampleness classifier agree on every
    /// component.
    pub classifier_agrees: bool,
}

impl StabilityReport {
    pub fn failing(&self) -> impl Iterator<Item = &ComponentStability> {
        self.components.iter().filter(|c| !c.stable)
    }
}

/// Decides whether `Hilb_2(C)` is a stable surface.
pub fn is_hilb2_stable(graph: &DualGraph) -> Result<StabilityReport, StabilityError> {
    if let CurveStability::Unstable(reasons) = graph.stability() {
        return Err(StabilityError::UnstableCurve(reasons));
    }
    let mut components = Vec::with_capacity(graph.component_count());
    let mut classifier_agrees = true;
    for (i, c) in graph.components().iter().enumerate() {
        let delta = graph.delta_at(i);
        let clause = Clause::for_component(c.genus, c.hyperelliptic);
        let stable = clause.holds(delta);
        let classifier_status = classify_log_symsq(c.genus, delta, c.hyperelliptic)
            .expect("graph flags are normalized")
            .status;
        classifier_agrees &= (classifier_status == AmpleStatus::Ample) == stable;
        components.push(ComponentStability {
            id: c.id.clone(),
            genus: c.genus,
            hyperelliptic: c.hyperelliptic,
            delta,
            stable,
            clause,
            classifier_status,
        });
    }
    Ok(StabilityReport {
        stable: components.iter().all(|c| c.stable),
        components,
        classifier_agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_model::parse_dual_graph;

    fn report(text: &str) -> StabilityReport {
        is_hilb2_stable(&parse_dual_graph(text).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        let r = report("component A genus=2\ncomponent B genus=2\nnode A B\nnode A B");
        assert!(r.stable && r.classifier_agrees);

        let r = report("component A genus=2\ncomponent B genus=1\nnode A B");
        assert!(!r.stable);
        let failing: Vec<_> = r.failing().map(|c| (c.id.as_str(), c.clause)).collect();
        assert_eq!(failing, [("A", Clause::GenusTwo), ("B", Clause::Elliptic)]);
        assert!(r.classifier_agrees);

        assert!(report("component A genus=3 hyperelliptic=false").stable);
        assert!(!report("component A genus=3 hyperelliptic=unknown").stable);

        let r = report("component A genus=1\nnode A A\nnode A A");
        assert_eq!(r.components[0].delta, 4);
        assert!(r.stable);
    }

    #[test]
    fn rejects_unstable_curves() {
        let g = parse_dual_graph("component A genus=1").unwrap();
        assert!(matches!(
            is_hilb2_stable(&g),
            Err(StabilityError::UnstableCurve(_))
        ));
    }

    #[test]
    fn clauses_are_monotone_in_delta() {
        for genus in 0..6 {
            for flag in [
                Hyperelliptic::Yes,
                Hyperelliptic::No,
                Hyperelliptic::Unknown,
            ] {
                let clause = Clause::for_component(genus, flag);
                for delta in 0..10 {
                    assert!(!clause.holds(delta) || clause.holds(delta + 1));
                }
            }
        }
    }
}
