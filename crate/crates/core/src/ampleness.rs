//! Intersection numbers on `C x C` and the ampleness of log-canonical classes
//! of log symmetric squares and log products.
//!
//! Everything is computed in exact integers. Inputs are `u32`, so every value
//! below fits comfortably in `i128` (the largest is `2(2g-2)^2 < 2^67`).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve_model::Hyperelliptic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmplenessError {
    #[error("the hyperelliptic graph needs genus >= 2, got {0}")]
    GammaUndefined(u32),
    #[error("a boundary component needs a divisor of positive degree")]
    NoBoundary,
    #[error("genus {0} curves are hyperelliptic; hyperelliptic=no is inconsistent")]
    InconsistentFlag(u32),
}

/// The six intersection numbers among `K`, `D` and the diagonal on `C x C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionTable {
    pub k_sq: i128,
    pub d_sq: i128,
    pub delta_sq: i128,
    pub k_dot_d: i128,
    pub k_dot_delta: i128,
    pub d_dot_delta: i128,
}

impl IntersectionTable {
    /// `(K + D - Δ)^2` by bilinear expansion.
    pub fn log_canonical_expansion(&self) -> i128 {
        self.k_sq + self.d_sq + self.delta_sq + 2 * self.k_dot_d
            - 2 * self.k_dot_delta
            - 2 * self.d_dot_delta
    }
}

pub fn intersection_table(g: u32, d: u32) -> IntersectionTable {
    let (g, d) = (i128::from(g), i128::from(d));
    let c = 2 * g - 2;
    IntersectionTable {
        k_sq: 2 * c * c,
        d_sq: 2 * d * d,
        delta_sq: 2 - 2 * g,
        k_dot_d: 2 * d * c,
        k_dot_delta: 4 * g - 4,
        d_dot_delta: 2 * d,
    }
}

/// Closed form of `(K + D - Δ)^2`.
pub fn log_canonical_sq(g: u32, d: u32) -> i128 {
    let (g, d) = (i128::from(g), i128::from(d));
    let c = 2 * g - 2;
    2 * c * c + (4 * d - 5) * c + 2 * d * (d - 2)
}

/// Degree of `K + D - Δ` on the graph of the hyperelliptic involution.
pub fn gamma_degree(g: u32, d: u32) -> Result<i128, AmplenessError> {
    if g < 2 {
        return Err(AmplenessError::GammaUndefined(g));
    }
    Ok(2 * i128::from(g) - 6 + 2 * i128::from(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryDegree {
    /// `K.D_i + D.D_i - Δ.D_i = (2g-2) + d - 1`.
    pub derived: i128,
    /// The commonly quoted value `2g - 4 + d`.
    pub literal: i128,
    pub discrepancy: bool,
}

/// Degree of `K + D - Δ` on a boundary fiber `D_i`.
pub fn boundary_degree(g: u32, d: u32) -> Result<BoundaryDegree, AmplenessError> {
    if d == 0 {
        return Err(AmplenessError::NoBoundary);
    }
    let derived = fiber_degree(g, d);
    let literal = 2 * i128::from(g) - 4 + i128::from(d);
    Ok(BoundaryDegree {
        derived,
        literal,
        discrepancy: derived != literal,
    })
}

fn fiber_degree(g: u32, d: u32) -> i128 {
    2 * i128::from(g) - 3 + i128::from(d)
}

fn diagonal_degree(g: u32, d: u32) -> i128 {
    let t = intersection_table(g, d);
    t.k_dot_delta + t.d_dot_delta - t.delta_sq
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmpleStatus {
    NotNef,
    NefNotAmple,
    Ample,
}

impl AmpleStatus {
    pub fn is_nef(self) -> bool {
        self != AmpleStatus::NotNef
    }
}

impl fmt::Display for AmpleStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AmpleStatus::Ample => "Ample",
            AmpleStatus::NefNotAmple => "NefNotAmple",
            AmpleStatus::NotNef => "NotNef",
        })
    }
}

/// Curves and classes `K + D - Δ` is tested against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestCurve {
    /// `(K + D - Δ)^2` itself.
    SelfIntersection,
    /// Graph of the hyperelliptic involution.
    Gamma,
    /// A boundary fiber `D_i` (only when `d >= 1`).
    Boundary,
    Diagonal,
    /// A general fiber of a projection (recorded when `d = 0`).
    Fiber,
}

impl TestCurve {
    pub fn name(self) -> &'static str {
        match self {
            TestCurve::SelfIntersection => "self-intersection",
            TestCurve::Gamma => "gamma",
            TestCurve::Boundary => "boundary",
            TestCurve::Diagonal => "diagonal",
            TestCurve::Fiber => "fiber",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub curve: TestCurve,
    pub degree: i128,
}

/// Deviations between a verdict and the classification lists as printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Discrepancy {
    /// The nef list includes every genus >= 2 curve, but the Γ-degree at
    /// `(g, d) = (2, 0)` is `-2`.
    GenusTwoNefList,
}

impl Discrepancy {
    pub fn describe(self) -> &'static str {
        match self {
            Discrepancy::GenusTwoNefList => {
                "nef list claims genus >= 2 is nef, but gamma-degree at (g=2, d=0) is -2"
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmplenessVerdict {
    pub status: AmpleStatus,
    pub witnesses: Vec<Witness>,
    pub discrepancy_flags: Vec<Discrepancy>,
}

impl AmplenessVerdict {
    pub fn witness(&self, curve: TestCurve) -> Option<i128> {
        self.witnesses
            .iter()
            .find(|w| w.curve == curve)
            .map(|w| w.degree)
    }
}

fn in_ample_list(g: u32, d: u32, hyperelliptic: Hyperelliptic) -> bool {
    match g {
        0 => d > 3,
        1 => d > 2,
        2 => d > 1,
        3 if hyperelliptic.is_conservatively_hyperelliptic() => d > 0,
        _ => true,
    }
}

/// Classifies the log-canonical class of the log symmetric square of a curve
/// of genus `g` with a reduced divisor of degree `d`.
///
/// `Unknown` is treated as hyperelliptic, so the verdict never overstates
/// positivity.
pub fn classify_log_symsq(
    g: u32,
    d: u32,
    hyperelliptic: Hyperelliptic,
) -> Result<AmplenessVerdict, AmplenessError> {
    if g <= 2 && hyperelliptic == Hyperelliptic::No {
        return Err(AmplenessError::InconsistentFlag(g));
    }
    let mut witnesses = vec![Witness {
        curve: TestCurve::SelfIntersection,
        degree: log_canonical_sq(g, d),
    }];
    if g >= 2 && hyperelliptic.is_conservatively_hyperelliptic() {
        witnesses.push(Witness {
            curve: TestCurve::Gamma,
            degree: gamma_degree(g, d)?,
        });
    }
    if d >= 1 {
        witnesses.push(Witness {
            curve: TestCurve::Boundary,
            degree: boundary_degree(g, d)?.derived,
        });
    } else {
        witnesses.push(Witness {
            curve: TestCurve::Fiber,
            degree: fiber_degree(g, d),
        });
    }
    witnesses.push(Witness {
        curve: TestCurve::Diagonal,
        degree: diagonal_degree(g, d),
    });

    let status = if in_ample_list(g, d, hyperelliptic) {
        AmpleStatus::Ample
    } else if witnesses.iter().any(|w| w.degree < 0) {
        AmpleStatus::NotNef
    } else {
        AmpleStatus::NefNotAmple
    };
    let discrepancy_flags = if g == 2 && d == 0 {
        vec![Discrepancy::GenusTwoNefList]
    } else {
        Vec::new()
    };
    Ok(AmplenessVerdict {
        status,
        witnesses,
        discrepancy_flags,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductVerdict {
    Ample,
    NotAmple,
}

/// The log product is ample exactly when both pointed factors are of log
/// general type.
pub fn classify_log_product(g1: u32, d1: u32, g2: u32, d2: u32) -> ProductVerdict {
    let positive = |g: u32, d: u32| 2 * i128::from(g) - 2 + i128::from(d) > 0;
    if positive(g1, d1) && positive(g2, d2) {
        ProductVerdict::Ample
    } else {
        ProductVerdict::NotAmple
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceKind {
    Product { g1: u32, g2: u32 },
    SymSq { g: u32 },
}

/// `(χ(O_S), K_S^2)` of a product of curves or a symmetric square.
pub fn surface_invariants(kind: SurfaceKind) -> (i128, i128) {
    match kind {
        SurfaceKind::Product { g1, g2 } => {
            let chi = (i128::from(g1) - 1) * (i128::from(g2) - 1);
            (chi, 8 * chi)
        }
        SurfaceKind::SymSq { g } => {
            let g = i128::from(g);
            (1 - g + g * (g - 1) / 2, (g - 1) * (4 * g - 9))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn table_examples() {
        let zero = IntersectionTable {
            k_sq: 0,
            d_sq: 0,
            delta_sq: 0,
            k_dot_d: 0,
            k_dot_delta: 0,
            d_dot_delta: 0,
        };
        assert_eq!(intersection_table(1, 0), zero);
        assert_eq!(
            intersection_table(3, 2),
            IntersectionTable {
                k_sq: 32,
                d_sq: 8,
                delta_sq: -4,
                k_dot_d: 16,
                k_dot_delta: 8,
                d_dot_delta: 4
            }
        );
        let t = intersection_table(0, 4);
        assert_eq!(
            (
                t.k_sq,
                t.d_sq,
                t.delta_sq,
                t.k_dot_d,
                t.k_dot_delta,
                t.d_dot_delta
            ),
            (8, 32, 2, -16, -4, 8)
        );
        assert_eq!(t.log_canonical_expansion(), 2);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(log_canonical_sq(2, 0), -2);
        assert_eq!(log_canonical_sq(0, 4), 2);
        assert_eq!(log_canonical_sq(1, 3), 6);
    }

    #[test]
    fn curve_degrees() {
        assert_eq!(gamma_degree(3, 0), Ok(0));
        assert_eq!(gamma_degree(2, 1), Ok(0));
        assert_eq!(gamma_degree(2, 2), Ok(2));
        assert_eq!(gamma_degree(1, 5), Err(AmplenessError::GammaUndefined(1)));

        let b = boundary_degree(2, 1).unwrap();
        assert_eq!((b.derived, b.literal, b.discrepancy), (2, 1, true));
        let b = boundary_degree(3, 1).unwrap();
        assert_eq!((b.derived, b.literal), (4, 3));
        let b = boundary_degree(0, 3).unwrap();
        assert_eq!((b.derived, b.literal), (0, -1));
        assert_eq!(boundary_degree(4, 0), Err(AmplenessError::NoBoundary));
    }

    #[test]
    fn classification_examples() {
        let v = classify_log_symsq(3, 0, Hyperelliptic::No).unwrap();
        assert_eq!(v.status, AmpleStatus::Ample);

        let v = classify_log_symsq(3, 0, Hyperelliptic::Yes).unwrap();
        assert_eq!(v.status, AmpleStatus::NefNotAmple);
        assert_eq!(v.witness(TestCurve::Gamma), Some(0));

        let v = classify_log_symsq(2, 0, Hyperelliptic::Yes).unwrap();
        assert_eq!(v.status, AmpleStatus::NotNef);
        assert_eq!(v.witness(TestCurve::Gamma), Some(-2));
        assert_eq!(v.discrepancy_flags, vec![Discrepancy::GenusTwoNefList]);

        let v = classify_log_symsq(0, 3, Hyperelliptic::Yes).unwrap();
        assert_eq!(v.status, AmpleStatus::NefNotAmple);

        assert_eq!(
            classify_log_symsq(2, 4, Hyperelliptic::No),
            Err(AmplenessError::InconsistentFlag(2))
        );
        assert_eq!(
            classify_log_symsq(3, 0, Hyperelliptic::Unknown)
                .unwrap()
                .status,
            AmpleStatus::NefNotAmple
        );
    }

    #[test]
    fn low_genus_without_boundary_is_not_nef() {
        for g in 0..2 {
            let v = classify_log_symsq(g, 0, Hyperelliptic::Yes).unwrap();
            assert_eq!(v.status, AmpleStatus::NotNef, "g={g}");
        }
    }

    #[test]
    fn product_examples() {
        assert_eq!(classify_log_product(1, 1, 2, 0), ProductVerdict::Ample);
        assert_eq!(classify_log_product(0, 2, 5, 0), ProductVerdict::NotAmple);
        assert_eq!(classify_log_product(1, 0, 1, 0), ProductVerdict::NotAmple);
    }

    #[test]
    fn invariant_examples() {
        assert_eq!(surface_invariants(SurfaceKind::SymSq { g: 1 }), (0, 0));
        assert_eq!(surface_invariants(SurfaceKind::SymSq { g: 2 }), (0, -1));
        assert_eq!(
            surface_invariants(SurfaceKind::Product { g1: 2, g2: 3 }),
            (2, 16)
        );
    }

    #[test]
    fn gamma_vanishes_exactly_on_boundary_cases() {
        for g in 2..60 {
            for d in 0..60 {
                assert_eq!(gamma_degree(g, d).unwrap() == 0, g + d == 3);
            }
        }
    }

    #[test]
    fn symsq_matches_half_of_log_canonical_square() {
        // K^2 of C^(2) is (K - Δ)^2 / 2 on C x C
        for g in 0..100 {
            let (_, k2) = surface_invariants(SurfaceKind::SymSq { g });
            assert_eq!(2 * k2, log_canonical_sq(g, 0));
        }
    }

    fn flag() -> impl Strategy<Value = Hyperelliptic> {
        prop_oneof![
            Just(Hyperelliptic::Yes),
            Just(Hyperelliptic::No),
            Just(Hyperelliptic::Unknown)
        ]
    }

    proptest! {
        #[test]
        fn expansion_identity(g in 0u32..5000, d in 0u32..5000) {
            prop_assert_eq!(log_canonical_sq(g, d), intersection_table(g, d).log_canonical_expansion());
        }

        #[test]
        fn verdict_invariants(g in 0u32..40, d in 0u32..40, h in flag()) {
            prop_assume!(g > 2 || h != Hyperelliptic::No);
            let v = classify_log_symsq(g, d, h).unwrap();
            match v.status {
                AmpleStatus::Ample => prop_assert!(v.witnesses.iter().all(|w| w.degree > 0)),
                AmpleStatus::NotNef => prop_assert!(v.witnesses.iter().any(|w| w.degree < 0)),
                AmpleStatus::NefNotAmple => prop_assert!(v.witnesses.iter().all(|w| w.degree >= 0)),
            }
            if log_canonical_sq(g, d) <= 0 {
                prop_assert_ne!(v.status, AmpleStatus::Ample);
            }
            let next = classify_log_symsq(g, d + 1, h).unwrap();
            prop_assert!(next.status >= v.status);
        }

        #[test]
        fn high_genus_is_always_ample(g in 4u32..100, d in 0u32..100) {
            prop_assert_eq!(classify_log_symsq(g, d, Hyperelliptic::Yes).unwrap().status, AmpleStatus::Ample);
            prop_assert!(gamma_degree(g, d).unwrap() > 0);
        }
    }
}
