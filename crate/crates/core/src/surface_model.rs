//! The component model of `Hilb_2(C)` for a nodal curve `C`.
//!
//! Each component `C_i` contributes its symmetric square. Each pair of
//! components meeting in `k` nodes contributes `C_i x C_j` blown up in the
//! `k` bad points. For a node `p = q` joining `C_i` and `C_j`, the symmetric
//! square of `C_i` is glued to the product along the strict transform of
//! `C_i x {q}`, the exceptional curve over the bad point lies on the product
//! and meets each of the two symmetric squares once, and the two symmetric
//! squares meet in the single point `{p, q}`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ampleness::{surface_invariants, SurfaceKind};
use crate::curve_model::{DualGraph, Hyperelliptic, InstabilityReason};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(
        "component {0:?} has a self-node; the Hilbert-square model is only built for curves with smooth components"
    )]
    SelfNode(String),
    #[error("the curve is not stable: {}", list_reasons(.0))]
    UnstableCurve(Vec<InstabilityReason>),
}

fn list_reasons(reasons: &[InstabilityReason]) -> String {
    reasons
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// The curve component a surface component is built from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveRef {
    pub component: String,
    pub genus: u32,
    pub hyperelliptic: Hyperelliptic,
    pub label: String,
}

/// A node of the source curve: its two endpoint ids (sorted) and its index
/// among the parallel nodes joining them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeRef {
    pub ends: (String, String),
    pub index: u32,
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}#{}", self.ends.0, self.ends.1, self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ComponentKind {
    /// `C_i^(2)`; `delta` is the number of nodes on `C_i`.
    SymSquare { curve: CurveRef, delta: u32 },
    /// `C_i x C_j` blown up in `blowup_count` points.
    ProductBlowup {
        factors: [CurveRef; 2],
        blowup_count: u32,
    },
}

impl ComponentKind {
    pub fn minimal_surface(&self) -> SurfaceKind {
        match self {
            ComponentKind::SymSquare { curve, .. } => SurfaceKind::SymSq { g: curve.genus },
            ComponentKind::ProductBlowup { factors, .. } => SurfaceKind::Product {
                g1: factors[0].genus,
                g2: factors[1].genus,
            },
        }
    }

    pub fn signature(&self) -> KindSignature {
        match self {
            ComponentKind::SymSquare { curve, .. } => symsq_signature(curve.genus),
            ComponentKind::ProductBlowup {
                factors,
                blowup_count,
            } => product_signature(factors[0].genus, factors[1].genus, *blowup_count),
        }
    }
}

/// Kodaira dimension of a surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kodaira {
    NegativeInfinity,
    Zero,
    One,
    Two,
}

/// Birational numerical data of a smooth projective surface: invariants of
/// its minimal model, number of blowups above it and Kodaira dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KindSignature {
    pub chi: i128,
    pub k_sq_minimal: i128,
    pub blowups: u32,
    pub kodaira: Kodaira,
}

pub fn symsq_signature(g: u32) -> KindSignature {
    let (chi, k_sq) = surface_invariants(SurfaceKind::SymSq { g });
    match g {
        // P^2 and a ruled surface over an elliptic curve
        0 | 1 => KindSignature {
            chi,
            k_sq_minimal: k_sq,
            blowups: 0,
            kodaira: Kodaira::NegativeInfinity,
        },
        // an abelian surface blown up once
        2 => KindSignature {
            chi,
            k_sq_minimal: k_sq + 1,
            blowups: 1,
            kodaira: Kodaira::Zero,
        },
        _ => KindSignature {
            chi,
            k_sq_minimal: k_sq,
            blowups: 0,
            kodaira: Kodaira::Two,
        },
    }
}

pub fn product_signature(g1: u32, g2: u32, blowups: u32) -> KindSignature {
    let (chi, k_sq) = surface_invariants(SurfaceKind::Product { g1, g2 });
    let kodaira = match (g1.min(g2), g1.max(g2)) {
        (0, _) => Kodaira::NegativeInfinity,
        (1, 1) => Kodaira::Zero,
        (1, _) => Kodaira::One,
        _ => Kodaira::Two,
    };
    KindSignature {
        chi,
        k_sq_minimal: k_sq,
        blowups,
        kodaira,
    }
}

/// True when the signature is shared by a symmetric square and a blown-up
/// product: the square of a genus-2 curve and a product of two elliptic
/// curves blown up once are both an abelian surface blown up in one point.
pub fn is_ambiguous_signature(sig: KindSignature) -> bool {
    sig == symsq_signature(2)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceComponent {
    pub id: String,
    pub kind: ComponentKind,
    pub underlying_labels: Vec<String>,
    /// `(χ, K^2)` of the minimal surface the normalization is built on.
    pub minimal_model_invariants: (i128, i128),
    pub ambiguous_kind: bool,
}

impl SurfaceComponent {
    pub(crate) fn new(id: String, kind: ComponentKind) -> Self {
        let underlying_labels = match &kind {
            ComponentKind::SymSquare { curve, .. } => vec![curve.label.clone()],
            ComponentKind::ProductBlowup { factors, .. } => {
                factors.iter().map(|f| f.label.clone()).collect()
            }
        };
        Self {
            id,
            minimal_model_invariants: surface_invariants(kind.minimal_surface()),
            ambiguous_kind: is_ambiguous_signature(kind.signature()),
            underlying_labels,
            kind,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IncidenceCurve {
    pub endpoints: (String, String),
    pub curve_label: String,
    pub curve_genus: u32,
    pub origin: NodeRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExceptionalCurve {
    pub home: String,
    pub touches: Vec<String>,
    pub origin: NodeRef,
    /// Set once the curve has degree zero against the canonical class.
    pub k_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointContact {
    pub endpoints: (String, String),
    pub origin: NodeRef,
}

/// The image, on a surviving component, of a component the relative minimal
/// model contracted onto a curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CollapsedCurve {
    pub host: String,
    pub collapsed_component: String,
    pub curve_label: String,
    pub curve_genus: u32,
    pub origin: NodeRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceModel {
    pub components: Vec<SurfaceComponent>,
    pub incidence_curves: Vec<IncidenceCurve>,
    pub exceptional_curves: Vec<ExceptionalCurve>,
    pub point_contacts: Vec<PointContact>,
    #[serde(default)]
    pub collapsed_curves: Vec<CollapsedCurve>,
    pub source: DualGraph,
}

impl SurfaceModel {
    pub fn component(&self, id: &str) -> Option<&SurfaceComponent> {
        self.components.iter().find(|c| c.id == id)
    }
}

pub fn symsq_id(component: &str) -> String {
    format!("Sym({component})")
}

pub fn product_id(a: &str, b: &str) -> String {
    format!("Bl({a},{b})")
}

fn curve_ref(graph: &DualGraph, i: usize) -> CurveRef {
    let c = &graph.components()[i];
    CurveRef {
        component: c.id.clone(),
        genus: c.genus,
        hyperelliptic: c.hyperelliptic,
        label: c.label.clone(),
    }
}

/// Builds the component model of `Hilb_2(C)` for a stable curve whose
/// components are all smooth.
pub fn build_hilb2_model(graph: &DualGraph) -> Result<SurfaceModel, ModelError> {
    if let Some(&(i, _)) = graph.nodes().iter().find(|(a, b)| a == b) {
        return Err(ModelError::SelfNode(graph.components()[i].id.clone()));
    }
    if let crate::curve_model::CurveStability::Unstable(reasons) = graph.stability() {
        return Err(ModelError::UnstableCurve(reasons));
    }
    let n = graph.component_count();
    let mut components: Vec<SurfaceComponent> = (0..n)
        .map(|i| {
            let curve = curve_ref(graph, i);
            SurfaceComponent::new(
                symsq_id(&curve.component),
                ComponentKind::SymSquare {
                    curve,
                    delta: graph.delta_at(i),
                },
            )
        })
        .collect();
    let mut incidence_curves = Vec::new();
    let mut exceptional_curves = Vec::new();
    let mut point_contacts = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let k = graph.multiplicity(i, j) as u32;
            if k == 0 {
                continue;
            }
            let (ci, cj) = (curve_ref(graph, i), curve_ref(graph, j));
            let (si, sj) = (symsq_id(&ci.component), symsq_id(&cj.component));
            let bl = product_id(&ci.component, &cj.component);
            for index in 0..k {
                let origin = NodeRef {
                    ends: (ci.component.clone(), cj.component.clone()),
                    index,
                };
                for c in [&ci, &cj] {
                    incidence_curves.push(IncidenceCurve {
                        endpoints: (symsq_id(&c.component), bl.clone()),
                        curve_label: c.label.clone(),
                        curve_genus: c.genus,
                        origin: origin.clone(),
                    });
                }
                exceptional_curves.push(ExceptionalCurve {
                    home: bl.clone(),
                    touches: vec![si.clone(), sj.clone()],
                    origin: origin.clone(),
                    k_zero: false,
                });
                point_contacts.push(PointContact {
                    endpoints: (si.clone(), sj.clone()),
                    origin,
                });
            }
            components.push(SurfaceComponent::new(
                bl,
                ComponentKind::ProductBlowup {
                    factors: [ci, cj],
                    blowup_count: k,
                },
            ));
        }
    }
    Ok(SurfaceModel {
        components,
        incidence_curves,
        exceptional_curves,
        point_contacts,
        collapsed_curves: Vec::new(),
        source: graph.clone(),
    })
}

/// Counts of the two kinds of singular cycles of degree two supported on the
/// nodes: pairs of distinct nodes, and a node taken twice (the bad points).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCensus {
    pub distinct_node_pairs: u64,
    pub bad_points: u64,
}

pub fn point_census(graph: &DualGraph) -> PointCensus {
    let n = graph.node_count() as u64;
    PointCensus {
        distinct_node_pairs: n * n.saturating_sub(1) / 2,
        bad_points: n,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MinimalModel {
    SymmetricSquare {
        label: String,
        genus: u32,
    },
    Product {
        labels: [String; 2],
        genera: [u32; 2],
    },
}

impl fmt::Display for MinimalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimalModel::SymmetricSquare { label, .. } => write!(f, "Sym^2({label})"),
            MinimalModel::Product { labels, .. } => write!(f, "{} x {}", labels[0], labels[1]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationComponent {
    pub component: String,
    pub minimal_model: MinimalModel,
    pub blowups: u32,
    pub chi: i128,
    pub k_sq: i128,
}

/// The normalization of each component, as a symmetric square or as a
/// product of curves with the number of points blown up on it.
pub fn normalization_components(model: &SurfaceModel) -> Vec<NormalizationComponent> {
    model
        .components
        .iter()
        .map(|c| {
            let (minimal_model, blowups) = match &c.kind {
                ComponentKind::SymSquare { curve, .. } => (
                    MinimalModel::SymmetricSquare {
                        label: curve.label.clone(),
                        genus: curve.genus,
                    },
                    0,
                ),
                ComponentKind::ProductBlowup {
                    factors,
                    blowup_count,
                } => (
                    MinimalModel::Product {
                        labels: [factors[0].label.clone(), factors[1].label.clone()],
                        genera: [factors[0].genus, factors[1].genus],
                    },
                    *blowup_count,
                ),
            };
            let (chi, k_sq) = c.minimal_model_invariants;
            NormalizationComponent {
                component: c.id.clone(),
                minimal_model,
                blowups,
                chi,
                k_sq,
            }
        })
        .collect()
}
