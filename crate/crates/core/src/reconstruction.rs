//! Recovering a stable curve from the relatively minimal model of its
//! Hilbert square.
//!
//! [`forget`] keeps only what an abstract isomorphism of surfaces preserves:
//!
//! * a symmetric square of a curve of genus other than 2 determines the curve;
//! * a product of curves determines its factors unless both are elliptic;
//! * the square of a genus-2 curve and a product of elliptic curves blown up
//!   once share all numerical invariants, so neither kind nor curve survives
//!   for them, only an opaque isomorphism-class token;
//! * curves along which components are glued, and curves onto which ruled
//!   components were collapsed, keep their isomorphism class.
//!
//! [`reconstruct`] then rebuilds the dual graph: vertices from the symmetric
//! squares (which are exactly the components meeting others in isolated
//! points) and the collapsed elliptic tails, edges from blown-up products,
//! and labels in the order the uniqueness argument determines them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ampleness::SurfaceKind;
use crate::curve_model::{CurveComponent, DualGraph, Hyperelliptic};
use crate::surface_model::{is_ambiguous_signature, ComponentKind, KindSignature, SurfaceModel};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum FactorRef {
    /// `(label, genus)` of both factors.
    KnownPair([(String, u32); 2]),
    EllipticProductClass(String),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Descriptor {
    SymSquare {
        genus: u32,
        hyperelliptic: Hyperelliptic,
        label: String,
    },
    Product {
        factor_genera: [u32; 2],
        blowup_count: u32,
        factors: FactorRef,
    },
    /// Either the square of a genus-2 curve or a product of two elliptic
    /// curves blown up once.
    AmbiguousKind {
        signature: KindSignature,
        surface_class: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViewComponent {
    pub id: String,
    pub descriptor: Descriptor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViewCurve {
    pub endpoints: (String, String),
    pub genus: u32,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViewCollapsedCurve {
    pub host: String,
    pub genus: u32,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForgottenView {
    pub components: Vec<ViewComponent>,
    pub incidence_curves: Vec<ViewCurve>,
    pub collapsed_curves: Vec<ViewCollapsedCurve>,
    pub point_contacts: Vec<(String, String)>,
}

/// Hands out `prefix0, prefix1, ...` so equal keys get equal tokens.
struct Tokens {
    prefix: &'static str,
    table: BTreeMap<String, String>,
}

impl Tokens {
    fn new(prefix: &'static str) -> Self {
        Self {
            prefix,
            table: BTreeMap::new(),
        }
    }

    fn get(&mut self, key: String) -> String {
        let next = format!("{}{}", self.prefix, self.table.len());
        self.table.entry(key).or_insert(next).clone()
    }
}

/// Erases everything an isomorphism of the surface does not determine.
pub fn forget(model: &SurfaceModel) -> ForgottenView {
    let mut classes = Tokens::new("T");
    let mut keyed: Vec<(Descriptor, usize)> = model
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let signature = c.kind.signature();
            let descriptor = match &c.kind {
                ComponentKind::SymSquare { curve, .. } if is_ambiguous_signature(signature) => {
                    Descriptor::AmbiguousKind {
                        signature,
                        surface_class: classes.get(format!("sym:{}", curve.label)),
                    }
                }
                ComponentKind::SymSquare { curve, .. } => Descriptor::SymSquare {
                    genus: curve.genus,
                    hyperelliptic: curve.hyperelliptic,
                    label: curve.label.clone(),
                },
                ComponentKind::ProductBlowup {
                    factors,
                    blowup_count,
                } => {
                    let mut pair = [
                        (factors[0].label.clone(), factors[0].genus),
                        (factors[1].label.clone(), factors[1].genus),
                    ];
                    pair.sort();
                    let class_key = || format!("prod:{}:{}:{blowup_count}", pair[0].0, pair[1].0);
                    if is_ambiguous_signature(signature) {
                        Descriptor::AmbiguousKind {
                            signature,
                            surface_class: classes.get(class_key()),
                        }
                    } else {
                        let mut factor_genera = [pair[0].1, pair[1].1];
                        factor_genera.sort();
                        let factors = if factor_genera == [1, 1] {
                            FactorRef::EllipticProductClass(classes.get(class_key()))
                        } else {
                            FactorRef::KnownPair(pair)
                        };
                        Descriptor::Product {
                            factor_genera,
                            blowup_count: *blowup_count,
                            factors,
                        }
                    }
                }
            };
            (descriptor, i)
        })
        .collect();
    keyed.sort();
    let mut new_id = vec![String::new(); model.components.len()];
    for (pos, (_, i)) in keyed.iter().enumerate() {
        new_id[*i] = format!("X{pos}");
    }
    let rename = |id: &str| {
        let i = model
            .components
            .iter()
            .position(|c| c.id == id)
            .expect("model curves reference model components");
        new_id[i].clone()
    };
    let pair = |a: &str, b: &str| {
        let (a, b) = (rename(a), rename(b));
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    };
    let components = keyed
        .into_iter()
        .map(|(descriptor, i)| ViewComponent {
            id: new_id[i].clone(),
            descriptor,
        })
        .collect();
    let mut incidence_curves: Vec<ViewCurve> = model
        .incidence_curves
        .iter()
        .map(|c| ViewCurve {
            endpoints: pair(&c.endpoints.0, &c.endpoints.1),
            genus: c.curve_genus,
            label: c.curve_label.clone(),
        })
        .collect();
    incidence_curves.sort_by(|a, b| (&a.endpoints, &a.label).cmp(&(&b.endpoints, &b.label)));
    let mut collapsed_curves: Vec<ViewCollapsedCurve> = model
        .collapsed_curves
        .iter()
        .map(|c| ViewCollapsedCurve {
            host: rename(&c.host),
            genus: c.curve_genus,
            label: c.curve_label.clone(),
        })
        .collect();
    collapsed_curves.sort_by(|a, b| (&a.host, &a.label).cmp(&(&b.host, &b.label)));
    let mut point_contacts: Vec<(String, String)> = model
        .point_contacts
        .iter()
        .map(|p| pair(&p.endpoints.0, &p.endpoints.1))
        .collect();
    point_contacts.sort();
    ForgottenView {
        components,
        incidence_curves,
        collapsed_curves,
        point_contacts,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructionError {
    #[error("arithmetic genus {0} < 3: reconstruction needs genus at least 3")]
    ArithmeticGenusTooSmall(u32),
    #[error("cannot determine the curve of {component}: {reason}")]
    UnresolvableLabel { component: String, reason: String },
    #[error("inconsistent view: {0}")]
    Inconsistent(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolution {
    /// The symmetric square determines the curve.
    Direct,
    /// Read off an adjacent product with a known factor pair.
    ViaProduct,
    /// Two genus-2 factors with distinct classes, told apart by the curve the
    /// square is glued along.
    ViaGluingCurve,
    /// An elliptic tail on a product of elliptic curves, read off the curve
    /// its ruled square collapsed onto.
    EllipticChain,
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Resolution::Direct => "direct",
            Resolution::ViaProduct => "via-product",
            Resolution::ViaGluingCurve => "via-gluing-curve",
            Resolution::EllipticChain => "elliptic-chain",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionNote {
    pub component: String,
    pub resolution: Resolution,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructionReport {
    pub graph: DualGraph,
    pub notes: Vec<ResolutionNote>,
}

#[derive(Clone, Debug)]
enum Resolved {
    Square {
        genus: u32,
        hyperelliptic: Hyperelliptic,
        label: Option<String>,
    },
    Product {
        genera: [u32; 2],
        blowup_count: u32,
        pair: Option<[(String, u32); 2]>,
    },
}

struct Vertex {
    genus: u32,
    hyperelliptic: Hyperelliptic,
    label: Option<(String, Resolution)>,
    /// View id of the symmetric square, or of the collapsed curve's host.
    square: Option<String>,
    tail_host: Option<(String, String)>,
}

fn curves_on<'a>(view: &'a ForgottenView, id: &'a str) -> impl Iterator<Item = &'a ViewCurve> + 'a {
    view.incidence_curves
        .iter()
        .filter(move |c| c.endpoints.0 == id || c.endpoints.1 == id)
}

fn other_end(c: &ViewCurve, id: &str) -> String {
    if c.endpoints.0 == id {
        c.endpoints.1.clone()
    } else {
        c.endpoints.0.clone()
    }
}

fn inconsistent(msg: impl Into<String>) -> ReconstructionError {
    ReconstructionError::Inconsistent(msg.into())
}

/// Rebuilds the dual graph from a forgotten view of a relatively minimal
/// model.
pub fn reconstruct(view: &ForgottenView) -> Result<ReconstructionReport, ReconstructionError> {
    // Symmetric squares are the components meeting another in isolated
    // points. Failing that, a genus-2 square is glued along copies of its
    // genus-2 curve (or is the whole surface), while a product of elliptic
    // curves only carries genus-1 curves.
    let mut resolved: BTreeMap<String, Resolved> = BTreeMap::new();
    for c in &view.components {
        let r = match &c.descriptor {
            Descriptor::SymSquare {
                genus,
                hyperelliptic,
                label,
            } => Resolved::Square {
                genus: *genus,
                hyperelliptic: *hyperelliptic,
                label: Some(label.clone()),
            },
            Descriptor::Product {
                factor_genera,
                blowup_count,
                factors,
            } => Resolved::Product {
                genera: *factor_genera,
                blowup_count: *blowup_count,
                pair: match factors {
                    FactorRef::KnownPair(p) => Some(p.clone()),
                    FactorRef::EllipticProductClass(_) => None,
                },
            },
            Descriptor::AmbiguousKind { .. } => {
                let touches_point = view
                    .point_contacts
                    .iter()
                    .any(|p| p.0 == c.id || p.1 == c.id);
                let genus_two_curve = curves_on(view, &c.id).any(|k| k.genus == 2);
                let isolated = curves_on(view, &c.id).next().is_none()
                    && !view.collapsed_curves.iter().any(|k| k.host == c.id);
                if touches_point || genus_two_curve || isolated {
                    Resolved::Square {
                        genus: 2,
                        hyperelliptic: Hyperelliptic::Yes,
                        label: None,
                    }
                } else {
                    Resolved::Product {
                        genera: [1, 1],
                        blowup_count: 1,
                        pair: None,
                    }
                }
            }
        };
        resolved.insert(c.id.clone(), r);
    }

    let mut vertices: Vec<Vertex> = Vec::new();
    let mut vertex_of_square: BTreeMap<String, usize> = BTreeMap::new();
    for (id, r) in &resolved {
        if let Resolved::Square {
            genus,
            hyperelliptic,
            label,
        } = r
        {
            vertex_of_square.insert(id.clone(), vertices.len());
            vertices.push(Vertex {
                genus: *genus,
                hyperelliptic: *hyperelliptic,
                label: label.clone().map(|l| (l, Resolution::Direct)),
                square: Some(id.clone()),
                tail_host: None,
            });
        }
    }
    let mut tails_on: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for c in &view.collapsed_curves {
        if c.genus != 1 {
            return Err(inconsistent(format!(
                "collapsed curve on {} has genus {}, expected an elliptic tail",
                c.host, c.genus
            )));
        }
        if !matches!(resolved.get(&c.host), Some(Resolved::Product { .. })) {
            return Err(inconsistent(format!(
                "collapsed curve hosted by non-product {}",
                c.host
            )));
        }
        tails_on
            .entry(c.host.clone())
            .or_default()
            .push(vertices.len());
        vertices.push(Vertex {
            genus: 1,
            hyperelliptic: Hyperelliptic::Yes,
            label: None,
            square: None,
            tail_host: Some((c.host.clone(), c.label.clone())),
        });
    }

    // Each product joins the two curves whose squares (or tails) it meets.
    struct Edge {
        product: String,
        ends: [usize; 2],
        multiplicity: u32,
        pair: Option<[(String, u32); 2]>,
    }
    let mut edges: Vec<Edge> = Vec::new();
    for (id, r) in &resolved {
        let Resolved::Product {
            genera,
            blowup_count,
            pair,
        } = r
        else {
            continue;
        };
        let mut ends: Vec<usize> = Vec::new();
        for k in curves_on(view, id) {
            let other = other_end(k, id);
            let v = *vertex_of_square
                .get(&other)
                .ok_or_else(|| inconsistent(format!("{id} is glued to non-square {other}")))?;
            let count = curves_on(view, id)
                .filter(|c| other_end(c, id) == other)
                .count() as u32;
            if count != *blowup_count {
                return Err(inconsistent(format!(
                    "{id} meets {other} along {count} curves but has {blowup_count} blown-up points"
                )));
            }
            if !ends.contains(&v) {
                ends.push(v);
            }
        }
        ends.extend(tails_on.get(id).into_iter().flatten().copied());
        let ends: [usize; 2] = ends.try_into().map_err(|e: Vec<usize>| {
            inconsistent(format!(
                "{id} meets {} curve components, expected 2",
                e.len()
            ))
        })?;
        let mut end_genera = [vertices[ends[0]].genus, vertices[ends[1]].genus];
        end_genera.sort();
        if end_genera != *genera {
            return Err(inconsistent(format!(
                "{id} has factor genera {genera:?} but meets curves of genera {end_genera:?}"
            )));
        }
        if let (Some(a), Some(b)) = (&vertices[ends[0]].square, &vertices[ends[1]].square) {
            let key = if a <= b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            };
            let contacts = view.point_contacts.iter().filter(|p| **p == key).count() as u32;
            if contacts != *blowup_count {
                return Err(inconsistent(format!(
                    "{a} and {b} meet in {contacts} points but {id} has {blowup_count} blown-up points"
                )));
            }
        }
        edges.push(Edge {
            product: id.clone(),
            ends,
            multiplicity: *blowup_count,
            pair: pair.clone(),
        });
    }

    let genus_sum: u32 = vertices.iter().map(|v| v.genus).sum();
    let node_count: u32 = edges.iter().map(|e| e.multiplicity).sum();
    let pa = (genus_sum + node_count + 1)
        .checked_sub(vertices.len() as u32)
        .ok_or_else(|| inconsistent("more components than nodes allow for a connected curve"))?;
    if pa < 3 {
        return Err(ReconstructionError::ArithmeticGenusTooSmall(pa));
    }

    // Genus-2 curves from products with a known factor pair.
    let pending: Vec<usize> = (0..vertices.len())
        .filter(|&v| vertices[v].label.is_none() && vertices[v].genus == 2)
        .collect();
    for v in pending {
        let square = vertices[v]
            .square
            .clone()
            .expect("genus-2 vertices are squares");
        let mut found = None;
        for e in edges.iter().filter(|e| e.ends.contains(&v)) {
            let Some(pair) = &e.pair else { continue };
            let candidates: Vec<&String> = pair
                .iter()
                .filter(|(_, g)| *g == 2)
                .map(|(l, _)| l)
                .collect();
            match candidates.as_slice() {
                [l] => found = Some(((*l).clone(), Resolution::ViaProduct)),
                [a, b] if a == b => found = Some(((*a).clone(), Resolution::ViaProduct)),
                [_, _] => {
                    let glued = curves_on(view, &e.product)
                        .find(|c| other_end(c, &e.product) == square)
                        .map(|c| c.label.clone());
                    if let Some(l) = glued {
                        found = Some((l, Resolution::ViaGluingCurve));
                    }
                }
                _ => {}
            }
            if found.is_some() {
                break;
            }
        }
        vertices[v].label = Some(found.ok_or_else(|| ReconstructionError::UnresolvableLabel {
            component: square,
            reason: "genus-2 square with no adjacent product of known factors".into(),
        })?);
    }

    // Elliptic tails: from a known factor pair, else from the collapsed curve.
    for v in 0..vertices.len() {
        let Some((host, collapsed_label)) = vertices[v].tail_host.clone() else {
            continue;
        };
        let edge = edges
            .iter()
            .find(|e| e.product == host)
            .expect("every tail host is a product edge");
        let label = match &edge.pair {
            Some(pair) => {
                let other = edge.ends[0] + edge.ends[1] - v;
                let elliptic: Vec<&String> = pair
                    .iter()
                    .filter(|(_, g)| *g == 1)
                    .map(|(l, _)| l)
                    .collect();
                match elliptic.as_slice() {
                    [l] => ((*l).clone(), Resolution::ViaProduct),
                    _ => {
                        return Err(ReconstructionError::UnresolvableLabel {
                            component: host,
                            reason: format!(
                                "product with known factors but {} elliptic entries beside a genus-{} curve",
                                elliptic.len(),
                                vertices[other].genus
                            ),
                        })
                    }
                }
            }
            None => (collapsed_label, Resolution::EllipticChain),
        };
        vertices[v].label = Some(label);
    }

    let width = vertices.len().saturating_sub(1).to_string().len();
    let id = |v: usize| format!("C{v:0width$}");
    let mut components = Vec::with_capacity(vertices.len());
    let mut notes = Vec::with_capacity(vertices.len());
    for (i, v) in vertices.iter().enumerate() {
        let (label, resolution) = v.label.clone().expect("every vertex is labelled above");
        components.push(CurveComponent::new(id(i), v.genus, v.hyperelliptic).with_label(label));
        notes.push(ResolutionNote {
            component: id(i),
            resolution,
        });
    }
    let nodes: Vec<(String, String)> = edges
        .iter()
        .flat_map(|e| (0..e.multiplicity).map(move |_| (id(e.ends[0]), id(e.ends[1]))))
        .collect();
    let graph = DualGraph::new(components, nodes).map_err(|e| inconsistent(e.to_string()))?;
    if !graph.is_stable() {
        return Err(inconsistent("reconstructed curve is not stable"));
    }
    Ok(ReconstructionReport { graph, notes })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "snake_case")]
pub enum Ambiguity {
    Determined,
    Ambiguous(String),
}

/// Whether a curve of genus `g` has a finite self-cover of degree `n >= 2`,
/// i.e. `2g - 2 = n(2g - 2) + r` with `r >= 0`.
fn has_nontrivial_self_cover(g: u32) -> bool {
    let chi = 2 * i64::from(g) - 2;
    (2..=8).any(|n| chi - n * chi >= 0)
}

/// Whether the isomorphism class of a surface of this kind pins down the
/// curves it is built from.
pub fn component_ambiguity(kind: SurfaceKind) -> Ambiguity {
    match kind {
        SurfaceKind::SymSq { g: 2 } => Ambiguity::Ambiguous(
            "the square of a genus-2 curve only determines its Jacobian class".into(),
        ),
        SurfaceKind::SymSq { .. } => Ambiguity::Determined,
        SurfaceKind::Product { g1, g2 } => {
            // rational curves are unique, so only covers between curves of
            // positive genus can mix the factors up
            let free = |g: u32| g > 0 && has_nontrivial_self_cover(g);
            if free(g1) && free(g2) {
                Ambiguity::Ambiguous("all factors are elliptic".into())
            } else {
                Ambiguity::Determined
            }
        }
    }
}
