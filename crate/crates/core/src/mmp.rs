//! Relative minimal and canonical models of `Hilb_2(C)`.
//!
//! The engine knows four contraction rules and nothing else:
//!
//! 1. the symmetric square of an elliptic tail is ruled and collapses onto
//!    its curve of intersection with the neighbouring product, after which the
//!    exceptional curve on that product is zero on `K`;
//! 2. `K`-trivial `(-1)`-curves are blown down: exceptional curves marked by
//!    rule 1, and the image of the hyperelliptic graph on the square of a
//!    genus-2 component with `δ = 1` (leaving its Jacobian);
//! 3. the `(-2)`-curve on the square of a smooth hyperelliptic genus-3 curve
//!    is blown down;
//! 4. the square of a rational component with three nodes is a plane on
//!    which `K` is trivial, and collapses to a point.
//!
//! Anything else that keeps the canonical class from being ample is reported
//! as [`MmpError::UnsupportedConfiguration`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve_model::{DualGraph, Hyperelliptic};
use crate::stability::Clause;
use crate::surface_model::{
    symsq_id, CollapsedCurve, ComponentKind, CurveRef, ExceptionalCurve, IncidenceCurve, NodeRef,
    PointContact, SurfaceComponent, SurfaceModel,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MmpError {
    #[error("unsupported configuration at {component}: {reason}")]
    UnsupportedConfiguration { component: String, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    CollapseEllipticRuled,
    BlowDownMinusOne,
    BlowDownMinusTwo,
    CollapsePlaneComponent,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionMove {
    pub rule: Rule,
    /// Component the move acts on, as named before the move.
    pub target: String,
    /// The exceptional curve blown down, when the move is on a product.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<NodeRef>,
    /// New id of the target when the move changes its kind.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<String>,
    pub effect: String,
}

impl fmt::Display for ContractionMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}): {}", self.rule, self.target, self.effect)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum StableKind {
    SymSquare {
        curve: CurveRef,
        delta: u32,
    },
    ProductBlowup {
        factors: [CurveRef; 2],
        blowup_count: u32,
    },
    Product {
        factors: [CurveRef; 2],
    },
    /// Jacobian of a genus-2 curve, the image of its symmetric square.
    AbelianSurface {
        jacobian_of: String,
        curve: CurveRef,
    },
    /// Symmetric square of a hyperelliptic genus-3 curve with its
    /// `(-2)`-curve contracted.
    SymSquareCanonical {
        curve: CurveRef,
    },
    CollapsedPoint {
        curve: CurveRef,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StableComponent {
    pub id: String,
    pub kind: StableKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GluingCurve {
    pub endpoints: (String, String),
    pub curve_label: String,
    pub curve_genus: u32,
    pub origin: NodeRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CollapseImage {
    Curve { label: String, genus: u32 },
    Point,
}

/// Where a contracted component meets a surviving one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CollapseRecord {
    pub collapsed: String,
    pub host: String,
    pub image: CollapseImage,
    pub origin: NodeRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableSurfaceModel {
    pub components: Vec<StableComponent>,
    pub gluing_curves: Vec<GluingCurve>,
    pub exceptional_curves: Vec<ExceptionalCurve>,
    pub point_contacts: Vec<PointContact>,
    pub collapses: Vec<CollapseRecord>,
    pub move_log: Vec<ContractionMove>,
    pub source: DualGraph,
}

impl StableSurfaceModel {
    pub fn component(&self, id: &str) -> Option<&StableComponent> {
        self.components.iter().find(|c| c.id == id)
    }

    fn from_surface_model(model: &SurfaceModel) -> Self {
        let components = model
            .components
            .iter()
            .map(|c| StableComponent {
                id: c.id.clone(),
                kind: match &c.kind {
                    ComponentKind::SymSquare { curve, delta } => StableKind::SymSquare {
                        curve: curve.clone(),
                        delta: *delta,
                    },
                    ComponentKind::ProductBlowup {
                        factors,
                        blowup_count,
                    } => StableKind::ProductBlowup {
                        factors: factors.clone(),
                        blowup_count: *blowup_count,
                    },
                },
            })
            .collect();
        let gluing_curves = model
            .incidence_curves
            .iter()
            .map(|c| GluingCurve {
                endpoints: c.endpoints.clone(),
                curve_label: c.curve_label.clone(),
                curve_genus: c.curve_genus,
                origin: c.origin.clone(),
            })
            .collect();
        let collapses = model
            .collapsed_curves
            .iter()
            .map(|c| CollapseRecord {
                collapsed: c.collapsed_component.clone(),
                host: c.host.clone(),
                image: CollapseImage::Curve {
                    label: c.curve_label.clone(),
                    genus: c.curve_genus,
                },
                origin: c.origin.clone(),
            })
            .collect();
        StableSurfaceModel {
            components,
            gluing_curves,
            exceptional_curves: model.exceptional_curves.clone(),
            point_contacts: model.point_contacts.clone(),
            collapses,
            move_log: Vec::new(),
            source: model.source.clone(),
        }
    }

    /// Back to a [`SurfaceModel`]; only valid while every component is still
    /// a symmetric square or a blown-up product.
    fn into_surface_model(self) -> SurfaceModel {
        let components = self
            .components
            .into_iter()
            .map(|c| {
                let kind = match c.kind {
                    StableKind::SymSquare { curve, delta } => {
                        ComponentKind::SymSquare { curve, delta }
                    }
                    StableKind::ProductBlowup {
                        factors,
                        blowup_count,
                    } => ComponentKind::ProductBlowup {
                        factors,
                        blowup_count,
                    },
                    other => unreachable!("minimal models have no {other:?} components"),
                };
                SurfaceComponent::new(c.id, kind)
            })
            .collect();
        let incidence_curves = self
            .gluing_curves
            .into_iter()
            .map(|c| IncidenceCurve {
                endpoints: c.endpoints,
                curve_label: c.curve_label,
                curve_genus: c.curve_genus,
                origin: c.origin,
            })
            .collect();
        let collapsed_curves = self
            .collapses
            .into_iter()
            .map(|c| match c.image {
                CollapseImage::Curve { label, genus } => CollapsedCurve {
                    host: c.host,
                    collapsed_component: c.collapsed,
                    curve_label: label,
                    curve_genus: genus,
                    origin: c.origin,
                },
                CollapseImage::Point => unreachable!("minimal models only collapse onto curves"),
            })
            .collect();
        SurfaceModel {
            components,
            incidence_curves,
            exceptional_curves: self.exceptional_curves,
            point_contacts: self.point_contacts,
            collapsed_curves,
            source: self.source,
        }
    }

    fn position(&self, id: &str) -> usize {
        self.components
            .iter()
            .position(|c| c.id == id)
            .expect("rules only name existing components")
    }

    fn rename(&mut self, old: &str, new: &str) {
        let fix = |s: &mut String| {
            if s == old {
                *s = new.to_string();
            }
        };
        for c in &mut self.components {
            fix(&mut c.id);
        }
        for c in &mut self.gluing_curves {
            fix(&mut c.endpoints.0);
            fix(&mut c.endpoints.1);
        }
        for c in &mut self.exceptional_curves {
            fix(&mut c.home);
            c.touches.iter_mut().for_each(fix);
        }
        for p in &mut self.point_contacts {
            fix(&mut p.endpoints.0);
            fix(&mut p.endpoints.1);
        }
        for c in &mut self.collapses {
            fix(&mut c.host);
        }
    }

    /// Ids of symmetric-square components satisfying `pred`, sorted.
    fn squares_where(&self, pred: impl Fn(&CurveRef, u32) -> bool) -> Vec<String> {
        let mut ids: Vec<String> = self
            .components
            .iter()
            .filter_map(|c| match &c.kind {
                StableKind::SymSquare { curve, delta } if pred(curve, *delta) => Some(c.id.clone()),
                _ => None,
            })
            .collect();
        ids.sort();
        ids
    }

    fn square_curve(&self, id: &str) -> CurveRef {
        match &self.components[self.position(id)].kind {
            StableKind::SymSquare { curve, .. } => curve.clone(),
            other => unreachable!("{id} is {other:?}"),
        }
    }

    fn collapse_elliptic_tails(&mut self, log: &mut Vec<ContractionMove>) {
        for id in self.squares_where(|c, delta| c.genus == 1 && delta == 1) {
            let curve = self.square_curve(&id);
            let i = self.position(&id);
            self.components.remove(i);
            let (gone, kept): (Vec<_>, Vec<_>) = std::mem::take(&mut self.gluing_curves)
                .into_iter()
                .partition(|g| g.endpoints.0 == id || g.endpoints.1 == id);
            self.gluing_curves = kept;
            let mut hosts = Vec::new();
            for g in gone {
                let host = if g.endpoints.0 == id {
                    g.endpoints.1
                } else {
                    g.endpoints.0
                };
                hosts.push(host.clone());
                self.collapses.push(CollapseRecord {
                    collapsed: id.clone(),
                    host,
                    image: CollapseImage::Curve {
                        label: g.curve_label,
                        genus: g.curve_genus,
                    },
                    origin: g.origin,
                });
            }
            self.point_contacts
                .retain(|p| p.endpoints.0 != id && p.endpoints.1 != id);
            for e in &mut self.exceptional_curves {
                if let Some(k) = e.touches.iter().position(|t| *t == id) {
                    e.touches.remove(k);
                    e.k_zero = true;
                }
            }
            log.push(ContractionMove {
                rule: Rule::CollapseEllipticRuled,
                target: id.clone(),
                curve: None,
                result: None,
                effect: format!(
                    "ruled surface {id} collapses onto its curve of intersection {} (genus 1) with {}",
                    curve.label,
                    hosts.join(", ")
                ),
            });
        }
    }

    fn blow_down_minus_one(&mut self, log: &mut Vec<ContractionMove>) {
        let mut marked: Vec<ExceptionalCurve> = self
            .exceptional_curves
            .iter()
            .filter(|e| e.k_zero)
            .cloned()
            .collect();
        marked.sort_by(|a, b| (&a.home, &a.origin).cmp(&(&b.home, &b.origin)));
        for e in marked {
            self.exceptional_curves.retain(|x| *x != e);
            let i = self.position(&e.home);
            let StableKind::ProductBlowup {
                factors,
                blowup_count,
            } = self.components[i].kind.clone()
            else {
                unreachable!("exceptional curves live on blown-up products")
            };
            let result = if blowup_count > 1 {
                self.components[i].kind = StableKind::ProductBlowup {
                    factors,
                    blowup_count: blowup_count - 1,
                };
                None
            } else {
                let new_id = format!("Prod({},{})", factors[0].component, factors[1].component);
                self.components[i].kind = StableKind::Product { factors };
                self.rename(&e.home, &new_id);
                Some(new_id)
            };
            let effect = match &result {
                Some(new_id) => format!(
                    "blow down the K-trivial (-1)-curve over node {}; {} becomes the product {new_id}",
                    e.origin, e.home
                ),
                None => format!(
                    "blow down the K-trivial (-1)-curve over node {}; {} has {} blown-up points left",
                    e.origin,
                    e.home,
                    blowup_count - 1
                ),
            };
            log.push(ContractionMove {
                rule: Rule::BlowDownMinusOne,
                target: e.home,
                curve: Some(e.origin),
                result,
                effect,
            });
        }
        for id in self.squares_where(|c, delta| c.genus == 2 && delta == 1) {
            let curve = self.square_curve(&id);
            let new_id = format!("Jac({})", curve.component);
            let i = self.position(&id);
            self.components[i].kind = StableKind::AbelianSurface {
                jacobian_of: curve.label.clone(),
                curve: curve.clone(),
            };
            self.rename(&id, &new_id);
            log.push(ContractionMove {
                rule: Rule::BlowDownMinusOne,
                target: id.clone(),
                curve: None,
                result: Some(new_id.clone()),
                effect: format!(
                    "blow down the rational (-1)-curve covered by the hyperelliptic graph; {id} becomes {new_id}, the Jacobian of {}",
                    curve.label
                ),
            });
        }
    }

    fn blow_down_minus_two(&mut self, log: &mut Vec<ContractionMove>) -> Result<(), MmpError> {
        for id in self.squares_where(|c, delta| c.genus == 3 && delta == 0) {
            let curve = self.square_curve(&id);
            match curve.hyperelliptic {
                Hyperelliptic::Yes => {}
                Hyperelliptic::Unknown => {
                    return Err(MmpError::UnsupportedConfiguration {
                        component: id,
                        reason: "genus-3 curve with unknown hyperelliptic flag: the (-2)-curve may or may not exist".into(),
                    })
                }
                Hyperelliptic::No => continue,
            }
            let new_id = format!("SymCan({})", curve.component);
            let i = self.position(&id);
            self.components[i].kind = StableKind::SymSquareCanonical { curve };
            self.rename(&id, &new_id);
            log.push(ContractionMove {
                rule: Rule::BlowDownMinusTwo,
                target: id.clone(),
                curve: None,
                result: Some(new_id.clone()),
                effect: format!(
                    "blow down the rational (-2)-curve covered by the hyperelliptic graph; {id} becomes {new_id}"
                ),
            });
        }
        Ok(())
    }

    fn collapses_somewhere(&self, component: usize) -> bool {
        let c = &self.source.components()[component];
        let delta = self.source.delta_at(component);
        (c.genus == 1 && delta == 1) || (c.genus == 0 && delta == 3)
    }

    fn collapse_planes(&mut self, log: &mut Vec<ContractionMove>) -> Result<(), MmpError> {
        for id in self.squares_where(|c, delta| c.genus == 0 && delta == 3) {
            let curve = self.square_curve(&id);
            let v = self
                .source
                .index_of(&curve.component)
                .expect("model components come from the source graph");
            if let Some(&w) = self
                .source
                .neighbours(v)
                .iter()
                .find(|&&w| self.collapses_somewhere(w))
            {
                return Err(MmpError::UnsupportedConfiguration {
                    component: id,
                    reason: format!(
                        "plane component adjacent to {}, which is contracted as well",
                        symsq_id(&self.source.components()[w].id)
                    ),
                });
            }
            let (gone, kept): (Vec<_>, Vec<_>) = std::mem::take(&mut self.gluing_curves)
                .into_iter()
                .partition(|g| g.endpoints.0 == id || g.endpoints.1 == id);
            self.gluing_curves = kept;
            let mut hosts: Vec<String> = Vec::new();
            for g in gone {
                let host = if g.endpoints.0 == id {
                    g.endpoints.1
                } else {
                    g.endpoints.0
                };
                if !hosts.contains(&host) {
                    hosts.push(host.clone());
                }
                self.collapses.push(CollapseRecord {
                    collapsed: id.clone(),
                    host,
                    image: CollapseImage::Point,
                    origin: g.origin,
                });
            }
            self.point_contacts
                .retain(|p| p.endpoints.0 != id && p.endpoints.1 != id);
            for e in &mut self.exceptional_curves {
                e.touches.retain(|t| *t != id);
            }
            let new_id = format!("Pt({})", curve.component);
            let i = self.position(&id);
            self.components[i].kind = StableKind::CollapsedPoint { curve };
            self.rename(&id, &new_id);
            log.push(ContractionMove {
                rule: Rule::CollapsePlaneComponent,
                target: id.clone(),
                curve: None,
                result: Some(new_id),
                effect: format!(
                    "K-trivial plane {id} collapses to a point; its curves of intersection with {} collapse to points",
                    hosts.join(", ")
                ),
            });
        }
        Ok(())
    }

    /// Rejects any remaining symmetric square whose log-canonical class is
    /// not ample.
    fn check_covered(&self) -> Result<(), MmpError> {
        let mut squares: Vec<(&String, &CurveRef, u32)> = self
            .components
            .iter()
            .filter_map(|c| match &c.kind {
                StableKind::SymSquare { curve, delta } => Some((&c.id, curve, *delta)),
                _ => None,
            })
            .collect();
        squares.sort();
        for (id, curve, delta) in squares {
            if Clause::for_component(curve.genus, curve.hyperelliptic).holds(delta) {
                continue;
            }
            let reason = match (curve.genus, delta) {
                (1, _) => format!("elliptic component with delta = {delta}: K-trivial curves on a ruled surface that no rule contracts"),
                (2, 0) => "symmetric square of a smooth genus-2 curve is not of general type".to_string(),
                (0, _) => format!("rational component with delta = {delta}"),
                _ => format!("genus-{} component with delta = {delta} has a non-ample log-canonical class", curve.genus),
            };
            return Err(MmpError::UnsupportedConfiguration {
                component: id.clone(),
                reason,
            });
        }
        Ok(())
    }

    fn run_canonical_rules(&mut self) -> Result<Vec<ContractionMove>, MmpError> {
        let mut log = Vec::new();
        self.collapse_elliptic_tails(&mut log);
        self.blow_down_minus_one(&mut log);
        self.blow_down_minus_two(&mut log)?;
        self.collapse_planes(&mut log)?;
        self.check_covered()?;
        Ok(log)
    }
}

/// Collapses the ruled symmetric squares of elliptic tails.
pub fn relative_minimal_model(model: &SurfaceModel) -> (SurfaceModel, Vec<ContractionMove>) {
    let mut state = StableSurfaceModel::from_surface_model(model);
    let mut log = Vec::new();
    state.collapse_elliptic_tails(&mut log);
    (state.into_surface_model(), log)
}

/// Runs the relative minimal model and then every canonical-model rule.
pub fn relative_canonical_model(
    model: &SurfaceModel,
) -> Result<(StableSurfaceModel, Vec<ContractionMove>), MmpError> {
    let mut state = StableSurfaceModel::from_surface_model(model);
    let log = state.run_canonical_rules()?;
    state.move_log = log.clone();
    Ok((state, log))
}

/// Applies the canonical-model rules to an already processed model. The
/// returned log is empty when the input is already canonical.
pub fn recanonicalize(
    model: &StableSurfaceModel,
) -> Result<(StableSurfaceModel, Vec<ContractionMove>), MmpError> {
    let mut state = model.clone();
    let log = state.run_canonical_rules()?;
    state.move_log.extend(log.iter().cloned());
    Ok((state, log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_model::parse_dual_graph;
    use crate::stability::is_hilb2_stable;
    use crate::surface_model::build_hilb2_model;

    fn model(text: &str) -> SurfaceModel {
        build_hilb2_model(&parse_dual_graph(text).unwrap()).unwrap()
    }

    fn rules(log: &[ContractionMove]) -> Vec<(Rule, &str)> {
        log.iter().map(|m| (m.rule, m.target.as_str())).collect()
    }

    #[test]
    fn minimal_model_collapses_elliptic_tail() {
        let (m, log) = relative_minimal_model(&model(
            "component C1 genus=2\ncomponent C2 genus=1\nnode C1 C2",
        ));
        assert_eq!(rules(&log), [(Rule::CollapseEllipticRuled, "Sym(C2)")]);
        let ids: Vec<&str> = m.components.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["Sym(C1)", "Bl(C1,C2)"]);
        assert_eq!(m.exceptional_curves.len(), 1);
        assert!(m.exceptional_curves[0].k_zero);
        assert_eq!(m.exceptional_curves[0].touches, ["Sym(C1)"]);
        assert!(m.point_contacts.is_empty());
        assert_eq!(m.collapsed_curves.len(), 1);
        assert_eq!(m.collapsed_curves[0].host, "Bl(C1,C2)");
        assert_eq!(m.collapsed_curves[0].curve_label, "C2");
    }

    #[test]
    fn minimal_model_leaves_other_curves_alone() {
        let m = model("component A genus=3 hyperelliptic=false\ncomponent B genus=4\nnode A B");
        let (out, log) = relative_minimal_model(&m);
        assert!(log.is_empty());
        assert_eq!(out, m);

        let m = model("component E genus=1\ncomponent B genus=2\nnode E B\nnode E B\nnode E B");
        let (out, log) = relative_minimal_model(&m);
        assert!(log.is_empty());
        assert_eq!(out, m);
    }

    #[test]
    fn genus_two_with_elliptic_tail() {
        let (m, log) = relative_canonical_model(&model(
            "component C1 genus=2\ncomponent C2 genus=1\nnode C1 C2",
        ))
        .unwrap();
        assert_eq!(
            rules(&log),
            [
                (Rule::CollapseEllipticRuled, "Sym(C2)"),
                (Rule::BlowDownMinusOne, "Bl(C1,C2)"),
                (Rule::BlowDownMinusOne, "Sym(C1)"),
            ]
        );
        let kinds: Vec<&StableKind> = m.components.iter().map(|c| &c.kind).collect();
        assert!(
            matches!(kinds[0], StableKind::AbelianSurface { jacobian_of, .. } if jacobian_of == "C1")
        );
        assert!(matches!(kinds[1], StableKind::Product { .. }));
        assert_eq!(m.gluing_curves.len(), 1);
        let glue = &m.gluing_curves[0];
        assert_eq!(glue.endpoints, ("Jac(C1)".into(), "Prod(C1,C2)".into()));
        assert_eq!((glue.curve_label.as_str(), glue.curve_genus), ("C1", 2));
        assert!(m.exceptional_curves.is_empty());
    }

    #[test]
    fn hyperelliptic_genus_three() {
        let (m, log) =
            relative_canonical_model(&model("component A genus=3 hyperelliptic=true")).unwrap();
        assert_eq!(rules(&log), [(Rule::BlowDownMinusTwo, "Sym(A)")]);
        assert!(matches!(
            m.components[0].kind,
            StableKind::SymSquareCanonical { .. }
        ));

        let err = relative_canonical_model(&model("component A genus=3 hyperelliptic=unknown"))
            .unwrap_err();
        assert!(matches!(err, MmpError::UnsupportedConfiguration { .. }));
    }

    #[test]
    fn rational_component_with_three_nodes() {
        let (m, log) = relative_canonical_model(&model(
            "component R genus=0\ncomponent E genus=1\nnode R E\nnode R E\nnode R E",
        ))
        .unwrap();
        assert_eq!(rules(&log), [(Rule::CollapsePlaneComponent, "Sym(R)")]);
        assert!(matches!(
            m.component("Pt(R)").unwrap().kind,
            StableKind::CollapsedPoint { .. }
        ));
        let points: Vec<_> = m
            .collapses
            .iter()
            .filter(|c| c.image == CollapseImage::Point)
            .map(|c| c.host.as_str())
            .collect();
        assert_eq!(points, ["Bl(E,R)"; 3]);
        assert!(m.gluing_curves.iter().all(|g| g.curve_label == "E"));
        assert!(m.point_contacts.is_empty());
    }

    #[test]
    fn plane_next_to_elliptic_tail_is_rejected() {
        let m = model(
            "component R genus=0\ncomponent A genus=1\ncomponent B genus=1\ncomponent C genus=1\nnode R A\nnode R B\nnode R C",
        );
        let err = relative_canonical_model(&m).unwrap_err();
        assert!(
            matches!(err, MmpError::UnsupportedConfiguration { component, .. } if component == "Sym(R)")
        );
    }

    #[test]
    fn uncovered_elliptic_bridge_is_rejected() {
        let m = model(
            "component A genus=3 hyperelliptic=false\ncomponent E genus=1\ncomponent B genus=3 hyperelliptic=false\nnode A E\nnode E B",
        );
        let err = relative_canonical_model(&m).unwrap_err();
        assert!(
            matches!(err, MmpError::UnsupportedConfiguration { component, .. } if component == "Sym(E)")
        );
    }

    #[test]
    fn stable_inputs_are_fixed_and_output_is_idempotent() {
        for text in [
            "component A genus=2\ncomponent B genus=2\nnode A B\nnode A B",
            "component A genus=4",
            "component C1 genus=2\ncomponent C2 genus=1\nnode C1 C2",
            "component R genus=0\ncomponent E genus=1\nnode R E\nnode R E\nnode R E",
        ] {
            let graph = parse_dual_graph(text).unwrap();
            let m = build_hilb2_model(&graph).unwrap();
            let (out, log) = relative_canonical_model(&m).unwrap();
            if is_hilb2_stable(&graph).unwrap().stable {
                assert!(log.is_empty());
                assert_eq!(relative_minimal_model(&m).0, m);
            }
            let (again, log2) = recanonicalize(&out).unwrap();
            assert!(log2.is_empty());
            assert_eq!(again, out);
        }
    }
}
