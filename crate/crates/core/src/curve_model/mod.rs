//! Stable nodal curves as decorated dual graphs.
//!
//! A [`DualGraph`] has one vertex per irreducible component (decorated by the
//! geometric genus of its normalization, a hyperelliptic flag and an opaque
//! isomorphism-class label) and one edge per node. Self-nodes are loops.

mod enumerate;
mod iso;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use enumerate::{
    enumerate_stable_graphs, hyperelliptic_variants, EnumerationError, EnumerationOptions,
    DEFAULT_ENUMERATION_CAP,
};
pub use iso::{canonical_form, graphs_isomorphic, CanonicalForm, IsoMode, IsoWitness};
pub use parse::{parse_dual_graph, ParseError};

/// Tri-state hyperelliptic flag of a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hyperelliptic {
    Yes,
    No,
    Unknown,
}

impl Hyperelliptic {
    /// `Unknown` counts as hyperelliptic.
    pub fn is_conservatively_hyperelliptic(self) -> bool {
        !matches!(self, Hyperelliptic::No)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Hyperelliptic::Yes => "yes",
            Hyperelliptic::No => "no",
            Hyperelliptic::Unknown => "unknown",
        }
    }

    pub(crate) fn code(self) -> u32 {
        match self {
            Hyperelliptic::Yes => 0,
            Hyperelliptic::No => 1,
            Hyperelliptic::Unknown => 2,
        }
    }
}

impl fmt::Display for Hyperelliptic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An irreducible component of a nodal curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveComponent {
    pub id: String,
    /// Geometric genus of the normalization.
    pub genus: u32,
    pub hyperelliptic: Hyperelliptic,
    /// Opaque isomorphism-class token. Equal labels denote isomorphic curves.
    pub label: String,
}

impl CurveComponent {
    /// A component whose label equals its id. Genus at most 2 forces the
    /// hyperelliptic flag to `Yes`.
    pub fn new(id: impl Into<String>, genus: u32, hyperelliptic: Hyperelliptic) -> Self {
        let id = id.into();
        Self {
            label: id.clone(),
            id,
            genus,
            hyperelliptic,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a curve needs at least one component")]
    Empty,
    #[error("invalid component id {0:?}: ids are nonempty alphanumeric/underscore tokens")]
    InvalidId(String),
    #[error("duplicate component id {0:?}")]
    DuplicateId(String),
    #[error("node endpoint {0:?} does not name a component")]
    DanglingEndpoint(String),
    #[error("the dual graph is disconnected")]
    Disconnected,
    #[error(
        "component {id:?} has genus {genus} but hyperelliptic=no; every curve of genus <= 2 is hyperelliptic"
    )]
    HyperellipticInconsistent { id: String, genus: u32 },
    #[error("unknown component {0:?}")]
    UnknownComponent(String),
}

pub(crate) fn is_valid_id(id: &str) -> bool {
    !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// The dual graph of a connected nodal curve.
///
/// Components are kept sorted by id and nodes are stored as sorted index
/// pairs `(i, j)` with `i <= j`; `i == j` is a self-node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct DualGraph {
    components: Vec<CurveComponent>,
    nodes: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    components: Vec<CurveComponent>,
    nodes: Vec<(String, String)>,
}

impl TryFrom<RawGraph> for DualGraph {
    type Error = GraphError;
    fn try_from(raw: RawGraph) -> Result<Self, GraphError> {
        DualGraph::new(raw.components, raw.nodes)
    }
}

impl From<DualGraph> for RawGraph {
    fn from(g: DualGraph) -> Self {
        let nodes = g
            .node_ids()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        RawGraph {
            components: g.components,
            nodes,
        }
    }
}

impl DualGraph {
    /// Validates and normalizes a dual graph.
    pub fn new<S: AsRef<str>>(
        mut components: Vec<CurveComponent>,
        nodes: Vec<(S, S)>,
    ) -> Result<Self, GraphError> {
        if components.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut seen = BTreeSet::new();
        for c in &mut components {
            if !is_valid_id(&c.id) {
                return Err(GraphError::InvalidId(c.id.clone()));
            }
            if !seen.insert(c.id.clone()) {
                return Err(GraphError::DuplicateId(c.id.clone()));
            }
            if c.genus <= 2 {
                match c.hyperelliptic {
                    Hyperelliptic::No => {
                        return Err(GraphError::HyperellipticInconsistent {
                            id: c.id.clone(),
                            genus: c.genus,
                        })
                    }
                    _ => c.hyperelliptic = Hyperelliptic::Yes,
                }
            }
        }
        components.sort_by(|a, b| a.id.cmp(&b.id));
        let index_of = |id: &str| {
            components
                .binary_search_by(|c| c.id.as_str().cmp(id))
                .map_err(|_| GraphError::DanglingEndpoint(id.to_string()))
        };
        let mut idx_nodes = Vec::with_capacity(nodes.len());
        for (a, b) in &nodes {
            let i = index_of(a.as_ref())?;
            let j = index_of(b.as_ref())?;
            idx_nodes.push((i.min(j), i.max(j)));
        }
        idx_nodes.sort_unstable();
        let graph = DualGraph {
            components,
            nodes: idx_nodes,
        };
        if !graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(graph)
    }

    fn is_connected(&self) -> bool {
        let n = self.components.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut classes = n;
        for &(a, b) in &self.nodes {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                classes -= 1;
            }
        }
        classes == 1
    }

    pub fn components(&self) -> &[CurveComponent] {
        &self.components
    }

    /// Nodes as sorted component-index pairs.
    pub fn nodes(&self) -> &[(usize, usize)] {
        &self.nodes
    }

    pub fn node_ids(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.nodes.iter().map(|&(a, b)| {
            (
                self.components[a].id.as_str(),
                self.components[b].id.as_str(),
            )
        })
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.components
            .binary_search_by(|c| c.id.as_str().cmp(id))
            .ok()
    }

    pub fn component(&self, id: &str) -> Option<&CurveComponent> {
        self.index_of(id).map(|i| &self.components[i])
    }

    /// Number of nodes joining components `i` and `j` (self-nodes when equal).
    pub fn multiplicity(&self, i: usize, j: usize) -> usize {
        let key = (i.min(j), i.max(j));
        self.nodes.iter().filter(|&&n| n == key).count()
    }

    pub fn self_node_count(&self, i: usize) -> usize {
        self.multiplicity(i, i)
    }

    pub fn has_self_nodes(&self) -> bool {
        self.nodes.iter().any(|&(a, b)| a == b)
    }

    /// Distinct neighbours of component `i`, excluding itself.
    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self
            .nodes
            .iter()
            .filter_map(|&(a, b)| match (a == i, b == i) {
                (true, false) => Some(b),
                (false, true) => Some(a),
                _ => None,
            })
            .collect();
        set.into_iter().collect()
    }

    /// δ of component `i`: nodes on it, self-nodes counted twice.
    pub fn delta_at(&self, i: usize) -> u32 {
        self.nodes
            .iter()
            .map(|&(a, b)| u32::from(a == i) + u32::from(b == i))
            .sum()
    }

    pub fn delta(&self, id: &str) -> Result<u32, GraphError> {
        self.index_of(id)
            .map(|i| self.delta_at(i))
            .ok_or_else(|| GraphError::UnknownComponent(id.to_string()))
    }

    /// `Σ g_i + E − V + 1`.
    pub fn arithmetic_genus(&self) -> u32 {
        let sum: u32 = self.components.iter().map(|c| c.genus).sum();
        // connected, so E >= V - 1
        sum + self.nodes.len() as u32 + 1 - self.components.len() as u32
    }

    /// Deligne–Mumford stability.
    pub fn stability(&self) -> CurveStability {
        let mut reasons = Vec::new();
        let pa = self.arithmetic_genus();
        if pa < 2 {
            reasons.push(InstabilityReason::ArithmeticGenusTooSmall { genus: pa });
        }
        for (i, c) in self.components.iter().enumerate() {
            let delta = self.delta_at(i);
            match c.genus {
                0 if delta < 3 => reasons.push(InstabilityReason::RationalComponent {
                    id: c.id.clone(),
                    delta,
                }),
                1 if delta < 1 => reasons.push(InstabilityReason::EllipticComponent {
                    id: c.id.clone(),
                    delta,
                }),
                _ => {}
            }
        }
        if reasons.is_empty() {
            CurveStability::Stable
        } else {
            CurveStability::Unstable(reasons)
        }
    }

    pub fn is_stable(&self) -> bool {
        self.stability().is_stable()
    }

    /// Serializes to the line-oriented curve file format. Components are
    /// written in id order, nodes sorted lexicographically.
    pub fn to_curve_file(&self) -> String {
        let mut out = String::new();
        for c in &self.components {
            out.push_str(&format!("component {} genus={}", c.id, c.genus));
            if c.genus > 2 {
                out.push_str(&format!(" hyperelliptic={}", flag_token(c.hyperelliptic)));
            }
            if c.label != c.id {
                out.push_str(&format!(" label={}", c.label));
            }
            out.push('\n');
        }
        let mut nodes: Vec<(&str, &str)> = self.node_ids().collect();
        nodes.sort_unstable();
        for (a, b) in nodes {
            out.push_str(&format!("node {a} {b}\n"));
        }
        out
    }

    /// Returns a copy with one component's hyperelliptic flag replaced.
    pub fn with_hyperelliptic(
        &self,
        index: usize,
        flag: Hyperelliptic,
    ) -> Result<Self, GraphError> {
        let mut components = self.components.clone();
        components[index].hyperelliptic = flag;
        let nodes: Vec<(String, String)> = self
            .node_ids()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        DualGraph::new(components, nodes)
    }
}

fn flag_token(h: Hyperelliptic) -> &'static str {
    match h {
        Hyperelliptic::Yes => "true",
        Hyperelliptic::No => "false",
        Hyperelliptic::Unknown => "unknown",
    }
}

impl fmt::Display for DualGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_curve_file())
    }
}

/// Why a dual graph fails Deligne–Mumford stability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum InstabilityReason {
    ArithmeticGenusTooSmall { genus: u32 },
    RationalComponent { id: String, delta: u32 },
    EllipticComponent { id: String, delta: u32 },
}

impl fmt::Display for InstabilityReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstabilityReason::ArithmeticGenusTooSmall { genus } => {
                write!(f, "arithmetic genus {genus} < 2")
            }
            InstabilityReason::RationalComponent { id, delta } => {
                write!(f, "genus-0 component {id} has delta {delta} < 3")
            }
            InstabilityReason::EllipticComponent { id, delta } => {
                write!(f, "genus-1 component {id} has delta {delta} < 1")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "reasons", rename_all = "snake_case")]
pub enum CurveStability {
    Stable,
    Unstable(Vec<InstabilityReason>),
}

impl CurveStability {
    pub fn is_stable(&self) -> bool {
        matches!(self, CurveStability::Stable)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(id: &str, genus: u32) -> CurveComponent {
        CurveComponent::new(id, genus, Hyperelliptic::Unknown)
    }

    fn graph(components: Vec<CurveComponent>, nodes: &[(&str, &str)]) -> DualGraph {
        DualGraph::new(components, nodes.to_vec()).unwrap()
    }

    #[test]
    fn delta_counts_self_nodes_twice() {
        let g = graph(
            vec![comp("A", 0), comp("B", 1), comp("C", 1), comp("D", 1)],
            &[("A", "B"), ("A", "C"), ("A", "D")],
        );
        assert_eq!(g.delta("A").unwrap(), 3);

        let g = graph(vec![comp("A", 0), comp("B", 2)], &[("A", "B"), ("A", "A")]);
        assert_eq!(g.delta("A").unwrap(), 3);

        let g = graph(vec![comp("A", 5)], &[]);
        assert_eq!(g.delta("A").unwrap(), 0);
        assert_eq!(
            g.delta("Z").unwrap_err(),
            GraphError::UnknownComponent("Z".into())
        );
    }

    #[test]
    fn arithmetic_genus_examples() {
        assert_eq!(graph(vec![comp("A", 4)], &[]).arithmetic_genus(), 4);
        assert_eq!(
            graph(vec![comp("A", 1), comp("B", 1)], &[("A", "B")]).arithmetic_genus(),
            2
        );
        assert_eq!(
            graph(vec![comp("A", 0)], &[("A", "A"), ("A", "A")]).arithmetic_genus(),
            2
        );
    }

    #[test]
    fn stability_examples() {
        let g = graph(vec![comp("A", 2), comp("B", 1)], &[("A", "B")]);
        assert!(g.is_stable());

        let g = graph(vec![comp("A", 3), comp("B", 0)], &[("A", "B"), ("A", "B")]);
        assert_eq!(
            g.stability(),
            CurveStability::Unstable(vec![InstabilityReason::RationalComponent {
                id: "B".into(),
                delta: 2
            }])
        );

        let g = graph(vec![comp("A", 1)], &[]);
        assert_eq!(
            g.stability(),
            CurveStability::Unstable(vec![
                InstabilityReason::ArithmeticGenusTooSmall { genus: 1 },
                InstabilityReason::EllipticComponent {
                    id: "A".into(),
                    delta: 0
                }
            ])
        );
    }

    #[test]
    fn handshake_identity() {
        let g = graph(
            vec![comp("A", 0), comp("B", 1), comp("C", 0)],
            &[("A", "A"), ("A", "B"), ("B", "C"), ("C", "C"), ("A", "C")],
        );
        let total: u32 = (0..g.component_count()).map(|i| g.delta_at(i)).sum();
        assert_eq!(total as usize, 2 * g.node_count());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            DualGraph::new(Vec::new(), Vec::<(&str, &str)>::new()).unwrap_err(),
            GraphError::Empty
        );
        assert_eq!(
            DualGraph::new(
                vec![comp("A", 3), comp("B", 3)],
                vec![("A", "B"), ("A", "Q")]
            )
            .unwrap_err(),
            GraphError::DanglingEndpoint("Q".into())
        );
        assert_eq!(
            DualGraph::new(vec![comp("A", 3), comp("B", 3)], Vec::<(&str, &str)>::new())
                .unwrap_err(),
            GraphError::Disconnected
        );
        assert_eq!(
            DualGraph::new(vec![comp("A", 3), comp("A", 2)], vec![("A", "A")]).unwrap_err(),
            GraphError::DuplicateId("A".into())
        );
        assert_eq!(
            DualGraph::new(vec![comp("A-1", 3)], Vec::<(&str, &str)>::new()).unwrap_err(),
            GraphError::InvalidId("A-1".into())
        );
        assert!(matches!(
            DualGraph::new(
                vec![CurveComponent::new("A", 2, Hyperelliptic::No)],
                Vec::<(&str, &str)>::new()
            ),
            Err(GraphError::HyperellipticInconsistent { genus: 2, .. })
        ));
    }

    #[test]
    fn low_genus_flag_normalizes_to_yes() {
        let g = graph(vec![comp("A", 2), comp("B", 3)], &[("A", "B")]);
        assert_eq!(g.components()[0].hyperelliptic, Hyperelliptic::Yes);
        assert_eq!(g.components()[1].hyperelliptic, Hyperelliptic::Unknown);
    }

    #[test]
    fn raw_form_round_trip_validates() {
        let g = graph(vec![comp("A", 2), comp("B", 3)], &[("A", "B"), ("B", "B")]);
        let raw: RawGraph = g.clone().into();
        assert_eq!(DualGraph::try_from(raw).unwrap(), g);

        let dangling = RawGraph {
            components: vec![comp("A", 3)],
            nodes: vec![("A".into(), "B".into())],
        };
        assert!(DualGraph::try_from(dangling).is_err());
    }
}
