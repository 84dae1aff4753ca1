//! Exhaustive enumeration of stable dual graphs of fixed arithmetic genus.
//!
//! Generation runs level by level in the number of nodes, starting from the
//! smooth curve. Every stable graph with at least one node is a degeneration
//! of the stable graph obtained by contracting any one of its nodes, so the
//! two inverse moves (add a self-node, split a component in two) reach every
//! stratum. Each level is deduplicated by canonical form.

use std::collections::HashMap;

use thiserror::Error;

use super::iso::{canonical_labeling, CanonicalForm, Shape};
use super::{CurveComponent, DualGraph, Hyperelliptic};

pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub genus: u32,
    pub max_components: usize,
    pub allow_self_nodes: bool,
    /// Maximum number of graphs to emit.
    pub cap: usize,
}

impl EnumerationOptions {
    pub fn new(genus: u32, max_components: usize, allow_self_nodes: bool) -> Self {
        Self {
            genus,
            max_components,
            allow_self_nodes,
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("stable curves need arithmetic genus >= 2, got {0}")]
    GenusTooSmall(u32),
    #[error("max_components must be positive")]
    NoComponents,
    #[error("enumeration exceeded the cap of {cap} graphs")]
    CapExceeded { cap: usize },
}

fn deco_for_genus(genus: u32) -> u32 {
    let flag = if genus <= 2 {
        Hyperelliptic::Yes
    } else {
        Hyperelliptic::Unknown
    };
    genus * 4 + flag.code()
}

fn is_stable_vertex(genus: u32, degree: u32) -> bool {
    2 * genus + degree > 2
}

impl Shape {
    fn genus(&self, v: usize) -> u32 {
        self.deco[v] / 4
    }

    fn has_loops(&self) -> bool {
        (0..self.n).any(|v| self.m(v, v) > 0)
    }

    fn permuted(&self, order: &[usize]) -> Shape {
        let n = self.n;
        let mut adj = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                adj[a * n + b] = self.m(order[a], order[b]);
            }
        }
        Shape {
            n,
            deco: order.iter().map(|&v| self.deco[v]).collect(),
            adj,
        }
    }

    fn with_loop(&self, v: usize) -> Shape {
        let mut s = Shape {
            n: self.n,
            deco: self.deco.clone(),
            adj: self.adj.clone(),
        };
        s.deco[v] = deco_for_genus(self.genus(v) - 1);
        s.adj[v * self.n + v] += 1;
        s
    }

    /// All stable ways of splitting `v` into two components joined by a node.
    fn splits(&self, v: usize, out: &mut Vec<Shape>) {
        let n = self.n;
        let h = self.genus(v);
        let nbrs: Vec<usize> = (0..n).filter(|&u| u != v && self.m(v, u) > 0).collect();
        let loops = self.m(v, v);
        // choice ranges: one per neighbour (how many edges move to the new
        // vertex), then the loop triple (stay, move, become bridging)
        let loop_splits: Vec<(u32, u32, u32)> = (0..=loops)
            .flat_map(|a| (0..=loops - a).map(move |b| (a, b, loops - a - b)))
            .collect();
        let mut choice = vec![0u32; nbrs.len()];
        loop {
            for &(stay, moved, bridging) in &loop_splits {
                let moved_edges: u32 = choice.iter().sum();
                let kept_edges: u32 = nbrs
                    .iter()
                    .zip(&choice)
                    .map(|(&u, &k)| self.m(v, u) - k)
                    .sum();
                let link = 1 + bridging;
                let deg_v = kept_edges + 2 * stay + link;
                let deg_w = moved_edges + 2 * moved + link;
                for h1 in 0..=h / 2 {
                    let h2 = h - h1;
                    if !is_stable_vertex(h1, deg_v) || !is_stable_vertex(h2, deg_w) {
                        continue;
                    }
                    let m = n + 1;
                    let mut adj = vec![0u32; m * m];
                    for a in 0..n {
                        for b in 0..n {
                            adj[a * m + b] = self.m(a, b);
                        }
                    }
                    let w = n;
                    for (&u, &k) in nbrs.iter().zip(&choice) {
                        adj[v * m + u] -= k;
                        adj[u * m + v] -= k;
                        adj[w * m + u] = k;
                        adj[u * m + w] = k;
                    }
                    adj[v * m + v] = stay;
                    adj[w * m + w] = moved;
                    adj[v * m + w] = link;
                    adj[w * m + v] = link;
                    let mut deco = self.deco.clone();
                    deco[v] = deco_for_genus(h1);
                    deco.push(deco_for_genus(h2));
                    out.push(Shape { n: m, deco, adj });
                }
            }
            // odometer over neighbour choices
            let mut i = 0;
            loop {
                if i == nbrs.len() {
                    return;
                }
                if choice[i] < self.m(v, nbrs[i]) {
                    choice[i] += 1;
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    fn to_graph(&self) -> DualGraph {
        let width = self.n.saturating_sub(1).to_string().len();
        let id = |v: usize| format!("C{v:0width$}");
        let components = (0..self.n)
            .map(|v| {
                let genus = self.genus(v);
                let flag = if genus <= 2 {
                    Hyperelliptic::Yes
                } else {
                    Hyperelliptic::Unknown
                };
                CurveComponent::new(id(v), genus, flag)
            })
            .collect();
        let mut nodes = Vec::new();
        for a in 0..self.n {
            for b in a..self.n {
                for _ in 0..self.m(a, b) {
                    nodes.push((id(a), id(b)));
                }
            }
        }
        DualGraph::new(components, nodes).expect("enumerated shapes are valid graphs")
    }
}

/// Every connected stable dual graph of the requested arithmetic genus with at
/// most `max_components` components, one per isomorphism class (genus and
/// hyperelliptic decorations respected), in canonical order.
///
/// Components get ids and labels `C0, C1, ...`; genus <= 2 components are
/// hyperelliptic, higher-genus ones carry the `unknown` flag.
pub fn enumerate_stable_graphs(
    opts: &EnumerationOptions,
) -> Result<Vec<DualGraph>, EnumerationError> {
    if opts.genus < 2 {
        return Err(EnumerationError::GenusTooSmall(opts.genus));
    }
    if opts.max_components == 0 {
        return Err(EnumerationError::NoComponents);
    }
    let smooth = Shape {
        n: 1,
        deco: vec![deco_for_genus(opts.genus)],
        adj: vec![0],
    };
    let mut emitted: Vec<(CanonicalForm, Shape)> = Vec::new();
    let mut level: Vec<Shape> = vec![smooth];
    let mut candidates = Vec::new();
    while !level.is_empty() {
        for s in &level {
            if opts.allow_self_nodes || !s.has_loops() {
                let (form, _) = canonical_labeling(s);
                emitted.push((form, s.clone()));
                if emitted.len() > opts.cap {
                    return Err(EnumerationError::CapExceeded { cap: opts.cap });
                }
            }
        }
        let mut next: HashMap<CanonicalForm, Shape> = HashMap::new();
        for s in &level {
            candidates.clear();
            for v in 0..s.n {
                if s.genus(v) > 0 {
                    candidates.push(s.with_loop(v));
                }
                if s.n < opts.max_components {
                    s.splits(v, &mut candidates);
                }
            }
            for c in candidates.drain(..) {
                let (form, order) = canonical_labeling(&c);
                next.entry(form).or_insert_with(|| c.permuted(&order));
            }
        }
        let mut ordered: Vec<(CanonicalForm, Shape)> = next.into_iter().collect();
        ordered.sort_by(|a, b| a.0.cmp(&b.0));
        level = ordered.into_iter().map(|(_, s)| s).collect();
    }
    emitted.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(emitted.into_iter().map(|(_, s)| s.to_graph()).collect())
}

/// Expands every genus-3 component with an `unknown` flag into its
/// hyperelliptic and non-hyperelliptic variants.
pub fn hyperelliptic_variants(graph: &DualGraph) -> Vec<DualGraph> {
    let open: Vec<usize> = graph
        .components()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.genus == 3 && c.hyperelliptic == Hyperelliptic::Unknown)
        .map(|(i, _)| i)
        .collect();
    let mut out = vec![graph.clone()];
    for &i in &open {
        out = out
            .into_iter()
            .flat_map(|g| {
                [Hyperelliptic::Yes, Hyperelliptic::No]
                    .into_iter()
                    .map(move |f| {
                        g.with_hyperelliptic(i, f)
                            .expect("flag change keeps validity")
                    })
            })
            .collect();
    }
    out
}
