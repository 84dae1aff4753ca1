//! Decorated multigraph isomorphism.
//!
//! Two independent routes: [`graphs_isomorphic`] searches directly for a
//! decoration-preserving bijection, and [`canonical_form`] computes a
//! certificate by colour refinement plus individualization. The enumerator
//! deduplicates with certificates; the tests check both routes agree.

use serde::{Deserialize, Serialize};

use super::DualGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoMode {
    /// Preserve genus, hyperelliptic flag and node multiplicities.
    Decorations,
    /// Additionally require equal curve labels.
    Strict,
}

/// A component bijection `(id in a, id in b)`, listed in the order of `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoWitness {
    pub mapping: Vec<(String, String)>,
}

/// Adjacency data shared by both isomorphism routes.
#[derive(Clone)]
pub(crate) struct Shape {
    pub(crate) n: usize,
    pub(crate) deco: Vec<u32>,
    /// Row-major multiplicities, loops on the diagonal.
    pub(crate) adj: Vec<u32>,
}

impl Shape {
    pub(crate) fn from_graph(g: &DualGraph) -> Self {
        let n = g.component_count();
        let mut adj = vec![0u32; n * n];
        for &(a, b) in g.nodes() {
            adj[a * n + b] += 1;
            if a != b {
                adj[b * n + a] += 1;
            }
        }
        let deco = g
            .components()
            .iter()
            .map(|c| c.genus * 4 + c.hyperelliptic.code())
            .collect();
        Shape { n, deco, adj }
    }

    #[inline]
    pub(crate) fn m(&self, i: usize, j: usize) -> u32 {
        self.adj[i * self.n + j]
    }

    fn degree(&self, i: usize) -> u32 {
        (0..self.n).map(|j| self.m(i, j)).sum::<u32>() + self.m(i, i)
    }
}

pub fn graphs_isomorphic(a: &DualGraph, b: &DualGraph, mode: IsoMode) -> Option<IsoWitness> {
    if a.component_count() != b.component_count() || a.node_count() != b.node_count() {
        return None;
    }
    let (sa, sb) = (Shape::from_graph(a), Shape::from_graph(b));
    let n = sa.n;

    // Labels become part of the vertex key in strict mode, interned through
    // one table so equal strings get equal codes across both graphs.
    let mut labels: Vec<&str> = a
        .components()
        .iter()
        .chain(b.components())
        .map(|c| c.label.as_str())
        .collect();
    labels.sort_unstable();
    labels.dedup();
    let key = |s: &Shape, g: &DualGraph, i: usize| {
        let mut nbr: Vec<u32> = (0..n)
            .filter(|&j| j != i && s.m(i, j) > 0)
            .map(|j| s.m(i, j))
            .collect();
        nbr.sort_unstable();
        let label = match mode {
            IsoMode::Strict => labels
                .binary_search(&g.components()[i].label.as_str())
                .unwrap() as u32,
            IsoMode::Decorations => 0,
        };
        (s.deco[i], s.m(i, i), s.degree(i), label, nbr)
    };
    let ka: Vec<_> = (0..n).map(|i| key(&sa, a, i)).collect();
    let kb: Vec<_> = (0..n).map(|i| key(&sb, b, i)).collect();
    let mut sorted_a = ka.clone();
    let mut sorted_b = kb.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return None;
    }

    // Visit rare vertices first, then grow along edges so that adjacency
    // checks prune early.
    let rarity = |i: usize| ka.iter().filter(|k| **k == ka[i]).count();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&i| !placed[i])
            .max_by_key(|&i| {
                let links = order.iter().filter(|&&j| sa.m(i, j) > 0).count();
                (links, std::cmp::Reverse(rarity(i)), std::cmp::Reverse(i))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(0, &order, &sa, &sb, &ka, &kb, &mut image, &mut used) {
        let mapping = (0..n)
            .map(|i| {
                (
                    a.components()[i].id.clone(),
                    b.components()[image[i]].id.clone(),
                )
            })
            .collect();
        Some(IsoWitness { mapping })
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend<K: PartialEq>(
    depth: usize,
    order: &[usize],
    sa: &Shape,
    sb: &Shape,
    ka: &[K],
    kb: &[K],
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for cand in 0..sb.n {
        if used[cand] || ka[v] != kb[cand] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&w| sa.m(v, w) == sb.m(cand, image[w]));
        if !consistent {
            continue;
        }
        image[v] = cand;
        used[cand] = true;
        if extend(depth + 1, order, sa, sb, ka, kb, image, used) {
            return true;
        }
        used[cand] = false;
        image[v] = usize::MAX;
    }
    false
}

/// A complete isomorphism invariant of a decorated dual graph (labels are
/// ignored). Ordering is lexicographic and starts with the component count.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(pub(crate) Vec<u32>);

pub fn canonical_form(g: &DualGraph) -> CanonicalForm {
    canonical_labeling(&Shape::from_graph(g)).0
}

/// Returns the certificate together with the vertex order realising it:
/// `order[k]` is the original vertex placed at canonical position `k`.
pub(crate) fn canonical_labeling(s: &Shape) -> (CanonicalForm, Vec<usize>) {
    let initial: Vec<(u32, u32)> = (0..s.n).map(|i| (s.deco[i], s.m(i, i))).collect();
    let colors = rank(&initial);
    let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
    search(s, colors, &mut best);
    let (form, order) = best.expect("search visits at least one leaf");
    (CanonicalForm(form), order)
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<u32> {
    let mut distinct = keys.to_vec();
    distinct.sort();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(k).unwrap() as u32)
        .collect()
}

fn class_count(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Colour refinement to the coarsest equitable partition.
fn refine(s: &Shape, mut colors: Vec<u32>) -> Vec<u32> {
    let mut classes = class_count(&colors);
    loop {
        let sigs: Vec<(u32, Vec<(u32, u32)>)> = (0..s.n)
            .map(|i| {
                let mut nbr: Vec<(u32, u32)> = (0..s.n)
                    .filter(|&j| j != i && s.m(i, j) > 0)
                    .map(|j| (colors[j], s.m(i, j)))
                    .collect();
                nbr.sort_unstable();
                (colors[i], nbr)
            })
            .collect();
        let next = rank(&sigs);
        let next_classes = class_count(&next);
        if next_classes == classes {
            return next;
        }
        classes = next_classes;
        colors = next;
    }
}

fn are_twins(s: &Shape, u: usize, v: usize) -> bool {
    s.m(u, u) == s.m(v, v) && (0..s.n).all(|k| k == u || k == v || s.m(u, k) == s.m(v, k))
}

fn search(s: &Shape, colors: Vec<u32>, best: &mut Option<(Vec<u32>, Vec<usize>)>) {
    let colors = refine(s, colors);
    let n = s.n;
    let mut counts = vec![0usize; n];
    for &c in &colors {
        counts[c as usize] += 1;
    }
    let Some(target) = (0..n).find(|&c| counts[c] > 1) else {
        let mut order = vec![0usize; n];
        for (v, &c) in colors.iter().enumerate() {
            order[c as usize] = v;
        }
        let mut form = Vec::with_capacity(1 + n + n * (n + 1) / 2);
        form.push(n as u32);
        form.extend(order.iter().map(|&v| s.deco[v]));
        for a in 0..n {
            for b in a..n {
                form.push(s.m(order[a], order[b]));
            }
        }
        if best.as_ref().is_none_or(|(f, _)| form < *f) {
            *best = Some((form, order));
        }
        return;
    };
    let cell: Vec<usize> = (0..n).filter(|&v| colors[v] as usize == target).collect();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cell {
        if tried.iter().any(|&u| are_twins(s, u, v)) {
            continue;
        }
        tried.push(v);
        let keys: Vec<(u32, bool)> = (0..n)
            .map(|i| (colors[i], colors[i] as usize == target && i != v))
            .collect();
        search(s, rank(&keys), best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_model::{parse_dual_graph, CurveComponent, Hyperelliptic};

    fn g(text: &str) -> DualGraph {
        parse_dual_graph(text).unwrap()
    }

    #[test]
    fn reflexive_with_identity_witness() {
        let a = g("component A genus=2\ncomponent B genus=1\ncomponent C genus=0\nnode A B\nnode B C\nnode C C\nnode A C");
        let w = graphs_isomorphic(&a, &a, IsoMode::Strict).unwrap();
        for (x, y) in &w.mapping {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn relabelled_triple_edge() {
        let a = g("component A genus=1\ncomponent B genus=1\nnode A B\nnode A B\nnode A B");
        let b = g("component X genus=1\ncomponent Y genus=1\nnode Y X\nnode X Y\nnode X Y");
        assert!(graphs_isomorphic(&a, &b, IsoMode::Decorations).is_some());
        assert!(graphs_isomorphic(&a, &b, IsoMode::Strict).is_none());
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn different_multiplicity() {
        let a = g("component A genus=2\ncomponent B genus=1\nnode A B");
        let b = g("component A genus=2\ncomponent B genus=1\nnode A B\nnode A B");
        assert!(graphs_isomorphic(&a, &b, IsoMode::Decorations).is_none());
        assert_ne!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn hyperelliptic_flag_is_a_decoration() {
        let a = DualGraph::new(
            vec![CurveComponent::new("A", 3, Hyperelliptic::Yes)],
            Vec::<(&str, &str)>::new(),
        )
        .unwrap();
        let b = a.with_hyperelliptic(0, Hyperelliptic::No).unwrap();
        assert!(graphs_isomorphic(&a, &b, IsoMode::Decorations).is_none());
        assert_ne!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn strict_mode_uses_labels_not_ids() {
        let a = g("component A genus=3 label=P\ncomponent B genus=3 label=Q\nnode A B");
        let b = g("component U genus=3 label=Q\ncomponent V genus=3 label=P\nnode U V");
        let w = graphs_isomorphic(&a, &b, IsoMode::Strict).unwrap();
        assert_eq!(
            w.mapping,
            vec![("A".into(), "V".into()), ("B".into(), "U".into())]
        );
    }

    #[test]
    fn petersen_like_symmetric_graph() {
        // Petersen graph: 10 rational components, 15 nodes, genus 6.
        let outer = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        let spokes = [(0, 5), (1, 6), (2, 7), (3, 8), (4, 9)];
        let inner = [(5, 7), (7, 9), (9, 6), (6, 8), (8, 5)];
        let mut text = String::new();
        for i in 0..10 {
            text.push_str(&format!("component V{i} genus=0\n"));
        }
        for (x, y) in outer.iter().chain(&spokes).chain(&inner) {
            text.push_str(&format!("node V{x} V{y}\n"));
        }
        let p = g(&text);
        assert_eq!(p.arithmetic_genus(), 6);
        // relabel by a non-trivial permutation
        let perm = [3, 7, 1, 9, 0, 2, 8, 4, 6, 5];
        let mut text2 = String::new();
        for i in 0..10 {
            text2.push_str(&format!("component W{i} genus=0\n"));
        }
        for (x, y) in outer.iter().chain(&spokes).chain(&inner) {
            text2.push_str(&format!("node W{} W{}\n", perm[*x], perm[*y]));
        }
        let q = g(&text2);
        assert!(graphs_isomorphic(&p, &q, IsoMode::Decorations).is_some());
        assert_eq!(canonical_form(&p), canonical_form(&q));
    }
}
