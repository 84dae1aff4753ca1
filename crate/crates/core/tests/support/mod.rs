//! A deliberately naive generator of stable dual graphs: every genus vector
//! and every distribution of edges over vertex pairs, filtered and then
//! deduplicated by brute force over all vertex permutations.

#![allow(dead_code)]

use std::collections::BTreeSet;

use symsq::DualGraph;

/// `[n, genera..., upper triangle of the multiplicity matrix incl. diagonal]`,
/// minimized over all vertex orders.
pub type Code = Vec<u32>;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn encode(genera: &[u32], m: &[Vec<u32>], perm: &[usize]) -> Code {
    let n = genera.len();
    let mut code = vec![n as u32];
    code.extend(perm.iter().map(|&i| genera[i]));
    for a in 0..n {
        for b in a..n {
            code.push(m[perm[a]][perm[b]]);
        }
    }
    code
}

fn canonical(genera: &[u32], m: &[Vec<u32>], perms: &[Vec<usize>]) -> Code {
    perms.iter().map(|p| encode(genera, m, p)).min().unwrap()
}

pub fn code_of(graph: &DualGraph) -> Code {
    let n = graph.component_count();
    let genera: Vec<u32> = graph.components().iter().map(|c| c.genus).collect();
    let mut m = vec![vec![0u32; n]; n];
    for &(a, b) in graph.nodes() {
        m[a][b] += 1;
        if a != b {
            m[b][a] += 1;
        }
    }
    canonical(&genera, &m, &permutations(n))
}

fn compositions(
    total: u32,
    parts: usize,
    max_first: u32,
    out: &mut Vec<Vec<u32>>,
    cur: &mut Vec<u32>,
) {
    if parts == 0 {
        if total == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for x in (0..=total.min(max_first)).rev() {
        cur.push(x);
        compositions(total - x, parts - 1, x, out, cur);
        cur.pop();
    }
}

fn distributions(total: u32, slots: usize, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
    if slots == 1 {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for x in 0..=total {
        cur.push(x);
        distributions(total - x, slots - 1, out, cur);
        cur.pop();
    }
}

fn connected(m: &[Vec<u32>]) -> bool {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if m[v][w] > 0 && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Isomorphism classes of connected stable graphs of arithmetic genus
/// `genus` with at most `max_components` vertices.
pub fn naive_stable_graphs(genus: u32, max_components: usize, loops: bool) -> BTreeSet<Code> {
    let mut found = BTreeSet::new();
    for n in 1..=max_components {
        let perms = permutations(n);
        let slots: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a..n).map(move |b| (a, b)))
            .filter(|(a, b)| loops || a != b)
            .collect();
        let max_edges = genus + n as u32 - 1;
        for edges in (n as u32 - 1)..=max_edges {
            let genus_sum = max_edges - edges;
            let mut genera_list = Vec::new();
            compositions(genus_sum, n, genus_sum, &mut genera_list, &mut Vec::new());
            let mut dists = Vec::new();
            if slots.is_empty() {
                if edges == 0 {
                    dists.push(vec![]);
                }
            } else {
                distributions(edges, slots.len(), &mut dists, &mut Vec::new());
            }
            for d in &dists {
                let mut m = vec![vec![0u32; n]; n];
                for (k, &(a, b)) in slots.iter().enumerate() {
                    m[a][b] += d[k];
                    if a != b {
                        m[b][a] += d[k];
                    }
                }
                if !connected(&m) {
                    continue;
                }
                for genera in &genera_list {
                    let stable = (0..n).all(|v| {
                        let degree: u32 = (0..n).map(|w| m[v][w]).sum::<u32>() + m[v][v];
                        2 * genera[v] + degree >= 3
                    });
                    if stable {
                        found.insert(canonical(genera, &m, &perms));
                    }
                }
            }
        }
    }
    found
}
