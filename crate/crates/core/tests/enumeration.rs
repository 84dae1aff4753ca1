mod support;

use std::collections::BTreeSet;

use symsq::curve_model::{
    canonical_form, enumerate_stable_graphs, graphs_isomorphic, hyperelliptic_variants,
    EnumerationOptions, IsoMode,
};
use symsq::Hyperelliptic;

use support::{code_of, naive_stable_graphs};

fn codes(genus: u32, max_components: usize, loops: bool) -> (usize, BTreeSet<Vec<u32>>) {
    let graphs =
        enumerate_stable_graphs(&EnumerationOptions::new(genus, max_components, loops)).unwrap();
    let count = graphs.len();
    (count, graphs.iter().map(code_of).collect())
}

#[test]
fn matches_naive_generator() {
    for (genus, max_components, loops) in [
        (2, 2, true),
        (2, 2, false),
        (3, 4, true),
        (3, 4, false),
        (4, 4, true),
        (4, 4, false),
        (5, 5, false),
    ] {
        let (count, ours) = codes(genus, max_components, loops);
        let naive = naive_stable_graphs(genus, max_components, loops);
        assert_eq!(count, ours.len(), "duplicates at genus {genus}");
        assert_eq!(
            ours, naive,
            "genus {genus}, <= {max_components} components, loops {loops}"
        );
    }
}

#[test]
fn known_totals() {
    for (genus, total) in [(2, 7), (3, 42), (4, 379)] {
        let opts = EnumerationOptions::new(genus, 2 * genus as usize - 2, true);
        assert_eq!(enumerate_stable_graphs(&opts).unwrap().len(), total);
    }
}

#[test]
fn output_is_canonical_and_pairwise_distinct() {
    let graphs = enumerate_stable_graphs(&EnumerationOptions::new(3, 4, true)).unwrap();
    let forms: Vec<_> = graphs.iter().map(canonical_form).collect();
    assert!(forms.windows(2).all(|w| w[0] < w[1]));
    for (i, a) in graphs.iter().enumerate() {
        assert!(a.is_stable());
        assert_eq!(a.arithmetic_genus(), 3);
        for b in &graphs[i + 1..] {
            assert!(graphs_isomorphic(a, b, IsoMode::Decorations).is_none());
        }
    }
}

#[test]
fn variants_split_unknown_genus_three() {
    let graphs = enumerate_stable_graphs(&EnumerationOptions::new(6, 2, false)).unwrap();
    for g in &graphs {
        let unknown = g
            .components()
            .iter()
            .filter(|c| c.genus == 3 && c.hyperelliptic == Hyperelliptic::Unknown)
            .count();
        let variants = hyperelliptic_variants(g);
        assert_eq!(variants.len(), 1 << unknown);
        assert!(variants.iter().all(|v| v.is_stable()));
    }
}
