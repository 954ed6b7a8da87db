//! Property-based invariants.

use proptest::prelude::*;
use supersat::autom::automorphism_count;
use supersat::coloring::proper_colorings;
use supersat::counting::{self, Partition};
use supersat::critical::criticality;
use supersat::patterns;
use supersat::Graph;

/// Arbitrary graph on up to `max_n` vertices from an edge bitmask.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n, any::<u64>()).prop_map(|(n, mask)| {
        let mut g = Graph::empty(n).unwrap();
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask.rotate_left(k) & 1 == 1 {
                    g.add_edge(u, v).unwrap();
                }
                k += 1;
            }
        }
        g
    })
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product::<u64>().max(1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_round_trip(g in arb_graph(12)) {
        let enc = g.to_graph6();
        let back = Graph::parse_graph6(&enc).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(10)) {
        let text = g.to_edge_list();
        let back = Graph::parse_edge_list(&text).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn automorphisms_divide_factorial(g in arb_graph(7)) {
        let aut = automorphism_count(&g).unwrap();
        prop_assert!(aut >= 1);
        prop_assert_eq!(factorial(g.vertex_count()) % aut, 0);
    }

    #[test]
    fn adding_an_edge_never_decreases_counts(g in arb_graph(7), extra in any::<u64>()) {
        // pick a non-edge deterministically from `extra`, if one exists
        let n = g.vertex_count();
        let mut non_edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !g.adj(u, v) {
                    non_edges.push((u, v));
                }
            }
        }
        if let Some(&(u, v)) = non_edges.get(extra as usize % non_edges.len().max(1)) {
            let mut bigger = g.clone();
            bigger.add_edge(u, v).unwrap();
            for f in [patterns::complete(3), patterns::complete_minus_edge(4)] {
                let before = counting::count_copies(&f, &g).unwrap();
                let after = counting::count_copies(&f, &bigger).unwrap();
                prop_assert!(after >= before);
            }
        }
    }

    #[test]
    fn colorings_are_proper_and_pinned(g in arb_graph(6), r in 1usize..=3) {
        let pins: &[(usize, u8)] = if g.vertex_count() > 0 { &[(0, 1)] } else { &[] };
        for coloring in proper_colorings(&g, r, pins) {
            for (u, v) in g.edges() {
                prop_assert_ne!(coloring.color(u), coloring.color(v));
            }
            if g.vertex_count() > 0 {
                prop_assert_eq!(coloring.color(0), 1);
            }
        }
    }

    #[test]
    fn attached_vertex_formula_agrees_with_enumeration(
        n1 in 1usize..=4,
        n2 in 1usize..=4,
        d1 in 0usize..=4,
        d2 in 0usize..=4,
    ) {
        // count_with_attached_vertex errors if its two routes disagree
        let d = vec![d1.min(n1), d2.min(n2)];
        for f in [patterns::complete(3), patterns::complete_minus_edge(4)] {
            let cs = criticality(&f).unwrap();
            let v = counting::count_with_attached_vertex(
                &f, &cs, &Partition::new(vec![n1, n2]), &d);
            prop_assert!(v.is_ok(), "{:?}", v);
        }
    }

    #[test]
    fn canonical_form_is_isomorphism_invariant(g in arb_graph(6), seed in any::<u64>()) {
        let n = g.vertex_count();
        // a deterministic permutation from the seed
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let relabeled = g.relabel(&perm);
        prop_assert_eq!(
            supersat::autom::canonical_form(&g).unwrap(),
            supersat::autom::canonical_form(&relabeled).unwrap()
        );
    }
}
