//! Graph-core, graph6 and code invariants on random graphs.

mod common;

use proptest::prelude::*;

use neumaier::codes::{find_code_partitions, is_perfect_code, perfect_one_codes};
use neumaier::generators::named_graph;
use neumaier::graph6;
use neumaier::regularity::{classify_regularity, clique_nexus};
use neumaier::Graph;

fn arb_graph(max_v: usize) -> impl Strategy<Value = Graph> {
    (1..=max_v).prop_flat_map(|v| {
        proptest::collection::vec(any::<bool>(), v * (v - 1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            let mut g = Graph::empty(v);
            for w in 1..v {
                for u in 0..w {
                    if it.next().unwrap() {
                        g.add_edge(u, w).unwrap();
                    }
                }
            }
            g
        })
    })
}

fn arb_relabeled(max_v: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_v).prop_flat_map(|g| {
        let v = g.order();
        (Just(g), Just((0..v).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// An independent graph6 decoder: size byte, then the upper triangle column
/// by column, six bits per character, most significant first.
fn decode_reference(s: &str) -> Graph {
    let bytes: Vec<u8> = s.bytes().map(|b| b - 63).collect();
    let (v, body) = if bytes[0] < 63 {
        (bytes[0] as usize, &bytes[1..])
    } else {
        let v = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | b as usize);
        (v, &bytes[4..])
    };
    let bit = |i: usize| body[i / 6] >> (5 - i % 6) & 1 == 1;
    let mut g = Graph::empty(v);
    let mut i = 0;
    for w in 1..v {
        for u in 0..w {
            if bit(i) {
                g.add_edge(u, w).unwrap();
            }
            i += 1;
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn degree_sum_is_twice_the_edges(g in arb_graph(20)) {
        let total: usize = (0..g.order()).map(|u| g.degree(u)).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn graph6_round_trips_and_matches_reference(g in arb_graph(70)) {
        let s = graph6::encode(&g);
        prop_assert_eq!(&graph6::decode(&s).unwrap(), &g);
        prop_assert_eq!(graph6::encode(&graph6::decode(&s).unwrap()), s.clone());
        prop_assert_eq!(decode_reference(&s), g);
    }

    #[test]
    fn strongly_regular_iff_both(g in arb_graph(10)) {
        let r = classify_regularity(&g);
        prop_assert_eq!(r.is_strongly_regular(), r.edge_regular().is_some() && r.is_co_edge_regular());
        prop_assert_eq!(r, common::regularity_by_counting(&g));
    }

    #[test]
    fn nexus_is_relabeling_invariant((g, perm) in arb_relabeled(14), seed in any::<usize>()) {
        // grow a clique greedily from a seeded vertex
        let v = g.order();
        let mut clique = vec![seed % v];
        for u in 0..v {
            if !clique.contains(&u) && clique.iter().all(|&c| g.is_adjacent(u, c)) {
                clique.push(u);
            }
        }
        prop_assume!(clique.len() < v);
        let h = g.permuted(&perm);
        let mapped: Vec<usize> = clique.iter().map(|&u| perm[u]).collect();
        prop_assert_eq!(clique_nexus(&g, &clique).unwrap(), clique_nexus(&h, &mapped).unwrap());
    }

    #[test]
    fn perfect_code_formulations_agree(g in arb_graph(12), mask in any::<u16>()) {
        let code: Vec<usize> = (0..g.order()).filter(|&i| mask >> i & 1 == 1).collect();
        for radius in [1, 2, 3] {
            prop_assert_eq!(is_perfect_code(&g, &code, radius), common::perfect_by_counting(&g, &code, radius));
        }
        // radius 1: outside vertices see exactly one code vertex, and codes are pairwise at distance >= 3
        let outside_ok = (0..g.order())
            .filter(|u| !code.contains(u))
            .all(|u| code.iter().filter(|&&c| g.is_adjacent(u, c)).count() == 1);
        let spread_ok = code.iter().all(|&c| {
            let d = g.distances_from(c);
            code.iter().all(|&e| e == c || d[e].is_none_or(|d| d >= 3))
        });
        prop_assert_eq!(is_perfect_code(&g, &code, 1), !code.is_empty() && outside_ok && spread_ok);
    }
}

#[test]
fn code_partitions_reverify_independently() {
    for name in ["icosahedron", "delta1", "delta2", "double-dodecahedron"] {
        let gen = named_graph(name).unwrap();
        let g = &gen.graph;
        let k = g.regular_degree().unwrap();
        let a = g.order() / (k + 1);
        let parts = find_code_partitions(g, a, 50).unwrap();
        assert!(!parts.is_empty(), "{name}: no partition found");
        for p in &parts {
            let mut seen = vec![false; g.order()];
            for c in &p.codes {
                assert!(
                    common::perfect_by_counting(g, c, 1),
                    "{name}: {c:?} is not perfect"
                );
                for &u in c {
                    assert!(
                        !std::mem::replace(&mut seen[u], true),
                        "{name}: vertex {u} in two codes"
                    );
                }
            }
            assert!(seen.iter().all(|&s| s), "{name}: partition misses a vertex");
        }
        // |C| (k + 1) = v for every perfect 1-code
        for c in perfect_one_codes(g, 1000) {
            assert_eq!(c.len() * (k + 1), g.order(), "{name}");
        }
    }
}
