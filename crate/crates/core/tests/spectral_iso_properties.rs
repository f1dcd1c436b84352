//! Characteristic polynomials, spectra and canonical labeling against
//! brute-force oracles.

mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use neumaier::iso::{are_isomorphic, canonical_form, isomorphism};
use neumaier::spectral::{bareiss_determinant, char_poly, cospectral, spectrum_report};
use neumaier::Graph;

fn arb_graph(max_v: usize) -> impl Strategy<Value = Graph> {
    (2..=max_v).prop_flat_map(|v| {
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

/// Determinant by permutation expansion.
fn leibniz_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    common::all_permutations(n)
        .iter()
        .map(|p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            sign * (0..n).map(|i| m[i][p[i]]).product::<i64>()
        })
        .sum()
}

fn adjacency(g: &Graph) -> Vec<Vec<i64>> {
    let v = g.order();
    (0..v)
        .map(|u| (0..v).map(|w| g.is_adjacent(u, w) as i64).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn char_poly_matches_leibniz_at_small_points(g in arb_graph(7), x in -3i64..=3) {
        // det(xI - A) by permutation expansion
        let mut m = adjacency(&g);
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = if i == j { x } else { -*e };
            }
        }
        prop_assert_eq!(char_poly(&g).poly().eval(&BigInt::from(x)), BigInt::from(leibniz_det(&m)));
    }

    #[test]
    fn constant_term_is_signed_determinant(g in arb_graph(14)) {
        let v = g.order();
        let a: Vec<Vec<BigInt>> = adjacency(&g).into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        let det = bareiss_determinant(a);
        let sign = if v % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(char_poly(&g).coeff(0), det * sign);
    }

    #[test]
    fn spectrum_multiplicities_and_trace(g in arb_graph(16)) {
        let report = spectrum_report(&g);
        prop_assert_eq!(report.iter().map(|e| e.mult).sum::<usize>(), g.order());
        let trace: f64 = report.iter().map(|e| e.approx() * e.mult as f64).sum();
        prop_assert!(trace.abs() < 1e-8, "eigenvalue sum {}", trace);
        let squares: f64 = report.iter().map(|e| e.approx().powi(2) * e.mult as f64).sum();
        prop_assert!((squares - 2.0 * g.edge_count() as f64).abs() < 1e-6);
        for e in report.iter().filter_map(|e| e.exact.as_ref()) {
            prop_assert!(char_poly(&g).poly().eval_f64(e.to_f64()).abs() < 1e-6 * (1u64 << g.order()) as f64);
        }
    }

    #[test]
    fn relabeling_keeps_canonical_form_and_spectrum(g in arb_graph(14), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let h = g.permuted(&perm);
        let (cg, ch) = (canonical_form(&g), canonical_form(&h));
        prop_assert_eq!(&cg.graph6, &ch.graph6);
        prop_assert!(cg.verify(&g) && ch.verify(&h));
        prop_assert!(cospectral(&g, &h));
        let iso = isomorphism(&g, &h).expect("relabeled graphs are isomorphic");
        prop_assert_eq!(g.permuted(&iso), h);
    }

    #[test]
    fn isomorphism_agrees_with_brute_force(g in arb_graph(7), h in arb_graph(7)) {
        prop_assume!(g.order() == h.order());
        let expected = common::brute_force_isomorphic(&g, &h);
        prop_assert_eq!(are_isomorphic(&g, &h), expected);
        if let Some(iso) = isomorphism(&g, &h) {
            prop_assert_eq!(g.permuted(&iso), h);
        }
    }
}

#[test]
fn corpus_classes_are_pairwise_non_isomorphic_by_brute_force() {
    // up to six vertices every pair is checked; seven and eight rely on the class counts
    for graphs in &common::corpus()[..=6] {
        for (x, g) in graphs.iter().enumerate() {
            for h in &graphs[x + 1..] {
                assert!(!common::brute_force_isomorphic(g, h));
                assert!(!are_isomorphic(g, h));
            }
        }
    }
}

#[test]
fn cospectrality_is_an_equivalence_on_the_corpus() {
    let graphs = &common::corpus()[6];
    let n = graphs.len();
    let rel: Vec<Vec<bool>> = graphs
        .iter()
        .map(|g| graphs.iter().map(|h| cospectral(g, h)).collect())
        .collect();
    for a in 0..n {
        assert!(rel[a][a]);
        for b in 0..n {
            assert_eq!(rel[a][b], rel[b][a]);
            if rel[a][b] {
                assert!((0..n).all(|c| !rel[b][c] || rel[a][c]));
            }
        }
    }
    // the smallest cospectral pair lives on five vertices: K_{1,4} and C4 + K1
    let five = &common::corpus()[5];
    let pairs = (0..five.len()).flat_map(|a| (a + 1..five.len()).map(move |b| (a, b)));
    assert_eq!(
        pairs
            .filter(|&(a, b)| cospectral(&five[a], &five[b]))
            .count(),
        1
    );
}
