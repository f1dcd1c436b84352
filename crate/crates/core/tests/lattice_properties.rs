//! Normal forms and lattice quotients.

use proptest::prelude::*;

use neumaier::generators::{
    eisenstein_block_sublattice, eisenstein_code_ideal, triangular_quotient,
};
use neumaier::graph6;
use neumaier::lattice::{
    count_hnf, determinant, hermite_normal_form, lattice_quotient, smith_normal_form, LatticeSpec,
    SublatticeBasis,
};

fn arb_nonsingular(rank: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-9i64..=9, rank), rank)
        .prop_filter("nonsingular", |m| determinant(m) != 0)
}

/// A random unimodular matrix as a product of elementary row operations.
fn arb_unimodular(rank: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec((0..rank, 0..rank, -3i64..=3, any::<bool>()), 0..12).prop_map(
        move |ops| {
            let mut u: Vec<Vec<i64>> = (0..rank)
                .map(|i| (0..rank).map(|j| (i == j) as i64).collect())
                .collect();
            for (a, b, c, swap) in ops {
                if a == b {
                    continue;
                }
                if swap {
                    u.swap(a, b);
                } else {
                    let row_b = u[b].clone();
                    for (x, y) in u[a].iter_mut().zip(row_b) {
                        *x += c * y;
                    }
                }
            }
            u
        },
    )
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum())
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn hnf_is_reduced_and_spans_the_same_lattice(m in (1usize..=4).prop_flat_map(arb_nonsingular)) {
        let h = hermite_normal_form(&m);
        let r = m.len();
        prop_assert_eq!(h.len(), r);
        for i in 0..r {
            prop_assert!(h[i][i] > 0);
            prop_assert!(h[i][..i].iter().all(|&x| x == 0));
            for row in &h[..i] {
                prop_assert!((0..h[i][i]).contains(&row[i]));
            }
        }
        prop_assert_eq!(determinant(&h), determinant(&m).abs());
        let (a, b) = (SublatticeBasis::new(m.clone()).unwrap(), SublatticeBasis::new(h.clone()).unwrap());
        prop_assert!(a.contains_sublattice(&b) && b.contains_sublattice(&a));
        for row in &m {
            prop_assert!(b.contains(row));
        }
    }

    #[test]
    fn hnf_is_basis_independent(m in (1usize..=4).prop_flat_map(|r| (arb_nonsingular(r), arb_unimodular(r)))) {
        let (m, u) = m;
        prop_assert_eq!(hermite_normal_form(&mul(&u, &m)), hermite_normal_form(&m));
    }

    #[test]
    fn snf_divisibility_and_index(m in (1usize..=3).prop_flat_map(arb_nonsingular)) {
        let (d, v) = smith_normal_form(&m);
        let det = determinant(&m).unsigned_abs();
        prop_assert_eq!(d.len(), m.len());
        prop_assert!(d.iter().all(|&x| x > 0));
        prop_assert_eq!(determinant(&v).abs(), 1);
        prop_assert_eq!(d.iter().map(|&x| x as u64).product::<u64>(), det);
        for w in d.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn quotient_depends_only_on_the_sublattice(u in arb_unimodular(2), which in 1u8..=2) {
        let spec = LatticeSpec::eisenstein();
        let t = eisenstein_block_sublattice(which).unwrap();
        let moved = SublatticeBasis::new(mul(&u, &t.rows)).unwrap();
        let a = lattice_quotient(&spec, &t).unwrap();
        let b = lattice_quotient(&spec, &moved).unwrap();
        prop_assert_eq!(graph6::encode(&a.graph), graph6::encode(&b.graph));
        prop_assert_eq!(a.group.moduli(), b.group.moduli());
    }
}

#[test]
fn hnf_counts_match_the_divisor_formula() {
    // sublattices of index n in Z^r: sum over d1 d2 ... dr = n of d2 d3^2 ... dr^(r-1)
    fn formula(rank: usize, n: u64) -> u64 {
        if rank == 1 {
            return 1;
        }
        (1..=n)
            .filter(|d| n.is_multiple_of(*d))
            .map(|d| d.pow(rank as u32 - 1) * formula(rank - 1, n / d))
            .sum()
    }
    for rank in 1..=4 {
        for n in 1..=12 {
            assert_eq!(
                count_hnf(rank, n) as u64,
                formula(rank, n),
                "rank {rank}, index {n}"
            );
        }
    }
}

#[test]
fn block_sublattices_lie_in_the_code_ideal() {
    let code = eisenstein_code_ideal();
    assert_eq!(code.index, 7);
    for which in [1, 2] {
        let t = eisenstein_block_sublattice(which).unwrap();
        assert!(code.contains_sublattice(&t));
        assert_eq!(t.index, 28);
        let (q, _) = triangular_quotient(which).unwrap();
        assert_eq!(q.graph.order(), 28);
    }
}

#[test]
fn product_grid_is_edge_regular() {
    let z = LatticeSpec::eisenstein();
    assert_eq!(z.local_params(), Some((6, 2)));
    assert_eq!(LatticeSpec::product(&z, &z).local_params(), Some((12, 2)));
    assert_eq!(LatticeSpec::zero_sum(4).local_params(), Some((12, 4)));
}
