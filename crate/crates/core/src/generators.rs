//! Concrete input graphs: polyhedra, circulants, triangular-grid quotients,
//! and the root-lattice families `Γ(1)_{n,m}`, `Γ(2)_{n,m}`.
//!
//! `Γ(1)_{n,m}` is the Cayley graph on the zero-sum vectors of `Z^n` with
//! connection set `S(1)_{n,m}`, the `{0,±1}` vectors of weight `m` and
//! coordinate sum zero. `Γ(2)_{n,m}` uses the even-sum vectors and
//! `S(2)_{n,m}`, all `{0,±1}` vectors of weight `m`.

use serde::{Deserialize, Serialize};

use crate::codes::{coset_partition, is_perfect_code, CodePartition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::AbelianGroup;
use crate::lattice::{
    hermite_normal_form, lattice_quotient, LatticeQuotient, LatticeSpec, Matrix, SublatticeBasis,
};
use crate::regularity::{classify_regularity, ErgParams};

fn expect_edge_regular(name: &str, g: &Graph, v: usize, k: usize, lambda: usize) -> Result<()> {
    let want = ErgParams::new(v, k, lambda)?;
    match classify_regularity(g).edge_regular() {
        Some(p) if p == want => Ok(()),
        other => Err(Error::InternalConsistency(format!(
            "{name}: expected edge-regular {want}, found {other:?}"
        ))),
    }
}

/// Pairs `{x, x̄}` of vertices at distance `diameter`, assuming each vertex has exactly one.
fn antipodal_pairs(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let mut pairs = Vec::new();
    let mut diameter = 0;
    for x in 0..g.order() {
        let dist = g.distances_from(x);
        diameter = diameter.max(dist.iter().flatten().copied().max().unwrap_or(0));
        let far: Vec<usize> = (0..g.order())
            .filter(|&y| dist[y] == Some(diameter))
            .collect();
        if far.len() != 1 {
            return Err(Error::Structure(format!(
                "vertex {x} has {} antipodes",
                far.len()
            )));
        }
        if x < far[0] {
            pairs.push(vec![x, far[0]]);
        }
    }
    Ok(pairs)
}

/// The icosahedron: vertex 0 on top, 1..=5 the upper ring, 6..=10 the lower
/// ring (6 + j below and between 1 + j and 1 + (j + 1) % 5), 11 at the
/// bottom. Edge-regular `(12,5,2)`; the six antipodal pairs are perfect
/// 1-codes.
pub fn icosahedron() -> Result<(Graph, CodePartition)> {
    let mut edges = Vec::new();
    for j in 0..5 {
        let (up, up_next) = (1 + j, 1 + (j + 1) % 5);
        let (low, low_next) = (6 + j, 6 + (j + 1) % 5);
        edges.extend([
            (0, up),
            (up, up_next),
            (low, low_next),
            (11, low),
            (up, low),
            (up_next, low),
        ]);
    }
    let g = Graph::from_edges(12, edges)?;
    expect_edge_regular("icosahedron", &g, 12, 5, 2)?;
    let p = CodePartition::new(&g, antipodal_pairs(&g)?)?;
    Ok((g, p))
}

/// The dodecahedron from LCF notation `[10,7,4,-4,-7,10,-4,7,-7,4]^2`: the
/// Hamiltonian cycle `0..20` plus chords `i ~ i + lcf[i % 10]`. Returned
/// with its ten antipodal pairs, each a perfect 2-code.
pub fn dodecahedron() -> Result<(Graph, Vec<Vec<usize>>)> {
    const LCF: [i64; 10] = [10, 7, 4, -4, -7, 10, -4, 7, -7, 4];
    let mut g = Graph::cycle(20);
    for i in 0..20 {
        let j = (i as i64 + LCF[i % 10]).rem_euclid(20) as usize;
        if !g.is_adjacent(i, j) {
            g.add_edge(i, j)?;
        }
    }
    expect_edge_regular("dodecahedron", &g, 20, 3, 0)?;
    let pairs = antipodal_pairs(&g)?;
    if pairs.len() != 10 || !pairs.iter().all(|p| is_perfect_code(&g, p, 2)) {
        return Err(Error::InternalConsistency(
            "dodecahedron antipodal pairs are not perfect 2-codes".into(),
        ));
    }
    Ok((g, pairs))
}

/// Two dodecahedra `x ↦ x` and `x ↦ 20 + x`, with `x1 ~ y2` whenever `x`
/// and `y` are at distance 2. Each vertex gains six cross edges, giving an
/// edge-regular `(40,9,2)` graph. The sets `{x1, x̄1, x2, x̄2}` over
/// antipodal pairs are perfect 1-codes.
pub fn double_dodecahedron() -> Result<(Graph, CodePartition)> {
    let (d, pairs) = dodecahedron()?;
    let mut g = d.disjoint_union(&d);
    for x in 0..20 {
        let dist = d.distances_from(x);
        for y in (0..20).filter(|&y| dist[y] == Some(2)) {
            g.add_edge(x, 20 + y)?;
        }
    }
    expect_edge_regular("double dodecahedron", &g, 40, 9, 2)?;
    let codes: Vec<Vec<usize>> = pairs
        .iter()
        .map(|p| vec![p[0], p[1], 20 + p[0], 20 + p[1]])
        .collect();
    let p = CodePartition::new(&g, codes)
        .map_err(|e| Error::InternalConsistency(format!("double dodecahedron codes: {e}")))?;
    Ok((g, p))
}

/// `i ~ j` iff `(i - j) mod n ∈ S`. `S` is taken mod `n` and must be
/// closed under negation and avoid 0.
pub fn circulant(n: usize, connection: &[i64]) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("circulant on 0 vertices".into()));
    }
    let elems: Vec<Vec<u64>> = connection
        .iter()
        .map(|&s| vec![s.rem_euclid(n as i64) as u64])
        .collect();
    AbelianGroup::cyclic(n as u64).cayley_graph(&elems)
}

/// `{2^i mod n}`, the multiplicative orbit of 2.
pub fn powers_of_two(n: u64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut x = 1 % n;
    while !out.contains(&(x as i64)) {
        out.push(x as i64);
        x = x * 2 % n;
    }
    out.sort_unstable();
    out
}

/// The circulant on `Z_65` with connection set the powers of 2, and its
/// partition into the five-element cosets of `⟨13⟩`.
pub fn circulant65() -> Result<(Graph, CodePartition)> {
    let s = powers_of_two(65);
    let g = circulant(65, &s)?;
    expect_edge_regular("65-circulant", &g, 65, 12, 3)?;
    let p = coset_partition(&AbelianGroup::cyclic(65), &[vec![13]], &g)?;
    Ok((g, p))
}

/// The ideal `(2 - ω)` of the Eisenstein integers, index 7: its cosets
/// are the perfect 1-codes of the triangular grid.
pub fn eisenstein_code_ideal() -> SublatticeBasis {
    // (2 - ω) and (2 - ω)ω = 1 + 3ω
    SublatticeBasis::new(vec![vec![2, -1], vec![1, 3]]).expect("non-singular")
}

/// `{2(-2 + ω)x + 14y}` and `{(5 + ω)x + 28y}` for `x, y ∈ Z`.
pub fn eisenstein_block_sublattice(which: u8) -> Result<SublatticeBasis> {
    match which {
        1 => SublatticeBasis::new(vec![vec![-4, 2], vec![14, 0]]),
        2 => SublatticeBasis::new(vec![vec![5, 1], vec![28, 0]]),
        _ => Err(Error::InvalidArgument(format!(
            "no block sublattice T{which}"
        ))),
    }
}

/// The triangular grid modulo `T1` or `T2`, with the code partition from
/// the cosets of `(2 - ω)`.
pub fn triangular_quotient(which: u8) -> Result<(LatticeQuotient, CodePartition)> {
    let spec = LatticeSpec::eisenstein();
    let t = eisenstein_block_sublattice(which)?;
    let code = eisenstein_code_ideal();
    if !code.contains_sublattice(&t) {
        return Err(Error::InternalConsistency(format!(
            "T{which} is not inside (2 - ω)"
        )));
    }
    let q = lattice_quotient(&spec, &t)?;
    expect_edge_regular(&format!("Z[ω]/T{which}"), &q.graph, 28, 6, 2)?;
    let p = q.descended_partition(&code)?;
    Ok((q, p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Zero-sum vectors.
    ZeroSum = 1,
    /// All weight-`m` vectors over the even-sum lattice.
    EvenSum = 2,
}

impl TryFrom<u8> for Family {
    type Error = Error;
    fn try_from(f: u8) -> Result<Self> {
        match f {
            1 => Ok(Family::ZeroSum),
            2 => Ok(Family::EvenSum),
            _ => Err(Error::InvalidArgument(format!(
                "family must be 1 or 2, got {f}"
            ))),
        }
    }
}

/// `S(1)_{n,m}` or `S(2)_{n,m}`, sorted.
pub fn root_system_connection_set(n: usize, m: usize, family: Family) -> Result<Matrix> {
    if m == 0 || m % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "weight m = {m} must be positive and even"
        )));
    }
    if n < m {
        return Err(Error::InvalidArgument(format!(
            "weight m = {m} exceeds dimension n = {n}"
        )));
    }
    let mut out = Vec::new();
    let mut v = vec![0i64; n];
    fn rec(i: usize, weight: usize, m: usize, v: &mut Vec<i64>, family: Family, out: &mut Matrix) {
        if i == v.len() {
            if weight == m && (family == Family::EvenSum || v.iter().sum::<i64>() == 0) {
                out.push(v.clone());
            }
            return;
        }
        for x in [-1, 0, 1] {
            let w = weight + (x != 0) as usize;
            if w <= m && m - w < v.len() - i {
                v[i] = x;
                rec(i + 1, w, m, v, family, out);
            }
        }
        v[i] = 0;
    }
    rec(0, 0, m, &mut v, family, &mut out);
    out.sort();
    Ok(out)
}

/// The lattice of `Γ(family)_{n,m}` with its connection set.
pub fn gamma_spec(n: usize, m: usize, family: Family) -> Result<LatticeSpec> {
    check_gamma(n, m)?;
    let base = match family {
        Family::ZeroSum => LatticeSpec::zero_sum(n),
        Family::EvenSum => LatticeSpec::even_sum(n),
    };
    let name = format!("Γ({})_{{{n},{m}}}", family as u8);
    base.with_connection(name, root_system_connection_set(n, m, family)?)
}

fn check_gamma(n: usize, m: usize) -> Result<()> {
    if m == 0 || m % 2 == 1 || n < m + 1 {
        return Err(Error::InvalidArgument(format!(
            "need m even, m >= 2 and n >= m + 1; got n = {n}, m = {m}"
        )));
    }
    Ok(())
}

/// `C(n, r)`, zero when `n < 0`, `r < 0` or `r > n`.
pub fn binomial(n: i64, r: i64) -> u64 {
    if n < 0 || r < 0 || r > n {
        return 0;
    }
    let r = r.min(n - r) as u64;
    (0..r).fold(1u64, |acc, i| acc * (n as u64 - i) / (i + 1))
}

/// `(k, λ)` of `Γ(family)_{n,m}` from the closed forms
/// `k1 = C(n,m) C(m,m/2)`,
/// `λ1 = Σ_{i=0}^{m/2} C(m/2,i) C(m/2,m/2-i) C(n-m,m/2-i) C(n-3m/2+i,i)`,
/// `k2 = 2^m C(n,m)`, `λ2 = C(m,m/2) C(n-m,m/2) 2^(m/2)`.
pub fn gamma_params(n: usize, m: usize, family: Family) -> Result<(u64, u64)> {
    check_gamma(n, m)?;
    let (n, m, h) = (n as i64, m as i64, m as i64 / 2);
    Ok(match family {
        Family::ZeroSum => {
            let k = binomial(n, m) * binomial(m, h);
            let lambda = (0..=h)
                .map(|i| {
                    binomial(h, i)
                        * binomial(h, h - i)
                        * binomial(n - m, h - i)
                        * binomial(n - 3 * h + i, i)
                })
                .sum();
            (k, lambda)
        }
        Family::EvenSum => (
            2u64.pow(m as u32) * binomial(n, m),
            binomial(m, h) * binomial(n - m, h) * 2u64.pow(h as u32),
        ),
    })
}

/// `(k, λ)` counted around the origin of `Z^r / cZ^r` (lattice
/// coordinates), with `c` four times the largest coordinate of a connection
/// vector, so no sum or difference of two connection vectors wraps around.
/// `None` if the counts differ between edges.
pub fn brute_force_local_params(spec: &LatticeSpec) -> Result<Option<(u64, u64)>> {
    let c = 4 * spec
        .connection_coords
        .iter()
        .flatten()
        .map(|x| x.abs())
        .max()
        .unwrap_or(1)
        .max(1);
    let reduce = |x: &[i64]| -> Vec<i64> { x.iter().map(|a| a.rem_euclid(c)).collect() };
    let images: Vec<Vec<i64>> = spec.connection_coords.iter().map(|s| reduce(s)).collect();
    let set: std::collections::HashSet<&Vec<i64>> = images.iter().collect();
    if set.len() != images.len() || images.iter().any(|x| x.iter().all(|&a| a == 0)) {
        return Err(Error::QuotientTooSmall(
            "connection vectors collide in the test quotient".into(),
        ));
    }
    let mut lambda = None;
    for s in &images {
        let count = images
            .iter()
            .filter(|t| {
                let d: Vec<i64> = t
                    .iter()
                    .zip(s)
                    .map(|(a, b)| (a - b).rem_euclid(c))
                    .collect();
                set.contains(&d)
            })
            .count() as u64;
        if *lambda.get_or_insert(count) != count {
            return Ok(None);
        }
    }
    Ok(Some((images.len() as u64, lambda.unwrap_or(0))))
}

/// Whether `S_{n,m}` and `S_{n,2}` generate the same group, and that group
/// is all of the zero-sum (family 1) or even-sum (family 2) vectors.
pub fn group_identity_check(n: usize, m: usize, family: Family) -> Result<bool> {
    check_gamma(n, m)?;
    let full = hermite_normal_form(&root_system_connection_set(n, m, family)?);
    let roots = hermite_normal_form(&root_system_connection_set(n, 2, family)?);
    let standard = hermite_normal_form(&match family {
        Family::ZeroSum => LatticeSpec::zero_sum(n).basis,
        Family::EvenSum => LatticeSpec::even_sum(n).basis,
    });
    Ok(full == roots && roots == standard)
}

/// Parameterless generators by name.
pub const REGISTRY: &[(&str, &str)] = &[
    (
        "icosahedron",
        "edge-regular (12,5,2), antipodal code partition",
    ),
    ("dodecahedron", "3-regular on 20 vertices, diameter 5"),
    (
        "double-dodecahedron",
        "edge-regular (40,9,2) from two dodecahedra, ten 4-vertex codes",
    ),
    (
        "circulant65",
        "Cay(Z_65, powers of 2), edge-regular (65,12,3), cosets of <13>",
    ),
    (
        "delta1",
        "triangular grid modulo T1 over Z_2 + Z_14, edge-regular (28,6,2)",
    ),
    (
        "delta2",
        "triangular grid modulo T2 over Z_28, edge-regular (28,6,2)",
    ),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub name: String,
    pub graph: Graph,
    pub partition: Option<CodePartition>,
}

pub fn named_graph(name: &str) -> Result<Generated> {
    let (graph, partition) = match name {
        "icosahedron" => icosahedron().map(|(g, p)| (g, Some(p)))?,
        "dodecahedron" => (dodecahedron()?.0, None),
        "double-dodecahedron" => double_dodecahedron().map(|(g, p)| (g, Some(p)))?,
        "circulant65" => circulant65().map(|(g, p)| (g, Some(p)))?,
        "delta1" => triangular_quotient(1).map(|(q, p)| (q.graph, Some(p)))?,
        "delta2" => triangular_quotient(2).map(|(q, p)| (q.graph, Some(p)))?,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unknown generator {name:?}"
            )))
        }
    };
    Ok(Generated {
        name: name.to_string(),
        graph,
        partition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polyhedra() {
        let (ico, p) = icosahedron().unwrap();
        assert_eq!(
            (ico.order(), ico.edge_count(), p.len(), p.a),
            (12, 30, 6, 2)
        );
        assert!(p.codes.contains(&vec![0, 11]));
        let (dod, pairs) = dodecahedron().unwrap();
        assert_eq!(dod.edge_count(), 30);
        assert_eq!(pairs.len(), 10);
        for x in 0..20 {
            assert_eq!(dod.distance_profile(x), vec![1, 3, 6, 6, 3, 1]);
        }
    }

    #[test]
    fn double_dodecahedron_codes() {
        let (g, p) = double_dodecahedron().unwrap();
        assert_eq!((g.order(), p.len(), p.a), (40, 10, 4));
        // six cross edges at every vertex
        for x in 0..40 {
            let cross = g
                .neighbours(x)
                .iter()
                .filter(|&y| (x < 20) != (y < 20))
                .count();
            assert_eq!(cross, 6);
        }
    }

    #[test]
    fn circulants() {
        assert_eq!(circulant(5, &[1, -1]).unwrap(), Graph::cycle(5));
        assert_eq!(circulant(4, &[1, -1, 2]).unwrap(), Graph::complete(4));
        assert!(circulant(5, &[1]).is_err());
        assert_eq!(
            powers_of_two(65),
            vec![1, 2, 4, 8, 16, 32, 33, 49, 57, 61, 63, 64]
        );
        let (_, p) = circulant65().unwrap();
        assert_eq!((p.len(), p.a), (13, 5));
    }

    #[test]
    fn triangular_quotients() {
        let (q1, p1) = triangular_quotient(1).unwrap();
        let (q2, p2) = triangular_quotient(2).unwrap();
        assert_eq!(q1.group.moduli(), &[2, 14]);
        assert_eq!(q2.group.moduli(), &[28]);
        assert_eq!((p1.len(), p1.a, p2.len(), p2.a), (7, 4, 7, 4));
    }

    #[test]
    fn root_systems() {
        assert_eq!(
            root_system_connection_set(3, 2, Family::ZeroSum)
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            root_system_connection_set(3, 2, Family::EvenSum)
                .unwrap()
                .len(),
            12
        );
        assert_eq!(
            root_system_connection_set(4, 4, Family::ZeroSum)
                .unwrap()
                .len(),
            6
        );
        assert!(root_system_connection_set(4, 3, Family::ZeroSum).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(gamma_params(3, 2, Family::ZeroSum).unwrap(), (6, 2));
        assert_eq!(gamma_params(4, 2, Family::ZeroSum).unwrap(), (12, 4));
        assert_eq!(gamma_params(3, 2, Family::EvenSum).unwrap(), (12, 4));
        assert!(gamma_params(4, 4, Family::ZeroSum).is_err());
        assert!(group_identity_check(5, 4, Family::ZeroSum).unwrap());
        assert!(group_identity_check(5, 4, Family::EvenSum).unwrap());
        assert_eq!(binomial(-1, 0), 0);
        assert_eq!(binomial(6, 3), 20);
    }

    #[test]
    fn registry_names_resolve() {
        for (name, _) in REGISTRY {
            assert_eq!(named_graph(name).unwrap().name, *name);
        }
        assert!(named_graph("tesseract").is_err());
    }
}
