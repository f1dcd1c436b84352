//! Integer lattices with a connection set, their finite-index sublattices
//! and the Cayley graphs on the quotients.
//!
//! A [`LatticeSpec`] is a rank-`r` lattice given by `r` basis rows in some
//! ambient `Z^n`, together with a symmetric finite connection set. Sublattices
//! are written in lattice coordinates (row vectors over the basis) and kept
//! in Hermite normal form: upper triangular, positive diagonal, every entry
//! above a pivot reduced into `[0, pivot)`. Quotients come from the Smith
//! normal form `U M V = diag(d1, ..., dr)`: the map `x ↦ xV mod d` identifies
//! `Z^r / rowspace(M)` with `Z_{d1} ⊕ ... ⊕ Z_{dr}`, with factors `d = 1`
//! dropped.

use std::collections::HashSet;
use std::thread;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::codes::{coset_partition, CodePartition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{AbelianGroup, Element};
use crate::iso::canonical_form;
use crate::regularity::{classify_regularity, ErgParams};

pub type Matrix = Vec<Vec<i64>>;

fn to_wide(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    m.iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect()
}

fn to_narrow(x: i128) -> i64 {
    i64::try_from(x).expect("lattice entry exceeds i64")
}

/// Row-style Hermite normal form of the lattice generated by `rows`;
/// zero rows are dropped.
pub fn hermite_normal_form(rows: &[Vec<i64>]) -> Matrix {
    let Some(n) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut a = to_wide(rows);
    let mut r = 0;
    for col in 0..n {
        while let Some(p) = (r..a.len())
            .filter(|&i| a[i][col] != 0)
            .min_by_key(|&i| a[i][col].abs())
        {
            a.swap(r, p);
            let mut clear = true;
            for i in r + 1..a.len() {
                let q = a[i][col] / a[r][col];
                if q != 0 {
                    let pivot_row = a[r].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= q * y;
                    }
                }
                clear &= a[i][col] == 0;
            }
            if clear {
                break;
            }
        }
        if r == a.len() || a[r][col] == 0 {
            continue;
        }
        if a[r][col] < 0 {
            a[r].iter_mut().for_each(|x| *x = -*x);
        }
        let pivot_row = a[r].clone();
        for row in a[..r].iter_mut() {
            let q = row[col].div_euclid(pivot_row[col]);
            if q != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= q * y;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a.into_iter()
        .map(|row| row.into_iter().map(to_narrow).collect())
        .collect()
}

/// Smith normal form of a square non-singular matrix: the invariant factors
/// `d1 | d2 | ...` and a unimodular `V` with `U M V = diag(d)`.
pub fn smith_normal_form(m: &[Vec<i64>]) -> (Vec<i64>, Matrix) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = to_wide(m);
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| (i == j) as i128).collect())
        .collect();
    let swap_cols = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for row in a.iter_mut().chain(v.iter_mut()) {
            row.swap(i, j);
        }
    };
    let add_col =
        |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, dst: usize, src: usize, q: i128| {
            for row in a.iter_mut().chain(v.iter_mut()) {
                row[dst] -= q * row[src];
            }
        };
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        while let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        {
            a.swap(t, pi);
            swap_cols(&mut a, &mut v, t, pj);
            let mut done = true;
            for i in t + 1..rows {
                let q = a[i][t] / a[t][t];
                if q != 0 {
                    let pivot_row = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= q * y;
                    }
                }
                done &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / a[t][t];
                if q != 0 {
                    add_col(&mut a, &mut v, j, t, q);
                }
                done &= a[t][j] == 0;
            }
            if !done {
                continue;
            }
            let p = a[t][t];
            if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0)) {
                let row_i = a[i].clone();
                for (x, y) in a[t].iter_mut().zip(&row_i) {
                    *x += y;
                }
                continue;
            }
            break;
        }
        if a[t][t] < 0 {
            a[t].iter_mut().for_each(|x| *x = -*x);
        }
        diag.push(to_narrow(a[t][t]));
    }
    (
        diag,
        v.into_iter()
            .map(|r| r.into_iter().map(to_narrow).collect())
            .collect(),
    )
}

/// Every `rank × rank` Hermite normal form with determinant `det`, in
/// lexicographic order of (diagonal, off-diagonal entries row by row).
/// There are `Σ_{d1···dr = det} Π_j dj^(j-1)` of them.
pub fn for_each_hnf(rank: usize, det: u64, mut f: impl FnMut(&[Vec<i64>])) {
    fn diagonals(rank: usize, det: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if prefix.len() + 1 == rank {
            prefix.push(det);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for d in (1..=det).filter(|d| det.is_multiple_of(*d)) {
            prefix.push(d);
            diagonals(rank, det / d, prefix, out);
            prefix.pop();
        }
    }
    if rank == 0 {
        if det == 1 {
            f(&[]);
        }
        return;
    }
    let mut diags = Vec::new();
    diagonals(rank, det, &mut Vec::new(), &mut diags);
    // free slots (i, j), i < j, with entry range [0, d_j)
    let slots: Vec<(usize, usize)> = (0..rank)
        .flat_map(|i| (i + 1..rank).map(move |j| (i, j)))
        .collect();
    for d in diags {
        let mut m: Matrix = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| if i == j { d[i] as i64 } else { 0 })
                    .collect()
            })
            .collect();
        loop {
            f(&m);
            // odometer over the free slots, last slot fastest
            let mut k = slots.len();
            let advanced = loop {
                if k == 0 {
                    break false;
                }
                k -= 1;
                let (i, j) = slots[k];
                m[i][j] += 1;
                if m[i][j] < d[j] as i64 {
                    break true;
                }
                m[i][j] = 0;
            };
            if !advanced {
                break;
            }
        }
    }
}

pub fn count_hnf(rank: usize, det: u64) -> usize {
    let mut n = 0;
    for_each_hnf(rank, det, |_| n += 1);
    n
}

/// A finite-index sublattice in lattice coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SublatticeBasis {
    pub rows: Matrix,
    pub hnf: Matrix,
    pub index: u64,
}

impl SublatticeBasis {
    pub fn new(rows: Matrix) -> Result<Self> {
        let r = rows.len();
        if rows.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidArgument(
                "sublattice basis must be square".into(),
            ));
        }
        let hnf = hermite_normal_form(&rows);
        if hnf.len() != r {
            return Err(Error::InvalidArgument(
                "sublattice basis is singular".into(),
            ));
        }
        let index = hnf
            .iter()
            .enumerate()
            .map(|(i, row)| row[i] as u64)
            .product();
        Ok(SublatticeBasis { rows, hnf, index })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Canonical coset representative: each coordinate reduced into `[0, pivot)`.
    pub fn residue(&self, x: &[i64]) -> Vec<i64> {
        let mut y = x.to_vec();
        for (i, row) in self.hnf.iter().enumerate() {
            let q = y[i].div_euclid(row[i]);
            if q != 0 {
                for (a, b) in y.iter_mut().zip(row) {
                    *a -= q * b;
                }
            }
        }
        y
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.residue(x).iter().all(|&c| c == 0)
    }

    pub fn contains_sublattice(&self, other: &SublatticeBasis) -> bool {
        other.hnf.iter().all(|row| self.contains(row))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub name: String,
    /// Rows in ambient coordinates.
    pub basis: Matrix,
    /// Connection vectors in ambient coordinates.
    pub connection: Matrix,
    /// Connection vectors in lattice coordinates.
    pub connection_coords: Matrix,
}

/// Solves `x · basis = y` over the rationals; `None` unless the solution is integral.
fn lattice_coords(basis: &[Vec<i64>], y: &[i64]) -> Option<Vec<i64>> {
    let r = basis.len();
    let n = y.len();
    // rows of the augmented system basisᵀ | y
    let mut a: Vec<Vec<Ratio<i128>>> = (0..n)
        .map(|j| {
            let mut row: Vec<Ratio<i128>> = (0..r)
                .map(|i| Ratio::from_integer(basis[i][j] as i128))
                .collect();
            row.push(Ratio::from_integer(y[j] as i128));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..r {
        let p = (row..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(row, p);
        let inv = a[row][col].recip();
        a[row].iter_mut().for_each(|x| *x *= inv);
        for i in 0..n {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col];
                let pivot_row = a[row].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(row);
        row += 1;
    }
    if a[row..].iter().any(|rw| !rw[r].is_zero()) {
        return None;
    }
    pivots
        .iter()
        .map(|&p| {
            let x = a[p][r];
            x.is_integer().then(|| to_narrow(x.to_integer()))
        })
        .collect()
}

impl LatticeSpec {
    /// Checks full row rank, that connection vectors lie in the lattice,
    /// are non-zero, distinct and closed under negation.
    pub fn new(name: impl Into<String>, basis: Matrix, connection: Matrix) -> Result<Self> {
        let name = name.into();
        let n = basis.first().map_or(0, Vec::len);
        if basis.is_empty()
            || basis.iter().any(|r| r.len() != n)
            || hermite_normal_form(&basis).len() != basis.len()
        {
            return Err(Error::InvalidArgument(format!(
                "{name}: basis rows must be independent and of equal length"
            )));
        }
        let set: HashSet<&Vec<i64>> = connection.iter().collect();
        if set.len() != connection.len() {
            return Err(Error::InvalidArgument(format!(
                "{name}: repeated connection vector"
            )));
        }
        let mut coords = Vec::with_capacity(connection.len());
        for s in &connection {
            if s.len() != n || s.iter().all(|&x| x == 0) {
                return Err(Error::InvalidArgument(format!(
                    "{name}: connection vector {s:?} is zero or of wrong length"
                )));
            }
            let neg: Vec<i64> = s.iter().map(|x| -x).collect();
            if !set.contains(&neg) {
                return Err(Error::InvalidArgument(format!(
                    "{name}: connection set not closed under negation at {s:?}"
                )));
            }
            coords.push(lattice_coords(&basis, s).ok_or_else(|| {
                Error::InvalidArgument(format!("{name}: {s:?} is not a lattice vector"))
            })?);
        }
        Ok(LatticeSpec {
            name,
            basis,
            connection,
            connection_coords: coords,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self) -> usize {
        self.connection.len()
    }

    /// Ambient vector to lattice coordinates.
    pub fn coords(&self, y: &[i64]) -> Option<Vec<i64>> {
        lattice_coords(&self.basis, y)
    }

    /// The zero-sum lattice in `Z^n` (root lattice `A_{n-1}`) with connection
    /// set the vectors `e_i - e_j`. Basis `e_i - e_{i+1}`.
    pub fn zero_sum(n: usize) -> Self {
        let basis = (0..n - 1).map(|i| unit(n, i, 1, i + 1, -1)).collect();
        let connection = weight_two_vectors(n, true);
        LatticeSpec::new(format!("A{}", n - 1), basis, connection)
            .expect("root lattice spec is valid")
    }

    /// The even-sum lattice in `Z^n` (root lattice `D_n`) with connection
    /// set the vectors `±e_i ± e_j`. Basis `e_i - e_{i+1}` and `e_{n-1} + e_n`.
    pub fn even_sum(n: usize) -> Self {
        let mut basis: Matrix = (0..n - 1).map(|i| unit(n, i, 1, i + 1, -1)).collect();
        basis.push(unit(n, n - 2, 1, n - 1, 1));
        let connection = weight_two_vectors(n, false);
        LatticeSpec::new(format!("D{n}"), basis, connection).expect("root lattice spec is valid")
    }

    /// Eisenstein integers `b + cω` as pairs `(b, c)`, connected by the six
    /// units `±1, ±ω, ±ω² = ∓(1 + ω)`: the triangular grid. The map
    /// `(b, c) ↦ b(1,-1,0) + c(0,1,-1)` is an isomorphism onto `A2` taking
    /// the units to the roots.
    pub fn eisenstein() -> Self {
        let basis = vec![vec![1, 0], vec![0, 1]];
        let connection = vec![
            vec![1, 0],
            vec![-1, 0],
            vec![0, 1],
            vec![0, -1],
            vec![-1, -1],
            vec![1, 1],
        ];
        LatticeSpec::new("Z[ω]", basis, connection).expect("Eisenstein spec is valid")
    }

    /// The lattice of `spec` with connection set replaced by `connection`.
    pub fn with_connection(&self, name: impl Into<String>, connection: Matrix) -> Result<Self> {
        LatticeSpec::new(name, self.basis.clone(), connection)
    }

    /// Cartesian product: block-diagonal basis, connection `(s, 0) ∪ (0, s)`.
    pub fn product(a: &LatticeSpec, b: &LatticeSpec) -> Self {
        let (na, nb) = (a.basis[0].len(), b.basis[0].len());
        let pad = |v: &[i64], left: bool| -> Vec<i64> {
            let mut out = vec![0; na + nb];
            let off = if left { 0 } else { na };
            out[off..off + v.len()].copy_from_slice(v);
            out
        };
        let basis = a
            .basis
            .iter()
            .map(|r| pad(r, true))
            .chain(b.basis.iter().map(|r| pad(r, false)))
            .collect();
        let connection = a
            .connection
            .iter()
            .map(|s| pad(s, true))
            .chain(b.connection.iter().map(|s| pad(s, false)))
            .collect();
        LatticeSpec::new(format!("{}×{}", a.name, b.name), basis, connection)
            .expect("product of valid specs is valid")
    }

    /// `(k, λ)` of the infinite Cayley graph, if it is edge-regular.
    pub fn local_params(&self) -> Option<(usize, usize)> {
        let set: HashSet<&Vec<i64>> = self.connection.iter().collect();
        let mut lambda = None;
        for s in &self.connection {
            let c = self
                .connection
                .iter()
                .filter(|t| {
                    let d: Vec<i64> = t.iter().zip(s).map(|(x, y)| x - y).collect();
                    set.contains(&d)
                })
                .count();
            if *lambda.get_or_insert(c) != c {
                return None;
            }
        }
        Some((self.connection.len(), lambda.unwrap_or(0)))
    }
}

fn unit(n: usize, i: usize, a: i64, j: usize, b: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = a;
    v[j] = b;
    v
}

fn weight_two_vectors(n: usize, zero_sum: bool) -> Matrix {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for (a, b) in [(1, -1), (-1, 1), (1, 1), (-1, -1)] {
                if !zero_sum || a + b == 0 {
                    out.push(unit(n, i, a, j, b));
                }
            }
        }
    }
    out.sort();
    out
}

/// The Cayley graph on `Z^r / T` with the images of the connection set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeQuotient {
    pub graph: Graph,
    pub group: AbelianGroup,
    /// Columns of `V` kept for the non-trivial invariant factors: lattice
    /// coordinates `x` map to `x · transform mod moduli`.
    pub transform: Matrix,
    /// Images of the connection vectors, in connection order.
    pub images: Vec<Element>,
}

impl LatticeQuotient {
    pub fn image(&self, x: &[i64]) -> Element {
        let y: Vec<i64> = (0..self.group.moduli().len())
            .map(|c| {
                x.iter()
                    .zip(&self.transform)
                    .map(|(a, row)| a * row[c])
                    .sum()
            })
            .collect();
        self.group.reduce(&y)
    }

    pub fn vertex_of(&self, x: &[i64]) -> usize {
        self.group.index_of(&self.image(x))
    }

    /// Cosets of the image of `code` (a sublattice containing `T`) as a code partition.
    pub fn descended_partition(&self, code: &SublatticeBasis) -> Result<CodePartition> {
        let gens: Vec<Element> = code.hnf.iter().map(|row| self.image(row)).collect();
        coset_partition(&self.group, &gens, &self.graph)
    }
}

fn quotient_map(t: &SublatticeBasis) -> (AbelianGroup, Matrix) {
    let (diag, v) = smith_normal_form(&t.hnf);
    let keep: Vec<usize> = (0..diag.len()).filter(|&i| diag[i] != 1).collect();
    let group = AbelianGroup::new(keep.iter().map(|&i| diag[i] as u64).collect())
        .expect("invariant factors are positive");
    let transform = v
        .iter()
        .map(|row| keep.iter().map(|&i| row[i]).collect())
        .collect();
    (group, transform)
}

pub fn lattice_quotient(spec: &LatticeSpec, t: &SublatticeBasis) -> Result<LatticeQuotient> {
    if t.rank() != spec.rank() {
        return Err(Error::InvalidArgument(format!(
            "sublattice of rank {} in a lattice of rank {}",
            t.rank(),
            spec.rank()
        )));
    }
    let (group, transform) = quotient_map(t);
    let mut q = LatticeQuotient {
        graph: Graph::empty(0),
        group,
        transform,
        images: Vec::new(),
    };
    q.images = spec.connection_coords.iter().map(|s| q.image(s)).collect();
    let mut seen = HashSet::new();
    for (s, img) in spec.connection.iter().zip(&q.images) {
        if q.group.is_zero(img) || !seen.insert(img.clone()) {
            return Err(Error::QuotientTooSmall(format!(
                "connection vector {s:?} collapses modulo {:?}",
                t.hnf
            )));
        }
    }
    q.graph = q.group.cayley_graph(&q.images)?;
    Ok(q)
}

/// Index-`(k+1)` sublattices in which `0` and the connection vectors are pairwise
/// incongruent, i.e. whose cosets are perfect 1-codes of the infinite graph.
pub fn find_code_sublattices(spec: &LatticeSpec) -> Vec<SublatticeBasis> {
    let index = spec.degree() as u64 + 1;
    let mut out = Vec::new();
    for_each_hnf(spec.rank(), index, |h| {
        let t = SublatticeBasis {
            rows: h.to_vec(),
            hnf: h.to_vec(),
            index,
        };
        let mut residues: HashSet<Vec<i64>> = HashSet::new();
        residues.insert(vec![0; h.len()]);
        if spec
            .connection_coords
            .iter()
            .all(|s| residues.insert(t.residue(s)))
        {
            out.push(t);
        }
    });
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeQuotient {
    pub sublattice: SublatticeBasis,
    pub quotient: LatticeQuotient,
    pub partition: CodePartition,
    pub canonical_graph6: String,
}

/// The quotient by `t` if it is edge-regular with the infinite graph's
/// `(k, λ)` and the cosets of `code` descend to a code partition.
pub fn code_quotient(
    spec: &LatticeSpec,
    code: &SublatticeBasis,
    t: SublatticeBasis,
) -> Result<CodeQuotient> {
    let (k, lambda) = spec
        .local_params()
        .ok_or_else(|| Error::Structure(format!("{} is not edge-regular", spec.name)))?;
    if !code.contains_sublattice(&t) {
        return Err(Error::InvalidArgument(
            "sublattice is not inside the code sublattice".into(),
        ));
    }
    let quotient = lattice_quotient(spec, &t)?;
    let v = quotient.graph.order();
    let want = ErgParams::new(v, k, lambda)?;
    if classify_regularity(&quotient.graph).edge_regular() != Some(want) {
        return Err(Error::Structure(format!(
            "quotient by {:?} is not edge-regular {want}",
            t.hnf
        )));
    }
    let partition = quotient.descended_partition(code)?;
    let canonical_graph6 = canonical_form(&quotient.graph).graph6;
    Ok(CodeQuotient {
        sublattice: t,
        quotient,
        partition,
        canonical_graph6,
    })
}

/// Index-`target_v` sublattices inside `code` whose quotients are
/// edge-regular with a descended code partition, one per isomorphism class
/// of quotient graph, in HNF order of the first representative.
pub fn enumerate_code_preserving_quotients(
    spec: &LatticeSpec,
    code: &SublatticeBasis,
    target_v: u64,
) -> Result<Vec<CodeQuotient>> {
    if code.index == 0 || !target_v.is_multiple_of(code.index) {
        return Err(Error::InvalidArgument(format!(
            "target {target_v} is not a multiple of the code index {}",
            code.index
        )));
    }
    let inner = target_v / code.index;
    let mut candidates: Vec<SublatticeBasis> = Vec::new();
    for_each_hnf(spec.rank(), inner, |h| {
        let rows: Matrix = h
            .iter()
            .map(|hr| {
                (0..h.len())
                    .map(|c| hr.iter().zip(&code.hnf).map(|(a, cr)| a * cr[c]).sum())
                    .collect()
            })
            .collect();
        candidates.push(SublatticeBasis::new(rows).expect("product of non-singular matrices"));
    });
    candidates.sort_by(|a, b| a.hnf.cmp(&b.hnf));
    candidates.dedup_by(|a, b| a.hnf == b.hnf);

    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(candidates.len())
        .max(1);
    let chunk = candidates.len().div_ceil(workers).max(1);
    let found: Vec<Option<CodeQuotient>> = thread::scope(|s| {
        let handles: Vec<_> = candidates
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .map(|t| code_quotient(spec, code, t.clone()).ok())
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("quotient worker panicked"))
            .collect()
    });
    let mut seen = HashSet::new();
    Ok(found
        .into_iter()
        .flatten()
        .filter(|q| seen.insert(q.canonical_graph6.clone()))
        .collect())
}

/// Absolute determinant of a square matrix.
pub fn determinant(m: &[Vec<i64>]) -> i64 {
    let (diag, _) = smith_normal_form(m);
    if diag.len() < m.len() || diag.iter().any(|d| d.is_zero()) {
        return 0;
    }
    diag.iter().product::<i64>().abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_is_canonical() {
        let a = hermite_normal_form(&[vec![-4, 2], vec![14, 0]]);
        assert_eq!(a, vec![vec![2, 6], vec![0, 14]]);
        // same lattice from other generators
        let b = hermite_normal_form(&[vec![10, 2], vec![-4, 2], vec![14, 0], vec![0, 28]]);
        assert_eq!(a, b);
        assert_eq!(hermite_normal_form(&[vec![0, 0]]), Vec::<Vec<i64>>::new());
    }

    #[test]
    fn smith_factors() {
        let (d, v) = smith_normal_form(&[vec![-4, 2], vec![14, 0]]);
        assert_eq!(d, vec![2, 14]);
        assert_eq!(determinant(&v), 1);
        let (d, _) = smith_normal_form(&[vec![5, 1], vec![28, 0]]);
        assert_eq!(d, vec![1, 28]);
        let (d, _) = smith_normal_form(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 4]]);
        assert_eq!(d, vec![1, 2, 12]);
    }

    #[test]
    fn hnf_counts() {
        // number of index-N subgroups of Z^r, multiplicative in N
        assert_eq!(count_hnf(2, 7), 8);
        assert_eq!(count_hnf(3, 13), 1 + 13 + 169);
        assert_eq!(count_hnf(3, 6), 7 * 13);
        assert_eq!(count_hnf(4, 13), 1 + 13 + 169 + 2197);
        assert_eq!(count_hnf(1, 5), 1);
        for_each_hnf(3, 12, |h| {
            let t = SublatticeBasis::new(h.to_vec()).unwrap();
            assert_eq!(t.hnf, h.to_vec());
            assert_eq!(t.index, 12);
        });
    }

    #[test]
    fn coordinates_and_membership() {
        let a3 = LatticeSpec::zero_sum(4);
        assert_eq!(a3.coords(&[1, 0, 0, -1]), Some(vec![1, 1, 1]));
        assert_eq!(a3.coords(&[1, 0, 0, 0]), None);
        let d3 = LatticeSpec::even_sum(3);
        assert_eq!(d3.coords(&[1, 1, 0]), Some(vec![1, 1, 1]));
        assert_eq!(d3.degree(), 12);
        let t = SublatticeBasis::new(vec![vec![2, 0], vec![0, 3]]).unwrap();
        assert!(t.contains(&[4, -3]));
        assert!(!t.contains(&[1, 3]));
        assert_eq!(t.residue(&[-1, 4]), vec![1, 1]);
    }

    #[test]
    fn triangular_grid_quotients() {
        let z = LatticeSpec::eisenstein();
        assert_eq!(z.local_params(), Some((6, 2)));
        let codes = find_code_sublattices(&z);
        // (2 - ω) and its conjugate
        assert_eq!(codes.len(), 2);
        let q = lattice_quotient(
            &z,
            &SublatticeBasis::new(vec![vec![-4, 2], vec![14, 0]]).unwrap(),
        )
        .unwrap();
        assert_eq!(q.group.moduli(), &[2, 14]);
        assert_eq!(
            classify_regularity(&q.graph).edge_regular(),
            Some(ErgParams::new(28, 6, 2).unwrap())
        );
        // index 7: the code lattice itself gives K7
        let k7 = lattice_quotient(&z, &codes[0]).unwrap();
        assert!(k7.graph.is_complete());
        // index 2 collapses ±1
        let small = SublatticeBasis::new(vec![vec![2, 0], vec![0, 1]]).unwrap();
        assert!(matches!(
            lattice_quotient(&z, &small),
            Err(Error::QuotientTooSmall(_))
        ));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(LatticeSpec::new("x", vec![vec![1, 0], vec![0, 1]], vec![vec![1, 0]]).is_err());
        assert!(LatticeSpec::new(
            "x",
            vec![vec![2, 0], vec![0, 1]],
            vec![vec![1, 0], vec![-1, 0]]
        )
        .is_err());
        assert!(LatticeSpec::new("x", vec![vec![1, 1], vec![2, 2]], vec![]).is_err());
    }
}
