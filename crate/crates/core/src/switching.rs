//! WQH switching.
//!
//! Let the vertex set split as `C1 ∪ C2 ∪ D` with `|C1| = |C2|`, the
//! subgraphs induced on `C1`, `C2` regular of the same degree, and the one
//! induced on `C1 ∪ C2` regular. If every `x ∈ D` either sees as many
//! vertices of `C1` as of `C2`, or sees exactly `C1` or exactly `C2` inside
//! `C1 ∪ C2`, then swapping the "exactly `C1`" and "exactly `C2`" vertices'
//! attachments gives a cospectral graph.
//!
//! For a construction from `t` inputs, fix `I ⊆ {1..t}` containing 1 and two
//! code indices `i ≠ j`. Taking `C1` to be the part of spread clique `i`
//! lying in the copies listed in `I`, and `C2` likewise for clique `j`,
//! the switch maps the construction for `Π` to the construction for `Π'`
//! with `π'_r = π_r` for `r ∈ I` and `π'_r = π_r ∘ (i j)` otherwise.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::construction::{f_pi_construct, ConstructionContext, PermTuple};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Why a proposed `(C1, C2)` is not a valid switching set.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SwitchingViolation {
    #[error("C1 and C2 must be non-empty, distinct, disjoint and in range")]
    BadSets,
    #[error("|C1| = {0} but |C2| = {1}")]
    SizeMismatch(usize, usize),
    #[error("subgraph induced on C{0} is not regular")]
    PartNotRegular(u8),
    #[error("induced degrees differ: {0} on C1, {1} on C2")]
    DegreeMismatch(usize, usize),
    #[error("subgraph induced on C1 ∪ C2 is not regular")]
    UnionNotRegular,
    #[error("vertex {vertex} sees {in_c1} of C1 and {in_c2} of C2 and neither set exactly")]
    OutsideVertex {
        vertex: usize,
        in_c1: usize,
        in_c2: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchingPartition {
    pub c1: Vec<usize>,
    pub c2: Vec<usize>,
    pub d: Vec<usize>,
}

fn induced_degree(g: &Graph, set: &BitSet) -> Option<usize> {
    let mut degs = set.iter().map(|u| g.neighbours(u).intersection_count(set));
    let first = degs.next()?;
    degs.all(|d| d == first).then_some(first)
}

pub fn validate_switching_partition(
    g: &Graph,
    c1: &[usize],
    c2: &[usize],
) -> Result<SwitchingPartition> {
    let v = g.order();
    let to_set = |c: &[usize]| -> Option<BitSet> {
        let s = BitSet::from_iter(v, c.iter().copied().filter(|&u| u < v));
        (c.iter().all(|&u| u < v) && s.count() == c.len()).then_some(s)
    };
    let (Some(s1), Some(s2)) = (to_set(c1), to_set(c2)) else {
        return Err(SwitchingViolation::BadSets.into());
    };
    if s1.is_empty() || s2.is_empty() || s1 == s2 || s1.intersects(&s2) {
        return Err(SwitchingViolation::BadSets.into());
    }
    if s1.count() != s2.count() {
        return Err(SwitchingViolation::SizeMismatch(s1.count(), s2.count()).into());
    }
    let d1 = induced_degree(g, &s1).ok_or(SwitchingViolation::PartNotRegular(1))?;
    let d2 = induced_degree(g, &s2).ok_or(SwitchingViolation::PartNotRegular(2))?;
    if d1 != d2 {
        return Err(SwitchingViolation::DegreeMismatch(d1, d2).into());
    }
    let mut both = s1.clone();
    both.union_with(&s2);
    induced_degree(g, &both).ok_or(SwitchingViolation::UnionNotRegular)?;
    let n = s1.count();
    let mut d = Vec::new();
    for x in (0..v).filter(|&x| !both.contains(x)) {
        let in_c1 = g.neighbours(x).intersection_count(&s1);
        let in_c2 = g.neighbours(x).intersection_count(&s2);
        let exact = (in_c1 == n && in_c2 == 0) || (in_c1 == 0 && in_c2 == n);
        if in_c1 != in_c2 && !exact {
            return Err(SwitchingViolation::OutsideVertex {
                vertex: x,
                in_c1,
                in_c2,
            }
            .into());
        }
        d.push(x);
    }
    Ok(SwitchingPartition {
        c1: s1.to_vec(),
        c2: s2.to_vec(),
        d,
    })
}

/// Applies the switch to a copy of `g`. The partition is re-validated.
pub fn wqh_switch(g: &Graph, p: &SwitchingPartition) -> Result<Graph> {
    let p = validate_switching_partition(g, &p.c1, &p.c2)?;
    let v = g.order();
    let s1 = BitSet::from_iter(v, p.c1.iter().copied());
    let s2 = BitSet::from_iter(v, p.c2.iter().copied());
    let n = p.c1.len();
    let mut out = g.clone();
    for &x in &p.d {
        let in_c1 = g.neighbours(x).intersection_count(&s1);
        let in_c2 = g.neighbours(x).intersection_count(&s2);
        let (from, to) = match (in_c1, in_c2) {
            (a, 0) if a == n && a != 0 => (&p.c1, &p.c2),
            (0, b) if b == n && b != 0 => (&p.c2, &p.c1),
            _ => continue,
        };
        for &y in from {
            out.remove_edge(x, y)?;
        }
        for &y in to {
            out.add_edge(x, y)?;
        }
    }
    Ok(out)
}

/// `Π'` for a switch on `(I, i, j)`: `π'_r = π_r ∘ (i j)` for `r ∉ I`.
pub fn switched_pi(pi: &PermTuple, keep: &[usize], i: usize, j: usize) -> PermTuple {
    let perms = pi
        .perms
        .iter()
        .enumerate()
        .map(|(idx, p)| {
            let r = idx + 2;
            if keep.contains(&r) {
                p.clone()
            } else {
                let mut q = p.clone();
                q.swap(i - 1, j - 1);
                q
            }
        })
        .collect();
    PermTuple::new(perms)
}

/// The switching sets for `(I, i, j)`: the parts of spread cliques `i` and
/// `j` inside the copies listed in `keep`.
pub fn construction_switching_sets(
    ctx: &ConstructionContext,
    keep: &[usize],
    i: usize,
    j: usize,
) -> (Vec<usize>, Vec<usize>) {
    let part = |idx: usize| {
        let mut c: Vec<usize> = keep
            .iter()
            .flat_map(|&l| {
                ctx.code_vertices(l, ctx.pi().apply(l, idx))
                    .collect::<Vec<_>>()
            })
            .collect();
        c.sort_unstable();
        c
    };
    (part(i), part(j))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionSwitch {
    pub before: Graph,
    pub after: Graph,
    pub pi: PermTuple,
    pub partition: SwitchingPartition,
}

/// Switches the construction for `ctx` on `(I, i, j)` and checks that the
/// result is exactly the construction for the updated permutations.
pub fn switch_construction(
    ctx: &ConstructionContext,
    keep: &[usize],
    i: usize,
    j: usize,
) -> Result<ConstructionSwitch> {
    let t = ctx.t();
    let n = ctx.code_count();
    if !keep.contains(&1) || keep.iter().any(|&l| l == 0 || l > t) {
        return Err(Error::InvalidArgument(format!(
            "I = {keep:?} must be a subset of 1..={t} containing 1"
        )));
    }
    if i == j || !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(Error::InvalidArgument(format!(
            "i = {i}, j = {j} must be distinct code indices in 1..={n}"
        )));
    }
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    let before = f_pi_construct(ctx)?.graph;
    let (c1, c2) = construction_switching_sets(ctx, &keep, i, j);
    let partition = validate_switching_partition(&before, &c1, &c2)?;
    let after = wqh_switch(&before, &partition)?;
    let pi = switched_pi(ctx.pi(), &keep, i, j);
    let expected = f_pi_construct(&ctx.with_pi(pi.clone())?)?.graph;
    if after != expected {
        return Err(Error::InternalConsistency(format!(
            "switch on I = {keep:?}, i = {i}, j = {j} does not give the construction for {pi:?}"
        )));
    }
    Ok(ConstructionSwitch {
        before,
        after,
        pi,
        partition,
    })
}
