//! Perfect codes and partitions of a vertex set into perfect 1-codes.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::exact_cover::ExactCover;
use crate::graph::Graph;
use crate::group::{AbelianGroup, Element};

/// Vertices within distance `radius` of `centre`.
pub fn ball(g: &Graph, centre: usize, radius: usize) -> BitSet {
    BitSet::from_iter(
        g.order(),
        g.distances_from(centre)
            .into_iter()
            .enumerate()
            .filter(|(_, d)| d.is_some_and(|d| d <= radius))
            .map(|(u, _)| u),
    )
}

/// `true` iff the radius-`radius` balls around `code` partition the vertex set.
/// Empty or out-of-range input is simply not a perfect code.
pub fn is_perfect_code(g: &Graph, code: &[usize], radius: usize) -> bool {
    if code.is_empty() || code.iter().any(|&c| c >= g.order()) {
        return false;
    }
    let mut covered = BitSet::new(g.order());
    for &c in code {
        let b = ball(g, c, radius);
        if b.intersects(&covered) {
            return false;
        }
        covered.union_with(&b);
    }
    covered.count() == g.order()
}

/// A partition of the vertex set into perfect 1-codes of common size `a`.
///
/// Codes are stored canonically: each sorted, and the list sorted by
/// smallest element. Code `i` (1-indexed) is `codes[i - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CodePartition {
    pub a: usize,
    pub codes: Vec<Vec<usize>>,
}

impl CodePartition {
    /// Validates and canonicalizes `codes` as a perfect 1-code partition of `g`.
    pub fn new(g: &Graph, mut codes: Vec<Vec<usize>>) -> Result<Self> {
        for c in &mut codes {
            c.sort_unstable();
        }
        codes.sort();
        let a = codes.first().map_or(0, Vec::len);
        let p = CodePartition { a, codes };
        p.verify(g)?;
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// 1-indexed code lookup.
    pub fn code(&self, index: usize) -> &[usize] {
        &self.codes[index - 1]
    }

    /// For each vertex, the 1-indexed code containing it.
    pub fn code_of(&self, v: usize) -> Vec<usize> {
        let mut out = vec![0; v];
        for (i, c) in self.codes.iter().enumerate() {
            for &u in c {
                out[u] = i + 1;
            }
        }
        out
    }

    pub fn verify(&self, g: &Graph) -> Result<()> {
        let v = g.order();
        if self.codes.is_empty() || self.a == 0 {
            return Err(Error::Structure("empty code partition".into()));
        }
        if self.a * self.codes.len() != v {
            return Err(Error::Structure(format!(
                "{} codes of size {} cannot partition {v} vertices",
                self.codes.len(),
                self.a
            )));
        }
        let mut covered = BitSet::new(v);
        for c in &self.codes {
            if c.len() != self.a {
                return Err(Error::Structure(format!(
                    "code {c:?} has size {}, expected {}",
                    c.len(),
                    self.a
                )));
            }
            for &u in c {
                if u >= v || covered.contains(u) {
                    return Err(Error::Structure(format!(
                        "vertex {u} repeated or out of range in {c:?}"
                    )));
                }
                covered.insert(u);
            }
            if !is_perfect_code(g, c, 1) {
                return Err(Error::Structure(format!("{c:?} is not a perfect 1-code")));
            }
        }
        Ok(())
    }
}

/// Every perfect 1-code of `g`, as exact covers of the vertex set by closed
/// neighbourhoods, in search order.
pub fn perfect_one_codes(g: &Graph, limit: usize) -> Vec<Vec<usize>> {
    let v = g.order();
    let rows = (0..v)
        .map(|u| {
            let mut b = g.neighbours(u).clone();
            b.insert(u);
            b
        })
        .collect();
    ExactCover::new(v, rows).solutions(limit)
}

/// Searches for partitions of the vertex set into perfect 1-codes of size `a`.
///
/// Level one lists every perfect 1-code; level two picks `v / a` disjoint
/// ones covering the vertex set. Both levels branch on the vertex with the
/// fewest candidates, lowest index first, so vertex 0's code is always the
/// first one fixed. At most `limit` distinct partitions are returned, in
/// canonical order.
pub fn find_code_partitions(g: &Graph, a: usize, limit: usize) -> Result<Vec<CodePartition>> {
    if limit == 0 {
        return Err(Error::InvalidArgument("limit must be positive".into()));
    }
    let v = g.order();
    let k = g
        .regular_degree()
        .ok_or_else(|| Error::Infeasible("graph is not regular".into()))?;
    if a * (k + 1) != v {
        return Err(Error::Infeasible(format!(
            "a perfect 1-code in a {k}-regular graph on {v} vertices has size v/(k+1), not {a}"
        )));
    }
    let codes = perfect_one_codes(g, usize::MAX);
    let rows: Vec<BitSet> = codes
        .iter()
        .map(|c| BitSet::from_iter(v, c.iter().copied()))
        .collect();
    let mut out: Vec<CodePartition> = ExactCover::new(v, rows)
        .solutions(limit)
        .into_iter()
        .map(|sol| {
            let mut cs: Vec<Vec<usize>> = sol.iter().map(|&r| codes[r].clone()).collect();
            cs.sort();
            CodePartition { a, codes: cs }
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// The partition of a Cayley graph's vertices into cosets of the subgroup
/// generated by `subgroup_gens`, checked to consist of perfect 1-codes.
///
/// `g` must use the vertex numbering of [`AbelianGroup::index_of`].
pub fn coset_partition(
    group: &AbelianGroup,
    subgroup_gens: &[Element],
    g: &Graph,
) -> Result<CodePartition> {
    if group.order() != g.order() {
        return Err(Error::InvalidArgument(format!(
            "group of order {} does not label a graph on {} vertices",
            group.order(),
            g.order()
        )));
    }
    let sub: Vec<Element> = group
        .subgroup(subgroup_gens)
        .into_iter()
        .map(|i| group.element(i))
        .collect();
    let mut seen = BitSet::new(g.order());
    let mut codes = Vec::new();
    for x in 0..group.order() {
        if seen.contains(x) {
            continue;
        }
        let ex = group.element(x);
        let mut coset: Vec<usize> = sub
            .iter()
            .map(|h| group.index_of(&group.add(&ex, h)))
            .collect();
        coset.sort_unstable();
        for &u in &coset {
            seen.insert(u);
        }
        if !is_perfect_code(g, &coset, 1) {
            return Err(Error::Structure(format!(
                "coset {coset:?} is not a perfect 1-code"
            )));
        }
        codes.push(coset);
    }
    CodePartition::new(g, codes)
}
