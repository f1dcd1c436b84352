//! Dense simple undirected graphs on `0..v`.

use std::collections::VecDeque;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A finite simple undirected graph with vertices `0..v`.
///
/// Adjacency is kept as one bit row per vertex, so common-neighbour counts
/// are word-parallel intersections. The diagonal is always clear and the
/// rows are always symmetric; every mutator maintains both.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<BitSet>,
}

impl Graph {
    /// The edgeless graph on `v` vertices.
    pub fn empty(v: usize) -> Self {
        Graph {
            rows: (0..v).map(|_| BitSet::new(v)).collect(),
        }
    }

    pub fn complete(v: usize) -> Self {
        Graph::from_fn(v, |_, _| true)
    }

    pub fn cycle(v: usize) -> Self {
        assert!(v >= 3, "a cycle needs at least 3 vertices");
        Graph::from_edges(v, (0..v).map(|i| (i, (i + 1) % v))).expect("cycle edges are valid")
    }

    pub fn path(v: usize) -> Self {
        Graph::from_edges(v, (1..v).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    /// Builds a graph from a symmetric predicate, evaluated once per unordered pair `u < w`.
    pub fn from_fn(v: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(v);
        for u in 0..v {
            for w in u + 1..v {
                if adjacent(u, w) {
                    g.rows[u].insert(w);
                    g.rows[w].insert(u);
                }
            }
        }
        g
    }

    /// Builds a graph from an edge list. Loops and out-of-range endpoints are rejected;
    /// repeated edges collapse.
    pub fn from_edges(v: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(v);
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Number of vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, w: usize) -> bool {
        self.rows[u].contains(w)
    }

    #[inline]
    pub fn neighbours(&self, u: usize) -> &BitSet {
        &self.rows[u]
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count()
    }

    pub fn add_edge(&mut self, u: usize, w: usize) -> Result<()> {
        self.check_pair(u, w)?;
        self.rows[u].insert(w);
        self.rows[w].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, w: usize) -> Result<()> {
        self.check_pair(u, w)?;
        self.rows[u].remove(w);
        self.rows[w].remove(u);
        Ok(())
    }

    pub(crate) fn check_vertex(&self, u: usize) -> Result<()> {
        if u >= self.order() {
            return Err(Error::InvalidArgument(format!(
                "vertex {u} out of range for a graph on {} vertices",
                self.order()
            )));
        }
        Ok(())
    }

    fn check_pair(&self, u: usize, w: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(w)?;
        if u == w {
            return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
        }
        Ok(())
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Edges `(u, w)` with `u < w`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&w| w > u).map(move |w| (u, w)))
    }

    pub fn is_complete(&self) -> bool {
        let v = self.order();
        self.rows.iter().all(|r| r.count() == v - 1)
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.rows.first().map_or(0, BitSet::count);
        self.rows.iter().all(|r| r.count() == k).then_some(k)
    }

    pub fn common_neighbour_count(&self, u: usize, w: usize) -> usize {
        self.rows[u].intersection_count(&self.rows[w])
    }

    /// `true` if the listed vertices are pairwise adjacent.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &a)| {
            vertices[i + 1..]
                .iter()
                .all(|&b| a != b && self.is_adjacent(a, b))
        })
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for w in self.rows[u].iter() {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Number of vertices at each distance from `source`, starting at distance 0.
    pub fn distance_profile(&self, source: usize) -> Vec<usize> {
        let mut profile = Vec::new();
        for d in self.distances_from(source).into_iter().flatten() {
            if profile.len() <= d {
                profile.resize(d + 1, 0);
            }
            profile[d] += 1;
        }
        profile
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for s in 0..self.order() {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            for (u, d) in self.distances_from(s).into_iter().enumerate() {
                if d.is_some() {
                    seen[u] = true;
                    comp.push(u);
                }
            }
            out.push(comp);
        }
        out
    }

    /// Subgraph induced on `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        Graph::from_fn(vertices.len(), |a, b| {
            self.is_adjacent(vertices[a], vertices[b])
        })
    }

    /// Relabels vertices: `perm[old] = new`.
    ///
    /// # Panics
    /// If `perm` is not a permutation of `0..v`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let v = self.order();
        assert_eq!(
            perm.len(),
            v,
            "permutation length must equal the vertex count"
        );
        let mut seen = vec![false; v];
        for &p in perm {
            assert!(p < v && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let mut g = Graph::empty(v);
        for (u, w) in self.edges() {
            g.rows[perm[u]].insert(perm[w]);
            g.rows[perm[w]].insert(perm[u]);
        }
        g
    }

    /// Disjoint union in block layout: `other`'s vertex `x` becomes `self.order() + x`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n1 = self.order();
        Graph::from_fn(n1 + other.order(), |a, b| match (a < n1, b < n1) {
            (true, true) => self.is_adjacent(a, b),
            (false, false) => other.is_adjacent(a - n1, b - n1),
            _ => false,
        })
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Graph(v={}, e={}, g6={})",
            self.order(),
            self.edge_count(),
            crate::graph6::encode(self)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_out_of_range() {
        let mut g = Graph::empty(3);
        assert!(matches!(g.add_edge(1, 1), Err(Error::InvalidArgument(_))));
        assert!(matches!(g.add_edge(0, 3), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (0, 5)]).unwrap();
        let sum: usize = (0..6).map(|u| g.degree(u)).sum();
        assert_eq!(sum, 2 * g.edge_count());
    }

    #[test]
    fn components_and_profile() {
        let g = Graph::cycle(5).disjoint_union(&Graph::path(2));
        assert_eq!(g.components(), vec![vec![0, 1, 2, 3, 4], vec![5, 6]]);
        assert_eq!(g.distance_profile(0), vec![1, 2, 2]);
    }

    #[test]
    fn permuted_preserves_edges() {
        let g = Graph::path(4);
        let h = g.permuted(&[3, 2, 1, 0]);
        assert_eq!(h, g);
        let h = g.permuted(&[1, 0, 2, 3]);
        assert!(h.is_adjacent(1, 0) && h.is_adjacent(0, 2) && h.is_adjacent(2, 3));
    }
}
