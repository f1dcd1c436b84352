//! Regularity predicates: edge-regular, co-edge-regular, strongly regular,
//! and regular cliques.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Parameters `(v, k, λ)` of an edge-regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ErgParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
}

impl ErgParams {
    pub fn new(v: usize, k: usize, lambda: usize) -> Result<Self> {
        if k == 0 || lambda + 1 > k || v <= k {
            return Err(Error::InvalidArgument(format!(
                "({v},{k},{lambda}) violates k >= 1, lambda <= k-1, v > k"
            )));
        }
        Ok(ErgParams { v, k, lambda })
    }
}

impl std::fmt::Display for ErgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.v, self.k, self.lambda)
    }
}

/// Parameters `(v, k, λ; m, s)` of a Neumaier graph: edge-regular with an
/// `m`-regular `s`-clique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NeumaierParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    /// Nexus of the regular clique.
    pub m: usize,
    /// Size of the regular clique.
    pub s: usize,
}

impl NeumaierParams {
    pub fn new(v: usize, k: usize, lambda: usize, m: usize, s: usize) -> Result<Self> {
        ErgParams::new(v, k, lambda)?;
        if m == 0 || s < 2 || s > v {
            return Err(Error::InvalidArgument(format!(
                "nexus {m} and clique size {s} violate m >= 1, 2 <= s <= v"
            )));
        }
        Ok(NeumaierParams { v, k, lambda, m, s })
    }

    pub fn erg(&self) -> ErgParams {
        ErgParams {
            v: self.v,
            k: self.k,
            lambda: self.lambda,
        }
    }
}

impl std::fmt::Display for NeumaierParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({},{},{};{},{})",
            self.v, self.k, self.lambda, self.m, self.s
        )
    }
}

/// The strongest regularity property a graph has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Regularity {
    NotRegular,
    Regular {
        k: usize,
    },
    EdgeRegular(ErgParams),
    CoEdgeRegular {
        v: usize,
        k: usize,
        mu: usize,
    },
    StronglyRegular {
        v: usize,
        k: usize,
        lambda: usize,
        mu: usize,
    },
}

impl Regularity {
    /// Edge-regular parameters, also for strongly regular graphs.
    pub fn edge_regular(&self) -> Option<ErgParams> {
        match *self {
            Regularity::EdgeRegular(p) => Some(p),
            Regularity::StronglyRegular { v, k, lambda, .. } => Some(ErgParams { v, k, lambda }),
            _ => None,
        }
    }

    pub fn is_strongly_regular(&self) -> bool {
        matches!(self, Regularity::StronglyRegular { .. })
    }

    pub fn is_co_edge_regular(&self) -> bool {
        matches!(
            self,
            Regularity::CoEdgeRegular { .. } | Regularity::StronglyRegular { .. }
        )
    }
}

/// The vertices adjacent to both `u` and `w`.
pub fn common_neighbours(g: &Graph, u: usize, w: usize) -> Result<Vec<usize>> {
    g.check_vertex(u)?;
    g.check_vertex(w)?;
    if u == w {
        return Err(Error::InvalidArgument(format!(
            "common neighbours of {u} with itself"
        )));
    }
    let mut s = g.neighbours(u).clone();
    s.intersect_with(g.neighbours(w));
    Ok(s.to_vec())
}

fn constant<I: Iterator<Item = usize>>(mut it: I) -> Option<Option<usize>> {
    // Some(None): no items; Some(Some(c)): all equal c; None: not constant
    let Some(first) = it.next() else {
        return Some(None);
    };
    it.all(|x| x == first).then_some(Some(first))
}

pub fn classify_regularity(g: &Graph) -> Regularity {
    let v = g.order();
    let Some(k) = g.regular_degree() else {
        return Regularity::NotRegular;
    };
    let lambda = constant(g.edges().map(|(u, w)| g.common_neighbour_count(u, w)));
    let mu = constant(
        (0..v)
            .flat_map(|u| {
                (u + 1..v)
                    .filter(move |&w| !g.is_adjacent(u, w))
                    .map(move |w| (u, w))
            })
            .map(|(u, w)| g.common_neighbour_count(u, w)),
    );
    match (lambda, mu) {
        (Some(Some(lambda)), Some(Some(mu))) => Regularity::StronglyRegular { v, k, lambda, mu },
        (Some(Some(lambda)), _) => Regularity::EdgeRegular(ErgParams { v, k, lambda }),
        (_, Some(Some(mu))) => Regularity::CoEdgeRegular { v, k, mu },
        _ => Regularity::Regular { k },
    }
}

/// A pair `(u, w)` and its number of common neighbours.
pub type PairWitness = (usize, usize, usize);

/// Two non-adjacent pairs with different numbers of common neighbours, if
/// any exist. Pairs are `(u, w, count)` with `u < w`; the first is the
/// lexicographically first non-adjacent pair.
pub fn mu_witnesses(g: &Graph) -> Option<(PairWitness, PairWitness)> {
    let v = g.order();
    let mut first = None;
    for u in 0..v {
        for w in u + 1..v {
            if g.is_adjacent(u, w) {
                continue;
            }
            let c = g.common_neighbour_count(u, w);
            match first {
                None => first = Some((u, w, c)),
                Some(f) if f.2 != c => return Some((f, (u, w, c))),
                _ => {}
            }
        }
    }
    None
}

/// Nexus of the clique `clique`: the common number of neighbours that every
/// outside vertex has in it, if that number is constant and positive.
pub fn clique_nexus(g: &Graph, clique: &[usize]) -> Result<Option<usize>> {
    for &u in clique {
        g.check_vertex(u)?;
    }
    if clique.is_empty() {
        return Err(Error::InvalidArgument("empty vertex set".into()));
    }
    if !g.is_clique(clique) {
        return Err(Error::Structure(format!("{clique:?} is not a clique")));
    }
    if clique.len() >= g.order() {
        return Err(Error::InvalidArgument(
            "clique covers every vertex; nexus undefined".into(),
        ));
    }
    let set = crate::bitset::BitSet::from_iter(g.order(), clique.iter().copied());
    let counts = (0..g.order())
        .filter(|u| !set.contains(*u))
        .map(|u| g.neighbours(u).intersection_count(&set));
    Ok(match constant(counts) {
        Some(Some(m)) if m > 0 => Some(m),
        _ => None,
    })
}

/// Cartesian product in block layout: `(a, b)` is vertex `a * v2 + b`.
pub fn cartesian_product(g1: &Graph, g2: &Graph) -> Graph {
    let n2 = g2.order();
    Graph::from_fn(g1.order() * n2, |x, y| {
        let (a, b) = (x / n2, x % n2);
        let (c, d) = (y / n2, y % n2);
        (a == c && g2.is_adjacent(b, d)) || (b == d && g1.is_adjacent(a, c))
    })
}
