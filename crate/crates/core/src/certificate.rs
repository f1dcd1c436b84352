//! Neumaier certificates: verified parameters plus the witnesses needed to
//! re-check them.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::regularity::{
    classify_regularity, clique_nexus, mu_witnesses, ErgParams, NeumaierParams,
};

/// A non-adjacent pair and its common-neighbour count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCount {
    pub u: usize,
    pub w: usize,
    pub common: usize,
}

impl From<(usize, usize, usize)> for PairCount {
    fn from((u, w, common): (usize, usize, usize)) -> Self {
        PairCount { u, w, common }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeumaierCertificate {
    pub params: NeumaierParams,
    pub witness_clique: Vec<usize>,
    /// Optional spread of regular cliques with the same nexus and size.
    pub spread: Option<Vec<Vec<usize>>>,
    /// Not strongly regular.
    pub strict: bool,
    /// Two non-adjacent pairs with different common-neighbour counts; present iff `strict`.
    pub witnesses: Option<[PairCount; 2]>,
}

/// Certifies `g` as a Neumaier graph.
///
/// When `clique` is `None`, the maximal cliques of size at most `λ + 2` are
/// searched (largest first, then lexicographically) for one with constant
/// positive nexus. In a non-complete graph a regular clique is always
/// maximal and never larger than `λ + 2`, so the search is exhaustive.
pub fn certify_neumaier(g: &Graph, clique: Option<&[usize]>) -> Result<NeumaierCertificate> {
    if g.order() < 2 || g.is_complete() {
        return Err(Error::Certification("graph is complete".into()));
    }
    let regularity = classify_regularity(g);
    let Some(ErgParams { v, k, lambda }) = regularity.edge_regular() else {
        return Err(Error::Certification(format!(
            "graph is not edge-regular: {regularity:?}"
        )));
    };
    let (clique, m) = match clique {
        Some(c) => {
            let mut c = c.to_vec();
            c.sort_unstable();
            match clique_nexus(g, &c) {
                Ok(Some(m)) => (c, m),
                Ok(None) => {
                    return Err(Error::Certification(format!("clique {c:?} is not regular")))
                }
                Err(e) => return Err(Error::Certification(e.to_string())),
            }
        }
        None => find_regular_clique(g, lambda + 2)
            .ok_or_else(|| Error::Certification("no regular clique found".into()))?,
    };
    let params = NeumaierParams::new(v, k, lambda, m, clique.len())
        .map_err(|e| Error::Certification(e.to_string()))?;
    let witnesses = if regularity.is_strongly_regular() {
        None
    } else {
        let (a, b) = mu_witnesses(g).ok_or_else(|| {
            Error::InternalConsistency("not strongly regular but mu is constant".into())
        })?;
        Some([a.into(), b.into()])
    };
    Ok(NeumaierCertificate {
        params,
        witness_clique: clique,
        spread: None,
        strict: witnesses.is_some(),
        witnesses,
    })
}

impl NeumaierCertificate {
    /// Attaches a spread after checking that it partitions the vertex set
    /// into cliques with the certificate's nexus and size.
    pub fn with_spread(mut self, g: &Graph, spread: Vec<Vec<usize>>) -> Result<Self> {
        check_spread(g, &spread, self.params.m, self.params.s)?;
        self.spread = Some(spread);
        Ok(self)
    }

    /// Re-checks every claim against `g`.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let p = self.params;
        let fail = |msg: String| Err(Error::Certification(msg));
        if g.order() != p.v {
            return fail(format!(
                "graph has {} vertices, certificate says {}",
                g.order(),
                p.v
            ));
        }
        if g.is_complete() {
            return fail("graph is complete".into());
        }
        if g.regular_degree() != Some(p.k) {
            return fail(format!("graph is not {}-regular", p.k));
        }
        if let Some((u, w)) = g
            .edges()
            .find(|&(u, w)| g.common_neighbour_count(u, w) != p.lambda)
        {
            return fail(format!(
                "edge {u}-{w} has {} common neighbours",
                g.common_neighbour_count(u, w)
            ));
        }
        if self.witness_clique.len() != p.s || clique_nexus(g, &self.witness_clique)? != Some(p.m) {
            return fail(format!(
                "witness clique is not a {}-regular {}-clique",
                p.m, p.s
            ));
        }
        if let Some(spread) = &self.spread {
            check_spread(g, spread, p.m, p.s)?;
        }
        match (&self.witnesses, self.strict) {
            (Some([a, b]), true) => {
                for pc in [a, b] {
                    if pc.u == pc.w
                        || g.is_adjacent(pc.u, pc.w)
                        || g.common_neighbour_count(pc.u, pc.w) != pc.common
                    {
                        return fail(format!("bad witness pair {pc:?}"));
                    }
                }
                if a.common == b.common || (a.u, a.w) == (b.u, b.w) {
                    return fail("witness pairs do not separate mu".into());
                }
            }
            (None, false) => {
                if !classify_regularity(g).is_strongly_regular() {
                    return fail("certificate claims strong regularity".into());
                }
            }
            _ => return fail("strict flag disagrees with witnesses".into()),
        }
        Ok(())
    }
}

pub(crate) fn check_spread(g: &Graph, spread: &[Vec<usize>], m: usize, s: usize) -> Result<()> {
    let mut covered = BitSet::new(g.order());
    for c in spread {
        for &u in c {
            g.check_vertex(u)
                .map_err(|e| Error::Structure(e.to_string()))?;
            if covered.contains(u) {
                return Err(Error::Structure(format!(
                    "vertex {u} lies in two spread cliques"
                )));
            }
            covered.insert(u);
        }
        if c.len() != s {
            return Err(Error::Structure(format!(
                "spread clique {c:?} has size {} not {s}",
                c.len()
            )));
        }
        if clique_nexus(g, c).map_err(|e| Error::Structure(e.to_string()))? != Some(m) {
            return Err(Error::Structure(format!(
                "spread clique {c:?} does not have nexus {m}"
            )));
        }
    }
    if covered.count() != g.order() {
        return Err(Error::Structure(
            "spread does not cover every vertex".into(),
        ));
    }
    Ok(())
}

/// Bron–Kerbosch with pivoting, restricted to cliques of size `<= max_size`.
pub(crate) fn maximal_cliques(g: &Graph, max_size: usize) -> Vec<Vec<usize>> {
    fn expand(
        g: &Graph,
        r: &mut Vec<usize>,
        mut p: BitSet,
        mut x: BitSet,
        max: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() && r.len() <= max {
                out.push(r.clone());
            }
            return;
        }
        if r.len() >= max {
            // every extension is too large
            return;
        }
        let mut px = p.clone();
        px.union_with(&x);
        let pivot = px
            .iter()
            .max_by_key(|&u| g.neighbours(u).intersection_count(&p))
            .unwrap();
        let mut candidates = p.clone();
        candidates.difference_with(g.neighbours(pivot));
        for u in candidates.iter() {
            let mut np = p.clone();
            np.intersect_with(g.neighbours(u));
            let mut nx = x.clone();
            nx.intersect_with(g.neighbours(u));
            r.push(u);
            expand(g, r, np, nx, max, out);
            r.pop();
            p.remove(u);
            x.insert(u);
        }
    }
    let mut out = Vec::new();
    expand(
        g,
        &mut Vec::new(),
        BitSet::full(g.order()),
        BitSet::new(g.order()),
        max_size,
        &mut out,
    );
    for c in &mut out {
        c.sort_unstable();
    }
    out
}

fn find_regular_clique(g: &Graph, max_size: usize) -> Option<(Vec<usize>, usize)> {
    let mut cliques: Vec<_> = maximal_cliques(g, max_size)
        .into_iter()
        .filter(|c| c.len() >= 2)
        .collect();
    cliques.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    cliques.into_iter().find_map(|c| match clique_nexus(g, &c) {
        Ok(Some(m)) => Some((c, m)),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_cycle_has_no_regular_clique() {
        let err = certify_neumaier(&Graph::cycle(5), None).unwrap_err();
        assert_eq!(err, Error::Certification("no regular clique found".into()));
    }

    #[test]
    fn complete_and_irregular_graphs_fail() {
        assert!(matches!(
            certify_neumaier(&Graph::complete(4), None),
            Err(Error::Certification(_))
        ));
        assert!(matches!(
            certify_neumaier(&Graph::path(4), None),
            Err(Error::Certification(_))
        ));
    }

    #[test]
    fn lattice_graph_is_neumaier_but_not_strict() {
        // K3 x K3 is strongly regular (9,4,1,2); each row is a 1-regular 3-clique
        let g = crate::regularity::cartesian_product(&Graph::complete(3), &Graph::complete(3));
        let cert = certify_neumaier(&g, None).unwrap();
        assert_eq!(
            cert.params,
            NeumaierParams {
                v: 9,
                k: 4,
                lambda: 1,
                m: 1,
                s: 3
            }
        );
        assert!(!cert.strict);
        cert.verify(&g).unwrap();
        let spread = vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]];
        let cert = cert.with_spread(&g, spread).unwrap();
        cert.verify(&g).unwrap();
        assert!(cert.clone().with_spread(&g, vec![vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let g = crate::regularity::cartesian_product(&Graph::complete(3), &Graph::complete(3));
        let mut cert = certify_neumaier(&g, None).unwrap();
        cert.strict = true;
        assert!(cert.verify(&g).is_err());
    }

    #[test]
    fn maximal_cliques_of_c5_are_its_edges() {
        let mut cl = maximal_cliques(&Graph::cycle(5), 5);
        cl.sort();
        assert_eq!(
            cl,
            vec![vec![0, 1], vec![0, 4], vec![1, 2], vec![2, 3], vec![3, 4]]
        );
    }
}
