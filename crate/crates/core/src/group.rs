//! Finite abelian groups `Z_{d1} ⊕ ... ⊕ Z_{dr}` and their Cayley graphs.
//!
//! Elements are coordinate vectors; the vertex index of an element is its
//! mixed-radix value with the LAST coordinate varying fastest, so element
//! `(x1, ..., xr)` is vertex `((x1 * d2 + x2) * d3 + x3) ...`.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
}

pub type Element = Vec<u64>;

impl AbelianGroup {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.contains(&0) {
            return Err(Error::InvalidArgument(
                "cyclic factors must be finite".into(),
            ));
        }
        Ok(AbelianGroup { moduli })
    }

    pub fn cyclic(n: u64) -> Self {
        AbelianGroup { moduli: vec![n] }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().product::<u64>() as usize
    }

    pub fn reduce(&self, x: &[i64]) -> Element {
        assert_eq!(x.len(), self.moduli.len(), "element rank mismatch");
        x.iter()
            .zip(&self.moduli)
            .map(|(&a, &d)| a.rem_euclid(d as i64) as u64)
            .collect()
    }

    pub fn index_of(&self, x: &[u64]) -> usize {
        x.iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&a, &d)| acc * d as usize + (a % d) as usize)
    }

    pub fn element(&self, mut index: usize) -> Element {
        let mut out = vec![0; self.moduli.len()];
        for (slot, &d) in out.iter_mut().zip(&self.moduli).rev() {
            *slot = (index % d as usize) as u64;
            index /= d as usize;
        }
        out
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Element {
        x.iter()
            .zip(y)
            .zip(&self.moduli)
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect()
    }

    pub fn neg(&self, x: &[u64]) -> Element {
        x.iter()
            .zip(&self.moduli)
            .map(|(&a, &d)| (d - a % d) % d)
            .collect()
    }

    pub fn is_zero(&self, x: &[u64]) -> bool {
        x.iter().all(|&a| a == 0)
    }

    /// Vertex indices of the subgroup generated by `gens`, sorted.
    pub fn subgroup(&self, gens: &[Element]) -> Vec<usize> {
        let mut seen = BitSet::new(self.order());
        let zero = vec![0; self.moduli.len()];
        let mut stack = vec![zero];
        seen.insert(0);
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = self.add(&x, g);
                let i = self.index_of(&y);
                if !seen.contains(i) {
                    seen.insert(i);
                    stack.push(y);
                }
            }
        }
        seen.to_vec()
    }

    /// Cayley graph: `x ~ y` iff `y - x` lies in `connection`.
    pub fn cayley_graph(&self, connection: &[Element]) -> Result<Graph> {
        let mut set = BitSet::new(self.order());
        for s in connection {
            if self.is_zero(s) {
                return Err(Error::InvalidArgument(
                    "connection set contains the identity".into(),
                ));
            }
            set.insert(self.index_of(s));
        }
        for s in connection {
            if !set.contains(self.index_of(&self.neg(s))) {
                return Err(Error::InvalidArgument(format!(
                    "connection set not closed under negation at {s:?}"
                )));
            }
        }
        let elems: Vec<Element> = (0..self.order()).map(|i| self.element(i)).collect();
        Ok(Graph::from_fn(self.order(), |u, w| {
            let diff = self.add(&elems[w], &self.neg(&elems[u]));
            set.contains(self.index_of(&diff))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix_round_trip() {
        let g = AbelianGroup::new(vec![2, 14]).unwrap();
        assert_eq!(g.order(), 28);
        for i in 0..28 {
            assert_eq!(g.index_of(&g.element(i)), i);
        }
        assert_eq!(g.element(15), vec![1, 1]);
    }

    #[test]
    fn subgroups() {
        let z = AbelianGroup::cyclic(65);
        assert_eq!(z.subgroup(&[vec![13]]), vec![0, 13, 26, 39, 52]);
        assert_eq!(z.subgroup(&[]), vec![0]);
    }

    #[test]
    fn cayley_rejects_bad_connection_sets() {
        let z = AbelianGroup::cyclic(5);
        assert!(z.cayley_graph(&[vec![1]]).is_err());
        assert!(z.cayley_graph(&[vec![0]]).is_err());
        assert_eq!(
            z.cayley_graph(&[vec![1], vec![4]]).unwrap(),
            Graph::cycle(5)
        );
    }
}
