//! Canonical labeling and isomorphism classes.
//!
//! Colour refinement to an equitable ordered partition, then
//! individualization of the vertices of the first smallest non-singleton
//! cell, in vertex order. Each discrete partition is a leaf and a
//! relabeling; the canonical graph is the leaf whose upper-triangle bit
//! string (the graph6 body order) is least. Two leaves with the same string
//! differ by an automorphism, and automorphisms fixing the individualized
//! prefix prune sibling subtrees in the same orbit.

use std::cmp::Ordering;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::graph6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    /// graph6 of the canonically relabeled graph.
    pub graph6: String,
    /// `labeling[old] = new`; `g.permuted(&labeling)` is the canonical graph.
    pub labeling: Vec<usize>,
}

impl CanonicalForm {
    /// Re-applies the labeling and compares with the stored string.
    pub fn verify(&self, g: &Graph) -> bool {
        self.labeling.len() == g.order()
            && graph6::encode(&g.permuted(&self.labeling)) == self.graph6
    }
}

/// An ordered partition stored as cells of vertices.
type Cells = Vec<Vec<usize>>;

fn refine(g: &Graph, mut cells: Cells) -> Cells {
    let v = g.order();
    let mut cell_of = vec![0usize; v];
    loop {
        for (c, cell) in cells.iter().enumerate() {
            for &x in cell {
                cell_of[x] = c;
            }
        }
        let mut next: Cells = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&x| {
                    let mut counts = vec![0u32; cells.len()];
                    for y in g.neighbours(x).iter() {
                        counts[cell_of[y]] += 1;
                    }
                    (counts, x)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, x)| *x).collect());
                    start = i;
                }
            }
        }
        let stable = next.len() == cells.len();
        cells = next;
        if stable {
            return cells;
        }
    }
}

/// Upper-triangle adjacency of the relabeled graph, packed most significant bit first.
fn leaf_key(g: &Graph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let bits = n * n.saturating_sub(1) / 2;
    let mut key = vec![0u64; bits.div_ceil(64)];
    let mut pos = 0;
    for j in 1..n {
        let row = g.neighbours(order[j]);
        for &oi in &order[..j] {
            if row.contains(oi) {
                key[pos / 64] |= 1 << (63 - pos % 64);
            }
            pos += 1;
        }
    }
    key
}

struct Leaf {
    /// `order[new] = old`.
    order: Vec<usize>,
    key: Vec<u64>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// Automorphisms as `image[x]`.
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn visit(&mut self, cells: Cells, prefix: &mut Vec<usize>) {
        let cells = refine(self.g, cells);
        let Some(target) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i)
        else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            self.leaf(order);
            return;
        };
        let candidates = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &w in &candidates {
            if !explored.is_empty() && self.same_orbit(prefix, &explored, w) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![w]);
            child.push(cells[target].iter().copied().filter(|&x| x != w).collect());
            child.extend_from_slice(&cells[target + 1..]);
            prefix.push(w);
            self.visit(child, prefix);
            prefix.pop();
            explored.push(w);
        }
    }

    /// Whether `w` is the image of an explored sibling under the group
    /// generated by the known automorphisms that fix `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], explored: &[usize], w: usize) -> bool {
        let gens: Vec<&Vec<usize>> = self
            .automorphisms
            .iter()
            .filter(|a| prefix.iter().all(|&p| a[p] == p))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.g.order()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in gens {
            for (x, &y) in a.iter().enumerate() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx.max(ry)] = rx.min(ry);
                }
            }
        }
        let rw = find(&mut parent, w);
        explored.iter().any(|&e| find(&mut parent, e) == rw)
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let key = leaf_key(self.g, &order);
        let Some(first) = &self.first else {
            self.first = Some(Leaf {
                order: order.clone(),
                key: key.clone(),
            });
            self.best = Some(Leaf { order, key });
            return;
        };
        if key == first.key {
            let aut = automorphism_between(&first.order, &order);
            self.record(aut);
            return;
        }
        let best = self.best.as_ref().expect("best is set with first");
        match key.cmp(&best.key) {
            Ordering::Less => self.best = Some(Leaf { order, key }),
            Ordering::Equal => {
                let aut = automorphism_between(&best.order, &order);
                self.record(aut);
            }
            Ordering::Greater => {}
        }
    }

    fn record(&mut self, aut: Vec<usize>) {
        debug_assert!(is_automorphism(self.g, &aut));
        if aut.iter().enumerate().any(|(x, &y)| x != y) {
            self.automorphisms.push(aut);
        }
    }
}

/// The automorphism sending the vertex at position `i` of `a` to the one at position `i` of `b`.
fn automorphism_between(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut image = vec![0; a.len()];
    for (&x, &y) in a.iter().zip(b) {
        image[x] = y;
    }
    image
}

fn is_automorphism(g: &Graph, image: &[usize]) -> bool {
    g.edges().all(|(u, w)| g.is_adjacent(image[u], image[w]))
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let v = g.order();
    if v == 0 {
        return CanonicalForm {
            graph6: graph6::encode(g),
            labeling: Vec::new(),
        };
    }
    let mut search = Search {
        g,
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    // initial colouring by degree
    let mut by_degree: Vec<(usize, usize)> = (0..v).map(|x| (g.degree(x), x)).collect();
    by_degree.sort();
    let mut cells: Cells = Vec::new();
    for (d, x) in by_degree {
        match cells.last_mut() {
            Some(c) if g.degree(c[0]) == d => c.push(x),
            _ => cells.push(vec![x]),
        }
    }
    search.visit(cells, &mut Vec::new());
    let best = search.best.expect("a search reaches at least one leaf");
    let mut labeling = vec![0; v];
    for (new, &old) in best.order.iter().enumerate() {
        labeling[old] = new;
    }
    let form = CanonicalForm {
        graph6: graph6::encode(&g.permuted(&labeling)),
        labeling,
    };
    debug_assert!(form.verify(g));
    form
}

/// An isomorphism `perm` with `g.permuted(&perm) == h`, if one exists.
pub fn isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return None;
    }
    let (cg, ch) = (canonical_form(g), canonical_form(h));
    if cg.graph6 != ch.graph6 {
        return None;
    }
    let mut inv_h = vec![0; h.order()];
    for (old, &new) in ch.labeling.iter().enumerate() {
        inv_h[new] = old;
    }
    let perm: Vec<usize> = cg.labeling.iter().map(|&c| inv_h[c]).collect();
    debug_assert_eq!(&g.permuted(&perm), h);
    Some(perm)
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    isomorphism(g, h).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoClass {
    pub canonical_graph6: String,
    pub count: usize,
    /// Indices into the classified list, increasing.
    pub member_indices: Vec<usize>,
}

/// Canonical forms of many graphs, computed on all available cores.
pub fn canonical_forms(graphs: &[Graph]) -> Vec<CanonicalForm> {
    if graphs.is_empty() {
        return Vec::new();
    }
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(graphs.len());
    let chunk = graphs.len().div_ceil(workers);
    thread::scope(|s| {
        let handles: Vec<_> = graphs
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(canonical_form).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("canonical form worker panicked"))
            .collect()
    })
}

/// Groups graphs by canonical form; classes are ordered by canonical graph6 bytes.
pub fn classify(graphs: &[Graph]) -> Vec<IsoClass> {
    let mut tagged: Vec<(String, usize)> = canonical_forms(graphs)
        .into_iter()
        .enumerate()
        .map(|(i, f)| (f.graph6, i))
        .collect();
    tagged.sort();
    let mut out: Vec<IsoClass> = Vec::new();
    for (g6, i) in tagged {
        match out.last_mut() {
            Some(c) if c.canonical_graph6 == g6 => {
                c.count += 1;
                c.member_indices.push(i);
            }
            _ => out.push(IsoClass {
                canonical_graph6: g6,
                count: 1,
                member_indices: vec![i],
            }),
        }
    }
    out
}
