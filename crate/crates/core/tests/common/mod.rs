//! Shared fixtures: every graph on at most eight vertices up to isomorphism,
//! and the brute-force oracles the exhaustive suites compare against.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::OnceLock;

use neumaier::codes::is_perfect_code;
use neumaier::iso::canonical_form;
use neumaier::regularity::{classify_regularity, ErgParams, Regularity};
use neumaier::Graph;

/// Unlabeled graphs on 0..=8 vertices.
pub const GRAPH_COUNTS: [usize; 9] = [1, 1, 2, 4, 11, 34, 156, 1044, 12346];

/// Graphs on `n` vertices, one per isomorphism class: every graph on
/// `n - 1` vertices extended by a new vertex in every possible way, deduped
/// by canonical form.
fn extend(smaller: &[Graph], n: usize) -> Vec<Graph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in smaller {
        for mask in 0u32..(1 << (n - 1)) {
            let h = Graph::from_fn(n, |u, w| {
                let (u, w) = (u.min(w), u.max(w));
                if w == n - 1 {
                    mask >> u & 1 == 1
                } else {
                    g.is_adjacent(u, w)
                }
            });
            if seen.insert(canonical_form(&h).graph6) {
                out.push(h);
            }
        }
    }
    out
}

/// `corpus()[n]` holds the graphs on `n` vertices.
pub fn corpus() -> &'static [Vec<Graph>] {
    static CORPUS: OnceLock<Vec<Vec<Graph>>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut levels = vec![vec![Graph::empty(0)]];
        for n in 1..GRAPH_COUNTS.len() {
            let next = extend(&levels[n - 1], n);
            levels.push(next);
        }
        levels
    })
}

pub fn all_graphs() -> impl Iterator<Item = &'static Graph> {
    corpus().iter().flatten()
}

/// Runs `f` over `items` on all cores, collecting failures in input order.
pub fn par_check<T: Sync>(items: &[T], f: impl Fn(&T) -> Option<String> + Sync) -> Vec<String> {
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get());
    let chunk = items.len().div_ceil(threads).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| s.spawn(|| c.iter().filter_map(&f).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().unwrap())
            .collect()
    })
}

/// Perfect code by the counting formulation: every vertex is within
/// `radius` of exactly one code vertex.
pub fn perfect_by_counting(g: &Graph, code: &[usize], radius: usize) -> bool {
    if code.is_empty() {
        return false;
    }
    let dist: Vec<Vec<Option<usize>>> = code.iter().map(|&c| g.distances_from(c)).collect();
    (0..g.order()).all(|x| {
        dist.iter()
            .filter(|d| d[x].is_some_and(|d| d <= radius))
            .count()
            == 1
    })
}

/// Regularity from a plain adjacency matrix and pairwise counting.
pub fn regularity_by_counting(g: &Graph) -> Regularity {
    let v = g.order();
    let adj: Vec<Vec<bool>> = (0..v)
        .map(|u| (0..v).map(|w| g.is_adjacent(u, w)).collect())
        .collect();
    let degrees: BTreeSet<usize> = adj
        .iter()
        .map(|r| r.iter().filter(|&&b| b).count())
        .collect();
    if degrees.len() > 1 {
        return Regularity::NotRegular;
    }
    // the null graph is vacuously 0-regular
    let k = degrees.first().copied().unwrap_or(0);
    let (mut lambdas, mut mus) = (BTreeSet::new(), BTreeSet::new());
    for u in 0..v {
        for w in u + 1..v {
            let c = (0..v).filter(|&x| adj[u][x] && adj[w][x]).count();
            if adj[u][w] {
                lambdas.insert(c)
            } else {
                mus.insert(c)
            };
        }
    }
    let single = |s: &BTreeSet<usize>| (s.len() == 1).then(|| *s.first().unwrap());
    match (single(&lambdas), single(&mus)) {
        (Some(lambda), Some(mu)) => Regularity::StronglyRegular { v, k, lambda, mu },
        (Some(lambda), None) => Regularity::EdgeRegular(ErgParams { v, k, lambda }),
        (None, Some(mu)) => Regularity::CoEdgeRegular { v, k, mu },
        (None, None) => Regularity::Regular { k },
    }
}

/// Criterion 10(a): perfect-code formulations agree on every vertex subset,
/// and regularity classification agrees with pairwise counting.
pub fn check_codes_and_regularity(g: &Graph) -> Option<String> {
    let v = g.order();
    if classify_regularity(g) != regularity_by_counting(g) {
        return Some(format!(
            "regularity mismatch on {}",
            neumaier::graph6::encode(g)
        ));
    }
    for mask in 1u32..(1 << v) {
        let code: Vec<usize> = (0..v).filter(|&i| mask >> i & 1 == 1).collect();
        for radius in [1, 2] {
            if is_perfect_code(g, &code, radius) != perfect_by_counting(g, &code, radius) {
                return Some(format!(
                    "perfect {radius}-code mismatch on {} for {code:?}",
                    neumaier::graph6::encode(g)
                ));
            }
        }
    }
    None
}

/// Every permutation of `0..n`, by Heap's algorithm.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, p, out);
            p.swap(if k.is_multiple_of(2) { i } else { 0 }, k - 1);
        }
        heap(k - 1, p, out);
    }
    let mut out = Vec::new();
    heap(n, &mut (0..n).collect(), &mut out);
    out
}

/// Isomorphism by trying every bijection.
pub fn brute_force_isomorphic(g: &Graph, h: &Graph) -> bool {
    let v = g.order();
    v == h.order()
        && g.edge_count() == h.edge_count()
        && all_permutations(v)
            .iter()
            .any(|p| g.edges().all(|(a, b)| h.is_adjacent(p[a], p[b])))
}
