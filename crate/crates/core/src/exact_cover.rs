//! Algorithm X over bit-set rows.
//!
//! Columns are chosen by fewest remaining candidate rows, ties to the lowest
//! column index; candidate rows are tried in index order. Every exact cover
//! is visited exactly once, in a deterministic order.

use std::ops::ControlFlow;

use crate::bitset::BitSet;

pub struct ExactCover {
    columns: usize,
    rows: Vec<BitSet>,
    /// For each column, the rows that cover it.
    column_rows: Vec<BitSet>,
}

impl ExactCover {
    pub fn new(columns: usize, rows: Vec<BitSet>) -> Self {
        let mut column_rows = vec![BitSet::new(rows.len()); columns];
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), columns, "row width must match the column count");
            for c in row.iter() {
                column_rows[c].insert(r);
            }
        }
        ExactCover {
            columns,
            rows,
            column_rows,
        }
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    /// Calls `visit` with the sorted row indices of each exact cover until it breaks.
    pub fn for_each_solution<F>(&self, mut visit: F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let uncovered = BitSet::full(self.columns);
        let active = BitSet::full(self.rows.len());
        let mut chosen = Vec::new();
        let _ = self.search(&uncovered, &active, &mut chosen, &mut visit);
    }

    /// Up to `limit` solutions.
    pub fn solutions(&self, limit: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if limit == 0 {
            return out;
        }
        self.for_each_solution(|s| {
            out.push(s.to_vec());
            if out.len() >= limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        out
    }

    fn search<F>(
        &self,
        uncovered: &BitSet,
        active: &BitSet,
        chosen: &mut Vec<usize>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let mut best: Option<(usize, usize)> = None;
        for c in uncovered.iter() {
            let n = self.column_rows[c].intersection_count(active);
            if best.is_none_or(|(_, m)| n < m) {
                best = Some((c, n));
                if n == 0 {
                    break;
                }
            }
        }
        let Some((column, n)) = best else {
            let mut sol = chosen.clone();
            sol.sort_unstable();
            return visit(&sol);
        };
        if n == 0 {
            return ControlFlow::Continue(());
        }
        let mut candidates = self.column_rows[column].clone();
        candidates.intersect_with(active);
        for r in candidates.iter() {
            let row = &self.rows[r];
            let mut next_uncovered = uncovered.clone();
            next_uncovered.difference_with(row);
            let mut next_active = active.clone();
            for c in row.iter() {
                next_active.difference_with(&self.column_rows[c]);
            }
            chosen.push(r);
            let flow = self.search(&next_uncovered, &next_active, chosen, visit);
            chosen.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(width: usize, rows: &[&[usize]]) -> Vec<BitSet> {
        rows.iter()
            .map(|r| BitSet::from_iter(width, r.iter().copied()))
            .collect()
    }

    #[test]
    fn knuth_example() {
        // Knuth's 7-column example; the unique cover is rows 0, 3, 4
        let ec = ExactCover::new(
            7,
            rows(
                7,
                &[
                    &[2, 4, 5],
                    &[0, 3, 6],
                    &[1, 2, 5],
                    &[0, 3],
                    &[1, 6],
                    &[3, 4, 6],
                ],
            ),
        );
        assert_eq!(ec.solutions(10), vec![vec![0, 3, 4]]);
    }

    #[test]
    fn counts_all_perfect_matchings_of_k4() {
        let pairs: Vec<Vec<usize>> = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| vec![a, b]))
            .collect();
        let r: Vec<&[usize]> = pairs.iter().map(|p| p.as_slice()).collect();
        let ec = ExactCover::new(4, rows(4, &r));
        assert_eq!(ec.solutions(100).len(), 3);
        assert_eq!(ec.solutions(2).len(), 2);
        assert!(ec.solutions(0).is_empty());
    }

    #[test]
    fn no_rows_means_no_cover_unless_no_columns() {
        assert!(ExactCover::new(3, vec![]).solutions(5).is_empty());
        assert_eq!(
            ExactCover::new(0, vec![]).solutions(5),
            vec![Vec::<usize>::new()]
        );
    }
}
