use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigUint;

use super::{split_root, Budget, CountOptions, CountReport, Exhausted};
use crate::constructions::LatinSquare;
use crate::error::{Error, Result};

/// Row-by-row search with column and symbol occupancy held in `u64` masks.
struct RowSearch<'l> {
    n: usize,
    square: &'l LatinSquare,
    path: Vec<usize>,
}

const MAX_MASK_ORDER: usize = 64;

impl<'l> RowSearch<'l> {
    fn new(square: &'l LatinSquare) -> Result<Self> {
        let n = square.order();
        if n > MAX_MASK_ORDER {
            return Err(Error::TooLarge {
                what: "order",
                value: n,
                limit: MAX_MASK_ORDER,
            });
        }
        Ok(RowSearch {
            n,
            square,
            path: vec![0; n],
        })
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Counts completions of rows `row..n`.
    fn count(
        &self,
        row: usize,
        cols: u64,
        syms: u64,
        budget: &mut Budget<'_>,
    ) -> std::result::Result<u64, Exhausted> {
        budget.tick()?;
        if row == self.n {
            return Ok(1);
        }
        let symbols = self.square.row(row);
        let mut free = !cols & self.full();
        let mut total = 0;
        while free != 0 {
            let c = free.trailing_zeros() as usize;
            free &= free - 1;
            let s = 1u64 << symbols[c];
            if syms & s == 0 {
                total += self.count(row + 1, cols | 1 << c, syms | s, budget)?;
            }
        }
        Ok(total)
    }

    /// Like `count`, but adds each completed transversal to `tally`.
    fn tally(
        &mut self,
        row: usize,
        cols: u64,
        syms: u64,
        budget: &mut Budget<'_>,
        tally: &mut [u64],
    ) -> std::result::Result<u64, Exhausted> {
        budget.tick()?;
        if row == self.n {
            for (r, &c) in self.path.iter().enumerate() {
                tally[r * self.n + c] += 1;
            }
            return Ok(1);
        }
        let mut free = !cols & self.full();
        let mut total = 0;
        while free != 0 {
            let c = free.trailing_zeros() as usize;
            free &= free - 1;
            let s = 1u64 << self.square.get(row, c);
            if syms & s == 0 {
                self.path[row] = c;
                total += self.tally(row + 1, cols | 1 << c, syms | s, budget, tally)?;
            }
        }
        Ok(total)
    }
}

/// Exact number of transversals. Parallel runs split on the column chosen in
/// row 0.
pub fn count_transversals(l: &LatinSquare, opts: &CountOptions) -> Result<CountReport> {
    let start = Instant::now();
    let search = RowSearch::new(l)?;
    let nodes = AtomicU64::new(1);
    let count = split_root((0..l.order()).collect(), opts, &nodes, |c, budget| {
        search.count(1, 1 << c, 1 << l.get(0, c), budget)
    })?;
    Ok(CountReport::new(
        BigUint::from(count),
        nodes.load(Ordering::Relaxed),
        start.elapsed(),
    ))
}

/// `counts[r][c]` = number of transversals through cell `(r, c)`.
pub fn per_entry_transversal_counts(l: &LatinSquare, opts: &CountOptions) -> Result<Vec<Vec<BigUint>>> {
    let n = l.order();
    RowSearch::new(l)?;
    let nodes = AtomicU64::new(1);
    let merged = Mutex::new(vec![0u64; n * n]);
    split_root((0..n).collect(), opts, &nodes, |c, budget| {
        let mut search = RowSearch::new(l).expect("order checked above");
        search.path[0] = c;
        let mut tally = vec![0u64; n * n];
        let found = search.tally(1, 1 << c, 1 << l.get(0, c), budget, &mut tally)?;
        let mut merged = merged.lock().expect("tally lock");
        for (m, t) in merged.iter_mut().zip(&tally) {
            *m += t;
        }
        Ok(found)
    })?;
    let merged = merged.into_inner().expect("tally lock");
    Ok(merged
        .chunks(n)
        .map(|row| row.iter().map(|&x| BigUint::from(x)).collect())
        .collect())
}
