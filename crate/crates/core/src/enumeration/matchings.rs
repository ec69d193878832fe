use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use num_bigint::BigUint;

use super::{exhausted_error, split_root, Budget, CountOptions, CountReport, Exhausted};
use crate::error::Result;
use crate::hypercore::BipartiteHypergraph;

/// Backtracking state over one hypergraph: B-occupancy, covered A-vertices and
/// the partial assignment `a -> X_a`.
#[derive(Clone)]
pub(crate) struct MatchingSearch<'h> {
    h: &'h BipartiteHypergraph,
    by_a: Vec<Vec<usize>>,
    used_b: Vec<bool>,
    covered: Vec<bool>,
    assignment: Vec<usize>,
    remaining: usize,
}

impl<'h> MatchingSearch<'h> {
    pub(crate) fn new(h: &'h BipartiteHypergraph) -> Self {
        MatchingSearch {
            h,
            by_a: h.edges_by_a(),
            used_b: vec![false; h.b_count()],
            covered: vec![false; h.a_count()],
            assignment: vec![usize::MAX; h.a_count()],
            remaining: h.a_count(),
        }
    }

    pub(crate) fn remaining(&self) -> usize {
        self.remaining
    }

    pub(crate) fn used_b(&self) -> &[bool] {
        &self.used_b
    }

    pub(crate) fn covered(&self) -> &[bool] {
        &self.covered
    }

    #[inline]
    fn is_legal(&self, e: usize) -> bool {
        self.h.edge(e).b.iter().all(|&v| !self.used_b[v])
    }

    /// Fail-first choice: the uncovered A-vertex with the fewest legal edges,
    /// lowest index on ties. `None` when nothing is left to cover.
    pub(crate) fn select(&self) -> Option<(usize, Vec<usize>)> {
        let mut best: Option<(usize, usize)> = None;
        for a in (0..self.by_a.len()).filter(|&a| !self.covered[a]) {
            let cap = best.map_or(usize::MAX, |(_, n)| n);
            let mut n = 0;
            for &e in &self.by_a[a] {
                if self.is_legal(e) {
                    n += 1;
                    if n >= cap {
                        break;
                    }
                }
            }
            if n < cap {
                best = Some((a, n));
                if n == 0 {
                    break;
                }
            }
        }
        let (a, _) = best?;
        let legal = self.by_a[a].iter().copied().filter(|&e| self.is_legal(e)).collect();
        Some((a, legal))
    }

    pub(crate) fn place(&mut self, a: usize, e: usize) {
        for &v in &self.h.edge(e).b {
            self.used_b[v] = true;
        }
        self.covered[a] = true;
        self.assignment[a] = e;
        self.remaining -= 1;
    }

    pub(crate) fn unplace(&mut self, a: usize, e: usize) {
        for &v in &self.h.edge(e).b {
            self.used_b[v] = false;
        }
        self.covered[a] = false;
        self.assignment[a] = usize::MAX;
        self.remaining += 1;
    }

    /// Calls `leaf` with the assignment of every A-perfect matching below the
    /// current state.
    pub(crate) fn descend<F: FnMut(&[usize])>(
        &mut self,
        budget: &mut Budget<'_>,
        leaf: &mut F,
    ) -> std::result::Result<(), Exhausted> {
        budget.tick()?;
        if self.remaining == 0 {
            leaf(&self.assignment);
            return Ok(());
        }
        let Some((a, legal)) = self.select() else {
            return Ok(());
        };
        for e in legal {
            self.place(a, e);
            let r = self.descend(budget, leaf);
            self.unplace(a, e);
            r?;
        }
        Ok(())
    }
}

/// Exact number of A-perfect matchings. With `opts.threads > 1` the branches
/// of the root vertex are searched in parallel.
pub fn count_a_perfect_matchings(h: &BipartiteHypergraph, opts: &CountOptions) -> Result<CountReport> {
    let start = Instant::now();
    let nodes = AtomicU64::new(0);
    let root = MatchingSearch::new(h);
    let count = if root.remaining == 0 {
        nodes.store(1, Ordering::Relaxed);
        1
    } else {
        match root.select() {
            None => 0,
            Some((a, legal)) => {
                nodes.fetch_add(1, Ordering::Relaxed);
                split_root(legal, opts, &nodes, |e, budget| {
                    let mut search = root.clone();
                    search.place(a, e);
                    let mut found = 0u64;
                    search.descend(budget, &mut |_| found += 1)?;
                    Ok(found)
                })?
            }
        }
    };
    Ok(CountReport::new(
        BigUint::from(count),
        nodes.load(Ordering::Relaxed),
        start.elapsed(),
    ))
}

/// Visits every A-perfect matching once, as `assignment[a] = edge index of X_a`,
/// in a fixed order. Returns the number of visits.
pub fn enumerate_matchings<F: FnMut(&[usize])>(
    h: &BipartiteHypergraph,
    opts: &CountOptions,
    mut visitor: F,
) -> Result<u64> {
    let shared = AtomicU64::new(0);
    let mut budget = Budget::new(opts.max_nodes, &shared);
    let mut search = MatchingSearch::new(h);
    let mut visits = 0u64;
    let outcome = search.descend(&mut budget, &mut |x| {
        visits += 1;
        visitor(x);
    });
    budget.finish();
    match outcome {
        Ok(()) => Ok(visits),
        Err(Exhausted) => Err(exhausted_error(shared.load(Ordering::Relaxed), visits)),
    }
}
