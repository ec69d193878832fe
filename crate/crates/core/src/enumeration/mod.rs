//! Exact counting by backtracking, and exactly uniform sampling on top of it.
//!
//! Every search is bounded by a node budget; running out is reported as
//! [`Error::BudgetExhausted`], never as a truncated count.

mod colorings;
mod matchings;
mod sampler;
mod transversals;

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Duration;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, PartialStats, Result};

pub use colorings::{count_proper_colorings, count_proper_colorings_direct};
pub use matchings::{count_a_perfect_matchings, enumerate_matchings};
pub use sampler::{sample_matching_uniform, UniformSampler, DEFAULT_MEMO_CAPACITY};
pub use transversals::{count_transversals, per_entry_transversal_counts};

pub const DEFAULT_MAX_NODES: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountOptions {
    pub max_nodes: u64,
    /// Worker threads for root splitting; 1 runs on the calling thread.
    pub threads: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            max_nodes: DEFAULT_MAX_NODES,
            threads: 1,
        }
    }
}

impl CountOptions {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_max_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = max_nodes;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountReport {
    pub count: BigUint,
    /// Natural log of `count`; `-inf` when the count is zero.
    pub ln_count: f64,
    pub nodes_visited: u64,
    pub elapsed: Duration,
}

impl CountReport {
    pub(crate) fn new(count: BigUint, nodes_visited: u64, elapsed: Duration) -> Self {
        CountReport {
            ln_count: ln_biguint(&count),
            count,
            nodes_visited,
            elapsed,
        }
    }
}

/// Natural log of an arbitrary-precision integer; `-inf` for zero.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return x.to_u64().map(|v| (v as f64).ln()).unwrap_or(f64::NAN);
    }
    // Keep the top 64 bits; the dropped tail changes the log by < 2^-63.
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap_or(u64::MAX);
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Node accounting shared by every worker of one search.
pub(crate) struct Budget<'a> {
    limit: u64,
    shared: &'a AtomicU64,
    local: u64,
}

const FLUSH_EVERY: u64 = 4096;

impl<'a> Budget<'a> {
    pub(crate) fn new(limit: u64, shared: &'a AtomicU64) -> Self {
        Budget {
            limit,
            shared,
            local: 0,
        }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> std::result::Result<(), Exhausted> {
        self.local += 1;
        if self.local.is_multiple_of(FLUSH_EVERY) {
            let total = self.shared.fetch_add(FLUSH_EVERY, Ordering::Relaxed) + FLUSH_EVERY;
            if total > self.limit {
                return Err(Exhausted);
            }
        } else if self.local > self.limit {
            return Err(Exhausted);
        }
        Ok(())
    }

    /// Moves the unflushed remainder into the shared counter.
    pub(crate) fn finish(self) {
        self.shared
            .fetch_add(self.local % FLUSH_EVERY, Ordering::Relaxed);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Exhausted;

/// Runs `work` on every root branch, in parallel when `threads > 1`, and sums
/// the per-branch counts. Results do not depend on the thread count.
pub(crate) fn split_root<B, F>(
    branches: Vec<B>,
    opts: &CountOptions,
    nodes: &AtomicU64,
    work: F,
) -> Result<u64>
where
    B: Send,
    F: Fn(B, &mut Budget<'_>) -> std::result::Result<u64, Exhausted> + Sync,
{
    let run = |branch: B| {
        let mut budget = Budget::new(opts.max_nodes, nodes);
        let r = work(branch, &mut budget);
        budget.finish();
        r
    };
    let results: Vec<std::result::Result<u64, Exhausted>> = if opts.threads <= 1 {
        let mut out = Vec::with_capacity(branches.len());
        for b in branches {
            let r = run(b);
            let stop = r.is_err();
            out.push(r);
            if stop {
                break;
            }
        }
        out
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
        pool.install(|| branches.into_par_iter().map(run).collect())
    };
    let mut total = 0u64;
    let mut exhausted = false;
    for r in results {
        match r {
            Ok(c) => total += c,
            Err(Exhausted) => exhausted = true,
        }
    }
    if exhausted {
        return Err(Error::BudgetExhausted(PartialStats {
            nodes_visited: nodes.load(Ordering::Relaxed),
            partial_count: BigUint::from(total),
        }));
    }
    Ok(total)
}

pub(crate) fn exhausted_error(nodes: u64, partial: u64) -> Error {
    Error::BudgetExhausted(PartialStats {
        nodes_visited: nodes,
        partial_count: BigUint::from(partial),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_of_big_integers() {
        assert_eq!(ln_biguint(&BigUint::zero()), f64::NEG_INFINITY);
        assert_eq!(ln_biguint(&BigUint::from(1u32)), 0.0);
        let big = BigUint::from(3u32).pow(200);
        let expected = 200.0 * 3f64.ln();
        assert!(((ln_biguint(&big) - expected) / expected).abs() < 1e-12);
        let two_pow = BigUint::from(1u32) << 300u32;
        let expected = 300.0 * std::f64::consts::LN_2;
        assert!(((ln_biguint(&two_pow) - expected) / expected).abs() < 1e-12);
    }

    #[test]
    fn budget_trips_past_limit() {
        let shared = AtomicU64::new(0);
        let mut b = Budget::new(10, &shared);
        for _ in 0..10 {
            b.tick().unwrap();
        }
        assert_eq!(b.tick(), Err(Exhausted));
    }
}
