use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use num_bigint::BigUint;

use super::{count_a_perfect_matchings, exhausted_error, Budget, CountOptions, CountReport, Exhausted};
use crate::constructions::{incidence_hypergraph, UniformHypergraph};
use crate::error::{Error, Result};

/// Proper `q`-edge-colorings of `g`, counted as A-perfect matchings of the
/// incidence hypergraph.
pub fn count_proper_colorings(g: &UniformHypergraph, q: usize, opts: &CountOptions) -> Result<CountReport> {
    count_a_perfect_matchings(&incidence_hypergraph(g, q)?, opts)
}

const MAX_DIRECT_COLORS: usize = 128;

/// Colors edges in list order, tracking the colors already used at each
/// vertex. Independent of the matching search; used to cross-check it.
pub fn count_proper_colorings_direct(
    g: &UniformHypergraph,
    q: usize,
    opts: &CountOptions,
) -> Result<CountReport> {
    if q > MAX_DIRECT_COLORS {
        return Err(Error::TooLarge {
            what: "colors",
            value: q,
            limit: MAX_DIRECT_COLORS,
        });
    }
    let start = Instant::now();
    let shared = AtomicU64::new(0);
    let mut budget = Budget::new(opts.max_nodes, &shared);
    let palette = if q == 128 { u128::MAX } else { (1u128 << q) - 1 };
    let mut used = vec![0u128; g.n_vertices()];
    let outcome = color_from(g.edges(), 0, palette, &mut used, &mut budget);
    budget.finish();
    let nodes = shared.load(Ordering::Relaxed);
    match outcome {
        Ok(count) => Ok(CountReport::new(BigUint::from(count), nodes, start.elapsed())),
        Err(Exhausted) => Err(exhausted_error(nodes, 0)),
    }
}

fn color_from(
    edges: &[Vec<usize>],
    i: usize,
    palette: u128,
    used: &mut [u128],
    budget: &mut Budget<'_>,
) -> std::result::Result<u64, Exhausted> {
    budget.tick()?;
    let Some(edge) = edges.get(i) else {
        return Ok(1);
    };
    let blocked = edge.iter().fold(0u128, |m, &v| m | used[v]);
    let mut free = palette & !blocked;
    let mut total = 0;
    while free != 0 {
        let bit = free & free.wrapping_neg();
        free &= free - 1;
        for &v in edge {
            used[v] |= bit;
        }
        let r = color_from(edges, i + 1, palette, used, budget);
        for &v in edge {
            used[v] &= !bit;
        }
        total += r?;
    }
    Ok(total)
}
