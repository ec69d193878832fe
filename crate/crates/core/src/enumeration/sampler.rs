use std::num::NonZeroUsize;

use lru::LruCache;
use num_bigint::{BigUint, RandBigInt};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::matchings::MatchingSearch;
use crate::error::{Error, Result};
use crate::hypercore::{BipartiteHypergraph, Matching};

pub const DEFAULT_MEMO_CAPACITY: usize = 1 << 20;

/// Exactly uniform sampler over A-perfect matchings.
///
/// At each step the fail-first A-vertex takes each legal edge with
/// probability proportional to the number of completions of the resulting
/// residual instance. Completion counts are memoized on (used B-vertices,
/// covered A-vertices) in an LRU cache; eviction costs time, never accuracy.
pub struct UniformSampler<'h> {
    h: &'h BipartiteHypergraph,
    memo: LruCache<Vec<u64>, BigUint>,
    rng: ChaCha8Rng,
}

fn pack(flags: &[bool], out: &mut Vec<u64>) {
    for chunk in flags.chunks(64) {
        out.push(
            chunk
                .iter()
                .enumerate()
                .fold(0u64, |w, (i, &f)| w | (u64::from(f) << i)),
        );
    }
}

impl<'h> UniformSampler<'h> {
    pub fn new(h: &'h BipartiteHypergraph, seed: u64) -> Self {
        Self::with_capacity(h, seed, DEFAULT_MEMO_CAPACITY)
    }

    pub fn with_capacity(h: &'h BipartiteHypergraph, seed: u64, capacity: usize) -> Self {
        let cap = NonZeroUsize::new(capacity.max(1)).expect("capacity is positive");
        UniformSampler {
            h,
            memo: LruCache::new(cap),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn key(state: &MatchingSearch<'_>) -> Vec<u64> {
        let mut key = Vec::new();
        pack(state.used_b(), &mut key);
        pack(state.covered(), &mut key);
        key
    }

    fn completions(&mut self, state: &mut MatchingSearch<'h>) -> BigUint {
        if state.remaining() == 0 {
            return BigUint::from(1u32);
        }
        let key = Self::key(state);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let total = match state.select() {
            None => BigUint::zero(),
            Some((a, legal)) => {
                let mut total = BigUint::zero();
                for e in legal {
                    state.place(a, e);
                    total += self.completions(state);
                    state.unplace(a, e);
                }
                total
            }
        };
        self.memo.put(key, total.clone());
        total
    }

    /// Number of A-perfect matchings of the host.
    pub fn total(&mut self) -> BigUint {
        let mut state = MatchingSearch::new(self.h);
        self.completions(&mut state)
    }

    pub fn sample(&mut self) -> Result<Matching> {
        let mut state = MatchingSearch::new(self.h);
        if self.completions(&mut state).is_zero() {
            return Err(Error::Infeasible);
        }
        let mut chosen = Vec::with_capacity(self.h.a_count());
        while let Some((a, legal)) = state.select() {
            let mut weights = Vec::with_capacity(legal.len());
            for &e in &legal {
                state.place(a, e);
                weights.push(self.completions(&mut state));
                state.unplace(a, e);
            }
            let total: BigUint = weights.iter().sum();
            let mut draw = self.rng.gen_biguint_below(&total);
            let pick = weights
                .iter()
                .position(|w| {
                    if draw < *w {
                        true
                    } else {
                        draw -= w;
                        false
                    }
                })
                .expect("draw is below the total weight");
            state.place(a, legal[pick]);
            chosen.push(legal[pick]);
        }
        Matching::new(self.h, chosen)
    }
}

/// One uniform A-perfect matching, reproducible from `seed`.
pub fn sample_matching_uniform(h: &BipartiteHypergraph, seed: u64) -> Result<Matching> {
    UniformSampler::new(h, seed).sample()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cayley_cyclic, ls_to_hypergraph, CellSet};
    use crate::hypercore::fixtures::{h1, hs};
    use std::collections::HashMap;

    #[test]
    fn forced_samples() {
        let h = h1();
        for seed in 0..5 {
            assert_eq!(sample_matching_uniform(&h, seed).unwrap().edge_indices(), &[0]);
        }
        let h = hs();
        for seed in 0..5 {
            assert_eq!(sample_matching_uniform(&h, seed).unwrap().edge_indices(), &[0, 1]);
        }
    }

    #[test]
    fn infeasible_instances_error() {
        let z4 = ls_to_hypergraph(&cayley_cyclic(4).unwrap(), &CellSet::new()).unwrap();
        assert!(matches!(sample_matching_uniform(&z4, 1), Err(Error::Infeasible)));
    }

    #[test]
    fn same_seed_same_sample() {
        let z5 = ls_to_hypergraph(&cayley_cyclic(5).unwrap(), &CellSet::new()).unwrap();
        for seed in [0, 7, 99] {
            assert_eq!(
                sample_matching_uniform(&z5, seed).unwrap(),
                sample_matching_uniform(&z5, seed).unwrap()
            );
        }
    }

    #[test]
    fn total_matches_counter() {
        let z7 = ls_to_hypergraph(&cayley_cyclic(7).unwrap(), &CellSet::new()).unwrap();
        assert_eq!(UniformSampler::new(&z7, 0).total(), BigUint::from(133u32));
        // A one-entry cache still gives the right answer.
        assert_eq!(
            UniformSampler::with_capacity(&z7, 0, 1).total(),
            BigUint::from(133u32)
        );
    }

    #[test]
    fn frequencies_on_cyclic_three() {
        let h = ls_to_hypergraph(&cayley_cyclic(3).unwrap(), &CellSet::new()).unwrap();
        let mut sampler = UniformSampler::new(&h, 2024);
        let mut hits: HashMap<Matching, u32> = HashMap::new();
        let trials = 3000;
        for _ in 0..trials {
            *hits.entry(sampler.sample().unwrap()).or_default() += 1;
        }
        assert_eq!(hits.len(), 3);
        let p = 1.0 / 3.0;
        let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
        for &c in hits.values() {
            assert!((c as f64 - trials as f64 * p).abs() <= 5.0 * sigma, "{hits:?}");
        }
    }
}
