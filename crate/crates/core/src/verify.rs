//! Checks the entropy argument's inequalities on instances small enough to
//! enumerate, and reconciles exact counts with the finite bound.
//!
//! Entropy-side quantities are in bits, bound-side quantities in nats; every
//! [`VerificationRecord`] carries its unit.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::bounds::{adaptive_simpson, finite_matching_bound, BoundParameters, BoundReport};
use crate::enumeration::{
    count_a_perfect_matchings, enumerate_matchings, ln_biguint, CountOptions, UniformSampler,
};
use crate::error::{Error, Result};
use crate::hypercore::{bad_edges_for, degree_stats, BipartiteHypergraph, CoverMap};

/// Above this many matchings, expectations over X are estimated by sampling.
pub const DEFAULT_EXACT_LIMIT: u64 = 100_000;
pub const DEFAULT_SAMPLES: usize = 2_000;
/// Two-sided 99.9% normal quantile, used for sampled confidence intervals.
const Z_999: f64 = 3.290_526_731_491_926;
const INTEGRAND_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub count: CountOptions,
    pub tol: f64,
    pub exact_limit: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            count: CountOptions::default(),
            tol: 1e-9,
            exact_limit: DEFAULT_EXACT_LIMIT,
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExpectationMode {
    Exact,
    Sampled { samples: usize, ci_half_width: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lemma31Report {
    /// `log2 |M|`.
    pub lhs_bits: f64,
    /// `E_X |A| ∫ log2((1/|A|) Σ_a Σ_{e∋a} x^m) dx`.
    pub rhs_bits: f64,
    /// `E_X Σ_a ∫ log2(Σ_{e∋a} x^m) dx`, the value before the final averaging
    /// step; never above `rhs_bits`.
    pub rhs_pre_jensen_bits: f64,
    pub matching_count: BigUint,
    pub mode: ExpectationMode,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lemma33Report {
    /// Minimum over X of `|A| C(k,2)(Δ₂ - 1) - |S(X)|`.
    pub worst_s_slack: f64,
    /// Minimum over X of `(|B| - k|A|) D - |T(X)|`.
    pub worst_t_slack: f64,
    pub s_bound: f64,
    pub t_bound: f64,
    pub checked_matchings: u64,
    pub mode: ExpectationMode,
    pub pass: bool,
}

impl Lemma33Report {
    pub fn zero_slack(&self) -> bool {
        self.worst_s_slack == 0.0 && self.worst_t_slack == 0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominanceReport {
    pub count: BigUint,
    pub ln_count: f64,
    pub bound: BoundReport,
    /// `(ln_bound - ln_count) / |A|`; infinite when the count is zero.
    pub gap_per_a: f64,
    /// The count is zero, so the bound holds trivially.
    pub vacuous: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformityReport {
    pub matchings: usize,
    pub trials: usize,
    pub chi_square: f64,
    pub degrees_of_freedom: usize,
    /// 99.9% quantile of the chi-square distribution.
    pub critical_value: f64,
    pub pass: bool,
}

/// One line of the machine-readable verification output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub instance_id: String,
    pub lemma: String,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
    pub slack: f64,
    pub units: String,
}

/// Exponent histogram of the polynomial `Σ_{e∋a} x^m` for one `a`.
type Poly = Vec<u64>;

fn integrate_log2_poly(coeffs: &[u64], scale: f64) -> f64 {
    let f = |x: f64| {
        let p = coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c as f64);
        (p * scale).log2()
    };
    adaptive_simpson(f, 0.0, 1.0, INTEGRAND_TOL).value
}

/// Per-A polynomials of one matching, given as `assignment[a] = X_a`.
fn polys_of(h: &BipartiteHypergraph, by_a: &[Vec<usize>], assignment: &[usize]) -> Vec<Poly> {
    let cover = CoverMap::from_assignment(h, assignment.to_vec());
    by_a.iter()
        .map(|edges| {
            let mut poly = vec![0u64; h.k() + 1];
            for &e in edges {
                poly[cover.exponent_unchecked(h.edge(e))] += 1;
            }
            poly
        })
        .collect()
}

/// Accumulates the two right-hand sides over matchings, grouping identical
/// polynomials so each is integrated once.
#[derive(Default)]
struct Lemma31Accumulator {
    totals: HashMap<Poly, u64>,
    per_a: HashMap<Poly, u64>,
    observed: u64,
}

impl Lemma31Accumulator {
    fn add(&mut self, polys: Vec<Poly>, k: usize) {
        let mut total = vec![0u64; k + 1];
        for p in polys {
            for (t, c) in total.iter_mut().zip(&p) {
                *t += c;
            }
            *self.per_a.entry(p).or_default() += 1;
        }
        *self.totals.entry(total).or_default() += 1;
        self.observed += 1;
    }

    /// Per-matching values `(rhs, rhs_pre_jensen)` weighted by multiplicity.
    fn values(&self, a_count: usize) -> (Vec<(f64, u64)>, f64) {
        let a = a_count as f64;
        let post = self
            .totals
            .iter()
            .map(|(p, &n)| (a * integrate_log2_poly(p, 1.0 / a), n))
            .collect();
        let pre_sum: f64 = self
            .per_a
            .iter()
            .map(|(p, &n)| n as f64 * integrate_log2_poly(p, 1.0))
            .sum();
        (post, pre_sum / self.observed as f64)
    }
}

fn mean_and_half_width(values: &[(f64, u64)]) -> (f64, f64) {
    let n: u64 = values.iter().map(|&(_, c)| c).sum();
    let nf = n as f64;
    let mean = values.iter().map(|&(v, c)| v * c as f64).sum::<f64>() / nf;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = values
        .iter()
        .map(|&(v, c)| c as f64 * (v - mean).powi(2))
        .sum::<f64>()
        / (nf - 1.0);
    (mean, Z_999 * (var / nf).sqrt())
}

fn require_feasible(h: &BipartiteHypergraph, opts: &VerifyOptions) -> Result<BigUint> {
    let count = count_a_perfect_matchings(h, &opts.count)?.count;
    if count.is_zero() {
        return Err(Error::Infeasible);
    }
    Ok(count)
}

fn use_exact(count: &BigUint, opts: &VerifyOptions) -> bool {
    count.to_u64().is_some_and(|c| c <= opts.exact_limit)
}

/// Visits X exhaustively, or `opts.samples` uniform draws when there are too
/// many matchings. Returns the mode used.
fn for_each_x<F: FnMut(&[usize])>(
    h: &BipartiteHypergraph,
    count: &BigUint,
    opts: &VerifyOptions,
    mut visit: F,
) -> Result<ExpectationMode> {
    if use_exact(count, opts) {
        enumerate_matchings(h, &opts.count, visit)?;
        return Ok(ExpectationMode::Exact);
    }
    let mut sampler = UniformSampler::new(h, opts.seed);
    for _ in 0..opts.samples {
        let x = sampler.sample()?;
        let assignment: Vec<usize> = x
            .assignment(h)
            .into_iter()
            .map(|e| e.expect("sampled matchings are A-perfect"))
            .collect();
        visit(&assignment);
    }
    Ok(ExpectationMode::Sampled {
        samples: opts.samples,
        ci_half_width: 0.0,
    })
}

pub fn verify_lemma31(h: &BipartiteHypergraph, opts: &VerifyOptions) -> Result<Lemma31Report> {
    let count = require_feasible(h, opts)?;
    let lhs_bits = ln_biguint(&count) / std::f64::consts::LN_2;
    let by_a = h.edges_by_a();
    let mut acc = Lemma31Accumulator::default();
    let mut mode = for_each_x(h, &count, opts, |x| acc.add(polys_of(h, &by_a, x), h.k()))?;
    let (post, pre) = acc.values(h.a_count());
    let (rhs_bits, half_width) = mean_and_half_width(&post);
    if let ExpectationMode::Sampled { ci_half_width, .. } = &mut mode {
        *ci_half_width = half_width;
    }
    let margin = match mode {
        ExpectationMode::Exact => 0.0,
        ExpectationMode::Sampled { ci_half_width, .. } => ci_half_width,
    };
    Ok(Lemma31Report {
        pass: lhs_bits <= rhs_bits + margin + opts.tol,
        lhs_bits,
        rhs_bits,
        rhs_pre_jensen_bits: pre,
        matching_count: count,
        mode,
    })
}

pub fn verify_lemma33(h: &BipartiteHypergraph, opts: &VerifyOptions) -> Result<Lemma33Report> {
    let count = require_feasible(h, opts)?;
    let stats = degree_stats(h);
    let k = h.k() as i64;
    let a = h.a_count() as i64;
    let s_bound = a * (k * (k - 1) / 2) * (stats.delta2 as i64 - 1).max(0);
    let t_bound = (h.b_count() as i64 - k * a) * stats.d_max_b as i64;
    let mut worst_s = i64::MAX;
    let mut worst_t = i64::MAX;
    let mut checked = 0u64;
    let mode = for_each_x(h, &count, opts, |x| {
        let cover = CoverMap::from_assignment(h, x.to_vec());
        let bad = bad_edges_for(&cover);
        debug_assert_eq!(bad.per_a_s.iter().sum::<usize>(), bad.s_edges.len());
        debug_assert_eq!(bad.per_a_t.iter().sum::<usize>(), bad.t_edges.len());
        worst_s = worst_s.min(s_bound - bad.s_edges.len() as i64);
        worst_t = worst_t.min(t_bound - bad.t_edges.len() as i64);
        checked += 1;
    })?;
    Ok(Lemma33Report {
        worst_s_slack: worst_s as f64,
        worst_t_slack: worst_t as f64,
        s_bound: s_bound as f64,
        t_bound: t_bound as f64,
        checked_matchings: checked,
        mode,
        pass: worst_s >= 0 && worst_t >= 0,
    })
}

pub fn verify_bound_dominance(h: &BipartiteHypergraph, opts: &VerifyOptions) -> Result<DominanceReport> {
    let counted = count_a_perfect_matchings(h, &opts.count)?;
    let stats = degree_stats(h);
    let params = BoundParameters::from_stats(h, &stats);
    let vacuous = counted.count.is_zero();
    let bound = match finite_matching_bound(&params, opts.tol) {
        Ok(b) => b,
        // B cannot saturate A, so the count is zero and the bound is moot.
        Err(Error::RhoBelowK { .. }) if vacuous => BoundReport {
            ln_bound: f64::NEG_INFINITY,
            integrand_constant: params.integrand_constant(),
            quadrature_error_estimate: 0.0,
            method: crate::bounds::BoundMethod::Constant,
        },
        Err(e) => return Err(e),
    };
    let gap_per_a = if h.a_count() == 0 {
        0.0
    } else {
        (bound.ln_bound - counted.ln_count) / h.a_count() as f64
    };
    Ok(DominanceReport {
        pass: vacuous || counted.ln_count <= bound.ln_bound + opts.tol,
        count: counted.count,
        ln_count: counted.ln_count,
        bound,
        gap_per_a,
        vacuous,
    })
}

/// `log2 count`, the entropy of the uniform distribution on `count` outcomes.
pub fn entropy_of_uniform(count: &BigUint) -> Result<f64> {
    if count.is_zero() {
        return Err(Error::Precondition("count must be positive".into()));
    }
    Ok(ln_biguint(count) / std::f64::consts::LN_2)
}

pub fn sampler_uniformity_test(
    h: &BipartiteHypergraph,
    trials: usize,
    seed: u64,
    opts: &CountOptions,
) -> Result<UniformityReport> {
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    enumerate_matchings(h, opts, |x| {
        let mut key = x.to_vec();
        key.sort_unstable();
        let next = index.len();
        index.insert(key, next);
    })?;
    let m = index.len();
    if m == 0 {
        return Err(Error::Infeasible);
    }
    if m < 2 {
        return Err(Error::Precondition(format!(
            "uniformity needs at least 2 matchings, found {m}"
        )));
    }
    if trials < 50 * m {
        return Err(Error::Precondition(format!(
            "too few trials: {trials} < 50 x {m} matchings"
        )));
    }
    let mut hits = vec![0u64; m];
    let mut sampler = UniformSampler::new(h, seed);
    for _ in 0..trials {
        let x = sampler.sample()?;
        hits[index[x.edge_indices()]] += 1;
    }
    let expected = trials as f64 / m as f64;
    let chi_square = hits
        .iter()
        .map(|&o| (o as f64 - expected).powi(2) / expected)
        .sum();
    let dof = m - 1;
    let critical_value = ChiSquared::new(dof as f64)
        .map_err(|e| Error::Invalid(e.to_string()))?
        .inverse_cdf(0.999);
    Ok(UniformityReport {
        matchings: m,
        trials,
        chi_square,
        degrees_of_freedom: dof,
        critical_value,
        pass: chi_square < critical_value,
    })
}

fn entropy_bits<I: IntoIterator<Item = u64>>(counts: I, total: u64) -> f64 {
    let t = total as f64;
    counts
        .into_iter()
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / t;
            -p * p.log2()
        })
        .sum()
}

/// Exact conditional entropies `H(X_{order[i]} | X_{order[..i]})` under the
/// uniform distribution on A-perfect matchings, computed from enumeration.
pub fn chain_rule_entropies(
    h: &BipartiteHypergraph,
    order: &[usize],
    opts: &CountOptions,
) -> Result<Vec<f64>> {
    if let Some(&a) = order.iter().find(|&&a| a >= h.a_count()) {
        return Err(Error::Invalid(format!("A-vertex {a} out of range")));
    }
    let mut all = Vec::new();
    enumerate_matchings(h, opts, |x| all.push(x.to_vec()))?;
    if all.is_empty() {
        return Err(Error::Infeasible);
    }
    let total = all.len() as u64;
    let mut out = Vec::with_capacity(order.len());
    for i in 0..order.len() {
        let mut groups: HashMap<Vec<usize>, HashMap<usize, u64>> = HashMap::new();
        for x in &all {
            let prefix: Vec<usize> = order[..i].iter().map(|&a| x[a]).collect();
            *groups.entry(prefix).or_default().entry(x[order[i]]).or_default() += 1;
        }
        let h_i = groups
            .values()
            .map(|dist| {
                let size: u64 = dist.values().sum();
                size as f64 / total as f64 * entropy_bits(dist.values().copied(), size)
            })
            .sum();
        out.push(h_i);
    }
    Ok(out)
}

impl Lemma31Report {
    pub fn record(&self, instance_id: &str) -> VerificationRecord {
        VerificationRecord {
            instance_id: instance_id.to_string(),
            lemma: "lemma31".into(),
            lhs: self.lhs_bits,
            rhs: self.rhs_bits,
            pass: self.pass,
            slack: self.rhs_bits - self.lhs_bits,
            units: "bits".into(),
        }
    }
}

impl Lemma33Report {
    pub fn records(&self, instance_id: &str) -> [VerificationRecord; 2] {
        let rec = |lemma: &str, bound: f64, slack: f64| VerificationRecord {
            instance_id: instance_id.to_string(),
            lemma: lemma.into(),
            lhs: bound - slack,
            rhs: bound,
            pass: slack >= 0.0,
            slack,
            units: "edges".into(),
        };
        [
            rec("lemma33_s", self.s_bound, self.worst_s_slack),
            rec("lemma33_t", self.t_bound, self.worst_t_slack),
        ]
    }
}

impl DominanceReport {
    pub fn record(&self, instance_id: &str) -> VerificationRecord {
        VerificationRecord {
            instance_id: instance_id.to_string(),
            lemma: "dominance".into(),
            lhs: self.ln_count,
            rhs: self.bound.ln_bound,
            pass: self.pass,
            slack: self.bound.ln_bound - self.ln_count,
            units: "nats".into(),
        }
    }
}
