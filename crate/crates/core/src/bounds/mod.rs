//! Entropy-method upper bounds on matching counts, in natural-log space.
//!
//! The certified bound on the number of A-perfect matchings is
//! `exp(|A| * ∫_0^1 ln(1 + s̄ + t̄ + q x^k) dx)` with `s̄ = C(k,2)(Δ₂ - 1)`
//! and `t̄ = (ρ - k) D`. The asymptotic envelopes below drop the vanishing
//! terms and are reported for comparison only.

mod quadrature;

use serde::{Deserialize, Serialize};

pub use quadrature::{adaptive_simpson, Quadrature};

use crate::constructions::GraphStats;
use crate::error::{Error, Result};
use crate::hypercore::{BipartiteHypergraph, DegreeStats};

pub const DEFAULT_TOL: f64 = 1e-10;

/// Per-cell exponent constant of the transversal bound `(n / e^2.117)^n`.
pub const TRANSVERSAL_CONSTANT: f64 = 2.117;
/// Exponent constant of the general envelope `(n / e^2)^n`.
pub const ENVELOPE_CONSTANT: f64 = 2.0;

/// `∫_0^1 ln(a + q x^k) dx`.
pub fn integral_log_poly(a: f64, q: f64, k: usize, tol: f64) -> Result<f64> {
    integral_log_poly_quadrature(a, q, k, tol).map(|r| r.value)
}

/// As [`integral_log_poly`], with the quadrature error estimate. Degenerate
/// cases (`a = 0`, `q = 0`, `k = 0`) are evaluated exactly.
pub fn integral_log_poly_quadrature(a: f64, q: f64, k: usize, tol: f64) -> Result<Quadrature> {
    if a.is_nan() || a < 0.0 {
        return Err(Error::NonPositive("a must be >= 0"));
    }
    if q.is_nan() || q < 0.0 {
        return Err(Error::NonPositive("q must be >= 0"));
    }
    if a == 0.0 && q == 0.0 {
        return Err(Error::LogOfZero);
    }
    let exact = |value| Quadrature {
        value,
        error_estimate: 0.0,
        evaluations: 0,
    };
    if q == 0.0 || k == 0 {
        return Ok(exact((a + q).ln()));
    }
    if a == 0.0 {
        // ∫ ln(q x^k) = ln q - k; the integrand is singular at 0.
        return Ok(exact(q.ln() - k as f64));
    }
    let f = |x: f64| (a + q * x.powi(k as i32)).ln();
    // Split where q x^k = a, the knee of the integrand.
    let knee = (a / q).powf(1.0 / k as f64);
    let pieces: Vec<(f64, f64)> = if knee > 0.0 && knee < 1.0 {
        vec![(0.0, knee), (knee, 1.0)]
    } else {
        vec![(0.0, 1.0)]
    };
    let mut total = Quadrature {
        value: 0.0,
        error_estimate: 0.0,
        evaluations: 0,
    };
    for (lo, hi) in pieces {
        let part = adaptive_simpson(f, lo, hi, tol * (hi - lo));
        total.value += part.value;
        total.error_estimate += part.error_estimate;
        total.evaluations += part.evaluations;
    }
    if total.error_estimate > tol {
        return Err(Error::Quadrature {
            tol,
            estimate: total.error_estimate,
        });
    }
    Ok(total)
}

/// `∫_0^1 ln(a + q x^2) dx = ln(a+q) - 2 + 2 sqrt(a/q) atan(sqrt(q/a))`.
pub fn integral_log_poly_closed_k2(a: f64, q: f64) -> Result<f64> {
    if a.is_nan() || a <= 0.0 {
        return Err(Error::NonPositive("a must be > 0"));
    }
    if q.is_nan() || q <= 0.0 {
        return Err(Error::NonPositive("q must be > 0"));
    }
    Ok((a + q).ln() - 2.0 + 2.0 * (a / q).sqrt() * (q / a).sqrt().atan())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundParameters {
    pub a_count: usize,
    pub k: usize,
    /// Average A-degree.
    pub q: f64,
    /// Maximum B-degree.
    pub d: f64,
    pub delta2: u64,
    pub rho: f64,
    pub s_bar: f64,
    pub t_bar: f64,
}

fn binomial2(k: usize) -> f64 {
    (k * k.saturating_sub(1) / 2) as f64
}

impl BoundParameters {
    /// `s̄` and `t̄` are derived; `Δ₂ = 0` (no edges) is treated as `Δ₂ = 1`.
    pub fn new(a_count: usize, k: usize, q: f64, d: f64, delta2: u64, rho: f64) -> Self {
        BoundParameters {
            a_count,
            k,
            q,
            d,
            delta2,
            rho,
            s_bar: binomial2(k) * delta2.saturating_sub(1) as f64,
            t_bar: (rho - k as f64) * d,
        }
    }

    /// Reads `ρ - k` exactly from the vertex counts, so `ρ = k` gives `t̄ = 0`.
    pub fn from_stats(h: &BipartiteHypergraph, stats: &DegreeStats) -> Self {
        let mut p = Self::new(
            h.a_count(),
            h.k(),
            stats.q_avg_f64(),
            stats.d_max_b as f64,
            stats.delta2,
            stats.rho_f64(),
        );
        if h.a_count() > 0 {
            let surplus = h.b_count() as f64 - (h.k() * h.a_count()) as f64;
            p.t_bar = surplus / h.a_count() as f64 * p.d;
        }
        p
    }

    /// Parameters of the incidence hypergraph of `g` with `q` colors, read off
    /// the graph: every A-degree is `q`, B-degrees are the degrees of `g`, and
    /// the codegree is `max(1, Δ₂(g))`.
    pub fn for_incidence(g: &GraphStats, q: usize) -> Self {
        let a_count = g.edge_count;
        let b_count = q * g.n_vertices;
        let rho = if a_count == 0 {
            0.0
        } else {
            b_count as f64 / a_count as f64
        };
        let delta2 = if a_count == 0 || q == 0 {
            0
        } else {
            g.delta2.max(1) as u64
        };
        let mut p = Self::new(a_count, g.k, q as f64, g.d as f64, delta2, rho);
        if a_count > 0 {
            let surplus = b_count as f64 - (g.k * a_count) as f64;
            p.t_bar = surplus / a_count as f64 * p.d;
        }
        p
    }

    pub fn integrand_constant(&self) -> f64 {
        1.0 + self.s_bar + self.t_bar
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    ClosedFormK2,
    AdaptiveQuadrature,
    /// `q = 0` or `|A| = 0`: the integrand is constant.
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    /// Natural log of the bound on the matching count.
    pub ln_bound: f64,
    pub integrand_constant: f64,
    pub quadrature_error_estimate: f64,
    pub method: BoundMethod,
}

/// `|A| * ∫_0^1 ln(1 + s̄ + t̄ + q x^k) dx`, with `tol` applied to the whole
/// product.
pub fn finite_matching_bound(p: &BoundParameters, tol: f64) -> Result<BoundReport> {
    let constant = p.integrand_constant();
    let report = |ln_bound, err, method| BoundReport {
        ln_bound,
        integrand_constant: constant,
        quadrature_error_estimate: err,
        method,
    };
    if p.a_count == 0 {
        return Ok(report(0.0, 0.0, BoundMethod::Constant));
    }
    if p.t_bar < 0.0 {
        return Err(Error::RhoBelowK { rho: p.rho, k: p.k });
    }
    let a = p.a_count as f64;
    if p.q == 0.0 {
        return Ok(report(a * constant.ln(), 0.0, BoundMethod::Constant));
    }
    if p.k == 2 {
        let v = integral_log_poly_closed_k2(constant, p.q)?;
        return Ok(report(a * v, 0.0, BoundMethod::ClosedFormK2));
    }
    let q = integral_log_poly_quadrature(constant, p.q, p.k, tol / a)?;
    Ok(report(
        a * q.value,
        a * q.error_estimate,
        BoundMethod::AdaptiveQuadrature,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma41 {
    /// `∫_0^1 ln(eps + x^k) dx`.
    pub value: f64,
    /// `|value + k| / eps^(1/k)`.
    pub scaled_dev: f64,
}

pub fn lemma41_deviation(eps: f64, k: usize) -> Result<Lemma41> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::Precondition(format!("eps = {eps} outside (0, 1]")));
    }
    let value = integral_log_poly(eps, 1.0, k, 1e-13)?;
    Ok(Lemma41 {
        value,
        scaled_dev: (value + k as f64).abs() / eps.powf(1.0 / k as f64),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma42 {
    /// `ln(8n/9 + 1/3) - 2`, the vanishing term set to zero.
    pub lhs: f64,
    /// `ln n - 2.117`.
    pub rhs: f64,
    pub pass: bool,
}

pub fn lemma42_check(n: u64) -> Result<Lemma42> {
    if n < 3 {
        return Err(Error::Precondition(format!("n = {n} < 3")));
    }
    let nf = n as f64;
    let lhs = (8.0 * nf / 9.0 + 1.0 / 3.0).ln() - 2.0;
    let rhs = nf.ln() - TRANSVERSAL_CONSTANT;
    Ok(Lemma42 {
        lhs,
        rhs,
        pass: lhs <= rhs,
    })
}

/// `n (ln n - 2.117)`.
pub fn transversal_bound_ln(n: u64) -> f64 {
    let nf = n as f64;
    nf * (nf.ln() - TRANSVERSAL_CONSTANT)
}

/// `n (ln n - 2)`, the general transversal envelope with its vanishing term
/// dropped.
pub fn reference_envelope_ln(n: u64) -> f64 {
    let nf = n as f64;
    nf * (nf.ln() - ENVELOPE_CONSTANT)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColoringMode {
    /// Certified: the finite bound on the incidence hypergraph.
    Finite,
    /// `(Dn/k)(ln q - k)`; not a certified bound at finite size.
    Asymptotic,
}

pub fn coloring_bound_ln(g: &GraphStats, q: usize, mode: ColoringMode, tol: f64) -> Result<f64> {
    if q == 0 {
        return Err(Error::NonPositive("q must be >= 1"));
    }
    match mode {
        ColoringMode::Asymptotic => {
            let edges = (g.d * g.n_vertices) as f64 / g.k as f64;
            Ok(edges * ((q as f64).ln() - g.k as f64))
        }
        ColoringMode::Finite => {
            Ok(finite_matching_bound(&BoundParameters::for_incidence(g, q), tol)?.ln_bound)
        }
    }
}

/// Stats of `K_{d,d}` without building it.
pub fn complete_bipartite_stats(d: usize) -> GraphStats {
    GraphStats {
        n_vertices: 2 * d,
        edge_count: d * d,
        k: 2,
        d,
        regular: Some(d),
        delta2: usize::from(d > 0),
    }
}

/// Per-edge finite coloring bound for `K_{d,d}` with `q = d`, minus the
/// limiting value `ln d - 2`.
pub fn lemma43_gap(d: usize, tol: f64) -> Result<f64> {
    let g = complete_bipartite_stats(d);
    let per_edge = coloring_bound_ln(&g, d, ColoringMode::Finite, tol)? / g.edge_count as f64;
    Ok(per_edge - ((d as f64).ln() - 2.0))
}
