//! Adaptive Simpson quadrature with Richardson extrapolation.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

const MAX_DEPTH: u32 = 60;
const MIN_DEPTH: u32 = 4;

/// Integrates `f` over `[lo, hi]`. Each subinterval gets a share of `tol`
/// proportional to its width, and is bisected until the local estimate
/// `|S2 - S| / 15` fits that share.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Quadrature {
    if lo == hi {
        return Quadrature {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        };
    }
    let mid = 0.5 * (lo + hi);
    let (flo, fmid, fhi) = (f(lo), f(mid), f(hi));
    let whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    let mut q = Quadrature {
        value: 0.0,
        error_estimate: 0.0,
        evaluations: 3,
    };
    let (v, e) = step(&f, [lo, mid, hi], [flo, fmid, fhi], whole, tol, 0, &mut q.evaluations);
    q.value = v;
    q.error_estimate = e;
    q
}

fn step<F: Fn(f64) -> f64>(
    f: &F,
    [lo, mid, hi]: [f64; 3],
    [flo, fmid, fhi]: [f64; 3],
    whole: f64,
    tol: f64,
    depth: u32,
    evals: &mut usize,
) -> (f64, f64) {
    let lm = 0.5 * (lo + mid);
    let rm = 0.5 * (mid + hi);
    let (flm, frm) = (f(lm), f(rm));
    *evals += 2;
    let left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    let right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    let delta = left + right - whole;
    let err = delta.abs() / 15.0;
    if depth >= MAX_DEPTH || (depth >= MIN_DEPTH && err <= tol) || mid <= lo || hi <= mid {
        return (left + right + delta / 15.0, err);
    }
    let (lv, le) = step(f, [lo, lm, mid], [flo, flm, fmid], left, tol / 2.0, depth + 1, evals);
    let (rv, re) = step(f, [mid, rm, hi], [fmid, frm, fhi], right, tol / 2.0, depth + 1, evals);
    (lv + rv, le + re)
}
