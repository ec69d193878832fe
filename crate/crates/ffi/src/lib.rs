//! C ABI for `matchbound`.
//!
//! Objects are opaque handles created by `mb_*_parse` / `mb_*_new` style
//! functions and released with the matching `mb_*_free`. Every fallible call
//! returns an [`MbStatus`]; on failure `mb_last_error()` describes the problem
//! for the calling thread. Counts are returned as decimal strings that the
//! caller releases with `mb_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use matchbound::bounds::{finite_matching_bound, integral_log_poly, BoundParameters};
use matchbound::constructions::{
    cayley_cyclic, incidence_hypergraph, kdd_union, ls_to_hypergraph, CellSet, LatinSquare,
    UniformHypergraph,
};
use matchbound::enumeration::{
    count_a_perfect_matchings, count_proper_colorings, count_transversals, CountOptions,
    CountReport,
};
use matchbound::hypercore::{degree_stats, BipartiteHypergraph};
use matchbound::verify::{verify_bound_dominance, VerifyOptions};
use matchbound::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    TooLarge = 5,
    BudgetExhausted = 6,
    Infeasible = 7,
    Numeric = 8,
    Io = 9,
    Panic = 10,
}

impl From<&Error> for MbStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse { .. } => MbStatus::Parse,
            Error::TooLarge { .. } => MbStatus::TooLarge,
            Error::BudgetExhausted(_) => MbStatus::BudgetExhausted,
            Error::Infeasible => MbStatus::Infeasible,
            Error::LogOfZero
            | Error::NonPositive(_)
            | Error::RhoBelowK { .. }
            | Error::Quadrature { .. } => MbStatus::Numeric,
            Error::Io(_) => MbStatus::Io,
            _ => MbStatus::Invalid,
        }
    }
}

/// Opaque Latin square.
pub struct MbLatinSquare(LatinSquare);

/// Opaque bipartite hypergraph.
pub struct MbHypergraph(BipartiteHypergraph);

/// Opaque uniform hypergraph (a graph when k = 2).
pub struct MbGraph(UniformHypergraph);

/// Search limits. `threads = 0` is treated as 1.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MbCountOptions {
    pub max_nodes: u64,
    pub threads: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MbBound {
    /// Natural log of the bound.
    pub ln_bound: f64,
    pub integrand_constant: f64,
    pub quadrature_error_estimate: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MbDominance {
    /// `-inf` when there is no matching.
    pub ln_count: f64,
    pub ln_bound: f64,
    pub vacuous: bool,
    pub pass: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

struct Fail(MbStatus);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = MbStatus::from(&e);
        set_error(e.to_string());
        Fail(status)
    }
}

fn fail(status: MbStatus, message: &str) -> Fail {
    set_error(message.to_string());
    Fail(status)
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> MbStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MbStatus::Ok,
        Ok(Err(Fail(status))) => status,
        Err(_) => {
            set_error("internal panic".into());
            MbStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(fail(MbStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(MbStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| fail(MbStatus::NullPointer, "null handle"))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(fail(MbStatus::NullPointer, "null output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn store_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(fail(MbStatus::NullPointer, "null output pointer"));
    }
    let c = CString::new(s).map_err(|_| fail(MbStatus::Invalid, "string contains NUL"))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn options(p: *const MbCountOptions) -> CountOptions {
    match p.as_ref() {
        None => CountOptions::default(),
        Some(o) => CountOptions::default()
            .with_max_nodes(o.max_nodes)
            .with_threads(o.threads.max(1) as usize),
    }
}

unsafe fn store_count(out: *mut *mut c_char, r: CountReport) -> Result<(), Fail> {
    store_string(out, r.count.to_string())
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next `mb_*` call on the same thread.
#[no_mangle]
pub extern "C" fn mb_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub extern "C" fn mb_count_options_default() -> MbCountOptions {
    let d = CountOptions::default();
    MbCountOptions {
        max_nodes: d.max_nodes,
        threads: d.threads as u32,
    }
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mb_square_parse(text_ptr: *const c_char, out: *mut *mut MbLatinSquare) -> MbStatus {
    guard(|| {
        let l = LatinSquare::parse(text(text_ptr)?)?;
        store(out, MbLatinSquare(l))
    })
}

/// Cayley table of the cyclic group of order `n`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mb_square_cyclic(n: usize, out: *mut *mut MbLatinSquare) -> MbStatus {
    guard(|| store(out, MbLatinSquare(cayley_cyclic(n)?)))
}

/// # Safety
/// `square` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mb_square_order(square: *const MbLatinSquare) -> usize {
    square.as_ref().map_or(0, |l| l.0.order())
}

/// # Safety
/// `square` is NULL or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn mb_square_free(square: *mut MbLatinSquare) {
    if !square.is_null() {
        drop(Box::from_raw(square));
    }
}

/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mb_hypergraph_parse(text_ptr: *const c_char, out: *mut *mut MbHypergraph) -> MbStatus {
    guard(|| {
        let h = BipartiteHypergraph::parse(text(text_ptr)?)?;
        store(out, MbHypergraph(h))
    })
}

/// Rows become A-vertices; columns and symbols become B-vertices.
///
/// # Safety
/// `square` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mb_hypergraph_from_square(
    square: *const MbLatinSquare,
    out: *mut *mut MbHypergraph,
) -> MbStatus {
    guard(|| {
        let h = ls_to_hypergraph(&handle(square)?.0, &CellSet::new())?;
        store(out, MbHypergraph(h))
    })
}

/// Hypergraph whose A-perfect matchings are the proper `q`-edge-colorings of
/// `graph`.
///
/// # Safety
/// `graph` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mb_hypergraph_incidence(
    graph: *const MbGraph,
    q: usize,
    out: *mut *mut MbHypergraph,
) -> MbStatus {
    guard(|| {
        let h = incidence_hypergraph(&handle(graph)?.0, q)?;
        store(out, MbHypergraph(h))
    })
}

/// Text form of the hypergraph; release with `mb_string_free`.
///
/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mb_hypergraph_to_text(h: *const MbHypergraph, out: *mut *mut c_char) -> MbStatus {
    guard(|| store_string(out, handle(h)?.0.to_text()))
}

/// # Safety
/// `h` is NULL or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn mb_hypergraph_free(h: *mut MbHypergraph) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mb_graph_parse(text_ptr: *const c_char, out: *mut *mut MbGraph) -> MbStatus {
    guard(|| {
        let g = UniformHypergraph::parse(text(text_ptr)?)?;
        store(out, MbGraph(g))
    })
}

/// `copies` disjoint copies of the complete bipartite graph `K_{d,d}`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mb_graph_kdd(d: usize, copies: usize, out: *mut *mut MbGraph) -> MbStatus {
    guard(|| store(out, MbGraph(kdd_union(d, copies)?)))
}

/// # Safety
/// `g` is NULL or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn mb_graph_free(g: *mut MbGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of transversals as a decimal string. `opts` may be NULL.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mb_count_transversals(
    square: *const MbLatinSquare,
    opts: *const MbCountOptions,
    out: *mut *mut c_char,
) -> MbStatus {
    guard(|| store_count(out, count_transversals(&handle(square)?.0, &options(opts))?))
}

/// Number of A-perfect matchings as a decimal string. `opts` may be NULL.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mb_count_matchings(
    h: *const MbHypergraph,
    opts: *const MbCountOptions,
    out: *mut *mut c_char,
) -> MbStatus {
    guard(|| store_count(out, count_a_perfect_matchings(&handle(h)?.0, &options(opts))?))
}

/// Number of proper `q`-edge-colorings as a decimal string. `opts` may be NULL.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mb_count_colorings(
    g: *const MbGraph,
    q: usize,
    opts: *const MbCountOptions,
    out: *mut *mut c_char,
) -> MbStatus {
    guard(|| store_count(out, count_proper_colorings(&handle(g)?.0, q, &options(opts))?))
}

/// Finite upper bound on the number of A-perfect matchings.
///
/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mb_finite_bound(h: *const MbHypergraph, tol: f64, out: *mut MbBound) -> MbStatus {
    guard(|| {
        let h = &handle(h)?.0;
        let p = BoundParameters::from_stats(h, &degree_stats(h));
        let b = finite_matching_bound(&p, tol)?;
        let out = out.as_mut().ok_or_else(|| fail(MbStatus::NullPointer, "null output pointer"))?;
        *out = MbBound {
            ln_bound: b.ln_bound,
            integrand_constant: b.integrand_constant,
            quadrature_error_estimate: b.quadrature_error_estimate,
        };
        Ok(())
    })
}

/// Exact count compared with the finite bound.
///
/// # Safety
/// `h` is a live handle; `opts` is NULL or valid; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mb_verify_dominance(
    h: *const MbHypergraph,
    opts: *const MbCountOptions,
    out: *mut MbDominance,
) -> MbStatus {
    guard(|| {
        let vo = VerifyOptions {
            count: options(opts),
            ..VerifyOptions::default()
        };
        let r = verify_bound_dominance(&handle(h)?.0, &vo)?;
        let out = out.as_mut().ok_or_else(|| fail(MbStatus::NullPointer, "null output pointer"))?;
        *out = MbDominance {
            ln_count: r.ln_count,
            ln_bound: r.bound.ln_bound,
            vacuous: r.vacuous,
            pass: r.pass,
        };
        Ok(())
    })
}

/// `∫_0^1 ln(a + q x^k) dx`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mb_integral_log_poly(a: f64, q: f64, k: usize, tol: f64, out: *mut f64) -> MbStatus {
    guard(|| {
        let v = integral_log_poly(a, q, k, tol)?;
        let out = out.as_mut().ok_or_else(|| fail(MbStatus::NullPointer, "null output pointer"))?;
        *out = v;
        Ok(())
    })
}
