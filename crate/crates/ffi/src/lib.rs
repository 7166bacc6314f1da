//! C ABI for the ftmv toolkit.
//!
//! Graphs and solutions cross the boundary as opaque handles that must be
//! released with their `_free` function. Every fallible call returns an
//! [`FtmvStatus`]; on failure a description is available from
//! [`ftmv_last_error_message`] on the same thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use ftmv::formulas::{evaluate, Family, FormulaQuery};
use ftmv::solver::{solve, SolveConfig};
use ftmv::visibility::is_ftmv_set;
use ftmv::{Error, Graph, VertexSet};

/// Result codes. `FTMV_STATUS_OK` is always zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FtmvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    ParseError = 4,
    NotConnected = 5,
    /// The closed form for the requested instance is not known.
    Unresolved = 6,
    /// The time limit expired; the solution holds a lower bound.
    Aborted = 7,
    Panic = 8,
}

/// Opaque graph handle.
pub struct FtmvGraph(Graph);

/// Opaque solver result handle.
pub struct FtmvSolution {
    value: usize,
    optimal: bool,
    witness: Vec<usize>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: FtmvStatus, msg: impl Into<String>) -> FtmvStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> FtmvStatus {
    let status = match e {
        Error::NotConnected | Error::Disconnected(..) => FtmvStatus::NotConnected,
        Error::Parse { .. } | Error::InvalidSpec { .. } => FtmvStatus::ParseError,
        _ => FtmvStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning a panic into `FtmvStatus::Panic`.
fn guard(f: impl FnOnce() -> FtmvStatus) -> FtmvStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".into());
        fail(FtmvStatus::Panic, format!("panic: {msg}"))
    })
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, FtmvStatus> {
    if s.is_null() {
        return Err(fail(FtmvStatus::NullPointer, "string argument is null"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(FtmvStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn read_slice<'a>(data: *const usize, len: usize) -> Result<&'a [usize], FtmvStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(fail(FtmvStatus::NullPointer, "array argument is null"));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

unsafe fn graph_out(out: *mut *mut FtmvGraph, g: ftmv::Result<Graph>) -> FtmvStatus {
    match g {
        Ok(g) => {
            *out = Box::into_raw(Box::new(FtmvGraph(g)));
            FtmvStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// Builds a graph from a generator spec such as `"torus:4x5"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ftmv_graph_from_spec(spec: *const c_char, out: *mut *mut FtmvGraph) -> FtmvStatus {
    guard(|| {
        if out.is_null() {
            return fail(FtmvStatus::NullPointer, "out is null");
        }
        let spec = try_status!(read_str(spec));
        graph_out(out, ftmv::generators::generate_str(spec))
    })
}

/// Parses a graph in the `ftmv-graph 1` text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ftmv_graph_parse(text: *const c_char, out: *mut *mut FtmvGraph) -> FtmvStatus {
    guard(|| {
        if out.is_null() {
            return fail(FtmvStatus::NullPointer, "out is null");
        }
        let text = try_status!(read_str(text));
        graph_out(out, ftmv::graph::parse_graph(text))
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ftmv_graph_free(g: *mut FtmvGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ftmv_graph_order(g: *const FtmvGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// Number of edges; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ftmv_graph_edge_count(g: *const FtmvGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Serializes the graph; release the string with [`ftmv_string_free`].
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ftmv_graph_to_text(g: *const FtmvGraph, out: *mut *mut c_char) -> FtmvStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return fail(FtmvStatus::NullPointer, "graph or out is null");
        };
        *out = CString::new(ftmv::graph::write_graph(&g.0)).unwrap().into_raw();
        FtmvStatus::Ok
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ftmv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Computes μ^k exactly. `time_limit` is in seconds; zero, negative or
/// infinite means no limit. On `FTMV_STATUS_ABORTED` the solution is still written and holds
/// the best set found.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ftmv_solve(
    g: *const FtmvGraph,
    k: usize,
    workers: usize,
    time_limit: f64,
    out: *mut *mut FtmvSolution,
) -> FtmvStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return fail(FtmvStatus::NullPointer, "graph or out is null");
        };
        let mut cfg = SolveConfig::new(k).workers(workers.max(1));
        if time_limit.is_nan() {
            return fail(FtmvStatus::InvalidArgument, "time limit is NaN");
        }
        if time_limit > 0.0 && time_limit.is_finite() {
            cfg = cfg.time_limit(Duration::from_secs_f64(time_limit));
        }
        let r = match solve(&g.0, &cfg) {
            Ok(r) => r,
            Err(e) => return from_error(e),
        };
        let optimal = r.optimal;
        *out = Box::into_raw(Box::new(FtmvSolution { value: r.value, optimal, witness: r.witness.to_vec() }));
        if optimal {
            FtmvStatus::Ok
        } else {
            fail(FtmvStatus::Aborted, "time limit reached; value is a lower bound")
        }
    })
}

/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ftmv_solution_value(s: *const FtmvSolution) -> usize {
    s.as_ref().map_or(0, |s| s.value)
}

/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ftmv_solution_optimal(s: *const FtmvSolution) -> bool {
    s.as_ref().is_some_and(|s| s.optimal)
}

/// Copies up to `cap` witness vertices (ascending) into `buf` and returns the
/// witness size, so a call with `cap = 0` queries the required length.
///
/// # Safety
/// `s` must be null or a live handle; `buf` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn ftmv_solution_witness(s: *const FtmvSolution, buf: *mut usize, cap: usize) -> usize {
    let Some(s) = s.as_ref() else { return 0 };
    if !buf.is_null() {
        let n = cap.min(s.witness.len());
        ptr::copy_nonoverlapping(s.witness.as_ptr(), buf, n);
    }
    s.witness.len()
}

/// # Safety
/// `s` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ftmv_solution_free(s: *mut FtmvSolution) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Checks whether `set[0..len]` is a k-ftmv set. When it is not, and
/// `failing_pair` is non-null, the smallest failing pair is written there.
///
/// # Safety
/// `g` must be a live handle, `set` must hold `len` values, `ok` must be
/// valid, and `failing_pair` must be null or point to two values.
#[no_mangle]
pub unsafe extern "C" fn ftmv_verify(
    g: *const FtmvGraph,
    set: *const usize,
    len: usize,
    k: usize,
    ok: *mut bool,
    failing_pair: *mut usize,
) -> FtmvStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), ok.is_null()) else {
            return fail(FtmvStatus::NullPointer, "graph or ok is null");
        };
        let vs = try_status!(read_slice(set, len));
        let n = g.0.order();
        if let Some(&v) = vs.iter().find(|&&v| v >= n) {
            return from_error(Error::VertexOutOfRange { vertex: v, order: n });
        }
        let x = VertexSet::from_vertices(n, vs.iter().copied());
        let verdict = match is_ftmv_set(&g.0, &x, k, false) {
            Ok(v) => v,
            Err(e) => return from_error(e),
        };
        *ok = verdict.ok;
        if let (Some((u, v)), false) = (verdict.failing_pair, failing_pair.is_null()) {
            *failing_pair = u;
            *failing_pair.add(1) = v;
        }
        FtmvStatus::Ok
    })
}

/// Evaluates a closed form, e.g. family `"grid"` with params `{3, 7}`.
/// Returns `FTMV_STATUS_UNRESOLVED` when no formula is known for the instance.
///
/// # Safety
/// `family` must be a NUL-terminated string, `params` must hold `len`
/// values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ftmv_formula(
    family: *const c_char,
    params: *const usize,
    len: usize,
    k: usize,
    out: *mut usize,
) -> FtmvStatus {
    guard(|| {
        if out.is_null() {
            return fail(FtmvStatus::NullPointer, "out is null");
        }
        let family: Family = match try_status!(read_str(family)).parse() {
            Ok(f) => f,
            Err(e) => return from_error(e),
        };
        let params = try_status!(read_slice(params, len)).to_vec();
        match evaluate(&FormulaQuery { family, params, k }) {
            Ok(ans) => match ans.value {
                Some(v) => {
                    *out = v;
                    FtmvStatus::Ok
                }
                None => fail(FtmvStatus::Unresolved, ans.to_string()),
            },
            Err(e) => from_error(e),
        }
    })
}

/// Message for the last failing call on this thread, or null if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ftmv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
