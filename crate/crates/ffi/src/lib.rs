//! C interface to posetcov.
//!
//! Instances and covers are opaque handles created and destroyed through
//! this API. Every fallible call returns a [`PcStatus`]; on failure the
//! message is available from [`pc_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;
use std::time::Duration;

use libc::{c_char, size_t};
use posetcov::driver::{
    cover_languages, encode_whole, single_poset_cover, Cover, Method, MethodUsed, SolveOptions,
    SolveStats,
};
use posetcov::encoding::{emit_dimacs, DEFAULT_NAIVE_CAP};
use posetcov::instance::parse_instance;
use posetcov::poset::DEFAULT_EXTENSION_CAP;
use posetcov::report::Report;
use posetcov::{Error, OrderSet};

/// Status codes; the nonzero values match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcStatus {
    Ok = 0,
    /// Bad argument, including null pointers and out-of-range indices.
    Usage = 1,
    InvalidInput = 2,
    /// A solver query ran out of time, or no cover fits in `max_k`.
    Timeout = 3,
    Internal = 4,
    /// The caller's buffer is too small; the required length was written.
    BufferTooSmall = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcMethod {
    Auto = 0,
    Moat = 1,
    Naive = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct PcSolveOptions {
    pub method: PcMethod,
    pub divide: bool,
    /// 0 means no limit.
    pub max_k: size_t,
    /// Per-query budget; 0 or negative means none.
    pub timeout_secs: f64,
    pub verify: bool,
    pub naive_cap: u64,
    /// Worker threads; 0 uses the default pool.
    pub jobs: size_t,
}

/// A parsed set of linear orders.
pub struct PcInstance {
    orders: OrderSet,
    labels: Vec<CString>,
}

/// A cover returned by [`pc_solve`] or [`pc_check_single`].
pub struct PcCover {
    cover: Cover,
    orders: OrderSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: PcStatus, msg: impl Into<String>) -> PcStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> PcStatus {
    let status = match e.exit_code() {
        1 => PcStatus::Usage,
        2 => PcStatus::InvalidInput,
        3 => PcStatus::Timeout,
        _ => PcStatus::Internal,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> PcStatus) -> PcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(PcStatus::Internal, "panic inside posetcov"),
    }
}

fn into_c_string(s: String, out: *mut *mut c_char) -> PcStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            PcStatus::Ok
        }
        Err(_) => fail(PcStatus::Internal, "output contains a NUL byte"),
    }
}

fn options(o: &PcSolveOptions) -> Result<SolveOptions, PcStatus> {
    if o.timeout_secs.is_nan() {
        return Err(fail(PcStatus::Usage, "timeout_secs is NaN"));
    }
    Ok(SolveOptions {
        method: match o.method {
            PcMethod::Auto => Method::Auto,
            PcMethod::Moat => Method::Moat,
            PcMethod::Naive => Method::Naive,
        },
        divide: o.divide,
        max_k: (o.max_k > 0).then_some(o.max_k),
        timeout_per_query: (o.timeout_secs > 0.0)
            .then(|| Duration::try_from_secs_f64(o.timeout_secs).unwrap_or(Duration::MAX)),
        global_timeout: None,
        verify: o.verify,
        naive_cap: o.naive_cap,
        extension_cap: DEFAULT_EXTENSION_CAP,
        jobs: (o.jobs > 0).then_some(o.jobs),
    })
}

/// Defaults matching the command line: auto method, divided, verified,
/// 900 s per query.
#[no_mangle]
pub extern "C" fn pc_solve_options_default() -> PcSolveOptions {
    PcSolveOptions {
        method: PcMethod::Auto,
        divide: true,
        max_k: 0,
        timeout_secs: 900.0,
        verify: true,
        naive_cap: DEFAULT_NAIVE_CAP,
        jobs: 0,
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn pc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parse an instance in the text format, one order per line.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_instance_parse(
    text: *const c_char,
    out: *mut *mut PcInstance,
) -> PcStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(PcStatus::Usage, "null pointer");
        }
        *out = ptr::null_mut();
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(PcStatus::InvalidInput, "input is not UTF-8");
        };
        match parse_instance(text) {
            Ok(orders) => {
                let labels = orders
                    .universe()
                    .labels()
                    .iter()
                    .map(|l| CString::new(l.as_str()).unwrap_or_default())
                    .collect();
                *out = Box::into_raw(Box::new(PcInstance { orders, labels }));
                PcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `inst` must come from [`pc_instance_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pc_instance_free(inst: *mut PcInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of orders, or 0 for NULL.
///
/// # Safety
/// `inst` must be NULL or a live instance.
#[no_mangle]
pub unsafe extern "C" fn pc_instance_len(inst: *const PcInstance) -> size_t {
    inst.as_ref().map_or(0, |i| i.orders.len())
}

/// Universe size, or 0 for NULL.
///
/// # Safety
/// `inst` must be NULL or a live instance.
#[no_mangle]
pub unsafe extern "C" fn pc_instance_universe_size(inst: *const PcInstance) -> size_t {
    inst.as_ref().map_or(0, |i| i.orders.n())
}

/// Label of element `index`, owned by the instance; NULL when out of range.
///
/// # Safety
/// `inst` must be NULL or a live instance.
#[no_mangle]
pub unsafe extern "C" fn pc_instance_label(
    inst: *const PcInstance,
    index: size_t,
) -> *const c_char {
    inst.as_ref()
        .and_then(|i| i.labels.get(index))
        .map_or(ptr::null(), |c| c.as_ptr())
}

/// Minimum cover of the instance. `opts` may be NULL for defaults.
///
/// # Safety
/// `inst` must be a live instance, `opts` NULL or valid, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pc_solve(
    inst: *const PcInstance,
    opts: *const PcSolveOptions,
    out: *mut *mut PcCover,
) -> PcStatus {
    guard(|| {
        let (Some(inst), false) = (inst.as_ref(), out.is_null()) else {
            return fail(PcStatus::Usage, "null pointer");
        };
        *out = ptr::null_mut();
        let o = opts.as_ref().copied().unwrap_or(pc_solve_options_default());
        let opts = match options(&o) {
            Ok(o) => o,
            Err(s) => return s,
        };
        match posetcov::solve(&inst.orders, &opts) {
            Ok(cover) => {
                *out = Box::into_raw(Box::new(PcCover {
                    cover,
                    orders: inst.orders.clone(),
                }));
                PcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Sets `*is_single` and, when true and `out` is non-NULL, returns the
/// one-poset cover.
///
/// # Safety
/// `inst` must be a live instance, `is_single` valid, `out` NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn pc_check_single(
    inst: *const PcInstance,
    is_single: *mut bool,
    out: *mut *mut PcCover,
) -> PcStatus {
    guard(|| {
        let (Some(inst), false) = (inst.as_ref(), is_single.is_null()) else {
            return fail(PcStatus::Usage, "null pointer");
        };
        if !out.is_null() {
            *out = ptr::null_mut();
        }
        let p = single_poset_cover(&inst.orders);
        *is_single = p.is_some();
        if let (Some(p), false) = (p, out.is_null()) {
            let cover = Cover {
                universe: Arc::clone(inst.orders.universe()),
                posets: vec![p],
                languages: Some(vec![inst.orders.clone()]),
                stats: SolveStats {
                    vars: 0,
                    clauses: 0,
                    queries: 0,
                    wall: Duration::ZERO,
                    method: MethodUsed::SinglePoset,
                    components: 1,
                },
            };
            *out = Box::into_raw(Box::new(PcCover {
                cover,
                orders: inst.orders.clone(),
            }));
        }
        PcStatus::Ok
    })
}

/// # Safety
/// `cover` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pc_cover_free(cover: *mut PcCover) {
    if !cover.is_null() {
        drop(Box::from_raw(cover));
    }
}

/// Number of posets, or 0 for NULL.
///
/// # Safety
/// `cover` must be NULL or a live cover.
#[no_mangle]
pub unsafe extern "C" fn pc_cover_k(cover: *const PcCover) -> size_t {
    cover.as_ref().map_or(0, |c| c.cover.k())
}

/// Hasse edges of poset `poset` as element-index pairs, flattened into
/// `edges` (`2 * count` entries). `*len` receives the edge count. With a
/// NULL or short buffer nothing is written and `BufferTooSmall` is returned.
///
/// # Safety
/// `cover` live, `len` valid, `edges` NULL or `cap` writable entries.
#[no_mangle]
pub unsafe extern "C" fn pc_cover_hasse_edges(
    cover: *const PcCover,
    poset: size_t,
    edges: *mut size_t,
    cap: size_t,
    len: *mut size_t,
) -> PcStatus {
    guard(|| {
        let (Some(cover), false) = (cover.as_ref(), len.is_null()) else {
            return fail(PcStatus::Usage, "null pointer");
        };
        let Some(p) = cover.cover.posets.get(poset) else {
            return fail(PcStatus::Usage, format!("poset index {poset} out of range"));
        };
        let h = p.transitive_reduction().edges;
        *len = h.len();
        if edges.is_null() || cap < 2 * h.len() {
            return fail(
                PcStatus::BufferTooSmall,
                format!("need {} entries", 2 * h.len()),
            );
        }
        for (j, (x, y)) in h.into_iter().enumerate() {
            *edges.add(2 * j) = x;
            *edges.add(2 * j + 1) = y;
        }
        PcStatus::Ok
    })
}

/// Whether `x < y` in poset `poset`.
///
/// # Safety
/// `cover` live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pc_cover_lt(
    cover: *const PcCover,
    poset: size_t,
    x: size_t,
    y: size_t,
    out: *mut bool,
) -> PcStatus {
    guard(|| {
        let (Some(cover), false) = (cover.as_ref(), out.is_null()) else {
            return fail(PcStatus::Usage, "null pointer");
        };
        let Some(p) = cover.cover.posets.get(poset) else {
            return fail(PcStatus::Usage, format!("poset index {poset} out of range"));
        };
        if x >= p.n() || y >= p.n() {
            return fail(PcStatus::Usage, "element index out of range");
        }
        *out = p.lt(x, y);
        PcStatus::Ok
    })
}

/// JSON report, with linearizations when `languages` is set. Free the
/// result with [`pc_string_free`].
///
/// # Safety
/// `cover` live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pc_cover_to_json(
    cover: *const PcCover,
    languages: bool,
    out: *mut *mut c_char,
) -> PcStatus {
    guard(|| {
        let (Some(c), false) = (cover.as_ref(), out.is_null()) else {
            return fail(PcStatus::Usage, "null pointer");
        };
        *out = ptr::null_mut();
        let langs = match (languages, &c.cover.languages) {
            (false, _) => None,
            (true, Some(l)) => Some(l.clone()),
            (true, None) => {
                match cover_languages(&c.cover.posets, &c.orders, DEFAULT_EXTENSION_CAP) {
                    Ok(Some(l)) => Some(l),
                    Ok(None) => return from_error(Error::VerificationFailed),
                    Err(e) => return from_error(e),
                }
            }
        };
        into_c_string(Report::new(&c.cover, langs.as_deref()).to_json(), out)
    })
}

/// DIMACS formula for a cover of size `k` of the whole instance, with
/// variable-name comments. `opts` may be NULL.
///
/// # Safety
/// `inst` live, `opts` NULL or valid, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pc_emit_dimacs(
    inst: *const PcInstance,
    k: size_t,
    opts: *const PcSolveOptions,
    out: *mut *mut c_char,
) -> PcStatus {
    guard(|| {
        let (Some(inst), false) = (inst.as_ref(), out.is_null()) else {
            return fail(PcStatus::Usage, "null pointer");
        };
        *out = ptr::null_mut();
        if k == 0 {
            return fail(PcStatus::Usage, "k must be at least 1");
        }
        let o = opts.as_ref().copied().unwrap_or(pc_solve_options_default());
        let opts = match options(&o) {
            Ok(o) => o,
            Err(s) => return s,
        };
        match encode_whole(&inst.orders, k, &opts) {
            Ok((cnf, _)) => into_c_string(emit_dimacs(&cnf, Some(inst.orders.universe())), out),
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn pc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
