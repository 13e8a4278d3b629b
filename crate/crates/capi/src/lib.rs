//! C ABI over the eccentricity-certificate library.
//!
//! Graphs are opaque handles created by the `ecc_graph_*` constructors and
//! released with `ecc_graph_free`. Every fallible call returns an
//! [`EccStatus`]; on failure `ecc_last_error` describes what went wrong
//! (thread-local). Strings handed out by this library are released with
//! `ecc_string_free`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use ecc_core::certificates::verify_bundle;
use ecc_core::certificates::CertificateBundle;
use ecc_core::error::Error;
use ecc_core::graph::{open_input, parse_dimacs_gr, parse_edge_list, Graph, Ranking};
use ecc_core::solvers;
use ecc_core::traversal::QueryCounter;

/// Call outcome. Zero is success; negative values are errors and
/// `ecc_last_error` carries the message.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EccStatus {
    Ok = 0,
    NullArgument = -1,
    InvalidUtf8 = -2,
    Io = -3,
    ParseError = -4,
    InvalidArgument = -5,
    /// A certificate audit completed and rejected the claim.
    Rejected = -6,
    /// The certificate belongs to a different graph.
    FingerprintMismatch = -7,
    InternalPanic = -8,
}

/// Opaque graph handle.
pub struct EccGraph {
    inner: Graph,
}

/// Diameter algorithm selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EccDiameterVariant {
    Basic = 0,
    CenterInit = 1,
    Delegate = 2,
    CenterInitDelegate = 3,
}

/// Radius answer: the value, a center witness, the sweeps spent and the
/// size of the radius certificate.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct EccRadiusResult {
    pub radius: u64,
    pub center: u64,
    pub sweeps: u64,
    pub certificate_size: u64,
}

/// Diameter answer: the value, a diametral witness, the sweeps spent and
/// the size of the diameter certificate.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct EccDiameterResult {
    pub diameter: u64,
    pub witness: u64,
    pub sweeps: u64,
    pub certificate_size: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> EccStatus {
    match err {
        Error::Io(_) => EccStatus::Io,
        Error::Parse { .. }
        | Error::NegativeWeight { .. }
        | Error::NodeOutOfRange { .. }
        | Error::MissingHeader
        | Error::EmptyGraph
        | Error::Json(_) => EccStatus::ParseError,
        Error::FingerprintMismatch(_) => EccStatus::FingerprintMismatch,
        _ => EccStatus::InvalidArgument,
    }
}

fn fail(err: Error) -> EccStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

fn guarded<F: FnOnce() -> EccStatus>(f: F) -> EccStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic".to_string());
            EccStatus::InternalPanic
        }
    }
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ecc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |c| c.as_ptr())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must have been returned by an `ecc_*` call and not freed before.
#[no_mangle]
pub unsafe extern "C" fn ecc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn path_of(ptr: *const c_char) -> Result<String, EccStatus> {
    if ptr.is_null() {
        set_error("null path".to_string());
        return Err(EccStatus::NullArgument);
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map(|s| s.to_string())
        .map_err(|_| {
            set_error("path is not valid UTF-8".to_string());
            EccStatus::InvalidUtf8
        })
}

unsafe fn read_graph(
    path: *const c_char,
    dimacs: bool,
    out: *mut *mut EccGraph,
) -> EccStatus {
    if out.is_null() {
        set_error("null output pointer".to_string());
        return EccStatus::NullArgument;
    }
    let path = match path_of(path) {
        Ok(p) => p,
        Err(status) => return status,
    };
    let result = open_input(&path).and_then(|reader| {
        if dimacs {
            parse_dimacs_gr(reader)
        } else {
            parse_edge_list(reader)
        }
    });
    match result {
        Ok(g) => {
            *out = Box::into_raw(Box::new(EccGraph { inner: g }));
            EccStatus::Ok
        }
        Err(err) => fail(err),
    }
}

/// Reads a whitespace edge-list file (`-` for stdin, `.gz` accepted).
///
/// # Safety
/// `path` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ecc_graph_read_edge_list(
    path: *const c_char,
    out: *mut *mut EccGraph,
) -> EccStatus {
    guarded(|| read_graph(path, false, out))
}

/// Reads a DIMACS shortest-path file.
///
/// # Safety
/// `path` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ecc_graph_read_dimacs_gr(
    path: *const c_char,
    out: *mut *mut EccGraph,
) -> EccStatus {
    guarded(|| read_graph(path, true, out))
}

/// Parses an edge list held in memory.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ecc_graph_parse_edge_list(
    text: *const c_char,
    out: *mut *mut EccGraph,
) -> EccStatus {
    guarded(|| {
        if text.is_null() || out.is_null() {
            set_error("null argument".to_string());
            return EccStatus::NullArgument;
        }
        let bytes = CStr::from_ptr(text).to_bytes();
        match parse_edge_list(bytes) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(EccGraph { inner: g }));
                EccStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// Releases a graph handle.
///
/// # Safety
/// `g` must come from an `ecc_graph_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ecc_graph_free(g: *mut EccGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Node count, or 0 for NULL.
///
/// # Safety
/// `g` must be a live graph handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn ecc_graph_node_count(g: *const EccGraph) -> u64 {
    g.as_ref().map_or(0, |g| g.inner.n() as u64)
}

/// Stored arc count (undirected edges count twice), or 0 for NULL.
///
/// # Safety
/// `g` must be a live graph handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn ecc_graph_arc_count(g: *const EccGraph) -> u64 {
    g.as_ref().map_or(0, |g| g.inner.arc_count() as u64)
}

/// 1 for directed graphs, 0 otherwise.
///
/// # Safety
/// `g` must be a live graph handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn ecc_graph_is_directed(g: *const EccGraph) -> i32 {
    g.as_ref().map_or(0, |g| g.inner.directed() as i32)
}

/// Restricts a graph to its largest (strongly) connected component. The
/// solvers below require this.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ecc_graph_restrict_to_core(
    g: *const EccGraph,
    out: *mut *mut EccGraph,
) -> EccStatus {
    guarded(|| {
        let Some(g) = g.as_ref() else {
            set_error("null graph".to_string());
            return EccStatus::NullArgument;
        };
        if out.is_null() {
            set_error("null output pointer".to_string());
            return EccStatus::NullArgument;
        }
        match g.inner.restrict_to_core() {
            Ok(core) => {
                *out = Box::into_raw(Box::new(EccGraph { inner: core.graph }));
                EccStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

fn ranking_for(g: &Graph, ranking_seed: i64) -> Ranking {
    if ranking_seed < 0 {
        Ranking::id(g.n())
    } else {
        Ranking::random(g.n(), ranking_seed as u64)
    }
}

unsafe fn export_json(json: Result<String, Error>, slot: *mut *mut c_char) -> Result<(), EccStatus> {
    if slot.is_null() {
        return Ok(());
    }
    match json {
        Ok(text) => match CString::new(text) {
            Ok(c) => {
                *slot = c.into_raw();
                Ok(())
            }
            Err(_) => {
                set_error("certificate JSON contained NUL".to_string());
                Err(EccStatus::InternalPanic)
            }
        },
        Err(err) => {
            let status = fail(err);
            Err(status)
        }
    }
}

/// Computes the radius with its certificate. `ranking_seed < 0` selects the
/// id ranking, otherwise the seeded random ranking. When `cert_json` is
/// non-NULL it receives the serialized certificate bundle.
///
/// # Safety
/// `g` must be a live, core-restricted graph handle; `out` must be valid;
/// `cert_json` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn ecc_radius(
    g: *const EccGraph,
    ranking_seed: i64,
    out: *mut EccRadiusResult,
    cert_json: *mut *mut c_char,
) -> EccStatus {
    guarded(|| {
        let Some(g) = g.as_ref() else {
            set_error("null graph".to_string());
            return EccStatus::NullArgument;
        };
        if out.is_null() {
            set_error("null output pointer".to_string());
            return EccStatus::NullArgument;
        }
        let ranking = ranking_for(&g.inner, ranking_seed);
        match solvers::radius(&g.inner, &ranking) {
            Ok(r) => {
                *out = EccRadiusResult {
                    radius: r.radius,
                    center: r.center as u64,
                    sweeps: r.report.sweeps,
                    certificate_size: r.lower.len() as u64,
                };
                if let Err(status) = export_json(r.bundle.to_json(), cert_json) {
                    return status;
                }
                EccStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// Computes the diameter with its certificate; see [`ecc_radius`] for the
/// ranking and JSON conventions.
///
/// # Safety
/// `g` must be a live, core-restricted graph handle; `out` must be valid;
/// `cert_json` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn ecc_diameter(
    g: *const EccGraph,
    variant: EccDiameterVariant,
    ranking_seed: i64,
    out: *mut EccDiameterResult,
    cert_json: *mut *mut c_char,
) -> EccStatus {
    guarded(|| {
        let Some(g) = g.as_ref() else {
            set_error("null graph".to_string());
            return EccStatus::NullArgument;
        };
        if out.is_null() {
            set_error("null output pointer".to_string());
            return EccStatus::NullArgument;
        }
        let ranking = ranking_for(&g.inner, ranking_seed);
        let variant = match variant {
            EccDiameterVariant::Basic => solvers::DiameterVariant::Basic,
            EccDiameterVariant::CenterInit => solvers::DiameterVariant::CenterInit,
            EccDiameterVariant::Delegate => solvers::DiameterVariant::Delegate,
            EccDiameterVariant::CenterInitDelegate => solvers::DiameterVariant::CenterInitDelegate,
        };
        match solvers::diameter(&g.inner, &ranking, variant) {
            Ok(d) => {
                *out = EccDiameterResult {
                    diameter: d.diameter,
                    witness: d.witness as u64,
                    sweeps: d.report.sweeps,
                    certificate_size: d.upper.len() as u64,
                };
                if let Err(status) = export_json(d.bundle.to_json(), cert_json) {
                    return status;
                }
                EccStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// Computes all eccentricities into a caller-allocated array of length
/// `ecc_graph_node_count(g)`.
///
/// # Safety
/// `g` must be a live, core-restricted graph handle; `out_ecc` must point
/// to at least `n` writable u64 slots; `sweeps` and `cert_json` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn ecc_all_eccentricities(
    g: *const EccGraph,
    ranking_seed: i64,
    out_ecc: *mut u64,
    sweeps: *mut u64,
    cert_json: *mut *mut c_char,
) -> EccStatus {
    guarded(|| {
        let Some(g) = g.as_ref() else {
            set_error("null graph".to_string());
            return EccStatus::NullArgument;
        };
        if out_ecc.is_null() {
            set_error("null output array".to_string());
            return EccStatus::NullArgument;
        }
        let ranking = ranking_for(&g.inner, ranking_seed);
        match solvers::all_eccentricities(&g.inner, &ranking) {
            Ok(a) => {
                let slice = std::slice::from_raw_parts_mut(out_ecc, g.inner.n());
                slice.copy_from_slice(&a.ecc);
                if !sweeps.is_null() {
                    *sweeps = a.report.sweeps;
                }
                let bundle = a.bundle.expect("selection route always bundles");
                if let Err(status) = export_json(bundle.to_json(), cert_json) {
                    return status;
                }
                EccStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// Audits a serialized certificate bundle against a graph. Returns `Ok`
/// when the audit accepts, `Rejected` when it refutes the claim, and
/// `FingerprintMismatch` when the bundle belongs to another graph.
///
/// # Safety
/// `g` must be a live graph handle and `json` a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ecc_verify_bundle(g: *const EccGraph, json: *const c_char) -> EccStatus {
    guarded(|| {
        let Some(g) = g.as_ref() else {
            set_error("null graph".to_string());
            return EccStatus::NullArgument;
        };
        if json.is_null() {
            set_error("null JSON".to_string());
            return EccStatus::NullArgument;
        }
        let text = match CStr::from_ptr(json).to_str() {
            Ok(t) => t,
            Err(_) => {
                set_error("JSON is not valid UTF-8".to_string());
                return EccStatus::InvalidUtf8;
            }
        };
        let bundle = match CertificateBundle::from_json(text) {
            Ok(b) => b,
            Err(err) => return fail(err),
        };
        let ranking = Ranking::id(g.inner.n());
        let mut counter = QueryCounter::new();
        match verify_bundle(&g.inner, &ranking, &bundle, &mut counter) {
            Ok(verdict) if verdict.accepted => EccStatus::Ok,
            Ok(verdict) => {
                set_error(verdict.reason.unwrap_or_else(|| "rejected".to_string()));
                EccStatus::Rejected
            }
            Err(err) => fail(err),
        }
    })
}
