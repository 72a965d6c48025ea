//! C ABI over `associahedra`.
//!
//! Polytopes are opaque `AssocPolytope` handles owned by the caller and
//! released with `assoc_polytope_free`. Strings returned through out
//! parameters are released with `assoc_string_free`. Every function returns
//! an `AssocStatus`; on failure `assoc_last_error` describes the error for
//! the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use associahedra::analysis::{equivalence_search, extract_facets, parallel_pairs, Verdict};
use associahedra::cli::DEFAULT_MAX_N;
use associahedra::io::{analysis_report, equivalence_json, to_pretty, ConstructionParams, PolytopeFile};
use associahedra::polytope::ConstructionTag;
use associahedra::Error;

/// A built realization together with its parameters.
pub struct AssocPolytope {
    file: PolytopeFile,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssocStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    Certification = 4,
    Parse = 5,
    Internal = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssocConstruction {
    Secondary = 0,
    Cluster = 1,
    Minkowski = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssocVerdict {
    NonEquivalent = 0,
    Equivalent = 1,
    Inconclusive = 2,
}

impl From<AssocConstruction> for ConstructionTag {
    fn from(c: AssocConstruction) -> Self {
        match c {
            AssocConstruction::Secondary => ConstructionTag::Secondary,
            AssocConstruction::Cluster => ConstructionTag::Cluster,
            AssocConstruction::Minkowski => ConstructionTag::Minkowski,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> AssocStatus {
    match e {
        Error::OutOfRange { .. } => AssocStatus::OutOfRange,
        Error::Certification { .. } => AssocStatus::Certification,
        Error::Internal(_) => AssocStatus::Internal,
        Error::Parse(_) | Error::Json(_) | Error::Io(_) => AssocStatus::Parse,
        _ => AssocStatus::InvalidArgument,
    }
}

/// Runs `f`, recording errors and panics for `assoc_last_error`.
fn guard(f: impl FnOnce() -> Result<(), (AssocStatus, String)>) -> AssocStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AssocStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside associahedra".into());
            AssocStatus::Panic
        }
    }
}

fn lib(e: Error) -> (AssocStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (AssocStatus, String) {
    (AssocStatus::NullPointer, format!("{what} is null"))
}

unsafe fn handle<'a>(p: *const AssocPolytope) -> Result<&'a AssocPolytope, (AssocStatus, String)> {
    p.as_ref().ok_or_else(|| null("polytope"))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, (AssocStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (AssocStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn give_polytope(out: *mut *mut AssocPolytope, file: PolytopeFile) {
    *out = Box::into_raw(Box::new(AssocPolytope { file }));
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> Result<(), (AssocStatus, String)> {
    let c = CString::new(s).map_err(|_| (AssocStatus::Internal, "string contains nul".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn assoc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a realization with default parameters.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn assoc_build_default(
    construction: AssocConstruction,
    n: usize,
    out: *mut *mut AssocPolytope,
) -> AssocStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if n == 0 || n > DEFAULT_MAX_N {
            return Err(lib(Error::OutOfRange {
                n,
                min: 1,
                max: DEFAULT_MAX_N,
            }));
        }
        let params = ConstructionParams::default_for(construction.into(), n).map_err(lib)?;
        give_polytope(out, PolytopeFile::build(params).map_err(lib)?);
        Ok(())
    })
}

/// Builds a realization from a JSON parameter document.
///
/// # Safety
/// `params_json` must be a nul-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn assoc_build_with_params(
    construction: AssocConstruction,
    params_json: *const c_char,
    out: *mut *mut AssocPolytope,
) -> AssocStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let params = ConstructionParams::parse(construction.into(), text(params_json, "params_json")?)
            .map_err(lib)?;
        let n = params.n().map_err(lib)?;
        if n == 0 || n > DEFAULT_MAX_N {
            return Err(lib(Error::OutOfRange {
                n,
                min: 1,
                max: DEFAULT_MAX_N,
            }));
        }
        give_polytope(out, PolytopeFile::build(params).map_err(lib)?);
        Ok(())
    })
}

/// Loads a polytope file document.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn assoc_polytope_from_json(json: *const c_char, out: *mut *mut AssocPolytope) -> AssocStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        give_polytope(out, PolytopeFile::from_json_str(text(json, "json")?).map_err(lib)?);
        Ok(())
    })
}

/// Serializes to the polytope file format. Free the result with `assoc_string_free`.
///
/// # Safety
/// `p` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn assoc_polytope_to_json(p: *const AssocPolytope, out: *mut *mut c_char) -> AssocStatus {
    guard(|| {
        let p = handle(p)?;
        if out.is_null() {
            return Err(null("out"));
        }
        give_string(out, p.file.to_json_string())
    })
}

/// # Safety
/// `p` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn assoc_polytope_free(p: *mut AssocPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn assoc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Dimension `n`, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn assoc_polytope_n(p: *const AssocPolytope) -> usize {
    p.as_ref().map_or(0, |p| p.file.polytope.n())
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn assoc_polytope_vertex_count(p: *const AssocPolytope) -> usize {
    p.as_ref().map_or(0, |p| p.file.polytope.vertices().len())
}

/// Number of certified facets.
///
/// # Safety
/// `p` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn assoc_polytope_facet_count(p: *const AssocPolytope, out: *mut usize) -> AssocStatus {
    guard(|| {
        let p = handle(p)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = extract_facets(&p.file.polytope).map_err(lib)?.len();
        Ok(())
    })
}

/// Writes parallel facet pairs as `a1, b1, a2, b2` diagonal endpoints, four
/// entries per pair, into `buf` of `capacity` entries.
///
/// `count` receives the number of pairs. If `buf` is too small nothing is
/// written and `ASSOC_STATUS_BUFFER_TOO_SMALL` is returned; `buf` may be
/// null when `capacity` is 0 to query the count.
///
/// # Safety
/// `p` must be a live handle, `buf` valid for `capacity` writes, `count` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn assoc_parallel_pairs(
    p: *const AssocPolytope,
    buf: *mut usize,
    capacity: usize,
    count: *mut usize,
) -> AssocStatus {
    guard(|| {
        let p = handle(p)?;
        if count.is_null() {
            return Err(null("count"));
        }
        let pairs = parallel_pairs(&p.file.polytope).map_err(lib)?;
        *count = pairs.len();
        if capacity < 4 * pairs.len() {
            return Err((
                AssocStatus::BufferTooSmall,
                format!("{} entries needed, capacity {capacity}", 4 * pairs.len()),
            ));
        }
        if buf.is_null() && !pairs.is_empty() {
            return Err(null("buf"));
        }
        for (k, (d1, d2)) in pairs.iter().enumerate() {
            for (j, v) in [d1.a(), d1.b(), d2.a(), d2.b()].into_iter().enumerate() {
                *buf.add(4 * k + j) = v;
            }
        }
        Ok(())
    })
}

/// The analysis report as JSON. Free the result with `assoc_string_free`.
///
/// # Safety
/// `p` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn assoc_analyze_json(p: *const AssocPolytope, out: *mut *mut c_char) -> AssocStatus {
    guard(|| {
        let p = handle(p)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let report = analysis_report(&p.file.polytope).map_err(lib)?;
        give_string(out, to_pretty(&report))
    })
}

/// Decides affine equivalence. `report_json` may be null; otherwise it
/// receives the report, to be freed with `assoc_string_free`.
///
/// # Safety
/// `a` and `b` must be live handles, `verdict` valid for writes, `report_json` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn assoc_compare(
    a: *const AssocPolytope,
    b: *const AssocPolytope,
    verdict: *mut AssocVerdict,
    report_json: *mut *mut c_char,
) -> AssocStatus {
    guard(|| {
        let (a, b) = (handle(a)?, handle(b)?);
        if verdict.is_null() {
            return Err(null("verdict"));
        }
        if a.file.polytope.n() != b.file.polytope.n() {
            return Err((AssocStatus::InvalidArgument, "polytopes have different n".into()));
        }
        let r = equivalence_search(&a.file.polytope, &b.file.polytope).map_err(lib)?;
        *verdict = match r.verdict {
            Verdict::NonEquivalent => AssocVerdict::NonEquivalent,
            Verdict::Equivalent => AssocVerdict::Equivalent,
            Verdict::Inconclusive => AssocVerdict::Inconclusive,
        };
        if !report_json.is_null() {
            give_string(report_json, to_pretty(&equivalence_json(&r)))?;
        }
        Ok(())
    })
}
