//! C interface to `surfconf`.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_parse`
//! and released by the matching `*_free`. Every fallible call returns a
//! `ScStatus`; on failure `sc_last_error` describes the most recent error on
//! the calling thread. Strings returned through out-parameters are owned by
//! the caller and released with `sc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use surfconf::action::{action_on_cohomology, CohomologyAction};
use surfconf::complex::{build_complex, IntegerChainComplex};
use surfconf::free_group::{johnson_depth, parse_mapping_class, MappingClass};
use surfconf::linalg::{homology_ranks, reindex_poincare_lefschetz, GroupRanks};
use surfconf::model::{pure_arc_cells, SurfaceParams};
use surfconf::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownGenerator = 4,
    InvalidCell = 5,
    Guardrail = 6,
    Dimension = 7,
    /// A self-check failed (differential, chain map) or an invariant broke.
    Internal = 8,
    OutOfRange = 9,
    Panic = 10,
}

/// Cell complex of `F_n` of a genus-`g` surface with one boundary component,
/// with its cohomology computed on construction.
pub struct ScComplex {
    complex: IntegerChainComplex,
    cohomology: Vec<GroupRanks>,
}

/// A parsed mapping class.
pub struct ScMappingClass {
    class: MappingClass,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn status_of(e: &Error) -> ScStatus {
    match e {
        Error::Parse(_) => ScStatus::Parse,
        Error::UnknownGenerator(_) => ScStatus::UnknownGenerator,
        Error::LabelsNotDisjoint(_) | Error::InvalidCell(_) => ScStatus::InvalidCell,
        Error::Guardrail { .. } => ScStatus::Guardrail,
        Error::Dimension(_) => ScStatus::Dimension,
        Error::DifferentialNotNilpotent { .. } | Error::NotAChainMap { .. } | Error::Internal(_) => ScStatus::Internal,
    }
}

fn fail(status: ScStatus, msg: impl Into<String>) -> ScStatus {
    set_error(msg);
    status
}

/// Runs `f`, converting library errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), ScStatus>>(f: F) -> ScStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ScStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(ScStatus::Panic, "panic inside surfconf"),
    }
}

fn lib<T>(r: surfconf::Result<T>) -> Result<T, ScStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, ScStatus> {
    if p.is_null() {
        return Err(fail(ScStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(ScStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn out<T>(p: *mut T, v: T) -> Result<(), ScStatus> {
    if p.is_null() {
        return Err(fail(ScStatus::NullPointer, "null output pointer"));
    }
    p.write(v);
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, ScStatus> {
    p.as_ref().ok_or_else(|| fail(ScStatus::NullPointer, "null handle"))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; valid until the next call.
#[no_mangle]
pub extern "C" fn sc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the cell complex and its cohomology.
///
/// # Safety
/// `out_complex` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn sc_complex_new(genus: usize, points: usize, out_complex: *mut *mut ScComplex) -> ScStatus {
    guard(|| {
        let complex = lib(build_complex(SurfaceParams::new(genus), points))?;
        let cohomology = reindex_poincare_lefschetz(&homology_ranks(complex.chain()), points).into_values().collect();
        out(out_complex, Box::into_raw(Box::new(ScComplex { complex, cohomology })))
    })
}

/// # Safety
/// `c` must be null or a handle from `sc_complex_new`, freed once.
#[no_mangle]
pub unsafe extern "C" fn sc_complex_free(c: *mut ScComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of cells in homological degree `degree`.
///
/// # Safety
/// `c` must be a live handle and `out_count` writable.
#[no_mangle]
pub unsafe extern "C" fn sc_complex_cell_count(c: *const ScComplex, degree: usize, out_count: *mut usize) -> ScStatus {
    guard(|| {
        let c = handle(c)?;
        out(out_count, c.complex.basis().count_in_degree(degree))
    })
}

/// Rank and number of torsion summands of `H^i(F_n)`.
///
/// # Safety
/// `c` must be a live handle and both outputs writable.
#[no_mangle]
pub unsafe extern "C" fn sc_complex_cohomology(
    c: *const ScComplex,
    i: usize,
    out_betti: *mut usize,
    out_torsion_count: *mut usize,
) -> ScStatus {
    guard(|| {
        let c = handle(c)?;
        let r = c
            .cohomology
            .get(i)
            .ok_or_else(|| fail(ScStatus::OutOfRange, format!("degree {i} is above 2n")))?;
        out(out_betti, r.betti)?;
        out(out_torsion_count, r.torsion.len())
    })
}

/// Bases and differential triplets as JSON.
///
/// # Safety
/// `c` must be a live handle and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn sc_complex_export_json(c: *const ScComplex, out_json: *mut *mut c_char) -> ScStatus {
    guard(|| {
        let c = handle(c)?;
        out(out_json, owned_string(c.complex.export_json().to_string()))
    })
}

/// Parses a mapping class (`Ta1 Tb2^-1 Td`, or `endo: a1-> ...; ...`).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out_class` writable.
#[no_mangle]
pub unsafe extern "C" fn sc_mapping_class_parse(
    genus: usize,
    text: *const c_char,
    out_class: *mut *mut ScMappingClass,
) -> ScStatus {
    guard(|| {
        let s = read_str(text)?;
        let class = lib(parse_mapping_class(s, genus))?;
        out(out_class, Box::into_raw(Box::new(ScMappingClass { class })))
    })
}

/// # Safety
/// `m` must be null or a handle from `sc_mapping_class_parse`, freed once.
#[no_mangle]
pub unsafe extern "C" fn sc_mapping_class_free(m: *mut ScMappingClass) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Normal form of the parsed class.
///
/// # Safety
/// `m` must be a live handle and `out_text` writable.
#[no_mangle]
pub unsafe extern "C" fn sc_mapping_class_normal_form(m: *const ScMappingClass, out_text: *mut *mut c_char) -> ScStatus {
    guard(|| {
        let m = handle(m)?;
        out(out_text, owned_string(m.class.normal_form.clone()))
    })
}

/// Largest `i <= bound` such that the class acts trivially on `pi / gamma_i`.
///
/// # Safety
/// `m` must be a live handle and `out_depth` writable.
#[no_mangle]
pub unsafe extern "C" fn sc_johnson_depth(m: *const ScMappingClass, bound: usize, out_depth: *mut usize) -> ScStatus {
    guard(|| {
        let m = handle(m)?;
        out(out_depth, johnson_depth(&m.class.endo, bound))
    })
}

/// Rank of the Moriyama module, `(2g)(2g+1)...(2g+n-1)`.
///
/// # Safety
/// `out_rank` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sc_mor_rank(genus: usize, points: usize, out_rank: *mut usize) -> ScStatus {
    guard(|| out(out_rank, pure_arc_cells(SurfaceParams::new(genus), points).len()))
}

fn actions(c: &ScComplex, m: &ScMappingClass) -> Result<std::collections::BTreeMap<usize, CohomologyAction>, ScStatus> {
    lib(action_on_cohomology(&m.class.endo, &c.complex))
}

/// Whether the class acts as the identity on `H^i(F_n)`.
///
/// # Safety
/// Both handles must be live and `out_identity` writable.
#[no_mangle]
pub unsafe extern "C" fn sc_action_is_identity(
    c: *const ScComplex,
    m: *const ScMappingClass,
    i: usize,
    out_identity: *mut bool,
) -> ScStatus {
    guard(|| {
        let (c, m) = (handle(c)?, handle(m)?);
        let a = actions(c, m)?;
        let entry = a.get(&i).ok_or_else(|| fail(ScStatus::OutOfRange, format!("degree {i} is above 2n")))?;
        out(out_identity, entry.is_identity())
    })
}

/// Matrices of the action on every `H^i`, as JSON `{"<i>": [[..], ..], ..}`
/// (entries as decimal strings).
///
/// # Safety
/// Both handles must be live and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn sc_action_json(
    c: *const ScComplex,
    m: *const ScMappingClass,
    out_json: *mut *mut c_char,
) -> ScStatus {
    guard(|| {
        let (c, m) = (handle(c)?, handle(m)?);
        let a = actions(c, m)?;
        let mut obj = serde_json::Map::new();
        for (i, x) in a {
            let rows: Vec<Vec<String>> = match &x.map {
                Some(map) => map.free.to_dense_big().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
                None => Vec::new(),
            };
            obj.insert(i.to_string(), serde_json::json!(rows));
        }
        out(out_json, owned_string(serde_json::Value::Object(obj).to_string()))
    })
}
