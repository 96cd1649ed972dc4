//! C interface: opaque diagram handles, status codes and a thread-local
//! error message.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use knotgauss::codes::{build_diagram, parse_gauss_code, KnotDiagram, Sign};
use knotgauss::constructions::whitehead_double;
use knotgauss::invariants::invariant_report;
use knotgauss::oracles::{jones, signature_and_det, vassiliev_from_jones};
use knotgauss::KnotError;

/// Opaque knot diagram.
pub struct KgDiagram(KnotDiagram);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotRealizable = 4,
    SignMismatch = 5,
    Budget = 6,
    InvalidArgument = 7,
    MoveNotApplicable = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KgInvariants {
    pub v2: i64,
    pub v3: i64,
    pub lk: u64,
    pub writhe: i64,
    pub crossings: u64,
    pub seifert_circles: u64,
    pub genus: u64,
    pub negatives: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KgOracle {
    pub v2: i64,
    pub v3: i64,
    pub det_signed: i64,
    pub sigma_paper: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &KnotError) -> KgStatus {
    match e {
        KnotError::Parse { .. }
        | KnotError::LabelCount { .. }
        | KnotError::DuplicatePassage { .. }
        | KnotError::InconsistentSign(_)
        | KnotError::MixedSigns
        | KnotError::Pd(_) => KgStatus::Parse,
        KnotError::NotRealizable | KnotError::NonPlanar { .. } | KnotError::MultipleComponents => {
            KgStatus::NotRealizable
        }
        KnotError::SignMismatch => KgStatus::SignMismatch,
        KnotError::Budget { .. } => KgStatus::Budget,
        KnotError::MoveNotApplicable(_) => KgStatus::MoveNotApplicable,
        KnotError::InvalidArgument(_) | KnotError::OutOfRange { .. } => KgStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), KgStatus>) -> KgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KgStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            KgStatus::Panic
        }
    }
}

fn fail(e: KnotError) -> KgStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

unsafe fn diagram<'a>(d: *const KgDiagram) -> Result<&'a KnotDiagram, KgStatus> {
    if d.is_null() {
        set_error("null diagram".into());
        return Err(KgStatus::NullPointer);
    }
    Ok(&(*d).0)
}

/// Parses a signed Gauss code such as `O1+U2+O3+U1+O2+U3+`. On success
/// `*out` owns a new diagram to be released with `kg_diagram_free`.
///
/// # Safety
/// `code` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kg_diagram_from_code(code: *const c_char, out: *mut *mut KgDiagram) -> KgStatus {
    guard(|| {
        if code.is_null() || out.is_null() {
            set_error("null argument".into());
            return Err(KgStatus::NullPointer);
        }
        *out = ptr::null_mut();
        let text = CStr::from_ptr(code).to_str().map_err(|e| {
            set_error(e.to_string());
            KgStatus::InvalidUtf8
        })?;
        let d = parse_gauss_code(text).and_then(|c| build_diagram(&c)).map_err(fail)?;
        *out = Box::into_raw(Box::new(KgDiagram(d)));
        Ok(())
    })
}

/// # Safety
/// `d` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn kg_diagram_free(d: *mut KgDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of crossings, 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kg_diagram_crossings(d: *const KgDiagram) -> usize {
    if d.is_null() {
        0
    } else {
        (*d).0.crossing_count()
    }
}

/// The diagram's signed Gauss code; release with `kg_string_free`.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kg_diagram_code(d: *const KgDiagram) -> *mut c_char {
    match diagram(d) {
        Ok(d) => CString::new(d.code().to_string()).expect("codes are ascii").into_raw(),
        Err(_) => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn kg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kg_diagram_invariants(d: *const KgDiagram, out: *mut KgInvariants) -> KgStatus {
    guard(|| {
        let d = diagram(d)?;
        if out.is_null() {
            set_error("null output".into());
            return Err(KgStatus::NullPointer);
        }
        let r = invariant_report(d);
        *out = KgInvariants {
            v2: r.v2,
            v3: r.v3,
            lk: r.lk as u64,
            writhe: r.writhe,
            crossings: r.c as u64,
            seifert_circles: r.s as u64,
            genus: r.g as u64,
            negatives: d.negative_count() as u64,
        };
        Ok(())
    })
}

/// Jones-derived `v2`, `v3` with determinant and signature.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kg_diagram_oracle(d: *const KgDiagram, out: *mut KgOracle) -> KgStatus {
    guard(|| {
        let d = diagram(d)?;
        if out.is_null() {
            set_error("null output".into());
            return Err(KgStatus::NullPointer);
        }
        let v = jones(d).map_err(fail)?;
        let (v2, v3) = vassiliev_from_jones(&v).map_err(fail)?;
        let sd = signature_and_det(d).map_err(fail)?;
        *out = KgOracle { v2, v3, det_signed: sd.det_signed, sigma_paper: sd.sigma_paper };
        Ok(())
    })
}

/// Untwisted Whitehead double; `clasp_sign` is `1` or `-1`.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kg_whitehead_double(d: *const KgDiagram, clasp_sign: c_int, out: *mut *mut KgDiagram) -> KgStatus {
    guard(|| {
        let d = diagram(d)?;
        if out.is_null() {
            set_error("null output".into());
            return Err(KgStatus::NullPointer);
        }
        *out = ptr::null_mut();
        let sign = match clasp_sign {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            _ => {
                set_error(format!("clasp sign must be 1 or -1, got {clasp_sign}"));
                return Err(KgStatus::InvalidArgument);
            }
        };
        let w = whitehead_double(d, sign).map_err(fail)?;
        *out = Box::into_raw(Box::new(KgDiagram(w)));
        Ok(())
    })
}

/// Message of the last failure on this thread, or null. Valid until the next call that fails.
#[no_mangle]
pub extern "C" fn kg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
