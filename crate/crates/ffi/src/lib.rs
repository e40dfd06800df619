//! C ABI over the `eaqecc` library.
//!
//! Every fallible function returns an [`EaqeccStatus`]; on failure a message
//! is stored per thread and can be read with [`eaqecc_last_error`]. Codes are
//! opaque [`EaqeccCode`] handles released with [`eaqecc_code_free`], and
//! returned strings are released with [`eaqecc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eaqecc::addcodes::{AdditiveCode, Strategy, DEFAULT_BUDGET};
use eaqecc::eaqec::{self, EAQECCParams, QECCParams, SearchOptions};
use eaqecc::{fidelity, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EaqeccStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    BudgetExceeded = 5,
    Failed = 6,
    Panic = 7,
}

/// Opaque handle to an additive code over GF(q²).
pub struct EaqeccCode {
    inner: AdditiveCode,
}

/// EA parameters of a code. `d` is 0 when it was not computed or is undefined.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EaqeccParams {
    pub q: usize,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub c: usize,
    pub l: usize,
    pub m: usize,
}

pub const EAQECC_MATCH_MATCHING: u32 = 1;
pub const EAQECC_MATCH_FAITHFUL: u32 = 2;
pub const EAQECC_MATCH_PROPERLY: u32 = 4;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> EaqeccStatus {
    match e {
        Error::Parse { .. } => EaqeccStatus::Parse,
        Error::BudgetExceeded { .. } => EaqeccStatus::BudgetExceeded,
        Error::Range(_) | Error::InvalidField(_) | Error::FieldMismatch | Error::DimensionMismatch { .. } => {
            EaqeccStatus::InvalidArgument
        }
        _ => EaqeccStatus::Failed,
    }
}

fn guard(f: impl FnOnce() -> Result<(), EaqeccStatus>) -> EaqeccStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EaqeccStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            EaqeccStatus::Panic
        }
    }
}

fn lift<T>(r: eaqecc::Result<T>) -> Result<T, EaqeccStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn null(what: &str) -> EaqeccStatus {
    set_error(format!("{what} is null"));
    EaqeccStatus::NullPointer
}

unsafe fn code_ref<'a>(code: *const EaqeccCode) -> Result<&'a AdditiveCode, EaqeccStatus> {
    code.as_ref().map(|c| &c.inner).ok_or_else(|| null("code"))
}

fn options(budget: u64) -> SearchOptions {
    let budget = if budget == 0 { DEFAULT_BUDGET } else { budget as u128 };
    SearchOptions { budget, strategy: Strategy::Full }
}

fn out_string(s: String, out: *mut *mut c_char) -> Result<(), EaqeccStatus> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| EaqeccStatus::Failed)?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn eaqecc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parse a code from the matrix text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eaqecc_code_from_text(text: *const c_char, out: *mut *mut EaqeccCode) -> EaqeccStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let src = CStr::from_ptr(text).to_str().map_err(|_| {
            set_error("text is not valid UTF-8".into());
            EaqeccStatus::InvalidUtf8
        })?;
        let inner = lift(AdditiveCode::from_text(src))?;
        *out = Box::into_raw(Box::new(EaqeccCode { inner }));
        Ok(())
    })
}

/// # Safety
/// `code` must be null or a handle from [`eaqecc_code_from_text`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eaqecc_code_free(code: *mut EaqeccCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Serialize a code back to the matrix text format.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eaqecc_code_to_text(code: *const EaqeccCode, out: *mut *mut c_char) -> EaqeccStatus {
    guard(|| out_string(code_ref(code)?.to_text(), out))
}

/// EA parameters of a code. With `with_distance` false the distance search is
/// skipped. A `budget` of 0 selects the library default.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eaqecc_code_analyze(
    code: *const EaqeccCode,
    with_distance: bool,
    budget: u64,
    out: *mut EaqeccParams,
) -> EaqeccStatus {
    guard(|| {
        let code = code_ref(code)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let a = lift(eaqec::analyze(code, with_distance.then(|| options(budget))))?;
        let p = a.params;
        *out = EaqeccParams { q: p.q, n: p.n, k: p.k, d: p.d.unwrap_or(0), c: p.c, l: p.l, m: a.m };
        Ok(())
    })
}

/// Minimum symplectic weight of the nonzero words of a code.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eaqecc_code_min_weight(code: *const EaqeccCode, budget: u64, out: *mut usize) -> EaqeccStatus {
    guard(|| {
        let code = code_ref(code)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = lift(code.min_weight(options(budget).budget))?.weight;
        Ok(())
    })
}

/// Binomial approximation of the fidelity of a length-n, distance-d code
/// under depolarizing probability `p`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eaqecc_approx_fidelity(n: usize, d: usize, p: f64, out: *mut f64) -> EaqeccStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = lift(fidelity::approx_fidelity(n, d, p))?;
        Ok(())
    })
}

/// Match flags (`EAQECC_MATCH_*`) of a sender `[[n,k,d;c]]_q` and receiver
/// `[[nb,kb,db]]_q`. A distance of 0 means unknown.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn eaqecc_classify_match(
    q: usize,
    n: usize,
    k: usize,
    d: usize,
    c: usize,
    nb: usize,
    kb: usize,
    db: usize,
    out: *mut u32,
) -> EaqeccStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let alice = lift(EAQECCParams::new(q, n, k, (d > 0).then_some(d), c))?;
        let bob = lift(QECCParams::new(q, nb, kb, (db > 0).then_some(db)))?;
        let m = lift(eaqec::classify_match(&alice, &bob))?;
        *out = (m.matching as u32) * EAQECC_MATCH_MATCHING
            | (m.faithful as u32) * EAQECC_MATCH_FAITHFUL
            | (m.properly as u32) * EAQECC_MATCH_PROPERLY;
        Ok(())
    })
}

/// CSV of the built-in combination tables.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eaqecc_tables_csv(out: *mut *mut c_char) -> EaqeccStatus {
    guard(|| out_string(eaqec::tables_csv(&eaqec::combination_tables()), out))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eaqecc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
