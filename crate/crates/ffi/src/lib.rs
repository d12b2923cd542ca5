//! C interface. Handles are opaque; every fallible call returns a
//! [`Perm132Status`] and leaves a message for [`perm132_last_error_message`].
//!
//! Strings returned through out-parameters are owned by the caller and must
//! be released with [`perm132_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;
use perm132::algebra::RationalFunction;
use perm132::engine::{Engine, EngineError};
use perm132::oracle::{self, ConstraintSpec, CountMode};
use perm132::pattern::Pattern;

/// Status codes. Values 1 to 3 and 5 agree with the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Perm132Status {
    Ok = 0,
    InvalidArgument = 1,
    Unsupported = 2,
    NotIn132Class = 3,
    Internal = 5,
    NullPointer = 6,
    /// Oracle cap, output buffer too small, or a coefficient outside `i64`.
    LimitExceeded = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Perm132Mode {
    Avoid = 0,
    Once = 1,
}

/// Engine with its own memo tables.
pub struct Perm132Engine(Engine);

pub struct Perm132RationalFunction(RationalFunction);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

struct Failure(Perm132Status, String);

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        let status = match &e {
            EngineError::NotIn132Class(_) => Perm132Status::NotIn132Class,
            EngineError::UnsupportedPattern { .. } => Perm132Status::Unsupported,
            EngineError::InvalidParams(_) | EngineError::Pattern(_) => Perm132Status::InvalidArgument,
            EngineError::Oracle(_) => Perm132Status::LimitExceeded,
            EngineError::Algebra(_) => Perm132Status::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(Perm132Status::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> Perm132Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => Perm132Status::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            Perm132Status::Panic
        }
    }
}

unsafe fn read_pattern(values: *const u32, len: usize) -> Result<Pattern, Failure> {
    if len == 0 {
        return Ok(Pattern::empty());
    }
    if values.is_null() {
        return Err(null("values"));
    }
    let v = std::slice::from_raw_parts(values, len).to_vec();
    Pattern::new(v).map_err(|e| Failure(Perm132Status::InvalidArgument, e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(Perm132Status::Internal, "string has an interior NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn perm132_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn perm132_engine_new() -> *mut Perm132Engine {
    Box::into_raw(Box::new(Perm132Engine(Engine::new())))
}

/// # Safety
/// `engine` is null or came from [`perm132_engine_new`] and was not freed.
#[no_mangle]
pub unsafe extern "C" fn perm132_engine_free(engine: *mut Perm132Engine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

unsafe fn compute(
    engine: *const Perm132Engine,
    values: *const u32,
    len: usize,
    out: *mut *mut Perm132RationalFunction,
    mode: Perm132Mode,
) -> Perm132Status {
    guard(|| {
        let engine = engine.as_ref().ok_or_else(|| null("engine"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let pat = read_pattern(values, len)?;
        let f = match mode {
            Perm132Mode::Avoid => engine.0.avoid_gf(&pat)?,
            Perm132Mode::Once => engine.0.once_gf(&pat)?,
        };
        *out = Box::into_raw(Box::new(Perm132RationalFunction(f)));
        Ok(())
    })
}

/// `F_τ` for the pattern `values[0..len]` (one-line notation, values `1..=len`).
///
/// # Safety
/// `engine` is a live handle, `values` points to `len` readable values
/// (may be null when `len == 0`), `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn perm132_avoid_gf(
    engine: *const Perm132Engine,
    values: *const u32,
    len: usize,
    out: *mut *mut Perm132RationalFunction,
) -> Perm132Status {
    compute(engine, values, len, out, Perm132Mode::Avoid)
}

/// `G_τ`, counting permutations that contain the pattern exactly once.
///
/// # Safety
/// As for [`perm132_avoid_gf`].
#[no_mangle]
pub unsafe extern "C" fn perm132_once_gf(
    engine: *const Perm132Engine,
    values: *const u32,
    len: usize,
    out: *mut *mut Perm132RationalFunction,
) -> Perm132Status {
    compute(engine, values, len, out, Perm132Mode::Once)
}

/// # Safety
/// `f` is null or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn perm132_rf_free(f: *mut Perm132RationalFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// `{"numerator":[..],"denominator":[..]}` with decimal-string coefficients,
/// lowest degree first.
///
/// # Safety
/// `f` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn perm132_rf_to_json(f: *const Perm132RationalFunction, out: *mut *mut c_char) -> Perm132Status {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null("f"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_string(out, f.0.to_json())
    })
}

/// Plain text such as `(1 - x) / (1 - 2x)`.
///
/// # Safety
/// `f` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn perm132_rf_to_plain(f: *const Perm132RationalFunction, out: *mut *mut c_char) -> Perm132Status {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null("f"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_string(out, f.0.render_plain())
    })
}

/// Parses the JSON form written by [`perm132_rf_to_json`].
///
/// # Safety
/// `json` is a NUL-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn perm132_rf_from_json(
    json: *const c_char,
    out: *mut *mut Perm132RationalFunction,
) -> Perm132Status {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(Perm132Status::InvalidArgument, e.to_string()))?;
        let f = RationalFunction::from_json(text).map_err(|e| Failure(Perm132Status::InvalidArgument, e.to_string()))?;
        *out = Box::into_raw(Box::new(Perm132RationalFunction(f)));
        Ok(())
    })
}

/// Writes the coefficients of `x^0..=x^terms` into `buf`, which must hold
/// `terms + 1` values.
///
/// # Safety
/// `f` is a live handle and `buf` points to `buf_len` writable values.
#[no_mangle]
pub unsafe extern "C" fn perm132_rf_series(
    f: *const Perm132RationalFunction,
    terms: usize,
    buf: *mut i64,
    buf_len: usize,
) -> Perm132Status {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null("f"))?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        if buf_len <= terms {
            return Err(Failure(
                Perm132Status::LimitExceeded,
                format!("buffer holds {buf_len} values, {} needed", terms + 1),
            ));
        }
        let s = f.0.series(terms).map_err(|e| Failure(Perm132Status::Internal, e.to_string()))?;
        let ints = s
            .to_integers()
            .ok_or_else(|| Failure(Perm132Status::Internal, "series has a non-integer coefficient".into()))?;
        let out = std::slice::from_raw_parts_mut(buf, buf_len);
        for (n, c) in ints.iter().enumerate() {
            out[n] = c
                .to_i64()
                .ok_or_else(|| Failure(Perm132Status::LimitExceeded, format!("coefficient of x^{n} exceeds i64")))?;
        }
        Ok(())
    })
}

/// Brute-force count over `S_n(132)`: permutations avoiding the pattern
/// (`mode = Avoid`) or containing it exactly once (`mode = Once`).
///
/// # Safety
/// `values` points to `len` readable values and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn perm132_oracle_count(
    values: *const u32,
    len: usize,
    mode: Perm132Mode,
    n: usize,
    out: *mut u64,
) -> Perm132Status {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let pat = read_pattern(values, len)?;
        let spec = match mode {
            Perm132Mode::Avoid => ConstraintSpec::avoiding(pat),
            Perm132Mode::Once => ConstraintSpec { avoid: Vec::new(), contain: Some((pat, CountMode::Exactly(1))) },
        };
        *out = oracle::count(n, &spec).map_err(|e| Failure(Perm132Status::LimitExceeded, e.to_string()))?;
        Ok(())
    })
}

/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn perm132_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
