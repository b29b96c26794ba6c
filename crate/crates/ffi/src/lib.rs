//! C ABI over `hodge-core`.
//!
//! Every fallible function returns a [`HodgeStatus`] and writes its result
//! through an out-pointer. On failure the out-pointer is left untouched and
//! [`hodge_last_error_message`] describes the error. Handles are opaque and
//! must be released with the matching `*_free` function; strings returned
//! by the library must be released with [`hodge_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hodge_core::params::{parse_list, ParamsError};
use hodge_core::spectra::HodgeSpectrum as CoreSpectrum;
use hodge_core::theorem::{irregular_hodge_spectrum, raw_spectrum, verify, verify_with_gamma, TheoremError};
use hodge_core::weyl::{katz_chain, WeylError};
use hodge_core::{validate, HypergeomParams, ParseRationalError, Rational, VerificationReport};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HodgeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// A rational or list failed to parse.
    ParseError = 3,
    /// Parameters are out of range, not increasing, resonant or empty.
    InvalidParams = 4,
    /// The operation requires n > m.
    NotConfluent = 5,
    /// No admissible shift γ, or the supplied γ does not give strong non-resonance.
    NotStrong = 6,
    /// A value does not fit the requested integer type.
    Overflow = 7,
    IndexOutOfRange = 8,
    /// A bug or panic inside the library.
    Internal = 9,
}

/// Validated hypergeometric parameters.
pub struct HodgeParams(HypergeomParams);

/// A multiset of rational jumps.
pub struct HodgeSpectrum(CoreSpectrum);

/// Result of comparing the closed formula with the nearby-cycle pipeline.
pub struct HodgeReport(VerificationReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Error(HodgeStatus, String);

impl From<ParseRationalError> for Error {
    fn from(e: ParseRationalError) -> Self {
        Error(HodgeStatus::ParseError, e.to_string())
    }
}

impl From<ParamsError> for Error {
    fn from(e: ParamsError) -> Self {
        let status = match e {
            ParamsError::NotConfluent { .. } => HodgeStatus::NotConfluent,
            ParamsError::NotStrong(_) | ParamsError::SearchExhausted => HodgeStatus::NotStrong,
            _ => HodgeStatus::InvalidParams,
        };
        Error(status, e.to_string())
    }
}

impl From<TheoremError> for Error {
    fn from(e: TheoremError) -> Self {
        match e {
            TheoremError::Params(p) => p.into(),
            TheoremError::NotStrong => Error(HodgeStatus::NotStrong, e.to_string()),
            TheoremError::WrongOrientation { .. } => Error(HodgeStatus::NotConfluent, e.to_string()),
            TheoremError::IndexOutOfRange { .. } => Error(HodgeStatus::IndexOutOfRange, e.to_string()),
            TheoremError::Spectra(_) => Error(HodgeStatus::Internal, e.to_string()),
        }
    }
}

impl From<WeylError> for Error {
    fn from(e: WeylError) -> Self {
        match e {
            WeylError::Params(p) => p.into(),
            other => Error(HodgeStatus::Internal, other.to_string()),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error(HodgeStatus::Internal, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Error>) -> HodgeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HodgeStatus::Ok,
        Ok(Err(Error(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HodgeStatus::Internal
        }
    }
}

fn null(what: &str) -> Error {
    Error(HodgeStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Error> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Error(HodgeStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Error> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Error> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Error> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|e| Error(HodgeStatus::Internal, e.to_string()))?;
    out.write(c.into_raw());
    Ok(())
}

/// Message for the most recent failure on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hodge_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hodge_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hodge_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates comma-separated parameter lists such as `"1/3,2/3"`.
/// An empty string is an empty list.
#[no_mangle]
pub unsafe extern "C" fn hodge_params_new(
    alpha: *const c_char,
    beta: *const c_char,
    out: *mut *mut HodgeParams,
) -> HodgeStatus {
    guard(|| {
        let a = parse_list(read_str(alpha, "alpha")?)?;
        let b = parse_list(read_str(beta, "beta")?)?;
        let params = validate(a, b)?;
        write_out(out, Box::into_raw(Box::new(HodgeParams(params))), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn hodge_params_free(params: *mut HodgeParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Writes n, m and μ = n - m.
#[no_mangle]
pub unsafe extern "C" fn hodge_params_shape(
    params: *const HodgeParams,
    n: *mut usize,
    m: *mut usize,
    mu: *mut i64,
) -> HodgeStatus {
    guard(|| {
        let p = &deref(params, "params")?.0;
        if n.is_null() || m.is_null() || mu.is_null() {
            return Err(null("out"));
        }
        n.write(p.n());
        m.write(p.m());
        mu.write(p.mu());
        Ok(())
    })
}

/// Irregular Hodge spectrum from the closed formula. With `normalize` the
/// smallest jump is 0; otherwise the jumps are ρ(k) as computed.
#[no_mangle]
pub unsafe extern "C" fn hodge_spectrum_compute(
    params: *const HodgeParams,
    normalize: bool,
    out: *mut *mut HodgeSpectrum,
) -> HodgeStatus {
    guard(|| {
        let p = &deref(params, "params")?.0;
        let s = if normalize {
            irregular_hodge_spectrum(p)
        } else {
            raw_spectrum(p)
        };
        write_out(out, Box::into_raw(Box::new(HodgeSpectrum(s))), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn hodge_spectrum_free(spectrum: *mut HodgeSpectrum) {
    if !spectrum.is_null() {
        drop(Box::from_raw(spectrum));
    }
}

/// Number of distinct jumps.
#[no_mangle]
pub unsafe extern "C" fn hodge_spectrum_len(spectrum: *const HodgeSpectrum, out: *mut usize) -> HodgeStatus {
    guard(|| {
        let s = &deref(spectrum, "spectrum")?.0;
        write_out(out, s.len(), "out")
    })
}

/// The `index`-th distinct jump in ascending order as `num/den` (den > 0),
/// with its multiplicity. Fails with `Overflow` if the jump does not fit in i64.
#[no_mangle]
pub unsafe extern "C" fn hodge_spectrum_get(
    spectrum: *const HodgeSpectrum,
    index: usize,
    num: *mut i64,
    den: *mut i64,
    mult: *mut u64,
) -> HodgeStatus {
    guard(|| {
        let s = &deref(spectrum, "spectrum")?.0;
        if num.is_null() || den.is_null() || mult.is_null() {
            return Err(null("out"));
        }
        let (jump, m) = s.entries().nth(index).ok_or_else(|| {
            Error(
                HodgeStatus::IndexOutOfRange,
                format!("index {index} out of range for {} jumps", s.len()),
            )
        })?;
        let (p, q) = jump
            .to_i64_pair()
            .ok_or_else(|| Error(HodgeStatus::Overflow, format!("jump {jump} does not fit in i64")))?;
        num.write(p);
        den.write(q);
        mult.write(m);
        Ok(())
    })
}

/// JSON array `[{"jump":"p/q","mult":n}, ...]`.
#[no_mangle]
pub unsafe extern "C" fn hodge_spectrum_to_json(spectrum: *const HodgeSpectrum, out: *mut *mut c_char) -> HodgeStatus {
    guard(|| {
        let s = &deref(spectrum, "spectrum")?.0;
        write_string(out, serde_json::to_string(s)?)
    })
}

/// Runs the nearby-cycle pipeline and compares it with the closed formula.
/// `gamma` may be null to search for the shift, or a rational such as `"1/16"`.
/// Requires n > m.
#[no_mangle]
pub unsafe extern "C" fn hodge_verify(
    params: *const HodgeParams,
    gamma: *const c_char,
    out: *mut *mut HodgeReport,
) -> HodgeStatus {
    guard(|| {
        let p = &deref(params, "params")?.0;
        let report = if gamma.is_null() {
            verify(p)?
        } else {
            let g: Rational = read_str(gamma, "gamma")?.parse()?;
            verify_with_gamma(p, &g)?
        };
        write_out(out, Box::into_raw(Box::new(HodgeReport(report))), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn hodge_report_free(report: *mut HodgeReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

#[no_mangle]
pub unsafe extern "C" fn hodge_report_agrees(report: *const HodgeReport, out: *mut bool) -> HodgeStatus {
    guard(|| {
        let r = &deref(report, "report")?.0;
        write_out(out, r.agrees, "out")
    })
}

/// A new handle holding the normalized spectrum from the pipeline.
#[no_mangle]
pub unsafe extern "C" fn hodge_report_oracle_spectrum(
    report: *const HodgeReport,
    out: *mut *mut HodgeSpectrum,
) -> HodgeStatus {
    guard(|| {
        let r = &deref(report, "report")?.0;
        write_out(
            out,
            Box::into_raw(Box::new(HodgeSpectrum(r.oracle_spectrum.clone()))),
            "out",
        )
    })
}

/// JSON object with keys alpha, beta, mu, gamma, spectrum, oracle, agrees, raw_shift.
#[no_mangle]
pub unsafe extern "C" fn hodge_report_to_json(report: *const HodgeReport, out: *mut *mut c_char) -> HodgeStatus {
    guard(|| {
        let r = &deref(report, "report")?.0;
        write_string(out, serde_json::to_string(r)?)
    })
}

/// JSON object mapping H, H_mu, H_hat_mu, H_prime_mu, H_double_prime to
/// their display strings. Requires n > m.
#[no_mangle]
pub unsafe extern "C" fn hodge_operators_json(params: *const HodgeParams, out: *mut *mut c_char) -> HodgeStatus {
    guard(|| {
        let p = &deref(params, "params")?.0;
        let chain = katz_chain(p)?;
        let map: serde_json::Map<String, serde_json::Value> = chain
            .displayed()
            .into_iter()
            .map(|(name, op)| (name.to_owned(), serde_json::Value::String(op.to_string())))
            .collect();
        write_string(out, serde_json::Value::Object(map).to_string())
    })
}
