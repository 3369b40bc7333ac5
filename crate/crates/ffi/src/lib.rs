//! C ABI over the `casorati` crate.
//!
//! Every fallible function returns a [`CasoratiStatus`]. On failure the message is kept in a
//! thread-local slot and read with [`casorati_last_error`]. Polynomials cross the boundary as
//! opaque [`CasoratiPoly`] handles; strings handed out by the library are released with
//! [`casorati_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use casorati::cli::config::parse_flat;
use casorati::cli::{self, RunConfig, Subcommand};
use casorati::det;
use casorati::exact::rational::parse_rational;
use casorati::exact::Poly;
use casorati::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CasoratiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Config = 4,
    InvalidParameter = 5,
    ZeroGamma = 6,
    BudgetExceeded = 7,
    Computation = 8,
    Panic = 9,
}

/// A polynomial with Gaussian-rational coefficients.
pub struct CasoratiPoly {
    inner: Poly,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> CasoratiStatus {
    match e {
        Error::Parse(_) => CasoratiStatus::Parse,
        Error::Config(_) => CasoratiStatus::Config,
        Error::InvalidParameter(_) => CasoratiStatus::InvalidParameter,
        Error::ZeroGamma => CasoratiStatus::ZeroGamma,
        Error::BudgetExceeded { .. } => CasoratiStatus::BudgetExceeded,
        _ => CasoratiStatus::Computation,
    }
}

struct Failure(CasoratiStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CasoratiStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording any error or panic, and maps the outcome to a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CasoratiStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CasoratiStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            CasoratiStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(CasoratiStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

unsafe fn write_out<T>(out: *mut T, v: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn read_polys(fs: *const *const CasoratiPoly, n: usize) -> Result<Vec<Poly>, Failure> {
    if n == 0 {
        return Ok(Vec::new());
    }
    if fs.is_null() {
        return Err(null("function array"));
    }
    std::slice::from_raw_parts(fs, n)
        .iter()
        .enumerate()
        .map(|(k, p)| p.as_ref().map(|p| p.inner.clone()).ok_or_else(|| null(&format!("function {k}"))))
        .collect()
}

fn boxed(p: Poly) -> *mut CasoratiPoly {
    Box::into_raw(Box::new(CasoratiPoly { inner: p }))
}

/// The message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn casorati_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn casorati_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn casorati_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses comma-separated coefficients, lowest degree first, e.g. `"1, -1/2, 3+2i"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn casorati_poly_parse(text: *const c_char, out: *mut *mut CasoratiPoly) -> CasoratiStatus {
    guard(|| {
        let p = Poly::parse_coeffs(read_str(text, "text")?)?;
        write_out(out, boxed(p), "out")
    })
}

/// # Safety
/// `p` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn casorati_poly_free(p: *mut CasoratiPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Degree of `p`; the zero polynomial reports -1.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn casorati_poly_degree(p: *const CasoratiPoly, out: *mut i64) -> CasoratiStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("poly"))?;
        write_out(out, p.inner.degree().map_or(-1, |d| d as i64), "out")
    })
}

/// Coefficients of `p` in the format accepted by [`casorati_poly_parse`].
///
/// # Safety
/// `p` must be a live handle; `out` must be writable. Free the result with [`casorati_string_free`].
#[no_mangle]
pub unsafe extern "C" fn casorati_poly_coefficients(p: *const CasoratiPoly, out: *mut *mut c_char) -> CasoratiStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("poly"))?;
        write_out(out, to_c_string(p.inner.coeff_string()), "out")
    })
}

/// Human-readable form of `p`, e.g. `x^2 - 1`.
///
/// # Safety
/// As for [`casorati_poly_coefficients`].
#[no_mangle]
pub unsafe extern "C" fn casorati_poly_to_string(p: *const CasoratiPoly, out: *mut *mut c_char) -> CasoratiStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("poly"))?;
        write_out(out, to_c_string(p.inner.to_string()), "out")
    })
}

/// Wronskian `det(f_k^{(j-1)})` of `n` polynomials.
///
/// # Safety
/// `fs` must point to `n` live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn casorati_wronskian(
    fs: *const *const CasoratiPoly,
    n: usize,
    out: *mut *mut CasoratiPoly,
) -> CasoratiStatus {
    guard(|| {
        let fs = read_polys(fs, n)?;
        write_out(out, boxed(det::wronskian(&fs)), "out")
    })
}

/// Real-shift Casoratian `det f_k(x + j - 1)`.
///
/// # Safety
/// As for [`casorati_wronskian`].
#[no_mangle]
pub unsafe extern "C" fn casorati_casoratian_real(
    fs: *const *const CasoratiPoly,
    n: usize,
    out: *mut *mut CasoratiPoly,
) -> CasoratiStatus {
    guard(|| {
        let fs = read_polys(fs, n)?;
        write_out(out, boxed(det::casoratian_real(&fs)), "out")
    })
}

/// Imaginary-shift Casoratian with step `gamma`, a rational such as `"1/2"`.
///
/// # Safety
/// As for [`casorati_wronskian`]; `gamma` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn casorati_casoratian_imag(
    fs: *const *const CasoratiPoly,
    n: usize,
    gamma: *const c_char,
    out: *mut *mut CasoratiPoly,
) -> CasoratiStatus {
    guard(|| {
        let g = parse_rational(read_str(gamma, "gamma")?)?;
        let fs = read_polys(fs, n)?;
        write_out(out, boxed(det::casoratian_imag(&fs, &g)?), "out")
    })
}

/// Runs a flat `key = value` configuration (the CLI's `--config` format, `subcommand` key
/// required) and returns the JSON run report. `exit_code` receives the CLI exit code for
/// the run. The `out` and `csv` keys are ignored.
///
/// # Safety
/// `config` must be a NUL-terminated string; `report_json` and `exit_code` must be writable.
/// Free the report with [`casorati_string_free`].
#[no_mangle]
pub unsafe extern "C" fn casorati_run(
    config: *const c_char,
    report_json: *mut *mut c_char,
    exit_code: *mut i32,
) -> CasoratiStatus {
    guard(|| {
        if report_json.is_null() || exit_code.is_null() {
            return Err(null("output pointer"));
        }
        let text = read_str(config, "config")?;
        let sub = parse_flat(text)?
            .into_iter()
            .find(|(k, _)| k == "subcommand")
            .ok_or_else(|| Error::Config("the subcommand key is required".into()))?;
        let mut cfg = RunConfig::new(Subcommand::parse(&sub.1)?)?;
        cfg.apply_file(text)?;
        let (rep, _) = cli::run_config(&cfg)?;
        let json = serde_json::to_string(&rep).map_err(|e| Failure(CasoratiStatus::Computation, e.to_string()))?;
        write_out(report_json, to_c_string(json), "report_json")?;
        write_out(exit_code, rep.summary.exit_code(), "exit_code")
    })
}

/// Re-runs a witness (or a report carrying one) and returns the reproduced report as JSON.
/// `exit_code` receives 0 for pass, 1 for fail and 3 for inconclusive.
///
/// # Safety
/// As for [`casorati_run`].
#[no_mangle]
pub unsafe extern "C" fn casorati_replay(
    witness_json: *const c_char,
    report_json: *mut *mut c_char,
    exit_code: *mut i32,
) -> CasoratiStatus {
    guard(|| {
        if report_json.is_null() || exit_code.is_null() {
            return Err(null("output pointer"));
        }
        let w = cli::load_witness(read_str(witness_json, "witness_json")?)?;
        let (value, status) = cli::replay(&w)?;
        write_out(report_json, to_c_string(value.to_string()), "report_json")?;
        write_out(exit_code, cli::exit_for(status), "exit_code")
    })
}
