//! C ABI over `hgpoly`.
//!
//! Objects cross the boundary as opaque handles created by `*_from_*`
//! constructors and released with the matching `*_free`. Every function
//! returns an [`HgStatus`]; on failure a message is kept per thread and
//! can be read with [`hg_last_error_message`]. Strings returned through
//! `char **` out-parameters are owned by the caller and must be released
//! with [`hg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hgpoly::amoeba::{self, Verdict};
use hgpoly::hypergeometric;
use hgpoly::io;
use hgpoly::{Error, IntegerPolytope, LaurentPolynomial};
use num_complex::Complex64;

/// Result codes of every exported function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    DimensionMismatch = 5,
    Pole = 6,
    NeedsDeeperPoint = 7,
    Numerical = 8,
    Panic = 9,
}

/// Verdict written by [`hg_optimality_report_json`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HgVerdict {
    Optimal = 0,
    NotOptimal = 1,
    Inconclusive = 2,
}

/// Opaque exact Laurent polynomial.
pub struct HgPolynomial(LaurentPolynomial);

/// Opaque integer polytope.
pub struct HgPolytope(IntegerPolytope);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HgStatus {
    match e {
        Error::Parse(_) | Error::InvalidOreSato(_) => HgStatus::Parse,
        Error::DimensionMismatch { .. } => HgStatus::DimensionMismatch,
        Error::Pole(_) => HgStatus::Pole,
        Error::NeedsDeeperPoint(_) => HgStatus::NeedsDeeperPoint,
        Error::RootFinding(_) | Error::Internal(_) => HgStatus::Numerical,
        _ => HgStatus::Domain,
    }
}

struct Failure(HgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(HgStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HgStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside hgpoly".into());
            HgStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(HgStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn slice_arg<'a, T>(p: *const T, n: usize, what: &str) -> Result<&'a [T], Failure> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(HgStatus::Numerical, "string with NUL byte".into()))?;
    put(out, c.into_raw(), "out")
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses polynomial JSON `{"n", "terms": [{"exp", "num", "den"}]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_polynomial_from_json(json: *const c_char, out: *mut *mut HgPolynomial) -> HgStatus {
    guard(|| {
        let p = io::polynomial_from_str(str_arg(json, "json")?)?;
        put(out, Box::into_raw(Box::new(HgPolynomial(p))), "out")
    })
}

/// Parses an expression such as `"3x + 12xy - 2/3 y^2"` in at least
/// `min_dim` variables.
///
/// # Safety
/// `expr` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_polynomial_from_expr(
    expr: *const c_char,
    min_dim: usize,
    out: *mut *mut HgPolynomial,
) -> HgStatus {
    guard(|| {
        let p = io::parse_polynomial_expr(str_arg(expr, "expr")?, min_dim)?;
        put(out, Box::into_raw(Box::new(HgPolynomial(p))), "out")
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_polynomial_to_json(p: *const HgPolynomial, out: *mut *mut c_char) -> HgStatus {
    guard(|| {
        let p = ref_arg(p, "polynomial")?;
        put_string(out, io::polynomial_to_json(&p.0).to_string())
    })
}

/// Number of variables, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hg_polynomial_dim(p: *const HgPolynomial) -> usize {
    p.as_ref().map_or(0, |p| p.0.dim())
}

/// Number of terms, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hg_polynomial_len(p: *const HgPolynomial) -> usize {
    p.as_ref().map_or(0, |p| p.0.len())
}

/// # Safety
/// `p` must be null or a handle that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hg_polynomial_free(p: *mut HgPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Value at the complex point with coordinates `re[k] + i im[k]`.
///
/// # Safety
/// `re` and `im` must hold `n` doubles; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_polynomial_evaluate(
    p: *const HgPolynomial,
    re: *const f64,
    im: *const f64,
    n: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> HgStatus {
    guard(|| {
        let p = ref_arg(p, "polynomial")?;
        let (re, im) = (slice_arg(re, n, "re")?, slice_arg(im, n, "im")?);
        let x: Vec<Complex64> = re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect();
        let v = p.0.evaluate(&x)?;
        put(out_re, v.re, "out_re")?;
        put(out_im, v.im, "out_im")
    })
}

/// Parses polytope JSON `{"n", "vertices"}`; facets are recomputed.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_polytope_from_json(json: *const c_char, out: *mut *mut HgPolytope) -> HgStatus {
    guard(|| {
        let p = io::polytope_from_str(str_arg(json, "json")?)?;
        put(out, Box::into_raw(Box::new(HgPolytope(p))), "out")
    })
}

/// Number of lattice points, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hg_polytope_lattice_point_count(p: *const HgPolytope) -> usize {
    p.as_ref().map_or(0, |p| hgpoly::lattice::lattice_points(&p.0).len())
}

/// # Safety
/// `p` must be null or a handle that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hg_polytope_free(p: *mut HgPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Canonical hypergeometric polynomial supported in the polytope.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_hypergeometric_polynomial(p: *const HgPolytope, out: *mut *mut HgPolynomial) -> HgStatus {
    guard(|| {
        let poly = hypergeometric::hypergeometric_polynomial(&ref_arg(p, "polytope")?.0)?;
        put(out, Box::into_raw(Box::new(HgPolynomial(poly))), "out")
    })
}

/// Horn system of Ore-Sato JSON data, as JSON.
///
/// # Safety
/// `oresato_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_horn_system_json(oresato_json: *const c_char, out: *mut *mut c_char) -> HgStatus {
    guard(|| {
        let phi = io::ore_sato_from_str(str_arg(oresato_json, "oresato_json")?)?;
        let h = hypergeometric::horn_system(&phi)?;
        put_string(out, io::horn_system_to_json(&h).to_string())
    })
}

/// Exact check that `p` solves the Horn system of the Ore-Sato data.
///
/// # Safety
/// `p` must be a live handle, `oresato_json` a NUL-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hg_is_horn_solution(
    p: *const HgPolynomial,
    oresato_json: *const c_char,
    out: *mut bool,
) -> HgStatus {
    guard(|| {
        let p = ref_arg(p, "polynomial")?;
        let phi = io::ore_sato_from_str(str_arg(oresato_json, "oresato_json")?)?;
        put(out, hypergeometric::is_horn_solution(&p.0, &phi)?, "out")
    })
}

/// Optimality report JSON for a bivariate polynomial over its default
/// window at the given resolution and angular sampling.
///
/// # Safety
/// `p` must be a live handle; outputs must be writable. `verdict` may be
/// null.
#[no_mangle]
pub unsafe extern "C" fn hg_optimality_report_json(
    p: *const HgPolynomial,
    resolution: usize,
    angles: usize,
    verdict: *mut HgVerdict,
    out: *mut *mut c_char,
) -> HgStatus {
    guard(|| {
        let c = ref_arg(p, "polynomial")?.0.to_complex();
        let w = amoeba::default_window(&c)?.with_resolution(resolution).with_angles(angles);
        let r = amoeba::optimality_report(&c, &w)?;
        if !verdict.is_null() {
            verdict.write(match r.verdict {
                Verdict::Optimal => HgVerdict::Optimal,
                Verdict::NotOptimal => HgVerdict::NotOptimal,
                Verdict::Inconclusive => HgVerdict::Inconclusive,
            });
        }
        put_string(out, io::report_to_json(&r).to_string())
    })
}

/// Order of the complement component containing the log-space point
/// `xi`; writes `n` integers to `out`.
///
/// # Safety
/// `xi` must hold `n` doubles and `out` room for `n` integers.
#[no_mangle]
pub unsafe extern "C" fn hg_component_order(
    p: *const HgPolynomial,
    xi: *const f64,
    n: usize,
    out: *mut i64,
) -> HgStatus {
    guard(|| {
        let c = ref_arg(p, "polynomial")?.0.to_complex();
        let order = amoeba::component_order(&c, slice_arg(xi, n, "xi")?)?;
        if out.is_null() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(order.as_ptr(), out, order.len().min(n));
        Ok(())
    })
}

/// Dominant exponent at `xi` if the polynomial is lopsided there;
/// `found` is set to false otherwise and `out` is left untouched.
///
/// # Safety
/// `xi` must hold `n` doubles, `out` room for `n` integers, `found` be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn hg_lopsided_at(
    p: *const HgPolynomial,
    xi: *const f64,
    n: usize,
    out: *mut i64,
    found: *mut bool,
) -> HgStatus {
    guard(|| {
        let c = ref_arg(p, "polynomial")?.0.to_complex();
        match amoeba::lopsided_at(&c, slice_arg(xi, n, "xi")?)? {
            Some(e) => {
                if out.is_null() {
                    return Err(null("out"));
                }
                ptr::copy_nonoverlapping(e.as_ptr(), out, e.len().min(n));
                put(found, true, "found")
            }
            None => put(found, false, "found"),
        }
    })
}

/// `sum_j sqrt(a_j b_j) < c / 2` for `c + sum_j (a_j x_j + b_j / x_j)`.
///
/// # Safety
/// `a` and `b` must hold `n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_cross_polytope_optimal(
    a: *const f64,
    b: *const f64,
    n: usize,
    c: f64,
    out: *mut bool,
) -> HgStatus {
    guard(|| {
        let v = amoeba::cross_polytope_optimal(slice_arg(a, n, "a")?, slice_arg(b, n, "b")?, c)?;
        put(out, v, "out")
    })
}
