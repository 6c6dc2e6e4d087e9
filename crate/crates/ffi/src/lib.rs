//! C ABI for `congruent-theta`.
//!
//! Every fallible function returns a [`CtStatus`]. On failure a message is
//! kept per thread and can be read with [`ct_last_error`]. Series are passed
//! as opaque [`CtSeries`] handles; strings returned by the library are owned
//! by the caller and released with [`ct_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use congruent_theta::eisenstein::basis_gamma0_prime_power;
use congruent_theta::elliptic::{count_points_fp, Curve, CurveModP, FrobeniusData};
use congruent_theta::quadform::{representation_count, theta_series, CongruentForm};
use congruent_theta::verify::{manifest_hash, run_suite, SuiteConfig};
use congruent_theta::{Error, FourierSeries};
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotConstructible = 3,
    BadReduction = 4,
    Domain = 5,
    Unsupported = 6,
    NoDecomposition = 7,
    /// The value exists but does not fit the output type.
    Overflow = 8,
    /// A coefficient past the truncation was requested.
    Unknown = 9,
    Panic = 10,
}

/// Opaque truncated q-series.
pub struct CtSeries(FourierSeries);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> CtStatus {
    match e {
        Error::NotConstructible { .. } => CtStatus::NotConstructible,
        Error::BadReduction(_) => CtStatus::BadReduction,
        Error::Domain(_) | Error::LatticeMismatch(_) | Error::DivisionByZero => CtStatus::Domain,
        Error::Unsupported(_) | Error::UnsupportedRoot(_) => CtStatus::Unsupported,
        Error::NoDecomposition { .. } | Error::RankDeficient { .. } => CtStatus::NoDecomposition,
        Error::InvalidInput(_) | Error::UnknownSuite(_) => CtStatus::InvalidArgument,
    }
}

fn fail(status: CtStatus, msg: impl Into<String>) -> CtStatus {
    set_error(msg);
    status
}

/// Runs `f`, converting library errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), CtStatus>) -> CtStatus {
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CtStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(CtStatus::Panic, "internal panic"),
    }
}

fn lib<T>(r: congruent_theta::Result<T>) -> Result<T, CtStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Message for the last failing call on this thread, empty after a success.
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn ct_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
///
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ct_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Frees a series handle. Null is ignored.
///
/// # Safety
///
/// `series` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ct_series_free(series: *mut CtSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Theta series of `x1^2 + x2^2 + x3^2 + x4^2` with all `x_i = residue mod
/// modulus`, known below `q^terms`.
///
/// # Safety
///
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn ct_theta_series(residue: i64, modulus: u64, terms: u64, out: *mut *mut CtSeries) -> CtStatus {
    if out.is_null() {
        return fail(CtStatus::NullPointer, "out is null");
    }
    guard(|| {
        let form = lib(CongruentForm::sum_of_four_squares(residue, modulus))?;
        *out = Box::into_raw(Box::new(CtSeries(theta_series(&form, terms))));
        Ok(())
    })
}

/// Expansion of the `index`-th (0-based) labelled basis element of level
/// `p^k`, known below `q^terms`.
///
/// # Safety
///
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn ct_basis_element(
    p: u64,
    k: u32,
    index: usize,
    terms: u64,
    out: *mut *mut CtSeries,
) -> CtStatus {
    if out.is_null() {
        return fail(CtStatus::NullPointer, "out is null");
    }
    guard(|| {
        let basis = lib(basis_gamma0_prime_power(p, k))?;
        let Some(e) = basis.get(index) else {
            return Err(fail(
                CtStatus::InvalidArgument,
                format!("index {index} out of range, basis has {} elements", basis.len()),
            ));
        };
        *out = Box::into_raw(Box::new(CtSeries(lib(e.expansion(terms))?)));
        Ok(())
    })
}

/// Number of labelled basis elements at level `p^k`.
///
/// # Safety
///
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn ct_basis_size(p: u64, k: u32, out: *mut usize) -> CtStatus {
    if out.is_null() {
        return fail(CtStatus::NullPointer, "out is null");
    }
    guard(|| {
        *out = lib(basis_gamma0_prime_power(p, k))?.len();
        Ok(())
    })
}

/// Coefficient of `q^n` as a reduced fraction `num / den`, `den > 0`.
/// Fails with `Unknown` at or past the truncation, `Domain` for an
/// irrational coefficient and `Overflow` if either part exceeds 64 bits.
///
/// # Safety
///
/// `series` must be a live handle; `num` and `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_series_coefficient(
    series: *const CtSeries,
    n: i64,
    num: *mut i64,
    den: *mut i64,
) -> CtStatus {
    if series.is_null() || num.is_null() || den.is_null() {
        return fail(CtStatus::NullPointer, "null argument");
    }
    let s = &(*series).0;
    guard(|| {
        let c = s.coeff(n).ok_or_else(|| fail(CtStatus::Unknown, format!("q^{n} is at or past the truncation")))?;
        let r =
            c.to_rational().ok_or_else(|| fail(CtStatus::Domain, format!("coefficient of q^{n} is not rational")))?;
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => {
                *num = a;
                *den = b;
                Ok(())
            }
            _ => Err(fail(CtStatus::Overflow, format!("coefficient {r} does not fit in 64 bits"))),
        }
    })
}

/// Exponents below this bound are known. Returns 0 for a fractional bound.
///
/// # Safety
///
/// `series` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ct_series_truncation(series: *const CtSeries) -> u64 {
    if series.is_null() {
        return 0;
    }
    let t = (*series).0.trunc();
    if t.is_integer() {
        t.to_integer().to_u64().unwrap_or(0)
    } else {
        0
    }
}

/// JSON form of the series. Free the result with [`ct_string_free`].
///
/// # Safety
///
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_series_to_json(series: *const CtSeries, out: *mut *mut c_char) -> CtStatus {
    if series.is_null() || out.is_null() {
        return fail(CtStatus::NullPointer, "null argument");
    }
    let s = &(*series).0;
    guard(|| {
        *out = into_c_string(s.to_json().to_string());
        Ok(())
    })
}

/// Representation count of `n` by the congruent form with even Gram
/// matrix `gram` (16 entries, row-major) and `x_i = residues[i] mod
/// moduli[i]`.
///
/// # Safety
///
/// `gram` must point to 16 values, `residues` and `moduli` to 4 each, and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_representation_count(
    gram: *const i64,
    residues: *const i64,
    moduli: *const u64,
    n: u64,
    out: *mut u64,
) -> CtStatus {
    if gram.is_null() || residues.is_null() || moduli.is_null() || out.is_null() {
        return fail(CtStatus::NullPointer, "null argument");
    }
    let g = std::slice::from_raw_parts(gram, 16);
    let r: [i64; 4] = std::slice::from_raw_parts(residues, 4).try_into().expect("length 4");
    let m: [u64; 4] = std::slice::from_raw_parts(moduli, 4).try_into().expect("length 4");
    guard(|| {
        let mut matrix = [[0i64; 4]; 4];
        for (i, v) in g.iter().enumerate() {
            matrix[i / 4][i % 4] = *v;
        }
        let form = lib(CongruentForm::new(matrix, r, m))?;
        *out = representation_count(&form, n);
        Ok(())
    })
}

/// Points over `F_p` (with infinity) and the trace `a_p = p + 1 - N_p(1)`
/// of `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
///
/// # Safety
///
/// `coeffs` must point to 5 values `a1, a2, a3, a4, a6`; `points` and
/// `trace` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_curve_points(coeffs: *const i64, p: u64, points: *mut u64, trace: *mut i64) -> CtStatus {
    if coeffs.is_null() || points.is_null() || trace.is_null() {
        return fail(CtStatus::NullPointer, "null argument");
    }
    let a = std::slice::from_raw_parts(coeffs, 5);
    guard(|| {
        let curve = lib(CurveModP::new(Curve::new(a[0], a[1], a[2], a[3], a[4]), p))?;
        *points = count_points_fp(&curve);
        *trace = FrobeniusData::from_curve(&curve).a_p;
        Ok(())
    })
}

/// `N_p(k)` from the Frobenius recursion, as a decimal string. Free the
/// result with [`ct_string_free`].
///
/// # Safety
///
/// `coeffs` must point to 5 values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_curve_points_extension(
    coeffs: *const i64,
    p: u64,
    k: u32,
    out: *mut *mut c_char,
) -> CtStatus {
    if coeffs.is_null() || out.is_null() {
        return fail(CtStatus::NullPointer, "null argument");
    }
    if k == 0 {
        return fail(CtStatus::InvalidArgument, "k must be at least 1");
    }
    let a = std::slice::from_raw_parts(coeffs, 5);
    guard(|| {
        let curve = lib(CurveModP::new(Curve::new(a[0], a[1], a[2], a[3], a[4]), p))?;
        *out = into_c_string(FrobeniusData::from_curve(&curve).point_count_pk(k).to_string());
        Ok(())
    })
}

/// Runs a verification suite. `bound` 0 keeps the suite default. Writes the
/// JSON report to `out` and whether every case passed to `passed`.
///
/// # Safety
///
/// `name` must be a nul-terminated string; `out` and `passed` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ct_verify_suite(
    name: *const c_char,
    bound: u64,
    out: *mut *mut c_char,
    passed: *mut bool,
) -> CtStatus {
    if name.is_null() || out.is_null() || passed.is_null() {
        return fail(CtStatus::NullPointer, "null argument");
    }
    let Ok(name) = CStr::from_ptr(name).to_str() else {
        return fail(CtStatus::InvalidArgument, "suite name is not UTF-8");
    };
    guard(|| {
        let config = SuiteConfig { bound: (bound > 0).then_some(bound) };
        let report = lib(run_suite(name, &config))?;
        *passed = report.is_pass();
        *out = into_c_string(report.to_json().to_string());
        Ok(())
    })
}

/// Hex SHA-256 of the suite manifest. Free with [`ct_string_free`].
#[no_mangle]
pub extern "C" fn ct_manifest_hash() -> *mut c_char {
    into_c_string(manifest_hash())
}

/// Library version; static, do not free.
#[no_mangle]
pub extern "C" fn ct_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
