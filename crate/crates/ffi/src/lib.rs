//! C ABI over `orbitstar`.
//!
//! Polynomials cross the boundary as canonical strings. Handles are opaque;
//! every function returns an [`OrbStatus`] and leaves a message for
//! [`orb_last_error_message`] on failure. Strings handed out by this library
//! must be released with [`orb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use orbitstar::cpoly::{kirillov_bracket, sum_of_squares};
use orbitstar::lie::{AlgebraFile, LieAlgebraSpec};
use orbitstar::orbit::{CasimirSpec, OrbitAlgebra, SpherePoly};
use orbitstar::parse::{parse_cpoly, parse_hscalar};
use orbitstar::{EnvelopingAlgebra, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbStatus {
    Ok = 0,
    NullPointer = 1,
    Utf8 = 2,
    Parse = 3,
    Invalid = 4,
    Panic = 5,
}

/// A Lie algebra together with its enveloping algebra U_h.
pub struct OrbAlgebra {
    alg: LieAlgebraSpec,
    env: Arc<EnvelopingAlgebra>,
}

/// The sphere orbit x² + y² + z² = c(h) over an su(2)-type algebra.
pub struct OrbOrbit {
    orbit: OrbitAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

enum Failure {
    Null(&'static str),
    Utf8(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn status_of(f: Failure) -> OrbStatus {
    match f {
        Failure::Null(what) => {
            set_error(format!("null pointer passed as `{what}`"));
            OrbStatus::NullPointer
        }
        Failure::Utf8(what) => {
            set_error(format!("`{what}` is not valid UTF-8"));
            OrbStatus::Utf8
        }
        Failure::Lib(e) => {
            let status = match e {
                Error::Syntax { .. } | Error::UnknownVariable { .. } | Error::Json(_) => OrbStatus::Parse,
                _ => OrbStatus::Invalid,
            };
            set_error(e.to_string());
            status
        }
    }
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> OrbStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => OrbStatus::Ok,
        Ok(Err(f)) => status_of(f),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            OrbStatus::Panic
        }
    }
}

unsafe fn text<'a>(ptr: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| Failure::Utf8(what))
}

unsafe fn handle<'a, T>(ptr: *const T, what: &'static str) -> Result<&'a T, Failure> {
    ptr.as_ref().ok_or(Failure::Null(what))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    *out = CString::new(s).unwrap_or_default().into_raw();
    Ok(())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn algebra(alg: LieAlgebraSpec) -> Result<OrbAlgebra, Failure> {
    let env = Arc::new(EnvelopingAlgebra::new(Arc::new(alg.clone()))?);
    Ok(OrbAlgebra { alg, env })
}

/// Message for the most recent failure on this thread, or NULL.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn orb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned through an `out` parameter. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn orb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds su(2) with the bracket {x, y} = z and cyclic.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn orb_algebra_su2(out: *mut *mut OrbAlgebra) -> OrbStatus {
    guard(|| write_handle(out, algebra(LieAlgebraSpec::su2())?))
}

/// Builds an algebra from the JSON file format (`names`, `brackets`).
/// Fails with `ORB_STATUS_INVALID` if the constants violate Jacobi.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn orb_algebra_from_json(json: *const c_char, out: *mut *mut OrbAlgebra) -> OrbStatus {
    guard(|| {
        let file = AlgebraFile::parse(text(json, "json")?)?;
        let alg = LieAlgebraSpec::new(file.names, &file.brackets)?;
        write_handle(out, algebra(alg)?)
    })
}

/// # Safety
/// `alg` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn orb_algebra_free(alg: *mut OrbAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Kirillov bracket {f, g}.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn orb_bracket(
    alg: *const OrbAlgebra,
    f: *const c_char,
    g: *const c_char,
    out: *mut *mut c_char,
) -> OrbStatus {
    guard(|| {
        let a = handle(alg, "alg")?;
        let f = parse_cpoly(text(f, "f")?, &a.alg)?;
        let g = parse_cpoly(text(g, "g")?, &a.alg)?;
        write_string(out, kirillov_bracket(&f, &g, &a.alg).to_canonical(a.alg.names()))
    })
}

/// Weyl-ordered product f ⋆_S g.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn orb_star_s(
    alg: *const OrbAlgebra,
    f: *const c_char,
    g: *const c_char,
    out: *mut *mut c_char,
) -> OrbStatus {
    guard(|| {
        let a = handle(alg, "alg")?;
        let f = parse_cpoly(text(f, "f")?, &a.alg)?;
        let g = parse_cpoly(text(g, "g")?, &a.alg)?;
        write_string(out, a.env.star_s(&f, &g).to_canonical(a.alg.names()))
    })
}

/// Symmetrization W(f), printed in PBW normal form over the upper-case generators.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn orb_weyl(alg: *const OrbAlgebra, f: *const c_char, out: *mut *mut c_char) -> OrbStatus {
    guard(|| {
        let a = handle(alg, "alg")?;
        let f = parse_cpoly(text(f, "f")?, &a.alg)?;
        write_string(out, a.env.print(&a.env.weyl_map(&f)))
    })
}

/// W⁻¹ of an element of U_h written in the upper-case generators, e.g. `Y*X`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn orb_weyl_inverse(
    alg: *const OrbAlgebra,
    a: *const c_char,
    out: *mut *mut c_char,
) -> OrbStatus {
    guard(|| {
        let h = handle(alg, "alg")?;
        let el = h.env.parse(text(a, "a")?)?;
        write_string(out, h.env.weyl_inverse(&el).to_canonical(h.alg.names()))
    })
}

/// Orbit x² + y² + z² = c(h), with `level` a polynomial in `h` such as `1 + 1/2*h`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn orb_orbit_new(
    alg: *const OrbAlgebra,
    level: *const c_char,
    out: *mut *mut OrbOrbit,
) -> OrbStatus {
    guard(|| {
        let a = handle(alg, "alg")?;
        let c = parse_hscalar(text(level, "level")?, &Default::default())?;
        let c0 = c.constant_term();
        let spec = CasimirSpec::new(&a.env, sum_of_squares(a.alg.dim()), c, c0)?;
        let orbit = OrbitAlgebra::new(a.env.clone(), spec)?;
        write_handle(out, OrbOrbit { orbit })
    })
}

/// # Safety
/// `orbit` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn orb_orbit_free(orbit: *mut OrbOrbit) {
    if !orbit.is_null() {
        drop(Box::from_raw(orbit));
    }
}

/// Tangential product f ⋆_P g.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn orb_star_p(
    orbit: *const OrbOrbit,
    f: *const c_char,
    g: *const c_char,
    out: *mut *mut c_char,
) -> OrbStatus {
    guard(|| {
        let o = &handle(orbit, "orbit")?.orbit;
        let alg = o.env().algebra();
        let f = parse_cpoly(text(f, "f")?, alg)?;
        let g = parse_cpoly(text(g, "g")?, alg)?;
        write_string(out, o.star_p(&f, &g).to_canonical(alg.names()))
    })
}

/// Quotient product on the sphere basis. Inputs with z-degree ≥ 2 in any
/// term are rejected with `ORB_STATUS_INVALID`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn orb_star_quotient(
    orbit: *const OrbOrbit,
    f: *const c_char,
    g: *const c_char,
    out: *mut *mut c_char,
) -> OrbStatus {
    guard(|| {
        let o = &handle(orbit, "orbit")?.orbit;
        let alg = o.env().algebra();
        let f = SpherePoly::new(parse_cpoly(text(f, "f")?, alg)?)?;
        let g = SpherePoly::new(parse_cpoly(text(g, "g")?, alg)?)?;
        write_string(out, o.star_quotient(&f, &g).into_cpoly().to_canonical(alg.names()))
    })
}
