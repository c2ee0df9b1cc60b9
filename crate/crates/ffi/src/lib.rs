//! C ABI over `cliffgrad`.
//!
//! Objects are opaque handles created by `*_new`/`*_from_*` functions and
//! released with the matching `*_free`. Every call returns a [`CgStatus`];
//! on failure [`cg_last_error_message`] describes the most recent error on
//! the calling thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cliffgrad::ga::{det_via_quotient, Multivector, VecN};
use cliffgrad::lab::{estimate_gradient, secant_estimate};
use cliffgrad::{Error, ScalarField, Simplex};

/// Result code of every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CgStatus {
    Ok = 0,
    NullPointer = 1,
    Dimension = 2,
    Degenerate = 3,
    Domain = 4,
    Parse = 5,
    Shape = 6,
    Config = 7,
    BufferTooSmall = 8,
    InvalidUtf8 = 9,
    Panic = 10,
}

/// Opaque multivector of `Cl(n,0,0)`.
pub struct CgMultivector(Multivector);
/// Opaque scalar field.
pub struct CgField(ScalarField);
/// Opaque simplex.
pub struct CgSimplex(Simplex);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(e: &Error) -> CgStatus {
    match e {
        Error::DimensionMismatch { .. } | Error::UnsupportedDimension(_) => CgStatus::Dimension,
        Error::DegenerateInput(_) | Error::DegenerateSimplex { .. } | Error::GradeResidual { .. } => {
            CgStatus::Degenerate
        }
        Error::Domain { .. } | Error::MissingSample(_) => CgStatus::Domain,
        Error::Syntax { .. } | Error::UnknownIdentifier { .. } => CgStatus::Parse,
        Error::Shape(_) | Error::IndexOutOfRange { .. } | Error::IncompleteSample(_) => CgStatus::Shape,
        Error::Config(_) => CgStatus::Config,
    }
}

struct Fail(CgStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CgStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            CgStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(CgStatus::NullPointer, format!("null pointer: {what}"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn slice<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn copy_out(src: &[f64], out: *mut f64, len: usize) -> Result<(), Fail> {
    if len < src.len() {
        return Err(Fail(
            CgStatus::BufferTooSmall,
            format!("buffer holds {len} values, {} needed", src.len()),
        ));
    }
    if out.is_null() {
        return Err(null("output buffer"));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), out, src.len());
    Ok(())
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(CgStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn put_handle<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(Box::into_raw(Box::new(v)));
    Ok(())
}

/// Copy the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length plus one.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn cg_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len() + 1
    })
}

/// NUL-terminated library version; static storage.
#[no_mangle]
pub extern "C" fn cg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Basis blade `coeff · e_mask` of `Cl(dim)`.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn cg_mv_basis_blade(
    dim: usize,
    mask: usize,
    coeff: f64,
    out: *mut *mut CgMultivector,
) -> CgStatus {
    guard(|| {
        let mv = Multivector::basis_blade(dim, mask, coeff)?;
        put_handle(out, CgMultivector(mv))
    })
}

/// Multivector from all `2^dim` coefficients in bitmask order.
///
/// # Safety
/// `coeffs` must point to `len` doubles; `out` to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn cg_mv_from_coeffs(
    dim: usize,
    coeffs: *const f64,
    len: usize,
    out: *mut *mut CgMultivector,
) -> CgStatus {
    guard(|| {
        let c = slice(coeffs, len, "coeffs")?.to_vec();
        let mv = Multivector::from_coeffs(dim, c)?;
        put_handle(out, CgMultivector(mv))
    })
}

/// Grade-1 multivector from `dim` components.
///
/// # Safety
/// `v` must point to `dim` doubles; `out` to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn cg_mv_from_vector(
    v: *const f64,
    dim: usize,
    out: *mut *mut CgMultivector,
) -> CgStatus {
    guard(|| {
        let mv = Multivector::from_vector(&VecN::new(slice(v, dim, "v")?.to_vec()))?;
        put_handle(out, CgMultivector(mv))
    })
}

#[derive(Clone, Copy)]
enum BinOp {
    Geometric,
    Wedge,
    Add,
    Sub,
}

unsafe fn mv_binary(
    a: *const CgMultivector,
    b: *const CgMultivector,
    out: *mut *mut CgMultivector,
    op: BinOp,
) -> CgStatus {
    guard(|| {
        let (a, b) = (&deref(a, "a")?.0, &deref(b, "b")?.0);
        let r = match op {
            BinOp::Geometric => a.geometric_product(b)?,
            BinOp::Wedge => a.wedge(b)?,
            BinOp::Add => a.try_add(b)?,
            BinOp::Sub => a.try_sub(b)?,
        };
        put_handle(out, CgMultivector(r))
    })
}

/// `a b`, a new handle.
///
/// # Safety
/// `a`, `b` must be live handles; `out` a handle slot.
#[no_mangle]
pub unsafe extern "C" fn cg_mv_geometric_product(
    a: *const CgMultivector,
    b: *const CgMultivector,
    out: *mut *mut CgMultivector,
) -> CgStatus {
    mv_binary(a, b, out, BinOp::Geometric)
}

/// `a ∧ b`, a new handle.
///
/// # Safety
/// As [`cg_mv_geometric_product`].
#[no_mangle]
pub unsafe extern "C" fn cg_mv_wedge(
    a: *const CgMultivector,
    b: *const CgMultivector,
    out: *mut *mut CgMultivector,
) -> CgStatus {
    mv_binary(a, b, out, BinOp::Wedge)
}

/// `a + b`, a new handle.
///
/// # Safety
/// As [`cg_mv_geometric_product`].
#[no_mangle]
pub unsafe extern "C" fn cg_mv_add(
    a: *const CgMultivector,
    b: *const CgMultivector,
    out: *mut *mut CgMultivector,
) -> CgStatus {
    mv_binary(a, b, out, BinOp::Add)
}

/// `a − b`, a new handle.
///
/// # Safety
/// As [`cg_mv_geometric_product`].
#[no_mangle]
pub unsafe extern "C" fn cg_mv_sub(
    a: *const CgMultivector,
    b: *const CgMultivector,
    out: *mut *mut CgMultivector,
) -> CgStatus {
    mv_binary(a, b, out, BinOp::Sub)
}

/// Dimension `n` of the algebra the multivector lives in.
///
/// # Safety
/// `mv` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cg_mv_dim(mv: *const CgMultivector, out: *mut usize) -> CgStatus {
    guard(|| write_out(out, deref(mv, "mv")?.0.dim(), "out"))
}

/// Copy the `2^n` coefficients into `buf`.
///
/// # Safety
/// `mv` must be a live handle; `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn cg_mv_coeffs(mv: *const CgMultivector, buf: *mut f64, len: usize) -> CgStatus {
    guard(|| copy_out(deref(mv, "mv")?.0.coeffs(), buf, len))
}

/// Release a multivector. Null is ignored.
///
/// # Safety
/// `mv` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cg_mv_free(mv: *mut CgMultivector) {
    if !mv.is_null() {
        drop(Box::from_raw(mv));
    }
}

/// Field from a spec string (builtin name or expression). `dim = 0` lets
/// builtins choose their own dimension.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` a handle slot.
#[no_mangle]
pub unsafe extern "C" fn cg_field_from_spec(
    spec: *const c_char,
    dim: usize,
    out: *mut *mut CgField,
) -> CgStatus {
    guard(|| {
        let spec = c_str(spec, "spec")?;
        let f = ScalarField::from_spec(spec, (dim > 0).then_some(dim))?;
        put_handle(out, CgField(f))
    })
}

/// # Safety
/// `field` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cg_field_dim(field: *const CgField, out: *mut usize) -> CgStatus {
    guard(|| write_out(out, deref(field, "field")?.0.dim(), "out"))
}

/// `f(x)`.
///
/// # Safety
/// `field` must be a live handle, `x` must hold `dim` doubles, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cg_field_eval(
    field: *const CgField,
    x: *const f64,
    dim: usize,
    out: *mut f64,
) -> CgStatus {
    guard(|| {
        let v = deref(field, "field")?.0.eval(&VecN::new(slice(x, dim, "x")?.to_vec()))?;
        write_out(out, v, "out")
    })
}

/// # Safety
/// `field` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cg_field_free(field: *mut CgField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Simplex in `E_dim` from `(dim+1)·dim` row-major vertex coordinates.
/// Flat simplices are accepted; check [`cg_simplex_is_degenerate`].
///
/// # Safety
/// `coords` must hold `(dim+1)·dim` doubles; `out` a handle slot.
#[no_mangle]
pub unsafe extern "C" fn cg_simplex_new(
    coords: *const f64,
    dim: usize,
    out: *mut *mut CgSimplex,
) -> CgStatus {
    guard(|| {
        if dim == 0 {
            return Err(Fail(CgStatus::Dimension, "dimension must be positive".into()));
        }
        let c = slice(coords, (dim + 1) * dim, "coords")?;
        let s = Simplex::new(c.chunks(dim).map(|r| VecN::new(r.to_vec())).collect())?;
        put_handle(out, CgSimplex(s))
    })
}

/// Oriented volume `τ_n`.
///
/// # Safety
/// `s` must be a live handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cg_simplex_tau(s: *const CgSimplex, out: *mut f64) -> CgStatus {
    guard(|| write_out(out, deref(s, "simplex")?.0.tau(), "out"))
}

/// Writes 1 for degenerate, 0 otherwise.
///
/// # Safety
/// `s` must be a live handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cg_simplex_is_degenerate(s: *const CgSimplex, out: *mut i32) -> CgStatus {
    guard(|| write_out(out, deref(s, "simplex")?.0.is_degenerate() as i32, "out"))
}

/// # Safety
/// `s` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cg_simplex_free(s: *mut CgSimplex) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Mirrored mean ratio `r̄_f` on `s`, written to `grad[0..n]`. The number of
/// field evaluations goes to `evaluations` when it is not null.
///
/// # Safety
/// Handles must be live; `grad` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn cg_estimate_gradient(
    field: *const CgField,
    s: *const CgSimplex,
    grad: *mut f64,
    len: usize,
    evaluations: *mut usize,
) -> CgStatus {
    guard(|| {
        let est = estimate_gradient(&deref(field, "field")?.0, &deref(s, "simplex")?.0)?;
        copy_out(est.value.components(), grad, len)?;
        if !evaluations.is_null() {
            evaluations.write(est.evaluations);
        }
        Ok(())
    })
}

/// Secant ratio `r_f` from the vertex values only.
///
/// # Safety
/// Handles must be live; `grad` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn cg_secant_ratio(
    field: *const CgField,
    s: *const CgSimplex,
    grad: *mut f64,
    len: usize,
) -> CgStatus {
    guard(|| {
        let r = secant_estimate(&deref(field, "field")?.0, &deref(s, "simplex")?.0)?;
        copy_out(r.components(), grad, len)
    })
}

/// Determinant of a `k×k` row-major matrix via the Clifford quotient.
///
/// # Safety
/// `rows` must hold `k·k` doubles; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cg_det_via_quotient(rows: *const f64, k: usize, out: *mut f64) -> CgStatus {
    guard(|| {
        if k == 0 {
            return Err(Fail(CgStatus::Dimension, "matrix size must be positive".into()));
        }
        let m = slice(rows, k * k, "rows")?;
        let d = det_via_quotient(&m.chunks(k).map(|r| VecN::new(r.to_vec())).collect::<Vec<_>>())?;
        write_out(out, d, "out")
    })
}
