//! C interface to `opineq`.
//!
//! Every fallible function returns an [`OpineqStatus`]; on failure the message
//! is available from [`opineq_last_error`] on the same thread. Objects are
//! opaque handles owned by the caller and released with the matching `_free`
//! function. Matrices cross the boundary as row-major `double` arrays.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use opineq::ineq::{run_example_suite, Checker, DerivativeRoute};
use opineq::{
    apply_fn, loewner_leq, Error, IneqReport, OperatorFunction, QuadratureRule, SymMatrix,
    TheoremId, WeightFunction,
};

/// Result codes. `OPINEQ_STATUS_OK` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpineqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NonFinite = 4,
    NoConvergence = 5,
    OutOfDomain = 6,
    NotPositiveDefinite = 7,
    HypothesisNotMet = 8,
    InvalidWeight = 9,
    Io = 10,
    OutOfRange = 11,
    Panic = 12,
}

impl From<&Error> for OpineqStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::DimensionMismatch { .. } | Error::BadShape { .. } => {
                OpineqStatus::DimensionMismatch
            }
            Error::NonFinite { .. } => OpineqStatus::NonFinite,
            Error::EigenNoConvergence { .. } => OpineqStatus::NoConvergence,
            Error::SpectrumOutOfDomain { .. } => OpineqStatus::OutOfDomain,
            Error::ParameterOutOfRange { .. } => OpineqStatus::OutOfRange,
            Error::NotPositiveDefinite => OpineqStatus::NotPositiveDefinite,
            Error::NotDifferentiable(_)
            | Error::UnsupportedConvexity { .. }
            | Error::Hypothesis(_) => OpineqStatus::HypothesisNotMet,
            Error::InvalidWeight(_) | Error::NegativeWeight { .. } => OpineqStatus::InvalidWeight,
            Error::InvalidSpec(_) => OpineqStatus::InvalidArgument,
            Error::Io { .. } => OpineqStatus::Io,
        }
    }
}

/// Real symmetric matrix.
pub struct OpineqMatrix {
    inner: SymMatrix,
}

/// Outcome of one inequality check.
pub struct OpineqReport {
    inner: IneqReport,
    label: CString,
    instance: CString,
}

/// Reports returned by the example suite.
pub struct OpineqReportList {
    items: Vec<OpineqReport>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(OpineqStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(OpineqStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(OpineqStatus::NullPointer, format!("{what} is null"))
}

fn guard<F>(body: F) -> OpineqStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            OpineqStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside opineq");
            OpineqStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    // SAFETY: the caller guarantees `p` is null or a live handle from this library.
    unsafe { p.as_ref() }.ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    // SAFETY: the caller guarantees a nul-terminated string.
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|_| {
        Failure(
            OpineqStatus::InvalidArgument,
            format!("{what} is not valid UTF-8"),
        )
    })
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    // SAFETY: non-null and the caller guarantees it is writable.
    unsafe { out.write(value) };
    Ok(())
}

fn boxed_matrix(m: SymMatrix) -> *mut OpineqMatrix {
    Box::into_raw(Box::new(OpineqMatrix { inner: m }))
}

fn wrap_report(r: IneqReport) -> OpineqReport {
    let clean = |s: &str| CString::new(s.replace('\0', " ")).expect("interior nuls removed");
    OpineqReport {
        label: clean(&r.label),
        instance: clean(&r.instance),
        inner: r,
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn opineq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn opineq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a `dim x dim` matrix from `dim * dim` row-major entries; the
/// input is symmetrized.
///
/// # Safety
/// `data` must point to `dim * dim` doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opineq_matrix_new(
    dim: usize,
    data: *const f64,
    out: *mut *mut OpineqMatrix,
) -> OpineqStatus {
    guard(|| {
        if data.is_null() {
            return Err(null("data"));
        }
        let len = dim.checked_mul(dim).ok_or_else(|| {
            Failure(
                OpineqStatus::InvalidArgument,
                format!("dimension {dim} too large"),
            )
        })?;
        // SAFETY: the caller guarantees `len` readable doubles.
        let values = unsafe { std::slice::from_raw_parts(data, len) }.to_vec();
        let m = SymMatrix::new(dim, values)?;
        unsafe { write_out(out, boxed_matrix(m), "out") }
    })
}

/// # Safety
/// `m` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn opineq_matrix_free(m: *mut OpineqMatrix) {
    if !m.is_null() {
        // SAFETY: allocated by `Box::into_raw` in this library.
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Dimension of `m`, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn opineq_matrix_dim(m: *const OpineqMatrix) -> usize {
    unsafe { m.as_ref() }.map_or(0, |m| m.inner.dim())
}

/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn opineq_matrix_get(
    m: *const OpineqMatrix,
    row: usize,
    col: usize,
    out: *mut f64,
) -> OpineqStatus {
    guard(|| {
        let m = unsafe { borrow(m, "matrix") }?;
        let n = m.inner.dim();
        if row >= n || col >= n {
            return Err(Failure(
                OpineqStatus::OutOfRange,
                format!("index ({row}, {col}) outside a {n}x{n} matrix"),
            ));
        }
        unsafe { write_out(out, m.inner.get(row, col), "out") }
    })
}

/// Copies the row-major entries into `buf`, which must hold `dim * dim` doubles.
///
/// # Safety
/// `buf` must be writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn opineq_matrix_copy(
    m: *const OpineqMatrix,
    buf: *mut f64,
    len: usize,
) -> OpineqStatus {
    guard(|| {
        let m = unsafe { borrow(m, "matrix") }?;
        let src = m.inner.as_slice();
        if buf.is_null() {
            return Err(null("buf"));
        }
        if len < src.len() {
            return Err(Failure(
                OpineqStatus::OutOfRange,
                format!("buffer holds {len} values, {} needed", src.len()),
            ));
        }
        // SAFETY: checked length; regions cannot overlap since `src` is owned here.
        unsafe { ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len()) };
        Ok(())
    })
}

/// `f(m)` for a function spec such as `"power:1.5"`, `"log"` or `"neg:square"`.
///
/// # Safety
/// `fn_spec` must be a nul-terminated string, `m` a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn opineq_apply_fn(
    fn_spec: *const c_char,
    m: *const OpineqMatrix,
    out: *mut *mut OpineqMatrix,
) -> OpineqStatus {
    guard(|| {
        let f: OperatorFunction = unsafe { text(fn_spec, "fn_spec") }?.parse()?;
        let m = unsafe { borrow(m, "matrix") }?;
        let value = apply_fn(&f, &m.inner)?;
        unsafe { write_out(out, boxed_matrix(value), "out") }
    })
}

/// Loewner comparison `x <= y`. A `tol_scale` of zero or less uses the default.
///
/// # Safety
/// `x`, `y` live handles; `holds` and `min_eig` writable or null.
#[no_mangle]
pub unsafe extern "C" fn opineq_loewner_leq(
    x: *const OpineqMatrix,
    y: *const OpineqMatrix,
    tol_scale: f64,
    holds: *mut c_int,
    min_eig: *mut f64,
) -> OpineqStatus {
    guard(|| {
        let x = unsafe { borrow(x, "x") }?;
        let y = unsafe { borrow(y, "y") }?;
        let tol = if tol_scale > 0.0 {
            tol_scale
        } else {
            opineq::matcore::DEFAULT_TOL_SCALE
        };
        let v = loewner_leq(&x.inner, &y.inner, tol)?;
        unsafe { write_out(holds, v.holds as c_int, "holds") }?;
        if !min_eig.is_null() {
            unsafe { write_out(min_eig, v.min_eig_of_difference, "min_eig") }?;
        }
        Ok(())
    })
}

fn rule_of(points: usize, panels: usize) -> Result<QuadratureRule, Failure> {
    if points == 0 && panels == 0 {
        Ok(QuadratureRule::default())
    } else {
        Ok(QuadratureRule::new(points, panels)?)
    }
}

/// Runs one checker on the segment from `a` to `b`.
///
/// `theorem_id` is one of `hermite_hadamard`, `fejer`, `levin_steckin`,
/// `ostrowski_reverse`, `gateaux_reverse`, `cebysev_reverse`,
/// `lupas_reverse`. `weight_spec` may be null for `hermite_hadamard`.
/// `points = panels = 0` selects the default 16x32 rule.
///
/// # Safety
/// String arguments must be nul-terminated, handles live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn opineq_check(
    theorem_id: *const c_char,
    fn_spec: *const c_char,
    weight_spec: *const c_char,
    a: *const OpineqMatrix,
    b: *const OpineqMatrix,
    points: usize,
    panels: usize,
    out: *mut *mut OpineqReport,
) -> OpineqStatus {
    guard(|| {
        let id = unsafe { text(theorem_id, "theorem_id") }?;
        let theorem = TheoremId::parse(id).ok_or_else(|| {
            Failure(
                OpineqStatus::InvalidArgument,
                format!("unknown theorem id '{id}'"),
            )
        })?;
        let f: OperatorFunction = unsafe { text(fn_spec, "fn_spec") }?.parse()?;
        let weight = || -> Result<WeightFunction, Failure> {
            Ok(unsafe { text(weight_spec, "weight_spec") }?.parse()?)
        };
        let a = unsafe { borrow(a, "a") }?;
        let b = unsafe { borrow(b, "b") }?;
        let checker = Checker::new(rule_of(points, panels)?);
        let path = checker.prepare(&f, &a.inner, &b.inner)?;
        let dk = DerivativeRoute::DaleckiiKrein;
        let report = match theorem {
            TheoremId::HermiteHadamard => checker.hermite_hadamard(&path)?,
            TheoremId::Fejer => checker.fejer(&path, &weight()?)?,
            TheoremId::LevinSteckin => checker.levin_steckin(&path, &weight()?)?,
            TheoremId::OstrowskiReverse => checker.ostrowski_reverse(&path, &weight()?)?,
            TheoremId::GateauxReverse => checker.gateaux_reverse(&path, &weight()?, dk)?,
            TheoremId::CebysevReverse => checker.cebysev_reverse(&path, &weight()?, dk)?,
            TheoremId::LupasReverse => checker.lupas_reverse(&path, &weight()?)?,
            TheoremId::SegmentMonotonicity => {
                return Err(Failure(
                    OpineqStatus::InvalidArgument,
                    "segment_monotonicity does not produce a gap/bound report".into(),
                ))
            }
        };
        unsafe { write_out(out, Box::into_raw(Box::new(wrap_report(report))), "out") }
    })
}

/// # Safety
/// `r` must be null or a report handle not yet freed. Reports borrowed from a
/// list must not be passed here.
#[no_mangle]
pub unsafe extern "C" fn opineq_report_free(r: *mut OpineqReport) {
    if !r.is_null() {
        // SAFETY: allocated by `Box::into_raw` in `opineq_check`.
        drop(unsafe { Box::from_raw(r) });
    }
}

/// 1 when `0 <= gap <= bound` (and any further links) hold, 0 otherwise or for null.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn opineq_report_passed(r: *const OpineqReport) -> c_int {
    unsafe { r.as_ref() }.is_some_and(|r| r.inner.pass()) as c_int
}

/// Smallest eigenvalue margin over the chain; NaN for null.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn opineq_report_worst_margin(r: *const OpineqReport) -> f64 {
    unsafe { r.as_ref() }.map_or(f64::NAN, |r| r.inner.worst_margin())
}

/// `lambda_max(gap) / lambda_max(bound)`, NaN when undefined.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn opineq_report_tightness(r: *const OpineqReport) -> f64 {
    unsafe { r.as_ref() }
        .and_then(|r| r.inner.tightness)
        .unwrap_or(f64::NAN)
}

/// Scalar prefactor of the bound; NaN for null.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn opineq_report_coefficient(r: *const OpineqReport) -> f64 {
    unsafe { r.as_ref() }.map_or(f64::NAN, |r| r.inner.coefficient)
}

/// Static theorem id string, or null for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn opineq_report_theorem(r: *const OpineqReport) -> *const c_char {
    match unsafe { r.as_ref() }.map(|r| r.inner.theorem) {
        Some(t) => {
            let s: &'static CStr = match t {
                TheoremId::HermiteHadamard => c"hermite_hadamard",
                TheoremId::Fejer => c"fejer",
                TheoremId::LevinSteckin => c"levin_steckin",
                TheoremId::OstrowskiReverse => c"ostrowski_reverse",
                TheoremId::GateauxReverse => c"gateaux_reverse",
                TheoremId::CebysevReverse => c"cebysev_reverse",
                TheoremId::LupasReverse => c"lupas_reverse",
                TheoremId::SegmentMonotonicity => c"segment_monotonicity",
            };
            s.as_ptr()
        }
        None => ptr::null(),
    }
}

/// Label string, valid while the report lives.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn opineq_report_label(r: *const OpineqReport) -> *const c_char {
    unsafe { r.as_ref() }.map_or(ptr::null(), |r| r.label.as_ptr())
}

/// Instance description, valid while the report lives.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn opineq_report_instance(r: *const OpineqReport) -> *const c_char {
    unsafe { r.as_ref() }.map_or(ptr::null(), |r| r.instance.as_ptr())
}

/// New matrix handle holding the gap operator.
///
/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn opineq_report_gap(
    r: *const OpineqReport,
    out: *mut *mut OpineqMatrix,
) -> OpineqStatus {
    guard(|| {
        let r = unsafe { borrow(r, "report") }?;
        unsafe { write_out(out, boxed_matrix(r.inner.gap.clone()), "out") }
    })
}

/// New matrix handle holding the bound operator.
///
/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn opineq_report_bound(
    r: *const OpineqReport,
    out: *mut *mut OpineqMatrix,
) -> OpineqStatus {
    guard(|| {
        let r = unsafe { borrow(r, "report") }?;
        unsafe { write_out(out, boxed_matrix(r.inner.bound.clone()), "out") }
    })
}

/// Runs the worked examples (powers, inverse, logarithm with `p(t) = t(1-t)`)
/// on positive definite `a`, `b`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn opineq_run_example_suite(
    a: *const OpineqMatrix,
    b: *const OpineqMatrix,
    points: usize,
    panels: usize,
    out: *mut *mut OpineqReportList,
) -> OpineqStatus {
    guard(|| {
        let a = unsafe { borrow(a, "a") }?;
        let b = unsafe { borrow(b, "b") }?;
        let reports = run_example_suite(&a.inner, &b.inner, &rule_of(points, panels)?)?;
        let list = OpineqReportList {
            items: reports.into_iter().map(wrap_report).collect(),
        };
        unsafe { write_out(out, Box::into_raw(Box::new(list)), "out") }
    })
}

/// # Safety
/// `list` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn opineq_report_list_len(list: *const OpineqReportList) -> usize {
    unsafe { list.as_ref() }.map_or(0, |l| l.items.len())
}

/// Borrowed report at `index`, null when out of range. Valid while the list lives.
///
/// # Safety
/// `list` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn opineq_report_list_get(
    list: *const OpineqReportList,
    index: usize,
) -> *const OpineqReport {
    unsafe { list.as_ref() }
        .and_then(|l| l.items.get(index))
        .map_or(ptr::null(), |r| r as *const OpineqReport)
}

/// # Safety
/// `list` must be null or a live handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn opineq_report_list_free(list: *mut OpineqReportList) {
    if !list.is_null() {
        // SAFETY: allocated by `Box::into_raw` in `opineq_run_example_suite`.
        drop(unsafe { Box::from_raw(list) });
    }
}
