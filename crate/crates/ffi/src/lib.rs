//! C ABI over the specgap toolkit.
//!
//! Models are opaque handles created by `sg_model_new` and released by
//! `sg_model_free`. Every fallible call returns an `SgStatus`; on failure the
//! message is kept per thread and read back with `sg_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use specgap::analysis::moments;
use specgap::bounds::{main_theorem_bracket, weighted_comparison};
use specgap::catalog::{make_family, reference_gap, Family, FamilyModel, FamilySpec, Scope, WeightChoice};
use specgap::eigen::{spectral_gap, GridSpec};
use specgap::Error;

/// Opaque model handle.
pub struct SgModel {
    model: FamilyModel,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgStatus {
    Ok = 0,
    InvalidInput = 1,
    NonIntegrable = 2,
    DomainError = 3,
    HypothesisFailed = 4,
    DiscretizationError = 5,
    ConvergenceError = 6,
    DegenerateFunction = 7,
    NullPointer = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgFamily {
    Gaussian = 0,
    ExpPower = 1,
    Ball = 2,
    Cauchy = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgWeight {
    /// σ² = 1.
    Unit = 0,
    /// σ² = 1 + r².
    OnePlusR2 = 1,
    /// σ² = 1/(1 + r²).
    InvOnePlusR2 = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgScope {
    Radial = 0,
    Full = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SgBracket {
    pub lower: f64,
    pub upper: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SgGap {
    pub value: f64,
    pub error_estimate: f64,
    pub n_cells_used: usize,
    /// Nonzero when the value was extrapolated in the window length.
    pub window_extrapolated: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SgStatus {
    match e {
        Error::InvalidInput(_) => SgStatus::InvalidInput,
        Error::NonIntegrable(_) => SgStatus::NonIntegrable,
        Error::DomainError(_) => SgStatus::DomainError,
        Error::HypothesisFailed(_) => SgStatus::HypothesisFailed,
        Error::DiscretizationError(_) => SgStatus::DiscretizationError,
        Error::ConvergenceError(_) => SgStatus::ConvergenceError,
        Error::DegenerateFunction(_) => SgStatus::DegenerateFunction,
    }
}

fn fail(status: SgStatus, msg: &str) -> SgStatus {
    set_error(msg.to_string());
    status
}

/// Run `f`, mapping library errors and panics to status codes.
fn guard<F: FnOnce() -> Result<(), SgStatus>>(f: F) -> SgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SgStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(SgStatus::Panic, &format!("panic: {msg}"))
        }
    }
}

fn lift<T>(r: specgap::Result<T>) -> Result<T, SgStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

unsafe fn model_ref<'a>(m: *const SgModel) -> Result<&'a FamilyModel, SgStatus> {
    // SAFETY: the caller passes a handle from sg_model_new or null
    unsafe { m.as_ref() }.map(|m| &m.model).ok_or_else(|| fail(SgStatus::NullPointer, "null model handle"))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), SgStatus> {
    if out.is_null() {
        return Err(fail(SgStatus::NullPointer, "null output pointer"));
    }
    // SAFETY: non-null and, per the contract, valid for writes
    unsafe { out.write(v) };
    Ok(())
}

/// Build a model. `param` is α for the exponential power family and β for
/// the Cauchy family; it is ignored otherwise.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_model_new(
    family: SgFamily,
    param: f64,
    n: u32,
    weight: SgWeight,
    out: *mut *mut SgModel,
) -> SgStatus {
    guard(|| {
        let family = match family {
            SgFamily::Gaussian => Family::Gaussian,
            SgFamily::ExpPower => Family::ExpPower { alpha: param },
            SgFamily::Ball => Family::Ball,
            SgFamily::Cauchy => Family::Cauchy { beta: param },
        };
        let weight = match weight {
            SgWeight::Unit => WeightChoice::Unit,
            SgWeight::OnePlusR2 => WeightChoice::OnePlusR2,
            SgWeight::InvOnePlusR2 => WeightChoice::InvOnePlusR2,
        };
        let model = lift(make_family(&FamilySpec::new(family, n, weight)))?;
        unsafe { write(out, Box::into_raw(Box::new(SgModel { model }))) }
    })
}

/// Release a model; null is accepted.
///
/// # Safety
/// `m` must come from `sg_model_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sg_model_free(m: *mut SgModel) {
    if !m.is_null() {
        // SAFETY: ownership returns from the caller
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Radial spectral gap from the Sturm–Liouville solver; `n_cells` = 0 selects
/// the default mesh.
///
/// # Safety
/// `m` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sg_spectral_gap(m: *const SgModel, n_cells: usize, out: *mut SgGap) -> SgStatus {
    guard(|| {
        let model = unsafe { model_ref(m) }?;
        let grid = if n_cells == 0 { GridSpec::default() } else { GridSpec::with_cells(n_cells) };
        lift(grid.validate())?;
        let g = lift(spectral_gap(&model.measure, &model.weight, &grid))?;
        let v = SgGap {
            value: g.value,
            error_estimate: g.error_estimate,
            n_cells_used: g.n_cells_used,
            window_extrapolated: i32::from(g.window_extrapolated),
        };
        unsafe { write(out, v) }
    })
}

/// ∫r^k dν.
///
/// # Safety
/// `m` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sg_moment(m: *const SgModel, k: u32, out: *mut f64) -> SgStatus {
    guard(|| {
        let model = unsafe { model_ref(m) }?;
        let v = lift(model.measure.moment(k))?;
        unsafe { write(out, v) }
    })
}

/// [(n-1)/m2, n/m2].
///
/// # Safety
/// `m` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sg_main_theorem_bracket(m: *const SgModel, out: *mut SgBracket) -> SgStatus {
    guard(|| {
        let model = unsafe { model_ref(m) }?;
        let m2 = lift(model.measure.moment(2))?;
        let b = lift(main_theorem_bracket(model.spec.n, m2))?;
        unsafe { write(out, SgBracket { lower: b.lower, upper: b.upper }) }
    })
}

/// Full-space bracket from a radial gap and the weighted moments of the model.
///
/// # Safety
/// `m` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sg_weighted_comparison(m: *const SgModel, radial_gap: f64, out: *mut SgBracket) -> SgStatus {
    guard(|| {
        let model = unsafe { model_ref(m) }?;
        let mo = lift(moments(model))?;
        let (Some(a), Some(b), Some(m2)) = (mo.r2_over_s2, mo.s2, mo.m2) else {
            return Err(fail(SgStatus::NonIntegrable, "weighted moments are not finite"));
        };
        let br = lift(weighted_comparison(radial_gap, model.spec.n, a, b, m2))?;
        unsafe { write(out, SgBracket { lower: br.lower, upper: br.upper }) }
    })
}

/// Tabulated reference value or bracket; exact values have lower = upper and
/// unknown ends are 0 and +inf.
///
/// # Safety
/// `m` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sg_reference_gap(m: *const SgModel, scope: SgScope, out: *mut SgBracket) -> SgStatus {
    guard(|| {
        let model = unsafe { model_ref(m) }?;
        let scope = match scope {
            SgScope::Radial => Scope::Radial,
            SgScope::Full => Scope::Full,
        };
        let r = lift(reference_gap(&model.spec, scope))?;
        unsafe { write(out, SgBracket { lower: r.lower, upper: r.upper }) }
    })
}

/// Copy the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length without the NUL, or
/// 0 when there is no error.
///
/// # Safety
/// `buf` must be valid for `len` bytes or null.
#[no_mangle]
pub unsafe extern "C" fn sg_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let k = bytes.len().min(len - 1);
            // SAFETY: buf holds len bytes and k < len
            unsafe {
                ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, k);
                *buf.add(k) = 0;
            }
        }
        bytes.len()
    })
}

/// Clear the last error of this thread.
#[no_mangle]
pub extern "C" fn sg_clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}
