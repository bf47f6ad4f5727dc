//! C ABI over the `lattice-area` engines.
//!
//! Every fallible call returns an [`LaStatus`]; on failure a message is kept
//! per thread and can be read with [`la_last_error_message`]. Distributions
//! are handed out as opaque [`LaDistribution`] pointers owned by the caller
//! and released with [`la_distribution_free`]. Strings returned as
//! `char *` must be released with [`la_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lattice_area::{asymptotics, dp, spectral, walk, AreaDistribution, Error, RationalFlux};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BudgetExceeded = 3,
    Inconsistent = 4,
    Numerical = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Opaque exact area distribution.
pub struct LaDistribution {
    inner: AreaDistribution,
    areas: Vec<i64>,
}

impl LaDistribution {
    fn boxed(inner: AreaDistribution) -> *mut LaDistribution {
        let areas = inner.counts().keys().copied().collect();
        Box::into_raw(Box::new(LaDistribution { inner, areas }))
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> LaStatus {
    match e {
        Error::OddLength(_) | Error::NotClosed(_) | Error::InvalidFlux { .. } | Error::Parse(_) => {
            LaStatus::InvalidArgument
        }
        Error::Budget { .. } => LaStatus::BudgetExceeded,
        Error::Inconsistent(_) | Error::Calibration { .. } | Error::RoundingResidue { .. } => {
            LaStatus::Inconsistent
        }
        Error::Eigen { .. } | Error::ImaginaryResidue { .. } | Error::Quadrature(_) => {
            LaStatus::Numerical
        }
        Error::Io(_) => LaStatus::InvalidArgument,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), LaStatus>) -> LaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LaStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside lattice-area");
            LaStatus::Panic
        }
    }
}

fn fail(e: Error) -> LaStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

fn null(what: &str) -> LaStatus {
    set_error(format!("null pointer: {what}"));
    LaStatus::NullPointer
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), LaStatus> {
    if out.is_null() {
        return Err(null(what));
    }
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn dist_ref<'a>(d: *const LaDistribution) -> Result<&'a LaDistribution, LaStatus> {
    unsafe { d.as_ref() }.ok_or_else(|| null("distribution"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn la_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn la_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The phase constant `c` of the trace identity built into this library.
#[no_mangle]
pub extern "C" fn la_phase_constant() -> u32 {
    spectral::PHASE_CONSTANT
}

fn counts_with(
    n: u32,
    out: *mut *mut LaDistribution,
    engine: fn(u32) -> lattice_area::Result<AreaDistribution>,
) -> LaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let d = engine(n).map_err(fail)?;
        d.validate().map_err(fail)?;
        unsafe { out.write(LaDistribution::boxed(d)) };
        Ok(())
    })
}

/// Exact counts by direct enumeration (`N <= 14`).
#[no_mangle]
pub unsafe extern "C" fn la_enumerate_counts(n: u32, out: *mut *mut LaDistribution) -> LaStatus {
    counts_with(n, out, walk::enumerate_counts)
}

/// Exact counts by dynamic programming.
#[no_mangle]
pub unsafe extern "C" fn la_dp_counts(n: u32, out: *mut *mut LaDistribution) -> LaStatus {
    counts_with(n, out, dp::dp_counts)
}

/// Exact counts recovered from Harper-operator traces (`N <= 24`).
#[no_mangle]
pub unsafe extern "C" fn la_invert_counts(n: u32, out: *mut *mut LaDistribution) -> LaStatus {
    counts_with(n, out, spectral::invert_counts)
}

/// Parses the canonical JSON form.
#[no_mangle]
pub unsafe extern "C" fn la_distribution_from_json(
    json: *const c_char,
    out: *mut *mut LaDistribution,
) -> LaStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = unsafe { CStr::from_ptr(json) }
            .to_str()
            .map_err(|_| fail(Error::Parse("input is not UTF-8".into())))?;
        let d = AreaDistribution::from_json(text).map_err(fail)?;
        unsafe { out.write(LaDistribution::boxed(d)) };
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn la_distribution_free(d: *mut LaDistribution) {
    if !d.is_null() {
        drop(unsafe { Box::from_raw(d) });
    }
}

/// Walk length, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn la_distribution_n(d: *const LaDistribution) -> u32 {
    unsafe { d.as_ref() }.map_or(0, |d| d.inner.n())
}

/// Number of areas with a nonzero count, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn la_distribution_len(d: *const LaDistribution) -> usize {
    unsafe { d.as_ref() }.map_or(0, |d| d.areas.len())
}

/// Area of the `index`-th entry, in increasing order.
#[no_mangle]
pub unsafe extern "C" fn la_distribution_area_at(
    d: *const LaDistribution,
    index: usize,
    out_area: *mut i64,
) -> LaStatus {
    guard(|| {
        let d = unsafe { dist_ref(d) }?;
        let Some(&a) = d.areas.get(index) else {
            return Err(fail(Error::Parse(format!("index {index} out of range"))));
        };
        unsafe { write_out(out_area, a, "out_area") }
    })
}

/// Decimal count for `area` (0 when absent), NUL-terminated into `buf`.
///
/// `out_needed` (optional) receives the required buffer size including the
/// terminator; `LA_STATUS_BUFFER_TOO_SMALL` is returned when `buf_len` is
/// short.
#[no_mangle]
pub unsafe extern "C" fn la_distribution_count(
    d: *const LaDistribution,
    area: i64,
    buf: *mut c_char,
    buf_len: usize,
    out_needed: *mut usize,
) -> LaStatus {
    guard(|| {
        let d = unsafe { dist_ref(d) }?;
        let text = d.inner.count(area).to_string();
        let needed = text.len() + 1;
        if !out_needed.is_null() {
            unsafe { out_needed.write(needed) };
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        if buf_len < needed {
            set_error(format!("buffer of {buf_len} bytes, need {needed}"));
            return Err(LaStatus::BufferTooSmall);
        }
        unsafe {
            ptr::copy_nonoverlapping(text.as_ptr().cast::<c_char>(), buf, text.len());
            buf.add(text.len()).write(0);
        }
        Ok(())
    })
}

/// Total number of closed walks as a decimal string; free with [`la_string_free`].
#[no_mangle]
pub unsafe extern "C" fn la_distribution_total(d: *const LaDistribution) -> *mut c_char {
    unsafe { d.as_ref() }.map_or(ptr::null_mut(), |d| {
        into_c_string(d.inner.total().to_string())
    })
}

/// `C(N, A) / Ω_N` for one area.
#[no_mangle]
pub unsafe extern "C" fn la_distribution_probability(
    d: *const LaDistribution,
    area: i64,
    out: *mut f64,
) -> LaStatus {
    guard(|| {
        let d = unsafe { dist_ref(d) }?;
        let p = d
            .inner
            .probabilities()
            .into_iter()
            .find(|&(a, _)| a == area)
            .map_or(0.0, |(_, p)| p);
        unsafe { write_out(out, p, "out") }
    })
}

/// Canonical JSON; free with [`la_string_free`].
#[no_mangle]
pub unsafe extern "C" fn la_distribution_to_json(d: *const LaDistribution) -> *mut c_char {
    unsafe { d.as_ref() }.map_or(ptr::null_mut(), |d| into_c_string(d.inner.to_json()))
}

/// `area,count` CSV; free with [`la_string_free`].
#[no_mangle]
pub unsafe extern "C" fn la_distribution_to_csv(d: *const LaDistribution) -> *mut c_char {
    unsafe { d.as_ref() }.map_or(ptr::null_mut(), |d| into_c_string(d.inner.to_csv()))
}

#[no_mangle]
pub unsafe extern "C" fn la_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Trace per unit area of `H^N` at flux `p/q`.
#[no_mangle]
pub unsafe extern "C" fn la_trace_power(
    n: u32,
    p: u64,
    q: u64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> LaStatus {
    guard(|| {
        if out_re.is_null() || out_im.is_null() {
            return Err(null("out_re/out_im"));
        }
        let flux = RationalFlux::new(p, q).map_err(fail)?;
        let t = spectral::trace_power(n, flux).map_err(fail)?;
        unsafe {
            out_re.write(t.value.re);
            out_im.write(t.value.im);
        }
        Ok(())
    })
}

/// Re-runs the phase calibration and writes the fitted constant.
#[no_mangle]
pub unsafe extern "C" fn la_calibrate_phase(out_constant: *mut u32) -> LaStatus {
    guard(|| {
        let cal = spectral::calibrate_phase().map_err(fail)?;
        unsafe { write_out(out_constant, cal.constant, "out_constant") }
    })
}

/// `Ω_N / (4^{N+1}/(2πN))`.
#[no_mangle]
pub unsafe extern "C" fn la_omega_ratio(n: u32, out: *mut f64) -> LaStatus {
    guard(|| {
        let r = asymptotics::omega_ratio(n).map_err(fail)?;
        unsafe { write_out(out, r, "out") }
    })
}

#[no_mangle]
pub extern "C" fn la_characteristic_limit(x: f64) -> f64 {
    asymptotics::characteristic_limit(x)
}

#[no_mangle]
pub unsafe extern "C" fn la_characteristic_corrected(n: u32, x: f64, out: *mut f64) -> LaStatus {
    guard(|| {
        let v = asymptotics::characteristic_corrected(n, x).map_err(fail)?;
        unsafe { write_out(out, v, "out") }
    })
}

#[no_mangle]
pub extern "C" fn la_density_limit(a: f64) -> f64 {
    asymptotics::density_limit(a)
}

#[no_mangle]
pub unsafe extern "C" fn la_density_corrected(n: u32, a: f64, out: *mut f64) -> LaStatus {
    guard(|| {
        let v = asymptotics::density_corrected(n, a).map_err(fail)?;
        unsafe { write_out(out, v, "out") }
    })
}
