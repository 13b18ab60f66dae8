//! C ABI for `lapinv`.
//!
//! Every function returns a [`LapinvStatus`]; on failure a message is kept
//! per thread and can be copied out with [`lapinv_last_error_message`].
//! Plans and BEM models are opaque handles released with their `_free`
//! function. Panics never cross the boundary.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, c_void};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use lapinv::algorithms::stehfest_weights;
use lapinv::bem::{discretize_rectangle, BemImage, SideConditions};
use lapinv::specfun::bessel_k01;
use lapinv::{
    invert_all, plan_samples, Complex64, Error, Flags, InversionMethodParams, Method, SamplePlan, SampleSet,
    SamplingStrategy, TimeGrid,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LapinvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidStrategy = 3,
    BufferTooSmall = 4,
    PlanMismatch = 5,
    ImageError = 6,
    Singular = 7,
    OutsideDomain = 8,
    Panic = 9,
    Other = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LapinvMethod {
    Stehfest = 0,
    Schapery = 1,
    Weeks = 2,
    Talbot = 3,
    DeHoog = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LapinvStrategy {
    PerTime = 0,
    PerLogCycle = 1,
    Global = 2,
}

/// A sample at this time used a non-finite image value.
pub const LAPINV_FLAG_NON_FINITE_SAMPLE: u32 = 1 << 0;
/// Talbot contour integrand did not decay, or overflowed.
pub const LAPINV_FLAG_CONTOUR_OVERFLOW: u32 = 1 << 1;
/// Time precedes the declared delay.
pub const LAPINV_FLAG_UNDEFINED_BEFORE_DELAY: u32 = 1 << 2;
/// de Hoog fell back to direct summation.
pub const LAPINV_FLAG_QD_BREAKDOWN: u32 = 1 << 3;
/// Schapery node matrix is numerically singular.
pub const LAPINV_FLAG_ILL_CONDITIONED: u32 = 1 << 4;
/// Weeks prefactor or Laguerre sum overflowed.
pub const LAPINV_FLAG_PREFACTOR_OVERFLOW: u32 = 1 << 5;

/// Free parameters. NaN in `delay` or `talbot_r` means "not set".
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct LapinvOptions {
    pub sigma: f64,
    pub steady_state: f64,
    pub delay: f64,
    pub dehoog_tolerance: f64,
    pub dehoog_period_factor: f64,
    pub talbot_r: f64,
}

/// Image callback: writes `f̄(re + i·im)` and returns `LAPINV_STATUS_OK`.
pub type LapinvImageFn = Option<
    unsafe extern "C" fn(re: f64, im: f64, user: *mut c_void, out_re: *mut f64, out_im: *mut f64) -> LapinvStatus,
>;

/// Opaque inversion plan.
pub struct LapinvPlan {
    plan: SamplePlan,
    grid: TimeGrid,
    params: InversionMethodParams,
}

/// Opaque boundary-element model of the benchmark rectangle.
pub struct LapinvBem {
    model: BemImage<fn(Complex64) -> Complex64>,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(err: &Error) -> LapinvStatus {
    match err {
        Error::InvalidArgument(_) | Error::Config { .. } | Error::SingularInput => LapinvStatus::InvalidArgument,
        Error::InvalidStrategy { .. } => LapinvStatus::InvalidStrategy,
        Error::PlanMismatch(_) | Error::ComplexSample { .. } => LapinvStatus::PlanMismatch,
        Error::Image { .. } => LapinvStatus::ImageError,
        Error::Singular { .. } | Error::Quadrature { .. } => LapinvStatus::Singular,
        Error::OutsideDomain { .. } => LapinvStatus::OutsideDomain,
        _ => LapinvStatus::Other,
    }
}

struct Fail(LapinvStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(LapinvStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> LapinvStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => LapinvStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LapinvStatus::Panic
        }
    }
}

unsafe fn input<'a, T>(p: *const T, n: usize, what: &str) -> Result<&'a [T], Fail> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, n))
}

unsafe fn output<'a, T>(p: *mut T, n: usize, what: &str) -> Result<&'a mut [T], Fail> {
    if n == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts_mut(p, n))
}

fn capacity(needed: usize, got: usize, what: &str) -> Result<(), Fail> {
    if got < needed {
        return Err(Fail(LapinvStatus::BufferTooSmall, format!("{what} holds {got} values, {needed} needed")));
    }
    Ok(())
}

fn method_of(m: LapinvMethod) -> Method {
    match m {
        LapinvMethod::Stehfest => Method::Stehfest,
        LapinvMethod::Schapery => Method::Schapery,
        LapinvMethod::Weeks => Method::Weeks,
        LapinvMethod::Talbot => Method::Talbot,
        LapinvMethod::DeHoog => Method::DeHoog,
    }
}

fn strategy_of(s: LapinvStrategy) -> SamplingStrategy {
    match s {
        LapinvStrategy::PerTime => SamplingStrategy::PerTimeOptimal,
        LapinvStrategy::PerLogCycle => SamplingStrategy::SharedPerLogCycle,
        LapinvStrategy::Global => SamplingStrategy::SharedGlobal,
    }
}

fn params_of(o: &LapinvOptions) -> InversionMethodParams {
    InversionMethodParams {
        sigma: o.sigma,
        delay: (!o.delay.is_nan()).then_some(o.delay),
        steady_state: o.steady_state,
        dehoog_tolerance: o.dehoog_tolerance,
        dehoog_period_factor: o.dehoog_period_factor,
        talbot_r: (!o.talbot_r.is_nan()).then_some(o.talbot_r),
        ..InversionMethodParams::default()
    }
}

/// Rule-of-thumb options: σ = 0, no delay, `f_s` = 0.
#[no_mangle]
pub extern "C" fn lapinv_default_options() -> LapinvOptions {
    let d = InversionMethodParams::default();
    LapinvOptions {
        sigma: d.sigma,
        steady_state: d.steady_state,
        delay: f64::NAN,
        dehoog_tolerance: d.dehoog_tolerance,
        dehoog_period_factor: d.dehoog_period_factor,
        talbot_r: f64::NAN,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lapinv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `cap`). Returns the full message length without the NUL.
#[no_mangle]
pub unsafe extern "C" fn lapinv_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && cap > 0 {
            let n = msg.len().min(cap - 1);
            ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Plans the image samples needed to invert `times` (strictly increasing).
/// `options` may be null for the defaults.
#[no_mangle]
pub unsafe extern "C" fn lapinv_plan_new(
    method: LapinvMethod,
    strategy: LapinvStrategy,
    terms: usize,
    times: *const f64,
    n_times: usize,
    options: *const LapinvOptions,
    out: *mut *mut LapinvPlan,
) -> LapinvStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let times = input(times, n_times, "times")?.to_vec();
        let options = if options.is_null() { lapinv_default_options() } else { *options };
        let params = params_of(&options);
        let grid = TimeGrid::from_times(times)?;
        let plan = plan_samples(method_of(method), &grid, terms, strategy_of(strategy), &params)?;
        *out = Box::into_raw(Box::new(LapinvPlan { plan, grid, params }));
        Ok(())
    })
}

/// Releases a plan. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lapinv_plan_free(plan: *mut LapinvPlan) {
    if !plan.is_null() {
        drop(Box::from_raw(plan));
    }
}

/// Number of distinct image evaluations the plan needs.
#[no_mangle]
pub unsafe extern "C" fn lapinv_plan_len(plan: *const LapinvPlan, out: *mut usize) -> LapinvStatus {
    guard(|| {
        let plan = plan.as_ref().ok_or_else(|| null("plan"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = plan.plan.len();
        Ok(())
    })
}

/// Raw sample count before deduplication.
#[no_mangle]
pub unsafe extern "C" fn lapinv_plan_requested(plan: *const LapinvPlan, out: *mut usize) -> LapinvStatus {
    guard(|| {
        let plan = plan.as_ref().ok_or_else(|| null("plan"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = plan.plan.requested;
        Ok(())
    })
}

/// Writes the Laplace parameters to evaluate; both buffers hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn lapinv_plan_points(
    plan: *const LapinvPlan,
    re: *mut f64,
    im: *mut f64,
    cap: usize,
) -> LapinvStatus {
    guard(|| {
        let plan = plan.as_ref().ok_or_else(|| null("plan"))?;
        let n = plan.plan.len();
        capacity(n, cap, "point buffer")?;
        let re = output(re, n, "re")?;
        let im = output(im, n, "im")?;
        for (k, p) in plan.plan.points.iter().enumerate() {
            re[k] = p.re;
            im[k] = p.im;
        }
        Ok(())
    })
}

fn finish(
    plan: &LapinvPlan,
    values: Vec<Complex64>,
    out_values: &mut [f64],
    out_flags: Option<&mut [u32]>,
) -> Result<(), Fail> {
    let samples = SampleSet::from_values(plan.plan.clone(), values)?;
    let result = invert_all(plan.plan.method, &samples, &plan.grid, &plan.params)?;
    out_values.copy_from_slice(&result.values);
    if let Some(flags) = out_flags {
        for (o, f) in flags.iter_mut().zip(&result.flags) {
            *o = (*f & !Flags::INACCURATE).bits();
        }
    }
    Ok(())
}

/// Inverts from image values at [`lapinv_plan_points`] (`n_values` = plan length).
/// Writes one value per planned time; `out_flags` may be null.
#[no_mangle]
pub unsafe extern "C" fn lapinv_plan_invert(
    plan: *const LapinvPlan,
    values_re: *const f64,
    values_im: *const f64,
    n_values: usize,
    out_values: *mut f64,
    out_flags: *mut u32,
    n_times: usize,
) -> LapinvStatus {
    guard(|| {
        let plan = plan.as_ref().ok_or_else(|| null("plan"))?;
        let re = input(values_re, n_values, "values_re")?;
        let im = input(values_im, n_values, "values_im")?;
        let nt = plan.grid.len();
        capacity(nt, n_times, "output buffer")?;
        let values = re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect();
        let out_values = output(out_values, nt, "out_values")?;
        let flags = if out_flags.is_null() { None } else { Some(output(out_flags, nt, "out_flags")?) };
        finish(plan, values, out_values, flags)
    })
}

/// Plans, evaluates `image` sequentially on the calling thread, and inverts.
#[no_mangle]
pub unsafe extern "C" fn lapinv_invert(
    method: LapinvMethod,
    strategy: LapinvStrategy,
    terms: usize,
    times: *const f64,
    n_times: usize,
    options: *const LapinvOptions,
    image: LapinvImageFn,
    user: *mut c_void,
    out_values: *mut f64,
    out_flags: *mut u32,
) -> LapinvStatus {
    let mut plan = ptr::null_mut();
    let status = lapinv_plan_new(method, strategy, terms, times, n_times, options, &mut plan);
    if status != LapinvStatus::Ok {
        return status;
    }
    let status = guard(|| {
        let plan = &*plan;
        let image = image.ok_or_else(|| null("image"))?;
        let mut values = Vec::with_capacity(plan.plan.len());
        for p in &plan.plan.points {
            let (mut re, mut im) = (f64::NAN, f64::NAN);
            let s = image(p.re, p.im, user, &mut re, &mut im);
            if s != LapinvStatus::Ok {
                return Err(Fail(LapinvStatus::ImageError, format!("image callback failed at p = {p}")));
            }
            values.push(Complex64::new(re, im));
        }
        let nt = plan.grid.len();
        let out_values = output(out_values, nt, "out_values")?;
        let flags = if out_flags.is_null() { None } else { Some(output(out_flags, nt, "out_flags")?) };
        finish(plan, values, out_values, flags)
    });
    lapinv_plan_free(plan);
    status
}

/// Gaver-Stehfest weights `V_1..V_n` for even `n`.
#[no_mangle]
pub unsafe extern "C" fn lapinv_stehfest_weights(n: usize, out: *mut f64, cap: usize) -> LapinvStatus {
    guard(|| {
        let w = stehfest_weights(n)?;
        capacity(w.len(), cap, "weight buffer")?;
        output(out, w.len(), "out")?.copy_from_slice(&w);
        Ok(())
    })
}

/// `K0(z)` and `K1(z)` as `[re K0, im K0, re K1, im K1]`.
#[no_mangle]
pub unsafe extern "C" fn lapinv_bessel_k01(re: f64, im: f64, out: *mut f64) -> LapinvStatus {
    guard(|| {
        let out = output(out, 4, "out")?;
        let k = bessel_k01(Complex64::new(re, im))?;
        out.copy_from_slice(&[k.k0.re, k.k0.im, k.k1.re, k.k1.im]);
        Ok(())
    })
}

fn unit(_: Complex64) -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// BEM model of the 3 × 2 benchmark rectangle observed at `(x, y)`.
/// Boundary data carry a unit time factor; multiply by the time image.
#[no_mangle]
pub unsafe extern "C" fn lapinv_bem_new(
    n_per_unit: usize,
    diffusivity: f64,
    x: f64,
    y: f64,
    out: *mut *mut LapinvBem,
) -> LapinvStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let mesh = discretize_rectangle(3.0, 2.0, n_per_unit, &SideConditions::benchmark())?;
        let model = BemImage::new(mesh, diffusivity, [x, y], unit as fn(Complex64) -> Complex64)?;
        *out = Box::into_raw(Box::new(LapinvBem { model }));
        Ok(())
    })
}

/// Potential and x-flux at `p` as `[re φ̄, im φ̄, re q̄x, im q̄x]`.
#[no_mangle]
pub unsafe extern "C" fn lapinv_bem_eval(bem: *const LapinvBem, re: f64, im: f64, out: *mut f64) -> LapinvStatus {
    guard(|| {
        let bem = bem.as_ref().ok_or_else(|| null("bem"))?;
        let out = output(out, 4, "out")?;
        let v = bem.model.solve(Complex64::new(re, im))?;
        let flux = -v.gradient[0];
        out.copy_from_slice(&[v.potential.re, v.potential.im, flux.re, flux.im]);
        Ok(())
    })
}

/// Releases a BEM model. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lapinv_bem_free(bem: *mut LapinvBem) {
    if !bem.is_null() {
        drop(Box::from_raw(bem));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_constants_match_core() {
        assert_eq!(LAPINV_FLAG_NON_FINITE_SAMPLE, Flags::NON_FINITE_SAMPLE.bits());
        assert_eq!(LAPINV_FLAG_CONTOUR_OVERFLOW, Flags::CONTOUR_OVERFLOW.bits());
        assert_eq!(LAPINV_FLAG_UNDEFINED_BEFORE_DELAY, Flags::UNDEFINED_BEFORE_DELAY.bits());
        assert_eq!(LAPINV_FLAG_QD_BREAKDOWN, Flags::QD_BREAKDOWN.bits());
        assert_eq!(LAPINV_FLAG_ILL_CONDITIONED, Flags::ILL_CONDITIONED.bits());
        assert_eq!(LAPINV_FLAG_PREFACTOR_OVERFLOW, Flags::PREFACTOR_OVERFLOW.bits());
    }

    #[test]
    fn error_message_truncates() {
        set_error("abcdef");
        let mut buf = [1 as c_char; 4];
        let n = unsafe { lapinv_last_error_message(buf.as_mut_ptr(), buf.len()) };
        assert_eq!(n, 6);
        assert_eq!(buf, [b'a' as c_char, b'b' as c_char, b'c' as c_char, 0]);
    }
}
