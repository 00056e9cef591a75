use std::cell::RefCell;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{Bound, PowerSeries};
use crate::error::{Error, Result};

/// Truncation order used by the verification runs.
pub const DEFAULT_ORDER: usize = 256;

/// Relative error allowance per sample for FFT and sample evaluation,
/// in units of `ε · (log2 M + 16)`.
const ROUNDING_FACTOR: f64 = 64.0;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Sampling circle for coefficients that will be weighted by `r_eval^n`:
/// `max(0.5, (1 + r_eval)/2)`, capped at 0.98.
pub fn sampling_radius(r_eval: f64) -> f64 {
    (0.5 * (1.0 + r_eval)).clamp(0.5, 0.98)
}

/// Smallest power of two `≥ 8 (order + 1)`.
pub fn default_sample_count(order: usize) -> usize {
    (8 * (order + 1)).next_power_of_two()
}

/// Taylor coefficients `a_0..a_order` of `f` from `samples` equispaced values
/// on `|z| = rho` (discretized Cauchy integral evaluated with an FFT).
///
/// `bound` describes how large `f` can be: `Bound::Sup(B)` for a function
/// bounded by `B` on the disk, `Bound::Envelope { scale, radius }` for one
/// bounded by `scale` on `|z| = radius`. It must hold strictly outside the
/// sampling circle, and it becomes the tail bound of the returned series.
///
/// Each returned coefficient carries an error bound combining the aliasing
/// term `Σ_{l≥1} a_{n+lM} ρ^{lM}` and floating-point rounding amplified by
/// `ρ^{-n}`.
pub fn extract_coefficients<F>(
    f: F,
    order: usize,
    rho: f64,
    samples: usize,
    bound: Bound,
) -> Result<PowerSeries>
where
    F: Fn(Complex64) -> Complex64,
{
    if !samples.is_power_of_two() {
        return Err(Error::config(format!(
            "sample count {samples} is not a power of two"
        )));
    }
    if samples < 8 * (order + 1) {
        return Err(Error::config(format!(
            "sample count {samples} is below 8 (N + 1) = {} for order {order}",
            8 * (order + 1)
        )));
    }
    let radius = bound.radius();
    if !(rho > 0.0 && rho < radius) {
        return Err(Error::domain(format!(
            "sampling radius {rho} must lie in (0, {radius})"
        )));
    }

    let step = TAU / samples as f64;
    let mut buf: Vec<Complex64> = (0..samples)
        .map(|j| f(Complex64::from_polar(rho, step * j as f64)))
        .collect();
    if buf.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::numeric("function returned a non-finite sample"));
    }
    let max_sample = buf.iter().map(|v| v.norm()).fold(0.0, f64::max);

    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(samples).process(&mut buf));

    let (scale, _) = bound.scale_radius();
    let q = (rho / radius).powi(samples as i32);
    let alias = scale * q / (1.0 - q);
    let rounding = ROUNDING_FACTOR * ((samples as f64).log2() + 16.0) * f64::EPSILON * max_sample;

    let inv_m = 1.0 / samples as f64;
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut errors = Vec::with_capacity(order + 1);
    let mut inv_rho_n = 1.0;
    let mut inv_radius_n = 1.0;
    for x in buf.iter().take(order + 1) {
        coeffs.push(x * (inv_m * inv_rho_n));
        errors.push(alias * inv_radius_n + rounding * inv_rho_n);
        inv_rho_n /= rho;
        inv_radius_n /= radius;
    }
    PowerSeries::new(coeffs)?
        .with_errors(errors)?
        .with_bound(bound)
}
