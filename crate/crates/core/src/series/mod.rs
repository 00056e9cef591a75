//! Truncated Taylor series with certified tails.
//!
//! A [`PowerSeries`] stores `a_0..a_N`, an absolute error bound for each
//! stored coefficient (zero for closed-form expansions, nonzero after FFT
//! extraction) and an optional [`Bound`] controlling the coefficients that
//! were dropped. The majorant `Σ |a_n| r^n` is returned as an [`Interval`]
//! that contains the value of the untruncated series.

mod blaschke;
mod extract;

pub use blaschke::{BlaschkeSpec, SchwarzSpec, MAX_GENERATED_ZERO_MODULUS};
pub use extract::{default_sample_count, extract_coefficients, sampling_radius, DEFAULT_ORDER};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed real interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo <= hi) {
            return Err(Error::domain(format!(
                "interval bounds out of order: [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Control over the coefficients beyond the stored order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Bound {
    /// `sup_{|z|<1} |f(z)| ≤ bound`, hence `|a_n| ≤ bound` for every `n`.
    Sup(f64),
    /// `|a_n| ≤ scale · radius^{-n}` for every `n`. Obtained from a maximum
    /// modulus bound on the circle `|z| = radius` (Cauchy estimate), or with
    /// `radius = 1` from an explicit coefficient bound.
    Envelope { scale: f64, radius: f64 },
}

impl Bound {
    fn scale_radius(&self) -> (f64, f64) {
        match *self {
            Bound::Sup(b) => (b, 1.0),
            Bound::Envelope { scale, radius } => (scale, radius),
        }
    }

    fn validate(&self) -> Result<()> {
        let (scale, radius) = self.scale_radius();
        if !(scale.is_finite() && scale >= 0.0) {
            return Err(Error::domain(format!(
                "bound scale must be finite and >= 0, got {scale}"
            )));
        }
        if !(radius > 0.0 && radius <= 1.0) {
            return Err(Error::domain(format!(
                "envelope radius must lie in (0, 1], got {radius}"
            )));
        }
        Ok(())
    }

    /// Radius of convergence guaranteed by the bound.
    pub fn radius(&self) -> f64 {
        self.scale_radius().1
    }

    /// Upper bound on `|a_n|`.
    pub fn coefficient(&self, n: usize) -> f64 {
        let (scale, radius) = self.scale_radius();
        scale * radius.powi(-(n as i32))
    }

    /// Upper bound on `Σ_{n > order} |a_n| r^n`.
    pub fn tail(&self, order: usize, r: f64) -> Result<f64> {
        let (scale, radius) = self.scale_radius();
        let q = r / radius;
        if !(q < 1.0) {
            return Err(Error::domain(format!(
                "r = {r} is not inside the certified radius {radius}"
            )));
        }
        Ok(scale * q.powi(order as i32 + 1) / (1.0 - q))
    }

    /// Upper bound on `Σ_{n > order} |a_n|^2 t^n`.
    pub fn square_tail(&self, order: usize, t: f64) -> Result<f64> {
        let (scale, radius) = self.scale_radius();
        let q = t / (radius * radius);
        if !(q < 1.0) {
            return Err(Error::domain(format!(
                "t = {t} is not inside the certified radius {radius} squared"
            )));
        }
        Ok(scale * scale * q.powi(order as i32 + 1) / (1.0 - q))
    }
}

/// Truncated power series `Σ_{n ≤ N} a_n z^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
    errors: Vec<f64>,
    bound: Option<Bound>,
}

impl PowerSeries {
    /// Exact coefficients, no tail control.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("a power series needs at least a_0"));
        }
        if let Some(n) = coeffs
            .iter()
            .position(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::numeric(format!("coefficient a_{n} is not finite")));
        }
        let errors = vec![0.0; coeffs.len()];
        Ok(Self {
            coeffs,
            errors,
            bound: None,
        })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn with_bound(mut self, bound: Bound) -> Result<Self> {
        bound.validate()?;
        self.bound = Some(bound);
        Ok(self)
    }

    /// Attach per-coefficient absolute error bounds `|a_n - stored a_n| ≤ e_n`.
    pub fn with_errors(mut self, errors: Vec<f64>) -> Result<Self> {
        if errors.len() != self.coeffs.len() {
            return Err(Error::domain(format!(
                "{} error bounds for {} coefficients",
                errors.len(),
                self.coeffs.len()
            )));
        }
        if errors.iter().any(|e| !(e.is_finite() && *e >= 0.0)) {
            return Err(Error::numeric(
                "coefficient error bounds must be finite and >= 0",
            ));
        }
        self.errors = errors;
        Ok(self)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn errors(&self) -> &[f64] {
        &self.errors
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn bound(&self) -> Option<Bound> {
        self.bound
    }

    /// The disk sup-norm bound, when one is known.
    pub fn sup_bound(&self) -> Option<f64> {
        match self.bound {
            Some(Bound::Sup(b)) => Some(b),
            _ => None,
        }
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `Σ_{n ≤ N} |a_n|^2 ρ^{2n}` over the stored coefficients.
    pub fn parseval_sum(&self, rho: f64) -> f64 {
        let rho2 = rho * rho;
        let mut w = 1.0;
        let mut sum = 0.0;
        for c in &self.coeffs {
            sum += c.norm_sqr() * w;
            w *= rho2;
        }
        sum
    }

    /// Certified enclosure of `Σ_{n ≥ from} |a_n|^2 t^n`, including the
    /// dropped tail.
    pub fn square_sum(&self, t: f64, from: usize) -> Result<Interval> {
        if !(0.0..1.0).contains(&t) {
            return Err(Error::domain(format!("weight t = {t} must lie in [0, 1)")));
        }
        let bound = self.bound.ok_or_else(|| {
            Error::Certification("square sum needs a tail bound on the series".into())
        })?;
        let mut lo = 0.0;
        let mut hi = 0.0;
        let mut w = 1.0;
        for (n, (c, e)) in self.coeffs.iter().zip(&self.errors).enumerate() {
            if n >= from {
                let a = c.norm();
                let lo_a = (a - e).max(0.0);
                lo += lo_a * lo_a * w;
                hi += (a + e) * (a + e) * w;
            }
            w *= t;
        }
        let tail = if t == 0.0 {
            0.0
        } else {
            bound.square_tail(self.order(), t)?
        };
        let pad = rounding_pad(self.coeffs.len(), hi);
        Ok(Interval {
            lo: (lo - pad).max(0.0),
            hi: hi + tail + pad,
        })
    }
}

/// Outward padding covering accumulated rounding in a sum of `terms`
/// nonnegative products whose total is at most `magnitude`.
pub(crate) fn rounding_pad(terms: usize, magnitude: f64) -> f64 {
    4.0 * (terms as f64 + 2.0) * f64::EPSILON * magnitude + f64::MIN_POSITIVE
}

/// First `order + 1` Taylor coefficients of the disk automorphism
/// `φ(z) = (a − z)/(1 − ā z)`: `b_0 = a`, `b_k = −(1 − |a|²) ā^{k−1}`.
pub fn mobius_coefficients(a: Complex64, order: usize) -> Result<PowerSeries> {
    let m = a.norm();
    if !(m < 1.0) {
        return Err(Error::domain(format!(
            "Möbius parameter must satisfy |a| < 1, got |a| = {m}"
        )));
    }
    let abar = a.conj();
    let lead = -(1.0 - a.norm_sqr());
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(a);
    let mut power = Complex64::new(1.0, 0.0);
    for _ in 1..=order {
        coeffs.push(power * lead);
        power *= abar;
    }
    PowerSeries::new(coeffs)?.with_bound(Bound::Sup(1.0))
}

/// `f(z) = z g(z^p)`: coefficient `b_k` of `g` moves to index `pk + 1`.
pub fn p_symmetrize(g: &PowerSeries, p: u32) -> Result<PowerSeries> {
    if p == 0 {
        return Err(Error::domain("symmetry order p must be >= 1"));
    }
    let p = p as usize;
    let len = p * g.order() + 2;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
    let mut errors = vec![0.0; len];
    for (k, (c, e)) in g.coeffs.iter().zip(&g.errors).enumerate() {
        coeffs[p * k + 1] = *c;
        errors[p * k + 1] = *e;
    }
    let bound = g.bound.map(|b| match b {
        Bound::Sup(s) => Bound::Sup(s),
        Bound::Envelope { scale, radius } => {
            // |f_{pk+1}| ≤ scale R^{-k} = scale R^{1/p} (R^{1/p})^{-(pk+1)}
            let root = radius.powf(1.0 / p as f64);
            Bound::Envelope {
                scale: scale * root,
                radius: root,
            }
        }
    });
    let f = PowerSeries {
        coeffs,
        errors,
        bound: None,
    };
    match bound {
        Some(b) => f.with_bound(b),
        None => Ok(f),
    }
}

/// Certified enclosure of the majorant `M_f(r) = Σ |a_n| r^n`.
///
/// The lower end sums `|a_n| − e_n` over the stored coefficients; the upper
/// end sums `|a_n| + e_n` and adds the tail allowed by the series bound.
pub fn majorant(f: &PowerSeries, r: f64) -> Result<Interval> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::domain(format!(
            "majorant radius must lie in [0, 1), got {r}"
        )));
    }
    let tail = match (f.bound, r > 0.0) {
        (_, false) => 0.0,
        (Some(b), true) => b.tail(f.order(), r)?,
        (None, true) => {
            return Err(Error::Certification(
                "majorant at r > 0 needs a tail bound on the series".into(),
            ))
        }
    };
    let mut lo = 0.0;
    let mut hi = 0.0;
    let mut w = 1.0;
    for (c, e) in f.coeffs.iter().zip(&f.errors) {
        let a = c.norm();
        lo += (a - e).max(0.0) * w;
        hi += (a + e) * w;
        w *= r;
    }
    let pad = rounding_pad(f.coeffs.len(), hi);
    Ok(Interval {
        lo: (lo - pad).max(0.0),
        hi: hi + tail + pad,
    })
}
