//! Bohr radii, extremal functions and the auxiliary maximization problems.
//!
//! | quantity | value | route |
//! |---|---|---|
//! | p-symmetric radius `r_p` | `r_1 = 1/√2`, `r_2 ≈ 0.789991` | largest root of [`theorem1_polynomial`] |
//! | `r*` (odd functions) | `≈ 0.789991` | Cardano-type radicals, see [`closed_form_r_star`] |
//! | odd-univalent subordination | `≈ 0.554958` | smallest root of [`subordination_cubic`] |
//! | improved subordination radius | `≈ 0.5649` | bisection over a two-variable maximum |
//! | odd subordinate with `|a_1| = α` | `(−α + √(4 + α²))/2` | closed form |
//! | earlier lower bound for odd functions | `≈ 0.7313` | root of [`lower_bound_quartic`] |

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimize::maximize;
use crate::rootfind::{
    lower_bound_quartic, maximal_positive_root, roots_in_unit_interval, subordination_cubic,
    theorem1_polynomial, DEFAULT_SCAN_STEP,
};
use crate::series::{Bound, Interval, PowerSeries};

/// Root tolerance used when callers do not supply one.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Grid size for the inner maximizations.
pub const INNER_GRID: usize = 10_001;
/// Bracket width of the outer bisection for the improved subordination radius.
pub const OUTER_WIDTH: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RadiusLabel {
    Theorem1 { p: u32 },
    ClosedFormRStar,
    Subordination,
    Remark1Improved,
    Corollary5 { alpha: f64 },
    AbsLower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    RootFound,
    ClosedForm,
    Optimized,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult {
    pub label: RadiusLabel,
    pub radius: f64,
    /// Defect of the defining equation at `radius`.
    pub residual: f64,
    /// Parameter of the extremal function; set for p-symmetric radii only.
    pub extremal_a: Option<f64>,
    pub provenance: Provenance,
    pub bracket: Option<Interval>,
}

/// `B = (3601 − 192√327)^{1/3} + (3601 + 192√327)^{1/3}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormConstants {
    pub b: f64,
}

impl ClosedFormConstants {
    pub fn compute() -> Result<Self> {
        let s = 192.0 * 327f64.sqrt();
        let b = (3601.0 - s).cbrt() + (3601.0 + s).cbrt();
        if !(b > 2.0) {
            return Err(Error::numeric(format!("B = {b} must exceed 2")));
        }
        Ok(Self { b })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub x_opt: f64,
    pub y_opt: Option<f64>,
    pub value: f64,
    pub boundary_active: bool,
}

/// Bohr radius of bounded p-symmetric functions `z g(z^p)`, with the
/// parameter of the extremal `z(z^p − a)/(1 − a z^p)`.
pub fn bohr_radius_p_symmetric(p: u32, tol: f64) -> Result<RadiusResult> {
    let poly = theorem1_polynomial(p)?;
    let root = maximal_positive_root(&poly, tol)?;
    let a = extremal_parameter(p, root.root)?;
    Ok(RadiusResult {
        label: RadiusLabel::Theorem1 { p },
        radius: root.root,
        residual: root.residual,
        extremal_a: Some(a),
        provenance: Provenance::RootFound,
        bracket: Some(root.bracket),
    })
}

/// `a = (1 − √(1 − r^{2p})/√2) / r^p`, rejected unless it lies in `(0, 1)`.
pub fn extremal_parameter(p: u32, r: f64) -> Result<f64> {
    if p == 0 {
        return Err(Error::domain("symmetry order p must be >= 1"));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain(format!("radius must lie in (0, 1), got {r}")));
    }
    let rp = r.powi(p as i32);
    let a = (1.0 - (1.0 - rp * rp).sqrt() / std::f64::consts::SQRT_2) / rp;
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::domain(format!(
            "extremal parameter {a} at r = {r}, p = {p} is outside (0, 1); \
             the formula is meant for r = r_p"
        )));
    }
    Ok(a)
}

/// Coefficients of `z(z^p − a)/(1 − a z^p)`: `−a` at index 1 and
/// `(1 − a²) a^{k−1}` at index `pk + 1`, for `k ≤ order`.
pub fn extremal_series(p: u32, a: f64, order: usize) -> Result<PowerSeries> {
    if p == 0 {
        return Err(Error::domain("symmetry order p must be >= 1"));
    }
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::domain(format!(
            "extremal parameter must lie in (0, 1), got {a}"
        )));
    }
    let p = p as usize;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); p * order + 2];
    coeffs[1] = Complex64::new(-a, 0.0);
    let mut w = 1.0 - a * a;
    for k in 1..=order {
        coeffs[p * k + 1] = Complex64::new(w, 0.0);
        w *= a;
    }
    PowerSeries::new(coeffs)?.with_bound(Bound::Sup(1.0))
}

/// `r (a + (1 − a²) r^p / (1 − a r^p))`, the majorant of the extremal
/// function in closed form.
pub fn extremal_majorant(p: u32, a: f64, r: f64) -> f64 {
    let rp = r.powi(p as i32);
    r * (a + (1.0 - a * a) * rp / (1.0 - a * rp))
}

/// `2 r^{p+1}`, bounded by 1 at every p-symmetric radius.
pub fn lemma1_value(p: u32, r: f64) -> f64 {
    2.0 * r.powi(p as i32 + 1)
}

/// The p = 2 radius through radicals:
/// `r* = ¼ √((B−2)/6) + ½ √(3 √(6/(B−2)) − B/24 − 1/6)`.
pub fn closed_form_r_star() -> Result<RadiusResult> {
    let ClosedFormConstants { b } = ClosedFormConstants::compute()?;
    let inner = 3.0 * (6.0 / (b - 2.0)).sqrt() - b / 24.0 - 1.0 / 6.0;
    if !(inner >= 0.0) {
        return Err(Error::numeric(format!("negative radicand {inner} in r*")));
    }
    let radius = 0.25 * ((b - 2.0) / 6.0).sqrt() + 0.5 * inner.sqrt();
    let residual = theorem1_polynomial(2)?.eval(radius).abs();
    Ok(RadiusResult {
        label: RadiusLabel::ClosedFormRStar,
        radius,
        residual,
        extremal_a: None,
        provenance: Provenance::ClosedForm,
        bracket: None,
    })
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )))
    }
}

/// `ψ(x) = x + α (1 − x²)/(1 − α x)`, continuously extended at `α = x = 1`.
pub fn psi_case1(x: f64, alpha: f64) -> f64 {
    if alpha == 1.0 {
        // (1 - x²)/(1 - x) = 1 + x
        return 1.0 + 2.0 * x;
    }
    x + alpha * (1.0 - x * x) / (1.0 - alpha * x)
}

/// Maximum of [`psi_case1`] over `x ∈ [0, 1]`.
///
/// For `α ≥ 1/3` the maximizer is `x₁ = (1 − √(1 − α²)/√2)/α`, clamped to
/// `[0, 1]`. Below `1/3` that point leaves the interval and the maximum is
/// found numerically.
pub fn psi_case1_max(alpha: f64) -> Result<OptimizationResult> {
    check_alpha(alpha)?;
    if alpha >= 1.0 / 3.0 {
        let x1 = (1.0 - (1.0 - alpha * alpha).sqrt() / std::f64::consts::SQRT_2) / alpha;
        let clamped = x1.clamp(0.0, 1.0);
        return Ok(OptimizationResult {
            x_opt: clamped,
            y_opt: None,
            value: psi_case1(clamped, alpha),
            boundary_active: clamped != x1 || clamped == 1.0,
        });
    }
    let (x, value) = maximize(|x| psi_case1(x, alpha), 0.0, 1.0, INNER_GRID);
    Ok(OptimizationResult {
        x_opt: x,
        y_opt: None,
        value,
        boundary_active: x == 0.0 || x == 1.0,
    })
}

/// Bound for `|b_0| < r^p`: `r (a + r^p √(1 − a²) / √(1 − r^{2p}))`.
pub fn case2_bound(p: u32, r: f64, a: f64) -> Result<f64> {
    if p == 0 {
        return Err(Error::domain("symmetry order p must be >= 1"));
    }
    let rp = r.powi(p as i32);
    if !(r > 0.0 && rp < 1.0 && a >= 0.0 && a < rp) {
        return Err(Error::domain(format!(
            "need 0 <= a < r^p < 1, got a = {a}, r^p = {rp}"
        )));
    }
    Ok(r * (a + rp * (1.0 - a * a).sqrt() / (1.0 - rp * rp).sqrt()))
}

/// Radius for functions subordinate to an odd univalent map: the smallest
/// positive root of `x² = (1 − x)²(1 + x)`.
pub fn subordination_radius() -> Result<RadiusResult> {
    let cubic = subordination_cubic();
    let root = crate::rootfind::minimal_positive_root(&cubic, DEFAULT_TOL)?;
    let x = root.root;
    Ok(RadiusResult {
        label: RadiusLabel::Subordination,
        radius: x,
        residual: (x * x - (1.0 - x).powi(2) * (1.0 + x)).abs(),
        extremal_a: None,
        provenance: Provenance::RootFound,
        bracket: Some(root.bracket),
    })
}

/// `ψ(x, y) = r x + r² y + r²/√(1 − r) · √(1/(1 − r²) − x² − r y²)`.
pub fn psi_remark1(x: f64, y: f64, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain(format!("r must lie in (0, 1), got {r}")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("x must lie in [0, 1], got {x}")));
    }
    let radicand = 1.0 / (1.0 - r * r) - x * x - r * y * y;
    if radicand < 0.0 {
        return Err(Error::domain(format!(
            "negative radicand {radicand} at x = {x}, y = {y}"
        )));
    }
    Ok(r * x + r * r * y + r * r / (1.0 - r).sqrt() * radicand.sqrt())
}

/// Stationary point of `ψ(x, ·)`: `y = √(1 − x² + r² x²)/√(r + r²)`.
pub fn remark1_interior_critical_y(x: f64, r: f64) -> f64 {
    (1.0 - x * x + r * r * x * x).sqrt() / (r + r * r).sqrt()
}

fn psi_on_parabola(x: f64, r: f64) -> f64 {
    psi_remark1(x, 1.0 - x * x, r).expect("radicand is positive on y = 1 - x^2")
}

/// Maximum of `ψ(x, 1 − x²)` over `x ∈ [0, 1]`.
pub fn remark1_boundary_max(r: f64) -> Result<OptimizationResult> {
    psi_remark1(0.0, 1.0, r)?;
    let (x, value) = maximize(|x| psi_on_parabola(x, r), 0.0, 1.0, INNER_GRID);
    Ok(OptimizationResult {
        x_opt: x,
        y_opt: Some(1.0 - x * x),
        value,
        boundary_active: true,
    })
}

/// Maximum of `ψ(x, 0)` over `x ∈ [0, 1]`.
pub fn remark1_axis_max(r: f64) -> Result<OptimizationResult> {
    psi_remark1(0.0, 0.0, r)?;
    let (x, value) = maximize(
        |x| psi_remark1(x, 0.0, r).expect("radicand is positive on y = 0"),
        0.0,
        1.0,
        INNER_GRID,
    );
    Ok(OptimizationResult {
        x_opt: x,
        y_opt: Some(0.0),
        value,
        boundary_active: x == 1.0,
    })
}

/// Largest `r` with `max_x ψ(x, 1 − x²) ≤ 1`, by bisection on `r` between the
/// subordination radius and 0.6.
pub fn remark1_improved_radius() -> Result<RadiusResult> {
    let excess = |r: f64| -> Result<f64> { Ok(remark1_boundary_max(r)?.value - 1.0) };
    let mut lo = subordination_radius()?.radius;
    let mut hi = 0.6;
    if !(excess(lo)? <= 0.0 && excess(hi)? > 0.0) {
        return Err(Error::numeric(
            "improved radius is not bracketed by [r_*, 0.6]",
        ));
    }
    while hi - lo > OUTER_WIDTH {
        let mid = 0.5 * (lo + hi);
        if excess(mid)? <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RadiusResult {
        label: RadiusLabel::Remark1Improved,
        radius: lo,
        residual: excess(lo)?.abs(),
        extremal_a: None,
        provenance: Provenance::Optimized,
        bracket: Some(Interval { lo, hi }),
    })
}

/// `r_α = (−α + √(4 + α²))/2`, the root of `α r/(1 − r²) = 1`. Evaluated as
/// `2/(α + √(4 + α²))` to avoid cancellation for small `α`.
pub fn corollary5_radius(alpha: f64) -> Result<RadiusResult> {
    check_alpha(alpha)?;
    let radius = 2.0 / (alpha + (4.0 + alpha * alpha).sqrt());
    Ok(RadiusResult {
        label: RadiusLabel::Corollary5 { alpha },
        radius,
        residual: (alpha * radius / (1.0 - radius * radius) - 1.0).abs(),
        extremal_a: None,
        provenance: Provenance::ClosedForm,
        bracket: None,
    })
}

/// The root of `5r⁴ + 4r³ − 2r² − 4r + 1` in `(1/√3, 1)`.
pub fn abs_lower_radius() -> Result<RadiusResult> {
    let quartic = lower_bound_quartic();
    let floor = 1.0 / 3f64.sqrt();
    let mut above: Vec<_> = roots_in_unit_interval(&quartic, DEFAULT_SCAN_STEP, DEFAULT_TOL)?
        .into_iter()
        .filter(|r| r.root > floor)
        .collect();
    if above.len() != 1 {
        return Err(Error::numeric(format!(
            "expected exactly one quartic root in (1/√3, 1), found {}",
            above.len()
        )));
    }
    let root = above.remove(0);
    Ok(RadiusResult {
        label: RadiusLabel::AbsLower,
        radius: root.root,
        residual: root.residual,
        extremal_a: None,
        provenance: Provenance::RootFound,
        bracket: Some(root.bracket),
    })
}
