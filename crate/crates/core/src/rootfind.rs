//! Real roots on `(0, 1)` of the low-degree polynomials that define the radii.
//!
//! A uniform grid locates sign changes, bisection shrinks each bracket, and a
//! few Newton steps polish the midpoint while the residual keeps decreasing.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::Interval;

pub const DEFAULT_SCAN_STEP: f64 = 1e-4;
pub const BISECTION_WIDTH: f64 = 1e-13;
pub const MAX_NEWTON_STEPS: usize = 5;
/// Same-sign local minima of `|p|` below this magnitude are reported as
/// possible tangential roots.
const TOUCH_THRESHOLD: f64 = 1e-10;

/// Dense real polynomial `Σ c_k x^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialSpec {
    coeffs: Vec<f64>,
    tag: String,
}

impl PolynomialSpec {
    /// Coefficients indexed by exponent; trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<f64>, tag: impl Into<String>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::numeric("polynomial coefficients must be finite"));
        }
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::domain("polynomial degree must be at least 1"));
        }
        Ok(Self {
            coeffs,
            tag: tag.into(),
        })
    }

    /// Sparse `(exponent, coefficient)` terms; repeated exponents are summed.
    pub fn from_terms(terms: &[(usize, f64)], tag: impl Into<String>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(k, c) in terms {
            *map.entry(k).or_insert(0.0) += c;
        }
        let degree = map.keys().next_back().copied().unwrap_or(0);
        let mut coeffs = vec![0.0; degree + 1];
        for (k, c) in map {
            coeffs[k] = c;
        }
        Self::new(coeffs, tag)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Value and first derivative by Horner's scheme.
    pub fn eval_with_derivative(&self, x: f64) -> (f64, f64) {
        let mut p = 0.0;
        let mut dp = 0.0;
        for &c in self.coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    }
}

/// `8 r^{2p} + r^{2(p−1)} − 6 r^{p−1} + 1`, whose largest root in `(0, 1)` is
/// the Bohr radius of bounded p-symmetric functions.
pub fn theorem1_polynomial(p: u32) -> Result<PolynomialSpec> {
    if p == 0 {
        return Err(Error::domain("symmetry order p must be >= 1"));
    }
    let p = p as usize;
    PolynomialSpec::from_terms(
        &[(0, 1.0), (p - 1, -6.0), (2 * (p - 1), 1.0), (2 * p, 8.0)],
        format!("p-symmetric radius polynomial, p = {p}"),
    )
}

/// `5 r^4 + 4 r^3 − 2 r^2 − 4 r + 1`: its root above `1/√3` is the earlier
/// lower bound for odd functions.
pub fn lower_bound_quartic() -> PolynomialSpec {
    PolynomialSpec::new(
        vec![1.0, -4.0, -2.0, 4.0, 5.0],
        "odd-function lower-bound quartic",
    )
    .expect("static coefficients")
}

/// `x^3 − 2x^2 − x + 1`, the expanded form of `x^2 = (1 − x)^2 (1 + x)`.
pub fn subordination_cubic() -> PolynomialSpec {
    PolynomialSpec::new(
        vec![1.0, -1.0, -2.0, 1.0],
        "odd-univalent subordination cubic",
    )
    .expect("static coefficients")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootMethod {
    Bisection,
    BisectionNewton,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootResult {
    pub root: f64,
    /// `|p(root)|`.
    pub residual: f64,
    /// Sign-change bracket, `lo < root < hi`.
    pub bracket: Interval,
    pub iterations: usize,
    pub method: RootMethod,
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

fn checked_eval(poly: &PolynomialSpec, x: f64) -> Result<f64> {
    let v = poly.eval(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::numeric(format!(
            "{} is not finite at x = {x}",
            poly.tag()
        )))
    }
}

fn refine(poly: &PolynomialSpec, mut lo: f64, mut hi: f64, tol: f64) -> Result<RootResult> {
    let mut f_lo = checked_eval(poly, lo)?;
    let width = tol.min(BISECTION_WIDTH);
    let mut iterations = 0;
    // an exact zero keeps the last sign-verified bracket around it
    let mut exact = None;
    while hi - lo >= width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = checked_eval(poly, mid)?;
        iterations += 1;
        if f_mid == 0.0 {
            exact = Some(mid);
            break;
        }
        if sign(f_mid) == sign(f_lo) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }

    let mut root = exact.unwrap_or(0.5 * (lo + hi));
    let mut residual = checked_eval(poly, root)?.abs();
    let mut method = RootMethod::Bisection;
    for _ in 0..MAX_NEWTON_STEPS {
        if residual == 0.0 {
            break;
        }
        let (p, dp) = poly.eval_with_derivative(root);
        if dp == 0.0 || !dp.is_finite() {
            break;
        }
        let next = root - p / dp;
        if !(next > lo && next < hi) {
            break;
        }
        let r = checked_eval(poly, next)?.abs();
        if r >= residual {
            break;
        }
        root = next;
        residual = r;
        iterations += 1;
        method = RootMethod::BisectionNewton;
    }

    if !(residual < tol) {
        return Err(Error::numeric(format!(
            "{}: residual {residual:e} at {root} does not meet tolerance {tol:e}",
            poly.tag()
        )));
    }
    Ok(RootResult {
        root,
        residual,
        bracket: Interval { lo, hi },
        iterations,
        method,
    })
}

/// Every sign change of `poly` on a uniform grid over `(0, 1)`, refined and
/// sorted ascending. An empty list means no sign change was found.
pub fn roots_in_unit_interval(
    poly: &PolynomialSpec,
    scan_step: f64,
    tol: f64,
) -> Result<Vec<RootResult>> {
    if !(scan_step > 0.0 && scan_step <= 1e-3) {
        return Err(Error::config(format!(
            "scan step must lie in (0, 1e-3], got {scan_step}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::config(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let n = (1.0 / scan_step).ceil() as usize;
    let xs: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
    let vs = xs
        .iter()
        .map(|&x| checked_eval(poly, x))
        .collect::<Result<Vec<_>>>()?;

    let mut roots = Vec::new();
    for i in 0..n {
        let (s0, s1) = (sign(vs[i]), sign(vs[i + 1]));
        if s0 * s1 < 0 {
            roots.push(refine(poly, xs[i], xs[i + 1], tol)?);
        } else if s1 == 0 && i + 1 < n {
            // exact zero on an interior grid node
            if s0 * sign(vs[i + 2]) < 0 {
                roots.push(RootResult {
                    root: xs[i + 1],
                    residual: 0.0,
                    bracket: Interval {
                        lo: xs[i],
                        hi: xs[i + 2],
                    },
                    iterations: 0,
                    method: RootMethod::Bisection,
                });
            }
        } else if i > 0
            && s0 != 0
            && s0 == s1
            && s0 == sign(vs[i - 1])
            && vs[i].abs() < TOUCH_THRESHOLD
            && vs[i].abs() <= vs[i - 1].abs()
            && vs[i].abs() <= vs[i + 1].abs()
        {
            log::warn!(
                "{}: |p| = {:e} at x = {} without a sign change (possible double root)",
                poly.tag(),
                vs[i].abs(),
                xs[i]
            );
        }
    }
    Ok(roots)
}

/// Largest root in `(0, 1)` with the default grid.
pub fn maximal_positive_root(poly: &PolynomialSpec, tol: f64) -> Result<RootResult> {
    roots_in_unit_interval(poly, DEFAULT_SCAN_STEP, tol)?
        .pop()
        .ok_or_else(|| Error::NotFound(format!("{}: no root in (0, 1)", poly.tag())))
}

/// Smallest root in `(0, 1)` with the default grid.
pub fn minimal_positive_root(poly: &PolynomialSpec, tol: f64) -> Result<RootResult> {
    roots_in_unit_interval(poly, DEFAULT_SCAN_STEP, tol)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::NotFound(format!("{}: no root in (0, 1)", poly.tag())))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn theorem1_polynomial_coefficients() {
        assert_eq!(theorem1_polynomial(1).unwrap().coeffs(), &[-4.0, 0.0, 8.0]);
        assert_eq!(
            theorem1_polynomial(2).unwrap().coeffs(),
            &[1.0, -6.0, 1.0, 0.0, 8.0]
        );
        assert_eq!(
            theorem1_polynomial(3).unwrap().coeffs(),
            &[1.0, 0.0, -6.0, 0.0, 1.0, 0.0, 8.0]
        );
        assert!(theorem1_polynomial(0).is_err());
    }

    #[test]
    fn p1_root_is_inverse_sqrt2() {
        let poly = theorem1_polynomial(1).unwrap();
        let roots = roots_in_unit_interval(&poly, DEFAULT_SCAN_STEP, TOL).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].root - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
        let min = minimal_positive_root(&poly, TOL).unwrap();
        let max = maximal_positive_root(&poly, TOL).unwrap();
        assert_eq!(min.root, max.root);
    }

    #[test]
    fn p2_maximal_root() {
        let r = maximal_positive_root(&theorem1_polynomial(2).unwrap(), TOL).unwrap();
        assert!((r.root - 0.789991).abs() < 5e-7, "{}", r.root);
    }

    #[test]
    fn p3_maximal_root_beyond_p2() {
        let r2 = maximal_positive_root(&theorem1_polynomial(2).unwrap(), TOL).unwrap();
        let r3 = maximal_positive_root(&theorem1_polynomial(3).unwrap(), TOL).unwrap();
        assert!(r3.root > r2.root && r3.root < 1.0);
        assert!(r3.residual < 1e-12);
        let poly = theorem1_polynomial(3).unwrap();
        assert!(poly.eval(r3.bracket.lo) * poly.eval(r3.bracket.hi) < 0.0);
    }

    #[test]
    fn quartic_roots() {
        let roots = roots_in_unit_interval(&lower_bound_quartic(), DEFAULT_SCAN_STEP, TOL).unwrap();
        assert_eq!(roots.len(), 2, "two sign changes on (0, 1)");
        let above: Vec<_> = roots
            .iter()
            .filter(|r| r.root > 1.0 / 3f64.sqrt())
            .collect();
        assert_eq!(above.len(), 1);
        assert!((above[0].root - 0.7313).abs() < 5e-5);
        let min = minimal_positive_root(&lower_bound_quartic(), TOL).unwrap();
        assert!(min.root < 1.0 / 3f64.sqrt());
    }

    #[test]
    fn cubic_minimal_root() {
        let r = minimal_positive_root(&subordination_cubic(), TOL).unwrap();
        assert!((r.root - 0.554958).abs() < 5e-7);
        let x = r.root;
        assert!((x * x - (1.0 - x).powi(2) * (1.0 + x)).abs() < 1e-12);
    }

    #[test]
    fn exact_grid_root() {
        let poly = PolynomialSpec::new(vec![-0.5, 1.0], "x - 1/2").unwrap();
        let roots = roots_in_unit_interval(&poly, 1e-4, TOL).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].root, 0.5);
        assert!(roots[0].bracket.lo < 0.5 && roots[0].bracket.hi > 0.5);
    }

    #[test]
    fn no_root_and_bad_config() {
        let poly = PolynomialSpec::new(vec![1.0, 0.0, 1.0], "x^2 + 1").unwrap();
        assert!(roots_in_unit_interval(&poly, 1e-4, TOL).unwrap().is_empty());
        assert!(matches!(
            maximal_positive_root(&poly, TOL),
            Err(Error::NotFound(_))
        ));
        assert!(matches!(
            roots_in_unit_interval(&poly, 1e-2, TOL),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            roots_in_unit_interval(&poly, 1e-4, 0.0),
            Err(Error::Config(_))
        ));
        assert!(PolynomialSpec::new(vec![1.0, 0.0], "constant").is_err());
    }

    #[test]
    fn from_terms_sums_collisions() {
        let p =
            PolynomialSpec::from_terms(&[(0, 1.0), (0, -6.0), (0, 1.0), (2, 8.0)], "t").unwrap();
        assert_eq!(p.coeffs(), &[-4.0, 0.0, 8.0]);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let p = theorem1_polynomial(4).unwrap();
        for &x in &[0.1, 0.5, 0.9] {
            let (_, dp) = p.eval_with_derivative(x);
            let h = 1e-6;
            let fd = (p.eval(x + h) - p.eval(x - h)) / (2.0 * h);
            assert!((dp - fd).abs() < 1e-6 * (1.0 + dp.abs()));
        }
    }

    #[test]
    fn brackets_change_sign_near_exact_zeros() {
        // product of (x - r_k); one bisection midpoint evaluates to exactly 0
        let roots = [0.552224112873453, 0.7159005842160179, 0.7321858524570176];
        let mut coeffs = vec![1.0];
        for r in roots {
            let mut next = vec![0.0; coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= r * c;
            }
            coeffs = next;
        }
        let poly = PolynomialSpec::new(coeffs, "product").unwrap();
        let found = roots_in_unit_interval(&poly, 1e-3, TOL).unwrap();
        assert_eq!(found.len(), 3);
        for (f, want) in found.iter().zip(roots) {
            assert!((f.root - want).abs() < 1e-9);
            assert!(poly.eval(f.bracket.lo) * poly.eval(f.bracket.hi) <= 0.0);
            assert!(f.bracket.lo <= f.root && f.root <= f.bracket.hi);
        }
    }
}
