use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Zeros drawn by the random generators stay inside this modulus.
pub const MAX_GENERATED_ZERO_MODULUS: f64 = 0.95;

/// Finite Blaschke product `e^{iθ} Π_k (z − z_k)/(1 − z̄_k z)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeSpec {
    zeros: Vec<Complex64>,
    rotation: f64,
}

impl BlaschkeSpec {
    /// Rejects an empty zero list: that is a unimodular constant, not a map
    /// into the open disk.
    pub fn new(zeros: Vec<Complex64>, rotation: f64) -> Result<Self> {
        if zeros.is_empty() {
            return Err(Error::domain("Blaschke product needs at least one zero"));
        }
        if let Some(z) = zeros.iter().find(|z| !(z.norm() < 1.0)) {
            return Err(Error::domain(format!(
                "Blaschke zero {z} is not inside the unit disk"
            )));
        }
        if !rotation.is_finite() {
            return Err(Error::domain("rotation must be finite"));
        }
        Ok(Self {
            zeros,
            rotation: rotation.rem_euclid(TAU),
        })
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if !(z.norm() < 1.0) {
            return Err(Error::domain(format!(
                "evaluation point {z} is not inside the unit disk"
            )));
        }
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .fold(Complex64::from_polar(1.0, self.rotation), |acc, &zk| {
                acc * (z - zk) / (1.0 - zk.conj() * z)
            })
    }
}

/// Blaschke product with a zero at the origin, so `w(0) = 0` and `|w| < 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchwarzSpec(BlaschkeSpec);

impl SchwarzSpec {
    pub fn new(zeros: Vec<Complex64>, rotation: f64) -> Result<Self> {
        if !zeros.iter().any(|z| *z == Complex64::new(0.0, 0.0)) {
            return Err(Error::domain("Schwarz map needs a zero at the origin"));
        }
        Ok(Self(BlaschkeSpec::new(zeros, rotation)?))
    }

    /// Prepends the zero at the origin to `extra`.
    pub fn with_origin(extra: &[Complex64], rotation: f64) -> Result<Self> {
        let mut zeros = Vec::with_capacity(extra.len() + 1);
        zeros.push(Complex64::new(0.0, 0.0));
        zeros.extend_from_slice(extra);
        Self::new(zeros, rotation)
    }

    pub fn blaschke(&self) -> &BlaschkeSpec {
        &self.0
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.0.eval(z)
    }

    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        self.0.eval_unchecked(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn empty_product_rejected() {
        assert!(matches!(
            BlaschkeSpec::new(vec![], 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn single_zero_at_origin_is_identity() {
        let b = BlaschkeSpec::new(vec![c(0.0)], 0.0).unwrap();
        assert!((b.eval(c(0.3)).unwrap() - c(0.3)).norm() < 1e-16);
    }

    #[test]
    fn value_at_origin() {
        let b = BlaschkeSpec::new(vec![c(0.5)], 0.0).unwrap();
        assert!((b.eval(c(0.0)).unwrap() - c(-0.5)).norm() < 1e-16);
    }

    #[test]
    fn domain_checks() {
        let b = BlaschkeSpec::new(vec![c(0.5)], 0.0).unwrap();
        assert!(b.eval(c(1.0)).is_err());
        assert!(BlaschkeSpec::new(vec![c(1.0)], 0.0).is_err());
        assert!(SchwarzSpec::new(vec![c(0.5)], 0.0).is_err());
        let w = SchwarzSpec::with_origin(&[c(0.5)], 1.0).unwrap();
        assert_eq!(w.eval(c(0.0)).unwrap().norm(), 0.0);
    }

    #[test]
    fn rotation_is_normalized() {
        let b = BlaschkeSpec::new(vec![c(0.1)], -1.0).unwrap();
        assert!((b.rotation() - (TAU - 1.0)).abs() < 1e-15);
    }
}
