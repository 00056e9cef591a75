//! Seeded randomized checks of the Bohr-type inequalities.
//!
//! Every trial draws an explicit bounded function (a finite Blaschke product,
//! or a composition with a Schwarz map), extracts its Taylor coefficients
//! with certified error bounds and compares a certified enclosure of the
//! left-hand side against the right-hand side. A trial fails only when the
//! lower end of the enclosure exceeds the right-hand side by more than the
//! tolerance `τ`; enclosures wider than `τ/10` are skipped and logged.
//!
//! Trial `i` uses its own ChaCha8 stream seeded with
//! `seed ^ splitmix64(i)`, so reports do not depend on how trials are
//! scheduled across threads.

mod samples;
mod suites;

pub use samples::{odd_univalent_samples, OddUnivalent};
pub use suites::{
    mobius_majorant, verify_classical_bohr, verify_eq6, verify_lemma1, verify_lemma2,
    verify_remark2, verify_schwarz_pick, verify_theorem1, verify_theorem2, DEFAULT_EQ6_GRID,
};

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{
    BlaschkeSpec, Interval, SchwarzSpec, DEFAULT_ORDER, MAX_GENERATED_ZERO_MODULUS,
};

/// Tolerance for equality probes at a critical radius.
pub const SHARPNESS_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_blaschke_degree: usize,
    /// Truncation order of extracted series.
    pub order: usize,
    /// `τ` in the failure rule `lhs.lo > rhs + τ`.
    pub tolerance: f64,
}

impl Default for TrialConfig {
    fn default() -> Self {
        Self {
            trials: 1000,
            seed: 0,
            max_blaschke_degree: 12,
            order: DEFAULT_ORDER,
            tolerance: 1e-8,
        }
    }
}

impl TrialConfig {
    pub fn with_trials(self, trials: usize) -> Self {
        Self { trials, ..self }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::config("trials must be >= 1"));
        }
        if self.max_blaschke_degree == 0 {
            return Err(Error::config("max Blaschke degree must be >= 1"));
        }
        if self.order == 0 {
            return Err(Error::config("truncation order must be >= 1"));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::config("tolerance must be positive"));
        }
        Ok(())
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent generator for trial `index`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ splitmix64(index))
}

fn random_zero<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    // area-uniform on the disk of radius MAX_GENERATED_ZERO_MODULUS
    let radius = MAX_GENERATED_ZERO_MODULUS * rng.random::<f64>().sqrt();
    Complex64::from_polar(radius, TAU * rng.random::<f64>())
}

/// Blaschke product of degree uniform in `[1, max_degree]`.
pub fn random_bounded_function<R: Rng + ?Sized>(rng: &mut R, max_degree: usize) -> BlaschkeSpec {
    let degree = rng.random_range(1..=max_degree.max(1));
    let zeros = (0..degree).map(|_| random_zero(rng)).collect();
    let rotation = TAU * rng.random::<f64>();
    BlaschkeSpec::new(zeros, rotation).expect("generated zeros lie inside the disk")
}

/// Schwarz map of degree uniform in `[1, max_degree]`.
pub fn random_schwarz_map<R: Rng + ?Sized>(rng: &mut R, max_degree: usize) -> SchwarzSpec {
    let degree = rng.random_range(1..=max_degree.max(1));
    let extra: Vec<_> = (1..degree).map(|_| random_zero(rng)).collect();
    let rotation = TAU * rng.random::<f64>();
    SchwarzSpec::with_origin(&extra, rotation).expect("generated zeros lie inside the disk")
}

/// Odd Schwarz map: zero at the origin plus symmetric pairs `±z_k`.
pub fn random_odd_schwarz_map<R: Rng + ?Sized>(rng: &mut R, max_degree: usize) -> SchwarzSpec {
    let pairs = rng.random_range(0..=(max_degree.max(1) - 1) / 2);
    let mut extra = Vec::with_capacity(2 * pairs);
    for _ in 0..pairs {
        let z = random_zero(rng);
        extra.push(z);
        extra.push(-z);
    }
    let rotation = TAU * rng.random::<f64>();
    SchwarzSpec::with_origin(&extra, rotation).expect("generated zeros lie inside the disk")
}

/// Function exercised by a trial or probe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestFunction {
    Blaschke {
        spec: BlaschkeSpec,
    },
    /// `outer ∘ inner`.
    Composition {
        outer: OddUnivalent,
        inner: SchwarzSpec,
    },
    Sample {
        name: String,
    },
    /// Scalar check with no function attached (for instance one value of `p`).
    Parameter {
        name: String,
        value: f64,
    },
}

/// One inequality `lhs ≤ rhs` with a certified enclosure of `lhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub radius: f64,
    pub lhs: Interval,
    pub rhs: f64,
}

impl Check {
    /// `rhs − lhs.lo`; negative means the certified lower bound already
    /// exceeds the right-hand side.
    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs.lo
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureDetail {
    pub trial: Option<usize>,
    pub function: TestFunction,
    pub check: Check,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkipDetail {
    pub trial: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// `lhs = rhs` within [`SHARPNESS_TOL`].
    Equality,
    /// Certified `lhs ≤ rhs`.
    Holds,
    /// Certified `lhs > rhs`.
    Violated,
}

/// A deterministic function with known behavior: extremal functions at
/// their critical radius, sharpness probes just beyond it, and closed-form
/// reference values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Probe {
    pub label: String,
    pub function: TestFunction,
    pub radius: f64,
    pub lhs: Interval,
    pub rhs: f64,
    /// `rhs − lhs.mid`.
    pub margin: f64,
    pub expectation: Expectation,
    /// Closed-form value of the left-hand side, when one is known.
    pub reference: Option<f64>,
    pub passed: bool,
}

impl Probe {
    pub(crate) fn new(
        label: impl Into<String>,
        function: TestFunction,
        check: Check,
        expectation: Expectation,
        reference: Option<f64>,
        tolerance: f64,
    ) -> Self {
        let margin = check.rhs - check.lhs.mid();
        let shape = match expectation {
            Expectation::Equality => margin.abs() < SHARPNESS_TOL,
            Expectation::Holds => check.lhs.hi <= check.rhs,
            Expectation::Violated => check.lhs.lo > check.rhs,
        };
        let matches_reference = reference
            .is_none_or(|v| check.lhs.lo - tolerance <= v && v <= check.lhs.hi + tolerance);
        Self {
            label: label.into(),
            function,
            radius: check.radius,
            lhs: check.lhs,
            rhs: check.rhs,
            margin,
            expectation,
            reference,
            passed: shape && matches_reference,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub trials: usize,
    pub checks: usize,
    pub failures: usize,
    pub skipped: usize,
    /// Smallest `rhs − lhs.lo` over all checked trials.
    pub worst_margin: Option<f64>,
    pub tolerance: f64,
    pub seed: Option<u64>,
    pub config: Option<TrialConfig>,
    pub failure_details: Vec<FailureDetail>,
    pub skip_details: Vec<SkipDetail>,
    pub probes: Vec<Probe>,
}

impl VerificationReport {
    pub fn probes_passed(&self) -> bool {
        self.probes.iter().all(|p| p.passed)
    }

    /// No failing trial and every probe behaved as expected.
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.probes_passed()
    }

    pub fn summary(&self) -> String {
        let worst = self
            .worst_margin
            .map_or("n/a".to_string(), |m| format!("{m:.3e}"));
        let probes = self.probes.iter().filter(|p| p.passed).count();
        let mut s = format!(
            "{}: trials={} checks={} failures={} skipped={} worst_margin={} probes={}/{}",
            self.name,
            self.trials,
            self.checks,
            self.failures,
            self.skipped,
            worst,
            probes,
            self.probes.len()
        );
        if !self.passed() {
            s.push_str(
                " -- the checked statement is a proven inequality; a failure here is a bug \
                 in the numerics, not a counterexample",
            );
        }
        s
    }
}

pub(crate) enum TrialOutcome {
    Checked {
        function: TestFunction,
        checks: Vec<Check>,
    },
    Skipped {
        reason: String,
    },
}

impl TrialOutcome {
    /// Skips the trial when any enclosure is wider than `max_width`.
    pub(crate) fn from_checks(
        function: TestFunction,
        checks: Result<Vec<Check>>,
        max_width: f64,
    ) -> Self {
        match checks {
            Err(e) => TrialOutcome::Skipped {
                reason: e.to_string(),
            },
            Ok(checks) => match checks.iter().find(|c| !(c.lhs.width() < max_width)) {
                Some(c) => TrialOutcome::Skipped {
                    reason: format!(
                        "{}: enclosure width {:e} exceeds {:e}",
                        c.label,
                        c.lhs.width(),
                        max_width
                    ),
                },
                None => TrialOutcome::Checked { function, checks },
            },
        }
    }
}

pub(crate) fn run_trials<F>(cfg: &TrialConfig, trial: F) -> Vec<TrialOutcome>
where
    F: Fn(&mut ChaCha8Rng) -> TrialOutcome + Sync,
{
    (0..cfg.trials)
        .into_par_iter()
        .map(|i| trial(&mut trial_rng(cfg.seed, i as u64)))
        .collect()
}

/// Folds outcomes in trial order.
pub(crate) fn aggregate(
    name: &str,
    cfg: Option<&TrialConfig>,
    trials: usize,
    tolerance: f64,
    outcomes: Vec<TrialOutcome>,
    probes: Vec<Probe>,
) -> VerificationReport {
    let mut report = VerificationReport {
        name: name.to_string(),
        trials,
        checks: 0,
        failures: 0,
        skipped: 0,
        worst_margin: None,
        tolerance,
        seed: cfg.map(|c| c.seed),
        config: cfg.copied(),
        failure_details: Vec::new(),
        skip_details: Vec::new(),
        probes,
    };
    for (trial, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            TrialOutcome::Skipped { reason } => {
                log::warn!("{name}: trial {trial} skipped: {reason}");
                report.skipped += 1;
                report.skip_details.push(SkipDetail { trial, reason });
            }
            TrialOutcome::Checked { function, checks } => {
                let mut failed = false;
                for check in checks {
                    let margin = check.margin();
                    report.checks += 1;
                    report.worst_margin =
                        Some(report.worst_margin.map_or(margin, |w: f64| w.min(margin)));
                    if margin < -tolerance {
                        failed = true;
                        report.failure_details.push(FailureDetail {
                            trial: cfg.map(|_| trial),
                            function: function.clone(),
                            check,
                            margin,
                        });
                    }
                }
                if failed {
                    report.failures += 1;
                }
            }
        }
    }
    report
}
