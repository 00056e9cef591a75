use std::f64::consts::PI;

use num_complex::Complex64;

use super::{
    aggregate, random_bounded_function, random_odd_schwarz_map, random_schwarz_map, run_trials,
    Check, Expectation, OddUnivalent, Probe, TestFunction, TrialConfig, TrialOutcome,
    VerificationReport,
};
use crate::error::{Error, Result};
use crate::radii::{bohr_radius_p_symmetric, extremal_majorant, subordination_radius, DEFAULT_TOL};
use crate::series::{
    default_sample_count, extract_coefficients, majorant, p_symmetrize, sampling_radius,
    BlaschkeSpec, Bound, Interval, PowerSeries, SchwarzSpec,
};

/// Radii at which the odd-univalent majorant bound is checked.
pub const DEFAULT_EQ6_GRID: [f64; 18] = [
    0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80,
    0.85, 0.90,
];

/// Tolerance for the scalar lemma sweep.
const LEMMA1_TOL: f64 = 1e-12;

fn golden_radius() -> f64 {
    (5f64.sqrt() - 1.0) / 2.0
}

/// `M(r) = a + (1 − a²) r/(1 − a r)` for the automorphism with `b_0 = a`.
pub fn mobius_majorant(a: f64, r: f64) -> f64 {
    a + (1.0 - a * a) * r / (1.0 - a * r)
}

/// `(a − z)/(1 − a z)` as a Blaschke product.
fn mobius_spec(a: f64) -> BlaschkeSpec {
    BlaschkeSpec::new(vec![Complex64::new(a, 0.0)], PI).expect("|a| < 1")
}

fn blaschke_series(spec: &BlaschkeSpec, order: usize, r_eval: f64) -> Result<PowerSeries> {
    extract_coefficients(
        |z| spec.eval_unchecked(z),
        order,
        sampling_radius(r_eval),
        default_sample_count(order),
        Bound::Sup(1.0),
    )
}

/// `outer ∘ inner`, sampled pointwise. `|inner(z)| ≤ |z|`, so on `|z| = R`
/// the composition is bounded by the maximum modulus of `outer` on `|u| ≤ R`.
fn composed_series(
    outer: OddUnivalent,
    inner: &SchwarzSpec,
    order: usize,
    r_eval: f64,
) -> Result<PowerSeries> {
    let rho = sampling_radius(r_eval);
    let radius = 0.5 * (1.0 + rho);
    extract_coefficients(
        |z| outer.eval(inner.eval_unchecked(z)),
        order,
        rho,
        default_sample_count(order),
        Bound::Envelope {
            scale: outer.max_modulus(radius),
            radius,
        },
    )
}

fn majorant_check(label: &str, f: &PowerSeries, r: f64, rhs: f64) -> Result<Check> {
    Ok(Check {
        label: label.to_string(),
        radius: r,
        lhs: majorant(f, r)?,
        rhs,
    })
}

/// `M_f(r) ≤ 1` for `f(z) = z g(z^p)` at `r_p` and `0.9 r_p`, with `g` a random
/// Blaschke product. Probes: the extremal function attains 1 at `r_p` and
/// exceeds it at `r_p + 0.01`.
pub fn verify_theorem1(p: u32, cfg: &TrialConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let res = bohr_radius_p_symmetric(p, DEFAULT_TOL)?;
    let r = res.radius;
    let a = res
        .extremal_a
        .expect("p-symmetric radius carries its extremal parameter");

    let checks_for = |g: &BlaschkeSpec, radii: &[f64]| -> Result<Vec<Check>> {
        let r_max = radii.iter().copied().fold(0.0, f64::max);
        let series = blaschke_series(g, cfg.order, r_max.powi(p as i32))?;
        let f = p_symmetrize(&series, p)?;
        radii
            .iter()
            .map(|&t| majorant_check("M_f(r) <= 1", &f, t, 1.0))
            .collect()
    };

    let max_width = cfg.tolerance / 10.0;
    let outcomes = run_trials(cfg, |rng| {
        let g = random_bounded_function(rng, cfg.max_blaschke_degree);
        let checks = checks_for(&g, &[r, 0.9 * r]);
        TrialOutcome::from_checks(TestFunction::Blaschke { spec: g }, checks, max_width)
    });

    // z(z^p - a)/(1 - a z^p) = z g(z^p) with g(u) = (u - a)/(1 - a u)
    let extremal = BlaschkeSpec::new(vec![Complex64::new(a, 0.0)], 0.0)?;
    let mut probes = Vec::new();
    for (t, expectation) in [
        (r, Expectation::Equality),
        (r + 0.01, Expectation::Violated),
    ] {
        let check = checks_for(&extremal, &[t])?.remove(0);
        probes.push(Probe::new(
            format!("extremal p={p} at r={t:.6}"),
            TestFunction::Blaschke {
                spec: extremal.clone(),
            },
            check,
            expectation,
            Some(extremal_majorant(p, a, t)),
            cfg.tolerance,
        ));
    }
    Ok(aggregate(
        &format!("theorem1(p={p})"),
        Some(cfg),
        cfg.trials,
        cfg.tolerance,
        outcomes,
        probes,
    ))
}

/// `2 r_p^{p+1} ≤ 1` for `p = 1..=p_max`, with equality at `p = 1`.
pub fn verify_lemma1(p_max: u32) -> Result<VerificationReport> {
    if p_max == 0 {
        return Err(Error::config("p_max must be >= 1"));
    }
    let mut outcomes = Vec::with_capacity(p_max as usize);
    let mut probes = Vec::new();
    for p in 1..=p_max {
        let r = bohr_radius_p_symmetric(p, DEFAULT_TOL)?.radius;
        let check = Check {
            label: "2 r_p^(p+1) <= 1".into(),
            radius: r,
            lhs: Interval::point(crate::radii::lemma1_value(p, r)),
            rhs: 1.0,
        };
        let function = TestFunction::Parameter {
            name: "p".into(),
            value: p as f64,
        };
        if p == 1 {
            probes.push(Probe::new(
                "equality at p=1",
                function.clone(),
                check.clone(),
                Expectation::Equality,
                Some(1.0),
                LEMMA1_TOL,
            ));
        }
        outcomes.push(TrialOutcome::Checked {
            function,
            checks: vec![check],
        });
    }
    Ok(aggregate(
        "lemma1",
        None,
        p_max as usize,
        LEMMA1_TOL,
        outcomes,
        probes,
    ))
}

fn lemma2_check(g: &PowerSeries, t: f64) -> Result<Check> {
    let lhs = g.square_sum(t, 1)?;
    let b0 = (g.coeff(0).norm() - g.errors()[0]).max(0.0);
    let s = b0 * b0;
    // the right-hand side decreases in |b_0|; take its largest admissible value
    let rhs = t * (1.0 - s) * (1.0 - s) / (1.0 - s * t);
    Ok(Check {
        label: "sum |b_k|^2 R^(pk) <= bound".into(),
        radius: t,
        lhs,
        rhs,
    })
}

/// `Σ_{k≥1} |b_k|² R^{pk} ≤ R^p (1 − |b_0|²)² / (1 − |b_0|² R^p)` for random
/// bounded `g`. Probes: Möbius maps and `g(z) = z` give equality.
pub fn verify_lemma2(cfg: &TrialConfig, p: u32, big_r: f64) -> Result<VerificationReport> {
    cfg.validate()?;
    if p == 0 {
        return Err(Error::domain("p must be >= 1"));
    }
    if !(big_r > 0.0 && big_r < 1.0) {
        return Err(Error::domain(format!(
            "R must lie in (0, 1) for a certified tail, got {big_r}"
        )));
    }
    let t = big_r.powi(p as i32);
    let r_eval = t.sqrt();
    let max_width = cfg.tolerance / 10.0;
    let outcomes = run_trials(cfg, |rng| {
        let g = random_bounded_function(rng, cfg.max_blaschke_degree);
        let check = blaschke_series(&g, cfg.order, r_eval).and_then(|s| lemma2_check(&s, t));
        TrialOutcome::from_checks(
            TestFunction::Blaschke { spec: g },
            check.map(|c| vec![c]),
            max_width,
        )
    });

    let mut probes = Vec::new();
    let identity = BlaschkeSpec::new(vec![Complex64::new(0.0, 0.0)], 0.0)?;
    for (label, spec) in [("mobius a=0.5", mobius_spec(0.5)), ("identity", identity)] {
        let check = lemma2_check(&blaschke_series(&spec, cfg.order, r_eval)?, t)?;
        let rhs = check.rhs;
        probes.push(Probe::new(
            label,
            TestFunction::Blaschke { spec },
            check,
            Expectation::Equality,
            Some(rhs),
            cfg.tolerance,
        ));
    }
    Ok(aggregate(
        &format!("lemma2(p={p},R={big_r})"),
        Some(cfg),
        cfg.trials,
        cfg.tolerance,
        outcomes,
        probes,
    ))
}

/// Worst case over `1 ≤ n ≤ N` of `|a_n| ≤ 1 − |a_0|²`.
fn schwarz_pick_check(s: &PowerSeries) -> Check {
    let a0 = (s.coeff(0).norm() - s.errors()[0]).max(0.0);
    let rhs = 1.0 - a0 * a0;
    let (n, lhs) = (1..=s.order())
        .map(|n| {
            let a = s.coeff(n).norm();
            let e = s.errors()[n];
            (
                n,
                Interval {
                    lo: (a - e).max(0.0),
                    hi: a + e,
                },
            )
        })
        .fold((1, Interval::point(f64::NEG_INFINITY)), |best, cur| {
            if cur.1.lo > best.1.lo {
                cur
            } else {
                best
            }
        });
    Check {
        label: format!("|a_{n}| <= 1 - |a_0|^2"),
        radius: 0.0,
        lhs,
        rhs,
    }
}

/// Coefficient bound `|a_n| ≤ 1 − |a_0|²` for random bounded functions.
pub fn verify_schwarz_pick(cfg: &TrialConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    // sample near the unit circle so high-order coefficients stay accurate
    let r_eval = 0.96;
    let max_width = cfg.tolerance / 10.0;
    let outcomes = run_trials(cfg, |rng| {
        let g = random_bounded_function(rng, cfg.max_blaschke_degree);
        let check = blaschke_series(&g, cfg.order, r_eval).map(|s| vec![schwarz_pick_check(&s)]);
        TrialOutcome::from_checks(TestFunction::Blaschke { spec: g }, check, max_width)
    });

    let mut probes = Vec::new();
    let identity = BlaschkeSpec::new(vec![Complex64::new(0.0, 0.0)], 0.0)?;
    for (label, spec, reference) in [
        ("mobius a=0.5", mobius_spec(0.5), 0.75),
        ("identity", identity, 1.0),
    ] {
        let check = schwarz_pick_check(&blaschke_series(&spec, cfg.order, r_eval)?);
        probes.push(Probe::new(
            label,
            TestFunction::Blaschke { spec },
            check,
            Expectation::Equality,
            Some(reference),
            cfg.tolerance,
        ));
    }
    Ok(aggregate(
        "schwarz_pick",
        Some(cfg),
        cfg.trials,
        cfg.tolerance,
        outcomes,
        probes,
    ))
}

/// `M_f(1/3) ≤ 1` for random bounded `f`. Probes with Möbius maps show the
/// radius cannot be enlarged: `M = 1` exactly at `r = 1/(1 + 2a)`.
pub fn verify_classical_bohr(cfg: &TrialConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let r = 1.0 / 3.0;
    let max_width = cfg.tolerance / 10.0;
    let outcomes = run_trials(cfg, |rng| {
        let g = random_bounded_function(rng, cfg.max_blaschke_degree);
        let check = blaschke_series(&g, cfg.order, r)
            .and_then(|s| majorant_check("M_f(1/3) <= 1", &s, r, 1.0))
            .map(|c| vec![c]);
        TrialOutcome::from_checks(TestFunction::Blaschke { spec: g }, check, max_width)
    });

    let mut probes = Vec::new();
    for (a, t, expectation) in [
        (0.9, r, Expectation::Holds),
        (0.9, 0.4, Expectation::Violated),
        (0.95, 1.0 / 2.9, Expectation::Equality),
    ] {
        let spec = mobius_spec(a);
        let s = blaschke_series(&spec, cfg.order, t)?;
        probes.push(Probe::new(
            format!("mobius a={a} at r={t:.6}"),
            TestFunction::Blaschke { spec },
            majorant_check("M_f(r) <= 1", &s, t, 1.0)?,
            expectation,
            Some(mobius_majorant(a, t)),
            cfg.tolerance,
        ));
    }
    Ok(aggregate(
        "classical_bohr",
        Some(cfg),
        cfg.trials,
        cfg.tolerance,
        outcomes,
        probes,
    ))
}

/// For each sample and radius, `Σ |a_{2k−1}| r^{2k−1} ≤ r/(1 − r²)`; per
/// sample, the partial sums `S_n = Σ_{k≤n} |a_{2k−1}|` satisfy `S_n ≤ n`.
pub fn verify_eq6(
    samples: &[(String, PowerSeries)],
    r_grid: &[f64],
    tolerance: f64,
) -> Result<VerificationReport> {
    if let Some(r) = r_grid.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
        return Err(Error::domain(format!("grid radius {r} is outside (0, 1)")));
    }
    let max_width = tolerance / 10.0;
    let mut outcomes = Vec::new();
    for (name, f) in samples {
        let function = TestFunction::Sample { name: name.clone() };
        for &r in r_grid {
            let check = majorant_check("M_f(r) <= r/(1-r^2)", f, r, r / (1.0 - r * r));
            outcomes.push(TrialOutcome::from_checks(
                function.clone(),
                check.map(|c| vec![c]),
                max_width,
            ));
        }
        // worst partial sum over odd coefficients
        let mut sum = Interval::point(0.0);
        let mut worst: Option<Check> = None;
        for (k, n) in (1..=f.order()).step_by(2).enumerate() {
            let a = f.coeff(n).norm();
            let e = f.errors()[n];
            sum = Interval {
                lo: sum.lo + (a - e).max(0.0),
                hi: sum.hi + a + e,
            };
            let check = Check {
                label: format!("S_{} <= {}", k + 1, k + 1),
                radius: 0.0,
                lhs: sum,
                rhs: (k + 1) as f64,
            };
            if worst.as_ref().is_none_or(|w| check.margin() < w.margin()) {
                worst = Some(check);
            }
        }
        if let Some(check) = worst {
            outcomes.push(TrialOutcome::Checked {
                function: function.clone(),
                checks: vec![check],
            });
        }
    }

    let r0 = golden_radius();
    let koebe = OddUnivalent::OddKoebe.series(samples.first().map_or(256, |s| s.1.order()));
    let probes = vec![Probe::new(
        "z/(1-z^2) at golden radius",
        TestFunction::Sample {
            name: OddUnivalent::OddKoebe.name().into(),
        },
        majorant_check("M_f(r) <= 1", &koebe, r0, 1.0)?,
        Expectation::Equality,
        Some(1.0),
        tolerance,
    )];
    let trials = outcomes.len();
    Ok(aggregate("eq6", None, trials, tolerance, outcomes, probes))
}

/// Majorant and ℓ² bounds for `g = f ∘ w`, `f(z) = z/(1 − z²)`, `w` a random
/// Schwarz map, at the subordination radius.
pub fn verify_theorem2(cfg: &TrialConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let r = subordination_radius()?.radius;
    let outer = OddUnivalent::OddKoebe;
    let checks_for = |w: &SchwarzSpec| -> Result<Vec<Check>> {
        let g = composed_series(outer, w, cfg.order, r)?;
        Ok(vec![
            majorant_check("M_g(r) <= 1", &g, r, 1.0)?,
            Check {
                label: "sum |b_k|^2 r^k <= r/(1-r^2)".into(),
                radius: r,
                lhs: g.square_sum(r, 1)?,
                rhs: r / (1.0 - r * r),
            },
        ])
    };
    let max_width = cfg.tolerance / 10.0;
    let outcomes = run_trials(cfg, |rng| {
        let w = random_schwarz_map(rng, cfg.max_blaschke_degree);
        let checks = checks_for(&w);
        TrialOutcome::from_checks(
            TestFunction::Composition { outer, inner: w },
            checks,
            max_width,
        )
    });

    let mut probes = Vec::new();
    let origin = Complex64::new(0.0, 0.0);
    for (label, zeros, reference) in [
        ("w(z)=z", vec![origin], r / (1.0 - r * r)),
        ("w(z)=z^2", vec![origin, origin], r * r / (1.0 - r.powi(4))),
    ] {
        let w = SchwarzSpec::new(zeros, 0.0)?;
        let check = checks_for(&w)?.remove(0);
        probes.push(Probe::new(
            label,
            TestFunction::Composition { outer, inner: w },
            check,
            Expectation::Holds,
            Some(reference),
            cfg.tolerance,
        ));
    }
    Ok(aggregate(
        "theorem2",
        Some(cfg),
        cfg.trials,
        cfg.tolerance,
        outcomes,
        probes,
    ))
}

/// `M_g(r) ≤ 1` at `r = (√5 − 1)/2` for odd `g = f ∘ w`, with `f` cycling
/// through the odd univalent samples and `w` a random odd Schwarz map.
pub fn verify_remark2(cfg: &TrialConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let r = golden_radius();
    let check_for = |outer: OddUnivalent, w: &SchwarzSpec| -> Result<Check> {
        majorant_check(
            "M_g(r) <= 1",
            &composed_series(outer, w, cfg.order, r)?,
            r,
            1.0,
        )
    };
    let max_width = cfg.tolerance / 10.0;
    let outcomes = run_trials(cfg, |rng| {
        let outer = OddUnivalent::ALL[rand::Rng::random_range(rng, 0..OddUnivalent::ALL.len())];
        let w = random_odd_schwarz_map(rng, cfg.max_blaschke_degree);
        let check = check_for(outer, &w).map(|c| vec![c]);
        TrialOutcome::from_checks(
            TestFunction::Composition { outer, inner: w },
            check,
            max_width,
        )
    });

    let origin = Complex64::new(0.0, 0.0);
    let mut probes = Vec::new();
    for (label, outer, zeros, expectation, reference) in [
        (
            "g = z/(1-z^2)",
            OddUnivalent::OddKoebe,
            vec![origin],
            Expectation::Equality,
            1.0,
        ),
        (
            "w(z)=z^3",
            OddUnivalent::OddKoebe,
            vec![origin; 3],
            Expectation::Holds,
            r.powi(3) / (1.0 - r.powi(6)),
        ),
        (
            "g = z",
            OddUnivalent::Identity,
            vec![origin],
            Expectation::Holds,
            r,
        ),
    ] {
        let w = SchwarzSpec::new(zeros, 0.0)?;
        let check = check_for(outer, &w)?;
        probes.push(Probe::new(
            label,
            TestFunction::Composition { outer, inner: w },
            check,
            expectation,
            Some(reference),
            cfg.tolerance,
        ));
    }
    Ok(aggregate(
        "remark2",
        Some(cfg),
        cfg.trials,
        cfg.tolerance,
        outcomes,
        probes,
    ))
}
