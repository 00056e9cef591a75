//! Command implementations behind the `bohrlab` binary.
//!
//! Every command returns a [`CommandOutput`]: the human-readable text for
//! stdout, the machine-readable [`OutputRecord`] written by `--out`, and the
//! process exit code. Nothing is printed until a command has fully succeeded.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod record;

pub use args::{
    Cli, Command, MajorantArgs, MajorantFunction, RadiusArgs, RadiusKind, Suite, TableArgs,
    TableFormat, VerifyArgs, MAX_P,
};
pub use record::{MajorantRow, OutputRecord, Results, TableRow, FORMAT_VERSION};

use std::fmt::Write as _;

use bohrlab::radii::{self, RadiusResult};
use bohrlab::series::{majorant, mobius_coefficients};
use bohrlab::verify::{self, odd_univalent_samples, OddUnivalent, TrialConfig, VerificationReport};
use bohrlab::PowerSeries;
use num_complex::Complex64;

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "BOHRLAB_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] bohrlab::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot serialize output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_NUMERIC,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug)]
pub struct CommandOutput {
    pub stdout: String,
    pub record: OutputRecord,
    pub exit_code: i32,
}

/// Twelve significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-4..12).contains(&magnitude) {
        format!("{:.*}", (11 - magnitude).max(0) as usize, x)
    } else {
        format!("{x:.11e}")
    }
}

pub fn run(cli: &Cli, argv: &[String], seed_env: Option<&str>) -> Result<CommandOutput, CliError> {
    let (stdout, results, exit_code) = match &cli.command {
        Command::Radius(a) => cmd_radius(a)?,
        Command::Table(a) => cmd_table(a)?,
        Command::Verify(a) => cmd_verify(a, seed_env)?,
        Command::Majorant(a) => cmd_majorant(a)?,
    };
    Ok(CommandOutput {
        stdout,
        record: OutputRecord::new(argv.to_vec(), results),
        exit_code,
    })
}

fn describe_radius(res: &RadiusResult) -> String {
    let mut s = format!(
        "{}: radius = {}  residual = {:.3e}  provenance = {}",
        record::label_name(&res.label),
        sig12(res.radius),
        res.residual,
        record::provenance_name(res.provenance),
    );
    if let Some(a) = res.extremal_a {
        let _ = write!(s, "  extremal_a = {}", sig12(a));
    }
    s
}

type Outcome = (String, Results, i32);

pub fn cmd_radius(args: &RadiusArgs) -> Result<Outcome, CliError> {
    if !(args.tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    let res = match args.kind {
        RadiusKind::Theorem1 => {
            let p = args
                .p
                .ok_or_else(|| usage("--kind theorem1 requires --p"))?;
            radii::bohr_radius_p_symmetric(p, args.tol)?
        }
        RadiusKind::Rstar => radii::closed_form_r_star()?,
        RadiusKind::Subordination => radii::subordination_radius()?,
        RadiusKind::Remark1 => radii::remark1_improved_radius()?,
        RadiusKind::Corollary5 => {
            let alpha = args
                .alpha
                .ok_or_else(|| usage("--kind corollary5 requires --alpha"))?;
            if !(alpha > 0.0 && alpha <= 1.0) {
                return Err(usage(format!("--alpha must lie in (0, 1], got {alpha}")));
            }
            radii::corollary5_radius(alpha)?
        }
        RadiusKind::Abs => radii::abs_lower_radius()?,
    };
    let text = describe_radius(&res) + "\n";
    Ok((text, Results::Radius { radius: res }, EXIT_OK))
}

pub fn table_rows(p_max: u32) -> Result<Vec<TableRow>, CliError> {
    (1..=p_max)
        .map(|p| {
            let res = radii::bohr_radius_p_symmetric(p, radii::DEFAULT_TOL)?;
            Ok(TableRow {
                p,
                r_p: res.radius,
                extremal_a: res.extremal_a.unwrap_or(f64::NAN),
                residual: res.residual,
                lemma1_value: radii::lemma1_value(p, res.radius),
            })
        })
        .collect()
}

pub fn cmd_table(args: &TableArgs) -> Result<Outcome, CliError> {
    let rows = table_rows(args.p_max)?;
    let text = match args.format {
        TableFormat::Csv => record::table_csv(&rows),
        TableFormat::Json => serde_json::to_string_pretty(&rows)? + "\n",
    };
    Ok((text, Results::Table { rows }, EXIT_OK))
}

fn resolve_seed(flag: u64, env: Option<&str>) -> Result<u64, CliError> {
    match env {
        Some(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{SEED_ENV}={v} is not an unsigned 64-bit integer"))),
        _ => Ok(flag),
    }
}

/// Radius parameter of the lemma2 suite.
pub const LEMMA2_RADIUS: f64 = 0.9;
/// Largest `p` in the lemma1 sweep unless `--p` is given.
pub const LEMMA1_P_MAX: u32 = 32;

pub fn run_suite(
    suite: Suite,
    p: Option<u32>,
    cfg: &TrialConfig,
) -> Result<Vec<VerificationReport>, CliError> {
    let reports = match suite {
        Suite::Theorem1 => vec![verify::verify_theorem1(p.unwrap_or(2), cfg)?],
        Suite::Lemma1 => vec![verify::verify_lemma1(p.unwrap_or(LEMMA1_P_MAX))?],
        Suite::Lemma2 => vec![verify::verify_lemma2(cfg, p.unwrap_or(2), LEMMA2_RADIUS)?],
        Suite::Schwarzpick => vec![verify::verify_schwarz_pick(cfg)?],
        Suite::Classical => vec![verify::verify_classical_bohr(cfg)?],
        Suite::Eq6 => vec![verify::verify_eq6(
            &odd_univalent_samples(cfg.order),
            &verify::DEFAULT_EQ6_GRID,
            cfg.tolerance,
        )?],
        Suite::Theorem2 => vec![verify::verify_theorem2(cfg)?],
        Suite::Remark2 => vec![verify::verify_remark2(cfg)?],
        Suite::All => {
            let mut all = Vec::new();
            match p {
                Some(p) => all.push(verify::verify_theorem1(p, cfg)?),
                None => {
                    for p in 1..=3 {
                        all.push(verify::verify_theorem1(p, cfg)?);
                    }
                }
            }
            for s in [
                Suite::Lemma1,
                Suite::Lemma2,
                Suite::Schwarzpick,
                Suite::Classical,
                Suite::Eq6,
                Suite::Theorem2,
                Suite::Remark2,
            ] {
                // --p selects the theorem1 order only
                all.extend(run_suite(s, None, cfg)?);
            }
            all
        }
    };
    Ok(reports)
}

pub fn cmd_verify(args: &VerifyArgs, seed_env: Option<&str>) -> Result<Outcome, CliError> {
    if args.trials == 0 {
        return Err(usage("--trials must be >= 1"));
    }
    let seed = resolve_seed(args.seed, seed_env)?;
    let cfg = TrialConfig::default()
        .with_trials(args.trials)
        .with_seed(seed);
    let reports = run_suite(args.suite, args.p, &cfg)?;
    let passed = reports.iter().all(VerificationReport::passed);
    let mut text = String::new();
    for r in &reports {
        text.push_str(&r.summary());
        text.push('\n');
    }
    let _ = writeln!(text, "{}", if passed { "PASS" } else { "FAIL" });
    let code = if passed { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok((
        text,
        Results::Verify {
            passed,
            seed,
            reports,
        },
        code,
    ))
}

fn majorant_series(args: &MajorantArgs) -> Result<(String, PowerSeries), CliError> {
    Ok(match args.function {
        MajorantFunction::Extremal => {
            let p = args.p.unwrap_or(2);
            let a = match args.a {
                Some(a) if a > 0.0 && a < 1.0 => a,
                Some(a) => return Err(usage(format!("--a must lie in (0, 1), got {a}"))),
                None => radii::bohr_radius_p_symmetric(p, radii::DEFAULT_TOL)?
                    .extremal_a
                    .expect("p-symmetric radius carries its extremal parameter"),
            };
            (
                format!("extremal(p={p},a={})", sig12(a)),
                radii::extremal_series(p, a, args.order)?,
            )
        }
        MajorantFunction::Mobius => {
            let a = args
                .a
                .ok_or_else(|| usage("--function mobius requires --a"))?;
            if !(a.abs() < 1.0) {
                return Err(usage(format!("--a must satisfy |a| < 1, got {a}")));
            }
            (
                format!("mobius(a={a})"),
                mobius_coefficients(Complex64::new(a, 0.0), args.order)?,
            )
        }
        MajorantFunction::Oddkoebe => (
            "oddkoebe".to_string(),
            OddUnivalent::OddKoebe.series(args.order),
        ),
    })
}

/// Bisection on `mid(M_f(r)) − 1` between two grid radii that bracket it.
fn refine_crossing(f: &PowerSeries, mut lo: f64, mut hi: f64) -> Result<f64, CliError> {
    let excess = |r: f64| -> Result<f64, CliError> { Ok(majorant(f, r)?.mid() - 1.0) };
    let lo_sign = excess(lo)? > 0.0;
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (excess(mid)? > 0.0) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn cmd_majorant(args: &MajorantArgs) -> Result<Outcome, CliError> {
    if !(args.r_from >= 0.0 && args.r_from < args.r_to && args.r_to < 1.0) {
        return Err(usage("need 0 <= --r-from < --r-to < 1"));
    }
    if args.steps < 2 {
        return Err(usage("--steps must be >= 2"));
    }
    if args.order == 0 {
        return Err(usage("--order must be >= 1"));
    }
    let (name, f) = majorant_series(args)?;
    let n = args.steps - 1;
    let mut rows = Vec::with_capacity(args.steps);
    let mut crossing = None;
    for i in 0..args.steps {
        let r = if i == n {
            args.r_to
        } else {
            args.r_from + (args.r_to - args.r_from) * i as f64 / n as f64
        };
        let m = majorant(&f, r)?;
        let crosses = rows
            .last()
            .is_some_and(|prev: &MajorantRow| (prev.majorant > 1.0) != (m.mid() > 1.0));
        if crosses && crossing.is_none() {
            crossing = Some(refine_crossing(
                &f,
                rows.last().map_or(r, |p: &MajorantRow| p.r),
                r,
            )?);
        }
        rows.push(MajorantRow {
            r,
            majorant: m.mid(),
            width: m.width(),
            crosses_one: crosses,
        });
    }
    let mut text = record::majorant_csv(&rows);
    if let Some(c) = crossing {
        let _ = writeln!(text, "# {name}: M = 1 at r = {}", sig12(c));
    }
    Ok((
        text,
        Results::Majorant {
            function: name,
            order: f.order(),
            rows,
            crossing,
        },
        EXIT_OK,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(std::f64::consts::FRAC_1_SQRT_2), "0.707106781187");
        assert_eq!(sig12(0.5549581320873712), "0.554958132087");
        assert_eq!(sig12(1.0), "1.00000000000");
        assert_eq!(sig12(0.0), "0");
    }

    #[test]
    fn seed_resolution() {
        assert_eq!(resolve_seed(3, None).unwrap(), 3);
        assert_eq!(resolve_seed(3, Some("11")).unwrap(), 11);
        assert_eq!(resolve_seed(3, Some("")).unwrap(), 3);
        assert!(matches!(
            resolve_seed(3, Some("x")),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(usage("x").exit_code(), EXIT_USAGE);
        assert_eq!(
            CliError::from(bohrlab::Error::Numeric("x".into())).exit_code(),
            EXIT_NUMERIC
        );
    }
}
