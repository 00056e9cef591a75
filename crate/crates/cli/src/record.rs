use std::fmt::Write as _;

use bohrlab::radii::{Provenance, RadiusLabel, RadiusResult};
use bohrlab::verify::VerificationReport;
use chrono::{SecondsFormat, Utc};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

/// Everything `--out` writes. `timestamp` is the only field that differs
/// between two runs with identical arguments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub format_version: u32,
    pub command: Vec<String>,
    pub timestamp: String,
    pub results: Results,
}

impl OutputRecord {
    pub fn new(command: Vec<String>, results: Results) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            command,
            timestamp: Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
            results,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Results {
    Radius {
        radius: RadiusResult,
    },
    Table {
        rows: Vec<TableRow>,
    },
    Verify {
        passed: bool,
        seed: u64,
        reports: Vec<VerificationReport>,
    },
    Majorant {
        function: String,
        order: usize,
        rows: Vec<MajorantRow>,
        crossing: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub p: u32,
    pub r_p: f64,
    pub extremal_a: f64,
    pub residual: f64,
    pub lemma1_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MajorantRow {
    pub r: f64,
    /// Midpoint of the certified enclosure.
    pub majorant: f64,
    pub width: f64,
    /// The midpoint crossed 1 since the previous row.
    pub crosses_one: bool,
}

pub const TABLE_HEADER: &str = "p,r_p,extremal_a,residual,lemma1_value";
pub const MAJORANT_HEADER: &str = "r,majorant,width,crosses_one";

// `{}` on f64 prints the shortest string that parses back to the same value,
// so CSV and JSON carry identical numbers.
pub fn table_csv(rows: &[TableRow]) -> String {
    let mut s = String::from(TABLE_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.p, r.r_p, r.extremal_a, r.residual, r.lemma1_value
        );
    }
    s
}

pub fn majorant_csv(rows: &[MajorantRow]) -> String {
    let mut s = String::from(MAJORANT_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(s, "{},{},{},{}", r.r, r.majorant, r.width, r.crosses_one);
    }
    s
}

pub fn label_name(label: &RadiusLabel) -> String {
    match label {
        RadiusLabel::Theorem1 { p } => format!("theorem1(p={p})"),
        RadiusLabel::ClosedFormRStar => "rstar".into(),
        RadiusLabel::Subordination => "subordination".into(),
        RadiusLabel::Remark1Improved => "remark1".into(),
        RadiusLabel::Corollary5 { alpha } => format!("corollary5(alpha={alpha})"),
        RadiusLabel::AbsLower => "abs".into(),
    }
}

pub fn provenance_name(p: Provenance) -> &'static str {
    match p {
        Provenance::RootFound => "root_found",
        Provenance::ClosedForm => "closed_form",
        Provenance::Optimized => "optimized",
    }
}
