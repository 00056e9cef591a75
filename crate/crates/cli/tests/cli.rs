use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bohrlab_cli::{OutputRecord, Results, TableRow};
use serde_json::Value;

fn bohrlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bohrlab"))
        .args(args)
        .env_remove("BOHRLAB_SEED")
        .output()
        .expect("run bohrlab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("bohrlab-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Self(dir)
    }

    fn file(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/output_record.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("valid schema")
}

fn read_record(path: &Path) -> (Value, OutputRecord) {
    let text = std::fs::read_to_string(path).unwrap();
    (
        serde_json::from_str(&text).unwrap(),
        serde_json::from_str(&text).unwrap(),
    )
}

fn assert_valid(validator: &jsonschema::Validator, v: &Value) {
    let errors: Vec<String> = validator
        .iter_errors(v)
        .map(|e| format!("{e} at {}", e.instance_path))
        .collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn records_validate_and_round_trip() {
    let dir = TempDir::new("schema");
    let validator = schema();
    let runs: [&[&str]; 6] = [
        &["radius", "--kind", "theorem1", "--p", "2"],
        &["radius", "--kind", "corollary5", "--alpha", "0.5"],
        &["table", "--p-max", "5"],
        &["verify", "--suite", "all", "--trials", "20", "--seed", "3"],
        &[
            "majorant",
            "--function",
            "mobius",
            "--a",
            "-0.4",
            "--steps",
            "11",
        ],
        &[
            "majorant",
            "--function",
            "extremal",
            "--p",
            "3",
            "--steps",
            "11",
            "--r-to",
            "0.9",
        ],
    ];
    for (i, args) in runs.iter().enumerate() {
        let out = dir.file(&format!("{i}.json"));
        let mut full: Vec<&str> = args.to_vec();
        full.extend(["--out", out.to_str().unwrap()]);
        let o = bohrlab(&full);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let (raw, record) = read_record(&out);
        assert_valid(&validator, &raw);
        assert_eq!(record.format_version, 1);
        assert_eq!(record.command, full);
        let again: OutputRecord =
            serde_json::from_str(&serde_json::to_string(&record).unwrap()).unwrap();
        assert_eq!(again, record);
        assert_eq!(serde_json::to_value(&record).unwrap(), raw);
    }
}

#[test]
fn schema_rejects_malformed_records() {
    let validator = schema();
    let good = serde_json::json!({
        "format_version": 1,
        "command": ["table", "--p-max", "1"],
        "timestamp": "2026-01-01T00:00:00Z",
        "results": {"kind": "table", "rows": [
            {"p": 1, "r_p": 0.7, "extremal_a": 0.7, "residual": 0.0, "lemma1_value": 1.0}
        ]}
    });
    assert!(validator.is_valid(&good));
    let mut missing = good.clone();
    missing["results"]["rows"][0]
        .as_object_mut()
        .unwrap()
        .remove("r_p");
    assert!(!validator.is_valid(&missing));
    let mut version = good.clone();
    version["format_version"] = 2.into();
    assert!(!validator.is_valid(&version));
    let mut kind = good;
    kind["results"]["kind"] = "plot".into();
    assert!(!validator.is_valid(&kind));
}

#[test]
fn radius_prints_twelve_digits() {
    let o = bohrlab(&["radius", "--kind", "theorem1", "--p", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("radius = 0.707106781187"), "{text}");
    assert!(text.contains("residual"));
    let o = bohrlab(&["radius", "--kind", "rstar"]);
    assert!(stdout(&o).contains("0.789990624250"));
}

#[test]
fn bad_arguments_exit_2() {
    for args in [
        &["radius", "--kind", "theorem1", "--p", "0"][..],
        &["radius", "--kind", "theorem1"],
        &["radius", "--kind", "corollary5", "--alpha", "1.5"],
        &["radius", "--kind", "nonsense"],
        &["radius", "--kind", "theorem1", "--p", "2", "--tol", "-1"],
        &["table", "--p-max", "0"],
        &["verify", "--suite", "all", "--trials", "0"],
        &["majorant", "--function", "mobius"],
        &["majorant", "--function", "mobius", "--a", "1.2"],
        &["majorant", "--function", "oddkoebe", "--r-to", "1.0"],
        &[],
    ] {
        let o = bohrlab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?} printed partial output");
    }
}

#[test]
fn invalid_seed_variable_exits_2() {
    let o = Command::new(env!("CARGO_BIN_EXE_bohrlab"))
        .args(["verify", "--suite", "classical", "--trials", "5"])
        .env("BOHRLAB_SEED", "seven")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn seed_variable_overrides_flag() {
    let dir = TempDir::new("seed");
    let run = |seed_flag: &str, env: Option<&str>, name: &str| {
        let out = dir.file(name);
        let mut c = Command::new(env!("CARGO_BIN_EXE_bohrlab"));
        c.args([
            "verify", "--suite", "theorem1", "--trials", "30", "--seed", seed_flag, "--out",
        ])
        .arg(&out)
        .env_remove("BOHRLAB_SEED");
        if let Some(v) = env {
            c.env("BOHRLAB_SEED", v);
        }
        assert_eq!(c.output().unwrap().status.code(), Some(0));
        match read_record(&out).1.results {
            Results::Verify { seed, reports, .. } => (seed, reports),
            other => panic!("unexpected {other:?}"),
        }
    };
    let (s1, r1) = run("5", None, "a.json");
    let (s2, r2) = run("1", Some("5"), "b.json");
    let (s3, r3) = run("6", None, "c.json");
    assert_eq!((s1, s2, s3), (5, 5, 6));
    assert_eq!(r1, r2);
    assert_ne!(r1, r3);
}

#[test]
fn verify_is_deterministic_across_processes() {
    let a = bohrlab(&[
        "verify", "--suite", "remark2", "--trials", "50", "--seed", "11",
    ]);
    let b = bohrlab(&[
        "verify", "--suite", "remark2", "--trials", "50", "--seed", "11",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("PASS\n"));
}

#[test]
fn table_csv_and_json_agree() {
    let csv = stdout(&bohrlab(&["table", "--p-max", "12"]));
    let json = stdout(&bohrlab(&["table", "--p-max", "12", "--format", "json"]));
    let from_json: Vec<TableRow> = serde_json::from_str(&json).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("p,r_p,extremal_a,residual,lemma1_value"));
    let from_csv: Vec<TableRow> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f.len(), 5);
            TableRow {
                p: f[0].parse().unwrap(),
                r_p: f[1].parse().unwrap(),
                extremal_a: f[2].parse().unwrap(),
                residual: f[3].parse().unwrap(),
                lemma1_value: f[4].parse().unwrap(),
            }
        })
        .collect();
    assert_eq!(from_csv.len(), 12);
    // bitwise equality, not approximate
    assert_eq!(from_csv, from_json);
    for row in &from_json {
        assert!(row.lemma1_value <= 1.0 + 1e-12);
    }
}

fn crossing(args: &[&str]) -> f64 {
    let dir = TempDir::new(&format!("cross-{}", args.join("_").replace(['-', '.'], "")));
    let out = dir.file("m.json");
    let mut full = args.to_vec();
    full.extend(["--out", out.to_str().unwrap()]);
    let o = bohrlab(&full);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = stdout(&o);
    assert!(text.starts_with("r,majorant,width,crosses_one\n"));
    assert_eq!(
        text.lines().filter(|l| l.ends_with(",true")).count(),
        1,
        "{text}"
    );
    match read_record(&out).1.results {
        Results::Majorant { crossing, rows, .. } => {
            assert!(rows.windows(2).all(|w| w[0].majorant <= w[1].majorant));
            crossing.expect("bracketed crossing")
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn majorant_crossings_match_known_radii() {
    let r2 = crossing(&[
        "majorant",
        "--function",
        "extremal",
        "--p",
        "2",
        "--r-from",
        "0.7",
        "--r-to",
        "0.85",
    ]);
    assert!((r2 - 0.7899906242497099).abs() < 1e-9, "{r2}");
    let golden = crossing(&[
        "majorant",
        "--function",
        "oddkoebe",
        "--r-from",
        "0.5",
        "--r-to",
        "0.7",
    ]);
    assert!(
        (golden - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-9,
        "{golden}"
    );
    // |a| + (1 − a²) r/(1 − a r) = 1 at r = 1/(1 + 2a)
    let mobius = crossing(&[
        "majorant",
        "--function",
        "mobius",
        "--a",
        "0.9",
        "--r-to",
        "0.9",
    ]);
    assert!((mobius - 1.0 / 2.8).abs() < 1e-9, "{mobius}");
}

#[test]
fn majorant_without_crossing_has_none() {
    let o = bohrlab(&[
        "majorant",
        "--function",
        "oddkoebe",
        "--r-to",
        "0.5",
        "--steps",
        "6",
    ]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 7);
    assert!(!text.contains('#'));
}

#[test]
fn unmet_tolerance_exits_3() {
    let o = bohrlab(&[
        "radius", "--kind", "theorem1", "--p", "2", "--tol", "1e-300",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("tolerance"));
}

#[test]
fn largest_symmetry_order() {
    let max = bohrlab_cli::MAX_P.to_string();
    let o = bohrlab(&["radius", "--kind", "theorem1", "--p", &max]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let beyond = (bohrlab_cli::MAX_P + 1).to_string();
    assert_eq!(
        bohrlab(&["radius", "--kind", "theorem1", "--p", &beyond])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn full_suite_is_reproducible_modulo_timestamp() {
    let dir = TempDir::new("all");
    let out = dir.file("record.json");
    let run = || {
        let o = bohrlab(&[
            "verify",
            "--suite",
            "all",
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        let mut record = read_record(&out).0;
        record["timestamp"] = Value::Null;
        (o.stdout, record)
    };
    assert_eq!(run(), run());
}
