//! The command-line front end, driven through `cli::run`.

use eisen::cli::{run, ResultRecord, ARTIFACT_VERSION};
use eisen::field::NumberField;
use eisen::schwartz::FractionalSchwartz;
use serde_json::Value;
use std::path::Path;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn eisen(args: &[&str], cache: &Path) -> Out {
    let mut argv = vec!["eisen", "--cache-dir", cache.to_str().unwrap()];
    argv.extend_from_slice(args);
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let code = run(argv, &mut o, &mut e);
    Out {
        code,
        stdout: String::from_utf8(o).unwrap(),
        stderr: String::from_utf8(e).unwrap(),
    }
}

fn record(out: &Out) -> ResultRecord {
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(out.stdout.trim()).unwrap()
}

#[test]
fn field_record() {
    let dir = tempfile::tempdir().unwrap();
    let r = record(&eisen(&["field", "--D", "5"], dir.path()));
    assert_eq!(r.command, "field");
    assert_eq!(r.version, ARTIFACT_VERSION);
    assert_eq!(r.config.d, 5);
    let u = &r.payload["fundamental_unit"];
    assert_eq!(u["sqrt_basis"], serde_json::json!(["1/2", "1/2"]));
    assert_eq!(u["norm"], -1);
    assert_eq!(r.payload["narrow_class_number"], 1);
    let r3 = record(&eisen(&["field", "--D", "3"], dir.path()));
    assert_eq!(r3.payload["fundamental_unit"]["sqrt_basis"], serde_json::json!(["2", "1"]));
    assert_eq!(r3.payload["narrow_class_number"], 2);
}

#[test]
fn zeta_values() {
    let dir = tempfile::tempdir().unwrap();
    let r = record(&eisen(&["zeta", "--D", "5", "--neg", "1"], dir.path()));
    assert_eq!(r.payload["value"], "1/30");
    assert_eq!(r.payload["agrees"], true);
    // ζ(-1)·(1 - 2) over Q at level 4
    let r = record(&eisen(&["zeta", "--N", "4", "--neg", "1"], dir.path()));
    assert_eq!(r.payload["value"], "1/12");
    assert_eq!(r.payload["agrees"], true);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["bogus"][..],
        &["field", "--D", "4"],
        &["field", "--N", "0"],
        &["zeta", "--neg", "0"],
        &["certify"],
        &["eisenstein", "--N", "3", "--tau", "1,2,3"],
        &["fourier", "--input", "/nonexistent/table.txt"],
    ] {
        let out = eisen(args, dir.path());
        assert_eq!(out.code, 2, "{:?}: {}", args, out.stderr);
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let help = eisen(&["--help"], dir.path());
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("Usage"));
}

#[test]
fn cache_hit_and_recovery() {
    let dir = tempfile::tempdir().unwrap();
    let a = record(&eisen(&["classgroup", "--D", "5", "--N", "3"], dir.path()));
    assert!(!a.cache_hit);
    assert_eq!(a.payload["order"], 2);
    let b = record(&eisen(&["classgroup", "--D", "5", "--N", "3"], dir.path()));
    assert!(b.cache_hit);
    assert_eq!(a.payload, b.payload);

    let file = dir.path().join(format!("classgroup-D5-N3-v{}.json", ARTIFACT_VERSION));
    let text = std::fs::read_to_string(&file).unwrap();
    std::fs::write(&file, &text[..text.len() / 3]).unwrap();
    let out = eisen(&["classgroup", "--D", "5", "--N", "3"], dir.path());
    assert!(out.stderr.contains("warning"), "{}", out.stderr);
    let c = record(&out);
    assert!(!c.cache_hit);
    assert_eq!(c.warnings.len(), 1);
    assert_eq!(c.payload, a.payload);
    assert!(record(&eisen(&["classgroup", "--D", "5", "--N", "3"], dir.path())).cache_hit);
}

#[test]
fn no_cache_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let r = record(&eisen(&["field", "--D", "2", "--no-cache"], &cache));
    assert!(!r.cache_hit);
    assert!(!cache.exists());
}

#[test]
fn certify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["certify", "--N", "3", "--m", "1", "--seed", "7", "--bound", "1e5"];
    let a = record(&eisen(&args, dir.path()));
    let b = record(&eisen(&args, dir.path()));
    assert_eq!(a.payload, b.payload);
    assert!(a.payload["certificate"]["rational"].is_string());
}

#[test]
fn fourier_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let q = NumberField::rationals();
    let f = FractionalSchwartz::from_points(&q, 2, &[(((1, 0), (0, 0)), 1), (((0, 0), (1, 0)), -1)]);
    let path = dir.path().join("phi.txt");
    std::fs::write(&path, f.to_text()).unwrap();
    let r = record(&eisen(&["fourier", "--input", path.to_str().unwrap()], dir.path()));
    assert_eq!(r.payload["double_transform_is_identity"], true);
    let fh = FractionalSchwartz::from_text(r.payload["transform"].as_str().unwrap()).unwrap();
    assert!(fh.equals(&f.fourier_transform().unwrap()).unwrap());

    let r = record(&eisen(&["constant-term", "--input", path.to_str().unwrap()], dir.path()));
    assert_eq!(r.payload["exact"], "1/8");
}

#[test]
fn csv_and_text_formats() {
    let dir = tempfile::tempdir().unwrap();
    let csv = eisen(&["zeta", "--D", "5", "--neg", "1", "--format", "csv"], dir.path());
    assert_eq!(csv.code, 0);
    assert!(csv.stdout.starts_with("key,value\n"));
    assert!(csv.stdout.lines().any(|l| l == "payload.value,1/30"));
    assert!(csv.stdout.lines().any(|l| l == "config.D,5"));
    let text = eisen(&["zeta", "--D", "5", "--neg", "1", "--format", "text"], dir.path());
    assert_eq!(text.code, 0);
    assert!(text.stdout.starts_with("zeta (version"));
    assert!(text.stdout.lines().any(|l| l == "  value = 1/30"));
}

#[test]
fn record_round_trips_through_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = eisen(&["horospherical", "--N", "3", "--samples", "2"], dir.path());
    let r = record(&out);
    let again: ResultRecord = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(again, r);
    let v: Value = serde_json::from_str(out.stdout.trim()).unwrap();
    for key in ["command", "config", "payload", "wall_time_us", "version", "cache_hit", "warnings"] {
        assert!(v.get(key).is_some(), "missing {}", key);
    }
    assert_eq!(r.payload["sl2_order"], 24);
    assert_eq!(r.payload["round_trip"]["preimage_in_s0"], true);
}
