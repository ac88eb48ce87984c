use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cfree::json;
use cfree::measures::{CircleMeasure, MeasurePair};
use cfree::series::{Approx, Exact};
use num_rational::BigRational;

fn cfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfree")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

#[test]
fn nc_count() {
    let o = cfree(&["nc", "--n", "4", "--count-only"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "14");
    let o = cfree(&["nc", "--n", "4", "--class", "nc_0"]);
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = cfree(&["ncl", "--n", "5", "--count-only"]);
    assert_eq!(stdout(&o).trim(), "90");
}

#[test]
fn verify_transforms_suite() {
    let args = ["verify", "--suite", "transforms", "--order", "5", "--seed", "7"];
    let o = cfree(&args);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("[ok  ] T_XY = T_X T_Y and ᶜT_XY = ᶜT_X ᶜT_Y"));
    assert!(text.contains("all checks passed"));
    assert_eq!(cfree(&args).stdout, o.stdout);
}

#[test]
fn cfree_convolution_of_point_mass_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let pair = |mu: i64, nu: i64| {
        json::pair_to_json(&MeasurePair::new(
            CircleMeasure::point_mass(q(mu, 4)),
            CircleMeasure::point_mass(q(nu, 4)),
        ))
    };
    let a = write(dir.path(), "a.json", &pair(1, 3));
    let b = write(dir.path(), "b.json", &pair(1, 2));
    let o = cfree(&["convolve", "--kind", "cfree", "--a", &a, "--b", &b, "--order", "5", "--mode", "exact"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = json::pair_from_json(&stdout(&o)).unwrap();
    let want = |turns| CircleMeasure::point_mass(q(turns, 4)).moments::<Exact>(5).unwrap();
    assert_eq!(out.mu.moments::<Exact>(5).unwrap(), want(2));
    assert_eq!(out.nu.moments::<Exact>(5).unwrap(), want(1));
}

#[test]
fn transform_of_exact_moments() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "m.json", r#"{"mode": "exact", "psi": [["1/2", "0"], ["1/3", "0"], ["1/4", "0"]]}"#);
    let o = cfree(&["transform", "--in", &input, "--what", "t", "--order", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let json::AnySeries::Exact(t) = json::series_from_json(&stdout(&o)).unwrap() else { panic!("exact expected") };
    assert_eq!(t.order(), 2);
    assert_eq!(t.coeffs()[0], Exact::new(q(1, 2), q(0, 1)));
    let o = cfree(&["transform", "--in", &input, "--what", "bogus", "--order", "3"]);
    assert!(!o.status.success());
}

#[test]
fn idiv_and_semigroup() {
    let dir = tempfile::tempdir().unwrap();
    let sigma = write(dir.path(), "s.json", "[]");
    let o = cfree(&["idiv", "--gamma", "1/8", "--sigma", &sigma, "--kind", "boolean", "--order", "4"]);
    assert!(o.status.success());
    let m = json::measure_from_json(&stdout(&o)).unwrap();
    let want = CircleMeasure::point_mass(q(1, 8)).moments_approx(4).unwrap();
    for (a, b) in m.moments_approx(4).unwrap().iter().zip(&want) {
        assert!((a - b).norm() < 1e-14);
    }
    let gen = write(dir.path(), "g.json", r#"{"gamma": [1, 0], "sigma": [{"turns": "1/3", "weight": "1/4"}]}"#);
    let target = json::series_to_json(&cfree::series::Series::constant(Approx::new(0.5, 0.5), 5));
    let target = write(dir.path(), "t.json", &target);
    let o = cfree(&["semigroup", "--gen", &gen, "--sigma-target", &target, "--t", "0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json::pair_from_json(&stdout(&o)).unwrap(), MeasurePair::unit());
    let o = cfree(&["semigroup", "--gen", &gen, "--sigma-target", &target, "--t", "0.5"]);
    assert!(o.status.success());
}

#[test]
fn limit_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("report.csv");
    let summary = dir.path().join("summary.json");
    let o = cfree(&[
        "limit", "--s", "0.5", "--omega", "1/4", "--n-list", "4,8", "--order", "5",
        "--out", csv.to_str().unwrap(), "--summary", summary.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("n,j,gap\n"));
    assert_eq!(text.lines().count(), 11);
    let s: serde_json::Value = serde_json::from_str(&fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(s["steps"][0]["n"], 4);
    assert!(s["steps"][1]["gamma"].is_array());
}

#[test]
fn errors_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{not json");
    let o = cfree(&["convolve", "--kind", "boolean", "--a", &bad, "--b", &bad, "--order", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed JSON"));
    let mixed = write(
        dir.path(),
        "m.json",
        r#"{"mu": {"type": "haar"}, "nu": {"type": "haar"}}"#,
    );
    let plain = write(
        dir.path(),
        "p.json",
        r#"{"mu": {"type": "haar"}, "nu": {"type": "atomic", "atoms": [{"turns": "0", "weight": "1"}]}}"#,
    );
    let o = cfree(&["convolve", "--kind", "cfree", "--a", &mixed, "--b", &plain, "--order", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Haar"));
    assert!(!cfree(&["nc", "--n", "4", "--bogus"]).status.success());
    assert_eq!(cfree(&["nc", "--n", "20", "--count-only"]).status.code(), Some(2));
}
