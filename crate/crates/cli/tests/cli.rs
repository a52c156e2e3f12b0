use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn ncalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncalg")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn screen_passes_on_a_regular_algebra() {
    let o = ncalg(&["screen", path(&fixture("A_2.pres")), "--max-deg", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "PASS: series, betti, frobenius");
}

#[test]
fn screen_fails_on_the_wrong_series() {
    let o = ncalg(&["screen", path(&fixture("X_2_3.pres")), "--max-deg", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "FAIL: H[5]=17 expected 16");
    let o = ncalg(&["--format", "structured", "screen", path(&fixture("X_2_3.pres"))]);
    assert!(stdout(&o).contains("verdict=FAIL: H[5]=17 expected 16\n"));
    assert!(stdout(&o).ends_with("status=fail\n"));
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pres");
    std::fs::write(&bad, "field Q\ngen z1 : (1)\nrel z1*(\n").unwrap();
    let o = ncalg(&["hilbert", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(ncalg(&["hilbert"]).status.code(), Some(2));
    assert_eq!(ncalg(&["hilbert", path(&dir.path().join("missing.pres"))]).status.code(), Some(2));
    assert_eq!(ncalg(&["aext", path(&fixture("A_2.pres")), "--policy", "other"]).status.code(), Some(2));
}

#[test]
fn hilbert_and_normal_form() {
    let o = ncalg(&["--format", "structured", "hilbert", path(&fixture("A_2.pres")), "--max-deg", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("coeffs=1,2,4,7,11,16,23,31,41\n"));
    let o = ncalg(&["nf", path(&fixture("A_2.pres")), "--expr", "z2^2*z1"]);
    assert_eq!(stdout(&o).trim(), "normal form: 1/4*z1*z2^2");
}

#[test]
fn catalog_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.pres");
    let o = ncalg(&["catalog", "D", "--param", "v=3", "--param", "p=2", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let got = std::fs::read_to_string(&out).unwrap();
    let rels: Vec<&str> = got.lines().filter(|l| l.starts_with("rel")).collect();
    assert_eq!(rels, ["rel z1*z2^2 + 3*z2*z1*z2 + 4*z2^2*z1", "rel z1^3*z2 + 5*z1^2*z2*z1 + 10*z1*z2*z1^2 + 8*z2*z1^3"]);
    let o = ncalg(&["--format", "structured", "hilbert", path(&out), "--max-deg", "6"]);
    assert!(stdout(&o).contains("coeffs=1,2,4,7,11,16,23\n"));
}

#[test]
fn normality_verdicts() {
    let o = ncalg(&["normal", path(&fixture("Y_2_5.pres")), "--element", "z2^2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = ncalg(&["normal", path(&fixture("A_2.pres")), "--element", "z1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn homomorphism_check() {
    let a = fixture("A_2.pres");
    let ok = ncalg(&["hom", path(&a), path(&a), "--map", "z1=z1", "--map", "z2=-z2"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = ncalg(&["hom", path(&a), path(&a), "--map", "z1=z2", "--map", "z2=z1"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn resolution_file_is_checked() {
    let o = ncalg(&["verify-complex", path(&fixture("B_1.pres")), path(&fixture("B_1_resolution.maps")), "--max-deg", "9"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("resolution of the field: true"));
}

#[test]
fn betti_rows_and_shape() {
    let o = ncalg(&[
        "--format", "structured", "betti", path(&fixture("A_2.pres")), "--max-s", "4", "--max-adams", "8", "--shape", "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("row=")).collect();
    assert_eq!(rows, ["row=0 0 1", "row=1 1 2", "row=2 3 1", "row=2 4 1", "row=3 6 2", "row=4 7 1"]);
    assert!(stdout(&o).contains("shape=symmetric, l=7\n"));
}

#[test]
fn model_tables_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let tab = dir.path().join("a2.tab");
    let o = ncalg(&["aext", path(&fixture("A_2.pres")), "--policy", "structured", "--out", path(&tab)]);
    assert_eq!(o.status.code(), Some(0));
    let o = ncalg(&["stasheff", path(&tab), "--max-n", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = ncalg(&["--format", "structured", "frobenius", path(&tab)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lambda=-8 0; 0 -1/16\n"));
    assert!(stdout(&o).contains("t=1/32\n"));
    let o = ncalg(&["stasheff", path(&tab), "--max-n", "9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn keller_relations_match() {
    let o = ncalg(&["keller", path(&fixture("B_1.pres"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("-u*z1*z2^2 + z2^2*z1"));
}

#[test]
fn solutions_and_cases() {
    let o = ncalg(&["solution", "S2.1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().count() >= 3);
    let o = ncalg(&["case", "--g1", "-8", "--g2", "-1/16", "--t", "1/32"]);
    assert_eq!(stdout(&o).trim(), "cases: Case 5");
    let o = ncalg(&["case", "--g1", "-1", "--g2", "u", "--t", "u^2", "--field", "Q[u]/(u^2-u+1)"]);
    assert_eq!(stdout(&o).trim(), "cases: Case 2, Case 5");
    let o = ncalg(&["case", "--g1", "1", "--g2", "1", "--t", "1", "--field", "Q[u]/(u^2-1)"]);
    assert_eq!(o.status.code(), Some(2));
}
