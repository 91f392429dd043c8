use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jetcrys::io::{Document, FixtureObject};
use jetcrys::strat::verify_stratification;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn jetcrys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetcrys")).args(args).output().expect("run jetcrys")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn poincare_passes_over_q() {
    let o = jetcrys(&["verify", "poincare", "--dim", "2", "--level", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS  poincare"));
}

#[test]
fn plain_char_two_fails_and_expect_fail_tolerates() {
    let o = jetcrys(&["verify", "poincare", "--dim", "1", "--level", "2", "--char", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
    let o = jetcrys(&["verify", "poincare", "--dim", "1", "--level", "2", "--char", "2", "--expect-fail"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("XFAIL"));
}

#[test]
fn divided_char_two_is_exact() {
    let o = jetcrys(&["verify", "poincare", "--dim", "2", "--level", "4", "--char", "2", "--divided"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(jetcrys(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(jetcrys(&["verify", "poincare", "--char", "4"]).status.code(), Some(2));
    assert_eq!(jetcrys(&["strat", "from-connection"]).status.code(), Some(2));
}

#[test]
fn curved_connection_fails_strat() {
    let f = fixture("curved_plane.json");
    let o = jetcrys(&["verify", "strat", "--input", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn strat_from_connection_writes_a_valid_stratification() {
    let out = scratch("nilpotent_strat.json");
    let input = fixture("nilpotent.json");
    let o = jetcrys(&[
        "strat",
        "from-connection",
        "--input",
        input.to_str().unwrap(),
        "--level",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let FixtureObject::Stratification(m) = FixtureObject::load(&out).unwrap() else {
        panic!("expected a stratification");
    };
    assert_eq!(m.top(), 3);
    assert!(verify_stratification(&m).unwrap().pass);
}

#[test]
fn linearize_level_is_a_complex() {
    let o = jetcrys(&["linearize", "--dim", "2", "--level", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let c = jetcrys::exact::complex::ChainComplex::from_json(&stdout(&o)).unwrap();
    assert!(c.homology_ranks().unwrap().iter().all(|&h| h == 0));
}

#[test]
fn horizontal_sections_of_o() {
    let o = jetcrys(&["horizontal", "--dim", "2", "--deg-bound", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["stabilized"], true);
}

#[test]
fn horizontal_sections_of_a_connection() {
    let f = fixture("nilpotent.json");
    let o = jetcrys(&["horizontal", "--input", f.to_str().unwrap(), "--deg-bound", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // f1' + f2 = 0, f2' = 0: (c - b x, b)
    assert_eq!(v["dimension"], 2);
}

#[test]
fn report_from_config() {
    let cfg = fixture("suite_small.json");
    let out = scratch("report.json");
    let o = jetcrys(&["report", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["records"].as_array().unwrap().len() > 10);
}

#[test]
fn crystal_with_thickening_file() {
    let t = fixture("thickening_t3.json");
    let o = jetcrys(&["verify", "crystal", "--input", t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
