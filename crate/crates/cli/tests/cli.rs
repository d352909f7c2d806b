use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn geotype(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geotype"))
        .args(args)
        .current_dir(golden_dir())
        .env_remove("GEOTYPE_COLOR")
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    fs::read_to_string(golden_dir().join(name)).unwrap()
}

fn assert_golden(args: &[&str], expected: &str) {
    let out = geotype(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        golden(expected),
        "{args:?}"
    );
}

#[test]
fn golden_outputs() {
    assert_golden(&["bin", "e1.gt"], "bin_e1.out");
    assert_golden(&["bin", "e1.gt"], "e2.gt");
    assert_golden(&["bin", "e1m.gt"], "bin_e1m.out");
    assert_golden(
        &["srefine", "e2.gt", "--codes", "w12.codes"],
        "srefine_e2_w12.out",
    );
    assert_golden(
        &["urefine", "e2.gt", "--codes", "w12.codes"],
        "urefine_e2_w12.out",
    );
    assert_golden(&["codes", "e2.gt"], "codes_e2.out");
    assert_golden(
        &["corner", "e2.gt", "--along", "w12.codes"],
        "corner_along_e2_w12.out",
    );
    assert_golden(&["wp", "e2.gt", "--max-period", "2"], "wp_e2_2.out");
    assert_golden(&["orbits", "e2.gt", "--max-period", "4"], "orbits_e2_4.out");
    assert_golden(&["incidence", "e2.gt"], "incidence_e2.out");
    assert_golden(&["render", "e2.gt", "--format", "dot"], "e2.dot");
}

#[test]
fn small_answers() {
    let text = |args: &[&str]| String::from_utf8(geotype(args).stdout).unwrap();
    assert_eq!(text(&["alpha", "e1.gt"]), "2\n");
    assert_eq!(text(&["validate", "e2.gt"]), "ok\n");
    assert_eq!(text(&["invert", "e2.gt"]), golden("e2.gt"));
    assert_eq!(
        text(&["classify", "e2.gt", "--code", "1,2|1|2,1"]),
        "interior\n"
    );
    assert!(text(&["oracle-check", "e2.gt", "--codes", "w12.codes"]).ends_with("AGREE\n"));
}

#[test]
fn s_boundary_code_is_a_domain_error() {
    let out = geotype(&["srefine", "e2.gt", "--codes", "w1.codes"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("s-boundary code"), "{err}");
    assert!(err.starts_with("error[refine]"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn drop_boundary_keeps_the_rest() {
    let out = geotype(&[
        "srefine",
        "e2.gt",
        "--codes",
        "mixed.codes",
        "--drop-boundary",
    ]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        golden("srefine_e2_w12.out")
    );
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("dropped s-boundary code (1)"));
}

#[test]
fn invalid_type_lists_violation() {
    let out = geotype(&["validate", "broken.gt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("Σh ≠ Σv"));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("error[geotype-core]"));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(geotype(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(geotype(&["bin", "missing.gt"]).status.code(), Some(2));
    assert_eq!(geotype(&["bin", "w12.codes"]).status.code(), Some(2));
    assert_eq!(
        geotype(&["classify", "e2.gt", "--code", "1|2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn domain_errors_exit_1() {
    let out = geotype(&["wp", "e2.gt", "--max-period", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("P below P_B(T)=1"));
    assert_eq!(
        geotype(&["orbits", "e1.gt", "--max-period", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        geotype(&["incidence", "e1.gt", "--check", "binary"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        geotype(&["urefine", "e2.gt", "--codes", "w1.codes"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn color_only_touches_diagnostics() {
    let run = |color: &str| {
        Command::new(env!("CARGO_BIN_EXE_geotype"))
            .args(["srefine", "e2.gt", "--codes", "w1.codes"])
            .current_dir(golden_dir())
            .env("GEOTYPE_COLOR", color)
            .output()
            .unwrap()
    };
    let (plain, colored) = (run("0"), run("1"));
    assert!(!plain.stderr.contains(&0x1b));
    assert!(colored.stderr.contains(&0x1b));
    assert_eq!(plain.stdout, colored.stdout);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e2.gt");
    let out = geotype(&["bin", "e1.gt", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(path).unwrap(), golden("e2.gt"));
}
