//! Reports compared byte for byte against files in `tests/golden`.
//! Run with `OMEGA_BLESS=1` to rewrite the expected files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const CASES: &[(&str, &[&str], i32)] = &[
    ("tensor_4_6", &["tensor", "4", "6"], 0),
    ("quasibasis_c6_2_3", &["quasibasis", "tests/data/c6.ua", "--gens", "2,3"], 0),
    ("validate_empty_product", &["validate", "tests/data/empty-product.ua"], 0),
    ("quasibasis_c6_full", &["quasibasis", "tests/data/c6.ua"], 0),
    ("closure_c6_2", &["closure", "tests/data/c6.ua", "--gens", "2"], 0),
    ("tensor_2_4_6", &["tensor", "2", "4", "6"], 0),
    ("props_s3", &["props", "tests/data/s3-points.ua"], 0),
    ("orbits_s3", &["orbits", "tests/data/s3-points.ua", "--product", "*"], 0),
    ("autgroup_s3", &["autgroup", "tests/data/s3-points.ua", "--object", "s3"], 0),
    ("classify_z2", &["classify", "tests/data/z2-ring.ua"], 0),
    ("interchange_z2", &["interchange", "tests/data/z2-ring.ua", "+", "*"], 0),
    ("diagram_check_crossing", &["diagram-check", "tests/data/crossing.ua"], 0),
    ("closure_crossing", &["closure", "tests/data/crossing.ua", "--gens", "ends"], 0),
    ("validate_broken", &["validate", "tests/data/broken.ua"], 2),
    ("zoo_affine_check", &["zoo", "affine_space", "5", "1", "--check"], 0),
    ("zoo_module_emit", &["zoo", "module", "2", "1", "--emit"], 0),
];

fn omega(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omega"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env_remove("OMEGA_BUDGET")
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"))
}

#[test]
fn reports_match_golden_files() {
    let bless = std::env::var_os("OMEGA_BLESS").is_some();
    for (name, args, code) in CASES {
        let out = omega(args);
        assert_eq!(out.status.code(), Some(*code), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let path = golden(name);
        if bless {
            std::fs::write(&path, &out.stdout).unwrap();
        }
        let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(out.stdout == expected, "{name} differs:\n{}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn reports_are_identical_across_runs() {
    for (name, args, _) in CASES {
        assert_eq!(omega(args).stdout, omega(args).stdout, "{name}");
    }
}

#[test]
fn the_three_headline_reports() {
    let text = |args: &[&str]| String::from_utf8(omega(args).stdout).unwrap();
    assert!(text(&["tensor", "4", "6"]).contains("invariant factors: [2]\n"));
    assert!(text(&["quasibasis", "tests/data/c6.ua", "--gens", "2,3"]).contains("quasibasis: {2, 3} (minimal)\n"));
    assert!(text(&["validate", "tests/data/empty-product.ua"]).contains("valid; carrier size 1\n"));
}

#[test]
fn exit_codes_follow_error_classes() {
    let code = |args: &[&str]| omega(args).status.code();
    assert_eq!(code(&["validate", "tests/data/no-such-file.ua"]), Some(1));
    assert_eq!(code(&["tensor", "4"]), Some(1));
    assert_eq!(code(&["tensor", "0", "4"]), Some(1));
    assert_eq!(code(&["zoo", "torus"]), Some(1));
    assert_eq!(code(&["props", "tests/data/c6.ua"]), Some(2));
    assert_eq!(code(&["orbits", "tests/data/s3-points.ua", "--product", "+"]), Some(2));
    assert_eq!(code(&["quasibasis", "tests/data/c6.ua", "--gens", "2"]), Some(2));
    assert_eq!(code(&["zoo", "quaternion", "7"]), Some(3));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn budget_comes_from_the_environment() {
    let run = |budget: &str| {
        Command::new(env!("CARGO_BIN_EXE_omega"))
            .args(["autgroup", "tests/data/s3-points.ua", "--object", "s3"])
            .current_dir(env!("CARGO_MANIFEST_DIR"))
            .env("OMEGA_BUDGET", budget)
            .output()
            .unwrap()
    };
    assert_eq!(run("5").status.code(), Some(3));
    assert_eq!(run("1000").status.code(), Some(0));
    assert_eq!(run("lots").status.code(), Some(1));
    let stderr = String::from_utf8(run("5").stderr).unwrap();
    assert!(stderr.starts_with("error: tests/data/s3-points.ua: s3: budget exceeded"), "{stderr}");
}

#[test]
fn parse_errors_report_position() {
    let dir = std::env::temp_dir().join(format!("omega-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.ua");
    std::fs::write(&path, "algebra a\n  size 2\n  op * 2 [0, 1\n").unwrap();
    let out = omega(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.ends_with("bad.ua:3:10: unclosed list\n"), "{stderr}");
    std::fs::remove_dir_all(&dir).unwrap();
}
