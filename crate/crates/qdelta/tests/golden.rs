//! Runs the binary and compares its output byte-for-byte with files under
//! `tests/golden`. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn run(args: &[&str], stdin: Option<&str>) -> (String, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qdelta"));
    cmd.args(args).stdout(Stdio::piped()).stderr(Stdio::piped()).stdin(Stdio::piped());
    cmd.env_remove("QDELTA_FIXTURE_DIR");
    let mut child = cmd.spawn().expect("spawn qdelta");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

fn check(name: &str, got: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
    assert_eq!(got, want, "output differs from {name}");
}

fn golden(name: &str, args: &[&str], stdin: Option<&str>, status: i32) -> String {
    let (out, code) = run(args, stdin);
    assert_eq!(code, status, "exit status of {args:?}");
    check(name, &out);
    out
}

#[test]
fn expand_commands() {
    let j = golden("expand_j.json", &["expand", "j", "--terms", "3"], None, 0);
    assert!(j.contains("\"coeffs\":[\"1\",\"744\",\"196884\"]"));
    assert!(j.contains("\"lowest\":-1"));
    golden("expand_e4.json", &["expand", "eisenstein", "--k", "4", "--M", "10"], None, 0);
    golden("expand_delta.json", &["expand", "delta", "--M", "10"], None, 0);
    golden("expand_tate.json", &["expand", "tate", "--M", "6"], None, 0);
    // f^1_q at the Tate point is the constant -1/24; 24 * 16276 = 5^8 - 1
    let h = golden("expand_hurlburt.json", &["expand", "hurlburt", "--M", "6"], None, 0);
    assert!(h.contains("\"16276\",\"0\",\"0\""));
    golden("expand_form.json", &["expand", "form", "--expr", "(a4_0^3)/Delta^1", "--M", "4", "--p", "7"], None, 0);
    golden("expand_j_table.txt", &["expand", "j", "--terms", "4", "--table"], None, 0);
}

#[test]
fn solve_then_verify() {
    let kernel = golden(
        "solve_kernel.json",
        &[
            "solve", "--family", "kernel", "--p", "5", "--kappa", "3", "--z", "0", "--alpha", "1", "--zeta", "2",
            "--M", "20",
        ],
        None,
        0,
    );
    let v = golden("verify_kernel.json", &["verify"], Some(&kernel), 0);
    assert!(v.contains("\"passed\":true"));
    let inh = golden(
        "solve_inhomogeneous.json",
        &["solve", "--family", "inhomogeneous", "--kappa", "2", "--z", "5", "--alpha", "3", "--M", "20"],
        None,
        0,
    );
    golden("verify_inhomogeneous.json", &["verify"], Some(&inh), 0);
    golden(
        "solve_additive.json",
        &["solve", "--family", "additive", "--kappa", "1", "--z", "0", "--alpha", "1", "--M", "30"],
        None,
        0,
    );
    // a wrong kappa makes the residual fail
    let tampered = kernel.replace("\"kappa\":3", "\"kappa\":2");
    let v = golden("verify_tampered.json", &["verify"], Some(&tampered), 1);
    assert!(v.contains("\"passed\":false"));
}

#[test]
fn modular_family_roundtrip() {
    let fam = golden(
        "solve_modular_deformed.json",
        &[
            "solve",
            "--family",
            "modular-deformed",
            "--kappa",
            "2",
            "--z",
            "5",
            "--alpha",
            "1",
            "--eta",
            "3",
            "--v",
            "1,1,2",
            "--M",
            "12",
        ],
        None,
        0,
    );
    golden("verify_modular_deformed.json", &["verify"], Some(&fam), 0);
    golden("decompose_modular_deformed.json", &["decompose"], Some(&fam), 0);
    let plain = golden(
        "solve_modular_plain.json",
        &["solve", "--family", "modular-plain", "--v", "random", "--seed", "3", "--M", "10"],
        None,
        0,
    );
    golden("verify_modular_plain.json", &["verify"], Some(&plain), 0);
}

#[test]
fn census_command() {
    let c = golden("census_kappa2.json", &["census", "--p", "5", "--kappa", "2", "--z", "0", "--M", "30"], None, 0);
    assert!(c.contains("\"free\":[2]") && c.contains("\"obstructed\":[]"));
    golden("census_generic.json", &["census", "--kappa", "7/3", "--z", "5", "--M", "15"], None, 0);
    golden(
        "census_beta.json",
        &["census", "--kappa", "3", "--z", "5", "--rhs", "-1", "--c0", "beta", "--M", "12"],
        None,
        0,
    );
    golden("census_table.txt", &["census", "--kappa", "1", "--M", "8", "--table"], None, 0);
}

#[test]
fn instability_command() {
    golden("instability_single.json", &["instability", "--z", "5", "--z0", "10"], None, 0);
    golden("instability_single.txt", &["instability", "--alpha", "2", "--table"], None, 0);
    // (z, z0) = (25, 50) first disagrees at q^125, beyond the default truncation
    let g = golden("instability_grid.json", &["instability", "--grid", "--jobs", "2"], None, 1);
    assert!(g.contains("inconclusive at truncation"));
    golden("instability_grid_long.txt", &["instability", "--grid", "--M", "130", "--table"], None, 0);
}

#[test]
fn fixtures_command() {
    let stored = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let dir = stored.to_str().unwrap();
    golden("fixtures_check.json", &["fixtures", "--check", "--dir", dir], None, 0);
    let tmp = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qdelta"))
        .args(["fixtures", "--order", "20"])
        .env("QDELTA_FIXTURE_DIR", tmp.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(tmp.path().join("j.json").exists());
    let (text, code) = run(&["fixtures", "--check", "--order", "21", "--dir", tmp.path().to_str().unwrap()], None);
    assert_eq!(code, 1);
    assert!(text.contains("\"mismatched\":[\"e2.json\""));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["--p", "4", "expand", "j"], None).1, 2);
    assert_eq!(run(&["--p", "9", "expand", "j"], None).1, 2);
    assert_eq!(run(&["census", "--kappa", "2", "--rhs", "3"], None).1, 2);
    assert_eq!(run(&["census", "--kappa", "5"], None).1, 2);
    assert_eq!(run(&["verify"], Some("{not json")).1, 2);
    assert_eq!(run(&["solve", "--family", "kernel"], None).1, 2);
    assert_eq!(run(&["frobnicate"], None).1, 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["solve", "--family", "modular-plain", "--v", "random", "--seed", "9", "--M", "8"];
    assert_eq!(run(&args, None), run(&args, None));
    let grid = ["instability", "--grid", "--jobs", "4"];
    assert_eq!(run(&grid, None).0, run(&["instability", "--grid"], None).0);
}
