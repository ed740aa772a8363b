//! End-to-end runs of the `hopfq` binary: exit codes, report contents and
//! file outputs.

mod common;

use std::path::Path;
use std::process::Command;

use common::{fixtures, EDITED, GENERATED};

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn hopfq(dir: &Path, args: &[&str]) -> Out {
    let o = Command::new(env!("CARGO_BIN_EXE_hopfq"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    Out {
        code: o.status.code().expect("exit code"),
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
    }
}

/// A scratch directory holding a copy of every fixture.
fn scratch() -> tempfile::TempDir {
    let t = tempfile::tempdir().unwrap();
    for name in GENERATED.iter().chain(EDITED.iter()) {
        std::fs::copy(fixtures().join(name), t.path().join(name)).unwrap();
    }
    t
}

fn table(out: &Out) -> &str {
    out.stdout.split("--- json ---").next().unwrap()
}

fn row<'a>(out: &'a Out, check: &str) -> &'a str {
    table(out)
        .lines()
        .find(|l| l.split_whitespace().nth(1) == Some(check))
        .unwrap_or_else(|| panic!("no row for {check}:\n{}", out.stdout))
}

#[test]
fn validate_m12_loop() {
    let r = hopfq(&fixtures(), &["validate", "m12.loop.json", "--suite", "loop"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(row(&r, "moufang").contains("PASS(info)"));
    let assoc = row(&r, "associative");
    assert!(assoc.contains("FAIL(info)") && assoc.contains("at [1, 3, 6]"), "{assoc}");
    assert!(r.stdout.ends_with("  \"verdict\": \"PASS\"\n}\n"));
}

#[test]
fn validate_loop_algebra_and_suites() {
    let f = fixtures();
    assert_eq!(hopfq(&f, &["validate", "km12.hq.json", "--suite", "hopf-quasigroup"]).code, 0);
    assert_eq!(hopfq(&f, &["validate", "km12.hcq.json"]).code, 0);
    assert_eq!(hopfq(&f, &["validate", "kc3-f7.hq.json"]).code, 0);
    assert_eq!(hopfq(&f, &["validate", "km12.hcq.json", "--suite", "algebra"]).code, 0);
    assert_eq!(hopfq(&f, &["validate", "km12.hq.json", "--suite", "coalgebra"]).code, 0);
    assert_eq!(hopfq(&f, &["validate", "inversion-c2-c3.action.json"]).code, 0);
}

#[test]
fn broken_structure_fails_with_witness() {
    let r = hopfq(&fixtures(), &["validate", "broken.hq.json"]);
    assert_eq!(r.code, 1);
    assert!(row(&r, "quasi1_left").contains("FAIL        at [1, 0]: lhs = 1·[2], rhs = 1·[0]"));
    assert!(r.stdout.contains("first failure: quasigroup.quasi1_left"));
    assert!(r.stdout.contains("\"witness\": {"));
}

#[test]
fn generated_files_match_fixtures() {
    let t = tempfile::tempdir().unwrap();
    let d = t.path();
    std::fs::copy(fixtures().join("s3.loop.json"), d.join("s3.loop.json")).unwrap();
    assert_eq!(hopfq(d, &["gen", "--kind", "chein-double", "s3.loop.json", "-o", "m.json"]).code, 0);
    let m = std::fs::read_to_string(d.join("m.json")).unwrap();
    assert_eq!(m, std::fs::read_to_string(fixtures().join("m12.loop.json")).unwrap());
    assert!(m.contains("\"order\": 12,"));
    assert_eq!(hopfq(d, &["loop-algebra", "m.json", "--field", "rational", "-o", "k.json"]).code, 0);
    let k = std::fs::read_to_string(d.join("k.json")).unwrap();
    assert!(k.contains("\"dim\": 12,"));
    assert_eq!(hopfq(d, &["dualize", "k.json", "-o", "kd.json"]).code, 0);
    let v = hopfq(d, &["validate", "kd.json"]);
    assert_eq!(v.code, 0, "{}", v.stdout);
    assert!(v.stdout.contains("== Hopf coquasigroup =="));
}

#[test]
fn theorem_and_twist_checks() {
    let f = fixtures();
    let r = hopfq(&f, &["theorem", "--H", "kc2.hq.json", "--A", "kc3.hq.json", "--R", "inversion-c2-c3.twist.json"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(!table(&r).contains("FAIL "));
    let r = hopfq(&f, &["check-twist", "--H", "kc2.hq.json", "--A", "kc3.hq.json", "--R", "flip-c2-c3.twist.json"]);
    assert_eq!(r.code, 0);
    assert_eq!(table(&r).matches("  PASS").count(), 14);
    let r = hopfq(&f, &["check-twist", "--R", "flip-c2-c3.twist.json", "--conditions", "normal,left_conormal"]);
    assert_eq!(r.code, 0);
    assert_eq!(table(&r).matches("  PASS").count(), 2);
    let r = hopfq(&f, &["lemmas", "--R", "inversion-c2-c3.twist.json"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn perturbed_twist_fails_verification() {
    let t = scratch();
    let r = hopfq(t.path(), &["smash", "--verify", "--R", "perturbed.twist.json", "-o", "s.json"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("first failure: hypotheses.left_multiplicative"), "{}", r.stdout);
    let r = hopfq(t.path(), &["check-twist", "--R", "perturbed.twist.json"]);
    assert_eq!(r.code, 1);
}

#[test]
fn smash_output_is_a_hopf_quasigroup() {
    let t = scratch();
    let d = t.path();
    let r = hopfq(d, &["smash", "--R", "inversion-c2-c3.twist.json", "-o", "s.json", "--verify"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = hopfq(d, &["validate", "s.json"]);
    assert_eq!(v.code, 0);
    let s = std::fs::read_to_string(d.join("s.json")).unwrap();
    assert!(s.contains("\"dim\": 6,") && s.contains("\"g⊗e\""), "{s}");
}

#[test]
fn cosmash_of_coquasigroup_factors() {
    let t = scratch();
    let d = t.path();
    assert_eq!(hopfq(d, &["dualize", "kc2.hq.json", "-o", "kc2.hcq.json"]).code, 0);
    assert_eq!(hopfq(d, &["flip", "--H", "kc2.hcq.json", "--A", "km12.hcq.json", "-o", "w.json"]).code, 0);
    let r = hopfq(d, &["cosmash", "--W", "w.json", "-o", "c.json", "--verify"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(hopfq(d, &["validate", "c.json"]).code, 0);
    let r = hopfq(d, &["theorem", "--dual", "--R", "w.json"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn failing_action_and_non_ip_loop_exit_one() {
    let t = scratch();
    let d = t.path();
    assert_eq!(hopfq(d, &["loop-algebra", "s3.loop.json", "-o", "ks3.hq.json"]).code, 0);
    let r = hopfq(d, &["action", "--kind", "inversion", "--H", "kc2.hq.json", "--A", "ks3.hq.json", "-o", "q.json"]);
    assert_eq!(r.code, 0);
    assert_eq!(hopfq(d, &["validate", "q.json"]).code, 1);
    let r = hopfq(d, &["action-twist", "--action", "q.json", "-o", "r.json"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("first failure: compatibility.action_multiplicative"), "{}", r.stdout);
    assert!(!d.join("r.json").exists());

    let loop5 = r#"{
  "format": "hopfq/1",
  "kind": "loop",
  "name": "L5",
  "order": 5,
  "table": [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 3, 4, 0, 1],
    [3, 4, 1, 2, 0],
    [4, 2, 0, 1, 3]
  ]
}
"#;
    std::fs::write(d.join("l5.loop.json"), loop5).unwrap();
    let r = hopfq(d, &["loop-algebra", "l5.loop.json", "-o", "k5.json"]);
    assert_eq!(r.code, 1);
    assert!(row(&r, "left_inverse_property").contains("at [1, 2]"));
    assert!(!d.join("k5.json").exists());
}

#[test]
fn input_errors_exit_two() {
    let t = scratch();
    let d = t.path();
    let kc3 = std::fs::read_to_string(d.join("kc3.hq.json")).unwrap();

    std::fs::write(d.join("kc3.hq.json"), kc3.replacen("k[C3]", "k[C3] renamed", 1)).unwrap();
    let r = hopfq(d, &["check-twist", "--R", "inversion-c2-c3.twist.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("hash mismatch"), "{}", r.stderr);
    std::fs::write(d.join("kc3.hq.json"), &kc3).unwrap();

    std::fs::write(d.join("bad.hq.json"), kc3.replacen("[0, 0, \"1\"]", "[0, 0, \"2/4\"]", 1)).unwrap();
    let r = hopfq(d, &["validate", "bad.hq.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("bad.hq.json:9: non-canonical scalar \"2/4\""), "{}", r.stderr);

    let cases: [(&[&str], &str); 7] = [
        (&["check-twist", "--H", "kc3.hq.json", "--R", "flip-c2-c3.twist.json"], "factor mismatch"),
        (&["validate", "flip-c2-c3.twist.json"], "check-twist"),
        (&["validate", "m12.loop.json", "--suite", "hopf-quasigroup"], "does not apply"),
        (&["check-twist", "--R", "flip-c2-c3.twist.json", "--conditions", "normalish"], "unknown condition"),
        (&["--jobs", "0", "validate", "kc2.hq.json"], "--jobs"),
        (&["validate", "missing.json"], "missing.json"),
        (&["gen", "--kind", "dihedral", "-o", "x.json"], "unknown generator"),
    ];
    for (args, msg) in cases {
        let r = hopfq(d, args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.stderr.contains(msg), "{args:?}: {}", r.stderr);
        assert!(r.stdout.is_empty());
    }
    assert_eq!(hopfq(d, &["validate"]).code, 2);
    assert_eq!(hopfq(d, &["frobnicate"]).code, 2);
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let f = fixtures();
    for args in [
        &["validate", "km12.hq.json"][..],
        &["theorem", "--R", "flip-c2-m12.twist.json"],
        &["validate", "broken.hq.json"],
    ] {
        let one = hopfq(&f, &[&["--jobs", "1"], args].concat());
        let many = hopfq(&f, &[&["--jobs", "8"], args].concat());
        assert_eq!(one.stdout, many.stdout, "{args:?}");
        assert_eq!(one.code, many.code);
        let again = hopfq(&f, args);
        assert_eq!(one.stdout, again.stdout);
    }
}
