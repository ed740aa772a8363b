#![allow(dead_code)]

use std::path::{Path, PathBuf};

use clap::Parser;
use hopfq_cli::Cli;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the tool in-process with `dir` as the base for relative paths.
pub fn hopfq(dir: &Path, args: &[&str]) -> Run {
    let args: Vec<String> = args
        .iter()
        .map(|a| {
            let p = dir.join(a);
            if a.ends_with(".json") {
                p.display().to_string()
            } else {
                a.to_string()
            }
        })
        .collect();
    let cli = Cli::try_parse_from(std::iter::once("hopfq".to_string()).chain(args)).expect("valid arguments");
    let (mut out, mut err) = (vec![], vec![]);
    let code = hopfq_cli::run(cli, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

/// Every fixture produced by the tool itself, in generation order.
pub const GENERATED: [&str; 14] = [
    "c2.loop.json",
    "c3.loop.json",
    "s3.loop.json",
    "m12.loop.json",
    "kc2.hq.json",
    "kc3.hq.json",
    "km12.hq.json",
    "kc3-f7.hq.json",
    "km12.hcq.json",
    "flip-c2-m12.twist.json",
    "flip-c2-c3.twist.json",
    "inversion-c2-c3.action.json",
    "inversion-c2-c3.twist.json",
    "km12-roundtrip.hq.json",
];

/// Hand-edited negative fixtures.
pub const EDITED: [&str; 2] = ["broken.hq.json", "perturbed.twist.json"];

/// The commands that produce [`GENERATED`] inside `dir`.
pub fn regenerate(dir: &Path) {
    let steps: [&[&str]; 14] = [
        &["gen", "--kind", "cyclic", "2", "-o", "c2.loop.json"],
        &["gen", "--kind", "cyclic", "3", "-o", "c3.loop.json"],
        &["gen", "--kind", "s3", "-o", "s3.loop.json"],
        &["gen", "--kind", "chein-double", "s3.loop.json", "-o", "m12.loop.json"],
        &["loop-algebra", "c2.loop.json", "-o", "kc2.hq.json"],
        &["loop-algebra", "c3.loop.json", "-o", "kc3.hq.json"],
        &["loop-algebra", "m12.loop.json", "-o", "km12.hq.json"],
        &["loop-algebra", "c3.loop.json", "--field", "prime 7", "-o", "kc3-f7.hq.json"],
        &["dualize", "km12.hq.json", "-o", "km12.hcq.json"],
        &["flip", "--H", "kc2.hq.json", "--A", "km12.hq.json", "-o", "flip-c2-m12.twist.json"],
        &["flip", "--H", "kc2.hq.json", "--A", "kc3.hq.json", "-o", "flip-c2-c3.twist.json"],
        &[
            "action",
            "--kind",
            "inversion",
            "--H",
            "kc2.hq.json",
            "--A",
            "kc3.hq.json",
            "-o",
            "inversion-c2-c3.action.json",
        ],
        &[
            "action-twist",
            "--action",
            "inversion-c2-c3.action.json",
            "-o",
            "inversion-c2-c3.twist.json",
        ],
        &["dualize", "km12.hcq.json", "-o", "km12-roundtrip.hq.json"],
    ];
    for args in steps {
        let r = hopfq(dir, args);
        assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    }
}
