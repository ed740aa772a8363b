//! Report documents: a human-readable table followed by the same results as
//! JSON, both deterministic.

use std::fmt::Write as _;

use hopfq_core::{AxiomReport, Check, Vector, Verdict, Witness};
use serde_json::{json, Value};

pub const TOOL: &str = concat!("hopfq ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileIdentity {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportDocument {
    pub command: String,
    pub inputs: Vec<FileIdentity>,
    pub outputs: Vec<FileIdentity>,
    pub sections: Vec<AxiomReport>,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>) -> ReportDocument {
        ReportDocument {
            command: command.into(),
            inputs: vec![],
            outputs: vec![],
            sections: vec![],
        }
    }

    /// The worst verdict over all sections; `PASS` when there are none.
    pub fn verdict(&self) -> Verdict {
        let rank = |v: Verdict| match v {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::PremisesNotMet => 2,
            Verdict::Fatal => 3,
        };
        self.sections
            .iter()
            .map(|s| s.verdict)
            .max_by_key(|v| rank(*v))
            .unwrap_or(Verdict::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.verdict() == Verdict::Pass {
            0
        } else {
            1
        }
    }

    pub fn render(&self) -> String {
        let mut out = self.table();
        out.push_str("--- json ---\n");
        out.push_str(&serde_json::to_string_pretty(&self.to_json()).expect("report serializes"));
        out.push('\n');
        out
    }

    fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{TOOL} {}", self.command);
        for (tag, files) in [("input", &self.inputs), ("output", &self.outputs)] {
            for f in files {
                let _ = writeln!(out, "{tag:<6} {:<8} {}  sha256:{}", f.role, f.path, f.sha256);
            }
        }
        for s in &self.sections {
            let _ = writeln!(out, "\n== {} ==", s.subject);
            let rows: Vec<[String; 4]> = s
                .stages
                .iter()
                .flat_map(|st| {
                    let head = match &st.skipped {
                        Some(why) => vec![[st.name.clone(), "-".into(), "SKIPPED".into(), why.clone()]],
                        None => vec![],
                    };
                    head.into_iter().chain(st.checks.iter().map(|c| {
                        [st.name.clone(), c.name.clone(), result_word(c).into(), detail(c)]
                    }))
                })
                .collect();
            let w0 = rows.iter().map(|r| r[0].chars().count()).max().unwrap_or(0).max(5);
            let w1 = rows.iter().map(|r| r[1].chars().count()).max().unwrap_or(0).max(5);
            let _ = writeln!(out, "{:<w0$}  {:<w1$}  {:<10}  detail", "stage", "check", "result");
            for [a, b, c, d] in rows {
                let line = format!("{a:<w0$}  {b:<w1$}  {c:<10}  {d}");
                let _ = writeln!(out, "{}", line.trim_end());
            }
            let first = s
                .stages
                .iter()
                .find_map(|st| st.first_failure().map(|c| format!("{}.{}", st.name, c.name)));
            if let Some(first) = first {
                let _ = writeln!(out, "first failure: {first}");
            }
            let _ = writeln!(out, "verdict: {}", s.verdict.as_str());
        }
        let _ = writeln!(out, "\noverall: {}", self.verdict().as_str());
        out
    }

    pub fn to_json(&self) -> Value {
        let files = |v: &[FileIdentity]| -> Value {
            v.iter()
                .map(|f| json!({"role": f.role, "path": f.path, "sha256": f.sha256}))
                .collect()
        };
        json!({
            "tool": TOOL,
            "command": self.command,
            "inputs": files(&self.inputs),
            "outputs": files(&self.outputs),
            "sections": self.sections.iter().map(section_json).collect::<Vec<_>>(),
            "verdict": self.verdict().as_str(),
        })
    }
}

fn result_word(c: &Check) -> &'static str {
    match (c.passed, c.informational) {
        (true, false) => "PASS",
        (true, true) => "PASS(info)",
        (false, false) => "FAIL",
        (false, true) => "FAIL(info)",
    }
}

fn detail(c: &Check) -> String {
    let mut parts = vec![];
    if let Some(w) = &c.witness {
        parts.push(format!(
            "at {:?}: lhs = {}, rhs = {}",
            w.tuple,
            vector_text(&w.lhs),
            vector_text(&w.rhs)
        ));
    }
    if let Some(n) = &c.note {
        parts.push(n.clone());
    }
    parts.join("; ")
}

const SHOWN_TERMS: usize = 6;

/// `c·[i, j] + ...` over multi-indices, `0` for the zero vector. Long sums
/// are cut short; the JSON section always has every term.
pub fn vector_text(v: &Vector) -> String {
    let all = v.multi_entries();
    let mut terms: Vec<String> = all
        .iter()
        .take(SHOWN_TERMS)
        .map(|(ix, s)| format!("{s}·{ix:?}"))
        .collect();
    if all.len() > SHOWN_TERMS {
        terms.push(format!("… ({} terms)", all.len()));
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn vector_json(v: &Vector) -> Value {
    v.multi_entries()
        .into_iter()
        .map(|(ix, s)| json!([ix, s.to_string()]))
        .collect()
}

fn witness_json(w: &Witness) -> Value {
    json!({"tuple": w.tuple, "lhs": vector_json(&w.lhs), "rhs": vector_json(&w.rhs)})
}

fn section_json(s: &AxiomReport) -> Value {
    json!({
        "subject": s.subject,
        "verdict": s.verdict.as_str(),
        "stages": s.stages.iter().map(|st| {
            let mut o = json!({"name": st.name});
            if let Some(why) = &st.skipped {
                o["skipped"] = json!(why);
            }
            o["checks"] = st.checks.iter().map(|c| {
                let mut k = json!({
                    "name": c.name,
                    "result": if c.passed { "PASS" } else { "FAIL" },
                    "informational": c.informational,
                });
                if let Some(w) = &c.witness {
                    k["witness"] = witness_json(w);
                }
                if let Some(n) = &c.note {
                    k["note"] = json!(n);
                }
                k
            }).collect();
            o
        }).collect::<Vec<_>>(),
    })
}
