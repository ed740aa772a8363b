//! Pass/fail records produced by every checker.

use crate::error::Result;
use crate::expr::{compare, MapExpr};
use crate::linear::Vector;
use crate::scalar::Field;

/// Where two sides of an equation first differ: the basis tuple (in the
/// squeezed domain shape) and both sides' full images of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub tuple: Vec<usize>,
    pub lhs: Vector,
    pub rhs: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Informational checks are reported but never decide a verdict.
    pub informational: bool,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed: true,
            informational: false,
            witness: None,
            note: None,
        }
    }

    pub fn from_witness(name: impl Into<String>, witness: Option<Witness>) -> Check {
        Check {
            name: name.into(),
            passed: witness.is_none(),
            informational: false,
            witness,
            note: None,
        }
    }

    /// A failure with no map-level witness (e.g. a boolean mismatch).
    pub fn fail(name: impl Into<String>, note: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed: false,
            informational: false,
            witness: None,
            note: Some(note.into()),
        }
    }

    pub fn informational(mut self) -> Check {
        self.informational = true;
        self
    }

    pub fn required(mut self) -> Check {
        self.informational = false;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Check {
        self.name = name.into();
        self
    }

    pub fn blocking(&self) -> bool {
        !self.passed && !self.informational
    }
}

/// Evaluates `lhs = rhs` exactly and records the outcome.
pub fn equation(name: &str, lhs: &MapExpr<'_>, rhs: &MapExpr<'_>, field: Field) -> Result<Check> {
    Ok(Check::from_witness(name, compare(lhs, rhs, field)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub name: String,
    pub checks: Vec<Check>,
    /// Set when the stage was not evaluated, with the reason.
    pub skipped: Option<String>,
}

impl Stage {
    pub fn new(name: impl Into<String>, checks: Vec<Check>) -> Stage {
        Stage {
            name: name.into(),
            checks,
            skipped: None,
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Stage {
        Stage {
            name: name.into(),
            checks: vec![],
            skipped: Some(reason.into()),
        }
    }

    pub fn passed(&self) -> bool {
        self.skipped.is_none() && self.checks.iter().all(|c| !c.blocking())
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.blocking())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The statement's premises do not hold on this input; nothing to verify.
    PremisesNotMet,
    /// A proven implication was violated: an implementation bug or an input
    /// structure that does not satisfy its own axioms.
    Fatal,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::PremisesNotMet => "PREMISES_NOT_MET",
            Verdict::Fatal => "FATAL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub subject: String,
    pub stages: Vec<Stage>,
    pub verdict: Verdict,
}

impl AxiomReport {
    /// A plain suite: passes iff no required check fails.
    pub fn suite(subject: impl Into<String>, stages: Vec<Stage>) -> AxiomReport {
        let verdict = if stages.iter().all(Stage::passed) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        AxiomReport {
            subject: subject.into(),
            stages,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.stages.iter().flat_map(|s| s.checks.iter())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.stages.iter().find_map(Stage::first_failure)
    }

    /// Flattens several suites into stages of one report, prefixing names.
    pub(crate) fn into_stages(self, prefix: &str) -> Vec<Stage> {
        self.stages
            .into_iter()
            .map(|mut s| {
                s.name = format!("{prefix}{}", s.name);
                s
            })
            .collect()
    }
}
