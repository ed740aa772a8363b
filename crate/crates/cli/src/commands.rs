use std::io::Write;
use std::path::Path;

use hopfq_core::smash::{basis_action, trivial_action};
use hopfq_core::twist::check_twist_conditions_by_name;
use hopfq_core::{
    antipode_diagnostics, build_r_smash, build_w_cosmash, check_counital_coalgebra, check_hopf_coquasigroup,
    check_hopf_quasigroup, check_quasimodule, check_twist_conditions, check_unital_algebra, gen_chein_double,
    gen_group, loop_algebra, loop_properties, theorem_backward, theorem_backward_dual, theorem_forward,
    theorem_forward_dual, twist_from_action, twist_from_flip, verify_lemma_antipode_compat,
    verify_lemma_conormal_coalgebra, verify_lemma_quasimult, AxiomReport, Check, Condition, Error, Field, GroupKind,
    HopfData, LoopTable, Stage, TwistMap, Vector, Witness,
};

use crate::cli::{ActionKind, Cli, Command, Suite};
use crate::error::{CliError, Result};
use crate::format::{
    parse_structure, serialize_structure, sha256_hex, write_file, Body, FactorRef, Kind, StructureFile,
};
use crate::report::{FileIdentity, ReportDocument};

/// Runs one command. The report goes to `out`, errors to `err`; the return
/// value is the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.jobs {
        Some(0) => Err(CliError::usage("--jobs must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::usage(format!("cannot start {n} workers: {e}")))
            .and_then(|pool| pool.install(|| execute(&cli.command))),
        None => execute(&cli.command),
    };
    match result {
        Ok(doc) => {
            if let Err(e) = out.write_all(doc.render().as_bytes()) {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            doc.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn execute(cmd: &Command) -> Result<ReportDocument> {
    match cmd {
        Command::Validate { path, suite } => validate(path, *suite),
        Command::Gen { kind, output } => gen(kind, output),
        Command::LoopAlgebra { path, field, output } => cmd_loop_algebra(path, field, output),
        Command::Dualize { path, output } => dualize(path, output),
        Command::Flip { h, a, output } => flip(h, a, output),
        Command::Action { kind, h, a, output } => action(*kind, h, a, output),
        Command::CheckTwist { h, a, r, conditions } => check_twist(h.as_deref(), a.as_deref(), r, conditions),
        Command::Smash {
            h,
            a,
            r,
            output,
            verify,
        } => smash(h.as_deref(), a.as_deref(), r, output, *verify),
        Command::Cosmash {
            h,
            a,
            w,
            output,
            verify,
        } => cosmash(h.as_deref(), a.as_deref(), w, output, *verify),
        Command::Theorem { h, a, r, dual } => theorem(h.as_deref(), a.as_deref(), r, *dual),
        Command::ActionTwist { action, output } => action_twist(action, output),
        Command::Lemmas { r } => lemmas(r),
    }
}

struct Loaded {
    file: StructureFile,
    identity: FileIdentity,
}

fn load(role: &str, path: &Path) -> Result<Loaded> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    let file = parse_structure(path)?;
    Ok(Loaded {
        file,
        identity: FileIdentity {
            role: role.into(),
            path: path.display().to_string(),
            sha256: sha256_hex(&bytes),
        },
    })
}

fn load_kind(role: &str, path: &Path, kinds: &[Kind]) -> Result<Loaded> {
    let l = load(role, path)?;
    if !kinds.contains(&l.file.kind()) {
        let want: Vec<&str> = kinds.iter().map(|k| k.as_str()).collect();
        return Err(CliError::usage(format!(
            "{} is a {} file, expected {}",
            path.display(),
            l.file.kind(),
            want.join(" or ")
        )));
    }
    Ok(l)
}

const STRUCTURES: [Kind; 2] = [Kind::HopfQuasigroup, Kind::HopfCoquasigroup];

fn save(doc: &mut ReportDocument, role: &str, path: &Path, file: &StructureFile) -> Result<()> {
    let text = serialize_structure(file);
    write_file(path, &text)?;
    doc.outputs.push(FileIdentity {
        role: role.into(),
        path: path.display().to_string(),
        sha256: sha256_hex(text.as_bytes()),
    });
    Ok(())
}

fn validate(path: &Path, suite: Option<Suite>) -> Result<ReportDocument> {
    let l = load("input", path)?;
    let kind = l.file.kind();
    let suite = match (suite, kind) {
        (Some(s), _) => s,
        (None, Kind::HopfQuasigroup) => Suite::HopfQuasigroup,
        (None, Kind::HopfCoquasigroup) => Suite::HopfCoquasigroup,
        (None, Kind::Loop) => Suite::Loop,
        (None, Kind::Action) => Suite::Quasimodule,
        (None, Kind::Twist) => return Err(CliError::usage("twist files are checked with check-twist")),
    };
    let mismatch = || CliError::usage(format!("suite {suite:?} does not apply to a {kind} file"));
    let mut doc = ReportDocument::new("validate");
    doc.inputs.push(l.identity);
    match (&l.file.body, suite) {
        (Body::Loop(t), Suite::Loop) => doc.sections.push(loop_report(t)),
        (Body::Action { action, .. }, Suite::Quasimodule) => doc.sections.push(check_quasimodule(action)?),
        (Body::HopfQuasigroup(x), Suite::HopfQuasigroup) => {
            doc.sections.push(check_hopf_quasigroup(x)?);
            doc.sections.push(antipode_diagnostics(x)?);
        }
        (Body::HopfCoquasigroup(x), Suite::HopfCoquasigroup) => {
            doc.sections.push(check_hopf_coquasigroup(x)?);
            doc.sections.push(antipode_diagnostics(x)?);
        }
        (_, Suite::Algebra) => doc
            .sections
            .push(check_unital_algebra(l.file.hopf_data().ok_or_else(mismatch)?)?),
        (_, Suite::Coalgebra) => doc
            .sections
            .push(check_counital_coalgebra(l.file.hopf_data().ok_or_else(mismatch)?)?),
        _ => return Err(mismatch()),
    }
    Ok(doc)
}

/// Inverse properties decide the verdict; Moufang and associativity are
/// reported only. Witnesses are loop elements, shown as basis vectors.
pub fn loop_report(t: &LoopTable) -> AxiomReport {
    let p = loop_properties(t);
    let basis = |x: usize| Vector::basis(Field::Rational, &[t.order()], x).expect("element in range");
    let checks = p
        .flags()
        .into_iter()
        .map(|(name, flag)| {
            let w = flag.witness.as_ref().map(|w| Witness {
                tuple: w.tuple.clone(),
                lhs: basis(w.lhs),
                rhs: basis(w.rhs),
            });
            let c = Check::from_witness(name, w);
            if matches!(name, "moufang" | "associative") {
                c.informational()
            } else {
                c
            }
        })
        .collect();
    AxiomReport::suite("loop properties", vec![Stage::new("loop", checks)])
}

fn gen(kind: &[String], output: &Path) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("gen");
    let (name, table) = match kind.iter().map(String::as_str).collect::<Vec<_>>()[..] {
        ["cyclic", n] => {
            let n: usize = n
                .parse()
                .map_err(|_| CliError::usage(format!("cyclic order {n:?} is not a number")))?;
            (format!("C{n}"), gen_group(GroupKind::Cyclic(n))?)
        }
        ["s3"] => ("S3".to_string(), gen_group(GroupKind::S3)?),
        ["chein-double", file] => {
            let l = load_kind("group", Path::new(file), &[Kind::Loop])?;
            let Body::Loop(g) = &l.file.body else { unreachable!() };
            let doubled = gen_chein_double(g)?;
            doc.inputs.push(l.identity);
            (format!("M({},2)", l.file.name), doubled)
        }
        _ => {
            return Err(CliError::usage(format!(
                "unknown generator {:?}; use `cyclic N`, `s3` or `chein-double FILE`",
                kind.join(" ")
            )))
        }
    };
    let file = StructureFile {
        name,
        body: Body::Loop(table),
    };
    save(&mut doc, "loop", output, &file)?;
    Ok(doc)
}

fn cmd_loop_algebra(path: &Path, field: &str, output: &Path) -> Result<ReportDocument> {
    let field: Field = field.parse().map_err(|e: Error| CliError::usage(e.to_string()))?;
    let l = load_kind("loop", path, &[Kind::Loop])?;
    let Body::Loop(t) = &l.file.body else { unreachable!() };
    let mut doc = ReportDocument::new("loop-algebra");
    doc.inputs.push(l.identity.clone());
    match loop_algebra(t, field) {
        Ok(x) => {
            let file = StructureFile {
                name: format!("k[{}]", l.file.name),
                body: Body::HopfQuasigroup(x),
            };
            save(&mut doc, "algebra", output, &file)?;
        }
        Err(Error::NotIpLoop(_)) => doc.sections.push(loop_report(t)),
        Err(e) => return Err(e.into()),
    }
    Ok(doc)
}

fn dual_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

fn dualize(path: &Path, output: &Path) -> Result<ReportDocument> {
    let l = load_kind("input", path, &STRUCTURES)?;
    let body = match &l.file.body {
        Body::HopfQuasigroup(x) => Body::HopfCoquasigroup(x.dualize()),
        Body::HopfCoquasigroup(x) => Body::HopfQuasigroup(x.dualize()),
        _ => unreachable!(),
    };
    let mut doc = ReportDocument::new("dualize");
    doc.inputs.push(l.identity);
    let file = StructureFile {
        name: dual_name(&l.file.name),
        body,
    };
    save(&mut doc, "dual", output, &file)?;
    Ok(doc)
}

struct Factors {
    h: Loaded,
    a: Loaded,
}

impl Factors {
    fn load(h: &Path, a: &Path) -> Result<Factors> {
        Ok(Factors {
            h: load_kind("H", h, &STRUCTURES)?,
            a: load_kind("A", a, &STRUCTURES)?,
        })
    }

    fn data(&self) -> (&HopfData, &HopfData) {
        (
            self.h.file.hopf_data().expect("structure kind"),
            self.a.file.hopf_data().expect("structure kind"),
        )
    }

    fn refs(&self, output: &Path, h: &Path, a: &Path) -> Result<(FactorRef, FactorRef)> {
        Ok((
            FactorRef::to_file(output, h, self.h.file.kind())?,
            FactorRef::to_file(output, a, self.a.file.kind())?,
        ))
    }
}

fn flip(h: &Path, a: &Path, output: &Path) -> Result<ReportDocument> {
    let f = Factors::load(h, a)?;
    let (hd, ad) = f.data();
    let twist = twist_from_flip(hd, ad)?;
    let mut doc = ReportDocument::new("flip");
    let name = format!("flip({}, {})", f.h.file.name, f.a.file.name);
    let (hr, ar) = f.refs(output, h, a)?;
    doc.inputs.extend([f.h.identity, f.a.identity]);
    let file = StructureFile {
        name,
        body: Body::Twist { h: hr, a: ar, twist },
    };
    save(&mut doc, "twist", output, &file)?;
    Ok(doc)
}

fn action(kind: ActionKind, h: &Path, a: &Path, output: &Path) -> Result<ReportDocument> {
    let f = Factors::load(h, a)?;
    let (hd, ad) = f.data();
    let (label, q) = match kind {
        ActionKind::Trivial => ("trivial", trivial_action(hd, ad)?),
        ActionKind::Inversion => {
            if hd.dim() != 2 {
                return Err(CliError::usage("inversion needs a two-dimensional H"));
            }
            let s: Option<Vec<usize>> = (0..ad.dim())
                .map(|j| match ad.antipode().column(j) {
                    [(i, v)] if v.is_one() => Some(*i),
                    _ => None,
                })
                .collect();
            let s = s.ok_or_else(|| CliError::usage("inversion needs an antipode permuting the basis of A"))?;
            ("inversion", basis_action(hd, ad, &[(0..ad.dim()).collect(), s])?)
        }
    };
    let mut doc = ReportDocument::new("action");
    let name = format!("{label}({}, {})", f.h.file.name, f.a.file.name);
    let (hr, ar) = f.refs(output, h, a)?;
    doc.inputs.extend([f.h.identity, f.a.identity]);
    let file = StructureFile {
        name,
        body: Body::Action {
            h: hr,
            a: ar,
            action: q,
        },
    };
    save(&mut doc, "action", output, &file)?;
    Ok(doc)
}

/// Loads a twist file and, when given, checks that the separately named
/// factor files hold the same structures the twist refers to.
fn load_twist(
    doc: &mut ReportDocument,
    role: &str,
    path: &Path,
    h: Option<&Path>,
    a: Option<&Path>,
) -> Result<(String, TwistMap)> {
    let l = load_kind(role, path, &[Kind::Twist])?;
    let Body::Twist { twist, .. } = l.file.body else { unreachable!() };
    doc.inputs.push(l.identity);
    for (label, given, expected) in [("H", h, twist.h()), ("A", a, twist.a())] {
        let Some(p) = given else { continue };
        let f = load_kind(label, p, &STRUCTURES)?;
        if f.file.hopf_data() != Some(expected) {
            return Err(Error::FactorMismatch(format!(
                "{} differs from the {label} factor referenced by {}",
                p.display(),
                path.display()
            ))
            .into());
        }
        doc.inputs.push(f.identity);
    }
    Ok((l.file.name, twist))
}

fn check_twist(h: Option<&Path>, a: Option<&Path>, r: &Path, conditions: &[String]) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("check-twist");
    let (name, twist) = load_twist(&mut doc, "R", r, h, a)?;
    let report = if conditions.is_empty() {
        check_twist_conditions(&twist, &Condition::ALL)?
    } else {
        check_twist_conditions_by_name(&twist, conditions)?
    };
    doc.sections.push(AxiomReport::suite(
        format!("twist conditions on {name}"),
        vec![Stage::new("conditions", report.checks)],
    ));
    Ok(doc)
}

fn smash(h: Option<&Path>, a: Option<&Path>, r: &Path, output: &Path, verify: bool) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("smash");
    let (name, twist) = load_twist(&mut doc, "R", r, h, a)?;
    let c = build_r_smash(twist.a(), twist.h(), &twist)?;
    let file = StructureFile {
        name: format!("smash({name})"),
        body: Body::HopfQuasigroup(c.product),
    };
    save(&mut doc, "smash", output, &file)?;
    if verify {
        doc.sections.push(theorem_forward(twist.a(), twist.h(), &twist)?);
    }
    Ok(doc)
}

fn cosmash(h: Option<&Path>, a: Option<&Path>, w: &Path, output: &Path, verify: bool) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("cosmash");
    let (name, twist) = load_twist(&mut doc, "W", w, h, a)?;
    let c = build_w_cosmash(twist.h(), twist.a(), &twist)?;
    let file = StructureFile {
        name: format!("cosmash({name})"),
        body: Body::HopfCoquasigroup(c.product),
    };
    save(&mut doc, "cosmash", output, &file)?;
    if verify {
        doc.sections.push(theorem_forward_dual(twist.h(), twist.a(), &twist)?);
    }
    Ok(doc)
}

fn theorem(h: Option<&Path>, a: Option<&Path>, r: &Path, dual: bool) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new(if dual { "theorem --dual" } else { "theorem" });
    let (_, t) = load_twist(&mut doc, if dual { "W" } else { "R" }, r, h, a)?;
    if dual {
        doc.sections.push(theorem_forward_dual(t.h(), t.a(), &t)?);
        doc.sections.push(theorem_backward_dual(t.h(), t.a(), &t)?);
    } else {
        doc.sections.push(theorem_forward(t.a(), t.h(), &t)?);
        doc.sections.push(theorem_backward(t.a(), t.h(), &t)?);
    }
    Ok(doc)
}

fn action_twist(path: &Path, output: &Path) -> Result<ReportDocument> {
    let l = load_kind("action", path, &[Kind::Action])?;
    let Body::Action { h, a, action } = &l.file.body else { unreachable!() };
    let mut doc = ReportDocument::new("action-twist");
    doc.inputs.push(l.identity.clone());
    match twist_from_action(action) {
        Ok(twist) => {
            let file = StructureFile {
                name: format!("twist({})", l.file.name),
                body: Body::Twist {
                    h: FactorRef::to_file(output, &h.resolved, h.kind)?,
                    a: FactorRef::to_file(output, &a.resolved, a.kind)?,
                    twist,
                },
            };
            save(&mut doc, "twist", output, &file)?;
        }
        Err(Error::QuasimoduleAxiomFailure(report)) => doc.sections.push(*report),
        Err(e) => return Err(e.into()),
    }
    Ok(doc)
}

fn lemmas(r: &Path) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("lemmas");
    let (_, t) = load_twist(&mut doc, "R", r, None, None)?;
    doc.sections.push(verify_lemma_conormal_coalgebra(&t)?);
    doc.sections.push(verify_lemma_quasimult(&t)?);
    doc.sections.push(verify_lemma_antipode_compat(&t)?);
    Ok(doc)
}
