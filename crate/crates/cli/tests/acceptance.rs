//! One line per acceptance criterion, then a single assertion over all of
//! them. Lines go straight to the process stdout so they show up without
//! `--nocapture`.

mod common;

use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use hopfq_cli::format::{parse_str, serialize_structure};
use hopfq_core::catalog;
use hopfq_core::smash::twist_from_action_unchecked;
use hopfq_core::{
    antipode_diagnostics, build_r_smash, build_w_cosmash, check_hopf_coquasigroup, check_hopf_quasigroup,
    check_quasimodule, check_twist_conditions, gen_chein_double, gen_group, loop_algebra, loop_properties,
    theorem_backward, theorem_forward, theorem_forward_dual, twist_from_action, twist_from_flip,
    verify_lemma_antipode_compat, verify_lemma_conormal_coalgebra, verify_lemma_quasimult, AxiomReport, Condition,
    Field, GroupKind, HopfData, Verdict,
};

use common::{fixtures, hopfq, regenerate, EDITED, GENERATED};

const Q: Field = Field::Rational;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn within(limit: Duration, start: Instant) -> Result<String, String> {
    let t = start.elapsed();
    ensure!(t < limit, "took {t:.2?}, limit {limit:?}");
    Ok(format!("{t:.2?} < {limit:?}"))
}

fn stages_all_pass(r: &AxiomReport) -> Result<(), String> {
    match r.stages.iter().find(|s| !s.passed()) {
        Some(s) => Err(format!("{}: stage {} does not pass ({})", r.subject, s.name, r.verdict.as_str())),
        None => Ok(()),
    }
}

fn loop_substrate() -> Outcome {
    let start = Instant::now();
    let m = ok(gen_chein_double(&ok(gen_group(GroupKind::S3))?))?;
    let p = loop_properties(&m);
    let timing = within(Duration::from_secs(5), start)?;
    ensure!(m.order() == 12, "order {}", m.order());
    ensure!(p.is_ip(), "not an IP loop");
    ensure!(p.moufang.holds, "not Moufang");
    let w = p.associative.witness.as_ref().ok_or("associative")?;
    let (x, y, z) = (w.tuple[0], w.tuple[1], w.tuple[2]);
    ensure!(m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z)), "witness does not break associativity");
    Ok(format!(
        "order 12, IP, Moufang, nonassociative at ({x}, {y}, {z}): (xy)z = {} but x(yz) = {}; {timing}",
        w.lhs, w.rhs
    ))
}

fn hopf_quasigroup_axioms() -> Outcome {
    let start = Instant::now();
    let k = ok(loop_algebra(&ok(catalog::m12_loop())?, Q))?;
    let suite = ok(check_hopf_quasigroup(&k))?;
    let diag = ok(antipode_diagnostics(&k))?;
    let timing = within(Duration::from_secs(10), start)?;
    for name in [
        "quasi1_left",
        "quasi1_right",
        "quasi2_left",
        "quasi2_right",
        "coassociativity",
        "comul_multiplicative",
        "comul_unital",
        "counit_multiplicative",
        "counit_unital",
    ] {
        let c = suite.check(name).ok_or(format!("{name} missing"))?;
        ensure!(c.passed && !c.informational, "{name} does not pass as a required check");
    }
    ensure!(suite.passed(), "suite verdict {}", suite.verdict.as_str());
    ensure!(diag.checks().all(|c| c.passed), "antipode diagnostics fail");
    Ok(format!("k[M(S3,2)] over Q: {} checks and {} diagnostics pass; {timing}", suite.checks().count(), diag.checks().count()))
}

fn flip_theorem() -> Outcome {
    let start = Instant::now();
    let a = ok(catalog::km12(Q))?;
    let h = ok(catalog::kc(2, Q))?;
    let r = ok(twist_from_flip(&h, &a))?;
    let c = ok(build_r_smash(&a, &h, &r))?;
    ensure!(c.product.dim() == 24, "candidate dim {}", c.product.dim());
    let fwd = ok(theorem_forward(&a, &h, &r))?;
    let bwd = ok(theorem_backward(&a, &h, &r))?;
    let timing = within(Duration::from_secs(60), start)?;
    for rep in [&fwd, &bwd] {
        ensure!(rep.verdict == Verdict::Pass, "{}: {}", rep.subject, rep.verdict.as_str());
        stages_all_pass(rep)?;
    }
    Ok(format!("24-dim candidate, forward and backward pass all {} stages; {timing}", fwd.stages.len()))
}

/// `kS3` with basis `a ⊗ h`, index `2a + h`, from `(a, h)(b, k) = (a + (-1)^h b, h + k)`.
const KS3_TABLE: [[usize; 6]; 6] = [
    [0, 1, 2, 3, 4, 5],
    [1, 0, 5, 4, 3, 2],
    [2, 3, 4, 5, 0, 1],
    [3, 2, 1, 0, 5, 4],
    [4, 5, 0, 1, 2, 3],
    [5, 4, 3, 2, 1, 0],
];

const ASSERTED: [Condition; 6] = [
    Condition::CoalgebraMap,
    Condition::LeftMultiplicative,
    Condition::Normal,
    Condition::LeftConormal,
    Condition::RightSHMultiplicative,
    Condition::RightSHConormal,
];

fn example_instance() -> Outcome {
    let q = ok(catalog::inversion_action(3, Q))?;
    let qm = ok(check_quasimodule(&q))?;
    ensure!(qm.passed(), "quasimodule suite fails at {:?}", qm.first_failure().map(|c| &c.name));
    let smash_stage = qm.stage("smash_conditions").ok_or("smash_conditions stage missing")?;
    ensure!(
        smash_stage.checks.len() == 2 && smash_stage.passed(),
        "the two action conditions do not both pass"
    );
    let r = ok(twist_from_action(&q))?;
    let conds = ok(check_twist_conditions(&r, &Condition::ALL))?;
    for c in ASSERTED {
        ensure!(conds.holds(c), "{c} does not hold");
    }
    let holding: Vec<&str> = conds.checks.iter().filter(|c| c.passed).map(|c| c.name.as_str()).collect();
    let s = ok(build_r_smash(r.a(), r.h(), &r))?;
    ensure!(s.product.dim() == 6, "smash dim {}", s.product.dim());
    let one = Q.one();
    for (x, row) in KS3_TABLE.iter().enumerate() {
        for (y, &xy) in row.iter().enumerate() {
            let col = s.product.mul().column(x * 6 + y);
            ensure!(col == [(xy, one.clone())], "product {x}·{y} is {col:?}, expected basis {xy}");
        }
    }
    Ok(format!("quasimodule passes, 6-dim smash equals the kS3 table; conditions holding: {}", holding.join(", ")))
}

fn negative_coupling() -> Outcome {
    let r = ok(catalog::inversion_twist(3, Q))?;
    let (rows, cols) = (r.map().rows(), r.map().cols());
    let total = rows * cols;
    let theorem_conditions = [
        Condition::LeftMultiplicative,
        Condition::LeftConormal,
        Condition::CoalgebraMap,
        Condition::Normal,
        Condition::RightSHMultiplicative,
        Condition::RightSHConormal,
    ];
    let mut both = 0;
    for k in 0..20 {
        let slot = k * 7 % total;
        let (row, col) = (slot % rows, slot / rows);
        let v = &r.map().get(row, col) + &Q.one();
        let p = ok(r.with_map(ok(r.map().with_entry(row, col, v))?))?;
        let conds = ok(check_twist_conditions(&p, &theorem_conditions))?;
        let cond_fail = conds.checks.iter().find(|c| !c.passed).map(|c| c.name.clone());
        let cand = ok(check_hopf_quasigroup(&ok(build_r_smash(p.a(), p.h(), &p))?.product))?;
        let axiom_fail = cand.first_failure().map(|c| c.name.clone());
        ensure!(
            cond_fail.is_some() == axiom_fail.is_some(),
            "entry ({row}, {col}): condition failure {cond_fail:?} but axiom failure {axiom_fail:?}"
        );
        if cond_fail.is_some() {
            both += 1;
        }
    }
    ensure!(both > 0, "no perturbation broke anything");
    Ok(format!("20 single-entry perturbations, {both} break both sides, none break exactly one"))
}

fn lemma_suites() -> Outcome {
    let family = ok(catalog::twists(Q))?;
    ensure!(family.len() >= 25, "only {} instances", family.len());
    let mut satisfied = [0usize; 3];
    for t in &family {
        let reports = [
            ok(verify_lemma_conormal_coalgebra(&t.twist))?,
            ok(verify_lemma_quasimult(&t.twist))?,
            ok(verify_lemma_antipode_compat(&t.twist))?,
        ];
        for (i, rep) in reports.iter().enumerate() {
            ensure!(
                matches!(rep.verdict, Verdict::Pass | Verdict::PremisesNotMet),
                "{}: {} gives {}",
                t.name,
                rep.subject,
                rep.verdict.as_str()
            );
            if rep.verdict == Verdict::Pass {
                satisfied[i] += 1;
            }
        }
    }
    Ok(format!(
        "{} instances, zero conclusion failures; premises held in {}, {}, {} cases",
        family.len(),
        satisfied[0],
        satisfied[1],
        satisfied[2]
    ))
}

fn bundled_structures() -> Result<Vec<(String, HopfData)>, String> {
    let mut out = vec![];
    for f in [Q, ok(Field::prime(7))?] {
        for n in 1..=6 {
            out.push((format!("kC{n} over {f}"), ok(catalog::kc(n, f))?.into_inner()));
        }
        out.push((format!("kS3 over {f}"), ok(catalog::ks3(f))?.into_inner()));
        out.push((format!("k[M(S3,2)] over {f}"), ok(catalog::km12(f))?.into_inner()));
    }
    for q in ok(catalog::actions(Q))? {
        let r = ok(twist_from_action_unchecked(&q.action))?;
        out.push((format!("smash of {}", q.name), ok(build_r_smash(r.a(), r.h(), &r))?.product.into_inner()));
    }
    Ok(out)
}

fn duality() -> Outcome {
    let all = bundled_structures()?;
    for (name, x) in &all {
        let d = x.transposed();
        ensure!(d.transposed() == *x, "{name}: dualizing twice changes the structure");
    }
    let km12 = ok(catalog::km12(Q))?;
    let dual = km12.dualize();
    let hc = ok(check_hopf_coquasigroup(&dual))?;
    ensure!(hc.passed(), "dual of k[M(S3,2)] fails {:?}", hc.first_failure().map(|c| &c.name));
    ensure!(dual.dualize() == km12, "dualize is not an involution on k[M(S3,2)]");

    let r = ok(catalog::inversion_twist(3, Q))?;
    let w = r.dual();
    let fwd = ok(theorem_forward_dual(w.h(), w.a(), &w))?;
    ensure!(fwd.verdict == Verdict::Pass, "dual theorem on the S3 instance: {}", fwd.verdict.as_str());

    let mut coherent = 0;
    for q in ok(catalog::actions(Q))? {
        let r = ok(twist_from_action(&q.action))?;
        let s = ok(build_r_smash(r.a(), r.h(), &r))?.product;
        let (da, dh) = (r.a().dim(), r.h().dim());
        // Element a ⊗ h sits at a·dh + h in A ⊗ H and at h·da + a in H ⊗ A.
        let swap: Vec<usize> = (0..da * dh).map(|k| (k % dh) * da + k / dh).collect();
        let expected = ok(s.transposed().relabeled(&swap))?.op_cop();
        let w = r.dual();
        let c = ok(build_w_cosmash(w.h(), w.a(), &w))?.product;
        for part in hopfq_core::Part::ALL {
            ensure!(
                c.part(part) == expected.part(part),
                "{}: {} differs from the reindexed dual of the smash product",
                q.name,
                part.name()
            );
        }
        let t = r.transposed();
        let plain = ok(build_w_cosmash(t.h(), t.a(), &t))?.product;
        ensure!(plain.data() == &s.transposed(), "{}: transposed cosmash differs", q.name);
        coherent += 1;
    }
    Ok(format!(
        "involution on {} structures, dual k[M(S3,2)] is a Hopf coquasigroup, dual S3 theorem passes, coherence on {coherent} actions",
        all.len()
    ))
}

fn determinism() -> Outcome {
    let dir = fixtures();
    let mut files = 0;
    for name in GENERATED.iter().chain(EDITED.iter()) {
        let path = dir.join(name);
        let text = ok(std::fs::read_to_string(&path))?;
        let parsed = ok(parse_str(&text, &path))?;
        ensure!(serialize_structure(&parsed) == text, "{name} does not round trip");
        files += 1;
    }
    let tmp = ok(tempfile::tempdir())?;
    regenerate(tmp.path());
    for name in GENERATED {
        let fresh = ok(std::fs::read(tmp.path().join(name)))?;
        let committed = ok(std::fs::read(dir.join(name)))?;
        ensure!(fresh == committed, "regenerated {name} differs from the fixture");
    }
    ensure!(
        ok(std::fs::read(dir.join("km12-roundtrip.hq.json")))? == ok(std::fs::read(dir.join("km12.hq.json")))?,
        "dualizing twice changes k[M(S3,2)]"
    );
    let commands: [&[&str]; 6] = [
        &["validate", "m12.loop.json"],
        &["validate", "km12.hq.json"],
        &["validate", "broken.hq.json"],
        &["check-twist", "--R", "perturbed.twist.json"],
        &["theorem", "--R", "flip-c2-m12.twist.json"],
        &["lemmas", "--R", "inversion-c2-c3.twist.json"],
    ];
    for args in commands {
        let one = hopfq(&dir, &[&["--jobs", "1"], args].concat());
        let many = hopfq(&dir, &[&["--jobs", "4"], args].concat());
        ensure!(one.stdout == many.stdout && one.code == many.code, "{args:?} differs between 1 and 4 workers");
        ensure!(one.stderr.is_empty(), "{args:?}: {}", one.stderr);
    }
    Ok(format!(
        "{files} files round trip, {} regenerate byte-identically, {} reports identical for 1 and 4 workers",
        GENERATED.len(),
        commands.len()
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 8] = [
        ("loop substrate", loop_substrate),
        ("Hopf quasigroup axioms", hopf_quasigroup_axioms),
        ("flip instance of the smash theorem", flip_theorem),
        ("C2 inverting C3 gives kS3", example_instance),
        ("negative coupling", negative_coupling),
        ("lemma suites", lemma_suites),
        ("duality", duality),
        ("determinism and formats", determinism),
    ];
    let mut failed = vec![];
    let mut stdout = std::io::stdout();
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let line = match f() {
            Ok(detail) => format!("criterion {} PASS  {name}: {detail}\n", i + 1),
            Err(why) => {
                failed.push(i + 1);
                format!("criterion {} FAIL  {name}: {why}\n", i + 1)
            }
        };
        let _ = stdout.write_all(line.as_bytes());
    }
    let _ = stdout.flush();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn fixtures_exist() {
    for name in GENERATED.iter().chain(EDITED.iter()) {
        assert!(Path::new(&fixtures().join(name)).is_file(), "{name}");
    }
}
