//! R-smash products, W-smash coproducts, quasimodule actions and the
//! verifiers for both directions of the smash product theorems.

use crate::error::{Error, Result};
use crate::expr::{chain, flip, id, map, tensor, MapExpr};
use crate::linear::LinearMap;
use crate::report::{equation, AxiomReport, Check, Stage, Verdict};
use crate::scalar::Field;
use crate::structures::{
    check_hopf_coquasigroup, check_hopf_quasigroup, HopfCoquasigroupData, HopfData, HopfQuasigroupData,
};
use crate::twist::{check_twist_conditions, Condition, TwistMap};

/// A linear map `H ⊗ A → A`, `h ⊗ a ↦ h·a`. Its axioms are checked by
/// [`check_quasimodule`], never assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasimoduleAction {
    h: HopfData,
    a: HopfData,
    action: LinearMap,
}

impl QuasimoduleAction {
    pub fn new(h: HopfData, a: HopfData, action: LinearMap) -> Result<QuasimoduleAction> {
        if h.field() != a.field() {
            return Err(Error::MixedFields(h.field(), a.field()));
        }
        if action.field() != h.field() {
            return Err(Error::MixedFields(action.field(), h.field()));
        }
        let (dh, da) = (h.dim(), a.dim());
        if action.domain_shape() != [dh, da] || action.codomain_shape() != [da] {
            return Err(Error::ShapeMismatch {
                context: "action".into(),
                left: vec![dh, da, da],
                right: [action.domain_shape(), action.codomain_shape()].concat(),
            });
        }
        Ok(QuasimoduleAction { h, a, action })
    }

    pub fn h(&self) -> &HopfData {
        &self.h
    }

    pub fn a(&self) -> &HopfData {
        &self.a
    }

    pub fn action(&self) -> &LinearMap {
        &self.action
    }

    pub fn field(&self) -> Field {
        self.h.field()
    }

    pub fn with_action(&self, action: LinearMap) -> Result<QuasimoduleAction> {
        QuasimoduleAction::new(self.h.clone(), self.a.clone(), action)
    }
}

/// `h·a = ε(h) a`.
pub fn trivial_action(h: &HopfData, a: &HopfData) -> Result<QuasimoduleAction> {
    let action = h.counit().tensor(&LinearMap::identity(a.field(), a.dim())?)?.reshape(&[h.dim(), a.dim()], &[a.dim()])?;
    QuasimoduleAction::new(h.clone(), a.clone(), action)
}

/// Basis element `h` sends basis element `a` to basis element
/// `images[h][a]`.
pub fn basis_action(h: &HopfData, a: &HopfData, images: &[Vec<usize>]) -> Result<QuasimoduleAction> {
    let (dh, da) = (h.dim(), a.dim());
    if images.len() != dh || images.iter().any(|row| row.len() != da) {
        return Err(Error::ShapeMismatch {
            context: "action images".into(),
            left: vec![dh, da],
            right: vec![images.len(), images.first().map_or(0, Vec::len)],
        });
    }
    let flat: Vec<usize> = images.iter().flatten().copied().collect();
    let action = LinearMap::from_basis_images(h.field(), &[dh, da], &[da], &flat)?;
    QuasimoduleAction::new(h.clone(), a.clone(), action)
}

/// Unit and cancellation laws, compatibility with the structure of `A`,
/// and the two conditions under which the induced twist is a smash twist.
pub fn check_quasimodule(q: &QuasimoduleAction) -> Result<AxiomReport> {
    let (h, a) = (&q.h, &q.a);
    let (dh, da) = (h.dim(), a.dim());
    let f = q.field();
    let rho = || map(&q.action);
    let (ih, ia) = (|| id(dh), || id(da));
    let eps_a_h = || tensor([map(h.counit()), ia()]);
    let eq = |name: &str, l: MapExpr<'_>, r: MapExpr<'_>| equation(name, &l, &r, f);

    let module = vec![
        eq("unit_acts_trivially", chain([rho(), tensor([map(h.unit()), ia()])]), ia())?,
        // h₁·(S(h₂)·m) = ε(h) m
        eq(
            "cancel_first",
            chain([
                rho(),
                tensor([ih(), rho()]),
                tensor([ih(), map(h.antipode()), ia()]),
                tensor([map(h.comul()), ia()]),
            ]),
            eps_a_h(),
        )?,
        // S(h₁)·(h₂·m) = ε(h) m
        eq(
            "cancel_second",
            chain([
                rho(),
                tensor([ih(), rho()]),
                tensor([map(h.antipode()), ih(), ia()]),
                tensor([map(h.comul()), ia()]),
            ]),
            eps_a_h(),
        )?,
    ];
    let compat = vec![
        // (h₁·a)(h₂·b) = h·(ab)
        eq(
            "action_multiplicative",
            chain([
                map(a.mul()),
                tensor([rho(), rho()]),
                tensor([ih(), flip(dh, da), ia()]),
                tensor([map(h.comul()), ia(), ia()]),
            ]),
            chain([rho(), tensor([ih(), map(a.mul())])]),
        )?,
        eq(
            "action_unital",
            chain([rho(), tensor([ih(), map(a.unit())])]),
            chain([map(a.unit()), map(h.counit())]),
        )?,
        eq(
            "action_comultiplicative",
            chain([map(a.comul()), rho()]),
            chain([
                tensor([rho(), rho()]),
                tensor([ih(), flip(dh, da), ia()]),
                tensor([map(h.comul()), map(a.comul())]),
            ]),
        )?,
        eq(
            "action_counital",
            chain([map(a.counit()), rho()]),
            tensor([map(h.counit()), map(a.counit())]),
        )?,
    ];
    let smash = vec![
        // h₁ ⊗ h₂·a = h₂ ⊗ h₁·a
        eq(
            "coproduct_symmetric_on_action",
            chain([tensor([ih(), rho()]), tensor([map(h.comul()), ia()])]),
            chain([tensor([ih(), rho()]), tensor([flip(dh, dh), ia()]), tensor([map(h.comul()), ia()])]),
        )?,
        // g·(S(h)·a) = (g S(h))·a
        eq(
            "antipode_associative",
            chain([rho(), tensor([ih(), rho()]), tensor([ih(), map(h.antipode()), ia()])]),
            chain([rho(), tensor([map(h.mul()), ia()]), tensor([ih(), map(h.antipode()), ia()])]),
        )?,
    ];
    Ok(AxiomReport::suite(
        "quasimodule Hopf quasigroup",
        vec![
            Stage::new("quasimodule", module),
            Stage::new("compatibility", compat),
            Stage::new("smash_conditions", smash),
        ],
    ))
}

/// `R(h ⊗ a) = Σ h₁·a ⊗ h₂`. Fails unless the action passes every check in
/// [`check_quasimodule`].
pub fn twist_from_action(q: &QuasimoduleAction) -> Result<TwistMap> {
    let report = check_quasimodule(q)?;
    if !report.passed() {
        return Err(Error::QuasimoduleAxiomFailure(Box::new(report)));
    }
    twist_from_action_unchecked(q)
}

/// The same formula without checking the action first.
pub fn twist_from_action_unchecked(q: &QuasimoduleAction) -> Result<TwistMap> {
    let (dh, da) = (q.h.dim(), q.a.dim());
    let f = q.field();
    let r = chain([
        tensor([map(&q.action), id(dh)]),
        tensor([id(dh), flip(dh, da)]),
        tensor([map(q.h.comul()), id(da)]),
    ])
    .materialize(f)?
    .reshape(&[dh, da], &[da, dh])?;
    TwistMap::new(q.h.clone(), q.a.clone(), r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmashCandidate {
    pub r: TwistMap,
    /// Structure on `A ⊗ H`, `A` factor major.
    pub product: HopfQuasigroupData,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosmashCandidate {
    pub w: TwistMap,
    /// Structure on `H ⊗ A`, `H` factor major.
    pub product: HopfCoquasigroupData,
}

fn check_factors(what: &str, expected: &HopfData, found: &HopfData) -> Result<()> {
    if expected.field() != found.field() {
        return Err(Error::MixedFields(expected.field(), found.field()));
    }
    if expected != found {
        return Err(Error::FactorMismatch(format!(
            "{what} factor of the twist (dim {}) differs from the given structure (dim {})",
            found.dim(),
            expected.dim()
        )));
    }
    Ok(())
}

/// Product `(μ_A ⊗ μ_H)(id_A ⊗ R ⊗ id_H)`, tensor unit, counit and
/// coproduct, antipode `R (S_H ⊗ S_A) flip`. No axioms are checked.
pub fn build_r_smash(a: &HopfData, h: &HopfData, r: &TwistMap) -> Result<SmashCandidate> {
    check_factors("A", a, r.a())?;
    check_factors("H", h, r.h())?;
    let (da, dh) = (a.dim(), h.dim());
    let d = da * dh;
    let f = a.field();
    let mul = chain([
        tensor([map(a.mul()), map(h.mul())]),
        tensor([id(da), map(r.map()), id(dh)]),
    ])
    .materialize(f)?
    .reshape(&[d, d], &[d])?;
    let comul = chain([
        tensor([id(da), flip(da, dh), id(dh)]),
        tensor([map(a.comul()), map(h.comul())]),
    ])
    .materialize(f)?
    .reshape(&[d], &[d, d])?;
    let unit = a.unit().tensor(h.unit())?.reshape(&[1], &[d])?;
    let counit = a.counit().tensor(h.counit())?.reshape(&[d], &[1])?;
    let antipode = chain([map(r.map()), tensor([map(h.antipode()), map(a.antipode())]), flip(da, dh)])
        .materialize(f)?
        .reshape(&[d], &[d])?;
    let labels = pair_labels(a, h);
    let product = HopfData::new(f, d, mul, unit, comul, counit, antipode)?.with_labels(labels)?;
    Ok(SmashCandidate {
        r: r.clone(),
        product: HopfQuasigroupData::new(product),
    })
}

/// Tensor unit, product and counit on `H ⊗ A`, coproduct
/// `(id_H ⊗ W ⊗ id_A)(Δ_H ⊗ Δ_A)`, antipode `flip (S_A ⊗ S_H) W`.
pub fn build_w_cosmash(h: &HopfData, a: &HopfData, w: &TwistMap) -> Result<CosmashCandidate> {
    check_factors("H", h, w.h())?;
    check_factors("A", a, w.a())?;
    let (dh, da) = (h.dim(), a.dim());
    let d = dh * da;
    let f = h.field();
    let mul = chain([
        tensor([map(h.mul()), map(a.mul())]),
        tensor([id(dh), flip(da, dh), id(da)]),
    ])
    .materialize(f)?
    .reshape(&[d, d], &[d])?;
    let comul = chain([
        tensor([id(dh), map(w.map()), id(da)]),
        tensor([map(h.comul()), map(a.comul())]),
    ])
    .materialize(f)?
    .reshape(&[d], &[d, d])?;
    let unit = h.unit().tensor(a.unit())?.reshape(&[1], &[d])?;
    let counit = h.counit().tensor(a.counit())?.reshape(&[d], &[1])?;
    let antipode = chain([flip(da, dh), tensor([map(a.antipode()), map(h.antipode())]), map(w.map())])
        .materialize(f)?
        .reshape(&[d], &[d])?;
    let labels = pair_labels(h, a);
    let product = HopfData::new(f, d, mul, unit, comul, counit, antipode)?.with_labels(labels)?;
    Ok(CosmashCandidate {
        w: w.clone(),
        product: HopfCoquasigroupData::new(product),
    })
}

fn pair_labels(x: &HopfData, y: &HopfData) -> Option<Vec<String>> {
    let (lx, ly) = (x.basis_labels()?, y.basis_labels()?);
    Some(lx.iter().flat_map(|p| ly.iter().map(move |q| format!("{p}⊗{q}"))).collect())
}

const HYPOTHESES: [Condition; 2] = [Condition::LeftMultiplicative, Condition::LeftConormal];
const CONDITIONS: [Condition; 4] = [
    Condition::CoalgebraMap,
    Condition::Normal,
    Condition::RightSHMultiplicative,
    Condition::RightSHConormal,
];
const DUAL_HYPOTHESES: [Condition; 2] = [Condition::LeftComultiplicative, Condition::LeftNormal];
const DUAL_CONDITIONS: [Condition; 4] = [
    Condition::AlgebraMap,
    Condition::Conormal,
    Condition::RightSHComultiplicative,
    Condition::RightSHNormal,
];

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    /// Conditions on `R` imply the candidate passes.
    Forward,
    /// The candidate passing implies the conditions on `R`.
    Backward,
}

fn theorem(
    subject: &str,
    direction: Direction,
    r: &TwistMap,
    hypotheses: &[Condition],
    conditions: &[Condition],
    candidate: AxiomReport,
) -> Result<AxiomReport> {
    let hyp = Stage::new("hypotheses", check_twist_conditions(r, hypotheses)?.checks);
    let cond = Stage::new("conditions", check_twist_conditions(r, conditions)?.checks);
    let (hyp_ok, cond_ok, cand_ok) = (hyp.passed(), cond.passed(), candidate.passed());
    let verdict = match (direction, hyp_ok, cond_ok, cand_ok) {
        (_, false, _, _) => Verdict::PremisesNotMet,
        (_, true, true, true) => Verdict::Pass,
        (Direction::Forward, true, true, false) | (Direction::Backward, true, false, true) => Verdict::Fatal,
        _ => Verdict::Fail,
    };
    let mut stages = vec![hyp, cond];
    stages.extend(candidate.into_stages("candidate."));
    Ok(AxiomReport {
        subject: subject.into(),
        stages,
        verdict,
    })
}

/// Hypotheses, then the condition set on `R`, then the full Hopf
/// quasigroup suite on the smash candidate (always run). `Fatal` when
/// hypotheses and conditions hold but the candidate fails.
pub fn theorem_forward(a: &HopfData, h: &HopfData, r: &TwistMap) -> Result<AxiomReport> {
    let c = build_r_smash(a, h, r)?;
    theorem(
        "R-smash product, conditions imply Hopf quasigroup",
        Direction::Forward,
        r,
        &HYPOTHESES,
        &CONDITIONS,
        check_hopf_quasigroup(&c.product)?,
    )
}

/// `Fatal` when the hypotheses hold and the candidate is a Hopf
/// quasigroup but some condition on `R` fails.
pub fn theorem_backward(a: &HopfData, h: &HopfData, r: &TwistMap) -> Result<AxiomReport> {
    let c = build_r_smash(a, h, r)?;
    theorem(
        "R-smash product, Hopf quasigroup implies conditions",
        Direction::Backward,
        r,
        &HYPOTHESES,
        &CONDITIONS,
        check_hopf_quasigroup(&c.product)?,
    )
}

pub fn theorem_forward_dual(h: &HopfData, a: &HopfData, w: &TwistMap) -> Result<AxiomReport> {
    let c = build_w_cosmash(h, a, w)?;
    theorem(
        "W-smash coproduct, conditions imply Hopf coquasigroup",
        Direction::Forward,
        w,
        &DUAL_HYPOTHESES,
        &DUAL_CONDITIONS,
        check_hopf_coquasigroup(&c.product)?,
    )
}

pub fn theorem_backward_dual(h: &HopfData, a: &HopfData, w: &TwistMap) -> Result<AxiomReport> {
    let c = build_w_cosmash(h, a, w)?;
    theorem(
        "W-smash coproduct, Hopf coquasigroup implies conditions",
        Direction::Backward,
        w,
        &DUAL_HYPOTHESES,
        &DUAL_CONDITIONS,
        check_hopf_coquasigroup(&c.product)?,
    )
}

/// Informational summary check used by reports that list a candidate's
/// outcome alongside other checks.
pub fn candidate_check(name: &str, report: &AxiomReport) -> Check {
    match report.first_failure() {
        None => Check::pass(name),
        Some(bad) => Check::fail(name, format!("{} fails", bad.name)),
    }
}
