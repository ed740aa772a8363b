//! Structure constants of unital algebras with counital coalgebra structure
//! and an antipode, and the exhaustive checkers for the Hopf quasigroup and
//! Hopf coquasigroup axioms.
//!
//! Both kinds share one layout, [`HopfData`]. Which axioms apply is decided by
//! the checker, never by the data: a Hopf quasigroup needs a coassociative
//! coproduct but may have a nonassociative product, a Hopf coquasigroup the
//! other way round.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::expr::{chain, id, map, owned, tensor, MapExpr};
use crate::linear::{flip_map, LinearMap, Vector};
use crate::report::{equation, AxiomReport, Check, Stage};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfData {
    field: Field,
    dim: usize,
    mul: LinearMap,
    unit: LinearMap,
    comul: LinearMap,
    counit: LinearMap,
    antipode: LinearMap,
    basis_labels: Option<Vec<String>>,
}

/// Selects one of the five structure maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Mul,
    Unit,
    Comul,
    Counit,
    Antipode,
}

impl Part {
    pub const ALL: [Part; 5] = [Part::Mul, Part::Unit, Part::Comul, Part::Counit, Part::Antipode];

    pub fn name(self) -> &'static str {
        match self {
            Part::Mul => "mul",
            Part::Unit => "unit",
            Part::Comul => "comul",
            Part::Counit => "counit",
            Part::Antipode => "antipode",
        }
    }

    fn shapes(self, d: usize) -> (Vec<usize>, Vec<usize>) {
        match self {
            Part::Mul => (vec![d, d], vec![d]),
            Part::Unit => (vec![1], vec![d]),
            Part::Comul => (vec![d], vec![d, d]),
            Part::Counit => (vec![d], vec![1]),
            Part::Antipode => (vec![d], vec![d]),
        }
    }
}

impl HopfData {
    /// Checks shapes and fields only; algebraic axioms are left to the checkers.
    pub fn new(
        field: Field,
        dim: usize,
        mul: LinearMap,
        unit: LinearMap,
        comul: LinearMap,
        counit: LinearMap,
        antipode: LinearMap,
    ) -> Result<HopfData> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let data = HopfData {
            field,
            dim,
            mul,
            unit,
            comul,
            counit,
            antipode,
            basis_labels: None,
        };
        for part in Part::ALL {
            data.check_part(part, data.part(part))?;
        }
        Ok(data)
    }

    fn check_part(&self, part: Part, m: &LinearMap) -> Result<()> {
        if m.field() != self.field {
            return Err(Error::MixedFields(m.field(), self.field));
        }
        let (dom, cod) = part.shapes(self.dim);
        if m.domain_shape() != dom.as_slice() || m.codomain_shape() != cod.as_slice() {
            return Err(Error::ShapeMismatch {
                context: format!("structure map {}", part.name()),
                left: [dom, cod].concat(),
                right: [m.domain_shape(), m.codomain_shape()].concat(),
            });
        }
        Ok(())
    }

    pub fn with_labels(mut self, labels: Option<Vec<String>>) -> Result<HopfData> {
        if let Some(l) = &labels {
            if l.len() != self.dim {
                return Err(Error::ShapeMismatch {
                    context: "basis labels".into(),
                    left: vec![self.dim],
                    right: vec![l.len()],
                });
            }
        }
        self.basis_labels = labels;
        Ok(self)
    }

    /// A copy with one structure map replaced.
    pub fn with_part(&self, part: Part, m: LinearMap) -> Result<HopfData> {
        self.check_part(part, &m)?;
        let mut out = self.clone();
        match part {
            Part::Mul => out.mul = m,
            Part::Unit => out.unit = m,
            Part::Comul => out.comul = m,
            Part::Counit => out.counit = m,
            Part::Antipode => out.antipode = m,
        }
        Ok(out)
    }

    pub fn part(&self, part: Part) -> &LinearMap {
        match part {
            Part::Mul => &self.mul,
            Part::Unit => &self.unit,
            Part::Comul => &self.comul,
            Part::Counit => &self.counit,
            Part::Antipode => &self.antipode,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mul(&self) -> &LinearMap {
        &self.mul
    }

    pub fn unit(&self) -> &LinearMap {
        &self.unit
    }

    pub fn comul(&self) -> &LinearMap {
        &self.comul
    }

    pub fn counit(&self) -> &LinearMap {
        &self.counit
    }

    pub fn antipode(&self) -> &LinearMap {
        &self.antipode
    }

    pub fn basis_labels(&self) -> Option<&[String]> {
        self.basis_labels.as_deref()
    }

    pub fn basis(&self, i: usize) -> Result<Vector> {
        Vector::basis(self.field, &[self.dim], i)
    }

    pub fn one(&self) -> Vector {
        Vector::from_column(self.field, vec![self.dim], self.unit.column(0).to_vec())
    }

    pub fn multiply(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.mul.apply(&x.tensor(y)?)
    }

    /// Transposes every structure map: products become coproducts, units
    /// become counits. Basis order and labels are kept, so applying it
    /// twice gives back the input exactly.
    pub fn transposed(&self) -> HopfData {
        HopfData {
            field: self.field,
            dim: self.dim,
            mul: self.comul.transpose(),
            unit: self.counit.transpose(),
            comul: self.mul.transpose(),
            counit: self.unit.transpose(),
            antipode: self.antipode.transpose(),
            basis_labels: self.basis_labels.clone(),
        }
    }

    /// Opposite product and co-opposite coproduct, `μ ∘ flip` and
    /// `flip ∘ Δ`. Unit, counit and antipode are unchanged.
    pub fn op_cop(&self) -> HopfData {
        let d = self.dim;
        let f = self.field;
        let sw = flip_map(f, d, d).expect("nonzero dimension");
        HopfData {
            mul: self.mul.compose(&sw).expect("matching shapes"),
            comul: sw.compose(&self.comul).expect("matching shapes"),
            ..self.clone()
        }
    }

    /// The same structure in a permuted basis: old basis element `i`
    /// becomes new basis element `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<HopfData> {
        let d = self.dim;
        let f = self.field;
        let p = LinearMap::from_basis_images(f, &[d], &[d], perm)?;
        let mut inverse = vec![usize::MAX; d];
        for (i, &j) in perm.iter().enumerate() {
            inverse[j] = i;
        }
        let q = LinearMap::from_basis_images(f, &[d], &[d], &inverse)?;
        let pp = p.tensor(&p)?;
        let qq = q.tensor(&q)?;
        let labels = self.basis_labels.as_ref().map(|l| inverse.iter().map(|&i| l[i].clone()).collect());
        HopfData::new(
            f,
            d,
            p.compose(&self.mul)?.compose(&qq)?,
            p.compose(&self.unit)?,
            pp.compose(&self.comul)?.compose(&q)?,
            self.counit.compose(&q)?,
            p.compose(&self.antipode)?.compose(&q)?,
        )?
        .with_labels(labels)
    }

    /// The tensor product structure on `A ⊗ B` (left factor major), with
    /// componentwise product, coproduct, unit, counit and antipode.
    pub fn tensor_product(a: &HopfData, b: &HopfData) -> Result<HopfData> {
        if a.field != b.field {
            return Err(Error::MixedFields(a.field, b.field));
        }
        let (da, db) = (a.dim, b.dim);
        let d = da * db;
        let f = a.field;
        let mul = chain([
            tensor([map(&a.mul), map(&b.mul)]),
            tensor([id(da), MapExpr::Flip(db, da), id(db)]),
        ])
        .materialize(f)?
        .reshape(&[d, d], &[d])?;
        let comul = chain([
            tensor([id(da), MapExpr::Flip(da, db), id(db)]),
            tensor([map(&a.comul), map(&b.comul)]),
        ])
        .materialize(f)?
        .reshape(&[d], &[d, d])?;
        let unit = a.unit.tensor(&b.unit)?.reshape(&[1], &[d])?;
        let counit = a.counit.tensor(&b.counit)?.reshape(&[d], &[1])?;
        let antipode = a.antipode.tensor(&b.antipode)?.reshape(&[d], &[d])?;
        HopfData::new(f, d, mul, unit, comul, counit, antipode)
    }

    fn mu(&self) -> MapExpr<'_> {
        map(&self.mul)
    }

    fn delta(&self) -> MapExpr<'_> {
        map(&self.comul)
    }

    fn eta(&self) -> MapExpr<'_> {
        map(&self.unit)
    }

    fn eps(&self) -> MapExpr<'_> {
        map(&self.counit)
    }

    fn s(&self) -> MapExpr<'_> {
        map(&self.antipode)
    }

    fn id(&self) -> MapExpr<'static> {
        id(self.dim)
    }
}

macro_rules! kind_wrapper {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Debug, PartialEq, Eq)]
        pub struct $name(HopfData);

        impl $name {
            pub fn new(data: HopfData) -> $name {
                $name(data)
            }

            pub fn data(&self) -> &HopfData {
                &self.0
            }

            pub fn into_inner(self) -> HopfData {
                self.0
            }
        }

        impl Deref for $name {
            type Target = HopfData;

            fn deref(&self) -> &HopfData {
                &self.0
            }
        }
    };
}

kind_wrapper!(
    /// Data intended as a Hopf quasigroup: coassociative, possibly
    /// nonassociative.
    HopfQuasigroupData
);
kind_wrapper!(
    /// Data intended as a Hopf coquasigroup: associative, possibly
    /// non-coassociative.
    HopfCoquasigroupData
);

impl HopfQuasigroupData {
    pub fn dualize(&self) -> HopfCoquasigroupData {
        HopfCoquasigroupData(self.0.transposed())
    }
}

impl HopfCoquasigroupData {
    pub fn dualize(&self) -> HopfQuasigroupData {
        HopfQuasigroupData(self.0.transposed())
    }
}

pub fn dualize(x: &HopfQuasigroupData) -> HopfCoquasigroupData {
    x.dualize()
}

fn associativity(x: &HopfData) -> Result<Check> {
    let d = x.dim;
    equation(
        "associativity",
        &chain([x.mu(), tensor([x.mu(), id(d)])]),
        &chain([x.mu(), tensor([id(d), x.mu()])]),
        x.field,
    )
}

fn coassociativity(x: &HopfData) -> Result<Check> {
    let d = x.dim;
    equation(
        "coassociativity",
        &chain([tensor([x.delta(), id(d)]), x.delta()]),
        &chain([tensor([id(d), x.delta()]), x.delta()]),
        x.field,
    )
}

fn algebra_checks(x: &HopfData) -> Result<Vec<Check>> {
    let d = x.dim;
    Ok(vec![
        equation("left_unit", &chain([x.mu(), tensor([x.eta(), id(d)])]), &x.id(), x.field)?,
        equation("right_unit", &chain([x.mu(), tensor([id(d), x.eta()])]), &x.id(), x.field)?,
    ])
}

fn coalgebra_checks(x: &HopfData) -> Result<Vec<Check>> {
    let d = x.dim;
    Ok(vec![
        equation("left_counit", &chain([tensor([x.eps(), id(d)]), x.delta()]), &x.id(), x.field)?,
        equation("right_counit", &chain([tensor([id(d), x.eps()]), x.delta()]), &x.id(), x.field)?,
    ])
}

/// Unit laws, plus associativity as an informational flag.
pub fn check_unital_algebra(x: &HopfData) -> Result<AxiomReport> {
    let mut checks = algebra_checks(x)?;
    checks.push(associativity(x)?.informational());
    Ok(AxiomReport::suite("unital algebra", vec![Stage::new("algebra", checks)]))
}

/// Counit laws, plus coassociativity as an informational flag.
pub fn check_counital_coalgebra(x: &HopfData) -> Result<AxiomReport> {
    let mut checks = coalgebra_checks(x)?;
    checks.push(coassociativity(x)?.informational());
    Ok(AxiomReport::suite("counital coalgebra", vec![Stage::new("coalgebra", checks)]))
}

/// Coproduct and counit are unital algebra maps.
pub fn check_bialgebra_compat(x: &HopfData) -> Result<AxiomReport> {
    Ok(AxiomReport::suite(
        "bialgebra compatibility",
        vec![Stage::new("bialgebra", bialgebra_checks(x)?)],
    ))
}

fn bialgebra_checks(x: &HopfData) -> Result<Vec<Check>> {
    let d = x.dim;
    let f = x.field;
    let one_one = owned(LinearMap::identity(f, 1)?);
    Ok(vec![
        equation(
            "comul_multiplicative",
            &chain([x.delta(), x.mu()]),
            &chain([
                tensor([x.mu(), x.mu()]),
                tensor([id(d), MapExpr::Flip(d, d), id(d)]),
                tensor([x.delta(), x.delta()]),
            ]),
            f,
        )?,
        equation("comul_unital", &chain([x.delta(), x.eta()]), &tensor([x.eta(), x.eta()]), f)?,
        equation(
            "counit_multiplicative",
            &chain([x.eps(), x.mu()]),
            &tensor([x.eps(), x.eps()]),
            f,
        )?,
        equation("counit_unital", &chain([x.eps(), x.eta()]), &one_one, f)?,
    ])
}

fn quasigroup_checks(x: &HopfData) -> Result<Vec<Check>> {
    let d = x.dim;
    let f = x.field;
    // Domains: [h, g] for the first pair, [g, h] for the second.
    let eps_g = tensor([x.eps(), id(d)]);
    let g_eps = tensor([id(d), x.eps()]);
    Ok(vec![
        // S(h1)(h2 g) = ε(h) g
        equation(
            "quasi1_left",
            &chain([x.mu(), tensor([x.s(), x.mu()]), tensor([x.delta(), id(d)])]),
            &eps_g,
            f,
        )?,
        // h1(S(h2) g) = ε(h) g
        equation(
            "quasi1_right",
            &chain([
                x.mu(),
                tensor([id(d), x.mu()]),
                tensor([id(d), x.s(), id(d)]),
                tensor([x.delta(), id(d)]),
            ]),
            &eps_g,
            f,
        )?,
        // (g h1) S(h2) = g ε(h)
        equation(
            "quasi2_left",
            &chain([x.mu(), tensor([x.mu(), x.s()]), tensor([id(d), x.delta()])]),
            &g_eps,
            f,
        )?,
        // (g S(h1)) h2 = g ε(h)
        equation(
            "quasi2_right",
            &chain([
                x.mu(),
                tensor([x.mu(), id(d)]),
                tensor([id(d), x.s(), id(d)]),
                tensor([id(d), x.delta()]),
            ]),
            &g_eps,
            f,
        )?,
    ])
}

fn coquasigroup_checks(x: &HopfData) -> Result<Vec<Check>> {
    let d = x.dim;
    let f = x.field;
    let one_h = tensor([x.eta(), id(d)]);
    let h_one = tensor([id(d), x.eta()]);
    Ok(vec![
        // S(h1) h21 ⊗ h22 = 1 ⊗ h
        equation(
            "coquasi1_left",
            &chain([
                tensor([x.mu(), id(d)]),
                tensor([x.s(), id(d), id(d)]),
                tensor([id(d), x.delta()]),
                x.delta(),
            ]),
            &one_h,
            f,
        )?,
        // h1 S(h21) ⊗ h22 = 1 ⊗ h
        equation(
            "coquasi1_right",
            &chain([
                tensor([x.mu(), id(d)]),
                tensor([id(d), x.s(), id(d)]),
                tensor([id(d), x.delta()]),
                x.delta(),
            ]),
            &one_h,
            f,
        )?,
        // h11 ⊗ h12 S(h2) = h ⊗ 1
        equation(
            "coquasi2_left",
            &chain([
                tensor([id(d), x.mu()]),
                tensor([id(d), id(d), x.s()]),
                tensor([x.delta(), id(d)]),
                x.delta(),
            ]),
            &h_one,
            f,
        )?,
        // h11 ⊗ S(h12) h2 = h ⊗ 1
        equation(
            "coquasi2_right",
            &chain([
                tensor([id(d), x.mu()]),
                tensor([id(d), x.s(), id(d)]),
                tensor([x.delta(), id(d)]),
                x.delta(),
            ]),
            &h_one,
            f,
        )?,
    ])
}

/// Full Hopf quasigroup suite: unit and counit laws, coassociativity,
/// bialgebra compatibility and the four antipode identities over all basis
/// pairs. Associativity is reported but not required.
pub fn check_hopf_quasigroup(h: &HopfQuasigroupData) -> Result<AxiomReport> {
    let x = h.data();
    let mut algebra = algebra_checks(x)?;
    algebra.push(associativity(x)?.informational());
    let mut coalgebra = coalgebra_checks(x)?;
    coalgebra.push(coassociativity(x)?);
    Ok(AxiomReport::suite(
        "Hopf quasigroup",
        vec![
            Stage::new("algebra", algebra),
            Stage::new("coalgebra", coalgebra),
            Stage::new("bialgebra", bialgebra_checks(x)?),
            Stage::new("quasigroup", quasigroup_checks(x)?),
        ],
    ))
}

/// Full Hopf coquasigroup suite; associativity is required and
/// coassociativity informational.
pub fn check_hopf_coquasigroup(h: &HopfCoquasigroupData) -> Result<AxiomReport> {
    let x = h.data();
    let mut algebra = algebra_checks(x)?;
    algebra.push(associativity(x)?);
    let mut coalgebra = coalgebra_checks(x)?;
    coalgebra.push(coassociativity(x)?.informational());
    Ok(AxiomReport::suite(
        "Hopf coquasigroup",
        vec![
            Stage::new("algebra", algebra),
            Stage::new("coalgebra", coalgebra),
            Stage::new("bialgebra", bialgebra_checks(x)?),
            Stage::new("coquasigroup", coquasigroup_checks(x)?),
        ],
    ))
}

/// Antimultiplicativity, anticomultiplicativity, unit and counit
/// preservation of the antipode. The convolution-inverse property
/// `μ(S ⊗ id)Δ = 1ε = μ(id ⊗ S)Δ` is reported as informational.
pub fn antipode_diagnostics(x: &HopfData) -> Result<AxiomReport> {
    let d = x.dim;
    let f = x.field;
    let unit_counit = chain([x.eta(), x.eps()]);
    let checks = vec![
        // S(hg) = S(g) S(h)
        equation(
            "antimultiplicative",
            &chain([x.s(), x.mu()]),
            &chain([x.mu(), MapExpr::Flip(d, d), tensor([x.s(), x.s()])]),
            f,
        )?,
        // (S ⊗ S) Δ = flip Δ S
        equation(
            "anticomultiplicative",
            &chain([tensor([x.s(), x.s()]), x.delta()]),
            &chain([MapExpr::Flip(d, d), x.delta(), x.s()]),
            f,
        )?,
        equation("antipode_unital", &chain([x.s(), x.eta()]), &x.eta(), f)?,
        equation("antipode_counital", &chain([x.eps(), x.s()]), &x.eps(), f)?,
        equation(
            "antipode_left_convolution",
            &chain([x.mu(), tensor([x.s(), id(d)]), x.delta()]),
            &unit_counit,
            f,
        )?
        .informational(),
        equation(
            "antipode_right_convolution",
            &chain([x.mu(), tensor([id(d), x.s()]), x.delta()]),
            &unit_counit,
            f,
        )?
        .informational(),
    ];
    Ok(AxiomReport::suite("antipode diagnostics", vec![Stage::new("antipode", checks)]))
}

/// `h \ g = S(h) g`.
pub fn left_divide(x: &HopfData, h: &Vector, g: &Vector) -> Result<Vector> {
    check_vector(x, h)?;
    check_vector(x, g)?;
    x.multiply(&x.antipode.apply(h)?, g)
}

/// `g / h = g S(h)`.
pub fn right_divide(x: &HopfData, g: &Vector, h: &Vector) -> Result<Vector> {
    check_vector(x, h)?;
    check_vector(x, g)?;
    x.multiply(g, &x.antipode.apply(h)?)
}

fn check_vector(x: &HopfData, v: &Vector) -> Result<()> {
    if v.field() != x.field {
        return Err(Error::MixedFields(v.field(), x.field));
    }
    if v.dim() != x.dim {
        return Err(Error::ShapeMismatch {
            context: "division operand".into(),
            left: vec![x.dim],
            right: v.shape().to_vec(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::loops::{gen_chein_double, gen_group, loop_algebra, GroupKind};

    const Q: Field = Field::Rational;

    fn km12() -> HopfQuasigroupData {
        catalog::km12(Q).unwrap()
    }

    #[test]
    fn group_algebra_c2_is_associative() {
        let k = catalog::kc(2, Q).unwrap();
        let r = check_unital_algebra(&k).unwrap();
        assert!(r.passed());
        assert!(r.check("associativity").unwrap().passed);
    }

    #[test]
    fn m12_associativity_witness() {
        // Frozen from a brute-force scan of all 12³ triples of M(S3,2):
        // the first nonassociative triple is (1, 3, 6).
        let r = check_unital_algebra(&km12()).unwrap();
        assert!(r.passed(), "unit laws must pass");
        let a = r.check("associativity").unwrap();
        assert!(!a.passed && a.informational);
        assert_eq!(a.witness.as_ref().unwrap().tuple, vec![1, 3, 6]);
    }

    #[test]
    fn zeroed_unit_fails_with_witness_zero() {
        let k = catalog::kc(3, Q).unwrap();
        let broken = k.with_part(Part::Unit, LinearMap::zero(Q, &[1], &[3]).unwrap()).unwrap();
        let r = check_unital_algebra(&broken).unwrap();
        assert!(!r.passed());
        let c = r.check("left_unit").unwrap();
        assert_eq!(c.witness.as_ref().unwrap().tuple, vec![0]);
    }

    #[test]
    fn loop_algebra_coalgebra_passes() {
        for k in [catalog::kc(4, Q).unwrap(), km12()] {
            let r = check_counital_coalgebra(&k).unwrap();
            assert!(r.passed());
            assert!(r.check("coassociativity").unwrap().passed);
        }
    }

    #[test]
    fn dual_m12_coassociativity_witness() {
        // Brute force over the loop: the smallest w whose preimages under
        // (xy)z and x(yz) differ is w = 1.
        let d = km12().dualize();
        let r = check_counital_coalgebra(&d).unwrap();
        assert!(r.passed());
        let c = r.check("coassociativity").unwrap();
        assert!(!c.passed);
        assert_eq!(c.witness.as_ref().unwrap().tuple, vec![1]);
    }

    #[test]
    fn perturbed_coproduct_breaks_counit() {
        let k = catalog::kc(2, Q).unwrap();
        // Δ(e) gains +1 on e⊗g.
        let comul = k.comul().with_entry(1, 0, Q.one()).unwrap();
        let broken = k.with_part(Part::Comul, comul).unwrap();
        let r = check_counital_coalgebra(&broken).unwrap();
        assert!(!r.passed());
        assert_eq!(r.first_failure().unwrap().witness.as_ref().unwrap().tuple, vec![0]);
    }

    #[test]
    fn bialgebra_compat_cases() {
        assert!(check_bialgebra_compat(&km12()).unwrap().passed());
        // Δ(g) = g ⊗ g + e ⊗ e squares to 2(e ⊗ e + g ⊗ g), not Δ(e).
        let k = catalog::kc(2, Q).unwrap();
        let comul = k.comul().with_entry(0, 1, Q.one()).unwrap();
        let broken = k.with_part(Part::Comul, comul).unwrap();
        let r = check_bialgebra_compat(&broken).unwrap();
        assert!(!r.check("comul_multiplicative").unwrap().passed);
    }

    #[test]
    fn tensor_structure_is_bialgebra() {
        // Oracle: each factor passes on its own, so the componentwise
        // tensor structure must too.
        let a = catalog::kc(3, Q).unwrap();
        let b = catalog::ks3(Q).unwrap();
        assert!(check_bialgebra_compat(&a).unwrap().passed());
        assert!(check_bialgebra_compat(&b).unwrap().passed());
        let t = HopfData::tensor_product(&a, &b).unwrap();
        assert!(check_bialgebra_compat(&t).unwrap().passed());
        assert!(check_hopf_quasigroup(&HopfQuasigroupData::new(t)).unwrap().passed());
    }

    #[test]
    fn hopf_quasigroup_examples() {
        assert!(check_hopf_quasigroup(&catalog::kc(6, Q).unwrap()).unwrap().passed());
        let r = check_hopf_quasigroup(&km12()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(!r.check("associativity").unwrap().passed);
    }

    #[test]
    fn identity_antipode_breaks_quasi1() {
        // First (h, g) in M(S3,2) with h(hg) != g is (1, 0).
        let k = km12();
        let broken =
            HopfQuasigroupData::new(k.with_part(Part::Antipode, LinearMap::identity(Q, 12).unwrap()).unwrap());
        let r = check_hopf_quasigroup(&broken).unwrap();
        assert!(!r.passed());
        let c = r.check("quasi1_left").unwrap();
        assert!(!c.passed);
        assert_eq!(c.witness.as_ref().unwrap().tuple, vec![1, 0]);
    }

    #[test]
    fn coquasigroup_examples() {
        let dc6 = catalog::kc(6, Q).unwrap().dualize();
        assert!(check_hopf_coquasigroup(&dc6).unwrap().passed());
        let dm = km12().dualize();
        let r = check_hopf_coquasigroup(&dm).unwrap();
        assert!(r.passed());
        assert!(!r.check("coassociativity").unwrap().passed);
        let zeroed =
            HopfCoquasigroupData::new(dm.with_part(Part::Antipode, LinearMap::zero(Q, &[12], &[12]).unwrap()).unwrap());
        let r = check_hopf_coquasigroup(&zeroed).unwrap();
        assert_eq!(r.first_failure().unwrap().name, "coquasi1_left");
    }

    #[test]
    fn antipode_diagnostics_cases() {
        assert!(antipode_diagnostics(&km12()).unwrap().passed());
        let s3 = catalog::ks3(Q).unwrap();
        assert!(antipode_diagnostics(&s3).unwrap().passed());
        let broken = s3.with_part(Part::Antipode, LinearMap::identity(Q, 6).unwrap()).unwrap();
        let r = antipode_diagnostics(&broken).unwrap();
        let c = r.check("antimultiplicative").unwrap();
        assert!(!c.passed);
        // rs != sr: indices 1 and 3.
        assert_eq!(c.witness.as_ref().unwrap().tuple, vec![1, 3]);
    }

    #[test]
    fn divisions() {
        let k = catalog::kc(2, Q).unwrap();
        let (e, g) = (k.basis(0).unwrap(), k.basis(1).unwrap());
        assert_eq!(left_divide(&k, &g, &g).unwrap(), e);
        let k6 = catalog::kc(6, Q).unwrap();
        for h in 0..6 {
            let q = right_divide(&k6, &k6.basis(0).unwrap(), &k6.basis(h).unwrap()).unwrap();
            assert_eq!(q, k6.basis((6 - h) % 6).unwrap());
        }
        let m = km12();
        for x in 0..12 {
            for y in 0..12 {
                let bx = m.basis(x).unwrap();
                let xy = m.multiply(&bx, &m.basis(y).unwrap()).unwrap();
                assert_eq!(left_divide(&m, &bx, &xy).unwrap(), m.basis(y).unwrap());
            }
        }
        assert!(matches!(
            left_divide(&k, &g, &k6.basis(0).unwrap()),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn dualize_is_involution_and_swaps_flags() {
        let dc2 = catalog::kc(2, Q).unwrap().dualize();
        // Function algebra on C2: δ_x δ_y = [x = y] δ_x.
        let m = dc2.mul();
        assert_eq!(m.entries().len(), 2);
        assert_eq!(m.get(0, 0), Q.one());
        assert_eq!(m.get(1, 3), Q.one());
        for k in [catalog::kc(5, Q).unwrap(), km12(), catalog::ks3(Q).unwrap()] {
            assert_eq!(k.dualize().dualize(), k);
            let a = check_unital_algebra(&k).unwrap();
            let c = check_counital_coalgebra(&k.dualize()).unwrap();
            assert_eq!(
                a.check("associativity").unwrap().passed,
                c.check("coassociativity").unwrap().passed
            );
        }
    }

    #[test]
    fn quasigroup_pass_implies_antipode_diagnostics() {
        let g = gen_group(GroupKind::Cyclic(2)).unwrap();
        let m = gen_chein_double(&gen_chein_double(&g).unwrap()).unwrap();
        let k = loop_algebra(&m, Q).unwrap();
        assert!(check_hopf_quasigroup(&k).unwrap().passed());
        assert!(antipode_diagnostics(&k).unwrap().passed());
    }

    #[test]
    fn op_cop_and_relabel() {
        let m = km12();
        let o = m.op_cop();
        assert!(check_hopf_quasigroup(&HopfQuasigroupData::new(o.clone())).unwrap().passed());
        assert_eq!(o.op_cop(), *m.data());
        assert_ne!(o.mul(), m.mul());
        let perm: Vec<usize> = (0..12).map(|i| (i * 5) % 12).collect();
        let r = m.relabeled(&perm).unwrap();
        assert!(check_hopf_quasigroup(&HopfQuasigroupData::new(r.clone())).unwrap().passed());
        for x in 0..12 {
            for y in 0..12 {
                let xy = m.mul().column(x * 12 + y)[0].0;
                assert_eq!(r.mul().column(perm[x] * 12 + perm[y]), &[(perm[xy], Q.one())][..]);
            }
        }
        assert_eq!(r.basis_labels().unwrap()[perm[3]], m.basis_labels().unwrap()[3]);
    }

    #[test]
    fn prime_field_structures() {
        let f = Field::prime(7).unwrap();
        let k = catalog::km12(f).unwrap();
        assert!(check_hopf_quasigroup(&k).unwrap().passed());
        assert!(check_hopf_coquasigroup(&k.dualize()).unwrap().passed());
    }
}
