//! Bundled instances: small loop algebras, actions between them and the
//! twists they induce.

use crate::error::Result;
use crate::loops::{gen_chein_double, gen_group, loop_algebra, GroupKind, LoopTable};
use crate::scalar::Field;
use crate::smash::{basis_action, trivial_action, twist_from_action, QuasimoduleAction};
use crate::structures::{HopfData, HopfQuasigroupData};
use crate::twist::{permutation_twist, twist_from_flip, TwistMap};

/// The cyclic group algebra `kC_n`.
pub fn kc(n: usize, field: Field) -> Result<HopfQuasigroupData> {
    loop_algebra(&gen_group(GroupKind::Cyclic(n))?, field)
}

pub fn ks3(field: Field) -> Result<HopfQuasigroupData> {
    loop_algebra(&gen_group(GroupKind::S3)?, field)
}

/// `M(S3, 2)`, the smallest nonassociative Moufang loop.
pub fn m12_loop() -> Result<LoopTable> {
    gen_chein_double(&gen_group(GroupKind::S3)?)
}

pub fn km12(field: Field) -> Result<HopfQuasigroupData> {
    loop_algebra(&m12_loop()?, field)
}

/// `kC2` acting on `kC_n` by inversion.
pub fn inversion_action(n: usize, field: Field) -> Result<QuasimoduleAction> {
    let images = vec![(0..n).collect(), (0..n).map(|a| (n - a) % n).collect()];
    basis_action(&*kc(2, field)?, &*kc(n, field)?, &images)
}

pub fn inversion_twist(n: usize, field: Field) -> Result<TwistMap> {
    twist_from_action(&inversion_action(n, field)?)
}

/// `kC4` acting on `kC5`, the generator acting by `x ↦ x²`.
pub fn squaring_action(field: Field) -> Result<QuasimoduleAction> {
    let images = (0..4)
        .map(|k| (0..5).map(|a| a * 2usize.pow(k) % 5).collect())
        .collect::<Vec<Vec<usize>>>();
    basis_action(&*kc(4, field)?, &*kc(5, field)?, &images)
}

/// `kC2` acting on `k[M(S3, 2)]` by conjugation with `s` on `S3`,
/// extended by `gu ↦ (s g s)u`.
pub fn m12_conjugation_action(field: Field) -> Result<QuasimoduleAction> {
    let m = m12_loop()?;
    let s = 3;
    let conj: Vec<usize> = (0..12)
        .map(|x| {
            let g = x % 6;
            x - g + m.mul(m.mul(s, g), s)
        })
        .collect();
    let images = vec![(0..12).collect(), conj];
    basis_action(&*kc(2, field)?, &*km12(field)?, &images)
}

pub struct NamedAction {
    pub name: String,
    pub action: QuasimoduleAction,
}

/// Every bundled action; each passes the quasimodule suite.
pub fn actions(field: Field) -> Result<Vec<NamedAction>> {
    let mut out = vec![];
    for n in 3..=6 {
        out.push(NamedAction {
            name: format!("C2 inverting C{n}"),
            action: inversion_action(n, field)?,
        });
    }
    out.push(NamedAction {
        name: "C4 squaring C5".into(),
        action: squaring_action(field)?,
    });
    out.push(NamedAction {
        name: "C2 conjugating M(S3,2)".into(),
        action: m12_conjugation_action(field)?,
    });
    out.push(NamedAction {
        name: "M(S3,2) trivial on C2".into(),
        action: trivial_action(&*km12(field)?, &*kc(2, field)?)?,
    });
    out.push(NamedAction {
        name: "S3 trivial on C3".into(),
        action: trivial_action(&*ks3(field)?, &*kc(3, field)?)?,
    });
    Ok(out)
}

pub struct NamedTwist {
    pub name: String,
    pub twist: TwistMap,
}

/// Flip twists between bundled algebras, twists induced by the bundled
/// actions, and flips composed with basis permutations of `A` (some of
/// them automorphisms, some not).
pub fn twists(field: Field) -> Result<Vec<NamedTwist>> {
    let k2 = kc(2, field)?;
    let k3 = kc(3, field)?;
    let k4 = kc(4, field)?;
    let k5 = kc(5, field)?;
    let s3 = ks3(field)?;
    let m12 = km12(field)?;
    let mut out = vec![];
    let pairs: [(&str, &HopfData, &str, &HopfData); 9] = [
        ("C2", &k2, "C2", &k2),
        ("C2", &k2, "C3", &k3),
        ("C3", &k3, "C2", &k2),
        ("C4", &k4, "C5", &k5),
        ("S3", &s3, "C2", &k2),
        ("C2", &k2, "S3", &s3),
        ("C2", &k2, "M(S3,2)", &m12),
        ("M(S3,2)", &m12, "C2", &k2),
        ("C3", &k3, "M(S3,2)", &m12),
    ];
    for (hn, h, an, a) in pairs {
        out.push(NamedTwist {
            name: format!("flip {hn} x {an}"),
            twist: twist_from_flip(h, a)?,
        });
    }
    for q in actions(field)? {
        out.push(NamedTwist {
            name: format!("action {}", q.name),
            twist: twist_from_action(&q.action)?,
        });
    }
    let perms: [(&str, &HopfData, &str, &HopfData, Vec<usize>); 8] = [
        ("C2", &k2, "C5", &k5, vec![0, 2, 4, 1, 3]),
        ("C2", &k2, "C5", &k5, vec![0, 3, 1, 4, 2]),
        ("C3", &k3, "C4", &k4, vec![0, 3, 2, 1]),
        ("C3", &k3, "C4", &k4, vec![1, 0, 3, 2]),
        ("C2", &k2, "S3", &s3, vec![0, 2, 1, 4, 3, 5]),
        ("S3", &s3, "C3", &k3, vec![2, 0, 1]),
        ("C2", &k2, "M(S3,2)", &m12, vec![0, 2, 1, 3, 5, 4, 6, 8, 7, 9, 11, 10]),
        ("C2", &k2, "M(S3,2)", &m12, vec![1, 0, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]),
    ];
    for (hn, h, an, a, p) in perms {
        out.push(NamedTwist {
            name: format!("flip {hn} x {an} permuted by {p:?}"),
            twist: permutation_twist(h, a, &p)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::loop_properties;

    #[test]
    fn m12_conjugation_is_automorphism() {
        let m = m12_loop().unwrap();
        assert!(loop_properties(&m).moufang.holds);
        let q = m12_conjugation_action(Field::Rational).unwrap();
        let images: Vec<usize> = (0..12)
            .map(|x| q.action().column(12 + x)[0].0)
            .collect();
        assert!(m.is_automorphism(&images));
        assert_ne!(images, (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn family_is_large_enough() {
        let t = twists(Field::Rational).unwrap();
        assert!(t.len() >= 25);
        let mut names: Vec<&str> = t.iter().map(|n| n.name.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), t.len());
    }
}
