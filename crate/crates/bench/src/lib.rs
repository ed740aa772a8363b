//! Inputs shared by the benchmarks.

use hopfq_core::catalog;
use hopfq_core::{build_r_smash, twist_from_flip, Field, HopfQuasigroupData, SmashCandidate};

pub fn m12() -> HopfQuasigroupData {
    catalog::km12(Field::Rational).expect("bundled loop algebra")
}

/// The 24-dimensional smash product `k[M(S3,2)] ⊗ kC2` with the flip twist.
pub fn m12_flip_smash() -> SmashCandidate {
    let a = m12();
    let h = catalog::kc(2, Field::Rational).expect("bundled group algebra");
    let r = twist_from_flip(&h, &a).expect("same field");
    build_r_smash(&a, &h, &r).expect("matching factors")
}
