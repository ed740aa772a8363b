//! Exact verification of Hopf quasigroup and Hopf coquasigroup axioms, twist
//! maps and their smash (co)products, over ℚ or a prime field.
//!
//! Every structure is a finite table of structure constants and every axiom
//! is checked as an equality of linear maps on all basis tuples, so a check
//! either passes outright or returns the first basis tuple where it fails.

pub mod catalog;
pub mod error;
pub mod expr;
pub mod linear;
pub mod loops;
pub mod report;
pub mod scalar;
pub mod smash;
pub mod structures;
pub mod twist;

pub use error::{Error, LoopError, Result};
pub use linear::{LinearMap, Vector};
pub use loops::{
    gen_chein_double, gen_group, loop_algebra, loop_properties, validate_loop, GroupKind, LoopPropertyReport,
    LoopTable,
};
pub use report::{AxiomReport, Check, Stage, Verdict, Witness};
pub use scalar::{Field, Scalar};
pub use smash::{
    build_r_smash, build_w_cosmash, check_quasimodule, theorem_backward, theorem_backward_dual, theorem_forward,
    theorem_forward_dual, twist_from_action, CosmashCandidate, QuasimoduleAction, SmashCandidate,
};
pub use structures::{
    antipode_diagnostics, check_bialgebra_compat, check_counital_coalgebra, check_hopf_coquasigroup,
    check_hopf_quasigroup, check_unital_algebra, dualize, left_divide, right_divide, HopfCoquasigroupData, HopfData,
    HopfQuasigroupData, Part,
};
pub use twist::{
    check_twist_conditions, twist_from_flip, verify_lemma_antipode_compat, verify_lemma_conormal_coalgebra,
    verify_lemma_quasimult, Condition, ConditionReport, TwistMap,
};
