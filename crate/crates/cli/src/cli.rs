use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

/// Exact checks for Hopf quasigroups, twist maps and smash products.
#[derive(Debug, Parser)]
#[command(name = "hopfq", version)]
pub struct Cli {
    /// Worker threads used by the checkers; defaults to one per core.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Algebra,
    Coalgebra,
    HopfQuasigroup,
    HopfCoquasigroup,
    Loop,
    Quasimodule,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ActionKind {
    /// Every element acts through its counit.
    Trivial,
    /// The generator of a two-element group acts by the antipode of `A`.
    Inversion,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an axiom suite on a file; the suite defaults to the file's kind.
    Validate {
        path: PathBuf,
        #[arg(long, value_enum)]
        suite: Option<Suite>,
    },
    /// Write a loop table: `cyclic N`, `s3` or `chein-double GROUP_FILE`.
    Gen {
        #[arg(long, num_args = 1..=2, required = true, value_names = ["KIND", "ARG"])]
        kind: Vec<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the loop algebra of an inverse-property loop.
    LoopAlgebra {
        path: PathBuf,
        /// `rational` or `prime P`.
        #[arg(long, default_value = "rational")]
        field: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Transpose every structure map, swapping Hopf quasigroup and Hopf
    /// coquasigroup files.
    Dualize {
        path: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the flip twist `h ⊗ a ↦ a ⊗ h`.
    Flip {
        #[arg(long = "H")]
        h: PathBuf,
        #[arg(long = "A")]
        a: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write a bundled action of `H` on `A`.
    Action {
        #[arg(long, value_enum)]
        kind: ActionKind,
        #[arg(long = "H")]
        h: PathBuf,
        #[arg(long = "A")]
        a: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check conditions on a twist map; all fourteen by default.
    CheckTwist {
        #[arg(long = "H")]
        h: Option<PathBuf>,
        #[arg(long = "A")]
        a: Option<PathBuf>,
        #[arg(long = "R")]
        r: PathBuf,
        #[arg(long, value_delimiter = ',')]
        conditions: Vec<String>,
    },
    /// Build the R-smash product on `A ⊗ H`.
    Smash {
        #[arg(long = "H")]
        h: Option<PathBuf>,
        #[arg(long = "A")]
        a: Option<PathBuf>,
        #[arg(long = "R")]
        r: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Also run the forward direction of the equivalence; fails the
        /// command if it does not pass.
        #[arg(long)]
        verify: bool,
    },
    /// Build the W-smash coproduct on `H ⊗ A`.
    Cosmash {
        #[arg(long = "H")]
        h: Option<PathBuf>,
        #[arg(long = "A")]
        a: Option<PathBuf>,
        #[arg(long = "W", alias = "R")]
        w: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        verify: bool,
    },
    /// Verify both directions of the equivalence between conditions on the
    /// twist and the axioms of its smash product.
    Theorem {
        #[arg(long = "H")]
        h: Option<PathBuf>,
        #[arg(long = "A")]
        a: Option<PathBuf>,
        #[arg(long = "R")]
        r: PathBuf,
        /// Use the W-smash coproduct and the dual condition set.
        #[arg(long)]
        dual: bool,
    },
    /// Write the twist `h ⊗ a ↦ h₁·a ⊗ h₂` induced by a quasimodule action.
    ActionTwist {
        #[arg(long)]
        action: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run the three lemma verifiers on a twist map.
    Lemmas {
        #[arg(long = "R")]
        r: PathBuf,
    },
}
