//! `groupdet`: build finite groups, expand their group determinants, and
//! check the factorization identities from the command line.

mod commands;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use groupdet_core::{CheckMode, FrobeniusError, RepError};

#[derive(Parser, Debug)]
#[command(name = "groupdet", version, about = "Group determinants and their factorizations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Options {
    /// Catalog group, e.g. `symmetric:3`, `dihedral:4`, `cyclic:2*cyclic:3`.
    #[arg(long, global = true)]
    pub catalog: Option<String>,
    /// JSON file with `order`, `table` and optional `names`.
    #[arg(long, global = true)]
    pub cayley: Option<PathBuf>,
    /// Permutation generators in 1-based cycle notation, separated by `;`.
    #[arg(long, global = true)]
    pub perms: Option<String>,
    /// Degree of the permutations given with `--perms`.
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// Generator indices or names (`0,4`), `Cn`, `{e}`, `G`, or `all`.
    #[arg(long, global = true)]
    pub subgroup: Option<String>,
    /// Chain `H,K` with `K ≤ H ≤ G`; separate with `;` if members list generators.
    #[arg(long, global = true)]
    pub chain: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    /// Evaluation points in randomized mode.
    #[arg(long, global = true, default_value_t = 20)]
    pub points: usize,
    /// Relative tolerance in randomized mode.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, global = true, env = "GROUPDET_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Seed of the irreducible decompositions; defaults to `--seed`.
    #[arg(long, global = true)]
    pub irrep_seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the irreducible representations to this file (`irreps`).
    #[arg(long, global = true)]
    pub export: Option<PathBuf>,
    /// Size of the sampled input matrix for `lemma`.
    #[arg(long, global = true, default_value_t = 1)]
    pub m: usize,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Order, elements, center, classes, and subgroup normality.
    Group,
    /// The group determinant, expanded or evaluated at seeded points.
    Theta,
    /// Degrees of the irreducible representations.
    Irreps,
    /// Classical factorization, or the subgroup form with `--subgroup`.
    Verify,
    /// One of the supporting identities.
    Lemma {
        #[arg(value_enum)]
        which: LemmaArg,
    },
    /// Degree bound `max deg Ĝ ≤ [G:H] · max deg Ĥ` over every subgroup.
    Bound,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Symbolic,
    Pit,
}

impl From<ModeArg> for CheckMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Symbolic => CheckMode::Symbolic,
            ModeArg::Pit => CheckMode::Pit,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaArg {
    /// `L_T` in block form over a normal subgroup.
    Regnormal,
    /// `L_V = L_U ∘ L_T` for a chain.
    Tower,
    /// `det(A)` over `RG` followed by augmentation equals the flattened determinant.
    FlattenDet,
    /// `det L(α) = Θ(G)` for the trivial subgroup.
    #[value(alias = "l314")]
    Regdet,
    /// Factorization over the quotient by a normal subgroup.
    #[value(alias = "l411")]
    Quotient,
    /// Factorization compared along a chain.
    #[value(alias = "l412")]
    TowerFactor,
}

/// Exit status: 0 all checks passed, 1 a check failed or the decomposition
/// gave up, 2 bad input or an unmet precondition.
fn exit_code(err: &anyhow::Error) -> u8 {
    let gave_up = err.chain().any(|e| {
        matches!(e.downcast_ref::<RepError>(), Some(RepError::DecompositionFailed { .. }))
            || matches!(
                e.downcast_ref::<FrobeniusError>(),
                Some(FrobeniusError::Rep(RepError::DecompositionFailed { .. }))
            )
            || matches!(
                e.downcast_ref::<groupdet_core::Error>(),
                Some(groupdet_core::Error::Rep(RepError::DecompositionFailed { .. }))
            )
    });
    if gave_up {
        1
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command, &cli.opts) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
