//! Group determinants of finite groups and their factorizations.
//!
//! The crate builds the group matrix `(x_{g h⁻¹})` and its determinant,
//! the left regular representation of a group algebra relative to a
//! subgroup, and a complete set of irreducible representations, and checks
//! the factorization identities that connect them, exactly on small groups
//! and by random evaluation on larger ones.

pub mod algebra;
pub mod config;
pub mod frobenius;
pub mod group;
pub mod regrep;
pub mod report;
pub mod reptheory;

pub use algebra::{
    AlgebraContext, AlgebraError, CMatrix, GroupAlgebraElement, GroupAlgebraMatrix, PolyMatrix,
    Polynomial, Rational, Scalar, ScalarMode,
};
pub use config::Tolerances;
pub use frobenius::{
    classical_factorization_check, degree_bound_check, generalized_factorization_check,
    quotient_factorization_check, regular_rep_determinant_check, theta_at, theta_symbolic,
    tower_factorization_check, CheckConfig, DegreeBoundReport, FrobeniusError, GroupDeterminant,
};
pub use group::{FiniteGroup, GroupError, Subgroup, Transversal};
pub use regrep::{RegrepError, RegularRepMap};
pub use report::{CheckMode, VerificationReport};
pub use reptheory::{irreducible_decomposition, IrrepSet, RepError, Representation};

/// Any error raised by this crate.
#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Regrep(#[from] RegrepError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
