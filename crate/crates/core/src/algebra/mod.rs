//! Polynomials in one variable per group element, group algebras over them,
//! and the matrix machinery built on top: Kronecker products, the flattening
//! map, and symbolic and numeric determinants.

mod group_algebra;
mod matrix;
mod poly;
mod scalar;

pub use group_algebra::{AlgebraContext, GroupAlgebraElement, GroupAlgebraMatrix};
pub use matrix::{det_by_minors, det_numeric, det_poly, kron_numeric, CMatrix, DetRing, PolyMatrix};
pub use poly::{Monomial, NamedPolynomial, Polynomial};
pub use scalar::{Coeff, Scalar, ScalarMode, TermRecord};

use thiserror::Error;

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("variable universes differ ({0} vs {1} variables)")]
    UniverseMismatch(usize, usize),
    #[error("coefficient modes differ ({0} vs {1})")]
    ModeMismatch(ScalarMode, ScalarMode),
    #[error("group algebra contexts differ")]
    ContextMismatch,
    #[error("shapes {left:?} and {right:?} are not conformable")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is {0}×{1}, not square")]
    NotSquare(usize, usize),
    #[error("dimension {dim} exceeds the symbolic determinant cap of {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },
    #[error("determinant requested over a non-commutative group algebra")]
    NonCommutativeContext,
    #[error("parse error: {0}")]
    Parse(String),
}
