//! Numeric thresholds shared across the crate, with their defaults.

/// Complex coefficients with magnitude below this are dropped from polynomials.
pub const DEFAULT_PRUNE_EPS: f64 = 1e-12;
/// Largest square matrix `det_poly` will expand symbolically.
pub const SYMBOLIC_DET_CAP: usize = 12;
/// Relative residual allowed by randomized identity checks.
pub const DEFAULT_PIT_TOLERANCE: f64 = 1e-8;
/// Evaluation points per randomized identity check.
pub const DEFAULT_PIT_POINTS: usize = 20;
/// Distance to the nearest Gaussian integer accepted when rounding.
pub const DEFAULT_ROUNDING_WINDOW: f64 = 1e-6;
/// Homomorphism and unitarity residual allowed for computed representations.
pub const DEFAULT_REP_RESIDUAL: f64 = 1e-8;
/// Tolerance on normalized character inner products.
pub const DEFAULT_CHARACTER_TOL: f64 = 1e-6;
/// Relative gap below which eigenvalues are treated as one cluster.
pub const DEFAULT_EIGEN_CLUSTER: f64 = 1e-6;
/// Fresh random commutant elements tried before a decomposition gives up.
pub const DEFAULT_MAX_RETRIES: usize = 5;
/// Largest group handled by the representation decomposition.
pub const MAX_DECOMPOSITION_ORDER: usize = 256;
/// Largest group whose group determinant is expanded symbolically.
pub const SYMBOLIC_THETA_CAP: usize = 12;
/// Largest group for which the symbolic factorization mode is allowed.
pub const SYMBOLIC_FACTORIZATION_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub prune: f64,
    pub pit: f64,
    pub rounding_window: f64,
    pub rep_residual: f64,
    pub character: f64,
    pub eigen_cluster: f64,
    pub max_retries: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            prune: DEFAULT_PRUNE_EPS,
            pit: DEFAULT_PIT_TOLERANCE,
            rounding_window: DEFAULT_ROUNDING_WINDOW,
            rep_residual: DEFAULT_REP_RESIDUAL,
            character: DEFAULT_CHARACTER_TOL,
            eigen_cluster: DEFAULT_EIGEN_CLUSTER,
            max_retries: DEFAULT_MAX_RETRIES,
        }
    }
}
