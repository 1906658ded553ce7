//! The group determinant `Θ(G) = det(x_{g h⁻¹})` and checks of its
//! factorizations over irreducible representations of `G`, of a subgroup,
//! and of quotient groups.
//!
//! Randomized checks evaluate both sides at points whose coordinates are
//! uniform on the square `[-1, 1]²` of the complex plane, drawn from a
//! `ChaCha8Rng` seeded with [`CheckConfig::seed`], and compare them with the
//! relative residual `|l − r| / max(|l|, |r|, 1)`.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    det_numeric, det_poly, kron_numeric, AlgebraContext, AlgebraError, CMatrix, Coeff,
    GroupAlgebraElement, GroupAlgebraMatrix, PolyMatrix, Polynomial, Rational,
};
use crate::config::{
    DEFAULT_PIT_POINTS, DEFAULT_PIT_TOLERANCE, DEFAULT_ROUNDING_WINDOW,
    SYMBOLIC_FACTORIZATION_CAP, SYMBOLIC_THETA_CAP,
};
use crate::group::{
    all_subgroups_capped, left_transversal, left_transversal_in, FiniteGroup, GroupError,
    Subgroup, DEFAULT_SUBGROUP_LATTICE_CAP,
};
use crate::regrep::{
    expand_by_subgroup, expand_by_transversal, tower_transversal, QuotientGroup, RegrepError,
    RegularRepMap,
};
use crate::report::{CheckMode, VerificationReport};
use crate::reptheory::{irreducible_decomposition, IrrepSet, RepError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrobeniusError {
    #[error("group of order {order} is too large for symbolic expansion (cap {cap})")]
    GroupTooLargeForSymbolic { order: usize, cap: usize },
    #[error("group of order {order} is too large for this check (cap {cap})")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("irreducible representations are incomplete: squared degrees sum to {sum}, order is {order}")]
    IncompleteIrrepSet { sum: usize, order: usize },
    #[error("coefficient {value} of {monomial} is {distance:.3e} from the nearest Gaussian integer")]
    RoundingAmbiguous {
        monomial: String,
        value: String,
        distance: f64,
    },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not a normal subgroup: {0}")]
    NotNormal(String),
    #[error("not a subgroup chain: {0}")]
    NotASubgroupChain(String),
    #[error(transparent)]
    Regrep(RegrepError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl From<RegrepError> for FrobeniusError {
    fn from(e: RegrepError) -> Self {
        match e {
            RegrepError::NotNormal(s) => FrobeniusError::NotNormal(s),
            RegrepError::NotASubgroupChain(s) => FrobeniusError::NotASubgroupChain(s),
            RegrepError::Algebra(a) => FrobeniusError::Algebra(a),
            RegrepError::Group(g) => FrobeniusError::Group(g),
            other => FrobeniusError::Regrep(other),
        }
    }
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Settings shared by the factorization checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckConfig {
    pub mode: CheckMode,
    pub n_points: usize,
    /// Largest relative residual accepted in randomized mode.
    pub tolerance: f64,
    /// Seed of the evaluation points.
    pub seed: u64,
    /// Seed passed to the irreducible decomposition.
    pub irrep_seed: u64,
    /// Distance to a Gaussian integer accepted when rounding in symbolic mode.
    pub rounding_window: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            mode: CheckMode::Pit,
            n_points: DEFAULT_PIT_POINTS,
            tolerance: DEFAULT_PIT_TOLERANCE,
            seed: 0,
            irrep_seed: 0,
            rounding_window: DEFAULT_ROUNDING_WINDOW,
        }
    }
}

/// `Θ(G)`, expanded when the group is small enough and otherwise kept as an
/// evaluation-only handle.
#[derive(Clone, Debug)]
pub struct GroupDeterminant {
    group: Arc<FiniteGroup>,
    polynomial: Option<Polynomial<Rational>>,
}

impl GroupDeterminant {
    /// Expands `Θ(G)` when `|G| ≤ 12`, defers it otherwise.
    pub fn new(group: &Arc<FiniteGroup>) -> Self {
        theta_symbolic(group).unwrap_or_else(|_| Self {
            group: Arc::clone(group),
            polynomial: None,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn polynomial(&self) -> Option<&Polynomial<Rational>> {
        self.polynomial.as_ref()
    }

    pub fn is_materialized(&self) -> bool {
        self.polynomial.is_some()
    }

    /// Value at a point; always computed from the numeric determinant.
    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        theta_at(&self.group, point)
    }
}

/// An assignment of a complex value to every variable, with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationPoint {
    pub values: Vec<Complex64>,
    pub seed: u64,
    pub index: usize,
}

impl EvaluationPoint {
    /// `x_e = 1`, every other variable `0`.
    pub fn identity(group: &FiniteGroup) -> Self {
        let mut values = vec![Complex64::new(0.0, 0.0); group.order()];
        values[group.identity()] = ONE;
        Self {
            values,
            seed: 0,
            index: 0,
        }
    }
}

/// `count` points in `nvars` variables, coordinates uniform on `[-1, 1]²`.
pub fn random_points(nvars: usize, count: usize, seed: u64) -> Vec<EvaluationPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|index| EvaluationPoint {
            values: (0..nvars)
                .map(|_| Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
                .collect(),
            seed,
            index,
        })
        .collect()
}

/// `|l − r| / max(|l|, |r|, 1)`.
pub fn relative_residual(l: Complex64, r: Complex64) -> f64 {
    (l - r).norm() / l.norm().max(r.norm()).max(1.0)
}

/// The matrix with entry `(g, h)` equal to `x_{g h⁻¹}`.
pub fn group_matrix(group: &FiniteGroup) -> PolyMatrix<Rational> {
    let n = group.order();
    PolyMatrix::from_fn(n, n, n, |g, h| Polynomial::var(n, group.div(g, h)))
}

pub fn group_matrix_at(group: &FiniteGroup, point: &[Complex64]) -> CMatrix {
    let n = group.order();
    assert_eq!(point.len(), n, "assignment is not total");
    CMatrix::from_fn(n, n, |g, h| point[group.div(g, h)])
}

/// Expands `Θ(G)` exactly. Only for `|G| ≤ 12`.
pub fn theta_symbolic(group: &Arc<FiniteGroup>) -> Result<GroupDeterminant, FrobeniusError> {
    if group.order() > SYMBOLIC_THETA_CAP {
        return Err(FrobeniusError::GroupTooLargeForSymbolic {
            order: group.order(),
            cap: SYMBOLIC_THETA_CAP,
        });
    }
    Ok(GroupDeterminant {
        group: Arc::clone(group),
        polynomial: Some(det_poly(&group_matrix(group))?),
    })
}

/// `Θ(G)` at a point, from the numeric determinant of the group matrix.
pub fn theta_at(group: &FiniteGroup, point: &[Complex64]) -> Complex64 {
    det_numeric(&group_matrix_at(group, point))
}

fn check_complete(irreps: &IrrepSet, order: usize) -> Result<(), FrobeniusError> {
    let sum = irreps.sum_of_squared_degrees();
    if sum != order || irreps.group().order() != order {
        return Err(FrobeniusError::IncompleteIrrepSet { sum, order });
    }
    Ok(())
}

/// `Π_ρ det(Σ_k ρ(k) ⊗ parts[k])^{deg ρ}`, with `k` running over the
/// elements of the group the irreps belong to.
fn factor_product(irreps: &IrrepSet, parts: &[CMatrix]) -> Complex64 {
    let (r, c) = (parts[0].nrows(), parts[0].ncols());
    let mut acc = ONE;
    for rep in irreps.iter() {
        let d = rep.degree();
        let mut m = CMatrix::zeros(d * r, d * c);
        for (k, part) in parts.iter().enumerate() {
            m += kron_numeric(rep.matrix(k), part);
        }
        acc *= det_numeric(&m).powi(d as i32);
    }
    acc
}

fn symbolic_factor_product(
    irreps: &IrrepSet,
    parts: &[PolyMatrix<Complex64>],
) -> Result<Polynomial<Complex64>, FrobeniusError> {
    let nvars = parts[0].nvars();
    let mut acc = Polynomial::one(nvars);
    for rep in irreps.iter() {
        let mut m: Option<PolyMatrix<Complex64>> = None;
        for (k, part) in parts.iter().enumerate() {
            let term = PolyMatrix::from_constants(rep.matrix(k), nvars).kron(part)?;
            m = Some(match m {
                None => term,
                Some(acc) => acc.try_add(&term)?,
            });
        }
        let det = det_poly(&m.expect("a group has at least one element"))?;
        acc = acc.try_mul(&det.pow(rep.degree() as u32))?;
    }
    Ok(acc)
}

/// Rounds every coefficient to the nearest Gaussian integer. Returns the
/// real parts and the largest rounding distance; fails when any
/// coefficient is farther than `window` from every Gaussian integer.
fn round_to_integers(
    p: &Polynomial<Complex64>,
    window: f64,
    names: &[String],
) -> Result<(Polynomial<Rational>, f64, Option<String>), FrobeniusError> {
    let mut out = Polynomial::zero(p.nvars());
    let mut worst = 0.0f64;
    let mut non_real = None;
    for (mono, c) in p.terms() {
        let (re, im) = (c.re.round(), c.im.round());
        let distance = (c - Complex64::new(re, im)).norm();
        if distance > window {
            return Err(FrobeniusError::RoundingAmbiguous {
                monomial: monomial_name(mono.exponents(), names),
                value: format!("{c}"),
                distance,
            });
        }
        worst = worst.max(distance);
        if im != 0.0 && non_real.is_none() {
            non_real = Some(format!(
                "coefficient of {} rounds to {re}{im:+}i",
                monomial_name(mono.exponents(), names)
            ));
        }
        if re != 0.0 {
            out.add_term(mono.clone(), Rational::from_integer((re as i64).into()));
        }
    }
    Ok((out, worst, non_real))
}

fn monomial_name(exponents: &[u32], names: &[String]) -> String {
    let factors: Vec<String> = exponents
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let base = format!("x[{}]", names.get(i).map(String::as_str).unwrap_or("?"));
            if e == 1 {
                base
            } else {
                format!("{base}^{e}")
            }
        })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

fn first_coefficient_difference<C: Coeff>(
    lhs: &Polynomial<C>,
    rhs: &Polynomial<C>,
    names: &[String],
) -> Option<String> {
    let monomials: BTreeSet<_> = lhs.terms().chain(rhs.terms()).map(|(m, _)| m.clone()).collect();
    monomials.into_iter().rev().find_map(|m| {
        let (a, b) = (lhs.coeff(&m), rhs.coeff(&m));
        (a != b).then(|| {
            let show = |c: Option<&C>| c.map(|c| c.to_scalar().to_string()).unwrap_or("0".into());
            format!(
                "coefficient of {}: {} vs {}",
                monomial_name(m.exponents(), names),
                show(a),
                show(b)
            )
        })
    })
}

/// Variable names `x_0, x_1, …` by element name when there are as many
/// variables as elements.
fn variable_names(group: &FiniteGroup, nvars: usize) -> Vec<String> {
    if nvars == group.order() {
        group.names().to_vec()
    } else {
        (0..nvars).map(|i| i.to_string()).collect()
    }
}

fn evaluate_points(
    nvars: usize,
    cfg: &CheckConfig,
    lhs: impl Fn(&[Complex64]) -> Complex64 + Sync,
    rhs: impl Fn(&[Complex64]) -> Complex64 + Sync,
) -> Vec<f64> {
    random_points(nvars, cfg.n_points, cfg.seed)
        .par_iter()
        .map(|p| relative_residual(lhs(&p.values), rhs(&p.values)))
        .collect()
}

/// Exact comparison of an integer polynomial with a complex one after
/// rounding the latter.
fn compare_rounded(
    report: &mut VerificationReport,
    exact: &Polynomial<Rational>,
    approx: &Polynomial<Complex64>,
    window: f64,
    names: &[String],
) -> Result<(), FrobeniusError> {
    let (rounded, offset, non_real) = round_to_integers(approx, window, names)?;
    report.tolerance = window;
    report.residual = offset;
    if let Some(w) = non_real {
        report.fail(w);
    }
    if let Some(w) = first_coefficient_difference(exact, &rounded, names) {
        report.fail(w);
    }
    Ok(())
}

fn symbolic_allowed(group: &FiniteGroup) -> Result<(), FrobeniusError> {
    if group.order() > SYMBOLIC_FACTORIZATION_CAP {
        return Err(FrobeniusError::GroupTooLargeForSymbolic {
            order: group.order(),
            cap: SYMBOLIC_FACTORIZATION_CAP,
        });
    }
    Ok(())
}

/// `Θ(G) = Π_φ det(Σ_g φ(g) x_g)^{deg φ}` at random points.
pub fn classical_factorization_check(
    group: &Arc<FiniteGroup>,
    irreps: &IrrepSet,
    label: &str,
    cfg: &CheckConfig,
) -> Result<VerificationReport, FrobeniusError> {
    let start = Instant::now();
    check_complete(irreps, group.order())?;
    let mut report =
        VerificationReport::pit("classical-factorization", label.to_string(), None, cfg.tolerance, cfg.seed);
    report.irrep_seed = irreps.seed();
    let residuals = evaluate_points(
        group.order(),
        cfg,
        |x| theta_at(group, x),
        |x| {
            let parts: Vec<CMatrix> = x.iter().map(|&v| CMatrix::from_element(1, 1, v)).collect();
            factor_product(irreps, &parts)
        },
    );
    report.record_residuals(residuals);
    Ok(report.timed(start))
}

/// Irreducible representations of a subgroup, indexed by its sorted
/// elements.
pub fn subgroup_irreps(
    group: &FiniteGroup,
    sub: &Subgroup,
    seed: u64,
) -> Result<IrrepSet, FrobeniusError> {
    Ok(irreducible_decomposition(&Arc::new(sub.to_group(group)), seed)?)
}

/// `Θ(G) = Π_{ψ ∈ Ĥ} det(Σ_h ψ(h) ⊗ C_h)^{deg ψ}` where `L_T(α) = Σ_h C_h h`.
pub fn generalized_factorization_check(
    group: &Arc<FiniteGroup>,
    sub: &Subgroup,
    label: &str,
    cfg: &CheckConfig,
) -> Result<VerificationReport, FrobeniusError> {
    let irreps = subgroup_irreps(group, sub, cfg.irrep_seed)?;
    generalized_factorization_check_with(group, sub, &irreps, label, cfg)
}

/// As [`generalized_factorization_check`] with given irreps of `H`.
pub fn generalized_factorization_check_with(
    group: &Arc<FiniteGroup>,
    sub: &Subgroup,
    irreps: &IrrepSet,
    label: &str,
    cfg: &CheckConfig,
) -> Result<VerificationReport, FrobeniusError> {
    let start = Instant::now();
    if Subgroup::new(group, sub.elements().to_vec()).is_err() {
        return Err(FrobeniusError::NotASubgroup(format!("{:?}", sub.elements())));
    }
    check_complete(irreps, sub.order())?;
    let map = RegularRepMap::canonical(group, sub, 1);
    let alpha = GroupAlgebraMatrix::scalar(GroupAlgebraElement::generic(&AlgebraContext::whole(group)));
    let expansion = expand_by_subgroup(&map.apply(&alpha)?);
    // Each C_h already has scalar entries, so flattening leaves it unchanged.
    let parts: Vec<PolyMatrix<Rational>> = expansion.parts().iter().map(|(_, c)| c.clone()).collect();
    let subgroup = Some(sub.describe(group));
    let names = group.names().to_vec();

    let mut report = match cfg.mode {
        CheckMode::Pit => {
            let mut report = VerificationReport::pit(
                "generalized-factorization",
                label.to_string(),
                subgroup,
                cfg.tolerance,
                cfg.seed,
            );
            let residuals = evaluate_points(
                group.order(),
                cfg,
                |x| theta_at(group, x),
                |x| {
                    let values: Vec<CMatrix> = parts.iter().map(|c| c.eval_complex(x)).collect();
                    factor_product(irreps, &values)
                },
            );
            report.record_residuals(residuals);
            report
        }
        CheckMode::Symbolic => {
            symbolic_allowed(group)?;
            let theta = theta_symbolic(group)?;
            let complex_parts: Vec<_> = parts.iter().map(PolyMatrix::to_complex).collect();
            let product = symbolic_factor_product(irreps, &complex_parts)?;
            let mut report =
                VerificationReport::exact("generalized-factorization", label.to_string(), subgroup);
            compare_rounded(
                &mut report,
                theta.polynomial().expect("materialized"),
                &product,
                cfg.rounding_window,
                &names,
            )?;
            report
        }
    };
    report.irrep_seed = irreps.seed();
    Ok(report.timed(start))
}

/// [`generalized_factorization_check`] for every subgroup, in lattice order.
pub fn generalized_sweep(
    group: &Arc<FiniteGroup>,
    label: &str,
    cfg: &CheckConfig,
) -> Result<Vec<VerificationReport>, FrobeniusError> {
    all_subgroups_capped(group, DEFAULT_SUBGROUP_LATTICE_CAP.max(group.order()))?
        .par_iter()
        .map(|sub| generalized_factorization_check(group, sub, label, cfg))
        .collect()
}

/// `det F(L(α)) = Θ(G)` exactly, where `L` is taken relative to `{e}` and
/// `Θ(G)` is read as the coefficient sum of the algebra element `Θ(G)·e`.
pub fn regular_rep_determinant_check(
    group: &Arc<FiniteGroup>,
    label: &str,
) -> Result<VerificationReport, FrobeniusError> {
    let start = Instant::now();
    let theta = theta_symbolic(group)?;
    let map = RegularRepMap::canonical(group, &Subgroup::trivial(group), 1);
    let alpha = GroupAlgebraMatrix::scalar(GroupAlgebraElement::generic(&AlgebraContext::whole(group)));
    let lhs = det_poly(&map.apply(&alpha)?.flatten())?;
    let mut report = VerificationReport::exact(
        "regular-rep-determinant",
        label.to_string(),
        Some(Subgroup::trivial(group).describe(group)),
    );
    if let Some(w) =
        first_coefficient_difference(&lhs, theta.polynomial().expect("materialized"), group.names())
    {
        report.fail(w);
    }
    Ok(report.timed(start))
}

/// `det F_m(A) = F_1(det A)` exactly, for `A` over a commutative group
/// algebra.
pub fn flatten_det_check(
    a: &GroupAlgebraMatrix<Rational>,
    label: &str,
) -> Result<VerificationReport, FrobeniusError> {
    let start = Instant::now();
    let ctx = a.context();
    let lhs = det_poly(&a.flatten())?;
    let rhs = a.det_commutative()?.augmentation();
    let mut report = VerificationReport::exact(
        "flatten-det",
        label.to_string(),
        Some(ctx.members().describe(ctx.group())),
    );
    if let Some(w) = first_coefficient_difference(&lhs, &rhs, &variable_names(ctx.group(), a.nvars())) {
        report.fail(w);
    }
    Ok(report.timed(start))
}

/// For normal `H`:
/// `det F(L_T(A)) = Π_{φ ∈ (G/H)^} det(Σ_t φ(tH) ⊗ F(A_t))^{deg φ}`.
///
/// `quotient_irreps`, when given, must be indexed like the cosets of the
/// canonical transversal; otherwise they are computed with
/// `cfg.irrep_seed`.
pub fn quotient_factorization_check(
    group: &Arc<FiniteGroup>,
    sub: &Subgroup,
    a: &GroupAlgebraMatrix<Rational>,
    quotient_irreps: Option<&IrrepSet>,
    label: &str,
    cfg: &CheckConfig,
) -> Result<VerificationReport, FrobeniusError> {
    let start = Instant::now();
    let transversal = left_transversal(group, sub);
    let quotient = QuotientGroup::new(group, &transversal)?;
    let computed;
    let irreps = match quotient_irreps {
        Some(irreps) => irreps,
        None => {
            computed = irreducible_decomposition(&Arc::new(quotient.group().clone()), cfg.irrep_seed)?;
            &computed
        }
    };
    check_complete(irreps, transversal.index())?;
    let map = RegularRepMap::new(group, transversal.clone(), a.rows());
    let lhs_matrix = map.apply(a)?.flatten();
    let parts: Vec<PolyMatrix<Rational>> = expand_by_transversal(group, a, &transversal)?
        .parts()
        .iter()
        .map(GroupAlgebraMatrix::flatten)
        .collect();
    let subgroup = Some(sub.describe(group));
    let tag = "quotient-factorization";
    let mut report = match cfg.mode {
        CheckMode::Pit => {
            let mut report =
                VerificationReport::pit(tag, label.to_string(), subgroup, cfg.tolerance, cfg.seed);
            let residuals = evaluate_points(
                a.nvars(),
                cfg,
                |x| det_numeric(&lhs_matrix.eval_complex(x)),
                |x| {
                    let values: Vec<CMatrix> = parts.iter().map(|c| c.eval_complex(x)).collect();
                    factor_product(irreps, &values)
                },
            );
            report.record_residuals(residuals);
            report
        }
        CheckMode::Symbolic => {
            symbolic_allowed(group)?;
            let lhs = det_poly(&lhs_matrix)?;
            let complex_parts: Vec<_> = parts.iter().map(PolyMatrix::to_complex).collect();
            let rhs = symbolic_factor_product(irreps, &complex_parts)?;
            let mut report = VerificationReport::exact(tag, label.to_string(), subgroup);
            compare_rounded(&mut report, &lhs, &rhs, cfg.rounding_window, &variable_names(group, a.nvars()))?;
            report
        }
    };
    report.irrep_seed = irreps.seed();
    report
        .notes
        .push("each quotient factor is raised to the degree of its representation".into());
    Ok(report.timed(start))
}

/// For `K ≤ H ≤ G` with `K` normal in `G` and in `H`, compares
/// `Π_{φ ∈ (G/K)^} det(Σ_v φ(vK) ⊗ F(B_v))^{deg φ}` with
/// `Π_{ψ ∈ (H/K)^} det(Σ_u ψ(uK) ⊗ F(C_u))^{deg ψ}`, where `A = Σ_v v B_v`
/// and `L_T(A) = Σ_u u C_u`. Neither side is treated as the reference.
pub fn tower_factorization_check(
    group: &Arc<FiniteGroup>,
    middle: &Subgroup,
    bottom: &Subgroup,
    a: &GroupAlgebraMatrix<Rational>,
    label: &str,
    cfg: &CheckConfig,
) -> Result<VerificationReport, FrobeniusError> {
    let start = Instant::now();
    if !bottom.is_subgroup_of(middle) {
        return Err(FrobeniusError::NotASubgroupChain(format!(
            "{} is not contained in {}",
            bottom.describe(group),
            middle.describe(group)
        )));
    }
    let outer = left_transversal(group, middle);
    let inner = left_transversal_in(group, middle, bottom)?;
    let tower = tower_transversal(group, &outer, &inner)?;
    let over_g = QuotientGroup::new(group, &tower)?;
    let over_h = QuotientGroup::new(group, &inner)?;
    let irreps_g = irreducible_decomposition(&Arc::new(over_g.group().clone()), cfg.irrep_seed)?;
    let irreps_h = irreducible_decomposition(&Arc::new(over_h.group().clone()), cfg.irrep_seed)?;

    let b_parts: Vec<PolyMatrix<Rational>> = expand_by_transversal(group, a, &tower)?
        .parts()
        .iter()
        .map(GroupAlgebraMatrix::flatten)
        .collect();
    let lifted = RegularRepMap::new(group, outer, a.rows()).apply(a)?;
    let c_parts: Vec<PolyMatrix<Rational>> = expand_by_transversal(group, &lifted, &inner)?
        .parts()
        .iter()
        .map(GroupAlgebraMatrix::flatten)
        .collect();

    let subgroup = Some(format!("{} > {}", middle.describe(group), bottom.describe(group)));
    let tag = "tower-factorization";
    let mut report = match cfg.mode {
        CheckMode::Pit => {
            let mut report =
                VerificationReport::pit(tag, label.to_string(), subgroup, cfg.tolerance, cfg.seed);
            let side = |irreps: &IrrepSet, parts: &[PolyMatrix<Rational>], x: &[Complex64]| {
                let values: Vec<CMatrix> = parts.iter().map(|c| c.eval_complex(x)).collect();
                factor_product(irreps, &values)
            };
            let residuals = evaluate_points(
                a.nvars(),
                cfg,
                |x| side(&irreps_g, &b_parts, x),
                |x| side(&irreps_h, &c_parts, x),
            );
            report.record_residuals(residuals);
            report
        }
        CheckMode::Symbolic => {
            symbolic_allowed(group)?;
            let names = variable_names(group, a.nvars());
            let to_complex = |parts: &[PolyMatrix<Rational>]| -> Vec<PolyMatrix<Complex64>> {
                parts.iter().map(PolyMatrix::to_complex).collect()
            };
            let lhs = symbolic_factor_product(&irreps_g, &to_complex(&b_parts))?;
            let rhs = symbolic_factor_product(&irreps_h, &to_complex(&c_parts))?;
            let (lhs, lhs_offset, lhs_non_real) = round_to_integers(&lhs, cfg.rounding_window, &names)?;
            let mut report = VerificationReport::exact(tag, label.to_string(), subgroup);
            compare_rounded(&mut report, &lhs, &rhs, cfg.rounding_window, &names)?;
            report.residual = report.residual.max(lhs_offset);
            if let Some(w) = lhs_non_real {
                report.fail(w);
            }
            report
        }
    };
    report.irrep_seed = irreps_g.seed();
    Ok(report.timed(start))
}

/// One subgroup's line of a degree-bound sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub subgroup: String,
    pub order: usize,
    pub index: usize,
    pub max_subgroup_degree: usize,
    pub bound: usize,
    pub max_degree: usize,
    pub slack: usize,
    pub holds: bool,
    pub tight: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeBoundReport {
    pub group: String,
    pub max_degree: usize,
    pub rows: Vec<BoundRow>,
    pub passed: bool,
}

impl DegreeBoundReport {
    pub fn tight_rows(&self) -> impl Iterator<Item = &BoundRow> {
        self.rows.iter().filter(|r| r.tight)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Largest group accepted by [`degree_bound_check`].
pub const DEGREE_BOUND_CAP: usize = DEFAULT_SUBGROUP_LATTICE_CAP;

/// Checks `max deg Ĝ ≤ [G:H] · max deg Ĥ` for every subgroup `H`.
pub fn degree_bound_check(
    group: &Arc<FiniteGroup>,
    label: &str,
    irrep_seed: u64,
) -> Result<DegreeBoundReport, FrobeniusError> {
    if group.order() > DEGREE_BOUND_CAP {
        return Err(FrobeniusError::GroupTooLarge {
            order: group.order(),
            cap: DEGREE_BOUND_CAP,
        });
    }
    let max_degree = irreducible_decomposition(group, irrep_seed)?.max_degree();
    let subgroups = all_subgroups_capped(group, DEGREE_BOUND_CAP)?;
    let rows = subgroups
        .par_iter()
        .map(|sub| {
            let max_sub = subgroup_irreps(group, sub, irrep_seed)?.max_degree();
            let index = group.order() / sub.order();
            let bound = index * max_sub;
            Ok(BoundRow {
                subgroup: sub.describe(group),
                order: sub.order(),
                index,
                max_subgroup_degree: max_sub,
                bound,
                max_degree,
                slack: bound.saturating_sub(max_degree),
                holds: max_degree <= bound,
                tight: max_degree == bound,
            })
        })
        .collect::<Result<Vec<_>, FrobeniusError>>()?;
    Ok(DegreeBoundReport {
        group: label.to_string(),
        max_degree,
        passed: rows.iter().all(|r| r.holds),
        rows,
    })
}

/// `[α]` for `m = 1`; otherwise an `m × m` matrix over `RG` whose entries
/// are sums of two random terms `c · x_v · g`.
pub fn sample_matrix(group: &Arc<FiniteGroup>, m: usize, seed: u64) -> GroupAlgebraMatrix<Rational> {
    let ctx = AlgebraContext::whole(group);
    if m == 1 {
        GroupAlgebraMatrix::scalar(GroupAlgebraElement::generic(&ctx))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        GroupAlgebraMatrix::random(m, m, &ctx, group.order(), 2, &mut rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        all_subgroups, cyclic, dihedral, is_normal, quaternion8, subgroup_generated, symmetric,
    };

    type Q = Rational;

    fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
        Arc::new(g)
    }

    fn int(v: i64) -> Q {
        Q::from_integer(v.into())
    }

    /// Leibniz expansion over all permutations.
    fn leibniz(m: &PolyMatrix<Q>) -> Polynomial<Q> {
        fn perms(k: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in 0..k {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    perms(k, used, cur, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let n = m.rows();
        let mut all = Vec::new();
        perms(n, &mut vec![false; n], &mut Vec::new(), &mut all);
        let mut total = Polynomial::zero(m.nvars());
        for p in all {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let mut term = Polynomial::one(m.nvars());
            for (i, &j) in p.iter().enumerate() {
                term = &term * m.get(i, j);
            }
            if inversions % 2 == 1 {
                term = -&term;
            }
            total = &total + &term;
        }
        total
    }

    #[test]
    fn group_matrix_entries() {
        let c2 = cyclic(2).unwrap();
        let m = group_matrix(&c2);
        assert_eq!(m.get(0, 1), &Polynomial::var(2, 1));
        assert_eq!(m.get(1, 1), &Polynomial::var(2, 0));
        let c3 = cyclic(3).unwrap();
        let m = group_matrix(&c3);
        // Row 0 is x_0, x_{0-1}, x_{0-2}.
        let row: Vec<_> = (0..3).map(|j| m.get(0, j).clone()).collect();
        assert_eq!(row, vec![Polynomial::var(3, 0), Polynomial::var(3, 2), Polynomial::var(3, 1)]);
        for i in 0..3 {
            assert_eq!(m.get(i, i), &Polynomial::var(3, 0));
        }
    }

    #[test]
    fn small_thetas() {
        let c2 = arc(cyclic(2).unwrap());
        let theta = theta_symbolic(&c2).unwrap();
        let p = theta.polynomial().unwrap();
        assert_eq!(p.display_with(c2.names()).to_string(), "x[e]^2 - x[a]^2");
        let c3 = arc(cyclic(3).unwrap());
        let p = theta_symbolic(&c3).unwrap().polynomial().unwrap().clone();
        let x = |i| Polynomial::<Q>::var(3, i);
        let expected = &(&(&x(0).pow(3) + &x(1).pow(3)) + &x(2).pow(3))
            - &(&(&x(0) * &x(1)) * &x(2)).scale(&int(3));
        assert_eq!(p, expected);
        assert_eq!(p, leibniz(&group_matrix(&c3)));
    }

    #[test]
    fn theta_is_homogeneous_and_normalized() {
        for g in [cyclic(4).unwrap(), symmetric(3).unwrap(), quaternion8()] {
            let g = arc(g);
            let theta = theta_symbolic(&g).unwrap();
            let p = theta.polynomial().unwrap();
            assert!(p.is_homogeneous());
            assert_eq!(p.total_degree(), Some(g.order() as u32));
            let point = EvaluationPoint::identity(&g);
            let exact: Vec<Q> = point.values.iter().map(|z| int(z.re as i64)).collect();
            assert_eq!(p.eval(&exact).unwrap(), int(1));
            assert_eq!(theta_at(&g, &point.values), ONE);
        }
    }

    #[test]
    fn theta_at_matches_expansion() {
        let c2 = arc(cyclic(2).unwrap());
        let v = theta_at(&c2, &[Complex64::new(3.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert!((v - Complex64::new(8.0, 0.0)).norm() < 1e-12);
        for g in [symmetric(3).unwrap(), dihedral(4).unwrap(), cyclic(5).unwrap()] {
            let g = arc(g);
            let p = theta_symbolic(&g).unwrap().polynomial().unwrap().clone();
            for point in random_points(g.order(), 10, 3) {
                let a = theta_at(&g, &point.values);
                let b = p.eval_complex(&point.values);
                assert!(relative_residual(a, b) < 1e-9);
            }
        }
    }

    #[test]
    fn theta_scales_with_degree() {
        let g = arc(symmetric(3).unwrap());
        let point = &random_points(6, 1, 8)[0].values;
        for lambda in [Complex64::new(0.5, 0.2), Complex64::new(-1.3, 0.0), Complex64::new(0.0, 2.0)] {
            let scaled: Vec<_> = point.iter().map(|x| x * lambda).collect();
            let lhs = theta_at(&g, &scaled);
            let rhs = theta_at(&g, point) * lambda.powi(6);
            assert!(relative_residual(lhs, rhs) < 1e-10);
        }
    }

    #[test]
    fn symbolic_theta_cap() {
        let g = arc(symmetric(4).unwrap());
        assert!(matches!(
            theta_symbolic(&g),
            Err(FrobeniusError::GroupTooLargeForSymbolic { order: 24, cap: 12 })
        ));
        assert!(!GroupDeterminant::new(&g).is_materialized());
    }

    #[test]
    fn classical_on_small_groups() {
        let cfg = CheckConfig::default();
        for g in [FiniteGroup::trivial(), cyclic(2).unwrap(), symmetric(3).unwrap()] {
            let g = arc(g);
            let irreps = irreducible_decomposition(&g, 0).unwrap();
            let r = classical_factorization_check(&g, &irreps, "g", &cfg).unwrap();
            assert!(r.passed, "{r}");
            assert_eq!(r.n_points, 20);
            assert!(r.residual <= 1e-8);
        }
    }

    #[test]
    fn incomplete_irreps_are_rejected() {
        let g = arc(symmetric(3).unwrap());
        let full = irreducible_decomposition(&g, 0).unwrap();
        let partial = IrrepSet::from_representations(&g, full.irreps()[..2].to_vec());
        assert!(matches!(
            classical_factorization_check(&g, &partial, "S3", &CheckConfig::default()),
            Err(FrobeniusError::IncompleteIrrepSet { sum: 2, order: 6 })
        ));
    }

    #[test]
    fn wrong_product_is_detected() {
        // Dropping the exponent on the degree-2 factor breaks the identity.
        let g = arc(symmetric(3).unwrap());
        let irreps = irreducible_decomposition(&g, 0).unwrap();
        let point = &random_points(6, 1, 1)[0].values;
        let parts: Vec<CMatrix> = point.iter().map(|&v| CMatrix::from_element(1, 1, v)).collect();
        let full = factor_product(&irreps, &parts);
        assert!(relative_residual(full, theta_at(&g, point)) < 1e-10);
        let two = &irreps.irreps()[2];
        let mut m = CMatrix::zeros(2, 2);
        for (k, p) in parts.iter().enumerate() {
            m += kron_numeric(two.matrix(k), p);
        }
        let without_exponent = full / det_numeric(&m);
        assert!(relative_residual(without_exponent, theta_at(&g, point)) > 1e-3);
    }

    #[test]
    fn generalized_s3_over_c3_both_modes() {
        let g = arc(symmetric(3).unwrap());
        let c3 = subgroup_generated(&g, &[3]);
        assert_eq!(c3.order(), 3);
        let pit = generalized_factorization_check(&g, &c3, "S3", &CheckConfig::default()).unwrap();
        assert!(pit.passed, "{pit}");
        let cfg = CheckConfig {
            mode: CheckMode::Symbolic,
            ..CheckConfig::default()
        };
        let sym = generalized_factorization_check(&g, &c3, "S3", &cfg).unwrap();
        assert!(sym.passed, "{sym}");
        assert!(sym.residual <= 1e-6);
    }

    #[test]
    fn generalized_degenerations() {
        let cfg = CheckConfig::default();
        for g in [cyclic(4).unwrap(), symmetric(3).unwrap(), quaternion8()] {
            let g = arc(g);
            let irreps = irreducible_decomposition(&g, cfg.irrep_seed).unwrap();
            let classical = classical_factorization_check(&g, &irreps, "g", &cfg).unwrap();
            let whole = generalized_factorization_check(&g, &Subgroup::whole(&g), "g", &cfg).unwrap();
            assert_eq!(classical.residuals, whole.residuals);
            let trivial = generalized_factorization_check(&g, &Subgroup::trivial(&g), "g", &cfg).unwrap();
            assert!(trivial.passed);
        }
    }

    #[test]
    fn symbolic_generalized_on_all_subgroups_of_d4() {
        let g = arc(dihedral(4).unwrap());
        let cfg = CheckConfig {
            mode: CheckMode::Symbolic,
            ..CheckConfig::default()
        };
        for sub in all_subgroups(&g).unwrap() {
            let r = generalized_factorization_check(&g, &sub, "D4", &cfg).unwrap();
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn symbolic_mode_cap() {
        let g = arc(cyclic(9).unwrap());
        let cfg = CheckConfig {
            mode: CheckMode::Symbolic,
            ..CheckConfig::default()
        };
        assert!(matches!(
            generalized_factorization_check(&g, &Subgroup::whole(&g), "C9", &cfg),
            Err(FrobeniusError::GroupTooLargeForSymbolic { order: 9, cap: 8 })
        ));
    }

    #[test]
    fn regular_rep_determinant_small_groups() {
        for g in [FiniteGroup::trivial(), cyclic(3).unwrap(), symmetric(3).unwrap(), quaternion8()] {
            let g = arc(g);
            assert!(regular_rep_determinant_check(&g, "g").unwrap().passed);
        }
    }

    #[test]
    fn flatten_det_on_abelian_algebra() {
        let g = arc(cyclic(4).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = GroupAlgebraMatrix::<Q>::random(3, 3, &AlgebraContext::whole(&g), 4, 2, &mut rng);
        assert!(flatten_det_check(&a, "C4").unwrap().passed);
        let s3 = arc(symmetric(3).unwrap());
        let b = sample_matrix(&s3, 2, 1);
        assert!(matches!(
            flatten_det_check(&b, "S3"),
            Err(FrobeniusError::Algebra(AlgebraError::NonCommutativeContext))
        ));
    }

    #[test]
    fn quotient_factorization_instances() {
        let cfg = CheckConfig::default();
        let c4 = arc(cyclic(4).unwrap());
        let h = Subgroup::new(&c4, vec![0, 2]).unwrap();
        let r = quotient_factorization_check(&c4, &h, &sample_matrix(&c4, 1, 0), None, "C4", &cfg).unwrap();
        assert!(r.passed, "{r}");
        assert_eq!(r.notes.len(), 1);
        let s3 = arc(symmetric(3).unwrap());
        let c3 = subgroup_generated(&s3, &[3]);
        for seed in 0..3 {
            let a = sample_matrix(&s3, 2, seed);
            let r = quotient_factorization_check(&s3, &c3, &a, None, "S3", &cfg).unwrap();
            assert!(r.passed, "{r}");
        }
        let whole = Subgroup::whole(&s3);
        let r = quotient_factorization_check(&s3, &whole, &sample_matrix(&s3, 2, 9), None, "S3", &cfg).unwrap();
        assert!(r.passed);
        let sym = CheckConfig {
            mode: CheckMode::Symbolic,
            ..cfg
        };
        let r = quotient_factorization_check(&s3, &c3, &sample_matrix(&s3, 1, 0), None, "S3", &sym).unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn quotient_factorization_needs_normality() {
        let s3 = arc(symmetric(3).unwrap());
        let t = subgroup_generated(&s3, &[1]);
        assert!(!is_normal(&s3, &t));
        assert!(matches!(
            quotient_factorization_check(&s3, &t, &sample_matrix(&s3, 1, 0), None, "S3", &CheckConfig::default()),
            Err(FrobeniusError::NotNormal(_))
        ));
    }

    #[test]
    fn tower_factorization_instances() {
        let cfg = CheckConfig::default();
        let s3 = arc(symmetric(3).unwrap());
        let c3 = subgroup_generated(&s3, &[3]);
        let r = tower_factorization_check(&s3, &c3, &Subgroup::trivial(&s3), &sample_matrix(&s3, 1, 0), "S3", &cfg)
            .unwrap();
        assert!(r.passed, "{r}");
        let d4 = arc(dihedral(4).unwrap());
        let c4 = subgroup_generated(&d4, &[1]);
        let center = Subgroup::new(&d4, d4.center()).unwrap();
        let r = tower_factorization_check(&d4, &c4, &center, &sample_matrix(&d4, 1, 0), "D4", &cfg).unwrap();
        assert!(r.passed, "{r}");
        let whole = Subgroup::whole(&d4);
        let r = tower_factorization_check(&d4, &whole, &Subgroup::trivial(&d4), &sample_matrix(&d4, 1, 0), "D4", &cfg)
            .unwrap();
        assert!(r.passed, "{r}");
        let sym = CheckConfig {
            mode: CheckMode::Symbolic,
            ..cfg
        };
        let r = tower_factorization_check(&s3, &c3, &Subgroup::trivial(&s3), &sample_matrix(&s3, 1, 0), "S3", &sym)
            .unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn tower_factorization_rejects_bad_chains() {
        let s3 = arc(symmetric(3).unwrap());
        let c3 = subgroup_generated(&s3, &[3]);
        let t = subgroup_generated(&s3, &[1]);
        let a = sample_matrix(&s3, 1, 0);
        assert!(matches!(
            tower_factorization_check(&s3, &c3, &t, &a, "S3", &CheckConfig::default()),
            Err(FrobeniusError::NotASubgroupChain(_))
        ));
        assert!(matches!(
            tower_factorization_check(&s3, &Subgroup::whole(&s3), &t, &a, "S3", &CheckConfig::default()),
            Err(FrobeniusError::NotNormal(_))
        ));
    }

    #[test]
    fn degree_bound_on_s3() {
        let g = arc(symmetric(3).unwrap());
        let report = degree_bound_check(&g, "S3", 0).unwrap();
        assert!(report.passed);
        assert_eq!(report.max_degree, 2);
        let c3 = report.rows.iter().find(|r| r.order == 3).unwrap();
        assert_eq!((c3.bound, c3.tight), (2, true));
        let whole = report.rows.iter().find(|r| r.order == 6).unwrap();
        assert!(whole.tight);
        let trivial = report.rows.iter().find(|r| r.order == 1).unwrap();
        assert_eq!(trivial.bound, 6);
    }

    #[test]
    fn rounding_rejects_non_integers() {
        let p = Polynomial::constant(1, Complex64::new(0.5, 0.0));
        assert!(matches!(
            round_to_integers(&p, 1e-6, &["e".into()]),
            Err(FrobeniusError::RoundingAmbiguous { .. })
        ));
        let q = Polynomial::constant(1, Complex64::new(2.0 + 1e-9, 1.0));
        let (r, offset, non_real) = round_to_integers(&q, 1e-6, &["e".into()]).unwrap();
        assert_eq!(r, Polynomial::constant(1, int(2)));
        assert!(offset < 1e-8);
        assert!(non_real.is_some());
    }

    #[test]
    fn points_are_seeded_and_bounded() {
        let a = random_points(4, 5, 17);
        assert_eq!(a, random_points(4, 5, 17));
        assert_ne!(a, random_points(4, 5, 18));
        assert!(a.iter().flat_map(|p| &p.values).all(|z| z.re.abs() <= 1.0 && z.im.abs() <= 1.0));
    }

    #[test]
    fn residual_definition() {
        let z = Complex64::new(0.0, 0.0);
        assert_eq!(relative_residual(z, Complex64::new(1e-3, 0.0)), 1e-3);
        assert_eq!(relative_residual(Complex64::new(100.0, 0.0), Complex64::new(99.0, 0.0)), 0.01);
    }
}
