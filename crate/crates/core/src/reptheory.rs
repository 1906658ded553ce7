//! Irreducible unitary representations computed numerically by splitting
//! the regular representation with random elements of its commutant.
//!
//! All randomness comes from one `ChaCha8Rng` seeded with the caller's
//! 64-bit seed, so a seed fully determines the output.

use std::cmp::Ordering;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::CMatrix;
use crate::config::{Tolerances, MAX_DECOMPOSITION_ORDER};
use crate::group::FiniteGroup;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("group of order {order} exceeds the decomposition cap {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("decomposition failed after {attempts} attempts with seed {seed}: {reason}")]
    DecompositionFailed {
        seed: u64,
        attempts: usize,
        reason: String,
    },
    #[error("malformed representation: {0}")]
    Malformed(String),
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A homomorphism `G → GL(d, ℂ)`, stored as one matrix per element index.
#[derive(Clone, Debug)]
pub struct Representation {
    group: Arc<FiniteGroup>,
    degree: usize,
    matrices: Vec<CMatrix>,
}

impl Representation {
    /// Wraps per-element matrices. `ρ(e)` is replaced by the exact identity.
    pub fn new(group: &Arc<FiniteGroup>, mut matrices: Vec<CMatrix>) -> Result<Self, RepError> {
        if matrices.len() != group.order() {
            return Err(RepError::Malformed(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let degree = matrices[0].nrows();
        if degree == 0 || matrices.iter().any(|m| m.nrows() != degree || m.ncols() != degree) {
            return Err(RepError::Malformed(
                "matrices must be square of one common positive size".into(),
            ));
        }
        matrices[group.identity()] = CMatrix::identity(degree, degree);
        Ok(Self {
            group: Arc::clone(group),
            degree,
            matrices,
        })
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        Self {
            group: Arc::clone(group),
            degree: 1,
            matrices: vec![CMatrix::identity(1, 1); group.order()],
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self, g: usize) -> &CMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    /// `χ(g) = tr ρ(g)` for every element, in index order.
    pub fn character(&self) -> Vec<Complex64> {
        self.matrices.iter().map(|m| m.trace()).collect()
    }

    /// `max_{g,h} ‖ρ(g)ρ(h) − ρ(gh)‖_max`.
    pub fn homomorphism_residual(&self) -> f64 {
        let g = &self.group;
        let mut worst = 0.0f64;
        for a in g.elements() {
            for b in g.elements() {
                let diff = &self.matrices[a] * &self.matrices[b] - &self.matrices[g.mul(a, b)];
                worst = worst.max(max_abs(&diff));
            }
        }
        worst
    }

    /// `max_g ‖ρ(g)ρ(g)* − I‖_max`.
    pub fn unitarity_residual(&self) -> f64 {
        let id = CMatrix::identity(self.degree, self.degree);
        self.matrices
            .iter()
            .map(|m| max_abs(&(m * m.adjoint() - &id)))
            .fold(0.0, f64::max)
    }

    /// Largest deviation of the character from its value on the first
    /// element of each conjugacy class.
    pub fn class_spread(&self) -> f64 {
        let chi = self.character();
        let mut worst = 0.0f64;
        for class in self.group.conjugacy_classes() {
            let base = chi[class[0]];
            for &g in &class[1..] {
                worst = worst.max((chi[g] - base).norm());
            }
        }
        worst
    }

    /// `g ↦ U ρ(g) U⁻¹`. Returns `None` when `U` is singular or the wrong size.
    pub fn conjugated_by(&self, u: &CMatrix) -> Option<Self> {
        if u.nrows() != self.degree || u.ncols() != self.degree {
            return None;
        }
        let inv = u.clone().try_inverse()?;
        let matrices = self.matrices.iter().map(|m| u * m * &inv).collect();
        Self::new(&self.group, matrices).ok()
    }

    /// Restriction to the invariant subspace spanned by the orthonormal
    /// columns of `q`.
    fn restricted(&self, q: &CMatrix) -> Self {
        let qa = q.adjoint();
        let matrices = self.matrices.iter().map(|m| &qa * m * q).collect();
        Self::new(&self.group, matrices).expect("restriction keeps shapes")
    }

    /// Conjugates by `S^{1/2}` where `S = avg ρ(g)*ρ(g)`, which makes every
    /// `ρ(g)` unitary.
    fn unitarized(&self) -> Self {
        let n = self.group.order() as f64;
        let mut s = CMatrix::zeros(self.degree, self.degree);
        for m in &self.matrices {
            s += m.adjoint() * m;
        }
        s /= Complex64::new(n, 0.0);
        let eig = hermitian_part(&s).symmetric_eigen();
        let v = &eig.eigenvectors;
        let root = |p: f64| {
            let d = CMatrix::from_diagonal(&eig.eigenvalues.map(|x| Complex64::new(x.max(0.0).powf(p), 0.0)));
            v * d * v.adjoint()
        };
        let (half, inv_half) = (root(0.5), root(-0.5));
        let matrices = self.matrices.iter().map(|m| &half * m * &inv_half).collect();
        Self::new(&self.group, matrices).expect("conjugation keeps shapes")
    }
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// `(1/|G|) Σ_g a(g)·conj(b(g))`.
pub fn character_inner_product(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let sum: Complex64 = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
    sum / a.len() as f64
}

/// True when the normalized character inner product is within `1e-6` of 1.
/// Representations of different degrees are never equivalent.
pub fn are_equivalent(r1: &Representation, r2: &Representation) -> bool {
    are_equivalent_within(r1, r2, Tolerances::default().character)
}

pub fn are_equivalent_within(r1: &Representation, r2: &Representation, tol: f64) -> bool {
    if r1.degree != r2.degree || r1.group.order() != r2.group.order() {
        return false;
    }
    (character_inner_product(&r1.character(), &r2.character()) - ONE).norm() <= tol
}

/// `ρ(g)` is the permutation matrix with a 1 at `(index of g·h, index of h)`.
pub fn regular_permutation_rep(group: &Arc<FiniteGroup>) -> Representation {
    let n = group.order();
    let matrices = group
        .elements()
        .map(|g| {
            let mut m = CMatrix::zeros(n, n);
            for h in group.elements() {
                m[(group.mul(g, h), h)] = ONE;
            }
            m
        })
        .collect();
    Representation::new(group, matrices).expect("permutation matrices are well formed")
}

/// A complete set of pairwise inequivalent irreducible representations.
#[derive(Clone, Debug)]
pub struct IrrepSet {
    group: Arc<FiniteGroup>,
    irreps: Vec<Representation>,
    seed: Option<u64>,
}

impl IrrepSet {
    /// Sorts the given representations canonically. Completeness is not
    /// checked; see [`IrrepSet::is_complete`].
    pub fn from_representations(group: &Arc<FiniteGroup>, mut irreps: Vec<Representation>) -> Self {
        irreps.sort_by(canonical_order);
        Self {
            group: Arc::clone(group),
            irreps,
            seed: None,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn irreps(&self) -> &[Representation] {
        &self.irreps
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Representation> {
        self.irreps.iter()
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.irreps.iter().map(|r| r.degree).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.irreps.iter().map(|r| r.degree).max().unwrap_or(0)
    }

    pub fn sum_of_squared_degrees(&self) -> usize {
        self.irreps.iter().map(|r| r.degree * r.degree).sum()
    }

    pub fn is_complete(&self) -> bool {
        self.sum_of_squared_degrees() == self.group.order()
    }

    /// `max_{i,j} |⟨χ_i, χ_j⟩ − δ_ij|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let chars: Vec<_> = self.irreps.iter().map(|r| r.character()).collect();
        let mut worst = 0.0f64;
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate() {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((character_inner_product(a, b) - target).norm());
            }
        }
        worst
    }

    /// Largest homomorphism or unitarity residual over the set.
    pub fn representation_residual(&self) -> f64 {
        self.irreps
            .iter()
            .map(|r| r.homomorphism_residual().max(r.unitarity_residual()))
            .fold(0.0, f64::max)
    }

    /// True when the two sets pair off into equivalent representations.
    pub fn equivalent_to(&self, other: &IrrepSet) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut used = vec![false; other.len()];
        self.irreps.iter().all(|r| {
            match (0..other.len()).find(|&j| !used[j] && are_equivalent(r, &other.irreps[j])) {
                Some(j) => {
                    used[j] = true;
                    true
                }
                None => false,
            }
        })
    }

    pub fn to_export(&self) -> IrrepSetExport {
        IrrepSetExport {
            group_order: self.group.order(),
            seed: self.seed,
            irreps: self
                .irreps
                .iter()
                .map(|r| IrrepExport {
                    degree: r.degree,
                    matrices: r
                        .matrices
                        .iter()
                        .map(|m| {
                            (0..m.nrows())
                                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                                .collect()
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_export()).expect("irrep export serializes")
    }
}

/// JSON form of an [`IrrepSet`]: per irrep, its degree and one matrix per
/// element as rows of `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IrrepSetExport {
    pub group_order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub irreps: Vec<IrrepExport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IrrepExport {
    pub degree: usize,
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
}

impl IrrepSetExport {
    pub fn into_irrep_set(self, group: &Arc<FiniteGroup>) -> Result<IrrepSet, RepError> {
        if self.group_order != group.order() {
            return Err(RepError::Malformed(format!(
                "export is for order {}, group has order {}",
                self.group_order,
                group.order()
            )));
        }
        let mut irreps = Vec::with_capacity(self.irreps.len());
        for irrep in self.irreps {
            let d = irrep.degree;
            let mut matrices = Vec::with_capacity(irrep.matrices.len());
            for rows in irrep.matrices {
                if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                    return Err(RepError::Malformed(format!("matrix is not {d}×{d}")));
                }
                matrices.push(CMatrix::from_fn(d, d, |i, j| {
                    Complex64::new(rows[i][j][0], rows[i][j][1])
                }));
            }
            irreps.push(Representation::new(group, matrices)?);
        }
        let mut set = IrrepSet::from_representations(group, irreps);
        set.seed = self.seed;
        Ok(set)
    }
}

fn character_key(r: &Representation) -> Vec<(i64, i64)> {
    let grid = Tolerances::default().character;
    r.character()
        .iter()
        .map(|z| ((z.re / grid).round() as i64, (z.im / grid).round() as i64))
        .collect()
}

/// Degree ascending, then rounded character descending, which puts the
/// trivial representation first.
fn canonical_order(a: &Representation, b: &Representation) -> Ordering {
    a.degree
        .cmp(&b.degree)
        .then_with(|| character_key(b).cmp(&character_key(a)))
}

/// Decomposes the regular representation of `group` with default tolerances.
pub fn irreducible_decomposition(group: &Arc<FiniteGroup>, seed: u64) -> Result<IrrepSet, RepError> {
    irreducible_decomposition_with(group, seed, &Tolerances::default())
}

pub fn irreducible_decomposition_with(
    group: &Arc<FiniteGroup>,
    seed: u64,
    tol: &Tolerances,
) -> Result<IrrepSet, RepError> {
    let n = group.order();
    if n > MAX_DECOMPOSITION_ORDER {
        return Err(RepError::GroupTooLarge {
            order: n,
            cap: MAX_DECOMPOSITION_ORDER,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let attempts = tol.max_retries + 1;
    let mut reason = String::new();
    for _ in 0..attempts {
        match decompose_once(group, &mut rng, tol) {
            Ok(irreps) => {
                let mut set = IrrepSet::from_representations(group, irreps);
                set.seed = Some(seed);
                return Ok(set);
            }
            Err(why) => reason = why,
        }
    }
    Err(RepError::DecompositionFailed {
        seed,
        attempts,
        reason,
    })
}

fn random_hermitian(d: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let mut x = CMatrix::zeros(d, d);
    for i in 0..d {
        x[(i, i)] = Complex64::new(rng.random_range(-1.0..=1.0), 0.0);
        for j in i + 1..d {
            let z = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
            x[(i, j)] = z;
            x[(j, i)] = z.conj();
        }
    }
    x
}

/// `avg_g ρ(g) X ρ(g)⁻¹` for the regular representation. The result is
/// invariant under left translation, so `Y[i][j] = y(i⁻¹j)` with
/// `y(k) = avg_a X[a][a·k]`.
fn regular_commutant_average(group: &FiniteGroup, x: &CMatrix) -> CMatrix {
    let n = group.order();
    let y: Vec<Complex64> = group
        .elements()
        .map(|k| group.elements().map(|a| x[(a, group.mul(a, k))]).sum::<Complex64>() / n as f64)
        .collect();
    CMatrix::from_fn(n, n, |i, j| y[group.mul(group.inv(i), j)])
}

fn commutant_average(rep: &Representation, x: &CMatrix) -> CMatrix {
    let mut y = CMatrix::zeros(rep.degree, rep.degree);
    for m in &rep.matrices {
        y += m * x * m.adjoint();
    }
    y / Complex64::new(rep.group.order() as f64, 0.0)
}

/// Orthonormal bases of the eigenspaces of a Hermitian matrix, eigenvalues
/// within `rel·max|λ|` of their neighbour grouped together. Gaps only
/// slightly above that threshold are rejected as ambiguous.
fn eigenspaces(y: &CMatrix, rel: f64) -> Result<Vec<CMatrix>, String> {
    let n = y.nrows();
    let eig = hermitian_part(y).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let scale = eig.eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return Err("commutant element vanished".into());
    }
    let mut clusters: Vec<Vec<usize>> = vec![vec![order[0]]];
    for w in order.windows(2) {
        let gap = (eig.eigenvalues[w[1]] - eig.eigenvalues[w[0]]) / scale;
        if gap <= rel {
            clusters.last_mut().unwrap().push(w[1]);
        } else if gap <= 100.0 * rel {
            return Err(format!("marginal eigenvalue gap {gap:.3e}"));
        } else {
            clusters.push(vec![w[1]]);
        }
    }
    Ok(clusters
        .into_iter()
        .map(|cols| DMatrix::from_fn(n, cols.len(), |i, c| eig.eigenvectors[(i, cols[c])]))
        .collect())
}

/// Character of the regular representation restricted to `span(q)`:
/// `χ(g) = Σ_h Σ_c conj(q[gh, c])·q[h, c]`.
fn regular_subspace_character(group: &FiniteGroup, q: &CMatrix) -> Vec<Complex64> {
    group
        .elements()
        .map(|g| {
            let mut sum = ZERO;
            for h in group.elements() {
                let gh = group.mul(g, h);
                for c in 0..q.ncols() {
                    sum += q[(gh, c)].conj() * q[(h, c)];
                }
            }
            sum
        })
        .collect()
}

/// `Q* P_g Q` for every `g`, using `(P_g Q)[gh, :] = Q[h, :]`.
fn regular_restriction(group: &Arc<FiniteGroup>, q: &CMatrix) -> Representation {
    let qa = q.adjoint();
    let matrices = group
        .elements()
        .map(|g| {
            let mut pq = CMatrix::zeros(q.nrows(), q.ncols());
            for h in group.elements() {
                pq.row_mut(group.mul(g, h)).copy_from(&q.row(h));
            }
            &qa * pq
        })
        .collect();
    Representation::new(group, matrices).expect("restriction keeps shapes")
}

/// Splits one random commutant element of the regular representation into
/// eigenspaces and collects one irreducible per equivalence class.
fn decompose_once(
    group: &Arc<FiniteGroup>,
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
) -> Result<Vec<Representation>, String> {
    let n = group.order();
    let x = random_hermitian(n, rng);
    let y = regular_commutant_average(group, &x);
    let mut found: Vec<(Representation, Vec<Complex64>)> = Vec::new();
    for q in eigenspaces(&y, tol.eigen_cluster)? {
        let chi = regular_subspace_character(group, &q);
        let norm = character_inner_product(&chi, &chi).re;
        if (norm - 1.0).abs() <= tol.character {
            if is_known(&found, &chi, tol) {
                continue;
            }
            let rep = regular_restriction(group, &q);
            admit(&mut found, rep, chi, tol)?;
        } else {
            let block = regular_restriction(group, &q).unitarized();
            for rep in split(&block, rng, tol, 0)? {
                let chi = rep.character();
                if !is_known(&found, &chi, tol) {
                    admit(&mut found, rep, chi, tol)?;
                }
            }
        }
    }
    let total: usize = found.iter().map(|(r, _)| r.degree * r.degree).sum();
    if total != n {
        return Err(format!("squared degrees sum to {total}, expected {n}"));
    }
    Ok(found.into_iter().map(|(r, _)| r).collect())
}

fn is_known(found: &[(Representation, Vec<Complex64>)], chi: &[Complex64], tol: &Tolerances) -> bool {
    found
        .iter()
        .any(|(_, c)| (character_inner_product(chi, c) - ONE).norm() <= tol.character)
}

fn admit(
    found: &mut Vec<(Representation, Vec<Complex64>)>,
    rep: Representation,
    chi: Vec<Complex64>,
    tol: &Tolerances,
) -> Result<(), String> {
    let rep = rep.unitarized();
    let residual = rep.homomorphism_residual().max(rep.unitarity_residual());
    if residual > tol.rep_residual {
        return Err(format!(
            "degree-{} block has residual {residual:.3e}",
            rep.degree
        ));
    }
    found.push((rep, chi));
    Ok(())
}

/// Splits a unitary representation into irreducibles by recursing on the
/// eigenspaces of random commutant elements.
fn split(
    rep: &Representation,
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
    depth: usize,
) -> Result<Vec<Representation>, String> {
    let chi = rep.character();
    let norm = character_inner_product(&chi, &chi).re;
    if (norm - 1.0).abs() <= tol.character {
        return Ok(vec![rep.clone()]);
    }
    if norm < 1.0 || depth > tol.max_retries {
        return Err(format!(
            "degree-{} block with ⟨χ,χ⟩ = {norm:.6} did not split",
            rep.degree
        ));
    }
    let y = commutant_average(rep, &random_hermitian(rep.degree, rng));
    let spaces = eigenspaces(&y, tol.eigen_cluster)?;
    if spaces.len() == 1 {
        return split(rep, rng, tol, depth + 1);
    }
    let mut out = Vec::new();
    for q in spaces {
        out.extend(split(&rep.restricted(&q).unitarized(), rng, tol, depth + 1)?);
    }
    Ok(out)
}
