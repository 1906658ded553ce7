//! The left regular representation of matrices over a group algebra
//! relative to a subgroup, and the decompositions used alongside it.
//!
//! For a transversal `T = (t_1, …, t_k)` of `H` in `G`, `L_T(A)` is the
//! unique `mk × mk` matrix over `RH` with
//! `A · (t_1 I_m … t_k I_m) = (t_1 I_m … t_k I_m) · L_T(A)`.
//! Block `(i, j)` of `L_T(A)` corresponds to `(t_i, t_j)`.

use std::sync::Arc;
use std::time::Instant;

use thiserror::Error;

use crate::algebra::{
    AlgebraContext, AlgebraError, Coeff, GroupAlgebraElement, GroupAlgebraMatrix, PolyMatrix,
    Polynomial,
};
use crate::group::{is_normal_in, FiniteGroup, GroupError, Subgroup, Transversal};
use crate::report::VerificationReport;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegrepError {
    #[error("input matrix context does not match the representation's group")]
    ContextMismatch,
    #[error("input matrix is {0}×{1}, not square")]
    NotSquare(usize, usize),
    #[error("input matrix has size {got}, expected {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("not a normal subgroup: {0}")]
    NotNormal(String),
    #[error("not a subgroup chain: {0}")]
    NotASubgroupChain(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `L_T : Mat(m, R·over) → Mat(m·[over:sub], R·sub)`.
#[derive(Clone, Debug)]
pub struct RegularRepMap {
    group: Arc<FiniteGroup>,
    transversal: Transversal,
    source: AlgebraContext,
    target: AlgebraContext,
    m: usize,
}

impl RegularRepMap {
    pub fn new(group: &Arc<FiniteGroup>, transversal: Transversal, m: usize) -> Self {
        let source = AlgebraContext::of_subgroup(group, transversal.over());
        let target = AlgebraContext::of_subgroup(group, transversal.subgroup());
        Self {
            group: Arc::clone(group),
            transversal,
            source,
            target,
            m,
        }
    }

    /// The map for `sub ≤ G` with the canonical transversal.
    pub fn canonical(group: &Arc<FiniteGroup>, sub: &Subgroup, m: usize) -> Self {
        Self::new(group, crate::group::left_transversal(group, sub), m)
    }

    pub fn transversal(&self) -> &Transversal {
        &self.transversal
    }

    pub fn source(&self) -> &AlgebraContext {
        &self.source
    }

    pub fn target(&self) -> &AlgebraContext {
        &self.target
    }

    pub fn input_size(&self) -> usize {
        self.m
    }

    pub fn output_size(&self) -> usize {
        self.m * self.transversal.index()
    }

    /// Applies the map. Each term `c·g` of entry `(p, q)` contributes, for
    /// every column block `j`, `c·h` at `(p, q)` of block `(i, j)` where
    /// `g·t_j = t_i·h`.
    pub fn apply<C: Coeff>(
        &self,
        a: &GroupAlgebraMatrix<C>,
    ) -> Result<GroupAlgebraMatrix<C>, RegrepError> {
        if a.context() != &self.source {
            return Err(RegrepError::ContextMismatch);
        }
        if !a.is_square() {
            return Err(RegrepError::NotSquare(a.rows(), a.cols()));
        }
        if a.rows() != self.m {
            return Err(RegrepError::SizeMismatch {
                expected: self.m,
                got: a.rows(),
            });
        }
        let m = self.m;
        let reps = self.transversal.reps();
        let mut out =
            GroupAlgebraMatrix::zeros(self.output_size(), self.output_size(), &self.target, a.nvars());
        for (p, q, entry) in a.entries() {
            for (g, c) in entry.terms() {
                for (j, &t_j) in reps.iter().enumerate() {
                    let (i, h) = self.transversal.decompose(self.group.mul(g, t_j));
                    out.entry_mut(i * m + p, j * m + q).add_term(h, c);
                }
            }
        }
        debug_assert_eq!(out.rows(), self.output_size());
        Ok(out)
    }

    /// `(t_1 I_m … t_k I_m)` as an `m × mk` matrix over the source algebra.
    pub fn transversal_row<C: Coeff>(&self, nvars: usize) -> GroupAlgebraMatrix<C> {
        let m = self.m;
        let reps = self.transversal.reps();
        GroupAlgebraMatrix::from_fn(m, m * reps.len(), &self.source, nvars, |p, col| {
            let (j, q) = (col / m, col % m);
            if p == q {
                GroupAlgebraElement::basis(&self.source, nvars, reps[j], Polynomial::one(nvars))
            } else {
                GroupAlgebraElement::zero(&self.source, nvars)
            }
        })
    }

    /// Checks `A · Row(T) = Row(T) · L_T(A)` in matrices over the source
    /// algebra.
    pub fn defining_relation_holds<C: Coeff>(
        &self,
        a: &GroupAlgebraMatrix<C>,
        image: &GroupAlgebraMatrix<C>,
    ) -> Result<bool, RegrepError> {
        let row = self.transversal_row(a.nvars());
        let lhs = a.try_mul(&row)?;
        let rhs = row.try_mul(&image.embed(&self.source)?)?;
        Ok(lhs == rhs)
    }
}

/// `A = Σ_h C_h · h` for a matrix over the algebra of a subgroup.
#[derive(Clone, Debug, PartialEq)]
pub struct SubgroupExpansion<C: Coeff> {
    context: AlgebraContext,
    parts: Vec<(usize, PolyMatrix<C>)>,
}

impl<C: Coeff> SubgroupExpansion<C> {
    pub fn context(&self) -> &AlgebraContext {
        &self.context
    }

    /// `(h, C_h)` for every element of the context, in element order.
    pub fn parts(&self) -> &[(usize, PolyMatrix<C>)] {
        &self.parts
    }

    pub fn get(&self, h: usize) -> Option<&PolyMatrix<C>> {
        self.parts.iter().find(|(g, _)| *g == h).map(|(_, c)| c)
    }

    /// `Σ_h C_h · h`.
    pub fn reassemble(&self) -> GroupAlgebraMatrix<C> {
        let (rows, cols, nvars) = {
            let c = &self.parts[0].1;
            (c.rows(), c.cols(), c.nvars())
        };
        GroupAlgebraMatrix::from_fn(rows, cols, &self.context, nvars, |i, j| {
            let mut a = GroupAlgebraElement::zero(&self.context, nvars);
            for (h, c) in &self.parts {
                a.add_term(*h, c.get(i, j));
            }
            a
        })
    }
}

/// Splits a matrix over `RH` into its coefficient matrices `C_h`.
pub fn expand_by_subgroup<C: Coeff>(a: &GroupAlgebraMatrix<C>) -> SubgroupExpansion<C> {
    let context = a.context().clone();
    let parts = context
        .members()
        .elements()
        .iter()
        .map(|&h| (h, a.coefficient_matrix(h)))
        .collect();
    SubgroupExpansion { context, parts }
}

/// `A = Σ_t t · A_t` with each `A_t` over the algebra of the transversal's
/// subgroup, indexed like `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransversalExpansion<C: Coeff> {
    source: AlgebraContext,
    parts: Vec<GroupAlgebraMatrix<C>>,
    reps: Vec<usize>,
}

impl<C: Coeff> TransversalExpansion<C> {
    pub fn parts(&self) -> &[GroupAlgebraMatrix<C>] {
        &self.parts
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    /// `Σ_t t · A_t` over the source algebra.
    pub fn reassemble(&self) -> Result<GroupAlgebraMatrix<C>, RegrepError> {
        let mut total: Option<GroupAlgebraMatrix<C>> = None;
        for (&t, part) in self.reps.iter().zip(&self.parts) {
            let term = part.embed(&self.source)?.left_mul_element(t);
            total = Some(match total {
                None => term,
                Some(acc) => acc.try_add(&term)?,
            });
        }
        Ok(total.expect("a transversal is never empty"))
    }
}

/// Splits `A` over `R·over` by cosets: the term `c·g` with `g = t_i·h` goes
/// to `A_{t_i}` as `c·h`.
pub fn expand_by_transversal<C: Coeff>(
    group: &Arc<FiniteGroup>,
    a: &GroupAlgebraMatrix<C>,
    transversal: &Transversal,
) -> Result<TransversalExpansion<C>, RegrepError> {
    let source = AlgebraContext::of_subgroup(group, transversal.over());
    if a.context() != &source {
        return Err(RegrepError::ContextMismatch);
    }
    let target = AlgebraContext::of_subgroup(group, transversal.subgroup());
    let mut parts =
        vec![GroupAlgebraMatrix::zeros(a.rows(), a.cols(), &target, a.nvars()); transversal.index()];
    for (p, q, entry) in a.entries() {
        for (g, c) in entry.terms() {
            let (i, h) = transversal.decompose(g);
            parts[i].entry_mut(p, q).add_term(h, c);
        }
    }
    Ok(TransversalExpansion {
        source,
        parts,
        reps: transversal.reps().to_vec(),
    })
}

/// Transversal `V` of `K` in `G` from `T` (of `H` in `G`) and `U` (of `K`
/// in `H`), with `v_{j·|T| + i} = t_i · u_j`: the `T` index varies fastest.
/// This is the order in which `L_V = L_U ∘ L_T` holds exactly.
pub fn tower_transversal(
    group: &FiniteGroup,
    outer: &Transversal,
    inner: &Transversal,
) -> Result<Transversal, RegrepError> {
    if outer.subgroup() != inner.over() {
        return Err(RegrepError::NotASubgroupChain(
            "inner transversal must cover the outer transversal's subgroup".into(),
        ));
    }
    let mut reps = Vec::with_capacity(outer.index() * inner.index());
    for &u in inner.reps() {
        for &t in outer.reps() {
            reps.push(group.mul(t, u));
        }
    }
    Ok(Transversal::new(group, outer.over(), inner.subgroup(), reps)?)
}

/// `G/H` for normal `H`, with coset `i` represented by `T[i]`.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    group: FiniteGroup,
    transversal: Transversal,
}

impl QuotientGroup {
    pub fn new(ambient: &FiniteGroup, transversal: &Transversal) -> Result<Self, RegrepError> {
        if !is_normal_in(ambient, transversal.over(), transversal.subgroup()) {
            return Err(RegrepError::NotNormal(format!(
                "{} is not normal",
                transversal.subgroup().describe(ambient)
            )));
        }
        let reps = transversal.reps();
        let table: Vec<Vec<usize>> = reps
            .iter()
            .map(|&a| {
                reps.iter()
                    .map(|&b| transversal.coset_of(ambient.mul(a, b)))
                    .collect()
            })
            .collect();
        let names = reps
            .iter()
            .map(|&t| format!("{}{}", ambient.name(t), transversal.subgroup().describe(ambient)))
            .collect();
        let group = FiniteGroup::from_cayley_table(&table, Some(names))?;
        Ok(Self {
            group,
            transversal: transversal.clone(),
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn transversal(&self) -> &Transversal {
        &self.transversal
    }

    /// The quotient's regular representation at the coset `k`: a 0/1
    /// matrix with a 1 at `(i, j)` exactly when `t_k t_j H = t_i H`.
    pub fn regular_matrix<C: Coeff>(&self, k: usize, nvars: usize) -> PolyMatrix<C> {
        let n = self.group.order();
        PolyMatrix::from_fn(n, n, nvars, |i, j| {
            if self.group.mul(k, j) == i {
                Polynomial::one(nvars)
            } else {
                Polynomial::zero(nvars)
            }
        })
    }
}

fn first_difference<C: Coeff>(
    lhs: &GroupAlgebraMatrix<C>,
    rhs: &GroupAlgebraMatrix<C>,
) -> Option<String> {
    lhs.entries()
        .zip(rhs.entries())
        .find(|((_, _, a), (_, _, b))| a != b)
        .map(|((i, j, a), (_, _, b))| format!("entry ({i}, {j}): {a} vs {b}"))
}

/// Exact check of
/// `L_T(A) = P⁻¹ (Σ_t L_{G/H}(tH) ⊗ t·A_t) P` with `P = diag(t_i I_m)`,
/// both sides evaluated in matrices over `RG`.
pub fn normal_form_check<C: Coeff>(
    group: &Arc<FiniteGroup>,
    transversal: &Transversal,
    a: &GroupAlgebraMatrix<C>,
    group_label: &str,
) -> Result<VerificationReport, RegrepError> {
    let start = Instant::now();
    let quotient = QuotientGroup::new(group, transversal)?;
    let map = RegularRepMap::new(group, transversal.clone(), a.rows());
    let lhs = map.apply(a)?.embed(map.source())?;

    let nvars = a.nvars();
    let m = a.rows();
    let expansion = expand_by_transversal(group, a, transversal)?;
    let source = map.source().clone();
    let mut sum = GroupAlgebraMatrix::zeros(map.output_size(), map.output_size(), &source, nvars);
    for (k, (&t, part)) in expansion.reps().iter().zip(expansion.parts()).enumerate() {
        let t_part = part.embed(&source)?.left_mul_element(t);
        let block = t_part.kron_left(&quotient.regular_matrix(k, nvars))?;
        sum = sum.try_add(&block)?;
    }
    let reps = transversal.reps();
    let p = GroupAlgebraMatrix::block_diagonal_elements(reps, m, &source, nvars);
    let inverses: Vec<usize> = reps.iter().map(|&t| group.inv(t)).collect();
    let p_inv = GroupAlgebraMatrix::block_diagonal_elements(&inverses, m, &source, nvars);
    let rhs = p_inv.try_mul(&sum)?.try_mul(&p)?;

    let mut report = VerificationReport::exact(
        "regular-rep-normal-form",
        group_label.to_string(),
        Some(transversal.subgroup().describe(group)),
    );
    if let Some(w) = first_difference(&lhs, &rhs) {
        report.fail(w);
    }
    Ok(report.timed(start))
}

/// Exact check of `L_V(A) = L_U(L_T(A))` for a chain `K ≤ H ≤ G` with
/// canonical `T` and `U`.
pub fn tower_check<C: Coeff>(
    group: &Arc<FiniteGroup>,
    middle: &Subgroup,
    bottom: &Subgroup,
    a: &GroupAlgebraMatrix<C>,
    group_label: &str,
) -> Result<VerificationReport, RegrepError> {
    let start = Instant::now();
    if !bottom.is_subgroup_of(middle) {
        return Err(RegrepError::NotASubgroupChain(format!(
            "{} is not contained in {}",
            bottom.describe(group),
            middle.describe(group)
        )));
    }
    let outer = crate::group::left_transversal(group, middle);
    let inner = crate::group::left_transversal_in(group, middle, bottom)?;
    let tower = tower_transversal(group, &outer, &inner)?;
    let m = a.rows();
    let l_t = RegularRepMap::new(group, outer, m);
    let l_u = RegularRepMap::new(group, inner, l_t.output_size());
    let l_v = RegularRepMap::new(group, tower, m);
    let composite = l_u.apply(&l_t.apply(a)?)?;
    let direct = l_v.apply(a)?;
    let mut report = VerificationReport::exact(
        "tower-composition",
        group_label.to_string(),
        Some(format!("{} > {}", middle.describe(group), bottom.describe(group))),
    );
    if let Some(w) = first_difference(&direct, &composite) {
        report.fail(w);
    }
    Ok(report.timed(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;
    use crate::group::{
        cyclic, dihedral, left_transversal, left_transversal_in, subgroup_generated, symmetric,
    };
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Gm = GroupAlgebraMatrix<Rational>;
    type Ga = GroupAlgebraElement<Rational>;

    fn alpha(group: &Arc<FiniteGroup>) -> Gm {
        Gm::scalar(Ga::generic(&AlgebraContext::whole(group)))
    }

    fn s3_c3() -> (Arc<FiniteGroup>, Subgroup) {
        let g = Arc::new(symmetric(3).unwrap());
        let h = subgroup_generated(&g, &[4]);
        (g, h)
    }

    #[test]
    fn index_one_is_identity() {
        let g = Arc::new(symmetric(3).unwrap());
        let map = RegularRepMap::canonical(&g, &Subgroup::whole(&g), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Gm::random(2, 2, map.source(), 6, 2, &mut rng);
        assert_eq!(map.apply(&a).unwrap(), a);
    }

    #[test]
    fn trivial_subgroup_gives_group_matrix() {
        for g in [cyclic(4).unwrap(), symmetric(3).unwrap(), dihedral(4).unwrap()] {
            let g = Arc::new(g);
            let map = RegularRepMap::canonical(&g, &Subgroup::trivial(&g), 1);
            let a = alpha(&g);
            let l = map.apply(&a).unwrap();
            let n = g.order();
            for i in 0..n {
                for j in 0..n {
                    let entry = l.get(i, j);
                    let expected = Polynomial::var(n, g.div(i, j));
                    assert_eq!(entry.coeff(g.identity()), Some(&expected));
                    assert_eq!(entry.terms().count(), 1);
                }
            }
            assert!(map.defining_relation_holds(&a, &l).unwrap());
        }
    }

    #[test]
    fn s3_over_c3_defining_relation() {
        let (g, h) = s3_c3();
        let map = RegularRepMap::canonical(&g, &h, 1);
        let a = alpha(&g);
        let l = map.apply(&a).unwrap();
        assert_eq!((l.rows(), l.cols()), (2, 2));
        assert!(map.defining_relation_holds(&a, &l).unwrap());
        // A wrong image fails the relation.
        let mut wrong = l.clone();
        *wrong.entry_mut(0, 1) = Ga::zero(map.target(), 6);
        assert!(!map.defining_relation_holds(&a, &wrong).unwrap());
    }

    #[test]
    fn apply_errors() {
        let (g, h) = s3_c3();
        let map = RegularRepMap::canonical(&g, &h, 2);
        let ctx = AlgebraContext::whole(&g);
        let not_square = Gm::zeros(2, 3, &ctx, 6);
        assert!(matches!(map.apply(&not_square), Err(RegrepError::NotSquare(2, 3))));
        assert!(matches!(
            map.apply(&Gm::identity(3, &ctx, 6)),
            Err(RegrepError::SizeMismatch { expected: 2, got: 3 })
        ));
        let sub_ctx = AlgebraContext::of_subgroup(&g, &h);
        assert!(matches!(
            map.apply(&Gm::identity(2, &sub_ctx, 6)),
            Err(RegrepError::ContextMismatch)
        ));
    }

    #[test]
    fn identity_is_preserved() {
        let (g, h) = s3_c3();
        let map = RegularRepMap::canonical(&g, &h, 2);
        let id = Gm::identity(2, map.source(), 6);
        assert_eq!(map.apply(&id).unwrap(), Gm::identity(4, map.target(), 6));
    }

    #[test]
    fn subgroup_expansion_examples() {
        let g = Arc::new(cyclic(2).unwrap());
        let ctx = AlgebraContext::whole(&g);
        let id = Gm::identity(2, &ctx, 2);
        let e = expand_by_subgroup(&id);
        assert_eq!(e.get(0), Some(&PolyMatrix::identity(2, 2)));
        assert!(e.get(1).unwrap().is_zero());
        let a = alpha(&g);
        let e = expand_by_subgroup(&a);
        assert_eq!(e.get(0).unwrap().get(0, 0), &Polynomial::var(2, 0));
        assert_eq!(e.get(1).unwrap().get(0, 0), &Polynomial::var(2, 1));
    }

    #[test]
    fn transversal_expansion_in_c4() {
        let g = Arc::new(cyclic(4).unwrap());
        let h = Subgroup::new(&g, vec![0, 2]).unwrap();
        let t = left_transversal(&g, &h);
        let e = expand_by_transversal(&g, &alpha(&g), &t).unwrap();
        let x = |i| Polynomial::<Rational>::var(4, i);
        // A_{t0} = x_0·0 + x_2·2 and A_{t1} = x_1·0 + x_3·2.
        let a0 = e.parts()[0].get(0, 0);
        let a1 = e.parts()[1].get(0, 0);
        assert_eq!(a0.coeff(0), Some(&x(0)));
        assert_eq!(a0.coeff(2), Some(&x(2)));
        assert_eq!(a1.coeff(0), Some(&x(1)));
        assert_eq!(a1.coeff(2), Some(&x(3)));
        assert_eq!(e.reassemble().unwrap(), alpha(&g));

        let whole = Subgroup::whole(&g);
        let e = expand_by_transversal(&g, &alpha(&g), &left_transversal(&g, &whole)).unwrap();
        assert_eq!(e.parts().len(), 1);
        assert_eq!(e.parts()[0], alpha(&g));
    }

    /// Both candidate orderings of `t_i u_j`, tried against `L_U ∘ L_T`.
    #[test]
    fn tower_ordering_is_t_fastest() {
        let (g, h) = s3_c3();
        let k = Subgroup::trivial(&g);
        let outer = left_transversal(&g, &h);
        let inner = left_transversal_in(&g, &h, &k).unwrap();
        let a = alpha(&g);
        let l_t = RegularRepMap::new(&g, outer.clone(), 1);
        let l_u = RegularRepMap::new(&g, inner.clone(), 2);
        let composite = l_u.apply(&l_t.apply(&a).unwrap()).unwrap();

        let whole = Subgroup::whole(&g);
        let t_fastest: Vec<usize> = inner
            .reps()
            .iter()
            .flat_map(|&u| outer.reps().iter().map(move |&t| (t, u)))
            .map(|(t, u)| g.mul(t, u))
            .collect();
        let u_fastest: Vec<usize> = outer
            .reps()
            .iter()
            .flat_map(|&t| inner.reps().iter().map(move |&u| (t, u)))
            .map(|(t, u)| g.mul(t, u))
            .collect();
        let apply_with = |reps: Vec<usize>| {
            let v = Transversal::new(&g, &whole, &k, reps).unwrap();
            RegularRepMap::new(&g, v, 1).apply(&a).unwrap()
        };
        assert_eq!(apply_with(t_fastest.clone()), composite);
        assert_ne!(apply_with(u_fastest), composite);
        assert_eq!(tower_transversal(&g, &outer, &inner).unwrap().reps(), &t_fastest[..]);
    }

    #[test]
    fn tower_degenerate_cases() {
        let (g, h) = s3_c3();
        let outer = left_transversal(&g, &h);
        let same = left_transversal_in(&g, &h, &h).unwrap();
        assert_eq!(tower_transversal(&g, &outer, &same).unwrap().reps(), outer.reps());
        let whole = Subgroup::whole(&g);
        let top = left_transversal(&g, &whole);
        let inner = left_transversal_in(&g, &whole, &h).unwrap();
        assert_eq!(tower_transversal(&g, &top, &inner).unwrap().reps(), inner.reps());
        assert!(matches!(
            tower_transversal(&g, &inner, &inner),
            Err(RegrepError::NotASubgroupChain(_))
        ));
    }

    #[test]
    fn normal_form_examples() {
        let g = Arc::new(cyclic(4).unwrap());
        let h = Subgroup::new(&g, vec![0, 2]).unwrap();
        let r = normal_form_check(&g, &left_transversal(&g, &h), &alpha(&g), "C4").unwrap();
        assert!(r.passed, "{r}");
        let whole = Subgroup::whole(&g);
        let r = normal_form_check(&g, &left_transversal(&g, &whole), &alpha(&g), "C4").unwrap();
        assert!(r.passed);

        let (s3, c3) = s3_c3();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = Gm::random(2, 2, &AlgebraContext::whole(&s3), 6, 2, &mut rng);
        let r = normal_form_check(&s3, &left_transversal(&s3, &c3), &a, "S3").unwrap();
        assert!(r.passed, "{r}");

        let c2 = subgroup_generated(&s3, &[1]);
        assert!(matches!(
            normal_form_check(&s3, &left_transversal(&s3, &c2), &a, "S3"),
            Err(RegrepError::NotNormal(_))
        ));
    }

    #[test]
    fn quotient_structure() {
        let g = dihedral(4).unwrap();
        let center = Subgroup::new(&g, g.center()).unwrap();
        let q = QuotientGroup::new(&g, &left_transversal(&g, &center)).unwrap();
        assert_eq!(q.group().order(), 4);
        assert!(q.group().is_abelian());
        assert_eq!(q.group().order_census(), vec![1, 2, 2, 2]);
    }

    proptest! {
        #[test]
        fn regrep_is_an_injective_homomorphism(seed in 0u64..100) {
            let (g, h) = s3_c3();
            let map = RegularRepMap::canonical(&g, &h, 2);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = Gm::random(2, 2, map.source(), 6, 2, &mut rng);
            let b = Gm::random(2, 2, map.source(), 6, 2, &mut rng);
            let la = map.apply(&a).unwrap();
            let lb = map.apply(&b).unwrap();
            prop_assert_eq!(map.apply(&a.try_mul(&b).unwrap()).unwrap(), la.try_mul(&lb).unwrap());
            prop_assert_eq!(map.apply(&a.try_add(&b).unwrap()).unwrap(), la.try_add(&lb).unwrap());
            prop_assert!(map.defining_relation_holds(&a, &la).unwrap());
            if !a.is_zero() {
                prop_assert!(!la.is_zero());
            }
        }

        #[test]
        fn expansions_reassemble(seed in 0u64..100) {
            let g = Arc::new(dihedral(4).unwrap());
            let c4 = Subgroup::new(&g, vec![0, 1, 2, 3]).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ctx = AlgebraContext::whole(&g);
            let a = Gm::random(2, 2, &ctx, 8, 3, &mut rng);
            let t = left_transversal(&g, &c4);
            let e = expand_by_transversal(&g, &a, &t).unwrap();
            prop_assert_eq!(e.reassemble().unwrap(), a.clone());
            let sub = map_to_subgroup(&g, &c4, &a);
            prop_assert_eq!(expand_by_subgroup(&sub).reassemble(), sub);
        }
    }

    fn map_to_subgroup(g: &Arc<FiniteGroup>, h: &Subgroup, a: &Gm) -> Gm {
        RegularRepMap::canonical(g, h, a.rows()).apply(a).unwrap()
    }
}
