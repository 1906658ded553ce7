use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use rand::Rng;

use super::matrix::{det_by_minors, DetRing, PolyMatrix};
use super::poly::Polynomial;
use super::scalar::Coeff;
use super::AlgebraError;
use crate::config::SYMBOLIC_DET_CAP;
use crate::group::{FiniteGroup, Subgroup};

/// The group whose algebra an element lives in: a subgroup of an ambient
/// group, multiplied through the ambient Cayley table.
#[derive(Clone, Debug)]
pub struct AlgebraContext {
    group: Arc<FiniteGroup>,
    members: Arc<Subgroup>,
}

impl AlgebraContext {
    /// The algebra of the whole group.
    pub fn whole(group: &Arc<FiniteGroup>) -> Self {
        Self {
            group: Arc::clone(group),
            members: Arc::new(Subgroup::whole(group)),
        }
    }

    pub fn of_subgroup(group: &Arc<FiniteGroup>, sub: &Subgroup) -> Self {
        Self {
            group: Arc::clone(group),
            members: Arc::new(sub.clone()),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn members(&self) -> &Subgroup {
        &self.members
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(g)
    }

    pub fn is_commutative(&self) -> bool {
        let m = self.members.elements();
        m.iter()
            .all(|&a| m.iter().all(|&b| self.group.mul(a, b) == self.group.mul(b, a)))
    }

    fn same_group(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group
    }

    /// Whether `self` is the algebra of a subgroup of `other`'s group.
    pub fn embeds_in(&self, other: &Self) -> bool {
        self.same_group(other) && self.members.is_subgroup_of(&other.members)
    }
}

impl PartialEq for AlgebraContext {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other) && self.members == other.members
    }
}

/// An element `Σ c_g g` of a group algebra over polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraElement<C: Coeff> {
    ctx: AlgebraContext,
    nvars: usize,
    terms: BTreeMap<usize, Polynomial<C>>,
}

impl<C: Coeff> GroupAlgebraElement<C> {
    pub fn zero(ctx: &AlgebraContext, nvars: usize) -> Self {
        Self {
            ctx: ctx.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// `1·e`.
    pub fn one(ctx: &AlgebraContext, nvars: usize) -> Self {
        Self::basis(ctx, nvars, ctx.group.identity(), Polynomial::one(nvars))
    }

    /// `c·g`.
    pub fn basis(ctx: &AlgebraContext, nvars: usize, g: usize, c: Polynomial<C>) -> Self {
        let mut out = Self::zero(ctx, nvars);
        out.add_term(g, &c);
        out
    }

    /// `Σ_g x_g g` over the whole group, with one variable per element.
    pub fn generic(ctx: &AlgebraContext) -> Self {
        let n = ctx.group.order();
        let mut out = Self::zero(ctx, n);
        for &g in ctx.members.elements() {
            out.add_term(g, &Polynomial::var(n, g));
        }
        out
    }

    pub fn context(&self) -> &AlgebraContext {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero `(g, c_g)` pairs in element order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Polynomial<C>)> {
        self.terms.iter().map(|(&g, c)| (g, c))
    }

    pub fn coeff(&self, g: usize) -> Option<&Polynomial<C>> {
        self.terms.get(&g)
    }

    /// Adds `c·g`; panics if `g` is outside the context.
    pub fn add_term(&mut self, g: usize, c: &Polynomial<C>) {
        assert!(self.ctx.contains(g), "element {g} is outside the algebra context");
        assert_eq!(c.nvars(), self.nvars, "coefficient has the wrong universe");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&g) {
            Some(existing) => {
                existing.add_assign_ref(c);
                if existing.is_zero() {
                    self.terms.remove(&g);
                }
            }
            None => {
                self.terms.insert(g, c.clone());
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.ctx != other.ctx {
            return Err(AlgebraError::ContextMismatch);
        }
        if self.nvars != other.nvars {
            return Err(AlgebraError::UniverseMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, &-c);
        }
        Ok(out)
    }

    /// Convolution: the coefficient of `k` is `Σ_{g·h = k} a_g b_h`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (g, a) in self.terms() {
            for (h, b) in other.terms() {
                out.add_term(self.ctx.group.mul(g, h), &(a * b));
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by the polynomial `p`.
    pub fn scale(&self, p: &Polynomial<C>) -> Self {
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (g, c) in self.terms() {
            out.add_term(g, &(c * p));
        }
        out
    }

    /// `g·self` for an element `g` of the context.
    pub fn left_mul_element(&self, g: usize) -> Self {
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (h, c) in self.terms() {
            out.add_term(self.ctx.group.mul(g, h), c);
        }
        out
    }

    /// `self·g` for an element `g` of the context.
    pub fn right_mul_element(&self, g: usize) -> Self {
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (h, c) in self.terms() {
            out.add_term(self.ctx.group.mul(h, g), c);
        }
        out
    }

    /// Sum of the coefficients (the one-by-one flattening map).
    pub fn augmentation(&self) -> Polynomial<C> {
        let mut out = Polynomial::zero(self.nvars);
        for c in self.terms.values() {
            out.add_assign_ref(c);
        }
        out
    }

    /// The same element viewed in a larger algebra of the same group.
    pub fn embed(&self, ctx: &AlgebraContext) -> Result<Self, AlgebraError> {
        if !self.ctx.embeds_in(ctx) {
            return Err(AlgebraError::ContextMismatch);
        }
        Ok(Self {
            ctx: ctx.clone(),
            ..self.clone()
        })
    }

    /// Moves the element into `ctx`, which must contain every support element.
    pub fn restrict(&self, ctx: &AlgebraContext) -> Result<Self, AlgebraError> {
        if !self.ctx.same_group(ctx) || self.terms.keys().any(|&g| !ctx.contains(g)) {
            return Err(AlgebraError::ContextMismatch);
        }
        Ok(Self {
            ctx: ctx.clone(),
            ..self.clone()
        })
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D + Copy) -> GroupAlgebraElement<D> {
        GroupAlgebraElement {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(&g, c)| (g, c.map_coeffs(f)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

impl<C: Coeff> fmt::Display for GroupAlgebraElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let names = self.ctx.group.names();
        let parts: Vec<String> = self
            .terms()
            .map(|(g, c)| format!("({})·{}", c.display_with(names), names[g]))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<C: Coeff> Add for &GroupAlgebraElement<C> {
    type Output = GroupAlgebraElement<C>;

    fn add(self, rhs: Self) -> GroupAlgebraElement<C> {
        self.try_add(rhs).expect("group algebra contexts differ")
    }
}

impl<C: Coeff> Mul for &GroupAlgebraElement<C> {
    type Output = GroupAlgebraElement<C>;

    fn mul(self, rhs: Self) -> GroupAlgebraElement<C> {
        self.try_mul(rhs).expect("group algebra contexts differ")
    }
}

impl<C: Coeff> DetRing for GroupAlgebraElement<C> {
    fn is_zero(&self) -> bool {
        GroupAlgebraElement::is_zero(self)
    }

    fn zero_like(&self) -> Self {
        Self::zero(&self.ctx, self.nvars)
    }

    fn one_like(&self) -> Self {
        Self::one(&self.ctx, self.nvars)
    }

    fn mul_ring(&self, other: &Self) -> Self {
        self * other
    }

    fn add_ring(&mut self, other: &Self) {
        for (g, c) in other.terms() {
            self.add_term(g, c);
        }
    }

    fn sub_ring(&mut self, other: &Self) {
        for (g, c) in other.terms() {
            self.add_term(g, &-c);
        }
    }
}

/// A dense matrix over a group algebra. All entries share one context.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraMatrix<C: Coeff> {
    rows: usize,
    cols: usize,
    ctx: AlgebraContext,
    nvars: usize,
    data: Vec<GroupAlgebraElement<C>>,
}

impl<C: Coeff> GroupAlgebraMatrix<C> {
    pub fn zeros(rows: usize, cols: usize, ctx: &AlgebraContext, nvars: usize) -> Self {
        Self {
            rows,
            cols,
            ctx: ctx.clone(),
            nvars,
            data: vec![GroupAlgebraElement::zero(ctx, nvars); rows * cols],
        }
    }

    /// `1·e` on the diagonal.
    pub fn identity(n: usize, ctx: &AlgebraContext, nvars: usize) -> Self {
        let mut m = Self::zeros(n, n, ctx, nvars);
        for i in 0..n {
            m.data[i * n + i] = GroupAlgebraElement::one(ctx, nvars);
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        ctx: &AlgebraContext,
        nvars: usize,
        mut f: impl FnMut(usize, usize) -> GroupAlgebraElement<C>,
    ) -> Self {
        let mut m = Self::zeros(rows, cols, ctx, nvars);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// The `1 × 1` matrix `[a]`.
    pub fn scalar(a: GroupAlgebraElement<C>) -> Self {
        Self {
            rows: 1,
            cols: 1,
            ctx: a.ctx.clone(),
            nvars: a.nvars,
            data: vec![a],
        }
    }

    /// Diagonal matrix with `g_i · I_block` in block `i`.
    pub fn block_diagonal_elements(
        elements: &[usize],
        block: usize,
        ctx: &AlgebraContext,
        nvars: usize,
    ) -> Self {
        let n = elements.len() * block;
        let mut m = Self::zeros(n, n, ctx, nvars);
        for (b, &g) in elements.iter().enumerate() {
            for k in 0..block {
                let i = b * block + k;
                m.set(i, i, GroupAlgebraElement::basis(ctx, nvars, g, Polynomial::one(nvars)));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn context(&self) -> &AlgebraContext {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupAlgebraElement<C> {
        &self.data[i * self.cols + j]
    }

    /// Replaces an entry; panics if its context or universe differs.
    pub fn set(&mut self, i: usize, j: usize, a: GroupAlgebraElement<C>) {
        assert!(a.ctx == self.ctx, "entry context differs from the matrix context");
        assert_eq!(a.nvars, self.nvars, "entry has the wrong universe");
        self.data[i * self.cols + j] = a;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut GroupAlgebraElement<C> {
        &mut self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &GroupAlgebraElement<C>)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, a)| (k / self.cols, k % self.cols, a))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GroupAlgebraElement::is_zero)
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.ctx != other.ctx {
            return Err(AlgebraError::ContextMismatch);
        }
        if self.nvars != other.nvars {
            return Err(AlgebraError::UniverseMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(AlgebraError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.add_ring(b);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        if self.cols != other.rows {
            return Err(AlgebraError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols, &self.ctx, self.nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let prod = a * b;
                        out.entry_mut(i, j).add_ring(&prod);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `g·A`, entrywise.
    pub fn left_mul_element(&self, g: usize) -> Self {
        Self {
            data: self.data.iter().map(|a| a.left_mul_element(g)).collect(),
            ..self.clone()
        }
    }

    /// Kronecker product `L ⊗ A` of a polynomial matrix with this matrix:
    /// block `(i, j)` is `L[i][j]·A`.
    pub fn kron_left(&self, left: &PolyMatrix<C>) -> Result<Self, AlgebraError> {
        if left.nvars() != self.nvars {
            return Err(AlgebraError::UniverseMismatch(left.nvars(), self.nvars));
        }
        let (r, c) = (self.rows, self.cols);
        Ok(Self::from_fn(
            left.rows() * r,
            left.cols() * c,
            &self.ctx,
            self.nvars,
            |i, j| {
                let l = left.get(i / r, j / c);
                if l.is_zero() {
                    GroupAlgebraElement::zero(&self.ctx, self.nvars)
                } else {
                    self.get(i % r, j % c).scale(l)
                }
            },
        ))
    }

    /// The flattening map: each entry replaced by the sum of its coefficients.
    pub fn flatten(&self) -> PolyMatrix<C> {
        PolyMatrix::from_fn(self.rows, self.cols, self.nvars, |i, j| {
            self.get(i, j).augmentation()
        })
    }

    /// The coefficient matrix of one group element.
    pub fn coefficient_matrix(&self, g: usize) -> PolyMatrix<C> {
        PolyMatrix::from_fn(self.rows, self.cols, self.nvars, |i, j| {
            self.get(i, j)
                .coeff(g)
                .cloned()
                .unwrap_or_else(|| Polynomial::zero(self.nvars))
        })
    }

    /// Views every entry in a larger algebra of the same group.
    pub fn embed(&self, ctx: &AlgebraContext) -> Result<Self, AlgebraError> {
        if !self.ctx.embeds_in(ctx) {
            return Err(AlgebraError::ContextMismatch);
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            ctx: ctx.clone(),
            nvars: self.nvars,
            data: self
                .data
                .iter()
                .map(|a| a.embed(ctx))
                .collect::<Result<_, _>>()?,
        })
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D + Copy) -> GroupAlgebraMatrix<D> {
        GroupAlgebraMatrix {
            rows: self.rows,
            cols: self.cols,
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            data: self.data.iter().map(|a| a.map_coeffs(f)).collect(),
        }
    }

    /// Determinant over a commutative group algebra.
    pub fn det_commutative(&self) -> Result<GroupAlgebraElement<C>, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.rows, self.cols));
        }
        if !self.ctx.is_commutative() {
            return Err(AlgebraError::NonCommutativeContext);
        }
        if self.rows > SYMBOLIC_DET_CAP {
            return Err(AlgebraError::DimensionTooLarge {
                dim: self.rows,
                cap: SYMBOLIC_DET_CAP,
            });
        }
        let unit = GroupAlgebraElement::one(&self.ctx, self.nvars);
        Ok(det_by_minors(self.rows, |i, j| self.get(i, j).clone(), &unit))
    }

    /// Random matrix whose entries are sums of `terms` products
    /// `c · x_v · g` with `c ∈ [-3, 3] \ {0}`, `x_v` a random variable and
    /// `g` a random element of the context.
    pub fn random(
        rows: usize,
        cols: usize,
        ctx: &AlgebraContext,
        nvars: usize,
        terms: usize,
        rng: &mut impl Rng,
    ) -> Self {
        let members = ctx.members().elements().to_vec();
        Self::from_fn(rows, cols, ctx, nvars, |_, _| {
            let mut a = GroupAlgebraElement::zero(ctx, nvars);
            for _ in 0..terms {
                let mut c = rng.random_range(1..=3i64);
                if rng.random_bool(0.5) {
                    c = -c;
                }
                let v = rng.random_range(0..nvars);
                let g = members[rng.random_range(0..members.len())];
                a.add_term(g, &Polynomial::var(nvars, v).scale(&C::from_i64(c)));
            }
            a
        })
    }
}

impl<C: Coeff> fmt::Display for GroupAlgebraMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
