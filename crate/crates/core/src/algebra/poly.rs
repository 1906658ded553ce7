use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::scalar::{Coeff, TermRecord};
use super::AlgebraError;

/// Exponent vector over a fixed variable universe.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the first variable, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars].into_boxed_slice())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self(e.into_boxed_slice())
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Self(exponents.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in the variables `x_0 … x_{n-1}`, one per group
/// element. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C: Coeff> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The variable `x_index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable {index} outside universe of {nvars}");
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, index), C::one());
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, C)>,
    ) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(AlgebraError::UniverseMismatch(nvars, exps.len()));
            }
            p.add_term(Monomial::from_exponents(exps), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    /// Coefficient of the constant term, if any.
    pub fn constant_term(&self) -> C {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Largest total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            Some(d) => degrees.all(|e| e == d),
            None => true,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if c.negligible() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add_ref(&c);
                if sum.negligible() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_universe(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(AlgebraError::UniverseMismatch(self.nvars, other.nvars))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_universe(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_universe(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg_ref());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_universe(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let mut acc: HashMap<Monomial, C> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca.mul_ref(cb);
                acc.entry(ma.mul(mb))
                    .and_modify(|c| *c = c.add_ref(&prod))
                    .or_insert(prod);
            }
        }
        Ok(Self {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.negligible()).collect(),
        })
    }

    /// In-place `self += other`; panics on a universe mismatch.
    pub fn add_assign_ref(&mut self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomial universes differ");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.mul_ref(c));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Evaluates at a total assignment `x_i = point[i]`.
    pub fn eval(&self, point: &[C]) -> Result<C, AlgebraError> {
        if point.len() != self.nvars {
            return Err(AlgebraError::UniverseMismatch(self.nvars, point.len()));
        }
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    v = v.mul_ref(x);
                }
            }
            total = total.add_ref(&v);
        }
        Ok(total)
    }

    /// Evaluates at a complex point, whatever the coefficient mode.
    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars, "assignment is not total");
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = c.to_complex();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= x.powu(e);
                }
            }
            total += v;
        }
        total
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn to_complex(&self) -> Polynomial<Complex64> {
        self.map_coeffs(Coeff::to_complex)
    }

    /// `{exponents, num, den}` or `{exponents, re, im}` records.
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| c.term_record(m.exponents().to_vec()))
            .collect()
    }

    pub fn from_records(nvars: usize, records: &[TermRecord]) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(nvars);
        for r in records {
            if r.exponents().len() != nvars {
                return Err(AlgebraError::UniverseMismatch(nvars, r.exponents().len()));
            }
            let c = C::from_scalar(&r.scalar()?)?;
            p.add_term(Monomial::from_exponents(r.exponents().to_vec()), c);
        }
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_records()).expect("records serialize")
    }

    pub fn from_json(nvars: usize, text: &str) -> Result<Self, AlgebraError> {
        let records: Vec<TermRecord> =
            serde_json::from_str(text).map_err(|e| AlgebraError::Parse(e.to_string()))?;
        Self::from_records(nvars, &records)
    }

    /// Display with variables printed as `x[name]`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> NamedPolynomial<'a, C> {
        NamedPolynomial { poly: self, names }
    }

    fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let bare = m.degree() == 0;
            c.write_coeff(&mut out, k == 0, bare);
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x[{}]", name(i))
                    } else {
                        format!("x[{}]^{e}", name(i))
                    }
                })
                .collect();
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|i| i.to_string()))
    }
}

pub struct NamedPolynomial<'a, C: Coeff> {
    poly: &'a Polynomial<C>,
    names: &'a [String],
}

impl<C: Coeff> fmt::Display for NamedPolynomial<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.render(&|i| {
            self.names.get(i).cloned().unwrap_or_else(|| i.to_string())
        }))
    }
}

impl<C: Coeff> Add for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(self, rhs: Self) -> Polynomial<C> {
        self.try_add(rhs).expect("polynomial universes differ")
    }
}

impl<C: Coeff> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.try_sub(rhs).expect("polynomial universes differ")
    }
}

impl<C: Coeff> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.try_mul(rhs).expect("polynomial universes differ")
    }
}

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        self.map_coeffs(Coeff::neg_ref)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Q = BigRational;

    fn q(v: i64) -> Q {
        Q::from_integer(v.into())
    }

    fn x(i: usize) -> Polynomial<Q> {
        Polynomial::var(2, i)
    }

    fn names() -> Vec<String> {
        vec!["e".into(), "a".into()]
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        assert_eq!(p.display_with(&names()).to_string(), "x[e]^2 - x[a]^2");
        assert_eq!(p.eval(&[q(3), q(1)]).unwrap(), q(8));
    }

    #[test]
    fn display_forms() {
        let p = Polynomial::from_terms(
            2,
            vec![(vec![1, 1], q(-3)), (vec![0, 0], q(5)), (vec![2, 0], Q::new(1.into(), 2.into()))],
        )
        .unwrap();
        assert_eq!(p.display_with(&names()).to_string(), "1/2*x[e]^2 - 3*x[e]*x[a] + 5");
        assert_eq!(Polynomial::<Q>::zero(2).to_string(), "0");
        let neg = -&x(1);
        assert_eq!(neg.to_string(), "-x[1]");
    }

    #[test]
    fn universe_mismatch() {
        let a = Polynomial::<Q>::var(2, 0);
        let b = Polynomial::<Q>::var(3, 0);
        assert!(matches!(a.try_add(&b), Err(AlgebraError::UniverseMismatch(2, 3))));
        assert!(matches!(a.try_mul(&b), Err(AlgebraError::UniverseMismatch(2, 3))));
        assert!(a.eval(&[q(1)]).is_err());
    }

    #[test]
    fn complex_pruning() {
        let a = Polynomial::<Complex64>::constant(1, Complex64::new(1.0, 0.0));
        let b = Polynomial::<Complex64>::constant(1, Complex64::new(-1.0 + 1e-14, 0.0));
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn json_round_trip_and_mode_check() {
        let p = &(&x(0) + &x(1)).pow(3) - &Polynomial::constant(2, Q::new(7.into(), 3.into()));
        let text = p.to_json();
        assert_eq!(Polynomial::<Q>::from_json(2, &text).unwrap(), p);
        assert!(matches!(
            Polynomial::<Complex64>::from_json(2, &text),
            Err(AlgebraError::ModeMismatch(..))
        ));
        let c = p.to_complex();
        assert_eq!(Polynomial::<Complex64>::from_json(2, &c.to_json()).unwrap(), c);
    }

    #[test]
    fn integer_points_evaluate_exactly() {
        // (x0 + x1)^20 at (10^6, 1) needs more than 64 bits.
        let p = (&x(0) + &x(1)).pow(20);
        let v = p.eval(&[q(1_000_000), q(1)]).unwrap();
        let expected = num_bigint::BigInt::from(1_000_001).pow(20);
        assert_eq!(v, Q::from_integer(expected));
    }

    #[test]
    fn homogeneity() {
        let p = (&x(0) + &x(1)).pow(4);
        assert!(p.is_homogeneous());
        assert_eq!(p.total_degree(), Some(4));
        assert!(!(&p + &Polynomial::one(2)).is_homogeneous());
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = Polynomial<Q>> {
        prop::collection::vec(
            (prop::collection::vec(0u32..3, nvars), -5i64..=5),
            0..=5,
        )
        .prop_map(move |terms| {
            Polynomial::from_terms(nvars, terms.into_iter().map(|(e, c)| (e, q(c)))).unwrap()
        })
    }

    fn arb_point(nvars: usize) -> impl Strategy<Value = Vec<Q>> {
        prop::collection::vec((-6i64..=6).prop_map(q), nvars)
    }

    proptest! {
        #[test]
        fn eval_is_a_ring_homomorphism(
            p in arb_poly(3),
            r in arb_poly(3),
            points in prop::collection::vec(arb_point(3), 10),
        ) {
            let prod = &p * &r;
            let sum = &p + &r;
            for pt in &points {
                // Independent evaluation: expand each term by hand.
                let eval = |poly: &Polynomial<Q>| -> Q {
                    poly.terms().fold(q(0), |acc, (m, c)| {
                        let mut v = c.clone();
                        for (i, &e) in m.exponents().iter().enumerate() {
                            for _ in 0..e { v *= &pt[i]; }
                        }
                        acc + v
                    })
                };
                prop_assert_eq!(prod.eval(pt).unwrap(), eval(&p) * eval(&r));
                prop_assert_eq!(sum.eval(pt).unwrap(), eval(&p) + eval(&r));
            }
        }

        #[test]
        fn ring_axioms(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }
    }
}
