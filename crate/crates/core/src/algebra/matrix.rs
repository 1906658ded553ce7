use nalgebra::DMatrix;
use num_complex::Complex64;

use super::poly::Polynomial;
use super::scalar::Coeff;
use super::AlgebraError;
use crate::config::SYMBOLIC_DET_CAP;

/// Dense complex matrix used on every numeric path.
pub type CMatrix = DMatrix<Complex64>;

/// Dense matrix of polynomials sharing one variable universe.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<C: Coeff> {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<Polynomial<C>>,
}

impl<C: Coeff> PolyMatrix<C> {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        Self {
            rows,
            cols,
            nvars,
            data: vec![Polynomial::zero(nvars); rows * cols],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        Self::from_fn(n, n, nvars, |i, j| {
            if i == j {
                Polynomial::one(nvars)
            } else {
                Polynomial::zero(nvars)
            }
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        nvars: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial<C>,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let p = f(i, j);
                assert_eq!(p.nvars(), nvars, "entry ({i}, {j}) has the wrong universe");
                data.push(p);
            }
        }
        Self {
            rows,
            cols,
            nvars,
            data,
        }
    }

    /// A matrix of constants.
    pub fn from_constants(m: &DMatrix<C>, nvars: usize) -> Self
    where
        C: nalgebra::Scalar,
    {
        Self::from_fn(m.nrows(), m.ncols(), nvars, |i, j| {
            Polynomial::constant(nvars, m[(i, j)].clone())
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<C> {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Polynomial<C> {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial<C>) {
        assert_eq!(p.nvars(), self.nvars, "entry has the wrong universe");
        self.data[i * self.cols + j] = p;
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(AlgebraError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        if self.nvars != other.nvars {
            return Err(AlgebraError::UniverseMismatch(self.nvars, other.nvars));
        }
        Ok(Self {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
            ..*self
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        if self.nvars != other.nvars {
            return Err(AlgebraError::UniverseMismatch(self.nvars, other.nvars));
        }
        Ok(Self::from_fn(self.rows, other.cols, self.nvars, |i, j| {
            let mut acc = Polynomial::zero(self.nvars);
            for k in 0..self.cols {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc.add_assign_ref(&(a * b));
                }
            }
            acc
        }))
    }

    /// `[a_ij · other]` blocks, shape `(m1·m2) × (n1·n2)`.
    pub fn kron(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::UniverseMismatch(self.nvars, other.nvars));
        }
        let (r2, c2) = (other.rows, other.cols);
        Ok(Self::from_fn(self.rows * r2, self.cols * c2, self.nvars, |i, j| {
            let a = self.get(i / r2, j / c2);
            let b = other.get(i % r2, j % c2);
            if a.is_zero() || b.is_zero() {
                Polynomial::zero(self.nvars)
            } else {
                a * b
            }
        }))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D + Copy) -> PolyMatrix<D> {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            data: self.data.iter().map(|p| p.map_coeffs(f)).collect(),
        }
    }

    pub fn to_complex(&self) -> PolyMatrix<Complex64> {
        self.map_coeffs(Coeff::to_complex)
    }

    /// Entrywise evaluation at a complex point.
    pub fn eval_complex(&self, point: &[Complex64]) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval_complex(point))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Polynomial::is_zero)
    }

    /// Exact determinant by memoized minor expansion.
    pub fn det(&self) -> Result<Polynomial<C>, AlgebraError> {
        det_poly(self)
    }
}

/// Minimal ring interface needed by the minor-expansion determinant.
pub trait DetRing: Clone {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn mul_ring(&self, other: &Self) -> Self;
    fn add_ring(&mut self, other: &Self);
    fn sub_ring(&mut self, other: &Self);
}

impl<C: Coeff> DetRing for Polynomial<C> {
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }

    fn zero_like(&self) -> Self {
        Polynomial::zero(self.nvars())
    }

    fn one_like(&self) -> Self {
        Polynomial::one(self.nvars())
    }

    fn mul_ring(&self, other: &Self) -> Self {
        self * other
    }

    fn add_ring(&mut self, other: &Self) {
        self.add_assign_ref(other);
    }

    fn sub_ring(&mut self, other: &Self) {
        *self = &*self - other;
    }
}

/// Division-free determinant of an `n × n` matrix over a commutative ring.
///
/// `minors[mask]` is the determinant of the first `popcount(mask)` rows
/// restricted to the columns in `mask`; each is obtained from the smaller
/// ones by expanding along its last row. `O(2^n · n)` ring multiplications.
pub fn det_by_minors<R: DetRing>(n: usize, entry: impl Fn(usize, usize) -> R, unit: &R) -> R {
    if n == 0 {
        return unit.one_like();
    }
    let full = (1usize << n) - 1;
    let mut minors: Vec<Option<R>> = vec![None; full + 1];
    minors[0] = Some(unit.one_like());
    for mask in 1..=full {
        let row = mask.count_ones() as usize - 1;
        let mut acc = unit.zero_like();
        let mut pos = 0;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let sub = &minors[mask ^ (1 << col)];
            let a = entry(row, col);
            if let Some(sub) = sub {
                if !a.is_zero() && !sub.is_zero() {
                    let term = a.mul_ring(sub);
                    if (row + pos) % 2 == 0 {
                        acc.add_ring(&term);
                    } else {
                        acc.sub_ring(&term);
                    }
                }
            }
            pos += 1;
        }
        minors[mask] = Some(acc);
    }
    minors[full].take().expect("full minor computed")
}

/// Symbolic determinant of a square polynomial matrix.
pub fn det_poly<C: Coeff>(m: &PolyMatrix<C>) -> Result<Polynomial<C>, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::NotSquare(m.rows(), m.cols()));
    }
    if m.rows() > SYMBOLIC_DET_CAP {
        return Err(AlgebraError::DimensionTooLarge {
            dim: m.rows(),
            cap: SYMBOLIC_DET_CAP,
        });
    }
    let unit = Polynomial::one(m.nvars());
    Ok(det_by_minors(m.rows(), |i, j| m.get(i, j).clone(), &unit))
}

/// Determinant by LU factorization with partial pivoting.
pub fn det_numeric(m: &CMatrix) -> Complex64 {
    assert!(m.is_square(), "determinant of a non-square matrix");
    m.clone().lu().determinant()
}

/// Kronecker product of complex matrices.
pub fn kron_numeric(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (r2, c2) = (b.nrows(), b.ncols());
    CMatrix::from_fn(a.nrows() * r2, a.ncols() * c2, |i, j| {
        a[(i / r2, j / c2)] * b[(i % r2, j % c2)]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type Q = BigRational;

    fn q(v: i64) -> Q {
        Q::from_integer(v.into())
    }

    /// Leibniz sum over all permutations; the independent oracle.
    fn leibniz(m: &PolyMatrix<Q>) -> Polynomial<Q> {
        let n = m.rows();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = Polynomial::zero(m.nvars());
        fn heap(
            k: usize,
            perm: &mut Vec<usize>,
            m: &PolyMatrix<Q>,
            total: &mut Polynomial<Q>,
        ) {
            if k == 1 {
                let mut inversions = 0;
                for i in 0..perm.len() {
                    for j in i + 1..perm.len() {
                        if perm[i] > perm[j] {
                            inversions += 1;
                        }
                    }
                }
                let mut term = Polynomial::one(m.nvars());
                for (i, &j) in perm.iter().enumerate() {
                    term = &term * m.get(i, j);
                }
                if inversions % 2 == 1 {
                    term = -&term;
                }
                total.add_assign_ref(&term);
                return;
            }
            for i in 0..k {
                heap(k - 1, perm, m, total);
                if k % 2 == 0 {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
            }
        }
        heap(n, &mut perm, m, &mut total);
        total
    }

    fn random_poly_matrix(n: usize, nvars: usize, rng: &mut ChaCha8Rng) -> PolyMatrix<Q> {
        PolyMatrix::from_fn(n, n, nvars, |_, _| {
            let mut p = Polynomial::zero(nvars);
            for _ in 0..rng.random_range(0..3) {
                let v = rng.random_range(0..nvars);
                let c = rng.random_range(-3i64..=3);
                p.add_assign_ref(&Polynomial::var(nvars, v).scale(&q(c)));
            }
            if rng.random_bool(0.3) {
                p.add_assign_ref(&Polynomial::constant(nvars, q(rng.random_range(-2..=2))));
            }
            p
        })
    }

    #[test]
    fn small_determinants() {
        let p = Polynomial::<Q>::var(3, 2);
        let m = PolyMatrix::from_fn(1, 1, 3, |_, _| p.clone());
        assert_eq!(det_poly(&m).unwrap(), p);

        let x = |i| Polynomial::<Q>::var(2, i);
        let m = PolyMatrix::from_fn(2, 2, 2, |i, j| x(usize::from(i != j)));
        let expected = &x(0).pow(2) - &x(1).pow(2);
        assert_eq!(det_poly(&m).unwrap(), expected);
    }

    #[test]
    fn minors_agree_with_leibniz() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=5 {
            for _ in 0..4 {
                let m = random_poly_matrix(n, 3, &mut rng);
                assert_eq!(det_poly(&m).unwrap(), leibniz(&m), "n = {n}");
            }
        }
    }

    #[test]
    fn det_errors() {
        let m = PolyMatrix::<Q>::zeros(2, 3, 1);
        assert!(matches!(det_poly(&m), Err(AlgebraError::NotSquare(2, 3))));
        let big = PolyMatrix::<Q>::identity(13, 1);
        assert!(matches!(
            det_poly(&big),
            Err(AlgebraError::DimensionTooLarge { dim: 13, cap: 12 })
        ));
        assert_eq!(det_poly(&PolyMatrix::<Q>::identity(12, 1)).unwrap(), Polynomial::one(1));
    }

    #[test]
    fn numeric_determinants() {
        assert_eq!(det_numeric(&CMatrix::identity(4, 4)), Complex64::new(1.0, 0.0));
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(3.0, 0.0),
        ]));
        assert_eq!(det_numeric(&d), Complex64::new(6.0, 0.0));
        assert_eq!(det_numeric(&CMatrix::zeros(3, 3)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn numeric_agrees_with_symbolic_lift() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let ints: Vec<i64> = (0..36).map(|_| rng.random_range(-9..=9)).collect();
            let exact = PolyMatrix::from_fn(6, 6, 1, |i, j| {
                Polynomial::constant(1, q(ints[i * 6 + j]))
            });
            let numeric =
                CMatrix::from_fn(6, 6, |i, j| Complex64::new(ints[i * 6 + j] as f64, 0.0));
            let sym = det_poly(&exact).unwrap().constant_term();
            let num = det_numeric(&numeric);
            let expected = Coeff::to_complex(&sym);
            let scale = expected.norm().max(1.0);
            assert!((num - expected).norm() / scale < 1e-9, "{num} vs {expected}");
        }
    }

    #[test]
    fn kron_examples() {
        let eye = |n| PolyMatrix::<Q>::identity(n, 1);
        assert_eq!(eye(2).kron(&eye(3)).unwrap(), eye(6));
        let swap = PolyMatrix::from_fn(2, 2, 1, |i, j| {
            Polynomial::constant(1, q(i64::from(i != j)))
        });
        let two = PolyMatrix::from_fn(1, 1, 1, |_, _| Polynomial::constant(1, q(2)));
        let expected = PolyMatrix::from_fn(2, 2, 1, |i, j| {
            Polynomial::constant(1, q(2 * i64::from(i != j)))
        });
        assert_eq!(swap.kron(&two).unwrap(), expected);
    }

    fn arb_cmatrix(r: usize, c: usize) -> impl Strategy<Value = CMatrix> {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), r * c).prop_map(move |v| {
            CMatrix::from_fn(r, c, |i, j| Complex64::new(v[i * c + j].0, v[i * c + j].1))
        })
    }

    proptest! {
        #[test]
        fn mixed_product_numeric(
            a in arb_cmatrix(2, 3), b in arb_cmatrix(2, 2),
            c in arb_cmatrix(3, 2), d in arb_cmatrix(2, 1),
        ) {
            let lhs = kron_numeric(&a, &b) * kron_numeric(&c, &d);
            let rhs = kron_numeric(&(&a * &c), &(&b * &d));
            prop_assert!((lhs - rhs).camax() < 1e-12);
        }

        #[test]
        fn mixed_product_symbolic(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_poly_matrix(2, 2, &mut rng);
            let b = random_poly_matrix(2, 2, &mut rng);
            let c = random_poly_matrix(2, 2, &mut rng);
            let d = random_poly_matrix(2, 2, &mut rng);
            let lhs = a.kron(&b).unwrap().try_mul(&c.kron(&d).unwrap()).unwrap();
            let rhs = a.try_mul(&c).unwrap().kron(&b.try_mul(&d).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
