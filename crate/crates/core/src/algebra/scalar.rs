use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::AlgebraError;
use crate::config::DEFAULT_PRUNE_EPS;

/// Which coefficient field a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarMode {
    ExactRational,
    ComplexFloat,
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarMode::ExactRational => "exact-rational",
            ScalarMode::ComplexFloat => "complex-float",
        })
    }
}

/// A coefficient of either mode, for code that handles both at runtime.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(BigRational),
    Complex(Complex64),
}

impl Scalar {
    pub fn mode(&self) -> ScalarMode {
        match self {
            Scalar::Rational(_) => ScalarMode::ExactRational,
            Scalar::Complex(_) => ScalarMode::ComplexFloat,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Rational(r) => rational_to_f64(r).into(),
            Scalar::Complex(c) => *c,
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Complex(a), Scalar::Complex(b)) => Ok(Scalar::Complex(a + b)),
            _ => Err(AlgebraError::ModeMismatch(self.mode(), other.mode())),
        }
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Complex(a), Scalar::Complex(b)) => Ok(Scalar::Complex(a * b)),
            _ => Err(AlgebraError::ModeMismatch(self.mode(), other.mode())),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Complex(c) => write!(f, "{}", format_complex(*c)),
        }
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerator and denominator: divide after scaling down.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

fn format_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else {
        format!("({}{:+}i)", c.re, c.im)
    }
}

/// One term of the JSON polynomial encoding.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TermRecord {
    Rational {
        exponents: Vec<u32>,
        num: String,
        den: String,
    },
    Complex {
        exponents: Vec<u32>,
        re: f64,
        im: f64,
    },
}

impl TermRecord {
    pub fn exponents(&self) -> &[u32] {
        match self {
            TermRecord::Rational { exponents, .. } | TermRecord::Complex { exponents, .. } => {
                exponents
            }
        }
    }

    pub fn scalar(&self) -> Result<Scalar, AlgebraError> {
        match self {
            TermRecord::Rational { num, den, .. } => {
                let num: BigInt = num
                    .parse()
                    .map_err(|_| AlgebraError::Parse(format!("bad numerator {num:?}")))?;
                let den: BigInt = den
                    .parse()
                    .map_err(|_| AlgebraError::Parse(format!("bad denominator {den:?}")))?;
                if den.is_zero() {
                    return Err(AlgebraError::Parse("zero denominator".into()));
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            TermRecord::Complex { re, im, .. } => Ok(Scalar::Complex(Complex64::new(*re, *im))),
        }
    }
}

/// Coefficient field of a [`Polynomial`](super::Polynomial).
///
/// Implemented for [`BigRational`] (exact) and [`Complex64`] (floating).
/// Polynomials of different modes are different types, so mixing them is
/// rejected by the compiler; [`Scalar`] covers the runtime case.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    const MODE: ScalarMode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// True for values that must not be stored as polynomial coefficients.
    fn negligible(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn to_complex(&self) -> Complex64;
    fn to_scalar(&self) -> Scalar;
    fn from_scalar(s: &Scalar) -> Result<Self, AlgebraError>;
    fn term_record(&self, exponents: Vec<u32>) -> TermRecord;
    /// Writes the coefficient in front of a monomial. `bare` is true when no
    /// monomial follows.
    fn write_coeff(&self, f: &mut String, first: bool, bare: bool);
}

impl Coeff for BigRational {
    const MODE: ScalarMode = ScalarMode::ExactRational;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }

    fn negligible(&self) -> bool {
        self.is_zero()
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn to_complex(&self) -> Complex64 {
        rational_to_f64(self).into()
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Rational(self.clone())
    }

    fn from_scalar(s: &Scalar) -> Result<Self, AlgebraError> {
        match s {
            Scalar::Rational(r) => Ok(r.clone()),
            Scalar::Complex(_) => Err(AlgebraError::ModeMismatch(
                ScalarMode::ExactRational,
                ScalarMode::ComplexFloat,
            )),
        }
    }

    fn term_record(&self, exponents: Vec<u32>) -> TermRecord {
        TermRecord::Rational {
            exponents,
            num: self.numer().to_string(),
            den: self.denom().to_string(),
        }
    }

    fn write_coeff(&self, f: &mut String, first: bool, bare: bool) {
        let negative = self.is_negative();
        let abs = self.abs();
        match (first, negative) {
            (true, true) => f.push('-'),
            (true, false) => {}
            (false, true) => f.push_str(" - "),
            (false, false) => f.push_str(" + "),
        }
        if bare {
            f.push_str(&abs.to_string());
        } else if !abs.is_one() {
            f.push_str(&abs.to_string());
            f.push('*');
        }
    }
}

impl Coeff for Complex64 {
    const MODE: ScalarMode = ScalarMode::ComplexFloat;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn negligible(&self) -> bool {
        self.norm() < DEFAULT_PRUNE_EPS
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Complex(*self)
    }

    fn from_scalar(s: &Scalar) -> Result<Self, AlgebraError> {
        match s {
            Scalar::Complex(c) => Ok(*c),
            Scalar::Rational(_) => Err(AlgebraError::ModeMismatch(
                ScalarMode::ComplexFloat,
                ScalarMode::ExactRational,
            )),
        }
    }

    fn term_record(&self, exponents: Vec<u32>) -> TermRecord {
        TermRecord::Complex {
            exponents,
            re: self.re,
            im: self.im,
        }
    }

    fn write_coeff(&self, f: &mut String, first: bool, bare: bool) {
        if !first {
            f.push_str(" + ");
        }
        if bare || *self != Complex64::new(1.0, 0.0) {
            f.push_str(&format_complex(*self));
            if !bare {
                f.push('*');
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_modes_are_rejected() {
        let r = Scalar::Rational(BigRational::from_integer(2.into()));
        let c = Scalar::Complex(Complex64::new(1.0, 0.0));
        assert!(matches!(r.try_add(&c), Err(AlgebraError::ModeMismatch(..))));
        assert!(matches!(c.try_mul(&r), Err(AlgebraError::ModeMismatch(..))));
        assert_eq!(
            r.try_mul(&r).unwrap(),
            Scalar::Rational(BigRational::from_integer(4.into()))
        );
        assert!(<BigRational as Coeff>::from_scalar(&c).is_err());
        assert!(<Complex64 as Coeff>::from_scalar(&r).is_err());
    }

    #[test]
    fn rationals_stay_reduced() {
        let a = BigRational::new(2.into(), (-4).into());
        assert_eq!(a.numer(), &BigInt::from(-1));
        assert_eq!(a.denom(), &BigInt::from(2));
    }

    #[test]
    fn pruning_threshold() {
        assert!(Complex64::new(1e-13, 0.0).negligible());
        assert!(!Complex64::new(1e-11, 0.0).negligible());
    }
}
