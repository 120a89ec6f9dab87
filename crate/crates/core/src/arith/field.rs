//! Coefficient fields.
//!
//! Everything in the crate is generic over [`Field`], a small trait with
//! by-reference arithmetic. Three implementations exist: [`Rational`],
//! [`crate::arith::cyclo::CycloNumber`] and [`crate::arith::ratfunc::RatFunc`].

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always stored in lowest terms with
/// a positive denominator.
pub type Rational = BigRational;

/// A commutative field of characteristic zero with exact arithmetic.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_int(n: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;

    /// Rendering used by the polynomial printer: `(is_negative, magnitude)`.
    /// The magnitude must parse back as a coefficient when `atomic` is true.
    fn render(&self) -> (bool, String);
    /// True if `render` yields a bare number that needs no parentheses.
    fn is_atomic(&self) -> bool;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv().expect("division by zero"))
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn render(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }
    fn is_atomic(&self) -> bool {
        true
    }
}

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

/// Shorthand for `n/d`.
pub fn qq(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
