//! Exact arithmetic substrate: rationals, cyclotomic numbers, sparse
//! polynomials, rational functions, jets, Laurent polynomials, matrices and
//! exact linear algebra.

pub mod cyclo;
pub mod field;
pub mod jet;
pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod polysys;
pub mod ratfunc;

use thiserror::Error;

pub use cyclo::CycloNumber;
pub use field::{q, qq, Field, Rational};
pub use jet::Jet;
pub use laurent::LaurentPoly;
pub use matrix::{MatrixError, PolyMatrix};
pub use parse::{parse_poly, parse_ring, parse_vars, ParseError};
pub use poly::{vars, Monomial, MultiPoly, Vars};
pub use ratfunc::RatFunc;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("cannot divide out the zero polynomial")]
    ZeroDivisor,
    #[error("cannot divide out a unit of the local ring: {0}")]
    UnitDivisor(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Exact determinant of a square polynomial matrix.
pub fn poly_det<K: Field>(m: &PolyMatrix<K>) -> Result<MultiPoly<K>, AlgebraError> {
    Ok(m.det()?)
}

/// Largest `e` with `q^e | p`, together with the cofactor `p / q^e`.
///
/// `q` must vanish at the origin; local units would divide indefinitely in
/// the complete local ring and are rejected.
pub fn divide_out<K: Field>(p: &MultiPoly<K>, q: &MultiPoly<K>) -> Result<(u32, MultiPoly<K>), AlgebraError> {
    if q.is_zero() {
        return Err(AlgebraError::ZeroDivisor);
    }
    if q.is_local_unit() {
        return Err(AlgebraError::UnitDivisor(q.to_string()));
    }
    if p.is_zero() {
        return Err(AlgebraError::ZeroDivisor);
    }
    let mut e = 0;
    let mut cof = p.clone();
    while let Some(next) = cof.exact_div(q) {
        cof = next;
        e += 1;
    }
    Ok((e, cof))
}

/// Order of vanishing of a nonzero Laurent polynomial.
pub fn laurent_val(p: &LaurentPoly) -> Result<i64, laurent::LaurentError> {
    p.val()
}

/// `p(t) = even(t) + t·odd(t)` with both parts in even powers only.
pub fn even_odd_split(p: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    p.even_odd_split()
}
