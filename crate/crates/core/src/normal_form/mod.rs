//! Normal forms of gluing matrices over the non-isolated singularities
//! `A∞` (`xy = 0`) and `D∞` (`x²y = z²`), and the modules they describe.
//!
//! Both reductions follow the same plan. Column operations over the
//! Laurent field first saturate the column lattice of the matrix (the even
//! and odd parts stacked, for `D∞`); the block list is then read off the
//! elementary divisors of the saturated matrix over the power series ring,
//! and an exact linear solve produces the transformation certifying the
//! decomposition modulo `t^prec`.

pub mod ainf;
pub mod bridge;
pub mod dinf;
mod lattice;

use std::fmt;

use thiserror::Error;

use crate::arith::{Field, LaurentPoly, Rational};
use crate::mf::MfError;

pub use ainf::{ainf_block_pair, ainf_reduce, ainf_reduce_at, ainf_validate, ainf_verify, AInfBlock};
pub use bridge::{
    ainf_block_to_mf, classify, dinf_block_to_mf, hook_equivalence, hook_syzygy_matrix, Block, BlockModule, ClassifyInput, HookMatch,
};
pub use dinf::{dinf_block_diagonal, dinf_reduce, dinf_reduce_at, dinf_validate, dinf_verify, DInfBlock};
pub use lattice::laurent_rank;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalFormError {
    #[error("input fails validation: {0}")]
    Invalid(String),
    #[error("no certificate found at precision {0}")]
    PrecisionExhausted(i64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Mf(#[from] MfError),
}

/// Matrix of Laurent polynomials in one variable, exact below `t^prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    var: String,
    rows: usize,
    cols: usize,
    prec: i64,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    /// Build from rows. `prec` defaults to one more than the largest
    /// exponent and is raised to that if given smaller.
    pub fn from_rows(var: &str, rows: Vec<Vec<LaurentPoly>>, cols: usize, prec: Option<i64>) -> Result<Self, NormalFormError> {
        let r = rows.len();
        if rows.iter().any(|row| row.len() != cols) {
            return Err(NormalFormError::Shape("ragged rows".into()));
        }
        let entries: Vec<LaurentPoly> = rows.into_iter().flatten().collect();
        if let Some(e) = entries.iter().find(|e| !e.is_zero() && e.var() != var) {
            return Err(NormalFormError::Shape(format!("entry in variable {} instead of {var}", e.var())));
        }
        let top = entries.iter().filter_map(|e| e.top()).max().unwrap_or(-1);
        let prec = prec.unwrap_or(top + 1).max(top + 1);
        Ok(LaurentMatrix {
            var: var.to_string(),
            rows: r,
            cols,
            prec,
            entries,
        })
    }

    pub fn zero(var: &str, rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            var: var.to_string(),
            rows,
            cols,
            prec: 0,
            entries: vec![LaurentPoly::zero(var); rows * cols],
        }
    }

    pub fn identity(var: &str, n: usize) -> Self {
        let mut m = Self::zero(var, n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(var));
        }
        m.prec = 1;
        m
    }

    /// Integer-coefficient monomial entries `c·t^e` given as `(e, c)`;
    /// `None` is zero. Convenient for tests and examples.
    pub fn from_monomials(var: &str, rows: &[&[Option<(i64, i64)>]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| match e {
                        Some((k, c)) => LaurentPoly::monomial(var, *k, crate::arith::q(*c)),
                        None => LaurentPoly::zero(var),
                    })
                    .collect()
            })
            .collect();
        Self::from_rows(var, data, cols, None).expect("rectangular")
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn with_prec(mut self, prec: i64) -> Self {
        let top = self.max_exp().unwrap_or(-1);
        self.prec = prec.max(top + 1);
        self
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        if let Some(t) = p.top() {
            self.prec = self.prec.max(t + 1);
        }
        self.entries[i * self.cols + j] = p;
    }

    pub fn to_rows(&self) -> Vec<Vec<LaurentPoly>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.entries.iter().filter_map(|e| e.top()).max()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.entries.iter().filter_map(|e| e.val().ok()).min()
    }

    pub fn mul(&self, o: &Self) -> Result<Self, NormalFormError> {
        if self.cols != o.rows {
            return Err(NormalFormError::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zero(&self.var, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = LaurentPoly::zero(&self.var);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.set(i, j, acc);
            }
        }
        out.prec = out.prec.max(self.prec.min(o.prec));
        Ok(out)
    }

    /// Entries with every exponent `>= prec` removed.
    pub fn truncate(&self, prec: i64) -> Self {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.truncate(prec);
        }
        out
    }

    /// Constant-term matrix; `None` if some entry has a negative exponent.
    pub fn constant_part(&self) -> Option<Vec<Vec<Rational>>> {
        if self.min_exp().is_some_and(|v| v < 0) {
            return None;
        }
        Some(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.get(i, j).coeff(0)).collect())
                .collect(),
        )
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, o: &Self) -> Self {
        let mut out = Self::zero(&self.var, self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                out.set(self.rows + i, self.cols + j, o.get(i, j).clone());
            }
        }
        out.prec = out.prec.max(self.prec).max(o.prec);
        out
    }

    /// Agreement of all coefficients below `t^prec`.
    pub fn congruent(&self, o: &Self, prec: i64) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.truncate(prec).entries == o.truncate(prec).entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `F⁻¹·θ·f = B` modulo `t^prec`, stored as `θ·f ≡ F·B`.
///
/// `left` holds `F` (one matrix for `D∞`, the pair `F₁, F₂` for `A∞`),
/// `right` holds `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate<B> {
    pub left: Vec<LaurentMatrix>,
    pub right: LaurentMatrix,
    pub blocks: Vec<B>,
    pub prec: i64,
}

/// Shared certificate check: `θᵢ·f ≡ Fᵢ·Bᵢ` below `t^prec`, every `Fᵢ` a
/// power series matrix with invertible constant term, and `f` invertible
/// over the Laurent field.
pub(crate) fn check_certificate(
    thetas: &[&LaurentMatrix],
    blocks: &[LaurentMatrix],
    left: &[LaurentMatrix],
    right: &LaurentMatrix,
    prec: i64,
) -> bool {
    if thetas.len() != left.len() || thetas.len() != blocks.len() {
        return false;
    }
    if right.rows() != right.cols() || laurent_rank(&right.to_rows()) != right.rows() {
        return false;
    }
    for ((theta, b), f_left) in thetas.iter().zip(blocks).zip(left) {
        let Some(c) = f_left.constant_part() else {
            return false;
        };
        if f_left.rows() > 0 && crate::arith::matrix::scalar_det(&c).is_zero() {
            return false;
        }
        let (Ok(lhs), Ok(rhs)) = (theta.mul(right), f_left.mul(b)) else {
            return false;
        };
        if !lhs.congruent(&rhs, prec) {
            return false;
        }
    }
    true
}
