//! Univariate Laurent polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::field::{q, Field, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("valuation of the zero Laurent polynomial")]
    ZeroValuation,
}

/// Finite sum `Σ c_e t^e` with `e ∈ Z`. No zero coefficient is stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    var: Arc<str>,
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero(var: &str) -> Self {
        LaurentPoly {
            var: Arc::from(var),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(var: &str, e: i64, c: Rational) -> Self {
        let mut p = Self::zero(var);
        p.add_term(e, c);
        p
    }

    pub fn constant(var: &str, c: Rational) -> Self {
        Self::monomial(var, 0, c)
    }

    pub fn one(var: &str) -> Self {
        Self::constant(var, q(1))
    }

    /// `t^e`.
    pub fn t_pow(var: &str, e: i64) -> Self {
        Self::monomial(var, e, q(1))
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(var: &str, it: I) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&i64, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Smallest exponent with nonzero coefficient.
    pub fn val(&self) -> Result<i64, LaurentError> {
        self.terms.keys().next().copied().ok_or(LaurentError::ZeroValuation)
    }

    /// Largest exponent with nonzero coefficient.
    pub fn top(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `p(t) = even(t) + t·odd(t)` where both parts only involve even powers.
    pub fn even_odd_split(&self) -> (LaurentPoly, LaurentPoly) {
        let mut even = Self::zero(&self.var);
        let mut odd = Self::zero(&self.var);
        for (&e, c) in &self.terms {
            if e.rem_euclid(2) == 0 {
                even.add_term(e, c.clone());
            } else {
                odd.add_term(e - 1, c.clone());
            }
        }
        (even, odd)
    }

    /// Substitute `t ↦ t^{1/2}` on an even Laurent polynomial (exponents
    /// halved), renaming the variable. Panics on odd exponents.
    pub fn halve_exponents(&self, var: &str) -> Self {
        Self::from_terms(
            var,
            self.terms.iter().map(|(&e, c)| {
                assert!(e % 2 == 0, "odd exponent in even series");
                (e / 2, c.clone())
            }),
        )
    }

    /// Substitute `t ↦ t^k`.
    pub fn inflate(&self, k: i64, var: &str) -> Self {
        Self::from_terms(var, self.terms.iter().map(|(&e, c)| (e * k, c.clone())))
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &o.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &o.terms {
            out.add_term(e, -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            var: self.var.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(&self.var, self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            var: self.var.clone(),
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(&self.var);
        for (&a, x) in &self.terms {
            for (&b, y) in &o.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one(&self.var);
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// Keep only exponents `< prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        LaurentPoly {
            var: self.var.clone(),
            terms: self
                .terms
                .range(..prec)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Exact quotient in the Laurent polynomial ring, `None` if `d` does
    /// not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let dv = d.val().ok()?;
        let dt = d.top()?;
        if self.is_zero() {
            return Some(Self::zero(&self.var));
        }
        let lead_inv = d.coeff(dt).inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.var);
        let floor = self.val().unwrap() - dv;
        while let Some(top) = rem.top() {
            let e = top - dt;
            if e < floor {
                return None;
            }
            let c = rem.coeff(top) * &lead_inv;
            rem = rem.sub(&d.shift(e).scale(&c));
            quot.add_term(e, c);
        }
        Some(quot)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = c.render();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            match (e, mag.as_str()) {
                (0, _) => write!(f, "{mag}")?,
                (1, "1") => write!(f, "{}", self.var)?,
                (_, "1") => write!(f, "{}^{}", self.var, e)?,
                (1, _) => write!(f, "{mag}*{}", self.var)?,
                _ => write!(f, "{mag}*{}^{}", self.var, e)?,
            }
        }
        Ok(())
    }
}
