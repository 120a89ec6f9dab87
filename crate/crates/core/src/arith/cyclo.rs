//! Elements of cyclotomic fields Q(ζ_n).
//!
//! An element is a residue modulo the n-th cyclotomic polynomial Φ_n,
//! stored as its φ(n) coefficients in the power basis 1, ζ, …, ζ^{φ(n)-1}.
//! Conductor 1 is the rational field; rational constants combine freely
//! with any conductor.

use std::fmt;
use std::hash::{Hash, Hasher};


use super::field::{q, Field, Rational};

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut n0 = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n0 {
        if n0.is_multiple_of(p) {
            while n0.is_multiple_of(p) {
                n0 /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n0 > 1 {
        result -= result / n0;
    }
    result
}

/// Integer coefficients of Φ_n, ascending, computed as (xⁿ − 1) divided by
/// Φ_d for every proper divisor d.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = div_monic(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let dq = r.len() - 1 - db;
    let mut qv = vec![0i64; dq + 1];
    for i in (0..=dq).rev() {
        let c = r[i + db];
        qv[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    qv
}

#[derive(Clone, Debug)]
pub struct CycloNumber {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl CycloNumber {
    pub fn rational(c: Rational) -> Self {
        CycloNumber {
            conductor: 1,
            coeffs: vec![c],
        }
    }

    /// ζ_n^k for the primitive root ζ_n = exp(2πi/n).
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let k = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![Rational::zero(); k + 1];
        raw[k] = q(1);
        Self::reduce(n, raw)
    }

    /// Element with the given power-basis coefficients (reduced mod Φ_n).
    pub fn from_coeffs(n: u32, raw: Vec<Rational>) -> Self {
        Self::reduce(n, raw)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn reduce(n: u32, mut raw: Vec<Rational>) -> Self {
        let phi = cyclotomic_poly(n);
        let d = phi.len() - 1;
        while raw.len() > d {
            let top = raw.pop().unwrap();
            if !top.is_zero() {
                let off = raw.len() - d;
                for (j, &pj) in phi.iter().take(d).enumerate() {
                    raw[off + j] = &raw[off + j] - &top * q(pj);
                }
            }
        }
        raw.resize(d, Rational::zero());
        CycloNumber {
            conductor: n,
            coeffs: raw,
        }
    }

    fn lift(&self, n: u32) -> Vec<Rational> {
        if self.conductor == n {
            self.coeffs.clone()
        } else {
            assert!(
                self.conductor == 1 || self.as_rational().is_some(),
                "mixing conductors {} and {}",
                self.conductor,
                n
            );
            let mut v = vec![Rational::zero(); totient(n) as usize];
            v[0] = self.coeffs[0].clone();
            v
        }
    }

    fn common(&self, other: &Self) -> u32 {
        if self.conductor == other.conductor {
            self.conductor
        } else if self.as_rational().is_some() {
            other.conductor
        } else {
            self.conductor
        }
    }

    /// Complex conjugate, ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        let n = self.conductor;
        let mut raw = vec![Rational::zero(); n as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            let j = (n as usize - k) % n as usize;
            raw[j] = &raw[j] + c;
        }
        Self::reduce(n, raw)
    }

    /// Multiplicative order if the element is a root of unity within `cap`.
    pub fn multiplicative_order(&self, cap: u32) -> Option<u32> {
        let one = Self::one();
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc == one {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for CycloNumber {}

impl Hash for CycloNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self.as_rational() {
            Some(r) => r.hash(state),
            None => {
                self.conductor.hash(state);
                self.coeffs.hash(state);
            }
        }
    }
}

impl Field for CycloNumber {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn one() -> Self {
        Self::rational(q(1))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.common(other);
        let a = self.lift(n);
        let b = other.lift(n);
        CycloNumber {
            conductor: n,
            coeffs: a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let n = self.common(other);
        let a = self.lift(n);
        let b = other.lift(n);
        let mut raw = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] = &raw[i + j] + x * y;
                }
            }
        }
        Self::reduce(n, raw)
    }
    fn neg(&self) -> Self {
        CycloNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(CycloNumber::from_coeffs(
                self.conductor,
                vec![Field::inv(&r).unwrap()],
            ));
        }
        // Solve self · y = 1 via the multiplication matrix in the power basis.
        let n = self.conductor;
        let d = self.coeffs.len();
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(d);
        for k in 0..d {
            let basis = CycloNumber::root_of_unity(n, k as i64);
            cols.push(self.mul(&basis).lift(n));
        }
        let mut rows: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                let mut r: Vec<Rational> = (0..d).map(|k| cols[k][i].clone()).collect();
                r.push(if i == 0 { q(1) } else { Rational::zero() });
                r
            })
            .collect();
        let sol = crate::arith::linalg::dense_solve(&mut rows, d)?;
        Some(CycloNumber {
            conductor: n,
            coeffs: sol,
        })
    }
    fn from_int(n: i64) -> Self {
        Self::rational(q(n))
    }
    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }
    fn render(&self) -> (bool, String) {
        if let Some(r) = self.as_rational() {
            return r.render();
        }
        (false, self.to_string())
    }
    fn is_atomic(&self) -> bool {
        self.as_rational().is_some()
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = super::poly::vars(&[&format!("zeta{}", self.conductor)]);
        let p = super::poly::MultiPoly::from_terms(
            &vars,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (super::poly::Monomial(vec![k as u32]), c.clone())),
        );
        write!(f, "{p}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        for n in 1..40 {
            assert_eq!(cyclotomic_poly(n).len() as u32 - 1, totient(n));
        }
    }

    #[test]
    fn roots_have_exact_order() {
        for n in 1..25 {
            let z = CycloNumber::root_of_unity(n, 1);
            assert_eq!(z.multiplicative_order(200), Some(n));
        }
    }

    #[test]
    fn sqrt_two_and_five() {
        let x8 = CycloNumber::root_of_unity(8, 1);
        let s2 = x8.add(&CycloNumber::root_of_unity(8, 7));
        assert_eq!(s2.mul(&s2), CycloNumber::from_int(2));
        let x5 = CycloNumber::root_of_unity(5, 1);
        let s5 = x5
            .add(&CycloNumber::root_of_unity(5, 4))
            .mul(&CycloNumber::from_int(2))
            .add(&CycloNumber::one());
        assert_eq!(s5.mul(&s5), CycloNumber::from_int(5));
        let inv = s5.inv().unwrap();
        assert_eq!(inv.mul(&s5), CycloNumber::one());
    }

    #[test]
    fn conjugate_inverts_roots() {
        let z = CycloNumber::root_of_unity(12, 5);
        assert_eq!(z.conj().mul(&z), CycloNumber::one());
    }
}
