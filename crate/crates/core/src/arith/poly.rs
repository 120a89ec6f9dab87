//! Sparse multivariate polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{Field, Rational};

/// Shared, ordered list of variable names.
pub type Vars = Arc<Vec<String>>;

/// Build a shared variable list from names.
pub fn vars(names: &[&str]) -> Vars {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

/// Exponent vector. Ordered degree-lexicographically: first by total degree,
/// then lexicographically with the first variable most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, w: &[u32]) -> u32 {
        self.0.iter().zip(w).map(|(e, w)| e * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(
                other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
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

/// All exponent vectors in `n` variables of total degree exactly `d`,
/// in descending lexicographic order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All exponent vectors of total degree at most `d`, ascending by degree.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect()
}

/// All exponent vectors of weighted degree exactly `d`.
pub fn monomials_of_weighted_degree(w: &[u32], d: u32) -> Vec<Monomial> {
    fn rec(w: &[u32], d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let i = prefix.len();
        if i == w.len() {
            if d == 0 {
                out.push(Monomial(prefix.clone()));
            }
            return;
        }
        let mut e = 0;
        while e * w[i] <= d {
            prefix.push(e);
            rec(w, d - e * w[i], prefix, out);
            prefix.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(w, d, &mut Vec::new(), &mut out);
    out
}

/// Sparse polynomial with coefficients in `K` over a named variable list.
///
/// No zero coefficient is ever stored. Terms are kept in a `BTreeMap`, so
/// iteration is in ascending degree-lexicographic order.
#[derive(Clone, Debug)]
pub struct MultiPoly<K: Field = Rational> {
    vars: Vars,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Field> PartialEq for MultiPoly<K> {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        // A polynomial over no variables is a bare constant and compares
        // equal to the same constant over any variable list.
        if self.vars.is_empty() || other.vars.is_empty() {
            return self.is_constant()
                && other.is_constant()
                && self.constant_term() == other.constant_term();
        }
        false
    }
}

impl<K: Field> Eq for MultiPoly<K> {}

impl<K: Field> Hash for MultiPoly<K> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.len().hash(state);
        for (m, c) in &self.terms {
            m.degree().hash(state);
            c.hash(state);
        }
    }
}

impl<K: Field> MultiPoly<K> {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, K::one())
    }

    pub fn constant(vars: &Vars, c: K) -> Self {
        Self::monomial(vars, Monomial::one(vars.len()), c)
    }

    pub fn from_int(vars: &Vars, n: i64) -> Self {
        Self::constant(vars, K::from_int(n))
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), i), K::one())
    }

    /// The variable called `name`. Panics if it is not in the list.
    pub fn var_named(vars: &Vars, name: &str) -> Self {
        let i = vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var(vars, i)
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: K) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// Build from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, K)>>(vars: &Vars, it: I) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in it {
            assert_eq!(m.0.len(), vars.len(), "exponent length mismatch");
            p.add_term(m, c);
        }
        p
    }

    /// Accumulate `c·m` into `self` in place.
    pub fn add_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    pub fn coefficient(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn constant_term(&self) -> K {
        self.terms
            .iter()
            .next()
            .filter(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(K::zero)
    }

    /// A unit of the local ring at the origin: nonzero constant term.
    pub fn is_local_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// Smallest total degree of a term, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &K)> {
        self.terms.iter().next_back()
    }

    fn unify(&self, other: &Self) -> Vars {
        if self.vars == other.vars || other.vars.is_empty() {
            self.vars.clone()
        } else if self.vars.is_empty() {
            other.vars.clone()
        } else {
            panic!(
                "variable mismatch: {:?} vs {:?}",
                self.vars.as_slice(),
                other.vars.as_slice()
            )
        }
    }

    /// Re-express over `target`, which must contain all variables that occur.
    pub fn embed(&self, target: &Vars) -> Self {
        if &self.vars == target {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|w| w == v).unwrap_or(usize::MAX))
            .collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    assert!(map[i] != usize::MAX, "variable {} not in target", self.vars[i]);
                    e[map[i]] += x;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    fn padded(&self, vars: &Vars) -> Self {
        if &self.vars == vars {
            self.clone()
        } else {
            self.embed(vars)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let v = self.unify(other);
        let mut out = self.padded(&v);
        for (m, c) in &other.padded(&v).terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let v = self.unify(other);
        let mut out = self.padded(&v);
        for (m, c) in &other.padded(&v).terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.mul(c)))
                .collect(),
        }
    }

    /// Multiply by the monomial `c·m`.
    pub fn mul_term(&self, m: &Monomial, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let v = self.unify(other);
        let a = self.padded(&v);
        let b = other.padded(&v);
        let mut acc: std::collections::HashMap<Monomial, K> = std::collections::HashMap::new();
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                let m = m1.mul(m2);
                let p = c1.mul(c2);
                match acc.get_mut(&m) {
                    Some(x) => *x = x.add(&p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        MultiPoly {
            vars: v,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact quotient `self / q`, or `None` if `q` does not divide `self`.
    ///
    /// Repeatedly cancels the leading term; when `q | self` this always
    /// succeeds because leading terms are multiplicative.
    pub fn exact_div(&self, q: &Self) -> Option<Self> {
        let v = self.unify(q);
        let q = q.padded(&v);
        let (lm, lc) = q.leading_term()?;
        let (lm, lc_inv) = (lm.clone(), lc.inv()?);
        let mut rem = self.padded(&v);
        let mut quot = Self::zero(&v);
        while let Some((m, c)) = rem.leading_term() {
            let t = lm.quotient_of(m)?;
            let coef = c.mul(&lc_inv);
            rem = rem.sub(&q.mul_term(&t, &coef));
            quot.add_term(t, coef);
        }
        Some(quot)
    }

    /// Drop every term of total degree `>= order`.
    pub fn truncate(&self, order: u32) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitute `images[i]` for variable `i`. The result lives over the
    /// variables of the images.
    pub fn substitute(&self, images: &[MultiPoly<K>]) -> MultiPoly<K> {
        assert_eq!(images.len(), self.nvars());
        let target = images
            .iter()
            .map(|p| p.vars.clone())
            .find(|v| !v.is_empty())
            .unwrap_or_else(|| Arc::new(vec![]));
        let mut out = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn eval(&self, point: &[K]) -> K {
        assert_eq!(point.len(), self.nvars());
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t.mul(x);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn map_coeffs<L: Field, F: Fn(&K) -> L>(&self, f: F) -> MultiPoly<L> {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Rename the variable list without touching exponents.
    pub fn with_vars(&self, vars: &Vars) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        MultiPoly {
            vars: vars.clone(),
            terms: self.terms.clone(),
        }
    }

    /// True if every term has weighted degree `d`.
    pub fn is_weighted_homogeneous(&self, w: &[u32], d: u32) -> bool {
        self.terms.keys().all(|m| m.weighted_degree(w) == d)
    }
}

impl<K: Field> fmt::Display for MultiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = c.render();
            let atomic = c.is_atomic();
            let sign_neg = atomic && neg;
            if idx == 0 {
                if sign_neg {
                    write!(f, "-")?;
                }
            } else if sign_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = if atomic { mag } else { format!("({mag})") };
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            let unit_coeff = atomic && mag == "1";
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if unit_coeff {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl<'a, K: Field> $tr<&'a MultiPoly<K>> for &'a MultiPoly<K> {
            type Output = MultiPoly<K>;
            fn $method(self, rhs: &'a MultiPoly<K>) -> MultiPoly<K> {
                MultiPoly::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl<K: Field> Neg for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn neg(self) -> MultiPoly<K> {
        MultiPoly::neg(self)
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::q;

    fn xyz() -> Vars {
        vars(&["x", "y", "z"])
    }

    #[test]
    fn deglex_orders_by_degree_first() {
        let a = Monomial(vec![0, 0, 3]);
        let b = Monomial(vec![1, 1, 0]);
        assert!(a > b);
        assert!(Monomial(vec![1, 0, 0]) > Monomial(vec![0, 1, 0]));
    }

    #[test]
    fn exact_division() {
        let v = xyz();
        let x = MultiPoly::<Rational>::var(&v, 0);
        let y = MultiPoly::var(&v, 1);
        let p = &(&x * &x) * &y;
        assert_eq!(p.exact_div(&x).unwrap(), &x * &y);
        assert!(y.exact_div(&x).is_none());
        let s = &x + &y;
        let prod = &s * &(&s - &MultiPoly::from_int(&v, 3));
        assert_eq!(prod.exact_div(&s).unwrap(), &s - &MultiPoly::from_int(&v, 3));
    }

    #[test]
    fn display_is_canonical() {
        let v = xyz();
        let x = MultiPoly::<Rational>::var(&v, 0);
        let z = MultiPoly::var(&v, 2);
        let p = &(&x * &z.pow(3)).scale(&q(-2)) + &MultiPoly::from_int(&v, 1);
        assert_eq!(p.to_string(), "-2*x*z^3 + 1");
        assert_eq!(MultiPoly::<Rational>::zero(&v).to_string(), "0");
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_up_to(3, 2).len(), 10);
        assert_eq!(monomials_of_weighted_degree(&[1, 2, 2], 4).len(), 6);
    }
}
