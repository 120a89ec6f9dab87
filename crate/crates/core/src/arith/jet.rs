//! Truncated power series: polynomials modulo all monomials of total degree
//! `>= order`.

use super::field::{Field, Rational};
use super::poly::MultiPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet<K: Field = Rational> {
    base: MultiPoly<K>,
    order: u32,
}

impl<K: Field> Jet<K> {
    pub fn new(p: &MultiPoly<K>, order: u32) -> Self {
        assert!(order >= 1, "jet order must be positive");
        Jet {
            base: p.truncate(order),
            order,
        }
    }

    pub fn base(&self) -> &MultiPoly<K> {
        &self.base
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero()
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.order, o.order, "jet order mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        Jet {
            base: self.base.add(&o.base),
            order: self.order,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        Jet {
            base: self.base.sub(&o.base),
            order: self.order,
        }
    }

    /// Product with eager truncation.
    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let mut out = MultiPoly::zero(self.base.vars());
        for (m1, c1) in self.base.terms() {
            let d1 = m1.degree();
            for (m2, c2) in o.base.terms() {
                if d1 + m2.degree() < self.order {
                    out.add_term(m1.mul(m2), c1.mul(c2));
                }
            }
        }
        Jet {
            base: out,
            order: self.order,
        }
    }

    /// Inverse of a local unit, by the geometric series of `1 - u/u₀`.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.base.constant_term();
        let c0inv = c0.inv()?;
        let one = MultiPoly::one(self.base.vars());
        let n = Jet::new(&one.sub(&self.base.scale(&c0inv)), self.order);
        let mut acc = Jet::new(&one, self.order);
        let mut pw = Jet::new(&one, self.order);
        for _ in 1..self.order {
            pw = pw.mul(&n);
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw);
        }
        Some(Jet {
            base: acc.base.scale(&c0inv),
            order: self.order,
        })
    }
}
