//! Multivariate rational functions over Q, with a recursive polynomial gcd.

use std::fmt;
use std::hash::{Hash, Hasher};

use super::field::{Field, Rational};
use super::poly::{Monomial, MultiPoly, Vars};

type P = MultiPoly<Rational>;

fn unify(a: &P, b: &P) -> (P, P) {
    if a.vars() == b.vars() {
        (a.clone(), b.clone())
    } else if a.vars().is_empty() {
        (a.embed(b.vars()), b.clone())
    } else if b.vars().is_empty() {
        (a.clone(), b.embed(a.vars()))
    } else {
        panic!("variable mismatch in gcd")
    }
}

/// Coefficients of `p` as a polynomial in variable `v`, indexed by degree.
fn coeffs_in(p: &P, v: usize) -> Vec<P> {
    let d = p.degree_in(v).unwrap_or(0) as usize;
    let mut out = vec![P::zero(p.vars()); d + 1];
    for (m, c) in p.terms() {
        let mut e = m.0.clone();
        let k = e[v] as usize;
        e[v] = 0;
        out[k].add_term(Monomial(e), c.clone());
    }
    out
}

fn main_var(a: &P, b: &P) -> Option<usize> {
    (0..a.nvars()).find(|&i| a.degree_in(i).unwrap_or(0) > 0 || b.degree_in(i).unwrap_or(0) > 0)
}

/// Scale so the deglex-leading coefficient is 1.
pub fn monic(p: &P) -> P {
    match p.leading_term() {
        Some((_, c)) => p.scale(&c.inv().unwrap()),
        None => p.clone(),
    }
}

fn content_in(p: &P, v: usize) -> P {
    let mut g = P::zero(p.vars());
    for c in coeffs_in(p, v) {
        if !c.is_zero() {
            g = poly_gcd(&g, &c);
            if g.is_constant() {
                return P::one(p.vars());
            }
        }
    }
    g
}

fn primitive_part(p: &P, v: usize) -> P {
    let c = content_in(p, v);
    p.exact_div(&c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` with respect to variable `v`.
fn prem(a: &P, b: &P, v: usize) -> P {
    let n = b.degree_in(v).unwrap_or(0);
    let bc = coeffs_in(b, v);
    let lb = bc[n as usize].clone();
    let xv = P::var(a.vars(), v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v).unwrap_or(0) >= n {
        let dr = r.degree_in(v).unwrap();
        let lr = coeffs_in(&r, v)[dr as usize].clone();
        r = lb.mul(&r).sub(&lr.mul(&xv.pow(dr - n)).mul(b));
    }
    r
}

/// Monic greatest common divisor in Q[x₁,…,xₙ]; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &P, b: &P) -> P {
    let (a, b) = unify(a, b);
    if a.is_zero() {
        return monic(&b);
    }
    if b.is_zero() {
        return monic(&a);
    }
    let Some(v) = main_var(&a, &b) else {
        return P::one(a.vars());
    };
    let ca = content_in(&a, v);
    let cb = content_in(&b, v);
    let gc = poly_gcd(&ca, &cb);
    let mut r0 = a.exact_div(&ca).unwrap();
    let mut r1 = b.exact_div(&cb).unwrap();
    if r0.degree_in(v) < r1.degree_in(v) {
        std::mem::swap(&mut r0, &mut r1);
    }
    loop {
        if r1.degree_in(v).unwrap_or(0) == 0 {
            // r1 is primitive and free of v, hence a constant
            return monic(&gc);
        }
        let r = prem(&r0, &r1, v);
        if r.is_zero() {
            return monic(&gc.mul(&primitive_part(&r1, v)));
        }
        r0 = r1;
        r1 = primitive_part(&r, v);
    }
}

/// Quotient `num / den` in lowest terms with monic denominator.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: P,
    den: P,
}

impl RatFunc {
    pub fn new(num: P, den: P) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = unify(&num, &den);
        if num.is_zero() {
            return RatFunc {
                den: P::one(num.vars()),
                num,
            };
        }
        let g = poly_gcd(&num, &den);
        let mut n = num.exact_div(&g).unwrap();
        let mut d = den.exact_div(&g).unwrap();
        let lc = d.leading_term().unwrap().1.clone();
        let inv = lc.inv().unwrap();
        n = n.scale(&inv);
        d = d.scale(&inv);
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: P) -> Self {
        let one = P::one(p.vars());
        RatFunc { num: p, den: one }
    }

    pub fn num(&self) -> &P {
        &self.num
    }

    pub fn den(&self) -> &P {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for RatFunc {}

impl Hash for RatFunc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }
    fn from_int(n: i64) -> Self {
        let v: Vars = std::sync::Arc::new(vec![]);
        RatFunc::from_poly(P::from_int(&v, n))
    }
    fn from_rational(q: &Rational) -> Self {
        let v: Vars = std::sync::Arc::new(vec![]);
        RatFunc::from_poly(P::constant(&v, q.clone()))
    }
    fn render(&self) -> (bool, String) {
        if self.num.is_constant() && self.den.is_one() {
            return self.num.constant_term().render();
        }
        (false, self.to_string())
    }
    fn is_atomic(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_poly;
    use crate::arith::poly::vars;

    #[test]
    fn gcd_of_products() {
        let v = vars(&["a", "b", "c"]);
        let p = |s: &str| parse_poly(s, &v).unwrap();
        let g = p("a*b - c^2 + 3");
        let x = p("a^2 + b*c");
        let y = p("a - b + c^3");
        let got = poly_gcd(&g.mul(&x), &g.mul(&y));
        assert_eq!(got, monic(&g));
        assert!(poly_gcd(&x, &y).is_one());
    }

    #[test]
    fn rational_function_arithmetic() {
        let v = vars(&["a", "b"]);
        let p = |s: &str| parse_poly(s, &v).unwrap();
        let r = RatFunc::new(p("a^2 - b^2"), p("2*a + 2*b"));
        assert_eq!(r.num(), &p("1/2*a - 1/2*b"));
        assert!(r.den().is_one());
        let s = RatFunc::new(p("1"), p("a"));
        let t = RatFunc::new(p("1"), p("b"));
        let sum = s.add(&t);
        assert_eq!(sum, RatFunc::new(p("a + b"), p("a*b")));
        assert_eq!(sum.mul(&sum.inv().unwrap()), RatFunc::one());
    }
}
