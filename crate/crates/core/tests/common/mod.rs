//! Random inputs shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use cmlab::arith::{q, LaurentPoly};
use cmlab::normal_form::{ainf_validate, dinf_validate, LaurentMatrix};
use rand::Rng;

pub fn random_laurent<R: Rng>(rng: &mut R, var: &str, lo: i64, hi: i64, step: i64) -> LaurentPoly {
    if rng.gen_bool(0.35) {
        return LaurentPoly::zero(var);
    }
    let terms = rng.gen_range(1..=2);
    let mut p = LaurentPoly::zero(var);
    for _ in 0..terms {
        let e = rng.gen_range(lo..=hi);
        let e = e - e.rem_euclid(step);
        let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        p.add_term(e.max(lo - lo.rem_euclid(step)), q(c));
    }
    p
}

pub fn random_matrix<R: Rng>(rng: &mut R, var: &str, rows: usize, cols: usize, lo: i64, hi: i64) -> LaurentMatrix {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| random_laurent(rng, var, lo, hi, 1)).collect())
        .collect();
    LaurentMatrix::from_rows(var, data, cols, None).unwrap()
}

/// Valid `D∞` input of size at most 4×4 with exponents in `[-3, 6]`.
pub fn random_dinf<R: Rng>(rng: &mut R) -> LaurentMatrix {
    loop {
        let m = rng.gen_range(1..=4);
        let n = rng.gen_range(m..=4.min(2 * m));
        let theta = random_matrix(rng, "t", m, n, -3, 6);
        if dinf_validate(&theta) {
            return theta;
        }
    }
}

/// Valid `A∞` input with at most 4 columns and exponents in `[-3, 6]`.
pub fn random_ainf<R: Rng>(rng: &mut R) -> (LaurentMatrix, LaurentMatrix) {
    loop {
        let n: usize = rng.gen_range(1..=4);
        let p = rng.gen_range(0..=n);
        let qq = rng.gen_range(n - p..=n);
        let a = random_matrix(rng, "z", p, n, -3, 6);
        let b = random_matrix(rng, "z", qq, n, -3, 6);
        if ainf_validate(&a, &b) {
            return (a, b);
        }
    }
}

/// Power series matrix with invertible constant term.
pub fn random_left<R: Rng>(rng: &mut R, var: &str, n: usize) -> LaurentMatrix {
    loop {
        let mut m = LaurentMatrix::zero(var, n, n);
        for i in 0..n {
            for j in 0..n {
                let mut p = random_laurent(rng, var, 1, 3, 1);
                let c = if i == j { rng.gen_range(1..=2) } else { rng.gen_range(-1..=1) };
                p.add_term(0, q(c));
                m.set(i, j, p);
            }
        }
        let c = m.constant_part().unwrap();
        if !cmlab::arith::matrix::scalar_det(&c).is_zero() {
            return m;
        }
    }
}

/// Invertible matrix over `k((t^step))`: a permutation-free product of a
/// diagonal of powers and an elementary matrix with a Laurent entry.
pub fn random_right<R: Rng>(rng: &mut R, var: &str, n: usize, step: i64) -> LaurentMatrix {
    let mut d = LaurentMatrix::zero(var, n, n);
    for i in 0..n {
        let k = rng.gen_range(-1..=1) * step;
        d.set(i, i, LaurentPoly::monomial(var, k, q(rng.gen_range(1..=3))));
    }
    let mut e = LaurentMatrix::identity(var, n);
    if n > 1 {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        e.set(i, j, random_laurent(rng, var, -2, 2, step));
    }
    d.mul(&e).unwrap()
}

use cmlab::arith::Field;
