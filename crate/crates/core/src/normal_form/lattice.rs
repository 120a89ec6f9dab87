//! Shared machinery: ranks over the Laurent field, lattice saturation,
//! elementary divisors over the power series ring, and the certificate
//! solve.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::linalg::{random_scalar, SparseRref};
use crate::arith::matrix::scalar_det;
use crate::arith::polysys::{EqBuilder, UnknownMatrix};
use crate::arith::{q, vars, Field, LaurentPoly, Monomial, MultiPoly, PolyMatrix, Rational, Vars};

use super::LaurentMatrix;

type Grid = Vec<Vec<LaurentPoly>>;

/// Rank over the Laurent field by fraction-free elimination.
pub fn laurent_rank(rows: &[Vec<LaurentPoly>]) -> usize {
    let mut a: Grid = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let var = a
        .iter()
        .flatten()
        .find(|p| !p.is_zero())
        .map(|p| p.var().to_string())
        .unwrap_or_else(|| "t".into());
    let mut prev = LaurentPoly::one(&var);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..m {
            for j in c + 1..n {
                let v = a[r][c].mul(&a[i][j]).sub(&a[i][c].mul(&a[r][j]));
                a[i][j] = v.exact_div(&prev).expect("fraction-free step is exact");
            }
            a[i][c] = LaurentPoly::zero(&var);
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Determinant of a square Laurent matrix (fraction-free elimination).
pub(crate) fn laurent_det(rows: &[Vec<LaurentPoly>], var: &str) -> LaurentPoly {
    let mut a: Grid = rows.to_vec();
    let n = a.len();
    let mut prev = LaurentPoly::one(var);
    let mut sign = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return LaurentPoly::zero(var);
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.exact_div(&prev).expect("fraction-free step is exact");
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return LaurentPoly::one(var);
    }
    if sign {
        prev.neg()
    } else {
        prev
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Elementary divisor exponents `ℓ₁ ≤ … ≤ ℓ_m` over the power series ring
/// of a full-row-rank matrix with entries of non-negative valuation:
/// `ℓ₁ + … + ℓ_k` is the least valuation of a `k×k` minor.
pub(crate) fn smith_exponents(m: &LaurentMatrix) -> Vec<i64> {
    let rows = m.to_rows();
    let (r, c) = (m.rows(), m.cols());
    let mut d = vec![0i64];
    for k in 1..=r {
        let mut best: Option<i64> = None;
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let sub: Grid = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect()).collect();
                if let Ok(v) = laurent_det(&sub, m.var()).val() {
                    best = Some(best.map_or(v, |b: i64| b.min(v)));
                }
            }
        }
        d.push(best.expect("full row rank"));
    }
    d.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Column operations over `k((t^step))` making the column lattice of
/// `stack` saturated: every column has valuation zero and the constant
/// terms of the columns are linearly independent. Every entry must only
/// involve exponents divisible by `step`. Returns the saturated stack and
/// the accumulated column transformation.
pub(crate) fn saturate(stack: &[Vec<LaurentPoly>], step: i64, var: &str) -> (Grid, LaurentMatrix) {
    let mut a: Grid = stack.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut f = LaurentMatrix::identity(var, n);
    let scale_col = |a: &mut Grid, f: &mut LaurentMatrix, j: usize, k: i64| {
        for row in a.iter_mut() {
            row[j] = row[j].shift(k);
        }
        for i in 0..n {
            let e = f.get(i, j).shift(k);
            f.set(i, j, e);
        }
    };
    for j in 0..n {
        let v = (0..m).filter_map(|i| a[i][j].val().ok()).min();
        if let Some(v) = v {
            scale_col(&mut a, &mut f, j, -v);
        }
    }
    loop {
        let mut rref = SparseRref::<Rational>::new(n);
        for row in &a {
            rref.insert(row.iter().enumerate().map(|(j, p)| (j, p.coeff(0))).collect());
        }
        if rref.rank() == n {
            break;
        }
        let ker = rref.kernel_basis();
        let c = &ker[0];
        let j = (0..n).rev().find(|&j| !c[j].is_zero()).unwrap();
        for row in a.iter_mut() {
            let mut acc = LaurentPoly::zero(var);
            for (i, ci) in c.iter().enumerate() {
                if !ci.is_zero() {
                    acc = acc.add(&row[i].scale(ci));
                }
            }
            row[j] = acc.shift(-step);
        }
        let mut newcol = vec![LaurentPoly::zero(var); n];
        for (r, nc) in newcol.iter_mut().enumerate() {
            for (i, ci) in c.iter().enumerate() {
                if !ci.is_zero() {
                    *nc = nc.add(&f.get(r, i).scale(ci));
                }
            }
        }
        for (r, nc) in newcol.into_iter().enumerate() {
            f.set(r, j, nc.shift(-step));
        }
        // The combination can vanish to higher order; renormalize.
        let v = (0..m).filter_map(|i| a[i][j].val().ok()).min().expect("full column rank");
        if v != 0 {
            scale_col(&mut a, &mut f, j, -v);
        }
    }
    (a, f)
}

fn one_var(name: &str) -> Vars {
    vars(&[name])
}

/// Non-negative Laurent polynomial as a univariate polynomial.
pub(crate) fn to_poly(p: &LaurentPoly, v: &Vars) -> MultiPoly {
    MultiPoly::from_terms(
        v,
        p.terms().map(|(&e, c)| {
            assert!(e >= 0, "negative exponent");
            (Monomial(vec![e as u32]), c.clone())
        }),
    )
}

pub(crate) fn from_poly(p: &MultiPoly, var: &str) -> LaurentPoly {
    LaurentPoly::from_terms(var, p.terms().map(|(m, c)| (m.0[0] as i64, c.clone())))
}

fn to_poly_matrix(m: &LaurentMatrix, v: &Vars) -> PolyMatrix {
    let rows = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| to_poly(m.get(i, j), v)).collect())
        .collect();
    PolyMatrix::from_rows(v, rows).unwrap_or_else(|_| PolyMatrix::zero(v, m.rows(), m.cols()))
}

fn from_poly_matrix(m: &PolyMatrix, var: &str) -> LaurentMatrix {
    let mut out = LaurentMatrix::zero(var, m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, from_poly(m.get(i, j), var));
        }
    }
    out
}

/// Solve `θᵢ·f ≡ Fᵢ·Bᵢ (mod t^prec)` for power series `Fᵢ` with invertible
/// constant term and `f` with entries in `k[[t^step]]`, invertible over the
/// Laurent field. The `θᵢ` must have non-negative valuation.
pub(crate) fn solve_certificate(
    thetas: &[LaurentMatrix],
    blocks: &[LaurentMatrix],
    n: usize,
    step: i64,
    prec: i64,
) -> Option<(Vec<LaurentMatrix>, LaurentMatrix)> {
    let var = thetas[0].var().to_string();
    let v = one_var(&var);
    let cap = (prec - 1).max(0) as u32;
    let f_monos: Vec<Monomial> = (0..prec).step_by(step as usize).map(|e| Monomial(vec![e as u32])).collect();
    let l_monos: Vec<Monomial> = (0..prec).map(|e| Monomial(vec![e as u32])).collect();
    let fx = UnknownMatrix::new(n, n, f_monos, 0);
    let mut lefts = Vec::new();
    let mut off = fx.end();
    for b in blocks {
        let u = UnknownMatrix::new(b.rows(), b.rows(), l_monos.clone(), off);
        off = u.end();
        lefts.push(u);
    }
    let ncols = off;
    let mut eb = EqBuilder::<Rational>::truncated(cap);
    for (i, (theta, b)) in thetas.iter().zip(blocks).enumerate() {
        if theta.rows() == 0 {
            continue;
        }
        let tp = to_poly_matrix(theta, &v);
        let bp = to_poly_matrix(b, &v);
        eb.add_lxr(i, Some(&tp), &fx, None, &q(1));
        eb.add_lxr(i, None, &lefts[i], Some(&bp), &q(-1));
    }
    let mut rref = SparseRref::new(ncols + 1);
    for r in eb.into_augmented(ncols) {
        rref.insert(r);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..8 {
        let sol = rref.solve_augmented(|_| random_scalar(&mut rng, 9))?;
        let f = from_poly_matrix(&fx.extract(&v, &sol), &var);
        let ls: Vec<LaurentMatrix> = lefts.iter().map(|u| from_poly_matrix(&u.extract(&v, &sol), &var)).collect();
        let left_ok = ls.iter().all(|l| {
            l.rows() == 0 || !scalar_det(&l.constant_part().expect("power series")).is_zero()
        });
        if left_ok && laurent_rank(&f.to_rows()) == n {
            return Some((ls, f));
        }
    }
    None
}
