//! Exact linear algebra.
//!
//! Two engines share the same incremental row-insertion scheme:
//!
//! * [`SparseRref`] works over any [`Field`] and produces kernels and
//!   particular solutions. Used for the bounded-degree solves.
//! * [`IntEchelon`] is fraction-free over the integers, with an `i128` fast
//!   path that falls back to `BigInt` on overflow. Used where only ranks are
//!   needed and the systems are large.
//!
//! Rows are inserted one at a time and reduced until their leading column is
//! new. The leading columns of the resulting semi-echelon basis are exactly
//! the columns that are not in the span of the columns before them, so the
//! number of leading columns below `k` is the rank of the first `k` columns.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::field::{Field, Rational};

/// Sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow<K> = Vec<(usize, K)>;

/// `a + s·b` on sparse rows, dropping cancellations.
fn axpy<K: Field>(a: &SparseRow<K>, s: &K, b: &SparseRow<K>) -> SparseRow<K> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, s.mul(&b[j].1)));
            j += 1;
        } else {
            let v = a[i].1.add(&s.mul(&b[j].1));
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row echelon form of a sparse system over a field.
#[derive(Clone, Debug)]
pub struct SparseRref<K: Field> {
    ncols: usize,
    /// Pivot column -> row with leading entry 1 at that column.
    rows: BTreeMap<usize, SparseRow<K>>,
    reduced: bool,
}

impl<K: Field> SparseRref<K> {
    pub fn new(ncols: usize) -> Self {
        SparseRref {
            ncols,
            rows: BTreeMap::new(),
            reduced: true,
        }
    }

    /// Insert a row (columns may be unsorted and repeated; they are summed).
    /// Returns true if the rank increased.
    pub fn insert(&mut self, row: SparseRow<K>) -> bool {
        let mut r = normalize_row(row);
        loop {
            let Some(&(c, ref v)) = r.first() else {
                return false;
            };
            match self.rows.get(&c) {
                Some(p) => {
                    let s = v.neg();
                    r = axpy(&r, &s, p);
                }
                None => {
                    let inv = v.inv().unwrap();
                    let r: SparseRow<K> = r.into_iter().map(|(c, x)| (c, x.mul(&inv))).collect();
                    self.rows.insert(c, r);
                    self.reduced = false;
                    return true;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Number of pivots in columns `< k`.
    pub fn rank_below(&self, k: usize) -> usize {
        self.rows.range(..k).count()
    }

    /// Back-substitute so every pivot column is zero outside its pivot row.
    pub fn reduce(&mut self) {
        if self.reduced {
            return;
        }
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for &pc in &pivots {
            let prow = self.rows[&pc].clone();
            let others: Vec<usize> = self.rows.range(..pc).map(|(k, _)| *k).collect();
            for oc in others {
                let row = self.rows.get(&oc).unwrap();
                if let Ok(idx) = row.binary_search_by_key(&pc, |e| e.0) {
                    let s = row[idx].1.neg();
                    let new = axpy(row, &s, &prow);
                    self.rows.insert(oc, new);
                }
            }
        }
        self.reduced = true;
    }

    /// Basis of the null space `{x : A x = 0}`, one vector per free column.
    pub fn kernel_basis(&mut self) -> Vec<Vec<K>> {
        self.reduce();
        let n = self.ncols;
        let mut basis = Vec::new();
        for free in 0..n {
            if self.rows.contains_key(&free) {
                continue;
            }
            let mut v = vec![K::zero(); n];
            v[free] = K::one();
            for (&pc, row) in &self.rows {
                if let Ok(idx) = row.binary_search_by_key(&free, |e| e.0) {
                    v[pc] = row[idx].1.neg();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// For an augmented system whose last column (`ncols - 1`) is the
    /// right-hand side: a particular solution with free variables set by
    /// `free_value`, or `None` if inconsistent.
    pub fn solve_augmented<F: FnMut(usize) -> K>(&mut self, mut free_value: F) -> Option<Vec<K>> {
        self.reduce();
        let rhs = self.ncols - 1;
        if self.rows.contains_key(&rhs) {
            return None;
        }
        let mut x = vec![K::zero(); rhs];
        for (c, xc) in x.iter_mut().enumerate() {
            if !self.rows.contains_key(&c) {
                *xc = free_value(c);
            }
        }
        let pcs: Vec<usize> = self.rows.keys().copied().collect();
        for pc in pcs {
            let row = &self.rows[&pc];
            // x_pc = rhs_value - sum_{free c} row[c] x_c ; row stores A|b with b at `rhs`
            let mut val = K::zero();
            for (c, v) in row.iter().skip(1) {
                if *c == rhs {
                    val = val.add(v);
                } else {
                    val = val.sub(&v.mul(&x[*c]));
                }
            }
            x[pc] = val;
        }
        Some(x)
    }
}

fn normalize_row<K: Field>(mut row: SparseRow<K>) -> SparseRow<K> {
    row.sort_by_key(|e| e.0);
    let mut out: SparseRow<K> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = lv.add(&v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// Rank of a sparse system over a field.
pub fn rank<K: Field>(rows: impl IntoIterator<Item = SparseRow<K>>, ncols: usize) -> usize {
    let mut e = SparseRref::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Solve a dense augmented system (last column = rhs). Free variables are
/// set to zero. Returns `None` if inconsistent.
pub fn dense_solve<K: Field>(rows: &mut [Vec<K>], ncols: usize) -> Option<Vec<K>> {
    let mut e = SparseRref::new(ncols + 1);
    for r in rows.iter() {
        e.insert(
            r.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect(),
        );
    }
    e.solve_augmented(|_| K::zero())
}

/// Random small integer in `[-bound, bound]` as a field element.
pub fn random_scalar<K: Field, R: Rng>(rng: &mut R, bound: i64) -> K {
    K::from_int(rng.gen_range(-bound..=bound))
}

/// Random element of the span of `basis` with small integer weights.
pub fn random_combination<K: Field, R: Rng>(rng: &mut R, basis: &[Vec<K>], len: usize) -> Vec<K> {
    let mut out = vec![K::zero(); len];
    for b in basis {
        let w: K = random_scalar(rng, 9);
        if w.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            if !x.is_zero() {
                *o = o.add(&w.mul(x));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Fraction-free integer echelon
// ---------------------------------------------------------------------------

/// Integer-like scalar for fraction-free elimination. Operations return
/// `None` on overflow.
pub trait EInt: Clone + std::fmt::Debug {
    fn from_bigint(b: &BigInt) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Self;
    fn gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl EInt for i128 {
    fn from_bigint(b: &BigInt) -> Option<Self> {
        b.to_i128()
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl EInt for BigInt {
    fn from_bigint(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

/// Semi-echelon basis over the integers, fraction-free with content removal.
pub struct IntEchelon<T: EInt> {
    rows: BTreeMap<usize, Vec<(usize, T)>>,
}

impl<T: EInt> Default for IntEchelon<T> {
    fn default() -> Self {
        IntEchelon {
            rows: BTreeMap::new(),
        }
    }
}

impl<T: EInt> IntEchelon<T> {
    /// Insert a row with sorted, distinct, nonzero entries. `None` on overflow.
    pub fn insert(&mut self, mut r: Vec<(usize, T)>) -> Option<bool> {
        loop {
            let Some((c, a)) = r.first().cloned() else {
                return Some(false);
            };
            match self.rows.get(&c) {
                Some(p) => {
                    let b = p[0].1.clone();
                    // r := b*r - a*p, then remove content
                    let g = a.gcd(&b);
                    let (bb, aa) = (b.div_exact(&g), a.div_exact(&g));
                    r = int_combine(&r, &bb, &aa, p)?;
                    make_primitive(&mut r);
                }
                None => {
                    make_primitive(&mut r);
                    if r[0].1.is_negative() {
                        for e in r.iter_mut() {
                            e.1 = e.1.neg();
                        }
                    }
                    self.rows.insert(c, r);
                    return Some(true);
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rank_below(&self, k: usize) -> usize {
        self.rows.range(..k).count()
    }
}

fn int_combine<T: EInt>(
    r: &[(usize, T)],
    b: &T,
    a: &T,
    p: &[(usize, T)],
) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let cr = r.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cp = p.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if cr < cp {
            out.push((cr, r[i].1.mul(b)?));
            i += 1;
        } else if cp < cr {
            out.push((cp, p[j].1.mul(a)?.neg()));
            j += 1;
        } else {
            let v = r[i].1.mul(b)?.sub(&p[j].1.mul(a)?)?;
            if !v.is_zero() {
                out.push((cr, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn make_primitive<T: EInt>(r: &mut [(usize, T)]) {
    let mut g: Option<T> = None;
    for (_, v) in r.iter() {
        g = Some(match g {
            None => v.gcd(v),
            Some(g) => g.gcd(v),
        });
        if g.as_ref().is_some_and(|g| g.is_one()) {
            return;
        }
    }
    if let Some(g) = g {
        if !g.is_zero() && !g.is_one() {
            for e in r.iter_mut() {
                e.1 = e.1.div_exact(&g);
            }
        }
    }
}

/// Integer rows obtained by clearing denominators of rational rows.
pub fn integer_rows(rows: &[SparseRow<Rational>]) -> Vec<Vec<(usize, BigInt)>> {
    rows.iter()
        .map(|r| {
            let r = normalize_row(r.clone());
            let mut l = BigInt::one();
            for (_, v) in &r {
                l = l.lcm(v.denom());
            }
            r.into_iter()
                .map(|(c, v)| (c, (v * Rational::from_integer(l.clone())).to_integer()))
                .collect()
        })
        .collect()
}

/// Ranks of a rational system: `(rank of all columns, rank of columns < k)`,
/// computed fraction-free with an `i128` fast path.
pub fn rank_with_prefix(rows: &[SparseRow<Rational>], k: usize) -> (usize, usize) {
    let ints = integer_rows(rows);
    if let Some(r) = try_rank::<i128>(&ints, k) {
        return r;
    }
    try_rank::<BigInt>(&ints, k).expect("bigint elimination cannot overflow")
}

fn try_rank<T: EInt>(rows: &[Vec<(usize, BigInt)>], k: usize) -> Option<(usize, usize)> {
    let mut e = IntEchelon::<T>::default();
    for r in rows {
        let conv: Option<Vec<(usize, T)>> =
            r.iter().map(|(c, v)| T::from_bigint(v).map(|t| (*c, t))).collect();
        e.insert(conv?)?;
    }
    Some((e.rank(), e.rank_below(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{q, qq};

    fn row(v: &[(usize, i64)]) -> SparseRow<Rational> {
        v.iter().map(|&(c, x)| (c, q(x))).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let mut e = SparseRref::new(3);
        e.insert(row(&[(0, 1), (1, 2), (2, 3)]));
        e.insert(row(&[(0, 2), (1, 4), (2, 6)]));
        e.insert(row(&[(1, 1), (2, 1)]));
        assert_eq!(e.rank(), 2);
        let k = e.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![q(-1), q(-1), q(1)]);
    }

    #[test]
    fn augmented_solve() {
        // x + y = 3, x - y = 1
        let mut rows = vec![vec![q(1), q(1), q(3)], vec![q(1), q(-1), q(1)]];
        let s = dense_solve(&mut rows, 2).unwrap();
        assert_eq!(s, vec![q(2), q(1)]);
        let mut bad = vec![vec![q(1), q(1), q(3)], vec![q(2), q(2), q(1)]];
        assert!(dense_solve(&mut bad, 2).is_none());
        let mut frac = vec![vec![q(3), qq(1, 2)]];
        assert_eq!(dense_solve(&mut frac, 1).unwrap(), vec![qq(1, 6)]);
    }

    #[test]
    fn integer_and_rational_ranks_agree() {
        let rows = vec![
            row(&[(0, 3), (2, 5)]),
            row(&[(1, 7), (2, -1)]),
            row(&[(0, 6), (1, 7), (2, 9)]),
            row(&[(2, 4)]),
        ];
        let (r, r1) = rank_with_prefix(&rows, 2);
        assert_eq!(r, rank(rows.clone(), 3));
        assert_eq!(r, 3);
        assert_eq!(r1, 2);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = 1i64 << 62;
        let rows = vec![
            row(&[(0, big), (1, 1)]),
            row(&[(0, big - 1), (1, big)]),
            row(&[(0, 1), (1, big - 3), (2, 1)]),
        ];
        let (r, _) = rank_with_prefix(&rows, 1);
        assert_eq!(r, 3);
    }
}
