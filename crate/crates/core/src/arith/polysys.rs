//! Linear systems whose unknowns are the coefficients of polynomial matrices.
//!
//! An [`UnknownMatrix`] is a matrix whose entries are generic polynomials
//! supported on a fixed list of monomials. Matrix identities that are linear
//! in such unknowns (for example `L·X·R − Y = C`) are expanded coefficient by
//! coefficient into a sparse system over the rationals by [`EqBuilder`].

use std::collections::HashMap;

use super::field::{Field, Rational};
use super::linalg::SparseRow;
use super::matrix::PolyMatrix;
use super::poly::{Monomial, MultiPoly, Vars};

/// Matrix of unknown polynomials with entries supported on `monos`.
#[derive(Clone, Debug)]
pub struct UnknownMatrix {
    pub rows: usize,
    pub cols: usize,
    pub monos: Vec<Monomial>,
    /// Index of the first unknown of this block in the global column space.
    pub offset: usize,
}

impl UnknownMatrix {
    pub fn new(rows: usize, cols: usize, monos: Vec<Monomial>, offset: usize) -> Self {
        UnknownMatrix {
            rows,
            cols,
            monos,
            offset,
        }
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols * self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn end(&self) -> usize {
        self.offset + self.len()
    }

    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        self.offset + (i * self.cols + j) * self.monos.len() + k
    }

    /// Inverse of [`Self::index`].
    pub fn locate(&self, col: usize) -> (usize, usize, usize) {
        let r = col - self.offset;
        let nm = self.monos.len();
        let k = r % nm;
        let e = r / nm;
        (e / self.cols, e % self.cols, k)
    }

    /// Read a solution vector back into a polynomial matrix.
    pub fn extract<K: Field>(&self, vars: &Vars, sol: &[K]) -> PolyMatrix<K> {
        let mut m = PolyMatrix::zero(vars, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let p = MultiPoly::from_terms(
                    vars,
                    self.monos
                        .iter()
                        .enumerate()
                        .map(|(k, mono)| (mono.clone(), sol[self.index(i, j, k)].clone())),
                );
                m.set(i, j, p);
            }
        }
        m
    }
}

/// Accumulates equations `Σ coefficient·unknown = rhs`, one per
/// `(block, entry, monomial)` triple.
pub struct EqBuilder<K: Field = Rational> {
    index: HashMap<(usize, usize, Monomial), usize>,
    rows: Vec<SparseRow<K>>,
    rhs: Vec<K>,
    cap: Option<u32>,
}

impl<K: Field> Default for EqBuilder<K> {
    fn default() -> Self {
        EqBuilder {
            index: HashMap::new(),
            rows: Vec::new(),
            rhs: Vec::new(),
            cap: None,
        }
    }
}

impl<K: Field> EqBuilder<K> {
    /// Only impose equations on monomials of total degree `<= cap`, i.e.
    /// work modulo the ideal of monomials of degree `cap + 1`.
    pub fn truncated(cap: u32) -> Self {
        EqBuilder {
            cap: Some(cap),
            ..Self::default()
        }
    }

    fn kept(&self, m: &Monomial) -> bool {
        self.cap.is_none_or(|c| m.degree() <= c)
    }

    fn row_for(&mut self, block: usize, entry: usize, m: &Monomial) -> usize {
        if let Some(&r) = self.index.get(&(block, entry, m.clone())) {
            return r;
        }
        let r = self.rows.len();
        self.index.insert((block, entry, m.clone()), r);
        self.rows.push(Vec::new());
        self.rhs.push(K::zero());
        r
    }

    /// Add `coef · mono` times unknown `col` to equation `(block, entry)`.
    pub fn add(&mut self, block: usize, entry: usize, mono: &Monomial, col: usize, coef: K) {
        if !self.kept(mono) {
            return;
        }
        let r = self.row_for(block, entry, mono);
        self.rows[r].push((col, coef));
    }

    /// Add a known polynomial to the right-hand side of `(block, entry)`.
    pub fn add_rhs(&mut self, block: usize, entry: usize, p: &MultiPoly<K>) {
        for (m, c) in p.terms() {
            if !self.kept(m) {
                continue;
            }
            let r = self.row_for(block, entry, m);
            self.rhs[r] = self.rhs[r].add(c);
        }
    }

    /// Add `sign · L·X·R` to equation block `block`, where `L` and `R` are
    /// known matrices (`None` = identity) and `X` is unknown.
    pub fn add_lxr(
        &mut self,
        block: usize,
        l: Option<&PolyMatrix<K>>,
        x: &UnknownMatrix,
        r: Option<&PolyMatrix<K>>,
        sign: &K,
    ) {
        let out_rows = l.map_or(x.rows, |l| l.rows());
        let out_cols = r.map_or(x.cols, |r| r.cols());
        let vars_n = x.monos.first().map_or(0, |m| m.0.len());
        let one = Monomial::one(vars_n);
        for i in 0..out_rows {
            for j in 0..out_cols {
                let entry = i * out_cols + j;
                for p in 0..x.rows {
                    let lterms: Vec<(Monomial, K)> = match l {
                        Some(l) => l.get(i, p).terms().map(|(m, c)| (m.clone(), c.clone())).collect(),
                        None if i == p => vec![(one.clone(), K::one())],
                        None => vec![],
                    };
                    if lterms.is_empty() {
                        continue;
                    }
                    for qq in 0..x.cols {
                        let rterms: Vec<(Monomial, K)> = match r {
                            Some(r) => r.get(qq, j).terms().map(|(m, c)| (m.clone(), c.clone())).collect(),
                            None if qq == j => vec![(one.clone(), K::one())],
                            None => vec![],
                        };
                        if rterms.is_empty() {
                            continue;
                        }
                        for (lm, lc) in &lterms {
                            for (rm, rc) in &rterms {
                                let lr = lm.mul(rm);
                                let c = lc.mul(rc).mul(sign);
                                for (k, mono) in x.monos.iter().enumerate() {
                                    self.add(block, entry, &lr.mul(mono), x.index(p, qq, k), c.clone());
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    /// Add every entry of a known matrix to the right-hand sides of `block`.
    pub fn add_rhs_matrix(&mut self, block: usize, m: &PolyMatrix<K>) {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                self.add_rhs(block, i * m.cols() + j, m.get(i, j));
            }
        }
    }

    pub fn num_equations(&self) -> usize {
        self.rows.len()
    }

    /// Homogeneous rows (right-hand sides dropped).
    pub fn into_rows(self) -> Vec<SparseRow<K>> {
        self.rows
    }

    /// Rows augmented with the right-hand side at column `ncols`.
    pub fn into_augmented(self, ncols: usize) -> Vec<SparseRow<K>> {
        self.rows
            .into_iter()
            .zip(self.rhs)
            .map(|(mut r, b)| {
                if !b.is_zero() {
                    r.push((ncols, b));
                }
                r
            })
            .collect()
    }
}
