//! Dense matrices of polynomials.

use std::fmt;

use thiserror::Error;

use super::field::{Field, Rational};
use super::poly::{MultiPoly, Vars};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix<K: Field = Rational> {
    rows: usize,
    cols: usize,
    vars: Vars,
    entries: Vec<MultiPoly<K>>,
}

impl<K: Field> PolyMatrix<K> {
    pub fn zero(vars: &Vars, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            vars: vars.clone(),
            entries: vec![MultiPoly::zero(vars); rows * cols],
        }
    }

    pub fn identity(vars: &Vars, n: usize) -> Self {
        Self::scalar(vars, n, &MultiPoly::one(vars))
    }

    /// `p · I_n`.
    pub fn scalar(vars: &Vars, n: usize, p: &MultiPoly<K>) -> Self {
        let mut m = Self::zero(vars, n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    /// Build from rows; every row must have the same length.
    pub fn from_rows(vars: &Vars, rows: Vec<Vec<MultiPoly<K>>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(MatrixError::Dimension("ragged rows".into()));
        }
        let entries = rows
            .into_iter()
            .flatten()
            .map(|p| if p.vars() == vars { p } else { p.embed(vars) })
            .collect();
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            vars: vars.clone(),
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly<K> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly<K>) {
        let p = if p.vars() == &self.vars { p } else { p.embed(&self.vars) };
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[MultiPoly<K>] {
        &self.entries
    }

    pub fn row_vec(&self, i: usize) -> Vec<MultiPoly<K>> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<MultiPoly<K>>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn map<F: Fn(&MultiPoly<K>) -> MultiPoly<K>>(&self, f: F) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars.clone(),
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars.clone(),
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|p| p.neg())
    }

    pub fn scale(&self, p: &MultiPoly<K>) -> Self {
        self.map(|e| e.mul(p))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product dimension mismatch");
        let mut out = Self::zero(&self.vars, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = MultiPoly::zero(&self.vars);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.entries[i * o.cols + j] = acc;
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(&self.vars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// First `(i, j, entry)` that is nonzero.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &MultiPoly<K>)> {
        self.entries
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_zero())
            .map(|(k, p)| (k / self.cols, k % self.cols, p))
    }

    /// Block diagonal `diag(self, o)`.
    pub fn block_diag(&self, o: &Self) -> Self {
        let mut out = Self::zero(&self.vars, self.rows + o.rows, self.cols + o.cols);
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
        out
    }

    /// Largest total degree of an entry (0 for the zero matrix).
    pub fn max_degree(&self) -> u32 {
        self.entries.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    /// Matrix of constant terms.
    pub fn constant_part(&self) -> Vec<Vec<K>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).constant_term()).collect())
            .collect()
    }

    /// Submatrix obtained by deleting row `r` and column `c`.
    pub fn minor_matrix(&self, r: usize, c: usize) -> Self {
        let mut out = Self::zero(&self.vars, self.rows - 1, self.cols - 1);
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            for j in 0..self.cols {
                if j == c {
                    continue;
                }
                let ii = if i > r { i - 1 } else { i };
                let jj = if j > c { j - 1 } else { j };
                out.entries[ii * out.cols + jj] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination with exact
    /// polynomial division.
    pub fn det(&self) -> Result<MultiPoly<K>, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(MultiPoly::one(&self.vars));
        }
        let mut a: Vec<Vec<MultiPoly<K>>> = self.to_rows();
        let mut sign = false;
        let mut prev = MultiPoly::one(&self.vars);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(MultiPoly::zero(&self.vars));
                };
                a.swap(k, p);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = MultiPoly::zero(&self.vars);
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign { d.neg() } else { d })
    }

    /// Determinant by the Leibniz permutation sum. Exponential; meant as an
    /// independent cross-check for small sizes.
    pub fn det_leibniz(&self) -> Result<MultiPoly<K>, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut acc = MultiPoly::zero(&self.vars);
        permute(&mut perm, 0, &mut |p| {
            let mut inversions = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if p[i] > p[j] {
                        inversions += 1;
                    }
                }
            }
            let mut t = MultiPoly::one(&self.vars);
            for (i, &pi) in p.iter().enumerate() {
                t = t.mul(self.get(i, pi));
                if t.is_zero() {
                    return;
                }
            }
            acc = if inversions % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        });
        Ok(acc)
    }

    /// Classical adjugate, `adj(A)·A = A·adj(A) = det(A)·I`.
    pub fn adjugate(&self) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(&self.vars, 1));
        }
        let mut out = Self::zero(&self.vars, n, n);
        for i in 0..n {
            for j in 0..n {
                let m = self.minor_matrix(j, i).det()?;
                out.set(i, j, if (i + j) % 2 == 0 { m } else { m.neg() });
            }
        }
        Ok(out)
    }

    /// Entry-wise substitution of variables.
    pub fn substitute(&self, images: &[MultiPoly<K>]) -> Self {
        let target = images
            .iter()
            .map(|p| p.vars().clone())
            .find(|v| !v.is_empty())
            .unwrap_or_else(|| self.vars.clone());
        let mut out = Self::zero(&target, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).substitute(images));
            }
        }
        out
    }
}

fn permute<F: FnMut(&[usize])>(p: &mut Vec<usize>, k: usize, f: &mut F) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

impl<K: Field> fmt::Display for PolyMatrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Determinant of a small dense matrix over a field (Gaussian elimination).
pub fn scalar_det<K: Field>(m: &[Vec<K>]) -> K {
    let n = m.len();
    let mut a: Vec<Vec<K>> = m.to_vec();
    let mut det = K::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return K::zero();
        };
        if p != k {
            a.swap(p, k);
            det = det.neg();
        }
        let piv = a[k][k].clone();
        det = det.mul(&piv);
        let inv = piv.inv().unwrap();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].mul(&inv);
            for j in k..n {
                let t = a[k][j].mul(&f);
                a[i][j] = a[i][j].sub(&t);
            }
        }
    }
    det
}

/// Rank of a small dense matrix over a field.
pub fn scalar_rank<K: Field>(m: &[Vec<K>]) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    super::linalg::rank(
        m.iter().map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| (c, x.clone()))
                .collect()
        }),
        cols,
    )
}
