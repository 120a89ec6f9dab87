//! Stable Hom and Ext dimensions between matrix factorizations.
//!
//! A morphism `coker φ_a → coker φ_b` lifts to a pair `(C, D)` with
//! `C·φ_a = φ_b·D`; it vanishes in the stable category when
//! `C = φ_b·U + u_b·V·ψ_a` and `D = U·φ_a + u_a·ψ_b·V` for some `U, V`.
//! Over the local ring both spaces are infinite-dimensional but their
//! quotient has finite length, so it is computed on jets. At truncation
//! order `N` the dimension of
//!
//! `π_N(cycles) / π_N(homotopies)`
//!
//! is found from ranks alone, where `π_N` keeps the coefficients of total
//! degree `< N`. Cycles are exact polynomial solutions of degree at most
//! `N − 1 + h`, with `h` the largest degree in the homotopy operators, so
//! every truncated homotopy is the image of a cycle in range. A value is
//! accepted once two consecutive orders agree.

use thiserror::Error;

use crate::arith::linalg::{rank_with_prefix, SparseRow};
use crate::arith::poly::monomials_up_to;
use crate::arith::polysys::{EqBuilder, UnknownMatrix};
use crate::arith::{q, PolyMatrix, Rational};
use crate::arith::{parse_poly, vars};
use crate::mf::{adjugate_partner, shift, HypersurfaceSpec, MatrixFactorization};

type M = PolyMatrix<Rational>;

/// Truncation order used when none is given.
pub const DEFAULT_TRUNCATION: u32 = 4;
/// Largest order tried by [`stable_hom_dim_auto`] unless told otherwise.
pub const DEFAULT_MAX_TRUNCATION: u32 = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtError {
    #[error("dimension not stabilized: {low} at order {order}, {high} at order {}", order + 1)]
    NotStabilized { order: u32, low: usize, high: usize },
    #[error("factorizations live over different rings")]
    RingMismatch,
    #[error("truncation order must be at least 2, got {0}")]
    Order(u32),
    #[error("Ext index must be positive")]
    Index,
}

/// Stable Hom from `source` to `target` at a truncation order.
#[derive(Clone, Debug)]
pub struct StableHomProblem<'a> {
    pub source: &'a MatrixFactorization,
    pub target: &'a MatrixFactorization,
    pub order: u32,
}

impl<'a> StableHomProblem<'a> {
    pub fn new(source: &'a MatrixFactorization, target: &'a MatrixFactorization, order: u32) -> Result<Self, ExtError> {
        if source.ring() != target.ring() {
            return Err(ExtError::RingMismatch);
        }
        if order < 2 {
            return Err(ExtError::Order(order));
        }
        Ok(StableHomProblem { source, target, order })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtReport {
    pub index: u32,
    pub dimension: usize,
    /// `(order, dimension at that order)` for every order computed.
    pub orders: Vec<(u32, usize)>,
    pub stabilized: bool,
}

/// The four operator matrices of the homotopy map.
struct Operators {
    phi_a: M,
    phi_b: M,
    /// `u_b·ψ_a`.
    psi_a: M,
    /// `u_a·ψ_b`.
    psi_b: M,
}

impl Operators {
    fn new(a: &MatrixFactorization, b: &MatrixFactorization) -> Self {
        Operators {
            phi_a: a.phi().clone(),
            phi_b: b.phi().clone(),
            psi_a: a.psi().scale(b.unit()),
            psi_b: b.psi().scale(a.unit()),
        }
    }

    fn max_degree(&self) -> u32 {
        [&self.phi_a, &self.phi_b, &self.psi_a, &self.psi_b]
            .iter()
            .map(|m| m.max_degree())
            .max()
            .unwrap_or(0)
    }

    /// `(C, D)` for homotopy data `(U, V)`.
    fn apply(&self, u: &M, v: &M) -> (M, M) {
        let c = self.phi_b.mul(u).add(&v.mul(&self.psi_a));
        let d = u.mul(&self.phi_a).add(&self.psi_b.mul(v));
        (c, d)
    }

    fn is_cycle(&self, c: &M, d: &M) -> bool {
        c.mul(&self.phi_a) == self.phi_b.mul(d)
    }
}

/// Every homotopy is a cycle. By linearity it suffices to check the
/// images of the constant matrix units.
pub fn homotopies_are_cycles(a: &MatrixFactorization, b: &MatrixFactorization) -> bool {
    let ops = Operators::new(a, b);
    let (nb, na) = (b.size(), a.size());
    let vars = a.vars();
    let zero = M::zero(vars, nb, na);
    for i in 0..nb {
        for j in 0..na {
            let mut e = zero.clone();
            e.set(i, j, crate::arith::MultiPoly::one(vars));
            for (u, v) in [(&e, &zero), (&zero, &e)] {
                let (c, d) = ops.apply(u, v);
                if !ops.is_cycle(&c, &d) {
                    return false;
                }
            }
        }
    }
    true
}

/// Dimension of `π_N(cycles) / π_N(homotopies)` at a single order.
pub fn stable_hom_dim_at(a: &MatrixFactorization, b: &MatrixFactorization, order: u32) -> usize {
    let ops = Operators::new(a, b);
    let vars = a.vars();
    let nv = vars.len();
    let (nb, na) = (b.size(), a.size());
    let n = order;
    let d = n - 1 + ops.max_degree();

    // Cycles of degree <= d: C·φ_a − φ_b·D = 0.
    let monos = monomials_up_to(nv, d);
    let c = UnknownMatrix::new(nb, na, monos.clone(), 0);
    let dm = UnknownMatrix::new(nb, na, monos, c.end());
    let ncols = dm.end();
    let mut eb = EqBuilder::<Rational>::default();
    eb.add_lxr(0, None, &c, Some(&ops.phi_a), &q(1));
    eb.add_lxr(0, Some(&ops.phi_b), &dm, None, &q(-1));
    // High-degree unknowns first, so the rank of that column block is the
    // number of pivots below it.
    let is_high = |col: usize| {
        let blk = if col < c.end() { &c } else { &dm };
        blk.monos[blk.locate(col).2].degree() >= n
    };
    let mut perm = vec![0usize; ncols];
    let mut next = 0;
    for (col, p) in perm.iter_mut().enumerate() {
        if is_high(col) {
            *p = next;
            next += 1;
        }
    }
    let n_high = next;
    for (col, p) in perm.iter_mut().enumerate() {
        if !is_high(col) {
            *p = next;
            next += 1;
        }
    }
    let n_low = ncols - n_high;
    let rows: Vec<SparseRow<Rational>> = eb
        .into_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|(col, v)| (perm[col], v)).collect())
        .collect();
    let (rank_a, rank_high) = rank_with_prefix(&rows, n_high);
    let cycles = n_low + rank_high - rank_a;

    // Truncated homotopies: U, V of degree < N, images kept below degree N.
    let low = monomials_up_to(nv, n - 1);
    let u = UnknownMatrix::new(nb, na, low.clone(), 0);
    let v = UnknownMatrix::new(nb, na, low, u.end());
    let mut hb = EqBuilder::<Rational>::truncated(n - 1);
    hb.add_lxr(0, Some(&ops.phi_b), &u, None, &q(1));
    hb.add_lxr(0, None, &v, Some(&ops.psi_a), &q(1));
    hb.add_lxr(1, None, &u, Some(&ops.phi_a), &q(1));
    hb.add_lxr(1, Some(&ops.psi_b), &v, None, &q(1));
    let (homotopies, _) = rank_with_prefix(&hb.into_rows(), 0);

    assert!(homotopies <= cycles, "truncated homotopies exceed truncated cycles");
    cycles - homotopies
}

/// Stable Hom dimension at `order` and `order + 1`; an error if they differ.
pub fn stable_hom_dim(p: &StableHomProblem) -> Result<ExtReport, ExtError> {
    let low = stable_hom_dim_at(p.source, p.target, p.order);
    let high = stable_hom_dim_at(p.source, p.target, p.order + 1);
    if low != high {
        return Err(ExtError::NotStabilized {
            order: p.order,
            low,
            high,
        });
    }
    Ok(ExtReport {
        index: 0,
        dimension: low,
        orders: vec![(p.order, low), (p.order + 1, high)],
        stabilized: true,
    })
}

/// Raise the order from `start` until two consecutive orders agree, up to
/// `max`.
pub fn stable_hom_dim_auto(
    a: &MatrixFactorization,
    b: &MatrixFactorization,
    start: u32,
    max: u32,
) -> Result<ExtReport, ExtError> {
    StableHomProblem::new(a, b, start)?;
    let mut orders = vec![(start, stable_hom_dim_at(a, b, start))];
    let mut t = start;
    while t < max {
        t += 1;
        let dim = stable_hom_dim_at(a, b, t);
        let prev = orders.last().unwrap().1;
        orders.push((t, dim));
        if dim == prev {
            return Ok(ExtReport {
                index: 0,
                dimension: dim,
                orders,
                stabilized: true,
            });
        }
    }
    let n = orders.len();
    Err(ExtError::NotStabilized {
        order: orders[n.saturating_sub(2)].0,
        low: orders[n.saturating_sub(2)].1,
        high: orders[n - 1].1,
    })
}

/// `Ext^i(coker φ_a, coker φ_b)` for `i ≥ 1`: even degrees are the stable
/// Hom from `a`, odd degrees the stable Hom from the shift of `a`.
pub fn ext_dim(i: u32, a: &MatrixFactorization, b: &MatrixFactorization, order: u32) -> Result<ExtReport, ExtError> {
    if i == 0 {
        return Err(ExtError::Index);
    }
    let shifted;
    let source = if i.is_multiple_of(2) {
        a
    } else {
        shifted = shift(a);
        &shifted
    };
    let mut r = stable_hom_dim(&StableHomProblem::new(source, b, order)?)?;
    r.index = i;
    Ok(r)
}

/// [`ext_dim`] with automatic raising of the order up to `max`.
pub fn ext_dim_auto(i: u32, a: &MatrixFactorization, b: &MatrixFactorization, start: u32, max: u32) -> Result<ExtReport, ExtError> {
    if i == 0 {
        return Err(ExtError::Index);
    }
    let shifted;
    let source = if i.is_multiple_of(2) {
        a
    } else {
        shifted = shift(a);
        &shifted
    };
    let mut r = stable_hom_dim_auto(source, b, start, max)?;
    r.index = i;
    Ok(r)
}

/// Two-dimensional Serre duality in the stable category:
/// `dim Hom(a, b) = dim Hom(b, a[1])`, each side stabilized from `order`.
pub fn serre_duality_check(a: &MatrixFactorization, b: &MatrixFactorization, order: u32) -> Result<bool, ExtError> {
    let lhs = stable_hom_dim_auto(a, b, order, order.max(DEFAULT_MAX_TRUNCATION))?;
    let rhs = stable_hom_dim_auto(b, &shift(a), order, order.max(DEFAULT_MAX_TRUNCATION))?;
    Ok(lhs.dimension == rhs.dimension)
}

/// `xyz` over `x, y, z` with components `x`, `y`, `z`.
pub fn normal_crossing_ring() -> HypersurfaceSpec {
    let v = vars(&["x", "y", "z"]);
    let p = |s: &str| parse_poly(s, &v).expect("ring polynomial");
    HypersurfaceSpec::new(&v, p("x*y*z"), Some(vec![p("x"), p("y"), p("z")])).expect("xyz ring")
}

/// The presentation matrices `M`, `N`, `K` of the reference session over
/// `xyz = 0`, each with its partner from the adjugate. Columns are the
/// listed module generators. `M` carries the unit `1 + yz²`.
pub fn session_modules() -> [MatrixFactorization; 3] {
    let ring = normal_crossing_ring();
    let v = ring.vars().clone();
    let mat = |rows: &[&[&str]]| {
        M::from_rows(
            &v,
            rows.iter()
                .map(|r| r.iter().map(|s| parse_poly(s, &v).expect("entry")).collect())
                .collect(),
        )
        .expect("rectangular")
    };
    let m = mat(&[&["x", "z^3", "0"], &["0", "y", "x"], &["y^2", "0", "z"]]);
    let n = mat(&[&["x", "0", "0"], &["z^3", "y", "0"], &["y^2", "x", "z"]]);
    let k = mat(&[&["x*y", "-x^2 + y^3"], &["0", "z"]]);
    [m, n, k].map(|phi| adjugate_partner(&ring, &phi).expect("session module"))
}
