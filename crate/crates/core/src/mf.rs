//! Matrix factorizations over a hypersurface `S/(f)`.
//!
//! A factorization is a pair `(φ, ψ)` of square polynomial matrices with
//! `φψ = ψφ = u·f·I`, where `u` is a unit of the local ring at the origin
//! (a polynomial with nonzero constant term). Most factorizations have
//! `u = 1`; a nonconstant `u` is needed when `det φ` carries a unit factor,
//! since the partner then only exists after inverting that unit.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::linalg::{random_combination, SparseRref};
use crate::arith::matrix::scalar_det;
use crate::arith::poly::monomials_up_to;
use crate::arith::polysys::{EqBuilder, UnknownMatrix};
use crate::arith::ratfunc::poly_gcd;
use crate::arith::{divide_out, q, Field, MultiPoly, PolyMatrix, Rational, Vars};

type P = MultiPoly<Rational>;
type M = PolyMatrix<Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MfError {
    #[error("identity fails: ({product})[{i},{j}] - u*f*delta = {residual}")]
    IdentityFails {
        product: &'static str,
        i: usize,
        j: usize,
        residual: String,
    },
    #[error("matrices must be square of equal size, got {0}")]
    Shape(String),
    #[error("factorizations live over different rings")]
    RingMismatch,
    #[error("no partner with entries of degree <= {0}")]
    NoSolutionAtBound(u32),
    #[error("det(phi) does not divide a power of f")]
    DetNotDividing,
    #[error("unit cofactor {0} is not a unit of the local ring")]
    CofactorNotUnit(String),
    #[error("ring has no irreducible factor list")]
    MissingFactors,
    #[error("invalid ring: {0}")]
    BadRing(String),
    #[error("{0} is not a unit of the local ring")]
    NotUnit(String),
}

/// `S/(f)` with `S` the polynomial ring over `vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceSpec {
    vars: Vars,
    f: P,
    factors: Option<Vec<P>>,
}

impl HypersurfaceSpec {
    /// Validates that `f` is a nonzero non-unit and, when factors are given,
    /// that their product equals `f` up to a local unit and that no two of
    /// them are associate.
    pub fn new(vars: &Vars, f: P, factors: Option<Vec<P>>) -> Result<Self, MfError> {
        let f = f.embed(vars);
        if f.is_zero() {
            return Err(MfError::BadRing("f is zero".into()));
        }
        if f.is_local_unit() {
            return Err(MfError::BadRing(format!("f = {f} is a unit")));
        }
        let factors = factors.map(|fs| fs.into_iter().map(|p| p.embed(vars)).collect::<Vec<_>>());
        if let Some(fs) = &factors {
            let mut prod = P::one(vars);
            for g in fs {
                if g.is_zero() || g.is_local_unit() {
                    return Err(MfError::BadRing(format!("factor {g} is zero or a unit")));
                }
                prod = prod.mul(g);
            }
            match f.exact_div(&prod) {
                Some(c) if c.is_local_unit() => {}
                _ => {
                    return Err(MfError::BadRing(
                        "product of factors differs from f by more than a unit".into(),
                    ))
                }
            }
            for (i, a) in fs.iter().enumerate() {
                for b in &fs[i + 1..] {
                    if a.exact_div(b).is_some_and(|c| c.is_local_unit()) {
                        return Err(MfError::BadRing(format!("factors {a} and {b} are associate")));
                    }
                }
            }
        }
        Ok(HypersurfaceSpec {
            vars: vars.clone(),
            f,
            factors,
        })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn f(&self) -> &P {
        &self.f
    }

    pub fn factors(&self) -> Option<&[P]> {
        self.factors.as_deref()
    }

    pub fn parse_poly(&self, s: &str) -> Result<P, crate::arith::ParseError> {
        crate::arith::parse_poly(s, &self.vars)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorization {
    ring: HypersurfaceSpec,
    phi: M,
    psi: M,
    unit: P,
}

/// Checks `a·b = u·f·I` entrywise and reports the first offending entry.
fn check_product(a: &M, b: &M, uf: &P, label: &'static str) -> Result<(), MfError> {
    let prod = a.mul(b);
    for i in 0..prod.rows() {
        for j in 0..prod.cols() {
            let expect = if i == j { uf.clone() } else { P::zero(a.vars()) };
            let r = prod.get(i, j).sub(&expect);
            if !r.is_zero() {
                return Err(MfError::IdentityFails {
                    product: label,
                    i,
                    j,
                    residual: r.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Validate `φψ = ψφ = f·I`.
pub fn verify_mf(ring: &HypersurfaceSpec, phi: M, psi: M) -> Result<MatrixFactorization, MfError> {
    verify_mf_with_unit(ring, phi, psi, P::one(ring.vars()))
}

/// Validate `φψ = ψφ = u·f·I` for a local unit `u`.
pub fn verify_mf_with_unit(
    ring: &HypersurfaceSpec,
    phi: M,
    psi: M,
    unit: P,
) -> Result<MatrixFactorization, MfError> {
    if !phi.is_square() || !psi.is_square() || phi.rows() != psi.rows() {
        return Err(MfError::Shape(format!(
            "phi {}x{}, psi {}x{}",
            phi.rows(),
            phi.cols(),
            psi.rows(),
            psi.cols()
        )));
    }
    let unit = unit.embed(ring.vars());
    if !unit.is_local_unit() {
        return Err(MfError::NotUnit(unit.to_string()));
    }
    let phi = if phi.vars() == ring.vars() { phi } else { phi.map(|p| p.embed(ring.vars())) };
    let psi = if psi.vars() == ring.vars() { psi } else { psi.map(|p| p.embed(ring.vars())) };
    let uf = unit.mul(ring.f());
    check_product(&phi, &psi, &uf, "phi*psi")?;
    check_product(&psi, &phi, &uf, "psi*phi")?;
    Ok(MatrixFactorization {
        ring: ring.clone(),
        phi,
        psi,
        unit,
    })
}

impl MatrixFactorization {
    pub fn ring(&self) -> &HypersurfaceSpec {
        &self.ring
    }

    pub fn phi(&self) -> &M {
        &self.phi
    }

    pub fn psi(&self) -> &M {
        &self.psi
    }

    pub fn unit(&self) -> &P {
        &self.unit
    }

    pub fn size(&self) -> usize {
        self.phi.rows()
    }

    pub fn vars(&self) -> &Vars {
        self.ring.vars()
    }

    /// Re-run the defining identities.
    pub fn reverify(&self) -> Result<(), MfError> {
        let uf = self.unit.mul(self.ring.f());
        check_product(&self.phi, &self.psi, &uf, "phi*psi")?;
        check_product(&self.psi, &self.phi, &uf, "psi*phi")
    }
}

/// All entries of `φ` and `ψ` lie in the maximal ideal.
pub fn is_reduced(mf: &MatrixFactorization) -> bool {
    mf.phi.entries().iter().chain(mf.psi.entries()).all(|p| p.constant_term().is_zero())
}

/// Syzygy shift: `(φ, ψ) ↦ (ψ, φ)`.
pub fn shift(mf: &MatrixFactorization) -> MatrixFactorization {
    MatrixFactorization {
        ring: mf.ring.clone(),
        phi: mf.psi.clone(),
        psi: mf.phi.clone(),
        unit: mf.unit.clone(),
    }
}

/// Block-diagonal sum. When the units differ, each block is rescaled so that
/// both carry the product of the units.
pub fn direct_sum(a: &MatrixFactorization, b: &MatrixFactorization) -> Result<MatrixFactorization, MfError> {
    if a.ring != b.ring {
        return Err(MfError::RingMismatch);
    }
    let (pa, pb) = if a.unit == b.unit {
        (a.psi.clone(), b.psi.clone())
    } else {
        (a.psi.scale(&b.unit), b.psi.scale(&a.unit))
    };
    let unit = if a.unit == b.unit { a.unit.clone() } else { a.unit.mul(&b.unit) };
    Ok(MatrixFactorization {
        ring: a.ring.clone(),
        phi: a.phi.block_diag(&b.phi),
        psi: pa.block_diag(&pb),
        unit,
    })
}

/// The unit `c` with `det φ = c · g` where `g` divides a power of `f`,
/// obtained by repeatedly removing common factors with `f`.
fn det_unit_cofactor(ring: &HypersurfaceSpec, det: &P) -> Result<P, MfError> {
    if det.is_zero() {
        return Err(MfError::DetNotDividing);
    }
    let mut c = det.clone();
    loop {
        let g = poly_gcd(&c, ring.f());
        if g.is_constant() {
            break;
        }
        c = c.exact_div(&g).expect("gcd divides");
    }
    if c.is_local_unit() {
        Ok(c)
    } else {
        Err(MfError::DetNotDividing)
    }
}

/// Find `ψ` with entries of total degree at most `degree_bound` such that
/// `φψ = u·f·I`, where `u` is the unit cofactor of `det φ`, by an exact
/// linear solve on the unknown coefficients of `ψ`. Constant units are
/// normalized away, so the result has `u = 1` whenever possible.
pub fn complete_to_mf(ring: &HypersurfaceSpec, phi: &M, degree_bound: u32) -> Result<MatrixFactorization, MfError> {
    if !phi.is_square() {
        return Err(MfError::Shape(format!("phi {}x{}", phi.rows(), phi.cols())));
    }
    let phi = phi.map(|p| p.embed(ring.vars()));
    let det = phi.det().map_err(|e| MfError::Shape(e.to_string()))?;
    let c = det_unit_cofactor(ring, &det)?;
    let (unit, scale) = if c.is_constant() {
        (P::one(ring.vars()), c.constant_term())
    } else {
        (c, q(1))
    };
    let n = phi.rows();
    let vars = ring.vars();
    let x = UnknownMatrix::new(n, n, monomials_up_to(vars.len(), degree_bound), 0);
    let ncols = x.len();
    let mut eb = EqBuilder::default();
    eb.add_lxr(0, Some(&phi), &x, None, &q(1));
    let target = PolyMatrix::scalar(vars, n, &unit.mul(ring.f()).scale(&scale));
    eb.add_rhs_matrix(0, &target);
    let mut rref = SparseRref::new(ncols + 1);
    for r in eb.into_augmented(ncols) {
        rref.insert(r);
    }
    let sol = rref
        .solve_augmented(|_| Rational::zero())
        .ok_or(MfError::NoSolutionAtBound(degree_bound))?;
    let psi = x.extract(vars, &sol);
    let psi = psi.map(|p| p.scale(&scale.inv().unwrap()));
    verify_mf_with_unit(ring, phi, psi, unit)
}

/// Partner from the adjugate: if `det φ = u·f^k` with `u` a local unit,
/// then `ψ = adj(φ)/f^{k−1}` satisfies `φψ = u·f·I`. Constant units are
/// normalized to 1.
pub fn adjugate_partner(ring: &HypersurfaceSpec, phi: &M) -> Result<MatrixFactorization, MfError> {
    if !phi.is_square() || phi.rows() == 0 {
        return Err(MfError::Shape(format!("phi {}x{}", phi.rows(), phi.cols())));
    }
    let phi = phi.map(|p| p.embed(ring.vars()));
    let det = phi.det().map_err(|e| MfError::Shape(e.to_string()))?;
    let (k, u) = divide_out(&det, ring.f()).map_err(|e| MfError::BadRing(e.to_string()))?;
    if k == 0 {
        return Err(MfError::DetNotDividing);
    }
    if !u.is_local_unit() {
        return Err(MfError::CofactorNotUnit(u.to_string()));
    }
    let adj = phi.adjugate().map_err(|e| MfError::Shape(e.to_string()))?;
    let fk = ring.f().pow(k - 1);
    let mut psi = PolyMatrix::zero(ring.vars(), phi.rows(), phi.rows());
    for i in 0..phi.rows() {
        for j in 0..phi.rows() {
            psi.set(i, j, adj.get(i, j).exact_div(&fk).ok_or(MfError::DetNotDividing)?);
        }
    }
    if u.is_constant() {
        let c = u.constant_term().inv().expect("nonzero");
        verify_mf(ring, phi, psi.map(|p| p.scale(&c)))
    } else {
        verify_mf_with_unit(ring, phi, psi, u)
    }
}

/// Exponents of the irreducible factors in `det φ` and the unit cofactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multirank {
    pub ranks: Vec<u32>,
    pub unit: P,
}

pub fn multirank(mf: &MatrixFactorization) -> Result<Multirank, MfError> {
    let factors = mf.ring.factors().ok_or(MfError::MissingFactors)?;
    let mut cof = mf.phi.det().map_err(|e| MfError::Shape(e.to_string()))?;
    let mut ranks = Vec::with_capacity(factors.len());
    for g in factors {
        let (e, c) = divide_out(&cof, g).map_err(|e| MfError::BadRing(e.to_string()))?;
        ranks.push(e);
        cof = c;
    }
    if !cof.is_local_unit() {
        return Err(MfError::CofactorNotUnit(cof.to_string()));
    }
    Ok(Multirank { ranks, unit: cof })
}

/// Result of an equivalence search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// `S·φ_a = φ_b·T` and `u_b·T·ψ_a = u_a·ψ_b·S`, with `S(0)` and `T(0)`
    /// invertible.
    Certificate { s: M, t: M },
    /// No certificate found at this bound. Not a proof of non-isomorphism.
    Unknown,
}

impl Equivalence {
    pub fn is_certificate(&self) -> bool {
        matches!(self, Equivalence::Certificate { .. })
    }
}

/// Check a claimed certificate exactly.
pub fn check_equivalence(a: &MatrixFactorization, b: &MatrixFactorization, s: &M, t: &M) -> bool {
    let lhs = s.mul(&a.phi);
    let rhs = b.phi.mul(t);
    let lhs2 = t.mul(&a.psi).scale(&b.unit);
    let rhs2 = b.psi.mul(s).scale(&a.unit);
    let inv = |m: &M| !scalar_det(&m.constant_part()).is_zero();
    lhs == rhs && lhs2 == rhs2 && inv(s) && inv(t)
}

/// Search for invertible `S, T` with entries of degree at most
/// `degree_bound`. The solution space of the linear conditions is computed
/// exactly; random elements of it are tested for invertibility at the origin.
pub fn mf_equivalence_search(a: &MatrixFactorization, b: &MatrixFactorization, degree_bound: u32) -> Equivalence {
    if a.ring != b.ring || a.size() != b.size() {
        return Equivalence::Unknown;
    }
    let vars = a.vars();
    let n = a.size();
    if a == b {
        let id = PolyMatrix::identity(vars, n);
        return Equivalence::Certificate { s: id.clone(), t: id };
    }
    let monos = monomials_up_to(vars.len(), degree_bound);
    let s = UnknownMatrix::new(n, n, monos.clone(), 0);
    let t = UnknownMatrix::new(n, n, monos, s.end());
    let ncols = t.end();
    let mut eb = EqBuilder::default();
    eb.add_lxr(0, None, &s, Some(&a.phi), &q(1));
    eb.add_lxr(0, Some(&b.phi), &t, None, &q(-1));
    let ub_psi_a = a.psi.scale(&b.unit);
    let ua_psi_b = b.psi.scale(&a.unit);
    eb.add_lxr(1, None, &t, Some(&ub_psi_a), &q(1));
    eb.add_lxr(1, Some(&ua_psi_b), &s, None, &q(-1));
    let mut rref = SparseRref::new(ncols);
    for r in eb.into_rows() {
        rref.insert(r);
    }
    let kernel = rref.kernel_basis();
    if kernel.is_empty() {
        return Equivalence::Unknown;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..8 {
        let v = random_combination(&mut rng, &kernel, ncols);
        let sm = s.extract(vars, &v);
        let tm = t.extract(vars, &v);
        if check_equivalence(a, b, &sm, &tm) {
            return Equivalence::Certificate { s: sm, t: tm };
        }
    }
    Equivalence::Unknown
}
