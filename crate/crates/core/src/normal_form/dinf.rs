//! Gluing matrices over `D∞`: `θ(t)` up to `θ ↦ F⁻¹·θ·f` with
//! `F ∈ GL(m, k[[t]])` and `f ∈ GL(n, k((t²)))`.

use std::fmt;
use std::str::FromStr;

use crate::arith::LaurentPoly;

use super::lattice::{laurent_rank, saturate, smith_exponents, solve_certificate};
use super::{check_certificate, LaurentMatrix, NormalFormError, ReductionCertificate};

/// Canonical blocks, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DInfBlock {
    /// `(1)`.
    One,
    /// `(t)`.
    T,
    /// `(1 t)`.
    OneT,
    /// `[[1, t], [t^d, 0]]`, `d ≥ 1`.
    Hook(u32),
}

impl DInfBlock {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            DInfBlock::One | DInfBlock::T => (1, 1),
            DInfBlock::OneT => (1, 2),
            DInfBlock::Hook(_) => (2, 2),
        }
    }

    pub fn matrix(&self, var: &str) -> LaurentMatrix {
        let t = |e: i64| Some((e, 1));
        match self {
            DInfBlock::One => LaurentMatrix::from_monomials(var, &[&[t(0)]]),
            DInfBlock::T => LaurentMatrix::from_monomials(var, &[&[t(1)]]),
            DInfBlock::OneT => LaurentMatrix::from_monomials(var, &[&[t(0), t(1)]]),
            DInfBlock::Hook(d) => LaurentMatrix::from_monomials(var, &[&[t(0), t(1)], &[t(*d as i64), None]]),
        }
    }
}

impl fmt::Display for DInfBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DInfBlock::One => write!(f, "One"),
            DInfBlock::T => write!(f, "T"),
            DInfBlock::OneT => write!(f, "OneT"),
            DInfBlock::Hook(d) => write!(f, "Hook({d})"),
        }
    }
}

impl FromStr for DInfBlock {
    type Err = NormalFormError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NormalFormError::Invalid(format!("unknown block {s:?}"));
        match s {
            "One" => Ok(DInfBlock::One),
            "T" => Ok(DInfBlock::T),
            "OneT" => Ok(DInfBlock::OneT),
            _ => {
                let d = s
                    .strip_prefix("Hook(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(bad)?
                    .parse::<u32>()
                    .map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ok(DInfBlock::Hook(d))
            }
        }
    }
}

/// Block diagonal matrix of a block list.
pub fn dinf_block_diagonal(blocks: &[DInfBlock], var: &str) -> LaurentMatrix {
    blocks
        .iter()
        .fold(LaurentMatrix::zero(var, 0, 0), |acc, b| acc.block_diag(&b.matrix(var)))
}

/// Even and odd parts `θ = θ₀ + t·θ₁` stacked as `[θ₀; θ₁]`.
fn even_odd_stack(theta: &LaurentMatrix) -> Vec<Vec<LaurentPoly>> {
    let rows = theta.to_rows();
    let even = rows.iter().map(|r| r.iter().map(|p| p.even_odd_split().0).collect());
    let odd = rows.iter().map(|r| r.iter().map(|p| p.even_odd_split().1).collect());
    even.chain(odd).collect()
}

/// Full row rank over `k((t))`, and the stacked even and odd parts have
/// full column rank over `k((t²))`.
pub fn dinf_validate(theta: &LaurentMatrix) -> bool {
    if theta.cols() == 0 || theta.rows() == 0 {
        return false;
    }
    laurent_rank(&theta.to_rows()) == theta.rows() && laurent_rank(&even_odd_stack(theta)) == theta.cols()
}

/// Canonical block list from the elementary divisors of a saturated matrix.
fn blocks_from_exponents(m: usize, n: usize, ell: &[i64]) -> Result<Vec<DInfBlock>, NormalFormError> {
    let n_onet = n - m;
    let n_t = ell.iter().filter(|&&l| l == 1).count();
    let hooks: Vec<u32> = ell.iter().filter(|&&l| l >= 2).map(|&l| (l - 1) as u32).collect();
    let used = n_onet + n_t + 2 * hooks.len();
    if used > m {
        return Err(NormalFormError::Invalid(format!(
            "elementary divisors {ell:?} of a {m}x{n} matrix fit no block list"
        )));
    }
    let mut out = vec![DInfBlock::One; m - used];
    out.extend(std::iter::repeat_n(DInfBlock::T, n_t));
    out.extend(std::iter::repeat_n(DInfBlock::OneT, n_onet));
    out.extend(hooks.into_iter().map(DInfBlock::Hook));
    out.sort();
    Ok(out)
}

/// Reduce at the input's precision, raised to exceed every elementary
/// divisor exponent by two, doubling up to twice if no certificate is found.
pub fn dinf_reduce(theta: &LaurentMatrix) -> Result<ReductionCertificate<DInfBlock>, NormalFormError> {
    let plan = plan(theta)?;
    let mut prec = theta.prec().max(plan.min_prec);
    for _ in 0..3 {
        if let Some(c) = certify(theta, &plan, prec) {
            return Ok(c);
        }
        prec *= 2;
    }
    Err(NormalFormError::PrecisionExhausted(prec / 2))
}

/// Reduce and certify modulo `t^prec` (raised to the input's precision).
pub fn dinf_reduce_at(theta: &LaurentMatrix, prec: i64) -> Result<ReductionCertificate<DInfBlock>, NormalFormError> {
    let plan = plan(theta)?;
    let prec = prec.max(theta.prec());
    certify(theta, &plan, prec).ok_or(NormalFormError::PrecisionExhausted(prec))
}

struct Plan {
    f0: LaurentMatrix,
    sat: LaurentMatrix,
    blocks: Vec<DInfBlock>,
    min_prec: i64,
}

fn plan(theta: &LaurentMatrix) -> Result<Plan, NormalFormError> {
    if !dinf_validate(theta) {
        return Err(NormalFormError::Invalid(
            "need full row rank and full column rank of the stacked even/odd parts".into(),
        ));
    }
    let (_, f0) = saturate(&even_odd_stack(theta), 2, theta.var());
    let sat = theta.mul(&f0)?;
    let ell = smith_exponents(&sat);
    let blocks = blocks_from_exponents(theta.rows(), theta.cols(), &ell)?;
    let min_prec = ell.iter().max().copied().unwrap_or(0) + 2;
    Ok(Plan { f0, sat, blocks, min_prec })
}

fn certify(theta: &LaurentMatrix, plan: &Plan, prec: i64) -> Option<ReductionCertificate<DInfBlock>> {
    let b = dinf_block_diagonal(&plan.blocks, theta.var());
    let (left, f1) = solve_certificate(std::slice::from_ref(&plan.sat), &[b], theta.cols(), 2, prec)?;
    let right = plan.f0.mul(&f1).ok()?;
    let cert = ReductionCertificate {
        left,
        right,
        blocks: plan.blocks.clone(),
        prec,
    };
    dinf_verify(theta, &cert).then_some(cert)
}

/// Recheck a certificate from scratch, including that `f` only involves
/// even powers of `t`.
pub fn dinf_verify(theta: &LaurentMatrix, cert: &ReductionCertificate<DInfBlock>) -> bool {
    let b = dinf_block_diagonal(&cert.blocks, theta.var());
    cert.right.entries().iter().all(|p| p.is_even())
        && check_certificate(&[theta], &[b], &cert.left, &cert.right, cert.prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lm(rows: &[&[Option<(i64, i64)>]]) -> LaurentMatrix {
        LaurentMatrix::from_monomials("t", rows)
    }

    #[test]
    fn validation_examples() {
        assert!(dinf_validate(&lm(&[&[Some((0, 1)), Some((1, 1))]])));
        assert!(!dinf_validate(&lm(&[&[Some((0, 1)), Some((0, 1))]])));
        assert!(!dinf_validate(&lm(&[&[None]])));
    }

    #[test]
    fn canonical_blocks_are_fixed() {
        for d in 1..6 {
            let c = dinf_reduce(&DInfBlock::Hook(d).matrix("t")).unwrap();
            assert_eq!(c.blocks, vec![DInfBlock::Hook(d)]);
        }
        let c = dinf_reduce(&lm(&[&[Some((0, 1)), None], &[None, Some((1, 1))]])).unwrap();
        assert_eq!(c.blocks, vec![DInfBlock::One, DInfBlock::T]);
    }

    #[test]
    fn scaled_one_t() {
        let theta = lm(&[&[Some((2, 1)), Some((3, 1))]]);
        let c = dinf_reduce(&theta).unwrap();
        assert_eq!(c.blocks, vec![DInfBlock::OneT]);
        assert!(dinf_verify(&theta, &c));
    }

    #[test]
    fn block_strings_round_trip() {
        for b in [DInfBlock::One, DInfBlock::T, DInfBlock::OneT, DInfBlock::Hook(7)] {
            assert_eq!(b.to_string().parse::<DInfBlock>().unwrap(), b);
        }
        assert!("Hook(0)".parse::<DInfBlock>().is_err());
    }
}
