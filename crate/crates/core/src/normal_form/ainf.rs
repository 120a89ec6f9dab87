//! Gluing pairs over `A∞`: `(θ₁(z), θ₂(z))` with a common column count,
//! up to `θᵢ ↦ Fᵢ⁻¹·θᵢ·f`, `Fᵢ ∈ GL(k[[z]])`, `f ∈ GL(n, k((z)))`.

use std::fmt;
use std::str::FromStr;

use crate::arith::LaurentPoly;

use super::lattice::{laurent_rank, saturate, smith_exponents, solve_certificate};
use super::{check_certificate, LaurentMatrix, NormalFormError, ReductionCertificate};

/// Canonical blocks, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AInfBlock {
    /// `((1), ())`.
    Comp1,
    /// `((), (1))`.
    Comp2,
    /// `((1), (1))`.
    Reg,
    /// `((zⁿ), (1))`, `n ≥ 1`.
    Z1Pow(u32),
    /// `((1), (zⁿ))`, `n ≥ 1`.
    Z2Pow(u32),
}

impl AInfBlock {
    /// Contribution `(exponent in θ₁, exponent in θ₂)`; `None` for an
    /// absent row.
    fn rows(&self) -> (Option<i64>, Option<i64>) {
        match self {
            AInfBlock::Comp1 => (Some(0), None),
            AInfBlock::Comp2 => (None, Some(0)),
            AInfBlock::Reg => (Some(0), Some(0)),
            AInfBlock::Z1Pow(n) => (Some(*n as i64), Some(0)),
            AInfBlock::Z2Pow(n) => (Some(0), Some(*n as i64)),
        }
    }
}

impl fmt::Display for AInfBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AInfBlock::Comp1 => write!(f, "Comp1"),
            AInfBlock::Comp2 => write!(f, "Comp2"),
            AInfBlock::Reg => write!(f, "Reg"),
            AInfBlock::Z1Pow(n) => write!(f, "Z1Pow({n})"),
            AInfBlock::Z2Pow(n) => write!(f, "Z2Pow({n})"),
        }
    }
}

impl FromStr for AInfBlock {
    type Err = NormalFormError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NormalFormError::Invalid(format!("unknown block {s:?}"));
        let arg = |p: &str| -> Result<u32, NormalFormError> {
            let n = s
                .strip_prefix(p)
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(bad)?
                .parse::<u32>()
                .map_err(|_| bad())?;
            if n == 0 {
                Err(bad())
            } else {
                Ok(n)
            }
        };
        match s {
            "Comp1" => Ok(AInfBlock::Comp1),
            "Comp2" => Ok(AInfBlock::Comp2),
            "Reg" => Ok(AInfBlock::Reg),
            _ if s.starts_with("Z1Pow(") => arg("Z1Pow(").map(AInfBlock::Z1Pow),
            _ if s.starts_with("Z2Pow(") => arg("Z2Pow(").map(AInfBlock::Z2Pow),
            _ => Err(bad()),
        }
    }
}

/// The pair `(B₁, B₂)` of a block list: one column per block, one row of
/// `Bᵢ` per block present in that component.
pub fn ainf_block_pair(blocks: &[AInfBlock], var: &str) -> (LaurentMatrix, LaurentMatrix) {
    let n = blocks.len();
    let p = blocks.iter().filter(|b| b.rows().0.is_some()).count();
    let q = blocks.iter().filter(|b| b.rows().1.is_some()).count();
    let mut b1 = LaurentMatrix::zero(var, p, n);
    let mut b2 = LaurentMatrix::zero(var, q, n);
    let (mut i1, mut i2) = (0, 0);
    for (j, b) in blocks.iter().enumerate() {
        let (e1, e2) = b.rows();
        if let Some(e) = e1 {
            b1.set(i1, j, LaurentPoly::t_pow(var, e));
            i1 += 1;
        }
        if let Some(e) = e2 {
            b2.set(i2, j, LaurentPoly::t_pow(var, e));
            i2 += 1;
        }
    }
    (b1, b2)
}

fn stack(a: &LaurentMatrix, b: &LaurentMatrix) -> Vec<Vec<LaurentPoly>> {
    a.to_rows().into_iter().chain(b.to_rows()).collect()
}

/// Equal column counts, both matrices of full row rank and the stacked
/// matrix of full column rank.
pub fn ainf_validate(theta1: &LaurentMatrix, theta2: &LaurentMatrix) -> bool {
    let n = theta1.cols();
    n > 0
        && theta2.cols() == n
        && theta1.var() == theta2.var()
        && laurent_rank(&theta1.to_rows()) == theta1.rows()
        && laurent_rank(&theta2.to_rows()) == theta2.rows()
        && laurent_rank(&stack(theta1, theta2)) == n
}

fn blocks_from_exponents(p: usize, q: usize, n: usize, l1: &[i64], l2: &[i64]) -> Result<Vec<AInfBlock>, NormalFormError> {
    let z1: Vec<u32> = l1.iter().filter(|&&e| e > 0).map(|&e| e as u32).collect();
    let z2: Vec<u32> = l2.iter().filter(|&&e| e > 0).map(|&e| e as u32).collect();
    let (c1, c2) = (n - q, n - p);
    let reg = (p + q) as i64 - n as i64 - z1.len() as i64 - z2.len() as i64;
    if reg < 0 {
        return Err(NormalFormError::Invalid(format!(
            "elementary divisors {l1:?}, {l2:?} fit no block list"
        )));
    }
    let mut out = Vec::new();
    out.extend(std::iter::repeat_n(AInfBlock::Comp1, c1));
    out.extend(std::iter::repeat_n(AInfBlock::Comp2, c2));
    out.extend(std::iter::repeat_n(AInfBlock::Reg, reg as usize));
    out.extend(z1.into_iter().map(AInfBlock::Z1Pow));
    out.extend(z2.into_iter().map(AInfBlock::Z2Pow));
    out.sort();
    Ok(out)
}

/// Reduce at the larger input precision, raised to exceed every
/// elementary divisor exponent by two, doubling up to twice if no
/// certificate is found.
pub fn ainf_reduce(theta1: &LaurentMatrix, theta2: &LaurentMatrix) -> Result<ReductionCertificate<AInfBlock>, NormalFormError> {
    let plan = plan(theta1, theta2)?;
    let mut prec = theta1.prec().max(theta2.prec()).max(plan.min_prec);
    for _ in 0..3 {
        if let Some(c) = certify(theta1, theta2, &plan, prec) {
            return Ok(c);
        }
        prec *= 2;
    }
    Err(NormalFormError::PrecisionExhausted(prec / 2))
}

/// Reduce and certify modulo `z^prec` (raised to the input precisions).
pub fn ainf_reduce_at(
    theta1: &LaurentMatrix,
    theta2: &LaurentMatrix,
    prec: i64,
) -> Result<ReductionCertificate<AInfBlock>, NormalFormError> {
    let plan = plan(theta1, theta2)?;
    let prec = prec.max(theta1.prec()).max(theta2.prec());
    certify(theta1, theta2, &plan, prec).ok_or(NormalFormError::PrecisionExhausted(prec))
}

struct Plan {
    f0: LaurentMatrix,
    sat: [LaurentMatrix; 2],
    blocks: Vec<AInfBlock>,
    min_prec: i64,
}

fn plan(theta1: &LaurentMatrix, theta2: &LaurentMatrix) -> Result<Plan, NormalFormError> {
    if !ainf_validate(theta1, theta2) {
        return Err(NormalFormError::Invalid(
            "need equal column counts, full row ranks and a stacked matrix of full column rank".into(),
        ));
    }
    let (p, q, n) = (theta1.rows(), theta2.rows(), theta1.cols());
    let (_, f0) = saturate(&stack(theta1, theta2), 1, theta1.var());
    let s1 = theta1.mul(&f0)?;
    let s2 = theta2.mul(&f0)?;
    let (l1, l2) = (smith_exponents(&s1), smith_exponents(&s2));
    let blocks = blocks_from_exponents(p, q, n, &l1, &l2)?;
    let min_prec = l1.iter().chain(&l2).max().copied().unwrap_or(0) + 2;
    Ok(Plan {
        f0,
        sat: [s1, s2],
        blocks,
        min_prec,
    })
}

fn certify(
    theta1: &LaurentMatrix,
    theta2: &LaurentMatrix,
    plan: &Plan,
    prec: i64,
) -> Option<ReductionCertificate<AInfBlock>> {
    let (b1, b2) = ainf_block_pair(&plan.blocks, theta1.var());
    let (left, f1) = solve_certificate(&plan.sat, &[b1, b2], theta1.cols(), 1, prec)?;
    let right = plan.f0.mul(&f1).ok()?;
    let cert = ReductionCertificate {
        left,
        right,
        blocks: plan.blocks.clone(),
        prec,
    };
    ainf_verify(theta1, theta2, &cert).then_some(cert)
}

pub fn ainf_verify(theta1: &LaurentMatrix, theta2: &LaurentMatrix, cert: &ReductionCertificate<AInfBlock>) -> bool {
    let (b1, b2) = ainf_block_pair(&cert.blocks, theta1.var());
    check_certificate(&[theta1, theta2], &[b1, b2], &cert.left, &cert.right, cert.prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lm(rows: &[&[Option<(i64, i64)>]]) -> LaurentMatrix {
        LaurentMatrix::from_monomials("z", rows)
    }

    #[test]
    fn single_blocks() {
        let one = lm(&[&[Some((0, 1))]]);
        assert_eq!(ainf_reduce(&one, &one).unwrap().blocks, vec![AInfBlock::Reg]);
        for n in 1..5 {
            let zn = lm(&[&[Some((n, 1))]]);
            assert_eq!(ainf_reduce(&zn, &one).unwrap().blocks, vec![AInfBlock::Z1Pow(n as u32)]);
            assert_eq!(ainf_reduce(&one, &zn).unwrap().blocks, vec![AInfBlock::Z2Pow(n as u32)]);
        }
    }

    #[test]
    fn column_split() {
        let a = lm(&[&[Some((0, 1)), None]]);
        let b = lm(&[&[None, Some((0, 1))]]);
        let c = ainf_reduce(&a, &b).unwrap();
        assert_eq!(c.blocks, vec![AInfBlock::Comp1, AInfBlock::Comp2]);
        assert!(ainf_verify(&a, &b, &c));
    }

    #[test]
    fn empty_component() {
        let a = lm(&[&[Some((-2, 3))]]);
        let b = LaurentMatrix::zero("z", 0, 1);
        assert_eq!(ainf_reduce(&a, &b).unwrap().blocks, vec![AInfBlock::Comp1]);
    }
}
