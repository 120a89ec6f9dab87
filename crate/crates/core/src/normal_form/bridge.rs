//! From canonical blocks to Cohen-Macaulay modules, given by their matrix
//! factorizations.

use std::collections::HashMap;
use std::fmt;

use crate::arith::linalg::SparseRref;
use crate::arith::poly::monomials_of_weighted_degree;
use crate::arith::{Field, Monomial, MultiPoly, PolyMatrix, Rational};
use crate::catalog::{dinf_ring, family, Component, FamilyId};
use crate::mf::{adjugate_partner, mf_equivalence_search, shift, Equivalence, MatrixFactorization};

use super::{ainf_reduce, dinf_reduce, AInfBlock, DInfBlock, LaurentMatrix, NormalFormError};

type P = MultiPoly<Rational>;

/// A free module of rank one, or the module presented by `φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockModule {
    Free,
    Factorization(MatrixFactorization),
}

impl BlockModule {
    pub fn factorization(&self) -> Option<&MatrixFactorization> {
        match self {
            BlockModule::Free => None,
            BlockModule::Factorization(m) => Some(m),
        }
    }
}

fn catalog_mf(id: FamilyId) -> MatrixFactorization {
    family(id).expect("catalog member")
}

/// Weights of `x, y, z` making `x²y − z²` homogeneous of degree 4.
const WEIGHTS: [u32; 3] = [1, 2, 2];

/// Minimal relations among the columns of
/// `G = [[0, 0, x, z], [x^{d+1}, x^d z, z^d, 0]]` over `k[x, y, z]` modulo
/// `x²y − z²`. The columns generate the module attached to `Hook(d)`; the
/// returned matrix has one column per minimal relation and presents it.
pub fn hook_syzygy_matrix(d: u32) -> Result<PolyMatrix, NormalFormError> {
    if d == 0 {
        return Err(NormalFormError::Invalid("Hook(d) needs d >= 1".into()));
    }
    let ring = dinf_ring();
    let v = ring.vars().clone();
    let p = |s: String| ring.parse_poly(&s).expect("generator entry");
    let g: [[P; 4]; 2] = [
        [P::zero(&v), P::zero(&v), p("x".into()), p("z".into())],
        [p(format!("x^{}", d + 1)), p(format!("x^{d}*z")), p(format!("z^{d}")), P::zero(&v)],
    ];
    let col_deg = [d + 1, d + 2, 2 * d, 2 * d + 1];
    let row_shift = [2 * d - 1, 0];
    let f = ring.f().clone();

    let coords = |e: u32| -> Vec<(usize, Monomial)> {
        (0..4)
            .filter(|&j| e >= col_deg[j])
            .flat_map(|j| monomials_of_weighted_degree(&WEIGHTS, e - col_deg[j]).into_iter().map(move |m| (j, m)))
            .collect()
    };
    let to_vec = |a: &[P; 4], index: &HashMap<(usize, Monomial), usize>, len: usize| -> Vec<(usize, Rational)> {
        let mut out = Vec::new();
        for (j, pj) in a.iter().enumerate() {
            for (m, c) in pj.terms() {
                out.push((index[&(j, m.clone())], c.clone()));
            }
        }
        debug_assert!(out.iter().all(|(i, _)| *i < len));
        out
    };

    let mut by_degree: HashMap<u32, Vec<[P; 4]>> = HashMap::new();
    let mut gens: Vec<[P; 4]> = Vec::new();
    let top = 4 * d + 12;
    for e in col_deg[0]..=top {
        let a_coords = coords(e);
        let na = a_coords.len();
        let index: HashMap<(usize, Monomial), usize> =
            a_coords.iter().cloned().enumerate().map(|(k, key)| (key, k)).collect();
        // Unknown b_i, the quotient of row i of G·a by f.
        let mut b_coords: Vec<(usize, Monomial)> = Vec::new();
        for i in 0..2 {
            if e >= row_shift[i] + 4 {
                for m in monomials_of_weighted_degree(&WEIGHTS, e - row_shift[i] - 4) {
                    b_coords.push((i, m));
                }
            }
        }
        let ncols = na + b_coords.len();
        let mut eqs: HashMap<(usize, Monomial), Vec<(usize, Rational)>> = HashMap::new();
        for (k, (j, m)) in a_coords.iter().enumerate() {
            for (i, row) in g.iter().enumerate() {
                for (gm, gc) in row[*j].terms() {
                    eqs.entry((i, gm.mul(m))).or_default().push((k, gc.clone()));
                }
            }
        }
        for (k, (i, m)) in b_coords.iter().enumerate() {
            for (fm, fc) in f.terms() {
                eqs.entry((*i, fm.mul(m))).or_default().push((na + k, fc.neg()));
            }
        }
        let mut rref = SparseRref::new(ncols);
        for (_, row) in eqs {
            rref.insert(row);
        }
        let space: Vec<[P; 4]> = rref
            .kernel_basis()
            .into_iter()
            .map(|kv| {
                let mut a: [P; 4] = std::array::from_fn(|_| P::zero(&v));
                for (k, (j, m)) in a_coords.iter().enumerate() {
                    if !kv[k].is_zero() {
                        a[*j].add_term(m.clone(), kv[k].clone());
                    }
                }
                a
            })
            .filter(|a| a.iter().any(|p| !p.is_zero()))
            .collect();
        // Relations generated in lower degrees.
        let mut span = SparseRref::new(na);
        let mul_all = |src: Option<&Vec<[P; 4]>>, var: usize| -> Vec<[P; 4]> {
            let mono = Monomial::var(3, var);
            src.map(|vs| {
                vs.iter()
                    .map(|a| std::array::from_fn(|j| a[j].mul_term(&mono, &Rational::one())))
                    .collect()
            })
            .unwrap_or_default()
        };
        let lower: Vec<[P; 4]> = [
            mul_all(e.checked_sub(1).and_then(|k| by_degree.get(&k)), 0),
            mul_all(e.checked_sub(2).and_then(|k| by_degree.get(&k)), 1),
            mul_all(e.checked_sub(2).and_then(|k| by_degree.get(&k)), 2),
        ]
        .concat();
        for a in &lower {
            span.insert(to_vec(a, &index, na));
        }
        for a in &space {
            if span.insert(to_vec(a, &index, na)) {
                gens.push(a.clone());
            }
        }
        by_degree.insert(e, space);
        if gens.len() >= 4 {
            break;
        }
    }
    if gens.len() != 4 {
        return Err(NormalFormError::Invalid(format!("found {} minimal relations for Hook({d})", gens.len())));
    }
    let rows = (0..4).map(|j| gens.iter().map(|a| a[j].clone()).collect()).collect();
    Ok(PolyMatrix::from_rows(&v, rows).expect("4x4"))
}

/// Module of a `D∞` block: `One` is free, `T` gives `(β⁺, β⁻)`, `OneT`
/// gives `(α⁺, α⁻)`, and `Hook(d)` gives the factorization presented by
/// [`hook_syzygy_matrix`].
pub fn dinf_block_to_mf(b: DInfBlock) -> Result<BlockModule, NormalFormError> {
    Ok(match b {
        DInfBlock::One => BlockModule::Free,
        DInfBlock::T => BlockModule::Factorization(catalog_mf(FamilyId::DInfBeta)),
        DInfBlock::OneT => BlockModule::Factorization(catalog_mf(FamilyId::DInfAlpha)),
        DInfBlock::Hook(d) => {
            let rho = hook_syzygy_matrix(d)?;
            BlockModule::Factorization(adjugate_partner(&dinf_ring(), &rho)?)
        }
    })
}

/// Module of an `A∞` block.
pub fn ainf_block_to_mf(b: AInfBlock) -> BlockModule {
    match b {
        AInfBlock::Reg => BlockModule::Free,
        AInfBlock::Comp1 => BlockModule::Factorization(catalog_mf(FamilyId::AInfComponent(Component::One))),
        AInfBlock::Comp2 => BlockModule::Factorization(catalog_mf(FamilyId::AInfComponent(Component::Two))),
        AInfBlock::Z1Pow(n) => BlockModule::Factorization(catalog_mf(FamilyId::AInfPhi(n))),
        AInfBlock::Z2Pow(n) => BlockModule::Factorization(shift(&catalog_mf(FamilyId::AInfPhi(n)))),
    }
}

/// An equivalence between the `Hook(d)` factorization and a catalog member.
#[derive(Clone, Debug)]
pub struct HookMatch {
    pub family: FamilyId,
    /// The match is with the shifted member `(ψ, φ)`.
    pub shifted: bool,
    pub degree_bound: u32,
    pub certificate: Equivalence,
}

/// Search for an equivalence of the `Hook(d)` module with `γ_{d/2}` (d
/// even) or `δ_{(d+1)/2}` (d odd), or their shifts, at degree bounds up to
/// `max_bound`.
pub fn hook_equivalence(d: u32, max_bound: u32) -> Result<Option<HookMatch>, NormalFormError> {
    let BlockModule::Factorization(hook) = dinf_block_to_mf(DInfBlock::Hook(d))? else {
        unreachable!("hooks are never free");
    };
    let id = if d.is_multiple_of(2) {
        FamilyId::DInfGamma(d / 2)
    } else {
        FamilyId::DInfDelta(d.div_ceil(2))
    };
    let target = catalog_mf(id);
    let shifted_target = shift(&target);
    for bound in 0..=max_bound {
        for (shifted, t) in [(false, &target), (true, &shifted_target)] {
            let cert = mf_equivalence_search(&hook, t, bound);
            if cert.is_certificate() {
                return Ok(Some(HookMatch {
                    family: id,
                    shifted,
                    degree_bound: bound,
                    certificate: cert,
                }));
            }
        }
    }
    Ok(None)
}

/// Which normal-form problem an input belongs to.
#[derive(Clone, Debug)]
pub enum ClassifyInput {
    DInf(LaurentMatrix),
    AInf(LaurentMatrix, LaurentMatrix),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    DInf(DInfBlock),
    AInf(AInfBlock),
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::DInf(b) => b.fmt(f),
            Block::AInf(b) => b.fmt(f),
        }
    }
}

/// Reduce, then attach the module of each block.
pub fn classify(input: &ClassifyInput) -> Result<Vec<(Block, BlockModule)>, NormalFormError> {
    match input {
        ClassifyInput::DInf(theta) => dinf_reduce(theta)?
            .blocks
            .into_iter()
            .map(|b| Ok((Block::DInf(b), dinf_block_to_mf(b)?)))
            .collect(),
        ClassifyInput::AInf(a, b) => Ok(ainf_reduce(a, b)?
            .blocks
            .into_iter()
            .map(|b| (Block::AInf(b), ainf_block_to_mf(b)))
            .collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mf::verify_mf;

    #[test]
    fn small_blocks() {
        assert_eq!(dinf_block_to_mf(DInfBlock::One).unwrap(), BlockModule::Free);
        let t = dinf_block_to_mf(DInfBlock::T).unwrap();
        assert_eq!(t.factorization().unwrap(), &catalog_mf(FamilyId::DInfBeta));
        let z = ainf_block_to_mf(AInfBlock::Z1Pow(3));
        assert_eq!(z.factorization().unwrap(), &catalog_mf(FamilyId::AInfPhi(3)));
        assert_eq!(ainf_block_to_mf(AInfBlock::Reg), BlockModule::Free);
    }

    #[test]
    fn hook_partner_verifies() {
        for d in 1..=4 {
            let rho = hook_syzygy_matrix(d).unwrap();
            let mf = adjugate_partner(&dinf_ring(), &rho).unwrap();
            assert!(verify_mf(&dinf_ring(), mf.phi().clone(), mf.psi().clone()).is_ok());
        }
    }

    #[test]
    fn hook_two_matches_gamma_one() {
        let m = hook_equivalence(2, 1).unwrap().expect("certificate");
        assert_eq!(m.family, FamilyId::DInfGamma(1));
        assert!(m.certificate.is_certificate());
    }
}
