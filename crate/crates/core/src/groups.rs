//! Finite subgroups of GL₂ over cyclotomic fields.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::arith::{vars, CycloNumber, Field, MultiPoly};

type C = CycloNumber;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("closure exceeded {0} elements")]
    CapExceeded(usize),
    #[error("singular generator")]
    Singular,
    #[error("unknown group name {0:?}")]
    UnknownName(String),
}

/// A 2×2 matrix `[[a, b], [c, d]]` with cyclotomic entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupMatrix(pub [C; 4]);

impl GroupMatrix {
    pub fn new(a: C, b: C, c: C, d: C) -> Self {
        GroupMatrix([a, b, c, d])
    }

    pub fn identity() -> Self {
        Self::new(C::one(), C::zero(), C::zero(), C::one())
    }

    pub fn diag(a: C, d: C) -> Self {
        Self::new(a, C::zero(), C::zero(), d)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        Self::new(
            a.mul(e).add(&b.mul(g)),
            a.mul(f).add(&b.mul(h)),
            c.mul(e).add(&d.mul(g)),
            c.mul(f).add(&d.mul(h)),
        )
    }

    pub fn scale(&self, s: &C) -> Self {
        GroupMatrix(self.0.clone().map(|x| x.mul(s)))
    }

    pub fn det(&self) -> C {
        let [a, b, c, d] = &self.0;
        a.mul(d).sub(&b.mul(c))
    }

    pub fn inverse(&self) -> Option<Self> {
        let di = self.det().inv()?;
        let [a, b, c, d] = &self.0;
        Some(Self::new(d.clone(), b.neg(), c.neg(), a.clone()).scale(&di))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Rank of `I − g`.
    pub fn fixed_codim(&self) -> usize {
        let m = Self::identity().sub(self);
        if m.0.iter().all(|x| x.is_zero()) {
            0
        } else if m.det().is_zero() {
            1
        } else {
            2
        }
    }

    fn sub(&self, o: &Self) -> Self {
        let mut out = self.0.clone();
        for (x, y) in out.iter_mut().zip(&o.0) {
            *x = x.sub(y);
        }
        GroupMatrix(out)
    }

    /// Image of `x₁^i x₂^j` under the substitution `x ↦ g·x`, as a
    /// polynomial in `x1, x2` with cyclotomic coefficients.
    pub fn act_on_monomial(&self, i: u32, j: u32) -> MultiPoly<C> {
        let v = vars(&["x1", "x2"]);
        let x1 = MultiPoly::var(&v, 0);
        let x2 = MultiPoly::var(&v, 1);
        let [a, b, c, d] = &self.0;
        let y1 = x1.scale(a).add(&x2.scale(b));
        let y2 = x1.scale(c).add(&x2.scale(d));
        y1.pow(i).mul(&y2.pow(j))
    }
}

impl fmt::Display for GroupMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupName {
    CyclicSL(u32),
    CyclicGL(u32, u32),
    BinaryDihedral(u32),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
    /// The coordinate swap, a pseudo-reflection.
    Swap,
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupName::CyclicSL(n) => write!(f, "cyclic-sl:{n}"),
            GroupName::CyclicGL(n, m) => write!(f, "cyclic-gl:{n}:{m}"),
            GroupName::BinaryDihedral(n) => write!(f, "binary-dihedral:{n}"),
            GroupName::BinaryTetrahedral => write!(f, "binary-tetrahedral"),
            GroupName::BinaryOctahedral => write!(f, "binary-octahedral"),
            GroupName::BinaryIcosahedral => write!(f, "binary-icosahedral"),
            GroupName::Swap => write!(f, "swap"),
        }
    }
}

impl std::str::FromStr for GroupName {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, GroupError> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || GroupError::UnknownName(s.to_string());
        let num = |i: usize| parts.get(i).and_then(|p| p.parse::<u32>().ok()).ok_or_else(bad);
        Ok(match parts[0] {
            "cyclic-sl" => GroupName::CyclicSL(num(1)?),
            "cyclic-gl" => GroupName::CyclicGL(num(1)?, num(2)?),
            "binary-dihedral" => GroupName::BinaryDihedral(num(1)?),
            "binary-tetrahedral" => GroupName::BinaryTetrahedral,
            "binary-octahedral" => GroupName::BinaryOctahedral,
            "binary-icosahedral" => GroupName::BinaryIcosahedral,
            "swap" => GroupName::Swap,
            _ => return Err(bad()),
        })
    }
}

fn z(n: u32, k: i64) -> C {
    C::root_of_unity(n, k)
}

/// `ξ + ξ⁷ = √2` in `Q(ζ₈)`.
fn sqrt2() -> C {
    z(8, 1).add(&z(8, 7))
}

/// `2(ξ + ξ⁴) + 1 = √5` in `Q(ζ₅)`.
fn sqrt5() -> C {
    z(5, 1).add(&z(5, 4)).mul(&C::from_int(2)).add(&C::one())
}

/// The displayed generators.
pub fn builtin(name: GroupName) -> Result<Vec<GroupMatrix>, GroupError> {
    let one = C::one;
    let zero = C::zero;
    Ok(match name {
        GroupName::CyclicSL(n) => {
            if n < 2 {
                return Err(GroupError::Range(name.to_string()));
            }
            vec![GroupMatrix::diag(z(2 * n, 1), z(2 * n, -1))]
        }
        GroupName::CyclicGL(n, m) => {
            if n < 2 || m == 0 || m >= n || num_integer::gcd(n, m) != 1 {
                return Err(GroupError::Range(name.to_string()));
            }
            vec![GroupMatrix::diag(z(n, 1), z(n, m as i64))]
        }
        GroupName::BinaryDihedral(n) => {
            if n < 1 {
                return Err(GroupError::Range(name.to_string()));
            }
            vec![
                GroupMatrix::diag(z(2 * n, 1), z(2 * n, -1)),
                GroupMatrix::new(zero(), one(), one().neg(), zero()),
            ]
        }
        GroupName::BinaryTetrahedral | GroupName::BinaryOctahedral => {
            let i = z(8, 2);
            let r2 = sqrt2().inv().unwrap();
            let mut g = vec![
                GroupMatrix::diag(i.clone(), i.neg()),
                GroupMatrix::new(zero(), one(), one().neg(), zero()),
                GroupMatrix::new(z(8, 7), z(8, 7), z(8, 5), z(8, 1)).scale(&r2),
            ];
            if name == GroupName::BinaryOctahedral {
                g.push(GroupMatrix::diag(z(8, 1), z(8, 7)));
            }
            g
        }
        GroupName::BinaryIcosahedral => {
            let r5 = sqrt5().inv().unwrap();
            let a = z(5, 1);
            let a2 = z(5, 2);
            let a3 = z(5, 3);
            let a4 = z(5, 4);
            vec![
                GroupMatrix::diag(a3.neg(), a2.neg()),
                GroupMatrix::new(a.neg().add(&a4), a2.sub(&a3), a2.sub(&a3), a.sub(&a4)).scale(&r5),
            ]
        }
        GroupName::Swap => vec![GroupMatrix::new(zero(), one(), one(), zero())],
    })
}

#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    pub name: String,
    pub generators: Vec<GroupMatrix>,
    /// Elements in breadth-first order from the identity.
    pub elements: Vec<GroupMatrix>,
}

impl FiniteMatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &GroupMatrix) -> bool {
        self.elements.contains(g)
    }
}

/// Breadth-first closure of `gens` under right multiplication.
pub fn generate(name: &str, gens: &[GroupMatrix], cap: usize) -> Result<FiniteMatrixGroup, GroupError> {
    if gens.iter().any(|g| g.det().is_zero()) {
        return Err(GroupError::Singular);
    }
    let id = GroupMatrix::identity();
    let mut seen: HashSet<GroupMatrix> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.mul(s);
            if seen.insert(h.clone()) {
                if elements.len() >= cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                elements.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(FiniteMatrixGroup {
        name: name.to_string(),
        generators: gens.to_vec(),
        elements,
    })
}

/// Closure of a builtin generator set.
pub fn builtin_group(name: GroupName, cap: usize) -> Result<FiniteMatrixGroup, GroupError> {
    generate(&name.to_string(), &builtin(name)?, cap)
}

/// Smallness and the pseudo-reflections found.
pub fn is_small(g: &FiniteMatrixGroup) -> (bool, Vec<GroupMatrix>) {
    let w: Vec<GroupMatrix> = g.elements.iter().filter(|e| e.fixed_codim() == 1).cloned().collect();
    (w.is_empty(), w)
}

/// Every element has determinant 1.
pub fn gorenstein_check(g: &FiniteMatrixGroup) -> bool {
    g.elements.iter().all(|e| e.det() == C::one())
}

/// Order of `g` as a group element, up to `cap`.
pub fn element_order(g: &GroupMatrix, cap: usize) -> Option<usize> {
    let mut acc = g.clone();
    for k in 1..=cap {
        if acc.is_identity() {
            return Some(k);
        }
        acc = acc.mul(g);
    }
    None
}

/// `x₁ⁿ`, `x₂ⁿ`, `x₁x₂` are fixed by `g` and satisfy `uv − wⁿ = 0`.
pub fn invariants_fixed_by(g: &GroupMatrix, n: u32) -> bool {
    let fixed = |i, j| {
        let img = g.act_on_monomial(i, j);
        img == GroupMatrix::identity().act_on_monomial(i, j)
    };
    let v = vars(&["x1", "x2"]);
    let u = MultiPoly::<C>::var(&v, 0).pow(n);
    let vv = MultiPoly::<C>::var(&v, 1).pow(n);
    let w = MultiPoly::<C>::var(&v, 0).mul(&MultiPoly::var(&v, 1));
    let relation = u.mul(&vv).sub(&w.pow(n)).is_zero();
    relation && fixed(n, 0) && fixed(0, n) && fixed(1, 1)
}

/// The invariants `x₁ⁿ, x₂ⁿ, x₁x₂` of the cyclic group of order `n`
/// generated by `diag(ε, ε⁻¹)`, `ε` a primitive `n`-th root of unity.
pub fn an_invariants_check(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let g = GroupMatrix::diag(z(n, 1), z(n, -1));
    element_order(&g, n as usize) == Some(n as usize) && invariants_fixed_by(&g, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_sl_closure_has_order_2n() {
        for n in 2..7 {
            let g = builtin_group(GroupName::CyclicSL(n), 100).unwrap();
            assert_eq!(g.order(), 2 * n as usize);
            assert_eq!(element_order(&g.generators[0], 100), Some(g.order()));
        }
    }

    #[test]
    fn displayed_cyclic_generator_moves_x1_to_the_n() {
        let g = &builtin(GroupName::CyclicSL(3)).unwrap()[0];
        assert!(!invariants_fixed_by(g, 3));
        assert!(an_invariants_check(3));
    }

    #[test]
    fn swap_is_a_pseudo_reflection() {
        let g = builtin_group(GroupName::Swap, 10).unwrap();
        let (small, w) = is_small(&g);
        assert!(!small);
        assert_eq!(w, builtin(GroupName::Swap).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            builtin_group(GroupName::BinaryIcosahedral, 50).unwrap_err(),
            GroupError::CapExceeded(50)
        );
    }

    #[test]
    fn names_round_trip() {
        for n in [GroupName::CyclicGL(7, 3), GroupName::BinaryDihedral(4), GroupName::BinaryOctahedral] {
            assert_eq!(n.to_string().parse::<GroupName>().unwrap(), n);
        }
    }
}
