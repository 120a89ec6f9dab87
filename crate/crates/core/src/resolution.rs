//! Combinatorics of minimal resolutions: intersection matrices, fundamental
//! cycles, embedding dimensions and presentations of local fundamental
//! groups.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::matrix::scalar_det;
use crate::arith::{q, qq, Field, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

/// Weighted dual graph. `weights[i] = Eᵢ²`; each listed edge contributes 1
/// to `Eᵢ·Eⱼ`, so repeated edges encode higher intersection multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    pub weights: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn new(weights: Vec<i64>, edges: Vec<(usize, usize)>) -> Result<Self, ResolutionError> {
        let g = DualGraph { weights, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), ResolutionError> {
        if let Some(w) = self.weights.iter().find(|&&w| w > -1) {
            return Err(ResolutionError::InvalidGraph(format!("self-intersection {w} > -1")));
        }
        for &(a, b) in &self.edges {
            if a == b {
                return Err(ResolutionError::InvalidGraph(format!("self-loop at {a}")));
            }
            if a >= self.len() || b >= self.len() {
                return Err(ResolutionError::InvalidGraph(format!("edge ({a}, {b}) out of range")));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Integer coefficients `Z = Σ mᵢEᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cycle(pub Vec<i64>);

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

pub type IntMatrix = Vec<Vec<i64>>;

pub fn intersection_matrix(g: &DualGraph) -> IntMatrix {
    let n = g.len();
    let mut m = vec![vec![0i64; n]; n];
    for (i, w) in g.weights.iter().enumerate() {
        m[i][i] = *w;
    }
    for &(a, b) in &g.edges {
        m[a][b] += 1;
        m[b][a] += 1;
    }
    m
}

fn is_symmetric(m: &IntMatrix) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Sylvester's criterion with exact leading principal minors.
pub fn is_negative_definite(m: &IntMatrix) -> Result<bool, ResolutionError> {
    if !is_symmetric(m) {
        return Err(ResolutionError::NotSymmetric);
    }
    for k in 1..=m.len() {
        let sub: Vec<Vec<Rational>> = (0..k).map(|i| (0..k).map(|j| q(m[i][j])).collect()).collect();
        let d = scalar_det(&sub);
        let signed = if k % 2 == 1 { -d } else { d };
        if signed <= q(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `xᵀ M y`.
pub fn pairing(m: &IntMatrix, x: &[i64], y: &[i64]) -> i64 {
    (0..x.len())
        .map(|i| (0..y.len()).map(|j| x[i] * m[i][j] * y[j]).sum::<i64>())
        .sum()
}

/// `Z·Eᵢ` for every vertex.
pub fn cycle_products(m: &IntMatrix, z: &[i64]) -> Vec<i64> {
    (0..z.len()).map(|i| (0..z.len()).map(|j| m[i][j] * z[j]).sum()).collect()
}

pub fn self_intersection(g: &DualGraph, z: &Cycle) -> i64 {
    let m = intersection_matrix(g);
    pairing(&m, &z.0, &z.0)
}

/// Laufer's sequence: start from `Σ Eᵢ` and add the lowest-index `Eᵢ` with
/// `Z·Eᵢ > 0` until none is left.
pub fn fundamental_cycle(g: &DualGraph) -> Result<Cycle, ResolutionError> {
    let m = intersection_matrix(g);
    if !is_negative_definite(&m)? {
        return Err(ResolutionError::NotNegativeDefinite);
    }
    let mut z = vec![1i64; g.len()];
    while let Some(i) = cycle_products(&m, &z).iter().position(|&p| p > 0) {
        z[i] += 1;
    }
    Ok(Cycle(z))
}

/// Exhaustive check that `z` is the componentwise minimum of all cycles
/// with positive coefficients and `Z·Eᵢ ≤ 0` inside the box `[1, zᵢ]`.
pub fn certify_minimal(g: &DualGraph, z: &Cycle) -> bool {
    let m = intersection_matrix(g);
    let n = g.len();
    if cycle_products(&m, &z.0).iter().any(|&p| p > 0) || z.0.iter().any(|&c| c < 1) {
        return false;
    }
    let mut cur = vec![1i64; n];
    loop {
        if cycle_products(&m, &cur).iter().all(|&p| p <= 0) && cur.iter().zip(&z.0).any(|(a, b)| a < b) {
            return false;
        }
        let mut i = 0;
        while i < n {
            if cur[i] < z.0[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 1;
            i += 1;
        }
        if i == n {
            return true;
        }
    }
}

/// Artin's formula `−Z² + 1`.
pub fn edim_rational(g: &DualGraph) -> Result<i64, ResolutionError> {
    let z = fundamental_cycle(g)?;
    Ok(1 - self_intersection(g, &z))
}

/// Laufer's formula `max(−Z², 3)`.
pub fn edim_min_elliptic(z_squared: i64) -> Result<i64, ResolutionError> {
    if z_squared >= 0 {
        return Err(ResolutionError::Range(format!("Z^2 = {z_squared} must be negative")));
    }
    Ok((-z_squared).max(3))
}

/// The value `Z² = −1` claimed for the fundamental cycle of every simple
/// singularity, which conflicts with `edim = −Z² + 1 = 3`.
pub const CLAIMED_SIMPLE_Z_SQUARED: i64 = -1;

/// True when the computed `Z²` differs from [`CLAIMED_SIMPLE_Z_SQUARED`].
pub fn simple_z_squared_erratum(g: &DualGraph) -> Result<bool, ResolutionError> {
    let z = fundamental_cycle(g)?;
    Ok(self_intersection(g, &z) != CLAIMED_SIMPLE_Z_SQUARED)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdeType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeType::A(n) => write!(f, "An:{n}"),
            AdeType::D(n) => write!(f, "Dn:{n}"),
            AdeType::E6 => write!(f, "E6"),
            AdeType::E7 => write!(f, "E7"),
            AdeType::E8 => write!(f, "E8"),
        }
    }
}

impl std::str::FromStr for AdeType {
    type Err = ResolutionError;

    fn from_str(s: &str) -> Result<Self, ResolutionError> {
        let bad = || ResolutionError::Range(format!("unknown graph type {s:?}"));
        match s {
            "E6" => return Ok(AdeType::E6),
            "E7" => return Ok(AdeType::E7),
            "E8" => return Ok(AdeType::E8),
            _ => {}
        }
        let (kind, n) = s.split_once(':').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        match kind {
            "An" | "A" => Ok(AdeType::A(n)),
            "Dn" | "D" => Ok(AdeType::D(n)),
            _ => Err(bad()),
        }
    }
}

fn path_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

/// An ADE graph with all weights −2, and the coefficients labelling its
/// diagram. Vertices run along the longest chain first; for D_n the two
/// fork leaves come last, for E the pendant vertex comes last.
pub fn ade_graph(t: AdeType) -> Result<(DualGraph, Cycle), ResolutionError> {
    let (n, edges, labels) = match t {
        AdeType::A(n) => {
            if n < 1 {
                return Err(ResolutionError::Range(t.to_string()));
            }
            (n, path_edges(n), vec![1; n])
        }
        AdeType::D(n) => {
            if n < 4 {
                return Err(ResolutionError::Range(t.to_string()));
            }
            let mut e = path_edges(n - 2);
            e.push((n - 3, n - 2));
            e.push((n - 3, n - 1));
            let mut l = vec![2; n];
            l[0] = 1;
            l[n - 2] = 1;
            l[n - 1] = 1;
            (n, e, l)
        }
        AdeType::E6 => {
            let mut e = path_edges(5);
            e.push((2, 5));
            (6, e, vec![1, 2, 3, 2, 1, 2])
        }
        AdeType::E7 => {
            let mut e = path_edges(6);
            e.push((2, 6));
            (7, e, vec![2, 3, 4, 3, 2, 1, 2])
        }
        AdeType::E8 => {
            let mut e = path_edges(7);
            e.push((2, 7));
            (8, e, vec![2, 4, 6, 5, 4, 3, 2, 3])
        }
    };
    Ok((DualGraph::new(vec![-2; n], edges)?, Cycle(labels)))
}

/// A free-group word as `(generator, exponent)` syllables.
pub type Word = Vec<(usize, i64)>;

/// Merge adjacent syllables on the same generator and drop zero exponents.
pub fn free_reduce(w: &[(usize, i64)]) -> Word {
    let mut out: Word = Vec::new();
    for &(g, e) in w {
        if e == 0 {
            continue;
        }
        match out.last_mut() {
            Some((lg, le)) if *lg == g => {
                *le += e;
                if *le == 0 {
                    out.pop();
                }
            }
            _ => out.push((g, e)),
        }
    }
    out
}

pub fn inverse_word(w: &[(usize, i64)]) -> Word {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// `[a, b] = a b a⁻¹ b⁻¹`.
pub fn commutator(a: &[(usize, i64)], b: &[(usize, i64)]) -> Word {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    w.extend(inverse_word(a));
    w.extend(inverse_word(b));
    free_reduce(&w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    /// `lhs · rhs⁻¹`, freely reduced.
    pub fn relator(&self) -> Word {
        let mut w = self.lhs.clone();
        w.extend(inverse_word(&self.rhs));
        free_reduce(&w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

impl GroupPresentation {
    pub fn render_word(&self, w: &[(usize, i64)]) -> String {
        if w.is_empty() {
            return "e".into();
        }
        w.iter()
            .map(|&(g, e)| {
                if e == 1 {
                    self.generators[g].clone()
                } else {
                    format!("{}^{}", self.generators[g], e)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| format!("{} = {}", self.render_word(&r.lhs), self.render_word(&r.rhs)))
            .collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

/// Generators `g₁…gₙ`, relations `gᵢgⱼ^{mᵢⱼ} = gⱼ^{mᵢⱼ}gᵢ` for `i ≠ j` and
/// `g₁^{mᵢ₁}⋯gₙ^{mᵢₙ} = e` for each `i`.
pub fn brieskorn_presentation(m: &IntMatrix) -> GroupPresentation {
    let n = m.len();
    let mut relations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                relations.push(Relation {
                    lhs: vec![(i, 1), (j, m[i][j])],
                    rhs: vec![(j, m[i][j]), (i, 1)],
                });
            }
        }
    }
    for row in m {
        relations.push(Relation {
            lhs: row.iter().enumerate().map(|(j, &e)| (j, e)).filter(|&(_, e)| e != 0).collect(),
            rhs: vec![],
        });
    }
    GroupPresentation {
        generators: (1..=n).map(|i| format!("g{i}")).collect(),
        relations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SphericalGroup {
    Cyclic(u32),
    BinaryDihedral(u32),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriangleClass {
    Spherical(SphericalGroup),
    Euclidean,
    Hyperbolic,
}

/// Sign of `1/p + 1/q + 1/r − 1`, and `⟨x, y, z | xᵖ = y^q = zʳ = xyz⟩`.
pub fn triangle_class(p: u32, q_: u32, r: u32) -> Result<(TriangleClass, GroupPresentation), ResolutionError> {
    if p == 0 || q_ == 0 || r == 0 {
        return Err(ResolutionError::Range(format!("({p}, {q_}, {r})")));
    }
    let excess: Rational = qq(1, p as i64) + qq(1, q_ as i64) + qq(1, r as i64) - q(1);
    let mut s = [p, q_, r];
    s.sort_unstable();
    let class = if excess > Rational::zero() {
        TriangleClass::Spherical(match s {
            [1, a, b] => SphericalGroup::Cyclic(a + b),
            [2, 2, n] => SphericalGroup::BinaryDihedral(n),
            [2, 3, 3] => SphericalGroup::BinaryTetrahedral,
            [2, 3, 4] => SphericalGroup::BinaryOctahedral,
            [2, 3, 5] => SphericalGroup::BinaryIcosahedral,
            _ => unreachable!("positive excess forces one of the listed triples"),
        })
    } else if excess.is_zero() {
        TriangleClass::Euclidean
    } else {
        TriangleClass::Hyperbolic
    };
    let xyz = vec![(0, 1), (1, 1), (2, 1)];
    let pres = GroupPresentation {
        generators: vec!["x".into(), "y".into(), "z".into()],
        relations: vec![
            Relation { lhs: vec![(0, p as i64)], rhs: xyz.clone() },
            Relation { lhs: vec![(1, q_ as i64)], rhs: xyz.clone() },
            Relation { lhs: vec![(2, r as i64)], rhs: xyz },
        ],
    };
    Ok((class, pres))
}

/// `⟨α, β, γ | [α,γ] = 1, [β,γ] = 1, [α,β] = γᵇ⟩`.
pub fn heisenberg_presentation(b: u32) -> Result<GroupPresentation, ResolutionError> {
    if b == 0 {
        return Err(ResolutionError::Range("b must be positive".into()));
    }
    let (a, be, g) = (vec![(0, 1)], vec![(1, 1)], vec![(2, 1)]);
    Ok(GroupPresentation {
        generators: vec!["alpha".into(), "beta".into(), "gamma".into()],
        relations: vec![
            Relation { lhs: commutator(&a, &g), rhs: vec![] },
            Relation { lhs: commutator(&be, &g), rhs: vec![] },
            Relation { lhs: commutator(&a, &be), rhs: vec![(2, b as i64)] },
        ],
    })
}
