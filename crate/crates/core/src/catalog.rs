//! Explicit matrix factorization families, each verified on construction.

use std::fmt;

use thiserror::Error;

use crate::arith::{parse_poly, vars, Field, Monomial, MultiPoly, PolyMatrix, RatFunc, Rational, Vars};
use crate::mf::{verify_mf, HypersurfaceSpec, MatrixFactorization, MfError};

type P = MultiPoly<Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("the E6 family has symbolic coefficients; use eg_e6_pair")]
    Symbolic,
    #[error(transparent)]
    Mf(#[from] MfError),
}

/// Which branch of `xy = 0` a component module lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    /// `M(y, x)`, supported on `x = 0`.
    One,
    /// `M(x, y)`, supported on `y = 0`.
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyId {
    /// `M(φ_l, ψ_l)` over `uv − wⁿ`.
    An(u32, u32),
    /// `(y ∓ xⁿ, y ± xⁿ)` over the curve `y² − x²ⁿ`; `true` selects `y − xⁿ`.
    AnCurveRankOne(u32, bool),
    /// `(φ_n, ψ_n)` over `xy`.
    AInfPhi(u32),
    AInfComponent(Component),
    DInfAlpha,
    DInfBeta,
    DInfGamma(u32),
    DInfDelta(u32),
    EGSix,
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::An(n, l) => write!(f, "an:{n}:{l}"),
            FamilyId::AnCurveRankOne(n, s) => write!(f, "curve:{n}:{}", if *s { "-" } else { "+" }),
            FamilyId::AInfPhi(n) => write!(f, "ainf:{n}"),
            FamilyId::AInfComponent(Component::One) => write!(f, "ainf-comp:1"),
            FamilyId::AInfComponent(Component::Two) => write!(f, "ainf-comp:2"),
            FamilyId::DInfAlpha => write!(f, "dinf-alpha"),
            FamilyId::DInfBeta => write!(f, "dinf-beta"),
            FamilyId::DInfGamma(m) => write!(f, "dinf-gamma:{m}"),
            FamilyId::DInfDelta(m) => write!(f, "dinf-delta:{m}"),
            FamilyId::EGSix => write!(f, "e6"),
        }
    }
}

impl std::str::FromStr for FamilyId {
    type Err = CatalogError;

    /// Inverse of `Display`.
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<u32, CatalogError> {
            parts
                .get(i)
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| CatalogError::Range(format!("bad family id {s:?}")))
        };
        let id = match parts[0] {
            "an" => FamilyId::An(num(1)?, num(2)?),
            "curve" => match parts.get(2) {
                Some(&"-") => FamilyId::AnCurveRankOne(num(1)?, true),
                Some(&"+") => FamilyId::AnCurveRankOne(num(1)?, false),
                _ => return Err(CatalogError::Range(format!("bad family id {s:?}"))),
            },
            "ainf" => FamilyId::AInfPhi(num(1)?),
            "ainf-comp" => match num(1)? {
                1 => FamilyId::AInfComponent(Component::One),
                2 => FamilyId::AInfComponent(Component::Two),
                _ => return Err(CatalogError::Range(format!("bad family id {s:?}"))),
            },
            "dinf-alpha" => FamilyId::DInfAlpha,
            "dinf-beta" => FamilyId::DInfBeta,
            "dinf-gamma" => FamilyId::DInfGamma(num(1)?),
            "dinf-delta" => FamilyId::DInfDelta(num(1)?),
            "e6" => FamilyId::EGSix,
            _ => return Err(CatalogError::Range(format!("unknown family {s:?}"))),
        };
        Ok(id)
    }
}

/// Rows of `(id pattern, ring, parameter range)` for `--list`.
pub fn family_table() -> Vec<(&'static str, &'static str, &'static str)> {
    vec![
        ("an:N:L", "u,v,w; u*v - w^N", "N >= 2, 1 <= L < N"),
        ("curve:N:-|+", "x,y; y^2 - x^(2N)", "N >= 1"),
        ("ainf:N", "x,y,z; x*y", "N >= 1"),
        ("ainf-comp:1|2", "x,y,z; x*y", "-"),
        ("dinf-alpha", "x,y,z; x^2*y - z^2", "-"),
        ("dinf-beta", "x,y,z; x^2*y - z^2", "-"),
        ("dinf-gamma:M", "x,y,z; x^2*y - z^2", "M >= 1"),
        ("dinf-delta:M", "x,y,z; x^2*y - z^2", "M >= 1"),
        ("e6", "x,y,z over Q(a,b,c); x^3 + y^3 + z^3 + tau*x*y*z", "symbolic"),
    ]
}

fn mat(v: &Vars, rows: &[&[String]]) -> PolyMatrix {
    PolyMatrix::from_rows(
        v,
        rows.iter()
            .map(|r| r.iter().map(|s| parse_poly(s, v).expect("catalog entry")).collect())
            .collect(),
    )
    .expect("catalog shape")
}

macro_rules! m {
    ($v:expr; $([$($e:expr),*]),*) => {
        mat($v, &[$(&[$($e.to_string()),*]),*])
    };
}

fn poly(v: &Vars, s: &str) -> P {
    parse_poly(s, v).expect("catalog polynomial")
}

/// `uv − wⁿ` over `u, v, w`.
pub fn an_ring(n: u32) -> HypersurfaceSpec {
    let v = vars(&["u", "v", "w"]);
    HypersurfaceSpec::new(&v, poly(&v, &format!("u*v - w^{n}")), None).expect("A_n ring")
}

/// `xy` over `x, y, z` with components `x`, `y`.
pub fn ainf_ring() -> HypersurfaceSpec {
    let v = vars(&["x", "y", "z"]);
    HypersurfaceSpec::new(&v, poly(&v, "x*y"), Some(vec![poly(&v, "x"), poly(&v, "y")])).expect("A_inf ring")
}

/// `x²y − z²` over `x, y, z`.
pub fn dinf_ring() -> HypersurfaceSpec {
    let v = vars(&["x", "y", "z"]);
    HypersurfaceSpec::new(&v, poly(&v, "x^2*y - z^2"), Some(vec![poly(&v, "x^2*y - z^2")])).expect("D_inf ring")
}

/// `y² − x²ⁿ` over `x, y` with branches `y − xⁿ`, `y + xⁿ`.
pub fn curve_ring(n: u32) -> HypersurfaceSpec {
    let v = vars(&["x", "y"]);
    HypersurfaceSpec::new(
        &v,
        poly(&v, &format!("y^2 - x^{}", 2 * n)),
        Some(vec![poly(&v, &format!("y - x^{n}")), poly(&v, &format!("y + x^{n}"))]),
    )
    .expect("curve ring")
}

/// The ring a family lives over.
pub fn family_ring(id: FamilyId) -> Result<HypersurfaceSpec, CatalogError> {
    check_range(id)?;
    Ok(match id {
        FamilyId::An(n, _) => an_ring(n),
        FamilyId::AnCurveRankOne(n, _) => curve_ring(n),
        FamilyId::AInfPhi(_) | FamilyId::AInfComponent(_) => ainf_ring(),
        FamilyId::DInfAlpha | FamilyId::DInfBeta | FamilyId::DInfGamma(_) | FamilyId::DInfDelta(_) => dinf_ring(),
        FamilyId::EGSix => return Err(CatalogError::Symbolic),
    })
}

fn check_range(id: FamilyId) -> Result<(), CatalogError> {
    let bad = match id {
        FamilyId::An(n, l) => n < 2 || l < 1 || l >= n,
        FamilyId::AnCurveRankOne(n, _) | FamilyId::AInfPhi(n) => n < 1,
        FamilyId::DInfGamma(m) | FamilyId::DInfDelta(m) => m < 1,
        _ => false,
    };
    if bad {
        Err(CatalogError::Range(id.to_string()))
    } else {
        Ok(())
    }
}

/// The displayed matrices `(φ, ψ)` of a family member, unverified.
pub fn displayed_pair(id: FamilyId) -> Result<(PolyMatrix, PolyMatrix), CatalogError> {
    let ring = family_ring(id)?;
    let v = ring.vars().clone();
    Ok(match id {
        FamilyId::An(n, l) => {
            let a = format!("w^{}", n - l);
            let b = format!("w^{l}");
            (
                m!(&v; ["u", format!("-{a}")], [format!("-{b}"), "v"]),
                m!(&v; ["v", a], [b, "u"]),
            )
        }
        FamilyId::AnCurveRankOne(n, minus) => {
            let (s, t) = if minus { ("-", "+") } else { ("+", "-") };
            (
                m!(&v; [format!("y {s} x^{n}")]),
                m!(&v; [format!("y {t} x^{n}")]),
            )
        }
        FamilyId::AInfPhi(n) => (
            m!(&v; ["y", format!("z^{n}")], ["0", "x"]),
            m!(&v; ["x", format!("-z^{n}")], ["0", "y"]),
        ),
        FamilyId::AInfComponent(Component::One) => (m!(&v; ["y"]), m!(&v; ["x"])),
        FamilyId::AInfComponent(Component::Two) => (m!(&v; ["x"]), m!(&v; ["y"])),
        FamilyId::DInfAlpha => (
            m!(&v; ["z", "x*y"], ["x", "z"]),
            m!(&v; ["-z", "x*y"], ["x", "-z"]),
        ),
        FamilyId::DInfBeta => (
            m!(&v; ["x^2", "z"], ["z", "y"]),
            m!(&v; ["y", "-z"], ["-z", "x^2"]),
        ),
        FamilyId::DInfGamma(m) => {
            let a = format!("y^{}", m + 1);
            let b = format!("y^{m}");
            (
                m!(&v; ["z", "x*y", "0", format!("-{a}")], ["x", "z", b.clone(), "0"], ["0", "0", "z", "x*y"], ["0", "0", "x", "z"]),
                m!(&v; ["-z", "-x*y", "0", a], ["x", "z", b, "0"], ["0", "0", "-z", "-x*y"], ["0", "0", "x", "z"]),
            )
        }
        FamilyId::DInfDelta(m) => {
            let b = format!("y^{m}");
            (
                m!(&v; ["z", "x*y", format!("-{b}"), "0"], ["x", "z", "0", b.clone()], ["0", "0", "z", "x*y"], ["0", "0", "x", "z"]),
                m!(&v; ["-z", "-x*y", format!("-{b}"), "0"], ["x", "z", "0", format!("-{b}")], ["0", "0", "-z", "-x*y"], ["0", "0", "x", "z"]),
            )
        }
        FamilyId::EGSix => unreachable!(),
    })
}

/// The family member as a verified factorization.
///
/// `φ` is always the displayed matrix. For γ_m and δ_m the displayed `ψ`
/// satisfies `φψ = f·diag(1, −1, 1, −1)` only; the partner used here is the
/// displayed `ψ` with columns 2 and 4 negated, which equals `f·φ⁻¹`.
pub fn family(id: FamilyId) -> Result<MatrixFactorization, CatalogError> {
    let ring = family_ring(id)?;
    let (phi, mut psi) = displayed_pair(id)?;
    if matches!(id, FamilyId::DInfGamma(_) | FamilyId::DInfDelta(_)) {
        for i in 0..psi.rows() {
            for j in [1, 3] {
                let e = psi.get(i, j).neg();
                psi.set(i, j, e);
            }
        }
    }
    Ok(verify_mf(&ring, phi, psi)?)
}

/// Polynomials in `x, y, z` with coefficients in `Q(a, b, c)`.
pub type SymPoly = MultiPoly<RatFunc>;
pub type SymMatrix = PolyMatrix<RatFunc>;

/// The Ẽ₆ example: the displayed `φ`, its computed partner, and checks.
#[derive(Clone, Debug)]
pub struct E6Pair {
    pub phi: SymMatrix,
    /// `adj(φ)`, so that `φψ = ψφ = det(φ)·I` holds identically.
    pub psi: SymMatrix,
    /// The displayed partner `φ′`.
    pub printed_psi: SymMatrix,
    pub det: SymPoly,
    /// `−abc·(x³ + y³ + z³ + τxyz)` with `τ = −(a³+b³+c³)/(abc)`.
    pub target: SymPoly,
    /// `φψ = ψφ = target·I` holds.
    pub identity_holds: bool,
    /// The displayed `φ′` is a scalar multiple of `ψ`.
    pub modulus_check: bool,
    /// Positions `(i, j)` where `φ′` disagrees with `ψ` under the best scaling.
    pub printed_mismatches: Vec<(usize, usize)>,
}

/// Coefficient variables `a, b, c` and the ring variables `x, y, z`.
pub fn e6_vars() -> (Vars, Vars) {
    (vars(&["a", "b", "c"]), vars(&["x", "y", "z"]))
}

fn sym(coef: &str, mono: &str) -> SymPoly {
    let (cv, xv) = e6_vars();
    let c = RatFunc::from_poly(parse_poly(coef, &cv).expect("coefficient"));
    let m = parse_poly(mono, &xv).expect("monomial");
    let (mono, k) = m.leading_term().expect("nonzero");
    debug_assert!(k.is_one());
    MultiPoly::monomial(&xv, mono.clone(), c)
}

fn sym_sum(terms: &[(&str, &str)]) -> SymPoly {
    let (_, xv) = e6_vars();
    terms.iter().fold(MultiPoly::zero(&xv), |acc, (c, m)| acc.add(&sym(c, m)))
}

fn sym_matrix(rows: Vec<Vec<SymPoly>>) -> SymMatrix {
    let (_, xv) = e6_vars();
    PolyMatrix::from_rows(&xv, rows).expect("3x3")
}

/// `−abc·w` with `τ` eliminated.
pub fn e6_target() -> SymPoly {
    let (cv, xv) = e6_vars();
    let p = |s: &str| parse_poly(s, &cv).unwrap();
    let abc = RatFunc::from_poly(p("a*b*c"));
    let tau = RatFunc::new(p("-a^3 - b^3 - c^3"), p("a*b*c"));
    let mut w = sym_sum(&[("1", "x^3"), ("1", "y^3"), ("1", "z^3")]);
    w = w.add(&MultiPoly::monomial(&xv, Monomial(vec![1, 1, 1]), tau));
    w.scale(&abc.neg())
}

/// Build and check the Ẽ₆ pair symbolically.
pub fn eg_e6_pair() -> E6Pair {
    let phi = sym_matrix(vec![
        vec![sym("a", "x"), sym("b", "y"), sym("c", "z")],
        vec![sym("c", "z"), sym("a", "y"), sym("b", "x")],
        vec![sym("b", "y"), sym("c", "z"), sym("a", "z")],
    ]);
    let printed_psi = sym_matrix(vec![
        vec![
            sym_sum(&[("a^2", "y*z"), ("-b*c", "x^2")]),
            sym_sum(&[("c^2", "x*y"), ("-a*b", "z^2")]),
            sym_sum(&[("b^2", "x*y"), ("-a*c", "y^2")]),
        ],
        vec![
            sym_sum(&[("b^2", "x*y"), ("-a*c", "z^2")]),
            sym_sum(&[("a^2", "y*z"), ("-b*c", "y^2")]),
            sym_sum(&[("c^2", "y*z"), ("-a*b", "x^2")]),
        ],
        vec![
            sym_sum(&[("c^2", "x*z"), ("-a*b", "y^2")]),
            sym_sum(&[("b^2", "y*z"), ("-a*c", "x^2")]),
            sym_sum(&[("a^2", "x*y"), ("-b*c", "z^2")]),
        ],
    ]);
    let psi = phi.adjugate().expect("square");
    let det = phi.det().expect("square");
    let target = e6_target();
    let n = phi.rows();
    let scalar = PolyMatrix::scalar(phi.vars(), n, &target);
    let identity_holds = phi.mul(&psi) == scalar && psi.mul(&phi) == scalar;

    // Best scaling: the ratio at the first entry where both are nonzero.
    let ratio = (0..n * n).find_map(|k| {
        let (i, j) = (k / n, k % n);
        let a = printed_psi.get(i, j);
        let b = psi.get(i, j);
        let (m, c) = a.leading_term()?;
        let d = b.coefficient(m);
        (!d.is_zero()).then(|| c.div(&d))
    });
    let mut printed_mismatches = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let scaled = match &ratio {
                Some(r) => psi.get(i, j).scale(r),
                None => psi.get(i, j).clone(),
            };
            if &scaled != printed_psi.get(i, j) {
                printed_mismatches.push((i, j));
            }
        }
    }
    E6Pair {
        modulus_check: printed_mismatches.is_empty(),
        phi,
        psi,
        printed_psi,
        det,
        target,
        identity_holds,
        printed_mismatches,
    }
}

/// Minimal monomial generators `x₁ⁱx₂ʲ` of the isotypic piece
/// `{i + mj ≡ l mod n}` over the invariant ring, up to total degree
/// `degree_bound`, as exponent pairs in increasing degree.
pub fn cyclic_module_generators(n: u32, m: u32, l: u32, degree_bound: u32) -> Result<Vec<Monomial>, CatalogError> {
    if n < 2 || m == 0 || m >= n || num_integer::gcd(n, m) != 1 || l < 1 || l > n {
        return Err(CatalogError::Range(format!("n={n}, m={m}, l={l}")));
    }
    let mut kept: Vec<Monomial> = Vec::new();
    for d in 0..=degree_bound {
        for i in (0..=d).rev() {
            let j = d - i;
            if (i + m * j) % n != l % n {
                continue;
            }
            let mono = Monomial(vec![i, j]);
            if !kept.iter().any(|g| g.divides(&mono)) {
                kept.push(mono);
            }
        }
    }
    Ok(kept)
}
