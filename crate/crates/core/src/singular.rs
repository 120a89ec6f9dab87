//! Export of Ext queries as Singular scripts over the local ring
//! `Q[vars]_(vars)/(f)`, for cross-checking with `homolog.lib`.
//!
//! Lines come from `templates/singular_session.tmpl`. Modules are given by
//! presentation matrices; each column becomes one generator.

use thiserror::Error;

use crate::arith::{Field, MultiPoly, PolyMatrix, Rational};
use crate::mf::HypersurfaceSpec;

const TEMPLATE: &str = include_str!("../templates/singular_session.tmpl");

/// Names the header of the template already uses.
const RESERVED: [&str; 4] = ["S", "I", "A", "l"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SingularError {
    #[error("ring not expressible in the session template: {0}")]
    Inexpressible(String),
    #[error("unknown module {0:?}")]
    UnknownModule(String),
    #[error("module {0:?} has no rows")]
    Empty(String),
}

/// A script: ring, named modules, optional residue field `k`, and Ext
/// queries `Ext(i, source, target)` by module name.
#[derive(Clone, Debug)]
pub struct ExportProblem {
    pub ring: HypersurfaceSpec,
    pub residue_field: bool,
    pub modules: Vec<(String, PolyMatrix)>,
    pub queries: Vec<(u32, String, String)>,
}

fn section(name: &str) -> Vec<&'static str> {
    let mut lines = TEMPLATE.lines();
    let header = format!("# {name}");
    lines.by_ref().find(|l| *l == header).expect("template section");
    lines.take_while(|l| !l.starts_with("# ")).collect()
}

fn fill(lines: &[&str], subs: &[(&str, &str)]) -> String {
    let mut out = String::new();
    for l in lines {
        let mut l = l.to_string();
        for (k, v) in subs {
            l = l.replace(&format!("{{{k}}}"), v);
        }
        out.push_str(&l);
        out.push('\n');
    }
    out
}

fn is_identifier(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Singular text of a polynomial. With single-letter variables exponents
/// use the short form `y2`, as typed in an interactive session.
pub fn singular_poly(p: &MultiPoly<Rational>) -> String {
    let vars = p.vars();
    let short = vars.iter().all(|v| v.len() == 1);
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let neg = c < &Rational::zero();
        let mag = if neg { c.neg() } else { c.clone() };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let factors: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| match (e, short) {
                (1, _) => vars[i].clone(),
                (_, true) => format!("{}{e}", vars[i]),
                (_, false) => format!("{}^{e}", vars[i]),
            })
            .collect();
        let sep = if short { "" } else { "*" };
        if factors.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&factors.join(sep));
        } else {
            out.push_str(&format!("{mag}*{}", factors.join(sep)));
        }
    }
    out
}

fn generators(m: &PolyMatrix) -> String {
    (0..m.cols())
        .map(|j| {
            let col: Vec<String> = (0..m.rows()).map(|i| singular_poly(m.get(i, j))).collect();
            format!("[{}]", col.join(", "))
        })
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn export_singular(p: &ExportProblem) -> Result<String, SingularError> {
    let vars = p.ring.vars();
    for v in vars.iter() {
        if !is_identifier(v) || RESERVED.contains(&v.as_str()) {
            return Err(SingularError::Inexpressible(format!("variable name {v:?}")));
        }
    }
    let mut names: Vec<&str> = Vec::new();
    for (name, m) in &p.modules {
        if !is_identifier(name)
            || RESERVED.contains(&name.as_str())
            || (p.residue_field && name == "k")
            || vars.iter().any(|v| v == name)
            || names.contains(&name.as_str())
        {
            return Err(SingularError::Inexpressible(format!("module name {name:?}")));
        }
        if m.vars() != vars {
            return Err(SingularError::Inexpressible(format!("module {name:?} lives over other variables")));
        }
        if m.rows() == 0 {
            return Err(SingularError::Empty(name.clone()));
        }
        names.push(name);
    }
    for (_, a, b) in &p.queries {
        for n in [a, b] {
            let known = names.contains(&n.as_str()) || (p.residue_field && n == "k");
            if !known {
                return Err(SingularError::UnknownModule(n.clone()));
            }
        }
    }

    let var_list = vars.join(",");
    let f = singular_poly(p.ring.f());
    let mut out = fill(&section("header"), &[("vars", &var_list), ("f", &f)]);
    if p.residue_field {
        let gens: Vec<String> = vars.iter().map(|v| format!("[{v}]")).collect();
        out += &fill(&section("residue-field"), &[("generators", &gens.join(", "))]);
    }
    for (name, m) in &p.modules {
        out += &fill(&section("module"), &[("name", name), ("generators", &generators(m))]);
    }
    for (name, _) in &p.modules {
        out += &fill(&section("check"), &[("name", name)]);
    }
    for (i, a, b) in &p.queries {
        out += &fill(&section("ext"), &[("i", &i.to_string()), ("source", a), ("target", b)]);
    }
    Ok(out)
}

/// The session over `xyz = 0`: residue field, `M`, `N`, `K`, and the
/// queries `Ext¹(k, N)`, `Ext²(M, M)`, `Ext²(N, K)`.
pub fn session_problem() -> ExportProblem {
    let [m, n, k] = crate::ext::session_modules();
    ExportProblem {
        ring: crate::ext::normal_crossing_ring(),
        residue_field: true,
        modules: vec![
            ("M".into(), m.phi().clone()),
            ("N".into(), n.phi().clone()),
            ("K".into(), k.phi().clone()),
        ],
        queries: vec![
            (1, "k".into(), "N".into()),
            (2, "M".into(), "M".into()),
            (2, "N".into(), "K".into()),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::normal_crossing_ring;

    #[test]
    fn short_notation() {
        let r = normal_crossing_ring();
        assert_eq!(singular_poly(&r.parse_poly("-x^2 + y^3").unwrap()), "y3 - x2");
        assert_eq!(singular_poly(&r.parse_poly("x*y").unwrap()), "xy");
        assert_eq!(singular_poly(&r.parse_poly("1/2*x*z^2 - 3").unwrap()), "1/2*xz2 - 3");
    }

    #[test]
    fn ring_setup_only() {
        let p = ExportProblem {
            ring: normal_crossing_ring(),
            residue_field: false,
            modules: vec![],
            queries: vec![],
        };
        let s = export_singular(&p).unwrap();
        assert_eq!(s.lines().count(), 4);
        assert!(s.ends_with("qring A = std(I);\n"));
    }

    #[test]
    fn rejects_clashing_names() {
        let mut p = session_problem();
        p.modules[0].0 = "A".into();
        assert!(matches!(export_singular(&p), Err(SingularError::Inexpressible(_))));
        let mut p = session_problem();
        p.queries.push((1, "Q".into(), "M".into()));
        assert!(matches!(export_singular(&p), Err(SingularError::UnknownModule(_))));
    }
}
