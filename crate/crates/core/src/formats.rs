//! JSON documents for factorizations, Laurent matrices and dual graphs.
//!
//! Polynomials are stored as text in the grammar of [`parse_poly`], Laurent
//! entries as maps from exponent to rational text. Printing is canonical,
//! so `print(parse(print(x))) = print(x)` byte for byte.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{parse_poly, parse_vars, LaurentPoly, MultiPoly, PolyMatrix, Rational, Vars};
use crate::mf::{verify_mf_with_unit, HypersurfaceSpec, MatrixFactorization, MfError};
use crate::normal_form::{LaurentMatrix, NormalFormError};
use crate::resolution::{DualGraph, ResolutionError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad polynomial {text:?}: {reason}")]
    Poly { text: String, reason: String },
    #[error("bad rational {0:?}")]
    Rational(String),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Mf(#[from] MfError),
    #[error(transparent)]
    NormalForm(#[from] NormalFormError),
    #[error(transparent)]
    Graph(#[from] ResolutionError),
}

/// On-disk form of a matrix factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MfDocument {
    pub vars: Vec<String>,
    pub f: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<String>>,
    /// The unit `u` in `φψ = u·f·I`; absent means `1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    pub phi: Vec<Vec<String>>,
    pub psi: Vec<Vec<String>>,
}

fn poly(text: &str, v: &Vars) -> Result<MultiPoly<Rational>, FormatError> {
    parse_poly(text, v).map_err(|e| FormatError::Poly {
        text: text.to_string(),
        reason: e.to_string(),
    })
}

fn matrix(rows: &[Vec<String>], v: &Vars) -> Result<PolyMatrix, FormatError> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| poly(s, v)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    PolyMatrix::from_rows(v, rows).map_err(|e| FormatError::Shape(e.to_string()))
}

fn matrix_text(m: &PolyMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect()
}

impl MfDocument {
    pub fn from_mf(mf: &MatrixFactorization) -> Self {
        let ring = mf.ring();
        MfDocument {
            vars: ring.vars().iter().cloned().collect(),
            f: ring.f().to_string(),
            factors: ring.factors().map(|fs| fs.iter().map(|p| p.to_string()).collect()),
            unit: (!mf.unit().is_one()).then(|| mf.unit().to_string()),
            phi: matrix_text(mf.phi()),
            psi: matrix_text(mf.psi()),
        }
    }

    pub fn ring(&self) -> Result<HypersurfaceSpec, FormatError> {
        let v = parse_vars(&self.vars.join(",")).map_err(|e| FormatError::Shape(e.to_string()))?;
        let f = poly(&self.f, &v)?;
        let factors = match &self.factors {
            Some(fs) => Some(fs.iter().map(|s| poly(s, &v)).collect::<Result<Vec<_>, _>>()?),
            None => None,
        };
        Ok(HypersurfaceSpec::new(&v, f, factors)?)
    }

    /// Parse and verify the defining identities.
    pub fn to_mf(&self) -> Result<MatrixFactorization, FormatError> {
        let ring = self.ring()?;
        let v = ring.vars().clone();
        let unit = match &self.unit {
            Some(u) => poly(u, &v)?,
            None => MultiPoly::one(&v),
        };
        Ok(verify_mf_with_unit(&ring, matrix(&self.phi, &v)?, matrix(&self.psi, &v)?, unit)?)
    }
}

/// Pretty JSON with every value whose compact form fits in 80 columns kept
/// on one line, so matrix rows read as rows.
pub fn to_json_text<T: Serialize>(doc: &T) -> String {
    let v = serde_json::to_value(doc).expect("serializable");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let compact = v.to_string();
    if compact.len() + indent <= 80 || !(v.is_array() || v.is_object()) {
        out.push_str(&compact);
        return;
    }
    let pad = " ".repeat(indent + 2);
    match v {
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad);
                write_value(x, indent + 2, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&" ".repeat(indent));
            out.push(']');
        }
        Value::Object(o) => {
            out.push_str("{\n");
            for (i, (k, x)) in o.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 2, out);
                out.push_str(if i + 1 < o.len() { ",\n" } else { "\n" });
            }
            out.push_str(&" ".repeat(indent));
            out.push('}');
        }
        _ => unreachable!(),
    }
}

pub fn mf_to_json(mf: &MatrixFactorization) -> String {
    to_json_text(&MfDocument::from_mf(mf))
}

pub fn mf_from_json(text: &str) -> Result<MatrixFactorization, FormatError> {
    serde_json::from_str::<MfDocument>(text)?.to_mf()
}

/// On-disk form of a Laurent matrix: one map exponent → coefficient per
/// entry, zero coefficients omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentDocument {
    pub var: String,
    pub prec: i64,
    /// Needed when there are no rows.
    pub cols: usize,
    pub entries: Vec<Vec<BTreeMap<i64, String>>>,
}

impl LaurentDocument {
    pub fn from_matrix(m: &LaurentMatrix) -> Self {
        LaurentDocument {
            var: m.var().to_string(),
            prec: m.prec(),
            cols: m.cols(),
            entries: m
                .to_rows()
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|p| p.terms().map(|(e, c)| (*e, c.to_string())).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<LaurentMatrix, FormatError> {
        let mut rows = Vec::with_capacity(self.entries.len());
        for r in &self.entries {
            if r.len() != self.cols {
                return Err(FormatError::Shape(format!("row of length {} in a {}-column matrix", r.len(), self.cols)));
            }
            let mut row = Vec::with_capacity(r.len());
            for entry in r {
                let mut terms = Vec::with_capacity(entry.len());
                for (e, c) in entry {
                    let c: Rational = c.trim().parse().map_err(|_| FormatError::Rational(c.clone()))?;
                    terms.push((*e, c));
                }
                row.push(LaurentPoly::from_terms(&self.var, terms));
            }
            rows.push(row);
        }
        let m = LaurentMatrix::from_rows(&self.var, rows, self.cols, Some(self.prec))?;
        if m.prec() != self.prec {
            return Err(FormatError::Shape(format!(
                "prec {} does not exceed the largest exponent {}",
                self.prec,
                m.prec() - 1
            )));
        }
        Ok(m)
    }
}

pub fn laurent_to_json(m: &LaurentMatrix) -> String {
    to_json_text(&LaurentDocument::from_matrix(m))
}

pub fn laurent_from_json(text: &str) -> Result<LaurentMatrix, FormatError> {
    serde_json::from_str::<LaurentDocument>(text)?.to_matrix()
}

/// An `A∞` input: the pair `(θ₁, θ₂)` as a two-element array.
pub fn laurent_pair_to_json(a: &LaurentMatrix, b: &LaurentMatrix) -> String {
    let docs = [LaurentDocument::from_matrix(a), LaurentDocument::from_matrix(b)];
    to_json_text(&docs)
}

pub fn laurent_pair_from_json(text: &str) -> Result<(LaurentMatrix, LaurentMatrix), FormatError> {
    let [a, b]: [LaurentDocument; 2] = serde_json::from_str(text)?;
    Ok((a.to_matrix()?, b.to_matrix()?))
}

/// Graph documents are `{"weights": [...], "edges": [[i, j], ...]}`.
pub fn graph_to_json(g: &DualGraph) -> String {
    to_json_text(g)
}

pub fn graph_from_json(text: &str) -> Result<DualGraph, FormatError> {
    let g: DualGraph = serde_json::from_str(text)?;
    g.validate()?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{family, FamilyId};

    #[test]
    fn mf_round_trip() {
        let mf = family(FamilyId::DInfGamma(2)).unwrap();
        let text = mf_to_json(&mf);
        let back = mf_from_json(&text).unwrap();
        assert_eq!(back, mf);
        assert_eq!(mf_to_json(&back), text);
    }

    #[test]
    fn unit_is_kept() {
        let [m, _, _] = crate::ext::session_modules();
        let text = mf_to_json(&m);
        assert!(text.contains("\"unit\""));
        assert_eq!(mf_from_json(&text).unwrap(), m);
    }

    #[test]
    fn broken_identity_is_rejected() {
        let mut doc = MfDocument::from_mf(&family(FamilyId::AInfPhi(1)).unwrap());
        doc.psi[0][0] = "x + 1".into();
        assert!(matches!(doc.to_mf(), Err(FormatError::Mf(_))));
    }

    #[test]
    fn laurent_round_trip() {
        let m = LaurentMatrix::from_monomials("t", &[&[Some((-2, 3)), None], &[Some((5, -1)), Some((0, 1))]]);
        let text = laurent_to_json(&m);
        let back = laurent_from_json(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(laurent_to_json(&back), text);
    }

    #[test]
    fn graph_round_trip() {
        let g = DualGraph::new(vec![-2, -3, -2], vec![(0, 1), (1, 2)]).unwrap();
        let text = graph_to_json(&g);
        assert_eq!(graph_from_json(&text).unwrap(), g);
        assert!(graph_from_json(r#"{"weights":[0],"edges":[]}"#).is_err());
    }
}
