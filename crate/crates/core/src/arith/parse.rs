//! Text grammar for polynomials with rational coefficients.
//!
//! A polynomial is a signed sum of terms such as `3/2*x^2*y - z + 7`.
//! `*` between factors and `^1` are optional; whitespace is ignored.
//! Juxtaposed variables (`xy`) are split by longest match against the
//! declared variable names.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::field::{Field, Rational};
use super::poly::{Monomial, MultiPoly, Vars};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at offset {pos} in {text:?}")]
    Unexpected { ch: char, pos: usize, text: String },
    #[error("unexpected end of input in {0:?}")]
    Eof(String),
    #[error("unknown variable at offset {pos} in {text:?}")]
    UnknownVariable { pos: usize, text: String },
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("{0}")]
    Other(String),
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            text,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(ch) => ParseError::Unexpected {
                ch,
                pos: self.pos,
                text: self.text.to_string(),
            },
            None => ParseError::Eof(self.text.to_string()),
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            let s: String = self.chars[start..self.pos].iter().collect();
            s.parse().map_err(|_| self.unexpected())
        } else {
            Ok(1)
        }
    }

    /// Longest variable name matching at the cursor.
    fn variable(&mut self, names: &[String]) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for (i, name) in names.iter().enumerate() {
            let n: Vec<char> = name.chars().collect();
            if self.chars.len() >= self.pos + n.len()
                && self.chars[self.pos..self.pos + n.len()] == n[..]
                && best.is_none_or(|(_, l)| n.len() > l)
            {
                best = Some((i, n.len()));
            }
        }
        best.map(|(i, l)| {
            self.pos += l;
            i
        })
    }
}

/// Parse a polynomial over `vars`.
pub fn parse_poly(text: &str, vars: &Vars) -> Result<MultiPoly<Rational>, ParseError> {
    let mut cur = Cursor::new(text);
    if cur.chars.is_empty() {
        return Err(ParseError::Eof(text.to_string()));
    }
    let mut out = MultiPoly::zero(vars);
    let mut first = true;
    while cur.peek().is_some() {
        let mut negative = false;
        match cur.peek() {
            Some('+') => cur.pos += 1,
            Some('-') => {
                negative = true;
                cur.pos += 1
            }
            _ if first => {}
            _ => return Err(cur.unexpected()),
        }
        first = false;
        let (m, c) = parse_term(&mut cur, vars)?;
        out.add_term(m, if negative { c.neg() } else { c });
    }
    Ok(out)
}

fn parse_term(cur: &mut Cursor, vars: &Vars) -> Result<(Monomial, Rational), ParseError> {
    let mut coef = Rational::one();
    let mut exps = vec![0u32; vars.len()];
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = cur.integer().ok_or_else(|| cur.unexpected())?;
                let mut val = BigRational::from_integer(num);
                if cur.peek() == Some('/') {
                    cur.pos += 1;
                    let den = cur.integer().ok_or_else(|| cur.unexpected())?;
                    if den == BigInt::from(0) {
                        return Err(ParseError::ZeroDenominator(cur.text.to_string()));
                    }
                    val /= BigRational::from_integer(den);
                }
                let e = cur.exponent()?;
                for _ in 0..e {
                    coef = coef.mul(&val);
                }
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let pos = cur.pos;
                let i = cur.variable(vars).ok_or(ParseError::UnknownVariable {
                    pos,
                    text: cur.text.to_string(),
                })?;
                exps[i] += cur.exponent()?;
            }
            _ => return Err(cur.unexpected()),
        }
        match cur.peek() {
            Some('*') => {
                cur.pos += 1;
            }
            Some('+') | Some('-') | None => break,
            _ => {}
        }
    }
    Ok((Monomial(exps), coef))
}

/// Parse a comma-separated variable list such as `x, y, z`.
pub fn parse_vars(text: &str) -> Result<Vars, ParseError> {
    let names: Vec<String> = text
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    for n in &names {
        let ok = n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && n.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(ParseError::Other(format!("bad variable name {n:?}")));
        }
    }
    if names.is_empty() {
        return Err(ParseError::Other("empty variable list".into()));
    }
    Ok(std::sync::Arc::new(names))
}

/// Parse a ring description `"x,y,z; x*y*z"` into variables and `f`.
pub fn parse_ring(text: &str) -> Result<(Vars, MultiPoly<Rational>), ParseError> {
    let (v, f) = text
        .split_once(';')
        .ok_or_else(|| ParseError::Other(format!("expected \"vars; f\" in {text:?}")))?;
    let vars = parse_vars(v)?;
    let f = parse_poly(f, &vars)?;
    Ok((vars, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::vars;

    #[test]
    fn parses_basic_forms() {
        let v = vars(&["x", "y", "z"]);
        let p = parse_poly("x*y*z + x*y^2*z^3", &v).unwrap();
        assert_eq!(p.to_string(), "x*y^2*z^3 + x*y*z");
        let p = parse_poly("-x2 + y3", &vars(&["x2", "y3"])).unwrap();
        assert_eq!(p.to_string(), "-x2 + y3");
        let p = parse_poly("3/2 xy - 1/2", &v).unwrap();
        assert_eq!(p.to_string(), "3/2*x*y - 1/2");
        assert_eq!(parse_poly("2^3", &v).unwrap().to_string(), "8");
    }

    #[test]
    fn rejects_garbage() {
        let v = vars(&["x", "y"]);
        assert!(parse_poly("x + w", &v).is_err());
        assert!(parse_poly("x +", &v).is_err());
        assert!(parse_poly("1/0", &v).is_err());
        assert!(parse_poly("", &v).is_err());
        assert!(parse_poly("x ** y", &v).is_err());
    }

    #[test]
    fn longest_match_splits_juxtaposition() {
        let v = vars(&["u", "v", "w"]);
        let p = parse_poly("uv - w^4", &v).unwrap();
        assert_eq!(p.to_string(), "-w^4 + u*v");
    }
}
