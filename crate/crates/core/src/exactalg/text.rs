//! Canonical text and JSON renderings of [`LaurentPoly`].
//!
//! Terms are printed in descending graded-lexicographic order, with variables
//! ranked by [`VarName`]'s ordering. Inside a term the variables also appear in
//! that order. A coefficient of `±1` is elided unless the monomial is constant,
//! an exponent of `1` is elided, and negative exponents print as `^-k`:
//!
//! ```text
//! Y[1,0]*Y[1,1]^2*X{0} - 2*X{1}^-1 + 1
//! ```

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::poly::{lex_cmp, LaurentPoly, Monomial};
use super::var::{VarId, VarName, VarTable};
use crate::error::{Error, Result};

/// Terms of `p` in canonical printing order.
pub fn canonical_terms<'a>(p: &'a LaurentPoly, table: &VarTable) -> Vec<(&'a Monomial, &'a BigInt)> {
    let rank = table.canonical_ranks();
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| {
        b.0.total_degree().cmp(&a.0.total_degree()).then_with(|| lex_cmp(b.0.pairs(), a.0.pairs(), |v| rank[v.index()]))
    });
    terms
}

fn write_monomial(out: &mut String, m: &Monomial, table: &VarTable, rank: &[usize]) {
    let mut pairs = m.pairs().to_vec();
    pairs.sort_by_key(|&(v, _)| rank[v.index()]);
    for (i, (v, e)) in pairs.into_iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        let _ = write!(out, "{}", table.name(v));
        if e != 1 {
            let _ = write!(out, "^{e}");
        }
    }
}

/// Renders a single monomial, `1` for the empty monomial.
pub fn render_monomial(m: &Monomial, table: &VarTable) -> String {
    if m.is_one() {
        return "1".into();
    }
    let mut s = String::new();
    write_monomial(&mut s, m, table, &table.canonical_ranks());
    s
}

/// Renders `p` in the canonical text format.
pub fn render(p: &LaurentPoly, table: &VarTable) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let rank = table.canonical_ranks();
    let mut out = String::new();
    for (i, (m, c)) in canonical_terms(p, table).into_iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        if m.is_one() {
            let _ = write!(out, "{abs}");
        } else {
            if !abs.is_one() {
                let _ = write!(out, "{abs}*");
            }
            write_monomial(&mut out, m, table, &rank);
        }
    }
    out
}

/// Display adapter pairing a polynomial with its variable table.
pub struct Rendered<'a> {
    pub poly: &'a LaurentPoly,
    pub table: &'a VarTable,
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.poly, self.table))
    }
}

/// One term in the JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: String,
    pub monomial: BTreeMap<String, i32>,
}

pub fn to_json_terms(p: &LaurentPoly, table: &VarTable) -> Vec<JsonTerm> {
    canonical_terms(p, table)
        .into_iter()
        .map(|(m, c)| JsonTerm {
            coeff: c.to_string(),
            monomial: m.pairs().iter().map(|&(v, e)| (table.name(v).to_string(), e)).collect(),
        })
        .collect()
}

pub fn from_json_terms(terms: &[JsonTerm], table: &mut VarTable) -> Result<LaurentPoly> {
    let mut p = LaurentPoly::zero();
    for t in terms {
        let c: BigInt =
            t.coeff.parse().map_err(|_| Error::Parse { pos: 0, msg: format!("bad coefficient {:?}", t.coeff) })?;
        let mut pairs = Vec::new();
        for (name, &e) in &t.monomial {
            let v = parse_var_name(name, table)?;
            pairs.push((v, e));
        }
        p.add_term(Monomial::from_pairs(pairs), c);
    }
    Ok(p)
}

fn parse_var_name(name: &str, table: &mut VarTable) -> Result<VarId> {
    let mut parser = Parser { s: name.as_bytes(), pos: 0, table };
    let v = parser.var()?;
    if parser.pos != name.len() {
        return Err(parser.err("trailing characters in variable name"));
    }
    Ok(v)
}

/// Parses the canonical text format (terms may come in any order).
///
/// `Y[i,j]` and plain names are interned on demand; `X{...}` variables must
/// already be present in `table`, because their ordering key is not
/// recoverable from the label alone.
pub fn parse(text: &str, table: &mut VarTable) -> Result<LaurentPoly> {
    let mut parser = Parser { s: text.as_bytes(), pos: 0, table };
    let p = parser.poly()?;
    parser.skip_ws();
    if parser.pos != parser.s.len() {
        return Err(parser.err("unexpected trailing input"));
    }
    Ok(p)
}

struct Parser<'a, 'b> {
    s: &'a [u8],
    pos: usize,
    table: &'b mut VarTable,
}

impl Parser<'_, '_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut p = LaurentPoly::zero();
        self.skip_ws();
        let mut negative = false;
        if self.peek() == Some(b'-') {
            negative = true;
            self.pos += 1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            self.skip_ws();
            let (m, c) = self.term()?;
            p.add_term(m, if negative { -c } else { c });
            self.skip_ws();
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(p)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn small_int(&mut self) -> Result<i64> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let v: i64 = self.integer()?.try_into().map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        let mut coeff = BigInt::one();
        let mut pairs = Vec::new();
        loop {
            self.skip_ws();
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                coeff *= self.integer()?;
            } else {
                let v = self.var()?;
                let mut e = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    e = self.small_int()? as i32;
                }
                pairs.push((v, e));
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::from_pairs(pairs), coeff))
    }

    fn var(&mut self) -> Result<VarId> {
        let start = self.pos;
        match self.peek() {
            Some(b'X') if self.s.get(self.pos + 1) == Some(&b'{') => {
                while self.peek().is_some_and(|c| c != b'}') {
                    self.pos += 1;
                }
                if self.peek() != Some(b'}') {
                    return Err(self.err("unterminated X{...}"));
                }
                self.pos += 1;
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                self.table
                    .lookup(name)
                    .ok_or_else(|| Error::Parse { pos: start, msg: format!("unknown variable {name}") })
            }
            Some(b'Y') if self.s.get(self.pos + 1) == Some(&b'[') => {
                self.pos += 2;
                let i = self.small_int()?;
                if self.peek() != Some(b',') {
                    return Err(self.err("expected ','"));
                }
                self.pos += 1;
                let j = self.small_int()?;
                if self.peek() != Some(b']') {
                    return Err(self.err("expected ']'"));
                }
                self.pos += 1;
                if i < 1 || j < 0 {
                    return Err(self.err("bad Y index"));
                }
                Ok(self.table.intern(VarName::y(i as u32, j as u32)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let mut parts = ident.split('_');
                let stem = parts.next().unwrap_or_default();
                let sub: std::result::Result<Vec<u32>, _> = parts.map(str::parse).collect();
                let sub = sub.map_err(|_| self.err("bad variable subscript"))?;
                Ok(self.table.intern(VarName::indexed(stem, &sub)))
            }
            _ => Err(self.err("expected a variable or coefficient")),
        }
    }
}

/// Checks that two polynomials agree, returning the first differing term
/// (in canonical order) when they do not.
pub fn first_difference(a: &LaurentPoly, b: &LaurentPoly, table: &VarTable) -> Option<String> {
    let diff = a - b;
    let (m, c) = canonical_terms(&diff, table).into_iter().next()?;
    Some(format!("{}*{}", c, render_monomial(m, table)))
}

/// Orders monomials the way [`render`] prints them.
pub fn canonical_cmp(a: &Monomial, b: &Monomial, table: &VarTable) -> Ordering {
    let rank = table.canonical_ranks();
    b.total_degree().cmp(&a.total_degree()).then_with(|| lex_cmp(b.pairs(), a.pairs(), |v| rank[v.index()]))
}
