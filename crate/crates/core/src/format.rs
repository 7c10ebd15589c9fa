//! Textual and JSON forms for elements, module specs and induced-module vectors.
//!
//! Text elements look like `4*d[0] + 4*h[0] + 1/2*c` (Witt elements use `L[n]`).
//! JSON rationals are `{num, den}` records; integers that do not fit in 64 bits
//! are written as decimal strings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{Generator, LieElement};
use crate::induced::{BasisKey, IndVector};
use crate::linalg::Matrix;
use crate::lq_module::{LqModuleSpec, SpecError, VVector};
use crate::multi_index::MultiIndex;
use crate::scalar::Scalar;
use crate::witt::WittElement;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid rational: {0}")]
    Scalar(#[from] crate::scalar::ScalarError),
    #[error("invalid module spec: {0}")]
    Spec(#[from] SpecError),
    #[error("{0}")]
    Invalid(String),
}

// ---------------------------------------------------------------------------
// text

fn write_terms<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    terms: Vec<(String, T)>,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    let parts: Vec<String> = terms
        .into_iter()
        .map(|(sym, c)| format!("{c}*{sym}"))
        .collect();
    write!(f, "{}", parts.join(" + "))
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().map(|(g, s)| (g.to_string(), s)).collect())
    }
}

impl fmt::Display for WittElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms().map(|(n, s)| (format!("L[{n}]"), s)).collect(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Symbol {
    D(i64),
    H(i64),
    C,
    L(i64),
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, FormatError> {
        Err(FormatError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    fn integer(&mut self) -> Result<BigInt, FormatError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .or_else(|_| self.err("expected integer"))
    }

    fn small_integer(&mut self) -> Result<i64, FormatError> {
        let n = self.integer()?;
        n.to_i64()
            .map_or_else(|| self.err("index out of range"), Ok)
    }

    fn rational(&mut self) -> Result<Scalar, FormatError> {
        let p = self.integer()?;
        if self.eat('/') {
            let q = self.integer()?;
            Ok(Scalar::new(p, q)?)
        } else {
            Ok(Scalar::new(p, 1)?)
        }
    }

    fn symbol(&mut self) -> Result<Symbol, FormatError> {
        self.skip_ws();
        let head = self.peek();
        let indexed = |lx: &mut Self| -> Result<i64, FormatError> {
            lx.pos += 1;
            if !lx.eat('[') {
                return lx.err("expected `[`");
            }
            let n = lx.small_integer()?;
            if !lx.eat(']') {
                return lx.err("expected `]`");
            }
            Ok(n)
        };
        match head {
            Some('d') => Ok(Symbol::D(indexed(self)?)),
            Some('h') => Ok(Symbol::H(indexed(self)?)),
            Some('L') => Ok(Symbol::L(indexed(self)?)),
            Some('c') => {
                self.pos += 1;
                Ok(Symbol::C)
            }
            _ => self.err("expected a symbol d[n], h[n], c or L[n]"),
        }
    }

    /// `[+|-] [rational *] symbol`, repeated; a bare `0` is the empty sum.
    fn terms(&mut self) -> Result<Vec<(Symbol, Scalar)>, FormatError> {
        let mut out = Vec::new();
        if self.src.trim() == "0" {
            return Ok(out);
        }
        let mut first = true;
        loop {
            if self.at_end() {
                if first {
                    return self.err("empty expression");
                }
                return Ok(out);
            }
            let mut sign = Scalar::one();
            if self.eat('+') {
            } else if !first {
                if self.eat('-') {
                    sign = -sign;
                } else {
                    return self.err("expected `+` or `-` between terms");
                }
            }
            first = false;
            self.skip_ws();
            let coef = if self.peek().is_some_and(|c| c.is_ascii_digit() || c == '-') {
                let r = self.rational()?;
                if !self.eat('*') {
                    return self.err("expected `*` after coefficient");
                }
                r
            } else {
                Scalar::one()
            };
            let sym = self.symbol()?;
            out.push((sym, sign * coef));
        }
    }
}

impl FromStr for LieElement {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lx = Lexer::new(s);
        let terms = lx.terms()?;
        let mut e = LieElement::zero();
        for (sym, c) in terms {
            let g = match sym {
                Symbol::D(n) => Generator::D(n),
                Symbol::H(n) => Generator::H(n),
                Symbol::C => Generator::C,
                Symbol::L(_) => return Err(FormatError::Invalid("`L[n]` is a Witt symbol".into())),
            };
            e.add_term(g, &c);
        }
        Ok(e)
    }
}

impl FromStr for WittElement {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lx = Lexer::new(s);
        let mut e = WittElement::zero();
        for (sym, c) in lx.terms()? {
            match sym {
                Symbol::L(n) => e.add_term(n, &c),
                _ => return Err(FormatError::Invalid("Witt elements use `L[n]` only".into())),
            }
        }
        Ok(e)
    }
}

impl FromStr for Generator {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lx = Lexer::new(s);
        let sym = lx.symbol()?;
        if !lx.at_end() {
            return lx.err("trailing input after generator");
        }
        match sym {
            Symbol::D(n) => Ok(Generator::D(n)),
            Symbol::H(n) => Ok(Generator::H(n)),
            Symbol::C => Ok(Generator::C),
            Symbol::L(_) => Err(FormatError::Invalid("expected d[n], h[n] or c".into())),
        }
    }
}

/// PBW monomial as text, e.g. `h[-3]^2*h[-2]*d[-1]`; the vacuum is `1`.
pub fn monomial_text(key: &BasisKey, q: u32) -> String {
    let q = i64::from(q);
    let mut factors = Vec::new();
    for (s, e) in key.h.support().rev() {
        factors.push(power(&format!("h[{}]", -q - s as i64), e));
    }
    for (t, e) in key.d.support().rev() {
        factors.push(power(&format!("d[{}]", -(t as i64)), e));
    }
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

fn power(sym: &str, e: u32) -> String {
    if e == 1 {
        sym.to_string()
    } else {
        format!("{sym}^{e}")
    }
}

pub fn ind_vector_text(v: &IndVector, q: u32) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let parts: Vec<String> = v
        .terms()
        .map(|(k, c)| {
            let coords: Vec<String> = c.coords().iter().map(ToString::to_string).collect();
            format!("{}⊗({})", monomial_text(k, q), coords.join(", "))
        })
        .collect();
    parts.join(" + ")
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Clone, Debug, PartialEq, Eq)]
struct WireInt(BigInt);

impl Serialize for WireInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(n) => s.serialize_i64(n),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for WireInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n
                .to_string()
                .parse()
                .map(WireInt)
                .map_err(|_| D::Error::custom("expected an integer")),
            serde_json::Value::String(s) => s
                .trim()
                .parse()
                .map(WireInt)
                .map_err(|_| D::Error::custom("expected an integer string")),
            _ => Err(D::Error::custom("expected an integer")),
        }
    }
}

/// `{num, den}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalRecord {
    num: WireInt,
    den: WireInt,
}

impl From<&Scalar> for RationalRecord {
    fn from(s: &Scalar) -> Self {
        RationalRecord {
            num: WireInt(s.numer().clone()),
            den: WireInt(s.denom().clone()),
        }
    }
}

impl TryFrom<RationalRecord> for Scalar {
    type Error = FormatError;

    fn try_from(r: RationalRecord) -> Result<Self, FormatError> {
        Ok(Scalar::new(r.num.0, r.den.0)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRecord {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    index: Option<i64>,
    num: WireInt,
    den: WireInt,
}

fn term_records<'a>(
    terms: impl Iterator<Item = (&'a str, Option<i64>, &'a Scalar)>,
) -> Vec<TermRecord> {
    terms
        .map(|(kind, index, s)| TermRecord {
            kind: kind.to_string(),
            index,
            num: WireInt(s.numer().clone()),
            den: WireInt(s.denom().clone()),
        })
        .collect()
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn element_to_json(e: &LieElement) -> String {
    let records = term_records(e.terms().map(|(g, s)| match g {
        Generator::D(n) => ("d", Some(n), s),
        Generator::H(n) => ("h", Some(n), s),
        Generator::C => ("c", None, s),
    }));
    to_pretty(&records)
}

pub fn element_from_json(text: &str) -> Result<LieElement, FormatError> {
    let records: Vec<TermRecord> = serde_json::from_str(text)?;
    let mut e = LieElement::zero();
    for r in records {
        let g = match (r.kind.as_str(), r.index) {
            ("d", Some(n)) => Generator::D(n),
            ("h", Some(n)) => Generator::H(n),
            ("c", None) => Generator::C,
            (kind, index) => {
                return Err(FormatError::Invalid(format!(
                    "bad term kind/index: {kind:?}/{index:?}"
                )))
            }
        };
        e.add_term(g, &Scalar::new(r.num.0, r.den.0)?);
    }
    Ok(e)
}

pub fn witt_to_json(e: &WittElement) -> String {
    to_pretty(&term_records(e.terms().map(|(n, s)| ("L", Some(n), s))))
}

pub fn witt_from_json(text: &str) -> Result<WittElement, FormatError> {
    let records: Vec<TermRecord> = serde_json::from_str(text)?;
    let mut e = WittElement::zero();
    for r in records {
        match (r.kind.as_str(), r.index) {
            ("L", Some(n)) => e.add_term(n, &Scalar::new(r.num.0, r.den.0)?),
            (kind, _) => return Err(FormatError::Invalid(format!("bad Witt term kind {kind:?}"))),
        }
    }
    Ok(e)
}

type MatrixRecord = Vec<Vec<RationalRecord>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ModuleRecord {
    q: u32,
    dim: usize,
    c_scalar: RationalRecord,
    k: u32,
    #[serde(default)]
    d_actions: BTreeMap<i64, MatrixRecord>,
    #[serde(default)]
    h_actions: BTreeMap<i64, MatrixRecord>,
}

fn matrix_record(m: &Matrix) -> MatrixRecord {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(RationalRecord::from).collect())
        .collect()
}

fn matrix_from_record(rec: MatrixRecord) -> Result<Matrix, FormatError> {
    let rows = rec
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(Scalar::try_from)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(rows).ok_or_else(|| FormatError::Invalid("ragged matrix".into()))
}

pub fn module_to_json(spec: &LqModuleSpec) -> String {
    let rec = ModuleRecord {
        q: spec.q(),
        dim: spec.dim(),
        c_scalar: spec.c_scalar().into(),
        k: spec.declared_k(),
        d_actions: spec
            .d_actions()
            .iter()
            .map(|(i, m)| (*i, matrix_record(m)))
            .collect(),
        h_actions: spec
            .h_actions()
            .iter()
            .map(|(i, m)| (*i, matrix_record(m)))
            .collect(),
    };
    to_pretty(&rec)
}

pub fn module_from_json(text: &str) -> Result<LqModuleSpec, FormatError> {
    let rec: ModuleRecord = serde_json::from_str(text)?;
    let conv = |m: BTreeMap<i64, MatrixRecord>| -> Result<BTreeMap<i64, Matrix>, FormatError> {
        m.into_iter()
            .map(|(i, r)| Ok((i, matrix_from_record(r)?)))
            .collect()
    };
    Ok(LqModuleSpec::new(
        rec.q,
        rec.dim,
        conv(rec.d_actions)?,
        conv(rec.h_actions)?,
        rec.c_scalar.try_into()?,
        rec.k,
    )?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct VectorRecord {
    #[serde(default)]
    h_part: BTreeMap<usize, u32>,
    #[serde(default)]
    d_part: BTreeMap<usize, u32>,
    coeffs: Vec<RationalRecord>,
}

pub fn vector_to_json(v: &IndVector) -> String {
    let records: Vec<VectorRecord> = v
        .terms()
        .map(|(k, c)| VectorRecord {
            h_part: k.h.to_map(),
            d_part: k.d.to_map(),
            coeffs: c.coords().iter().map(RationalRecord::from).collect(),
        })
        .collect();
    to_pretty(&records)
}

/// Parses a vector file. `dim` defaults to the length of the first coefficient list.
pub fn vector_from_json(text: &str, dim: Option<usize>) -> Result<IndVector, FormatError> {
    let records: Vec<VectorRecord> = serde_json::from_str(text)?;
    let dim = dim
        .or_else(|| records.first().map(|r| r.coeffs.len()))
        .unwrap_or(1);
    let mut terms = Vec::with_capacity(records.len());
    for r in records {
        if r.h_part.contains_key(&0) || r.d_part.contains_key(&0) {
            return Err(FormatError::Invalid(
                "multi-index positions start at 1".into(),
            ));
        }
        let coords = r
            .coeffs
            .into_iter()
            .map(Scalar::try_from)
            .collect::<Result<Vec<_>, _>>()?;
        let key = BasisKey::new(
            MultiIndex::from_pairs(r.h_part),
            MultiIndex::from_pairs(r.d_part),
        );
        terms.push((key, VVector(coords)));
    }
    IndVector::from_terms(dim, terms).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn vvector_to_json(v: &VVector) -> serde_json::Value {
    serde_json::to_value(
        v.coords()
            .iter()
            .map(RationalRecord::from)
            .collect::<Vec<_>>(),
    )
    .expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_text() {
        let e: LieElement = "4*d[0] + 4*h[0] + 1/2*c".parse().unwrap();
        assert_eq!(e.coeff(Generator::C), Scalar::frac(1, 2));
        assert_eq!(e.to_string(), "4*d[0] + 4*h[0] + 1/2*c");
        let e: LieElement = "d[1] - 2/4*h[-3]".parse().unwrap();
        assert_eq!(e.to_string(), "1*d[1] + -1/2*h[-3]");
        assert_eq!(e.to_string().parse::<LieElement>().unwrap(), e);
        assert!("0".parse::<LieElement>().unwrap().is_zero());
        assert!("d[1] h[2]".parse::<LieElement>().is_err());
        assert!("3*x".parse::<LieElement>().is_err());
    }

    #[test]
    fn witt_text() {
        let e: WittElement = "L[1] + 3*L[-2]".parse().unwrap();
        assert_eq!(e.to_string(), "3*L[-2] + 1*L[1]");
        assert!("d[1]".parse::<WittElement>().is_err());
    }

    #[test]
    fn element_json() {
        let e: LieElement = "4*d[0] + -1/2*h[3] + 1/2*c".parse().unwrap();
        let js = element_to_json(&e);
        assert_eq!(element_from_json(&js).unwrap(), e);
        assert_eq!(element_to_json(&element_from_json(&js).unwrap()), js);
    }

    #[test]
    fn big_numbers_as_strings() {
        let js = r#"[{"kind":"c","num":"123456789012345678901234567890","den":1}]"#;
        let e = element_from_json(js).unwrap();
        assert!(element_to_json(&e).contains("\"123456789012345678901234567890\""));
    }

    #[test]
    fn vector_json_drops_zero_terms() {
        let js = r#"[{"hPart":{"1":1},"dPart":{},"coeffs":[{"num":0,"den":1}]},
                     {"hPart":{},"dPart":{"2":1},"coeffs":[{"num":2,"den":4}]}]"#;
        let v = vector_from_json(js, None).unwrap();
        assert_eq!(v.len(), 1);
        let canonical = vector_to_json(&v);
        assert_eq!(
            vector_to_json(&vector_from_json(&canonical, None).unwrap()),
            canonical
        );
        assert!(canonical.contains("\"den\": 2"));
    }

    #[test]
    fn monomials() {
        let key = BasisKey::new(
            MultiIndex::from_pairs([(2, 2), (1, 1)]),
            MultiIndex::from_pairs([(1, 1)]),
        );
        assert_eq!(monomial_text(&key, 0), "h[-2]^2*h[-1]*d[-1]");
        assert_eq!(monomial_text(&key, 1), "h[-3]^2*h[-2]*d[-1]");
        assert_eq!(monomial_text(&BasisKey::vacuum(), 0), "1");
    }
}
