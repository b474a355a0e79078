//! Elements of the concrete structures and their canonical text encodings.
//!
//! Every structure owns a grammar for its elements:
//!
//! | structure                         | example         |
//! |-----------------------------------|-----------------|
//! | divisibility                      | `12`            |
//! | finite sets                       | `{0,2,5}`       |
//! | partial / finitely supported maps | `{0:2,4:1}`     |
//! | integer pairs, half-plane         | `(3,-1)`        |
//! | rational pairs                    | `(1/2,0)`       |
//! | random poset vertices             | `v7`            |
//! | integers                          | `-3`            |
//! | products                          | `(12,-3)`       |
//!
//! Rationals are written reduced as `p/q` with `q > 0`; zero is `0`.

use std::fmt;

use num_bigint::BigUint;
use num_rational::Rational64;

use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Nat(BigUint),
    Int(i64),
    /// Strictly ascending.
    Set(Vec<u64>),
    /// Strictly ascending keys.
    Fun(Vec<(u64, u64)>),
    Pair(i64, i64),
    RatPair(Rational64, Rational64),
    Vertex(usize),
    Tuple(Vec<Element>),
}

impl Element {
    pub fn nat(n: u64) -> Self {
        Element::Nat(BigUint::from(n))
    }

    pub fn set<I: IntoIterator<Item = u64>>(items: I) -> Self {
        let mut v: Vec<u64> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Element::Set(v)
    }

    pub fn fun<I: IntoIterator<Item = (u64, u64)>>(items: I) -> Self {
        let mut v: Vec<(u64, u64)> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup_by_key(|p| p.0);
        Element::Fun(v)
    }

    pub fn rat_pair(a: (i64, i64), b: (i64, i64)) -> Self {
        Element::RatPair(Rational64::new(a.0, a.1), Rational64::new(b.0, b.1))
    }

    pub fn encode(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn fmt_rational(r: &Rational64) -> String {
    if *r.numer() == 0 {
        "0".to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Nat(n) => write!(f, "{n}"),
            Element::Int(z) => write!(f, "{z}"),
            Element::Set(s) => {
                f.write_str("{")?;
                for (i, x) in s.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
            Element::Fun(m) => {
                f.write_str("{")?;
                for (i, (k, v)) in m.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{k}:{v}")?;
                }
                f.write_str("}")
            }
            Element::Pair(m, n) => write!(f, "({m},{n})"),
            Element::RatPair(x, y) => write!(f, "({},{})", fmt_rational(x), fmt_rational(y)),
            Element::Vertex(k) => write!(f, "v{k}"),
            Element::Tuple(parts) => {
                f.write_str("(")?;
                for (i, x) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Grammar-level parsers shared by the structures. Each takes the structure
/// name only to build error messages.
pub(crate) mod grammar {
    use super::*;

    fn err(structure: &str, input: &str, reason: &str) -> ParseError {
        ParseError::new(structure, input, reason)
    }

    fn parse_u64(structure: &str, input: &str, s: &str) -> Result<u64, ParseError> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
            return Err(err(structure, input, "expected a canonical natural number"));
        }
        s.parse().map_err(|_| err(structure, input, "number out of range"))
    }

    pub fn parse_i64(structure: &str, input: &str, s: &str) -> Result<i64, ParseError> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty()
            || !digits.bytes().all(|b| b.is_ascii_digit())
            || (digits.len() > 1 && digits.starts_with('0'))
            || s == "-0"
        {
            return Err(err(structure, input, "expected a canonical integer"));
        }
        s.parse().map_err(|_| err(structure, input, "integer out of range"))
    }

    pub fn nat(structure: &str, input: &str) -> Result<BigUint, ParseError> {
        let s = input;
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
            return Err(err(structure, input, "expected a canonical natural number"));
        }
        s.parse().map_err(|_| err(structure, input, "bad natural number"))
    }

    fn braces<'a>(structure: &str, input: &'a str) -> Result<&'a str, ParseError> {
        input
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| err(structure, input, "expected `{...}`"))
    }

    pub fn set(structure: &str, input: &str) -> Result<Vec<u64>, ParseError> {
        let body = braces(structure, input)?;
        if body.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for part in body.split(',') {
            let v = parse_u64(structure, input, part)?;
            if out.last().is_some_and(|&last| last >= v) {
                return Err(err(structure, input, "members must be strictly ascending"));
            }
            out.push(v);
        }
        Ok(out)
    }

    pub fn fun(structure: &str, input: &str) -> Result<Vec<(u64, u64)>, ParseError> {
        let body = braces(structure, input)?;
        if body.is_empty() {
            return Ok(Vec::new());
        }
        let mut out: Vec<(u64, u64)> = Vec::new();
        for part in body.split(',') {
            let (k, v) = part
                .split_once(':')
                .ok_or_else(|| err(structure, input, "expected `key:value`"))?;
            let k = parse_u64(structure, input, k)?;
            let v = parse_u64(structure, input, v)?;
            if out.last().is_some_and(|&(last, _)| last >= k) {
                return Err(err(structure, input, "keys must be strictly ascending"));
            }
            out.push((k, v));
        }
        Ok(out)
    }

    /// Splits `(a,b,...)` at top-level commas.
    pub fn tuple<'a>(structure: &str, input: &'a str) -> Result<Vec<&'a str>, ParseError> {
        let body = input
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| err(structure, input, "expected `(...)`"))?;
        let mut parts = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, c) in body.char_indices() {
            match c {
                '(' | '{' => depth += 1,
                ')' | '}' => depth -= 1,
                ',' if depth == 0 => {
                    parts.push(&body[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
            if depth < 0 {
                return Err(err(structure, input, "unbalanced brackets"));
            }
        }
        if depth != 0 {
            return Err(err(structure, input, "unbalanced brackets"));
        }
        parts.push(&body[start..]);
        Ok(parts)
    }

    pub fn int_pair(structure: &str, input: &str) -> Result<(i64, i64), ParseError> {
        let parts = tuple(structure, input)?;
        if parts.len() != 2 {
            return Err(err(structure, input, "expected a pair"));
        }
        Ok((
            parse_i64(structure, input, parts[0])?,
            parse_i64(structure, input, parts[1])?,
        ))
    }

    pub fn rational(structure: &str, input: &str, s: &str) -> Result<Rational64, ParseError> {
        if s == "0" {
            return Ok(Rational64::from_integer(0));
        }
        let (n, d) = match s.split_once('/') {
            Some(nd) => nd,
            None => (s, "1"),
        };
        let n = parse_i64(structure, input, n)?;
        let d = parse_i64(structure, input, d)?;
        if d <= 0 {
            return Err(err(structure, input, "denominator must be positive"));
        }
        if n == 0 {
            return Err(err(structure, input, "zero is written `0`"));
        }
        let r = Rational64::new(n, d);
        if *r.numer() != n || *r.denom() != d {
            return Err(err(structure, input, "rational is not reduced"));
        }
        Ok(r)
    }

    pub fn rat_pair(structure: &str, input: &str) -> Result<(Rational64, Rational64), ParseError> {
        let parts = tuple(structure, input)?;
        if parts.len() != 2 {
            return Err(err(structure, input, "expected a pair"));
        }
        Ok((
            rational(structure, input, parts[0])?,
            rational(structure, input, parts[1])?,
        ))
    }

    pub fn vertex(structure: &str, input: &str) -> Result<usize, ParseError> {
        let digits = input
            .strip_prefix('v')
            .ok_or_else(|| err(structure, input, "expected `v<k>`"))?;
        Ok(parse_u64(structure, input, digits)? as usize)
    }
}
