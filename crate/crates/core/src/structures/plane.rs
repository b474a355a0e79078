//! The integer and rational planes and the integer half-plane `m + n >= 0`,
//! all ordered componentwise.

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::One;

use crate::element::{grammar, Element};
use crate::enumeration::{
    pair, pair_u64, rational, rational_index, shell_index, shell_point, unpair, zigzag,
    zigzag_index,
};
use crate::error::{ParseError, StructureError};
use crate::order::{Capabilities, Structure, Successors};

pub type Q = Rational64;
pub type Point = (Q, Q);

/// `x <= y` by cross multiplication in 128 bits, exact for any pair of
/// reduced `i64` fractions.
pub fn q_leq(x: &Q, y: &Q) -> bool {
    i128::from(*x.numer()) * i128::from(*y.denom()) <= i128::from(*y.numer()) * i128::from(*x.denom())
}

pub fn point_leq(x: &Point, y: &Point) -> bool {
    q_leq(&x.0, &y.0) && q_leq(&x.1, &y.1)
}

pub fn point_lt(x: &Point, y: &Point) -> bool {
    point_leq(x, y) && x != y
}

pub fn meet(x: &Point, y: &Point) -> Point {
    (x.0.min(y.0), x.1.min(y.1))
}

pub fn join(x: &Point, y: &Point) -> Point {
    (x.0.max(y.0), x.1.max(y.1))
}

pub fn add(x: &Point, t: &Point) -> Point {
    (x.0 + t.0, x.1 + t.1)
}

pub fn sub(x: &Point, t: &Point) -> Point {
    (x.0 - t.0, x.1 - t.1)
}

pub fn diag(v: i64) -> Point {
    (Q::from_integer(v), Q::from_integer(v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Into `(., r]`.
    Below,
    /// Into `[r, .)`.
    Above,
}

/// The translation carrying `[p, q]` into `(., r]` (moving `q` to `r`) or
/// into `[r, .)` (moving `p` to `r`).
pub fn interval_embed(p: &Point, q: &Point, direction: Direction, r: &Point) -> Point {
    match direction {
        Direction::Below => sub(r, q),
        Direction::Above => sub(r, p),
    }
}

/// `(p0 - 1, q1 + 1)`, incomparable to every member of `[p, q]`.
pub fn incomparable_to_box(p: &Point, q: &Point) -> Point {
    (p.0 - Q::one(), q.1 + Q::one())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Plane {
    rational: bool,
}

impl Plane {
    pub fn integer() -> Self {
        Plane { rational: false }
    }

    pub fn rational() -> Self {
        Plane { rational: true }
    }

    pub fn is_rational(&self) -> bool {
        self.rational
    }

    pub fn coords(&self, x: &Element) -> Point {
        to_point(x)
    }

    /// Panics on non-integral coordinates in the integer plane.
    pub fn element(&self, p: &Point) -> Element {
        if self.rational {
            Element::RatPair(p.0, p.1)
        } else {
            assert!(p.0.is_integer() && p.1.is_integer(), "non-integral point in the integer plane");
            Element::Pair(p.0.to_integer(), p.1.to_integer())
        }
    }
}

pub fn to_point(x: &Element) -> Point {
    match x {
        Element::Pair(m, n) => (Q::from_integer(*m), Q::from_integer(*n)),
        Element::RatPair(a, b) => (*a, *b),
        other => panic!("plane element expected, got {other}"),
    }
}

fn pairwise(s: &[Element], f: fn(&Point, &Point) -> Point) -> Option<Point> {
    s.iter().map(to_point).reduce(|a, b| f(&a, &b))
}

impl Structure for Plane {
    fn id(&self) -> String {
        if self.rational { "qxq" } else { "zxz" }.into()
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            directed: true,
            downward_directed: true,
            interval_embeddings: true,
            ..Default::default()
        }
    }

    fn parse(&self, s: &str) -> Result<Element, ParseError> {
        if self.rational {
            let (a, b) = grammar::rat_pair("qxq", s)?;
            Ok(Element::RatPair(a, b))
        } else {
            let (m, n) = grammar::int_pair("zxz", s)?;
            Ok(Element::Pair(m, n))
        }
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(
            (self.rational, x),
            (false, Element::Pair(..)) | (true, Element::RatPair(..))
        )
    }

    fn leq(&self, x: &Element, y: &Element) -> bool {
        point_leq(&to_point(x), &to_point(y))
    }

    /// Integer plane: square shells. Rational plane: pairs of rational
    /// indices.
    fn enumerate(&self, n: u64) -> Option<Element> {
        if self.rational {
            let (i, j) = unpair(n);
            Some(Element::RatPair(rational(i), rational(j)))
        } else {
            let (m, k) = shell_point(n);
            Some(Element::Pair(m, k))
        }
    }

    fn index_of(&self, x: &Element) -> Option<BigUint> {
        match (self.rational, x) {
            (false, Element::Pair(m, n)) => Some(shell_index(*m, *n)),
            (true, Element::RatPair(a, b)) => Some(pair(&rational_index(a), &rational_index(b))),
            _ => None,
        }
    }

    fn upper_bound(&self, s: &[Element]) -> Result<Element, StructureError> {
        let j = pairwise(s, join).ok_or_else(|| StructureError::Invalid("empty set".into()))?;
        Ok(self.element(&j))
    }

    fn strict_upper_bound(&self, s: &[Element]) -> Result<Element, StructureError> {
        let j = pairwise(s, join).ok_or_else(|| StructureError::Invalid("empty set".into()))?;
        Ok(self.element(&add(&j, &diag(1))))
    }

    fn increasing_chain_above(
        &self,
        p: &Element,
        avoid: &dyn Fn(&Element) -> bool,
        k: usize,
    ) -> Result<Vec<Element>, StructureError> {
        Ok(diagonal_chain(&to_point(p), avoid, k, |pt| self.element(pt)))
    }

    /// Exact: the integer plane covers by unit steps, the rational plane is
    /// dense and has none.
    fn immediate_successors(&self, p: &Element, _budget: u64) -> Result<Successors, StructureError> {
        let items = match p {
            Element::Pair(m, n) if !self.rational => {
                let mut v = vec![Element::Pair(m + 1, *n), Element::Pair(*m, n + 1)];
                v.sort_by_key(|x| self.index_of(x));
                v
            }
            _ => Vec::new(),
        };
        Ok(Successors { items, complete: true })
    }
}

fn diagonal_chain(
    p: &Point,
    avoid: &dyn Fn(&Element) -> bool,
    k: usize,
    make: impl Fn(&Point) -> Element,
) -> Vec<Element> {
    let mut cur = *p;
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        cur = add(&cur, &diag(1));
        let x = make(&cur);
        if !avoid(&x) {
            out.push(x);
        }
    }
    out
}

/// Integer points with `m + n >= 0`. Principal ideals are finite
/// triangles; the minimal elements are the diagonal `m + n = 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct HalfPlane;

fn int_pair(x: &Element) -> (i64, i64) {
    match x {
        Element::Pair(m, n) => (*m, *n),
        other => panic!("half-plane element expected, got {other}"),
    }
}

impl Structure for HalfPlane {
    fn id(&self) -> String {
        "half-plane".into()
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            locally_finite_below: true,
            directed: true,
            has_min_set: true,
            self_embedding_above: true,
            ..Default::default()
        }
    }

    fn parse(&self, s: &str) -> Result<Element, ParseError> {
        let (m, n) = grammar::int_pair("half-plane", s)?;
        if m + n < 0 {
            return Err(ParseError::new("half-plane", s, "coordinates must sum to at least 0"));
        }
        Ok(Element::Pair(m, n))
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Pair(m, n) if m + n >= 0)
    }

    fn leq(&self, x: &Element, y: &Element) -> bool {
        let (a, b) = (int_pair(x), int_pair(y));
        a.0 <= b.0 && a.1 <= b.1
    }

    /// Unpairs `n` into the diagonal `d = m + n` and the zigzag index of `m`.
    fn enumerate(&self, n: u64) -> Option<Element> {
        let (d, zi) = unpair(n);
        let m = zigzag(zi);
        Some(Element::Pair(m, d as i64 - m))
    }

    fn index_of(&self, x: &Element) -> Option<BigUint> {
        if !self.contains(x) {
            return None;
        }
        let (m, n) = int_pair(x);
        Some(pair_u64((m + n) as u64, zigzag_index(m)))
    }

    fn principal_ideal(&self, p: &Element) -> Result<Vec<Element>, StructureError> {
        let (m, n) = int_pair(p);
        let mut out: Vec<Element> = (-n..=m)
            .flat_map(|x| (-x..=n).map(move |y| Element::Pair(x, y)))
            .collect();
        out.sort_by_cached_key(|x| self.index_of(x));
        Ok(out)
    }

    fn upper_bound(&self, s: &[Element]) -> Result<Element, StructureError> {
        let j = pairwise(s, join).ok_or_else(|| StructureError::Invalid("empty set".into()))?;
        Ok(Element::Pair(j.0.to_integer(), j.1.to_integer()))
    }

    fn strict_upper_bound(&self, s: &[Element]) -> Result<Element, StructureError> {
        let Element::Pair(m, n) = self.upper_bound(s)? else { unreachable!() };
        Ok(Element::Pair(m + 1, n + 1))
    }

    fn min_layer(&self, i: u64) -> Result<Element, StructureError> {
        let m = zigzag(i);
        Ok(Element::Pair(m, -m))
    }

    fn increasing_chain_above(
        &self,
        p: &Element,
        avoid: &dyn Fn(&Element) -> bool,
        k: usize,
    ) -> Result<Vec<Element>, StructureError> {
        Ok(diagonal_chain(&to_point(p), avoid, k, |pt| {
            Element::Pair(pt.0.to_integer(), pt.1.to_integer())
        }))
    }

    /// The diagonal translation by the least `t` with `(., a] + (t, t) >= p`.
    fn embed_ideal_above(
        &self,
        a: &Element,
        p: &Element,
    ) -> Result<Vec<(Element, Element)>, StructureError> {
        let t = self.embedding_shift(a, p);
        Ok(self
            .principal_ideal(a)?
            .into_iter()
            .map(|x| {
                let (m, n) = int_pair(&x);
                (x, Element::Pair(m + t, n + t))
            })
            .collect())
    }

    fn immediate_successors(&self, p: &Element, _budget: u64) -> Result<Successors, StructureError> {
        let (m, n) = int_pair(p);
        let mut items = vec![Element::Pair(m + 1, n), Element::Pair(m, n + 1)];
        items.sort_by_cached_key(|x| self.index_of(x));
        Ok(Successors { items, complete: true })
    }
}

impl HalfPlane {
    /// The least element of `(., (m, n)]` is `(-n, -m)`; moving it onto
    /// `p` needs `t = max(p0 + n, p1 + m)`.
    pub fn embedding_shift(&self, a: &Element, p: &Element) -> i64 {
        let (m, n) = int_pair(a);
        let (p0, p1) = int_pair(p);
        (p0 + n).max(p1 + m)
    }
}
