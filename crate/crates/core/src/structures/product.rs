//! The integers with their usual order, and binary products ordered
//! componentwise.

use num_bigint::BigUint;

use crate::element::{grammar, Element};
use crate::enumeration::{pair, unpair, zigzag, zigzag_index};
use crate::error::{ParseError, StructureError};
use crate::order::{Capabilities, Structure};

#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

fn int(x: &Element) -> i64 {
    match x {
        Element::Int(z) => *z,
        other => panic!("integer element expected, got {other}"),
    }
}

impl Structure for Integers {
    fn id(&self) -> String {
        "int".into()
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            directed: true,
            downward_directed: true,
            ..Default::default()
        }
    }

    fn parse(&self, s: &str) -> Result<Element, ParseError> {
        Ok(Element::Int(grammar::parse_i64("int", s, s)?))
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Int(_))
    }

    fn leq(&self, x: &Element, y: &Element) -> bool {
        int(x) <= int(y)
    }

    fn enumerate(&self, n: u64) -> Option<Element> {
        Some(Element::Int(zigzag(n)))
    }

    fn index_of(&self, x: &Element) -> Option<BigUint> {
        match x {
            Element::Int(z) => Some(BigUint::from(zigzag_index(*z))),
            _ => None,
        }
    }

    fn upper_bound(&self, s: &[Element]) -> Result<Element, StructureError> {
        s.iter()
            .map(int)
            .max()
            .map(Element::Int)
            .ok_or_else(|| StructureError::Invalid("empty set".into()))
    }

    fn strict_upper_bound(&self, s: &[Element]) -> Result<Element, StructureError> {
        Ok(Element::Int(int(&self.upper_bound(s)?) + 1))
    }
}

pub struct Product {
    left: Box<dyn Structure>,
    right: Box<dyn Structure>,
}

fn parts(x: &Element) -> (&Element, &Element) {
    match x {
        Element::Tuple(v) if v.len() == 2 => (&v[0], &v[1]),
        other => panic!("pair element expected, got {other}"),
    }
}

fn tuple(a: Element, b: Element) -> Element {
    Element::Tuple(vec![a, b])
}

impl Product {
    pub fn new(left: Box<dyn Structure>, right: Box<dyn Structure>) -> Self {
        Product { left, right }
    }

    pub fn left(&self) -> &dyn Structure {
        self.left.as_ref()
    }

    pub fn right(&self) -> &dyn Structure {
        self.right.as_ref()
    }

    fn split(s: &[Element]) -> (Vec<Element>, Vec<Element>) {
        s.iter()
            .map(|x| {
                let (a, b) = parts(x);
                (a.clone(), b.clone())
            })
            .unzip()
    }
}

impl Structure for Product {
    fn id(&self) -> String {
        format!("product({},{})", self.left.id(), self.right.id())
    }

    fn capabilities(&self) -> Capabilities {
        let (l, r) = (self.left.capabilities(), self.right.capabilities());
        Capabilities {
            locally_finite_below: l.locally_finite_below && r.locally_finite_below,
            directed: l.directed && r.directed,
            downward_directed: l.downward_directed && r.downward_directed,
            ..Default::default()
        }
    }

    fn parse(&self, s: &str) -> Result<Element, ParseError> {
        let id = self.id();
        let p = grammar::tuple(&id, s)?;
        if p.len() != 2 {
            return Err(ParseError::new(id, s, "expected a pair"));
        }
        Ok(tuple(self.left.parse(p[0])?, self.right.parse(p[1])?))
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Tuple(v) if v.len() == 2 && self.left.contains(&v[0]) && self.right.contains(&v[1]))
    }

    fn leq(&self, x: &Element, y: &Element) -> bool {
        let ((a, b), (c, d)) = (parts(x), parts(y));
        self.left.leq(a, c) && self.right.leq(b, d)
    }

    fn enumerate(&self, n: u64) -> Option<Element> {
        let (i, j) = unpair(n);
        Some(tuple(self.left.enumerate(i)?, self.right.enumerate(j)?))
    }

    fn index_of(&self, x: &Element) -> Option<BigUint> {
        if !self.contains(x) {
            return None;
        }
        let (a, b) = parts(x);
        Some(pair(&self.left.index_of(a)?, &self.right.index_of(b)?))
    }

    fn principal_ideal(&self, p: &Element) -> Result<Vec<Element>, StructureError> {
        let (a, b) = parts(p);
        let (la, lb) = (self.left.principal_ideal(a)?, self.right.principal_ideal(b)?);
        let mut out: Vec<Element> = la
            .iter()
            .flat_map(|x| lb.iter().map(move |y| tuple(x.clone(), y.clone())))
            .collect();
        out.sort_by_cached_key(|x| self.index_of(x));
        Ok(out)
    }

    fn upper_bound(&self, s: &[Element]) -> Result<Element, StructureError> {
        let (a, b) = Self::split(s);
        Ok(tuple(self.left.upper_bound(&a)?, self.right.upper_bound(&b)?))
    }

    fn strict_upper_bound(&self, s: &[Element]) -> Result<Element, StructureError> {
        let (a, b) = Self::split(s);
        Ok(tuple(self.left.strict_upper_bound(&a)?, self.right.strict_upper_bound(&b)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::divisibility::Divisibility;

    #[test]
    fn divisibility_times_integers() {
        let p = Product::new(Box::new(Divisibility), Box::new(Integers));
        assert_eq!(p.id(), "product(divisibility,int)");
        let x = p.parse("(12,-3)").unwrap();
        assert_eq!(x.to_string(), "(12,-3)");
        assert!(p.leq(&p.parse("(3,-4)").unwrap(), &x));
        assert!(!p.leq(&p.parse("(5,-4)").unwrap(), &x));
        for n in 0..500 {
            let e = p.enumerate(n).unwrap();
            assert_eq!(p.index_of(&e), Some(BigUint::from(n)));
        }
        assert!(p.principal_ideal(&x).is_err());
    }
}
