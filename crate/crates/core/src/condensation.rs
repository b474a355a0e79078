//! Finite partial condensations: injective, order-preserving partial
//! self-maps, and the detection of pairs whose order they fail to reflect.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::element::Element;
use crate::order::Structure;

pub type Pair = (Element, Element);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotMember { element: Element },
    NotFunctional { x: Element, y1: Element, y2: Element },
    NotInjective { y: Element, x1: Element, x2: Element },
    /// `x1 <= x2` but not `y1 <= y2`.
    NotHomomorphism { x1: Element, x2: Element, y1: Element, y2: Element },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotMember { element } => write!(f, "{element} is not a member of the structure"),
            Violation::NotFunctional { x, y1, y2 } => {
                write!(f, "not a function: {x} is sent to both {y1} and {y2}")
            }
            Violation::NotInjective { y, x1, x2 } => {
                write!(f, "not injective: {x1} and {x2} are both sent to {y}")
            }
            Violation::NotHomomorphism { x1, x2, y1, y2 } => write!(
                f,
                "not a homomorphism: {x1} <= {x2} but {x1}->{y1}, {x2}->{y2} and {y1} </= {y2}"
            ),
        }
    }
}

/// Elements `x1, x2` with `x1 </= x2` whose images satisfy `y1 <= y2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BadWitness {
    pub x1: Element,
    pub x2: Element,
    pub y1: Element,
    pub y2: Element,
}

impl BadWitness {
    pub fn holds_in(&self, st: &dyn Structure) -> bool {
        !st.leq(&self.x1, &self.x2) && st.leq(&self.y1, &self.y2)
    }

    pub fn pairs(&self) -> [Pair; 2] {
        [
            (self.x1.clone(), self.y1.clone()),
            (self.x2.clone(), self.y2.clone()),
        ]
    }
}

/// A partial map kept in insertion order with hashed lookups both ways.
/// Insertion checks functionality and injectivity only; order
/// preservation is checked by [`verify_partial_condensation`] and
/// [`check_new_pairs`].
#[derive(Debug, Clone, Default)]
pub struct PartialCondensation {
    pairs: Vec<Pair>,
    dom: HashMap<Element, usize>,
    ran: HashMap<Element, usize>,
}

impl PartialCondensation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = Pair>>(pairs: I) -> Result<Self, Violation> {
        let mut m = Self::new();
        for (x, y) in pairs {
            m.insert(x, y)?;
        }
        Ok(m)
    }

    pub fn insert(&mut self, x: Element, y: Element) -> Result<(), Violation> {
        if let Some(&i) = self.dom.get(&x) {
            return Err(Violation::NotFunctional { x, y1: self.pairs[i].1.clone(), y2: y });
        }
        if let Some(&i) = self.ran.get(&y) {
            return Err(Violation::NotInjective { y, x1: self.pairs[i].0.clone(), x2: x });
        }
        let i = self.pairs.len();
        self.dom.insert(x.clone(), i);
        self.ran.insert(y.clone(), i);
        self.pairs.push((x, y));
        Ok(())
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn in_dom(&self, x: &Element) -> bool {
        self.dom.contains_key(x)
    }

    pub fn in_ran(&self, y: &Element) -> bool {
        self.ran.contains_key(y)
    }

    pub fn image(&self, x: &Element) -> Option<&Element> {
        self.dom.get(x).map(|&i| &self.pairs[i].1)
    }

    pub fn preimage(&self, y: &Element) -> Option<&Element> {
        self.ran.get(y).map(|&i| &self.pairs[i].0)
    }

    pub fn domain(&self) -> impl Iterator<Item = &Element> {
        self.pairs.iter().map(|p| &p.0)
    }

    pub fn range(&self) -> impl Iterator<Item = &Element> {
        self.pairs.iter().map(|p| &p.1)
    }

    pub fn range_set(&self) -> HashSet<Element> {
        self.range().cloned().collect()
    }

    pub fn domain_set(&self) -> HashSet<Element> {
        self.domain().cloned().collect()
    }
}

fn check_order(st: &dyn Structure, a: &Pair, b: &Pair) -> Result<(), Violation> {
    for (p, q) in [(a, b), (b, a)] {
        if st.leq(&p.0, &q.0) && !st.leq(&p.1, &q.1) {
            return Err(Violation::NotHomomorphism {
                x1: p.0.clone(),
                x2: q.0.clone(),
                y1: p.1.clone(),
                y2: q.1.clone(),
            });
        }
    }
    Ok(())
}

/// Membership, functionality, injectivity and order preservation over all
/// pairs of entries.
pub fn verify_partial_condensation(st: &dyn Structure, pairs: &[Pair]) -> Result<(), Violation> {
    check_new_pairs(st, &[], pairs)
}

/// Checks that `old ∪ new` is a partial condensation, assuming `old`
/// already is one: every new entry is compared with every entry.
pub fn check_new_pairs(st: &dyn Structure, old: &[Pair], new: &[Pair]) -> Result<(), Violation> {
    let mut dom: HashMap<&Element, &Element> = old.iter().map(|(x, y)| (x, y)).collect();
    let mut ran: HashMap<&Element, &Element> = old.iter().map(|(x, y)| (y, x)).collect();
    for (x, y) in new {
        for e in [x, y] {
            if !st.contains(e) {
                return Err(Violation::NotMember { element: e.clone() });
            }
        }
        if let Some(prev) = dom.insert(x, y) {
            return Err(Violation::NotFunctional { x: x.clone(), y1: prev.clone(), y2: y.clone() });
        }
        if let Some(prev) = ran.insert(y, x) {
            return Err(Violation::NotInjective { y: y.clone(), x1: prev.clone(), x2: x.clone() });
        }
    }
    for (i, a) in new.iter().enumerate() {
        for b in old.iter().chain(&new[..i]) {
            check_order(st, a, b)?;
        }
    }
    Ok(())
}

/// The witness least in `(index x1, index x2)` order, or `None` for a
/// partial isomorphism.
pub fn find_bad_witness(st: &dyn Structure, pairs: &[Pair]) -> Option<BadWitness> {
    let mut sorted: Vec<&Pair> = pairs.iter().collect();
    sorted.sort_by_cached_key(|p| st.index_of(&p.0));
    for a in &sorted {
        for b in &sorted {
            if a.0 != b.0 && !st.leq(&a.0, &b.0) && st.leq(&a.1, &b.1) {
                return Some(BadWitness {
                    x1: a.0.clone(),
                    x2: b.0.clone(),
                    y1: a.1.clone(),
                    y2: b.1.clone(),
                });
            }
        }
    }
    None
}

pub fn is_extension(small: &[Pair], big: &[Pair]) -> bool {
    let big: HashSet<&Pair> = big.iter().collect();
    small.iter().all(|p| big.contains(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{Divisibility, Plane};

    fn n(v: u64) -> Element {
        Element::nat(v)
    }

    fn div_map(v: &[(u64, u64)]) -> Vec<Pair> {
        v.iter().map(|&(x, y)| (n(x), n(y))).collect()
    }

    #[test]
    fn divisibility_examples() {
        let d = Divisibility;
        assert!(verify_partial_condensation(&d, &[]).is_ok());
        let seed = div_map(&[(1, 1), (2, 4), (3, 2)]);
        assert!(verify_partial_condensation(&d, &seed).is_ok());
        let w = find_bad_witness(&d, &seed).unwrap();
        assert_eq!((w.x1, w.x2, w.y1, w.y2), (n(3), n(2), n(2), n(4)));
        let err = verify_partial_condensation(&d, &div_map(&[(2, 3), (4, 5)])).unwrap_err();
        assert!(matches!(err, Violation::NotHomomorphism { .. }));
        assert_eq!(find_bad_witness(&d, &div_map(&[(1, 1), (2, 2), (3, 3)])), None);
    }

    #[test]
    fn plane_seed_is_bad() {
        let z = Plane::integer();
        let seed = vec![
            (Element::Pair(0, 1), Element::Pair(1, 1)),
            (Element::Pair(1, 0), Element::Pair(0, 1)),
        ];
        let w = find_bad_witness(&z, &seed).unwrap();
        assert_eq!((w.x1, w.x2), (Element::Pair(1, 0), Element::Pair(0, 1)));
    }

    #[test]
    fn extension_and_map_bookkeeping() {
        let small = div_map(&[(2, 4)]);
        assert!(is_extension(&[], &small));
        assert!(is_extension(&small, &div_map(&[(2, 4), (3, 2)])));
        assert!(!is_extension(&small, &div_map(&[(2, 6)])));
        let mut m = PartialCondensation::from_pairs(div_map(&[(2, 4)])).unwrap();
        assert!(m.insert(n(2), n(6)).is_err());
        assert!(m.insert(n(3), n(4)).is_err());
        assert_eq!(m.image(&n(2)), Some(&n(4)));
    }
}
