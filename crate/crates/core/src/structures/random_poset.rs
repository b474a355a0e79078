//! A finite, growing fragment of the random poset. Vertices are only ever
//! created as one-point extension witnesses, so every relation among old
//! vertices is fixed at creation time.

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::element::{grammar, Element};
use crate::error::{ParseError, StructureError};
use crate::order::{Capabilities, Structure, Successors};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RandomPosetState {
    /// `down[v]`: strict predecessors of `v`.
    down: Vec<FixedBitSet>,
    /// `up[v]`: strict successors of `v`.
    up: Vec<FixedBitSet>,
}

/// Serialized fragment: vertices in creation order and the strict order
/// pairs sorted by creation index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomPosetDump {
    pub vertices: Vec<String>,
    pub strict_pairs: Vec<[String; 2]>,
}

fn vertex(x: &Element) -> usize {
    match x {
        Element::Vertex(k) => *k,
        other => panic!("vertex expected, got {other}"),
    }
}

impl RandomPosetState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.down.is_empty()
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        x == y || self.lt(x, y)
    }

    /// Reflexive order on created vertices.
    pub fn rp_leq(&self, x: &Element, y: &Element) -> Result<bool, StructureError> {
        let (a, b) = (self.known(x)?, self.known(y)?);
        Ok(self.leq(a, b))
    }

    fn known(&self, x: &Element) -> Result<usize, StructureError> {
        match x {
            Element::Vertex(k) if *k < self.len() => Ok(*k),
            other => Err(StructureError::UnknownVertex(other.to_string())),
        }
    }

    fn push_vertex(&mut self) -> usize {
        let n = self.len();
        for b in self.down.iter_mut().chain(self.up.iter_mut()) {
            b.grow(n + 1);
        }
        self.down.push(FixedBitSet::with_capacity(n + 1));
        self.up.push(FixedBitSet::with_capacity(n + 1));
        n
    }

    /// Creates a fresh vertex `p` with `L < p < G` and `p` incomparable to
    /// every member of `U`, after checking the one-point extension
    /// conditions: `L < G`, nothing in `U` below `L`, nothing in `G` below
    /// `U`.
    pub fn rp_witness(&mut self, l: &[usize], g: &[usize], u: &[usize]) -> Result<usize, StructureError> {
        let n = self.len();
        let name = |v: usize| format!("v{v}");
        for &v in l.iter().chain(g).chain(u) {
            if v >= n {
                return Err(StructureError::UnknownVertex(name(v)));
            }
        }
        let mut all: Vec<usize> = l.iter().chain(g).chain(u).copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(StructureError::Precondition("L, G and U must be disjoint".into()));
        }
        for &a in l {
            for &b in g {
                if !self.lt(a, b) {
                    return Err(StructureError::Precondition(format!("(C1) {} < {} fails", name(a), name(b))));
                }
            }
            for &c in u {
                if self.lt(c, a) {
                    return Err(StructureError::Precondition(format!("(C2) {} < {} holds", name(c), name(a))));
                }
            }
        }
        for &b in g {
            for &c in u {
                if self.lt(b, c) {
                    return Err(StructureError::Precondition(format!("(C3) {} < {} holds", name(b), name(c))));
                }
            }
        }
        let p = self.push_vertex();
        let mut below = FixedBitSet::with_capacity(p + 1);
        for &a in l {
            below.union_with(&self.down[a]);
            below.insert(a);
        }
        let mut above = FixedBitSet::with_capacity(p + 1);
        for &b in g {
            above.union_with(&self.up[b]);
            above.insert(b);
        }
        for x in below.ones() {
            self.up[x].insert(p);
        }
        for y in above.ones() {
            self.down[y].insert(p);
        }
        self.down[p] = below;
        self.up[p] = above;
        Ok(p)
    }

    /// Adds `x < y` without closing or checking anything. Only for fault
    /// injection in the oracles.
    pub fn insert_relation_unchecked(&mut self, x: usize, y: usize) {
        self.down[y].insert(x);
        self.up[x].insert(y);
    }

    /// Irreflexivity, transitivity and consistency of the two indexes.
    pub fn check_strict_order(&self) -> Result<(), String> {
        let n = self.len();
        for x in 0..n {
            if self.lt(x, x) {
                return Err(format!("v{x} < v{x}"));
            }
            for y in self.up[x].ones() {
                if !self.down[y].contains(x) {
                    return Err(format!("successor index lists v{x} < v{y}, predecessor index does not"));
                }
                for z in self.up[y].ones() {
                    if !self.lt(x, z) {
                        return Err(format!("v{x} < v{y} < v{z} but not v{x} < v{z}"));
                    }
                }
            }
            for w in self.down[x].ones() {
                if !self.up[w].contains(x) {
                    return Err(format!("predecessor index lists v{w} < v{x}, successor index does not"));
                }
            }
        }
        Ok(())
    }

    pub fn dump(&self) -> RandomPosetDump {
        let n = self.len();
        RandomPosetDump {
            vertices: (0..n).map(|v| format!("v{v}")).collect(),
            strict_pairs: (0..n)
                .flat_map(|x| self.up[x].ones().map(move |y| [format!("v{x}"), format!("v{y}")]))
                .collect(),
        }
    }

    /// Rebuilds a fragment and checks it is a strict partial order.
    pub fn from_dump(d: &RandomPosetDump) -> Result<Self, StructureError> {
        let mut st = RandomPosetState::new();
        for (i, v) in d.vertices.iter().enumerate() {
            if grammar::vertex("random-poset", v)? != i {
                return Err(StructureError::Invalid(format!("vertex {v} listed at position {i}")));
            }
            st.push_vertex();
        }
        for [x, y] in &d.strict_pairs {
            let (a, b) = (grammar::vertex("random-poset", x)?, grammar::vertex("random-poset", y)?);
            if a >= st.len() || b >= st.len() {
                return Err(StructureError::UnknownVertex(format!("{x} or {y}")));
            }
            st.insert_relation_unchecked(a, b);
        }
        st.check_strict_order().map_err(StructureError::Invalid)?;
        Ok(st)
    }
}

/// The grown fragment viewed as a structure; its enumeration is the
/// creation order and ends at the last created vertex.
#[derive(Debug, Clone, Default)]
pub struct RandomPoset {
    pub state: RandomPosetState,
}

impl RandomPoset {
    pub fn new(state: RandomPosetState) -> Self {
        RandomPoset { state }
    }
}

impl Structure for RandomPoset {
    fn id(&self) -> String {
        "random-poset".into()
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            extension_axioms: true,
            ..Default::default()
        }
    }

    fn parse(&self, s: &str) -> Result<Element, ParseError> {
        Ok(Element::Vertex(grammar::vertex("random-poset", s)?))
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Vertex(k) if *k < self.state.len())
    }

    fn leq(&self, x: &Element, y: &Element) -> bool {
        self.state.leq(vertex(x), vertex(y))
    }

    fn enumerate(&self, n: u64) -> Option<Element> {
        ((n as usize) < self.state.len()).then_some(Element::Vertex(n as usize))
    }

    fn index_of(&self, x: &Element) -> Option<BigUint> {
        self.contains(x).then(|| BigUint::from(vertex(x)))
    }

    /// Covers among the vertices grown so far; later growth can insert new
    /// vertices in between, so the answer is never complete.
    fn immediate_successors(&self, p: &Element, budget: u64) -> Result<Successors, StructureError> {
        let p = self.state.known(p)?;
        let limit = self.state.len().min(budget as usize);
        let items = (0..limit)
            .filter(|&q| self.state.lt(p, q))
            .filter(|&q| !self.state.up[p].ones().any(|r| r != q && self.state.lt(r, q)))
            .map(Element::Vertex)
            .collect();
        Ok(Successors { items, complete: false })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witnesses_follow_the_extension_axioms() {
        let mut st = RandomPosetState::new();
        let v0 = st.rp_witness(&[], &[], &[]).unwrap();
        let v1 = st.rp_witness(&[], &[], &[v0]).unwrap();
        assert!(!st.leq(v0, v1) && !st.leq(v1, v0));
        let mut st = RandomPosetState::new();
        let v0 = st.rp_witness(&[], &[], &[]).unwrap();
        let v1 = st.rp_witness(&[v0], &[], &[]).unwrap();
        let v2 = st.rp_witness(&[v0], &[v1], &[]).unwrap();
        assert!(st.lt(v0, v2) && st.lt(v2, v1));
        let v3 = st.rp_witness(&[], &[], &[v0, v1, v2]).unwrap();
        assert!(!st.leq(v0, v3));
        assert!(st.rp_leq(&Element::Vertex(0), &Element::Vertex(1)).unwrap());
        assert!(st.rp_leq(&Element::Vertex(9), &Element::Vertex(1)).is_err());
        st.check_strict_order().unwrap();
    }

    #[test]
    fn precondition_failures_are_reported() {
        let mut st = RandomPosetState::new();
        let v0 = st.rp_witness(&[], &[], &[]).unwrap();
        let v1 = st.rp_witness(&[], &[], &[v0]).unwrap();
        let err = st.rp_witness(&[v0], &[v1], &[]).unwrap_err();
        assert!(err.to_string().contains("(C1)"));
        assert_eq!(st.len(), 2);
    }

    #[test]
    fn dump_round_trips() {
        let mut st = RandomPosetState::new();
        let v0 = st.rp_witness(&[], &[], &[]).unwrap();
        let v1 = st.rp_witness(&[v0], &[], &[]).unwrap();
        st.rp_witness(&[v0], &[v1], &[]).unwrap();
        let d = st.dump();
        assert_eq!(d.strict_pairs.len(), 3);
        assert_eq!(RandomPosetState::from_dump(&d).unwrap(), st);
        let mut bad = d.clone();
        bad.strict_pairs.push(["v1".into(), "v0".into()]);
        assert!(RandomPosetState::from_dump(&bad).is_err());
    }
}
