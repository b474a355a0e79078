//! Countable posets behind a uniform interface, plus explicit finite posets
//! for levels and linear extensions.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashSet};

use num_bigint::BigUint;
use serde::Serialize;

use crate::element::Element;
use crate::error::{ParseError, StructureError};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Capabilities {
    pub locally_finite_below: bool,
    pub rooted: bool,
    pub directed: bool,
    pub downward_directed: bool,
    pub has_min_set: bool,
    pub self_embedding_above: bool,
    pub interval_embeddings: bool,
    pub extension_axioms: bool,
}

impl Capabilities {
    pub fn names(&self) -> Vec<&'static str> {
        let flags = [
            (self.locally_finite_below, "locally-finite-below"),
            (self.rooted, "rooted"),
            (self.directed, "directed"),
            (self.downward_directed, "downward-directed"),
            (self.has_min_set, "has-min-set"),
            (self.self_embedding_above, "self-embedding-above"),
            (self.interval_embeddings, "interval-embeddings"),
            (self.extension_axioms, "extension-axioms"),
        ];
        flags.iter().filter(|f| f.0).map(|f| f.1).collect()
    }
}

/// Result of an immediate-successor search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Successors {
    /// Ascending by index.
    pub items: Vec<Element>,
    /// `true` when `items` is exactly the set of immediate successors among
    /// the scanned elements; `false` when the structure could not decide.
    pub complete: bool,
}

/// A countable poset with a fixed enumeration and the witness operations
/// the extension strategies rely on. Operations a structure cannot support
/// report [`StructureError::MissingCapability`].
pub trait Structure {
    fn id(&self) -> String;
    fn capabilities(&self) -> Capabilities;
    fn parse(&self, s: &str) -> Result<Element, ParseError>;
    fn contains(&self, x: &Element) -> bool;
    /// Reflexive order. Both arguments must be members.
    fn leq(&self, x: &Element, y: &Element) -> bool;
    /// `None` only for structures that are still growing.
    fn enumerate(&self, n: u64) -> Option<Element>;
    fn index_of(&self, x: &Element) -> Option<BigUint>;

    fn lt(&self, x: &Element, y: &Element) -> bool {
        x != y && self.leq(x, y)
    }

    fn comparable(&self, x: &Element, y: &Element) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    fn missing(&self, capability: &'static str) -> StructureError {
        StructureError::missing(self.id(), capability)
    }

    /// `{ x : x <= p }`, ascending by index.
    fn principal_ideal(&self, _p: &Element) -> Result<Vec<Element>, StructureError> {
        Err(self.missing("locally-finite-below"))
    }

    fn root(&self) -> Option<Element> {
        None
    }

    fn upper_bound(&self, _s: &[Element]) -> Result<Element, StructureError> {
        Err(self.missing("directed"))
    }

    fn strict_upper_bound(&self, _s: &[Element]) -> Result<Element, StructureError> {
        Err(self.missing("directed"))
    }

    /// The `i`-th element, in index order, of the canonical minimal layer:
    /// the atoms above the root, or the minimal elements of a rootless
    /// structure.
    fn min_layer(&self, _i: u64) -> Result<Element, StructureError> {
        Err(self.missing("has-min-set"))
    }

    /// Least-index layer element accepted by `accept`.
    fn min_layer_search(&self, accept: &dyn Fn(&Element) -> bool) -> Result<Element, StructureError> {
        let mut i = 0;
        loop {
            let x = self.min_layer(i)?;
            if accept(&x) {
                return Ok(x);
            }
            i += 1;
        }
    }

    fn fresh_min_avoiding(&self, avoid: &HashSet<Element>) -> Result<Element, StructureError> {
        self.min_layer_search(&|x| !avoid.contains(x))
    }

    /// A strictly increasing chain of length `k`, every member strictly
    /// above `p` and rejected by `avoid`.
    fn increasing_chain_above(
        &self,
        _p: &Element,
        _avoid: &dyn Fn(&Element) -> bool,
        _k: usize,
    ) -> Result<Vec<Element>, StructureError> {
        Err(self.missing("directed"))
    }

    /// An order embedding of `(., a]` into `[p, .)`, as pairs ascending by
    /// the index of the argument.
    fn embed_ideal_above(
        &self,
        _a: &Element,
        _p: &Element,
    ) -> Result<Vec<(Element, Element)>, StructureError> {
        Err(self.missing("self-embedding-above"))
    }

    /// Immediate successors of `p` among the first `budget` enumerated
    /// elements. The default scans principal ideals of the candidates.
    fn immediate_successors(&self, p: &Element, budget: u64) -> Result<Successors, StructureError> {
        if !self.capabilities().locally_finite_below {
            return Err(self.missing("locally-finite-below"));
        }
        let mut items = Vec::new();
        for n in 0..budget {
            let Some(q) = self.enumerate(n) else { break };
            if !self.lt(p, &q) {
                continue;
            }
            let ideal = self.principal_ideal(&q)?;
            if !ideal.iter().any(|r| r != &q && self.lt(p, r)) {
                items.push(q);
            }
        }
        Ok(Successors { items, complete: true })
    }
}

pub fn check_member(s: &dyn Structure, x: &Element) -> Result<(), StructureError> {
    if s.contains(x) {
        Ok(())
    } else {
        Err(StructureError::NotMember {
            structure: s.id(),
            element: x.to_string(),
        })
    }
}

/// Union of the principal ideals of `s`, ascending by index.
pub fn down_closure(st: &dyn Structure, s: &[Element]) -> Result<Vec<Element>, StructureError> {
    let mut out: BTreeSet<(BigUint, Element)> = BTreeSet::new();
    for x in s {
        for y in st.principal_ideal(x)? {
            let idx = st.index_of(&y).unwrap_or_default();
            out.insert((idx, y));
        }
    }
    Ok(out.into_iter().map(|(_, y)| y).collect())
}

/// Sorts elements ascending by enumeration index.
pub fn sort_by_index(st: &dyn Structure, xs: &mut [Element]) {
    xs.sort_by_cached_key(|x| st.index_of(x));
}

/// An explicit finite poset. `keys` break ties in [`linear_extension`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    pub elements: Vec<Element>,
    pub keys: Vec<BigUint>,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Builds from a row-major reflexive order table; keys are positions.
    pub fn from_table(elements: Vec<Element>, table: Vec<Vec<bool>>) -> Result<Self, StructureError> {
        let n = elements.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(StructureError::Invalid("order table is not square".into()));
        }
        let fp = FinitePoset {
            keys: (0..n).map(BigUint::from).collect(),
            leq: table.into_iter().flatten().collect(),
            elements,
        };
        fp.validate()?;
        Ok(fp)
    }

    /// Restriction of a countable structure to `elements`.
    pub fn from_structure(st: &dyn Structure, elements: Vec<Element>) -> Result<Self, StructureError> {
        let n = elements.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = st.leq(&elements[i], &elements[j]);
            }
        }
        let keys = elements
            .iter()
            .map(|x| st.index_of(x).unwrap_or_default())
            .collect();
        let fp = FinitePoset { elements, keys, leq };
        fp.validate()?;
        Ok(fp)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn validate(&self) -> Result<(), StructureError> {
        let n = self.len();
        let mut seen = HashSet::new();
        for x in &self.elements {
            if !seen.insert(x) {
                return Err(StructureError::Invalid(format!("duplicate element {x}")));
            }
        }
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(StructureError::Invalid(format!("not reflexive at {}", self.elements[i])));
            }
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(StructureError::Invalid(format!(
                        "not antisymmetric at {}, {}",
                        self.elements[i], self.elements[j]
                    )));
                }
                for k in 0..n {
                    if self.leq(i, j) && self.leq(j, k) && !self.leq(i, k) {
                        return Err(StructureError::Invalid(format!(
                            "not transitive at {}, {}, {}",
                            self.elements[i], self.elements[j], self.elements[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelDecomposition {
    /// Positions into the poset's element list, each level ascending.
    pub levels: Vec<Vec<usize>>,
    pub height: Vec<usize>,
}

/// Peels off minimal elements until nothing is left.
pub fn levels(fp: &FinitePoset) -> LevelDecomposition {
    let n = fp.len();
    let mut height = vec![usize::MAX; n];
    let mut levels = Vec::new();
    let mut remaining = n;
    while remaining > 0 {
        let level: Vec<usize> = (0..n)
            .filter(|&j| height[j] == usize::MAX)
            .filter(|&j| !(0..n).any(|i| height[i] == usize::MAX && fp.lt(i, j)))
            .collect();
        for &j in &level {
            height[j] = levels.len();
        }
        remaining -= level.len();
        levels.push(level);
    }
    LevelDecomposition { levels, height }
}

/// Topological order of the strict order, ties broken by least key.
pub fn linear_extension(fp: &FinitePoset) -> Vec<usize> {
    let n = fp.len();
    let mut indegree: Vec<usize> = (0..n)
        .map(|j| (0..n).filter(|&i| fp.lt(i, j)).count())
        .collect();
    let mut ready: BinaryHeap<Reverse<(&BigUint, usize)>> = (0..n)
        .filter(|&j| indegree[j] == 0)
        .map(|j| Reverse((&fp.keys[j], j)))
        .collect();
    let mut out = Vec::with_capacity(n);
    while let Some(Reverse((_, i))) = ready.pop() {
        out.push(i);
        for j in 0..n {
            if fp.lt(i, j) {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    ready.push(Reverse((&fp.keys[j], j)));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> FinitePoset {
        let e = |v: &[u64]| Element::set(v.iter().copied());
        let elements = vec![e(&[0, 1]), e(&[1]), e(&[]), e(&[0])];
        let t = |a: usize, b: usize| {
            let (Element::Set(x), Element::Set(y)) = (&elements[a], &elements[b]) else { unreachable!() };
            x.iter().all(|v| y.contains(v))
        };
        let table = (0..4).map(|a| (0..4).map(|b| t(a, b)).collect()).collect();
        let mut fp = FinitePoset::from_table(elements.clone(), table).unwrap();
        fp.keys = elements
            .iter()
            .map(|x| match x {
                Element::Set(s) => crate::enumeration::set_index(s),
                _ => unreachable!(),
            })
            .collect();
        fp
    }

    #[test]
    fn diamond_levels_and_extension() {
        let fp = diamond();
        let lv = levels(&fp);
        let named = |ix: &[usize]| ix.iter().map(|&i| fp.elements[i].to_string()).collect::<Vec<_>>();
        assert_eq!(lv.levels.len(), 3);
        assert_eq!(named(&lv.levels[0]), vec!["{}"]);
        assert_eq!(named(&lv.levels[1]), vec!["{1}", "{0}"]);
        assert_eq!(lv.height[0], 2);
        assert_eq!(named(&linear_extension(&fp)), vec!["{}", "{0}", "{1}", "{0,1}"]);
    }

    #[test]
    fn chain_and_antichain() {
        let els: Vec<Element> = (0..3).map(Element::Vertex).collect();
        let chain = FinitePoset::from_table(
            vec![els[2].clone(), els[0].clone(), els[1].clone()],
            vec![
                vec![true, false, false],
                vec![true, true, true],
                vec![true, false, true],
            ],
        )
        .unwrap();
        let order: Vec<_> = linear_extension(&chain).iter().map(|&i| chain.elements[i].clone()).collect();
        assert_eq!(order, els);
        assert_eq!(levels(&chain).levels.len(), 3);

        let anti = FinitePoset::from_table(
            els.clone(),
            (0..3).map(|i| (0..3).map(|j| i == j).collect()).collect(),
        )
        .unwrap();
        assert_eq!(levels(&anti).levels, vec![vec![0, 1, 2]]);
        assert_eq!(linear_extension(&anti), vec![0, 1, 2]);
    }

    #[test]
    fn invalid_tables_rejected() {
        let els: Vec<Element> = (0..2).map(Element::Vertex).collect();
        let cyc = vec![vec![true, true], vec![true, true]];
        assert!(FinitePoset::from_table(els.clone(), cyc).is_err());
        let irreflexive = vec![vec![false, false], vec![false, true]];
        assert!(FinitePoset::from_table(els, irreflexive).is_err());
    }
}
