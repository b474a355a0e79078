//! Finite subsets of the naturals under inclusion, optionally restricted to
//! the sets whose size lies in a fixed set of allowed sizes.

use num_bigint::BigUint;

use crate::element::{grammar, Element};
use crate::enumeration::{
    restricted_set_from_index, restricted_set_index, set_from_bits, set_index,
};
use crate::error::{ParseError, StructureError};
use crate::order::{Capabilities, Structure};

/// Allowed set sizes. Every rule admits size 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeRule {
    All,
    /// Multiples of `k`.
    Multiple(u64),
}

impl SizeRule {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "all" => Some(SizeRule::All),
            "even" => Some(SizeRule::Multiple(2)),
            _ => {
                let k: u64 = s.strip_prefix("mult:")?.parse().ok()?;
                (k >= 1).then_some(if k == 1 { SizeRule::All } else { SizeRule::Multiple(k) })
            }
        }
    }

    pub fn allows(&self, n: u64) -> bool {
        match self {
            SizeRule::All => true,
            SizeRule::Multiple(k) => n % k == 0,
        }
    }

    /// Least allowed size strictly above `n`.
    pub fn next_after(&self, n: u64) -> u64 {
        match self {
            SizeRule::All => n + 1,
            SizeRule::Multiple(k) => (n / k + 1) * k,
        }
    }

    pub fn name(&self) -> String {
        match self {
            SizeRule::All => "all".into(),
            SizeRule::Multiple(2) => "even".into(),
            SizeRule::Multiple(k) => format!("mult:{k}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FiniteSets {
    rule: SizeRule,
    restricted: bool,
}

const MAX_IDEAL_BASE: usize = 22;

fn members(x: &Element) -> &[u64] {
    match x {
        Element::Set(s) => s,
        other => panic!("set element expected, got {other}"),
    }
}

pub fn is_subset(a: &[u64], b: &[u64]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

fn union(sets: &[Element]) -> Vec<u64> {
    let mut out: Vec<u64> = sets.iter().flat_map(|s| members(s).iter().copied()).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Points not in `set`, ascending.
fn unused(set: &[u64]) -> impl Iterator<Item = u64> + '_ {
    (0u64..).filter(move |x| set.binary_search(x).is_err())
}

fn with(set: &[u64], extra: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = set.iter().chain(extra).copied().collect();
    out.sort_unstable();
    out
}

impl FiniteSets {
    pub fn all() -> Self {
        FiniteSets { rule: SizeRule::All, restricted: false }
    }

    pub fn level_restricted(rule: SizeRule) -> Self {
        FiniteSets { rule, restricted: true }
    }

    pub fn rule(&self) -> SizeRule {
        self.rule
    }

    fn allows(&self, n: usize) -> bool {
        self.rule.allows(n as u64)
    }

    fn pad(&self, mut set: Vec<u64>) -> Vec<u64> {
        while !self.allows(set.len()) {
            let m = unused(&set).next().unwrap();
            set = with(&set, &[m]);
        }
        set
    }

    /// The `i`-th set of the least nonzero allowed size, in index order.
    fn layer_set(&self, i: u64) -> Vec<u64> {
        let k = self.rule.next_after(0);
        let mut rest = i as u128;
        let mut out = Vec::with_capacity(k as usize);
        for slot in (1..=k as u128).rev() {
            let mut c = slot - 1;
            while binom(c + 1, slot) <= rest {
                c += 1;
            }
            rest -= binom(c, slot);
            out.push(c as u64);
        }
        out.reverse();
        out
    }
}

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut r = 1u128;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

impl Structure for FiniteSets {
    fn id(&self) -> String {
        if self.restricted {
            format!("level-restricted({})", self.rule.name())
        } else {
            "finite-sets".into()
        }
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            locally_finite_below: true,
            rooted: true,
            directed: true,
            downward_directed: true,
            has_min_set: true,
            self_embedding_above: !self.restricted,
            ..Default::default()
        }
    }

    fn parse(&self, s: &str) -> Result<Element, ParseError> {
        let set = grammar::set(&self.id(), s)?;
        if !self.allows(set.len()) {
            return Err(ParseError::new(self.id(), s, "set size not allowed"));
        }
        Ok(Element::Set(set))
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Set(s) if self.allows(s.len()) && s.windows(2).all(|w| w[0] < w[1]))
    }

    fn leq(&self, x: &Element, y: &Element) -> bool {
        is_subset(members(x), members(y))
    }

    fn enumerate(&self, n: u64) -> Option<Element> {
        Some(Element::Set(match self.rule {
            SizeRule::All => set_from_bits(n),
            rule => restricted_set_from_index(n, &|s| rule.allows(s)),
        }))
    }

    fn index_of(&self, x: &Element) -> Option<BigUint> {
        if !self.contains(x) {
            return None;
        }
        Some(match self.rule {
            SizeRule::All => set_index(members(x)),
            rule => restricted_set_index(members(x), &|s| rule.allows(s)),
        })
    }

    fn principal_ideal(&self, p: &Element) -> Result<Vec<Element>, StructureError> {
        let base = members(p);
        if base.len() > MAX_IDEAL_BASE {
            return Err(StructureError::Invalid(format!(
                "ideal of a {}-element set is too large to list",
                base.len()
            )));
        }
        let mut out: Vec<(BigUint, Element)> = (0u64..1 << base.len())
            .map(|mask| {
                (0..base.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| base[i])
                    .collect::<Vec<u64>>()
            })
            .filter(|s| self.allows(s.len()))
            .map(|s| {
                let e = Element::Set(s);
                (self.index_of(&e).unwrap(), e)
            })
            .collect();
        out.sort();
        Ok(out.into_iter().map(|(_, e)| e).collect())
    }

    fn root(&self) -> Option<Element> {
        Some(Element::Set(Vec::new()))
    }

    /// Union, padded with least unused points up to an allowed size.
    fn upper_bound(&self, s: &[Element]) -> Result<Element, StructureError> {
        Ok(Element::Set(self.pad(union(s))))
    }

    /// Union plus the least unused point, padded.
    fn strict_upper_bound(&self, s: &[Element]) -> Result<Element, StructureError> {
        let u = union(s);
        let m = unused(&u).next().unwrap();
        Ok(Element::Set(self.pad(with(&u, &[m]))))
    }

    fn min_layer(&self, i: u64) -> Result<Element, StructureError> {
        Ok(Element::Set(self.layer_set(i)))
    }

    /// Each step moves to the next allowed size with the least unused
    /// points; the last added point advances while the result is rejected.
    fn increasing_chain_above(
        &self,
        p: &Element,
        avoid: &dyn Fn(&Element) -> bool,
        k: usize,
    ) -> Result<Vec<Element>, StructureError> {
        let mut cur = members(p).to_vec();
        let mut out = Vec::with_capacity(k);
        while out.len() < k {
            let delta = (self.rule.next_after(cur.len() as u64) - cur.len() as u64) as usize;
            let free: Vec<u64> = unused(&cur).take(delta - 1).collect();
            let base = with(&cur, &free);
            let next = unused(&base)
                .map(|m| Element::Set(with(&base, &[m])))
                .find(|x| !avoid(x))
                .unwrap();
            cur = members(&next).to_vec();
            out.push(next);
        }
        Ok(out)
    }

    /// `A -> p ∪ (A + max(p) + 1)`.
    fn embed_ideal_above(
        &self,
        a: &Element,
        p: &Element,
    ) -> Result<Vec<(Element, Element)>, StructureError> {
        if self.restricted {
            return Err(self.missing("self-embedding-above"));
        }
        let p = members(p);
        let shift = p.last().map_or(0, |m| m + 1);
        Ok(self
            .principal_ideal(a)?
            .into_iter()
            .map(|x| {
                let shifted: Vec<u64> = members(&x).iter().map(|v| v + shift).collect();
                let image = Element::Set(with(p, &shifted));
                (x, image)
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u64]) -> Element {
        Element::set(v.iter().copied())
    }

    #[test]
    fn enumeration_by_bits() {
        let f = FiniteSets::all();
        assert_eq!(f.enumerate(5), Some(s(&[0, 2])));
        assert_eq!(f.index_of(&s(&[0, 2])), Some(BigUint::from(5u32)));
        assert!(f.leq(&s(&[0, 2]), &s(&[0, 1, 2])));
    }

    #[test]
    fn ideals_and_witnesses() {
        let f = FiniteSets::all();
        let ideal: Vec<String> = f.principal_ideal(&s(&[0, 1])).unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(ideal, vec!["{}", "{0}", "{1}", "{0,1}"]);
        assert_eq!(f.strict_upper_bound(&[s(&[0, 1])]).unwrap(), s(&[0, 1, 2]));
        let avoid = [s(&[0])].into_iter().collect();
        assert_eq!(f.fresh_min_avoiding(&avoid).unwrap(), s(&[1]));
        let chain = f.increasing_chain_above(&s(&[0]), &|_| false, 2).unwrap();
        assert_eq!(chain, vec![s(&[0, 1]), s(&[0, 1, 2])]);
        let emb = f.embed_ideal_above(&s(&[0, 1]), &s(&[2])).unwrap();
        let images: Vec<Element> = emb.into_iter().map(|(_, y)| y).collect();
        assert_eq!(images, vec![s(&[2]), s(&[2, 3]), s(&[2, 4]), s(&[2, 3, 4])]);
    }

    #[test]
    fn chain_skips_rejected_sets() {
        let f = FiniteSets::all();
        let bad = s(&[0, 1]);
        let chain = f.increasing_chain_above(&s(&[0]), &|x| *x == bad, 1).unwrap();
        assert_eq!(chain, vec![s(&[0, 2])]);
    }

    #[test]
    fn even_sizes() {
        let f = FiniteSets::level_restricted(SizeRule::Multiple(2));
        assert_eq!(f.id(), "level-restricted(even)");
        assert_eq!(f.enumerate(0), Some(s(&[])));
        assert_eq!(f.enumerate(1), Some(s(&[0, 1])));
        assert_eq!(f.min_layer(0).unwrap(), s(&[0, 1]));
        assert_eq!(f.min_layer(1).unwrap(), s(&[0, 2]));
        assert_eq!(f.min_layer(2).unwrap(), s(&[1, 2]));
        assert_eq!(f.min_layer(3).unwrap(), s(&[0, 3]));
        assert!(f.parse("{0}").is_err());
        assert_eq!(f.upper_bound(&[s(&[0, 1]), s(&[1, 2])]).unwrap(), s(&[0, 1, 2, 3]));
        assert_eq!(f.strict_upper_bound(&[s(&[0, 1])]).unwrap(), s(&[0, 1, 2, 3]));
        let chain = f.increasing_chain_above(&s(&[0, 1]), &|_| false, 2).unwrap();
        assert_eq!(chain, vec![s(&[0, 1, 2, 3]), s(&[0, 1, 2, 3, 4, 5])]);
        let ideal = f.principal_ideal(&s(&[0, 1, 2, 3])).unwrap();
        assert_eq!(ideal.len(), 1 + 6 + 1);
    }

    #[test]
    fn layers_are_in_index_order() {
        for rule in [SizeRule::All, SizeRule::Multiple(2), SizeRule::Multiple(3)] {
            let f = FiniteSets::level_restricted(rule);
            let k = rule.next_after(0) as usize;
            let brute: Vec<Element> = (0..1 << 21)
                .filter_map(|n| f.enumerate(n))
                .filter(|x| members(x).len() == k)
                .take(20)
                .collect();
            let layer: Vec<Element> = (0..20).map(|i| f.min_layer(i).unwrap()).collect();
            assert_eq!(layer, brute);
        }
    }
}
