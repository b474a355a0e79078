//! Finite partial functions from naturals to naturals, and finitely
//! supported total functions.
//!
//! Partial functions are ordered by `f <= g` iff `dom f ⊆ dom g` and
//! `f(k) <= g(k)` on `dom f`. Finitely supported functions are ordered
//! pointwise; they are stored as their support with values `>= 1`, so the
//! same comparison applies.

use num_bigint::BigUint;

use crate::element::{grammar, Element};
use crate::enumeration::{pair, rank_tuple, unpair, unrank_tuple};
use crate::error::{ParseError, StructureError};
use crate::order::{Capabilities, Structure};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Functions {
    finite_support: bool,
}

const MAX_IDEAL: u128 = 1 << 20;

fn entries(x: &Element) -> &[(u64, u64)] {
    match x {
        Element::Fun(m) => m,
        other => panic!("function element expected, got {other}"),
    }
}

fn get(f: &[(u64, u64)], k: u64) -> Option<u64> {
    f.binary_search_by_key(&k, |e| e.0).ok().map(|i| f[i].1)
}

pub fn fun_leq(f: &[(u64, u64)], g: &[(u64, u64)]) -> bool {
    f.iter().all(|&(k, v)| get(g, k).is_some_and(|w| v <= w))
}

fn least_unused_key(f: &[(u64, u64)]) -> u64 {
    (0u64..).find(|k| get(f, *k).is_none()).unwrap()
}

impl Functions {
    pub fn partial() -> Self {
        Functions { finite_support: false }
    }

    pub fn finitely_supported() -> Self {
        Functions { finite_support: true }
    }

    fn least_value(&self) -> u64 {
        u64::from(self.finite_support)
    }

    /// Sum of the values plus the size of the domain.
    pub fn height_formula(x: &Element) -> u64 {
        let f = entries(x);
        f.len() as u64 + f.iter().map(|e| e.1).sum::<u64>()
    }

    fn pointwise_max(fs: &[Element]) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = Vec::new();
        for f in fs {
            for &(k, v) in entries(f) {
                match out.binary_search_by_key(&k, |e| e.0) {
                    Ok(i) => out[i].1 = out[i].1.max(v),
                    Err(i) => out.insert(i, (k, v)),
                }
            }
        }
        out
    }

    fn bump_least(&self, f: &[(u64, u64)]) -> Vec<(u64, u64)> {
        if f.is_empty() {
            return vec![(0, self.least_value())];
        }
        let mut g = f.to_vec();
        g[0].1 += 1;
        g
    }
}

impl Structure for Functions {
    fn id(&self) -> String {
        if self.finite_support { "fin-support" } else { "fn-omega" }.into()
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            locally_finite_below: true,
            rooted: true,
            directed: true,
            downward_directed: true,
            has_min_set: true,
            self_embedding_above: self.finite_support,
            ..Default::default()
        }
    }

    fn parse(&self, s: &str) -> Result<Element, ParseError> {
        let f = grammar::fun(&self.id(), s)?;
        if f.iter().any(|e| e.1 < self.least_value()) {
            return Err(ParseError::new(self.id(), s, "support values must be positive"));
        }
        Ok(Element::Fun(f))
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Fun(f)
            if f.windows(2).all(|w| w[0].0 < w[1].0) && f.iter().all(|e| e.1 >= self.least_value()))
    }

    fn leq(&self, x: &Element, y: &Element) -> bool {
        fun_leq(entries(x), entries(y))
    }

    /// `0` is the empty function; `n >= 1` unpairs `n - 1` into a nonempty
    /// key mask (minus one) and a rank of the value tuple.
    fn enumerate(&self, n: u64) -> Option<Element> {
        if n == 0 {
            return Some(Element::Fun(Vec::new()));
        }
        let (s, v) = unpair(n - 1);
        let mask = s as u128 + 1;
        let keys: Vec<u64> = (0..65).filter(|i| mask >> i & 1 == 1).collect();
        let values = unrank_tuple(v, keys.len());
        Some(Element::Fun(
            keys.into_iter()
                .zip(values)
                .map(|(k, v)| (k, v + self.least_value()))
                .collect(),
        ))
    }

    fn index_of(&self, x: &Element) -> Option<BigUint> {
        if !self.contains(x) {
            return None;
        }
        let f = entries(x);
        if f.is_empty() {
            return Some(BigUint::ZERO);
        }
        let mut mask = BigUint::ZERO;
        for &(k, _) in f {
            mask.set_bit(k, true);
        }
        let values: Vec<u64> = f.iter().map(|e| e.1 - self.least_value()).collect();
        Some(pair(&(mask - 1u32), &rank_tuple(&values)) + 1u32)
    }

    fn principal_ideal(&self, p: &Element) -> Result<Vec<Element>, StructureError> {
        let f = entries(p);
        // Choices per key: absent, or a value from the least value up to f(k).
        let choices: Vec<u128> = f
            .iter()
            .map(|&(_, v)| (v - self.least_value()) as u128 + 2)
            .collect();
        let total = choices.iter().try_fold(1u128, |acc, &c| acc.checked_mul(c));
        if total.is_none_or(|t| t > MAX_IDEAL) {
            return Err(StructureError::Invalid(format!("ideal of {p} is too large to list")));
        }
        let mut out: Vec<(BigUint, Element)> = Vec::new();
        let mut digits = vec![0u128; f.len()];
        loop {
            let g: Vec<(u64, u64)> = f
                .iter()
                .zip(&digits)
                .filter(|(_, &d)| d > 0)
                .map(|(&(k, _), &d)| (k, self.least_value() + d as u64 - 1))
                .collect();
            let e = Element::Fun(g);
            out.push((self.index_of(&e).unwrap(), e));
            let mut i = 0;
            loop {
                if i == digits.len() {
                    out.sort();
                    return Ok(out.into_iter().map(|(_, e)| e).collect());
                }
                digits[i] += 1;
                if digits[i] < choices[i] {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    fn root(&self) -> Option<Element> {
        Some(Element::Fun(Vec::new()))
    }

    /// Pointwise maximum over the joint domain.
    fn upper_bound(&self, s: &[Element]) -> Result<Element, StructureError> {
        Ok(Element::Fun(Self::pointwise_max(s)))
    }

    /// Pointwise maximum plus the least unused key at the least value.
    fn strict_upper_bound(&self, s: &[Element]) -> Result<Element, StructureError> {
        let mut f = Self::pointwise_max(s);
        let k = least_unused_key(&f);
        f.push((k, self.least_value()));
        f.sort_unstable();
        Ok(Element::Fun(f))
    }

    fn min_layer(&self, i: u64) -> Result<Element, StructureError> {
        Ok(Element::Fun(vec![(i, self.least_value())]))
    }

    /// Raises the value at the least key, one step at a time.
    fn increasing_chain_above(
        &self,
        p: &Element,
        avoid: &dyn Fn(&Element) -> bool,
        k: usize,
    ) -> Result<Vec<Element>, StructureError> {
        let mut cur = entries(p).to_vec();
        let mut out = Vec::with_capacity(k);
        while out.len() < k {
            cur = self.bump_least(&cur);
            let x = Element::Fun(cur.clone());
            if !avoid(&x) {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Pointwise addition of `p`.
    fn embed_ideal_above(
        &self,
        a: &Element,
        p: &Element,
    ) -> Result<Vec<(Element, Element)>, StructureError> {
        if !self.finite_support {
            return Err(self.missing("self-embedding-above"));
        }
        let p = entries(p);
        Ok(self
            .principal_ideal(a)?
            .into_iter()
            .map(|g| {
                let mut sum = p.to_vec();
                for &(k, v) in entries(&g) {
                    match sum.binary_search_by_key(&k, |e| e.0) {
                        Ok(i) => sum[i].1 += v,
                        Err(i) => sum.insert(i, (k, v)),
                    }
                }
                (g, Element::Fun(sum))
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: &[(u64, u64)]) -> Element {
        Element::fun(v.iter().copied())
    }

    #[test]
    fn enumeration_round_trips() {
        for st in [Functions::partial(), Functions::finitely_supported()] {
            let mut seen = std::collections::HashSet::new();
            for n in 0..1500 {
                let x = st.enumerate(n).unwrap();
                assert!(st.contains(&x));
                assert!(seen.insert(x.clone()));
                assert_eq!(st.index_of(&x), Some(BigUint::from(n)));
            }
        }
    }

    #[test]
    fn partial_function_order() {
        let st = Functions::partial();
        let ideal: Vec<String> = st.principal_ideal(&f(&[(0, 1)])).unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(ideal, vec!["{}", "{0:0}", "{0:1}"]);
        assert_eq!(
            st.upper_bound(&[f(&[(0, 1)]), f(&[(0, 2), (3, 1)])]).unwrap(),
            f(&[(0, 2), (3, 1)])
        );
        let chain = st.increasing_chain_above(&f(&[(0, 1)]), &|_| false, 2).unwrap();
        assert_eq!(chain, vec![f(&[(0, 2)]), f(&[(0, 3)])]);
        assert_eq!(st.enumerate(1), Some(f(&[(0, 0)])));
        assert_eq!(st.enumerate(2), Some(f(&[(1, 0)])));
        assert_eq!(st.enumerate(3), Some(f(&[(0, 1)])));
    }

    #[test]
    fn finite_support_embedding_adds() {
        let st = Functions::finitely_supported();
        assert!(st.parse("{0:0}").is_err());
        let emb = st.embed_ideal_above(&f(&[(0, 1)]), &f(&[(1, 2)])).unwrap();
        assert_eq!(
            emb,
            vec![(f(&[]), f(&[(1, 2)])), (f(&[(0, 1)]), f(&[(0, 1), (1, 2)]))]
        );
        assert_eq!(st.strict_upper_bound(&[f(&[(0, 2)])]).unwrap(), f(&[(0, 2), (1, 1)]));
    }
}
