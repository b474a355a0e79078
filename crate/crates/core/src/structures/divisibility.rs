//! Positive integers ordered by divisibility.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::element::{grammar, Element};
use crate::error::{ParseError, StructureError};
use crate::order::{Capabilities, Structure, Successors};

#[derive(Debug, Clone, Copy, Default)]
pub struct Divisibility;

fn nat(x: &Element) -> &BigUint {
    match x {
        Element::Nat(n) => n,
        other => panic!("divisibility element expected, got {other}"),
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn factorize(n: &BigUint) -> Result<Vec<(u64, u32)>, StructureError> {
    let mut n = n
        .to_u64()
        .ok_or_else(|| StructureError::Invalid(format!("{n} is too large to factor")))?;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

impl Structure for Divisibility {
    fn id(&self) -> String {
        "divisibility".into()
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            locally_finite_below: true,
            rooted: true,
            directed: true,
            downward_directed: true,
            has_min_set: true,
            self_embedding_above: true,
            ..Default::default()
        }
    }

    fn parse(&self, s: &str) -> Result<Element, ParseError> {
        let n = grammar::nat("divisibility", s)?;
        if n.is_zero() {
            return Err(ParseError::new("divisibility", s, "zero is not a member"));
        }
        Ok(Element::Nat(n))
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Nat(n) if !n.is_zero())
    }

    fn leq(&self, x: &Element, y: &Element) -> bool {
        nat(y).is_multiple_of(nat(x))
    }

    fn enumerate(&self, n: u64) -> Option<Element> {
        Some(Element::Nat(BigUint::from(n) + 1u32))
    }

    fn index_of(&self, x: &Element) -> Option<BigUint> {
        match x {
            Element::Nat(n) if !n.is_zero() => Some(n - 1u32),
            _ => None,
        }
    }

    fn principal_ideal(&self, p: &Element) -> Result<Vec<Element>, StructureError> {
        let mut divisors = vec![1u64];
        for (prime, e) in factorize(nat(p))? {
            let mut next = Vec::with_capacity(divisors.len() * (e as usize + 1));
            for &d in &divisors {
                let mut m = d;
                for _ in 0..=e {
                    next.push(m);
                    m *= prime;
                }
            }
            divisors = next;
        }
        divisors.sort_unstable();
        Ok(divisors.into_iter().map(Element::nat).collect())
    }

    fn root(&self) -> Option<Element> {
        Some(Element::nat(1))
    }

    fn upper_bound(&self, s: &[Element]) -> Result<Element, StructureError> {
        let lcm = s.iter().fold(BigUint::one(), |acc, x| acc.lcm(nat(x)));
        Ok(Element::Nat(lcm))
    }

    fn strict_upper_bound(&self, s: &[Element]) -> Result<Element, StructureError> {
        let Element::Nat(n) = self.upper_bound(s)? else { unreachable!() };
        Ok(Element::Nat(n * 2u32))
    }

    fn min_layer(&self, i: u64) -> Result<Element, StructureError> {
        let mut seen = 0;
        let mut n = 1u64;
        loop {
            n += 1;
            if is_prime(n) {
                if seen == i {
                    return Ok(Element::nat(n));
                }
                seen += 1;
            }
        }
    }

    fn min_layer_search(&self, accept: &dyn Fn(&Element) -> bool) -> Result<Element, StructureError> {
        let mut n = 1u64;
        loop {
            n += 1;
            if is_prime(n) {
                let x = Element::nat(n);
                if accept(&x) {
                    return Ok(x);
                }
            }
        }
    }

    /// Repeated doubling, skipping rejected values.
    fn increasing_chain_above(
        &self,
        p: &Element,
        avoid: &dyn Fn(&Element) -> bool,
        k: usize,
    ) -> Result<Vec<Element>, StructureError> {
        let mut cur = nat(p).clone();
        let mut out = Vec::with_capacity(k);
        while out.len() < k {
            cur *= 2u32;
            let x = Element::Nat(cur.clone());
            if !avoid(&x) {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Multiplication by `p`.
    fn embed_ideal_above(
        &self,
        a: &Element,
        p: &Element,
    ) -> Result<Vec<(Element, Element)>, StructureError> {
        let p = nat(p);
        Ok(self
            .principal_ideal(a)?
            .into_iter()
            .map(|d| {
                let image = Element::Nat(nat(&d) * p);
                (d, image)
            })
            .collect())
    }

    /// `q` covers `p` exactly when `q / p` is prime.
    fn immediate_successors(&self, p: &Element, budget: u64) -> Result<Successors, StructureError> {
        let p = nat(p);
        let mut items = Vec::new();
        for n in 1..=budget {
            let q = BigUint::from(n);
            if q > *p && q.is_multiple_of(p) {
                if let Some(r) = (&q / p).to_u64() {
                    if is_prime(r) {
                        items.push(Element::Nat(q));
                    }
                }
            }
        }
        Ok(Successors { items, complete: true })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(xs: &[Element]) -> Vec<String> {
        xs.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn order_and_enumeration() {
        let d = Divisibility;
        assert!(d.leq(&Element::nat(3), &Element::nat(12)));
        assert!(!d.leq(&Element::nat(12), &Element::nat(3)));
        assert_eq!(d.enumerate(0), Some(Element::nat(1)));
        assert!(d.parse("0").is_err());
        assert!(d.parse("007").is_err());
    }

    #[test]
    fn ideals_match_divisor_scan() {
        let d = Divisibility;
        for n in 1..200u64 {
            let brute: Vec<String> = (1..=n).filter(|k| n % k == 0).map(|k| k.to_string()).collect();
            assert_eq!(strs(&d.principal_ideal(&Element::nat(n)).unwrap()), brute);
        }
    }

    #[test]
    fn witnesses() {
        let d = Divisibility;
        let s = [Element::nat(4), Element::nat(6)];
        assert_eq!(d.upper_bound(&s).unwrap(), Element::nat(12));
        assert_eq!(d.strict_upper_bound(&s).unwrap(), Element::nat(24));
        let avoid: std::collections::HashSet<Element> = [2, 3, 5].map(Element::nat).into();
        assert_eq!(d.fresh_min_avoiding(&avoid).unwrap(), Element::nat(7));
        let chain = d
            .increasing_chain_above(&Element::nat(6), &|x| matches!(x, Element::Nat(n) if *n <= BigUint::from(10u32)), 3)
            .unwrap();
        assert_eq!(strs(&chain), vec!["12", "24", "48"]);
        let emb = d.embed_ideal_above(&Element::nat(4), &Element::nat(5)).unwrap();
        let shown: Vec<(String, String)> = emb.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect();
        assert_eq!(
            shown,
            vec![("1".into(), "5".into()), ("2".into(), "10".into()), ("4".into(), "20".into())]
        );
    }

    #[test]
    fn successors_of_one_are_primes() {
        let d = Divisibility;
        let succ = d.immediate_successors(&Element::nat(1), 20).unwrap();
        assert!(succ.complete);
        assert_eq!(strs(&succ.items), vec!["2", "3", "5", "7", "11", "13", "17", "19"]);
        let two = d.immediate_successors(&Element::nat(2), 30).unwrap();
        assert_eq!(two.items[0], Element::nat(4));
        assert_eq!(strs(&two.items), vec!["4", "6", "10", "14", "22", "26"]);
    }
}
