use std::collections::HashSet;

use nonrev::element::Element;
use nonrev::oracle::labeled_posets;
use nonrev::order::{down_closure, levels, linear_extension, FinitePoset, Structure};
use nonrev::structures::{structure_by_id, Divisibility, Functions, STRUCTURE_IDS};
use num_bigint::BigUint;
use proptest::prelude::*;

/// Every id except the random poset, which starts empty.
fn countable() -> Vec<Box<dyn Structure>> {
    STRUCTURE_IDS
        .iter()
        .filter(|id| **id != "random-poset")
        .chain(&["int", "product(divisibility,int)"])
        .map(|id| structure_by_id(id).unwrap())
        .collect()
}

#[test]
fn enumeration_round_trips_on_the_first_thousand() {
    for st in countable() {
        for n in 0..1000u64 {
            let x = st.enumerate(n).unwrap();
            assert!(st.contains(&x), "{}: {x}", st.id());
            assert_eq!(st.index_of(&x), Some(BigUint::from(n)), "{}: {x}", st.id());
            assert_eq!(st.parse(&x.to_string()).unwrap(), x, "{}", st.id());
        }
    }
}

#[test]
fn order_laws_on_the_first_sixty() {
    for st in countable() {
        let xs: Vec<Element> = (0..60).map(|n| st.enumerate(n).unwrap()).collect();
        for a in &xs {
            assert!(st.leq(a, a), "{}: {a}", st.id());
            for b in &xs {
                if a != b {
                    assert!(!(st.leq(a, b) && st.leq(b, a)), "{}: {a} {b}", st.id());
                }
                if !st.leq(a, b) {
                    continue;
                }
                for c in &xs {
                    assert!(!st.leq(b, c) || st.leq(a, c), "{}: {a} {b} {c}", st.id());
                }
            }
        }
    }
}

#[test]
fn linear_extensions_and_levels_on_all_five_point_posets() {
    for fp in labeled_posets(5).unwrap() {
        let order = linear_extension(&fp);
        let pos: Vec<usize> = {
            let mut p = vec![0; fp.len()];
            order.iter().enumerate().for_each(|(k, &i)| p[i] = k);
            p
        };
        let lv = levels(&fp);
        assert_eq!(lv.levels.iter().map(Vec::len).sum::<usize>(), fp.len());
        for i in 0..fp.len() {
            for j in 0..fp.len() {
                if fp.lt(i, j) {
                    assert!(pos[i] < pos[j]);
                    assert!(lv.height[i] < lv.height[j]);
                }
            }
        }
    }
}

#[test]
fn immediate_successors_of_one_are_the_primes() {
    const BUDGET: u64 = 600;
    let mut composite = vec![false; BUDGET as usize + 1];
    let mut primes = Vec::new();
    for p in 2..=BUDGET as usize {
        if !composite[p] {
            primes.push(Element::nat(p as u64));
            (p * p..=BUDGET as usize).step_by(p).for_each(|m| composite[m] = true);
        }
    }
    let succ = Divisibility.immediate_successors(&Element::nat(1), BUDGET).unwrap();
    assert_eq!(succ.items, primes);
}

fn fragment(st: &dyn Structure, min: usize) -> FinitePoset {
    let mut seeds = Vec::new();
    let mut n = 0;
    loop {
        seeds.push(st.enumerate(n).unwrap());
        n += 1;
        let frag = down_closure(st, &seeds).unwrap();
        if frag.len() >= min {
            return FinitePoset::from_structure(st, frag).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn down_closure_matches_brute_force(picks in proptest::collection::vec(0u64..300, 1..5), which in 0usize..4) {
        let st = structure_by_id(["divisibility", "finite-sets", "fn-omega", "half-plane"][which]).unwrap();
        let s: Vec<Element> = picks.iter().map(|&n| st.enumerate(n).unwrap()).collect();
        let got: HashSet<Element> = down_closure(st.as_ref(), &s).unwrap().into_iter().collect();
        let pool: HashSet<Element> = s.iter().flat_map(|x| st.principal_ideal(x).unwrap()).collect();
        let want: HashSet<Element> = pool.into_iter().filter(|x| s.iter().any(|y| st.leq(x, y))).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn height_formula_matches_levels(min in 100usize..160) {
        let st = Functions::partial();
        let fp = fragment(&st, min);
        let lv = levels(&fp);
        for (i, x) in fp.elements.iter().enumerate() {
            prop_assert_eq!(lv.height[i] as u64, Functions::height_formula(x), "{}", x);
        }
    }

    #[test]
    fn index_round_trip_far_out(n in 0u64..1_000_000, which in 0usize..8) {
        let st = &countable()[which];
        let x = st.enumerate(n).unwrap();
        prop_assert_eq!(st.index_of(&x), Some(BigUint::from(n)));
    }
}
