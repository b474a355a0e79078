use std::collections::HashSet;

use nonrev::certificate::{decode_pairs, Certificate, StepKind};
use nonrev::condensation::{check_new_pairs, find_bad_witness, verify_partial_condensation, Pair};
use nonrev::element::Element;
use nonrev::engine::first_uncovered;
use nonrev::oracle::has_bad_pair;
use nonrev::order::Structure;
use nonrev::strategies::{product_lift, run};
use nonrev::structures::{structure_by_id, Divisibility, Plane};
use nonrev::verify::verify_certificate;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CONFIGS: &[(&str, &str)] = &[
    ("divisibility", "well-founded"),
    ("divisibility", "rooted-directed"),
    ("finite-sets", "well-founded"),
    ("finite-sets", "rooted-directed"),
    ("level-restricted(even)", "well-founded"),
    ("fn-omega", "well-founded"),
    ("fin-support", "well-founded"),
    ("fin-support", "rooted-directed"),
    ("half-plane", "rooted-directed"),
    ("zxz", "convex"),
    ("qxq", "convex"),
    ("random-poset", "universal"),
];

fn double_loop_bad(st: &dyn Structure, pairs: &[Pair]) -> bool {
    for i in 0..pairs.len() {
        for j in 0..pairs.len() {
            if i != j && !st.leq(&pairs[i].0, &pairs[j].0) && st.leq(&pairs[i].1, &pairs[j].1) {
                return true;
            }
        }
    }
    false
}

/// A verified map on divisibility grown greedily from random candidates.
fn random_map(rng: &mut ChaCha8Rng, size: usize) -> Vec<Pair> {
    let mut pairs: Vec<Pair> = Vec::new();
    for _ in 0..200 {
        if pairs.len() == size {
            break;
        }
        let cand = (Element::nat(rng.gen_range(1..60)), Element::nat(rng.gen_range(1..60)));
        if check_new_pairs(&Divisibility, &pairs, std::slice::from_ref(&cand)).is_ok() {
            pairs.push(cand);
        }
    }
    pairs
}

#[test]
fn bad_witness_search_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut bad, mut iso) = (0, 0);
    for _ in 0..1000 {
        let size = rng.gen_range(1..=8);
        let pairs = random_map(&mut rng, size);
        verify_partial_condensation(&Divisibility, &pairs).unwrap();
        let found = find_bad_witness(&Divisibility, &pairs);
        assert_eq!(found.is_some(), double_loop_bad(&Divisibility, &pairs), "{pairs:?}");
        assert_eq!(found.is_some(), has_bad_pair(&Divisibility, &pairs));
        if let Some(w) = found {
            assert!(w.holds_in(&Divisibility));
            bad += 1;
        } else {
            iso += 1;
        }
    }
    assert!(bad > 0 && iso > 0);
}

proptest! {
    #[test]
    fn restrictions_of_verified_maps_verify(seed in any::<u64>(), mask in any::<u8>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs = random_map(&mut rng, 8);
        let sub: Vec<Pair> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect();
        prop_assert!(verify_partial_condensation(&Divisibility, &sub).is_ok());
    }

    #[test]
    fn product_lift_transports_badness(i in 0usize..100, j in 0usize..100, c in -5i64..5) {
        let div = run("divisibility", "well-founded", 120, None).unwrap();
        let pairs = decode_pairs(&Divisibility, &div.final_map).unwrap();
        let lift = product_lift(&div, "int", 400).unwrap().certificate;
        let product = structure_by_id(&lift.structure).unwrap();
        let lifted = decode_pairs(product.as_ref(), &lift.final_map).unwrap();
        let (a, b) = (&pairs[i % pairs.len()], &pairs[j % pairs.len()]);
        let up = |x: &Element| Element::Tuple(vec![x.clone(), Element::Int(c)]);
        let image = |x: &Element| lifted.iter().find(|(p, _)| p == x).map(|(_, q)| q.clone());
        if let (Some(fa), Some(fb)) = (image(&up(&a.0)), image(&up(&b.0))) {
            prop_assert_eq!(fa.clone(), up(&a.1));
            let original = !Divisibility.leq(&a.0, &b.0) && Divisibility.leq(&a.1, &b.1);
            let transported = !product.leq(&up(&a.0), &up(&b.0)) && product.leq(&fa, &fb);
            prop_assert_eq!(original, transported);
        }
    }
}

fn replay(st: &dyn Structure, cert: &Certificate) -> Vec<Vec<Pair>> {
    let mut maps = vec![decode_pairs(st, &cert.seed).unwrap()];
    for step in &cert.steps {
        let mut next = maps.last().unwrap().clone();
        next.extend(decode_pairs(st, &step.added).unwrap());
        maps.push(next);
    }
    maps
}

#[test]
fn runs_grow_monotonically_and_stay_bad() {
    for &(structure, strategy) in CONFIGS {
        let cert = run(structure, strategy, 60, None).unwrap();
        assert!(verify_certificate(&cert).passed(), "{structure}/{strategy}");
        let st: Box<dyn Structure> = match structure {
            "random-poset" => continue,
            "zxz" => Box::new(Plane::integer()),
            "qxq" => Box::new(Plane::rational()),
            _ => structure_by_id(structure).unwrap(),
        };
        let maps = replay(st.as_ref(), &cert);
        let witness = find_bad_witness(st.as_ref(), &maps[0]).unwrap();
        let (mut dom_prefix, mut ran_prefix) = (0, 0);
        for (k, map) in maps.iter().enumerate() {
            verify_partial_condensation(st.as_ref(), map).unwrap();
            assert!(witness.pairs().iter().all(|p| map.contains(p)), "{structure}/{strategy} step {k}");
            assert!(witness.holds_in(st.as_ref()) && find_bad_witness(st.as_ref(), map).is_some());
            let dom: HashSet<&Element> = map.iter().map(|(x, _)| x).collect();
            let ran: HashSet<&Element> = map.iter().map(|(_, y)| y).collect();
            let d = first_uncovered(st.as_ref(), 0, |x| dom.contains(x));
            let r = first_uncovered(st.as_ref(), 0, |y| ran.contains(y));
            assert!(d >= dom_prefix && r >= ran_prefix, "{structure}/{strategy} step {k}");
            (dom_prefix, ran_prefix) = (d, r);
        }
        let lfb = st.capabilities().locally_finite_below;
        for step in &cert.steps {
            match step.kind {
                StepKind::Ran => assert_eq!(step.added.len(), 1),
                StepKind::Dom if lfb => {
                    let target = st.parse(&step.target).unwrap();
                    assert!(step.added.len() <= st.principal_ideal(&target).unwrap().len(), "{structure}/{strategy}");
                }
                StepKind::Dom => {}
            }
        }
    }
}

#[test]
fn runs_are_deterministic() {
    for &(structure, strategy) in CONFIGS {
        let a = run(structure, strategy, 40, None).unwrap().to_json();
        let b = run(structure, strategy, 40, None).unwrap().to_json();
        assert_eq!(a, b, "{structure}/{strategy}");
    }
}

#[test]
fn zero_steps_give_a_seed_only_certificate() {
    let cert = run("divisibility", "well-founded", 0, None).unwrap();
    assert!(cert.steps.is_empty());
    assert_eq!(cert.final_map, cert.seed);
    assert!(verify_certificate(&cert).passed());
}
