use nonrev::certificate::{Certificate, Invariant};
use nonrev::element::Element;
use nonrev::oracle::recheck_step;
use nonrev::strategies::run;
use nonrev::structures::{Divisibility, FiniteSets};
use nonrev::verify::verify_certificate;

fn fresh(structure: &str, strategy: &str, n: usize) -> Certificate {
    let c = run(structure, strategy, n, None).unwrap();
    assert!(verify_certificate(&c).passed());
    c
}

fn failed(c: &Certificate) -> Vec<String> {
    verify_certificate(c).failures().iter().map(|c| c.name.clone()).collect()
}

#[test]
fn perturbed_image_is_caught() {
    let mut c = fresh("divisibility", "well-founded", 40);
    let k = c.steps.iter().position(|s| s.kind.name() == "dom").unwrap();
    c.steps[k].added[0][1] = "9999991".into();
    assert!(!failed(&c).is_empty());
}

#[test]
fn reordered_steps_are_caught() {
    let mut c = fresh("divisibility", "well-founded", 40);
    c.steps.swap(3, 4);
    assert!(failed(&c).contains(&"schedule".to_string()), "{:?}", failed(&c));
}

#[test]
fn dropped_step_is_caught() {
    let mut c = fresh("finite-sets", "well-founded", 30);
    c.steps.pop();
    assert!(failed(&c).contains(&"replay".to_string()), "{:?}", failed(&c));
}

#[test]
fn tampered_witness_is_caught() {
    let mut c = fresh("divisibility", "well-founded", 10);
    c.bad_witness.x1 = "5".into();
    assert!(failed(&c).contains(&"bad-witness".to_string()), "{:?}", failed(&c));
}

#[test]
fn wrong_structure_is_caught() {
    let mut c = fresh("divisibility", "well-founded", 10);
    c.structure = "zxz".into();
    assert!(!verify_certificate(&c).passed());
}

#[test]
fn tampered_byte_is_caught() {
    let c = fresh("half-plane", "rooted-directed", 20);
    let json = c.to_json();
    let at = json.find("\"final\"").unwrap();
    let digit = at + json[at..].find(|ch: char| ch.is_ascii_digit()).unwrap();
    let mut bytes = json.into_bytes();
    bytes[digit] = if bytes[digit] == b'7' { b'8' } else { b'7' };
    let tampered = Certificate::from_json(std::str::from_utf8(&bytes).unwrap()).unwrap();
    assert!(!verify_certificate(&tampered).passed());
}

#[test]
fn shifted_region_is_caught() {
    let mut c = fresh("qxq", "convex", 20);
    let step = c.steps.iter_mut().find(|s| s.glue.as_ref().is_some_and(|g| g.shift.is_some())).unwrap();
    step.glue.as_mut().unwrap().shift = Some("(1/3,0)".into());
    assert!(!verify_certificate(&c).passed());
}

#[test]
fn recheck_accepts_a_valid_step() {
    let n = Element::nat;
    let before = vec![(n(1), n(1)), (n(2), n(4)), (n(3), n(2))];
    let added = vec![(n(4), n(8))];
    assert!(recheck_step(&Divisibility, &before, &added, Invariant::OpenDomain, None).passed());
    let r = recheck_step(&Divisibility, &before, &added, Invariant::OpenDomainBoundedField, Some(&n(24)));
    assert!(r.check("bounded-field").unwrap().passed);
}

#[test]
fn recheck_catches_broken_injectivity() {
    let n = Element::nat;
    let before = vec![(n(1), n(1)), (n(2), n(4)), (n(3), n(2))];
    let r = recheck_step(&Divisibility, &before, &[(n(5), n(4))], Invariant::None, None);
    assert!(!r.check("injective").unwrap().passed);
    assert!(!r.check("fresh").unwrap().passed);
}

#[test]
fn recheck_catches_broken_down_closure() {
    let s = |v: &[u64]| Element::set(v.iter().copied());
    let before = vec![(s(&[]), s(&[])), (s(&[0]), s(&[0, 1])), (s(&[1]), s(&[0]))];
    let added = vec![(s(&[2, 3]), s(&[5, 6]))];
    let r = recheck_step(&FiniteSets::all(), &before, &added, Invariant::OpenDomain, None);
    assert!(r.check("order").unwrap().passed);
    assert!(!r.check("open-domain").unwrap().passed);
}
