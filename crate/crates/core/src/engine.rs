//! The extension-strategy contract, the alternating run driver, and
//! closure-operator law checks.

use std::collections::HashSet;

use crate::certificate::{
    bounds_record, encode_pairs, BoundsRecord, Certificate, Coverage, Glue, Invariant, StepKind,
    StepRecord, WitnessRecord,
};
use crate::condensation::{check_new_pairs, find_bad_witness, verify_partial_condensation, Pair, PartialCondensation};
use crate::element::Element;
use crate::error::{StrategyError, StructureError};
use crate::order::{down_closure, Structure};
use crate::structures::RandomPosetDump;

/// Pairs added by one extension, and how they were glued on.
#[derive(Debug, Clone, Default)]
pub struct Extension {
    pub added: Vec<Pair>,
    pub glue: Option<Glue>,
}

impl Extension {
    pub fn pairs(added: Vec<Pair>) -> Self {
        Extension { added, glue: None }
    }
}

/// A bad seed plus the two one-point extension procedures. Extensions
/// return only the new pairs; the driver owns the map.
pub trait Strategy {
    fn id(&self) -> &'static str;
    fn structure(&self) -> &dyn Structure;
    fn invariant(&self) -> Invariant;
    fn seed(&self) -> Vec<Pair>;
    /// Current `(p, q)` bounds, for bounded-field strategies.
    fn bounds(&self) -> Option<(Option<Element>, Option<Element>)> {
        None
    }
    fn extend_dom(&mut self, map: &PartialCondensation, a: &Element) -> Result<Extension, StrategyError>;
    fn extend_ran(&mut self, map: &PartialCondensation, b: &Element) -> Result<Extension, StrategyError>;
    /// Domain membership, for strategies whose domain holds more than the
    /// explicit pairs.
    fn covers_dom(&self, map: &PartialCondensation, x: &Element) -> bool {
        map.in_dom(x)
    }
    fn covers_ran(&self, map: &PartialCondensation, y: &Element) -> bool {
        map.in_ran(y)
    }
    fn random_poset(&self) -> Option<RandomPosetDump> {
        None
    }
}

fn current_bounds(s: &dyn Strategy) -> Option<BoundsRecord> {
    s.bounds().map(|(p, q)| bounds_record(p.as_ref(), q.as_ref()))
}

/// First index from `start` whose element `covered` rejects.
pub fn first_uncovered(st: &dyn Structure, start: u64, covered: impl Fn(&Element) -> bool) -> u64 {
    let mut n = start;
    while let Some(x) = st.enumerate(n) {
        if !covered(&x) {
            break;
        }
        n += 1;
    }
    n
}

/// Runs `n_targets` alternating steps, domain first: each step takes the
/// least-index element not yet covered on its side and extends the map to
/// cover it. Every step is checked as it is taken.
pub fn run_generic(s: &mut dyn Strategy, n_targets: usize) -> Result<Certificate, StrategyError> {
    let seed = s.seed();
    verify_partial_condensation(s.structure(), &seed)
        .map_err(|v| StrategyError::InvalidSeed(v.to_string()))?;
    let witness = find_bad_witness(s.structure(), &seed)
        .ok_or_else(|| StrategyError::InvalidSeed("seed is a partial isomorphism".into()))?;
    let mut map = PartialCondensation::from_pairs(seed.clone())
        .map_err(|v| StrategyError::InvalidSeed(v.to_string()))?;
    let (mut dom_cursor, mut ran_cursor) = (0u64, 0u64);
    let mut steps = Vec::with_capacity(n_targets);
    for step in 0..n_targets {
        let kind = if step % 2 == 0 { StepKind::Dom } else { StepKind::Ran };
        let cursor = match kind {
            StepKind::Dom => {
                dom_cursor = first_uncovered(s.structure(), dom_cursor, |x| s.covers_dom(&map, x));
                dom_cursor
            }
            StepKind::Ran => {
                ran_cursor = first_uncovered(s.structure(), ran_cursor, |x| s.covers_ran(&map, x));
                ran_cursor
            }
        };
        let fail = |target: &str, detail: String| StrategyError::StepFailed {
            step,
            kind: kind.name().into(),
            target: target.into(),
            detail,
        };
        let target = s
            .structure()
            .enumerate(cursor)
            .ok_or_else(|| fail("-", format!("structure has no element at index {cursor}")))?;
        let t = target.to_string();
        let ext = match kind {
            StepKind::Dom => s.extend_dom(&map, &target),
            StepKind::Ran => s.extend_ran(&map, &target),
        }
        .map_err(|e| fail(&t, e.to_string()))?;
        check_new_pairs(s.structure(), map.pairs(), &ext.added).map_err(|v| fail(&t, v.to_string()))?;
        for (x, y) in &ext.added {
            map.insert(x.clone(), y.clone()).map_err(|v| fail(&t, v.to_string()))?;
        }
        let covered = match kind {
            StepKind::Dom => s.covers_dom(&map, &target),
            StepKind::Ran => s.covers_ran(&map, &target),
        };
        if !covered {
            return Err(fail(&t, "target not covered after extension".into()));
        }
        steps.push(StepRecord {
            kind,
            target: t,
            added: encode_pairs(&ext.added),
            bounds: current_bounds(s),
            glue: ext.glue,
        });
    }
    dom_cursor = first_uncovered(s.structure(), dom_cursor, |x| s.covers_dom(&map, x));
    ran_cursor = first_uncovered(s.structure(), ran_cursor, |x| s.covers_ran(&map, x));
    Ok(Certificate {
        structure: s.structure().id(),
        strategy: s.id().into(),
        invariant: s.invariant(),
        seed: encode_pairs(&seed),
        steps,
        final_map: encode_pairs(map.pairs()),
        bad_witness: WitnessRecord::from(&witness),
        bounds: current_bounds(s),
        coverage: Coverage {
            dom_prefix: dom_cursor,
            ran_prefix: ran_cursor,
        },
        random_poset: s.random_poset(),
    })
}

type Apply<'a> = Box<dyn Fn(&[Element]) -> Result<Vec<Element>, StructureError> + 'a>;

/// A map on finite element sets, expected to satisfy `S ⊆ cl(S)` and
/// `cl(A ∪ B) = cl(A) ∪ cl(B)`.
pub struct ClosureOperator<'a> {
    pub name: String,
    apply: Apply<'a>,
}

impl<'a> ClosureOperator<'a> {
    pub fn new(name: impl Into<String>, apply: impl Fn(&[Element]) -> Result<Vec<Element>, StructureError> + 'a) -> Self {
        ClosureOperator { name: name.into(), apply: Box::new(apply) }
    }

    pub fn down_closure(st: &'a dyn Structure) -> Self {
        Self::new("down-closure", move |s| down_closure(st, s))
    }

    pub fn identity() -> Self {
        Self::new("identity", |s| Ok(s.to_vec()))
    }

    /// `S -> S ∪ {e}`.
    pub fn adjoin(e: Element) -> Self {
        Self::new(format!("adjoin {e}"), move |s| {
            let mut out = s.to_vec();
            out.push(e.clone());
            Ok(out)
        })
    }

    pub fn apply(&self, s: &[Element]) -> Result<Vec<Element>, StructureError> {
        (self.apply)(s)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClosureReport {
    pub extensive_checked: usize,
    pub union_checked: usize,
    pub failures: Vec<String>,
}

impl ClosureReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn as_set(v: Vec<Element>) -> HashSet<Element> {
    v.into_iter().collect()
}

fn show(s: &[Element]) -> String {
    let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Checks `S ⊆ cl(S)` on every sample and `cl(A ∪ B) = cl(A) ∪ cl(B)` on
/// every pair of samples.
pub fn check_closure_laws(cl: &ClosureOperator, samples: &[Vec<Element>]) -> ClosureReport {
    let mut report = ClosureReport::default();
    let mut images = Vec::with_capacity(samples.len());
    for s in samples {
        match cl.apply(s) {
            Ok(img) => {
                let img = as_set(img);
                if !s.iter().all(|x| img.contains(x)) {
                    report.failures.push(format!("{}: {} is not contained in its closure", cl.name, show(s)));
                }
                report.extensive_checked += 1;
                images.push(Some(img));
            }
            Err(e) => {
                report.failures.push(format!("{}: {}", cl.name, e));
                images.push(None);
            }
        }
    }
    for i in 0..samples.len() {
        for j in i..samples.len() {
            let (Some(a), Some(b)) = (&images[i], &images[j]) else { continue };
            let union: Vec<Element> = samples[i].iter().chain(&samples[j]).cloned().collect();
            match cl.apply(&union) {
                Ok(img) => {
                    let joint: HashSet<Element> = a.union(b).cloned().collect();
                    if as_set(img) != joint {
                        report.failures.push(format!(
                            "{}: closure of {} differs from the union of closures",
                            cl.name,
                            show(&union)
                        ));
                    }
                    report.union_checked += 1;
                }
                Err(e) => report.failures.push(format!("{}: {}", cl.name, e)),
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::Divisibility;

    #[test]
    fn down_closure_is_a_closure_operator() {
        let d = Divisibility;
        let cl = ClosureOperator::down_closure(&d);
        let s = vec![Element::nat(4)];
        let t = vec![Element::nat(6)];
        let joint = cl.apply(&[Element::nat(4), Element::nat(6)]).unwrap();
        assert_eq!(joint, [1, 2, 3, 4, 6].map(Element::nat).to_vec());
        let samples: Vec<Vec<Element>> = vec![s, t, vec![], (1..20).map(Element::nat).collect()];
        assert!(check_closure_laws(&cl, &samples).ok());
        assert!(check_closure_laws(&ClosureOperator::identity(), &samples).ok());
        assert!(check_closure_laws(&ClosureOperator::adjoin(Element::nat(1)), &samples).ok());
    }

    #[test]
    fn broken_operators_are_caught() {
        let shrink = ClosureOperator::new("drop-first", |s| Ok(s.iter().skip(1).cloned().collect()));
        let samples = vec![vec![Element::nat(2)], vec![Element::nat(3)]];
        let report = check_closure_laws(&shrink, &samples);
        assert!(!report.ok());
    }
}
