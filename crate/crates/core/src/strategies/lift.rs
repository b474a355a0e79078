//! Transfer constructions: a bad condensation of one factor times the
//! identity on another, and a bad condensation of the finite subsets of a
//! residue class extended by the identity off that class.

use crate::certificate::{encode_pairs, Certificate, Coverage, Invariant, StepKind, StepRecord, WitnessRecord};
use crate::condensation::{find_bad_witness, Pair, PartialCondensation};
use crate::element::Element;
use crate::engine::first_uncovered;
use crate::enumeration::set_from_bits;
use crate::error::StrategyError;
use crate::order::Structure;
use crate::structures::{structure_by_id, FiniteSets, Product};

/// A lifted certificate and the prefix elements it could not evaluate.
#[derive(Debug, Clone)]
pub struct LiftReport {
    pub certificate: Certificate,
    pub skipped: Vec<String>,
}

fn decode(st: &dyn Structure, cert: &Certificate) -> Result<PartialCondensation, StrategyError> {
    let pairs = crate::certificate::decode_pairs(st, &cert.final_map)
        .map_err(|e| StrategyError::Precondition(e.to_string()))?;
    PartialCondensation::from_pairs(pairs).map_err(|v| StrategyError::Precondition(v.to_string()))
}

fn parse_in(st: &dyn Structure, s: &str) -> Result<Element, StrategyError> {
    st.parse(s).map_err(|e| StrategyError::Precondition(e.to_string()))
}

/// Builds the certificate of a lift: the lifted seed, then one domain step
/// per evaluable prefix element in index order.
fn lifted_certificate(
    st: &dyn Structure,
    strategy: &str,
    seed: Vec<Pair>,
    prefix: u64,
    eval: impl Fn(&Element) -> Option<Element>,
) -> Result<LiftReport, StrategyError> {
    let witness = find_bad_witness(st, &seed)
        .ok_or_else(|| StrategyError::Precondition("the lifted seed is not bad".into()))?;
    let mut map = PartialCondensation::from_pairs(seed.clone())
        .map_err(|v| StrategyError::Precondition(v.to_string()))?;
    let mut steps = Vec::new();
    let mut skipped = Vec::new();
    for n in 0..prefix {
        let Some(x) = st.enumerate(n) else { break };
        if map.in_dom(&x) {
            continue;
        }
        match eval(&x) {
            Some(y) => {
                steps.push(StepRecord {
                    kind: StepKind::Dom,
                    target: x.to_string(),
                    added: encode_pairs(&[(x.clone(), y.clone())]),
                    bounds: None,
                    glue: None,
                });
                map.insert(x, y).map_err(|v| StrategyError::Precondition(v.to_string()))?;
            }
            None => skipped.push(x.to_string()),
        }
    }
    if steps.is_empty() && prefix > 0 {
        return Err(StrategyError::Precondition("no prefix element could be evaluated".into()));
    }
    let coverage = Coverage {
        dom_prefix: first_uncovered(st, 0, |x| map.in_dom(x)),
        ran_prefix: first_uncovered(st, 0, |y| map.in_ran(y)),
    };
    Ok(LiftReport {
        certificate: Certificate {
            structure: st.id(),
            strategy: strategy.into(),
            invariant: Invariant::None,
            seed: encode_pairs(&seed),
            steps,
            final_map: encode_pairs(map.pairs()),
            bad_witness: WitnessRecord::from(&witness),
            bounds: None,
            coverage,
            random_poset: None,
        },
        skipped,
    })
}

/// `F(x, c) = (f0(x), c)` on `X0 x factor`, evaluated on the first
/// `prefix` product elements whose first coordinate lies in the domain of
/// `f0`. The seed pairs the witness of `f0` with the first element of the
/// factor.
pub fn product_lift(f0: &Certificate, factor: &str, prefix: u64) -> Result<LiftReport, StrategyError> {
    let x0 = structure_by_id(&f0.structure)?;
    let map = decode(x0.as_ref(), f0)?;
    let w = &f0.bad_witness;
    let x1 = structure_by_id(factor)?;
    let zero = x1
        .enumerate(0)
        .ok_or_else(|| StrategyError::Precondition(format!("{factor} has no elements yet")))?;
    let pair = |a: &str, b: &str| -> Result<Pair, StrategyError> {
        Ok((
            Element::Tuple(vec![parse_in(x0.as_ref(), a)?, zero.clone()]),
            Element::Tuple(vec![parse_in(x0.as_ref(), b)?, zero.clone()]),
        ))
    };
    let seed = vec![pair(&w.x1, &w.y1)?, pair(&w.x2, &w.y2)?];
    let product = Product::new(x0, x1);
    let eval = |x: &Element| -> Option<Element> {
        let Element::Tuple(parts) = x else { return None };
        let image = map.image(&parts[0])?;
        Some(Element::Tuple(vec![image.clone(), parts[1].clone()]))
    };
    lifted_certificate(&product, "product-lift", seed, prefix, eval)
}

/// The residue class `{ k n + r }`, carried by `tau(n) = k n + r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Residue {
    pub k: u64,
    pub r: u64,
}

impl Residue {
    pub const EVENS: Residue = Residue { k: 2, r: 0 };

    pub fn contains(&self, n: u64) -> bool {
        n >= self.r && (n - self.r) % self.k == 0
    }

    pub fn tau(&self, n: u64) -> u64 {
        self.k * n + self.r
    }

    pub fn tau_inv(&self, n: u64) -> u64 {
        (n - self.r) / self.k
    }

    pub fn transport(&self, x: &Element) -> Option<Element> {
        let Element::Set(s) = x else { return None };
        Some(Element::set(s.iter().map(|&v| self.tau(v))))
    }
}

/// `F(A) = tau(f(tau^-1(A ∩ Y))) ∪ (A \ Y)` on the finite sets with bit
/// encodings below `prefix`.
pub fn subset_lift(f: &Certificate, y: Residue, prefix: u64) -> Result<LiftReport, StrategyError> {
    let sets = FiniteSets::all();
    if f.structure != sets.id() {
        return Err(StrategyError::Precondition(format!(
            "subset lift needs a certificate on finite-sets, got {}",
            f.structure
        )));
    }
    let map = decode(&sets, f)?;
    let w = &f.bad_witness;
    let t = |s: &str| -> Result<Element, StrategyError> {
        y.transport(&parse_in(&sets, s)?)
            .ok_or_else(|| StrategyError::Precondition(format!("{s} is not a set")))
    };
    let seed = vec![(t(&w.x1)?, t(&w.y1)?), (t(&w.x2)?, t(&w.y2)?)];
    let eval = |x: &Element| -> Option<Element> {
        let Element::Set(a) = x else { return None };
        let inside = Element::set(a.iter().filter(|&&v| y.contains(v)).map(|&v| y.tau_inv(v)));
        let Element::Set(image) = y.transport(map.image(&inside)?)? else { return None };
        Some(Element::set(image.into_iter().chain(a.iter().copied().filter(|&v| !y.contains(v)))))
    };
    lifted_certificate(&sets, "subset-lift", seed, prefix, eval)
}

/// `F` restricted to the bit encodings below `prefix`, as plain pairs.
pub fn subset_lift_pairs(report: &LiftReport) -> Result<Vec<Pair>, StrategyError> {
    crate::certificate::decode_pairs(&FiniteSets::all(), &report.certificate.final_map)
        .map_err(|e| StrategyError::Precondition(e.to_string()))
}

/// Bit encodings `0..prefix` as sets.
pub fn bit_sets(prefix: u64) -> Vec<Element> {
    (0..prefix).map(|n| Element::set(set_from_bits(n))).collect()
}
