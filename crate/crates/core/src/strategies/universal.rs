//! Extension on the random poset: every new point is a one-point
//! extension witness, so both directions succeed by the extension axioms.

use crate::certificate::Invariant;
use crate::condensation::{Pair, PartialCondensation};
use crate::element::Element;
use crate::engine::{Extension, Strategy};
use crate::error::StrategyError;
use crate::order::Structure;
use crate::structures::{RandomPoset, RandomPosetDump, RandomPosetState};

pub struct Universal {
    poset: RandomPoset,
    seed: Vec<Pair>,
}

fn vertex(x: &Element) -> Result<usize, StrategyError> {
    match x {
        Element::Vertex(v) => Ok(*v),
        other => Err(StrategyError::Precondition(format!("{other} is not a vertex"))),
    }
}

/// Grows `v0`, then `v1 > v0`, then `v2` incomparable to both.
pub fn pregrown_state() -> RandomPosetState {
    let mut st = RandomPosetState::new();
    let v0 = st.rp_witness(&[], &[], &[]).expect("empty constraints");
    let v1 = st.rp_witness(&[v0], &[], &[]).expect("one lower bound");
    st.rp_witness(&[], &[], &[v0, v1]).expect("two incomparables");
    st
}

impl Universal {
    /// The default seed is `{v0 -> v0, v2 -> v1}`: `v0` and `v2` are
    /// incomparable while `v0 < v1`.
    pub fn new(state: RandomPosetState, seed: Vec<Pair>) -> Self {
        Universal { poset: RandomPoset::new(state), seed }
    }

    pub fn default_seed() -> Vec<Pair> {
        vec![
            (Element::Vertex(0), Element::Vertex(0)),
            (Element::Vertex(2), Element::Vertex(1)),
        ]
    }

    pub fn state(&self) -> &RandomPosetState {
        &self.poset.state
    }
}

impl Strategy for Universal {
    fn id(&self) -> &'static str {
        "universal"
    }

    fn structure(&self) -> &dyn Structure {
        &self.poset
    }

    fn invariant(&self) -> Invariant {
        Invariant::None
    }

    fn seed(&self) -> Vec<Pair> {
        self.seed.clone()
    }

    /// `b` is a fresh witness above the images of domain points below `a`,
    /// below the images of domain points above `a`, and incomparable to
    /// every other range point the axioms allow.
    fn extend_dom(&mut self, map: &PartialCondensation, a: &Element) -> Result<Extension, StrategyError> {
        let av = vertex(a)?;
        if map.in_dom(a) {
            return Err(StrategyError::Precondition(format!("{a} is already in the domain")));
        }
        let st = &self.poset.state;
        let (mut l, mut g, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for (x, y) in map.pairs() {
            let (xv, yv) = (vertex(x)?, vertex(y)?);
            if st.lt(xv, av) {
                l.push(yv);
            } else if st.lt(av, xv) {
                g.push(yv);
            } else {
                rest.push(yv);
            }
        }
        let u: Vec<usize> = rest
            .into_iter()
            .filter(|&c| !l.iter().any(|&x| st.lt(c, x)) && !g.iter().any(|&x| st.lt(x, c)))
            .collect();
        let b = self.poset.state.rp_witness(&l, &g, &u)?;
        Ok(Extension::pairs(vec![(a.clone(), Element::Vertex(b))]))
    }

    /// `a` is a fresh witness incomparable to the whole domain.
    fn extend_ran(&mut self, map: &PartialCondensation, b: &Element) -> Result<Extension, StrategyError> {
        vertex(b)?;
        if map.in_ran(b) {
            return Err(StrategyError::Precondition(format!("{b} is already in the range")));
        }
        let dom: Vec<usize> = map.domain().map(vertex).collect::<Result<_, _>>()?;
        let a = self.poset.state.rp_witness(&[], &[], &dom)?;
        Ok(Extension::pairs(vec![(Element::Vertex(a), b.clone())]))
    }

    fn random_poset(&self) -> Option<RandomPosetDump> {
        Some(self.poset.state.dump())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::run_generic;

    #[test]
    fn first_steps() {
        let mut s = Universal::new(pregrown_state(), Universal::default_seed());
        let cert = run_generic(&mut s, 4).unwrap();
        assert_eq!(cert.steps[0].target, "v1");
        assert_eq!(cert.steps[0].added, vec![["v1".to_string(), "v3".to_string()]]);
        let st = s.state();
        assert!(st.lt(0, 3));
        assert!(!st.leq(1, 3) && !st.leq(3, 1));
        assert_eq!(cert.steps[1].target, "v2");
        st.check_strict_order().unwrap();
    }
}
