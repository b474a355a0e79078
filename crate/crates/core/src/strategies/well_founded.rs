//! Extension on well-founded, locally finite, rooted and directed posets
//! with a downward closed domain.

use crate::certificate::Invariant;
use crate::condensation::{Pair, PartialCondensation};
use crate::element::Element;
use crate::engine::{Extension, Strategy};
use crate::error::StrategyError;
use crate::order::{linear_extension, FinitePoset, Structure};

pub struct WellFounded {
    st: Box<dyn Structure>,
    seed: Vec<Pair>,
}

impl WellFounded {
    pub fn new(st: Box<dyn Structure>, seed: Vec<Pair>) -> Self {
        WellFounded { st, seed }
    }
}

impl Strategy for WellFounded {
    fn id(&self) -> &'static str {
        "well-founded"
    }

    fn structure(&self) -> &dyn Structure {
        self.st.as_ref()
    }

    fn invariant(&self) -> Invariant {
        Invariant::OpenDomain
    }

    fn seed(&self) -> Vec<Pair> {
        self.seed.clone()
    }

    /// Adds `(., a]` minus the domain, laid along a linear extension onto
    /// a fresh chain above the images of the rest of `(., a]`.
    fn extend_dom(&mut self, map: &PartialCondensation, a: &Element) -> Result<Extension, StrategyError> {
        let st = self.st.as_ref();
        let ideal = st.principal_ideal(a)?;
        let (inside, fresh): (Vec<Element>, Vec<Element>) = ideal.into_iter().partition(|x| map.in_dom(x));
        let images: Vec<Element> = inside.iter().filter_map(|x| map.image(x).cloned()).collect();
        if images.is_empty() {
            return Err(StrategyError::Precondition(format!("no domain element lies below {a}")));
        }
        let p = st.upper_bound(&images)?;
        let fp = FinitePoset::from_structure(st, fresh)?;
        let order = linear_extension(&fp);
        let chain = st.increasing_chain_above(&p, &|y| map.in_ran(y), order.len())?;
        let added = order
            .into_iter()
            .zip(chain)
            .map(|(i, y)| (fp.elements[i].clone(), y))
            .collect();
        Ok(Extension::pairs(added))
    }

    /// Pairs `b` with the least minimal-layer element outside the domain.
    fn extend_ran(&mut self, map: &PartialCondensation, b: &Element) -> Result<Extension, StrategyError> {
        if map.in_ran(b) {
            return Err(StrategyError::Precondition(format!("{b} is already in the range")));
        }
        let a = self.st.min_layer_search(&|x| !map.in_dom(x))?;
        Ok(Extension::pairs(vec![(a, b.clone())]))
    }
}
