//! Extension on locally finite posets that embed every principal ideal
//! above any point, keeping the domain downward closed and the whole field
//! below a recorded bound.

use crate::certificate::{Glue, Invariant};
use crate::condensation::{Pair, PartialCondensation};
use crate::element::Element;
use crate::engine::{Extension, Strategy};
use crate::error::StrategyError;
use crate::order::Structure;

pub struct RootedDirected {
    st: Box<dyn Structure>,
    seed: Vec<Pair>,
    bound: Element,
    embedding: &'static str,
}

fn embedding_name(id: &str) -> &'static str {
    match id {
        "divisibility" => "multiply",
        "finite-sets" => "shift-union",
        "fin-support" => "pointwise-add",
        "half-plane" => "diagonal-translation",
        _ => "embed-above",
    }
}

impl RootedDirected {
    pub fn new(st: Box<dyn Structure>, seed: Vec<Pair>) -> Result<Self, StrategyError> {
        let field: Vec<Element> = seed.iter().flat_map(|(x, y)| [x.clone(), y.clone()]).collect();
        let bound = st.upper_bound(&field)?;
        let embedding = embedding_name(&st.id());
        Ok(RootedDirected { st, seed, bound, embedding })
    }
}

impl Strategy for RootedDirected {
    fn id(&self) -> &'static str {
        "rooted-directed"
    }

    fn structure(&self) -> &dyn Structure {
        self.st.as_ref()
    }

    fn invariant(&self) -> Invariant {
        Invariant::OpenDomainBoundedField
    }

    fn seed(&self) -> Vec<Pair> {
        self.seed.clone()
    }

    fn bounds(&self) -> Option<(Option<Element>, Option<Element>)> {
        Some((None, Some(self.bound.clone())))
    }

    /// Embeds `(., a]` above a point strictly over the bound and keeps the
    /// part outside the domain.
    fn extend_dom(&mut self, map: &PartialCondensation, a: &Element) -> Result<Extension, StrategyError> {
        let st = self.st.as_ref();
        let p = st.strict_upper_bound(std::slice::from_ref(&self.bound))?;
        let eta = st.embed_ideal_above(a, &p)?;
        let image_of_a = eta
            .iter()
            .find(|(x, _)| x == a)
            .map(|(_, y)| y.clone())
            .ok_or_else(|| StrategyError::Precondition(format!("embedding of (., {a}] misses {a}")))?;
        let added: Vec<Pair> = eta.into_iter().filter(|(x, _)| !map.in_dom(x)).collect();
        self.bound = st.strict_upper_bound(&[a.clone(), image_of_a, self.bound.clone()])?;
        Ok(Extension {
            added,
            glue: Some(Glue {
                embedding: self.embedding.into(),
                case: None,
                shift: Some(p.to_string()),
                anchors: None,
            }),
        })
    }

    /// Pairs `b` with a minimal-layer element outside the domain and not
    /// below the bound.
    fn extend_ran(&mut self, map: &PartialCondensation, b: &Element) -> Result<Extension, StrategyError> {
        if map.in_ran(b) {
            return Err(StrategyError::Precondition(format!("{b} is already in the range")));
        }
        let st = self.st.as_ref();
        let bound = self.bound.clone();
        let a = st.min_layer_search(&|x| !map.in_dom(x) && !st.leq(x, &bound))?;
        self.bound = st.upper_bound(&[self.bound.clone(), a.clone(), b.clone()])?;
        Ok(Extension::pairs(vec![(a, b.clone())]))
    }
}
