//! Seeds: the bad partial condensation a run starts from, either built
//! from least-index choices or given by name.

use std::collections::BTreeMap;

use crate::condensation::{find_bad_witness, verify_partial_condensation, Pair};
use crate::element::Element;
use crate::error::StrategyError;
use crate::order::{down_closure, Structure};

/// Named element choices. The seed is `{r->r, a0->b0, a1->b1}` with `r`
/// optional and `b1` defaulting to `a0`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeedSpec {
    pub choices: BTreeMap<String, String>,
}

pub const SEED_ROLES: &[&str] = &["r", "a0", "a1", "b0", "b1"];

impl SeedSpec {
    /// Parses `r=1;a0=2;a1=3;b0=4`. `default` and the empty string give no
    /// overrides.
    pub fn parse(s: &str) -> Result<Self, StrategyError> {
        let mut choices = BTreeMap::new();
        let s = s.trim();
        if s.is_empty() || s == "default" {
            return Ok(SeedSpec { choices });
        }
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| StrategyError::InvalidSeed(format!("`{part}` is not of the form role=element")))?;
            let k = k.trim();
            if !SEED_ROLES.contains(&k) {
                return Err(StrategyError::InvalidSeed(format!("unknown role `{k}`")));
            }
            if choices.insert(k.to_string(), v.trim().to_string()).is_some() {
                return Err(StrategyError::InvalidSeed(format!("role `{k}` given twice")));
            }
        }
        Ok(SeedSpec { choices })
    }

    pub fn is_default(&self) -> bool {
        self.choices.is_empty()
    }
}

/// Resolved roles of a seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedRoles {
    pub r: Option<Element>,
    pub a0: Element,
    pub a1: Element,
    pub b0: Element,
    pub b1: Option<Element>,
}

impl SeedRoles {
    pub fn pairs(&self) -> Vec<Pair> {
        let mut out = Vec::with_capacity(3);
        if let Some(r) = &self.r {
            out.push((r.clone(), r.clone()));
        }
        out.push((self.a0.clone(), self.b0.clone()));
        out.push((self.a1.clone(), self.b1.clone().unwrap_or_else(|| self.a0.clone())));
        out
    }

    /// Replaces the roles named in `spec`, parsing in `st`.
    pub fn with_overrides(mut self, st: &dyn Structure, spec: &SeedSpec) -> Result<Self, StrategyError> {
        let parse = |k: &str| -> Result<Option<Element>, StrategyError> {
            match spec.choices.get(k) {
                None => Ok(None),
                Some(v) => Ok(Some(st.parse(v).map_err(|e| StrategyError::InvalidSeed(e.to_string()))?)),
            }
        };
        if let Some(r) = parse("r")? {
            self.r = Some(r);
        }
        if let Some(x) = parse("a0")? {
            self.a0 = x;
        }
        if let Some(x) = parse("a1")? {
            self.a1 = x;
        }
        if let Some(x) = parse("b0")? {
            self.b0 = x;
        }
        if let Some(x) = parse("b1")? {
            self.b1 = Some(x);
        }
        Ok(self)
    }
}

const SUCCESSOR_BUDGET: u64 = 512;

/// `r` the root, `a0, a1` the first two minimal-layer elements, `b0` the
/// least immediate successor of `a0`.
pub fn rooted_roles(st: &dyn Structure) -> Result<SeedRoles, StrategyError> {
    let r = st.root();
    let a0 = st.min_layer(0)?;
    let a1 = st.min_layer(1)?;
    let succ = st.immediate_successors(&a0, SUCCESSOR_BUDGET)?;
    let b0 = succ
        .items
        .into_iter()
        .next()
        .ok_or_else(|| StrategyError::InvalidSeed(format!("no immediate successor of {a0} found")))?;
    Ok(SeedRoles { r, a0, a1, b0, b1: None })
}

/// Checks a seed: members, partial condensation, bad, and for open-domain
/// strategies a downward closed domain with the root fixed.
pub fn validate_seed(st: &dyn Structure, seed: &[Pair], open_domain: bool) -> Result<(), StrategyError> {
    verify_partial_condensation(st, seed).map_err(|v| StrategyError::InvalidSeed(v.to_string()))?;
    if find_bad_witness(st, seed).is_none() {
        return Err(StrategyError::InvalidSeed("the seed is a partial isomorphism".into()));
    }
    if open_domain {
        let dom: Vec<Element> = seed.iter().map(|p| p.0.clone()).collect();
        let closure = down_closure(st, &dom)?;
        if closure.len() != dom.len() {
            let missing: Vec<String> = closure
                .iter()
                .filter(|x| !dom.contains(x))
                .map(|x| x.to_string())
                .collect();
            return Err(StrategyError::InvalidSeed(format!(
                "domain is not downward closed; missing {}",
                missing.join(", ")
            )));
        }
        if let Some(r) = st.root() {
            if !seed.iter().any(|(x, y)| *x == r && *y == r) {
                return Err(StrategyError::InvalidSeed(format!("the root {r} must be mapped to itself")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{Divisibility, FiniteSets};

    #[test]
    fn parses_role_lists() {
        let s = SeedSpec::parse("r=1; a0=2;a1=3;b0=4").unwrap();
        assert_eq!(s.choices.len(), 4);
        assert!(SeedSpec::parse("default").unwrap().is_default());
        assert!(SeedSpec::parse("z=1").is_err());
        assert!(SeedSpec::parse("a0").is_err());
        assert!(SeedSpec::parse("a0=1;a0=2").is_err());
    }

    #[test]
    fn default_roles() {
        let d = Divisibility;
        let roles = rooted_roles(&d).unwrap();
        let shown: Vec<String> = roles.pairs().iter().map(|(x, y)| format!("{x}->{y}")).collect();
        assert_eq!(shown, ["1->1", "2->4", "3->2"]);
        validate_seed(&d, &roles.pairs(), true).unwrap();
        let f = FiniteSets::all();
        let shown: Vec<String> =
            rooted_roles(&f).unwrap().pairs().iter().map(|(x, y)| format!("{x}->{y}")).collect();
        assert_eq!(shown, ["{}->{}", "{0}->{0,1}", "{1}->{0}"]);
    }

    #[test]
    fn invalid_overrides_are_rejected() {
        let d = Divisibility;
        let roles = rooted_roles(&d).unwrap();
        let other_b0 = roles.clone().with_overrides(&d, &SeedSpec::parse("b0=6").unwrap()).unwrap();
        assert!(validate_seed(&d, &other_b0.pairs(), true).is_ok());
        let not_closed = roles.clone().with_overrides(&d, &SeedSpec::parse("a0=4;b0=8").unwrap()).unwrap();
        assert!(validate_seed(&d, &not_closed.pairs(), true).is_err());
        let iso = roles.with_overrides(&d, &SeedSpec::parse("b0=2;b1=3").unwrap()).unwrap();
        assert!(validate_seed(&d, &iso.pairs(), true).is_err());
    }
}
