//! The extension strategies, their seeds, and the transfer constructions.

pub mod convex;
pub mod lift;
pub mod rooted;
pub mod seed;
pub mod universal;
pub mod well_founded;

use crate::certificate::Certificate;
use crate::element::Element;
use crate::engine::{run_generic, Strategy};
use crate::error::StrategyError;
use crate::structures::{compatible_strategies, structure_by_id, Plane};

pub use convex::Convex;
pub use lift::{product_lift, subset_lift, LiftReport, Residue};
pub use rooted::RootedDirected;
pub use seed::{SeedRoles, SeedSpec};
pub use universal::Universal;
pub use well_founded::WellFounded;

/// Strategies driven by [`run_generic`].
pub const STRATEGY_IDS: &[&str] = &["well-founded", "rooted-directed", "convex", "universal"];

/// Constructions that transport an existing certificate.
pub const LIFT_IDS: &[&str] = &["product-lift", "subset-lift"];

/// Seed roles for the half-plane, which has no root: `(0,0) -> (0,1)` and
/// `(1,-1) -> (0,0)`.
fn half_plane_roles() -> SeedRoles {
    SeedRoles {
        r: None,
        a0: Element::Pair(0, 0),
        a1: Element::Pair(1, -1),
        b0: Element::Pair(0, 1),
        b1: None,
    }
}

/// Builds a strategy with its default seed, or with the roles in `spec`
/// replaced. Overridden seeds are validated and never repaired.
pub fn build_strategy(
    structure: &str,
    strategy: &str,
    spec: Option<&SeedSpec>,
) -> Result<Box<dyn Strategy>, StrategyError> {
    if !STRATEGY_IDS.contains(&strategy) {
        return Err(if LIFT_IDS.contains(&strategy) {
            StrategyError::Precondition(format!("{strategy} transports an existing certificate; use the lift operation"))
        } else {
            StrategyError::UnknownStrategy(strategy.into())
        });
    }
    let st = structure_by_id(structure)?;
    if !compatible_strategies(&st.id()).contains(&strategy) {
        return Err(StrategyError::Incompatible { structure: st.id(), strategy: strategy.into() });
    }
    let empty = SeedSpec::default();
    let spec = spec.unwrap_or(&empty);
    Ok(match strategy {
        "well-founded" | "rooted-directed" => {
            let roles = if st.id() == "half-plane" { half_plane_roles() } else { seed::rooted_roles(st.as_ref())? };
            let pairs = roles.with_overrides(st.as_ref(), spec)?.pairs();
            seed::validate_seed(st.as_ref(), &pairs, true)?;
            if strategy == "well-founded" {
                Box::new(WellFounded::new(st, pairs))
            } else {
                Box::new(RootedDirected::new(st, pairs)?)
            }
        }
        "convex" => {
            let plane = if st.id() == "qxq" { Plane::rational() } else { Plane::integer() };
            let (a0, a1, b0) = convex::default_plane_seed(&plane)?;
            let roles = SeedRoles { r: None, a0, a1, b0, b1: None }.with_overrides(&plane, spec)?;
            let pairs = roles.pairs();
            seed::validate_seed(&plane, &pairs, false)?;
            convex::check_seed_convex(&plane, &pairs)?;
            Box::new(Convex::new(plane, pairs))
        }
        _ => {
            let state = universal::pregrown_state();
            let mut pairs = Universal::default_seed();
            if !spec.is_default() {
                let poset = crate::structures::RandomPoset::new(state.clone());
                let roles = SeedRoles {
                    r: None,
                    a0: pairs[0].0.clone(),
                    a1: pairs[1].0.clone(),
                    b0: pairs[0].1.clone(),
                    b1: Some(pairs[1].1.clone()),
                };
                pairs = roles.with_overrides(&poset, spec)?.pairs();
                seed::validate_seed(&poset, &pairs, false)?;
            }
            Box::new(Universal::new(state, pairs))
        }
    })
}

/// Builds the strategy and runs `n_targets` alternating steps.
pub fn run(structure: &str, strategy: &str, n_targets: usize, spec: Option<&SeedSpec>) -> Result<Certificate, StrategyError> {
    let mut s = build_strategy(structure, strategy, spec)?;
    run_generic(s.as_mut(), n_targets)
}
