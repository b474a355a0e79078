//! The concrete countable posets and the table of which extension
//! strategies apply to which of them.

pub mod divisibility;
pub mod finite_sets;
pub mod functions;
pub mod plane;
pub mod product;
pub mod random_poset;

use crate::error::StructureError;
use crate::order::Structure;

pub use divisibility::Divisibility;
pub use finite_sets::{FiniteSets, SizeRule};
pub use functions::Functions;
pub use plane::{HalfPlane, Plane};
pub use product::{Integers, Product};
pub use random_poset::{RandomPoset, RandomPosetDump, RandomPosetState};

/// Structures a run can be started on.
pub const STRUCTURE_IDS: &[&str] = &[
    "divisibility",
    "finite-sets",
    "level-restricted(even)",
    "fn-omega",
    "fin-support",
    "half-plane",
    "zxz",
    "qxq",
    "random-poset",
];

/// Resolves an id. Besides [`STRUCTURE_IDS`] this accepts `int`,
/// `level-restricted(all|even|mult:k)` and `product(a,b)`. The random
/// poset starts empty.
pub fn structure_by_id(id: &str) -> Result<Box<dyn Structure>, StructureError> {
    let unknown = || StructureError::UnknownStructure(id.to_string());
    Ok(match id {
        "divisibility" => Box::new(Divisibility),
        "finite-sets" => Box::new(FiniteSets::all()),
        "fn-omega" => Box::new(Functions::partial()),
        "fin-support" => Box::new(Functions::finitely_supported()),
        "half-plane" => Box::new(HalfPlane),
        "zxz" => Box::new(Plane::integer()),
        "qxq" => Box::new(Plane::rational()),
        "random-poset" => Box::new(RandomPoset::default()),
        "int" => Box::new(Integers),
        _ => {
            if let Some(rule) = id.strip_prefix("level-restricted(").and_then(|r| r.strip_suffix(')')) {
                Box::new(FiniteSets::level_restricted(SizeRule::parse(rule).ok_or_else(unknown)?))
            } else if let Some(args) = id.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
                let (a, b) = split_top_level_comma(args).ok_or_else(unknown)?;
                Box::new(Product::new(structure_by_id(a)?, structure_by_id(b)?))
            } else {
                return Err(unknown());
            }
        }
    })
}

fn split_top_level_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Strategies that run on a structure, including the transfer
/// constructions that target it.
pub fn compatible_strategies(id: &str) -> Vec<&'static str> {
    match id {
        "divisibility" => vec!["well-founded", "rooted-directed", "product-lift"],
        "finite-sets" => vec!["well-founded", "rooted-directed", "subset-lift"],
        "fn-omega" => vec!["well-founded"],
        "fin-support" => vec!["well-founded", "rooted-directed"],
        "half-plane" => vec!["rooted-directed"],
        "zxz" | "qxq" => vec!["convex", "product-lift"],
        "random-poset" => vec!["universal"],
        _ if id.starts_with("level-restricted(") => vec!["well-founded"],
        _ => vec![],
    }
}

/// One line on the non-reversibility result each structure instantiates.
pub fn describe(id: &str) -> &'static str {
    match id {
        "divisibility" => "the divisibility lattice on the positive integers is not reversible",
        "finite-sets" => "finite subsets of a countable set under inclusion are not reversible",
        "level-restricted(even)" => "the suborder of finite sets with sizes in a set containing 0 is not reversible",
        "fn-omega" => "finite partial functions ordered by extension of values are not reversible",
        "fin-support" => "finitely supported functions under the pointwise order are not reversible",
        "half-plane" => "the integer half-plane m + n >= 0 is not reversible (rootless, well founded)",
        "zxz" => "the integer plane is not reversible (convex, bounded, translation homogeneous)",
        "qxq" => "the rational plane is not reversible (convex, bounded, translation homogeneous)",
        "random-poset" => "the random poset is not reversible (one-point extension axioms)",
        _ => "",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_id_resolves_to_itself() {
        for id in STRUCTURE_IDS {
            assert_eq!(structure_by_id(id).unwrap().id(), *id);
            assert!(!describe(id).is_empty());
            assert!(!compatible_strategies(id).is_empty());
        }
        assert_eq!(
            structure_by_id("product(divisibility,int)").unwrap().id(),
            "product(divisibility,int)"
        );
        assert_eq!(structure_by_id("level-restricted(mult:3)").unwrap().id(), "level-restricted(mult:3)");
        assert!(structure_by_id("meager").is_err());
    }
}
