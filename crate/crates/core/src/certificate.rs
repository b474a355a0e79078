//! The JSON transcript of a run: seed, every extension step, the final
//! map, a bad witness and coverage counters.

use serde::{Deserialize, Serialize};

use crate::condensation::{BadWitness, Pair};
use crate::element::Element;
use crate::order::Structure;
use crate::structures::RandomPosetDump;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Invariant {
    #[serde(rename = "none")]
    None,
    #[serde(rename = "open-domain")]
    OpenDomain,
    #[serde(rename = "open-domain+bounded-field")]
    OpenDomainBoundedField,
    #[serde(rename = "convex+bounded-field")]
    ConvexBoundedField,
}

impl Invariant {
    pub fn name(&self) -> &'static str {
        match self {
            Invariant::None => "none",
            Invariant::OpenDomain => "open-domain",
            Invariant::OpenDomainBoundedField => "open-domain+bounded-field",
            Invariant::ConvexBoundedField => "convex+bounded-field",
        }
    }

    pub fn open_domain(&self) -> bool {
        matches!(self, Invariant::OpenDomain | Invariant::OpenDomainBoundedField)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Dom,
    Ran,
}

impl StepKind {
    pub fn name(&self) -> &'static str {
        match self {
            StepKind::Dom => "dom",
            StepKind::Ran => "ran",
        }
    }
}

/// Lower bound `p` and upper bound `q` enclosing the field of the map.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsRecord {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<String>,
}

/// How a domain extension was glued on: the embedding used, its shift or
/// multiplier, and for plane constructions the case and the number of
/// explicit domain points in force.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Glue {
    pub embedding: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub case: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub shift: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub anchors: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepRecord {
    pub kind: StepKind,
    pub target: String,
    pub added: Vec<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bounds: Option<BoundsRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub glue: Option<Glue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessRecord {
    pub x1: String,
    pub x2: String,
    pub y1: String,
    pub y2: String,
}

impl From<&BadWitness> for WitnessRecord {
    fn from(w: &BadWitness) -> Self {
        WitnessRecord {
            x1: w.x1.to_string(),
            x2: w.x2.to_string(),
            y1: w.y1.to_string(),
            y2: w.y2.to_string(),
        }
    }
}

/// Lengths of the longest enumeration prefixes inside the domain and the
/// range.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coverage {
    pub dom_prefix: u64,
    pub ran_prefix: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub structure: String,
    pub strategy: String,
    pub invariant: Invariant,
    pub seed: Vec<[String; 2]>,
    pub steps: Vec<StepRecord>,
    #[serde(rename = "final")]
    pub final_map: Vec<[String; 2]>,
    pub bad_witness: WitnessRecord,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bounds: Option<BoundsRecord>,
    pub coverage: Coverage,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub random_poset: Option<RandomPosetDump>,
}

pub fn encode_pairs(pairs: &[Pair]) -> Vec<[String; 2]> {
    pairs.iter().map(|(x, y)| [x.to_string(), y.to_string()]).collect()
}

pub fn decode_pairs(st: &dyn Structure, pairs: &[[String; 2]]) -> Result<Vec<Pair>, crate::error::ParseError> {
    pairs
        .iter()
        .map(|[x, y]| Ok((st.parse(x)?, st.parse(y)?)))
        .collect()
}

pub fn bounds_record(p: Option<&Element>, q: Option<&Element>) -> BoundsRecord {
    BoundsRecord {
        p: p.map(|e| e.to_string()),
        q: q.map(|e| e.to_string()),
    }
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}
