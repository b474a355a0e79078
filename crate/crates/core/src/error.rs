use thiserror::Error;

/// An element encoding that does not parse in the structure it was read in.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse `{input}` as an element of {structure}: {reason}")]
pub struct ParseError {
    pub structure: String,
    pub input: String,
    pub reason: String,
}

impl ParseError {
    pub fn new(structure: impl Into<String>, input: &str, reason: impl Into<String>) -> Self {
        Self {
            structure: structure.into(),
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("{structure} does not provide the {capability} capability")]
    MissingCapability {
        structure: String,
        capability: &'static str,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{element} is not an element of {structure}")]
    NotMember { structure: String, element: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("witness precondition violated: {0}")]
    Precondition(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("unknown structure `{0}`")]
    UnknownStructure(String),
}

impl StructureError {
    pub fn missing(structure: impl Into<String>, capability: &'static str) -> Self {
        Self::MissingCapability {
            structure: structure.into(),
            capability,
        }
    }
}

/// Failures raised while building or running a strategy.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("strategy `{strategy}` is not compatible with structure `{structure}`")]
    Incompatible { structure: String, strategy: String },
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("step {step} ({kind} {target}): {detail}")]
    StepFailed {
        step: usize,
        kind: String,
        target: String,
        detail: String,
    },
}

/// Guard and argument failures of the brute-force oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("size {size} exceeds the limit {limit} of {what}")]
    SizeGuard { what: &'static str, size: usize, limit: usize },
    #[error(transparent)]
    Structure(#[from] StructureError),
}
