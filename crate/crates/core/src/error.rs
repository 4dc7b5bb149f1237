use thiserror::Error;

use crate::diagnostics::Diagnostic;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate name `{0}`")]
    DuplicateEvent(String),
    #[error("reserved or empty name `{0}`")]
    ReservedName(String),
    #[error("reflexive independence pair ({0},{0})")]
    ReflexivePair(String),
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("operands live over different monoids")]
    MonoidMismatch,
    #[error("not a homomorphism: ({a},{b}) is independent but its image is not")]
    InvalidHom { a: String, b: String },
    #[error("homomorphism is not independence preserving at ({a},{b})")]
    NotIndependencePreserving { a: String, b: String },
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("morphisms are not parallel")]
    NotParallel,
    #[error("malformed diagram: {}", join(.0))]
    MalformedDiagram(Vec<Diagnostic>),
    #[error("not a monoid: {0}")]
    NotAMonoid(String),
    #[error("invalid state space: {}", join(.0))]
    InvalidSpace(Vec<Diagnostic>),
    #[error("invalid system: {}", join(.0))]
    InvalidSystem(Vec<Diagnostic>),
    #[error("not a morphism: {}", join(.0))]
    NotAMorphism(Vec<Diagnostic>),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("no mediating morphism: {0}")]
    NoFactorization(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DuplicateEvent(_) => "duplicate_name",
            Error::ReservedName(_) => "reserved_name",
            Error::ReflexivePair(_) => "reflexive_pair",
            Error::UnknownEvent(_) => "unknown_event",
            Error::UnknownState(_) => "unknown_state",
            Error::MonoidMismatch => "monoid_mismatch",
            Error::InvalidHom { .. } => "invalid_hom",
            Error::NotIndependencePreserving { .. } => "not_independence_preserving",
            Error::MalformedRelation(_) => "malformed_relation",
            Error::NotParallel => "not_parallel",
            Error::MalformedDiagram(_) => "malformed_diagram",
            Error::NotAMonoid(_) => "not_a_monoid",
            Error::InvalidSpace(_) => "invalid_space",
            Error::InvalidSystem(_) => "invalid_system",
            Error::NotAMorphism(_) => "not_a_morphism",
            Error::SizeLimit(_) => "size_limit",
            Error::NoFactorization(_) => "no_factorization",
        }
    }
}

fn join(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
