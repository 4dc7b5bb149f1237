//! Validation findings. Validators return every violation they find rather
//! than stopping at the first one.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagnosticKind {
    DuplicateName,
    DanglingEndpoint,
    TypeMismatch,
    NotIndependencePreserving,
    Diamond,
    Equivariance,
    Nondeterminism,
    UnknownName,
    /// Morphism condition 1: the initial state is not sent to the initial state.
    InitialState,
    /// Morphism condition 2: a transition is not carried to a transition.
    Transition,
    /// Morphism condition 3: an independent pair is not carried to an independent pair.
    Independence,
    /// A target transition out of `σ(s)` with no matching source transition.
    Polygonal,
}

impl DiagnosticKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticKind::DuplicateName => "duplicate name",
            DiagnosticKind::DanglingEndpoint => "dangling endpoint",
            DiagnosticKind::TypeMismatch => "type mismatch",
            DiagnosticKind::NotIndependencePreserving => "not independence preserving",
            DiagnosticKind::Diamond => "diamond violation",
            DiagnosticKind::Equivariance => "equivariance violation",
            DiagnosticKind::Nondeterminism => "nondeterminism",
            DiagnosticKind::UnknownName => "unknown name",
            DiagnosticKind::InitialState => "condition 1 (initial state)",
            DiagnosticKind::Transition => "condition 2 (transitions)",
            DiagnosticKind::Independence => "condition 3 (independence)",
            DiagnosticKind::Polygonal => "polygonal criterion",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub detail: String,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, detail: impl Into<String>) -> Self {
        Diagnostic {
            kind,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.as_str(), self.detail)
    }
}
