//! Trace monoids, basic homomorphisms and the categories FPCM / FPCM^‖,
//! state spaces (pointed sets with a trace-monoid action) and weak
//! asynchronous systems, with their finite limits and colimits.

pub mod diagnostics;
pub mod diagram;
pub mod error;
pub mod fpcm;
pub mod hom;
pub mod space;
pub mod sample;
pub mod system;
pub mod verify;
pub mod trace;
mod util;

pub use diagnostics::{Diagnostic, DiagnosticKind};
pub use diagram::{ArrowSpec, Diagram, DiagramArrow, Shape};
pub use error::{Error, Result};
pub use fpcm::{CategoryFlag, MonoidCocone, MonoidCone, MonoidDiagram};
pub use hom::BasicHom;
pub use trace::{EventId, Trace, TraceMonoid, STAR};
pub use space::{SpaceMorphism, StateId, StateSpace};
pub use system::{SystemClass, SystemMorphism, WeakAsyncSystem};
