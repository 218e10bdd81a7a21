//! Exact integer computation of decategorified bordered sutured invariants
//! of open-closed cobordisms: state spaces built from `H1(F, S+)`, their
//! bimodule structure over `Z[E]/(E^2)`, and verified gluing isomorphisms.

pub mod error;
pub mod exterior;
pub mod gluing;
pub mod grading;
pub mod homology;
pub mod laurent;
pub mod linalg;
pub mod random;
pub mod statespace;
pub mod superalg;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};
pub use grading::{Grading, ParityParams, ParityRule, Rational, ShiftParams};
pub use surface::{BoundaryArc, BoundaryCircle, Component, CountVector, SPlusId, SuturedSurface};
pub use laurent::LaurentPoly;
