//! Geometric types of pseudo-Anosov homeomorphisms: validation, the symbolic
//! shift they induce, boundary codes and the refinement operations.

pub mod boundary;
pub mod corpus;
pub mod error;
pub mod examples;
pub mod oracle;
pub mod refine;
pub mod render;
pub mod report;
pub mod shift;
pub mod text;
pub mod types;

pub use error::{Error, Result};
pub use shift::{CodeOrbit, EventuallyPeriodicCode, IncidenceMatrix, PeriodicCode};
pub use types::{GeometricType, HLabel, Image, Sign, TypeData, VLabel};
