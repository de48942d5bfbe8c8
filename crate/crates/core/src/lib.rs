//! Gorenstein-projective modules and Cohen-Macaulay Auslander algebras of
//! string algebras, with an exact-arithmetic oracle for cross-checking.

pub mod cma;
pub mod error;
pub mod export;
pub mod fixtures;
pub mod gentle;
pub mod gproj;
pub mod linalg;
pub mod oracle;
pub mod quiver;
pub mod rep;
pub mod strings;

pub use error::{Error, Result};
pub use quiver::{Path, Presentation, Quiver, Relation, VertexKind};
pub use rep::Representation;
