//! Computable finite geometry for the linearity question on small minimal
//! k-blocking sets: GF(q) arithmetic, PG(n,q), Desarguesian spreads and
//! field reduction, linear sets, blocking-set predicates, the transversal
//! reconstruction of an F_{p0}-linear structure, and an instance-level
//! bound-checking harness.

pub mod blockingset;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod field;
pub mod fieldreduction;
pub mod harness;
pub mod io;
pub mod linearset;
pub mod matrix;
pub mod projspace;
pub mod reconstruct;

pub use error::{Error, Result};
pub use field::{Field, FieldElement, Subfield};
pub use fieldreduction::SpreadContext;
pub use projspace::{gaussian_binomial, PointSet, ProjPoint, ProjSpace, Subspace};
