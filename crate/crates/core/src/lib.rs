//! Finite frames built from polytopes inscribed in the unit sphere.
//!
//! The crate constructs four polytope families (simplices, cyclic
//! quadrilaterals, square pyramids, triangular bipyramids), assembles vertex,
//! edge, and facet-normal frames from them, and checks a catalog of volume
//! inequalities relating frame-operator determinants to partition volumes.
//! Searches locate the parameters where each family's frame becomes tight.

pub mod builders;
pub mod combinatorics;
pub mod error;
pub mod frame;
pub mod geometry;
pub mod inequality;
pub mod linalg;
pub mod polytope;
pub mod report;
pub mod search;
pub mod tolerances;
pub mod zform;

pub use error::{Error, Result};
