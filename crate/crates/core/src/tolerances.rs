//! Numeric tolerances shared across the crate.
//!
//! Inequality slacks are relative to |rhs|; everything here assumes the O(1)
//! magnitudes that unit-sphere constructions produce.

/// Constructions reject polytopes and simplices with volume below this.
pub const DEGENERACY_EPS: f64 = 1e-12;

/// Default slack for "the inequality holds", relative to |rhs|.
pub const HOLDS_REL_TOL: f64 = 1e-9;

/// Default window for equality detection, relative to |rhs|.
pub const EQUALITY_REL_TOL: f64 = 1e-7;

/// Orthogonality and unit-normalization checks.
pub const ORTHO_TOL: f64 = 1e-12;

/// Partition cell volumes must sum to the polytope volume within this (relative).
pub const PARTITION_REL_TOL: f64 = 1e-9;

/// Edge-determinant vs quadratic-form cross-check (relative).
pub const ZFORM_REL_TOL: f64 = 1e-8;

/// Normal-vector identity suite (relative).
pub const IDENTITY_REL_TOL: f64 = 1e-8;

/// Jacobi stops once the off-diagonal Frobenius norm is at or below this.
pub const JACOBI_OFF_EPS: f64 = 1e-13;

/// A frame operator within this relative Frobenius distance of c*I counts as tight.
pub const TIGHT_TOL: f64 = 1e-9;

/// Rejection-sampling attempts before giving up.
pub const RESAMPLE_BUDGET: usize = 10_000;

/// Guard on the number of subsets a Cauchy-Binet style enumeration may visit.
pub const SUBSET_GUARD: u128 = 1_000_000;
