//! Exact-arithmetic verification of tautological-ring and Chow–Künneth
//! projector identities in finite cohomology models of Fano threefolds,
//! abelian surfaces, and curves.
//!
//! Everything is computed over Q with no tolerances: models are finite
//! graded bases with explicit cup products, correspondences are classes on
//! product spaces, and every identity is checked by literal equality.

pub mod checks;
pub mod corresp;
pub mod dsl;
pub mod linalg;
pub mod model;
pub mod motive;
pub mod rat;
pub mod report;
pub mod scenario;
pub mod taut;
