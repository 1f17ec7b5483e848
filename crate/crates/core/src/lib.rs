//! Exact tools for bivariate polynomial interpolation on finite planar node
//! sets: dimension counting for polynomial spaces, fraction-free rational
//! linear algebra, fundamental polynomials, detection of maximal lines and
//! maximal curves, node-set constructions (principal lattices, intersection
//! lattices of lines in general position, two-curve unions), and a verifier
//! layer that re-derives every claimed count from scratch and reports
//! pass/fail evidence.
//!
//! All arithmetic is exact over the rationals. There is no floating-point
//! fallback anywhere; every verdict is a certificate about the given
//! rational configuration.

pub mod analysis;
pub mod combinatorics;
pub mod constructions;
pub mod linalg;
pub mod poly;
pub mod rat;
pub mod render;
pub mod verify;

pub use rat::Rat;
