//! Exact computations with quadratic algebras defined by R-matrices.
//!
//! An n²×n² solution R of the quantum Yang-Baxter equation determines a
//! quadratic algebra on n generators (relations spanned by the image of
//! 1 − R), a second algebra from the image of 1 + R, a Koszul dual via the
//! annihilator of the relation span, and a bigraded algebra on 2n generators
//! carrying two derivations d and δ that behave like a differential and a
//! codifferential. This crate computes all of these degree by degree with
//! exact rational (or Gaussian rational) arithmetic and verifies the
//! structural identities that are checkable in a finite truncation: graded
//! dimensions, normal forms, well-definedness of the calculus, d² = δ² = 0,
//! the degree Laplacian, Koszul complex homology, and the comparison between
//! the Koszul resolution and the differential calculus.
//!
//! All arithmetic is exact; a check passes only when the relevant matrix
//! identity holds on the nose.

pub mod bigraded;
pub mod calculus;
pub mod error;
pub mod exact;
pub mod koszul;
pub mod quadalg;
pub mod rmatrix;
pub mod spec;
pub mod tensor;

pub use error::{Error, Result};

// Re-exported because [`rmatrix::RMatrix::hecke_gl`] and the scalar
// constructors take these types directly.
pub use num_rational;
