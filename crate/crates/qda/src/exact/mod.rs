//! Exact linear algebra over the rationals and Gaussian rationals.
//!
//! Everything downstream reduces to the primitives here: [`Scalar`] wraps the
//! two coefficient fields, [`SparseVec`] is the row representation, and
//! [`RowBasis`] maintains canonical reduced echelon bases by fraction-free
//! elimination. [`Matrix`] is the dense view used for R-matrix grids and for
//! the public rref/kernel entry points.

mod matrix;
mod scalar;
mod sparse;

pub use matrix::{span_intersection, span_sum, Matrix};
pub use scalar::{Mode, Scalar};
pub use sparse::{RowBasis, SparseVec};
