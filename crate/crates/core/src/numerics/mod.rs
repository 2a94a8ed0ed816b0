//! Scalar tower and dense kernels shared by everything else.
//!
//! All routines are generic over [`Scalar`]: `BigRational` gives exact,
//! canonical results (identities are checked with `==`), `Complex64` is
//! the fast path.

pub mod determinant;
mod matrix;
mod permanent;
mod scalar;

pub use determinant::{determinant, solve_linear};
pub use matrix::SquareMatrix;
pub use permanent::{permanent, MAX_PERMANENT_DIM};
pub use scalar::{Mode, Scalar, Value, FLOAT_REL_TOL};

pub use num_complex::Complex64;
pub use num_rational::BigRational;
