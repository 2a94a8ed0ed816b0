//! Domain-wall boundary partition functions of rational Richardson-Gaudin
//! models with one spin of arbitrary length S and N−1 spins ½.
//!
//! The partition function is an Ω×Ω permanent (Ω = 2S + N − 1) of a
//! Cauchy-like matrix in which ε₁ is repeated 2S times. This crate
//! evaluates it both that way and as an N×N determinant written in
//! variables that solve quadratic Bethe equations, and checks the
//! identities connecting the two in exact rational arithmetic.
//!
//! ```
//! use dwpf_core::numerics::{BigRational, Scalar};
//! use dwpf_core::{z_determinant, z_permanent, RapiditySet, SpinSystem};
//!
//! let q = |n: i64| BigRational::from_i64(n);
//! let system = SpinSystem::new(2, vec![q(0), q(1)]).unwrap();
//! let nu = RapiditySet::new(vec![q(2), q(3), q(5)]).unwrap();
//! assert_eq!(z_permanent(&system, &nu).unwrap().value, z_determinant(&system, &nu).unwrap().value);
//! ```

pub mod bethe;
pub mod checks;
pub mod error;
pub mod gamma;
pub mod numerics;
pub mod partition;

pub use error::{Error, Result};
pub use gamma::{
    build_gamma_table, gamma_explicit, gamma_partition_coefficient, gamma_recursive, lambda_derivatives,
    GammaTable, LambdaDerivTable, RapiditySet,
};
pub use numerics::{determinant, permanent, Mode, Scalar, SquareMatrix, Value};
pub use partition::{
    borchardt_check, boson_sum_determinant, build_j_higher, build_j_limit, build_j_spin_half, cauchy_matrix,
    structure_coefficients, z_determinant, z_permanent, Method, PartitionValue, SpinSystem,
    StructureCoefficients,
};
