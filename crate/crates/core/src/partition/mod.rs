//! Domain-wall partition functions: the permanent definition, the N×N
//! determinant representation, and the Cauchy-matrix identities behind it.

mod coefficients;
mod identities;
mod matrices;
pub mod multiset;
mod system;
mod values;

pub use coefficients::{multiset_sum, structure_coefficients, StructureCoefficients};
pub use identities::{
    borchardt_check, boson_sum_determinant, BorchardtReport, BosonReport, MAX_BOSON_RAPIDITIES,
};
pub use matrices::{
    build_j_boson, build_j_higher, build_j_limit, build_j_spin_half, cauchy_matrix, repeated_cauchy_matrix,
};
pub use multiset::{multiset_count, Multisets, Subsets};
pub use system::SpinSystem;
pub use values::{z_determinant, z_permanent, Method, PartitionValue, MAX_PERMANENT_OMEGA};
