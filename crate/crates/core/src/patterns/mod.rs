//! Linear systems, arithmetic patterns and partition regularity.

mod pattern;
mod rado;
mod system;

pub use pattern::{
    combine_patterns, is_instance, is_partition_regular, ColouringFamily, JointBlock, Pattern, PatternDoc, MAX_FAMILY,
};
pub use rado::{check_column_conditions, RadoCertificate, SEARCH_LIMIT};
pub use system::{
    apply_matrix, complexity_is_one, kernel_tuple_generators, values_kernel_duality_check, Complexity, LinearSystem,
};

pub(crate) use system::unit;
