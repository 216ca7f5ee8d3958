//! Exact pattern counting: Λ operators, coset consistency, the counting
//! prediction and monochromatic-solution search.

mod colouring;
mod cosets;
mod lambda;
mod mono;

pub use colouring::Colouring;
pub use cosets::{
    coset_consistency, counting_check, counting_prediction, indicator_coset_count, ConsistencyWitness, CountReport,
};
pub use lambda::{lambda_definitional, lambda_forms, pattern_density, pattern_density_by_forms, telescoping_residual, Density};
pub use mono::{first_nonzero_monochromatic, for_each_monochromatic, monochromatic_solutions, MonochromaticSearch};
