//! Characters, coset-restricted Fourier transforms and uniformity.

mod function;
mod transform;

pub use function::{BoundedFunction, ExactFunction};
pub use transform::{
    char_value, coset_spectrum, inheritance_check, partition_report, partition_report_within, uniformity,
    CosetRegularity, CosetSpectrum, InheritanceReport, PartitionReport, UniformityReport, TOLERANCE,
};

pub(crate) use transform::Frame;
