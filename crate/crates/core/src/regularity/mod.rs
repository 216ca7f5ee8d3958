//! Regularity partitions by energy increment and the subcoset selections
//! built on them.

mod arl;
mod multi;
mod two_level;

pub use arl::{arl, arl_within, RefinementStep, RegularPartition};
pub use multi::{multi_subcoset_select, validate_selection, MultiSubcosetSelection, SelectionValidation};
pub use two_level::{
    measure_two_level, two_level_select, validate_two_level, SelectOptions, TwoLevelSelection, TwoLevelValidation,
};
