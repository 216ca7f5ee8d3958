mod config;
mod noninduced;
mod recolour;
mod verify;

pub use config::{DerivedParameters, PipelineConfig};
pub use noninduced::{noninduced_removal, NoninducedReport};
pub use recolour::{recolour, replay, survivors_are_dense, Action, Codims, CosetAction, PlanChecks, PlanDoc, RecolouringPlan};
pub use verify::{
    consistency_claim_check, pattern_free_check, verify_colourings, verify_removal, PipelineReport, PlanDiagnostics,
};
