//! Towers, their limits, and finite-precision completions.
//!
//! A completion is never materialized as an infinite object: every function
//! returns a stage tower together with per-degree certificates (stabilized,
//! surjective, undetermined) so that callers can tell computed values from
//! approximations.

mod adic;
mod milnor;
mod proiso;
mod telescope;
mod tower;

pub use adic::{
    completed_tensor, derived_completion, derived_completion_module, derived_idempotence,
    gradedwise_completion, gradedwise_idempotence, iterated_vs_joint, koszul_transition,
    tensor_chain_map, CompletionApproximation, CompletionKind, InvariantReport,
};
pub use milnor::{milnor_check, MilnorReport, MilnorRow};
pub use proiso::{pro_isomorphism_check, ProIsoReport};
pub use telescope::{
    action_on_homotopy, derived_nakayama_check, is_derived_gradedwise_complete, telescope,
    Completeness, CompletenessReport, NakayamaReport, TelescopeVerdict, VanishReason,
};
pub use tower::{
    tower_limits, AbTower, ComplexTower, DegreeLimit, Lim1Status, LimitStatus, ModuleTower,
};
