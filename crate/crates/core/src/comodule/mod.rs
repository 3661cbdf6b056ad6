//! The group-ring coalgebra `Z[G]`, coactions on rings and modules, and the
//! recovery of a grading from its coaction.

mod coaction;
mod group_ring;
mod recovery;

pub use coaction::{
    coaction_from_grading, comodule_coaction, grading_from_coaction, module_group_ring,
    verify_coaction_axioms, AxiomFailure, AxiomReport, Coaction, ConsistencyReport, ModuleCoaction,
    RingCoaction,
};
pub use group_ring::{tensor_add, Coefficient, GroupRingElement, GroupRingTensor};
pub use recovery::{
    graded_part_from_coaction, roundtrip_equivalence_check, GradedPart, RoundtripReport,
    RoundtripRow,
};
