//! Graded polynomial rings over `Z`, finitely presented graded modules and
//! their degreewise realization.
//!
//! Every graded object is infinite; anything touching a total space takes an
//! explicit weight bound.

mod day;
mod fiber;
mod map;
mod module;
mod retract;
mod ring;

pub use day::{
    day_tensor_piece, day_tensor_total, decomposition_set, forgetful_tensor, GradedGroup,
};
pub use fiber::{
    graded_hom, graded_hom_fiber_check, graded_map_from_coefficients, FiberReport, GradedHom,
};
pub use map::GradedMap;
pub use module::{
    ideal_power_generators, module_piece, shift, GradedModule, ModuleElement, ModulePiece, Relation,
};
pub use retract::{retract_degreewise, retract_map, UngradedMap};
pub use ring::{decompose, ring_piece, GradedRing, RingPiece};
