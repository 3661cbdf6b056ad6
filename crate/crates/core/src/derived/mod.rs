//! Bounded graded chain complexes, Koszul derived quotients and their
//! degreewise homotopy groups.

mod complex;
mod koszul;
mod ses;
mod torsion;

pub use complex::{homotopy_groups, ChainMap, GradedComplex};
pub use koszul::{
    derived_quotient, derived_quotient_module, koszul_complex, subsets, tensor_complex,
    tensor_with_perfect, Block, KoszulData, TensorComplex,
};
pub use ses::{verify_quotient_ses, verify_quotient_ses_module, SesReport, SesRow};
pub use torsion::{annihilating_power, nonvanishing_indices, products, torsion_exponents};
