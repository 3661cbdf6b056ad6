//! Exact integer linear algebra: Smith normal form, finitely presented
//! abelian groups, homomorphisms, homology and Hom groups.

mod chain;
mod group;
mod hom;
mod homology;
mod matrix;
mod snf;

pub use chain::{block_map, GroupComplex};
pub use group::{AbMap, FpAbGroup, Presentation};
pub use hom::{hom_group, HomGroup};
pub use homology::{
    homology, integer_kernel, is_exact_at, lattice_basis, LatticeSolver, Subquotient,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};

/// `Z^rows / (column span of a)` in canonical form.
pub fn cokernel(a: &IntMatrix) -> FpAbGroup {
    FpAbGroup::from_relations(a.clone())
}
