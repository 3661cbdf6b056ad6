//! Exact computations for graded commutative algebra over the integers:
//! graded pieces, derived quotients, towers and completions at finite
//! precision, and the group-ring coaction picture of a grading.

pub mod abelian;
pub mod comodule;
pub mod completion;
pub mod derived;
pub mod error;
pub mod graded_algebra;
pub mod grading;
pub mod poly;

pub use abelian::{AbMap, FpAbGroup, IntMatrix};
pub use error::{Error, Result};
pub use graded_algebra::{GradedMap, GradedModule, GradedRing, ModuleElement};
pub use grading::{Degree, GradingSignature};
pub use poly::{Monomial, Polynomial};
