//! Exact integer linear algebra, generic over the scalar type.

mod dense;
mod hnf;
mod lattice;
mod snf;
mod sparse;

pub use dense::Matrix;
pub use hnf::{hermite_form_only, hermite_normal_form, Hermite};
pub use lattice::{kernel_generators, EchelonBasis};
pub use snf::{smith_diagonal, smith_modular, smith_normal_form, Smith};
pub use sparse::{SparseMatrix, SparseRow};
