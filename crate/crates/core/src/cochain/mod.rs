//! Inhomogeneous cochains, the bar coboundary and the symmetric subcomplex.

mod cohomology;
mod ops;
mod oracle;
mod space;
mod symmetric;

pub use cohomology::{coboundaries, cocycles, cohomology, hstar, CohomologyGroup, Comparison, Variant};
pub use ops::{apply_coboundary, apply_tau, coboundary, is_cocycle, is_symmetric, tau_operator};
pub use oracle::{oracle_cohomology, OracleReport, ORACLE_LIMIT};
pub use space::{Cochain, CochainSpace};
pub use symmetric::{symmetric_subcomplex, symmetric_subcomplex_by_kernels};

#[allow(unused_imports)]
pub(crate) use ops::{action_entries, tau_source};
#[allow(unused_imports)]
pub(crate) use space::{tuple_at, tuple_index};
