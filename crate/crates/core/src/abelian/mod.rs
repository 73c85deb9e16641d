//! Finitely generated abelian groups, their homomorphisms and subgroups.

mod colimit;
mod group;
mod hom;
mod subgroup;

pub use colimit::{directed_colimit, ColimitLevel, ColimitReport, ColimitStatus, DEFAULT_WINDOW};
pub use group::FgAbelianGroup;
pub use hom::AbHom;
pub use subgroup::{image, intersect, kernel, quotient, solve, Quotient, Solver, SubgroupPresentation};
