//! Finite groups, their homomorphisms and modules.

mod finite;
mod hom;
mod module;

pub use finite::{direct_product, FiniteGroup, Product};
pub use hom::GroupHom;
pub use module::{ActionSpec, CompatiblePair, FixedPoints, GModule, QuotientModule};
