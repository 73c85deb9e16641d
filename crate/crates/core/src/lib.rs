//! Ordinary and symmetric cohomology of finite groups.

pub mod abelian;
pub mod cochain;
pub mod error;
pub mod extension;
pub mod functorial;
pub mod group;
pub mod io;
pub mod linalg;
pub mod presets;
pub mod profinite;
pub mod scalar;

pub use abelian::{AbHom, FgAbelianGroup, SubgroupPresentation};
pub use error::{Error, Result};
pub use group::{CompatiblePair, FiniteGroup, GModule, GroupHom};

/// Arbitrary-precision integer used for all group elements and matrices.
pub type Int = num_bigint::BigInt;
