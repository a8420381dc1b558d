//! Computational workbench for the mod-2 cohomology of Sylow 2-subgroups of symmetric
//! and alternating groups.
//!
//! - [`f2`]: dense linear algebra over F2.
//! - [`perm`]: permutation groups, Sylow constructions, elementary abelian subgroups.
//! - [`unstable`]: truncated unstable modules over the Steenrod algebra and the functors
//!   building cohomology models of wreath products.
//! - [`quillen`]: the inverse limit of `H*(E)` over the Quillen category.
//! - [`series`]: exact Poincaré-series recursions.
//! - [`acceptance`]: the end-to-end verification suite shared by tests and the CLI.

pub mod acceptance;
pub mod error;
pub mod f2;
pub mod perm;
pub mod quillen;
pub mod series;
pub mod unstable;

pub use error::{Error, Result};
