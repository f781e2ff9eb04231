//! Fixed-point formulas for circle actions on almost complex manifolds.
//!
//! Given the isotropy weights at the isolated fixed points, this crate
//! computes Chern numbers by localization, equivariant indices of line
//! bundles, the Hilbert polynomial with its rigidity properties, and compares
//! toric examples against Ehrhart polynomials. All arithmetic is exact.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod hilbert;
pub mod localization;
pub mod report;
pub mod space;
pub mod toric;

pub use error::{Error, Result};
