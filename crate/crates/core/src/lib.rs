//! Volume lower bounds for hyperbolic 3-manifolds with totally geodesic boundary
//! of genus two, certified by subdividing the plane of the two shortest
//! ortholengths into small rectangles.
//!
//! The crate is layered bottom-up:
//!
//! * [`hyptrig`]: scalar hyperbolic trigonometry on cosh-valued lengths.
//! * [`muffin`]: packing radii, muffin solids, transversal bounds and the
//!   per-rectangle embedding constants.
//! * [`bounds`]: the lower envelope for the second ortholength, the upper
//!   bounds `Y` and `Y0`, and the single/double muffin volume bounds.
//! * [`certify`]: grid subdivision, feasibility tests, the parallel
//!   minimum reduction and the two standard campaigns.
//!
//! Lengths are carried as hyperbolic cosines wherever the formulas allow it.

// `!(x >= lo)` is used on purpose so that NaN fails domain checks; reference
// constants keep every digit of their source.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bounds;
pub mod certify;
mod error;
pub mod hyptrig;
pub mod muffin;

pub use error::{Error, Result};
