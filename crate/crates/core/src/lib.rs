//! Construction and verification of Strebel differentials with four double
//! poles on the Riemann sphere.
//!
//! The crate is layered: [`exactnum`] supplies exact `Q(i)` arithmetic and a
//! multiprecision complex layer, [`qdiff`] models the quadratic differentials,
//! [`belyi`] the branched covers that produce them, [`ribbon`] the
//! combinatorics of their critical graphs and [`periods`] the numeric solver;
//! [`verify`] reruns the reproduction checks.

pub mod error;
pub mod exactnum;
pub mod qdiff;
pub mod belyi;
pub mod periods;
pub mod ribbon;
pub mod svg;
pub mod verify;

pub use error::{Error, Result};
pub use exactnum::{BigComplex, ExactPoly, ExactRatFunc, GaussRat};
