//! Spectral-gap bounds for spherically symmetric probability measures on ℝⁿ.
//!
//! The crate evaluates closed-form two-sided estimates of the Poincaré
//! constant of laws with density ∝ exp(-V(‖x‖)), possibly with a radial weight
//! σ in the energy, and cross-checks them against a finite-volume
//! Sturm–Liouville solver for the radial part and Monte Carlo Rayleigh
//! quotients for the full law.

// `!(x > 0.0)` style guards reject NaN along with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod bounds;
pub mod bracket;
pub mod catalog;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod interp;
pub mod mc;
pub mod quadrature;
pub mod radial;
pub mod report;
pub mod special;
pub mod tables;
pub mod verify;

pub use bracket::{BoundBracket, Provenance};
pub use error::{Error, Result};
