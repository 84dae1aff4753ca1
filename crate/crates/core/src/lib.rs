//! Combinatorial and numerical models of Hilbert squares of stable nodal
//! curves and of their stable degenerations.
//!
//! The crate is organised bottom-up:
//!
//! - [`curve_model`]: dual graphs of nodal curves, stability, isomorphism and
//!   exhaustive enumeration.
//! - [`ampleness`]: exact intersection numbers on `C x C` and the ample/nef
//!   classification of log symmetric squares and log products.
//! - [`surface_model`]: the component model of `Hilb_2` of a nodal curve.
//! - [`stability`]: the per-component stability test for `Hilb_2(C)`.
//! - [`mmp`]: relative minimal and canonical model contraction rules.
//! - [`reconstruction`]: recovering the dual graph from the relatively
//!   minimal surface model.
//! - [`local_algebra`]: a small exact polynomial kernel used to check the
//!   local equations of the resolved bad point.

pub mod ampleness;
pub mod curve_model;
pub mod local_algebra;
pub mod mmp;
pub mod reconstruction;
pub mod stability;
pub mod surface_model;

pub use curve_model::{CurveComponent, DualGraph, Hyperelliptic};
