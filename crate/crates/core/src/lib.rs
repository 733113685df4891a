//! Unfitted finite elements for the Stokes equations on implicitly defined
//! domains, using a composite P1 + face-bubble velocity space whose
//! divergence is constant on every macro element.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod assembly;
pub mod discretization;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod interpolation;
pub mod mesh;
pub mod point;
pub mod postprocess;
pub mod problems;
pub mod quadrature;
pub mod solve;
pub mod spaces;
pub mod sparse;
pub mod vtk;

pub use error::{Error, Result};
pub use point::{Mat2, Vec2};
