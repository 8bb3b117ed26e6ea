//! Arithmetic, geometry and spectral tools for the octa-tree group and its random covers.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod covers;
pub mod error;
pub mod gaussian;
pub mod geometry;
pub mod group;
pub mod quad;
pub mod spectral;
pub mod verify;
pub mod words;

pub use covers::{dual_graph, sample_cover, CoverPresentation, DualGraph, Signing};
pub use error::{Error, Result};
pub use gaussian::GaussianInt;
pub use geometry::{apply_isom, dist, OrbitBall, Point3};
pub use group::{GeneratorName, ProjIsom};
pub use words::{CoxeterWord, FreeWord, PackedWord};
