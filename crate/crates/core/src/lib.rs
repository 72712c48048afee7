//! Exact combinatorics of curves on closed orientable surfaces.
//!
//! Curves live on the one-vertex cell structure of a genus-g surface (the
//! standard 4g-gon with identified sides) as chord systems in taut position.
//! Everything downstream — intersection numbers, Dehn twists, subsurface
//! projections, distance certificates, handlebody markings and the assembled
//! flat / index-one surfaces — is computed exactly from that representation.

pub mod arrangement;
pub mod curve;
pub mod curvegraph;
pub mod drawing;
pub mod enumerate;
pub mod exec;
pub mod farey;
pub mod flexipath;
pub mod handlebody;
pub mod projection;
pub mod surface;
pub mod word;



pub use curve::{CurveClass, MultiCurve};
pub use curvegraph::{BoundStatus, DistanceEstimate};
pub use exec::Exec;
pub use farey::FareySlope;

pub use surface::SurfaceSpec;

use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("surfaces do not match (genus {0} vs {1})")]
    SurfaceMismatch(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}
