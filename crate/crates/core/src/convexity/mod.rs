//! 2-plane avoidance: through a point off the surface, find a 2-plane that
//! misses every closed triangle, and prove it.
//!
//! Two exact routes decide whether `x + span(u, v)` meets a triangle: the
//! direct barycentric feasibility system, and projection along `span(u, v)`
//! followed by a planar point-in-triangle test. The second also yields a
//! margin (squared distance) and the separating functionals stored in
//! certificates.

mod certificate;
mod margin;
mod reduction;
mod sampling;
mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::serde_rational_array;
use crate::vector::{independent2, Point4, Vec4};

pub use certificate::{plane_avoids_surface, verify_certificate, Avoidance, AvoidanceCertificate, Covector, VerifyError};
pub use margin::{project_and_test, MarginScore, Projection};
pub use reduction::{reduce_in_hyperplane, Reduction};
pub use sampling::sample_exterior_points;
pub use search::{
    certify_point, grid_directions, CertifyReport, CertifyResult, GrassmannSample, NegativeEvidence, Provenance,
    SearchBudget, SearchTrace,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvexityError {
    #[error("plane directions are linearly dependent")]
    DegeneratePlane,
    #[error("query point lies on triangle {triangle}")]
    PointOnSurface { triangle: usize },
    #[error("hyperplane reduction not applicable: {0}")]
    NotApplicable(String),
    #[error("sample count must be at least 1")]
    InvalidCount,
    #[error("found only {found} of {requested} points off the surface")]
    SamplingFailed { found: usize, requested: usize },
}

/// `{ base + s·u + t·v }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plane2 {
    pub base: Point4,
    #[serde(with = "serde_rational_array")]
    pub u: Vec4,
    #[serde(with = "serde_rational_array")]
    pub v: Vec4,
}

impl Plane2 {
    pub fn new(base: Point4, u: Vec4, v: Vec4) -> Result<Self, ConvexityError> {
        if !independent2(&u, &v) {
            return Err(ConvexityError::DegeneratePlane);
        }
        Ok(Plane2 { base, u, v })
    }

    pub fn check(&self) -> Result<(), ConvexityError> {
        if independent2(&self.u, &self.v) {
            Ok(())
        } else {
            Err(ConvexityError::DegeneratePlane)
        }
    }
}

/// Closed point-on-surface test; returns the first triangle containing `x`.
pub fn triangle_containing(surface: &crate::mesh::SimplicialSurface, x: &Point4) -> Option<usize> {
    use rayon::prelude::*;
    (0..surface.triangles().len()).into_par_iter().position_first(|t| {
        let pts = surface.triangle_points(t);
        let in_box = (0..4).all(|i| {
            let lo = pts.iter().map(|p| &p[i]).min().unwrap();
            let hi = pts.iter().map(|p| &p[i]).max().unwrap();
            lo <= &x.0[i] && &x.0[i] <= hi
        });
        in_box && crate::predicates::point_in_simplex(&x.0, &pts)
    })
}
