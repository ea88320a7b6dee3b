//! Exact plane–surface avoidance and its certificates.
//!
//! For each triangle the certificate stores a covector `c` with
//! `⟨c, u⟩ = ⟨c, v⟩ = 0` and `⟨c, pᵢ − base⟩ > 0` at all three corners. Then
//! `⟨c, · − base⟩` vanishes on the plane and is positive on the triangle,
//! so the two are disjoint.

use num::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::margin::{contains_origin, Projection};
use super::{ConvexityError, Plane2};
use crate::mesh::SimplicialSurface;
use crate::predicates::flat_meets_simplex;
use crate::rational::serde_rational_array;
use crate::vector::{axpy, dot, sub, Point4, Vec4};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Covector(#[serde(with = "serde_rational_array")] pub Vec4);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidanceCertificate {
    pub plane: Plane2,
    /// One separating covector per triangle, in mesh order.
    pub witnesses: Vec<Covector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Avoidance {
    Avoids(AvoidanceCertificate),
    Intersects { triangle: usize, point: Point4 },
}

impl Avoidance {
    pub fn avoids(&self) -> bool {
        matches!(self, Avoidance::Avoids(_))
    }
}

/// Decide exactly whether `plane` misses every closed triangle.
pub fn plane_avoids_surface(plane: &Plane2, surface: &SimplicialSurface) -> Result<Avoidance, ConvexityError> {
    plane.check()?;
    let dirs = [plane.u.clone(), plane.v.clone()];
    let hit = (0..surface.triangles().len())
        .into_par_iter()
        .map(|t| flat_meets_simplex(&plane.base.0, &dirs, &surface.triangle_points(t)))
        .enumerate()
        .find_first(|(_, h)| h.is_some());
    if let Some((triangle, Some((s, _)))) = hit {
        let point = axpy(&axpy(&plane.base.0, &s[0], &plane.u), &s[1], &plane.v);
        return Ok(Avoidance::Intersects { triangle, point: Point4(point) });
    }
    let witnesses = separating_covectors(plane, surface).expect("both avoidance tests agree");
    Ok(Avoidance::Avoids(AvoidanceCertificate { plane: plane.clone(), witnesses }))
}

/// Separating covectors from the projection route; `None` on contact.
pub(crate) fn separating_covectors(plane: &Plane2, surface: &SimplicialSurface) -> Option<Vec<Covector>> {
    let proj = Projection::new(&plane.u, &plane.v).ok()?;
    let pv = proj.project_vertices(surface, &plane.base);
    surface
        .triangles()
        .iter()
        .map(|t| {
            let tri = t.0.map(|i| &pv[i]);
            if contains_origin(&tri) {
                return None;
            }
            Some(Covector(proj.covector(&proj.nearest_on_triangle(&tri))))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("plane directions are linearly dependent")]
    DegeneratePlane,
    #[error("certificate has {got} witnesses, surface has {expected} triangles")]
    WitnessCount { expected: usize, got: usize },
    #[error("witness {triangle} does not vanish on the plane directions")]
    NotOrthogonal { triangle: usize },
    #[error("witness {triangle} fails to separate vertex {vertex}")]
    NotSeparating { triangle: usize, vertex: usize },
}

/// Re-check every witness from scratch.
pub fn verify_certificate(cert: &AvoidanceCertificate, surface: &SimplicialSurface) -> Result<(), VerifyError> {
    let plane = &cert.plane;
    plane.check().map_err(|_| VerifyError::DegeneratePlane)?;
    let n = surface.triangles().len();
    if cert.witnesses.len() != n {
        return Err(VerifyError::WitnessCount { expected: n, got: cert.witnesses.len() });
    }
    for (t, Covector(c)) in cert.witnesses.iter().enumerate() {
        if !dot(c, &plane.u).is_zero() || !dot(c, &plane.v).is_zero() {
            return Err(VerifyError::NotOrthogonal { triangle: t });
        }
        for &vertex in &surface.triangles()[t].0 {
            if !dot(c, &sub(&surface.vertex(vertex).0, &plane.base.0)).is_positive() {
                return Err(VerifyError::NotSeparating { triangle: t, vertex });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::builtin::{clifford_torus, octahedron_s2};
    use crate::vector::unit;

    #[test]
    fn clifford_torus_avoids_the_second_factor_plane() {
        let s = clifford_torus(6).unwrap();
        let plane = Plane2::new(Point4::origin(), unit(2), unit(3)).unwrap();
        match plane_avoids_surface(&plane, &s).unwrap() {
            Avoidance::Avoids(cert) => verify_certificate(&cert, &s).unwrap(),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn octahedron_meets_its_equatorial_plane() {
        let s = octahedron_s2().unwrap();
        let plane = Plane2::new(Point4::origin(), unit(0), unit(1)).unwrap();
        let Avoidance::Intersects { triangle, point } = plane_avoids_surface(&plane, &s).unwrap() else {
            panic!("expected an intersection");
        };
        assert!(crate::predicates::point_in_simplex(&point.0, &s.triangle_points(triangle)));
    }

    #[test]
    fn slab_separated_plane_avoids() {
        let s = octahedron_s2().unwrap();
        let plane = Plane2::new(Point4::from_ints([3, 0, 0, 0]), unit(1), unit(2)).unwrap();
        assert!(plane_avoids_surface(&plane, &s).unwrap().avoids());
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let s = clifford_torus(4).unwrap();
        let plane = Plane2::new(Point4::origin(), unit(2), unit(3)).unwrap();
        let Avoidance::Avoids(cert) = plane_avoids_surface(&plane, &s).unwrap() else { panic!() };
        let mut bad = cert.clone();
        bad.witnesses[3] = Covector(crate::vector::neg(&bad.witnesses[3].0));
        assert!(matches!(verify_certificate(&bad, &s), Err(VerifyError::NotSeparating { triangle: 3, .. })));
        let mut bad = cert.clone();
        bad.witnesses[0].0[2] += crate::rational::one();
        assert!(matches!(verify_certificate(&bad, &s), Err(VerifyError::NotOrthogonal { triangle: 0 })));
        let mut bad = cert;
        bad.witnesses.pop();
        assert!(matches!(verify_certificate(&bad, &s), Err(VerifyError::WitnessCount { .. })));
        assert!(Plane2::new(Point4::origin(), unit(0), unit(0)).is_err());
    }

    #[test]
    fn certificate_json_round_trip() {
        let s = clifford_torus(3).unwrap();
        let plane = Plane2::new(Point4::origin(), unit(2), unit(3)).unwrap();
        let Avoidance::Avoids(cert) = plane_avoids_surface(&plane, &s).unwrap() else { panic!() };
        let json = serde_json::to_string(&cert).unwrap();
        let back: AvoidanceCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }
}
