//! Points inside the hyperplane spanned by a flat surface.
//!
//! A 2-plane through `x ∈ H` meets the 3-space `H` in at least a line through
//! `x`. So `x` has an avoiding 2-plane iff some line through `x` in `H` misses
//! the surface; an avoiding line `ℓ` lifts to the plane `ℓ + span(normal)`.

use num::{Signed, Zero};

use super::certificate::{plane_avoids_surface, Avoidance, AvoidanceCertificate};
use super::search::NegativeEvidence;
use super::{ConvexityError, Plane2};
use crate::hyperplane::Hyperplane;
use crate::mesh::SimplicialSurface;
use crate::predicates::flat_meets_simplex;
use crate::rational::Rational;
use crate::vector::{add, cross, dot, from_ints, orient3d, sub, Point4, Vec3};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduction {
    Evidence(NegativeEvidence),
    Certificate(AvoidanceCertificate),
    /// Even crossing parity but no avoiding line among the candidates.
    Undecided,
}

/// Transversal crossings of the ray `x + t·d, t > 0`, or `None` if the ray
/// touches an edge or vertex or runs inside a triangle's plane.
fn ray_crossings(x: &Vec3, d: &Vec3, tris: &[[Vec3; 3]]) -> Option<Vec<usize>> {
    let far = add(x, d);
    let mut hits = Vec::new();
    for (i, [a, b, c]) in tris.iter().enumerate() {
        let s = [orient3d(x, &far, a, b), orient3d(x, &far, b, c), orient3d(x, &far, c, a)];
        let mixed = s.iter().any(|&k| k > 0) && s.iter().any(|&k| k < 0);
        if mixed {
            continue;
        }
        if s.contains(&0) {
            // the line grazes the boundary or lies in the triangle's plane
            let normal = cross(&sub(b, a), &sub(c, a));
            let denom = dot(&normal, d);
            if denom.is_zero() {
                if s.iter().all(|&k| k == 0) && !dot(&normal, &sub(a, x)).is_zero() {
                    continue; // parallel plane, no contact
                }
                return None;
            }
            let t = dot(&normal, &sub(a, x)) / denom;
            if t.is_negative() {
                continue;
            }
            return None;
        }
        let normal = cross(&sub(b, a), &sub(c, a));
        let t: Rational = dot(&normal, &sub(a, x)) / dot(&normal, d);
        if t.is_positive() {
            hits.push(i);
        }
    }
    Some(hits)
}

/// Generic-looking integer ray directions.
fn ray_candidates() -> impl Iterator<Item = Vec3> {
    (0..256i64).map(|k| from_ints([1 + 2 * k, 3 + 5 * k - k * k % 7, 7 - 11 * k + (k * k) % 13]))
}

/// Primitive integer directions in Z³ with entries in `[-3, 3]`, low height first.
fn line_candidates() -> Vec<Vec3> {
    let mut v: Vec<[i64; 3]> = Vec::new();
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            for c in -3i64..=3 {
                let g = num::integer::gcd(num::integer::gcd(a, b), c);
                let lead = [a, b, c].into_iter().find(|&x| x != 0);
                if g == 1 && lead.is_some_and(|x| x > 0) {
                    v.push([a, b, c]);
                }
            }
        }
    }
    v.sort_by_key(|d| (d.iter().map(|x| x.abs()).max(), d.iter().map(|x| x.abs()).sum::<i64>()));
    v.into_iter().map(from_ints).collect()
}

pub fn reduce_in_hyperplane(surface: &SimplicialSurface, x: &Point4) -> Result<Reduction, ConvexityError> {
    let verts: Vec<_> = surface.vertices().iter().map(|p| p.0.clone()).collect();
    let h = Hyperplane::through(&verts)
        .ok_or_else(|| ConvexityError::NotApplicable("surface vertices do not span exactly a hyperplane".into()))?;
    if !h.contains(&x.0) {
        return Err(ConvexityError::NotApplicable("point lies off the surface's hyperplane".into()));
    }
    let chart = h.chart();
    let local_x = chart.to_local(&x.0);
    let tris: Vec<[Vec3; 3]> = (0..surface.triangles().len())
        .map(|t| surface.triangle_points(t).map(|p| chart.to_local(&p)))
        .collect();

    let parity = ray_candidates().find_map(|d| ray_crossings(&local_x, &d, &tris).map(|c| (d, c)));
    if let Some((d, crossings)) = parity {
        if crossings.len() % 2 == 1 {
            return Ok(Reduction::Evidence(NegativeEvidence::HyperplaneReduction {
                ray_direction: chart.lift_direction(&d),
                hyperplane: h,
                crossings,
            }));
        }
    }

    for d in line_candidates() {
        if tris.iter().any(|t| flat_meets_simplex(&local_x, std::slice::from_ref(&d), t).is_some()) {
            continue;
        }
        let plane = Plane2::new(x.clone(), chart.lift_direction(&d), h.normal.clone())?;
        if let Avoidance::Avoids(cert) = plane_avoids_surface(&plane, surface)? {
            return Ok(Reduction::Certificate(cert));
        }
    }
    Ok(Reduction::Undecided)
}
