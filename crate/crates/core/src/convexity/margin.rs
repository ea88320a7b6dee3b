//! Projection along a direction 2-plane and the resulting margin.

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ConvexityError;
use crate::mesh::SimplicialSurface;
use crate::rational::{serde_rational, Rational};
use crate::vector::{dot, independent2, scale, sub, unit, Point4, Vec4};

type P2 = [Rational; 2];

/// Orthogonal projection onto `span(u, v)^⊥`, in coordinates `y ↦ (⟨y,w₁⟩, ⟨y,w₂⟩)`
/// for an orthogonal basis `w₁, w₂` of the complement.
#[derive(Debug, Clone)]
pub struct Projection {
    w: [Vec4; 2],
    /// `1/|wᵢ|²`, the metric in these coordinates.
    g: P2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarginScore {
    /// Squared distance from the plane to the surface; zero on contact.
    #[serde(with = "serde_rational")]
    pub margin: Rational,
    /// Triangles whose projection contains the projected point.
    pub hits: usize,
}

impl MarginScore {
    /// Larger margin first, then fewer hits.
    pub fn better_than(&self, other: &MarginScore) -> bool {
        self.margin > other.margin || (self.margin == other.margin && self.hits < other.hits)
    }
}

fn orthogonalize(basis: &mut Vec<Vec4>, y: Vec4) -> Option<Vec4> {
    let mut r = y;
    for b in basis.iter() {
        let k = dot(&r, b) / dot(b, b);
        r = sub(&r, &scale(b, &k));
    }
    if r.iter().all(Zero::is_zero) {
        return None;
    }
    basis.push(r.clone());
    Some(r)
}

impl Projection {
    pub fn new(u: &Vec4, v: &Vec4) -> Result<Self, ConvexityError> {
        if !independent2(u, v) {
            return Err(ConvexityError::DegeneratePlane);
        }
        let mut basis = Vec::with_capacity(4);
        orthogonalize(&mut basis, u.clone());
        orthogonalize(&mut basis, v.clone());
        let mut w = Vec::with_capacity(2);
        for k in 0..4 {
            if let Some(r) = orthogonalize(&mut basis, unit(k)) {
                w.push(r);
            }
            if w.len() == 2 {
                break;
            }
        }
        let w: [Vec4; 2] = w.try_into().expect("complement of a 2-plane in R⁴ is 2-dimensional");
        let g = [Rational::one() / dot(&w[0], &w[0]), Rational::one() / dot(&w[1], &w[1])];
        Ok(Projection { w, g })
    }

    pub fn coords(&self, y: &Vec4) -> P2 {
        [dot(y, &self.w[0]), dot(y, &self.w[1])]
    }

    fn inner(&self, a: &P2, b: &P2) -> Rational {
        &self.g[0] * &a[0] * &b[0] + &self.g[1] * &a[1] * &b[1]
    }

    /// The covector `c ⊥ span(u, v)` with `⟨c, y⟩ = inner(p, coords(y))`.
    pub fn covector(&self, p: &P2) -> Vec4 {
        let a = scale(&self.w[0], &(&self.g[0] * &p[0]));
        let b = scale(&self.w[1], &(&self.g[1] * &p[1]));
        std::array::from_fn(|i| &a[i] + &b[i])
    }

    /// Nearest point to the origin on the closed segment `[a, b]`.
    fn nearest_on_segment(&self, a: &P2, b: &P2) -> P2 {
        let d = [&b[0] - &a[0], &b[1] - &a[1]];
        let dd = self.inner(&d, &d);
        if dd.is_zero() {
            return a.clone();
        }
        let t = -self.inner(a, &d) / dd;
        if !t.is_positive() {
            a.clone()
        } else if t >= Rational::one() {
            b.clone()
        } else {
            [&a[0] + &t * &d[0], &a[1] + &t * &d[1]]
        }
    }

    /// Vertex coordinates relative to `x`.
    pub fn project_vertices(&self, surface: &SimplicialSurface, x: &Point4) -> Vec<P2> {
        surface.vertices().iter().map(|p| self.coords(&sub(&p.0, &x.0))).collect()
    }

    /// Whether no projected triangle contains the projected point, i.e. the
    /// margin is positive. Stops at the first hit.
    pub fn is_clear(&self, surface: &SimplicialSurface, x: &Point4) -> bool {
        let mut pv: Vec<Option<P2>> = vec![None; surface.vertices().len()];
        surface.triangles().iter().all(|t| {
            for &i in &t.0 {
                if pv[i].is_none() {
                    pv[i] = Some(self.coords(&sub(&surface.vertex(i).0, &x.0)));
                }
            }
            !contains_origin(&t.0.map(|i| pv[i].as_ref().unwrap()))
        })
    }

    pub fn score(&self, surface: &SimplicialSurface, x: &Point4) -> MarginScore {
        let pv = self.project_vertices(surface, x);
        let hits = surface.triangles().iter().filter(|t| contains_origin(&t.0.map(|i| &pv[i]))).count();
        if hits > 0 {
            return MarginScore { margin: Rational::zero(), hits };
        }
        let margin = surface
            .triangles()
            .iter()
            .map(|t| {
                let n = self.nearest_on_triangle(&t.0.map(|i| &pv[i]));
                self.inner(&n, &n)
            })
            .min()
            .unwrap_or_else(Rational::zero);
        MarginScore { margin, hits: 0 }
    }

    /// Nearest point to the origin of a triangle known not to contain it.
    pub fn nearest_on_triangle(&self, t: &[&P2; 3]) -> P2 {
        (0..3)
            .map(|k| self.nearest_on_segment(t[k], t[(k + 1) % 3]))
            .min_by(|a, b| self.inner(a, a).cmp(&self.inner(b, b)))
            .unwrap()
    }
}

fn orient(a: &P2, b: &P2) -> i32 {
    let d = &a[0] * &b[1] - &a[1] * &b[0];
    if d.is_positive() {
        1
    } else if d.is_negative() {
        -1
    } else {
        0
    }
}

/// Whether the closed (possibly degenerate) triangle contains the origin.
pub(crate) fn contains_origin(t: &[&P2; 3]) -> bool {
    let s = [orient(t[0], t[1]), orient(t[1], t[2]), orient(t[2], t[0])];
    let area = {
        let ab = [&t[1][0] - &t[0][0], &t[1][1] - &t[0][1]];
        let ac = [&t[2][0] - &t[0][0], &t[2][1] - &t[0][1]];
        orient(&ab, &ac)
    };
    if area != 0 {
        return s.iter().all(|&x| x * area >= 0);
    }
    // collinear: on one of the three segments
    (0..3).any(|k| on_segment(t[k], t[(k + 1) % 3]))
}

fn on_segment(a: &P2, b: &P2) -> bool {
    if orient(a, b) != 0 {
        return false;
    }
    // origin between a and b on their common line
    let d = &a[0] * &b[0] + &a[1] * &b[1];
    !d.is_positive()
}

/// Squared distance between `x + span(u, v)` and the surface, zero on contact.
pub fn project_and_test(surface: &SimplicialSurface, x: &Point4, u: &Vec4, v: &Vec4) -> Result<Rational, ConvexityError> {
    Ok(Projection::new(u, v)?.score(surface, x).margin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::builtin::{clifford_torus, octahedron_s2};
    use crate::rational::rat;
    use crate::vector::from_ints;

    #[test]
    fn octahedron_covers_its_center_along_the_vertical_plane() {
        let s = octahedron_s2().unwrap();
        let m = project_and_test(&s, &Point4::origin(), &unit(2), &unit(3)).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn far_point_has_positive_margin() {
        let s = octahedron_s2().unwrap();
        let x = Point4::from_ints([5, 0, 0, 0]);
        // projected square has the corner (1,0); distance 4
        assert_eq!(project_and_test(&s, &x, &unit(2), &unit(3)).unwrap(), rat(16, 1));
    }

    #[test]
    fn torus_center_is_separated() {
        let s = clifford_torus(8).unwrap();
        let m = project_and_test(&s, &Point4::origin(), &unit(2), &unit(3)).unwrap();
        assert!(m.is_positive());
    }

    #[test]
    fn covector_annihilates_directions() {
        let (u, v) = (from_ints([1, 2, 0, -1]), from_ints([0, 1, 1, 3]));
        let p = Projection::new(&u, &v).unwrap();
        let c = p.covector(&[rat(2, 3), rat(-1, 1)]);
        assert!(dot(&c, &u).is_zero() && dot(&c, &v).is_zero());
        let y = from_ints([3, -1, 4, 1]);
        assert_eq!(dot(&c, &y), p.inner(&[rat(2, 3), rat(-1, 1)], &p.coords(&y)));
    }

    #[test]
    fn degenerate_triangles_count_their_segments() {
        let z = |a, b| [rat(a, 1), rat(b, 1)];
        let (a, b, c) = (z(-1, 0), z(1, 0), z(2, 0));
        assert!(contains_origin(&[&a, &b, &c]));
        let (a, b, c) = (z(1, 0), z(2, 0), z(3, 0));
        assert!(!contains_origin(&[&a, &b, &c]));
        let (a, b, c) = (z(0, 0), z(0, 0), z(0, 0));
        assert!(contains_origin(&[&a, &b, &c]));
    }
}
