//! Built-in surfaces with exact rational coordinates.

use std::fmt;
use std::str::FromStr;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{MeshError, SimplicialSurface, TriangleSoup};
use crate::rational::{int, one, Rational};
use crate::vector::Point4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuiltinError {
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("{name} needs resolution ≥ {min}, got {got}")]
    ResolutionTooSmall { name: Builtin, min: usize, got: usize },
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    CliffordTorus,
    /// Clifford torus with one diagonal flipped so vertex 0 has valence five.
    CliffordTorusApex5,
    FlatTorusGrid,
    ProjectivePlaneMin,
    KleinBottle,
    OctahedronS2,
}

impl Builtin {
    pub const ALL: [Builtin; 6] = [
        Builtin::CliffordTorus,
        Builtin::CliffordTorusApex5,
        Builtin::FlatTorusGrid,
        Builtin::ProjectivePlaneMin,
        Builtin::KleinBottle,
        Builtin::OctahedronS2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::CliffordTorus => "clifford_torus",
            Builtin::CliffordTorusApex5 => "clifford_torus_apex5",
            Builtin::FlatTorusGrid => "flat_torus_grid",
            Builtin::ProjectivePlaneMin => "projective_plane_min",
            Builtin::KleinBottle => "klein_bottle",
            Builtin::OctahedronS2 => "octahedron_s2",
        }
    }

    /// Minimum resolution, `None` for fixed meshes.
    pub fn min_resolution(self) -> Option<usize> {
        match self {
            Builtin::CliffordTorus | Builtin::FlatTorusGrid | Builtin::KleinBottle => Some(3),
            Builtin::CliffordTorusApex5 => Some(4),
            Builtin::ProjectivePlaneMin | Builtin::OctahedronS2 => None,
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = BuiltinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| BuiltinError::UnknownBuiltin(s.to_string()))
    }
}

pub fn generate_builtin(name: &str, resolution: usize) -> Result<SimplicialSurface, BuiltinError> {
    generate(name.parse()?, resolution)
}

pub fn generate(which: Builtin, resolution: usize) -> Result<SimplicialSurface, BuiltinError> {
    if let Some(min) = which.min_resolution() {
        if resolution < min {
            return Err(BuiltinError::ResolutionTooSmall { name: which, min, got: resolution });
        }
    }
    let surface = match which {
        Builtin::CliffordTorus => clifford_torus(resolution)?,
        Builtin::CliffordTorusApex5 => clifford_torus_apex5(resolution)?,
        Builtin::FlatTorusGrid => flat_torus_grid(resolution, resolution)?,
        Builtin::ProjectivePlaneMin => projective_plane_min()?,
        Builtin::KleinBottle => klein_bottle(resolution, resolution)?,
        Builtin::OctahedronS2 => octahedron_s2()?,
    };
    Ok(surface)
}

/// The point of the unit circle with tangent-half-angle parameter `t`.
pub fn circle_point(t: &Rational) -> [Rational; 2] {
    let t2 = t * t;
    let den = &t2 + one();
    [(one() - &t2) / &den, (t * int(2)) / den]
}

/// `n` distinct rational points on the unit circle in counter-clockwise order,
/// starting at `(-1, 0)`. The set is closed under complex conjugation:
/// point `k` and point `n - k` are conjugate.
pub fn rational_circle_points(n: usize) -> Vec<[Rational; 2]> {
    let n_r = int(n as i64);
    (0..n)
        .map(|k| {
            if k == 0 {
                return [-one(), Rational::zero()];
            }
            let s = (int(2 * k as i64) - &n_r) / &n_r;
            let t = &s / (one() - s.abs());
            circle_point(&t)
        })
        .collect()
}

fn grid_triangles(rows: usize, cols: usize, index: impl Fn(usize, usize) -> usize) -> Vec<[usize; 3]> {
    let mut tris = Vec::with_capacity(2 * rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            let a = index(i, j);
            let b = index(i + 1, j);
            let c = index(i + 1, j + 1);
            let d = index(i, j + 1);
            tris.push([a, b, c]);
            tris.push([a, c, d]);
        }
    }
    tris
}

/// Product of two polygons inscribed in the unit circles of the `z₁` and `z₂`
/// coordinate planes; every vertex satisfies `|z₁| = |z₂| = 1` exactly.
/// Vertex `(i, j)` has index `i·n + j`.
pub fn clifford_torus(n: usize) -> Result<SimplicialSurface, MeshError> {
    SimplicialSurface::new(clifford_soup(n))
}

fn clifford_soup(n: usize) -> TriangleSoup {
    let c = rational_circle_points(n);
    let mut vertices = Vec::with_capacity(n * n);
    for zi in &c {
        for zj in &c {
            vertices.push(Point4::new(zi[0].clone(), zi[1].clone(), zj[0].clone(), zj[1].clone()));
        }
    }
    let triangles = grid_triangles(n, n, |i, j| (i % n) * n + (j % n));
    TriangleSoup { vertices, triangles }
}

/// Clifford torus with the diagonal from vertex `(0,0)` to `(1,1)` flipped.
/// Each grid square is planar, so the flip leaves the embedded set unchanged
/// while vertices `0` and `n + 1` drop to valence five.
pub fn clifford_torus_apex5(n: usize) -> Result<SimplicialSurface, MeshError> {
    let torus = clifford_torus(n)?;
    super::ops::flip_edge(&torus, 0, n + 1)
}

/// Product of two convex lattice polygons with vertices on the parabola
/// `y = x²`; vertex `(i, j)` is `(i, i², j, j²)` with index `i·cols + j`.
pub fn flat_torus_grid(rows: usize, cols: usize) -> Result<SimplicialSurface, MeshError> {
    let mut vertices = Vec::with_capacity(rows * cols);
    for i in 0..rows as i64 {
        for j in 0..cols as i64 {
            vertices.push(Point4::from_ints([i, i * i, j, j * j]));
        }
    }
    let triangles = grid_triangles(rows, cols, |i, j| (i % rows) * cols + (j % cols));
    SimplicialSurface::new(TriangleSoup { vertices, triangles })
}

/// The 6-vertex, 10-triangle projective plane with vertices on the moment
/// curve `(t, t², t³, t⁴)`.
pub fn projective_plane_min() -> Result<SimplicialSurface, MeshError> {
    let vertices = (1..=6).map(|t: i64| Point4::from_ints([t, t * t, t.pow(3), t.pow(4)])).collect();
    let triangles = vec![
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ];
    SimplicialSurface::new(TriangleSoup { vertices, triangles })
}

/// Grid Klein bottle sampled from
/// `((2 + cos φ) cos θ, (2 + cos φ) sin θ, sin φ cos(θ/2), sin φ sin(θ/2))`
/// with rational circle points; crossing `θ = 2π` conjugates `φ`.
pub fn klein_bottle(m: usize, n: usize) -> Result<SimplicialSurface, MeshError> {
    let phi = rational_circle_points(n);
    let half_angles: Vec<[Rational; 2]> = (0..m)
        .map(|i| circle_point(&(int(i as i64) / int((m - i) as i64))))
        .collect();
    let mut vertices = Vec::with_capacity(m * n);
    for [cp, sp] in &half_angles {
        let cos_t = cp * cp - sp * sp;
        let sin_t = cp * sp * int(2);
        for [cf, sf] in &phi {
            let radius = int(2) + cf;
            vertices.push(Point4::new(&radius * &cos_t, &radius * &sin_t, sf * cp, sf * sp));
        }
    }
    let index = |i: usize, j: usize| {
        let j = j % n;
        if i == m {
            (n - j) % n
        } else {
            i * n + j
        }
    };
    let triangles = grid_triangles(m, n, index);
    SimplicialSurface::new(TriangleSoup { vertices, triangles })
}

/// Boundary of the cross-polytope in `{x₄ = 0}`; vertex 4 is the north pole
/// `(0,0,1,0)`, vertex 5 the south pole.
pub fn octahedron_s2() -> Result<SimplicialSurface, MeshError> {
    let vertices = vec![
        Point4::from_ints([1, 0, 0, 0]),
        Point4::from_ints([-1, 0, 0, 0]),
        Point4::from_ints([0, 1, 0, 0]),
        Point4::from_ints([0, -1, 0, 0]),
        Point4::from_ints([0, 0, 1, 0]),
        Point4::from_ints([0, 0, -1, 0]),
    ];
    let triangles = vec![[0, 2, 4], [2, 1, 4], [1, 3, 4], [3, 0, 4], [2, 0, 5], [1, 2, 5], [3, 1, 5], [0, 3, 5]];
    SimplicialSurface::new(TriangleSoup { vertices, triangles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::dot;

    #[test]
    fn octahedron_counts() {
        let s = octahedron_s2().unwrap();
        let r = s.report();
        assert_eq!(r.vertex_count, 6);
        assert_eq!(r.euler_characteristic, 2);
        assert!(r.orientable);
        assert_eq!((r.min_valence, r.max_valence), (4, 4));
        assert!(r.pl5_ok);
        assert_eq!(r.gauss_bonnet_sum, 12);
    }

    #[test]
    fn projective_plane_counts() {
        let r = projective_plane_min().unwrap().report().clone();
        assert_eq!((r.vertex_count, r.edge_count, r.triangle_count), (6, 15, 10));
        assert_eq!(r.euler_characteristic, 1);
        assert!(!r.orientable);
        assert_eq!((r.min_valence, r.max_valence), (5, 5));
        assert!(r.pl5_ok);
        assert_eq!(r.gauss_bonnet_sum, 6);
    }

    #[test]
    fn clifford_torus_counts_and_circle_constraint() {
        for n in [3, 4, 5, 8] {
            let s = clifford_torus(n).unwrap();
            let r = s.report();
            assert_eq!(r.vertex_count, n * n);
            assert_eq!(r.triangle_count, 2 * n * n);
            assert_eq!(r.euler_characteristic, 0);
            assert!(r.orientable);
            assert!(!r.pl5_ok);
            for p in s.vertices() {
                let c = p.coords();
                assert_eq!(&c[0] * &c[0] + &c[1] * &c[1], one());
                assert_eq!(&c[2] * &c[2] + &c[3] * &c[3], one());
            }
        }
    }

    #[test]
    fn circle_points_are_conjugate_symmetric_and_ordered() {
        let n = 7;
        let pts = rational_circle_points(n);
        for k in 1..n {
            assert_eq!(pts[k][0], pts[n - k][0]);
            assert_eq!(pts[k][1], -pts[n - k][1].clone());
        }
        // counter-clockwise: consecutive cross products positive
        for k in 0..n {
            let a = &pts[k];
            let b = &pts[(k + 1) % n];
            assert!((&a[0] * &b[1] - &a[1] * &b[0]).is_positive());
        }
        assert!(pts.iter().all(|p| dot(p, p) == one()));
    }

    #[test]
    fn apex_variant_has_valence_five_vertices() {
        let s = clifford_torus_apex5(6).unwrap();
        assert_eq!(s.valence(0), 5);
        assert_eq!(s.valence(7), 5);
        assert_eq!(s.report().max_valence, 7);
        assert_eq!(s.euler_characteristic(), 0);
    }

    #[test]
    fn klein_bottle_is_nonorientable_with_zero_euler() {
        for n in [3, 4, 6] {
            let s = klein_bottle(n, n).unwrap();
            let r = s.report();
            assert_eq!(r.euler_characteristic, 0);
            assert!(!r.orientable);
            assert!(!r.pl5_ok);
            assert_eq!(r.components, 1);
        }
    }

    #[test]
    fn flat_torus_is_an_orientable_torus() {
        let s = flat_torus_grid(4, 3).unwrap();
        assert_eq!(s.report().vertex_count, 12);
        assert_eq!(s.euler_characteristic(), 0);
        assert!(s.report().orientable);
    }

    #[test]
    fn builtin_lookup() {
        assert!(matches!(generate_builtin("sphere", 3), Err(BuiltinError::UnknownBuiltin(_))));
        assert!(matches!(generate_builtin("clifford_torus", 2), Err(BuiltinError::ResolutionTooSmall { .. })));
        assert_eq!(generate_builtin("octahedron_s2", 0).unwrap().vertices().len(), 6);
        for b in Builtin::ALL {
            assert_eq!(b.name().parse::<Builtin>().unwrap(), b);
        }
    }
}
