//! Optional exact self-intersection check.
//!
//! Two triangles may only meet in the face they share. Quadratic in the
//! number of triangles, so callers opt in.

use thiserror::Error;

use super::SimplicialSurface;
use crate::predicates::simplices_meet_beyond;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("triangles {first} and {second} intersect outside their common face")]
pub struct SelfIntersection {
    pub first: usize,
    pub second: usize,
}

pub fn check_embedding(surface: &SimplicialSurface) -> Result<(), SelfIntersection> {
    let tris = surface.triangles();
    for i in 0..tris.len() {
        let a = surface.triangle_points(i);
        for j in (i + 1)..tris.len() {
            let shared: Vec<usize> = (0..3).filter(|&k| tris[j].contains(tris[i].0[k])).collect();
            let b = surface.triangle_points(j);
            if simplices_meet_beyond(&a, &b, &shared) {
                return Err(SelfIntersection { first: i, second: j });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::builtin::{clifford_torus, octahedron_s2};

    #[test]
    fn builtins_are_embedded() {
        assert!(check_embedding(&octahedron_s2().unwrap()).is_ok());
        assert!(check_embedding(&clifford_torus(4).unwrap()).is_ok());
    }

    #[test]
    fn interpenetrating_tetrahedra_are_caught() {
        use crate::mesh::{SimplicialSurface, TriangleSoup};
        use crate::vector::Point4;
        let corners = [[0, 0, 0, 0], [4, 0, 0, 0], [0, 4, 0, 0], [0, 0, 4, 0]];
        let mut vertices: Vec<Point4> = corners.iter().map(|&c| Point4::from_ints(c)).collect();
        vertices.extend(corners.iter().map(|c| Point4::from_ints([c[0] + 1, c[1] + 1, c[2] + 1, 0])));
        let faces = [[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]];
        let mut triangles: Vec<[usize; 3]> = faces.to_vec();
        triangles.extend(faces.iter().map(|f| f.map(|v| v + 4)));
        let s = SimplicialSurface::new(TriangleSoup { vertices, triangles }).unwrap();
        assert_eq!(s.report().components, 2);
        assert!(check_embedding(&s).is_err());
    }
}
