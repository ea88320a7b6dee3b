//! Local mesh modifications and rigid motions. Every result is re-validated.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{MeshError, NonManifold, SimplicialSurface, TriangleSoup};
use crate::rational::{int, Rational};
use crate::vector::{add, Point4, Vec4};

/// Replace edge `(a, b)` by the other diagonal of its two triangles,
/// preserving the orientation of the quadrilateral.
pub fn flip_edge(surface: &SimplicialSurface, a: usize, b: usize) -> Result<SimplicialSurface, MeshError> {
    let e = surface
        .edge_id(a, b)
        .ok_or(MeshError::NonManifold(NonManifold::Edge { a: a.min(b), b: a.max(b), count: 0 }))?;
    let [t1, t2] = surface.edges()[e].triangles;
    let tris = surface.triangles();
    // orient so that t1 runs a -> b
    let (first, second) = if tris[t1].directed_edges().contains(&(a, b)) { (t1, t2) } else { (t2, t1) };
    let c = *tris[first].0.iter().find(|&&v| v != a && v != b).unwrap();
    let d = *tris[second].0.iter().find(|&&v| v != a && v != b).unwrap();
    let mut soup = surface.to_soup();
    soup.triangles[first] = [a, d, c];
    soup.triangles[second] = [d, b, c];
    SimplicialSurface::new(soup)
}

/// Stellar subdivision of triangle `t` at its barycenter. The new vertex is
/// appended and has valence three.
pub fn subdivide_triangle(surface: &SimplicialSurface, t: usize) -> Result<SimplicialSurface, MeshError> {
    let [a, b, c] = surface.triangles()[t].0;
    let pts = surface.triangle_points(t);
    let sum = add(&add(&pts[0], &pts[1]), &pts[2]);
    let center = Point4(sum.map(|x| x / int(3)));
    let mut soup = surface.to_soup();
    let m = soup.vertices.len();
    soup.vertices.push(center);
    soup.triangles[t] = [a, b, m];
    soup.triangles.push([b, c, m]);
    soup.triangles.push([c, a, m]);
    SimplicialSurface::new(soup)
}

/// `x ↦ M x + shift` applied to every vertex.
pub fn transform_point(p: &Point4, matrix: &[[Rational; 4]; 4], shift: &Vec4) -> Point4 {
    let c = p.coords();
    Point4(std::array::from_fn(|i| {
        (0..4).fold(shift[i].clone(), |acc, j| acc + &matrix[i][j] * &c[j])
    }))
}

pub fn transform(surface: &SimplicialSurface, matrix: &[[Rational; 4]; 4], shift: &Vec4) -> Result<SimplicialSurface, MeshError> {
    let soup = TriangleSoup {
        vertices: surface.vertices().iter().map(|p| transform_point(p, matrix, shift)).collect(),
        triangles: surface.triangles().iter().map(|t| t.0).collect(),
    };
    SimplicialSurface::new(soup)
}

/// `steps` seeded stellar subdivisions and edge flips. Flips that would
/// create a duplicate edge or a vertex of valence below three are skipped.
pub fn random_remesh(surface: &SimplicialSurface, steps: usize, seed: u64) -> Result<SimplicialSurface, MeshError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = surface.clone();
    for _ in 0..steps {
        if rng.gen_bool(0.5) {
            let t = rng.gen_range(0..current.triangles().len());
            current = subdivide_triangle(&current, t)?;
        } else {
            let e = &current.edges()[rng.gen_range(0..current.edges().len())];
            let (a, b) = (e.a, e.b);
            if current.valence(a) > 3 && current.valence(b) > 3 {
                if let Ok(next) = flip_edge(&current, a, b) {
                    current = next;
                }
            }
        }
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::builtin::octahedron_s2;

    #[test]
    fn subdivision_adds_a_valence_three_vertex() {
        let s = octahedron_s2().unwrap();
        let sub = subdivide_triangle(&s, 0).unwrap();
        assert_eq!(sub.vertices().len(), 7);
        assert_eq!(sub.valence(6), 3);
        assert_eq!(sub.euler_characteristic(), 2);
        assert!(sub.report().orientable);
    }

    #[test]
    fn flip_and_flip_back() {
        // the only non-edges of the octahedron join antipodes, so flipping (0,2) creates (4,5)
        let s = octahedron_s2().unwrap();
        let flipped = flip_edge(&s, 0, 2).unwrap();
        assert!(flipped.edge_id(4, 5).is_some());
        assert!(flipped.report().orientable);
        assert_eq!(flipped.valence(0), 3);
        // flipping back across (4,5) restores valence
        let back = flip_edge(&flipped, 4, 5).unwrap();
        assert_eq!(back.valence(0), 4);
    }
}
