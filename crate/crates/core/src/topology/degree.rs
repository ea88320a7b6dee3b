//! Degree mod 2 of simplicial maps between closed surfaces.

use thiserror::Error;

use crate::mesh::{SimplicialSurface, Triangle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("expected {expected} vertex images, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("vertex {vertex} maps to {image}, outside the codomain")]
    ImageOutOfRange { vertex: usize, image: usize },
    #[error("image of domain triangle {triangle} does not span a codomain simplex")]
    NotSimplicial { triangle: usize },
    #[error("preimage counts differ between codomain triangles {first} and {second}")]
    DegreeNotConstant { first: usize, second: usize },
}

#[derive(Debug, Clone)]
pub struct SimplicialMapZ2<'a> {
    domain: &'a SimplicialSurface,
    codomain: &'a SimplicialSurface,
    vertex_images: Vec<usize>,
}

impl<'a> SimplicialMapZ2<'a> {
    pub fn new(domain: &'a SimplicialSurface, codomain: &'a SimplicialSurface, vertex_images: Vec<usize>) -> Result<Self, DegreeError> {
        let n = domain.vertices().len();
        if vertex_images.len() != n {
            return Err(DegreeError::WrongLength { expected: n, got: vertex_images.len() });
        }
        let m = codomain.vertices().len();
        if let Some((vertex, &image)) = vertex_images.iter().enumerate().find(|(_, &w)| w >= m) {
            return Err(DegreeError::ImageOutOfRange { vertex, image });
        }
        let map = SimplicialMapZ2 { domain, codomain, vertex_images };
        for t in 0..domain.triangles().len() {
            map.image_of(t)?;
        }
        Ok(map)
    }

    pub fn identity(surface: &'a SimplicialSurface) -> Self {
        SimplicialMapZ2 { domain: surface, codomain: surface, vertex_images: (0..surface.vertices().len()).collect() }
    }

    pub fn vertex_images(&self) -> &[usize] {
        &self.vertex_images
    }

    /// The codomain triangle hit non-degenerately by domain triangle `t`, if any.
    fn image_of(&self, t: usize) -> Result<Option<usize>, DegreeError> {
        let [a, b, c] = self.domain.triangles()[t].0.map(|v| self.vertex_images[v]);
        let spans = |x: usize, y: usize| x == y || self.codomain.edge_id(x, y).is_some();
        if !(spans(a, b) && spans(b, c) && spans(a, c)) {
            return Err(DegreeError::NotSimplicial { triangle: t });
        }
        if a == b || b == c || a == c {
            return Ok(None);
        }
        let target = Triangle::new(a, b, c).sorted();
        let [e0, e1] = self.codomain.edges()[self.codomain.edge_id(a, b).unwrap()].triangles;
        for f in [e0, e1] {
            if self.codomain.triangles()[f].sorted() == target {
                return Ok(Some(f));
            }
        }
        // three pairwise adjacent vertices that bound no triangle
        Err(DegreeError::NotSimplicial { triangle: t })
    }

    /// Preimage count mod 2 for each codomain triangle.
    pub fn preimage_parities(&self) -> Vec<u8> {
        let mut parity = vec![0u8; self.codomain.triangles().len()];
        for t in 0..self.domain.triangles().len() {
            if let Some(f) = self.image_of(t).expect("checked at construction") {
                parity[f] ^= 1;
            }
        }
        parity
    }

    pub fn degree_mod2(&self) -> Result<u8, DegreeError> {
        let parity = self.preimage_parities();
        let first = parity[0];
        match parity.iter().position(|&p| p != first) {
            Some(second) => Err(DegreeError::DegreeNotConstant { first: 0, second }),
            None => Ok(first),
        }
    }
}

pub fn degree_mod2(map: &SimplicialMapZ2<'_>) -> Result<u8, DegreeError> {
    map.degree_mod2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::builtin::{clifford_torus, flat_torus_grid, octahedron_s2};

    #[test]
    fn identity_has_degree_one() {
        let t = clifford_torus(4).unwrap();
        assert_eq!(SimplicialMapZ2::identity(&t).degree_mod2(), Ok(1));
    }

    #[test]
    fn constant_map_has_degree_zero() {
        let t = clifford_torus(3).unwrap();
        let map = SimplicialMapZ2::new(&t, &t, vec![0; 9]).unwrap();
        assert_eq!(map.degree_mod2(), Ok(0));
    }

    #[test]
    fn double_cover_has_degree_zero() {
        let n = 3;
        let big = flat_torus_grid(2 * n, n).unwrap();
        let small = flat_torus_grid(n, n).unwrap();
        // vertex (i, j) has index i·cols + j
        let images = (0..2 * n * n).map(|v| (v / n % n) * n + v % n).collect();
        let map = SimplicialMapZ2::new(&big, &small, images).unwrap();
        assert!(map.preimage_parities().iter().all(|&p| p == 0));
        assert_eq!(map.degree_mod2(), Ok(0));
    }

    #[test]
    fn non_simplicial_images_are_rejected() {
        let s = octahedron_s2().unwrap();
        // 4 and 5 are antipodal, so no edge joins them
        let mut images: Vec<usize> = (0..6).collect();
        images[0] = 5;
        assert!(matches!(SimplicialMapZ2::new(&s, &s, images), Err(DegreeError::NotSimplicial { .. })));
        assert!(matches!(SimplicialMapZ2::new(&s, &s, vec![0; 5]), Err(DegreeError::WrongLength { .. })));
    }
}
