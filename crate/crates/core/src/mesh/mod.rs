//! Closed triangulated surfaces in E⁴.
//!
//! A [`TriangleSoup`] is unchecked input. [`SimplicialSurface::new`] runs the
//! full validator and only ever produces closed 2-manifolds whose triangles
//! are affinely nondegenerate and whose vertices are pairwise distinct.
//! Nothing is repaired: any violation is an error.

pub mod builtin;
pub mod embedding;
pub mod off4;
pub mod ops;

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vector::{independent2, sub, Point4};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeshError {
    #[error("triangle {triangle} references vertex {index}, but only {vertex_count} vertices exist")]
    IndexOutOfRange { triangle: usize, index: usize, vertex_count: usize },
    #[error("triangle {triangle} is degenerate")]
    DegenerateTriangle { triangle: usize },
    #[error("vertices {first} and {second} share coordinates")]
    DuplicateVertex { first: usize, second: usize },
    #[error("non-manifold: {0}")]
    NonManifold(NonManifold),
    #[error("surface has no triangles")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NonManifold {
    #[error("edge ({a}, {b}) is incident to {count} triangles")]
    Edge { a: usize, b: usize, count: usize },
    #[error("link of vertex {vertex} is not a single cycle")]
    VertexLink { vertex: usize },
    #[error("vertex {vertex} is not used by any triangle")]
    IsolatedVertex { vertex: usize },
}

impl From<NonManifold> for MeshError {
    fn from(e: NonManifold) -> Self {
        MeshError::NonManifold(e)
    }
}

/// A triangle stored with its smallest index first; the cyclic order (and so
/// the orientation) of the input is preserved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triangle(pub [usize; 3]);

impl Triangle {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        let v = [a, b, c];
        let m = (0..3).min_by_key(|&i| v[i]).unwrap();
        Triangle([v[m], v[(m + 1) % 3], v[(m + 2) % 3]])
    }

    pub fn vertices(&self) -> [usize; 3] {
        self.0
    }

    /// `true` when the stored cycle is increasing after the first vertex.
    pub fn orientation_flag(&self) -> bool {
        self.0[1] < self.0[2]
    }

    /// Directed boundary edges in cyclic order.
    pub fn directed_edges(&self) -> [(usize, usize); 3] {
        let [a, b, c] = self.0;
        [(a, b), (b, c), (c, a)]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn sorted(&self) -> [usize; 3] {
        let mut s = self.0;
        s.sort_unstable();
        s
    }

    pub fn reversed(&self) -> Self {
        let [a, b, c] = self.0;
        Triangle::new(a, c, b)
    }
}

/// Unchecked vertex and triangle lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TriangleSoup {
    pub vertices: Vec<Point4>,
    pub triangles: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    /// Endpoints with `a < b`.
    pub a: usize,
    pub b: usize,
    pub triangles: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeshReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub triangle_count: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub components: usize,
    pub min_valence: usize,
    pub max_valence: usize,
    pub pl5_ok: bool,
    pub gauss_bonnet_sum: i64,
}

#[derive(Debug, Clone)]
pub struct SimplicialSurface {
    vertices: Vec<Point4>,
    triangles: Vec<Triangle>,
    edges: Vec<Edge>,
    edge_lookup: HashMap<(usize, usize), usize>,
    vertex_triangles: Vec<Vec<usize>>,
    report: MeshReport,
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

struct Combinatorics {
    triangles: Vec<Triangle>,
    edges: Vec<Edge>,
    edge_lookup: HashMap<(usize, usize), usize>,
    vertex_triangles: Vec<Vec<usize>>,
}

fn build_combinatorics(soup: &TriangleSoup) -> Result<Combinatorics, MeshError> {
    let nv = soup.vertices.len();
    if soup.triangles.is_empty() {
        return Err(MeshError::Empty);
    }
    let mut triangles = Vec::with_capacity(soup.triangles.len());
    for (t, &[a, b, c]) in soup.triangles.iter().enumerate() {
        for index in [a, b, c] {
            if index >= nv {
                return Err(MeshError::IndexOutOfRange { triangle: t, index, vertex_count: nv });
            }
        }
        if a == b || b == c || a == c {
            return Err(MeshError::DegenerateTriangle { triangle: t });
        }
        triangles.push(Triangle::new(a, b, c));
    }

    let mut seen: HashMap<&Point4, usize> = HashMap::with_capacity(nv);
    for (i, p) in soup.vertices.iter().enumerate() {
        if let Some(&first) = seen.get(p) {
            return Err(MeshError::DuplicateVertex { first, second: i });
        }
        seen.insert(p, i);
    }

    for (t, tri) in triangles.iter().enumerate() {
        let [a, b, c] = tri.0;
        let p = soup.vertices[a].coords();
        let u = sub(soup.vertices[b].coords(), p);
        let v = sub(soup.vertices[c].coords(), p);
        if !independent2(&u, &v) {
            return Err(MeshError::DegenerateTriangle { triangle: t });
        }
    }

    let mut incidence: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (t, tri) in triangles.iter().enumerate() {
        for (x, y) in tri.directed_edges() {
            incidence.entry(edge_key(x, y)).or_default().push(t);
        }
    }
    let mut edges = Vec::with_capacity(incidence.len());
    let mut edge_lookup = HashMap::with_capacity(incidence.len());
    for ((a, b), ts) in incidence {
        if ts.len() != 2 {
            return Err(NonManifold::Edge { a, b, count: ts.len() }.into());
        }
        edge_lookup.insert((a, b), edges.len());
        edges.push(Edge { a, b, triangles: [ts[0], ts[1]] });
    }

    let mut vertex_triangles = vec![Vec::new(); nv];
    for (t, tri) in triangles.iter().enumerate() {
        for v in tri.0 {
            vertex_triangles[v].push(t);
        }
    }
    for (v, star) in vertex_triangles.iter().enumerate() {
        if star.is_empty() {
            return Err(NonManifold::IsolatedVertex { vertex: v }.into());
        }
        if !link_is_single_cycle(v, star, &triangles) {
            return Err(NonManifold::VertexLink { vertex: v }.into());
        }
    }
    Ok(Combinatorics { triangles, edges, edge_lookup, vertex_triangles })
}

fn link_is_single_cycle(v: usize, star: &[usize], triangles: &[Triangle]) -> bool {
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for &t in star {
        let others: Vec<usize> = triangles[t].0.iter().copied().filter(|&w| w != v).collect();
        adj.entry(others[0]).or_default().push(others[1]);
        adj.entry(others[1]).or_default().push(others[0]);
    }
    if adj.values().any(|n| n.len() != 2) {
        return false;
    }
    let start = *adj.keys().min().unwrap();
    let mut visited = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in &adj[&x] {
            if visited.insert(y) {
                stack.push(y);
            }
        }
    }
    visited.len() == adj.len()
}

/// Orientation propagation across the dual graph. Returns the per-triangle
/// flips of a coherent orientation, or `None` when non-orientable, plus the
/// number of connected components.
fn propagate_orientation(c: &Combinatorics) -> (Option<Vec<bool>>, usize) {
    let nt = c.triangles.len();
    let mut flip: Vec<Option<bool>> = vec![None; nt];
    let mut orientable = true;
    let mut components = 0;
    for seed in 0..nt {
        if flip[seed].is_some() {
            continue;
        }
        components += 1;
        flip[seed] = Some(false);
        let mut queue = VecDeque::from([seed]);
        while let Some(t) = queue.pop_front() {
            let ft = flip[t].unwrap();
            for (x, y) in c.triangles[t].directed_edges() {
                let e = &c.edges[c.edge_lookup[&edge_key(x, y)]];
                let other = if e.triangles[0] == t { e.triangles[1] } else { e.triangles[0] };
                let same_direction = c.triangles[other].directed_edges().contains(&(x, y));
                let wanted = ft ^ same_direction;
                match flip[other] {
                    None => {
                        flip[other] = Some(wanted);
                        queue.push_back(other);
                    }
                    Some(f) if f != wanted => orientable = false,
                    Some(_) => {}
                }
            }
        }
    }
    let flips = orientable.then(|| flip.into_iter().map(Option::unwrap).collect());
    (flips, components)
}

fn report_for(nv: usize, c: &Combinatorics) -> MeshReport {
    let (flips, components) = propagate_orientation(c);
    let valences: Vec<usize> = c.vertex_triangles.iter().map(Vec::len).collect();
    let euler = nv as i64 - c.edges.len() as i64 + c.triangles.len() as i64;
    let gauss_bonnet_sum: i64 = valences.iter().map(|&d| 6 - d as i64).sum();
    assert_eq!(gauss_bonnet_sum, 6 * euler, "combinatorial Gauss–Bonnet must hold on a closed surface");
    let pl5_ok = valences.iter().all(|&d| (3..=5).contains(&d));
    // each term 6 - deg v is then at least one
    assert!(!pl5_ok || euler > 0);
    MeshReport {
        vertex_count: nv,
        edge_count: c.edges.len(),
        triangle_count: c.triangles.len(),
        euler_characteristic: euler,
        orientable: flips.is_some(),
        components,
        min_valence: valences.iter().copied().min().unwrap_or(0),
        max_valence: valences.iter().copied().max().unwrap_or(0),
        pl5_ok,
        gauss_bonnet_sum,
    }
}

/// Full validation of an unchecked soup.
pub fn validate(soup: &TriangleSoup) -> Result<MeshReport, MeshError> {
    let c = build_combinatorics(soup)?;
    Ok(report_for(soup.vertices.len(), &c))
}

impl SimplicialSurface {
    pub fn new(soup: TriangleSoup) -> Result<Self, MeshError> {
        let c = build_combinatorics(&soup)?;
        let report = report_for(soup.vertices.len(), &c);
        Ok(SimplicialSurface {
            vertices: soup.vertices,
            triangles: c.triangles,
            edges: c.edges,
            edge_lookup: c.edge_lookup,
            vertex_triangles: c.vertex_triangles,
            report,
        })
    }

    pub fn from_parts(vertices: Vec<Point4>, triangles: Vec<[usize; 3]>) -> Result<Self, MeshError> {
        Self::new(TriangleSoup { vertices, triangles })
    }

    pub fn vertices(&self) -> &[Point4] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Point4 {
        &self.vertices[v]
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn report(&self) -> &MeshReport {
        &self.report
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.report.euler_characteristic
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_lookup.get(&edge_key(a, b)).copied()
    }

    /// Triangles incident to `v`.
    pub fn star(&self, v: usize) -> &[usize] {
        &self.vertex_triangles[v]
    }

    /// Number of edges (equivalently triangles) at `v`.
    pub fn valence(&self, v: usize) -> usize {
        self.vertex_triangles[v].len()
    }

    pub fn triangle_points(&self, t: usize) -> [crate::vector::Vec4; 3] {
        self.triangles[t].0.map(|v| self.vertices[v].0.clone())
    }

    /// Neighbouring vertices of `v`, in cyclic order around the link.
    pub fn link_cycle(&self, v: usize) -> Vec<usize> {
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &t in self.star(v) {
            let o: Vec<usize> = self.triangles[t].0.iter().copied().filter(|&w| w != v).collect();
            adj.entry(o[0]).or_default().push(o[1]);
            adj.entry(o[1]).or_default().push(o[0]);
        }
        let start = *adj.keys().next().unwrap();
        let mut cycle = vec![start];
        let mut prev = start;
        let mut cur = adj[&start][0];
        while cur != start {
            cycle.push(cur);
            let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
            prev = cur;
            cur = next;
        }
        cycle
    }

    pub fn to_soup(&self) -> TriangleSoup {
        TriangleSoup { vertices: self.vertices.clone(), triangles: self.triangles.iter().map(|t| t.0).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn tetra_soup() -> TriangleSoup {
        TriangleSoup {
            vertices: vec![
                Point4::from_ints([0, 0, 0, 0]),
                Point4::from_ints([1, 0, 0, 0]),
                Point4::from_ints([0, 1, 0, 0]),
                Point4::from_ints([0, 0, 1, 0]),
            ],
            triangles: vec![[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]],
        }
    }

    #[test]
    fn triangle_canonical_rotation_keeps_orientation() {
        let t = Triangle::new(5, 2, 9);
        assert_eq!(t.0, [2, 9, 5]);
        assert!(!t.orientation_flag());
        assert_eq!(t.reversed().0, [2, 5, 9]);
    }

    #[test]
    fn tetrahedron_is_an_orientable_sphere() {
        let r = validate(&tetra_soup()).unwrap();
        assert_eq!((r.vertex_count, r.edge_count, r.triangle_count), (4, 6, 4));
        assert_eq!(r.euler_characteristic, 2);
        assert!(r.orientable);
        assert!(r.pl5_ok);
        assert_eq!(r.gauss_bonnet_sum, 12);
    }

    #[test]
    fn rejects_open_surfaces() {
        let mut s = tetra_soup();
        s.triangles.pop();
        assert!(matches!(validate(&s), Err(MeshError::NonManifold(NonManifold::Edge { count: 1, .. }))));
    }

    #[test]
    fn rejects_edge_with_three_triangles() {
        let mut s = tetra_soup();
        s.vertices.push(Point4::from_ints([0, 0, 0, 1]));
        s.triangles.push([0, 1, 4]);
        assert!(matches!(validate(&s), Err(MeshError::NonManifold(NonManifold::Edge { count: 3, .. }))));
    }

    #[test]
    fn rejects_pinched_vertex() {
        // two tetrahedra glued at vertex 0
        let mut s = tetra_soup();
        s.vertices.push(Point4::from_ints([0, 0, 0, 1]));
        s.vertices.push(Point4::from_ints([0, 1, 0, 1]));
        s.vertices.push(Point4::from_ints([1, 0, 0, 2]));
        s.triangles.extend([[0, 5, 4], [0, 4, 6], [0, 6, 5], [4, 5, 6]]);
        assert!(matches!(validate(&s), Err(MeshError::NonManifold(NonManifold::VertexLink { vertex: 0 }))));
    }

    #[test]
    fn rejects_degenerate_and_duplicate_input() {
        let mut s = tetra_soup();
        s.vertices[3] = Point4::new(int(2), int(-1), int(0), int(0));
        assert!(matches!(validate(&s), Err(MeshError::DegenerateTriangle { .. })));
        let mut s = tetra_soup();
        s.vertices[3] = s.vertices[0].clone();
        assert!(matches!(validate(&s), Err(MeshError::DuplicateVertex { first: 0, second: 3 })));
        let mut s = tetra_soup();
        s.triangles[0] = [0, 0, 1];
        assert!(matches!(validate(&s), Err(MeshError::DegenerateTriangle { triangle: 0 })));
        let mut s = tetra_soup();
        s.triangles[0] = [0, 7, 1];
        assert!(matches!(validate(&s), Err(MeshError::IndexOutOfRange { index: 7, .. })));
        assert!(matches!(validate(&TriangleSoup::default()), Err(MeshError::Empty)));
    }

    #[test]
    fn isolated_vertex_is_rejected() {
        let mut s = tetra_soup();
        s.vertices.push(Point4::from_ints([5, 5, 5, 5]));
        assert!(matches!(validate(&s), Err(MeshError::NonManifold(NonManifold::IsolatedVertex { vertex: 4 }))));
    }

    #[test]
    fn link_cycle_walks_the_neighbours() {
        let s = SimplicialSurface::new(tetra_soup()).unwrap();
        let mut link = s.link_cycle(0);
        assert_eq!(link.len(), 3);
        link.sort();
        assert_eq!(link, vec![1, 2, 3]);
    }
}
