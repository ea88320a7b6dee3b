//! Slicing a surface near a support vertex.
//!
//! A vertex `p` maximizing a linear functional `⟨·, d⟩` stands in for the
//! point where a shrinking ball first touches the surface. Cutting with the
//! hyperplane halfway between the two highest vertex levels separates `p`
//! from everything else, so the part on `p`'s side is the cone from `p` over
//! its link and the slice curve has one segment per incident triangle.

mod hull;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use hull::{convex_hull_in_slice, face_signs, interior_point, ConvexHull3, HullFace};

use crate::hyperplane::Hyperplane;
use crate::mesh::SimplicialSurface;
use crate::rational::{half, serde_rational, to_f64, Rational};
use crate::vector::{axpy, dot, sub, Point4, Vec4};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("vertex {vertex} is not the unique maximizer of the direction")]
    NotStrictSupport { vertex: usize },
    #[error("vertex {vertex} lies on the slicing hyperplane")]
    VertexOnSlice { vertex: usize },
    #[error("the hyperplane does not cut the surface")]
    EmptyIntersection,
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("all points are collinear")]
    CollinearAll,
    #[error("hull is planar")]
    PlanarHull,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportVertex {
    pub vertex: usize,
    pub strict: bool,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

/// Argmax of `⟨x_v, d⟩`, ties broken towards the lexicographically smallest point.
pub fn find_support_vertex(surface: &SimplicialSurface, direction: &Vec4) -> Result<SupportVertex, SliceError> {
    if direction.iter().all(Zero::is_zero) {
        return Err(SliceError::ZeroDirection);
    }
    let values: Vec<Rational> = surface.vertices().iter().map(|p| dot(&p.0, direction)).collect();
    let top = values.iter().max().unwrap().clone();
    let tied: Vec<usize> = (0..values.len()).filter(|&i| values[i] == top).collect();
    let vertex = *tied.iter().min_by_key(|&&i| surface.vertex(i)).unwrap();
    Ok(SupportVertex { vertex, strict: tied.len() == 1, value: top })
}

/// Hyperplane `⟨·, d⟩ = (top + second)/2` for a strict support vertex `p`.
pub fn choose_slice(surface: &SimplicialSurface, p: usize, direction: &Vec4) -> Result<Hyperplane, SliceError> {
    if direction.iter().all(Zero::is_zero) {
        return Err(SliceError::ZeroDirection);
    }
    let top = dot(&surface.vertex(p).0, direction);
    let mut second: Option<Rational> = None;
    for (i, q) in surface.vertices().iter().enumerate() {
        if i == p {
            continue;
        }
        let v = dot(&q.0, direction);
        if v >= top {
            return Err(SliceError::NotStrictSupport { vertex: p });
        }
        if second.as_ref().is_none_or(|s| &v > s) {
            second = Some(v);
        }
    }
    let second = second.ok_or(SliceError::NotStrictSupport { vertex: p })?;
    Ok(Hyperplane { normal: direction.clone(), offset: (top + second) * half() })
}

/// Point where the hyperplane crosses mesh edge `edge = (a, b)`, at `a + t(b − a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutPoint {
    pub edge: usize,
    pub a: usize,
    pub b: usize,
    #[serde(with = "serde_rational")]
    pub t: Rational,
    pub point: Point4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonalCurve {
    pub points: Vec<CutPoint>,
    /// Triangle containing the segment from `points[i]` to `points[i + 1]` (cyclically).
    pub segment_triangles: Vec<usize>,
    pub closed: bool,
}

impl PolygonalCurve {
    pub fn segment_count(&self) -> usize {
        self.segment_triangles.len()
    }

    pub fn vertices(&self) -> Vec<Point4> {
        self.points.iter().map(|c| c.point.clone()).collect()
    }
}

/// One side of the cut as a cell complex: whole triangles plus the clipped
/// pieces of cut triangles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideComplex {
    pub vertices: Vec<usize>,
    pub triangles: Vec<usize>,
    pub clipped: Vec<usize>,
    pub euler_characteristic: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeCheck {
    pub vertex: usize,
    pub valence: usize,
    pub k: usize,
    pub connected: bool,
    pub clipped_star_only: bool,
    pub chi_plus: i64,
    pub pl5_range: bool,
}

impl ConeCheck {
    pub fn holds(&self) -> bool {
        self.connected && self.k == self.valence && self.clipped_star_only && self.chi_plus == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlicingResult {
    pub p: Option<usize>,
    pub pi: Hyperplane,
    pub gamma: Vec<PolygonalCurve>,
    pub k: usize,
    pub s_plus: SideComplex,
    pub s_minus: SideComplex,
    /// Hull of γ when γ is connected.
    pub hull: Option<ConvexHull3>,
    pub cone: Option<ConeCheck>,
}

fn side_complex(surface: &SimplicialSurface, sides: &[i32], want: i32, cut_edges: usize) -> SideComplex {
    let vertices: Vec<usize> = (0..sides.len()).filter(|&v| sides[v] == want).collect();
    let mut triangles = Vec::new();
    let mut clipped = Vec::new();
    for (t, tri) in surface.triangles().iter().enumerate() {
        let on = tri.0.iter().filter(|&&v| sides[v] == want).count();
        match on {
            3 => triangles.push(t),
            1 | 2 => clipped.push(t),
            _ => {}
        }
    }
    let whole_edges =
        surface.edges().iter().filter(|e| sides[e.a] == want && sides[e.b] == want).count();
    // cells: own vertices + cut points; whole edges + half edges + slice segments
    let v = vertices.len() + cut_edges;
    let e = whole_edges + cut_edges + clipped.len();
    let f = triangles.len() + clipped.len();
    SideComplex { euler_characteristic: v as i64 - e as i64 + f as i64, vertices, triangles, clipped }
}

/// Cut the surface along `pi`; no vertex may lie on it.
pub fn slice_surface(surface: &SimplicialSurface, pi: &Hyperplane) -> Result<SlicingResult, SliceError> {
    let sides: Vec<i32> = surface.vertices().iter().map(|p| pi.side(&p.0)).collect();
    if let Some(vertex) = sides.iter().position(|&s| s == 0) {
        return Err(SliceError::VertexOnSlice { vertex });
    }
    let mut cuts: BTreeMap<usize, CutPoint> = BTreeMap::new();
    for (id, e) in surface.edges().iter().enumerate() {
        if sides[e.a] != sides[e.b] {
            let (pa, pb) = (&surface.vertex(e.a).0, &surface.vertex(e.b).0);
            let (fa, fb) = (pi.eval(pa), pi.eval(pb));
            let t = &fa / (&fa - fb);
            let point = Point4(axpy(pa, &t, &sub(pb, pa)));
            cuts.insert(id, CutPoint { edge: id, a: e.a, b: e.b, t, point });
        }
    }
    if cuts.is_empty() {
        return Err(SliceError::EmptyIntersection);
    }

    // each cut triangle joins its two cut edges
    let mut links: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (t, tri) in surface.triangles().iter().enumerate() {
        let [a, b, c] = tri.0;
        let ids: Vec<usize> = [(a, b), (b, c), (c, a)]
            .into_iter()
            .map(|(x, y)| surface.edge_id(x, y).unwrap())
            .filter(|id| cuts.contains_key(id))
            .collect();
        if let [e0, e1] = ids[..] {
            links.entry(e0).or_default().push((e1, t));
            links.entry(e1).or_default().push((e0, t));
        }
    }

    let mut visited = std::collections::BTreeSet::new();
    let mut gamma = Vec::new();
    for &start in cuts.keys() {
        if visited.contains(&start) {
            continue;
        }
        let mut points = Vec::new();
        let mut segment_triangles = Vec::new();
        let mut current = start;
        let mut came_by: Option<usize> = None;
        loop {
            visited.insert(current);
            points.push(cuts[&current].clone());
            let &(next, t) = links[&current].iter().find(|&&(_, t)| Some(t) != came_by).unwrap();
            segment_triangles.push(t);
            came_by = Some(t);
            current = next;
            if current == start {
                break;
            }
        }
        gamma.push(PolygonalCurve { points, segment_triangles, closed: true });
    }

    let k = gamma.iter().map(PolygonalCurve::segment_count).sum();
    let s_plus = side_complex(surface, &sides, 1, cuts.len());
    let s_minus = side_complex(surface, &sides, -1, cuts.len());
    let hull = match &gamma[..] {
        [single] => convex_hull_in_slice(&single.vertices(), pi).ok(),
        _ => None,
    };
    Ok(SlicingResult { p: None, pi: pi.clone(), gamma, k, s_plus, s_minus, hull, cone: None })
}

/// Support vertex, midpoint slice, and the cone check at `p`.
pub fn slice_at_support(surface: &SimplicialSurface, direction: &Vec4) -> Result<SlicingResult, SliceError> {
    let support = find_support_vertex(surface, direction)?;
    if !support.strict {
        return Err(SliceError::NotStrictSupport { vertex: support.vertex });
    }
    let p = support.vertex;
    let pi = choose_slice(surface, p, direction)?;
    let mut result = slice_surface(surface, &pi)?;
    let star = surface.star(p);
    let cone = ConeCheck {
        vertex: p,
        valence: surface.valence(p),
        k: result.k,
        connected: result.gamma.len() == 1,
        clipped_star_only: result.s_plus.triangles.is_empty()
            && result.s_plus.vertices == vec![p]
            && result.s_plus.clipped.len() == star.len()
            && result.s_plus.clipped.iter().all(|t| star.contains(t)),
        chi_plus: result.s_plus.euler_characteristic,
        pl5_range: (3..=5).contains(&result.k),
    };
    result.p = Some(p);
    result.cone = Some(cone);
    Ok(result)
}

/// `x y` rows of γ in the first two chart coordinates of the slice, one
/// block per component, each closed by repeating its first point.
pub fn plot_data(result: &SlicingResult) -> String {
    let chart = result.pi.chart();
    let mut out = String::new();
    for (i, curve) in result.gamma.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let pts = curve.vertices();
        for p in pts.iter().chain(pts.first()) {
            let l = chart.to_local(&p.0);
            let _ = writeln!(out, "{} {}", to_f64(&l[0]), to_f64(&l[1]));
        }
    }
    out
}
