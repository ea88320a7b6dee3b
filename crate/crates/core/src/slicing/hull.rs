//! Exact convex hulls of slice curves inside their hyperplane.

use std::collections::HashSet;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::SliceError;
use crate::hyperplane::Hyperplane;
use crate::rational::{int, serde_rational, serde_rational_array, serde_rational_arrays, Rational};
use crate::vector::{cross, dot, orient2d, orient3d, sub, Point4, Vec3};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullFace {
    pub vertices: [usize; 3],
    /// Outward normal: every input point satisfies `⟨normal, y⟩ ≤ offset`.
    #[serde(with = "serde_rational_array")]
    pub normal: Vec3,
    #[serde(with = "serde_rational")]
    pub offset: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexHull3 {
    pub hyperplane: Hyperplane,
    /// Input points in the hyperplane's chart coordinates.
    #[serde(with = "serde_rational_arrays")]
    pub points: Vec<Vec3>,
    /// Indices of input points that are hull vertices, ascending.
    pub vertices: Vec<usize>,
    /// Empty for planar hulls.
    pub faces: Vec<HullFace>,
    pub planar: bool,
    /// Boundary cycle of a planar hull, counter-clockwise in the two kept chart coordinates.
    pub polygon: Vec<usize>,
}

impl ConvexHull3 {
    /// Whether `y` (chart coordinates) satisfies every face inequality,
    /// strictly if `strict`.
    pub fn contains_local(&self, y: &Vec3, strict: bool) -> bool {
        !self.planar
            && self.faces.iter().all(|f| {
                let s = dot(&f.normal, y) - &f.offset;
                if strict {
                    s.is_negative()
                } else {
                    !s.is_positive()
                }
            })
    }
}

fn sign(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Convex hull of the points of a closed curve lying in `pi`.
pub fn convex_hull_in_slice(points: &[Point4], pi: &Hyperplane) -> Result<ConvexHull3, SliceError> {
    if points.len() < 3 {
        return Err(SliceError::TooFewPoints(points.len()));
    }
    let chart = pi.chart();
    let local: Vec<Vec3> = points.iter().map(|p| chart.to_local(&p.0)).collect();

    let i0 = 0;
    let i1 = (1..local.len()).find(|&i| local[i] != local[i0]).ok_or(SliceError::CollinearAll)?;
    let e1 = sub(&local[i1], &local[i0]);
    let i2 = (0..local.len())
        .find(|&i| cross(&e1, &sub(&local[i], &local[i0])).iter().any(|c| !c.is_zero()))
        .ok_or(SliceError::CollinearAll)?;
    let i3 = (0..local.len()).find(|&i| orient3d(&local[i0], &local[i1], &local[i2], &local[i]) != 0);

    let mut hull = ConvexHull3 {
        hyperplane: pi.clone(),
        points: local,
        vertices: Vec::new(),
        faces: Vec::new(),
        planar: i3.is_none(),
        polygon: Vec::new(),
    };
    match i3 {
        None => planar_hull(&mut hull, [i0, i1, i2]),
        Some(i3) => spatial_hull(&mut hull, [i0, i1, i2, i3]),
    }
    Ok(hull)
}

fn planar_hull(hull: &mut ConvexHull3, seed: [usize; 3]) {
    let p = &hull.points;
    let normal = cross(&sub(&p[seed[1]], &p[seed[0]]), &sub(&p[seed[2]], &p[seed[0]]));
    // drop the coordinate along which the plane projects bijectively
    let drop = normal.iter().position(|c| !c.is_zero()).unwrap();
    let keep: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
    let proj = |i: usize| -> [Rational; 2] { [p[i][keep[0]].clone(), p[i][keep[1]].clone()] };
    let mut idx: Vec<usize> = (0..p.len()).collect();
    idx.sort_by(|&a, &b| proj(a).cmp(&proj(b)));
    idx.dedup_by(|a, b| proj(*a) == proj(*b));
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && orient2d(&proj(lower[lower.len() - 2]), &proj(lower[lower.len() - 1]), &proj(i)) <= 0 {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && orient2d(&proj(upper[upper.len() - 2]), &proj(upper[upper.len() - 1]), &proj(i)) <= 0 {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let mut verts = lower.clone();
    verts.sort_unstable();
    hull.polygon = lower;
    hull.vertices = verts;
}

fn spatial_hull(hull: &mut ConvexHull3, seed: [usize; 4]) {
    let p = &hull.points;
    let [a, b, c, d] = seed;
    let mut faces: Vec<[usize; 3]> =
        if orient3d(&p[a], &p[b], &p[c], &p[d]) < 0 { vec![[a, b, c], [a, c, d], [a, d, b], [b, d, c]] } else { vec![[a, c, b], [a, b, d], [a, d, c], [b, c, d]] };
    // faces are oriented so that orient3d(face, interior) < 0
    for i in 0..p.len() {
        if seed.contains(&i) {
            continue;
        }
        let visible: Vec<bool> = faces.iter().map(|f| orient3d(&p[f[0]], &p[f[1]], &p[f[2]], &p[i]) > 0).collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let edges: HashSet<(usize, usize)> = faces
            .iter()
            .zip(&visible)
            .filter(|(_, &v)| v)
            .flat_map(|(f, _)| [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])])
            .collect();
        let mut next: Vec<[usize; 3]> = faces.iter().zip(&visible).filter(|(_, &v)| !v).map(|(f, _)| *f).collect();
        let mut horizon: Vec<(usize, usize)> = edges.iter().copied().filter(|&(x, y)| !edges.contains(&(y, x))).collect();
        horizon.sort_unstable();
        next.extend(horizon.into_iter().map(|(x, y)| [x, y, i]));
        faces = next;
    }
    let mut verts: Vec<usize> = faces.iter().flatten().copied().collect::<HashSet<_>>().into_iter().collect();
    verts.sort_unstable();
    hull.vertices = verts;
    hull.faces = faces
        .into_iter()
        .map(|f| {
            let normal = cross(&sub(&p[f[1]], &p[f[0]]), &sub(&p[f[2]], &p[f[0]]));
            let offset = dot(&normal, &p[f[0]]);
            HullFace { vertices: f, normal, offset }
        })
        .collect();
}

/// A point strictly inside a full-dimensional hull: the barycenter of its vertices.
pub fn interior_point(hull: &ConvexHull3) -> Result<Point4, SliceError> {
    if hull.planar {
        return Err(SliceError::PlanarHull);
    }
    let n = int(hull.vertices.len() as i64);
    let center: Vec3 = std::array::from_fn(|k| hull.vertices.iter().map(|&i| hull.points[i][k].clone()).sum::<Rational>() / &n);
    // positive weights on affinely spanning vertices put the average strictly inside
    debug_assert!(hull.contains_local(&center, true));
    if !hull.contains_local(&center, true) {
        return Err(SliceError::PlanarHull);
    }
    Ok(Point4(hull.hyperplane.chart().lift(&center)))
}

/// Signs of each face functional at `y`, for reporting.
pub fn face_signs(hull: &ConvexHull3, y: &Vec3) -> Vec<i32> {
    hull.faces.iter().map(|f| sign(&(dot(&f.normal, y) - &f.offset))).collect()
}
