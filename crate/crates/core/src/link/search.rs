//! Search for avoiding planes whose traces on the slice link γ.
//!
//! For `x` in the hull `L_γ` of a slice curve, a 2-plane through `x` that
//! misses the surface and is transverse to `Π` meets `Π` in a line `l_x`.
//! A flat γ looks for one such line with winding `±1`. A spatial γ looks
//! for two disjoint lines around which γ reads a commutator.

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::{membrane_choices, winding_single_line, word_with_membranes, LinkConfig, LinkError, Line3, WordReport};
use super::word::is_commutator_class;
use crate::convexity::{grid_directions, plane_avoids_surface, Avoidance, AvoidanceCertificate, ConvexityError, Plane2};
use crate::hyperplane::Chart;
use crate::mesh::SimplicialSurface;
use crate::rational::{int, Rational};
use crate::slicing::{ConvexHull3, SlicingResult};
use crate::vector::{cross, dot, from_ints, is_zero, scale, sub, Point4, Vec3, Vec4};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkBudget {
    /// Seeded interior points tried besides the barycenter.
    pub extra_points: usize,
    /// Direction planes tried through each point.
    pub planes_per_point: usize,
    /// Cap on evaluated `(point, plane)` candidates; `0` evaluates nothing.
    pub max_candidates: usize,
    pub seed: u64,
}

impl Default for LinkBudget {
    fn default() -> Self {
        LinkBudget { extra_points: 8, planes_per_point: 64, max_candidates: 1024, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    NotTransverse,
    Intersects { triangle: usize },
    Avoids { winding: Option<i64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub point: usize,
    pub plane: Plane2,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub first: usize,
    pub second: usize,
    /// Cyclic word, or why no word was read.
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidingLine {
    pub x: Point4,
    pub certificate: AvoidanceCertificate,
    /// `π_x ∩ Π` in chart coordinates.
    pub line: Line3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LinkOutcome {
    Branch1 { found: AvoidingLine, winding: i64 },
    Branch2 { first: AvoidingLine, second: AvoidingLine, config: LinkConfig, word: WordReport },
    Exhausted { points: Vec<Point4>, candidates: Vec<CandidateRecord>, pairs: Vec<PairRecord> },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("slice has {0} curve components, expected one")]
    NotConnected(usize),
    #[error("slice curve has no convex hull")]
    NoHull,
    #[error(transparent)]
    Convexity(#[from] ConvexityError),
    #[error(transparent)]
    Link(#[from] LinkError),
}

fn to_local_direction(chart: &Chart, d: &Vec4) -> Vec3 {
    let zero: Vec4 = from_ints([0, 0, 0, 0]);
    sub(&chart.to_local(d), &chart.to_local(&zero))
}

/// Direction of `plane ∩ Π` for a plane through a point of `Π`, `None` if the
/// plane is not transverse to `Π`.
fn trace_direction(normal: &Vec4, plane: &Plane2) -> Option<Vec4> {
    let nu = dot(normal, &plane.u);
    let nv = dot(normal, &plane.v);
    if nu.is_zero() && nv.is_zero() {
        return None;
    }
    let d = sub(&scale(&plane.u, &nv), &scale(&plane.v, &nu));
    (!is_zero(&d)).then_some(d)
}

/// Barycenter followed by seeded strictly positive combinations of the hull
/// vertices (or polygon vertices for a flat hull).
fn candidate_points(hull: &ConvexHull3, budget: &LinkBudget) -> Vec<Vec3> {
    let corners: &[usize] = if hull.planar { &hull.polygon } else { &hull.vertices };
    let combo = |w: &[i64]| -> Vec3 {
        let total = int(w.iter().sum());
        std::array::from_fn(|k| corners.iter().zip(w).map(|(&i, &wi)| &hull.points[i][k] * int(wi)).sum::<Rational>() / &total)
    };
    let mut out = vec![combo(&vec![1; corners.len()])];
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.extra_points {
        let w: Vec<i64> = (0..corners.len()).map(|_| rng.gen_range(1..=8)).collect();
        let p = combo(&w);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Transverse planes through `x` containing the normal line of a flat γ.
fn flat_planes(chart: &Chart, normal4: &Vec4, axis: &Vec3, x: &Vec4, count: usize) -> Vec<Plane2> {
    let d = chart.lift_direction(axis);
    let mut out = Vec::new();
    for (u, v) in grid_directions(count * 2) {
        for t in [from_ints(u), from_ints(v)] {
            if out.len() == count {
                return out;
            }
            if dot(normal4, &t).is_zero() {
                continue;
            }
            if let Ok(p) = Plane2::new(Point4(x.clone()), d.clone(), t) {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    if out.is_empty() && count > 0 {
        if let Ok(p) = Plane2::new(Point4(x.clone()), d, normal4.clone()) {
            out.push(p);
        }
    }
    out
}

fn grid_planes(x: &Vec4, count: usize) -> Vec<Plane2> {
    grid_directions(count).into_iter().filter_map(|(u, v)| Plane2::new(Point4(x.clone()), from_ints(u), from_ints(v)).ok()).collect()
}

/// Search the slice for the linking configuration, trying the planes in
/// `seed_planes` (each based at a point of `Π`) before the generated ones.
pub fn search_theorem1_configuration(
    slice: &SlicingResult,
    surface: &SimplicialSurface,
    budget: &LinkBudget,
    seed_planes: &[Plane2],
) -> Result<LinkOutcome, SearchError> {
    if slice.gamma.len() != 1 {
        return Err(SearchError::NotConnected(slice.gamma.len()));
    }
    let hull = slice.hull.as_ref().ok_or(SearchError::NoHull)?;
    let chart = slice.pi.chart();
    let normal4 = slice.pi.normal.clone();
    let gamma: Vec<Vec3> = slice.gamma[0].vertices().iter().map(|p| chart.to_local(&p.0)).collect();

    let mut points: Vec<Point4> = Vec::new();
    let mut planes: Vec<(usize, Plane2)> = Vec::new();
    for plane in seed_planes {
        if slice.pi.contains(&plane.base.0) {
            let i = points.iter().position(|p| *p == plane.base).unwrap_or_else(|| {
                points.push(plane.base.clone());
                points.len() - 1
            });
            planes.push((i, plane.clone()));
        }
    }
    let flat_axis = hull.planar.then(|| {
        let p = &hull.points;
        let [a, b, c] = [hull.polygon[0], hull.polygon[1], hull.polygon[2]];
        cross(&sub(&p[b], &p[a]), &sub(&p[c], &p[a]))
    });
    for y in candidate_points(hull, budget) {
        let x = chart.lift(&y);
        let i = points.len();
        points.push(Point4(x.clone()));
        let generated = match &flat_axis {
            Some(axis) => flat_planes(&chart, &normal4, axis, &x, budget.planes_per_point),
            None => grid_planes(&x, budget.planes_per_point),
        };
        planes.extend(generated.into_iter().map(|p| (i, p)));
    }
    planes.truncate(budget.max_candidates);

    let mut candidates: Vec<CandidateRecord> = Vec::new();
    let mut found: Vec<(usize, AvoidingLine)> = Vec::new();
    let mut pairs: Vec<PairRecord> = Vec::new();
    for (point, plane) in planes {
        let Some(d4) = trace_direction(&normal4, &plane) else {
            candidates.push(CandidateRecord { point, plane, verdict: Verdict::NotTransverse });
            continue;
        };
        let certificate = match plane_avoids_surface(&plane, surface)? {
            Avoidance::Intersects { triangle, .. } => {
                candidates.push(CandidateRecord { point, plane, verdict: Verdict::Intersects { triangle } });
                continue;
            }
            Avoidance::Avoids(c) => c,
        };
        let line = Line3::new(chart.to_local(&plane.base.0), to_local_direction(&chart, &d4))?;
        let current = AvoidingLine { x: plane.base.clone(), certificate, line };
        let index = candidates.len();
        if hull.planar {
            let winding = winding_single_line(&gamma, &current.line).ok();
            candidates.push(CandidateRecord { point, plane, verdict: Verdict::Avoids { winding } });
            if winding.is_some_and(|w| w.abs() == 1) {
                return Ok(LinkOutcome::Branch1 { found: current, winding: winding.unwrap() });
            }
            continue;
        }
        candidates.push(CandidateRecord { point, plane, verdict: Verdict::Avoids { winding: None } });
        for (j, earlier) in &found {
            let config = LinkConfig { gamma: gamma.clone(), l1: earlier.line.clone(), l2: current.line.clone(), membranes: None };
            let outcome = match config.check() {
                Err(e) => e.to_string(),
                Ok(()) => match membrane_choices(&config, 1).into_iter().next() {
                    None => "no valid membrane pair".to_string(),
                    Some(m) => {
                        let word = word_with_membranes(&gamma, &m);
                        if is_commutator_class(&word.cyclic) {
                            let config = LinkConfig { membranes: Some(m), ..config };
                            return Ok(LinkOutcome::Branch2 { first: earlier.clone(), second: current, config, word });
                        }
                        format!("word {}", if word.cyclic.is_empty() { "1".to_string() } else { word.cyclic.to_string() })
                    }
                },
            };
            pairs.push(PairRecord { first: *j, second: index, outcome });
        }
        found.push((index, current));
    }
    if candidates.is_empty() {
        points.clear();
    }
    Ok(LinkOutcome::Exhausted { points, candidates, pairs })
}
