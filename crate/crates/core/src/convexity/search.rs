//! Search over direction planes for an avoiding 2-plane through a point.
//!
//! A deterministic grid of integer direction pairs is scanned in batches;
//! the first batch containing a plane with positive margin is confirmed with
//! the direct feasibility test, lowest index first. Failing that, the best
//! grid sample is perturbed greedily with halving step sizes.

use std::collections::HashSet;

use num::integer::gcd;
use num::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certificate::{plane_avoids_surface, Avoidance, AvoidanceCertificate};
use super::margin::{MarginScore, Projection};
use super::reduction::{reduce_in_hyperplane, Reduction};
use super::{triangle_containing, ConvexityError, Plane2};
use crate::hyperplane::Hyperplane;
use crate::mesh::SimplicialSurface;
use crate::rational::{one, rat, serde_rational_array, Rational};
use crate::vector::{add, dot, from_ints, independent2, scale, sub, unit, Point4, Vec4};

const BATCH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub grid_samples: usize,
    pub refine_rounds: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { grid_samples: 2000, refine_rounds: 8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Grid { index: usize },
    Refinement { round: usize, neighbour: usize },
    HyperplaneLine,
}

/// Orthogonal spanning pair of a direction plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrassmannSample {
    #[serde(with = "serde_rational_array")]
    pub u: Vec4,
    #[serde(with = "serde_rational_array")]
    pub v: Vec4,
    pub provenance: Provenance,
}

impl GrassmannSample {
    /// Keeps `u` and replaces `v` by its component orthogonal to `u`.
    pub fn new(u: Vec4, v: Vec4, provenance: Provenance) -> Option<Self> {
        if !independent2(&u, &v) {
            return None;
        }
        let k = dot(&u, &v) / dot(&u, &u);
        let v = sub(&v, &scale(&u, &k));
        Some(GrassmannSample { u, v, provenance })
    }
}

/// Primitive representatives of lines in Z⁴ with entries in `[-h, h]`.
fn directions(h: i64) -> Vec<[i64; 4]> {
    let r = -h..=h;
    let mut out = Vec::new();
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    let v = [a, b, c, d];
                    let g = v.iter().fold(0i64, |g, &x| gcd(g, x));
                    let lead = v.iter().find(|&&x| x != 0);
                    if g == 1 && lead.is_some_and(|&x| x > 0) {
                        out.push(v);
                    }
                }
            }
        }
    }
    out.sort_by_key(|v| (v.iter().map(|x| x.abs()).max(), v.iter().map(|x| x.abs()).sum::<i64>()));
    out
}

fn plucker(u: &[i64; 4], v: &[i64; 4]) -> Option<[i64; 6]> {
    let mut p = [0i64; 6];
    let mut k = 0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            p[k] = u[i] * v[j] - u[j] * v[i];
            k += 1;
        }
    }
    let g = p.iter().fold(0i64, |g, &x| gcd(g, x));
    if g == 0 {
        return None;
    }
    let sign = p.iter().find(|&&x| x != 0).map(|x| x.signum()).unwrap();
    Some(p.map(|x| x / g * sign))
}

/// The first `count` distinct direction planes: the six coordinate planes
/// (starting with `span(e₃,e₄)`, `span(e₁,e₂)`), then pairs of primitive
/// integer directions by increasing height.
pub fn grid_directions(count: usize) -> Vec<([i64; 4], [i64; 4])> {
    let e = |i: usize| {
        let mut v = [0i64; 4];
        v[i] = 1;
        v
    };
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    let coordinate = [(2, 3), (0, 1), (0, 2), (0, 3), (1, 2), (1, 3)];
    let mut push = |u: [i64; 4], v: [i64; 4], out: &mut Vec<_>| {
        if let Some(p) = plucker(&u, &v) {
            if seen.insert(p) {
                out.push((u, v));
            }
        }
    };
    for (i, j) in coordinate {
        if out.len() == count {
            return out;
        }
        push(e(i), e(j), &mut out);
    }
    for h in 1..=4 {
        let dirs = directions(h);
        for j in 0..dirs.len() {
            for i in 0..j {
                if out.len() == count {
                    return out;
                }
                push(dirs[i], dirs[j], &mut out);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum NegativeEvidence {
    /// Not a proof: the search budget ran out.
    SamplingExhausted { samples_evaluated: usize, best: MarginScore },
    /// Exact: the surface lies in `hyperplane`, and the ray from the point
    /// along `ray_direction` crosses it transversally an odd number of times,
    /// so every line through the point inside the hyperplane meets the
    /// surface. Every 2-plane through the point contains such a line.
    HyperplaneReduction {
        hyperplane: Hyperplane,
        #[serde(with = "serde_rational_array")]
        ray_direction: Vec4,
        crossings: Vec<usize>,
    },
}

impl NegativeEvidence {
    pub fn is_conclusive(&self) -> bool {
        matches!(self, NegativeEvidence::HyperplaneReduction { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CertifyResult {
    Certified { certificate: AvoidanceCertificate },
    Negative { evidence: NegativeEvidence },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SearchTrace {
    pub samples_evaluated: usize,
    /// Best score after the grid and after each refinement round.
    pub best_scores: Vec<MarginScore>,
    pub winner: Option<GrassmannSample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyReport {
    pub point: Point4,
    pub result: CertifyResult,
    pub trace: SearchTrace,
}

impl CertifyReport {
    pub fn certificate(&self) -> Option<&AvoidanceCertificate> {
        match &self.result {
            CertifyResult::Certified { certificate } => Some(certificate),
            CertifyResult::Negative { .. } => None,
        }
    }
}

struct Evaluated {
    sample: GrassmannSample,
    score: MarginScore,
}

fn evaluate(surface: &SimplicialSurface, x: &Point4, samples: Vec<GrassmannSample>) -> Vec<Evaluated> {
    samples
        .into_par_iter()
        .map(|sample| {
            let score = Projection::new(&sample.u, &sample.v).expect("grid samples have rank two").score(surface, x);
            Evaluated { sample, score }
        })
        .collect()
}

/// Confirm the lowest-index clear sample with the direct test.
fn confirm_first(surface: &SimplicialSurface, x: &Point4, chunk: &[GrassmannSample], clear: &[bool]) -> Option<(GrassmannSample, AvoidanceCertificate)> {
    chunk.iter().zip(clear).filter(|(_, &c)| c).find_map(|(s, _)| {
        let plane = Plane2::new(x.clone(), s.u.clone(), s.v.clone()).ok()?;
        match plane_avoids_surface(&plane, surface).ok()? {
            Avoidance::Avoids(cert) => Some((s.clone(), cert)),
            Avoidance::Intersects { .. } => None,
        }
    })
}

/// Confirm the lowest-index positive-margin sample with the direct test.
fn confirm(surface: &SimplicialSurface, x: &Point4, batch: &[Evaluated]) -> Option<(GrassmannSample, AvoidanceCertificate)> {
    batch.iter().filter(|e| e.score.margin.is_positive()).find_map(|e| {
        let plane = Plane2::new(x.clone(), e.sample.u.clone(), e.sample.v.clone()).ok()?;
        match plane_avoids_surface(&plane, surface).ok()? {
            Avoidance::Avoids(cert) => Some((e.sample.clone(), cert)),
            Avoidance::Intersects { .. } => None,
        }
    })
}

fn neighbours(s: &GrassmannSample, round: usize) -> Vec<GrassmannSample> {
    let delta = rat(1, 1i64 << round.min(62));
    let mut out = Vec::with_capacity(16);
    for k in 0..4 {
        for sign in [one(), -one()] {
            let step = scale(&unit(k), &(&delta * &sign));
            let n = out.len();
            let prov = |m: usize| Provenance::Refinement { round, neighbour: m };
            out.extend(GrassmannSample::new(add(&s.u, &step), s.v.clone(), prov(n)));
            let n = out.len();
            out.extend(GrassmannSample::new(s.u.clone(), add(&s.v, &step), prov(n)));
        }
    }
    out
}

fn certified(x: &Point4, sample: GrassmannSample, certificate: AvoidanceCertificate, mut trace: SearchTrace) -> CertifyReport {
    trace.winner = Some(sample);
    CertifyReport { point: x.clone(), result: CertifyResult::Certified { certificate }, trace }
}

/// Look for an avoiding 2-plane through `x`.
pub fn certify_point(surface: &SimplicialSurface, x: &Point4, budget: &SearchBudget) -> Result<CertifyReport, ConvexityError> {
    if let Some(triangle) = triangle_containing(surface, x) {
        return Err(ConvexityError::PointOnSurface { triangle });
    }
    let mut trace = SearchTrace::default();

    match reduce_in_hyperplane(surface, x) {
        Ok(Reduction::Evidence(evidence)) => {
            return Ok(CertifyReport { point: x.clone(), result: CertifyResult::Negative { evidence }, trace });
        }
        Ok(Reduction::Certificate(certificate)) => {
            let p = &certificate.plane;
            let sample = GrassmannSample { u: p.u.clone(), v: p.v.clone(), provenance: Provenance::HyperplaneLine };
            return Ok(certified(x, sample, certificate, trace));
        }
        Ok(Reduction::Undecided) | Err(_) => {}
    }

    let grid: Vec<GrassmannSample> = grid_directions(budget.grid_samples)
        .into_iter()
        .enumerate()
        .filter_map(|(index, (u, v))| GrassmannSample::new(from_ints(u), from_ints(v), Provenance::Grid { index }))
        .collect();
    // positive margin is decided by containment alone; full scores are only
    // needed to rank samples once the whole grid has failed
    for chunk in grid.chunks(BATCH) {
        let clear: Vec<bool> = chunk
            .par_iter()
            .map(|g| Projection::new(&g.u, &g.v).expect("grid samples have rank two").is_clear(surface, x))
            .collect();
        trace.samples_evaluated += clear.iter().position(|&c| c).map_or(chunk.len(), |i| i + 1);
        if let Some(found) = confirm_first(surface, x, chunk, &clear) {
            return Ok(certified(x, found.0, found.1, trace));
        }
    }
    let best = evaluate(surface, x, grid).into_iter().reduce(|b, e| if e.score.better_than(&b.score) { e } else { b });
    let Some(mut current) = best else {
        let best = MarginScore { margin: Rational::zero(), hits: usize::MAX };
        let evidence = NegativeEvidence::SamplingExhausted { samples_evaluated: 0, best };
        return Ok(CertifyReport { point: x.clone(), result: CertifyResult::Negative { evidence }, trace });
    };
    trace.best_scores.push(current.score.clone());

    for round in 1..=budget.refine_rounds {
        let batch = evaluate(surface, x, neighbours(&current.sample, round));
        trace.samples_evaluated += batch.len();
        if let Some((sample, cert)) = confirm(surface, x, &batch) {
            return Ok(certified(x, sample, cert, trace));
        }
        for e in batch {
            if e.score.better_than(&current.score) {
                current = e;
            }
        }
        trace.best_scores.push(current.score.clone());
    }

    let evidence = NegativeEvidence::SamplingExhausted { samples_evaluated: trace.samples_evaluated, best: current.score };
    Ok(CertifyReport { point: x.clone(), result: CertifyResult::Negative { evidence }, trace })
}
