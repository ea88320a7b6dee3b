//! Lines, membranes and the crossing walk in slice coordinates.
//!
//! A membrane is the half-plane `{ base + t·dir + s·sweep : s ≥ 0 }` bounded
//! by a line. A closed curve missing both lines crosses the membranes of
//! `l₁` and `l₂` transversally; recording `a` or `b` at each crossing, with
//! sign `det[segment, line direction, sweep]`, spells the class of the curve
//! in π₁ of the two-line complement. A loop turning counter-clockwise around
//! `+dir` therefore reads `a`.

use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::word::{FreeWord, Letter};
use crate::linalg::feasible_point;
use crate::predicates::flat_meets_simplex;
use crate::rational::{rat, serde_rational_array, serde_rational_arrays, Rational};
use crate::vector::{add, cross, det3, dot, is_zero, neg, scale, sub, unit, Vec3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("line direction must be nonzero")]
    ZeroDirection,
    #[error("the two lines intersect")]
    LinesMeet,
    #[error("curve needs at least 3 vertices, got {0}")]
    CurveTooShort(usize),
    #[error("curve segment {segment} touches line {line}")]
    CurveTouchesLine { segment: usize, line: usize },
    #[error("curve vertex {vertex} lies on membrane {membrane}")]
    NonTransversalCrossing { vertex: usize, membrane: usize },
    #[error("membrane {membrane} is invalid: {reason}")]
    InvalidMembrane { membrane: usize, reason: String },
    #[error("no valid membrane pair after {attempts} candidates")]
    NoValidMembrane { attempts: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Line3 {
    #[serde(with = "serde_rational_array")]
    pub base: Vec3,
    #[serde(with = "serde_rational_array")]
    pub dir: Vec3,
}

impl Line3 {
    pub fn new(base: Vec3, dir: Vec3) -> Result<Self, LinkError> {
        if is_zero(&dir) {
            return Err(LinkError::ZeroDirection);
        }
        Ok(Line3 { base, dir })
    }

    pub fn disjoint_from(&self, other: &Line3) -> bool {
        let w = sub(&other.base, &self.base);
        let n = cross(&self.dir, &other.dir);
        if is_zero(&n) {
            // parallel: distinct unless the offset runs along the direction
            return !is_zero(&cross(&w, &self.dir));
        }
        !dot(&n, &w).is_zero()
    }

    pub fn meets_segment(&self, p: &Vec3, q: &Vec3) -> bool {
        flat_meets_simplex(&self.base, std::slice::from_ref(&self.dir), &[p.clone(), q.clone()]).is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membrane {
    pub line: Line3,
    #[serde(with = "serde_rational_array")]
    pub sweep: Vec3,
}

/// `Σ aᵢ xᵢ = rhs` with the listed variables nonnegative.
fn feasible(columns: &[Vec3], rhs: &Vec3, nonneg: &[usize]) -> bool {
    let rows: Vec<Vec<Rational>> = (0..3).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    feasible_point(&rows, rhs, columns.len(), nonneg).is_some()
}

impl Membrane {
    pub fn normal(&self) -> Vec3 {
        cross(&self.line.dir, &self.sweep)
    }

    pub fn is_transverse(&self) -> bool {
        !is_zero(&self.normal())
    }

    pub fn contains_point(&self, x: &Vec3) -> bool {
        // base + t·dir + s·sweep = x, s ≥ 0
        feasible(&[self.line.dir.clone(), self.sweep.clone()], &sub(x, &self.line.base), &[1])
    }

    pub fn meets_line(&self, l: &Line3) -> bool {
        feasible(&[self.line.dir.clone(), self.sweep.clone(), neg(&l.dir)], &sub(&l.base, &self.line.base), &[1])
    }

    pub fn meets_membrane(&self, other: &Membrane) -> bool {
        let cols = [self.line.dir.clone(), self.sweep.clone(), neg(&other.line.dir), neg(&other.sweep)];
        feasible(&cols, &sub(&other.line.base, &self.line.base), &[1, 3])
    }

    /// Signed crossing of segment `p → q`: `Some(±1)`, `None` if it misses.
    /// Endpoints must already be known to lie off the membrane.
    fn crossing(&self, p: &Vec3, q: &Vec3) -> Option<i32> {
        let n = self.normal();
        let sp = dot(&n, &sub(p, &self.line.base));
        let sq = dot(&n, &sub(q, &self.line.base));
        if !(sp.is_positive() && sq.is_negative() || sp.is_negative() && sq.is_positive()) {
            return None;
        }
        let tau = &sp / (&sp - &sq);
        let x = add(p, &scale(&sub(q, p), &tau));
        // sweep coordinate of the crossing point
        let s = dot(&cross(&self.line.dir, &sub(&x, &self.line.base)), &n);
        if !s.is_positive() {
            return None;
        }
        let d = det3(&sub(q, p), &self.line.dir, &self.sweep);
        Some(if d.is_positive() { 1 } else { -1 })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkConfig {
    /// Closed polygon; the last vertex joins back to the first.
    #[serde(with = "serde_rational_arrays")]
    pub gamma: Vec<Vec3>,
    pub l1: Line3,
    pub l2: Line3,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub membranes: Option<[Membrane; 2]>,
}

fn segments(gamma: &[Vec3]) -> impl Iterator<Item = (usize, &Vec3, &Vec3)> {
    (0..gamma.len()).map(move |i| (i, &gamma[i], &gamma[(i + 1) % gamma.len()]))
}

impl LinkConfig {
    pub fn check(&self) -> Result<(), LinkError> {
        if self.gamma.len() < 3 {
            return Err(LinkError::CurveTooShort(self.gamma.len()));
        }
        if is_zero(&self.l1.dir) || is_zero(&self.l2.dir) {
            return Err(LinkError::ZeroDirection);
        }
        if !self.l1.disjoint_from(&self.l2) {
            return Err(LinkError::LinesMeet);
        }
        for (line, l) in [(0, &self.l1), (1, &self.l2)] {
            if let Some((segment, _, _)) = segments(&self.gamma).find(|(_, p, q)| l.meets_segment(p, q)) {
                return Err(LinkError::CurveTouchesLine { segment, line });
            }
        }
        Ok(())
    }
}

fn membrane_problem(m: &Membrane, other: &Line3, gamma: &[Vec3]) -> Option<String> {
    if !m.is_transverse() {
        return Some("sweep is parallel to the line".into());
    }
    if m.meets_line(other) {
        return Some("meets the other line".into());
    }
    if gamma.iter().any(|x| m.contains_point(x)) {
        return Some("contains a curve vertex".into());
    }
    None
}

/// Validate a membrane pair for a configuration.
pub fn check_membranes(config: &LinkConfig, membranes: &[Membrane; 2]) -> Result<(), LinkError> {
    let others = [&config.l2, &config.l1];
    for (i, m) in membranes.iter().enumerate() {
        if m.line != *[&config.l1, &config.l2][i] {
            return Err(LinkError::InvalidMembrane { membrane: i, reason: "bounded by the wrong line".into() });
        }
        if let Some(reason) = membrane_problem(m, others[i], &config.gamma) {
            if reason == "contains a curve vertex" {
                let vertex = config.gamma.iter().position(|x| m.contains_point(x)).unwrap();
                return Err(LinkError::NonTransversalCrossing { vertex, membrane: i });
            }
            return Err(LinkError::InvalidMembrane { membrane: i, reason });
        }
    }
    if membranes[0].meets_membrane(&membranes[1]) {
        return Err(LinkError::InvalidMembrane { membrane: 1, reason: "meets the other membrane".into() });
    }
    Ok(())
}

/// Sweep directions pointing from `other` towards `line`, perpendicular to `line`.
fn away_direction(line: &Line3, other: &Line3) -> Option<Vec3> {
    let n = cross(&line.dir, &other.dir);
    let w = sub(&line.base, &other.base);
    let v = if is_zero(&n) {
        // parallel: the offset with its component along the lines removed
        let k = dot(&w, &line.dir) / dot(&line.dir, &line.dir);
        sub(&w, &scale(&line.dir, &k))
    } else if dot(&n, &w).is_negative() {
        neg(&n)
    } else {
        n
    };
    (!is_zero(&v)).then_some(v)
}

/// Fixed candidate sweeps for a line, starting with the away direction.
pub fn sweep_candidates(line: &Line3, other: Option<&Line3>) -> Vec<Vec3> {
    let mut out: Vec<Vec3> = Vec::new();
    let away = other.and_then(|o| away_direction(line, o));
    if let Some(a) = &away {
        out.push(a.clone());
    }
    for k in 0..3 {
        let c = cross(&line.dir, &unit(k));
        if !is_zero(&c) {
            out.push(c.clone());
            out.push(neg(&c));
        }
    }
    // bounded perturbation of the first candidates
    let seeds: Vec<Vec3> = out.iter().take(3).cloned().collect();
    for base in seeds {
        for k in 0..3 {
            for step in [rat(1, 3), rat(-1, 3), rat(1, 7), rat(-1, 7)] {
                out.push(add(&base, &scale(&unit(k), &step)));
            }
        }
    }
    out.retain(|s| !is_zero(&cross(&line.dir, s)));
    let mut seen = Vec::new();
    out.retain(|s| {
        // sweeps are directions, so only positive multiples coincide
        let key = (crate::vector::projective_normalize(s), first_sign(s));
        let fresh = !seen.contains(&key);
        if fresh {
            seen.push(key);
        }
        fresh
    });
    out
}

/// All valid membrane pairs in candidate order, at most `limit`.
pub fn membrane_choices(config: &LinkConfig, limit: usize) -> Vec<[Membrane; 2]> {
    let c1 = sweep_candidates(&config.l1, Some(&config.l2));
    let c2 = sweep_candidates(&config.l2, Some(&config.l1));
    let m1: Vec<Membrane> = c1
        .into_iter()
        .map(|sweep| Membrane { line: config.l1.clone(), sweep })
        .filter(|m| membrane_problem(m, &config.l2, &config.gamma).is_none())
        .collect();
    let m2: Vec<Membrane> = c2
        .into_iter()
        .map(|sweep| Membrane { line: config.l2.clone(), sweep })
        .filter(|m| membrane_problem(m, &config.l1, &config.gamma).is_none())
        .collect();
    let mut out = Vec::new();
    for a in &m1 {
        for b in &m2 {
            if out.len() == limit {
                return out;
            }
            if !a.meets_membrane(b) {
                out.push([a.clone(), b.clone()]);
            }
        }
    }
    out
}

pub fn choose_membranes(config: &LinkConfig) -> Result<[Membrane; 2], LinkError> {
    config.check()?;
    let attempts = sweep_candidates(&config.l1, Some(&config.l2)).len() * sweep_candidates(&config.l2, Some(&config.l1)).len();
    membrane_choices(config, 1).into_iter().next().ok_or(LinkError::NoValidMembrane { attempts })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordReport {
    /// Letters in traversal order from the first vertex, unreduced.
    pub raw: FreeWord,
    pub word: FreeWord,
    pub cyclic: FreeWord,
    pub membranes: [Membrane; 2],
}

/// Read the word of the curve with the configured membranes, or the first
/// valid pair if none are configured.
pub fn word_of_curve(config: &LinkConfig) -> Result<WordReport, LinkError> {
    config.check()?;
    let membranes = match &config.membranes {
        Some(m) => {
            check_membranes(config, m)?;
            m.clone()
        }
        None => choose_membranes(config)?,
    };
    Ok(word_with_membranes(&config.gamma, &membranes))
}

/// Crossing walk with already validated membranes.
pub fn word_with_membranes(gamma: &[Vec3], membranes: &[Membrane; 2]) -> WordReport {
    let mut raw = Vec::new();
    for (_, p, q) in segments(gamma) {
        let mut hits: Vec<(Rational, Letter)> = Vec::new();
        for (g, m) in membranes.iter().enumerate() {
            if let Some(sign) = m.crossing(p, q) {
                // order crossings along the segment by parameter
                let n = m.normal();
                let sp = dot(&n, &sub(p, &m.line.base));
                let sq = dot(&n, &sub(q, &m.line.base));
                hits.push((&sp / (&sp - &sq), Letter::from_generator(g, sign > 0)));
            }
        }
        hits.sort_by(|x, y| x.0.cmp(&y.0));
        raw.extend(hits.into_iter().map(|(_, l)| l));
    }
    let raw = FreeWord(raw);
    WordReport { word: raw.reduced(), cyclic: raw.canonical_cyclic(), raw, membranes: membranes.clone() }
}

/// Signed crossings with one membrane of `l`: the winding number of γ around `l`.
pub fn winding_single_line(gamma: &[Vec3], l: &Line3) -> Result<i64, LinkError> {
    if is_zero(&l.dir) {
        return Err(LinkError::ZeroDirection);
    }
    if let Some((segment, _, _)) = segments(gamma).find(|(_, p, q)| l.meets_segment(p, q)) {
        return Err(LinkError::CurveTouchesLine { segment, line: 0 });
    }
    let candidates = sweep_candidates(l, None);
    let attempts = candidates.len();
    let m = candidates
        .into_iter()
        .map(|sweep| Membrane { line: l.clone(), sweep })
        .find(|m| !gamma.iter().any(|x| m.contains_point(x)))
        .ok_or(LinkError::NoValidMembrane { attempts })?;
    Ok(segments(gamma).filter_map(|(_, p, q)| m.crossing(p, q)).map(i64::from).sum())
}

/// `Σ ±1` helper kept for callers that already hold a membrane.
pub fn signed_crossings(gamma: &[Vec3], m: &Membrane) -> i64 {
    segments(gamma).filter_map(|(_, p, q)| m.crossing(p, q)).map(i64::from).sum()
}

fn first_sign(v: &Vec3) -> bool {
    v.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_positive())
}

/// A seeded valid configuration: two disjoint lines near `x = ±1` and a
/// lattice polygon with 4 to 12 vertices winding among them.
pub fn random_config(seed: u64) -> LinkConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small = |rng: &mut ChaCha8Rng| -> Vec3 { std::array::from_fn(|_| rat(rng.gen_range(-3..=3), 1)) };
    loop {
        let mut d1 = small(&mut rng);
        let mut d2 = small(&mut rng);
        d1[2] = rat(rng.gen_range(1..=3), 1);
        d2[2] = rat(rng.gen_range(1..=3), 1);
        let l1 = Line3 { base: [rat(-1, 1), rat(0, 1), rat(0, 1)], dir: d1 };
        let l2 = Line3 { base: [rat(1, 1), rat(0, 1), rat(1, 2)], dir: d2 };
        let n = rng.gen_range(4..=12);
        // odd denominators keep vertices off lattice-aligned membranes
        let gamma: Vec<Vec3> = (0..n).map(|_| std::array::from_fn(|_| rat(rng.gen_range(-27..=27), 7))).collect();
        let config = LinkConfig { gamma, l1, l2, membranes: None };
        if config.check().is_ok() && membrane_choices(&config, 2).len() == 2 {
            return config;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::from_ints;

    fn line(b: [i64; 3], d: [i64; 3]) -> Line3 {
        Line3::new(from_ints(b), from_ints(d)).unwrap()
    }

    fn curve(v: &[[i64; 3]]) -> Vec<Vec3> {
        v.iter().map(|&c| from_ints(c)).collect()
    }

    fn fig1() -> LinkConfig {
        let gamma = curve(&[
            [0, 1, 0],
            [-2, 1, 1],
            [-2, -1, 2],
            [2, -1, 3],
            [2, 1, 4],
            [0, 2, 5],
            [0, -2, 6],
            [-3, -2, 7],
            [-3, 2, 8],
            [3, 2, 9],
            [3, -2, 10],
            [0, -3, 11],
        ]);
        LinkConfig { gamma, l1: line([-1, 0, 0], [0, 0, 1]), l2: line([1, 0, 0], [0, 0, 1]), membranes: None }
    }

    fn square_around(cx: i64, cy: i64) -> Vec<Vec3> {
        curve(&[[cx - 1, cy - 1, 0], [cx + 1, cy - 1, 0], [cx + 1, cy + 1, 0], [cx - 1, cy + 1, 0]])
    }

    #[test]
    fn fig1_reads_commutator() {
        let r = word_of_curve(&fig1()).unwrap();
        assert_eq!(r.word.to_string(), "abAB");
        assert!(super::super::word::is_commutator_class(&r.cyclic));
    }

    #[test]
    fn circle_around_one_line() {
        let c = LinkConfig { gamma: square_around(-1, 0), ..fig1() };
        assert_eq!(word_of_curve(&c).unwrap().word.to_string(), "a");
        let rev: Vec<Vec3> = c.gamma.iter().rev().cloned().collect();
        assert_eq!(word_of_curve(&LinkConfig { gamma: rev, ..c }).unwrap().word.to_string(), "A");
    }

    #[test]
    fn far_curve_is_trivial() {
        let c = LinkConfig { gamma: square_around(10, 10), ..fig1() };
        let r = word_of_curve(&c).unwrap();
        assert!(r.word.is_empty() && r.cyclic.is_empty());
    }

    #[test]
    fn single_line_windings() {
        let l = line([0, 0, 0], [0, 0, 1]);
        assert_eq!(winding_single_line(&square_around(0, 0), &l).unwrap(), 1);
        assert_eq!(winding_single_line(&square_around(5, 0), &l).unwrap(), 0);
        // two lobes around the line with opposite turning
        let eight = curve(&[[1, 1, 0], [-1, 1, 0], [-1, -1, 0], [1, -1, 0], [1, 1, 1], [1, -1, 2], [-1, -1, 2], [-1, 1, 2]]);
        assert_eq!(winding_single_line(&eight, &l).unwrap(), 0);
        assert_eq!(winding_single_line(&curve(&[[0, 0, 1], [1, 0, 1], [0, 1, 1]]), &l), Err(LinkError::CurveTouchesLine { segment: 0, line: 0 }));
    }

    #[test]
    fn skew_lines_take_the_first_candidate() {
        let c = LinkConfig { gamma: square_around(10, 10), l1: line([0, 0, 0], [1, 0, 0]), l2: line([0, 0, 1], [0, 1, 0]), membranes: None };
        let m = choose_membranes(&c).unwrap();
        assert_eq!(m[0].sweep, sweep_candidates(&c.l1, Some(&c.l2))[0]);
        assert_eq!(m[1].sweep, sweep_candidates(&c.l2, Some(&c.l1))[0]);
        assert!(!m[0].meets_membrane(&m[1]));
    }

    #[test]
    fn parallel_lines_sweep_apart() {
        let m = choose_membranes(&fig1()).unwrap();
        assert_eq!(m[0].sweep, from_ints([-2, 0, 0]));
        assert_eq!(m[1].sweep, from_ints([2, 0, 0]));
    }

    #[test]
    fn vertex_on_membrane_moves_to_next_candidate() {
        let mut c = fig1();
        c.gamma[7] = from_ints([-3, 0, 7]);
        let m = choose_membranes(&c).unwrap();
        assert_ne!(m[0].sweep, from_ints([-2, 0, 0]));
        assert!(word_of_curve(&c).unwrap().cyclic == word_of_curve(&fig1()).unwrap().cyclic);
        let forced = [Membrane { line: c.l1.clone(), sweep: from_ints([-1, 0, 0]) }, Membrane { line: c.l2.clone(), sweep: from_ints([1, 0, 0]) }];
        let err = word_of_curve(&LinkConfig { membranes: Some(forced), ..c }).unwrap_err();
        assert_eq!(err, LinkError::NonTransversalCrossing { vertex: 7, membrane: 0 });
    }

    #[test]
    fn invalid_configurations() {
        let mut c = fig1();
        c.l2 = line([-1, 0, 5], [0, 0, 2]);
        assert_eq!(c.check(), Err(LinkError::LinesMeet));
        let c = LinkConfig { l1: line([0, 1, 0], [0, 0, 1]), ..fig1() };
        assert!(matches!(c.check(), Err(LinkError::CurveTouchesLine { line: 0, .. })));
        assert_eq!(Line3::new(from_ints([0, 0, 0]), from_ints([0, 0, 0])), Err(LinkError::ZeroDirection));
    }

    #[test]
    fn config_json_round_trip() {
        let mut c = fig1();
        c.membranes = Some(choose_membranes(&c).unwrap());
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<LinkConfig>(&text).unwrap(), c);
    }
}
