//! Affine hyperplanes `{ y : ⟨n, y⟩ = c }` in E⁴ and exact charts onto R³.

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::nullspace;
use crate::rational::{serde_rational, serde_rational_array, Rational};
use crate::vector::{dot, sub, Vec3, Vec4};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperplane {
    #[serde(with = "serde_rational_array")]
    pub normal: Vec4,
    #[serde(with = "serde_rational")]
    pub offset: Rational,
}

impl Hyperplane {
    /// `None` if `normal` is zero.
    pub fn new(normal: Vec4, offset: Rational) -> Option<Self> {
        if normal.iter().all(Zero::is_zero) {
            return None;
        }
        Some(Hyperplane { normal, offset })
    }

    /// `⟨n, y⟩ − c`
    pub fn eval(&self, y: &Vec4) -> Rational {
        dot(&self.normal, y) - &self.offset
    }

    pub fn contains(&self, y: &Vec4) -> bool {
        self.eval(y).is_zero()
    }

    /// Sign of `⟨n, y⟩ − c`.
    pub fn side(&self, y: &Vec4) -> i32 {
        let e = self.eval(y);
        if e.is_positive() {
            1
        } else if e.is_negative() {
            -1
        } else {
            0
        }
    }

    /// The hyperplane through affinely spanning `points`, when their affine
    /// hull is exactly three-dimensional.
    pub fn through(points: &[Vec4]) -> Option<Hyperplane> {
        let first = points.first()?;
        let diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| sub(p, first).to_vec()).collect();
        let null = nullspace(&diffs, 4);
        if null.len() != 1 {
            return None;
        }
        let normal: Vec4 = null[0].clone().try_into().unwrap();
        let offset = dot(&normal, first);
        Hyperplane::new(normal, offset)
    }

    pub fn chart(&self) -> Chart {
        let axis = self.normal.iter().position(|c| !c.is_zero()).unwrap();
        Chart { plane: self.clone(), axis }
    }
}

/// Affine bijection between a hyperplane and R³ that drops one coordinate.
#[derive(Debug, Clone)]
pub struct Chart {
    plane: Hyperplane,
    axis: usize,
}

impl Chart {
    pub fn dropped_axis(&self) -> usize {
        self.axis
    }

    pub fn to_local(&self, y: &Vec4) -> Vec3 {
        let mut it = (0..4).filter(|&i| i != self.axis).map(|i| y[i].clone());
        [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()]
    }

    /// Point of the hyperplane with the given local coordinates.
    pub fn lift(&self, p: &Vec3) -> Vec4 {
        self.lift_with(p, &self.plane.offset)
    }

    /// Direction parallel to the hyperplane with the given local components.
    pub fn lift_direction(&self, d: &Vec3) -> Vec4 {
        self.lift_with(d, &Rational::zero())
    }

    fn lift_with(&self, p: &Vec3, rhs: &Rational) -> Vec4 {
        let n = &self.plane.normal;
        let mut out: Vec4 = std::array::from_fn(|_| Rational::zero());
        let mut acc = rhs.clone();
        let mut k = 0;
        for (i, slot) in out.iter_mut().enumerate() {
            if i != self.axis {
                acc -= &n[i] * &p[k];
                *slot = p[k].clone();
                k += 1;
            }
        }
        out[self.axis] = acc / &n[self.axis];
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::from_ints;

    #[test]
    fn chart_round_trip() {
        let h = Hyperplane::new(from_ints([0, 2, -1, 3]), Rational::from_integer(5.into())).unwrap();
        let c = h.chart();
        assert_eq!(c.dropped_axis(), 1);
        let local = from_ints([1, -4, 7]);
        let y = c.lift(&local);
        assert!(h.contains(&y));
        assert_eq!(c.to_local(&y), local);
        assert!(h.eval(&c.lift_direction(&local)) == -h.offset.clone());
    }

    #[test]
    fn hyperplane_through_points() {
        let pts = [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]].map(from_ints);
        let h = Hyperplane::through(&pts).unwrap();
        assert!(pts.iter().all(|p| h.contains(p)));
        assert!(!h.contains(&from_ints([0, 0, 0, 1])));
        assert!(Hyperplane::through(&pts[..3]).is_none());
    }
}
