//! Fixed-size exact vectors.

use std::array;
use std::fmt;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{format_rational, serde_rational_array, Rational};

pub type Vec3 = [Rational; 3];
pub type Vec4 = [Rational; 4];

/// A point of E⁴ with exact coordinates. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point4(#[serde(with = "serde_rational_array")] pub Vec4);

impl Point4 {
    pub fn new(x1: Rational, x2: Rational, x3: Rational, x4: Rational) -> Self {
        Point4([x1, x2, x3, x4])
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Point4(c.map(crate::rational::int))
    }

    pub fn origin() -> Self {
        Point4(zeros())
    }

    pub fn coords(&self) -> &Vec4 {
        &self.0
    }
}

impl fmt::Display for Point4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn zeros<const N: usize>() -> [Rational; N] {
    array::from_fn(|_| Rational::zero())
}

pub fn unit<const N: usize>(axis: usize) -> [Rational; N] {
    array::from_fn(|i| if i == axis { crate::rational::one() } else { Rational::zero() })
}

pub fn from_ints<const N: usize>(c: [i64; N]) -> [Rational; N] {
    c.map(crate::rational::int)
}

pub fn add<const N: usize>(a: &[Rational; N], b: &[Rational; N]) -> [Rational; N] {
    array::from_fn(|i| &a[i] + &b[i])
}

pub fn sub<const N: usize>(a: &[Rational; N], b: &[Rational; N]) -> [Rational; N] {
    array::from_fn(|i| &a[i] - &b[i])
}

pub fn scale<const N: usize>(a: &[Rational; N], k: &Rational) -> [Rational; N] {
    array::from_fn(|i| &a[i] * k)
}

pub fn neg<const N: usize>(a: &[Rational; N]) -> [Rational; N] {
    array::from_fn(|i| -&a[i])
}

/// `a + k·b`
pub fn axpy<const N: usize>(a: &[Rational; N], k: &Rational, b: &[Rational; N]) -> [Rational; N] {
    array::from_fn(|i| &a[i] + k * &b[i])
}

pub fn dot<const N: usize>(a: &[Rational; N], b: &[Rational; N]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn norm2<const N: usize>(a: &[Rational; N]) -> Rational {
    dot(a, a)
}

pub fn is_zero<const N: usize>(a: &[Rational; N]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Determinant of the 3×3 matrix with rows `a`, `b`, `c`.
pub fn det3(a: &Vec3, b: &Vec3, c: &Vec3) -> Rational {
    dot(a, &cross(b, c))
}

/// Sign of the tetrahedron volume `(b-a, c-a, d-a)`.
pub fn orient3d(a: &Vec3, b: &Vec3, c: &Vec3, d: &Vec3) -> i32 {
    crate::rational::sign(&det3(&sub(b, a), &sub(c, a), &sub(d, a)))
}

/// Sign of the 2D cross product `(b-a) × (c-a)`.
pub fn orient2d(a: &[Rational; 2], b: &[Rational; 2], c: &[Rational; 2]) -> i32 {
    let v = (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0]);
    crate::rational::sign(&v)
}

/// True iff the rows of `u`, `v` are linearly independent (all 2×2 minors checked).
pub fn independent2<const N: usize>(u: &[Rational; N], v: &[Rational; N]) -> bool {
    for i in 0..N {
        for j in (i + 1)..N {
            if !(&u[i] * &v[j] - &u[j] * &v[i]).is_zero() {
                return true;
            }
        }
    }
    false
}

/// Scale a nonzero vector to a primitive integer vector with positive first nonzero entry.
/// Two vectors normalize equal iff they are parallel.
pub fn projective_normalize<const N: usize>(a: &[Rational; N]) -> [Rational; N] {
    use num::Integer;
    let mut lcm = num::BigInt::from(1);
    for x in a {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<num::BigInt> = a.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let mut g = num::BigInt::from(0);
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return zeros();
    }
    let lead_neg = ints.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false);
    if lead_neg {
        g = -g;
    }
    array::from_fn(|i| Rational::from_integer(&ints[i] / &g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn cross_and_det() {
        let e1: Vec3 = unit(0);
        let e2: Vec3 = unit(1);
        let e3: Vec3 = unit(2);
        assert_eq!(cross(&e1, &e2), e3);
        assert_eq!(det3(&e1, &e2, &e3), int(1));
        assert_eq!(orient3d(&zeros(), &e1, &e2, &e3), 1);
    }

    #[test]
    fn independence_of_pairs() {
        let u = from_ints([1, 2, 0, 0]);
        let v = from_ints([2, 4, 0, 0]);
        assert!(!independent2(&u, &v));
        assert!(independent2(&u, &from_ints([0, 0, 0, 1])));
    }

    #[test]
    fn normalization_identifies_parallel_vectors() {
        let a = [rat(-1, 2), int(1), int(0)];
        let b = from_ints([2, -4, 0]);
        assert_eq!(projective_normalize(&a), projective_normalize(&b));
        assert_eq!(projective_normalize(&b), from_ints([1, -2, 0]));
    }
}
