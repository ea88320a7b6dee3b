//! Exact incidence predicates between affine flats and simplices.

use num::Zero;

use crate::linalg::{feasible_point, Matrix};
use crate::rational::{one, Rational};

/// A point where `base + Σ s_k dirs[k]` meets the simplex, as `(s, barycentric)`.
pub type FlatHit = (Vec<Rational>, Vec<Rational>);

/// Decide whether the affine flat `base + span(dirs)` meets the closed simplex
/// spanned by `simplex`. Returns the parameters of a common point if so.
pub fn flat_meets_simplex<const N: usize>(
    base: &[Rational; N],
    dirs: &[[Rational; N]],
    simplex: &[[Rational; N]],
) -> Option<FlatHit> {
    let f = dirs.len();
    let n = f + simplex.len();
    let mut a: Matrix = Vec::with_capacity(N + 1);
    let mut b = Vec::with_capacity(N + 1);
    for i in 0..N {
        let mut row = Vec::with_capacity(n);
        row.extend(dirs.iter().map(|d| d[i].clone()));
        row.extend(simplex.iter().map(|p| -p[i].clone()));
        a.push(row);
        b.push(-base[i].clone());
    }
    let mut sum = vec![Rational::zero(); f];
    sum.extend(std::iter::repeat_n(one(), simplex.len()));
    a.push(sum);
    b.push(one());
    let nonneg: Vec<usize> = (f..n).collect();
    let y = feasible_point(&a, &b, n, &nonneg)?;
    let (s, lambda) = y.split_at(f);
    Some((s.to_vec(), lambda.to_vec()))
}

/// Closed point-in-simplex test.
pub fn point_in_simplex<const N: usize>(x: &[Rational; N], simplex: &[[Rational; N]]) -> bool {
    flat_meets_simplex(x, &[], simplex).is_some()
}

/// Whether two closed simplices share a point with positive total weight on
/// the vertices of `a` not listed in `shared_in_a`. With `shared_in_a` empty
/// this is plain intersection.
pub fn simplices_meet_beyond<const N: usize>(a: &[[Rational; N]], b: &[[Rational; N]], shared_in_a: &[usize]) -> bool {
    let na = a.len();
    let n = na + b.len();
    let mut rows: Matrix = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..N {
        let mut row = Vec::with_capacity(n);
        row.extend(a.iter().map(|p| p[i].clone()));
        row.extend(b.iter().map(|q| -q[i].clone()));
        rows.push(row);
        rhs.push(Rational::zero());
    }
    // Σλ = Σμ (homogenised barycentric sums)
    let mut eq = vec![one(); na];
    eq.extend(std::iter::repeat_n(-one(), b.len()));
    rows.push(eq);
    rhs.push(Rational::zero());
    // weight on the free vertices of a normalised to one
    let mut free = vec![Rational::zero(); n];
    let mut any_free = false;
    for (i, w) in free.iter_mut().enumerate().take(na) {
        if !shared_in_a.contains(&i) {
            *w = one();
            any_free = true;
        }
    }
    if !any_free {
        return false;
    }
    rows.push(free);
    rhs.push(one());
    let nonneg: Vec<usize> = (0..n).collect();
    feasible_point(&rows, &rhs, n, &nonneg).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::vector::from_ints;

    #[test]
    fn line_through_triangle_in_space() {
        let tri = [from_ints([0, 0, 0]), from_ints([4, 0, 0]), from_ints([0, 4, 0])];
        let base = from_ints([1, 1, 5]);
        let dir = from_ints([0, 0, 1]);
        let (s, lambda) = flat_meets_simplex(&base, &[dir.clone()], &tri).unwrap();
        assert_eq!(s, vec![rat(-5, 1)]);
        assert_eq!(lambda.iter().sum::<Rational>(), one());
        assert!(flat_meets_simplex(&from_ints([5, 5, 5]), &[dir], &tri).is_none());
    }

    #[test]
    fn boundary_counts_as_contact() {
        let tri = [from_ints([0, 0]), from_ints([2, 0]), from_ints([0, 2])];
        assert!(point_in_simplex(&from_ints([1, 1]), &tri));
        assert!(point_in_simplex(&from_ints([0, 0]), &tri));
        assert!(!point_in_simplex(&[rat(3, 2), rat(3, 4)], &tri));
    }

    #[test]
    fn triangles_sharing_a_vertex() {
        let t1 = [from_ints([0, 0, 0, 0]), from_ints([1, 0, 0, 0]), from_ints([0, 1, 0, 0])];
        let t2 = [from_ints([0, 0, 0, 0]), from_ints([0, 0, 1, 0]), from_ints([0, 0, 0, 1])];
        assert!(simplices_meet_beyond(&t1, &t2, &[]));
        assert!(!simplices_meet_beyond(&t1, &t2, &[0]));
        let t3 = [from_ints([0, 0, 0, 0]), from_ints([1, 1, 0, 0]), from_ints([-1, 1, 0, 0])];
        assert!(simplices_meet_beyond(&t1, &t3, &[0]));
    }
}
