//! Exact linear algebra over the rationals: row reduction, affine solution
//! sets, and feasibility of small linear systems with sign constraints.
//!
//! Feasibility (`A y = b` with some coordinates of `y` nonnegative) is decided
//! by parametrising the affine solution set and running Fourier–Motzkin
//! elimination on the induced inequalities. The systems that occur in this
//! crate have at most six sign-constrained unknowns, so the quadratic growth of
//! elimination is irrelevant.

use num::{Signed, Zero};

use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form. Returns the reduced rows and pivot columns.
pub fn rref(mut m: Matrix) -> (Matrix, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    rref(m.to_vec()).1.len()
}

/// `{ particular + Σ τ_k null_basis[k] }`
#[derive(Debug, Clone)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub null_basis: Vec<Vec<Rational>>,
}

/// Solve `a y = b`; `None` when inconsistent.
pub fn solve_affine(a: &[Vec<Rational>], b: &[Rational], n: usize) -> Option<AffineSolution> {
    debug_assert_eq!(a.len(), b.len());
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            debug_assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut particular = vec![Rational::zero(); n];
    for (row, &c) in red.iter().zip(&pivots) {
        particular[c] = row[n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let null_basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = crate::rational::one();
            for (row, &c) in red.iter().zip(&pivots) {
                v[c] = -row[f].clone();
            }
            v
        })
        .collect();
    Some(AffineSolution { particular, null_basis })
}

/// Basis of `{ y : a y = 0 }`.
pub fn nullspace(a: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let b = vec![Rational::zero(); a.len()];
    solve_affine(a, &b, n).expect("homogeneous systems are consistent").null_basis
}

/// One inequality `coeffs · τ ≥ bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Ineq {
    coeffs: Vec<Rational>,
    bound: Rational,
}

/// A point satisfying every inequality, or `None` if the system is empty.
fn fourier_motzkin(ineqs: Vec<Ineq>, nvars: usize) -> Option<Vec<Rational>> {
    if nvars == 0 {
        return ineqs.iter().all(|q| !q.bound.is_positive()).then(Vec::new);
    }
    let last = nvars - 1;
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut rest = Vec::new();
    for q in ineqs {
        let c = &q.coeffs[last];
        if c.is_positive() {
            lower.push(q);
        } else if c.is_negative() {
            upper.push(q);
        } else {
            rest.push(q);
        }
    }
    let mut projected: Vec<Ineq> = rest
        .iter()
        .map(|q| Ineq { coeffs: q.coeffs[..last].to_vec(), bound: q.bound.clone() })
        .collect();
    for lo in &lower {
        for up in &upper {
            // lo: c_l τ_last ≥ bound_l - rest_l ; up: c_u τ_last ≥ ... with c_u < 0
            let wl = -up.coeffs[last].clone();
            let wu = lo.coeffs[last].clone();
            let coeffs = (0..last).map(|i| &wl * &lo.coeffs[i] + &wu * &up.coeffs[i]).collect();
            let bound = &wl * &lo.bound + &wu * &up.bound;
            let q = Ineq { coeffs, bound };
            if !projected.contains(&q) {
                projected.push(q);
            }
        }
    }
    let mut point = fourier_motzkin(projected, last)?;
    let residual = |q: &Ineq| {
        let partial = q.coeffs[..last].iter().zip(&point).fold(Rational::zero(), |acc, (a, t)| acc + a * t);
        (&q.bound - partial) / &q.coeffs[last]
    };
    let lo = lower.iter().map(residual).max();
    let hi = upper.iter().map(residual).min();
    let value = match (lo, hi) {
        (Some(l), Some(h)) => {
            debug_assert!(l <= h);
            (l + h) / crate::rational::int(2)
        }
        (Some(l), None) => l,
        (None, Some(h)) => h,
        (None, None) => Rational::zero(),
    };
    point.push(value);
    Some(point)
}

/// Find `y` with `a y = b` and `y[i] ≥ 0` for every `i` in `nonneg`.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational], n: usize, nonneg: &[usize]) -> Option<Vec<Rational>> {
    let sol = solve_affine(a, b, n)?;
    let k = sol.null_basis.len();
    let ineqs = nonneg
        .iter()
        .map(|&i| Ineq {
            coeffs: sol.null_basis.iter().map(|v| v[i].clone()).collect(),
            bound: -sol.particular[i].clone(),
        })
        .collect();
    let tau = fourier_motzkin(ineqs, k)?;
    let mut y = sol.particular;
    for (t, v) in tau.iter().zip(&sol.null_basis) {
        for (yi, vi) in y.iter_mut().zip(v) {
            *yi += t * vi;
        }
    }
    Some(y)
}

/// Solve a square system with a unique solution, `None` if singular.
pub fn solve_unique(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let sol = solve_affine(a, b, n)?;
    sol.null_basis.is_empty().then_some(sol.particular)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot: Rational = row.iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn unique_solution() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve_unique(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        assert!(solve_unique(&m(&[&[1, 1], &[2, 2]]), &[int(1), int(2)]).is_none());
    }

    #[test]
    fn inconsistent_system() {
        assert!(solve_affine(&m(&[&[1, 1], &[1, 1]]), &[int(1), int(2)], 2).is_none());
    }

    #[test]
    fn feasibility_on_simplex() {
        // y0 + y1 + y2 = 1, y0 - y1 = 2: infeasible with y ≥ 0 (y0 = 2 + y1 > 1).
        let a = m(&[&[1, 1, 1], &[1, -1, 0]]);
        assert!(feasible_point(&a, &[int(1), int(2)], 3, &[0, 1, 2]).is_none());
        // y0 - y1 = 1/2 is feasible.
        let y = feasible_point(&a, &[int(1), rat(1, 2)], 3, &[0, 1, 2]).unwrap();
        assert!(y.iter().all(|v| !v.is_negative()));
        assert_eq!(&y[0] - &y[1], rat(1, 2));
    }

    #[test]
    fn unbounded_directions() {
        // s ≥ 0 free t: s - t = -5 feasible (t = s + 5).
        let a = m(&[&[1, -1]]);
        assert!(feasible_point(&a, &[int(-5)], 2, &[0]).is_some());
        // s = -1 alone is infeasible.
        assert!(feasible_point(&m(&[&[1, 0]]), &[int(-1)], 2, &[0]).is_none());
    }
}
