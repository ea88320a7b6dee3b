//! Z₂ cohomology rings of closed surfaces and of the abstract models.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::z2::{Bits, EchelonBasis, Z2Matrix};
use crate::mesh::SimplicialSurface;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("invalid surface descriptor: {0}")]
    InvalidGenus(String),
    #[error("first Betti number {0} exceeds the supported maximum of 63")]
    TooManyGenerators(usize),
}

/// Where a ring came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingSource {
    Mesh,
    Orientable { genus: usize },
    NonOrientable { mu: usize },
}

/// Closed surface by classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceDescriptor {
    Orientable(usize),
    NonOrientable(usize),
}

impl std::str::FromStr for SurfaceDescriptor {
    type Err = TopologyError;

    /// `g=<n>` or `mu=<n>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TopologyError::InvalidGenus(format!("expected g=<n> or mu=<n>, got `{s}`"));
        let (key, value) = s.split_once('=').ok_or_else(bad)?;
        let n: usize = value.trim().parse().map_err(|_| bad())?;
        match key.trim() {
            "g" | "genus" => Ok(SurfaceDescriptor::Orientable(n)),
            "mu" | "μ" => Ok(SurfaceDescriptor::NonOrientable(n)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRing {
    pub source: RingSource,
    pub betti0: usize,
    pub betti1: usize,
    pub betti2: usize,
    /// Edge-indexed cocycle representatives; empty for abstract rings.
    pub h1_basis: Vec<Bits>,
    /// `cup_table[i][j] = ⟨αᵢ ∪ αⱼ, [S]⟩`
    pub cup_table: Vec<Vec<u8>>,
    /// Value of the top-degree generator on the fundamental cycle.
    pub fundamental_class_pairing: u8,
}

impl CohomologyRing {
    pub fn form(&self) -> CupForm {
        CupForm::from_table(&self.cup_table)
    }
}

/// δ⁰ : C⁰ → C¹ as an E × V matrix.
pub fn coboundary0(surface: &SimplicialSurface) -> Z2Matrix {
    let v = surface.vertices().len();
    let rows = surface.edges().iter().map(|e| Bits::from_indices(v, [e.a, e.b])).collect();
    Z2Matrix::from_rows(v, rows)
}

/// δ¹ : C¹ → C² as an F × E matrix.
pub fn coboundary1(surface: &SimplicialSurface) -> Z2Matrix {
    let e = surface.edges().len();
    let rows = surface
        .triangles()
        .iter()
        .map(|t| {
            let [a, b, c] = t.0;
            let ids = [(a, b), (b, c), (c, a)].map(|(x, y)| surface.edge_id(x, y).expect("triangle edge"));
            Bits::from_indices(e, ids)
        })
        .collect();
    Z2Matrix::from_rows(e, rows)
}

/// Σ over triangles of α(v₀v₁)·β(v₁v₂) with v₀ < v₁ < v₂.
pub fn cup_evaluate(surface: &SimplicialSurface, alpha: &Bits, beta: &Bits) -> u8 {
    let mut acc = 0u8;
    for t in surface.triangles() {
        let [v0, v1, v2] = t.sorted();
        let e01 = surface.edge_id(v0, v1).unwrap();
        let e12 = surface.edge_id(v1, v2).unwrap();
        acc ^= (alpha.get(e01) && beta.get(e12)) as u8;
    }
    acc
}

pub fn cohomology_ring(surface: &SimplicialSurface) -> CohomologyRing {
    let d0 = coboundary0(surface);
    let d1 = coboundary1(surface);
    debug_assert!(d1.mul(&d0).is_zero());
    let (v, e, f) = (d0.cols(), d0.rows(), d1.rows());
    let (r0, r1) = (d0.rank(), d1.rank());

    let mut span = EchelonBasis::new();
    for col in 0..v {
        span.insert(&d0.transpose().row(col).clone());
    }
    let mut h1_basis = Vec::new();
    for z in d1.kernel_basis() {
        if span.insert(&z) {
            h1_basis.push(z);
        }
    }
    let cup_table = h1_basis
        .iter()
        .map(|a| h1_basis.iter().map(|b| cup_evaluate(surface, a, b)).collect())
        .collect();
    // any single triangle is a top cocycle; on Σ triangles it evaluates to 1
    let fundamental_class_pairing = if f == 0 { 0 } else { 1 };

    CohomologyRing {
        source: RingSource::Mesh,
        betti0: v - r0,
        betti1: e - r1 - r0,
        betti2: f - r1,
        h1_basis,
        cup_table,
        fundamental_class_pairing,
    }
}

pub fn abstract_surface_ring(descriptor: SurfaceDescriptor) -> Result<CohomologyRing, TopologyError> {
    let (source, n, table): (_, usize, Vec<Vec<u8>>) = match descriptor {
        SurfaceDescriptor::NonOrientable(0) => {
            return Err(TopologyError::InvalidGenus("non-orientable genus must be at least 1".into()))
        }
        SurfaceDescriptor::NonOrientable(mu) => {
            let table = (0..mu).map(|i| (0..mu).map(|j| (i == j) as u8).collect()).collect();
            (RingSource::NonOrientable { mu }, mu, table)
        }
        SurfaceDescriptor::Orientable(g) => {
            let n = 2 * g;
            let table = (0..n).map(|i| (0..n).map(|j| (i / 2 == j / 2 && i != j) as u8).collect()).collect();
            (RingSource::Orientable { genus: g }, n, table)
        }
    };
    if n > 63 {
        return Err(TopologyError::TooManyGenerators(n));
    }
    Ok(CohomologyRing {
        source,
        betti0: 1,
        betti1: n,
        betti2: 1,
        h1_basis: Vec::new(),
        cup_table: table,
        fundamental_class_pairing: 1,
    })
}

/// A symmetric bilinear form on Z₂ⁿ with rows packed into `u64` masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupForm {
    n: usize,
    rows: Vec<u64>,
}

impl CupForm {
    pub fn from_table(table: &[Vec<u8>]) -> Self {
        let n = table.len();
        assert!(n <= 63, "form too large");
        let rows = table
            .iter()
            .map(|r| r.iter().enumerate().fold(0u64, |m, (j, &x)| m | (((x & 1) as u64) << j)))
            .collect();
        CupForm { n, rows }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// The mask of `w ↦ v·w`.
    pub fn image(&self, v: u64) -> u64 {
        (0..self.n).filter(|i| v >> i & 1 == 1).fold(0, |m, i| m ^ self.rows[i])
    }

    pub fn pair(&self, v: u64, w: u64) -> bool {
        (self.image(v) & w).count_ones() % 2 == 1
    }

    pub fn square(&self, v: u64) -> bool {
        self.pair(v, v)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| (self.rows[i] >> j & 1) == (self.rows[j] >> i & 1)))
    }

    pub fn rank(&self) -> usize {
        let bits = self.rows.iter().map(|&r| Bits::from_indices(self.n, (0..self.n).filter(|j| r >> j & 1 == 1))).collect();
        Z2Matrix::from_rows(self.n, bits).rank()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank() == self.n
    }

    /// Some v has v∪v ≠ 0; over Z₂ this holds iff the diagonal is nonzero.
    pub fn has_odd_square(&self) -> bool {
        (0..self.n).any(|i| self.rows[i] >> i & 1 == 1)
    }

    /// Columns `m` (as masks in the source basis) with `mᵢ·mⱼ = other[i][j]`,
    /// found by backtracking over all invertible matrices.
    pub fn find_isometry(&self, other: &CupForm) -> Option<Vec<u64>> {
        if self.n != other.n {
            return None;
        }
        let mut cols = Vec::with_capacity(self.n);
        let mut span = EchelonBasis::new();
        self.extend_isometry(other, &mut cols, &mut span).then_some(cols)
    }

    fn extend_isometry(&self, other: &CupForm, cols: &mut Vec<u64>, span: &EchelonBasis) -> bool {
        let k = cols.len();
        if k == self.n {
            return true;
        }
        for c in 1u64..(1 << self.n) {
            if self.square(c) != (other.rows[k] >> k & 1 == 1) {
                continue;
            }
            if !(0..k).all(|i| self.pair(cols[i], c) == (other.rows[i] >> k & 1 == 1)) {
                continue;
            }
            let as_bits = Bits::from_indices(self.n, (0..self.n).filter(|j| c >> j & 1 == 1));
            let mut next = span.clone();
            if !next.insert(&as_bits) {
                continue;
            }
            cols.push(c);
            if self.extend_isometry(other, cols, &next) {
                return true;
            }
            cols.pop();
        }
        false
    }

    /// Exhaustive basis search up to dimension 4; rank and parity type above.
    pub fn is_isomorphic(&self, other: &CupForm) -> bool {
        if self.n != other.n {
            return false;
        }
        if self.n <= 4 {
            self.find_isometry(other).is_some()
        } else {
            self.rank() == other.rank() && self.has_odd_square() == other.has_odd_square()
        }
    }
}
