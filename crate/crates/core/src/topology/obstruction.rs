//! Ring-level test for degree-one maps onto the torus.
//!
//! A degree-one map `g : S → T²` pulls the torus generators `a, b` back to
//! classes `v, w ∈ H¹(S; Z₂)` with `v∪v = w∪w = 0` and `v∪w ≠ 0`. The search
//! below enumerates all candidate pairs; an empty result rules such a map out.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cohomology::{CohomologyRing, RingSource};
use super::z2::Bits;

/// Pairs beyond this many are counted but not listed.
pub const MAX_LISTED_PAIRS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub surface_model: String,
    pub betti1: usize,
    /// `|H¹|²`
    pub candidate_count: u128,
    pub admissible_count: u64,
    /// Coefficients in the ring's H¹ basis, at most [`MAX_LISTED_PAIRS`].
    pub admissible_pairs: Vec<(Bits, Bits)>,
    pub pairs_truncated: bool,
    pub exists_degree_one: bool,
}

pub fn surface_model(ring: &CohomologyRing) -> String {
    match &ring.source {
        RingSource::Mesh => format!("mesh(b1={})", ring.betti1),
        RingSource::Orientable { genus } => format!("orientable(g={genus})"),
        RingSource::NonOrientable { mu } => format!("non_orientable(mu={mu})"),
    }
}

fn to_bits(n: usize, mask: u64) -> Bits {
    Bits::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1))
}

pub fn degree_one_obstruction(ring: &CohomologyRing) -> ObstructionReport {
    let form = ring.form();
    let n = form.dim();
    let isotropic: Vec<u64> = (0..1u64 << n).filter(|&v| !form.square(v)).collect();

    // per-v partner lists, merged in v order so output is deterministic
    let per_v: Vec<(u64, Vec<u64>)> = isotropic
        .par_iter()
        .map(|&v| {
            let image = form.image(v);
            let partners: Vec<u64> = isotropic.iter().copied().filter(|&w| (image & w).count_ones() % 2 == 1).collect();
            (v, partners)
        })
        .collect();

    let admissible_count: u64 = per_v.iter().map(|(_, p)| p.len() as u64).sum();
    let admissible_pairs: Vec<(Bits, Bits)> = per_v
        .iter()
        .flat_map(|(v, ws)| ws.iter().map(move |&w| (*v, w)))
        .take(MAX_LISTED_PAIRS)
        .map(|(v, w)| (to_bits(n, v), to_bits(n, w)))
        .collect();

    ObstructionReport {
        surface_model: surface_model(ring),
        betti1: n,
        candidate_count: 1u128 << (2 * n),
        admissible_count,
        pairs_truncated: admissible_count > admissible_pairs.len() as u64,
        admissible_pairs,
        exists_degree_one: admissible_count > 0,
    }
}
