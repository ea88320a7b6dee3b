//! Z₂ (co)homology, cup products and degrees of surface maps.

pub mod cohomology;
pub mod degree;
pub mod obstruction;
pub mod z2;

pub use cohomology::{
    abstract_surface_ring, cohomology_ring, CohomologyRing, CupForm, RingSource, SurfaceDescriptor, TopologyError,
};
pub use degree::{degree_mod2, DegreeError, SimplicialMapZ2};
pub use obstruction::{degree_one_obstruction, ObstructionReport};
pub use z2::{Bits, Z2Matrix};
