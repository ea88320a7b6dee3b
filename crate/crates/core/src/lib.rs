//! Exact-arithmetic toolkit for closed triangulated surfaces in E⁴.
//!
//! - [`mesh`]: validated closed surfaces, builtins, the OFF4 format.
//! - [`topology`]: Z₂ cohomology rings, cup products, degree mod 2 and the
//!   ring-level obstruction to degree-one maps onto the torus.
//! - [`convexity`]: exact 2-plane avoidance certificates and the search for them.
//! - [`slicing`]: support vertices, near-tangent slices, and convex hulls of slice curves.
//! - [`link`]: free-group words of a curve in the complement of two lines.

pub mod convexity;
pub mod hyperplane;
pub mod linalg;
pub mod link;
pub mod mesh;
pub mod predicates;
pub mod rational;
pub mod slicing;
pub mod topology;
pub mod vector;

pub use mesh::{MeshError, MeshReport, SimplicialSurface, Triangle, TriangleSoup};
pub use rational::Rational;
pub use vector::Point4;
