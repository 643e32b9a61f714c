//! Exact-arithmetic laboratory for directed 1-skeletons of polytopes.
//!
//! Everything is computed over the rationals; no floating point enters any
//! geometric or combinatorial decision. The crate models polytopes given by
//! vertices and facet inequalities, orients their graphs by generic linear
//! costs, and checks order-theoretic and topological properties of the
//! resulting posets.

pub mod exact;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod generators;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod orient;
pub mod paths;
pub mod polytope;
pub mod poset;
pub mod topology;

pub use exact::{Rat, RatVector};
pub use linalg::RatMatrix;
pub use orient::OrientedSkeleton;
pub use polytope::{Face, Facet, Polytope};
pub use poset::Poset;
