//! Cyclic Bergman fans of linear matroids.
//!
//! Given an integer matrix `A`, the crate enumerates the maximal cones of the
//! cyclic Bergman fan of `M(A)` (a simplicial fan supported on the tropical
//! linear space of the rowspace of `A`) one basis at a time, from regressive
//! compatible pairs. It also reports bases, circuits and the Tutte polynomial
//! of `M(A)`, and uses the fan of a Gale dual to shoot rays for vertices of
//! Newton polytopes of A-discriminants.
//!
//! All arithmetic is exact.

pub mod arith;
pub mod cli;
pub mod discriminant;
pub mod fan;
pub mod matroid;
pub mod set;

pub use arith::{IntMat, RatMat};
pub use fan::{cyclic_bergman_fan, CompatiblePair, Cone, Fan, FanOptions};
pub use matroid::{Matroid, MatroidError, TuttePoly};
pub use set::ElementSet;
