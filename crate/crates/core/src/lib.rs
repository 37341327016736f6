//! Centrally symmetric triangulated surfaces, 3-manifolds and polyhedral maps.
//!
//! The crate enumerates closed surfaces and 3-manifolds on `2m` vertices that
//! are invariant under the involution `v ↔ 2m + 1 − v`, classifies them by
//! integral homology, and builds the genus families of quadrangulated,
//! pentagonal and hexagonal centrally symmetric maps by connected sums.

pub mod canon;
pub mod complex;
pub mod construct;
pub mod enumerate;
pub mod homology;
pub mod map;
pub mod notation;
pub mod records;
pub mod symmetry;

pub use complex::{Complex, ComplexError, FaceVector, Simplex, VertexLabel};
pub use homology::HomologyGroups;
pub use map::{Face, PolyhedralMap};
pub use symmetry::{Involution, Orbit};
