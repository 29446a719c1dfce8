//! Boundary singularities, boundary groupoids, K-theory and Mellin symbol
//! scans for planar domains with conical points and cracks.

pub mod geometry;
pub mod groupoid;
pub mod ktheory;
pub mod linalg;
pub mod mellin;
pub mod par;
pub mod unfold;

pub use par::Execution;
