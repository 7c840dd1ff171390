//! Exact counting, constructions, bounds, reductions, and exhaustive search
//! for disjoint pairs in set systems with restricted intersections.

pub mod bounds;
pub mod constructions;
pub mod dpcount;
pub mod error;
pub mod reduction;
pub mod report;
pub mod search;
pub mod setcore;
pub mod shadows;
pub mod verify;

pub use dpcount::BigCount;
pub use error::{Error, Result};
pub use setcore::{Convention, Family, IntersectionConstraint, SetMask};
