//! Exact, exhaustive computations with finite partial commutative monoids,
//! continuous dimension scales and espaliers.

pub mod corpus;
pub mod error;
pub mod espalier;
pub mod format;
pub mod monoid;
pub mod projections;
pub mod represent;
pub mod scale;
pub mod targets;

pub use error::{Error, ExtremumError, Result};
pub use monoid::{Elem, MonoidTable};
