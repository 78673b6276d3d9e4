//! Computable analysis over type-two names: fueled prefix machines, the
//! limit jump and mindchange functors, d-open set algebra, measurable maps
//! and effective Borel constructions on Cantor space.

pub mod borel;
pub mod dsl;
pub mod error;
pub mod exec;
pub mod jumps;
pub mod kernel;
pub mod measurable;
pub mod scan;
pub mod setops;
pub mod spaces;

pub use error::{Error, Result};
pub use exec::Exec;
