//! Enumeration and verification toolkit for the first-letter statistic on
//! permutations avoiding two patterns of length four, the Schröder triangle
//! that describes it, and the generating functions that encode it.

pub mod bijection;
pub mod error;
pub mod perm;
pub mod recurrence;
pub mod schroeder;
pub mod series;

pub use error::{Error, Result};
