//! Exact arithmetic for certifying wandering residue classes of rational
//! maps over `F(T)`: reduction, residue-class dynamics, canonical heights
//! and Newton polygons.

pub mod algebra;
pub mod commands;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod heights;
pub mod limits;
pub mod local;
pub mod ratmap;
pub mod report;
pub mod residue;

pub use error::{Error, Result};
