//! Exact q-series, characteristic classes, Jacobi theta functions and
//! equivariant fixed-point sums for elliptic genera of split manifolds.

pub mod catalog;
pub mod charclass;
pub mod cli;
pub mod equivariant;
pub mod error;
pub mod genus;
pub mod ktheory;
pub mod ring;
pub mod series;
pub mod theta;

pub use error::{Error, Result};
