//! Numerical radius of (block) matrices with certified tolerances, plus a
//! catalog of numerical-radius inequalities evaluated and verified on random
//! matrix ensembles.

pub mod bounds;
pub mod eig;
pub mod ensemble;
pub mod error;
pub mod gauges;
pub mod matrix;
pub mod radius;
pub mod suite;

pub use error::{Error, Result};
pub use matrix::{BlockMatrix2x2, ComplexMatrix};
