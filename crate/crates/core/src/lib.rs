//! Exact Lie-algebraic computations for nested parabolic pairs `q <= p <= g`
//! of a simple Lie algebra: root systems, parabolic gradings, Kostant
//! predictions for `H_2(p_+, g)`, and a brute-force Hodge-decomposition
//! oracle built from Chevalley structure constants.

pub mod chevalley;
pub mod dynkin_io;
pub mod error;
pub mod grading;
pub mod homology;
pub mod kostant;
pub mod linalg;
pub mod nested;
pub mod rootsys;

pub use error::{Error, Result};
