//! Exact linear algebra over prime fields and over `Z/8`.

pub mod field;
mod matrix;
mod poly;
mod z8;

pub use matrix::{FFMatrix, Rref};
pub use poly::{distinct_degree, equal_degree, factor_squarefree, squarefree_decomposition, FFPoly};
pub use z8::{z8_combine, z8_order_log2, z8_solve_membership, z8_span_order_log2, valuation, Z8Vector};
