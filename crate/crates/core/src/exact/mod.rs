//! Exact arithmetic: fields, multi-indices, sparse polynomials, matrices
//! and finite complexes.

pub mod complex;
pub mod field;
pub mod matrix;
pub mod multi;
pub mod parse;
pub mod poly;
pub mod polymatrix;
