//! Exact computations with principal parts of affine space.
//!
//! Everything is polynomial over `Q` or `F_p` and every check is an exact
//! equality of matrices or vectors; there are no tolerances.
//!
//! - [`exact`]: fields, polynomials, matrices over polynomials, chain
//!   complexes with homology ranks and contracting homotopies.
//! - [`jet`]: the truncated algebras `P^m` of principal parts in the plain
//!   or divided-power basis, with Taylor maps and comultiplication.
//! - [`diffop`]: differential operators between free modules, composition
//!   and their linearizations `Q^0(D)_n`.
//! - [`strat`]: stratified modules, the Taylor stratification of a flat
//!   connection, induced towers and horizontal sections.
//! - [`derham`]: De Rham complexes, their linearized and graded levels, and
//!   the comparison maps from the linearization bicomplex.
//! - [`crystal`]: evaluation of a stratified module on a nilpotent
//!   thickening and the cocycle of comparison maps.
//! - [`suite`]: the batch runner behind `jetcrys report`.
//!
//! ```
//! use jetcrys::derham::complexes::linearized_derham_level;
//! use jetcrys::exact::field::Field;
//! use jetcrys::jet::JetMode;
//!
//! let c = linearized_derham_level(3, 2, Field::Rational, JetMode::Plain).unwrap();
//! assert!(c.is_exact().unwrap());
//! let c = linearized_derham_level(2, 1, Field::Prime(2), JetMode::Plain).unwrap();
//! assert!(!c.is_exact().unwrap());
//! ```

pub mod crystal;
pub mod derham;
pub mod diffop;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod io;
pub mod jet;
pub mod strat;
pub mod suite;

pub use error::{Error, Result};
