//! Forms, De Rham complexes, their linearizations and the comparison maps.

pub mod complexes;
pub mod forms;
pub mod phi;
pub mod psi;
