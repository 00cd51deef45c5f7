//! Equivariant homotopy computations for the group of order two: Mackey functors,
//! Bredon charts of representation spheres, and slice spectral sequences.

pub mod fgab;
pub mod bredon;
pub mod cli;
pub mod mackey;
pub mod slice;
