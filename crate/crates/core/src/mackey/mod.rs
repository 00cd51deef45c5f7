//! Mackey functors for the group of order two.

pub mod classify;
pub mod duality;
pub mod functor;
pub mod named;
pub mod ops;

pub use classify::{classify, is_named, Classification};
pub use duality::{dual_free, dual_tors};
pub use functor::{mackey_homology, split_fr_tors, MackeyComplex, MackeyError, MackeyFunctor, MackeyMap, MackeySES};
pub use named::construct_named;
pub use ops::{box_product, find_isomorphism, internal_hom, isomorphic, IsoResult, MackeyHom};
