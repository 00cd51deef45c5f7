//! Finitely generated abelian groups over ℤ: Smith form, subquotients, Hom, Ext¹ and ⊗.

pub mod functors;
pub mod group;
pub mod lattice;
pub mod matrix;
pub mod snf;

pub use functors::{ext1_group, hom_group, tensor_group, tensor_map, tensor_presentation, ExtGroup, HomGroup};
pub use group::{
    cokernel, cokernel_sub, image_sub, kernel_sub, whole_sub, factor_through_injection, factor_through_surjection, homology, homology_sub, image, is_exact,
    kernel, preimage, subquotient, FgAb, FgAbError, FgAbMap, SubQuotient,
};
pub use matrix::{big, big_vec, IntMatrix};
pub use snf::{snf, Snf};
