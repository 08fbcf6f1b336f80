//! Exact algebra over ℤ: arbitrary-precision integer matrices, Smith normal
//! form with tracked unimodular transforms, finitely generated abelian groups
//! in invariant-factor form, homomorphisms between them, and exactness
//! checking for short sequences. No floating point anywhere in this tree.

pub mod group;
pub mod matrix;
pub mod smith;

pub use group::{compose, is_exact_at, ExactnessCheck, FgAbelianGroup, GroupElement, GroupHom};
pub use matrix::{AlgebraError, IntegerMatrix};
pub use smith::{
    cokernel, cokernel_projection, image_contains, kernel, smith_normal_form, KernelBasis,
    SmithDecomposition,
};
