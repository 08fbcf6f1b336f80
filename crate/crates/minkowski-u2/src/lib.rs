//! Compactified Minkowski space as the unitary group U(2), together with the
//! exact integer algebra used alongside it.
//!
//! The geometric half of the crate works over ℝ/ℂ in `f64`:
//!
//! * [`spacetime`] — events of Minkowski space ℝ^{1,3} as 2×2 Hermitian
//!   matrices, the pseudometric as a determinant, causal classification.
//! * [`cayley`] — the Cayley transform σ(M) = (M − i𝟏)(M + i𝟏)⁻¹ embedding
//!   Minkowski space in U(2), its inverse, and the stratification of U(2)
//!   into interior, light cone at infinity, and bubble.
//! * [`boundary`] — charts on the boundary strata: stereographic
//!   parametrization of the cone at infinity, the bubble involutions V(z),
//!   spectral projections, and coordinate recovery.
//! * [`actions`] — SL₂(ℂ) acting by M ↦ TMT*, the induced Lorentz matrices,
//!   and SU(2) conjugation on U(2).
//! * [`rays`] — light rays, their limits on the boundary, and the line of
//!   end points attached to a ray direction.
//! * [`sample`] — random generators for events, spin transforms, unitaries.
//!
//! The exact half works over ℤ with arbitrary-precision integers:
//!
//! * [`abelian`] — integer matrices, Smith normal form with tracked
//!   unimodular transforms, finitely generated abelian groups, homomorphisms,
//!   and exactness checking.
//! * [`surgery`] — homology of surgery on framed links from the linking
//!   matrix: H₁ as cokernel, H₂ as kernel, the mod-2 intersection form, and
//!   a three-term resolution report.
//! * [`bw`] — Brauer–Wall composition (b, s) + (b′, s′) =
//!   (b + β(s ⌣ s′) + b′, s + s′) over a registry of curated cohomology
//!   descriptors for the spaces in play.
//!
//! Everything is a pure function of its inputs; no global state, no interior
//! mutability. All `f64` tolerances are carried by [`Tolerances`].

pub mod abelian;
pub mod actions;
pub mod boundary;
pub mod bw;
pub mod cayley;
pub mod rays;
pub mod sample;
pub mod spacetime;
pub mod surgery;

pub use spacetime::{CausalClass, Matrix2C, MinkowskiEvent};

/// Comparison thresholds shared by the floating-point modules.
///
/// * `hermitian` — absolute bound on the Frobenius norm of M − M* for a
///   matrix to count as Hermitian.
/// * `unitary` — absolute bound on the Frobenius norm of U*U − 𝟏.
/// * `eig` — bound on |det(U − 𝟏)| deciding eigenvalue-1 membership, i.e.
///   which stratum of U(2) a unitary belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub hermitian: f64,
    pub unitary: f64,
    pub eig: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermitian: 1e-9,
        unitary: 1e-9,
        eig: 1e-9,
    };

    /// All three thresholds set to the same value.
    pub fn uniform(tol: f64) -> Self {
        Tolerances {
            hermitian: tol,
            unitary: tol,
            eig: tol,
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances::DEFAULT
    }
}
