//! Charts on the boundary strata of the U(2) compactification.
//!
//! The boundary 𝕄̄_∞ (unitaries with eigenvalue 1) is the union of a vertex 𝟏,
//! the light cone at infinity, and the bubble 𝔹 of involutions. Coordinates:
//!
//! * `stereographic` sends z ∈ ℂ ∪ {∞} to a unit vector s(z) ∈ ℝ³, the complex
//!   part riding in the Hermitian (1,2) slot w = x₂ − ix₃, so that
//!   s(z) ↦ (|z|²−1, 2z)/(1+|z|²) componentwise in (x₁, w).
//! * `lightcone_point` M₀(x₀, z) is the null event x₀·(1, s(z)) as a matrix;
//!   equivalently M₀ = 2x₀·P(z) for the projection P below.
//! * `sigma_perp` σ⊥(x₀, z) = −σ(M₀(x₀, z)) = (𝟏 + iM₀)(𝟏 − iM₀)⁻¹
//!   parametrizes the cone stratum; det σ⊥ = (1 + 2ix₀)/(1 − 2ix₀) = e^{iα}
//!   with α = 2·arctan(2x₀), and Tr σ⊥ = 1 + det σ⊥ = 2/(1 − 2ix₀).
//! * `bubble_v` V(z) = (1+|z|²)⁻¹·[[|z|²−1, 2z], [2z̄, 1−|z|²]] is the
//!   Hermitian involution with V(0) = −ε, V(∞) = +ε, ε = diag(1, −1);
//!   the bubble chart is z ↦ −V(z), and σ⊥(x₀, z) → −V(z) as x₀ → ±∞.
//! * `projection_at` P(z) = ½(𝟏 + V(z)), the rank-one projection with range
//!   spanned by (z, 1) (by (1, 0) at z = ∞).
//! * `exp_form` rebuilds σ⊥ as the matrix exponential exp(iαP), an
//!   independent code path: σ⊥ = 𝟏 − βP with β = 1 − e^{iα}.
//! * `boundary_coordinates` inverts all of this: 𝟏 ↦ Vertex, bubble points
//!   recover z from ½(𝟏 − U), cone points recover x₀ from α = arg det U and
//!   z from the range of P = (𝟏 − U)/(1 − det U).

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cayley::{cayley, eigenvalue_one_residual};
use crate::spacetime::{event_to_matrix, Matrix2C, MinkowskiEvent};
use crate::Tolerances;

/// Second eigenvector component below this ratio of the first reads as z = ∞.
const Z_INFINITY_RATIO: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundaryError {
    #[error("matrix is not unitary: defect {defect:e}")]
    NotUnitary { defect: f64 },
    /// 1 is not an eigenvalue within tolerance: the matrix lies in the
    /// interior, not on the boundary.
    #[error("unitary is not on the boundary: |det(U - 1)| = {residual:e}")]
    NotOnBoundary { residual: f64 },
}

/// A point of the Riemann sphere ℂ ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtendedComplex {
    pub fn finite(re: f64, im: f64) -> Self {
        ExtendedComplex::Finite(Complex64::new(re, im))
    }

    pub fn zero() -> Self {
        ExtendedComplex::finite(0.0, 0.0)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ExtendedComplex::Infinity)
    }

    /// Distance between the stereographic images on the unit sphere.
    /// A genuine metric on ℂ ∪ {∞}, well behaved at ∞.
    pub fn chordal_distance(&self, other: &ExtendedComplex) -> f64 {
        let a = stereographic(self);
        let b = stereographic(other);
        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
    }
}

impl std::fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtendedComplex::Finite(z) => write!(f, "{}{:+}i", z.re, z.im),
            ExtendedComplex::Infinity => write!(f, "inf"),
        }
    }
}

// JSON shape: [re, im] for finite values, the string "inf" for infinity.
impl Serialize for ExtendedComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedComplex::Finite(z) => [z.re, z.im].serialize(serializer),
            ExtendedComplex::Infinity => "inf".serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedComplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Pair([f64; 2]),
            Word(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Pair([re, im]) => Ok(ExtendedComplex::finite(re, im)),
            Repr::Word(w) if w == "inf" => Ok(ExtendedComplex::Infinity),
            Repr::Word(w) => Err(D::Error::custom(format!(
                "expected [re,im] or \"inf\", got \"{w}\""
            ))),
        }
    }
}

/// Boundary chart coordinates returned by [`boundary_coordinates`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryCoordinate {
    /// U = 𝟏, the common point σ⊥(0, z) of all cone generators.
    Vertex,
    /// σ⊥(x₀, z) with x₀ ≠ 0.
    Cone { x0: f64, z: ExtendedComplex },
    /// −V(z) on the bubble.
    BubblePoint(ExtendedComplex),
}

// JSON shape: {"kind":"vertex"} | {"kind":"cone","x0":…,"z":…} | {"kind":"bubble","z":…}.
impl Serialize for BoundaryCoordinate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(None)?;
        match self {
            BoundaryCoordinate::Vertex => map.serialize_entry("kind", "vertex")?,
            BoundaryCoordinate::Cone { x0, z } => {
                map.serialize_entry("kind", "cone")?;
                map.serialize_entry("x0", x0)?;
                map.serialize_entry("z", z)?;
            }
            BoundaryCoordinate::BubblePoint(z) => {
                map.serialize_entry("kind", "bubble")?;
                map.serialize_entry("z", z)?;
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for BoundaryCoordinate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            kind: String,
            x0: Option<f64>,
            z: Option<ExtendedComplex>,
        }
        let r = Repr::deserialize(deserializer)?;
        match r.kind.as_str() {
            "vertex" => Ok(BoundaryCoordinate::Vertex),
            "cone" => {
                let x0 = r.x0.ok_or_else(|| D::Error::missing_field("x0"))?;
                let z = r.z.ok_or_else(|| D::Error::missing_field("z"))?;
                Ok(BoundaryCoordinate::Cone { x0, z })
            }
            "bubble" => {
                let z = r.z.ok_or_else(|| D::Error::missing_field("z"))?;
                Ok(BoundaryCoordinate::BubblePoint(z))
            }
            other => Err(D::Error::custom(format!("unknown kind \"{other}\""))),
        }
    }
}

/// A rank-one Hermitian projection (P² = P = P*, Tr P = 1, det P = 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionPoint {
    matrix: Matrix2C,
}

impl ProjectionPoint {
    /// Validate and wrap an arbitrary matrix.
    pub fn new(matrix: Matrix2C, tol: f64) -> Option<Self> {
        let trace_ok = (matrix.trace() - Complex64::new(1.0, 0.0)).norm() <= tol;
        if matrix.projection_defect() <= tol && trace_ok {
            Some(ProjectionPoint { matrix })
        } else {
            None
        }
    }

    pub fn matrix(&self) -> &Matrix2C {
        &self.matrix
    }
}

/// Inverse stereographic projection: the unit vector
/// s(z) = (1+|z|²)⁻¹·(|z|²−1, 2z) in ℝ³ ≅ ℝ × ℂ, the complex part entering
/// the (x₂, x₃)-plane through w = x₂ − ix₃. s(∞) = (1, 0, 0).
///
/// Computed through 1/z when |z| > 1, so arbitrarily large inputs are exact.
pub fn stereographic(z: &ExtendedComplex) -> [f64; 3] {
    let w = match z {
        ExtendedComplex::Infinity => return [1.0, 0.0, 0.0],
        ExtendedComplex::Finite(z) => *z,
    };
    let (first, cpart) = if w.norm_sqr() <= 1.0 {
        let d = 1.0 + w.norm_sqr();
        ((w.norm_sqr() - 1.0) / d, 2.0 * w / d)
    } else {
        let r = 1.0 / w; // |r| < 1
        let d = 1.0 + r.norm_sqr();
        ((1.0 - r.norm_sqr()) / d, 2.0 * r.conj() / d)
    };
    // w = x2 − i x3, so x2 = Re, x3 = −Im.
    [first, cpart.re, -cpart.im]
}

/// The null event x₀·(1, s(z)) as a Hermitian matrix:
/// M₀(x₀, z) = 2x₀·P(z), with det M₀ = 0 and Tr M₀ = 2x₀.
pub fn lightcone_point(x0: f64, z: &ExtendedComplex) -> Matrix2C {
    let s = stereographic(z);
    event_to_matrix(&MinkowskiEvent::new(x0, x0 * s[0], x0 * s[1], x0 * s[2]))
}

/// σ⊥(x₀, z) = −σ(M₀(x₀, z)): the cone-stratum chart. σ⊥(0, z) = 𝟏 for
/// every z; det σ⊥ = (1 + 2ix₀)/(1 − 2ix₀); σ⊥(x₀, z) → −V(z) as x₀ → ±∞.
/// Requires finite x₀ (the x₀ = ±∞ limits are [`bubble_v`] points).
pub fn sigma_perp(x0: f64, z: &ExtendedComplex) -> Matrix2C {
    let m0 = lightcone_point(x0, z);
    // M₀ is exactly Hermitian by construction, so σ cannot fail.
    let s = cayley(&m0, &Tolerances::DEFAULT).expect("M0 is Hermitian by construction");
    -s
}

/// The Hermitian involution V(z) = (1+|z|²)⁻¹·[[|z|²−1, 2z], [2z̄, 1−|z|²]];
/// equivalently the matrix of the spatial unit vector s(z). V² = 𝟏, Tr V = 0,
/// V(0) = −ε, V(∞) = +ε with ε = diag(1, −1).
pub fn bubble_v(z: &ExtendedComplex) -> Matrix2C {
    let s = stereographic(z);
    event_to_matrix(&MinkowskiEvent::new(0.0, s[0], s[1], s[2]))
}

/// P(z) = ½(𝟏 + V(z)): the rank-one projection onto the span of (z, 1)
/// (onto (1, 0) at z = ∞).
pub fn projection_at(z: &ExtendedComplex) -> ProjectionPoint {
    let p = 0.5 * (Matrix2C::identity() + bubble_v(z));
    ProjectionPoint { matrix: p }
}

/// α(x₀) = 2·arctan(2x₀) ∈ (−π, π): the argument of
/// det σ⊥ = (1 + 2ix₀)/(1 − 2ix₀) = e^{iα}. Strictly monotone, α(0) = 0.
pub fn alpha_of(x0: f64) -> f64 {
    2.0 * (2.0 * x0).atan()
}

/// σ⊥ through an independent path: the matrix exponential exp(iα·P(z)) with
/// α = alpha_of(x₀), computed by scaled-and-squared power series (not by the
/// projection identity). Agrees with [`sigma_perp`] to ~1e−14.
pub fn exp_form(x0: f64, z: &ExtendedComplex) -> Matrix2C {
    let alpha = alpha_of(x0);
    let p = projection_at(z);
    expm2(&p.matrix().scale(Complex64::new(0.0, alpha)))
}

/// Matrix exponential of a 2×2 complex matrix: scale by 2⁻ᵏ until the
/// Frobenius norm is ≤ ½, sum the Taylor series, square k times.
fn expm2(a: &Matrix2C) -> Matrix2C {
    let norm = a.frobenius_norm();
    let k = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let b = a.scale(Complex64::new((0.5f64).powi(k as i32), 0.0));
    let mut sum = Matrix2C::identity();
    let mut term = Matrix2C::identity();
    for n in 1..=16 {
        term = term * b.scale(Complex64::new(1.0 / n as f64, 0.0));
        sum = sum + term;
    }
    for _ in 0..k {
        sum = sum * sum;
    }
    sum
}

/// Invert the boundary charts. The input must be unitary within
/// `tol.unitary` and have eigenvalue 1 within `tol.eig` (else
/// [`BoundaryError::NotOnBoundary`]). With λ = det U:
///
/// * |λ − 1| ≤ tol.eig: both eigenvalues are 1, U = 𝟏 — `Vertex`;
/// * |λ + 1| ≤ tol.eig: spectrum {+1, −1} — `BubblePoint(z)` with
///   −V(z) = U, z read off the range of ½(𝟏 − U);
/// * otherwise `Cone` with x₀ = ½·tan(α/2), α = arg λ, and z read off the
///   range of P = (𝟏 − U)/(1 − λ).
///
/// z-recovery takes the dominant column of the projection as the
/// range vector e ∝ (z, 1) and answers ∞ when |e₂| < 1e−12·|e₁|.
pub fn boundary_coordinates(
    u: &Matrix2C,
    tol: &Tolerances,
) -> Result<BoundaryCoordinate, BoundaryError> {
    let defect = u.unitary_defect();
    if !(defect <= tol.unitary) {
        return Err(BoundaryError::NotUnitary { defect });
    }
    let residual = eigenvalue_one_residual(u);
    if residual > tol.eig {
        return Err(BoundaryError::NotOnBoundary { residual });
    }
    let lambda = u.det();
    if (lambda - Complex64::new(1.0, 0.0)).norm() <= tol.eig {
        return Ok(BoundaryCoordinate::Vertex);
    }
    if (lambda + Complex64::new(1.0, 0.0)).norm() <= tol.eig {
        // U = −V(z); ½(1 − U) = ½(1 + V) projects onto (z, 1).
        let p = 0.5 * (Matrix2C::identity() - *u);
        return Ok(BoundaryCoordinate::BubblePoint(range_coordinate(&p)));
    }
    let alpha = lambda.im.atan2(lambda.re);
    let x0 = 0.5 * (0.5 * alpha).tan();
    let beta = Complex64::new(1.0, 0.0) - lambda; // 1 − e^{iα} ≠ 0 here
    let p = (Matrix2C::identity() - *u).scale(Complex64::new(1.0, 0.0) / beta);
    Ok(BoundaryCoordinate::Cone {
        x0,
        z: range_coordinate(&p),
    })
}

/// z with (z, 1) spanning the range of a rank-one projection, from its
/// dominant column; ∞ when the second component is negligible.
fn range_coordinate(p: &Matrix2C) -> ExtendedComplex {
    let col1_norm = (p.m11.norm_sqr() + p.m21.norm_sqr()).sqrt();
    let col2_norm = (p.m12.norm_sqr() + p.m22.norm_sqr()).sqrt();
    let (e1, e2) = if col1_norm >= col2_norm {
        (p.m11, p.m21)
    } else {
        (p.m12, p.m22)
    };
    if e2.norm() < Z_INFINITY_RATIO * e1.norm() {
        ExtendedComplex::Infinity
    } else {
        ExtendedComplex::Finite(e1 / e2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::classify_stratum;
    use crate::cayley::StratumLabel;
    use crate::sample;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    const TOL: &Tolerances = &Tolerances::DEFAULT;

    fn fin(re: f64, im: f64) -> ExtendedComplex {
        ExtendedComplex::finite(re, im)
    }

    fn eps_matrix() -> Matrix2C {
        Matrix2C::from_reals(1.0, 0.0, 0.0, -1.0)
    }

    #[test]
    fn stereographic_landmarks() {
        assert_eq!(stereographic(&ExtendedComplex::Infinity), [1.0, 0.0, 0.0]);
        assert_eq!(stereographic(&fin(0.0, 0.0)), [-1.0, 0.0, 0.0]);
        let s = stereographic(&fin(1.0, 0.0));
        assert!((s[0]).abs() < 1e-15 && (s[1] - 1.0).abs() < 1e-15 && s[2].abs() < 1e-15);
    }

    #[test]
    fn stereographic_is_a_unit_vector_even_for_huge_inputs() {
        for z in [
            fin(3.7, -2.2),
            fin(1e300, 0.0),
            fin(-4e200, 7e199),
            fin(1e-300, -1e-300),
        ] {
            let s = stereographic(&z);
            let n = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
            assert!((n - 1.0).abs() < 1e-14, "|s({z})| = {n}");
        }
    }

    #[test]
    fn lightcone_point_examples() {
        let m = lightcone_point(1.0, &fin(0.0, 0.0));
        assert!(m.distance(&Matrix2C::from_reals(0.0, 0.0, 0.0, 2.0)) < 1e-15);
        let m = lightcone_point(1.0, &ExtendedComplex::Infinity);
        assert!(m.distance(&Matrix2C::from_reals(2.0, 0.0, 0.0, 0.0)) < 1e-15);
    }

    #[test]
    fn lightcone_point_is_null_and_matches_the_weighted_chart() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let x0: f64 = rng.gen_range(-5.0..5.0);
            let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            if z.norm() < 1e-3 {
                continue;
            }
            let m = lightcone_point(x0, &ExtendedComplex::Finite(z));
            assert!(m.det().norm() <= 1e-13 * (1.0 + x0 * x0));
            assert!((m.trace().re - 2.0 * x0).abs() <= 1e-13 * (1.0 + x0.abs()));
            // k·[[|z|, u], [ū, 1/|z|]] with k = 2x₀/(|z| + 1/|z|), u = z/|z|
            let k = 2.0 * x0 / (z.norm() + 1.0 / z.norm());
            let u = z / z.norm();
            let chart = Matrix2C::new(
                Complex64::new(k * z.norm(), 0.0),
                k * u,
                k * u.conj(),
                Complex64::new(k / z.norm(), 0.0),
            );
            assert!(m.distance(&chart) <= 1e-12 * (1.0 + k.abs()));
            // and M₀ = 2x₀·P(z)
            let p = projection_at(&ExtendedComplex::Finite(z));
            assert!(m.distance(&p.matrix().scale(Complex64::new(2.0 * x0, 0.0))) <= 1e-12);
        }
    }

    #[test]
    fn sigma_perp_at_zero_is_identity() {
        for z in [fin(0.0, 0.0), fin(1.0, 2.0), ExtendedComplex::Infinity] {
            assert!(sigma_perp(0.0, &z).distance(&Matrix2C::identity()) < 1e-15);
        }
    }

    #[test]
    fn sigma_perp_determinant_at_one_and_one_plus_i() {
        let sp = sigma_perp(1.0, &fin(1.0, 1.0));
        let expected = Complex64::new(1.0, 2.0) / Complex64::new(1.0, -2.0);
        assert!((sp.det() - expected).norm() < 1e-12);
    }

    #[test]
    fn sigma_perp_trace_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let x0: f64 = rng.gen_range(-20.0..20.0);
            let z = sample::random_sphere_point(&mut rng);
            let sp = sigma_perp(x0, &z);
            let det = sp.det();
            let tr = sp.trace();
            // Tr σ⊥ = 1 + det σ⊥ = 2/(1 − 2ix₀)
            assert!((tr - (Complex64::new(1.0, 0.0) + det)).norm() <= 1e-12);
            let closed = Complex64::new(2.0, 0.0) / Complex64::new(1.0, -2.0 * x0);
            assert!((tr - closed).norm() <= 1e-12);
            // det(1 − iM₀) = 1 − 2ix₀
            let m0 = lightcone_point(x0, &z);
            let one_minus_im0 = Matrix2C::identity() - m0.scale(Complex64::new(0.0, 1.0));
            assert!((one_minus_im0.det() - Complex64::new(1.0, -2.0 * x0)).norm() <= 1e-12);
        }
    }

    #[test]
    fn sigma_perp_tends_to_minus_v() {
        for z in [fin(0.3, -0.7), fin(2.5, 1.0), fin(0.0, 0.0), ExtendedComplex::Infinity] {
            let v = bubble_v(&z);
            for x0 in [1e6, -1e6] {
                let d = sigma_perp(x0, &z).distance(&(-v));
                assert!(d <= 2e-6, "x0={x0}, dist={d:e}");
            }
        }
    }

    #[test]
    fn bubble_v_landmarks() {
        assert!(bubble_v(&fin(0.0, 0.0)).distance(&(-eps_matrix())) < 1e-15);
        assert!(bubble_v(&ExtendedComplex::Infinity).distance(&eps_matrix()) < 1e-15);
        let th = 0.9_f64;
        let v = bubble_v(&fin(th.cos(), th.sin()));
        let expected = Matrix2C::new(
            Complex64::ZERO,
            Complex64::new(th.cos(), th.sin()),
            Complex64::new(th.cos(), -th.sin()),
            Complex64::ZERO,
        );
        assert!(v.distance(&expected) < 1e-14);
    }

    #[test]
    fn bubble_v_is_a_hermitian_involution_of_trace_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let z = sample::random_sphere_point(&mut rng);
            let v = bubble_v(&z);
            assert!((v * v).distance(&Matrix2C::identity()) <= 1e-14);
            assert!(v.hermitian_defect() <= 1e-15);
            assert!(v.trace().norm() <= 1e-15);
            assert!(v.unitary_defect() <= 1e-14);
        }
    }

    #[test]
    fn projection_examples_and_eigenvector() {
        let p0 = projection_at(&fin(0.0, 0.0));
        assert!(p0.matrix().distance(&Matrix2C::from_reals(0.0, 0.0, 0.0, 1.0)) < 1e-15);
        let pinf = projection_at(&ExtendedComplex::Infinity);
        assert!(pinf.matrix().distance(&Matrix2C::from_reals(1.0, 0.0, 0.0, 0.0)) < 1e-15);
        let p1 = projection_at(&fin(1.0, 0.0));
        assert!(p1.matrix().distance(&Matrix2C::from_reals(0.5, 0.5, 0.5, 0.5)) < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let z = Complex64::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
            let p = projection_at(&ExtendedComplex::Finite(z));
            let m = p.matrix();
            assert!(m.projection_defect() <= 1e-14);
            assert!((m.trace() - Complex64::new(1.0, 0.0)).norm() <= 1e-14);
            assert!(m.det().norm() <= 1e-14);
            // P(z, 1)ᵀ = (z, 1)ᵀ
            let r1 = m.m11 * z + m.m12;
            let r2 = m.m21 * z + m.m22;
            assert!((r1 - z).norm() <= 1e-10 * (1.0 + z.norm()));
            assert!((r2 - Complex64::new(1.0, 0.0)).norm() <= 1e-10);
        }
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_of(0.0), 0.0);
        assert!((alpha_of(0.5) - PI / 2.0).abs() < 1e-15);
        assert!((alpha_of(1e15) - PI).abs() < 1e-14);
        assert!((alpha_of(-1e15) + PI).abs() < 1e-14);
        // e^{iα} = (1 + 2ix₀)/(1 − 2ix₀)
        for x0 in [-3.0, -0.2, 0.7, 42.0] {
            let a = alpha_of(x0);
            let lhs = Complex64::new(0.0, a).exp();
            let rhs = Complex64::new(1.0, 2.0 * x0) / Complex64::new(1.0, -2.0 * x0);
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn exp_form_at_zero_and_at_half() {
        assert!(exp_form(0.0, &fin(2.0, -1.0)).distance(&Matrix2C::identity()) < 1e-15);
        // α(½) = π/2, P(0) = diag(0, 1): exp(iαP) = diag(1, i).
        let got = exp_form(0.5, &fin(0.0, 0.0));
        let expected = Matrix2C::diag(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0));
        assert!(got.distance(&expected) < 1e-13);
        assert!(sigma_perp(0.5, &fin(0.0, 0.0)).distance(&expected) < 1e-13);
    }

    #[test]
    fn exp_form_matches_sigma_perp() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let x0: f64 = rng.gen_range(-30.0..30.0);
            let z = sample::random_sphere_point(&mut rng);
            let d = exp_form(x0, &z).distance(&sigma_perp(x0, &z));
            assert!(d <= 1e-10, "x0={x0} z={z} d={d:e}");
        }
    }

    #[test]
    fn projection_form_matches_sigma_perp() {
        // σ⊥ = 𝟏 − βP with β = 1 − e^{iα}.
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..100 {
            let x0: f64 = rng.gen_range(-30.0..30.0);
            let z = sample::random_sphere_point(&mut rng);
            let beta = Complex64::new(1.0, 0.0) - Complex64::new(0.0, alpha_of(x0)).exp();
            let rebuilt = Matrix2C::identity() - projection_at(&z).matrix().scale(beta);
            assert!(rebuilt.distance(&sigma_perp(x0, &z)) <= 1e-10);
        }
    }

    #[test]
    fn boundary_coordinates_of_identity_is_vertex() {
        assert_eq!(
            boundary_coordinates(&Matrix2C::identity(), TOL).unwrap(),
            BoundaryCoordinate::Vertex
        );
    }

    #[test]
    fn boundary_coordinates_of_epsilon_is_bubble_at_zero() {
        // −V(0) = ε, so the chart value of ε is z = 0.
        match boundary_coordinates(&eps_matrix(), TOL).unwrap() {
            BoundaryCoordinate::BubblePoint(z) => {
                assert!(z.chordal_distance(&ExtendedComplex::zero()) < 1e-12);
                // round-trip contract: −V(z) reproduces the input
                assert!((-bubble_v(&z)).distance(&eps_matrix()) < 1e-12);
            }
            other => panic!("expected bubble point, got {other:?}"),
        }
    }

    #[test]
    fn boundary_coordinates_rejects_interior_and_non_unitary() {
        let interior = cayley(&Matrix2C::identity(), TOL).unwrap();
        assert!(matches!(
            boundary_coordinates(&interior, TOL),
            Err(BoundaryError::NotOnBoundary { .. })
        ));
        assert!(matches!(
            boundary_coordinates(&Matrix2C::from_reals(2.0, 0.0, 0.0, 1.0), TOL),
            Err(BoundaryError::NotUnitary { .. })
        ));
    }

    #[test]
    fn cone_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..300 {
            let alpha: f64 = rng.gen_range(-PI + 1e-3..PI - 1e-3);
            if alpha.abs() < 1e-3 {
                continue;
            }
            let x0 = 0.5 * (alpha / 2.0).tan();
            let z = sample::random_sphere_point(&mut rng);
            let u = sigma_perp(x0, &z);
            match boundary_coordinates(&u, TOL).unwrap() {
                BoundaryCoordinate::Cone { x0: x0r, z: zr } => {
                    assert!(
                        (x0r - x0).abs() <= 1e-8 * (1.0 + x0.abs()),
                        "x0={x0} x0r={x0r}"
                    );
                    assert!(zr.chordal_distance(&z) <= 1e-8, "z={z} zr={zr}");
                    // reconstruction reproduces U
                    assert!(sigma_perp(x0r, &zr).distance(&u) <= 1e-8);
                }
                other => panic!("expected cone, got {other:?} (x0={x0}, z={z})"),
            }
        }
    }

    #[test]
    fn bubble_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..300 {
            let z = sample::random_sphere_point(&mut rng);
            let u = -bubble_v(&z);
            match boundary_coordinates(&u, TOL).unwrap() {
                BoundaryCoordinate::BubblePoint(zr) => {
                    assert!(zr.chordal_distance(&z) <= 1e-8, "z={z} zr={zr}");
                    assert!((-bubble_v(&zr)).distance(&u) <= 1e-8);
                }
                other => panic!("expected bubble, got {other:?} (z={z})"),
            }
        }
    }

    #[test]
    fn cone_chart_at_infinity_recovers_infinity() {
        let u = sigma_perp(0.8, &ExtendedComplex::Infinity);
        match boundary_coordinates(&u, TOL).unwrap() {
            BoundaryCoordinate::Cone { x0, z } => {
                assert!((x0 - 0.8).abs() < 1e-10);
                assert!(z.is_infinity());
            }
            other => panic!("expected cone, got {other:?}"),
        }
    }

    #[test]
    fn images_of_interior_and_cone_charts_are_disjoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..300 {
            let m = sample::random_hermitian(&mut rng, 10.0);
            let interior = cayley(&m, TOL).unwrap();
            assert!(eigenvalue_one_residual(&interior) > 1e-12);
            let x0: f64 = rng.gen_range(-5.0..5.0);
            let z = sample::random_sphere_point(&mut rng);
            let cone = sigma_perp(x0, &z);
            assert!(eigenvalue_one_residual(&cone) <= 1e-9);
            assert!(interior.distance(&cone) > 0.0);
        }
    }

    #[test]
    fn sigma_perp_lands_on_the_advertised_strata() {
        let z = fin(0.7, -0.3);
        assert!(matches!(
            classify_stratum(&sigma_perp(2.0, &z), TOL).unwrap(),
            StratumLabel::LightConeAtInfinity
        ));
        assert!(matches!(
            classify_stratum(&(-bubble_v(&z)), TOL).unwrap(),
            StratumLabel::Bubble
        ));
    }

    #[test]
    fn extended_complex_json() {
        let z = fin(1.5, -2.0);
        assert_eq!(serde_json::to_string(&z).unwrap(), "[1.5,-2.0]");
        let inf = ExtendedComplex::Infinity;
        assert_eq!(serde_json::to_string(&inf).unwrap(), "\"inf\"");
        let back: ExtendedComplex = serde_json::from_str("\"inf\"").unwrap();
        assert!(back.is_infinity());
        let back: ExtendedComplex = serde_json::from_str("[1.5,-2.0]").unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn boundary_coordinate_json() {
        let v = BoundaryCoordinate::Vertex;
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"kind":"vertex"}"#);
        let c = BoundaryCoordinate::Cone {
            x0: 0.5,
            z: fin(1.0, 0.0),
        };
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"kind":"cone","x0":0.5,"z":[1.0,0.0]}"#
        );
        let b = BoundaryCoordinate::BubblePoint(ExtendedComplex::Infinity);
        assert_eq!(
            serde_json::to_string(&b).unwrap(),
            r#"{"kind":"bubble","z":"inf"}"#
        );
        for json in [
            r#"{"kind":"vertex"}"#,
            r#"{"kind":"cone","x0":0.5,"z":[1.0,0.0]}"#,
            r#"{"kind":"bubble","z":"inf"}"#,
        ] {
            let parsed: BoundaryCoordinate = serde_json::from_str(json).unwrap();
            assert_eq!(serde_json::to_string(&parsed).unwrap(), json);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn sigma_perp_is_unitary_with_eigenvalue_one(
            x0 in -100.0..100.0f64,
            re in -5.0..5.0f64,
            im in -5.0..5.0f64,
        ) {
            let u = sigma_perp(x0, &fin(re, im));
            prop_assert!(u.unitary_defect() <= 1e-12);
            prop_assert!(eigenvalue_one_residual(&u) <= 1e-10);
        }
    }
}
