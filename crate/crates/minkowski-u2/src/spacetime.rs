//! Minkowski space ℝ^{1,3} in Hermitian-matrix coordinates.
//!
//! An event x = (x₀, x₁, x₂, x₃) is identified with the Hermitian matrix
//!
//! ```text
//!         ⎡ x₀ + x₁   x₂ − ix₃ ⎤
//!   M(x) = ⎢                    ⎥
//!         ⎣ x₂ + ix₃   x₀ − x₁ ⎦
//! ```
//!
//! under which the pseudometric q(x) = x₀² − (x₁² + x₂² + x₃²) becomes
//! `det M` and 2x₀ becomes `Tr M`. The identification is linear, so causal
//! structure is read off determinants: q > 0 timelike, q = 0 null,
//! q < 0 spacelike, with the time orientation carried by the sign of x₀.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpacetimeError {
    /// The matrix is not Hermitian within tolerance; carries ‖M − M*‖_F.
    #[error("matrix is not Hermitian: defect {defect:e}")]
    NotHermitian { defect: f64 },
}

/// An event of Minkowski space, metric signature (+, −, −, −).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkowskiEvent {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl MinkowskiEvent {
    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        MinkowskiEvent { x0, x1, x2, x3 }
    }

    pub fn origin() -> Self {
        MinkowskiEvent::new(0.0, 0.0, 0.0, 0.0)
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    /// Euclidean norm squared of all four coordinates (not the pseudometric).
    pub fn norm_sq(&self) -> f64 {
        self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn is_finite(&self) -> bool {
        self.coords().iter().all(|c| c.is_finite())
    }
}

// JSON shape: {"x":[x0,x1,x2,x3]}.
impl Serialize for MinkowskiEvent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            x: [f64; 4],
        }
        Repr { x: self.coords() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MinkowskiEvent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            x: [f64; 4],
        }
        let r = Repr::deserialize(deserializer)?;
        Ok(MinkowskiEvent::new(r.x[0], r.x[1], r.x[2], r.x[3]))
    }
}

/// A 2×2 complex matrix, entries row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2C {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl Matrix2C {
    pub fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Matrix2C { m11, m12, m21, m22 }
    }

    pub fn zero() -> Self {
        Matrix2C::from_reals(0.0, 0.0, 0.0, 0.0)
    }

    pub fn identity() -> Self {
        Matrix2C::from_reals(1.0, 0.0, 0.0, 1.0)
    }

    /// diag(a, d) with complex entries.
    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Matrix2C::new(a, Complex64::ZERO, Complex64::ZERO, d)
    }

    /// Matrix with real entries (imaginary parts exactly zero).
    pub fn from_reals(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Matrix2C::new(
            Complex64::new(m11, 0.0),
            Complex64::new(m12, 0.0),
            Complex64::new(m21, 0.0),
            Complex64::new(m22, 0.0),
        )
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.m11, self.m12, self.m21, self.m22]
    }

    pub fn trace(&self) -> Complex64 {
        self.m11 + self.m22
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Conjugate transpose M*.
    pub fn adjoint(&self) -> Self {
        Matrix2C::new(
            self.m11.conj(),
            self.m21.conj(),
            self.m12.conj(),
            self.m22.conj(),
        )
    }

    pub fn transpose(&self) -> Self {
        Matrix2C::new(self.m11, self.m21, self.m12, self.m22)
    }

    pub fn conj(&self) -> Self {
        Matrix2C::new(
            self.m11.conj(),
            self.m12.conj(),
            self.m21.conj(),
            self.m22.conj(),
        )
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Matrix2C::new(c * self.m11, c * self.m12, c * self.m21, c * self.m22)
    }

    /// Inverse via the adjugate; `None` when the determinant is exactly zero
    /// or non-finite.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == Complex64::ZERO || !d.re.is_finite() || !d.im.is_finite() {
            return None;
        }
        let inv = Complex64::new(1.0, 0.0) / d;
        Some(Matrix2C::new(
            inv * self.m22,
            -inv * self.m12,
            -inv * self.m21,
            inv * self.m11,
        ))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries()
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn distance(&self, other: &Matrix2C) -> f64 {
        (*self - *other).frobenius_norm()
    }

    /// ‖M − M*‖_F.
    pub fn hermitian_defect(&self) -> f64 {
        (*self - self.adjoint()).frobenius_norm()
    }

    /// ‖M*M − 𝟏‖_F.
    pub fn unitary_defect(&self) -> f64 {
        (self.adjoint() * *self - Matrix2C::identity()).frobenius_norm()
    }

    /// max(‖M² − M‖_F, ‖M − M*‖_F): zero exactly for Hermitian idempotents.
    pub fn projection_defect(&self) -> f64 {
        let idem = (*self * *self - *self).frobenius_norm();
        idem.max(self.hermitian_defect())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitary_defect() <= tol
    }

    pub fn is_projection(&self, tol: f64) -> bool {
        self.projection_defect() <= tol
    }

    /// ½(M + M*), exactly Hermitian (diagonal imaginary parts constructed zero).
    pub fn hermitian_part(&self) -> Self {
        let off = 0.5 * (self.m12 + self.m21.conj());
        Matrix2C::new(
            Complex64::new(self.m11.re, 0.0),
            off,
            off.conj(),
            Complex64::new(self.m22.re, 0.0),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.entries()
            .iter()
            .all(|e| e.re.is_finite() && e.im.is_finite())
    }
}

impl std::ops::Add for Matrix2C {
    type Output = Matrix2C;
    fn add(self, rhs: Matrix2C) -> Matrix2C {
        Matrix2C::new(
            self.m11 + rhs.m11,
            self.m12 + rhs.m12,
            self.m21 + rhs.m21,
            self.m22 + rhs.m22,
        )
    }
}

impl std::ops::Sub for Matrix2C {
    type Output = Matrix2C;
    fn sub(self, rhs: Matrix2C) -> Matrix2C {
        Matrix2C::new(
            self.m11 - rhs.m11,
            self.m12 - rhs.m12,
            self.m21 - rhs.m21,
            self.m22 - rhs.m22,
        )
    }
}

impl std::ops::Neg for Matrix2C {
    type Output = Matrix2C;
    fn neg(self) -> Matrix2C {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl std::ops::Mul for Matrix2C {
    type Output = Matrix2C;
    fn mul(self, rhs: Matrix2C) -> Matrix2C {
        Matrix2C::new(
            self.m11 * rhs.m11 + self.m12 * rhs.m21,
            self.m11 * rhs.m12 + self.m12 * rhs.m22,
            self.m21 * rhs.m11 + self.m22 * rhs.m21,
            self.m21 * rhs.m12 + self.m22 * rhs.m22,
        )
    }
}

impl std::ops::Mul<Matrix2C> for Complex64 {
    type Output = Matrix2C;
    fn mul(self, rhs: Matrix2C) -> Matrix2C {
        rhs.scale(self)
    }
}

impl std::ops::Mul<Matrix2C> for f64 {
    type Output = Matrix2C;
    fn mul(self, rhs: Matrix2C) -> Matrix2C {
        rhs.scale(Complex64::new(self, 0.0))
    }
}

// JSON shape: row-major array of [re, im] pairs,
// [[re11,im11],[re12,im12],[re21,im21],[re22,im22]].
impl Serialize for Matrix2C {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: [[f64; 2]; 4] = [
            [self.m11.re, self.m11.im],
            [self.m12.re, self.m12.im],
            [self.m21.re, self.m21.im],
            [self.m22.re, self.m22.im],
        ];
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix2C {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = <Vec<[f64; 2]>>::deserialize(deserializer)?;
        if pairs.len() != 4 {
            return Err(D::Error::custom(format!(
                "expected 4 row-major [re,im] pairs, got {}",
                pairs.len()
            )));
        }
        let c = |p: [f64; 2]| Complex64::new(p[0], p[1]);
        Ok(Matrix2C::new(c(pairs[0]), c(pairs[1]), c(pairs[2]), c(pairs[3])))
    }
}

impl std::fmt::Display for Matrix2C {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[[{:.6}{:+.6}i, {:.6}{:+.6}i], [{:.6}{:+.6}i, {:.6}{:+.6}i]]",
            self.m11.re,
            self.m11.im,
            self.m12.re,
            self.m12.im,
            self.m21.re,
            self.m21.im,
            self.m22.re,
            self.m22.im
        )
    }
}

/// Causal type of an event. The time orientation (sign of x₀) is recorded
/// for timelike and null events; the origin counts as future-directed null.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum CausalClass {
    Timelike { future: bool },
    Null { future: bool },
    Spacelike,
}

/// The Hermitian matrix of an event. Exact: diagonal imaginary parts are
/// constructed as zero, off-diagonal entries are exact conjugates.
pub fn event_to_matrix(e: &MinkowskiEvent) -> Matrix2C {
    Matrix2C::new(
        Complex64::new(e.x0 + e.x1, 0.0),
        Complex64::new(e.x2, -e.x3),
        Complex64::new(e.x2, e.x3),
        Complex64::new(e.x0 - e.x1, 0.0),
    )
}

/// Inverse of [`event_to_matrix`]: errors when M is not Hermitian within
/// `tol.hermitian` (absolute, Frobenius), then reads coordinates off the
/// symmetrized ½(M + M*).
pub fn matrix_to_event(m: &Matrix2C, tol: &Tolerances) -> Result<MinkowskiEvent, SpacetimeError> {
    let defect = m.hermitian_defect();
    if !(defect <= tol.hermitian) {
        return Err(SpacetimeError::NotHermitian { defect });
    }
    Ok(event_of_hermitian_part(m))
}

/// Coordinates of ½(M + M*) without a Hermiticity check. Internal building
/// block for callers that have already established symmetry.
pub(crate) fn event_of_hermitian_part(m: &Matrix2C) -> MinkowskiEvent {
    let h = m.hermitian_part();
    MinkowskiEvent::new(
        0.5 * (h.m11.re + h.m22.re),
        0.5 * (h.m11.re - h.m22.re),
        h.m12.re,
        -h.m12.im,
    )
}

/// q(x) = x₀² − (x₁² + x₂² + x₃²); equals det(event_to_matrix(x)).
pub fn pseudometric(e: &MinkowskiEvent) -> f64 {
    e.x0 * e.x0 - (e.x1 * e.x1 + e.x2 * e.x2 + e.x3 * e.x3)
}

/// Causal classification with the scale-aware default threshold
/// 1e−12·(1 + ‖e‖²).
pub fn causal_class(e: &MinkowskiEvent) -> CausalClass {
    causal_class_with(e, 1e-12 * (1.0 + e.norm_sq()))
}

/// Causal classification with an explicit absolute threshold on q.
pub fn causal_class_with(e: &MinkowskiEvent, tol: f64) -> CausalClass {
    let q = pseudometric(e);
    let future = e.x0 >= 0.0;
    if q > tol {
        CausalClass::Timelike { future }
    } else if q < -tol {
        CausalClass::Spacelike
    } else {
        CausalClass::Null { future }
    }
}
