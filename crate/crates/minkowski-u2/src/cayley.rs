//! The Cayley transform σ and the stratification of U(2).
//!
//! σ(M) = (M − i𝟏)(M + i𝟏)⁻¹ maps Hermitian matrices to unitaries without
//! eigenvalue 1 (σ acts as λ ↦ (λ − i)/(λ + i) on the real spectrum, whose
//! image omits 1). Its inverse is σ⁻¹(U) = i(𝟏 + U)(𝟏 − U)⁻¹. This exhibits
//! U(2) as a compactification of Minkowski space; the complement of the image
//! is the locus where 1 is an eigenvalue, detected by the identity
//!
//!   det(U − 𝟏) = 1 − Tr U + det U,
//!
//! so eigenvalue-1 membership is equivalent to Tr U = 1 + det U. The boundary
//! splits further by the second eigenvalue (which is det U once 1 is an
//! eigenvalue): a `Bubble` point has spectrum {+1, −1}, anything else with
//! eigenvalue 1 lies on the light cone at infinity.
//!
//! Every U ∈ U(2) factors uniquely as
//!
//! ```text
//!       ⎡  u      v  ⎤
//!   U = ⎢            ⎥ ,   |u|² + |v|² = 1,  λ = det U = e^{iα},
//!       ⎣ −λv̄    λū ⎦
//! ```
//!
//! which [`decompose_unitary`] computes, with α ∈ (−π, π] (the tie at ±π
//! resolves to +π).

use num_complex::Complex64;
use thiserror::Error;

use crate::spacetime::{event_of_hermitian_part, Matrix2C, MinkowskiEvent};
use crate::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CayleyError {
    #[error("matrix is not Hermitian: defect {defect:e}")]
    NotHermitian { defect: f64 },
    #[error("matrix is not unitary: defect {defect:e}")]
    NotUnitary { defect: f64 },
    /// 1 is an eigenvalue within tolerance, so 𝟏 − U is not safely invertible.
    #[error("unitary lies on the boundary stratum: |det(U - 1)| = {residual:e}")]
    OnBoundary { residual: f64 },
}

/// Which stratum of U(2) a unitary belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StratumLabel {
    /// No eigenvalue 1: the σ-image of an event, carried along.
    Interior(MinkowskiEvent),
    /// Eigenvalue 1 present, other eigenvalue ≠ −1. Contains 𝟏 itself.
    LightConeAtInfinity,
    /// Spectrum {+1, −1}.
    Bubble,
}

// JSON shape: {"stratum": "interior" | "lightcone_infinity" | "bubble"},
// with an "event": [x0,x1,x2,x3] field present only on the interior.
impl serde::Serialize for StratumLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            StratumLabel::Interior(e) => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("stratum", "interior")?;
                map.serialize_entry("event", &e.coords())?;
                map.end()
            }
            StratumLabel::LightConeAtInfinity => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("stratum", "lightcone_infinity")?;
                map.end()
            }
            StratumLabel::Bubble => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("stratum", "bubble")?;
                map.end()
            }
        }
    }
}

/// The (u, v, λ) factorization of a unitary, with α = arg λ ∈ (−π, π].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryDecomposition {
    pub u: Complex64,
    pub v: Complex64,
    pub lambda: Complex64,
    pub alpha: f64,
}

impl UnitaryDecomposition {
    /// Rebuild [[u, v], [−λv̄, λū]].
    pub fn reassemble(&self) -> Matrix2C {
        Matrix2C::new(
            self.u,
            self.v,
            -self.lambda * self.v.conj(),
            self.lambda * self.u.conj(),
        )
    }
}

/// σ(M) = (M − i𝟏)(M + i𝟏)⁻¹ for Hermitian M.
///
/// M + i𝟏 is always invertible for Hermitian M (its determinant is
/// (μ₁ + i)(μ₂ + i) with real μ's, of modulus ≥ 1). The two factors commute,
/// being rational functions of M.
pub fn cayley(m: &Matrix2C, tol: &Tolerances) -> Result<Matrix2C, CayleyError> {
    let defect = m.hermitian_defect();
    if !(defect <= tol.hermitian) {
        return Err(CayleyError::NotHermitian { defect });
    }
    let i = Complex64::new(0.0, 1.0);
    let plus = *m + Matrix2C::identity().scale(i);
    let minus = *m - Matrix2C::identity().scale(i);
    let inv = plus
        .inverse()
        .expect("M + i1 is invertible for Hermitian M");
    Ok(minus * inv)
}

/// σ⁻¹(U) = i(𝟏 + U)(𝟏 − U)⁻¹ for unitary U without eigenvalue 1.
pub fn cayley_inverse(u: &Matrix2C, tol: &Tolerances) -> Result<Matrix2C, CayleyError> {
    let defect = u.unitary_defect();
    if !(defect <= tol.unitary) {
        return Err(CayleyError::NotUnitary { defect });
    }
    let residual = eigenvalue_one_residual(u);
    if residual <= tol.eig {
        return Err(CayleyError::OnBoundary { residual });
    }
    let one = Matrix2C::identity();
    let inv = (one - *u)
        .inverse()
        .expect("1 - U invertible away from the boundary");
    Ok(((one + *u) * inv).scale(Complex64::new(0.0, 1.0)))
}

/// |det(U − 𝟏)|: zero exactly when 1 is an eigenvalue.
pub fn eigenvalue_one_residual(u: &Matrix2C) -> f64 {
    (*u - Matrix2C::identity()).det().norm()
}

/// |Tr U − 1 − det U|. Agrees with [`eigenvalue_one_residual`] by the
/// characteristic polynomial evaluated at 1; the two are computed along
/// different code paths so tests can cross-check them.
pub fn trace_det_identity_residual(u: &Matrix2C) -> f64 {
    (u.trace() - Complex64::new(1.0, 0.0) - u.det()).norm()
}

/// Assign a stratum: `Interior` (carrying σ⁻¹(U) as an event) when 1 is not
/// an eigenvalue within `tol.eig`; otherwise `Bubble` when the other
/// eigenvalue (= det U) is −1 within `tol.eig`, else `LightConeAtInfinity`.
pub fn classify_stratum(u: &Matrix2C, tol: &Tolerances) -> Result<StratumLabel, CayleyError> {
    let defect = u.unitary_defect();
    if !(defect <= tol.unitary) {
        return Err(CayleyError::NotUnitary { defect });
    }
    let residual = eigenvalue_one_residual(u);
    if residual > tol.eig {
        let m = cayley_inverse(u, tol)?;
        let event = event_of_hermitian_part(&m);
        return Ok(StratumLabel::Interior(event));
    }
    // Eigenvalue 1 present; the other eigenvalue is det U.
    let other = u.det();
    if (other + Complex64::new(1.0, 0.0)).norm() <= tol.eig {
        Ok(StratumLabel::Bubble)
    } else {
        Ok(StratumLabel::LightConeAtInfinity)
    }
}

/// Unique factorization U = [[u, v], [−λv̄, λū]] with λ = det U.
///
/// Reads u, v off the first row and λ off the determinant; for an exactly
/// unitary input the reassembled matrix is the input. α = arg λ with the
/// branch (−π, π], the tie at −π normalized to +π.
pub fn decompose_unitary(
    m: &Matrix2C,
    tol: &Tolerances,
) -> Result<UnitaryDecomposition, CayleyError> {
    let defect = m.unitary_defect();
    if !(defect <= tol.unitary) {
        return Err(CayleyError::NotUnitary { defect });
    }
    let lambda = m.det();
    let mut alpha = lambda.im.atan2(lambda.re);
    if alpha == -std::f64::consts::PI {
        alpha = std::f64::consts::PI;
    }
    Ok(UnitaryDecomposition {
        u: m.m11,
        v: m.m12,
        lambda,
        alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use crate::spacetime::{event_to_matrix, matrix_to_event};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    const TOL: &Tolerances = &Tolerances::DEFAULT;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sigma_of_zero_is_minus_identity() {
        let s = cayley(&Matrix2C::zero(), TOL).unwrap();
        assert!(s.distance(&(-Matrix2C::identity())) < 1e-15);
    }

    #[test]
    fn sigma_of_identity_is_minus_i_identity() {
        let s = cayley(&Matrix2C::identity(), TOL).unwrap();
        let expected = Matrix2C::diag(c(0.0, -1.0), c(0.0, -1.0));
        assert!(s.distance(&expected) < 1e-15);
    }

    #[test]
    fn sigma_of_pauli_x_is_minus_i_pauli_x() {
        // M² = 1 gives (M + i)⁻¹ = (M − i)/2, so σ(M) = (M − i)²/2 = −iM.
        let m = Matrix2C::from_reals(0.0, 1.0, 1.0, 0.0);
        let s = cayley(&m, TOL).unwrap();
        let expected = Matrix2C::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, -1.0), c(0.0, 0.0));
        assert!(s.distance(&expected) < 1e-15);
        // and back
        let back = cayley_inverse(&expected, TOL).unwrap();
        assert!(back.distance(&m) < 1e-15);
    }

    #[test]
    fn cayley_rejects_non_hermitian() {
        let m = Matrix2C::new(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert!(matches!(
            cayley(&m, TOL),
            Err(CayleyError::NotHermitian { .. })
        ));
    }

    #[test]
    fn cayley_inverse_rejects_boundary_and_non_unitary() {
        assert!(matches!(
            cayley_inverse(&Matrix2C::identity(), TOL),
            Err(CayleyError::OnBoundary { .. })
        ));
        let not_u = Matrix2C::from_reals(2.0, 0.0, 0.0, 2.0);
        assert!(matches!(
            cayley_inverse(&not_u, TOL),
            Err(CayleyError::NotUnitary { .. })
        ));
    }

    #[test]
    fn identity_classifies_as_light_cone() {
        assert_eq!(
            classify_stratum(&Matrix2C::identity(), TOL).unwrap(),
            StratumLabel::LightConeAtInfinity
        );
    }

    #[test]
    fn epsilon_classifies_as_bubble() {
        let eps = Matrix2C::from_reals(1.0, 0.0, 0.0, -1.0);
        assert_eq!(classify_stratum(&eps, TOL).unwrap(), StratumLabel::Bubble);
    }

    #[test]
    fn stratum_label_json_shapes() {
        let interior = StratumLabel::Interior(MinkowskiEvent::new(1.0, 0.0, 0.0, 2.0));
        assert_eq!(
            serde_json::to_string(&interior).unwrap(),
            r#"{"stratum":"interior","event":[1.0,0.0,0.0,2.0]}"#
        );
        assert_eq!(
            serde_json::to_string(&StratumLabel::LightConeAtInfinity).unwrap(),
            r#"{"stratum":"lightcone_infinity"}"#
        );
        assert_eq!(
            serde_json::to_string(&StratumLabel::Bubble).unwrap(),
            r#"{"stratum":"bubble"}"#
        );
    }

    #[test]
    fn minus_identity_classifies_as_interior_origin() {
        let m = -Matrix2C::identity();
        match classify_stratum(&m, TOL).unwrap() {
            StratumLabel::Interior(e) => {
                assert!(e.norm_sq() < 1e-24);
            }
            other => panic!("expected Interior, got {other:?}"),
        }
    }

    #[test]
    fn decompose_epsilon() {
        let eps = Matrix2C::from_reals(1.0, 0.0, 0.0, -1.0);
        let d = decompose_unitary(&eps, TOL).unwrap();
        assert_eq!(d.u, c(1.0, 0.0));
        assert_eq!(d.v, c(0.0, 0.0));
        assert!((d.lambda - c(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(d.alpha, PI); // tie at ±π resolves to +π
    }

    #[test]
    fn decompose_sigma_of_identity() {
        let s = cayley(&Matrix2C::identity(), TOL).unwrap();
        let d = decompose_unitary(&s, TOL).unwrap();
        assert!((d.u - c(0.0, -1.0)).norm() < 1e-15);
        assert!(d.v.norm() < 1e-15);
        assert!((d.lambda - c(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(d.alpha, PI);
    }

    #[test]
    fn trace_det_residual_of_minus_identity_is_four() {
        let m = -Matrix2C::identity();
        assert!((trace_det_identity_residual(&m) - 4.0).abs() < 1e-15);
        assert!((eigenvalue_one_residual(&m) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn residual_routes_agree_on_random_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let u = sample::haar_like_unitary(&mut rng);
            let a = eigenvalue_one_residual(&u);
            let b = trace_det_identity_residual(&u);
            assert!((a - b).abs() <= 1e-12 * (1.0 + a));
        }
    }

    #[test]
    fn interior_images_stay_off_the_boundary() {
        // |det(σ(M) − 1)| = 4 / |det(M + i1)| is bounded below in ‖M‖.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let m = sample::random_hermitian(&mut rng, 10.0);
            let s = cayley(&m, TOL).unwrap();
            assert!(eigenvalue_one_residual(&s) > 1e-12);
            assert!(matches!(
                classify_stratum(&s, TOL).unwrap(),
                StratumLabel::Interior(_)
            ));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn round_trip_and_unitarity(
            x0 in -10.0..10.0f64, x1 in -10.0..10.0f64,
            x2 in -10.0..10.0f64, x3 in -10.0..10.0f64,
        ) {
            let e = MinkowskiEvent::new(x0, x1, x2, x3);
            let m = event_to_matrix(&e);
            let s = cayley(&m, TOL).unwrap();
            prop_assert!(s.unitary_defect() <= 1e-12);
            let back = cayley_inverse(&s, TOL).unwrap();
            prop_assert!(back.distance(&m) <= 1e-9 * (1.0 + m.frobenius_norm()));
            let e2 = matrix_to_event(&back, &Tolerances::uniform(1e-6)).unwrap();
            prop_assert!((e2.x0 - e.x0).abs() <= 1e-7);
            prop_assert!((e2.x1 - e.x1).abs() <= 1e-7);
            prop_assert!((e2.x2 - e.x2).abs() <= 1e-7);
            prop_assert!((e2.x3 - e.x3).abs() <= 1e-7);
        }

        #[test]
        fn decomposition_reassembles(
            x0 in -5.0..5.0f64, x1 in -5.0..5.0f64,
            x2 in -5.0..5.0f64, x3 in -5.0..5.0f64,
        ) {
            let m = event_to_matrix(&MinkowskiEvent::new(x0, x1, x2, x3));
            let s = cayley(&m, TOL).unwrap();
            let d = decompose_unitary(&s, TOL).unwrap();
            prop_assert!((d.u.norm_sqr() + d.v.norm_sqr() - 1.0).abs() <= 1e-12);
            prop_assert!((d.lambda.norm() - 1.0).abs() <= 1e-12);
            prop_assert!(d.alpha > -PI && d.alpha <= PI);
            prop_assert!(d.reassemble().distance(&s) <= 1e-11);
        }
    }
}
