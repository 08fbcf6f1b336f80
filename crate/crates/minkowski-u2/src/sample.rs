//! Random generators for events, transforms, and unitaries.
//!
//! Everything is generic over [`rand::Rng`], so callers control determinism
//! by seeding their own generator (the test suites use `ChaCha8Rng`).

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{StandardNormal, UnitSphere};

use crate::actions::SpinTransform;
use crate::boundary::ExtendedComplex;
use crate::spacetime::{event_to_matrix, Matrix2C, MinkowskiEvent};

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// An event with independent Gaussian coordinates of standard deviation
/// `scale`.
pub fn random_event<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> MinkowskiEvent {
    MinkowskiEvent::new(
        scale * normal(rng),
        scale * normal(rng),
        scale * normal(rng),
        scale * normal(rng),
    )
}

/// A random Hermitian matrix: the matrix of [`random_event`].
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Matrix2C {
    event_to_matrix(&random_event(rng, scale))
}

/// A uniformly random unit vector in ℝ³.
pub fn random_unit_direction<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    rng.sample(UnitSphere)
}

/// A uniformly random point of the Riemann sphere, as the stereographic
/// preimage z = (n₂ − in₃)/(1 − n₁) of a uniform unit vector n.
pub fn random_sphere_point<R: Rng + ?Sized>(rng: &mut R) -> ExtendedComplex {
    let n = random_unit_direction(rng);
    if n[0] == 1.0 {
        ExtendedComplex::Infinity
    } else {
        ExtendedComplex::Finite(Complex64::new(n[1], -n[2]) / (1.0 - n[0]))
    }
}

/// Haar-distributed element of SU(2), by normalizing a Gaussian quaternion
/// (a, b, c, d) to the unit sphere S³ and forming
/// [[a + ib, c + id], [−c + id, a − ib]].
pub fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> SpinTransform {
    loop {
        let (a, b, c, d) = (normal(rng), normal(rng), normal(rng), normal(rng));
        let r = (a * a + b * b + c * c + d * d).sqrt();
        if r < 1e-6 {
            continue;
        }
        let (a, b, c, d) = (a / r, b / r, c / r, d / r);
        let m = Matrix2C::new(
            Complex64::new(a, b),
            Complex64::new(c, d),
            Complex64::new(-c, d),
            Complex64::new(a, -b),
        );
        return SpinTransform::new(m, 1e-12).expect("unit quaternion has det 1");
    }
}

/// A random element of SL(2, ℂ): Gaussian complex entries rescaled by the
/// principal square root of the determinant.
pub fn random_sl2c<R: Rng + ?Sized>(rng: &mut R) -> SpinTransform {
    loop {
        let m = Matrix2C::new(
            Complex64::new(normal(rng), normal(rng)),
            Complex64::new(normal(rng), normal(rng)),
            Complex64::new(normal(rng), normal(rng)),
            Complex64::new(normal(rng), normal(rng)),
        );
        let det = m.det();
        if det.norm() < 1e-3 {
            continue;
        }
        let scaled = m.scale(Complex64::new(1.0, 0.0) / det.sqrt());
        return SpinTransform::new(scaled, 1e-9).expect("rescaled matrix has det 1");
    }
}

/// A Haar-distributed element of U(2), assembled as
/// [[u, v], [−λv̄, λū]] from a uniform (u, v) on S³ ⊂ ℂ² and an independent
/// uniform phase λ.
pub fn haar_like_unitary<R: Rng + ?Sized>(rng: &mut R) -> Matrix2C {
    let s = random_su2(rng);
    let (u, v) = (s.matrix().m11, s.matrix().m12);
    let alpha = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    let lambda = Complex64::new(0.0, alpha).exp();
    Matrix2C::new(u, v, -lambda * v.conj(), lambda * u.conj())
}
