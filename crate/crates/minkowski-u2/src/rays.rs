//! Light rays and their limits on the boundary of the compactification.
//!
//! A light ray X(t) = x + t·(1, v) with unit spatial direction v has a
//! well-defined limit lim σ(M(X(t))) as t → ∞, a boundary unitary reached at
//! O(1/t). Writing ω = x⃗·v⃗ − x₀ (the only ray invariant that survives),
//! z = v₁ + iω, ν = v₂ + iv₃, the limit is
//!
//! ```text
//!           1     ⎛ z    ν̄ ⎞
//!   L  =  ────── ·⎜         ⎟ ,    det L = (ω + i)/(ω − i).
//!         1 + iω  ⎝ ν   −z̄ ⎠
//! ```
//!
//! L always carries eigenvalue 1 (Tr L = 1 + det L identically): the ray
//! escapes onto the light cone at infinity at x₀ = 1/(2ω), at the antipode
//! s(z) = −v on the celestial sphere, falling onto the bubble when ω = 0.
//!
//! Fixing v and sweeping the base point sweeps ω over ℝ; in the coordinates
//! (u, v) of the first row of the limit this traces the end line
//! v = c·(1 − u) with c = (v₂ − iv₃)/(1 − v₁), whose admissible u-values form
//! the circle |u − p₀| = R, p₀ = |c|²/(1 + |c|²), R = 1/(1 + |c|²).

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::spacetime::{event_to_matrix, Matrix2C, MinkowskiEvent};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RayError {
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("direction vector has norm {norm}, expected 1")]
    NonUnitDirection { norm: f64 },
    /// The end line degenerates to the vertical u = 1 as v₁ → 1 with
    /// nonzero transverse components; no finite slope coefficient exists.
    #[error("end line is degenerate for directions with v1 = 1")]
    DegenerateDirection,
}

/// An affinely parametrized light ray t ↦ x + t·(1, v), ‖v‖ = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LightRay {
    base: MinkowskiEvent,
    direction: [f64; 3],
}

impl LightRay {
    /// Wrap a base event and an already-unit direction; the norm must be
    /// within `tol` of 1.
    pub fn new(base: MinkowskiEvent, direction: [f64; 3], tol: f64) -> Result<Self, RayError> {
        let norm = norm3(&direction);
        if (norm - 1.0).abs() > tol {
            return Err(RayError::NonUnitDirection { norm });
        }
        Ok(LightRay { base, direction })
    }

    /// Normalize an arbitrary nonzero direction.
    pub fn from_direction(base: MinkowskiEvent, direction: [f64; 3]) -> Result<Self, RayError> {
        let norm = norm3(&direction);
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(RayError::ZeroDirection);
        }
        Ok(LightRay {
            base,
            direction: [
                direction[0] / norm,
                direction[1] / norm,
                direction[2] / norm,
            ],
        })
    }

    pub fn base(&self) -> &MinkowskiEvent {
        &self.base
    }

    pub fn direction(&self) -> [f64; 3] {
        self.direction
    }

    /// The event x + t·(1, v).
    pub fn event_at(&self, t: f64) -> MinkowskiEvent {
        MinkowskiEvent::new(
            self.base.x0 + t,
            self.base.x1 + t * self.direction[0],
            self.base.x2 + t * self.direction[1],
            self.base.x3 + t * self.direction[2],
        )
    }

    /// ω = x⃗·v⃗ − x₀: shifting the base along the ray leaves it unchanged,
    /// and it alone determines where on the boundary the ray ends.
    pub fn omega(&self) -> f64 {
        self.base.x1 * self.direction[0]
            + self.base.x2 * self.direction[1]
            + self.base.x3 * self.direction[2]
            - self.base.x0
    }
}

/// The boundary unitary lim_{t→∞} σ(M(x + t(1, v))), in closed form.
pub fn ray_limit(ray: &LightRay) -> Matrix2C {
    let om = ray.omega();
    let v = ray.direction;
    let z = Complex64::new(v[0], om);
    let nu = Complex64::new(v[1], v[2]);
    let d = Complex64::new(1.0, om);
    Matrix2C::new(z / d, nu.conj() / d, nu / d, -z.conj() / d)
}

/// The end line of a fixed direction: in first-row coordinates the limits
/// satisfy v = c·(1 − u), with the admissible u on a circle about the real
/// axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndLine {
    c: Complex64,
    center: f64,
    radius: f64,
}

impl EndLine {
    /// The slope coefficient c = (v₂ − iv₃)/(1 − v₁).
    pub fn coefficient(&self) -> Complex64 {
        self.c
    }

    /// Center p₀ = |c|²/(1 + |c|²) of the admissible u-circle (real).
    pub fn center(&self) -> f64 {
        self.center
    }

    /// Radius R = 1/(1 + |c|²) of the admissible u-circle.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// The second coordinate c·(1 − u) over a given u.
    pub fn v_of_u(&self, u: Complex64) -> Complex64 {
        self.c * (Complex64::new(1.0, 0.0) - u)
    }
}

impl Serialize for EndLine {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("EndLine", 3)?;
        s.serialize_field("c", &[self.c.re, self.c.im])?;
        s.serialize_field("center", &self.center)?;
        s.serialize_field("radius", &self.radius)?;
        s.end()
    }
}

/// End line of a unit direction v. Directions with v₁ within `tol` of 1 and
/// a genuinely nonzero transverse part have no finite slope
/// ([`RayError::DegenerateDirection`]); the exact poles v = (±1, 0, 0) give
/// c = 0 (second coordinate identically zero).
pub fn end_line(direction: &[f64; 3], tol: f64) -> Result<EndLine, RayError> {
    let norm = norm3(direction);
    if (norm - 1.0).abs() > tol {
        return Err(RayError::NonUnitDirection { norm });
    }
    let nu_conj = Complex64::new(direction[1], -direction[2]);
    let c = if nu_conj.norm() == 0.0 {
        Complex64::new(0.0, 0.0)
    } else if (1.0 - direction[0]).abs() <= tol {
        return Err(RayError::DegenerateDirection);
    } else {
        nu_conj / (1.0 - direction[0])
    };
    let k = c.norm_sqr();
    Ok(EndLine {
        c,
        center: k / (1.0 + k),
        radius: 1.0 / (1.0 + k),
    })
}

/// The (up to) two admissible u with the given real part: u = p ± iq with
/// q = √(R² − (p − p₀)²). `None` when the vertical line misses the circle.
pub fn end_line_admissible(line: &EndLine, re_u: f64) -> Option<(Complex64, Complex64)> {
    let disc = line.radius * line.radius - (re_u - line.center).powi(2);
    if disc < 0.0 {
        return None;
    }
    let q = disc.sqrt();
    Some((Complex64::new(re_u, q), Complex64::new(re_u, -q)))
}

fn norm3(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// σ of the ray event at parameter t; the quantity whose t → ∞ limit is
/// [`ray_limit`]. Always defined for finite t since M(X(t)) is Hermitian.
pub fn ray_unitary_at(ray: &LightRay, t: f64) -> Matrix2C {
    let m = event_to_matrix(&ray.event_at(t));
    crate::cayley::cayley(&m, &crate::Tolerances::DEFAULT)
        .expect("ray events are Hermitian by construction")
}
