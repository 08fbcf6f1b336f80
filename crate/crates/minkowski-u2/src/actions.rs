//! SL(2, ℂ) acting on events and SU(2) acting on the compactification.
//!
//! T ∈ SL(2, ℂ) acts on Hermitian matrices by M ↦ TMT*, which preserves
//! det and hence the pseudometric: the induced real-linear map on events is
//! a proper orthochronous Lorentz transformation Λ(T), with Λ(T) = Λ(−T).
//! For T ∈ SU(2) the action commutes with the Cayley transform and so
//! extends to unitaries, U ↦ TUT*, preserving each boundary stratum.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spacetime::{event_of_hermitian_part, event_to_matrix, Matrix2C, MinkowskiEvent};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ActionError {
    #[error("matrix is not special linear: |det - 1| = {defect:e}")]
    NotSpecialLinear { defect: f64 },
    #[error("matrix is not special unitary: defect {defect:e}")]
    NotSpecialUnitary { defect: f64 },
}

/// An element of SL(2, ℂ): a 2×2 complex matrix with det = 1 (validated
/// within a tolerance at construction).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinTransform {
    t: Matrix2C,
}

impl SpinTransform {
    pub fn new(t: Matrix2C, tol: f64) -> Result<Self, ActionError> {
        let defect = (t.det() - num_complex::Complex64::new(1.0, 0.0)).norm();
        if !(defect <= tol) {
            return Err(ActionError::NotSpecialLinear { defect });
        }
        Ok(SpinTransform { t })
    }

    pub fn matrix(&self) -> &Matrix2C {
        &self.t
    }

    /// Exact inverse: for det = 1 the adjugate [[d, −b], [−c, a]].
    pub fn inverse(&self) -> SpinTransform {
        SpinTransform {
            t: Matrix2C::new(self.t.m22, -self.t.m12, -self.t.m21, self.t.m11),
        }
    }

    /// M ↦ TMT*. Preserves Hermiticity and det.
    pub fn act(&self, m: &Matrix2C) -> Matrix2C {
        self.t * *m * self.t.adjoint()
    }

    /// The action read through event coordinates. The image of a Hermitian
    /// matrix is Hermitian up to rounding; the exact Hermitian part is taken.
    pub fn act_event(&self, e: &MinkowskiEvent) -> MinkowskiEvent {
        let img = self.act(&event_to_matrix(e)).hermitian_part();
        event_of_hermitian_part(&img)
    }

    /// Whether T is additionally unitary, so that U ↦ TUT* = TUT⁻¹ is
    /// defined on the whole compactification.
    pub fn is_special_unitary(&self, tol: f64) -> bool {
        self.t.unitary_defect() <= tol
    }
}

/// The 4×4 matrix of a Lorentz transformation in event coordinates
/// (x₀, x₁, x₂, x₃), row index = output coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LorentzMatrix {
    pub entries: [[f64; 4]; 4],
}

impl LorentzMatrix {
    pub fn identity() -> Self {
        let mut entries = [[0.0; 4]; 4];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        LorentzMatrix { entries }
    }

    pub fn apply(&self, e: &MinkowskiEvent) -> MinkowskiEvent {
        let x = e.coords();
        let mut y = [0.0; 4];
        for (i, row) in self.entries.iter().enumerate() {
            y[i] = row[0] * x[0] + row[1] * x[1] + row[2] * x[2] + row[3] * x[3];
        }
        MinkowskiEvent::new(y[0], y[1], y[2], y[3])
    }

    pub fn mul(&self, other: &LorentzMatrix) -> LorentzMatrix {
        let mut entries = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                entries[i][j] = (0..4).map(|k| self.entries[i][k] * other.entries[k][j]).sum();
            }
        }
        LorentzMatrix { entries }
    }

    /// Frobenius norm of ΛᵀηΛ − η with η = diag(1, −1, −1, −1); zero for an
    /// exact Lorentz transformation.
    pub fn eta_defect(&self) -> f64 {
        let eta = [1.0, -1.0, -1.0, -1.0];
        let mut sum = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let mut s = 0.0;
                for (k, ek) in eta.iter().enumerate() {
                    s += self.entries[k][i] * ek * self.entries[k][j];
                }
                let target = if i == j { eta[i] } else { 0.0 };
                sum += (s - target) * (s - target);
            }
        }
        sum.sqrt()
    }

    pub fn det(&self) -> f64 {
        let m = &self.entries;
        let mut det = 0.0;
        for j in 0..4 {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            det += sign * m[0][j] * minor3(m, 0, j);
        }
        det
    }

    /// Proper (det = 1) and orthochronous (Λ₀₀ ≥ 1), within `tol`.
    pub fn is_proper_orthochronous(&self, tol: f64) -> bool {
        self.eta_defect() <= tol
            && (self.det() - 1.0).abs() <= tol
            && self.entries[0][0] >= 1.0 - tol
    }
}

fn minor3(m: &[[f64; 4]; 4], skip_row: usize, skip_col: usize) -> f64 {
    let mut sub = [[0.0; 3]; 3];
    let mut r = 0;
    for i in 0..4 {
        if i == skip_row {
            continue;
        }
        let mut c = 0;
        for j in 0..4 {
            if j == skip_col {
                continue;
            }
            sub[r][c] = m[i][j];
            c += 1;
        }
        r += 1;
    }
    sub[0][0] * (sub[1][1] * sub[2][2] - sub[1][2] * sub[2][1])
        - sub[0][1] * (sub[1][0] * sub[2][2] - sub[1][2] * sub[2][0])
        + sub[0][2] * (sub[1][0] * sub[2][1] - sub[1][1] * sub[2][0])
}

/// The Lorentz matrix of T: column μ is the event image of the μ-th basis
/// event under M ↦ TMT*.
pub fn lorentz_matrix(t: &SpinTransform) -> LorentzMatrix {
    let basis = [
        MinkowskiEvent::new(1.0, 0.0, 0.0, 0.0),
        MinkowskiEvent::new(0.0, 1.0, 0.0, 0.0),
        MinkowskiEvent::new(0.0, 0.0, 1.0, 0.0),
        MinkowskiEvent::new(0.0, 0.0, 0.0, 1.0),
    ];
    let mut entries = [[0.0; 4]; 4];
    for (mu, e) in basis.iter().enumerate() {
        let img = t.act_event(e).coords();
        for nu in 0..4 {
            entries[nu][mu] = img[nu];
        }
    }
    LorentzMatrix { entries }
}

/// U ↦ TUT* for T ∈ SU(2) (so that unitarity and strata are preserved).
pub fn conjugate_unitary(
    t: &SpinTransform,
    u: &Matrix2C,
    tol: f64,
) -> Result<Matrix2C, ActionError> {
    let defect = t.matrix().unitary_defect();
    if !(defect <= tol) {
        return Err(ActionError::NotSpecialUnitary { defect });
    }
    Ok(t.act(u))
}
