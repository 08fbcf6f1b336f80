//! Smith normal form with tracked unimodular transforms, and the kernel,
//! cokernel, and image-membership computations built on it.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::group::{FgAbelianGroup, GroupHom};
use super::matrix::{AlgebraError, IntegerMatrix};

/// A = U·D·V with U, V unimodular and D diagonal, d₁ | d₂ | … ≥ 0.
/// U⁻¹ and V⁻¹ are maintained alongside during the reduction, so solving
/// and membership tests need no inversions after the fact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// The five matrices reduced in lockstep: every elementary operation on D is
/// compensated on U, U⁻¹, V, V⁻¹ so that A = U·D·V holds at every step.
struct Workspace {
    d: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl Workspace {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u_inv.swap_rows(a, b);
        self.u.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v_inv.swap_cols(a, b);
        self.v.swap_rows(a, b);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u_inv.negate_row(i);
        self.u.negate_col(i);
    }

    /// row(to) += k·row(from); U picks up the inverse column operation.
    fn add_row(&mut self, to: usize, from: usize, k: &BigInt) {
        self.d.add_row_multiple(to, from, k);
        self.u_inv.add_row_multiple(to, from, k);
        let neg = -k;
        self.u.add_col_multiple(from, to, &neg);
    }

    /// col(to) += k·col(from); V picks up the inverse row operation.
    fn add_col(&mut self, to: usize, from: usize, k: &BigInt) {
        self.d.add_col_multiple(to, from, k);
        self.v_inv.add_col_multiple(to, from, k);
        let neg = -k;
        self.v.add_row_multiple(from, to, &neg);
    }
}

/// Position of the smallest nonzero |entry| in the trailing submatrix
/// starting at (t, t); ties resolved row-major. Deterministic by design.
fn smallest_nonzero(d: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let e = d.get(i, j);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            match &best {
                Some((_, _, m)) if *m <= a => {}
                _ => best = Some((i, j, a)),
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Reduce A to Smith normal form by elementary row/column operations,
/// returning D together with the unimodular change-of-basis matrices and
/// their inverses. Always succeeds; empty and zero matrices are fine.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let rows = a.rows();
    let cols = a.cols();
    let mut w = Workspace {
        d: a.clone(),
        u: IntegerMatrix::identity(rows),
        u_inv: IntegerMatrix::identity(rows),
        v: IntegerMatrix::identity(cols),
        v_inv: IntegerMatrix::identity(cols),
    };
    'diagonal: for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&w.d, t) else {
                break 'diagonal; // trailing submatrix is zero
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            // Clear column t and row t by division; truncated quotients leave
            // remainders strictly smaller than the pivot, so re-pivoting
            // strictly shrinks the minimum and the loop terminates.
            let mut clean = true;
            for i in t + 1..rows {
                if w.d.get(i, t).is_zero() {
                    continue;
                }
                let q = -(w.d.get(i, t) / w.d.get(t, t));
                if !q.is_zero() {
                    w.add_row(i, t, &q);
                }
                if !w.d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if w.d.get(t, j).is_zero() {
                    continue;
                }
                let q = -(w.d.get(t, j) / w.d.get(t, t));
                if !q.is_zero() {
                    w.add_col(j, t, &q);
                }
                if !w.d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Pivot now alone in its row and column. Pull in any row whose
            // entries the pivot does not divide and start over; the gcd can
            // only shrink, so this also terminates.
            let mut offender = None;
            'search: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(w.d.get(i, j) % w.d.get(t, t)).is_zero() {
                        offender = Some(i);
                        break 'search;
                    }
                }
            }
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.d.get(t, t).is_negative() {
            w.negate_row(t);
        }
    }
    SmithDecomposition {
        u: w.u,
        d: w.d,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
    }
}

/// Whether the column vector x lies in the column span of the decomposed
/// matrix over ℤ: with c = U⁻¹x, solvability of D·w = c needs dᵢ | cᵢ on the
/// diagonal and cᵢ = 0 beyond it.
pub fn image_contains(
    dec: &SmithDecomposition,
    x: &IntegerMatrix,
) -> Result<bool, AlgebraError> {
    let c = dec.u_inv.mul(x)?;
    if c.cols() != 1 {
        return Err(AlgebraError::DimensionMismatch {
            left_rows: dec.u_inv.rows(),
            left_cols: dec.u_inv.cols(),
            right_rows: x.rows(),
            right_cols: x.cols(),
        });
    }
    let diag_len = dec.d.rows().min(dec.d.cols());
    for i in 0..dec.d.rows() {
        let ci = c.get(i, 0);
        if i < diag_len && !dec.d.get(i, i).is_zero() {
            if !(ci % dec.d.get(i, i)).is_zero() {
                return Ok(false);
            }
        } else if !ci.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The kernel of an integer matrix: a free group together with an explicit
/// basis (columns) satisfying A·b = 0 exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    pub group: FgAbelianGroup,
    pub basis: IntegerMatrix,
}

pub fn kernel(a: &IntegerMatrix) -> KernelBasis {
    let dec = smith_normal_form(a);
    let r = dec.rank();
    let cols = a.cols();
    // ker A = V⁻¹·ker D, and ker D is spanned by the basis vectors past the
    // nonzero invariant factors.
    let mut basis = IntegerMatrix::zeros(cols, cols - r);
    for (out_j, j) in (r..cols).enumerate() {
        for i in 0..cols {
            basis.set(i, out_j, dec.v_inv.get(i, j).clone());
        }
    }
    KernelBasis {
        group: FgAbelianGroup::free(cols - r),
        basis,
    }
}

/// coker A = ℤ^rows / col-span(A), in invariant-factor form: rank
/// rows − #{nonzero dᵢ}, torsion the dᵢ > 1.
pub fn cokernel(a: &IntegerMatrix) -> FgAbelianGroup {
    let dec = smith_normal_form(a);
    let factors = dec.invariant_factors();
    let rank = a.rows() - factors.len();
    let torsion: Vec<BigInt> = factors.into_iter().filter(|d| !d.is_one()).collect();
    FgAbelianGroup::new(rank, torsion).expect("invariant factors form a chain")
}

/// The quotient map ℤ^rows → coker A as an explicit homomorphism: the rows
/// of U⁻¹ belonging to free generators (beyond the nonzero factors) and to
/// torsion generators (factors > 1), in that order.
pub fn cokernel_projection(a: &IntegerMatrix) -> GroupHom {
    let dec = smith_normal_form(a);
    let factors = dec.invariant_factors();
    let r = factors.len();
    let rows = a.rows();
    let torsion_count = factors.iter().filter(|d| !d.is_one()).count();
    let codomain = cokernel(a);
    let mut matrix = IntegerMatrix::zeros(codomain.num_generators(), rows);
    // free generators: diagonal positions r..rows of U⁻¹
    for (out_i, i) in (r..rows).enumerate() {
        for j in 0..rows {
            matrix.set(out_i, j, dec.u_inv.get(i, j).clone());
        }
    }
    // torsion generators: the last `torsion_count` nonzero factor positions
    for (out_i, i) in ((r - torsion_count)..r).enumerate() {
        for j in 0..rows {
            matrix.set(rows - r + out_i, j, dec.u_inv.get(i, j).clone());
        }
    }
    GroupHom::new(FgAbelianGroup::free(rows), codomain, matrix)
        .expect("projection is well-defined on a free domain")
}
