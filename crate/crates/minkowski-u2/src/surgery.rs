//! Homology of closed oriented 3-manifolds presented by integral surgery
//! on a framed link.
//!
//! A framed link with n components carries a symmetric n×n linking matrix Q
//! (framings on the diagonal, pairwise linking numbers off it). For the
//! manifold M obtained by surgery along the link, Q is simultaneously a
//! presentation matrix for H₁(M) and, read as a map ℤⁿ → ℤⁿ, has H₂(M) as
//! its kernel:
//!
//! ```text
//! 0 → H₂(M) → ℤⁿ --Q--> ℤⁿ → H₁(M) → 0
//! ```
//!
//! Everything here is exact integer arithmetic; the groups come out in
//! invariant-factor form and the four-term resolution can be certified
//! exact position by position.

use serde::Serialize;
use thiserror::Error;

use crate::abelian::{
    cokernel_projection, is_exact_at, kernel, ExactnessCheck, FgAbelianGroup, GroupHom,
    IntegerMatrix,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("linking matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("linking matrix must be symmetric: entry ({i},{j}) differs from ({j},{i})")]
    NotSymmetric { i: usize, j: usize },
}

/// The linking matrix of a framed link, checked square and symmetric on
/// construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FramedLinkMatrix {
    matrix: IntegerMatrix,
}

impl FramedLinkMatrix {
    pub fn new(matrix: IntegerMatrix) -> Result<Self, SurgeryError> {
        if !matrix.is_square() {
            return Err(SurgeryError::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        for i in 0..matrix.rows() {
            for j in (i + 1)..matrix.cols() {
                if matrix.get(i, j) != matrix.get(j, i) {
                    return Err(SurgeryError::NotSymmetric { i, j });
                }
            }
        }
        Ok(FramedLinkMatrix { matrix })
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self, SurgeryError> {
        FramedLinkMatrix::new(IntegerMatrix::from_rows(rows))
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    /// Number of link components.
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// Disjoint union of two framed links: the block sum of their linking
    /// matrices (connected sum of the surgered manifolds).
    pub fn block_sum(&self, other: &FramedLinkMatrix) -> FramedLinkMatrix {
        FramedLinkMatrix {
            matrix: self.matrix.direct_sum(&other.matrix),
        }
    }
}

/// First and second homology of the surgered manifold, with an explicit
/// integral basis for H₂ inside ℤⁿ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgeryHomology {
    pub h1: FgAbelianGroup,
    pub h2: FgAbelianGroup,
    /// n × rank(H₂) matrix whose columns span ker Q.
    pub h2_basis: IntegerMatrix,
}

/// H₁ = coker Q and H₂ = ker Q. Poincaré duality forces the free rank of
/// H₁ to equal the rank of H₂, and symmetry of Q delivers exactly that
/// (row rank = column rank), so the equality is asserted.
pub fn surgery_homology(link: &FramedLinkMatrix) -> SurgeryHomology {
    let h1 = crate::abelian::cokernel(link.matrix());
    let ker = kernel(link.matrix());
    debug_assert_eq!(
        h1.rank(),
        ker.group.rank(),
        "free rank of coker Q must match rank of ker Q for symmetric Q"
    );
    SurgeryHomology {
        h1,
        h2: ker.group,
        h2_basis: ker.basis,
    }
}

/// The linking form reduced mod 2, entries in {0, 1}. For even entries on
/// the diagonal the form is even; the parity pattern controls the spin
/// structures of the surgered manifold.
pub fn mod2_form(link: &FramedLinkMatrix) -> IntegerMatrix {
    let n = link.size();
    let mut out = IntegerMatrix::zeros(n, n);
    let two = num_bigint::BigInt::from(2);
    for i in 0..n {
        for j in 0..n {
            let r = link.matrix.get(i, j) % &two;
            let r = if r < num_bigint::BigInt::from(0) { r + &two } else { r };
            out.set(i, j, r);
        }
    }
    out
}

/// Exactness verdicts for 0 → H₂ → ℤⁿ → ℤⁿ → H₁ → 0 at its four interior
/// positions, in left-to-right order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResolutionReport {
    pub checks: [ExactnessCheck; 4],
}

impl ResolutionReport {
    pub fn all_exact(&self) -> bool {
        self.checks.iter().all(ExactnessCheck::is_exact)
    }
}

/// Builds the resolution as explicit homomorphisms (kernel inclusion, Q
/// itself, cokernel projection, zero maps capping both ends) and checks
/// exactness at H₂, both copies of ℤⁿ, and H₁.
pub fn resolution_report(link: &FramedLinkMatrix) -> ResolutionReport {
    let n = link.size();
    let free_n = FgAbelianGroup::free(n);
    let ker = kernel(link.matrix());

    let incl = GroupHom::new(ker.group.clone(), free_n.clone(), ker.basis.clone())
        .expect("kernel basis columns live in Z^n");
    let qhom = GroupHom::new(free_n.clone(), free_n, link.matrix.clone())
        .expect("square integer matrix maps Z^n to Z^n");
    let proj = cokernel_projection(link.matrix());

    let from_zero = GroupHom::zero(FgAbelianGroup::trivial(), ker.group);
    let to_zero = GroupHom::zero(proj.codomain().clone(), FgAbelianGroup::trivial());

    let checks = [
        is_exact_at(&from_zero, &incl).expect("chain composes"),
        is_exact_at(&incl, &qhom).expect("chain composes"),
        is_exact_at(&qhom, &proj).expect("chain composes"),
        is_exact_at(&proj, &to_zero).expect("chain composes"),
    ];
    ResolutionReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn link(rows: &[&[i64]]) -> FramedLinkMatrix {
        FramedLinkMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        assert!(matches!(
            FramedLinkMatrix::new(IntegerMatrix::zeros(2, 3)),
            Err(SurgeryError::NotSquare { rows: 2, cols: 3 })
        ));
        assert!(matches!(
            FramedLinkMatrix::from_rows(&[&[0, 1], &[2, 0]]),
            Err(SurgeryError::NotSymmetric { i: 0, j: 1 })
        ));
    }

    #[test]
    fn zero_framed_unknot_gives_s1_times_s2() {
        let h = surgery_homology(&link(&[&[0]]));
        assert_eq!(h.h1, FgAbelianGroup::free(1));
        assert_eq!(h.h2, FgAbelianGroup::free(1));
        assert_eq!(h.h2_basis.cols(), 1);
    }

    #[test]
    fn unit_framed_unknot_gives_homology_sphere() {
        let h = surgery_homology(&link(&[&[1]]));
        assert!(h.h1.is_trivial());
        assert!(h.h2.is_trivial());
        let h = surgery_homology(&link(&[&[-1]]));
        assert!(h.h1.is_trivial());
        assert!(h.h2.is_trivial());
    }

    #[test]
    fn hopf_link_with_double_framings() {
        let h = surgery_homology(&link(&[&[2, 1], &[1, 2]]));
        assert_eq!(h.h1, FgAbelianGroup::cyclic(3));
        assert!(h.h2.is_trivial());
        assert_eq!(h.h2_basis.cols(), 0);
    }

    #[test]
    fn h1_order_is_absolute_determinant() {
        let q = link(&[&[3, 1, 0], &[1, -2, 4], &[0, 4, 5]]);
        let det = q.matrix().det().unwrap();
        assert!(!num_traits::Zero::is_zero(&det));
        let h = surgery_homology(&q);
        assert_eq!(h.h1.order().unwrap(), num_traits::abs(det));
        assert!(h.h2.is_trivial());
    }

    #[test]
    fn kernel_basis_annihilates_q() {
        let q = link(&[&[1, 2, 3], &[2, 4, 6], &[3, 6, 9]]);
        let h = surgery_homology(&q);
        assert_eq!(h.h2, FgAbelianGroup::free(2));
        assert_eq!(h.h1, FgAbelianGroup::free(2));
        let prod = q.matrix().mul(&h.h2_basis).unwrap();
        assert!(prod.is_zero());
    }

    #[test]
    fn mod2_form_examples() {
        assert_eq!(
            mod2_form(&link(&[&[2, 1], &[1, 2]])),
            IntegerMatrix::from_rows(&[&[0, 1], &[1, 0]])
        );
        assert_eq!(mod2_form(&link(&[&[0]])), IntegerMatrix::from_rows(&[&[0]]));
        // negative entries land in {0, 1}, not {-1, 0}
        assert_eq!(
            mod2_form(&link(&[&[3, 2], &[2, -1]])),
            IntegerMatrix::from_rows(&[&[1, 0], &[0, 1]])
        );
    }

    fn random_symmetric(rng: &mut impl Rng, n: usize) -> FramedLinkMatrix {
        let mut m = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = BigInt::from(rng.gen_range(-4i64..=4));
                m.set(i, j, v.clone());
                m.set(j, i, v);
            }
        }
        FramedLinkMatrix::new(m).unwrap()
    }

    fn random_unimodular(rng: &mut impl Rng, n: usize) -> IntegerMatrix {
        let mut p = IntegerMatrix::identity(n);
        for _ in 0..20 {
            match rng.gen_range(0..3) {
                0 => {
                    let a = rng.gen_range(0..n);
                    let b = rng.gen_range(0..n);
                    if a != b {
                        p.swap_rows(a, b);
                    }
                }
                1 => {
                    let i = rng.gen_range(0..n);
                    p.negate_row(i);
                }
                _ => {
                    let a = rng.gen_range(0..n);
                    let b = rng.gen_range(0..n);
                    if a != b {
                        p.add_row_multiple(a, b, &BigInt::from(rng.gen_range(-2i64..=2)));
                    }
                }
            }
        }
        p
    }

    #[test]
    fn homology_is_a_congruence_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for n in 1..=4 {
            for _ in 0..8 {
                let q = random_symmetric(&mut rng, n);
                let p = random_unimodular(&mut rng, n);
                assert!(p.is_unimodular());
                let conj = p
                    .transpose()
                    .mul(q.matrix())
                    .unwrap()
                    .mul(&p)
                    .unwrap();
                let q2 = FramedLinkMatrix::new(conj).unwrap();
                let (a, b) = (surgery_homology(&q), surgery_homology(&q2));
                assert_eq!(a.h1, b.h1, "H1 changed under congruence of {}", q.matrix());
                assert_eq!(a.h2, b.h2, "H2 changed under congruence of {}", q.matrix());
            }
        }
    }

    #[test]
    fn block_sum_adds_homology() {
        let a = link(&[&[2, 1], &[1, 2]]);
        let b = link(&[&[0]]);
        let sum = a.block_sum(&b);
        assert_eq!(sum.size(), 3);
        let (ha, hb, hs) = (
            surgery_homology(&a),
            surgery_homology(&b),
            surgery_homology(&sum),
        );
        assert_eq!(hs.h1, ha.h1.direct_sum(&hb.h1));
        assert_eq!(hs.h2, ha.h2.direct_sum(&hb.h2));
    }

    #[test]
    fn resolutions_are_exact() {
        for rows in [
            vec![vec![0i64]],
            vec![vec![1]],
            vec![vec![2, 1], vec![1, 2]],
            vec![vec![1, 2, 3], vec![2, 4, 6], vec![3, 6, 9]],
        ] {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let q = link(&refs);
            let report = resolution_report(&q);
            assert!(report.all_exact(), "{:?} for {}", report, q.matrix());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..6 {
            let q = random_symmetric(&mut rng, 3);
            assert!(resolution_report(&q).all_exact(), "{}", q.matrix());
        }
    }
}
