//! Finitely generated abelian groups in invariant-factor form, explicit
//! homomorphisms between them, and exactness of two-step sequences.
//!
//! A group is ℤ^rank ⊕ ℤ/t₁ ⊕ … ⊕ ℤ/tₖ with 1 < t₁ | t₂ | … | tₖ; the form
//! is unique, so structural equality is isomorphism. Elements are coordinate
//! vectors over the generators, free coordinates first, torsion coordinates
//! reduced into [0, tᵢ).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::{AlgebraError, EntryRepr, IntegerMatrix};
use super::smith::{image_contains, kernel, smith_normal_form};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FgAbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    /// Requires every coefficient > 1 and tᵢ | tᵢ₊₁.
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Result<Self, AlgebraError> {
        for t in &torsion {
            if *t <= BigInt::one() {
                return Err(AlgebraError::InvalidTorsionChain);
            }
        }
        for w in torsion.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(AlgebraError::InvalidTorsionChain);
            }
        }
        Ok(FgAbelianGroup { rank, torsion })
    }

    pub fn trivial() -> Self {
        FgAbelianGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// ℤ/n for n ≥ 2, the trivial group for n = 1, ℤ for n = 0.
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => FgAbelianGroup::free(1),
            1 => FgAbelianGroup::trivial(),
            _ => FgAbelianGroup {
                rank: 0,
                torsion: vec![BigInt::from(n)],
            },
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn num_generators(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// None when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    /// Generators × torsion matrix whose columns are the relations
    /// tᵢ·(torsion generator i).
    pub fn relation_matrix(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.num_generators(), self.torsion.len());
        for (j, t) in self.torsion.iter().enumerate() {
            m.set(self.rank + j, j, t.clone());
        }
        m
    }

    /// Canonical direct sum: ranks add, torsion multisets merge back into a
    /// divisor chain (computed by diagonalizing the combined relation
    /// matrix, so ℤ/2 ⊕ ℤ/3 comes out as ℤ/6).
    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let merged: Vec<&BigInt> = self.torsion.iter().chain(&other.torsion).collect();
        let mut diag = IntegerMatrix::zeros(merged.len(), merged.len());
        for (i, t) in merged.iter().enumerate() {
            diag.set(i, i, (*t).clone());
        }
        let factors = smith_normal_form(&diag).invariant_factors();
        let torsion = factors.into_iter().filter(|f| !f.is_one()).collect();
        FgAbelianGroup {
            rank: self.rank + other.rank,
            torsion,
        }
    }

    /// Reduce raw coordinates to the canonical representative.
    pub fn reduce(&self, coeffs: Vec<BigInt>) -> Result<GroupElement, AlgebraError> {
        if coeffs.len() != self.num_generators() {
            return Err(AlgebraError::WrongElementLength {
                expected: self.num_generators(),
                got: coeffs.len(),
            });
        }
        let mut out = coeffs;
        for (j, t) in self.torsion.iter().enumerate() {
            let c = &out[self.rank + j] % t;
            out[self.rank + j] = if c.is_negative() { c + t } else { c };
        }
        Ok(GroupElement { coeffs: out })
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coeffs: vec![BigInt::zero(); self.num_generators()],
        }
    }

    pub fn add(
        &self,
        a: &GroupElement,
        b: &GroupElement,
    ) -> Result<GroupElement, AlgebraError> {
        self.check_len(a)?;
        self.check_len(b)?;
        self.reduce(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement, AlgebraError> {
        self.check_len(a)?;
        self.reduce(a.coeffs.iter().map(|x| -x).collect())
    }

    pub fn element_is_zero(&self, a: &GroupElement) -> bool {
        match self.reduce(a.coeffs.clone()) {
            Ok(r) => r.coeffs.iter().all(Zero::is_zero),
            Err(_) => false,
        }
    }

    /// All elements, when the group is finite with order ≤ cap.
    pub fn elements_capped(&self, cap: u64) -> Option<Vec<GroupElement>> {
        let order = self.order()?;
        if order > BigInt::from(cap) {
            return None;
        }
        let mut out = vec![self.zero()];
        for (j, t) in self.torsion.iter().enumerate() {
            let t = u64::try_from(t.clone()).expect("torsion fits u64 under the cap");
            let mut next = Vec::with_capacity(out.len() * t as usize);
            for base in &out {
                for v in 0..t {
                    let mut coeffs = base.coeffs.clone();
                    coeffs[self.rank + j] = BigInt::from(v);
                    next.push(GroupElement { coeffs });
                }
            }
            out = next;
        }
        Some(out)
    }

    fn check_len(&self, a: &GroupElement) -> Result<(), AlgebraError> {
        if a.coeffs.len() != self.num_generators() {
            return Err(AlgebraError::WrongElementLength {
                expected: self.num_generators(),
                got: a.coeffs.len(),
            });
        }
        Ok(())
    }
}

impl std::fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" x "))
    }
}

// JSON shape: {"rank": 1, "torsion": [2, 4]}.
impl Serialize for FgAbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("FgAbelianGroup", 2)?;
        s.serialize_field("rank", &self.rank)?;
        let torsion: Vec<EntryRepr> = self.torsion.iter().map(EntryRepr::of).collect();
        s.serialize_field("torsion", &torsion)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for FgAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            rank: usize,
            torsion: Vec<EntryRepr>,
        }
        let r = Repr::deserialize(deserializer)?;
        let torsion = r
            .torsion
            .into_iter()
            .map(|e| e.into_bigint().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        FgAbelianGroup::new(r.rank, torsion).map_err(D::Error::custom)
    }
}

/// A coordinate vector over a group's generators. Operations live on
/// [`FgAbelianGroup`], which knows the relations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    coeffs: Vec<BigInt>,
}

impl GroupElement {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        GroupElement { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        GroupElement {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn as_column(&self) -> IntegerMatrix {
        IntegerMatrix::column_vector(self.coeffs.clone())
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(BigInt::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let reprs: Vec<EntryRepr> = self.coeffs.iter().map(EntryRepr::of).collect();
        reprs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let reprs = Vec::<EntryRepr>::deserialize(deserializer)?;
        let coeffs = reprs
            .into_iter()
            .map(|e| e.into_bigint().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupElement { coeffs })
    }
}

/// A homomorphism between presented groups, stored as its matrix on
/// generators (codomain generators × domain generators). Construction
/// verifies the matrix carries every domain relation into the codomain
/// relations, so the map is well-defined on the quotients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    domain: FgAbelianGroup,
    codomain: FgAbelianGroup,
    matrix: IntegerMatrix,
}

impl GroupHom {
    pub fn new(
        domain: FgAbelianGroup,
        codomain: FgAbelianGroup,
        matrix: IntegerMatrix,
    ) -> Result<Self, AlgebraError> {
        if matrix.rows() != codomain.num_generators() || matrix.cols() != domain.num_generators()
        {
            return Err(AlgebraError::DimensionMismatch {
                left_rows: codomain.num_generators(),
                left_cols: domain.num_generators(),
                right_rows: matrix.rows(),
                right_cols: matrix.cols(),
            });
        }
        // tᵢ·(image of torsion generator i) must vanish in the codomain:
        // zero on free coordinates, divisible on torsion coordinates.
        for (j, t) in domain.torsion().iter().enumerate() {
            let col = domain.rank() + j;
            for i in 0..codomain.rank() {
                if !matrix.get(i, col).is_zero() {
                    return Err(AlgebraError::NotWellDefined { generator: col });
                }
            }
            for (k, e) in codomain.torsion().iter().enumerate() {
                let scaled = t * matrix.get(codomain.rank() + k, col);
                if !(scaled % e).is_zero() {
                    return Err(AlgebraError::NotWellDefined { generator: col });
                }
            }
        }
        Ok(GroupHom {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn zero(domain: FgAbelianGroup, codomain: FgAbelianGroup) -> Self {
        let matrix = IntegerMatrix::zeros(codomain.num_generators(), domain.num_generators());
        GroupHom {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn identity(group: FgAbelianGroup) -> Self {
        let matrix = IntegerMatrix::identity(group.num_generators());
        GroupHom {
            domain: group.clone(),
            codomain: group,
            matrix,
        }
    }

    pub fn domain(&self) -> &FgAbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbelianGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn apply(&self, e: &GroupElement) -> Result<GroupElement, AlgebraError> {
        if e.coeffs.len() != self.domain.num_generators() {
            return Err(AlgebraError::WrongElementLength {
                expected: self.domain.num_generators(),
                got: e.coeffs.len(),
            });
        }
        let img = self.matrix.mul(&e.as_column())?;
        self.codomain.reduce(img.column(0))
    }

    /// Every generator maps to zero in the codomain.
    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| {
            self.codomain
                .element_is_zero(&GroupElement::new(self.matrix.column(j)))
        })
    }
}

// JSON shape: {"domain": …, "codomain": …, "matrix": …}; deserialization
// re-validates well-definedness through the checked constructor.
impl Serialize for GroupHom {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("GroupHom", 3)?;
        s.serialize_field("domain", &self.domain)?;
        s.serialize_field("codomain", &self.codomain)?;
        s.serialize_field("matrix", &self.matrix)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for GroupHom {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            domain: FgAbelianGroup,
            codomain: FgAbelianGroup,
            matrix: IntegerMatrix,
        }
        let r = Repr::deserialize(deserializer)?;
        GroupHom::new(r.domain, r.codomain, r.matrix).map_err(D::Error::custom)
    }
}

/// second ∘ first.
pub fn compose(second: &GroupHom, first: &GroupHom) -> Result<GroupHom, AlgebraError> {
    if first.codomain != second.domain {
        return Err(AlgebraError::NotComposable);
    }
    let matrix = second.matrix.mul(&first.matrix)?;
    GroupHom::new(first.domain.clone(), second.codomain.clone(), matrix)
}

/// The verdict of an exactness test at the middle of A → B → C, with the
/// composition and the two inclusions reported separately for diagnosis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessCheck {
    pub composition_zero: bool,
    pub image_in_kernel: bool,
    pub kernel_in_image: bool,
}

impl ExactnessCheck {
    pub fn is_exact(&self) -> bool {
        self.composition_zero && self.image_in_kernel && self.kernel_in_image
    }
}

/// Exactness of A --f--> B --g--> C at B: image(f) = kernel(g) as subgroups
/// of B. Both are compared as lattices in ℤ^gens(B) (saturated by B's
/// relations), with mutual inclusion decided by Smith-form membership.
pub fn is_exact_at(f: &GroupHom, g: &GroupHom) -> Result<ExactnessCheck, AlgebraError> {
    if f.codomain != g.domain {
        return Err(AlgebraError::NotComposable);
    }
    let b = &f.codomain;
    let rel_b = b.relation_matrix();

    // Lattice of the image: columns of f plus B's relations.
    let image_lattice = f.matrix.augment(&rel_b)?;

    // Lattice of the kernel: x with g(x) ∈ relations of C, i.e. the
    // projection to the B-block of ker [g | R_C], plus B's relations.
    let rel_c = g.codomain.relation_matrix();
    let lifted = g.matrix.augment(&rel_c)?;
    let lifted_kernel = kernel(&lifted).basis;
    let n = b.num_generators();
    let mut projected = IntegerMatrix::zeros(n, lifted_kernel.cols());
    for i in 0..n {
        for j in 0..lifted_kernel.cols() {
            projected.set(i, j, lifted_kernel.get(i, j).clone());
        }
    }
    let kernel_lattice = projected.augment(&rel_b)?;

    let image_snf = smith_normal_form(&image_lattice);
    let kernel_snf = smith_normal_form(&kernel_lattice);
    let contained = |cols_of: &IntegerMatrix,
                     in_lattice: &super::smith::SmithDecomposition|
     -> Result<bool, AlgebraError> {
        for j in 0..cols_of.cols() {
            let col = IntegerMatrix::column_vector(cols_of.column(j));
            if !image_contains(in_lattice, &col)? {
                return Ok(false);
            }
        }
        Ok(true)
    };

    Ok(ExactnessCheck {
        composition_zero: compose(g, f)?.is_zero(),
        image_in_kernel: contained(&image_lattice, &kernel_snf)?,
        kernel_in_image: contained(&kernel_lattice, &image_snf)?,
    })
}
