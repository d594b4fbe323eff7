//! Idempotent matrices: the verified wrapper type, diagonalization
//! E = A·diag(I_r, O)·A⁻¹, and the explicit constructors — rank-1 outer
//! products over a UFD, the induced rank-2 form in M₃, complements, and
//! Kronecker products of scaled idempotents.

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{block_compose, hstack, kronecker, BlockSpec, Matrix};
use crate::ring::{Ring, RingValue};
use std::fmt;

/// A square matrix E with E² = E, verified at construction, carrying its
/// rank (computed over the ring's fraction field).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Idempotent {
    matrix: Matrix,
    rank: usize,
}

impl Idempotent {
    pub fn new(matrix: Matrix) -> Result<Idempotent> {
        check_idempotent(&matrix)?;
        let rank = linalg::rank(&matrix)?;
        Ok(Idempotent { matrix, rank })
    }

    /// For constructors whose mathematics already pins the rank; still
    /// verifies E² = E eagerly.
    pub(crate) fn with_rank(matrix: Matrix, rank: usize) -> Result<Idempotent> {
        check_idempotent(&matrix)?;
        debug_assert!(
            linalg::rank(&matrix).map_or(true, |r| r == rank),
            "cached rank disagrees with fraction-field rank"
        );
        Ok(Idempotent { matrix, rank })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Side length of the matrix.
    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn ring(&self) -> &Ring {
        self.matrix.ring()
    }
}

impl fmt::Display for Idempotent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

fn check_idempotent(matrix: &Matrix) -> Result<()> {
    if !matrix.is_square() {
        return Err(Error::InvalidArgument(format!(
            "idempotents are square; got {}×{}",
            matrix.rows(),
            matrix.cols()
        )));
    }
    if &matrix.mul(matrix)? != matrix {
        return Err(Error::NotIdempotent("M·M differs from M".into()));
    }
    Ok(())
}

/// Does M·M = M? Errors on non-square input.
pub fn is_idempotent(m: &Matrix) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::InvalidArgument(format!(
            "idempotency is defined for square matrices; got {}×{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(&m.mul(m)? == m)
}

/// In M₂ over an integral domain, rank-1 idempotents are exactly the
/// matrices with trace 1 and determinant 0 (Cayley–Hamilton gives
/// M² = tr(M)·M − det(M)·I in the 2×2 case).
pub fn is_rank1_idempotent_m2(m: &Matrix) -> Result<bool> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::InvalidArgument(format!(
            "expected a 2×2 matrix, got {}×{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m.trace()?.is_one() && m.det()?.is_zero())
}

// ---------------------------------------------------------------------------
// Diagonalization

/// Change of basis A with A·diag(I_r, O)·A⁻¹ equal to the source
/// idempotent. Columns of A are an image basis followed by a kernel basis;
/// both live over the fraction field of the idempotent's ring.
#[derive(Clone, Debug)]
pub struct DiagonalizationWitness {
    a: Matrix,
    a_inv: Matrix,
    r: usize,
}

impl DiagonalizationWitness {
    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn a_inv(&self) -> &Matrix {
        &self.a_inv
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    /// A·diag(I_r, O)·A⁻¹, over the witness's (field) ring.
    pub fn reconstruct(&self) -> Matrix {
        let ring = self.a.ring();
        let n = self.a.rows();
        let d = Matrix::from_fn(ring, n, n, |i, j| {
            if i == j && i < self.r {
                ring.one()
            } else {
                ring.zero()
            }
        });
        self.a
            .mul(&d)
            .and_then(|ad| ad.mul(&self.a_inv))
            .expect("witness dimensions agree")
    }
}

/// Find A with E = A·diag(I_r, O)·A⁻¹: image basis columns first (E acts as
/// the identity on its image), kernel basis columns after. The choice of
/// bases is the deterministic one made by `image_basis`/`kernel_basis`.
pub fn diagonalize(e: &Idempotent) -> Result<DiagonalizationWitness> {
    let embedded = e.matrix().embed_fraction_field()?;
    let image = linalg::image_basis(&embedded)?;
    let kernel = linalg::kernel_basis(&embedded)?;
    let a = hstack(&image, &kernel)?;
    let a_inv = linalg::invert(&a)?;
    debug_assert_eq!(
        DiagonalizationWitness {
            a: a.clone(),
            a_inv: a_inv.clone(),
            r: e.rank()
        }
        .reconstruct(),
        embedded
    );
    Ok(DiagonalizationWitness {
        a,
        a_inv,
        r: e.rank(),
    })
}

// ---------------------------------------------------------------------------
// Explicit constructors

/// Rank-1 idempotent over a UFD from vectors with Σ s_i·a_i = 1:
/// E_{ij} = s_i·a_j. The trace condition is exactly idempotency here.
pub fn rank1_ufd_construct(s: &[RingValue], a: &[RingValue]) -> Result<Idempotent> {
    if s.is_empty() || s.len() != a.len() {
        return Err(Error::DimensionMismatch(format!(
            "vector lengths {} and {} must match and be positive",
            s.len(),
            a.len()
        )));
    }
    let ring = s[0].ring().clone();
    if !ring.is_ufd() {
        return Err(Error::UnsupportedRing(format!("{ring} is not a UFD")));
    }
    for v in s.iter().chain(a.iter()) {
        if v.ring() != &ring {
            return Err(Error::RingMismatch(format!("{} vs {ring}", v.ring())));
        }
    }
    let mut trace = RingValue::from_i64(&ring, 0);
    for (si, ai) in s.iter().zip(a) {
        trace = trace.add(&si.mul(ai)?)?;
    }
    if !trace.is_one() {
        return Err(Error::ConstraintViolated(format!(
            "Σ s_i·a_i = {trace}, expected 1"
        )));
    }
    let n = s.len();
    let m = Matrix::from_fn(&ring, n, n, |i, j| ring.mul(s[i].payload(), a[j].payload()));
    Idempotent::with_rank(m, 1)
}

/// Rank-2 idempotent in M₃ over a UFD: I₃ minus the rank-1 outer product of
/// (s,t,u) and (a,b,c), requiring sa + tb + uc = 1.
#[allow(clippy::many_single_char_names)]
pub fn m3_rank2_construct(
    s: &RingValue,
    t: &RingValue,
    u: &RingValue,
    a: &RingValue,
    b: &RingValue,
    c: &RingValue,
) -> Result<Idempotent> {
    let rank1 = rank1_ufd_construct(
        &[s.clone(), t.clone(), u.clone()],
        &[a.clone(), b.clone(), c.clone()],
    )?;
    Ok(complement(&rank1))
}

/// I − E: idempotent of complementary rank.
pub fn complement(e: &Idempotent) -> Idempotent {
    let i = Matrix::identity(e.ring(), e.n());
    let m = i.sub(e.matrix()).expect("same shape");
    Idempotent::with_rank(m, e.n() - e.rank()).expect("I − E is idempotent when E is")
}

/// The scalar k with A² = k·A, if one exists. The candidate comes from the
/// first row-major position where A and A² are both nonzero; it is then
/// verified globally. `None` when no nonzero k works (e.g. nilpotent A).
pub fn scaled_idempotent_factor(a: &Matrix) -> Result<Option<RingValue>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {}×{}",
            a.rows(),
            a.cols()
        )));
    }
    let ring = a.ring().clone();
    if !ring.is_field() {
        return Err(Error::UnsupportedRing(format!(
            "scaled-idempotent detection runs over a field, got {ring}"
        )));
    }
    if a.is_zero() {
        return Err(Error::InvalidArgument(
            "the zero matrix scales every idempotent trivially; factor undefined".into(),
        ));
    }
    let sq = a.mul(a)?;
    let n = a.rows();
    let mut candidate = None;
    'search: for i in 0..n {
        for j in 0..n {
            if !ring.is_zero(a.entry(i, j)) && !ring.is_zero(sq.entry(i, j)) {
                candidate = Some(ring.div(sq.entry(i, j), a.entry(i, j))?);
                break 'search;
            }
        }
    }
    let Some(k) = candidate else {
        return Ok(None);
    };
    let scaled = a.scalar_mul(&RingValue::new(ring.clone(), k.clone())?)?;
    if scaled == sq {
        Ok(Some(RingValue::new(ring, k)?))
    } else {
        Ok(None)
    }
}

/// A ⊠ B as a verified idempotent. Requires A² = k·A and B² = k⁻¹·B for a
/// common unit k (checked over the fraction field); that condition is
/// equivalent to A ⊠ B being a nonzero idempotent.
pub fn kron_idempotent(a: &Matrix, b: &Matrix) -> Result<Idempotent> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ConstraintViolated(
            "Kronecker factors must be nonzero".into(),
        ));
    }
    let ka = scaled_idempotent_factor(&a.embed_fraction_field()?)?;
    let kb = scaled_idempotent_factor(&b.embed_fraction_field()?)?;
    match (ka, kb) {
        (Some(ka), Some(kb)) if ka.mul(&kb)?.is_one() => Idempotent::new(kronecker(a, b)?),
        (Some(ka), Some(kb)) => Err(Error::ConstraintViolated(format!(
            "scale factors {ka} and {kb} are not reciprocal"
        ))),
        _ => Err(Error::ConstraintViolated(
            "a factor admits no scalar k with A² = k·A".into(),
        )),
    }
}

/// E = (CA CB // DA DB) for A, C ∈ M_ℓ, B of shape ℓ×(n−ℓ), D of shape
/// (n−ℓ)×ℓ, with AC + BD = I_ℓ. Every idempotent of rank ℓ over a PID
/// arises this way; conversely the condition makes E idempotent of rank ℓ.
#[derive(Clone, Debug)]
pub struct BlockBuilderInput {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub d: Matrix,
}

impl BlockBuilderInput {
    pub fn new(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Result<BlockBuilderInput> {
        let ell = a.rows();
        if !a.is_square() || !c.is_square() || c.rows() != ell {
            return Err(Error::DimensionMismatch(
                "A and C must be square of equal size".into(),
            ));
        }
        if b.rows() != ell || d.cols() != ell || b.cols() != d.rows() {
            return Err(Error::DimensionMismatch(
                "B must be ℓ×(n−ℓ) and D must be (n−ℓ)×ℓ".into(),
            ));
        }
        let ring = a.ring();
        for m in [&b, &c, &d] {
            if m.ring() != ring {
                return Err(Error::RingMismatch(format!("{} vs {ring}", m.ring())));
            }
        }
        Ok(BlockBuilderInput { a, b, c, d })
    }

    pub fn ell(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.rows() + self.d.rows()
    }
}

/// Assemble the idempotent E = (CA CB // DA DB), after verifying
/// AC + BD = I_ℓ.
pub fn block_build_idempotent(input: &BlockBuilderInput) -> Result<Idempotent> {
    let ell = input.ell();
    let ring = input.a.ring();
    let ac = input.a.mul(&input.c)?;
    let bd = input.b.mul(&input.d)?;
    if ac.add(&bd)? != Matrix::identity(ring, ell) {
        return Err(Error::ConstraintViolated("AC + BD ≠ I".into()));
    }
    let spec = BlockSpec::new(
        input.c.mul(&input.a)?,
        input.c.mul(&input.b)?,
        input.d.mul(&input.a)?,
        input.d.mul(&input.b)?,
    )?;
    Idempotent::new(block_compose(&spec))
}
