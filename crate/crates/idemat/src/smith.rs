//! Smith normal form over Euclidean domains, with the unimodular
//! transforms and their inverses recorded, and the factorizations it
//! yields for idempotents: E = S·T with T·S = diag(I_ℓ, O), plus the
//! coprime-pair block template for building idempotents from Bézout data.

use crate::error::{Error, Result};
use crate::idem::{BlockBuilderInput, Idempotent};
use crate::matrix::Matrix;
use crate::poset::combinations;
use crate::ring::{euclid_gcd, Ring, RingValue, Scalar};
use num_bigint::BigInt;

/// P·A·Q = D with P, Q unimodular and D = diag(d₁, …, d_k, 0, …) where
/// d₁ | d₂ | … and each d_i is normalized (positive over ℤ, monic over
/// K[x]). The inverses of the transforms are kept alongside, since the
/// elimination produces them at no extra asymptotic cost.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    p: Matrix,
    d: Matrix,
    q: Matrix,
    p_inv: Matrix,
    q_inv: Matrix,
}

impl SmithDecomposition {
    pub fn p(&self) -> &Matrix {
        &self.p
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn q(&self) -> &Matrix {
        &self.q
    }

    pub fn p_inv(&self) -> &Matrix {
        &self.p_inv
    }

    pub fn q_inv(&self) -> &Matrix {
        &self.q_inv
    }

    /// The diagonal of D, all min(rows, cols) entries.
    pub fn diagonal(&self) -> Vec<RingValue> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.value(i, i))
            .collect()
    }

    /// Number of nonzero invariant factors.
    pub fn nonzero_count(&self) -> usize {
        self.diagonal().iter().filter(|v| !v.is_zero()).count()
    }
}

/// Working state of the elimination: the matrix being reduced together
/// with the four transforms, kept in sync by every elementary operation.
struct Work {
    ring: Ring,
    rows: usize,
    cols: usize,
    m: Vec<Vec<Scalar>>,
    p: Vec<Vec<Scalar>>,
    p_inv: Vec<Vec<Scalar>>,
    q: Vec<Vec<Scalar>>,
    q_inv: Vec<Vec<Scalar>>,
}

fn identity_payloads(ring: &Ring, n: usize) -> Vec<Vec<Scalar>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { ring.one() } else { ring.zero() })
                .collect()
        })
        .collect()
}

impl Work {
    fn new(a: &Matrix) -> Work {
        let ring = a.ring().clone();
        let (rows, cols) = (a.rows(), a.cols());
        let m = (0..rows).map(|i| a.row(i).to_vec()).collect();
        Work {
            p: identity_payloads(&ring, rows),
            p_inv: identity_payloads(&ring, rows),
            q: identity_payloads(&ring, cols),
            q_inv: identity_payloads(&ring, cols),
            ring,
            rows,
            cols,
            m,
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.m.swap(i, j);
        self.p.swap(i, j);
        for row in &mut self.p_inv {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.m {
            row.swap(i, j);
        }
        for row in &mut self.q {
            row.swap(i, j);
        }
        self.q_inv.swap(i, j);
    }

    /// row_i += c·row_j; the inverse operation lands on p_inv's columns.
    fn row_addmul(&mut self, i: usize, j: usize, c: &Scalar) {
        let ring = self.ring.clone();
        for k in 0..self.cols {
            let delta = ring.mul(c, &self.m[j][k]);
            self.m[i][k] = ring.add(&self.m[i][k], &delta);
        }
        for k in 0..self.rows {
            let delta = ring.mul(c, &self.p[j][k]);
            self.p[i][k] = ring.add(&self.p[i][k], &delta);
        }
        for r in 0..self.rows {
            let delta = ring.mul(c, &self.p_inv[r][i]);
            self.p_inv[r][j] = ring.sub(&self.p_inv[r][j], &delta);
        }
    }

    /// col_i += c·col_j; the inverse operation lands on q_inv's rows.
    fn col_addmul(&mut self, i: usize, j: usize, c: &Scalar) {
        let ring = self.ring.clone();
        for r in 0..self.rows {
            let delta = ring.mul(c, &self.m[r][j]);
            self.m[r][i] = ring.add(&self.m[r][i], &delta);
        }
        for r in 0..self.cols {
            let delta = ring.mul(c, &self.q[r][j]);
            self.q[r][i] = ring.add(&self.q[r][i], &delta);
        }
        for k in 0..self.cols {
            let delta = ring.mul(c, &self.q_inv[i][k]);
            self.q_inv[j][k] = ring.sub(&self.q_inv[j][k], &delta);
        }
    }

    /// row_i ← u⁻¹·row_i, folding the unit u out of the pivot into P.
    fn scale_row(&mut self, i: usize, unit: &Scalar) -> Result<()> {
        let ring = self.ring.clone();
        let u_inv = ring.div_exact(&ring.one(), unit)?;
        for k in 0..self.cols {
            self.m[i][k] = ring.mul(&self.m[i][k], &u_inv);
        }
        for k in 0..self.rows {
            self.p[i][k] = ring.mul(&self.p[i][k], &u_inv);
        }
        for r in 0..self.rows {
            self.p_inv[r][i] = ring.mul(&self.p_inv[r][i], unit);
        }
        Ok(())
    }

    /// Minimal-Euclidean-norm nonzero entry of the trailing block starting
    /// at (t, t); ties go to the first in row-major order.
    fn min_norm_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let Some(norm) = self.ring.euclid_norm(&self.m[i][j]) else {
                    continue;
                };
                if best.as_ref().is_none_or(|(b, _, _)| norm < *b) {
                    best = Some((norm, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn is_zero(&self, i: usize, j: usize) -> bool {
        self.ring.is_zero(&self.m[i][j])
    }
}

/// Smith normal form by gcd-driven elimination. The pivot of each step is
/// the minimal-norm nonzero entry of the trailing block; its row and
/// column are reduced by Euclidean division, swapping any nonzero
/// remainder (strictly smaller norm) into the pivot seat until both are
/// clear; a trailing entry the pivot fails to divide is pulled into the
/// pivot row by a row addition and reduced likewise. Each swap strictly
/// shrinks the pivot norm, so the loop terminates.
pub fn smith_normal_form(a: &Matrix) -> Result<SmithDecomposition> {
    let ring = a.ring().clone();
    if !ring.is_euclidean() {
        return Err(Error::UnsupportedRing(format!(
            "Smith normal form needs a Euclidean ring, got {ring}"
        )));
    }
    let mut w = Work::new(a);
    let (rows, cols) = (w.rows, w.cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = w.min_norm_pivot(t) else {
            break; // trailing block is all zero
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        'reduce: loop {
            // Clear the column below the pivot.
            let mut i = t + 1;
            while i < rows {
                if w.is_zero(i, t) {
                    i += 1;
                    continue;
                }
                let (quot, _) = ring.div_rem(&w.m[i][t], &w.m[t][t])?;
                if !ring.is_zero(&quot) {
                    w.row_addmul(i, t, &ring.neg(&quot));
                }
                if !w.is_zero(i, t) {
                    // Nonzero remainder: smaller norm than the pivot.
                    w.swap_rows(t, i);
                    continue 'reduce;
                }
                i += 1;
            }
            // Clear the row right of the pivot.
            let mut j = t + 1;
            while j < cols {
                if w.is_zero(t, j) {
                    j += 1;
                    continue;
                }
                let (quot, _) = ring.div_rem(&w.m[t][j], &w.m[t][t])?;
                if !ring.is_zero(&quot) {
                    w.col_addmul(j, t, &ring.neg(&quot));
                }
                if !w.is_zero(t, j) {
                    w.swap_cols(t, j);
                    continue 'reduce;
                }
                j += 1;
            }
            // Divisibility: the pivot must divide the whole trailing block.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if w.is_zero(i, j) {
                        continue;
                    }
                    let (_, rem) = ring.div_rem(&w.m[i][j], &w.m[t][t])?;
                    if !ring.is_zero(&rem) {
                        w.row_addmul(t, i, &ring.one());
                        continue 'reduce;
                    }
                }
            }
            break;
        }

        let (unit, _canonical) = ring.unit_normalize(&w.m[t][t]);
        if !ring.is_one(&unit) {
            w.scale_row(t, &unit)?;
        }
    }

    let to_matrix = |payloads: Vec<Vec<Scalar>>, r: usize, c: usize| {
        Matrix::from_payloads(ring.clone(), r, c, payloads.into_iter().flatten().collect())
    };
    let decomposition = SmithDecomposition {
        p: to_matrix(w.p, rows, rows),
        d: to_matrix(w.m, rows, cols),
        q: to_matrix(w.q, cols, cols),
        p_inv: to_matrix(w.p_inv, rows, rows),
        q_inv: to_matrix(w.q_inv, cols, cols),
    };
    debug_assert_eq!(
        decomposition
            .p
            .mul(a)
            .and_then(|pa| pa.mul(&decomposition.q))
            .expect("shapes agree"),
        decomposition.d
    );
    debug_assert_eq!(
        decomposition.p.mul(&decomposition.p_inv).expect("square"),
        Matrix::identity(&ring, rows)
    );
    debug_assert_eq!(
        decomposition.q.mul(&decomposition.q_inv).expect("square"),
        Matrix::identity(&ring, cols)
    );
    Ok(decomposition)
}

/// E = S·T with T·S = diag(I_ℓ, O), in the zero-padded square shapes:
/// columns ℓ+1..n of S and rows ℓ+1..n of T are zero.
#[derive(Clone, Debug)]
pub struct IdempotentFactorization {
    s: Matrix,
    t: Matrix,
    ell: usize,
}

impl IdempotentFactorization {
    pub fn s(&self) -> &Matrix {
        &self.s
    }

    pub fn t(&self) -> &Matrix {
        &self.t
    }

    pub fn ell(&self) -> usize {
        self.ell
    }
}

/// Factor an idempotent over a Euclidean ring through its Smith form.
/// Writing P·E·Q = diag(I_ℓ, O) — the invariant factors of an idempotent
/// are units — take S = P⁻¹·diag(I_ℓ, O) and T = diag(I_ℓ, O)·Q⁻¹. Then
/// S·T = E, and T·S = diag(I_ℓ, O) because E² = E forces the upper-left
/// ℓ×ℓ block of Q⁻¹·P⁻¹ to be the identity.
pub fn idempotent_snf_factor(e: &Idempotent) -> Result<IdempotentFactorization> {
    let snf = smith_normal_form(e.matrix())?;
    let n = e.n();
    let ell = snf.nonzero_count();
    assert_eq!(ell, e.rank(), "nonzero invariant factors count the rank");
    for (i, v) in snf.diagonal().iter().enumerate() {
        assert!(
            i >= ell || v.is_one(),
            "invariant factors of an idempotent are units"
        );
    }
    let ring = e.ring();
    let s = Matrix::from_fn(ring, n, n, |i, j| {
        if j < ell {
            snf.p_inv().entry(i, j).clone()
        } else {
            ring.zero()
        }
    });
    let t = Matrix::from_fn(ring, n, n, |i, j| {
        if i < ell {
            snf.q_inv().entry(i, j).clone()
        } else {
            ring.zero()
        }
    });
    debug_assert_eq!(&s.mul(&t).expect("square"), e.matrix());
    Ok(IdempotentFactorization { s, t, ell })
}

/// The 4×4 block template from two coprime pairs: given
/// a_i·g_i + b_i·h_i = 1, the blocks
/// A = (a₁ b₁ // 0 0), B = (0 0 // a₂ b₂), C = (g₁ −b₁ // h₁ a₁),
/// D = (b₂ g₂ // −a₂ h₂) satisfy AC + BD = I₂, so they assemble to a
/// rank-2 idempotent in M₄.
#[allow(clippy::too_many_arguments)] // two Bézout quadruples (a, b, g, h) is the natural signature
pub fn coprime_pair_builder_with(
    a1: &RingValue,
    b1: &RingValue,
    g1: &RingValue,
    h1: &RingValue,
    a2: &RingValue,
    b2: &RingValue,
    g2: &RingValue,
    h2: &RingValue,
) -> Result<BlockBuilderInput> {
    let ring = a1.ring().clone();
    for v in [b1, g1, h1, a2, b2, g2, h2] {
        if v.ring() != &ring {
            return Err(Error::RingMismatch(format!("{} vs {ring}", v.ring())));
        }
    }
    for (a, b, g, h) in [(a1, b1, g1, h1), (a2, b2, g2, h2)] {
        let combo = a.mul(g)?.add(&b.mul(h)?)?;
        if !combo.is_one() {
            return Err(Error::ConstraintViolated(format!(
                "a·g + b·h = {combo}, expected 1"
            )));
        }
    }
    let m = |vals: [&RingValue; 4]| {
        Matrix::from_fn(&ring, 2, 2, |i, j| vals[2 * i + j].payload().clone())
    };
    let zero = RingValue::from_i64(&ring, 0);
    let neg_b1 = b1.neg();
    let neg_a2 = a2.neg();
    BlockBuilderInput::new(
        m([a1, b1, &zero, &zero]),
        m([&zero, &zero, a2, b2]),
        m([g1, &neg_b1, h1, a1]),
        m([b2, g2, &neg_a2, h2]),
    )
}

/// [`coprime_pair_builder_with`], with the Bézout coefficients computed by
/// the extended Euclidean algorithm. Requires gcd(a_i, b_i) = 1.
pub fn coprime_pair_builder(
    a1: &RingValue,
    b1: &RingValue,
    a2: &RingValue,
    b2: &RingValue,
) -> Result<BlockBuilderInput> {
    let mut bezout = Vec::new();
    for (a, b) in [(a1, b1), (a2, b2)] {
        let (g, u, v) = euclid_gcd(a, b)?;
        if !g.is_one() {
            return Err(Error::ConstraintViolated(format!(
                "gcd({a}, {b}) = {g}, expected a unit"
            )));
        }
        bezout.push((u, v));
    }
    coprime_pair_builder_with(
        a1,
        b1,
        &bezout[0].0,
        &bezout[0].1,
        a2,
        b2,
        &bezout[1].0,
        &bezout[1].1,
    )
}

/// gcd of all k×k minors — the classical oracle for the product
/// d₁·d₂⋯d_k of the invariant factors, determined up to a unit.
pub fn gcd_of_minors(a: &Matrix, k: usize) -> Result<RingValue> {
    let ring = a.ring().clone();
    if k > a.rows() || k > a.cols() {
        return Err(Error::InvalidArgument(format!(
            "{k}×{k} minors of a {}×{} matrix do not exist",
            a.rows(),
            a.cols()
        )));
    }
    if k == 0 {
        return Ok(RingValue::from_i64(&ring, 1));
    }
    let mut g = RingValue::from_i64(&ring, 0);
    for row_set in combinations(a.rows(), k) {
        for col_set in combinations(a.cols(), k) {
            let sub = Matrix::from_fn(&ring, k, k, |i, j| a.entry(row_set[i], col_set[j]).clone());
            let det = sub.det()?;
            (g, _, _) = euclid_gcd(&g, &det)?;
        }
    }
    Ok(g)
}
