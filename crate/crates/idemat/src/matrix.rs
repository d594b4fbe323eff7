//! Dense exact matrices over a declared ring: arithmetic, block algebra,
//! Kronecker products, transpose variants, and determinants. Matrices are
//! immutable; every operation returns a fresh value. Zero-dimensional
//! shapes (n×0, 0×n) are legal — they appear as kernel bases of injective
//! maps and as edge blocks in 2×2 block decompositions.

use crate::error::{Error, Result};
use crate::ring::{scalar_is_zero, Ring, RingValue, Scalar};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>, // row-major
}

impl Matrix {
    /// Checked public constructor: every entry must carry exactly `ring`.
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<RingValue>) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}×{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let mut payloads = Vec::with_capacity(entries.len());
        for e in entries {
            if e.ring() != &ring {
                return Err(Error::RingMismatch(format!(
                    "entry ring {} differs from matrix ring {ring}",
                    e.ring()
                )));
            }
            payloads.push(e.into_payload());
        }
        Ok(Matrix {
            ring,
            rows,
            cols,
            entries: payloads,
        })
    }

    /// Internal constructor for payloads already known to be canonical
    /// elements of `ring`.
    pub(crate) fn from_payloads(
        ring: Ring,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Matrix {
        debug_assert_eq!(entries.len(), rows * cols);
        debug_assert!(entries.iter().all(|e| ring.contains(e)));
        Matrix {
            ring,
            rows,
            cols,
            entries,
        }
    }

    pub fn from_fn(
        ring: &Ring,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix::from_payloads(ring.clone(), rows, cols, entries)
    }

    /// Embed machine integers row by row — the workhorse of tests and small
    /// fixtures. Rows must all have the same length.
    pub fn from_i64_rows(ring: &Ring, rows: &[&[i64]]) -> Result<Matrix> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            entries.extend(row.iter().map(|&k| ring.embed_i64(k)));
        }
        Ok(Matrix::from_payloads(ring.clone(), n_rows, n_cols, entries))
    }

    /// Parse entries row by row in the scalar text grammar.
    pub fn from_str_rows(ring: &Ring, rows: &[&[&str]]) -> Result<Matrix> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for text in *row {
                entries.push(crate::ring::parse_scalar(ring, text)?);
            }
        }
        Ok(Matrix::from_payloads(ring.clone(), n_rows, n_cols, entries))
    }

    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        let z = ring.zero();
        Matrix::from_payloads(ring.clone(), rows, cols, vec![z; rows * cols])
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        Matrix::from_fn(
            ring,
            n,
            n,
            |i, j| {
                if i == j {
                    ring.one()
                } else {
                    ring.zero()
                }
            },
        )
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Borrow the raw payload at (i, j), 0-based.
    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    /// The entry at (i, j) as a checked value.
    pub fn value(&self, i: usize, j: usize) -> RingValue {
        RingValue::new(self.ring.clone(), self.entry(i, j).clone())
            .expect("matrix entries are canonical")
    }

    pub(crate) fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(scalar_is_zero)
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring, other.ring
            )));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} vs {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(Matrix::from_payloads(
            self.ring.clone(),
            self.rows,
            self.cols,
            entries,
        ))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Ok(Matrix::from_payloads(
            self.ring.clone(),
            self.rows,
            self.cols,
            entries,
        ))
    }

    pub fn neg(&self) -> Matrix {
        let entries = self.entries.iter().map(|a| self.ring.neg(a)).collect();
        Matrix::from_payloads(self.ring.clone(), self.rows, self.cols, entries)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring, other.ring
            )));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} · {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = &self.ring;
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ring.zero();
                for k in 0..self.cols {
                    let prod = ring.mul(self.entry(i, k), other.entry(k, j));
                    acc = ring.add(&acc, &prod);
                }
                entries.push(acc);
            }
        }
        Ok(Matrix::from_payloads(
            ring.clone(),
            self.rows,
            other.cols,
            entries,
        ))
    }

    pub fn scalar_mul(&self, c: &RingValue) -> Result<Matrix> {
        if c.ring() != &self.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                c.ring(),
                self.ring
            )));
        }
        let entries = self
            .entries
            .iter()
            .map(|a| self.ring.mul(c.payload(), a))
            .collect();
        Ok(Matrix::from_payloads(
            self.ring.clone(),
            self.rows,
            self.cols,
            entries,
        ))
    }

    pub fn trace(&self) -> Result<RingValue> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "trace needs a square matrix, got {}×{}",
                self.rows, self.cols
            )));
        }
        let mut acc = self.ring.zero();
        for i in 0..self.rows {
            acc = self.ring.add(&acc, self.entry(i, i));
        }
        RingValue::new(self.ring.clone(), acc)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |i, j| {
            self.entry(j, i).clone()
        })
    }

    /// Transpose across the anti-diagonal: out_{ij} = in_{n+1−j, n+1−i}
    /// (1-based), equivalently J·Aᵀ·J for the exchange matrix J.
    pub fn anti_transpose(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "anti-transpose needs a square matrix, got {}×{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        Ok(Matrix::from_fn(&self.ring, n, n, |i, j| {
            self.entry(n - 1 - j, n - 1 - i).clone()
        }))
    }

    /// Exact determinant by Laplace expansion with memoized column masks.
    /// Fine at the sizes this library handles; guarded to keep the mask in
    /// a machine word.
    pub fn det(&self) -> Result<RingValue> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant needs a square matrix, got {}×{}",
                self.rows, self.cols
            )));
        }
        if self.rows > 16 {
            return Err(Error::InvalidArgument(
                "determinant supported up to 16×16".into(),
            ));
        }
        let n = self.rows;
        let full: u32 = (1u32 << n) - 1;
        let mut memo: HashMap<u32, Scalar> = HashMap::new();
        let value = self.det_masked(n, full, &mut memo);
        RingValue::new(self.ring.clone(), value)
    }

    fn det_masked(&self, n: usize, mask: u32, memo: &mut HashMap<u32, Scalar>) -> Scalar {
        if mask == 0 {
            return self.ring.one();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let row = n - mask.count_ones() as usize;
        let mut acc = self.ring.zero();
        let mut sign_flip = false;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let a = self.entry(row, col);
            if !scalar_is_zero(a) {
                let minor = self.det_masked(n, mask & !(1 << col), memo);
                let term = self.ring.mul(a, &minor);
                acc = if sign_flip {
                    self.ring.sub(&acc, &term)
                } else {
                    self.ring.add(&acc, &term)
                };
            }
            sign_flip = !sign_flip;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// The same matrix viewed in the ring's fraction field (ℤ → ℚ,
    /// K[x] → K(x), ℤ[x] → ℚ(x)); a no-op on fields.
    pub fn embed_fraction_field(&self) -> Result<Matrix> {
        let target = self.ring.fraction_field()?;
        if target == self.ring {
            return Ok(self.clone());
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(self.ring.to_fraction_field(e)?);
        }
        Ok(Matrix::from_payloads(target, self.rows, self.cols, entries))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.ring.format_scalar(self.entry(i, j)))
                .collect();
            write!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Concatenation and 2×2 block algebra

/// Side-by-side concatenation [A | B].
pub fn hstack(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch(format!("{} vs {}", a.ring, b.ring)));
    }
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "{} rows vs {} rows",
            a.rows, b.rows
        )));
    }
    Ok(Matrix::from_fn(&a.ring, a.rows, a.cols + b.cols, |i, j| {
        if j < a.cols {
            a.entry(i, j).clone()
        } else {
            b.entry(i, j - a.cols).clone()
        }
    }))
}

/// Stacked concatenation [A // B].
pub fn vstack(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch(format!("{} vs {}", a.ring, b.ring)));
    }
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch(format!(
            "{} cols vs {} cols",
            a.cols, b.cols
        )));
    }
    Ok(Matrix::from_fn(&a.ring, a.rows + b.rows, a.cols, |i, j| {
        if i < a.rows {
            a.entry(i, j).clone()
        } else {
            b.entry(i - a.rows, j).clone()
        }
    }))
}

/// A 2×2 block decomposition with compatible edges. Blocks may have zero
/// rows or columns, so every matrix with chosen cuts — including cuts at
/// the border — splits into one of these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSpec {
    pub top_left: Matrix,
    pub top_right: Matrix,
    pub bottom_left: Matrix,
    pub bottom_right: Matrix,
}

impl BlockSpec {
    pub fn new(
        top_left: Matrix,
        top_right: Matrix,
        bottom_left: Matrix,
        bottom_right: Matrix,
    ) -> Result<BlockSpec> {
        let ring = &top_left.ring;
        for m in [&top_right, &bottom_left, &bottom_right] {
            if &m.ring != ring {
                return Err(Error::RingMismatch(format!("{} vs {}", m.ring, ring)));
            }
        }
        if top_left.rows != top_right.rows
            || bottom_left.rows != bottom_right.rows
            || top_left.cols != bottom_left.cols
            || top_right.cols != bottom_right.cols
        {
            return Err(Error::DimensionMismatch(
                "block edges do not line up".into(),
            ));
        }
        Ok(BlockSpec {
            top_left,
            top_right,
            bottom_left,
            bottom_right,
        })
    }
}

pub fn block_compose(spec: &BlockSpec) -> Matrix {
    let top = hstack(&spec.top_left, &spec.top_right).expect("validated edges");
    let bottom = hstack(&spec.bottom_left, &spec.bottom_right).expect("validated edges");
    vstack(&top, &bottom).expect("validated edges")
}

pub fn block_split(m: &Matrix, row_cut: usize, col_cut: usize) -> Result<BlockSpec> {
    if row_cut > m.rows || col_cut > m.cols {
        return Err(Error::DimensionMismatch(format!(
            "cut ({row_cut}, {col_cut}) outside {}×{}",
            m.rows, m.cols
        )));
    }
    let slice = |r0: usize, r1: usize, c0: usize, c1: usize| {
        Matrix::from_fn(&m.ring, r1 - r0, c1 - c0, |i, j| {
            m.entry(r0 + i, c0 + j).clone()
        })
    };
    Ok(BlockSpec {
        top_left: slice(0, row_cut, 0, col_cut),
        top_right: slice(0, row_cut, col_cut, m.cols),
        bottom_left: slice(row_cut, m.rows, 0, col_cut),
        bottom_right: slice(row_cut, m.rows, col_cut, m.cols),
    })
}

// ---------------------------------------------------------------------------
// Kronecker product and the exchange matrix

/// A ⊠ B: the (mn)×(mn) matrix whose (i,j) block is a_{ij}·B. Both factors
/// must be square and share a ring.
pub fn kronecker(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch(format!("{} vs {}", a.ring, b.ring)));
    }
    if !a.is_square() || !b.is_square() {
        return Err(Error::DimensionMismatch(
            "Kronecker factors must be square".into(),
        ));
    }
    let (m, n) = (a.rows, b.rows);
    Ok(Matrix::from_fn(&a.ring, m * n, m * n, |i, j| {
        let (i1, i2) = (i / n, i % n);
        let (j1, j2) = (j / n, j % n);
        a.ring.mul(a.entry(i1, j1), b.entry(i2, j2))
    }))
}

/// The exchange matrix J: ones on the anti-diagonal. J² = I, and
/// J·Aᵀ·J is the anti-transpose.
pub fn exchange_matrix(ring: &Ring, n: usize) -> Matrix {
    Matrix::from_fn(ring, n, n, |i, j| {
        if i + j == n - 1 {
            ring.one()
        } else {
            ring.zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Ring {
        Ring::prime_field(p).unwrap()
    }
    fn q() -> Ring {
        Ring::rationals()
    }
    fn z() -> Ring {
        Ring::integers()
    }

    #[test]
    fn identity_is_neutral() {
        let m = Matrix::from_i64_rows(&z(), &[&[3, -1], &[2, 7]]).unwrap();
        let i2 = Matrix::identity(&z(), 2);
        assert_eq!(i2.mul(&m).unwrap(), m);
        assert_eq!(m.mul(&i2).unwrap(), m);
    }

    #[test]
    fn orthogonal_diagonal_idempotents() {
        let r = f(2);
        let a = Matrix::from_i64_rows(&r, &[&[1, 0], &[0, 0]]).unwrap();
        let b = Matrix::from_i64_rows(&r, &[&[0, 0], &[0, 1]]).unwrap();
        assert!(a.mul(&b).unwrap().is_zero());
    }

    #[test]
    fn dense_integer_idempotent_squares_to_itself() {
        let e = Matrix::from_i64_rows(
            &z(),
            &[
                &[6, -2, -3, 7],
                &[15, -5, -9, 21],
                &[21, -7, 15, -35],
                &[9, -3, 6, -14],
            ],
        )
        .unwrap();
        assert_eq!(e.mul(&e).unwrap(), e);
    }

    #[test]
    fn dimension_and_ring_mismatches() {
        let a = Matrix::zero(&z(), 2, 3);
        let b = Matrix::zero(&z(), 2, 2);
        assert!(matches!(
            a.add(&b).unwrap_err(),
            Error::DimensionMismatch(_)
        ));
        let c = Matrix::zero(&q(), 2, 3);
        assert!(matches!(a.add(&c).unwrap_err(), Error::RingMismatch(_)));
        assert!(matches!(
            b.mul(&a.transpose()).unwrap_err(),
            Error::DimensionMismatch(_)
        ));
    }

    #[test]
    fn block_round_trip() {
        let m = Matrix::from_i64_rows(&z(), &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).unwrap();
        for row_cut in 0..=3 {
            for col_cut in 0..=3 {
                let spec = block_split(&m, row_cut, col_cut).unwrap();
                assert_eq!(block_compose(&spec), m);
            }
        }
    }

    #[test]
    fn block_compose_diag() {
        let spec = BlockSpec::new(
            Matrix::identity(&z(), 2),
            Matrix::zero(&z(), 2, 2),
            Matrix::zero(&z(), 2, 2),
            Matrix::zero(&z(), 2, 2),
        )
        .unwrap();
        let expect = Matrix::from_i64_rows(
            &z(),
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]],
        )
        .unwrap();
        assert_eq!(block_compose(&spec), expect);
        assert_eq!(block_split(&expect, 2, 2).unwrap(), spec);
    }

    #[test]
    fn kronecker_unit_example() {
        let a = Matrix::from_str_rows(&q(), &[&["1/2", "0"], &["0", "0"]]).unwrap();
        let b = Matrix::from_i64_rows(&q(), &[&[2, 0], &[0, 0]]).unwrap();
        let k = kronecker(&a, &b).unwrap();
        let expect = Matrix::from_fn(&q(), 4, 4, |i, j| {
            if i == 0 && j == 0 {
                q().one()
            } else {
                q().zero()
            }
        });
        assert_eq!(k, expect);
    }

    #[test]
    fn kronecker_identities() {
        let i2 = Matrix::identity(&f(3), 2);
        let i3 = Matrix::identity(&f(3), 3);
        assert_eq!(kronecker(&i2, &i3).unwrap(), Matrix::identity(&f(3), 6));
    }

    #[test]
    fn exchange_and_anti_transpose() {
        let j3 = exchange_matrix(&z(), 3);
        assert_eq!(j3.mul(&j3).unwrap(), Matrix::identity(&z(), 3));

        let m = Matrix::from_i64_rows(&z(), &[&[1, 2], &[3, 4]]).unwrap();
        // [[a,b],[c,d]] ↦ [[d,b],[c,a]]
        let expect = Matrix::from_i64_rows(&z(), &[&[4, 2], &[3, 1]]).unwrap();
        assert_eq!(m.anti_transpose().unwrap(), expect);

        // J·Aᵀ·J agrees with the index formula.
        let j2 = exchange_matrix(&z(), 2);
        let via_j = j2.mul(&m.transpose()).unwrap().mul(&j2).unwrap();
        assert_eq!(via_j, expect);
    }

    #[test]
    fn determinants() {
        let m = Matrix::from_i64_rows(&z(), &[&[2, 4], &[6, 8]]).unwrap();
        assert_eq!(m.det().unwrap(), RingValue::from_i64(&z(), -8));
        let empty = Matrix::zero(&z(), 0, 0);
        assert_eq!(empty.det().unwrap(), RingValue::from_i64(&z(), 1));
        let singular = Matrix::from_i64_rows(&z(), &[&[1, 2], &[2, 4]]).unwrap();
        assert!(singular.det().unwrap().is_zero());
    }

    #[test]
    fn trace_and_scalar_mul() {
        let m = Matrix::from_i64_rows(&z(), &[&[1, 5], &[0, 3]]).unwrap();
        assert_eq!(m.trace().unwrap(), RingValue::from_i64(&z(), 4));
        let doubled = m.scalar_mul(&RingValue::from_i64(&z(), 2)).unwrap();
        assert_eq!(
            doubled,
            Matrix::from_i64_rows(&z(), &[&[2, 10], &[0, 6]]).unwrap()
        );
    }

    #[test]
    fn fraction_field_embedding() {
        let m = Matrix::from_i64_rows(&z(), &[&[1, 2], &[3, 4]]).unwrap();
        let e = m.embed_fraction_field().unwrap();
        assert_eq!(e.ring(), &q());
        assert_eq!(e, Matrix::from_i64_rows(&q(), &[&[1, 2], &[3, 4]]).unwrap());
    }
}
