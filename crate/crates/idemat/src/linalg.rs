//! Field linear algebra: reduced row-echelon form with a recorded
//! transform, and the rank / kernel / image / inverse computations built
//! on it. Inputs over ℤ or a polynomial ring are embedded into their
//! fraction field first, exactly once, at the entry points.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::scalar_is_zero;

/// Result of row reduction: `transform · input = r`, with `transform`
/// invertible and `pivots` the strictly increasing pivot column indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub r: Matrix,
    pub pivots: Vec<usize>,
    pub transform: Matrix,
}

/// Reduced row-echelon form over the ring's fraction field. Pivoting takes
/// the first nonzero entry top-to-bottom — exact arithmetic needs no
/// magnitude pivoting, and this keeps the output deterministic.
pub fn rref(m: &Matrix) -> Result<Rref> {
    let m = m.embed_fraction_field()?;
    let ring = m.ring().clone();
    let (rows, cols) = (m.rows(), m.cols());

    // Mutable working copies of the entries.
    let mut work: Vec<Vec<_>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut trans: Vec<Vec<_>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| if i == j { ring.one() } else { ring.zero() })
                .collect()
        })
        .collect();

    let mut pivots = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(found) = (pivot_row..rows).find(|&i| !scalar_is_zero(&work[i][col])) else {
            continue;
        };
        work.swap(pivot_row, found);
        trans.swap(pivot_row, found);

        let inv = ring.inv(&work[pivot_row][col])?;
        for v in work[pivot_row].iter_mut() {
            *v = ring.mul(v, &inv);
        }
        for v in trans[pivot_row].iter_mut() {
            *v = ring.mul(v, &inv);
        }

        let pivot_vals = work[pivot_row].clone();
        let pivot_trans = trans[pivot_row].clone();
        for i in 0..rows {
            if i == pivot_row || scalar_is_zero(&work[i][col]) {
                continue;
            }
            let factor = work[i][col].clone();
            for (cell, pv) in work[i].iter_mut().zip(&pivot_vals) {
                let delta = ring.mul(&factor, pv);
                *cell = ring.sub(cell, &delta);
            }
            for (cell, pv) in trans[i].iter_mut().zip(&pivot_trans) {
                let delta = ring.mul(&factor, pv);
                *cell = ring.sub(cell, &delta);
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }

    let flatten = |rows_vec: Vec<Vec<_>>| rows_vec.into_iter().flatten().collect();
    Ok(Rref {
        r: Matrix::from_payloads(ring.clone(), rows, cols, flatten(work)),
        pivots,
        transform: Matrix::from_payloads(ring, rows, rows, flatten(trans)),
    })
}

/// Rank over the fraction field of the matrix's ring.
pub fn rank(m: &Matrix) -> Result<usize> {
    Ok(rref(m)?.pivots.len())
}

/// Columns spanning the kernel of M, read off the free variables of the
/// RREF. The result lives over the fraction field; it has `m.cols()` rows
/// and nullity-many columns (possibly zero).
pub fn kernel_basis(m: &Matrix) -> Result<Matrix> {
    let reduced = rref(m)?;
    let ring = reduced.r.ring().clone();
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !reduced.pivots.contains(c)).collect();
    let basis = Matrix::from_fn(&ring, cols, free.len(), |i, k| {
        let f = free[k];
        if i == f {
            ring.one()
        } else if let Some(row) = reduced.pivots.iter().position(|&p| p == i) {
            ring.neg(reduced.r.entry(row, f))
        } else {
            ring.zero()
        }
    });
    Ok(basis)
}

/// The pivot columns of M itself — a basis of the column space, kept in
/// the original ring (no embedding of the output).
pub fn image_basis(m: &Matrix) -> Result<Matrix> {
    let pivots = rref(m)?.pivots;
    let ring = m.ring().clone();
    Ok(Matrix::from_fn(&ring, m.rows(), pivots.len(), |i, k| {
        m.entry(i, pivots[k]).clone()
    }))
}

/// Inverse over the fraction field. Errors with `SingularMatrix` when the
/// rank falls short.
pub fn invert(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "inverse needs a square matrix, got {}×{}",
            m.rows(),
            m.cols()
        )));
    }
    let reduced = rref(m)?;
    if reduced.pivots.len() == m.rows() {
        // transform · M = I, so transform is the inverse.
        Ok(reduced.transform)
    } else {
        Err(Error::SingularMatrix(format!(
            "rank {} < {}",
            reduced.pivots.len(),
            m.rows()
        )))
    }
}
