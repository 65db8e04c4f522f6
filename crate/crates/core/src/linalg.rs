//! Dense exact linear algebra on window coordinates.
//!
//! This is the brute-force substrate for the window subspaces and the
//! matrix oracle: reduced row echelon form, null spaces, and membership
//! tests, all over [`Scalar`] with no rounding anywhere. RREF is canonical
//! for a row space, so two subspaces are equal iff their RREFs are equal.

use crate::error::Result;
use crate::field::{FieldDescriptor, Scalar};

/// A matrix in reduced row echelon form; zero rows are dropped and
/// `pivots[i]` is the pivot column of row `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Gauss-Jordan elimination. All rows must share a length and field.
pub fn rref(mut rows: Vec<Vec<Scalar>>) -> Result<Rref> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut next_row = 0usize;
    for col in 0..ncols {
        let Some(src) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, src);
        let inv = rows[next_row][col].inv()?;
        for entry in rows[next_row].iter_mut() {
            *entry = entry.mul(&inv)?;
        }
        for r in 0..rows.len() {
            if r != next_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..ncols {
                    let delta = rows[next_row][c].mul(&factor)?;
                    rows[r][c] = rows[r][c].sub(&delta)?;
                }
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    rows.truncate(next_row);
    Ok(Rref { rows, pivots })
}

/// Eliminates `v` against the RREF rows in place; `v` reduces to zero iff
/// it lies in the row space.
pub fn reduce_vector(basis: &Rref, v: &mut [Scalar]) -> Result<()> {
    for (row, &pivot) in basis.rows.iter().zip(&basis.pivots) {
        if !v[pivot].is_zero() {
            let factor = v[pivot].clone();
            for c in 0..v.len() {
                let delta = row[c].mul(&factor)?;
                v[c] = v[c].sub(&delta)?;
            }
        }
    }
    Ok(())
}

/// Canonical basis of `{x : M x = 0}` for the constraint rows `M`
/// (`ncols` unknowns). One basis vector per free column, in increasing
/// column order.
pub fn kernel_basis(
    field: FieldDescriptor,
    rows: Vec<Vec<Scalar>>,
    ncols: usize,
) -> Result<Vec<Vec<Scalar>>> {
    let reduced = rref(rows)?;
    let mut basis = Vec::new();
    for free in 0..ncols {
        if reduced.pivots.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &pivot) in reduced.rows.iter().zip(&reduced.pivots) {
            v[pivot] = row[free].neg();
        }
        basis.push(v);
    }
    Ok(basis)
}
