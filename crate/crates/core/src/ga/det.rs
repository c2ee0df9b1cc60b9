//! Determinants as Clifford quotients.
//!
//! `det(u_1, …, u_k) = (u_1 ∧ ⋯ ∧ u_k) (I_k)^{-1}`, a scalar. The LU routine at
//! the bottom is the classical reference used by `detcheck`.

use super::{pseudoscalar_inverse, Multivector, VecN};
use crate::error::{Error, Result};

fn check_square(rows: &[VecN]) -> Result<usize> {
    let k = rows.len();
    if k == 0 {
        return Err(Error::Shape("determinant of an empty row list".into()));
    }
    for r in rows {
        Error::check_dim(k, r.dim())?;
    }
    Ok(k)
}

fn wedge_all(dim: usize, rows: &[VecN]) -> Result<Multivector> {
    rows.iter()
        .try_fold(Multivector::scalar(dim, 1.0)?, |acc, r| acc.wedge_vector(r))
}

/// Determinant of the `k×k` matrix whose rows are `rows`, computed as the
/// quotient `(u_1 ∧ ⋯ ∧ u_k)(I_k)^{-1}`. Dependent rows give exactly the
/// rounding residue of the wedge, i.e. `0` for exactly dependent input.
pub fn det_via_quotient(rows: &[VecN]) -> Result<f64> {
    let k = check_square(rows)?;
    let wedge = wedge_all(k, rows)?;
    let q = wedge.geometric_product(&pseudoscalar_inverse(k)?)?;
    Ok(q.scalar_part())
}

/// Same determinant via the scalar-product form
/// `(−1)^{k−1} [(u_1 ∧ ⋯ ∧ u_{k−1})(I_k)^{-1}] · u_k`.
pub fn det_via_scalar_product(rows: &[VecN]) -> Result<f64> {
    let k = check_square(rows)?;
    let partial = wedge_all(k, &rows[..k - 1])?;
    let dual = partial.geometric_product(&pseudoscalar_inverse(k)?)?.vector_part();
    let sign = if (k - 1) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * dual.dot(&rows[k - 1])?)
}

/// Gaussian elimination with partial pivoting.
pub fn lu_determinant(rows: &[VecN]) -> Result<f64> {
    let k = check_square(rows)?;
    let mut a: Vec<Vec<f64>> = rows.iter().map(|r| r.components().to_vec()).collect();
    let mut det = 1.0;
    for col in 0..k {
        let pivot = (col..k)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        if a[pivot][col] == 0.0 {
            return Ok(0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for r in col + 1..k {
            let factor = a[r][col] / p;
            if factor == 0.0 {
                continue;
            }
            for c in col..k {
                a[r][c] -= factor * a[col][c];
            }
        }
    }
    Ok(det)
}
