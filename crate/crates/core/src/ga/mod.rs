//! Dense Clifford algebra `G_n = Cl(n,0,0)` for `1 <= n <= 12`.

mod blade;
mod det;
mod multivector;
mod vector;

pub use blade::{
    blade_defect, graded_anticommutator, graded_commutator, pseudoscalar, pseudoscalar_inverse,
    Blade,
};
pub(crate) use blade::vector_from_quotient;
pub use det::{det_via_quotient, det_via_scalar_product, lu_determinant};
pub use multivector::{grade_of, reorder_sign, Multivector};
pub use vector::VecN;

use crate::error::{Error, Result};

/// Largest supported algebra dimension (4096 coefficients).
pub const MAX_DIM: usize = 12;

/// Relative cutoff below which a vector, blade or simplex counts as degenerate.
pub const DEGENERACY_REL: f64 = 1e-12;

/// Relative size of non-vector grades tolerated before a quotient result is
/// rejected instead of projected.
pub const GRADE_RESIDUAL_REL: f64 = 1e-10;

pub(crate) fn check_algebra_dim(dim: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

/// Geometric product of two vectors as a multivector.
pub fn vector_product(u: &VecN, v: &VecN) -> Result<Multivector> {
    u.to_multivector()?.geometric_product(&v.to_multivector()?)
}

/// `u ∧ v` for two vectors.
pub fn vector_wedge(u: &VecN, v: &VecN) -> Result<Multivector> {
    u.to_multivector()?.wedge_vector(v)
}
