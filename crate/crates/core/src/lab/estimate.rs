use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::ga::VecN;
use crate::simplex::{mean_ratio, mean_ratio_via_quotient, secant_ratio, SampledSimplex, Simplex};

/// `r̄_f` for one simplex plus the numbers needed to judge it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradientEstimate {
    pub value: VecN,
    pub simplex_tau: f64,
    /// Smallest `|ā_i − a_i|` (or `|a_{n+1} − a_n|`) in the mirror chain.
    pub chain_min_diff: f64,
    /// Norm of the non-vector grades of `Δ̄f Δ^{-1}`.
    pub residual_grades: f64,
    /// Field evaluations used: `n+1` vertices and `n−1` mirrored points.
    pub evaluations: usize,
}

/// Estimate `∇f` on `s` with the mirrored mean ratio.
///
/// The sum-of-quotients form gives the value; the pseudo-vector quotient
/// `Δ̄f Δ^{-1}` is computed alongside and must agree with it.
pub fn estimate_gradient(field: &ScalarField, s: &Simplex) -> Result<GradientEstimate> {
    Error::check_dim(field.dim(), s.dim())?;
    let mut evaluations = 0usize;
    let sampled = SampledSimplex::from_fn(s.clone(), |p| {
        evaluations += 1;
        field.eval(p)
    })?;
    let value = mean_ratio(&sampled)?;
    let (via_quotient, residual_grades) = mean_ratio_via_quotient(&sampled)?;
    let scale = value.norm().max(via_quotient.norm());
    let gap = value.max_abs_diff(&via_quotient);
    if gap > 1e-8 * scale.max(f64::MIN_POSITIVE) && gap > 1e-12 {
        return Err(Error::DegenerateInput(format!(
            "mean-ratio routes disagree by {gap:e} (ill-conditioned simplex)"
        )));
    }
    let chain_min_diff = sampled.mirror().map_or(f64::NAN, |m| m.chain.min_diff_norm());
    Ok(GradientEstimate {
        value,
        simplex_tau: s.tau(),
        chain_min_diff,
        residual_grades,
        evaluations,
    })
}

/// The naive secant ratio `r_f` from the `n+1` vertex values alone.
pub fn secant_estimate(field: &ScalarField, s: &Simplex) -> Result<VecN> {
    Error::check_dim(field.dim(), s.dim())?;
    s.ensure_nondegenerate()?;
    let values = s.vertices().iter().map(|p| field.eval(p)).collect::<Result<Vec<_>>>()?;
    secant_ratio(&SampledSimplex::tabulated(s.clone(), values)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(pts: [[f64; 2]; 3]) -> Simplex {
        Simplex::new(pts.iter().map(|p| VecN::from(*p)).collect()).unwrap()
    }

    #[test]
    fn linear_field_is_exact() {
        let f = ScalarField::linear(vec![2.0, -3.0], 0.7);
        let est = estimate_gradient(&f, &tri([[0.3, 0.1], [1.7, -0.4], [0.2, 2.2]])).unwrap();
        assert!(est.value.max_abs_diff(&VecN::from([2.0, -3.0])) < 1e-10);
        assert_eq!(est.evaluations, 4);
    }

    #[test]
    fn schwarz_family_member_is_near_zero() {
        let a = 0.1;
        let est = estimate_gradient(&ScalarField::schwarz(), &tri([[0.0, 0.0], [-a, a * a], [a, a * a]]))
            .unwrap();
        assert!(est.value.norm() <= 0.02);
        assert!(est.residual_grades <= 1e-10 * est.value.norm().max(1e-300) || est.residual_grades == 0.0);
    }

    #[test]
    fn sin_exp_small_regular_triangle() {
        let h = 1e-3;
        let s = tri([
            [h, 0.0],
            [-0.5 * h, 0.75f64.sqrt() * h],
            [-0.5 * h, -(0.75f64.sqrt()) * h],
        ]);
        let est = estimate_gradient(&ScalarField::sin_exp(), &s).unwrap();
        assert!(est.value.max_abs_diff(&VecN::from([1.0, 0.0])) < 1e-3);
    }

    #[test]
    fn evaluation_budget_is_2n() {
        let s = Simplex::new(vec![
            VecN::from([0.1, 0.0, 0.0, 0.2]),
            VecN::from([1.0, 0.1, 0.0, 0.0]),
            VecN::from([0.0, 1.0, 0.3, 0.0]),
            VecN::from([0.2, 0.0, 1.0, 0.1]),
            VecN::from([0.0, 0.4, 0.1, 1.0]),
        ])
        .unwrap();
        let f = ScalarField::expression("x1*x2 + x3^2 - x4", 4).unwrap();
        assert_eq!(estimate_gradient(&f, &s).unwrap().evaluations, 8);
    }

    #[test]
    fn errors() {
        let flat = tri([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]);
        assert!(matches!(
            estimate_gradient(&ScalarField::sin_exp(), &flat),
            Err(Error::DegenerateSimplex { .. })
        ));
        // vertices inside [-1,1] x R but the mirrored point is not
        let s = tri([[0.7, 0.0], [0.9, 0.5], [0.9, -0.5]]);
        match estimate_gradient(&ScalarField::schwarz(), &s) {
            Err(Error::Domain { point, .. }) => assert!(point[0] > 1.0),
            other => panic!("{other:?}"),
        }
    }
}
