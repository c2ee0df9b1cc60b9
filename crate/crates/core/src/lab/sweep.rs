use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::estimate::{estimate_gradient, secant_estimate};
use super::family::SimplexFamily;
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::ga::VecN;

/// Errors at or below this are treated as exact when fitting slopes.
pub const ERROR_FLOOR: f64 = 1e-13;

/// One estimator's result on one member of a family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "kebab-case")]
pub enum RowOutcome {
    Ok(VecN),
    Degenerate(String),
    Domain(String),
    Failed(String),
}

impl RowOutcome {
    fn from_result(r: Result<VecN>) -> Self {
        match r {
            Ok(v) => RowOutcome::Ok(v),
            Err(e) if e.is_degenerate() => RowOutcome::Degenerate(e.to_string()),
            Err(e) if e.is_domain() => RowOutcome::Domain(e.to_string()),
            Err(e) => RowOutcome::Failed(e.to_string()),
        }
    }

    pub fn value(&self) -> Option<&VecN> {
        match self {
            RowOutcome::Ok(v) => Some(v),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            RowOutcome::Ok(_) => "ok",
            RowOutcome::Degenerate(_) => "degenerate",
            RowOutcome::Domain(_) => "domain",
            RowOutcome::Failed(_) => "failed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub h: f64,
    pub tau: f64,
    pub r_naive: RowOutcome,
    pub r_mean: RowOutcome,
    pub err_naive: Option<f64>,
    pub err_mean: Option<f64>,
}

impl ConvergenceRow {
    /// Worst of the two outcomes, for one-word reporting.
    pub fn status(&self) -> &'static str {
        if self.r_mean.status() != "ok" {
            self.r_mean.status()
        } else {
            self.r_naive.status()
        }
    }
}

/// `per_decade` log-spaced scales from `h_max` down to `h_min`, both included.
pub fn log_scales(h_max: f64, h_min: f64, per_decade: usize) -> Result<Vec<f64>> {
    if !(h_min > 0.0 && h_max > h_min && h_max.is_finite()) {
        return Err(Error::Config(format!("need h_max > h_min > 0, got {h_max} and {h_min}")));
    }
    if per_decade < 2 {
        return Err(Error::Config(format!("points per decade must be at least 2, got {per_decade}")));
    }
    let (hi, lo) = (h_max.log10(), h_min.log10());
    let steps = ((hi - lo) * per_decade as f64).round().max(1.0) as usize;
    Ok((0..=steps)
        .map(|i| match i {
            0 => h_max,
            i if i == steps => h_min,
            i => 10f64.powf(hi - (hi - lo) * i as f64 / steps as f64),
        })
        .collect())
}

/// Sweep against `∇f(center)`.
pub fn convergence_sweep(
    field: &ScalarField,
    family: &SimplexFamily,
    scales: &[f64],
) -> Result<Vec<ConvergenceRow>> {
    let reference = field.gradient(family.center()).map_err(|e| {
        Error::Config(format!("no analytic gradient for field '{}': {e}", field.name()))
    })?;
    convergence_sweep_with_reference(field, family, scales, &reference)
}

/// Sweep against a caller-supplied gradient. Rows are computed in parallel
/// and returned in the order of `scales`.
pub fn convergence_sweep_with_reference(
    field: &ScalarField,
    family: &SimplexFamily,
    scales: &[f64],
    reference: &VecN,
) -> Result<Vec<ConvergenceRow>> {
    Error::check_dim(family.dim(), field.dim())?;
    Error::check_dim(family.dim(), reference.dim())?;
    if scales.is_empty() {
        return Err(Error::Config("empty scale list".into()));
    }
    if scales.iter().any(|h| !(*h > 0.0 && h.is_finite())) {
        return Err(Error::Config("scales must be positive and finite".into()));
    }
    if scales.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Config("scales must be strictly decreasing".into()));
    }
    Ok(scales.par_iter().map(|&h| sweep_row(field, family, h, reference)).collect())
}

fn sweep_row(field: &ScalarField, family: &SimplexFamily, h: f64, reference: &VecN) -> ConvergenceRow {
    let simplex = family.generate(h);
    let tau = simplex.as_ref().map_or(f64::NAN, |s| s.tau());
    let (r_naive, r_mean) = match simplex {
        Ok(s) => (
            RowOutcome::from_result(secant_estimate(field, &s)),
            RowOutcome::from_result(estimate_gradient(field, &s).map(|e| e.value)),
        ),
        Err(e) => {
            let o = RowOutcome::from_result(Err(e));
            (o.clone(), o)
        }
    };
    let err = |o: &RowOutcome| o.value().map(|v| v.distance(reference)).filter(|e| e.is_finite());
    ConvergenceRow { h, tau, err_naive: err(&r_naive), err_mean: err(&r_mean), r_naive, r_mean }
}

/// Empirical order of `err_mean` in `h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum RateFit {
    /// Every error in the window is at the rounding floor.
    Exact,
    /// Least-squares slope of `ln err` against `ln h`.
    Slope(f64),
    /// Fewer than two usable rows.
    Insufficient,
}

impl RateFit {
    pub fn meets(&self, min_slope: f64) -> bool {
        match self {
            RateFit::Exact => true,
            RateFit::Slope(s) => *s >= min_slope,
            RateFit::Insufficient => false,
        }
    }
}

/// Fit the slope of `err_mean` over the rows with `h ≤ 10·h_min`.
pub fn last_decade_rate(rows: &[ConvergenceRow]) -> RateFit {
    let h_min = rows.iter().map(|r| r.h).fold(f64::INFINITY, f64::min);
    let window: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.h <= 10.0 * h_min * (1.0 + 1e-12))
        .filter_map(|r| r.err_mean.map(|e| (r.h, e)))
        .collect();
    fit_rate(&window)
}

/// Least-squares log-log slope for `(h, err)` pairs, ignoring errors at the floor.
pub fn fit_rate(points: &[(f64, f64)]) -> RateFit {
    if points.len() >= 2 && points.iter().all(|&(_, e)| e <= ERROR_FLOOR) {
        return RateFit::Exact;
    }
    let pts: Vec<(f64, f64)> =
        points.iter().filter(|&&(_, e)| e > ERROR_FLOOR).map(|&(h, e)| (h.ln(), e.ln())).collect();
    if pts.len() < 2 {
        return RateFit::Insufficient;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        RateFit::Insufficient
    } else {
        RateFit::Slope(sxy / sxx)
    }
}

/// Smallest `C` with `err_mean ≤ C·h` on every row that has an error.
pub fn linear_rate_constant(rows: &[ConvergenceRow]) -> Option<f64> {
    rows.iter().filter_map(|r| r.err_mean.map(|e| e / r.h)).reduce(f64::max)
}
