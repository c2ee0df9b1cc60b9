use serde::{Deserialize, Serialize};

use super::estimate::{estimate_gradient, secant_estimate};
use crate::error::Result;
use crate::field::ScalarField;
use crate::ga::VecN;
use crate::simplex::Simplex;

/// α values of the demo table, ending at the verdict point.
pub const DEMO_ALPHAS: [f64; 7] = [0.6, 0.2, 0.1, 0.05, 0.01, 0.005, 0.001];
/// Tolerance on `|r̄_f|` in the demo verdicts.
pub const DEMO_MEAN_TOL: f64 = 1e-6;

/// The triangle `a = 0`, `b = (−α, β)`, `c = (α, β)` under `f = √(1 − x1²)`.
pub fn schwarz_triangle(alpha: f64, beta: f64) -> Result<Simplex> {
    Simplex::new(vec![VecN::zeros(2), VecN::from([-alpha, beta]), VecN::from([alpha, beta])])
}

/// `r_f · e2` in closed form for [`schwarz_triangle`]; `r_f · e1` is zero.
pub fn secant_coefficient_closed_form(alpha: f64, beta: f64) -> f64 {
    -alpha * alpha / (beta * (1.0 + (1.0 - alpha * alpha).sqrt()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchwarzRow {
    pub family: String,
    pub exponent: i32,
    pub alpha: f64,
    pub beta: f64,
    pub r_naive: VecN,
    pub r_mean: VecN,
    pub closed_form: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub family: String,
    pub passed: bool,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchwarzReport {
    pub rows: Vec<SchwarzRow>,
    pub verdicts: Vec<Verdict>,
}

impl SchwarzReport {
    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }
}

const FAMILIES: [(&str, i32); 3] =
    [("schwarz-linear", 1), ("schwarz-quadratic", 2), ("schwarz-cubic", 3)];

/// Secant and mean ratios along the three families `β = α^p`, `p = 1, 2, 3`.
pub fn schwarz_demo() -> Result<SchwarzReport> {
    let field = ScalarField::schwarz();
    let mut rows = Vec::new();
    for (name, p) in FAMILIES {
        for alpha in DEMO_ALPHAS {
            let beta = alpha.powi(p);
            let s = schwarz_triangle(alpha, beta)?;
            rows.push(SchwarzRow {
                family: name.to_string(),
                exponent: p,
                alpha,
                beta,
                r_naive: secant_estimate(&field, &s)?,
                r_mean: estimate_gradient(&field, &s)?.value,
                closed_form: secant_coefficient_closed_form(alpha, beta),
            });
        }
    }
    let verdicts = FAMILIES
        .iter()
        .map(|&(name, p)| {
            let last = rows.iter().filter(|r| r.exponent == p).last().expect("rows per family");
            verdict(name, p, last)
        })
        .collect();
    Ok(SchwarzReport { rows, verdicts })
}

fn verdict(name: &str, p: i32, row: &SchwarzRow) -> Verdict {
    let mean = row.r_mean.norm();
    let mean_ok = mean <= DEMO_MEAN_TOL;
    let (secant_ok, claim) = match p {
        1 => {
            let m = row.r_naive.norm();
            (m <= 1e-3, format!("secant planes tend to the tangent plane z=1 (|r_f| = {m:.3e})"))
        }
        2 => {
            let c = row.r_naive[1];
            (
                (c + 0.5).abs() <= 1e-3,
                format!("secant planes tend to z = 1 - y/2, limit -1/2, not tangent (r_f.e2 = {c:.6})"),
            )
        }
        _ => {
            let m = row.r_naive.norm();
            (
                m >= 100.0,
                format!("secant planes turn vertical, orthogonal to the tangent plane (|r_f| = {m:.3e})"),
            )
        }
    };
    let passed = secant_ok && mean_ok;
    Verdict {
        family: name.to_string(),
        passed,
        text: format!(
            "{} {name} at alpha={}: {claim}; mean ratio |r_mean| = {mean:.3e}",
            if passed { "PASS" } else { "FAIL" },
            row.alpha
        ),
    }
}
