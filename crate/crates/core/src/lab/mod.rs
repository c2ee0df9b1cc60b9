//! Experiment drivers: gradient estimates, convergence sweeps over
//! contracting simplex families, the Schwarz demonstration and per-cell mesh
//! gradients.

mod estimate;
mod family;
mod mesh;
mod schwarz;
mod sweep;

pub use estimate::{estimate_gradient, secant_estimate, GradientEstimate};
pub use family::{FamilyKind, SimplexFamily, DEFAULT_ASPECT, ILL_SHAPED_MIN_TAU};
pub use mesh::{mesh_gradients, mesh_secant_gradients, CellGradient, CellOutcome, SimplicialMesh};
pub use schwarz::{
    schwarz_demo, schwarz_triangle, secant_coefficient_closed_form, SchwarzReport, SchwarzRow,
    Verdict, DEMO_ALPHAS, DEMO_MEAN_TOL,
};
pub use sweep::{
    convergence_sweep, convergence_sweep_with_reference, fit_rate, last_decade_rate,
    linear_rate_constant, log_scales, ConvergenceRow, RateFit, RowOutcome, ERROR_FLOOR,
};
