//! Coordinate-free gradient estimation with Clifford difference quotients.
//!
//! The crate is layered bottom-up:
//!
//! - [`ga`]: dense multivectors, blades, inversion, determinant quotients.
//! - [`reflect`]: reflections of vectors in blades and of points across
//!   affine flats, and the mirrored-point chain of a simplex.
//! - [`simplex`]: the secant ratio `r_f = Δf Δ^{-1}` and the mirrored mean
//!   ratio `r̄_f`, which converges to `∇f` on any contracting family of
//!   non-degenerate simplices.
//! - [`field`]: scalar fields (builtins, tabulated samples, parsed expressions).
//! - [`lab`]: gradient estimates, convergence sweeps, the Schwarz-paradox demo
//!   and per-cell mesh gradients.
//! - [`cli`]: the `cliffgrad` command line.

pub mod cli;
pub mod error;
pub mod field;
pub mod ga;
pub mod lab;
pub mod reflect;
pub mod report;
pub mod simplex;

pub use error::{Error, Result};
pub use field::ScalarField;
pub use ga::{Blade, Multivector, VecN};
pub use reflect::MirrorChain;
pub use simplex::{SampledSimplex, Simplex};
