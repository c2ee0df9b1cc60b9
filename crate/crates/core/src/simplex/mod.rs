//! Simplices of `E_n` and their Clifford difference quotients.

mod quotient;

pub use quotient::{
    mean_multi_difference, mean_ratio, mean_ratio_via_quotient, multi_difference, secant_ratio,
    secant_ratio_linear_combination, SecantHyperplane,
};

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::ga::{pseudoscalar_inverse, Blade, Multivector, VecN, DEGENERACY_REL};
use crate::reflect::{build_mirror_chain, MirrorChain};

/// Ordered vertices `a_1 … a_{n+1}` of an n-simplex, with its pseudo-scalar
/// `Δ = ⋀_{i=2}^{n+1} (a_i − a_1)` and oriented volume `τ_n = Δ (I_n)^{-1} / n!`.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    vertices: Vec<VecN>,
    delta: Blade,
    tau: f64,
    diameter: f64,
    degenerate: bool,
}

impl Simplex {
    /// Build a simplex from `n+1` vertices of `E_n`. Flat simplices are
    /// accepted and flagged; use [`Simplex::ensure_nondegenerate`] where the
    /// quotients need `Δ^{-1}`.
    pub fn new(vertices: Vec<VecN>) -> Result<Self> {
        let dim = vertices.first().map(VecN::dim).unwrap_or(0);
        if vertices.len() != dim + 1 {
            return Err(Error::Shape(format!(
                "a simplex in E_{dim} needs {} vertices, got {}",
                dim + 1,
                vertices.len()
            )));
        }
        for v in &vertices {
            Error::check_dim(dim, v.dim())?;
        }
        let diffs: Vec<VecN> = vertices[1..].iter().map(|a| a - &vertices[0]).collect();
        let delta = Blade::from_factors(dim, diffs)?;
        let oriented = delta.value().geometric_product(&pseudoscalar_inverse(dim)?)?.scalar_part();
        let tau = oriented / factorial(dim);
        let mut diameter = 0.0f64;
        for (i, a) in vertices.iter().enumerate() {
            for b in &vertices[i + 1..] {
                diameter = diameter.max(a.distance(b));
            }
        }
        let degenerate = !(tau.abs() > DEGENERACY_REL * diameter.powi(dim as i32));
        Ok(Self { vertices, delta, tau, diameter, degenerate })
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[VecN] {
        &self.vertices
    }

    /// Zero-based vertex access (`vertex(0)` is `a_1`).
    pub fn vertex(&self, i: usize) -> &VecN {
        &self.vertices[i]
    }

    pub fn delta(&self) -> &Blade {
        &self.delta
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// `|τ_n|` must exceed this for the simplex to be usable.
    pub fn degeneracy_threshold(&self) -> f64 {
        DEGENERACY_REL * self.diameter.powi(self.dim() as i32)
    }

    pub fn ensure_nondegenerate(&self) -> Result<()> {
        if self.degenerate {
            Err(Error::DegenerateSimplex { tau: self.tau, threshold: self.degeneracy_threshold() })
        } else {
            Ok(())
        }
    }

    pub fn delta_inverse(&self) -> Result<Multivector> {
        self.ensure_nondegenerate()?;
        self.delta.inverse()
    }

    /// `Δ^i`: wedge of `Δa_j = a_j − a_1` over `j = 2 … n+1`, `j ≠ i`
    /// (one-based `i`, as in the quotient formulas).
    pub fn delta_i(&self, i: usize) -> Result<Blade> {
        let n = self.dim();
        if !(2..=n + 1).contains(&i) {
            return Err(Error::IndexOutOfRange { index: i, lo: 2, hi: n + 1 });
        }
        let factors = (2..=n + 1)
            .filter(|&j| j != i)
            .map(|j| &self.vertices[j - 1] - &self.vertices[0])
            .collect();
        Blade::from_factors(n, factors)
    }

    pub fn centroid(&self) -> VecN {
        let n = self.vertices.len() as f64;
        let mut c = VecN::zeros(self.dim());
        for v in &self.vertices {
            c = &c + v;
        }
        c.scale(1.0 / n)
    }

    /// The same vertex set in another order.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        Self::new(order.iter().map(|&i| self.vertices[i].clone()).collect())
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Mirrored points of a simplex together with the field values there.
#[derive(Debug, Clone, PartialEq)]
pub struct MirrorSamples {
    pub chain: MirrorChain,
    pub values: Vec<f64>,
}

/// A simplex with `f(a_i)` at each vertex and, when available, `f(ā_i)` at
/// each mirrored point.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSimplex {
    simplex: Simplex,
    values: Vec<f64>,
    mirror: Option<MirrorSamples>,
}

impl SampledSimplex {
    /// Vertex samples only. Supports the secant ratio `r_f`, not `r̄_f`.
    pub fn tabulated(simplex: Simplex, values: Vec<f64>) -> Result<Self> {
        if values.len() != simplex.vertices.len() {
            return Err(Error::Shape(format!(
                "{} vertex values for {} vertices",
                values.len(),
                simplex.vertices.len()
            )));
        }
        Ok(Self { simplex, values, mirror: None })
    }

    pub fn with_mirror(
        simplex: Simplex,
        values: Vec<f64>,
        chain: MirrorChain,
        mirror_values: Vec<f64>,
    ) -> Result<Self> {
        let mut s = Self::tabulated(simplex, values)?;
        if chain.mirrored().len() != mirror_values.len() {
            return Err(Error::Shape(format!(
                "{} mirror values for {} mirrored points",
                mirror_values.len(),
                chain.mirrored().len()
            )));
        }
        if chain.simplex() != &s.simplex {
            return Err(Error::Shape("mirror chain belongs to a different simplex".into()));
        }
        s.mirror = Some(MirrorSamples { chain, values: mirror_values });
        Ok(s)
    }

    /// Evaluate `field` at the `n+1` vertices and the `n−1` mirrored points.
    pub fn from_field(simplex: Simplex, field: &ScalarField) -> Result<Self> {
        Error::check_dim(field.dim(), simplex.dim())?;
        Self::from_fn(simplex, |p| field.eval(p))
    }

    /// As [`SampledSimplex::from_field`] for any evaluator. `f` is called
    /// exactly `2n` times: vertices in order, then mirrored points in order.
    pub fn from_fn(simplex: Simplex, mut f: impl FnMut(&VecN) -> Result<f64>) -> Result<Self> {
        simplex.ensure_nondegenerate()?;
        let chain = build_mirror_chain(&simplex)?;
        let values = simplex.vertices.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        let mirror_values = chain.mirrored().iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(Self { simplex, values, mirror: Some(MirrorSamples { chain, values: mirror_values }) })
    }

    pub fn simplex(&self) -> &Simplex {
        &self.simplex
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mirror(&self) -> Option<&MirrorSamples> {
        self.mirror.as_ref()
    }

    pub(crate) fn require_mirror(&self) -> Result<&MirrorSamples> {
        self.mirror.as_ref().ok_or_else(|| {
            Error::IncompleteSample("mean quotients need samples at the mirrored points".into())
        })
    }
}
