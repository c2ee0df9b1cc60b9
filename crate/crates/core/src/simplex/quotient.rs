use super::SampledSimplex;
use crate::error::{Error, Result};
use crate::ga::{vector_from_quotient, Multivector, VecN};

/// `Δf = Σ_{i=2}^{n+1} (−1)^i [f(a_i) − f(a_1)] Δ^i`, a grade `n−1` element.
pub fn multi_difference(s: &SampledSimplex) -> Result<Multivector> {
    let simplex = s.simplex();
    simplex.ensure_nondegenerate()?;
    let n = simplex.dim();
    let f1 = s.values()[0];
    let mut acc = Multivector::zero(n)?;
    for i in 2..=n + 1 {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let df = s.values()[i - 1] - f1;
        acc = acc.try_add(&simplex.delta_i(i)?.scaled_value(sign * df))?;
    }
    Ok(acc)
}

/// The secant ratio `r_f = Δf Δ^{-1}`: the unique vector for which
/// `z = f(a_1) + r_f · (x − a_1)` passes through every sampled graph point.
pub fn secant_ratio(s: &SampledSimplex) -> Result<VecN> {
    let q = multi_difference(s)?.geometric_product(&s.simplex().delta_inverse()?)?;
    vector_from_quotient(&q)
}

/// Planar closed form of `r_f` in terms of `Δb = b − a`, `Δc = c − a`:
///
/// ```text
/// r_f = [(Δf_b |Δc|² − Δf_c Δb·Δc) Δb + (Δf_c |Δb|² − Δf_b Δb·Δc) Δc]
///       / (|Δb|² |Δc|² − (Δb·Δc)²)
/// ```
pub fn secant_ratio_linear_combination(s: &SampledSimplex) -> Result<VecN> {
    let simplex = s.simplex();
    if simplex.dim() != 2 {
        return Err(Error::Shape(format!(
            "the planar closed form needs n = 2, got n = {}",
            simplex.dim()
        )));
    }
    simplex.ensure_nondegenerate()?;
    let v = simplex.vertices();
    let (db, dc) = (&v[1] - &v[0], &v[2] - &v[0]);
    let (fb, fc) = (s.values()[1] - s.values()[0], s.values()[2] - s.values()[0]);
    let (bb, cc, bc) = (db.norm_sq(), dc.norm_sq(), db.dot_unchecked(&dc));
    let gram = bb * cc - bc * bc;
    let cb = (fb * cc - fc * bc) / gram;
    let cc_ = (fc * bb - fb * bc) / gram;
    Ok(&db.scale(cb) + &dc.scale(cc_))
}

/// The mean multi-difference pseudo-vector
///
/// ```text
/// Δ̄f = 2^{1−n} { Σ_{i=1}^{n−1} (−1)^{i+1} [f(ā_i) − f(a_i)] Δ̄^i
///               + (−1)^{n+1} [f(a_{n+1}) − f(a_n)] Δ̄ }
/// ```
///
/// with `Δ̄ = ⋀_{i<n} (ā_i − a_i)` and `Δ̄^i` the same wedge with the `i`-th
/// factor dropped and `a_{n+1} − a_n` appended.
pub fn mean_multi_difference(s: &SampledSimplex) -> Result<Multivector> {
    let samples = s.require_mirror()?;
    let simplex = s.simplex();
    simplex.ensure_nondegenerate()?;
    let n = simplex.dim();
    let diffs = samples.chain.diffs();
    let (head, last) = diffs.split_at(n - 1);
    let last = &last[0];
    let vals = s.values();

    let wedge = |skip: Option<usize>| -> Result<Multivector> {
        head.iter()
            .enumerate()
            .filter(|(j, _)| Some(*j) != skip)
            .try_fold(Multivector::scalar(n, 1.0)?, |acc, (_, d)| acc.wedge_vector(d))
    };

    let mut acc = Multivector::zero(n)?;
    for i in 0..n - 1 {
        // one-based index i+1: sign (−1)^{i+2} = (−1)^i
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let df = samples.values[i] - vals[i];
        let bar_i = wedge(Some(i))?.wedge_vector(last)?;
        acc = acc.try_add(&bar_i.scale(sign * df))?;
    }
    let sign = if (n + 1) % 2 == 0 { 1.0 } else { -1.0 };
    let df = vals[n] - vals[n - 1];
    acc = acc.try_add(&wedge(None)?.scale(sign * df))?;
    Ok(acc.scale(0.5f64.powi(n as i32 - 1)))
}

/// `r̄_f` as a sum of scalar-over-vector quotients along the orthogonal chain:
///
/// ```text
/// r̄_f = Σ_{i<n} [f(ā_i) − f(a_i)] (ā_i − a_i)^{-1} + [f(a_{n+1}) − f(a_n)] (a_{n+1} − a_n)^{-1}
/// ```
pub fn mean_ratio(s: &SampledSimplex) -> Result<VecN> {
    let samples = s.require_mirror()?;
    let simplex = s.simplex();
    simplex.ensure_nondegenerate()?;
    let n = simplex.dim();
    let vals = s.values();
    let scale = simplex.diameter();
    let mut acc = VecN::zeros(n);
    for (i, d) in samples.chain.diffs().iter().enumerate() {
        let df = if i + 1 < n { samples.values[i] - vals[i] } else { vals[n] - vals[n - 1] };
        acc = &acc + &d.inverse_at_scale(scale)?.scale(df);
    }
    Ok(acc)
}

/// `r̄_f = Δ̄f Δ^{-1}` via the full multivector quotient. Returns the vector
/// and the norm of the discarded non-vector grades.
pub fn mean_ratio_via_quotient(s: &SampledSimplex) -> Result<(VecN, f64)> {
    let q = mean_multi_difference(s)?.geometric_product(&s.simplex().delta_inverse()?)?;
    let residual = q.residual_norm(1);
    Ok((vector_from_quotient(&q)?, residual))
}

/// `z = f(a_1) + ratio · (x − a_1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SecantHyperplane {
    pub anchor: VecN,
    pub anchor_value: f64,
    pub ratio: VecN,
}

impl SecantHyperplane {
    pub fn secant(s: &SampledSimplex) -> Result<Self> {
        Ok(Self::with_ratio(s, secant_ratio(s)?))
    }

    pub fn mean(s: &SampledSimplex) -> Result<Self> {
        Ok(Self::with_ratio(s, mean_ratio(s)?))
    }

    fn with_ratio(s: &SampledSimplex, ratio: VecN) -> Self {
        Self { anchor: s.simplex().vertex(0).clone(), anchor_value: s.values()[0], ratio }
    }

    pub fn eval(&self, x: &VecN) -> Result<f64> {
        Ok(self.anchor_value + self.ratio.dot(&x.try_sub(&self.anchor)?)?)
    }

    /// Largest `|z(a_i) − f(a_i)|` over the sampled vertices.
    pub fn max_vertex_residual(&self, s: &SampledSimplex) -> Result<f64> {
        s.simplex()
            .vertices()
            .iter()
            .zip(s.values())
            .map(|(p, f)| Ok((self.eval(p)? - f).abs()))
            .try_fold(0.0f64, |m, r: Result<f64>| Ok(m.max(r?)))
    }
}
