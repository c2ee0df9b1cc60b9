//! Reflections in linear subspaces and affine flats, and the mirrored-point
//! chain of a simplex.
//!
//! For a simplex `a_1 … a_{n+1}`, the point `ā_i` (i = 1 … n−1) is the mirror
//! image of `a_i` across the flat through `a_{i+1} … a_{n+1}`. The resulting
//! differences
//!
//! ```text
//! ā_1 − a_1, …, ā_{n−1} − a_{n−1}, a_{n+1} − a_n
//! ```
//!
//! are mutually orthogonal and their wedge is `2^{n−1} Δ`.

use crate::error::{Error, Result};
use crate::ga::{graded_anticommutator, vector_from_quotient, Blade, Multivector, VecN};
use crate::simplex::Simplex;

/// `û = u v u^{-1}`: keeps the component of `v` along `u`, flips the rest.
pub fn reflect_vector_in_vector(v: &VecN, u: &VecN) -> Result<VecN> {
    Error::check_dim(u.dim(), v.dim())?;
    let blade = Blade::from_factors(u.dim(), vec![u.clone()])?;
    reflect_vector_in_blade(v, &blade)
}

/// `v̂ = (−1)^{k+1} B v B^{-1}` for a k-blade `B`: the component of `v` in the
/// span of `B` is kept, the orthogonal component is negated.
pub fn reflect_vector_in_blade(v: &VecN, b: &Blade) -> Result<VecN> {
    Error::check_dim(b.dim(), v.dim())?;
    let inv = b.inverse()?;
    let sandwich = b.value().geometric_product(&v.to_multivector()?)?.geometric_product(&inv)?;
    let sign = if b.grade() % 2 == 1 { 1.0 } else { -1.0 };
    vector_from_quotient(&sandwich.scale(sign))
}

/// An affine flat `base + span(directions)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFlat {
    base: VecN,
    directions: Vec<VecN>,
    blade: Blade,
}

impl AffineFlat {
    pub fn new(base: VecN, directions: Vec<VecN>) -> Result<Self> {
        for d in &directions {
            Error::check_dim(base.dim(), d.dim())?;
        }
        let blade = Blade::from_factors(base.dim(), directions.clone())?;
        Ok(Self { base, directions, blade })
    }

    /// The flat through `points`, based at the first one.
    pub fn through(points: &[VecN]) -> Result<Self> {
        let (base, rest) = points
            .split_first()
            .ok_or_else(|| Error::Shape("a flat needs at least one point".into()))?;
        let directions = rest.iter().map(|p| p.try_sub(base)).collect::<Result<Vec<_>>>()?;
        Self::new(base.clone(), directions)
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn base(&self) -> &VecN {
        &self.base
    }

    pub fn directions(&self) -> &[VecN] {
        &self.directions
    }

    pub fn blade(&self) -> &Blade {
        &self.blade
    }

    pub fn is_degenerate(&self) -> bool {
        self.blade.is_degenerate()
    }
}

/// Mirror image of the point `a` across `flat`.
pub fn mirror_point_across_flat(a: &VecN, flat: &AffineFlat) -> Result<VecN> {
    Error::check_dim(flat.dim(), a.dim())?;
    let v = a - flat.base();
    Ok(flat.base() + &reflect_vector_in_blade(&v, flat.blade())?)
}

/// The mirrored points `ā_1 … ā_{n−1}` of a simplex, the flats `L_i` they were
/// reflected across, and the orthogonal chain differences.
#[derive(Debug, Clone, PartialEq)]
pub struct MirrorChain {
    simplex: Simplex,
    mirrored: Vec<VecN>,
    flats: Vec<AffineFlat>,
    diffs: Vec<VecN>,
}

/// Reflect each `a_i` across the flat through `a_{i+1} … a_{n+1}`.
pub fn build_mirror_chain(s: &Simplex) -> Result<MirrorChain> {
    s.ensure_nondegenerate()?;
    let n = s.dim();
    let verts = s.vertices();
    let mut mirrored = Vec::with_capacity(n.saturating_sub(1));
    let mut flats = Vec::with_capacity(n.saturating_sub(1));
    let mut diffs = Vec::with_capacity(n);
    for i in 0..n - 1 {
        let flat = AffineFlat::through(&verts[i + 1..])?;
        let bar = mirror_point_across_flat(&verts[i], &flat)?;
        diffs.push(&bar - &verts[i]);
        mirrored.push(bar);
        flats.push(flat);
    }
    diffs.push(&verts[n] - &verts[n - 1]);
    Ok(MirrorChain { simplex: s.clone(), mirrored, flats, diffs })
}

impl MirrorChain {
    pub fn simplex(&self) -> &Simplex {
        &self.simplex
    }

    /// `ā_1 … ā_{n−1}`.
    pub fn mirrored(&self) -> &[VecN] {
        &self.mirrored
    }

    pub fn flats(&self) -> &[AffineFlat] {
        &self.flats
    }

    /// `L_1 … L_{n−1}`.
    pub fn flat_blades(&self) -> impl Iterator<Item = &Blade> {
        self.flats.iter().map(AffineFlat::blade)
    }

    /// `ā_i − a_i` for `i < n`, then `a_{n+1} − a_n`.
    pub fn diffs(&self) -> &[VecN] {
        &self.diffs
    }

    pub fn min_diff_norm(&self) -> f64 {
        self.diffs.iter().map(VecN::norm).fold(f64::INFINITY, f64::min)
    }

    /// Largest `|d_i · d_j| / (|d_i| |d_j|)` over distinct chain differences.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.diffs.iter().enumerate() {
            for b in &self.diffs[i + 1..] {
                worst = worst.max(a.dot_unchecked(b).abs() / (a.norm() * b.norm()));
            }
        }
        worst
    }

    /// `d_1 ∧ ⋯ ∧ d_n`.
    pub fn diff_wedge(&self) -> Result<Multivector> {
        let n = self.simplex.dim();
        self.diffs.iter().try_fold(Multivector::scalar(n, 1.0)?, |acc, d| acc.wedge_vector(d))
    }

    /// `d_1 d_2 ⋯ d_n` as a geometric product.
    pub fn diff_product(&self) -> Result<Multivector> {
        let n = self.simplex.dim();
        self.diffs
            .iter()
            .try_fold(Multivector::scalar(n, 1.0)?, |acc, d| acc.geometric_product(&d.to_multivector()?))
    }

    /// Relative deviation of `d_1 ∧ ⋯ ∧ d_n` from `2^{n−1} Δ`.
    pub fn hyperoctahedron_defect(&self) -> Result<f64> {
        let n = self.simplex.dim();
        let expected = self.simplex.delta().scaled_value(2f64.powi(n as i32 - 1));
        let got = self.diff_wedge()?;
        Ok(got.try_sub(&expected)?.norm() / expected.norm())
    }

    /// Relative deviation between the product and the wedge of the chain.
    pub fn product_wedge_defect(&self) -> Result<f64> {
        let w = self.diff_wedge()?;
        let p = self.diff_product()?;
        Ok(p.try_sub(&w)?.norm() / w.norm())
    }

    /// Largest relative gap between `|ā_i − a_{i+1}|` and `|a_i − a_{i+1}|`.
    pub fn equidistance_defect(&self) -> f64 {
        let v = self.simplex.vertices();
        self.mirrored
            .iter()
            .enumerate()
            .map(|(i, bar)| {
                let want = v[i].distance(&v[i + 1]);
                (bar.distance(&v[i + 1]) - want).abs() / want
            })
            .fold(0.0, f64::max)
    }

    /// Relative deviation of `(a_{i+1} − a_i) ⩓ L_i` from `L_{i−1}`
    /// for one-based `i` in `2 ..= n−1`.
    pub fn telescopic_defect(&self, i: usize) -> Result<f64> {
        let n = self.simplex.dim();
        if n < 3 || !(2..=n - 1).contains(&i) {
            return Err(Error::IndexOutOfRange { index: i, lo: 2, hi: n.saturating_sub(1) });
        }
        let v = self.simplex.vertices();
        let step = &v[i] - &v[i - 1];
        let lhs = graded_anticommutator(&step, self.flats[i - 1].blade())?;
        let rhs = self.flats[i - 2].blade().value();
        Ok(lhs.try_sub(rhs)?.norm() / rhs.norm())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> VecN {
        VecN::new(c.to_vec())
    }

    #[test]
    fn reflect_in_vector_examples() {
        let e1 = VecN::basis(2, 0);
        let e2 = VecN::basis(2, 1);
        assert_eq!(reflect_vector_in_vector(&e1, &e2).unwrap(), -&e1);
        assert_eq!(reflect_vector_in_vector(&e1, &e1).unwrap(), e1);
        let r = reflect_vector_in_vector(&v(&[1.0, 1.0]), &v(&[1.0, 0.0])).unwrap();
        assert!(r.max_abs_diff(&v(&[1.0, -1.0])) < 1e-15);
        assert!(reflect_vector_in_vector(&e1, &VecN::zeros(2)).is_err());
    }

    #[test]
    fn reflect_in_blade_examples() {
        let b = Blade::from_factors(3, vec![VecN::basis(3, 0), VecN::basis(3, 1)]).unwrap();
        assert_eq!(reflect_vector_in_blade(&VecN::basis(3, 2), &b).unwrap(), v(&[0.0, 0.0, -1.0]));
        assert_eq!(reflect_vector_in_blade(&VecN::basis(3, 0), &b).unwrap(), VecN::basis(3, 0));
        let r = reflect_vector_in_blade(&v(&[1.0, 1.0, 1.0]), &b).unwrap();
        assert!(r.max_abs_diff(&v(&[1.0, 1.0, -1.0])) < 1e-15);
    }

    #[test]
    fn mirror_point_examples() {
        let flat = AffineFlat::through(&[v(&[1.0, 1.0]), v(&[0.0, 0.0])]).unwrap();
        assert!(mirror_point_across_flat(&v(&[0.0, 0.0]), &flat).unwrap().norm() < 1e-15);
        let m = mirror_point_across_flat(&v(&[-1.0, 1.0]), &flat).unwrap();
        assert!(m.max_abs_diff(&v(&[1.0, -1.0])) < 1e-15);

        let plane = AffineFlat::through(&[
            VecN::basis(3, 0),
            VecN::basis(3, 1),
            VecN::basis(3, 2),
        ])
        .unwrap();
        let m = mirror_point_across_flat(&VecN::zeros(3), &plane).unwrap();
        assert!(m.max_abs_diff(&v(&[2.0 / 3.0; 3])) < 1e-15);
    }

    #[test]
    fn degenerate_flat_is_rejected() {
        let flat = AffineFlat::through(&[v(&[1.0, 1.0]), v(&[1.0, 1.0])]).unwrap();
        assert!(flat.is_degenerate());
        assert!(matches!(
            mirror_point_across_flat(&v(&[0.0, 0.0]), &flat),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn schwarz_triangle_chain() {
        let (alpha, beta) = (1.0, 1.0);
        let s = Simplex::new(vec![v(&[0.0, 0.0]), v(&[-alpha, beta]), v(&[alpha, beta])]).unwrap();
        let chain = build_mirror_chain(&s).unwrap();
        assert!(chain.mirrored()[0].max_abs_diff(&v(&[0.0, 2.0 * beta])) < 1e-15);
    }

    #[test]
    fn standard_tetrahedron_chain() {
        let s = Simplex::new(vec![
            VecN::zeros(3),
            VecN::basis(3, 0),
            VecN::basis(3, 1),
            VecN::basis(3, 2),
        ])
        .unwrap();
        let chain = build_mirror_chain(&s).unwrap();
        assert!(chain.mirrored()[0].max_abs_diff(&v(&[2.0 / 3.0; 3])) < 1e-15);
        assert!(chain.mirrored()[1].max_abs_diff(&v(&[-1.0, 1.0, 1.0])) < 1e-15);
        let w = chain.diff_wedge().unwrap();
        assert!((w.coeff(0b111) - 4.0).abs() < 1e-14);
        assert!(chain.hyperoctahedron_defect().unwrap() < 1e-14);
        assert!(chain.orthogonality_defect() < 1e-15);
    }

    #[test]
    fn degenerate_simplex_has_no_chain() {
        let s = Simplex::new(vec![v(&[0.0, 0.0]), v(&[1.0, 1.0]), v(&[2.0, 2.0])]).unwrap();
        assert!(matches!(build_mirror_chain(&s), Err(Error::DegenerateSimplex { .. })));
    }

    #[test]
    fn two_dimensional_diagonal_identity() {
        // (ā − a) ∧ (c − b) = 2Δ, and the product equals the wedge.
        let (a, b, c) = (v(&[0.2, -0.1]), v(&[1.3, 0.4]), v(&[-0.5, 1.1]));
        let s = Simplex::new(vec![a.clone(), b.clone(), c.clone()]).unwrap();
        let chain = build_mirror_chain(&s).unwrap();
        let d = &chain.mirrored()[0] - &a;
        let cb = &c - &b;
        let w = crate::ga::vector_wedge(&d, &cb).unwrap();
        let p = crate::ga::vector_product(&d, &cb).unwrap();
        assert!(w.max_abs_diff(&s.delta().scaled_value(2.0)) < 1e-14);
        assert!(p.max_abs_diff(&w) < 1e-14);
    }

    #[test]
    fn telescopic_index_range() {
        let s = Simplex::new(vec![
            VecN::zeros(3),
            VecN::basis(3, 0),
            VecN::basis(3, 1),
            VecN::basis(3, 2),
        ])
        .unwrap();
        let chain = build_mirror_chain(&s).unwrap();
        assert!(chain.telescopic_defect(2).unwrap() < 1e-14);
        assert!(chain.telescopic_defect(1).is_err());
        assert!(chain.telescopic_defect(3).is_err());
    }
}
