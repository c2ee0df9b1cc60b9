use super::{Multivector, VecN, DEGENERACY_REL, GRADE_RESIDUAL_REL};
use crate::error::{Error, Result};

/// A k-blade kept in both factored and dense form.
///
/// `factors` are the vectors whose wedge gives `value`. A blade with no
/// factors is the scalar `1` (grade 0).
#[derive(Debug, Clone, PartialEq)]
pub struct Blade {
    factors: Vec<VecN>,
    value: Multivector,
    degenerate: bool,
}

impl Blade {
    pub fn from_factors(dim: usize, factors: Vec<VecN>) -> Result<Self> {
        let mut value = Multivector::scalar(dim, 1.0)?;
        for f in &factors {
            value = value.wedge_vector(f)?;
        }
        let scale = factors.iter().fold(0.0f64, |m, f| m.max(f.norm()));
        let degenerate = value.norm() <= DEGENERACY_REL * scale.powi(factors.len() as i32)
            || value.norm() == 0.0;
        Ok(Self { factors, value, degenerate })
    }

    pub fn scalar_one(dim: usize) -> Result<Self> {
        Self::from_factors(dim, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.value.dim()
    }

    pub fn grade(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[VecN] {
        &self.factors
    }

    pub fn value(&self) -> &Multivector {
        &self.value
    }

    /// Linearly dependent factors (at the relative degeneracy tolerance).
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// The scalar `B^2`.
    pub fn square(&self) -> f64 {
        // B^2 = (-1)^{k(k-1)/2} |B|^2 for a Euclidean k-blade.
        let k = self.grade();
        let nsq = self.value.norm().powi(2);
        if (k * k.saturating_sub(1) / 2) % 2 == 0 {
            nsq
        } else {
            -nsq
        }
    }

    /// `B^{-1} = B / B^2`.
    pub fn inverse(&self) -> Result<Multivector> {
        if self.degenerate {
            return Err(Error::DegenerateInput(format!(
                "grade-{} blade with dependent factors has no inverse",
                self.grade()
            )));
        }
        Ok(self.value.scale(1.0 / self.square()))
    }

    /// `B^2` computed as a full geometric product, with its non-scalar residual.
    /// Used to verify that `value` really is a blade.
    pub fn square_by_product(&self) -> (f64, f64) {
        let sq = &self.value * &self.value;
        (sq.scalar_part(), sq.residual_norm(0))
    }

    /// Append one more factor: `self ∧ v`.
    pub fn wedge_vector(&self, v: &VecN) -> Result<Self> {
        let mut factors = self.factors.clone();
        factors.push(v.clone());
        Self::from_factors(self.dim(), factors)
    }

    pub fn scaled_value(&self, s: f64) -> Multivector {
        self.value.scale(s)
    }
}

/// `v ∘ B = ½(vB − (−1)^k Bv)`, the grade `k−1` part of `vB`.
pub fn graded_commutator(v: &VecN, b: &Blade) -> Result<Multivector> {
    let (vb, bv) = both_products(v, b)?;
    let sign = if b.grade() % 2 == 0 { 1.0 } else { -1.0 };
    Ok((&vb - &bv.scale(sign)).scale(0.5))
}

/// `v ⩓ B = ½(vB + (−1)^k Bv)`, the grade `k+1` part of `vB`.
pub fn graded_anticommutator(v: &VecN, b: &Blade) -> Result<Multivector> {
    let (vb, bv) = both_products(v, b)?;
    let sign = if b.grade() % 2 == 0 { 1.0 } else { -1.0 };
    Ok((&vb + &bv.scale(sign)).scale(0.5))
}

fn both_products(v: &VecN, b: &Blade) -> Result<(Multivector, Multivector)> {
    Error::check_dim(b.dim(), v.dim())?;
    let mv = v.to_multivector()?;
    Ok((mv.geometric_product(b.value())?, b.value().geometric_product(&mv)?))
}

/// The orientation `I_n = e1 e2 ... en`.
pub fn pseudoscalar(dim: usize) -> Result<Blade> {
    super::check_algebra_dim(dim)?;
    Blade::from_factors(dim, (0..dim).map(|i| VecN::basis(dim, i)).collect())
}

/// `(I_n)^{-1} = (−1)^{n(n−1)/2} I_n`.
pub fn pseudoscalar_inverse(dim: usize) -> Result<Multivector> {
    pseudoscalar(dim)?.inverse()
}

/// Check the blade invariants: `B^2` is a scalar and `B B^{-1} = 1`.
/// Returns the larger of the two relative defects.
pub fn blade_defect(b: &Blade) -> Result<f64> {
    let (sq, resid) = b.square_by_product();
    let inv = b.inverse()?;
    let one = b.value() * &inv;
    let unit_defect = (one.scalar_part() - 1.0).abs().max(one.residual_norm(0));
    Ok((resid / sq.abs().max(f64::MIN_POSITIVE)).max(unit_defect))
}

pub(crate) fn vector_from_quotient(m: &Multivector) -> Result<VecN> {
    m.to_vector_checked(GRADE_RESIDUAL_REL)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e12(dim: usize) -> Blade {
        Blade::from_factors(dim, vec![VecN::basis(dim, 0), VecN::basis(dim, 1)]).unwrap()
    }

    #[test]
    fn invert_unit_bivector() {
        let inv = e12(2).inverse().unwrap();
        assert_eq!(inv, Multivector::basis_blade(2, 0b11, -1.0).unwrap());
    }

    #[test]
    fn invert_i3_is_minus_i3() {
        let i3 = pseudoscalar(3).unwrap();
        assert_eq!(i3.inverse().unwrap(), i3.value().scale(-1.0));
    }

    #[test]
    fn invert_scaled_pseudoscalar() {
        let tau = 0.75;
        let b = Blade::from_factors(2, vec![VecN::from([2.0 * tau, 0.0]), VecN::from([0.0, 1.0])])
            .unwrap();
        let expected = pseudoscalar_inverse(2).unwrap().scale(1.0 / (2.0 * tau));
        assert!(b.inverse().unwrap().max_abs_diff(&expected) < 1e-16);
    }

    #[test]
    fn pseudoscalar_examples() {
        assert_eq!(pseudoscalar(2).unwrap().value(), e12(2).value());
        assert_eq!(pseudoscalar(1).unwrap().value(), &Multivector::basis_vector(1, 0).unwrap());
        // e4e3e2e1 = (-1)^{6} e1e2e3e4
        let inv4 = pseudoscalar_inverse(4).unwrap();
        assert_eq!(inv4, Multivector::basis_blade(4, 0b1111, 1.0).unwrap());
        for n in 1..=8 {
            let sign = if (n * (n - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(pseudoscalar_inverse(n).unwrap(), pseudoscalar(n).unwrap().value().scale(sign));
        }
    }

    #[test]
    fn degenerate_blade_is_rejected() {
        let b = Blade::from_factors(3, vec![VecN::from([1.0, 2.0, 3.0]), VecN::from([2.0, 4.0, 6.0])])
            .unwrap();
        assert!(b.is_degenerate());
        assert!(matches!(b.inverse(), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn commutator_examples() {
        let v = VecN::from([1.0, 2.0, 3.0]);
        let u = VecN::from([-1.0, 0.5, 2.0]);
        let bu = Blade::from_factors(3, vec![u.clone()]).unwrap();
        let c = graded_commutator(&v, &bu).unwrap();
        assert!((c.scalar_part() - v.dot(&u).unwrap()).abs() < 1e-14);
        assert!(c.residual_norm(0) < 1e-14);

        let u2 = VecN::from([0.0, 1.0, -1.0]);
        let b = Blade::from_factors(3, vec![u.clone(), u2.clone()]).unwrap();
        let got = graded_commutator(&v, &b).unwrap();
        let expected = &u2.scale(v.dot(&u).unwrap()) - &u.scale(v.dot(&u2).unwrap());
        assert!(got.max_abs_diff(&expected.to_multivector().unwrap()) < 1e-13);

        let e3 = VecN::basis(3, 2);
        assert_eq!(graded_commutator(&e3, &e12(3)).unwrap().norm(), 0.0);
    }

    #[test]
    fn anticommutator_examples() {
        let e1 = VecN::basis(3, 0);
        let e3 = VecN::basis(3, 2);
        assert_eq!(graded_anticommutator(&e1, &e12(3)).unwrap().norm(), 0.0);
        assert_eq!(
            graded_anticommutator(&e3, &e12(3)).unwrap(),
            Multivector::basis_blade(3, 0b111, 1.0).unwrap()
        );
    }

    #[test]
    fn commutator_plus_anticommutator_is_product() {
        let v = VecN::from([0.2, -1.0, 0.7, 1.1]);
        let b = Blade::from_factors(
            4,
            vec![VecN::from([1.0, 0.0, 2.0, -1.0]), VecN::from([0.0, 3.0, 1.0, 1.0]), VecN::from([1.0, 1.0, 1.0, 0.0])],
        )
        .unwrap();
        let sum = &graded_commutator(&v, &b).unwrap() + &graded_anticommutator(&v, &b).unwrap();
        let prod = &v.to_multivector().unwrap() * b.value();
        assert!(sum.max_abs_diff(&prod) < 1e-13);
    }

    #[test]
    fn factor_of_bivector_anticommutes() {
        // u_i B = -B u_i for a factor u_i of a 2-blade whose factors are orthogonal.
        let u1 = VecN::from([1.0, 1.0, 0.0]);
        let u2 = VecN::from([1.0, -1.0, 2.0]);
        let b = Blade::from_factors(3, vec![u1.clone(), u2]).unwrap();
        let mu = u1.to_multivector().unwrap();
        let lhs = &mu * b.value();
        let rhs = -&(b.value() * &mu);
        assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn blade_square_is_scalar() {
        let b = Blade::from_factors(
            5,
            vec![
                VecN::from([1.0, 2.0, 0.0, -1.0, 0.5]),
                VecN::from([0.0, 1.0, 3.0, 1.0, -2.0]),
                VecN::from([2.0, 0.0, 1.0, 1.0, 1.0]),
            ],
        )
        .unwrap();
        assert!(blade_defect(&b).unwrap() < 1e-12);
        let (sq, _) = b.square_by_product();
        assert!((sq - b.square()).abs() < 1e-12 * sq.abs());
    }
}
