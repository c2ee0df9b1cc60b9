use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{Multivector, DEGENERACY_REL};
use crate::error::{Error, Result};

/// A vector of `E_n`, stored by its Cartesian components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VecN(Vec<f64>);

impl VecN {
    pub fn new(components: Vec<f64>) -> Self {
        Self(components)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    /// Unit vector `e_{i+1}`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn into_components(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &Self) -> Result<f64> {
        Error::check_dim(self.dim(), other.dim())?;
        Ok(self.dot_unchecked(other))
    }

    pub(crate) fn dot_unchecked(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot_unchecked(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.iter().map(|c| c * s).collect())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Error::check_dim(self.dim(), other.dim())?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        Error::check_dim(self.dim(), other.dim())?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// `v^{-1} = v / |v|^2`. Fails only when `|v|^2` is zero or not invertible
    /// in floating point; use [`VecN::inverse_at_scale`] when a reference
    /// length is known.
    pub fn inverse(&self) -> Result<Self> {
        let nsq = self.norm_sq();
        if nsq == 0.0 || !(1.0 / nsq).is_finite() {
            return Err(Error::DegenerateInput(format!("vector {:?} has no inverse", self.0)));
        }
        Ok(self.scale(1.0 / nsq))
    }

    /// Inverse that also treats `|v| <= DEGENERACY_REL * scale` as zero.
    pub fn inverse_at_scale(&self, scale: f64) -> Result<Self> {
        if self.norm() <= DEGENERACY_REL * scale {
            return Err(Error::DegenerateInput(format!(
                "vector {:?} is negligible at length scale {scale:e}",
                self.0
            )));
        }
        self.inverse()
    }

    pub fn to_multivector(&self) -> Result<Multivector> {
        Multivector::from_vector(self)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

impl From<Vec<f64>> for VecN {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[f64; N]> for VecN {
    fn from(v: [f64; N]) -> Self {
        Self(v.to_vec())
    }
}

impl Index<usize> for VecN {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &VecN {
    type Output = VecN;
    fn add(self, rhs: &VecN) -> VecN {
        self.try_add(rhs).expect("vector dimension mismatch")
    }
}

impl Sub for &VecN {
    type Output = VecN;
    fn sub(self, rhs: &VecN) -> VecN {
        self.try_sub(rhs).expect("vector dimension mismatch")
    }
}

impl Mul<f64> for &VecN {
    type Output = VecN;
    fn mul(self, rhs: f64) -> VecN {
        self.scale(rhs)
    }
}

impl Neg for &VecN {
    type Output = VecN;
    fn neg(self) -> VecN {
        self.scale(-1.0)
    }
}
