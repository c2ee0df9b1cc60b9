use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{check_algebra_dim, VecN};
use crate::error::{Error, Result};

/// Dense element of `G_n = Cl(n,0,0)`.
///
/// Coefficients are indexed by basis-blade bitmask: bit `i` set means the
/// factor `e_{i+1}` is present, factors always in increasing order. So index
/// `0b101` in `G_3` is the coefficient of `e1 e3`.
#[derive(Clone, PartialEq)]
pub struct Multivector {
    dim: usize,
    coeffs: Vec<f64>,
}

/// Sign picked up when reordering the basis product `e_A e_B` into
/// canonical order. The metric is Euclidean, so repeated factors square to +1.
#[inline]
pub fn reorder_sign(a: usize, b: usize) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[inline]
pub fn grade_of(index: usize) -> usize {
    index.count_ones() as usize
}

impl Multivector {
    pub fn zero(dim: usize) -> Result<Self> {
        check_algebra_dim(dim)?;
        Ok(Self { dim, coeffs: vec![0.0; 1 << dim] })
    }

    pub fn scalar(dim: usize, value: f64) -> Result<Self> {
        let mut m = Self::zero(dim)?;
        m.coeffs[0] = value;
        Ok(m)
    }

    /// `coeff * e_{mask}`.
    pub fn basis_blade(dim: usize, mask: usize, coeff: f64) -> Result<Self> {
        let mut m = Self::zero(dim)?;
        if mask >= m.coeffs.len() {
            return Err(Error::IndexOutOfRange { index: mask, lo: 0, hi: m.coeffs.len() - 1 });
        }
        m.coeffs[mask] = coeff;
        Ok(m)
    }

    /// The basis vector `e_{i+1}` (zero-based `i`).
    pub fn basis_vector(dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(Error::IndexOutOfRange { index: i, lo: 0, hi: dim.saturating_sub(1) });
        }
        Self::basis_blade(dim, 1 << i, 1.0)
    }

    pub fn from_coeffs(dim: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_algebra_dim(dim)?;
        if coeffs.len() != 1 << dim {
            return Err(Error::Shape(format!(
                "G_{dim} needs {} coefficients, got {}",
                1usize << dim,
                coeffs.len()
            )));
        }
        Ok(Self { dim, coeffs })
    }

    pub fn from_vector(v: &VecN) -> Result<Self> {
        let mut m = Self::zero(v.dim())?;
        for (i, c) in v.components().iter().enumerate() {
            m.coeffs[1 << i] = *c;
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> f64 {
        self.coeffs.get(mask).copied().unwrap_or(0.0)
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        Error::check_dim(self.dim, other.dim)
    }

    /// The full product `self * other`.
    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = vec![0.0; self.coeffs.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                out[i ^ j] += reorder_sign(i, j) * a * b;
            }
        }
        Ok(Self { dim: self.dim, coeffs: out })
    }

    /// Outer product. Only basis pairs with disjoint factor sets contribute,
    /// which is the grade `r + s` part of each pairwise product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = vec![0.0; self.coeffs.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0.0 || i & j != 0 {
                    continue;
                }
                out[i | j] += reorder_sign(i, j) * a * b;
            }
        }
        Ok(Self { dim: self.dim, coeffs: out })
    }

    /// `self ∧ v` for a vector `v`, in `O(n 2^n)`.
    pub fn wedge_vector(&self, v: &VecN) -> Result<Self> {
        Error::check_dim(self.dim, v.dim())?;
        let mut out = vec![0.0; self.coeffs.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (k, &c) in v.components().iter().enumerate() {
                let bit = 1 << k;
                if c == 0.0 || i & bit != 0 {
                    continue;
                }
                out[i | bit] += reorder_sign(i, bit) * a * c;
            }
        }
        Ok(Self { dim: self.dim, coeffs: out })
    }

    /// Keep only the grade-`k` coefficients.
    pub fn grade(&self, k: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| if grade_of(i) == k { c } else { 0.0 })
            .collect();
        Self { dim: self.dim, coeffs }
    }

    /// Euclidean norm of the grade-`k` coefficients.
    pub fn grade_norm(&self, k: usize) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(i, _)| grade_of(*i) == k)
            .map(|(_, c)| c * c)
            .sum::<f64>()
            .sqrt()
    }

    /// Euclidean norm of every coefficient whose grade is not `k`.
    pub fn residual_norm(&self, k: usize) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(i, _)| grade_of(*i) != k)
            .map(|(_, c)| c * c)
            .sum::<f64>()
            .sqrt()
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Grades carrying a nonzero coefficient, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(i, _)| grade_of(i))
            .collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// Reverse `~A`: a grade-`k` part picks up `(-1)^{k(k-1)/2}`.
    pub fn reverse(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let k = grade_of(i);
                if (k * k.saturating_sub(1) / 2) % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        Self { dim: self.dim, coeffs }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { dim: self.dim, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(*a, *b)).collect();
        Self { dim: self.dim, coeffs }
    }

    /// The grade-1 part as a vector, ignoring all other grades.
    pub fn vector_part(&self) -> VecN {
        VecN::new((0..self.dim).map(|i| self.coeffs[1 << i]).collect())
    }

    /// Grade-1 extraction that refuses to drop a non-negligible residual.
    pub fn to_vector_checked(&self, rel_tol: f64) -> Result<VecN> {
        let residual = self.residual_norm(1);
        let tolerance = rel_tol * self.norm();
        if residual > tolerance {
            return Err(Error::GradeResidual { residual, tolerance });
        }
        Ok(self.vector_part())
    }

    /// Largest coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector<{}>({})", self.dim, self)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0.0 { " - " } else { " + " })?;
            } else if c < 0.0 {
                f.write_str("-")?;
            }
            first = false;
            write!(f, "{}", c.abs())?;
            for k in 0..self.dim {
                if i & (1 << k) != 0 {
                    write!(f, "e{}", k + 1)?;
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

// Operator sugar for same-dimension values. Mixing dimensions is a
// programming error here; use the `try_*` / `Result` methods for untrusted input.
impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.try_add(rhs).expect("multivector dimension mismatch")
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.try_sub(rhs).expect("multivector dimension mismatch")
    }
}

impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.geometric_product(rhs).expect("multivector dimension mismatch")
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}
