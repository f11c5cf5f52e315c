use std::ops::Index;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::scalar::Real;

/// Column of quaternion coefficients on the basis `e_0..e_{N-1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QVector<T> {
    coeffs: Vec<Quaternion<T>>,
}

impl<T: Real> QVector<T> {
    pub fn new(coeffs: Vec<Quaternion<T>>) -> Self {
        Self { coeffs }
    }

    pub fn zeros(n: usize) -> Self {
        Self { coeffs: vec![Quaternion::zero(); n] }
    }

    /// The basis vector `e_k`.
    pub fn basis(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::DimTooSmall { min: k + 1, got: n });
        }
        let mut v = Self::zeros(n);
        v.coeffs[k] = Quaternion::from_real(T::one());
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Quaternion<T>] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Quaternion<T>] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Quaternion<T>> {
        self.coeffs
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.dim() != o.dim() {
            return Err(Error::DimMismatch { left: self.dim(), right: o.dim() });
        }
        Ok(())
    }

    /// `<self|o> = sum_k conj(self_k) o_k`, summed in index order.
    pub fn inner(&self, o: &Self) -> Result<Quaternion<T>> {
        self.check(o)?;
        Ok(self.coeffs.iter().zip(&o.coeffs).fold(Quaternion::zero(), |acc, (a, b)| acc + a.conj() * *b))
    }

    pub fn norm_sqr(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr())
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// `(self q)_k = self_k q`, the scalar multiplication of the space.
    pub fn right_scale(&self, q: Quaternion<T>) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| *c * q).collect() }
    }

    /// `(q self)_k = q self_k`.
    pub fn left_scale(&self, q: Quaternion<T>) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| q * *c).collect() }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| *a + *b).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| *a - *b).collect() })
    }

    /// `|self - o|`.
    pub fn distance(&self, o: &Self) -> Result<T> {
        Ok(self.sub(o)?.norm())
    }

    /// The first `n` coefficients.
    pub fn head(&self, n: usize) -> Self {
        Self { coeffs: self.coeffs[..n.min(self.dim())].to_vec() }
    }
}

impl<T> Index<usize> for QVector<T> {
    type Output = Quaternion<T>;
    fn index(&self, k: usize) -> &Quaternion<T> {
        &self.coeffs[k]
    }
}
