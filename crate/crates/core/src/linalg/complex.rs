use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.data[k * dim + k] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex<T>) {
        self.data[r * self.dim + c] = v;
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::DimMismatch { left: self.dim, right: o.dim });
        }
        Ok(())
    }

    pub fn matmul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            let dst = &mut out.data[r * n..(r + 1) * n];
            for l in 0..n {
                let a = self.data[r * n + l];
                if a.is_zero() {
                    continue;
                }
                for (d, b) in dst.iter_mut().zip(&o.data[l * n..(l + 1) * n]) {
                    *d += a * *b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Self { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Self { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, s: T) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// `self + s I`.
    pub fn add_identity(&self, s: T) -> Self {
        let mut m = self.clone();
        for k in 0..self.dim {
            m.data[k * self.dim + k].re += s;
        }
        m
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> T {
        let n = self.dim;
        (0..n).map(|c| (0..n).fold(T::zero(), |acc, r| acc + self.data[r * n + c].norm())).fold(T::zero(), T::max)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    /// Solves `self X = rhs` by LU with partial pivoting.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let n = self.dim;
        let mut a = self.data.clone();
        let mut x = rhs.data.clone();
        for col in 0..n {
            let (piv, best) =
                (col..n)
                    .map(|r| (r, a[r * n + col].norm()))
                    .fold((col, -T::one()), |b, c| if c.1 > b.1 { c } else { b });
            if best == T::zero() || !best.is_finite() {
                return Err(Error::ConvergenceFailure { what: "LU factorization" });
            }
            if piv != col {
                for c in 0..n {
                    a.swap(piv * n + c, col * n + c);
                    x.swap(piv * n + c, col * n + c);
                }
            }
            let inv = Complex::new(T::one(), T::zero()) / a[col * n + col];
            for r in col + 1..n {
                let f = a[r * n + col] * inv;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = a[col * n + c];
                    a[r * n + c] -= f * v;
                }
                for c in 0..n {
                    let v = x[col * n + c];
                    x[r * n + c] -= f * v;
                }
            }
        }
        for col in (0..n).rev() {
            let inv = Complex::new(T::one(), T::zero()) / a[col * n + col];
            for c in 0..n {
                x[col * n + c] *= inv;
            }
            for r in 0..col {
                let f = a[r * n + col];
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = x[col * n + c];
                    x[r * n + c] -= f * v;
                }
            }
        }
        Ok(Self { dim: n, data: x })
    }
}
