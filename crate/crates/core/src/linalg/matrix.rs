use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{expm, CMatrix, QVector};
use crate::error::{Error, Result};
use crate::quat::{ComplexMatrix2, Quaternion};
use crate::scalar::Real;

/// Square quaternion matrix, row-major. `(A phi)_k = sum_m A[k][m] phi_m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QMatrix<T> {
    dim: usize,
    data: Vec<Quaternion<T>>,
}

impl<T: Real> QMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Quaternion::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![T::one(); dim])
    }

    /// Real diagonal matrix.
    pub fn diagonal(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len());
        for (k, v) in values.iter().enumerate() {
            m.set(k, k, Quaternion::from_real(*v));
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Quaternion<T>) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for k in 0..dim {
            for m in 0..dim {
                data.push(f(k, m));
            }
        }
        Self { dim, data }
    }

    pub fn from_rows(rows: Vec<Vec<Quaternion<T>>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::DimMismatch { left: dim, right: r.len() });
            }
            data.extend(r);
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, k: usize, m: usize) -> Quaternion<T> {
        self.data[k * self.dim + m]
    }

    pub fn set(&mut self, k: usize, m: usize, v: Quaternion<T>) {
        self.data[k * self.dim + m] = v;
    }

    pub fn entries(&self) -> &[Quaternion<T>] {
        &self.data
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::DimMismatch { left: self.dim, right: o.dim });
        }
        Ok(())
    }

    fn map(&self, f: impl Fn(Quaternion<T>) -> Quaternion<T>) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|q| f(*q)).collect() }
    }

    fn zip(&self, o: &Self, f: impl Fn(Quaternion<T>, Quaternion<T>) -> Quaternion<T>) -> Result<Self> {
        self.check(o)?;
        Ok(Self { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| f(*a, *b)).collect() })
    }

    pub fn apply(&self, v: &QVector<T>) -> Result<QVector<T>> {
        if v.dim() != self.dim {
            return Err(Error::DimMismatch { left: self.dim, right: v.dim() });
        }
        let c = v.coeffs();
        let out = (0..self.dim)
            .map(|k| {
                let row = &self.data[k * self.dim..(k + 1) * self.dim];
                row.iter().zip(c).fold(Quaternion::zero(), |acc, (a, x)| acc + *a * *x)
            })
            .collect();
        Ok(QVector::new(out))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |k, m| self.get(m, k).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |k, m| self.get(m, k))
    }

    pub fn matmul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for k in 0..n {
            for l in 0..n {
                let a = self.data[k * n + l];
                if a.is_zero() {
                    continue;
                }
                let (dst, src) = (&mut out.data[k * n..(k + 1) * n], &o.data[l * n..(l + 1) * n]);
                for (d, b) in dst.iter_mut().zip(src) {
                    *d += a * *b;
                }
            }
        }
        Ok(out)
    }

    /// `self o - o self`.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.matmul(o)?.sub(&o.matmul(self)?)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|a| a.scale(s))
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a)
    }

    /// Entries multiplied on the left: `(q A)[k][m] = q A[k][m]`.
    pub fn left_scalar(&self, q: Quaternion<T>) -> Self {
        self.map(|a| q * a)
    }

    /// Entries multiplied on the right: `(A q)[k][m] = A[k][m] q`.
    pub fn right_scalar(&self, q: Quaternion<T>) -> Self {
        self.map(|a| a * q)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, q| acc.max(q.norm()))
    }

    /// Largest entry modulus of `self - o`.
    pub fn max_abs_diff(&self, o: &Self) -> Result<T> {
        self.check(o)?;
        Ok(self.data.iter().zip(&o.data).fold(T::zero(), |acc, (a, b)| acc.max(a.dist(*b))))
    }

    /// Largest entry modulus of `self - o` over the leading `size x size` block.
    pub fn block_max_abs_diff(&self, o: &Self, size: usize) -> Result<T> {
        self.check(o)?;
        let size = size.min(self.dim);
        let mut d = T::zero();
        for k in 0..size {
            for m in 0..size {
                d = d.max(self.get(k, m).dist(o.get(k, m)));
            }
        }
        Ok(d)
    }

    pub fn top_left(&self, size: usize) -> Self {
        let size = size.min(self.dim);
        Self::from_fn(size, |k, m| self.get(k, m))
    }

    /// Zero-padded (or cropped) copy of dimension `dim`.
    pub fn resized(&self, dim: usize) -> Self {
        Self::from_fn(dim, |k, m| if k < self.dim && m < self.dim { self.get(k, m) } else { Quaternion::zero() })
    }

    pub fn column(&self, m: usize) -> QVector<T> {
        QVector::new((0..self.dim).map(|k| self.get(k, m)).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|q| q.is_finite())
    }

    /// Complex `2N x 2N` image, one `2 x 2` block per entry.
    pub fn to_complex(&self) -> CMatrix<T> {
        let n = self.dim;
        let mut c = CMatrix::zeros(2 * n);
        for k in 0..n {
            for m in 0..n {
                let b = self.get(k, m).to_matrix2();
                for r in 0..2 {
                    for s in 0..2 {
                        c.set(2 * k + r, 2 * m + s, b.m[r][s]);
                    }
                }
            }
        }
        c
    }

    /// Inverse of [`to_complex`](Self::to_complex); rejects blocks off the image by more than `tol`.
    pub fn from_complex(c: &CMatrix<T>, tol: T) -> Result<Self> {
        if !c.dim().is_multiple_of(2) {
            return Err(Error::MalformedMatrix { deviation: f64::INFINITY });
        }
        let n = c.dim() / 2;
        let mut out = Self::zeros(n);
        let mut worst = T::zero();
        for k in 0..n {
            for m in 0..n {
                let mut b = ComplexMatrix2 { m: [[Complex::zero(); 2]; 2] };
                for r in 0..2 {
                    for s in 0..2 {
                        b.m[r][s] = c.get(2 * k + r, 2 * m + s);
                    }
                }
                worst = worst.max(b.structure_deviation());
                out.set(k, m, b.pull_back());
            }
        }
        if worst > tol || !worst.is_finite() {
            return Err(Error::MalformedMatrix { deviation: worst.as_f64() });
        }
        Ok(out)
    }

    /// Matrix exponential through the complex image.
    pub fn exp(&self) -> Result<Self> {
        let e = expm(&self.to_complex())?;
        let tol = T::lit(1e3) * T::epsilon() * (T::one() + e.max_abs());
        Self::from_complex(&e, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Quaternion<f64>;

    fn sample() -> QMatrix<f64> {
        QMatrix::from_fn(3, |k, m| Q::new(k as f64 - 1.0, 0.5 * m as f64, (k * m) as f64 - 0.7, 0.3))
    }

    #[test]
    fn matmul_is_associative_and_not_commutative() {
        let a = sample();
        let b = a.left_scalar(Q::j()).adjoint();
        let c = a.right_scalar(Q::new(0.1, 0.2, -0.3, 0.4));
        let l = a.matmul(&b).unwrap().matmul(&c).unwrap();
        let r = a.matmul(&b.matmul(&c).unwrap()).unwrap();
        assert!(l.max_abs_diff(&r).unwrap() < 1e-13);
        assert!(a.commutator(&b).unwrap().max_abs() > 1e-3);
    }

    #[test]
    fn left_and_right_scalars_differ_on_noncommuting_entries() {
        let a = QMatrix::from_fn(1, |_, _| Q::j());
        assert_eq!(a.left_scalar(Q::i()).get(0, 0), Q::k());
        assert_eq!(a.right_scalar(Q::i()).get(0, 0), -Q::k());
    }

    #[test]
    fn adjoint_reverses_products() {
        let a = sample();
        let b = a.right_scalar(Q::k()).transpose();
        let l = a.matmul(&b).unwrap().adjoint();
        let r = b.adjoint().matmul(&a.adjoint()).unwrap();
        assert!(l.max_abs_diff(&r).unwrap() < 1e-13);
    }

    #[test]
    fn complex_image_is_multiplicative() {
        let a = sample();
        let b = a.left_scalar(Q::new(0.0, 1.0, 1.0, 0.0));
        let ab = a.matmul(&b).unwrap().to_complex();
        let ab2 = a.to_complex().matmul(&b.to_complex()).unwrap();
        assert!(ab.sub(&ab2).unwrap().max_abs() < 1e-13);
        assert_eq!(QMatrix::from_complex(&a.to_complex(), 0.0).unwrap(), a);
    }

    #[test]
    fn apply_matches_matmul_column() {
        let a = sample();
        let v = QVector::new(vec![Q::i(), Q::new(1.0, 0.0, 2.0, 0.0), Q::k()]);
        let vm = QMatrix::from_fn(3, |k, m| if m == 0 { v[k] } else { Q::zero() });
        let col = a.matmul(&vm).unwrap().column(0);
        assert!(a.apply(&v).unwrap().distance(&col).unwrap() < 1e-14);
        assert!(a.apply(&QVector::zeros(2)).is_err());
    }
}
