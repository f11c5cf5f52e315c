use std::ops::{Add, Mul};

use num_complex::Complex;

use super::Quaternion;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `q0 + q1 i + q2 j + q3 k  ->  [[q0 + i q3, -q2 + i q1], [q2 + i q1, q0 - i q3]]`.
///
/// Multiplicative, with conjugation mapped to the adjoint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexMatrix2<T> {
    pub m: [[Complex<T>; 2]; 2],
}

impl<T: Real> ComplexMatrix2<T> {
    pub fn identity() -> Self {
        let (o, z) = (Complex::new(T::one(), T::zero()), Complex::new(T::zero(), T::zero()));
        Self { m: [[o, z], [z, o]] }
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self { m: [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]] }
    }

    /// Distance of the matrix from the image of the embedding.
    pub fn structure_deviation(&self) -> T {
        let m = &self.m;
        let a = (m[1][1] - m[0][0].conj()).norm();
        let b = (m[1][0] + m[0][1].conj()).norm();
        a.max(b)
    }

    /// Pulls back to a quaternion, rejecting matrices off the image by more than `tol`.
    pub fn to_quaternion(&self, tol: T) -> Result<Quaternion<T>> {
        let d = self.structure_deviation();
        if d > tol || !d.is_finite() {
            return Err(Error::MalformedMatrix { deviation: d.as_f64() });
        }
        Ok(self.pull_back())
    }

    /// Pull-back that averages the redundant entries, without a structure check.
    pub fn pull_back(&self) -> Quaternion<T> {
        let m = &self.m;
        let h = T::lit(0.5);
        let d = (m[0][0] + m[1][1].conj()) * h;
        let o = (m[0][1] - m[1][0].conj()) * h;
        Quaternion::new(d.re, o.im, -o.re, d.im)
    }

    pub fn max_abs_diff(&self, o: &Self) -> T {
        let mut d = T::zero();
        for r in 0..2 {
            for c in 0..2 {
                d = d.max((self.m[r][c] - o.m[r][c]).norm());
            }
        }
        d
    }
}

impl<T: Real> Add for ComplexMatrix2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { m: std::array::from_fn(|r| std::array::from_fn(|c| self.m[r][c] + o.m[r][c])) }
    }
}

impl<T: Real> Mul for ComplexMatrix2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (&self.m, &o.m);
        let e = |r: usize, c: usize| a[r][0] * b[0][c] + a[r][1] * b[1][c];
        Self { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }
}

impl<T: Real> Quaternion<T> {
    pub fn to_matrix2(self) -> ComplexMatrix2<T> {
        let c = Complex::new;
        ComplexMatrix2 { m: [[c(self.w, self.z), c(-self.y, self.x)], [c(self.y, self.x), c(self.w, -self.z)]] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Quaternion<f64>;

    #[test]
    fn units_map_to_pauli_type_matrices() {
        let c = Complex::new;
        let i = Q::i().to_matrix2();
        assert_eq!(i.m, [[c(0.0, 0.0), c(0.0, 1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]);
        let k = Q::k().to_matrix2();
        assert_eq!(k.m, [[c(0.0, 1.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, -1.0)]]);
        assert_eq!(Q::from_real(1.0).to_matrix2(), ComplexMatrix2::identity());
    }

    #[test]
    fn round_trip_and_rejection() {
        let q = Q::new(0.5, -1.0, 2.0, 0.25);
        assert_eq!(q.to_matrix2().to_quaternion(0.0).unwrap(), q);
        let mut m = q.to_matrix2();
        m.m[1][1] = Complex::new(7.0, 0.0);
        assert!(matches!(m.to_quaternion(1e-12), Err(Error::MalformedMatrix { .. })));
    }
}
