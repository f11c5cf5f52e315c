//! Real quaternions `w + x i + y j + z k` with the Hamilton product.

mod imaginary;
mod matrix2;
mod slice;

use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{CompensatedSum, Real};

pub use imaginary::UnitImaginary;
pub use matrix2::ComplexMatrix2;
pub use slice::{PolarForm, SlicePoint};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Quaternion<T> {
    pub const fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    pub fn from_real(w: T) -> Self {
        Self::new(w, T::zero(), T::zero(), T::zero())
    }

    pub fn from_parts(w: T, v: [T; 3]) -> Self {
        Self::new(w, v[0], v[1], v[2])
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn re(self) -> T {
        self.w
    }

    pub fn im(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    /// The quaternion with the real part removed.
    pub fn pure(self) -> Self {
        Self::new(T::zero(), self.x, self.y, self.z)
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> T {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn im_norm(self) -> T {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Euclidean inner product on the underlying `R^4`.
    pub fn dot(self, o: Self) -> T {
        self.w * o.w + self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn scale(self, s: T) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn inv(self) -> Option<Self> {
        let n = self.norm_sqr();
        if n == T::zero() {
            None
        } else {
            Some(self.conj().scale(n.recip()))
        }
    }

    pub fn powi(self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out *= self;
        }
        out
    }

    /// `e^q`, evaluated in the slice containing `q`.
    pub fn exp(self) -> Self {
        let y = self.im_norm();
        let ew = self.w.exp();
        if y == T::zero() {
            return Self::from_real(ew);
        }
        let s = ew * y.sin() / y;
        Self::new(ew * y.cos(), self.x * s, self.y * s, self.z * s)
    }

    /// `|self - o|`.
    pub fn dist(self, o: Self) -> T {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn cast<U: Real>(self) -> Quaternion<U> {
        Quaternion::new(
            U::lit(self.w.as_f64()),
            U::lit(self.x.as_f64()),
            U::lit(self.y.as_f64()),
            U::lit(self.z.as_f64()),
        )
    }
}

impl<T: Real> Zero for Quaternion<T> {
    fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

impl<T: Real> One for Quaternion<T> {
    fn one() -> Self {
        Self::from_real(T::one())
    }
}

impl<T: Real> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl<T: Real> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl<T: Real> Mul<T> for Quaternion<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        self.scale(s)
    }
}

impl<T: Real> Div<T> for Quaternion<T> {
    type Output = Self;
    fn div(self, s: T) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl<T: Real> AddAssign for Quaternion<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Real> SubAssign for Quaternion<T> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T: Real> MulAssign for Quaternion<T> {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl<T: Real> Sum for Quaternion<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

/// Componentwise compensated sum of quaternions.
#[derive(Clone, Copy, Debug, Default)]
pub struct QuaternionSum<T> {
    parts: [CompensatedSum<T>; 4],
}

impl<T: Real> QuaternionSum<T> {
    pub fn new() -> Self {
        Self { parts: [CompensatedSum::new(); 4] }
    }

    pub fn add(&mut self, q: Quaternion<T>) {
        self.parts[0].add(q.w);
        self.parts[1].add(q.x);
        self.parts[2].add(q.y);
        self.parts[3].add(q.z);
    }

    pub fn value(&self) -> Quaternion<T> {
        Quaternion::new(self.parts[0].value(), self.parts[1].value(), self.parts[2].value(), self.parts[3].value())
    }
}
