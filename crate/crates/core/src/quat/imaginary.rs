use std::ops::Neg;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::Quaternion;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// A point of the sphere of unit imaginary quaternions, so `I^2 = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitImaginary<T> {
    x: T,
    y: T,
    z: T,
}

impl<T: Real> UnitImaginary<T> {
    /// Accepts `(x, y, z)` whose norm is 1 within `1e-10`.
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if (n - T::one()).abs() > T::lit(1e-10) || !n.is_finite() {
            return Err(Error::NotUnitImaginary { norm: n.as_f64() });
        }
        Ok(Self { x, y, z })
    }

    /// Normalizes a nonzero vector.
    pub fn normalize(x: T, y: T, z: T) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if n == T::zero() || !n.is_finite() {
            return Err(Error::NotUnitImaginary { norm: n.as_f64() });
        }
        Ok(Self { x: x / n, y: y / n, z: z / n })
    }

    pub fn i() -> Self {
        Self { x: T::one(), y: T::zero(), z: T::zero() }
    }

    pub fn j() -> Self {
        Self { x: T::zero(), y: T::one(), z: T::zero() }
    }

    pub fn k() -> Self {
        Self { x: T::zero(), y: T::zero(), z: T::one() }
    }

    /// `(i + j + k)/sqrt(3)`.
    pub fn diagonal() -> Self {
        let c = T::lit(3.0).sqrt().recip();
        Self { x: c, y: c, z: c }
    }

    /// The three coordinate axes `i, j, k` in order.
    pub fn basis() -> [Self; 3] {
        [Self::i(), Self::j(), Self::k()]
    }

    pub fn components(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn quaternion(self) -> Quaternion<T> {
        Quaternion::new(T::zero(), self.x, self.y, self.z)
    }

    /// `a + b I`.
    pub fn slice_point(self, a: T, b: T) -> Quaternion<T> {
        Quaternion::new(a, b * self.x, b * self.y, b * self.z)
    }

    /// Uniform sample from the sphere.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let g: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
            let n = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt();
            if n > 1e-12 {
                return Self { x: T::lit(g[0] / n), y: T::lit(g[1] / n), z: T::lit(g[2] / n) };
            }
        }
    }

    /// Deterministic uniform sample for a seed.
    pub fn sample_seeded(seed: u64) -> Self {
        Self::sample(&mut ChaCha8Rng::seed_from_u64(seed))
    }
}

impl<T: Real> Neg for UnitImaginary<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { x: -self.x, y: -self.y, z: -self.z }
    }
}

impl<T: Real> From<UnitImaginary<T>> for Quaternion<T> {
    fn from(u: UnitImaginary<T>) -> Self {
        u.quaternion()
    }
}
