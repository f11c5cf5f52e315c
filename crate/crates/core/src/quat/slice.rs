use serde::{Deserialize, Serialize};

use super::{Quaternion, UnitImaginary};
use crate::scalar::Real;

/// `q = x + I y` with `y >= 0`. Real `q` get the axis `i` and `degenerate = true`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlicePoint<T> {
    pub x: T,
    pub y: T,
    pub axis: UnitImaginary<T>,
    pub degenerate: bool,
}

impl<T: Real> SlicePoint<T> {
    pub fn quaternion(&self) -> Quaternion<T> {
        self.axis.slice_point(self.x, self.y)
    }
}

/// `q0 = r cos t`, `q1 = r sin t sin f cos s`, `q2 = r sin t sin f sin s`, `q3 = r sin t cos f`.
///
/// `theta` is returned in `[0, pi]`, `phi` in `[0, pi]`, `psi` in `[0, 2 pi)`.
/// Angles that the point does not determine are set to zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarForm<T> {
    pub r: T,
    pub theta: T,
    pub phi: T,
    pub psi: T,
}

impl<T: Real> PolarForm<T> {
    pub fn new(r: T, theta: T, phi: T, psi: T) -> Self {
        Self { r, theta, phi, psi }
    }

    /// `(sin f cos s, sin f sin s, cos f)`.
    pub fn axis(&self) -> UnitImaginary<T> {
        let (sf, cf) = self.phi.sin_cos();
        let (ss, cs) = self.psi.sin_cos();
        UnitImaginary::normalize(sf * cs, sf * ss, cf).expect("unit by construction")
    }

    pub fn quaternion(&self) -> Quaternion<T> {
        let (st, ct) = self.theta.sin_cos();
        self.axis().slice_point(self.r * ct, self.r * st)
    }
}

impl<T: Real> Quaternion<T> {
    pub fn slice(self) -> SlicePoint<T> {
        let y = self.im_norm();
        if y == T::zero() {
            return SlicePoint { x: self.w, y, axis: UnitImaginary::i(), degenerate: true };
        }
        let axis = UnitImaginary::normalize(self.x / y, self.y / y, self.z / y).expect("nonzero imaginary part");
        SlicePoint { x: self.w, y, axis, degenerate: false }
    }

    /// Axis of the slice containing `q` (`i` for real `q`).
    pub fn slice_axis(self) -> UnitImaginary<T> {
        self.slice().axis
    }

    /// Whether `q` lies in the slice `C_I` within `tol`.
    pub fn in_slice(self, axis: UnitImaginary<T>, tol: T) -> bool {
        let p = self.pure();
        let c = axis.components();
        let along = p.x * c[0] + p.y * c[1] + p.z * c[2];
        (p - axis.quaternion().scale(along)).norm() <= tol
    }

    pub fn polar(self) -> PolarForm<T> {
        let r = self.norm();
        let v = self.im_norm();
        let zero = T::zero();
        if r == zero {
            return PolarForm::new(zero, zero, zero, zero);
        }
        if v == zero {
            let theta = if self.w < zero { T::PI() } else { zero };
            return PolarForm::new(r, theta, zero, zero);
        }
        let theta = v.atan2(self.w);
        let rho = (self.x * self.x + self.y * self.y).sqrt();
        let phi = rho.atan2(self.z);
        let mut psi = if rho == zero { zero } else { self.y.atan2(self.x) };
        if psi < zero {
            psi += T::TAU();
        }
        PolarForm::new(r, theta, phi, psi)
    }
}
