//! Seeded random draws used by the test suites and the CLI.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::quat::{Quaternion, UnitImaginary};
use crate::scalar::Real;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the closed 4-ball of radius `rmax`.
pub fn ball<T: Real, R: Rng + ?Sized>(rng: &mut R, rmax: f64) -> Quaternion<T> {
    let q = on_sphere::<R>(rng);
    let r = rmax * rng.gen::<f64>().powf(0.25);
    Quaternion::new(T::lit(q[0] * r), T::lit(q[1] * r), T::lit(q[2] * r), T::lit(q[3] * r))
}

/// Uniform direction in `R^4` scaled to norm `r`.
pub fn with_norm<T: Real, R: Rng + ?Sized>(rng: &mut R, r: f64) -> Quaternion<T> {
    let q = on_sphere::<R>(rng);
    Quaternion::new(T::lit(q[0] * r), T::lit(q[1] * r), T::lit(q[2] * r), T::lit(q[3] * r))
}

/// Uniform point of the ball whose imaginary part has norm at least `1e-6`.
pub fn non_real_ball<T: Real, R: Rng + ?Sized>(rng: &mut R, rmax: f64) -> Quaternion<T> {
    loop {
        let q: Quaternion<T> = ball(rng, rmax);
        if q.im_norm().as_f64() >= 1e-6 {
            return q;
        }
    }
}

/// Uniform point `x + I y` of the disk of radius `rmax` in the slice `C_I`.
pub fn in_slice<T: Real, R: Rng + ?Sized>(rng: &mut R, axis: UnitImaginary<T>, rmax: f64) -> Quaternion<T> {
    let r = rmax * rng.gen::<f64>().sqrt();
    let t = std::f64::consts::TAU * rng.gen::<f64>();
    axis.slice_point(T::lit(r * t.cos()), T::lit(r * t.sin()))
}

pub fn uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.gen::<f64>()
}

fn on_sphere<R: Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    loop {
        let g: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            return g.map(|x| x / n);
        }
    }
}
