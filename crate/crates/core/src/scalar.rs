use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar every numeric type in the crate is generic over.
pub trait Real:
    Float + FloatConst + NumAssign + FromPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Converts an `f64` constant into `Self`.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant")
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count fits the scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where
    T: Float + FloatConst + NumAssign + FromPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
}

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self { sum: T::zero(), carry: T::zero() }
    }

    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.carry
    }
}

/// Pairwise (tree) summation in a fixed order.
pub fn pairwise_sum<T, F>(items: &[T], zero: T, add: &F) -> T
where
    T: Copy,
    F: Fn(T, T) -> T,
{
    match items.len() {
        0 => zero,
        1 => items[0],
        n if n <= 8 => items[1..].iter().fold(items[0], |acc, &x| add(acc, x)),
        n => {
            let (l, r) = items.split_at(n / 2);
            add(pairwise_sum(l, zero, add), pairwise_sum(r, zero, add))
        }
    }
}

/// `ln(k!)` for `k = 0..=n`.
pub fn ln_factorials<T: Real>(n: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = T::zero();
    out.push(acc);
    for k in 1..=n {
        acc += T::from_count(k).ln();
        out.push(acc);
    }
    out
}

/// `1/sqrt(k!)` for `k = 0..n`, built by the stable recurrence.
pub fn inv_sqrt_factorials<T: Real>(n: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(n);
    let mut c = T::one();
    for k in 0..n {
        if k > 0 {
            c /= T::from_count(k).sqrt();
        }
        out.push(c);
    }
    out
}
