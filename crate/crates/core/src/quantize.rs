//! Quantization `(A_f)_{mn} = int e^{-|q|^2} q^m f(q) conj(q)^n / sqrt(m! n!) d(sigma)`.
//!
//! The factor order `q^m f conj(q)^n` is kept as written. On a Bargmann grid
//! the Gaussian is already in the weights and is not applied again.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::quadrature::QuadratureGrid;
use crate::quat::Quaternion;
use crate::scalar::{inv_sqrt_factorials, Real};

/// A symbol `q -> f(q, conj q)`.
#[derive(Clone)]
pub struct SymbolFn<T> {
    pub name: String,
    f: Arc<dyn Fn(Quaternion<T>) -> Quaternion<T> + Send + Sync>,
}

impl<T> fmt::Debug for SymbolFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymbolFn").field("name", &self.name).finish()
    }
}

impl<T: Real> SymbolFn<T> {
    pub fn new(name: impl Into<String>, f: impl Fn(Quaternion<T>) -> Quaternion<T> + Send + Sync + 'static) -> Self {
        Self { name: name.into(), f: Arc::new(f) }
    }

    pub fn eval(&self, q: Quaternion<T>) -> Quaternion<T> {
        (self.f)(q)
    }

    pub fn one() -> Self {
        Self::new("1", |_| Quaternion::from_real(T::one()))
    }

    pub fn q() -> Self {
        Self::new("q", |q| q)
    }

    pub fn q_bar() -> Self {
        Self::new("conj(q)", |q| q.conj())
    }

    pub fn norm_sqr() -> Self {
        Self::new("|q|^2", |q| Quaternion::from_real(q.norm_sqr()))
    }
}

/// `A_f` on the first `n` basis vectors.
pub fn quantize_symbol<T: Real>(
    f: &SymbolFn<T>,
    n: usize,
    grid: &QuadratureGrid<T>,
    parallel: bool,
) -> Result<QMatrix<T>> {
    if n == 0 {
        return Err(Error::DimTooSmall { min: 1, got: 0 });
    }
    let c = inv_sqrt_factorials::<T>(n);
    let acc = grid.fold(
        parallel,
        vec![Quaternion::zero(); n * n],
        |k, node, acc| {
            let fq = f.eval(node.q);
            if !fq.is_finite() {
                return Err(Error::NonFiniteIntegrand { node: k });
            }
            let w = node.weight * grid.gaussian(node);
            let mut left = Vec::with_capacity(n);
            let mut right = Vec::with_capacity(n);
            let mut pw = Quaternion::from_real(T::one());
            for cm in c.iter().take(n) {
                left.push((pw * fq).scale(*cm * w));
                right.push(pw.conj().scale(*cm));
                pw *= node.q;
            }
            for (m, l) in left.iter().enumerate() {
                let row = &mut acc[m * n..(m + 1) * n];
                for (dst, r) in row.iter_mut().zip(&right) {
                    *dst += *l * *r;
                }
            }
            Ok(())
        },
        |a, b| a.iter().zip(b).map(|(x, y)| *x + *y).collect(),
    )?;
    Ok(QMatrix::from_fn(n, |m, k| acc[m * n + k]))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResolutionReport<T> {
    pub dim: usize,
    /// Largest entry of `A_1 - 1`.
    pub max_deviation: T,
    pub max_diagonal_deviation: T,
    pub max_off_diagonal: T,
}

/// How far `A_1` is from the identity on the first `n` basis vectors.
pub fn resolution_check<T: Real>(n: usize, grid: &QuadratureGrid<T>, parallel: bool) -> Result<ResolutionReport<T>> {
    let a = quantize_symbol(&SymbolFn::one(), n, grid, parallel)?;
    let mut diag = T::zero();
    let mut off = T::zero();
    for k in 0..n {
        for m in 0..n {
            if k == m {
                diag = diag.max(a.get(k, k).dist(Quaternion::from_real(T::one())));
            } else {
                off = off.max(a.get(k, m).norm());
            }
        }
    }
    Ok(ResolutionReport { dim: n, max_deviation: diag.max(off), max_diagonal_deviation: diag, max_off_diagonal: off })
}
