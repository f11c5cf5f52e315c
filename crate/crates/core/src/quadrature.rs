//! Product quadrature on `H = R^4` in polar coordinates, `d(sigma) = d(tau)(r) d(theta) d(Omega)`
//! with `d(Omega) = sin(phi) d(phi) d(psi) / (4 pi)`.
//!
//! The radial rule is Gauss-Laguerre in `u = r^2`; `theta` and `psi` use the
//! uniform rule and `cos(phi)` uses Gauss-Legendre.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::{Quaternion, UnitImaginary};
use crate::scalar::Real;

/// Radial part of the measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialMeasure {
    /// `d(tau) = r dr / pi`; integrands carry their own Gaussian.
    Cs,
    /// `d(tau) = r e^{-r^2} dr / pi`; the Gaussian is in the weights.
    Bargmann,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureSpec {
    pub radial: RadialMeasure,
    pub n_r: usize,
    pub n_theta: usize,
    pub n_phi: usize,
    pub n_psi: usize,
}

impl MeasureSpec {
    pub fn new(radial: RadialMeasure, n_r: usize, n_theta: usize, n_phi: usize, n_psi: usize) -> Self {
        Self { radial, n_r, n_theta, n_phi, n_psi }
    }

    pub fn node_count(&self) -> usize {
        self.n_r * self.n_theta * self.n_phi * self.n_psi
    }

    fn validate(&self) -> Result<()> {
        if self.n_r == 0 || self.n_theta == 0 || self.n_phi == 0 || self.n_psi == 0 {
            return Err(Error::InvalidParameter(format!("empty quadrature rule in {self:?}")));
        }
        if !self.n_theta.is_multiple_of(2) {
            return Err(Error::InvalidParameter("n_theta must be even so the grid is symmetric under q -> -q".into()));
        }
        Ok(())
    }
}

/// Unevaluated sum `hi + lo` carrying about twice the precision of `f64`.
#[derive(Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    fn from(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        Self { hi: s, lo: (a - (s - bb)) + (b - bb) }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        Self { hi: s, lo: lo - (s - hi) }
    }

    fn add(self, o: Self) -> Self {
        let s = Self::two_sum(self.hi, o.hi);
        Self::renorm(s.hi, s.lo + self.lo + o.lo)
    }

    fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }

    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        Self::renorm(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    fn div_f64(self, d: f64) -> Self {
        let q = self.hi / d;
        let r = self.add(Self::from(q).mul(Self::from(d)).neg());
        Self::renorm(q, r.hi / d)
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// `(L_n(z), L_{n-1}(z), L_n'(z))` by the three-term recurrence in double-double.
fn laguerre_eval(n: usize, z: f64) -> (f64, f64, f64) {
    let zd = DoubleDouble::from(z).neg();
    let (mut p1, mut p2) = (DoubleDouble::from(1.0), DoubleDouble::from(0.0));
    for j in 1..=n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        let c = DoubleDouble::from(2.0 * jf - 1.0).add(zd);
        p1 = c.mul(p2).add(DoubleDouble::from(jf - 1.0).mul(p3).neg()).div_f64(jf);
    }
    let nf = DoubleDouble::from(n as f64);
    let pp = nf.mul(p1.add(p2.neg())).div_f64(z);
    (p1.value(), p2.value(), pp.value())
}

/// `(P_n(z), P_n'(z))` by the three-term recurrence.
fn legendre_eval(n: usize, z: f64) -> (f64, f64) {
    let (mut p1, mut p2) = (1.0f64, 0.0f64);
    for j in 1..=n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = ((2.0 * jf - 1.0) * z * p2 - (jf - 1.0) * p3) / jf;
    }
    (p1, n as f64 * (z * p1 - p2) / (z * z - 1.0))
}

/// Gauss-Laguerre nodes and weights for `int_0^inf f(x) e^{-x} dx`.
///
/// Newton iteration on the three-term recurrence, evaluated in double-double
/// so that the smallest nodes and weights keep full relative precision.
pub fn gauss_laguerre<T: Real>(n: usize) -> Result<(Vec<T>, Vec<T>)> {
    let mut x = vec![0.0f64; n];
    let mut w = vec![0.0f64; n];
    let nf = n as f64;
    let mut z = 0.0f64;
    for i in 0..n {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - x[i - 2])
            }
        };
        let mut converged = false;
        for _ in 0..200 {
            let (p1, _, pp) = laguerre_eval(n, z);
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 4.0 * f64::EPSILON * z.abs() {
                converged = true;
                break;
            }
        }
        if !converged || !z.is_finite() {
            return Err(Error::ConvergenceFailure { what: "Gauss-Laguerre nodes" });
        }
        let (_, p2, pp) = laguerre_eval(n, z);
        x[i] = z;
        w[i] = -1.0 / (pp * nf * p2);
    }
    Ok((x.into_iter().map(T::lit).collect(), w.into_iter().map(T::lit).collect()))
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre<T: Real>(n: usize) -> Result<(Vec<T>, Vec<T>)> {
    let mut x = vec![0.0f64; n];
    let mut w = vec![0.0f64; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut converged = false;
        for _ in 0..100 {
            let (p1, pp) = legendre_eval(n, z);
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 4.0 * f64::EPSILON {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::ConvergenceFailure { what: "Gauss-Legendre nodes" });
        }
        let (_, pp) = legendre_eval(n, z);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    Ok((x.into_iter().map(T::lit).collect(), w.into_iter().map(T::lit).collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridNode<T> {
    pub q: Quaternion<T>,
    pub r: T,
    /// `r^2`.
    pub u: T,
    pub theta: T,
    pub phi: T,
    pub psi: T,
    pub weight: T,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadratureGrid<T> {
    pub spec: MeasureSpec,
    pub nodes: Vec<GridNode<T>>,
    /// `(u_k, w_k)`: `int g d(tau) = sum_k w_k g(sqrt(u_k))`.
    pub radial: Vec<(T, T)>,
}

/// Moments checked when a grid is built.
pub const MOMENT_CHECK_MAX: usize = 10;

/// Relative tolerance of the build-time moment check.
pub fn moment_tolerance<T: Real>() -> T {
    T::lit(1e-10).max(T::lit(1e3) * T::epsilon())
}

const CHUNK: usize = 256;

pub fn grid_build<T: Real>(spec: MeasureSpec) -> Result<QuadratureGrid<T>> {
    spec.validate()?;
    let (lx, lw) = gauss_laguerre::<T>(spec.n_r)?;
    let (cx, cw) = gauss_legendre::<T>(spec.n_phi)?;
    let inv_2pi = T::TAU().recip();
    let radial: Vec<(T, T)> = lx
        .iter()
        .zip(&lw)
        .map(|(&u, &w)| match spec.radial {
            RadialMeasure::Cs => (u, w * u.exp() * inv_2pi),
            RadialMeasure::Bargmann => (u, w * inv_2pi),
        })
        .collect();
    if radial.iter().any(|(u, w)| !w.is_finite() || *w <= T::zero() || *u <= T::zero()) {
        return Err(Error::ConvergenceFailure { what: "radial weights" });
    }
    let w_theta = T::TAU() / T::from_count(spec.n_theta);
    let w_psi = T::TAU() / T::from_count(spec.n_psi);
    let four_pi = T::lit(2.0) * T::TAU();
    let mut nodes = Vec::with_capacity(spec.node_count());
    for &(u, wr) in &radial {
        let r = u.sqrt();
        for jt in 0..spec.n_theta {
            let theta = w_theta * T::from_count(jt);
            let (st, ct) = theta.sin_cos();
            for (&c, &wc) in cx.iter().zip(&cw) {
                let phi = c.acos();
                let sf = (T::one() - c * c).max(T::zero()).sqrt();
                for jp in 0..spec.n_psi {
                    let psi = w_psi * T::from_count(jp);
                    let (ss, cs) = psi.sin_cos();
                    let axis = UnitImaginary::normalize(sf * cs, sf * ss, c).expect("unit by construction");
                    let q = axis.slice_point(r * ct, r * st);
                    let weight = wr * w_theta * wc * w_psi / four_pi;
                    nodes.push(GridNode { q, r, u, theta, phi, psi, weight });
                }
            }
        }
    }
    let grid = QuadratureGrid { spec, nodes, radial };
    let tol = moment_tolerance::<T>();
    for m in 0..=MOMENT_CHECK_MAX.min(2 * spec.n_r - 1) {
        let e = grid.moment_error(m);
        if e.is_nan() || e > tol {
            return Err(Error::MomentTestFailure { m, error: e.as_f64() });
        }
    }
    Ok(grid)
}

impl<T: Real> QuadratureGrid<T> {
    /// Factor `e^{-|q|^2}` that an integrand must carry explicitly on this grid.
    pub fn gaussian(&self, node: &GridNode<T>) -> T {
        match self.spec.radial {
            RadialMeasure::Cs => (-node.u).exp(),
            RadialMeasure::Bargmann => T::one(),
        }
    }

    /// Weight of the node for `d(tau) = r dr / pi`, whichever radial measure the grid uses.
    pub fn plain_weight(&self, node: &GridNode<T>) -> T {
        match self.spec.radial {
            RadialMeasure::Cs => node.weight,
            RadialMeasure::Bargmann => node.weight * node.u.exp(),
        }
    }

    /// `2 pi int r^{2m} e^{-r^2} d(tau)`, which equals `m!`.
    pub fn moment(&self, m: usize) -> T {
        let mut s = crate::scalar::CompensatedSum::new();
        for &(u, w) in &self.radial {
            let g = match self.spec.radial {
                RadialMeasure::Cs => (-u).exp(),
                RadialMeasure::Bargmann => T::one(),
            };
            s.add(w * u.powi(m as i32) * g);
        }
        T::TAU() * s.value()
    }

    /// Relative error of [`moment`](Self::moment) against `m!`.
    pub fn moment_error(&self, m: usize) -> T {
        let f = crate::scalar::ln_factorials::<T>(m)[m].exp();
        ((self.moment(m) - f) / f).abs()
    }

    /// Folds `f(node) * weight` over the grid in a fixed order: sequential inside
    /// fixed-size chunks, then a pairwise tree over the chunks. The result does
    /// not depend on `parallel`.
    pub fn fold<V, F, A>(&self, parallel: bool, zero: V, f: F, add: A) -> Result<V>
    where
        V: Clone + Send + Sync,
        F: Fn(usize, &GridNode<T>, &mut V) -> Result<()> + Sync,
        A: Fn(&V, &V) -> V + Sync,
    {
        let chunk = |(c, nodes): (usize, &[GridNode<T>])| -> Result<V> {
            let mut acc = zero.clone();
            for (k, node) in nodes.iter().enumerate() {
                f(c * CHUNK + k, node, &mut acc)?;
            }
            Ok(acc)
        };
        let parts: Vec<V> = if parallel {
            self.nodes.par_chunks(CHUNK).enumerate().map(chunk).collect::<Result<_>>()?
        } else {
            self.nodes.chunks(CHUNK).enumerate().map(chunk).collect::<Result<_>>()?
        };
        Ok(tree(&parts, &zero, &add))
    }

    /// `int g d(sigma)`.
    pub fn integrate<F>(&self, parallel: bool, g: F) -> Result<Quaternion<T>>
    where
        F: Fn(&GridNode<T>) -> Quaternion<T> + Sync,
    {
        self.fold(
            parallel,
            Quaternion::from_real(T::zero()),
            |k, node, acc| {
                let v = g(node);
                if !v.is_finite() {
                    return Err(Error::NonFiniteIntegrand { node: k });
                }
                *acc += v.scale(node.weight);
                Ok(())
            },
            |a, b| *a + *b,
        )
    }
}

fn tree<V: Clone, A: Fn(&V, &V) -> V>(parts: &[V], zero: &V, add: &A) -> V {
    match parts.len() {
        0 => zero.clone(),
        1 => parts[0].clone(),
        n => {
            let (l, r) = parts.split_at(n / 2);
            add(&tree(l, zero, add), &tree(r, zero, add))
        }
    }
}
