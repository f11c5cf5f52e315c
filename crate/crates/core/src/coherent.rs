//! Coherent states `gamma_q = e^{-|q|^2/2} sum_m e_m q^m / sqrt(m!)` and their uncertainty relations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::Operators;
use crate::linalg::{QMatrix, QVector};
use crate::quat::{Quaternion, QuaternionSum, UnitImaginary};
use crate::scalar::Real;

/// Default bound on the discarded probability `1 - |gamma_q|^2`.
pub const DEFAULT_TAIL: f64 = 1e-14;

/// `e^{-u} sum_{m >= n} u^m / m!`, summed upward from `m = n`.
pub fn tail_mass<T: Real>(u: T, n: usize) -> T {
    if u == T::zero() {
        return if n == 0 { T::one() } else { T::zero() };
    }
    let lf = crate::scalar::ln_factorials::<T>(n);
    let mut term = (-u + T::from_count(n) * u.ln() - lf[n]).exp();
    let mut sum = T::zero();
    let mut m = n;
    loop {
        sum += term;
        m += 1;
        term = term * u / T::from_count(m);
        if (term <= T::epsilon() * sum && T::from_count(m) > u) || term == T::zero() || m > n + 100_000 {
            return sum;
        }
    }
}

/// Smallest truncation whose discarded mass is below `eps`.
pub fn required_dim<T: Real>(q: Quaternion<T>, eps: T) -> usize {
    let u = q.norm_sqr();
    let mut n = 1;
    while tail_mass(u, n) >= eps {
        n += 1;
    }
    n
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoherentState<T> {
    pub q: Quaternion<T>,
    pub vector: QVector<T>,
    /// Mass beyond the truncation, `1 - |vector|^2` in exact arithmetic.
    pub tail: T,
}

/// `gamma_q` truncated to `n` components; fails if more than `eps` of the mass is cut.
pub fn build_cs<T: Real>(q: Quaternion<T>, n: usize, eps: T) -> Result<CoherentState<T>> {
    if n == 0 {
        return Err(Error::DimTooSmall { min: 1, got: 0 });
    }
    let u = q.norm_sqr();
    let tail = tail_mass(u, n);
    if tail >= eps {
        return Err(Error::TruncationTooCoarse { required: required_dim(q, eps) });
    }
    let mut c = Quaternion::from_real((-u / T::lit(2.0)).exp());
    let mut coeffs = Vec::with_capacity(n);
    for m in 0..n {
        if m > 0 {
            c = c * q / T::from_count(m).sqrt();
        }
        coeffs.push(c);
    }
    Ok(CoherentState { q, vector: QVector::new(coeffs), tail })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Expectation<T> {
    pub value: Quaternion<T>,
    pub norm_sqr: T,
}

impl<T: Real> Expectation<T> {
    /// Whether the state norm is off 1 by more than `tol`.
    pub fn unnormalized(&self, tol: T) -> bool {
        (self.norm_sqr - T::one()).abs() > tol
    }
}

/// `<psi | A psi>`.
pub fn expectation<T: Real>(a: &QMatrix<T>, psi: &QVector<T>) -> Result<Expectation<T>> {
    Ok(Expectation { value: psi.inner(&a.apply(psi)?)?, norm_sqr: psi.norm_sqr() })
}

/// `e^{-|q|^2} sum_m conj(q)^m I q^m / m!`, with compensated summation, to absolute error `tol`.
pub fn c_series<T: Real>(q: Quaternion<T>, axis: UnitImaginary<T>, tol: T) -> Result<Quaternion<T>> {
    let u = q.norm_sqr();
    let qc = q.conj();
    let mut term = axis.quaternion().scale((-u).exp());
    let mut sum = QuaternionSum::new();
    let mut mag = (-u).exp();
    let mut seen = T::zero();
    for m in 0..100_000usize {
        sum.add(term);
        seen += mag;
        if T::one() - seen <= tol && T::from_count(m) > u {
            return Ok(sum.value());
        }
        if mag == T::zero() && T::from_count(m) > u {
            return Ok(sum.value());
        }
        let d = T::from_count(m + 1);
        term = (qc * term) * q / d;
        mag = mag * u / d;
    }
    Err(Error::ConvergenceFailure { what: "c series" })
}

/// Means and variances of `Q` and `P_I` in a coherent state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UncertaintyReport<T> {
    pub q: Quaternion<T>,
    pub axis: UnitImaginary<T>,
    pub mean_q: T,
    pub mean_q2: T,
    pub mean_p: T,
    pub mean_p2: T,
    pub var_q: T,
    pub var_p: T,
    /// `var_q var_p`.
    pub product: T,
    /// `<[Q, P_I]>`.
    pub commutator_mean: Quaternion<T>,
    /// `(|<[Q, P_I]>|/2)^2`.
    pub lower_bound: T,
    /// `product - 1/4`.
    pub excess: T,
    pub c: Quaternion<T>,
    /// `var_p` from the series `c` instead of the matrices.
    pub var_p_series: T,
    /// `excess` from the series `c`: `|Im q|^2 - (c . Im q)^2`.
    pub excess_series: T,
    pub state_norm_sqr: T,
    pub slice_degenerate: bool,
}

impl<T: Real> UncertaintyReport<T> {
    pub fn dq_dp(&self) -> T {
        self.var_q.sqrt() * self.var_p.sqrt()
    }
}

/// Uncertainty of `Q, P_I` in `gamma_q` for an arbitrary axis `I`.
pub fn uncertainty_global<T: Real>(
    ops: &Operators<T>,
    q: Quaternion<T>,
    axis: UnitImaginary<T>,
) -> Result<UncertaintyReport<T>> {
    let cs = build_cs(q, ops.dim, T::lit(DEFAULT_TAIL))?;
    let g = &cs.vector;
    let p = ops.momentum(axis);
    let qg = ops.position.apply(g)?;
    let pg = p.apply(g)?;
    let mean_q = g.inner(&qg)?.w;
    let mean_q2 = g.inner(&ops.position.apply(&qg)?)?.w;
    let mean_p = g.inner(&pg)?.w;
    let mean_p2 = g.inner(&p.apply(&pg)?)?.w;
    let commutator_mean = qg.inner(&pg)? - pg.inner(&qg)?;
    let var_q = mean_q2 - mean_q * mean_q;
    let var_p = mean_p2 - mean_p * mean_p;
    let product = var_q * var_p;
    let half = commutator_mean.norm() / T::lit(2.0);

    let c = c_series(q, axis, T::epsilon())?;
    let v = q.pure();
    let rc = (c * q).w;
    let two = T::lit(2.0);
    let var_p_series = T::lit(0.5) + two * v.norm_sqr() - two * rc * rc;
    let cv = c.dot(v);
    Ok(UncertaintyReport {
        q,
        axis,
        mean_q,
        mean_q2,
        mean_p,
        mean_p2,
        var_q,
        var_p,
        product,
        commutator_mean,
        lower_bound: half * half,
        excess: product - T::lit(0.25),
        c,
        var_p_series,
        excess_series: v.norm_sqr() - cv * cv,
        state_norm_sqr: g.norm_sqr(),
        slice_degenerate: false,
    })
}

/// Uncertainty with `I` taken as the slice axis of `q` (the axis `i` for real `q`).
pub fn uncertainty_slice<T: Real>(ops: &Operators<T>, q: Quaternion<T>) -> Result<UncertaintyReport<T>> {
    let s = q.slice();
    let mut r = uncertainty_global(ops, q, s.axis)?;
    r.slice_degenerate = s.degenerate;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Quaternion<f64>;

    #[test]
    fn tail_mass_limits() {
        assert_eq!(tail_mass(0.0f64, 0), 1.0);
        assert_eq!(tail_mass(0.0f64, 3), 0.0);
        assert!((tail_mass(1.0f64, 0) - 1.0).abs() < 1e-15);
        let want = 1.0 - (-2.0f64).exp() * (1.0 + 2.0 + 2.0);
        assert!((tail_mass(2.0f64, 3) - want).abs() < 1e-15);
    }

    #[test]
    fn vacuum_and_small_truncation() {
        let cs = build_cs(Q::from_real(0.0), 8, 1e-14).unwrap();
        assert_eq!(cs.vector, QVector::basis(8, 0).unwrap());
        let err = build_cs(Q::new(2.0, 1.0, 0.0, 0.0), 4, 1e-14).unwrap_err();
        let Error::TruncationTooCoarse { required } = err else { panic!("{err:?}") };
        assert!(build_cs(Q::new(2.0, 1.0, 0.0, 0.0), required, 1e-14).is_ok());
        assert!(build_cs(Q::new(2.0, 1.0, 0.0, 0.0), required - 1, 1e-14).is_err());
    }

    #[test]
    fn norm_deficit_matches_tail() {
        for q in [Q::new(1.0, 0.5, -0.3, 0.2), Q::new(0.0, 0.0, 1.5, 0.0)] {
            let n = required_dim(q, 1e-6);
            let cs = build_cs(q, n, 1e-6).unwrap();
            assert!(((1.0 - cs.vector.norm_sqr()) - cs.tail).abs() < 1e-13);
        }
    }

    #[test]
    fn c_series_for_real_q_is_the_axis() {
        let axis = UnitImaginary::diagonal();
        let c = c_series(Q::from_real(0.7), axis, 1e-16).unwrap();
        assert!(c.dist(axis.quaternion()) < 1e-15);
    }

    #[test]
    fn expectation_flags_unnormalized_states() {
        let ops = Operators::<f64>::new(4).unwrap();
        let psi = QVector::basis(4, 1).unwrap().right_scale(Q::from_real(2.0));
        let e = expectation(&ops.number, &psi).unwrap();
        assert!(e.unnormalized(1e-12));
        assert_eq!(e.value, Q::from_real(4.0));
    }
}
