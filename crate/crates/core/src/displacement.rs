//! The displacement operator `D(q) = exp(q a^+ - conj(q) a)`.
//!
//! `build_d` exponentiates the truncated generator. The normal-ordered product
//! `e^{-|q|^2/2} e^{q a^+} e^{-conj(q) a}` has finite sums in every entry, so its
//! truncation equals the leading block of the untruncated operator exactly; it
//! serves as the reference wherever exact entries matter.
//!
//! For `q`, `p` in one slice `C_I`, `D(q) D(p) = e^{-I (q wedge p)} D(q + p)` with
//! `q wedge p = q_0 p_I - q_I p_0`, the slice form of `e^{(q conj(p) - conj(q) p)/2}`.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::Operators;
use crate::liealg::{LieElement, QuatWeyl};
use crate::linalg::{numerical_rank, QMatrix, QVector};
use crate::quadrature::QuadratureGrid;
use crate::quat::{Quaternion, SlicePoint, UnitImaginary};
use crate::sample;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DisplacementOp<T> {
    pub q: Quaternion<T>,
    pub dim: usize,
    pub matrix: QMatrix<T>,
    pub generator: QMatrix<T>,
}

/// `q a^+ - conj(q) a`.
pub fn generator<T: Real>(q: Quaternion<T>, ops: &Operators<T>) -> QMatrix<T> {
    ops.a_dag.left_scalar(q).sub(&ops.a.left_scalar(q.conj())).expect("equal dimensions")
}

/// `exp` of the truncated generator.
pub fn build_d<T: Real>(q: Quaternion<T>, ops: &Operators<T>) -> Result<DisplacementOp<T>> {
    let g = generator(q, ops);
    let matrix = g.exp()?;
    Ok(DisplacementOp { q, dim: ops.dim, matrix, generator: g })
}

/// `sqrt(i!/j!)/(i-j)!` for `i >= j`, by recurrence in `i`.
fn binomial_table<T: Real>(n: usize) -> Vec<T> {
    let mut c = vec![T::zero(); n * n];
    for j in 0..n {
        c[j * n + j] = T::one();
        for i in j + 1..n {
            c[i * n + j] = c[(i - 1) * n + j] * T::from_count(i).sqrt() / T::from_count(i - j);
        }
    }
    c
}

/// `e^{x a^+}` on `n` basis vectors (exact: `a^+` is nilpotent there).
pub fn exp_raising<T: Real>(x: Quaternion<T>, n: usize) -> QMatrix<T> {
    let c = binomial_table::<T>(n);
    let pw = powers(x, n);
    QMatrix::from_fn(n, |i, j| if i >= j { pw[i - j].scale(c[i * n + j]) } else { Quaternion::zero() })
}

/// `e^{x a}` on `n` basis vectors.
pub fn exp_lowering<T: Real>(x: Quaternion<T>, n: usize) -> QMatrix<T> {
    let c = binomial_table::<T>(n);
    let pw = powers(x, n);
    QMatrix::from_fn(n, |j, m| if m >= j { pw[m - j].scale(c[m * n + j]) } else { Quaternion::zero() })
}

fn powers<T: Real>(x: Quaternion<T>, n: usize) -> Vec<Quaternion<T>> {
    let mut out = Vec::with_capacity(n);
    let mut p = Quaternion::from_real(T::one());
    for _ in 0..n {
        out.push(p);
        p *= x;
    }
    out
}

/// `e^{-|q|^2/2} e^{q a^+} e^{-conj(q) a}`.
pub fn build_d_normal<T: Real>(q: Quaternion<T>, n: usize) -> Result<QMatrix<T>> {
    if n == 0 {
        return Err(Error::DimTooSmall { min: 1, got: 0 });
    }
    let e = exp_raising(q, n).matmul(&exp_lowering(-q.conj(), n))?;
    Ok(e.scale((-q.norm_sqr() / T::lit(2.0)).exp()))
}

/// `e^{|q|^2/2} e^{-conj(q) a} e^{q a^+}`, truncated in the middle index.
pub fn build_d_antinormal<T: Real>(q: Quaternion<T>, n: usize) -> Result<QMatrix<T>> {
    if n == 0 {
        return Err(Error::DimTooSmall { min: 1, got: 0 });
    }
    let e = exp_lowering(-q.conj(), n).matmul(&exp_raising(q, n))?;
    Ok(e.scale((q.norm_sqr() / T::lit(2.0)).exp()))
}

/// `D(q) eta` from the normal-ordered form, exact for the truncated `eta`.
pub fn apply_d_normal<T: Real>(q: Quaternion<T>, eta: &QVector<T>) -> QVector<T> {
    let n = eta.dim();
    let c = binomial_table::<T>(n);
    let pw = powers(q, n);
    let nw = powers(-q.conj(), n);
    let e = eta.coeffs();
    let mid: Vec<Quaternion<T>> =
        (0..n).map(|j| (j..n).fold(Quaternion::zero(), |acc, m| acc + nw[m - j].scale(c[m * n + j]) * e[m])).collect();
    let g = (-q.norm_sqr() / T::lit(2.0)).exp();
    QVector::new(
        (0..n)
            .map(|i| (0..=i).fold(Quaternion::zero(), |acc, j| acc + pw[i - j].scale(c[i * n + j]) * mid[j]).scale(g))
            .collect(),
    )
}

/// `q wedge p = (q_0 p_tau - q_tau p_0)_tau`.
pub fn wedge<T: Real>(q: Quaternion<T>, p: Quaternion<T>) -> [T; 3] {
    let (a, b) = (q.im(), p.im());
    std::array::from_fn(|t| q.w * b[t] - a[t] * p.w)
}

/// `exp(-sum_tau tau (q wedge p)_tau)`.
pub fn wedge_phase<T: Real>(q: Quaternion<T>, p: Quaternion<T>) -> Quaternion<T> {
    (-Quaternion::from_parts(T::zero(), wedge(q, p))).exp()
}

/// `exp([G(q), G(p)]/2)` with the algebra bracket of the generators `G`.
pub fn bracket_phase<T: Real>(q: Quaternion<T>, p: Quaternion<T>) -> Quaternion<T> {
    let b = QuatWeyl::generator(q).bracket(&QuatWeyl::generator(p));
    b.x.scale(T::lit(0.5)).exp()
}

/// Which side a scalar phase multiplies the matrix entries from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseSide {
    Left,
    Right,
}

fn with_phase<T: Real>(phase: Quaternion<T>, m: &QMatrix<T>, side: PhaseSide) -> QMatrix<T> {
    match side {
        PhaseSide::Left => m.left_scalar(phase),
        PhaseSide::Right => m.right_scalar(phase),
    }
}

/// Leading block on which truncated relations are compared.
pub fn check_block(n: usize) -> usize {
    n / 2
}

/// `p` moved into the slice of `q`, keeping `p_0` and `|Im p|`.
pub fn into_slice_of<T: Real>(p: Quaternion<T>, q: Quaternion<T>) -> Quaternion<T> {
    q.slice_axis().slice_point(p.w, p.im_norm())
}

/// Relations between `D(q)` and `D(p)`, measured on the leading block.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PairResiduals<T> {
    /// `D(q) D(p)` vs `e^{-I(q wedge p)} D(q+p)`, phase on the left.
    pub composition: T,
    /// The same with the phase multiplied on the right.
    pub composition_right: T,
    /// The same with the bracket-derived phase.
    pub composition_bracket_phase: T,
    /// `D(q) D(p)` vs `e^{-2 I(q wedge p)} D(p) D(q)`.
    pub projective: T,
    /// The same with the exponent's sign flipped.
    pub projective_flipped_sign: T,
    /// `D(q) D(p) D(q)^+` vs `e^{-2 I(q wedge p)} D(p)`.
    pub covariance: T,
}

pub fn pair_residuals<T: Real>(q: Quaternion<T>, p: Quaternion<T>, ops: &Operators<T>) -> Result<PairResiduals<T>> {
    let k = check_block(ops.dim);
    let dq = build_d(q, ops)?.matrix;
    let dp = build_d(p, ops)?.matrix;
    let dqp = build_d(q + p, ops)?.matrix;
    let ph = wedge_phase(q, p);
    let ph2 = ph * ph;
    let prod = dq.matmul(&dp)?;
    let rev = dp.matmul(&dq)?;
    let comp = |phase, side| prod.block_max_abs_diff(&with_phase(phase, &dqp, side), k);
    Ok(PairResiduals {
        composition: comp(ph, PhaseSide::Left)?,
        composition_right: comp(ph, PhaseSide::Right)?,
        composition_bracket_phase: comp(bracket_phase(q, p), PhaseSide::Left)?,
        projective: prod.block_max_abs_diff(&rev.left_scalar(ph2), k)?,
        projective_flipped_sign: prod.block_max_abs_diff(&rev.left_scalar(ph2.conj()), k)?,
        covariance: prod.matmul(&dq.adjoint())?.block_max_abs_diff(&dp.left_scalar(ph2), k)?,
    })
}

/// A residual evaluated for `p` moved into the slice of `q`, and for `p` as given.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseResiduals<T> {
    pub slice_case: T,
    pub general_case: T,
}

fn both_cases<T: Real>(
    q: Quaternion<T>,
    p: Quaternion<T>,
    ops: &Operators<T>,
    pick: impl Fn(&PairResiduals<T>) -> T,
) -> Result<PhaseResiduals<T>> {
    let s = pair_residuals(q, into_slice_of(p, q), ops)?;
    let g = pair_residuals(q, p, ops)?;
    Ok(PhaseResiduals { slice_case: pick(&s), general_case: pick(&g) })
}

pub fn composition_residual<T: Real>(
    q: Quaternion<T>,
    p: Quaternion<T>,
    ops: &Operators<T>,
) -> Result<PhaseResiduals<T>> {
    both_cases(q, p, ops, |r| r.composition)
}

pub fn projective_relation_residual<T: Real>(
    q: Quaternion<T>,
    p: Quaternion<T>,
    ops: &Operators<T>,
) -> Result<PhaseResiduals<T>> {
    both_cases(q, p, ops, |r| r.projective)
}

pub fn covariance_residual<T: Real>(
    q: Quaternion<T>,
    p: Quaternion<T>,
    ops: &Operators<T>,
) -> Result<PhaseResiduals<T>> {
    both_cases(q, p, ops, |r| r.covariance)
}

/// `|D^+ D - 1|` on the leading block.
pub fn unitarity_residual<T: Real>(d: &DisplacementOp<T>) -> Result<T> {
    let k = check_block(d.dim);
    d.matrix.adjoint().matmul(&d.matrix)?.block_max_abs_diff(&QMatrix::identity(d.dim), k)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShiftResiduals<T> {
    /// `D^+ a D` vs `a + x`.
    pub lowering: T,
    /// `(D^+ a D)^+` vs `a^+ + conj(x)`: equal to `lowering` by construction.
    pub raising: T,
    /// `D^+ a^+ D` vs `a^+ + conj(x)`, computed from its own products.
    pub raising_direct: T,
}

pub fn shift_residual<T: Real>(x: Quaternion<T>, ops: &Operators<T>) -> Result<ShiftResiduals<T>> {
    let k = check_block(ops.dim);
    let d = build_d(x, ops)?.matrix;
    let dh = d.adjoint();
    let lo = dh.matmul(&ops.a)?.matmul(&d)?;
    let want_lo = ops.a.add(&ops.scalar(x))?;
    let want_hi = ops.a_dag.add(&ops.scalar(x.conj()))?;
    let hi = dh.matmul(&ops.a_dag)?.matmul(&d)?;
    Ok(ShiftResiduals {
        lowering: lo.block_max_abs_diff(&want_lo, k)?,
        raising: lo.adjoint().block_max_abs_diff(&want_hi, k)?,
        raising_direct: hi.block_max_abs_diff(&want_hi, k)?,
    })
}

/// `|Pi D(x) Pi - D(-x)|` on the leading block.
pub fn parity_conjugation_residual<T: Real>(x: Quaternion<T>, ops: &Operators<T>) -> Result<T> {
    let d = build_d(x, ops)?.matrix;
    let m = build_d(-x, ops)?.matrix;
    ops.parity.matmul(&d)?.matmul(&ops.parity)?.block_max_abs_diff(&m, check_block(ops.dim))
}

/// Pairwise disagreement of the three constructions on the leading block.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrderingResiduals<T> {
    pub exp_vs_normal: T,
    pub exp_vs_antinormal: T,
    pub normal_vs_antinormal: T,
}

pub fn ordering_residuals<T: Real>(q: Quaternion<T>, ops: &Operators<T>) -> Result<OrderingResiduals<T>> {
    let k = check_block(ops.dim);
    let e = build_d(q, ops)?.matrix;
    let n = build_d_normal(q, ops.dim)?;
    let a = build_d_antinormal(q, ops.dim)?;
    Ok(OrderingResiduals {
        exp_vs_normal: e.block_max_abs_diff(&n, k)?,
        exp_vs_antinormal: e.block_max_abs_diff(&a, k)?,
        normal_vs_antinormal: n.block_max_abs_diff(&a, k)?,
    })
}

/// Residuals of `(d_x - I d_y) D / 2 = (a^+ - conj(q)/2) D` and
/// `(d_x + I d_y) D / 2 = -(a - q/2) D`, with central differences of step `h`
/// on the normal-ordered operator.
pub fn slice_derivative_residual<T: Real>(s: SlicePoint<T>, h: T, n: usize) -> Result<(T, T)> {
    let ops = Operators::<T>::new(n)?;
    let at = |x: T, y: T| build_d_normal(s.axis.slice_point(x, y), n);
    let two_h = h + h;
    let dx = at(s.x + h, s.y)?.sub(&at(s.x - h, s.y)?)?.scale(two_h.recip());
    let dy = at(s.x, s.y + h)?.sub(&at(s.x, s.y - h)?)?.scale(two_h.recip());
    let tau = s.axis.quaternion();
    let tdy = dy.left_scalar(tau);
    let half = T::lit(0.5);
    let q = s.quaternion();
    let d = build_d_normal(q, n)?;
    let lhs1 = dx.sub(&tdy)?.scale(half);
    let rhs1 = ops.a_dag.matmul(&d)?.sub(&d.left_scalar(q.conj().scale(half)))?;
    let lhs2 = dx.add(&tdy)?.scale(half);
    let rhs2 = d.left_scalar(q.scale(half)).sub(&ops.a.matmul(&d)?)?;
    let k = check_block(n);
    Ok((lhs1.block_max_abs_diff(&rhs1, k)?, lhs2.block_max_abs_diff(&rhs2, k)?))
}

/// `int |<D(q) eta | eta>|^2 d(sigma)` with `d(tau) = r dr / pi`.
pub fn admissibility_integral<T: Real>(eta: &QVector<T>, grid: &QuadratureGrid<T>, parallel: bool) -> Result<T> {
    let v = grid.fold(
        parallel,
        T::zero(),
        |k, node, acc| {
            let o = apply_d_normal(node.q, eta).inner(eta)?.norm_sqr();
            if !o.is_finite() {
                return Err(Error::NonFiniteIntegrand { node: k });
            }
            *acc += o * grid.plain_weight(node);
            Ok(())
        },
        |a, b| *a + *b,
    )?;
    Ok(v)
}

/// `int |D(q) e_0><D(q) e_0| d(sigma)` compared with the identity on `n` basis vectors.
pub fn square_integrability_check<T: Real>(n: usize, grid: &QuadratureGrid<T>, parallel: bool) -> Result<T> {
    let e0 = QVector::basis(n, 0)?;
    let acc = grid.fold(
        parallel,
        vec![Quaternion::zero(); n * n],
        |k, node, acc| {
            let psi = apply_d_normal(node.q, &e0);
            let w = grid.plain_weight(node);
            let c = psi.coeffs();
            for (a, x) in c.iter().enumerate() {
                for (b, y) in c.iter().enumerate() {
                    let v = (*x * y.conj()).scale(w);
                    if !v.is_finite() {
                        return Err(Error::NonFiniteIntegrand { node: k });
                    }
                    acc[a * n + b] += v;
                }
            }
            Ok(())
        },
        |a, b| a.iter().zip(b).map(|(x, y)| *x + *y).collect(),
    )?;
    QMatrix::from_fn(n, |a, b| acc[a * n + b]).max_abs_diff(&QMatrix::identity(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub target: usize,
    pub samples: usize,
}

/// Numerical rank of `{D(q) e_0}` for random `q` with `|q| <= rmax`, cut to the leading `n/2` components.
pub fn irreducibility_proxy<T: Real>(n: usize, samples: usize, rmax: f64, seed: u64) -> Result<RankReport> {
    let target = check_block(n);
    let e0 = QVector::basis(n, 0)?;
    let mut rng = sample::rng(seed);
    let qs: Vec<Quaternion<T>> = (0..samples).map(|_| sample::ball(&mut rng, rmax)).collect();
    let vs: Vec<QVector<T>> = qs.par_iter().map(|q| apply_d_normal(*q, &e0).head(target)).collect();
    Ok(RankReport { rank: numerical_rank(&vs, T::lit(1e-10).max(T::lit(100.0) * T::epsilon())), target, samples })
}

/// A point of the slice `C_I` from real coordinates.
pub fn slice_point<T: Real>(axis: UnitImaginary<T>, x: T, y: T) -> SlicePoint<T> {
    SlicePoint { x, y, axis, degenerate: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::build_cs;

    type Q = Quaternion<f64>;

    #[test]
    fn zero_displacement_is_identity() {
        let ops = Operators::<f64>::new(8).unwrap();
        let d = build_d(Q::zero(), &ops).unwrap();
        assert!(d.matrix.max_abs_diff(&QMatrix::identity(8)).unwrap() < 1e-15);
    }

    #[test]
    fn normal_form_column_zero_is_the_coherent_state() {
        let q = Q::new(0.4, -0.3, 0.8, 0.1);
        let d = build_d_normal(q, 40).unwrap();
        let cs = build_cs(q, 40, 1e-14).unwrap();
        assert!(d.column(0).distance(&cs.vector).unwrap() < 1e-15);
        let v = apply_d_normal(q, &QVector::basis(40, 0).unwrap());
        assert!(v.distance(&cs.vector).unwrap() < 1e-15);
    }

    #[test]
    fn apply_matches_matrix() {
        let q = Q::new(-0.2, 0.1, 0.5, -0.6);
        let eta = QVector::new((0..9).map(|k| Q::new(k as f64, 1.0, -0.5, 0.25 * k as f64)).collect());
        let m = build_d_normal(q, 9).unwrap().apply(&eta).unwrap();
        assert!(apply_d_normal(q, &eta).distance(&m).unwrap() < 1e-13);
    }

    #[test]
    fn entries_stay_in_the_slice_of_q() {
        let q = Q::new(0.3, 0.2, -0.5, 0.4);
        let axis = q.slice_axis();
        let ops = Operators::<f64>::new(16).unwrap();
        let d = build_d(q, &ops).unwrap();
        assert!(d.matrix.entries().iter().all(|e| e.in_slice(axis, 1e-12)));
    }

    #[test]
    fn wedge_phase_in_slice_is_the_commutator_phase() {
        let axis = UnitImaginary::<f64>::sample_seeded(4);
        let q = axis.slice_point(0.3, -0.2);
        let p = axis.slice_point(-0.1, 0.45);
        // e^{(q conj p - conj q p)/2} inside one slice.
        let want = ((q * p.conj() - q.conj() * p).scale(0.5)).exp();
        assert!(wedge_phase(q, p).dist(want) < 1e-15);
        let b = bracket_phase(q, p);
        let w = wedge(q, p);
        let c = 1.0 / 3f64.sqrt();
        let lit = (-Q::new(0.0, w[0] * c, w[1] * c, w[2] * c)).exp();
        assert!(b.dist(lit) < 1e-15);
    }

    #[test]
    fn slice_composition_small_pair() {
        let ops = Operators::<f64>::new(48).unwrap();
        let q = Q::new(0.2, 0.1, -0.3, 0.2);
        let p = Q::new(-0.1, 0.3, 0.2, 0.0);
        let r = composition_residual(q, p, &ops).unwrap();
        assert!(r.slice_case < 1e-10, "{r:?}");
        assert!(r.general_case > 1e-4);
    }
}
