//! Three real Lie algebras generated by `1`, `Q`, `P` and their brackets.
//!
//! Each bracket is the sum over `tau in {i, j, k}` of a commutator taken inside
//! the complex slice `C_tau`, where every generator splits into commuting
//! components. Coefficients shared by all three slices enter each one scaled by
//! `1/sqrt(3)`. The brackets are evaluated from these slice components directly,
//! without forming matrices.

use std::fmt::Debug;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{interior, Operators};
use crate::linalg::QMatrix;
use crate::quat::{Quaternion, UnitImaginary};
use crate::sample;
use crate::scalar::Real;

fn inv_sqrt3<T: Real>() -> T {
    T::lit(3.0).sqrt().recip()
}

fn axes<T: Real>() -> [Quaternion<T>; 3] {
    UnitImaginary::basis().map(|u| u.quaternion())
}

fn im3<T: Real>(v: [T; 3]) -> Quaternion<T> {
    Quaternion::from_parts(T::zero(), v)
}

/// Operations shared by the algebra elements.
pub trait LieElement<T: Real>: Clone + Debug + PartialEq {
    fn zero() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn scale(&self, s: T) -> Self;
    fn bracket(&self, o: &Self) -> Self;
    fn coords(&self) -> Vec<T>;
    /// Coordinates uniform in `[-1, 1]`.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;
    /// The operator the element stands for.
    fn to_matrix(&self, ops: &Operators<T>) -> QMatrix<T>;
    /// The operators of the three slice components.
    fn slice_matrices(&self, ops: &Operators<T>) -> [QMatrix<T>; 3];

    fn distance(&self, o: &Self) -> T {
        self.coords().iter().zip(o.coords()).fold(T::zero(), |acc, (a, b)| acc.max((*a - b).abs()))
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-T::one()))
    }
}

fn draw<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::lit(sample::uniform(rng, -1.0, 1.0))
}

fn draw3<T: Real, R: Rng + ?Sized>(rng: &mut R) -> [T; 3] {
    [draw(rng), draw(rng), draw(rng)]
}

fn add3<T: Real>(a: [T; 3], b: [T; 3]) -> [T; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale3<T: Real>(a: [T; 3], s: T) -> [T; 3] {
    a.map(|x| x * s)
}

/// `x tau 1 + y Q + z P_tau` in the slice algebra of one axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SliceElement<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> SliceElement<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    /// `[x tau + y Q + z P_tau, r tau + s Q + t P_tau] = (y t - z s) tau 1`.
    pub fn bracket(&self, o: &Self) -> Self {
        Self::new(self.y * o.z - self.z * o.y, T::zero(), T::zero())
    }

    pub fn to_matrix(&self, ops: &Operators<T>, axis: UnitImaginary<T>) -> QMatrix<T> {
        let t = axis.quaternion();
        ops.scalar(t.scale(self.x))
            .add(&ops.position.scale(self.y))
            .and_then(|m| m.add(&ops.momentum(axis).scale(self.z)))
            .expect("equal dimensions")
    }
}

/// Element of the direct sum of the three slice algebras.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DirectSum<T> {
    pub parts: [SliceElement<T>; 3],
}

impl<T: Real> DirectSum<T> {
    pub fn bracket(&self, o: &Self) -> Self {
        Self { parts: std::array::from_fn(|t| self.parts[t].bracket(&o.parts[t])) }
    }

    pub fn distance(&self, o: &Self) -> T {
        let mut d = T::zero();
        for (a, b) in self.parts.iter().zip(&o.parts) {
            d = d.max((a.x - b.x).abs()).max((a.y - b.y).abs()).max((a.z - b.z).abs());
        }
        d
    }
}

/// `sum_tau x_tau tau 1 + y Q + sum_tau z_tau P_tau`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RealWeyl<T> {
    pub x: [T; 3],
    pub y: T,
    pub z: [T; 3],
}

impl<T: Real> RealWeyl<T> {
    pub fn new(x: [T; 3], y: T, z: [T; 3]) -> Self {
        Self { x, y, z }
    }

    /// Slice components `(x_tau, y/sqrt(3), z_tau)`.
    pub fn embed(&self) -> DirectSum<T> {
        let y = self.y * inv_sqrt3::<T>();
        DirectSum { parts: std::array::from_fn(|t| SliceElement::new(self.x[t], y, self.z[t])) }
    }

    /// Inverse of [`embed`](Self::embed) on its image.
    pub fn unembed(d: &DirectSum<T>, tol: T) -> Result<Self> {
        let y = d.parts[0].y;
        let dev = d.parts.iter().fold(T::zero(), |acc, p| acc.max((p.y - y).abs()));
        if dev > tol * (T::one() + y.abs()) || !dev.is_finite() {
            return Err(Error::NotInImage { deviation: dev.as_f64() });
        }
        Ok(Self::new(d.parts.map(|p| p.x), y * T::lit(3.0).sqrt(), d.parts.map(|p| p.z)))
    }

    /// The same operator written over `1, a, a^+` with quaternion coefficients.
    pub fn to_quat_weyl(&self) -> QuatWeyl<T> {
        let z = im3(self.z);
        let y = Quaternion::from_real(self.y);
        let s = T::SQRT_2().recip();
        QuatWeyl::new(im3(self.x), (y - z).scale(s), (y + z).scale(s))
    }
}

impl<T: Real> LieElement<T> for RealWeyl<T> {
    fn zero() -> Self {
        Self::new([T::zero(); 3], T::zero(), [T::zero(); 3])
    }

    fn add(&self, o: &Self) -> Self {
        Self::new(add3(self.x, o.x), self.y + o.y, add3(self.z, o.z))
    }

    fn scale(&self, s: T) -> Self {
        Self::new(scale3(self.x, s), self.y * s, scale3(self.z, s))
    }

    fn bracket(&self, o: &Self) -> Self {
        let d = self.embed().bracket(&o.embed());
        Self::new(d.parts.map(|p| p.x), T::zero(), [T::zero(); 3])
    }

    fn coords(&self) -> Vec<T> {
        vec![self.x[0], self.x[1], self.x[2], self.y, self.z[0], self.z[1], self.z[2]]
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::new(draw3(rng), draw(rng), draw3(rng))
    }

    fn to_matrix(&self, ops: &Operators<T>) -> QMatrix<T> {
        let mut m = ops.position.scale(self.y);
        for (t, axis) in UnitImaginary::basis().into_iter().enumerate() {
            m = m.add(&ops.scalar(axis.quaternion().scale(self.x[t]))).expect("equal dimensions");
            m = m.add(&ops.momentum(axis).scale(self.z[t])).expect("equal dimensions");
        }
        m
    }

    fn slice_matrices(&self, ops: &Operators<T>) -> [QMatrix<T>; 3] {
        let d = self.embed();
        let b = UnitImaginary::basis();
        std::array::from_fn(|t| d.parts[t].to_matrix(ops, b[t]))
    }
}

/// `sum_tau x_tau tau 1 + a P_0 + sum_tau b_tau tau Q`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HatWeyl<T> {
    pub x: [T; 3],
    pub a: T,
    pub b: [T; 3],
}

impl<T: Real> HatWeyl<T> {
    pub fn new(x: [T; 3], a: T, b: [T; 3]) -> Self {
        Self { x, a, b }
    }

    /// `q a^+ - conj(q) a`, i.e. `a = sqrt(2) q_0` and `b = sqrt(2) Im q`.
    pub fn generator(q: Quaternion<T>) -> Self {
        let s = T::SQRT_2();
        Self::new([T::zero(); 3], q.w * s, scale3(q.im(), s))
    }

    pub fn to_quat_weyl(&self) -> QuatWeyl<T> {
        let v = im3(self.b);
        let a = Quaternion::from_real(self.a);
        let s = T::SQRT_2().recip();
        QuatWeyl::new(im3(self.x), (v - a).scale(s), (v + a).scale(s))
    }
}

impl<T: Real> LieElement<T> for HatWeyl<T> {
    fn zero() -> Self {
        Self::new([T::zero(); 3], T::zero(), [T::zero(); 3])
    }

    fn add(&self, o: &Self) -> Self {
        Self::new(add3(self.x, o.x), self.a + o.a, add3(self.b, o.b))
    }

    fn scale(&self, s: T) -> Self {
        Self::new(scale3(self.x, s), self.a * s, scale3(self.b, s))
    }

    /// Slice `tau`: `[(a/sqrt 3) P_0 + b_tau tau Q, ...] = -((a/sqrt 3) b'_tau - b_tau (a'/sqrt 3)) tau 1`.
    fn bracket(&self, o: &Self) -> Self {
        let c = inv_sqrt3::<T>();
        let (a1, a2) = (self.a * c, o.a * c);
        let x = std::array::from_fn(|t| -(a1 * o.b[t] - self.b[t] * a2));
        Self::new(x, T::zero(), [T::zero(); 3])
    }

    fn coords(&self) -> Vec<T> {
        vec![self.x[0], self.x[1], self.x[2], self.a, self.b[0], self.b[1], self.b[2]]
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::new(draw3(rng), draw(rng), draw3(rng))
    }

    fn to_matrix(&self, ops: &Operators<T>) -> QMatrix<T> {
        let mut m = ops.p0.scale(self.a);
        for (t, tau) in axes::<T>().into_iter().enumerate() {
            m = m.add(&ops.scalar(tau.scale(self.x[t]))).expect("equal dimensions");
            m = m.add(&ops.position.left_scalar(tau.scale(self.b[t]))).expect("equal dimensions");
        }
        m
    }

    fn slice_matrices(&self, ops: &Operators<T>) -> [QMatrix<T>; 3] {
        let a = self.a * inv_sqrt3::<T>();
        let tau = axes::<T>();
        std::array::from_fn(|t| {
            ops.scalar(tau[t].scale(self.x[t]))
                .add(&ops.p0.scale(a))
                .and_then(|m| m.add(&ops.position.left_scalar(tau[t].scale(self.b[t]))))
                .expect("equal dimensions")
        })
    }
}

/// `x 1 + y a + z a^+` with quaternion coefficients multiplied on the left.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuatWeyl<T> {
    pub x: Quaternion<T>,
    pub y: Quaternion<T>,
    pub z: Quaternion<T>,
}

/// Component of `w` in the slice `C_tau`: `w_0/sqrt(3) + w_tau tau`, as `(re, im)`.
fn slice_part<T: Real>(w: Quaternion<T>, t: usize) -> (T, T) {
    (w.w * inv_sqrt3::<T>(), w.im()[t])
}

fn cmul<T: Real>(a: (T, T), b: (T, T)) -> (T, T) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

impl<T: Real> QuatWeyl<T> {
    pub fn new(x: Quaternion<T>, y: Quaternion<T>, z: Quaternion<T>) -> Self {
        Self { x, y, z }
    }

    /// `q a^+ - conj(q) a`.
    pub fn generator(q: Quaternion<T>) -> Self {
        Self::new(Quaternion::from_real(T::zero()), -q.conj(), q)
    }

    fn slice_coeff(w: (T, T), t: usize) -> Quaternion<T> {
        Quaternion::from_real(w.0) + axes::<T>()[t].scale(w.1)
    }
}

impl<T: Real> LieElement<T> for QuatWeyl<T> {
    fn zero() -> Self {
        let z = Quaternion::from_real(T::zero());
        Self::new(z, z, z)
    }

    fn add(&self, o: &Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }

    fn scale(&self, s: T) -> Self {
        Self::new(self.x.scale(s), self.y.scale(s), self.z.scale(s))
    }

    /// `sum_tau (y_tau t_tau - z_tau s_tau)` with the slice components multiplied in `C_tau`.
    fn bracket(&self, o: &Self) -> Self {
        let mut out = Quaternion::from_real(T::zero());
        for t in 0..3 {
            let yt = cmul(slice_part(self.y, t), slice_part(o.z, t));
            let zs = cmul(slice_part(self.z, t), slice_part(o.y, t));
            out += Self::slice_coeff((yt.0 - zs.0, yt.1 - zs.1), t);
        }
        let z = Quaternion::from_real(T::zero());
        Self::new(out, z, z)
    }

    fn coords(&self) -> Vec<T> {
        [self.x, self.y, self.z].iter().flat_map(|q| [q.w, q.x, q.y, q.z]).collect()
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut q = || Quaternion::new(draw(rng), draw(rng), draw(rng), draw(rng));
        Self::new(q(), q(), q())
    }

    fn to_matrix(&self, ops: &Operators<T>) -> QMatrix<T> {
        ops.scalar(self.x)
            .add(&ops.a.left_scalar(self.y))
            .and_then(|m| m.add(&ops.a_dag.left_scalar(self.z)))
            .expect("equal dimensions")
    }

    fn slice_matrices(&self, ops: &Operators<T>) -> [QMatrix<T>; 3] {
        std::array::from_fn(|t| {
            let c = |w| Self::slice_coeff(slice_part(w, t), t);
            Self::new(c(self.x), c(self.y), c(self.z)).to_matrix(ops)
        })
    }
}

/// Largest residual of each axiom over random tuples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AxiomReport<T> {
    pub samples: usize,
    pub bilinearity_left: T,
    pub bilinearity_right: T,
    pub alternativity: T,
    pub antisymmetry: T,
    pub jacobi: T,
}

impl<T: Real> AxiomReport<T> {
    pub fn worst(&self) -> T {
        self.bilinearity_left
            .max(self.bilinearity_right)
            .max(self.alternativity)
            .max(self.antisymmetry)
            .max(self.jacobi)
    }
}

pub fn axiom_suite<T: Real, E: LieElement<T>>(samples: usize, seed: u64) -> AxiomReport<T> {
    let mut rng = sample::rng(seed);
    let z = T::zero();
    let mut r = AxiomReport {
        samples,
        bilinearity_left: z,
        bilinearity_right: z,
        alternativity: z,
        antisymmetry: z,
        jacobi: z,
    };
    for _ in 0..samples {
        let (a, b, c) = (E::sample(&mut rng), E::sample(&mut rng), E::sample(&mut rng));
        let al = T::lit(sample::uniform(&mut rng, -2.0, 2.0));
        let be = T::lit(sample::uniform(&mut rng, -2.0, 2.0));
        let lin = a.scale(al).add(&b.scale(be));
        let l = lin.bracket(&c).distance(&a.bracket(&c).scale(al).add(&b.bracket(&c).scale(be)));
        let rr = c.bracket(&lin).distance(&c.bracket(&a).scale(al).add(&c.bracket(&b).scale(be)));
        let alt = a.bracket(&a).distance(&E::zero());
        let anti = a.bracket(&b).add(&b.bracket(&a)).distance(&E::zero());
        let jac = a
            .bracket(&b.bracket(&c))
            .add(&b.bracket(&c.bracket(&a)))
            .add(&c.bracket(&a.bracket(&b)))
            .distance(&E::zero());
        r.bilinearity_left = r.bilinearity_left.max(l);
        r.bilinearity_right = r.bilinearity_right.max(rr);
        r.alternativity = r.alternativity.max(alt);
        r.antisymmetry = r.antisymmetry.max(anti);
        r.jacobi = r.jacobi.max(jac);
    }
    r
}

/// `|sigma([A, B]) - [sigma A, sigma B]|`.
pub fn sigma_homomorphism_residual<T: Real>(a: &RealWeyl<T>, b: &RealWeyl<T>) -> T {
    a.bracket(b).embed().distance(&a.embed().bracket(&b.embed()))
}

/// Interior-block distance between the operator of `[A, B]` and
/// `sum_tau [A_tau, B_tau]` computed from matrices.
pub fn slice_commutator_residual<T: Real, E: LieElement<T>>(a: &E, b: &E, ops: &Operators<T>) -> T {
    let (sa, sb) = (a.slice_matrices(ops), b.slice_matrices(ops));
    let mut sum = QMatrix::zeros(ops.dim);
    for t in 0..3 {
        sum = sum.add(&sa[t].commutator(&sb[t]).expect("equal dimensions")).expect("equal dimensions");
    }
    sum.block_max_abs_diff(&a.bracket(b).to_matrix(ops), interior(ops.dim)).expect("equal dimensions")
}

/// Interior-block distance between the operator of `[A, B]` and the plain
/// commutator of the operators of `A` and `B`.
pub fn operator_commutator_residual<T: Real, E: LieElement<T>>(a: &E, b: &E, ops: &Operators<T>) -> T {
    let c = a.to_matrix(ops).commutator(&b.to_matrix(ops)).expect("equal dimensions");
    c.block_max_abs_diff(&a.bracket(b).to_matrix(ops), interior(ops.dim)).expect("equal dimensions")
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Quaternion<f64>;

    #[test]
    fn bracket_examples() {
        let a = RealWeyl::new([1.0, 0.0, 0.0], 1.0, [0.0; 3]);
        let b = RealWeyl::new([0.0; 3], 0.0, [0.0, 1.0, 0.0]);
        let c = a.bracket(&b);
        assert!(c.distance(&RealWeyl::new([0.0, 1.0 / 3f64.sqrt(), 0.0], 0.0, [0.0; 3])) < 1e-16);

        let z = Q::from_real(0.0);
        let lower = QuatWeyl::new(z, Q::from_real(1.0), z);
        let upper = QuatWeyl::new(z, z, Q::from_real(1.0));
        let c = lower.bracket(&upper);
        assert!(c.x.dist(Q::from_real(1.0)) < 1e-15 && c.y == z && c.z == z);
    }

    #[test]
    fn embedding_round_trip_and_image() {
        let a = RealWeyl::new([0.1, -0.2, 0.3], 0.7, [1.0, 2.0, -3.0]);
        let back = RealWeyl::unembed(&a.embed(), 1e-12).unwrap();
        assert!(back.distance(&a) < 1e-15);
        let mut d = a.embed();
        d.parts[2].y = 5.0;
        assert!(matches!(RealWeyl::unembed(&d, 1e-12), Err(Error::NotInImage { .. })));
    }

    #[test]
    fn real_weyl_restricts_to_the_quaternion_algebra() {
        let mut rng = sample::rng(1);
        let ops = Operators::<f64>::new(8).unwrap();
        for _ in 0..20 {
            let (a, b) = (RealWeyl::<f64>::sample(&mut rng), RealWeyl::<f64>::sample(&mut rng));
            let l = a.bracket(&b).to_quat_weyl();
            let r = a.to_quat_weyl().bracket(&b.to_quat_weyl());
            assert!(l.distance(&r) < 1e-14);
            assert!(a.to_matrix(&ops).max_abs_diff(&a.to_quat_weyl().to_matrix(&ops)).unwrap() < 1e-14);
            let h = HatWeyl::<f64>::sample(&mut rng);
            assert!(h.to_matrix(&ops).max_abs_diff(&h.to_quat_weyl().to_matrix(&ops)).unwrap() < 1e-14);
        }
    }

    #[test]
    fn generators_agree_between_algebras() {
        let (q, p) = (Q::new(0.3, -0.1, 0.4, 0.2), Q::new(-0.2, 0.5, 0.1, -0.3));
        let h = HatWeyl::generator(q).bracket(&HatWeyl::generator(p));
        let w = QuatWeyl::generator(q).bracket(&QuatWeyl::generator(p));
        assert!(h.to_quat_weyl().distance(&w) < 1e-15);
        let ops = Operators::<f64>::new(6).unwrap();
        let d = HatWeyl::generator(q).to_matrix(&ops).max_abs_diff(&QuatWeyl::generator(q).to_matrix(&ops)).unwrap();
        assert!(d < 1e-15);
    }

    #[test]
    fn slice_matrix_commutators_match_the_brackets() {
        let mut rng = sample::rng(2);
        let ops = Operators::<f64>::new(10).unwrap();
        for _ in 0..10 {
            let (a, b) = (RealWeyl::<f64>::sample(&mut rng), RealWeyl::sample(&mut rng));
            assert!(slice_commutator_residual(&a, &b, &ops) < 1e-13);
            let (a, b) = (HatWeyl::<f64>::sample(&mut rng), HatWeyl::sample(&mut rng));
            assert!(slice_commutator_residual(&a, &b, &ops) < 1e-13);
            let (a, b) = (QuatWeyl::<f64>::sample(&mut rng), QuatWeyl::sample(&mut rng));
            assert!(slice_commutator_residual(&a, &b, &ops) < 1e-13);
        }
    }
}
