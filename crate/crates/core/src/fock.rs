//! Ladder, position, momentum and number operators on the truncated basis `e_0..e_{N-1}`.
//!
//! Truncation leaves the last diagonal entry of `[a, a^+]` at `-(N-1)`; every
//! relation that involves it holds only on the interior block `0..N-2`.

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::quat::{Quaternion, UnitImaginary};
use crate::scalar::Real;

/// Size of the leading block on which the canonical relations hold.
pub fn interior(n: usize) -> usize {
    n.saturating_sub(1)
}

fn require(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::DimTooSmall { min: 2, got: n });
    }
    Ok(())
}

/// `(a, a^+)` with `a[m][m+1] = sqrt(m+1)`.
pub fn build_ladder<T: Real>(n: usize) -> Result<(QMatrix<T>, QMatrix<T>)> {
    require(n)?;
    let mut a = QMatrix::zeros(n);
    for m in 0..n - 1 {
        a.set(m, m + 1, Quaternion::from_real(T::from_count(m + 1).sqrt()));
    }
    let ad = a.adjoint();
    Ok((a, ad))
}

/// `diag(0, 1, ..., N-1)`.
pub fn build_number<T: Real>(n: usize) -> Result<QMatrix<T>> {
    require(n)?;
    Ok(QMatrix::diagonal(&(0..n).map(T::from_count).collect::<Vec<_>>()))
}

/// `Q = (a + a^+)/sqrt(2)`.
pub fn build_position<T: Real>(n: usize) -> Result<QMatrix<T>> {
    let (a, ad) = build_ladder::<T>(n)?;
    Ok(a.add(&ad)?.scale(T::SQRT_2().recip()))
}

/// `P_0 = -(a - a^+)/sqrt(2)`, so that `P_I = I P_0`.
pub fn build_p0<T: Real>(n: usize) -> Result<QMatrix<T>> {
    let (a, ad) = build_ladder::<T>(n)?;
    Ok(a.sub(&ad)?.scale(-T::SQRT_2().recip()))
}

/// `P_I = (-I/sqrt(2)) (a - a^+)`, entries multiplied on the left.
pub fn build_momentum<T: Real>(n: usize, axis: UnitImaginary<T>) -> Result<QMatrix<T>> {
    let (a, ad) = build_ladder::<T>(n)?;
    let c = -axis.quaternion() / T::SQRT_2();
    Ok(a.sub(&ad)?.left_scalar(c))
}

/// `H_I = (Q^2 + P_I^2)/2`.
pub fn build_hamiltonian<T: Real>(n: usize, axis: UnitImaginary<T>) -> Result<QMatrix<T>> {
    let q = build_position::<T>(n)?;
    let p = build_momentum(n, axis)?;
    Ok(q.matmul(&q)?.add(&p.matmul(&p)?)?.scale(T::lit(0.5)))
}

/// `diag((-1)^n)`.
pub fn build_parity<T: Real>(n: usize) -> Result<QMatrix<T>> {
    if n == 0 {
        return Err(Error::DimTooSmall { min: 1, got: 0 });
    }
    Ok(QMatrix::diagonal(&(0..n).map(|k| if k % 2 == 0 { T::one() } else { -T::one() }).collect::<Vec<_>>()))
}

/// The fixed operators for one truncation, built once and shared.
#[derive(Clone, Debug)]
pub struct Operators<T> {
    pub dim: usize,
    pub a: QMatrix<T>,
    pub a_dag: QMatrix<T>,
    pub number: QMatrix<T>,
    pub position: QMatrix<T>,
    pub p0: QMatrix<T>,
    pub parity: QMatrix<T>,
}

impl<T: Real> Operators<T> {
    pub fn new(n: usize) -> Result<Self> {
        let (a, a_dag) = build_ladder(n)?;
        Ok(Self {
            dim: n,
            a,
            a_dag,
            number: build_number(n)?,
            position: build_position(n)?,
            p0: build_p0(n)?,
            parity: build_parity(n)?,
        })
    }

    pub fn momentum(&self, axis: UnitImaginary<T>) -> QMatrix<T> {
        build_momentum(self.dim, axis).expect("dimension already validated")
    }

    pub fn hamiltonian(&self, axis: UnitImaginary<T>) -> QMatrix<T> {
        build_hamiltonian(self.dim, axis).expect("dimension already validated")
    }

    /// `[a, a^+]`.
    pub fn ladder_commutator(&self) -> QMatrix<T> {
        self.a.commutator(&self.a_dag).expect("equal dimensions")
    }

    pub fn identity(&self) -> QMatrix<T> {
        QMatrix::identity(self.dim)
    }

    /// `q 1` as an operator.
    pub fn scalar(&self, q: Quaternion<T>) -> QMatrix<T> {
        self.identity().left_scalar(q)
    }
}
