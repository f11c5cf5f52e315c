use super::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

const THETA13: f64 = 5.371920351148152;

/// Matrix exponential by degree-13 Pade approximation with scaling and squaring.
pub fn expm<T: Real>(a: &CMatrix<T>) -> Result<CMatrix<T>> {
    let n = a.dim();
    let norm = a.one_norm();
    if !norm.is_finite() {
        return Err(Error::ConvergenceFailure { what: "matrix exponential" });
    }
    let s = if norm.as_f64() > THETA13 { (norm.as_f64() / THETA13).log2().ceil() as i32 } else { 0 };
    let a = a.scale(T::lit(2f64.powi(-s)));
    let b: Vec<T> = PADE13.iter().map(|&c| T::lit(c)).collect();

    let a2 = a.matmul(&a)?;
    let a4 = a2.matmul(&a2)?;
    let a6 = a4.matmul(&a2)?;

    let inner_u = a6.scale(b[13]).add(&a4.scale(b[11]))?.add(&a2.scale(b[9]))?;
    let u = a6.matmul(&inner_u)?.add(&a6.scale(b[7]))?.add(&a4.scale(b[5]))?.add(&a2.scale(b[3]))?.add_identity(b[1]);
    let u = a.matmul(&u)?;
    let inner_v = a6.scale(b[12]).add(&a4.scale(b[10]))?.add(&a2.scale(b[8]))?;
    let v = a6.matmul(&inner_v)?.add(&a6.scale(b[6]))?.add(&a4.scale(b[4]))?.add(&a2.scale(b[2]))?.add_identity(b[0]);

    let mut r = v.sub(&u)?.solve(&v.add(&u)?)?;
    for _ in 0..s {
        r = r.matmul(&r)?;
    }
    if r.max_abs().is_finite() {
        debug_assert_eq!(r.dim(), n);
        Ok(r)
    } else {
        Err(Error::ConvergenceFailure { what: "matrix exponential" })
    }
}
