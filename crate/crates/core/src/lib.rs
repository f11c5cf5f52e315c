//! Quaternionic harmonic-oscillator algebra on a truncated Fock basis.
//!
//! Every numeric type is generic over [`Real`]; the aliases below fix `f64`
//! (and `f32` where it is useful).

pub mod coherent;
pub mod displacement;
pub mod error;
pub mod fock;
pub mod liealg;
pub mod linalg;
pub mod quadrature;
pub mod quantize;
pub mod quat;
pub mod sample;
pub mod scalar;

pub use error::{Error, Result};
pub use linalg::{QMatrix, QVector};
pub use quat::{ComplexMatrix2, PolarForm, Quaternion, SlicePoint, UnitImaginary};
pub use scalar::Real;

pub type Quat = Quaternion<f64>;
pub type Quat32 = Quaternion<f32>;
pub type Axis = UnitImaginary<f64>;
pub type QVec = QVector<f64>;
pub type QMat = QMatrix<f64>;
pub type QMat32 = QMatrix<f32>;
