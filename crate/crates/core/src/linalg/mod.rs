//! Vectors and matrices over the quaternions, acting on a right quaternionic space.

mod complex;
mod expm;
mod matrix;
mod rank;
mod vector;

pub use complex::CMatrix;
pub use expm::expm;
pub use matrix::QMatrix;
pub use rank::numerical_rank;
pub use vector::QVector;
