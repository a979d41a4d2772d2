//! Exact computations for symplectic and orthogonal parabolic Higgs bundles
//! on the projective line with marked points.

pub mod error;
pub mod generic;
pub mod higgs;
pub mod hitchin;
pub mod matrix;
pub mod pairing;
pub mod parabolic;
pub mod poly;
pub mod quadratic;
pub mod roots;
pub mod scalar;
pub mod stability;
pub mod verystable;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use poly::Polynomial;
pub use scalar::{Field, Ring};

/// Exact rational scalars.
pub type Rational = num_rational::BigRational;
/// Polynomials in the affine coordinate `z` with rational coefficients.
pub type Poly = Polynomial<Rational>;
/// Matrices with polynomial entries (Higgs fields, pairing forms).
pub type PolyMatrix = Matrix<Poly>;
/// Constant rational matrices (flags, fiber values).
pub type QMatrix = Matrix<Rational>;
