//! Verification engine for q-Selberg integrals, nonsymmetric Koornwinder
//! polynomials and Baker–Forrester type constant term identities.
//!
//! The numeric core is generic over [`scalars::Scalar`]; the aliases below
//! fix the common choices.

pub mod classical;
pub mod ctidentity;
pub mod error;
pub mod hecke;
pub mod laurent;
pub mod pairing;
pub mod qselberg;
pub mod scalars;
pub mod weights;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use num_rational::BigRational;
pub use hecke::HeckeCtx;
pub use laurent::LaurentPoly;
pub use scalars::{Analytic, Mp, PrecisionCtx, Real, Scalar};
pub use weights::{ParamSet, Weight};

/// Exact rational scalar.
pub type Rational = BigRational;
/// IEEE double.
pub type Real53 = f64;
/// 64-bit mantissa (double-extended).
pub type Real64 = Mp<64>;
pub type Real128 = Mp<128>;
/// Default working precision.
pub type Real256 = Mp<256>;
pub type Real512 = Mp<512>;
pub type Real1024 = Mp<1024>;
pub type Complex64 = Complex<Real64>;
pub type Complex256 = Complex<Real256>;
