//! Scalar fields and the q-special-function kernel.
//!
//! Everything above this module is written against three traits:
//! [`Scalar`] (a field with conversions), [`Analytic`] (adds `exp`, `ln`,
//! `sqrt`) and [`Real`] (ordered, with `gamma` and trigonometry).
//! Implementations exist for [`BigRational`] (exact, `Scalar` only), `f64`,
//! the MPFR-backed [`Mp`] and `Complex<T>` over any `Real` `T`.

mod complex;
mod exact;
mod float;
mod mp;
mod qfunc;

use std::fmt::Debug;
use std::ops::Neg;

use num_rational::BigRational;
use num_traits::Num;

pub use complex::cis;
pub use mp::Mp;
pub use qfunc::{
    qfactorial, qgamma, qgamma_int_exact, qnumber, qnumber_int, qpoch_finite, qpoch_inf,
    qpoch_inf_counted, PrecisionCtx,
};

/// A field element usable as a polynomial coefficient or a numeric value.
pub trait Scalar:
    Clone + Debug + PartialEq + Send + Sync + 'static + Num + Neg<Output = Self>
{
    /// True for exact arithmetic (rationals).
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn from_ratio(r: &BigRational) -> Self;

    /// |x| as an `f64`; may underflow to zero for tiny values.
    fn magnitude(&self) -> f64;

    /// log2 |x| without underflow; `-inf` at zero.
    fn log2_magnitude(&self) -> f64 {
        self.magnitude().log2()
    }

    /// Working precision in bits; `u32::MAX` for exact types.
    fn precision_bits() -> u32;

    /// Full-precision decimal (or `p/q`) rendering.
    fn to_text(&self) -> String;

    /// `Some(m)` when the value is exactly the integer `m`.
    fn as_integer(&self) -> Option<i64>;

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    fn powi(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.recip() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Zero test used by exact elimination and division checks. Inexact
    /// types treat values below `scale * 2^-(p-8)` as zero.
    fn is_negligible(&self, scale: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            let bits = Self::precision_bits().min(1000) as f64;
            self.magnitude() <= scale.abs() * (8.0 - bits).exp2()
        }
    }
}

/// Scalars with elementary transcendental functions.
pub trait Analytic: Scalar {
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sqrt(&self) -> Self;

    fn powf(&self, e: &Self) -> Self {
        if let Some(m) = e.as_integer() {
            if m.unsigned_abs() <= 1 << 20 {
                return self.powi(m);
            }
        }
        (e.clone() * self.ln()).exp()
    }

    fn pi() -> Self;
}

/// Ordered real scalars.
pub trait Real: Analytic + PartialOrd {
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn sin_cos(&self) -> (Self, Self);
    fn atan2(&self, x: &Self) -> Self;
    /// Euler gamma function (not defined at poles).
    fn gamma_fn(&self) -> Self;
    /// Parse a decimal or `p/q` string at working precision.
    fn parse_real(s: &str) -> Option<Self>;
}

/// Parse `p/q`, an integer, or a terminating decimal (with optional
/// exponent) into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    use num_bigint::BigInt;
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q == BigInt::from(0) {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{ip}{fp}").parse().ok()?;
    let scale = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Some(r)
}
