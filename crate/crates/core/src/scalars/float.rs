use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{parse_rational, Analytic, Real, Scalar};

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn precision_bits() -> u32 {
        53
    }

    fn to_text(&self) -> String {
        format!("{:.17e}", self)
    }

    fn as_integer(&self) -> Option<i64> {
        if self.fract() == 0.0 && self.abs() < 9.0e15 {
            Some(*self as i64)
        } else {
            None
        }
    }
}

impl Analytic for f64 {
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
}

impl Real for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sin_cos(&self) -> (Self, Self) {
        f64::sin_cos(*self)
    }
    fn atan2(&self, x: &Self) -> Self {
        f64::atan2(*self, *x)
    }
    fn gamma_fn(&self) -> Self {
        libm::tgamma(*self)
    }
    fn parse_real(s: &str) -> Option<Self> {
        parse_rational(s).and_then(|r| r.to_f64())
    }
}
