use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use rug::float::Constant;
use rug::{Float, Integer, Rational};

use super::{parse_rational, Analytic, Real, Scalar};

/// MPFR float with `P` bits of mantissa, round-to-nearest.
///
/// The precision lives in the type so that `zero()` and `one()` need no
/// context and values of different precisions never mix.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Mp<const P: u32>(pub Float);

impl<const P: u32> Mp<P> {
    pub fn new<T>(v: T) -> Self
    where
        Float: rug::Assign<T>,
    {
        Mp(Float::with_val(P, v))
    }

    pub fn inner(&self) -> &Float {
        &self.0
    }
}

impl<const P: u32> fmt::Debug for Mp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mp<{}>({})", P, self.0.to_string_radix(10, Some(24)))
    }
}

impl<const P: u32> fmt::Display for Mp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl<const P: u32> $tr for Mp<P> {
            type Output = Self;
            #[inline]
            fn $m(self, rhs: Self) -> Self {
                Mp($tr::$m(self.0, rhs.0))
            }
        }
        impl<'a, const P: u32> $tr<&'a Mp<P>> for Mp<P> {
            type Output = Self;
            #[inline]
            fn $m(self, rhs: &'a Mp<P>) -> Self {
                Mp($tr::$m(self.0, &rhs.0))
            }
        }
        impl<const P: u32> $atr for Mp<P> {
            #[inline]
            fn $am(&mut self, rhs: Self) {
                $atr::$am(&mut self.0, rhs.0)
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);

impl<const P: u32> Div for Mp<P> {
    type Output = Self;
    #[inline]
    fn div(self, rhs: Self) -> Self {
        Mp(self.0 / rhs.0)
    }
}

impl<const P: u32> Rem for Mp<P> {
    type Output = Self;
    fn rem(self, rhs: Self) -> Self {
        Mp(self.0 % rhs.0)
    }
}

impl<const P: u32> Neg for Mp<P> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Mp(-self.0)
    }
}

impl<const P: u32> Zero for Mp<P> {
    fn zero() -> Self {
        Mp(Float::new(P))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl<const P: u32> One for Mp<P> {
    fn one() -> Self {
        Mp(Float::with_val(P, 1))
    }
}

impl<const P: u32> Num for Mp<P> {
    type FromStrRadixErr = String;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, String> {
        Float::parse_radix(s, radix as i32)
            .map(|p| Mp(Float::with_val(P, p)))
            .map_err(|e| e.to_string())
    }
}

fn to_rug_rational(r: &BigRational) -> Rational {
    let n = Integer::from_str_radix(&r.numer().to_str_radix(16), 16).expect("hex numerator");
    let d = Integer::from_str_radix(&r.denom().to_str_radix(16), 16).expect("hex denominator");
    Rational::from((n, d))
}

impl<const P: u32> Scalar for Mp<P> {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        Mp(Float::with_val(P, v))
    }

    fn from_ratio(r: &BigRational) -> Self {
        Mp(Float::with_val(P, to_rug_rational(r)))
    }

    fn magnitude(&self) -> f64 {
        self.0.to_f64().abs()
    }

    fn log2_magnitude(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (m, e) = self.0.to_f64_exp();
        m.abs().log2() + e as f64
    }

    fn precision_bits() -> u32 {
        P
    }

    fn to_text(&self) -> String {
        let digits = (P as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1;
        self.0.to_string_radix(10, Some(digits))
    }

    fn as_integer(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.to_integer().and_then(|i| i.to_i64())
        } else {
            None
        }
    }

    fn recip(&self) -> Self {
        Mp(self.0.clone().recip())
    }

    fn powi(&self, e: i64) -> Self {
        use rug::ops::Pow;
        Mp(self.0.clone().pow(e))
    }
}

impl<const P: u32> Analytic for Mp<P> {
    fn exp(&self) -> Self {
        Mp(self.0.clone().exp())
    }
    fn ln(&self) -> Self {
        Mp(self.0.clone().ln())
    }
    fn sqrt(&self) -> Self {
        Mp(self.0.clone().sqrt())
    }
    fn powf(&self, e: &Self) -> Self {
        use rug::ops::Pow;
        Mp(self.0.clone().pow(&e.0))
    }
    fn pi() -> Self {
        Mp(Float::with_val(P, Constant::Pi))
    }
}

impl<const P: u32> Real for Mp<P> {
    fn from_f64(v: f64) -> Self {
        Mp(Float::with_val(P, v))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn abs(&self) -> Self {
        Mp(self.0.clone().abs())
    }
    fn sin_cos(&self) -> (Self, Self) {
        let (s, c) = self.0.clone().sin_cos(Float::new(P));
        (Mp(s), Mp(c))
    }
    fn atan2(&self, x: &Self) -> Self {
        Mp(self.0.clone().atan2(&x.0))
    }
    fn gamma_fn(&self) -> Self {
        Mp(self.0.clone().gamma())
    }
    fn parse_real(s: &str) -> Option<Self> {
        parse_rational(s).map(|r| Self::from_ratio(&r))
    }
}

impl<const P: u32> Mp<P> {
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}
