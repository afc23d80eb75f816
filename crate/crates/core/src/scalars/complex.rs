use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Analytic, Real, Scalar};

impl<T: Real> Scalar for Complex<T> {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        Complex::new(T::from_i64(v), T::zero())
    }

    fn from_ratio(r: &BigRational) -> Self {
        Complex::new(T::from_ratio(r), T::zero())
    }

    fn magnitude(&self) -> f64 {
        let (a, b) = (self.re.magnitude(), self.im.magnitude());
        a.hypot(b)
    }

    fn log2_magnitude(&self) -> f64 {
        let a = self.re.log2_magnitude();
        let b = self.im.log2_magnitude();
        let m = a.max(b);
        if m == f64::NEG_INFINITY {
            return m;
        }
        m + 0.5 * ((a - m).exp2().powi(2) + (b - m).exp2().powi(2)).log2()
    }

    fn precision_bits() -> u32 {
        T::precision_bits()
    }

    fn to_text(&self) -> String {
        if self.im.is_zero() {
            self.re.to_text()
        } else {
            format!("{} + {}i", self.re.to_text(), self.im.to_text())
        }
    }

    fn as_integer(&self) -> Option<i64> {
        if self.im.is_zero() {
            self.re.as_integer()
        } else {
            None
        }
    }
}

impl<T: Real> Analytic for Complex<T> {
    fn exp(&self) -> Self {
        let r = self.re.exp();
        let (s, c) = self.im.sin_cos();
        Complex::new(r.clone() * c, r * s)
    }

    fn ln(&self) -> Self {
        let norm2 = self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone();
        let half = T::one() / (T::one() + T::one());
        Complex::new(norm2.ln() * half, self.im.atan2(&self.re))
    }

    fn sqrt(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let half = T::one() / (T::one() + T::one());
        (self.ln() * Complex::new(half, T::zero())).exp()
    }

    fn pi() -> Self {
        Complex::new(T::pi(), T::zero())
    }
}

/// Point on the unit circle at angle `theta`.
pub fn cis<T: Real>(theta: &T) -> Complex<T> {
    let (s, c) = theta.sin_cos();
    Complex::new(c, s)
}
