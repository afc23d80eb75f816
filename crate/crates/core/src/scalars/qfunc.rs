use num_rational::BigRational;
use num_traits::One;

use super::{Analytic, Scalar};
use crate::error::{Error, Result};

/// Precision and truncation budget for infinite q-products.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionCtx {
    pub precision_bits: u32,
    pub tail_tolerance: f64,
    pub max_product_terms: usize,
}

impl PrecisionCtx {
    pub fn new(precision_bits: u32) -> Self {
        let p = precision_bits.min(1000) as f64;
        PrecisionCtx {
            precision_bits,
            tail_tolerance: (16.0 - p).exp2(),
            max_product_terms: 1_000_000,
        }
    }

    /// Context matching the working precision of `S`.
    pub fn for_scalar<S: Scalar>() -> Self {
        Self::new(S::precision_bits())
    }

    pub fn with_tail_tolerance(mut self, tol: f64) -> Self {
        self.tail_tolerance = tol;
        self
    }

    pub fn with_max_terms(mut self, n: usize) -> Self {
        self.max_product_terms = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tail_tolerance > 0.0) || self.max_product_terms < 1 {
            return Err(Error::InvalidParams(format!("bad precision context {self:?}")));
        }
        Ok(())
    }
}

/// (x;q)_m = ∏_{i<m} (1 − x q^i).
pub fn qpoch_finite<S: Scalar>(x: &S, q: &S, m: usize) -> S {
    let mut acc = S::one();
    let mut xq = x.clone();
    for i in 0..m {
        acc = acc * (S::one() - xq.clone());
        if i + 1 < m {
            xq = xq * q.clone();
        }
    }
    acc
}

/// Number of factors needed so that |x| |q|^N / (1 − |q|) < tol and
/// |x| |q|^N ≤ 1/2.
fn truncation_point(lx: f64, lq: f64, q_abs: f64, ctx: &PrecisionCtx) -> usize {
    let need_tail = ctx.tail_tolerance.log2() + (1.0 - q_abs).log2();
    let need = need_tail.min(-1.0);
    if lx <= need {
        return 0;
    }
    ((need - lx) / lq).ceil().max(0.0) as usize
}

/// (x;q)_∞ together with the number of factors used.
pub fn qpoch_inf_counted<S: Analytic>(x: &S, q: &S, ctx: &PrecisionCtx) -> Result<(S, usize)> {
    ctx.validate()?;
    let q_abs = q.magnitude();
    if !(q_abs < 1.0) {
        return Err(Error::Divergence { q: q_abs });
    }
    if x.is_zero() {
        return Ok((S::one(), 0));
    }
    if q.is_zero() {
        return Ok((S::one() - x.clone(), 1));
    }
    let n = truncation_point(x.log2_magnitude(), q.log2_magnitude(), q_abs, ctx);
    if n > ctx.max_product_terms {
        return Err(Error::Budget {
            what: "qpoch_inf",
            needed: n as u128,
            limit: ctx.max_product_terms as u128,
        });
    }
    Ok((qpoch_finite(x, q, n.max(1)), n.max(1)))
}

/// (x;q)_∞ with relative truncation error at most 2·tail_tolerance.
pub fn qpoch_inf<S: Analytic>(x: &S, q: &S, ctx: &PrecisionCtx) -> Result<S> {
    qpoch_inf_counted(x, q, ctx).map(|(v, _)| v)
}

/// Γ_q(x) = (q;q)_∞ / (q^x;q)_∞ · (1 − q)^{1−x}.
pub fn qgamma<S: Analytic>(x: &S, q: &S, ctx: &PrecisionCtx) -> Result<S> {
    let qa = q.magnitude();
    if !(qa > 0.0 && qa < 1.0) {
        return Err(Error::InvalidParams(format!("q-gamma needs 0 < q < 1, got {qa}")));
    }
    if let Some(m) = x.as_integer() {
        if m <= 0 {
            return Err(Error::Pole {
                what: "q-gamma",
                at: m.to_string(),
            });
        }
        let m = m as usize;
        let one_q = S::one() - q.clone();
        return Ok(qpoch_finite(q, q, m - 1) / one_q.powi(m as i64 - 1));
    }
    let num = qpoch_inf(q, q, ctx)?;
    let den = qpoch_inf(&q.powf(x), q, ctx)?;
    let one_q = S::one() - q.clone();
    let pow = ((S::one() - x.clone()) * one_q.ln()).exp();
    Ok(num / den * pow)
}

/// Γ_q(m) = (q;q)_{m−1} (1 − q)^{1−m} as an exact rational.
pub fn qgamma_int_exact(m: u32, q: &BigRational) -> BigRational {
    assert!(m >= 1, "q-gamma at a pole");
    let one_q = BigRational::one() - q;
    let mut acc = BigRational::one();
    let mut qi = q.clone();
    for _ in 1..m {
        acc *= (BigRational::one() - &qi) / &one_q;
        qi *= q;
    }
    acc
}

/// [x]_q = (1 − q^x)/(1 − q).
pub fn qnumber<S: Analytic>(x: &S, q: &S) -> S {
    (S::one() - q.powf(x)) / (S::one() - q.clone())
}

/// [m]_q for integer m; equals m when q = 1.
pub fn qnumber_int<S: Scalar>(m: i64, q: &S) -> S {
    if q.is_one() {
        return S::from_i64(m);
    }
    (S::one() - q.powi(m)) / (S::one() - q.clone())
}

/// [n]_Q! = [1]_Q [2]_Q ⋯ [n]_Q.
pub fn qfactorial<S: Scalar>(n: u32, big_q: &S) -> S {
    let mut acc = S::one();
    for i in 1..=n {
        acc = acc * qnumber_int(i as i64, big_q);
    }
    acc
}
