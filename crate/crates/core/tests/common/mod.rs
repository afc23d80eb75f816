#![allow(dead_code)]

use num_bigint::BigInt;
use qsel_core::{ParamSet, Rational};

pub fn r(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// sqrt_q = 1/2, t = 1/3, (t0, t0v, tn, tnv) = (1/2, 1/3, 2/5, 1/4).
pub fn params_a() -> ParamSet<Rational> {
    ParamSet::new(r(1, 2), r(1, 3), r(1, 2), r(1, 3), r(2, 5), r(1, 4)).unwrap()
}

/// sqrt_q = 2/3, t = 3/7, (t0, t0v, tn, tnv) = (3/5, 5/4, 1/3, 2/3).
pub fn params_b() -> ParamSet<Rational> {
    ParamSet::new(r(2, 3), r(3, 7), r(3, 5), r(5, 4), r(1, 3), r(2, 3)).unwrap()
}

/// All exponent vectors with entries in [-m, m].
pub fn box_exponents(n: usize, m: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            for a in -m..=m {
                let mut w = v.clone();
                w.push(a);
                next.push(w);
            }
        }
        out = next;
    }
    out
}
