mod common;

use common::r;
use num_traits::{One, Zero};
use qsel_core::scalars::*;
use qsel_core::{Error, Rational, Real256, Real64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type T = Real256;

fn rd(s: &str) -> T {
    T::parse_real(s).unwrap()
}

fn rel(a: &T, b: &T) -> f64 {
    ((a.clone() - b.clone()) / b.clone()).magnitude()
}

#[test]
fn finite_pochhammer() {
    assert_eq!(qpoch_finite(&r(7, 3), &r(2, 9), 0), Rational::one());
    assert_eq!(qpoch_finite(&Rational::one(), &r(1, 2), 3), Rational::zero());
    assert_eq!(qpoch_finite(&r(1, 2), &r(1, 3), 2), r(5, 12));
    for m in 0..8 {
        let (x, q) = (r(3, 7), r(-2, 5));
        let next = qpoch_finite(&x, &q, m) * (Rational::one() - x.clone() * q.powi(m as i64));
        assert_eq!(qpoch_finite(&x, &q, m + 1), next);
    }
}

#[test]
fn infinite_pochhammer() {
    let ctx = PrecisionCtx::for_scalar::<T>();
    let half = rd("0.5");
    assert_eq!(qpoch_inf(&T::zero(), &half, &ctx).unwrap(), T::one());
    assert!(qpoch_inf(&T::one(), &rd("0.3"), &ctx).unwrap().is_zero());

    // (q;q)_∞ at q = 1/2 against a plain 200-factor double product
    let mut brute = 1.0f64;
    for i in 1..=200 {
        brute *= 1.0 - 0.5f64.powi(i);
    }
    assert!((brute - 0.2887880951).abs() < 1e-10);
    let v = qpoch_inf(&half, &half, &ctx).unwrap();
    assert!((v.to_f64() - brute).abs() < 1e-15);

    let c64 = PrecisionCtx::for_scalar::<f64>();
    let v64 = qpoch_inf(&0.5, &0.5, &c64).unwrap();
    assert!(((v64 - brute) / brute).abs() <= 2.0 * c64.tail_tolerance);
}

#[test]
fn infinite_product_shift_relation() {
    let ctx = PrecisionCtx::for_scalar::<T>();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let x = T::from_f64(rng.gen_range(-2.0..2.0));
        let q = T::from_f64(rng.gen_range(0.05..0.9));
        let lhs = qpoch_inf(&x, &q, &ctx).unwrap();
        let rhs = (T::one() - x.clone()) * qpoch_inf(&(x.clone() * q.clone()), &q, &ctx).unwrap();
        let scale = lhs.magnitude().max(rhs.magnitude());
        assert!((lhs - rhs).magnitude() <= 4.0 * ctx.tail_tolerance * scale);
    }
}

#[test]
fn qpoch_inf_errors() {
    let ctx = PrecisionCtx::for_scalar::<T>();
    assert!(matches!(qpoch_inf(&rd("0.5"), &T::one(), &ctx), Err(Error::Divergence { .. })));
    assert!(matches!(qpoch_inf(&rd("0.5"), &rd("-1.5"), &ctx), Err(Error::Divergence { .. })));
    let tight = ctx.with_max_terms(10);
    assert!(matches!(
        qpoch_inf(&rd("0.5"), &rd("0.99"), &tight),
        Err(Error::Budget { limit: 10, .. })
    ));
}

#[test]
fn qgamma_values() {
    let ctx = PrecisionCtx::for_scalar::<T>();
    assert_eq!(qgamma(&T::one(), &rd("0.4"), &ctx).unwrap(), T::one());
    assert!(rel(&qgamma(&T::from_i64(2), &rd("0.4"), &ctx).unwrap(), &T::one()) < 1e-70);
    assert!(rel(&qgamma(&T::from_i64(3), &rd("0.5"), &ctx).unwrap(), &rd("1.5")) < 1e-70);
    for m in [0, -1, -3] {
        assert!(matches!(qgamma(&T::from_i64(m), &rd("0.5"), &ctx), Err(Error::Pole { .. })));
    }
}

#[test]
fn qgamma_int_exact_values() {
    let h = r(1, 2);
    assert_eq!(qgamma_int_exact(1, &h), Rational::one());
    assert_eq!(qgamma_int_exact(2, &h), Rational::one());
    assert_eq!(qgamma_int_exact(4, &h), r(21, 8));
    let ctx = PrecisionCtx::for_scalar::<T>();
    let tol = 10f64.powf(-(T::precision_bits() as f64) / 8.0);
    for q in [r(1, 2), r(2, 7), r(9, 10)] {
        let qr = T::from_ratio(&q);
        for m in 1..12u32 {
            let exact = T::from_ratio(&qgamma_int_exact(m, &q));
            let real = qgamma(&T::from_i64(m as i64), &qr, &ctx).unwrap();
            assert!(rel(&real, &exact) < tol);
        }
    }
}

#[test]
fn qgamma_recurrence_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let check = |rng: &mut ChaCha8Rng, bits: u32, run: &dyn Fn(f64, f64) -> f64| {
        let tol = 10f64.powf(-(bits as f64) / 8.0);
        for _ in 0..25 {
            let x = rng.gen_range(0.01..5.0);
            let q = rng.gen_range(0.02..0.98);
            let e = run(x, q);
            assert!(e < tol, "x={x} q={q}: {e:e}");
        }
    };
    check(&mut rng, 256, &|x, q| {
        let ctx = PrecisionCtx::for_scalar::<T>();
        let (x, q) = (T::from_f64(x), T::from_f64(q));
        let a = qgamma(&(x.clone() + T::one()), &q, &ctx).unwrap();
        let b = qnumber(&x, &q) * qgamma(&x, &q, &ctx).unwrap();
        rel(&a, &b)
    });
    check(&mut rng, 64, &|x, q| {
        let ctx = PrecisionCtx::for_scalar::<Real64>();
        let (x, q) = (Real64::from_f64(x), Real64::from_f64(q));
        let a = qgamma(&(x.clone() + Real64::one()), &q, &ctx).unwrap();
        let b = qnumber(&x, &q) * qgamma(&x, &q, &ctx).unwrap();
        ((a - b.clone()) / b).magnitude()
    });
}

#[test]
fn qnumbers_and_factorials() {
    for q in [r(1, 2), r(5, 3), r(-1, 4)] {
        assert_eq!(qnumber_int(1, &q), Rational::one());
        assert_eq!(qfactorial(0, &q), Rational::one());
    }
    assert_eq!(qfactorial(3, &r(1, 2)), r(21, 8));
    assert_eq!(qnumber_int(4, &Rational::one()), r(4, 1));
    let x = rd("2.5");
    let q = rd("0.3");
    let direct = (T::one() - q.powf(&x)) / (T::one() - q.clone());
    assert!(rel(&qnumber(&x, &q), &direct) < 1e-70);
}

#[test]
fn exact_scalars_are_canonical() {
    let a = r(6, -8);
    assert_eq!(a.numer().to_string(), "-3");
    assert_eq!(a.denom().to_string(), "4");
    assert_eq!(parse_rational("-6/8"), Some(a));
    assert_eq!(parse_rational("0.25"), Some(r(1, 4)));
    assert_eq!(parse_rational("1/0"), None);
}
