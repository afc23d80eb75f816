mod common;

use common::*;
use num_traits::{One, Zero};
use qsel_core::hecke::{c_rho1_formula, poincare_w1, Sign};
use qsel_core::weights::{weights_below, Weight};
use qsel_core::{HeckeCtx, LaurentPoly, Rational};

type P = LaurentPoly<Rational>;

fn mono(e: &[i64]) -> P {
    P::monomial(e.to_vec(), Rational::one())
}

#[test]
fn t_on_constant_is_scalar() {
    let ctx = HeckeCtx::new(params_a(), 2).unwrap();
    for i in 0..=2 {
        let one = P::one(2);
        assert_eq!(ctx.apply_t(&one, i), one.scale(&ctx.t(i)));
        assert_eq!(ctx.apply_t_inv(&one, i), one.scale(&ctx.t(i).recip()));
    }
}

#[test]
fn quadratic_relation_n2() {
    let ctx = HeckeCtx::new(params_a(), 2).unwrap();
    for e in box_exponents(2, 2) {
        let f = mono(&e);
        for i in 0..=2 {
            let tf = ctx.apply_t(&f, i);
            let ttf = ctx.apply_t(&tf, i);
            let t = ctx.t(i);
            let rhs = tf.scale(&(t.clone() - t.recip())).add(&f);
            assert_eq!(ttf, rhs, "i={i} e={e:?}");
        }
    }
}

#[test]
fn y_commute_n2() {
    let ctx = HeckeCtx::new(params_a(), 2).unwrap();
    for e in box_exponents(2, 1) {
        let f = mono(&e);
        let a = ctx.apply_y(&ctx.apply_y(&f, 2), 1);
        let b = ctx.apply_y(&ctx.apply_y(&f, 1), 2);
        assert_eq!(a, b, "e={e:?}");
    }
}

#[test]
fn y_on_one() {
    let ctx = HeckeCtx::new(params_b(), 3).unwrap();
    let g = ctx.gamma(&[0, 0, 0]);
    for i in 1..=3 {
        assert_eq!(ctx.apply_y(&P::one(3), i), P::one(3).scale(&g[i - 1]));
    }
}

#[test]
fn e_lambda_eigen_n2() {
    let ctx = HeckeCtx::new(params_a(), 2).unwrap();
    let mut lams = weights_below(&[1, 1]);
    lams.push(Weight::rho1(0, 2));
    for lam in lams {
        let e = ctx.koornwinder_e(&lam).unwrap();
        assert_eq!(e.coeff(&lam), Rational::one());
        let g = ctx.gamma(&lam);
        for i in 1..=2 {
            assert_eq!(ctx.apply_y(&e, i), e.scale(&g[i - 1]), "lam={lam} i={i}");
        }
    }
}

#[test]
fn antisymmetrization_02() {
    let ctx = HeckeCtx::with_blocks(params_a(), 0, 2).unwrap();
    let e = ctx.koornwinder_e(&Weight::rho1(0, 2)).unwrap();
    let u = ctx.apply_u1(&e, Sign::Minus);
    let chi = ctx.build_chi1();
    let c = ctx.coeff_c_rho1();
    assert!(!c.is_zero());
    assert_eq!(u, chi.scale(&c));
    let p = ctx.params();
    let direct = ctx
        .w1()
        .iter()
        .fold(Rational::zero(), |a, w| a + w.t_w(p).recip() * w.t_w(p).recip());
    assert_eq!(direct, poincare_w1(p, 2));
    assert_eq!(c, c_rho1_formula(p, 0, 2));
}

fn sample(n: usize) -> P {
    let mut f = P::zero(n);
    for (k, e) in box_exponents(n, 1).into_iter().enumerate() {
        if k % 4 == 0 || k % 7 == 3 {
            f.add_term(e, r(k as i64 + 1, 3));
        }
    }
    f
}

#[test]
fn relation_suite_n2_n3() {
    for p in [params_a(), params_b()] {
        for n in [2, 3] {
            let ctx = HeckeCtx::new(p.clone(), n).unwrap();
            let s = ctx.relation_suite(2);
            assert!(s.failures.is_empty(), "n={n}: {:?}", &s.failures[..s.failures.len().min(5)]);
            assert!(s.checks > 100);
            let d = ctx.to_dual().relation_suite(1);
            assert!(d.failures.is_empty());
        }
    }
}

#[test]
fn t_inverse_round_trip() {
    let ctx = HeckeCtx::new(params_b(), 2).unwrap();
    let f = sample(2);
    for i in 0..=2 {
        assert_eq!(ctx.apply_t(&ctx.apply_t_inv(&f, i), i), f);
        assert_eq!(ctx.apply_t_inv(&ctx.apply_t(&f, i), i), f);
    }
}

#[test]
fn u1_projectors() {
    for (n0, n1) in [(0, 2), (1, 2)] {
        let ctx = HeckeCtx::with_blocks(params_a(), n0, n1).unwrap();
        let n = n0 + n1;
        assert_eq!(ctx.apply_u1(&P::one(n), Sign::Plus), P::one(n));
        let f = sample(n);
        for sign in [Sign::Plus, Sign::Minus] {
            let u = ctx.apply_u1(&f, sign);
            assert_eq!(ctx.apply_u1(&u, sign), u, "({n0},{n1}) {sign:?}");
            for i in n0 + 1..=n {
                let t = ctx.t(i);
                let shift = match sign {
                    Sign::Plus => t.clone(),
                    Sign::Minus => -t.recip(),
                };
                let killed = ctx.apply_t(&u, i).sub(&u.scale(&shift));
                assert!(killed.is_zero(), "({n0},{n1}) {sign:?} i={i}");
            }
        }
    }
}

#[test]
fn chi1_twisted_symmetry() {
    for (n0, n1) in [(0, 2), (1, 2)] {
        let ctx = HeckeCtx::with_blocks(params_b(), n0, n1).unwrap();
        let n = n0 + n1;
        let chi = ctx.build_chi1();
        let f = sample(n);
        for i in n0 + 1..=n {
            let ti = ctx.t(i);
            let plus = |g: &P| ctx.apply_t(g, i).add(&g.scale(&ti.recip()));
            assert!(plus(&chi).is_zero(), "({n0},{n1}) i={i}");
            let lhs = plus(&chi.mul(&f));
            let rhs = ctx.apply_si(&chi, i).mul(&ctx.apply_t(&f, i).sub(&f.scale(&ti)));
            assert_eq!(lhs, rhs, "twisted symmetry ({n0},{n1}) i={i}");
        }
    }
}

#[test]
fn antisymmetrization_12() {
    let ctx = HeckeCtx::with_blocks(params_a(), 1, 2).unwrap();
    let e = ctx.koornwinder_e(&Weight::rho1(1, 2)).unwrap();
    let u = ctx.apply_u1(&e, Sign::Minus);
    let c = ctx.coeff_c_rho1();
    assert_eq!(u.coeff(&Weight::rho1(1, 2)), c);
    assert_eq!(u, ctx.build_chi1().scale(&c));
    assert_eq!(c, c_rho1_formula(ctx.params(), 1, 2));
}

/// U₁⁻E_{ρ₁} is a combination of the E_{wρ₁}, w ∈ W₁.
#[test]
fn antisymmetrization_stays_on_orbit() {
    let ctx = HeckeCtx::with_blocks(params_b(), 0, 2).unwrap();
    let rho = Weight::rho1(0, 2);
    let u = ctx.apply_u1(&ctx.koornwinder_e(&rho).unwrap(), Sign::Minus);
    let mut orbit: Vec<Vec<i64>> = ctx.w1().iter().map(|w| w.perm.apply(&rho)).collect();
    orbit.sort();
    orbit.dedup();
    let mut cols: Vec<P> = orbit.iter().map(|mu| ctx.koornwinder_e(mu).unwrap()).collect();
    cols.push(u);
    let basis: Vec<Vec<i64>> = weights_below(&rho).into_iter().map(|w| w.0).collect();
    assert!(cols.iter().all(|c| c.support().all(|e| basis.contains(e))));
    let rows: Vec<Vec<Rational>> = basis
        .iter()
        .map(|e| cols.iter().map(|c| c.coeff(e)).collect())
        .collect();
    let ker = qsel_core::hecke::nullspace(rows, cols.len());
    assert_eq!(ker.len(), 1);
    assert!(!ker[0].last().unwrap().is_zero());
}

/// T_i E_λ ∈ span{E_λ, E_{s_i λ}} for the finite generators.
#[test]
fn t_preserves_two_dimensional_spans() {
    let ctx = HeckeCtx::new(params_a(), 2).unwrap();
    for lam in weights_below(&[2, 1]) {
        let e = ctx.koornwinder_e(&lam).unwrap();
        for i in 1..=2 {
            let sl = qsel_core::weights::SignedPerm::generator(2, i).apply(&lam);
            let te = ctx.apply_t(&e, i);
            if sl == lam.0 {
                let c = te.coeff(&lam);
                assert_eq!(te, e.scale(&c), "lam={lam} i={i}");
                continue;
            }
            let f = ctx.koornwinder_e(&sl).unwrap();
            let rows: Vec<Vec<Rational>> = te
                .support()
                .chain(e.support())
                .chain(f.support())
                .map(|m| vec![e.coeff(m), f.coeff(m), te.coeff(m)])
                .collect();
            let ker = qsel_core::hecke::nullspace(rows, 3);
            assert_eq!(ker.len(), 1, "lam={lam} i={i}");
            assert!(!ker[0][2].is_zero());
        }
    }
}

#[test]
fn c_rho1_values() {
    for p in [params_a(), params_b()] {
        for (n0, n1) in [(0, 2), (1, 2)] {
            let ctx = HeckeCtx::with_blocks(p.clone(), n0, n1).unwrap();
            let e = ctx.koornwinder_e(&Weight::rho1(n0, n1)).unwrap();
            let op = ctx.apply_u1(&e, Sign::Minus).coeff(&Weight::rho1(n0, n1));
            assert_eq!(op, ctx.coeff_c_rho1(), "({n0},{n1})");
        }
    }
}

#[test]
fn degenerate_parameters_are_reported() {
    // q = t = 1 with trivial multiplicities: every Y_i is the identity
    let p = qsel_core::ParamSet::new(r(1, 1), r(1, 1), r(1, 1), r(1, 1), r(1, 1), r(1, 1)).unwrap();
    let ctx = HeckeCtx::new(p, 2).unwrap();
    assert!(matches!(ctx.koornwinder_e(&[0, 1]), Err(qsel_core::Error::Degenerate { .. })));
}
