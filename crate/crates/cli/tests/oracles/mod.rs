//! Independent oracles for the frozen fixtures. Nothing here calls the
//! library routine a fixture is checked against.

#![allow(dead_code)]

use num_traits::{One, Zero};
use qsel_cli::fixtures::{self, Fixture, Kind};
use qsel_core::classical::Corollary;
use qsel_core::pairing::FunctionSpec;
use qsel_core::qselberg::Family;
use qsel_core::scalars::{cis, Real};
use qsel_core::weights::Weight;
use qsel_core::{Analytic, Complex, HeckeCtx, LaurentPoly, ParamSet, Rational, Real64, Scalar};

pub fn r(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

// ---- q-Selberg: plain double sums ----------------------------------------

/// Plain double-precision sum over the box {0..J}ⁿ with every factor
/// written out as displayed (no tables, no shells).
fn brute(family: Family, n0: usize, n1: usize, alpha: f64, beta: f64, k: i32, q: f64, jmax: usize) -> f64 {
    let n = n0 + n1;
    let pinf = |x: f64| {
        let mut acc = 1.0;
        let mut y = x;
        while y.abs() > 1e-300 {
            acc *= 1.0 - y;
            y *= q;
        }
        acc
    };
    let poch = |x: f64, m: i32| (0..m).fold(1.0, |acc, i| acc * (1.0 - x * q.powi(i)));
    let qb = q.powf(beta);
    let all = family == Family::HabsiegerKadell;
    let mut total = 0.0;
    let mut j = vec![0usize; n];
    loop {
        let t: Vec<f64> = j.iter().map(|&a| q.powi(a as i32)).collect();
        let mut v = 1.0;
        for i in 0..n {
            v *= t[i] * t[i].powf(alpha - 1.0) * pinf(q * t[i]) / pinf(qb * t[i]);
            let block = !all && i >= n0;
            match family {
                Family::Thm73I if block => v *= t[i] * (1.0 - qb * t[i]),
                Family::Thm73II if block => v *= t[i] * (1.0 - t[i]),
                Family::Thm74 if !block => v *= t[i].powi(n1 as i32 - 1),
                _ => {}
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                let shift = if family == Family::Thm73II { -k } else { 1 - k };
                v *= t[a].powi(2 * k) * poch(q.powi(shift) * t[b] / t[a], 2 * k);
                if !all && a >= n0 {
                    let (e1, e2) = if family == Family::Thm73II { (-k - 1, k) } else { (-k, k + 1) };
                    v *= (t[a] - q.powi(e1) * t[b]) * (t[a] - q.powi(e2) * t[b]);
                }
            }
        }
        total += v;
        let mut i = n;
        loop {
            if i == 0 {
                return total * (1.0 - q).powi(n as i32);
            }
            i -= 1;
            if j[i] < jmax {
                j[i] += 1;
                break;
            }
            j[i] = 0;
        }
    }
}

// ---- constant terms: dense expansion -------------------------------------

/// Dense oracle: every q-Pochhammer factor is built as a full Laurent
/// polynomial and the whole product is multiplied out without pruning.
fn naive_ct(n0: usize, n1: usize, a: u32, b: u32, k: u32, q: &Rational) -> Rational {
    let n = n0 + n1;
    let qp = |m: u32| (0..m).fold(Rational::one(), |acc, _| acc * q);
    // (c·x^β; q)_m
    let poch = |c: Rational, beta: Vec<i64>, m: u32| {
        let mut acc = LaurentPoly::one(n);
        for i in 0..m {
            let f = LaurentPoly::one(n).sub(&LaurentPoly::monomial(beta.clone(), c.clone() * qp(i)));
            acc = acc.mul(&f);
        }
        acc
    };
    let unit = |i: usize, s: i64| {
        let mut v = vec![0; n];
        v[i] = s;
        v
    };
    let ratio = |i: usize, j: usize| {
        let mut v = vec![0; n];
        v[i] += 1;
        v[j] -= 1;
        v
    };
    let mut p = LaurentPoly::one(n);
    for i in n0..n {
        for j in i + 1..n {
            p = p.mul(&poch(qp(k), ratio(i, j), 1));
            p = p.mul(&poch(qp(k + 1), ratio(j, i), 1));
        }
    }
    for i in 0..n {
        p = p.mul(&poch(Rational::one(), unit(i, 1), a));
        p = p.mul(&poch(q.clone(), unit(i, -1), b));
    }
    for i in 0..n {
        for j in i + 1..n {
            p = p.mul(&poch(q.clone(), ratio(j, i), k));
            p = p.mul(&poch(Rational::one(), ratio(i, j), k));
        }
    }
    p.constant_term()
}

// ---- classical: exact moments --------------------------------------------

fn fact(n: i64) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * Rational::from_integer(i.into()))
}

fn double_fact(n: i64) -> Rational {
    (1..=n).rev().step_by(2).fold(Rational::one(), |acc, i| acc * Rational::from_integer(i.into()))
}

fn var(n: usize, i: usize) -> LaurentPoly<Rational> {
    LaurentPoly::var(n, i)
}

fn cst(n: usize, v: i64) -> LaurentPoly<Rational> {
    LaurentPoly::constant(n, Rational::from_integer(v.into()))
}

fn pow(p: &LaurentPoly<Rational>, e: u32) -> LaurentPoly<Rational> {
    (0..e).fold(LaurentPoly::one(p.nvars()), |acc, _| acc.mul(p))
}

/// ∏_{i<j} d_ij^{2γ} · ∏_{block} d_ij², with d = x_i − x_j or x_i² − x_j².
fn pair_poly(n: usize, n0: usize, g: u32, squared: bool) -> LaurentPoly<Rational> {
    let mut acc = LaurentPoly::one(n);
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = if squared {
                (var(n, i).mul(&var(n, i)), var(n, j).mul(&var(n, j)))
            } else {
                (var(n, i), var(n, j))
            };
            let d = a.sub(&b);
            acc = acc.mul(&pow(&d, 2 * g + 2 * u32::from(i >= n0)));
        }
    }
    acc
}

/// Moment-by-moment integral of `poly` against a product weight whose
/// one-dimensional moments are `mom(e)`.
fn integrate(poly: &LaurentPoly<Rational>, mom: impl Fn(i64) -> Rational) -> Rational {
    poly.terms().fold(Rational::zero(), |acc, (e, c)| {
        acc + e.iter().fold(c.clone(), |m, &k| m * mom(k))
    })
}

/// Exact LHS for integer parameters, expanded as a polynomial and
/// integrated with closed-form moments.
fn moment_oracle(which: Corollary, n0: usize, n1: usize, a: i64, b: i64, g: u32, c: u32) -> Rational {
    let n = n0 + n1;
    let gauss = |e: i64| if e % 2 == 1 { Rational::zero() } else { double_fact(e - 1) };
    match which {
        Corollary::Eq77 | Corollary::Eq78 => {
            let mut p = pair_poly(n, n0, g, false);
            for i in 0..n {
                if which == Corollary::Eq77 && i >= n0 {
                    p = p.mul(&var(n, i)).mul(&cst(n, 1).sub(&var(n, i)));
                }
                if which == Corollary::Eq78 && i < n0 {
                    p = p.mul(&pow(&var(n, i), n1 as u32 - 1));
                }
            }
            // ∫ t^{e+a−1}(1−t)^{b−1} = (e+a−1)!(b−1)!/(e+a+b−1)!
            integrate(&p, |e| fact(e + a - 1) * fact(b - 1) / fact(e + a + b - 1))
        }
        Corollary::Eq79 => integrate(&pair_poly(n, n0, g, false), gauss),
        Corollary::Eq710 | Corollary::Eq711 => {
            let mut p = pair_poly(n, n0, g, false);
            if which == Corollary::Eq710 {
                for i in n0..n {
                    p = p.mul(&var(n, i));
                }
            }
            integrate(&p, |e| fact(e + a - 1))
        }
        Corollary::Eq712 | Corollary::Eq713 => {
            assert_eq!(n, 2);
            let mut p = pair_poly(n, n0, g, false);
            if which == Corollary::Eq712 {
                for i in n0..n {
                    p = p.mul(&var(n, i));
                }
            }
            // Dirichlet: ∫_Δ x^p y^r (1−x−y)^s = p! r! s!/(p+r+s+2)!
            p.terms().fold(Rational::zero(), |acc, (e, cf)| {
                let (p1, p2, s) = (e[0] + a - 1, e[1] + a - 1, b - 1);
                acc + cf.clone() * fact(p1) * fact(p2) * fact(s) / fact(p1 + p2 + s + 2)
            })
        }
        Corollary::Eq714 | Corollary::Eq715 => {
            let mut p = pair_poly(n, n0, g, true);
            for i in 0..n {
                p = p.mul(&pow(&var(n, i), 2 * c));
                if which == Corollary::Eq714 && i >= n0 {
                    p = p.mul(&pow(&var(n, i), 2));
                }
            }
            integrate(&p, gauss)
        }
    }
}

// ---- weights --------------------------------------------------------------

fn dominant(mu: &[i64]) -> Vec<i64> {
    let mut v: Vec<i64> = mu.iter().map(|a| a.abs()).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// λ − μ in the cone spanned by ε_i − ε_{i+1} and ε_n: all prefix sums ≥ 0.
fn dominance_leq(mu: &[i64], lam: &[i64]) -> bool {
    let mut s = 0;
    mu.iter().zip(lam).all(|(m, l)| {
        s += l - m;
        s >= 0
    })
}

/// Every μ with max|μ_i| ≤ m whose dominant representative is dominated by λ.
fn brute_below(lam: &[i64], m: i64) -> Vec<Weight> {
    let mut out = vec![vec![]];
    for _ in 0..lam.len() {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-m..=m).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out.into_iter()
        .filter(|mu| dominance_leq(&dominant(mu), &dominant(lam)))
        .map(Weight)
        .collect()
}

/// Σ_{i<j} ε(λ_i − λ_j)(e_i − e_j) + ε(λ_i + λ_j)(e_i + e_j), ε(x) = ±1 with ε(0) = +1.
fn rho_m_signsum(lam: &[i64]) -> Vec<i64> {
    let n = lam.len();
    let eps = |x: i64| if x >= 0 { 1 } else { -1 };
    let mut v = vec![0; n];
    for i in 0..n {
        for j in i + 1..n {
            let a = eps(lam[i] - lam[j]);
            let b = eps(lam[i] + lam[j]);
            v[i] += a + b;
            v[j] += b - a;
        }
    }
    v
}

/// Breadth-first closure of the generators of B_n acting on signed
/// permutations in one-line notation; returns (order, longest length).
fn hyperoctahedral(n: usize) -> (usize, usize) {
    let gens: Vec<Box<dyn Fn(&[i64]) -> Vec<i64>>> = (1..=n)
        .map(|i| -> Box<dyn Fn(&[i64]) -> Vec<i64>> {
            if i < n {
                Box::new(move |w: &[i64]| {
                    let mut v = w.to_vec();
                    v.swap(i - 1, i);
                    v
                })
            } else {
                Box::new(move |w: &[i64]| {
                    let mut v = w.to_vec();
                    v[n - 1] = -v[n - 1];
                    v
                })
            }
        })
        .collect();
    let start: Vec<i64> = (1..=n as i64).collect();
    let mut seen = vec![start.clone()];
    let mut frontier = vec![start];
    let mut depth = 0;
    loop {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &gens {
                let v = g(w);
                if !seen.contains(&v) {
                    seen.push(v.clone());
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            return (seen.len(), depth);
        }
        depth += 1;
        frontier = next;
    }
}

// ---- Laurent polynomials: dense coefficient arrays -----------------------

/// Product of dense one-variable coefficient vectors (index = exponent + offset).
fn dense_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

// ---- Koornwinder: dense joint-kernel solve -------------------------------

/// Reduced row echelon form over ℚ; returns pivot columns.
fn rref(m: &mut Vec<Vec<Rational>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][c].recip();
        for x in m[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != row && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = f.clone() * m[row][j].clone();
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Solves ∩_i ker(Y_i − γ_i) on span{x^μ : μ below λ} with a dense
/// elimination and normalizes the x^λ coefficient to 1.
pub fn koornwinder_solve(p: &ParamSet<Rational>, lam: &[i64]) -> LaurentPoly<Rational> {
    let n = lam.len();
    let m = lam.iter().map(|a| a.abs()).max().unwrap_or(0);
    let mut basis: Vec<Vec<i64>> = brute_below(lam, m).into_iter().map(|w| w.0).collect();
    basis.sort();
    let ctx = HeckeCtx::new(p.clone(), n).unwrap();
    let gam = ctx.gamma(lam);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in 1..=n {
        let images: Vec<LaurentPoly<Rational>> = basis
            .iter()
            .map(|mu| {
                let x = LaurentPoly::monomial(mu.clone(), Rational::one());
                ctx.apply_y(&x, i).sub(&x.scale(&gam[i - 1]))
            })
            .collect();
        for e in &basis {
            rows.push(images.iter().map(|f| f.coeff(e)).collect());
        }
        for f in &images {
            assert!(f.support().all(|e| basis.contains(e)), "Y_{i} leaves the span");
        }
    }
    let cols = basis.len();
    let pivots = rref(&mut rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    assert_eq!(free.len(), 1, "joint eigenspace is not one-dimensional");
    let f = free[0];
    let mut v = vec![Rational::zero(); cols];
    v[f] = Rational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -rows[row][f].clone();
    }
    let li = basis.iter().position(|e| e.as_slice() == lam).unwrap();
    let scale = v[li].recip();
    LaurentPoly::from_terms(n, basis.into_iter().zip(v).map(|(e, c)| (e, c * scale.clone())))
}

// ---- pairing: fixed-size trapezoid ---------------------------------------

/// Mean of f·g†·Δ over the M×M grid of the torus.
pub fn trapezoid(f: &FunctionSpec<Real64>, g: &FunctionSpec<Real64>, m: usize) -> Real64 {
    let d = fixtures::pairing_density().unwrap();
    let fp = f.poly_at(&d.p).unwrap();
    let gd = g.dagger_at(&d.p).unwrap();
    let two_pi = Real64::pi() * Real64::from_i64(2);
    let mut acc = Complex::new(Real64::zero(), Real64::zero());
    for a in 0..m {
        for b in 0..m {
            // half-step offset keeps the nodes off the diagonal x1 = x2
            let th = |k: usize, s: f64| two_pi.clone() * Real64::from_f64((k as f64 + s) / m as f64);
            let x = [cis(&th(a, 0.25)), cis(&th(b, 0.5))];
            let conv = |c: &Real64| Complex::new(c.clone(), Real64::zero());
            let v = fp.eval(&x, conv) * gd.eval(&x, conv) * d.eval_delta(&x).unwrap();
            acc = acc + v;
        }
    }
    acc.re / Real64::from_i64((m * m) as i64)
}

// ---- the fixture table ---------------------------------------------------

fn fx(id: &str, quantity: &str, value: String, kind: Kind, tolerance: f64, oracle: &str, settings: &str) -> Fixture {
    Fixture {
        id: id.into(),
        quantity: quantity.into(),
        value,
        kind,
        tolerance,
        oracle: oracle.into(),
        settings: settings.into(),
    }
}

fn text_poly(p: &LaurentPoly<Rational>) -> String {
    p.to_text()
}

/// Every fixture, with its value recomputed by the oracle.
pub fn oracle_fixtures() -> Vec<Fixture> {
    use Kind::*;
    let mut v = Vec::new();
    let half = r(1, 2);

    // scalars
    let fin = (Rational::one() - half.clone()) * (Rational::one() - half.clone() * r(1, 3));
    v.push(fx("qpoch.finite", "(1/2; 1/3)_2", fin.to_string(), Exact, 0.0, "two-factor product by hand", "exact rationals"));
    let mut prod = 1.0f64;
    for i in 1..=200 {
        prod *= 1.0 - 0.5f64.powi(i);
    }
    v.push(fx("qpoch.inf", "(1/2; 1/2)_inf", format!("{prod:.17}"), Real, 1e-14, "plain product of 200 factors", "f64"));
    let qq = |m: u32| (1..m).fold(Rational::one(), |acc, i| acc * (Rational::one() - half.pow(i as i32)));
    let g = |m: u32| qq(m) / (Rational::one() - half.clone()).pow(m as i32 - 1);
    v.push(fx("qgamma.3", "Gamma_q(3), q = 1/2", g(3).to_string(), Exact, 0.0, "(q;q)_{m-1}/(1-q)^{m-1} by hand", "exact rationals"));
    v.push(fx("qgamma.4", "Gamma_q(4), q = 1/2", g(4).to_string(), Exact, 0.0, "(q;q)_{m-1}/(1-q)^{m-1} by hand", "exact rationals"));
    let fac = (1..=3).fold(Rational::one(), |acc, i| acc * (Rational::one() - half.pow(i)) / (Rational::one() - half.clone()));
    v.push(fx("qfactorial.3", "[3]_q!, q = 1/2", fac.to_string(), Exact, 0.0, "product of [i]_q by hand", "exact rationals"));

    // weights
    v.push(fx("weights.leq", "(0,0) <= (1,1)", dominance_leq(&[0, 0], &[1, 1]).to_string(), Text, 0.0, "prefix sums of the difference", "n = 2"));
    let pre = dominant(&[0, 1]) == dominant(&[1, 0]) && dominance_leq(&[0, 1], &[1, 0]);
    v.push(fx("weights.preceq", "(0,1) below (1,0)", pre.to_string(), Text, 0.0, "same orbit and difference a_1 by hand", "n = 2"));
    v.push(fx("weights.below10", "weights below (1,0)", fixtures::fmt_weights(&brute_below(&[1, 0], 1)), Text, 0.0, "scan of max|mu_i| <= 1 by dominant representative", "n = 2"));
    v.push(fx("weights.below11.size", "number of weights below (1,1)", brute_below(&[1, 1], 1).len().to_string(), Text, 0.0, "scan of max|mu_i| <= 1 by dominant representative", "n = 2"));
    v.push(fx("weights.rho_m.00", "rho^(m) of (0,0)", fixtures::fmt_vec(&rho_m_signsum(&[0, 0])), Text, 0.0, "sign sum over positive roots", "n = 2"));
    v.push(fx("weights.rho_m.rho1_12", "rho^(m) of rho_1, (n0,n1) = (1,2)", fixtures::fmt_vec(&rho_m_signsum(&Weight::rho1(1, 2).0)), Text, 0.0, "sign sum over positive roots", "n = 3"));
    let (ord, len) = hyperoctahedral(2);
    v.push(fx("weights.w1_02", "order and longest length of W_1, n1 = 2", format!("{ord} {len}"), Text, 0.0, "breadth-first closure of signed permutations", "n = 2"));

    // Laurent polynomials
    let one_minus_x = [Rational::one(), -Rational::one()];
    let one_plus_x = [Rational::one(), Rational::one()];
    let d = dense_mul(&one_minus_x, &one_plus_x);
    let p = LaurentPoly::from_terms(1, d.into_iter().enumerate().map(|(e, c)| (vec![e as i64], c)));
    v.push(fx("laurent.product", "(1 - x)(1 + x)", text_poly(&p), Text, 0.0, "dense coefficient convolution", "one variable"));
    // (1 − y)(1 − 1/y) with y = x1/x2, offset 1
    let ct = dense_mul(&[Rational::zero(), Rational::one(), -Rational::one()], &[-Rational::one(), Rational::one(), Rational::zero()]);
    v.push(fx("laurent.ct", "CT (1 - x1/x2)(1 - x2/x1)", ct[2].to_string(), Exact, 0.0, "dense expansion in y = x1/x2", "exact rationals"));

    // Hecke
    let xb = 0.7f64 / 0.4;
    let vr = (1.0 - 0.25 * xb) / (1.0 - xb);
    v.push(fx("hecke.v_root", "v_beta at x = (0.7, 0.4), beta = e1 - e2, t = 0.5, q = 0.3", format!("{vr:.17}"), Real, 1e-14, "(1 - t^2 x^beta)/(1 - x^beta) evaluated directly", "f64"));
    let kp = fixtures::koornwinder_point();
    v.push(fx("hecke.e10", "E_(1,0) at sqrt q = 1/2, t = 1/2, (1/2, 1/3, 2/5, 1/4)", text_poly(&koornwinder_solve(&kp, &[1, 0])), Text, 0.0, "dense joint-kernel solve", "exact rationals, n = 2"));
    v.push(fx("hecke.e_rho1_02", "E_rho1, (n0,n1) = (0,2), same point", text_poly(&koornwinder_solve(&kp, &Weight::rho1(0, 2).0)), Text, 0.0, "dense joint-kernel solve", "exact rationals, n = 2"));
    let hp = fixtures::hecke_point();
    for (n0, n1) in [(0, 2), (1, 2)] {
        let ctx = HeckeCtx::with_blocks(hp.clone(), n0, n1).unwrap();
        let rho = Weight::rho1(n0, n1);
        let e = koornwinder_solve(&hp, &rho.0);
        let c = ctx.apply_u1(&e, qsel_core::hecke::Sign::Minus).coeff(&rho.0);
        v.push(fx(
            &format!("hecke.c_rho1_{n0}{n1}"),
            &format!("c_rho1 for (n0,n1) = ({n0},{n1}) at sqrt q = 1/2, t = 1/3, (1/2, 1/3, 2/5, 1/4)"),
            c.to_string(),
            Exact,
            0.0,
            "x^rho1 coefficient of the antisymmetrized eigenpolynomial",
            "exact rationals",
        ));
    }

    // pairing
    let dens = fixtures::pairing_density().unwrap();
    let x: Vec<_> = ["0.4", "1.9"].iter().map(|s| cis(&Real64::parse_real(s).unwrap())).collect();
    let naive = dens.eval_delta_naive(&x).unwrap();
    v.push(fx("pairing.delta", "Re Delta at angles (0.4, 1.9)", naive.re.to_text(), Real, 1e-13, "unregrouped product form of the density", "64 bits"));
    let e10 = FunctionSpec::koornwinder(vec![1, 0]);
    let e01 = FunctionSpec::koornwinder(vec![0, 1]);
    let m = 96;
    let settings = format!("{m} x {m} trapezoid, 64 bits");
    let b = trapezoid(&e10, &e01, m).magnitude();
    v.push(fx("pairing.biorth", "|<E_(1,0), E_(0,1)>|", "0".into(), Real, 1e-12, "fixed-grid trapezoid", &format!("{settings}; oracle value {b:.1e}")));
    v.push(fx("pairing.norm00", "<1, 1>", trapezoid(&FunctionSpec::one(2), &FunctionSpec::one(2), m).to_text(), Real, 1e-10, "fixed-grid trapezoid", &settings));
    v.push(fx("pairing.norm10", "<E_(1,0), E_(1,0)>", trapezoid(&e10, &e10, m).to_text(), Real, 1e-10, "fixed-grid trapezoid", &settings));
    let chi = FunctionSpec::chi1(0, 2);
    v.push(fx("pairing.norm_chi1_02", "<chi_1, chi_1>, (n0,n1) = (0,2)", trapezoid(&chi, &chi, m).to_text(), Real, 1e-10, "fixed-grid trapezoid", &settings));

    // q-Selberg
    let sel: [(&str, Family, usize, usize, f64, f64, i32, f64, usize); 7] = [
        ("selberg.hk.n2", Family::HabsiegerKadell, 2, 0, 1.5, 2.5, 1, 0.3, 60),
        ("selberg.hk.n3", Family::HabsiegerKadell, 3, 0, 1.0, 1.0, 2, 0.2, 40),
        ("selberg.thm73-I.02", Family::Thm73I, 0, 2, 1.0, 1.0, 0, 0.5, 60),
        ("selberg.thm73-I.12", Family::Thm73I, 1, 2, 1.5, 2.0, 1, 0.3, 40),
        ("selberg.thm73-II.12", Family::Thm73II, 1, 2, 1.5, 2.0, 1, 0.3, 40),
        ("selberg.thm74.12", Family::Thm74, 1, 2, 1.0, 1.0, 0, 0.4, 45),
        ("selberg.thm74.22", Family::Thm74, 2, 2, 1.5, 0.5, 1, 0.3, 32),
    ];
    for (id, fam, n0, n1, a, b, k, q, j) in sel {
        let val = brute(fam, n0, n1, a, b, k, q, j);
        v.push(fx(
            id,
            &format!("{} at (n0,n1) = ({n0},{n1}), alpha = {a}, beta = {b}, k = {k}, q = {q}", fam.name()),
            format!("{val:.17e}"),
            Real,
            1e-11,
            "plain double sum over the lattice box",
            &format!("f64, J = {j} per variable"),
        ));
    }

    // constant terms
    for (id, (n0, n1, a, b, k), q) in [("ct.12.111.half", (1, 2, 1, 1, 1), r(1, 2)), ("ct.02.121.third", (0, 2, 1, 2, 1), r(1, 3))] {
        v.push(fx(
            id,
            &format!("CT at (n0,n1) = ({n0},{n1}), (a,b,k) = ({a},{b},{k}), q = {q}"),
            naive_ct(n0, n1, a, b, k, &q).to_string(),
            Exact,
            0.0,
            "dense expansion without pruning",
            "exact rationals",
        ));
    }

    // classical
    v.push(fx("classical.laguerre", "3-node Gauss-Laguerre rule on x^5", fact(5).to_string(), Real, 1e-30, "factorial moment 5!", "exact rationals; library at 128 bits"));
    let cl: [(&str, Corollary, (usize, usize, i64, i64, u32, u32)); 10] = [
        ("classical.eq77.02.111", Corollary::Eq77, (0, 2, 1, 1, 1, 0)),
        ("classical.eq77.02.110", Corollary::Eq77, (0, 2, 1, 1, 0, 0)),
        ("classical.eq77.12.211", Corollary::Eq77, (1, 2, 2, 1, 1, 0)),
        ("classical.eq79.20.1", Corollary::Eq79, (2, 0, 1, 1, 1, 0)),
        ("classical.eq79.02.0", Corollary::Eq79, (0, 2, 1, 1, 0, 0)),
        ("classical.eq79.12.1", Corollary::Eq79, (1, 2, 1, 1, 1, 0)),
        ("classical.eq710.02.10", Corollary::Eq710, (0, 2, 1, 1, 0, 0)),
        ("classical.eq712.02.110", Corollary::Eq712, (0, 2, 1, 1, 0, 0)),
        ("classical.eq714.02.00", Corollary::Eq714, (0, 2, 1, 1, 0, 0)),
        ("classical.eq714.20.11", Corollary::Eq714, (2, 0, 1, 1, 1, 1)),
    ];
    for (id, which, (n0, n1, a, b, g, c)) in cl {
        v.push(fx(
            id,
            &format!("{} left side at (n0,n1) = ({n0},{n1}), alpha = {a}, beta = {b}, gamma = {g}, c = {c}", which.id()),
            moment_oracle(which, n0, n1, a, b, g, c).to_string(),
            Real,
            1e-30,
            "polynomial expansion against exact one-dimensional moments",
            "exact rationals; library at 128 bits",
        ));
    }
    v
}
