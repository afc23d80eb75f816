//! Single verifications, each producing one or more reports.

use std::time::Instant;

use num_traits::{One, Zero};
use qsel_core::classical::{self, ClassicalParams, Corollary, ReflectionFamily, ReflectionPair};
use qsel_core::ctidentity::{self, CtOptions, CtParams};
use qsel_core::hecke::{c_rho1_formula, poincare_w1, Sign};
use qsel_core::pairing::{self, DensityEval, FunctionSpec, Quadrature};
use qsel_core::qselberg::{self, Family, SelbergParams, TruncationPlan};
use qsel_core::scalars::Real;
use qsel_core::weights::{enumerate_w1, weights_below, Weight};
use qsel_core::{Error, HeckeCtx, LaurentPoly, ParamSet, PrecisionCtx, Rational, Scalar};

use crate::report::{params, Mode, Params, Truncation, VerificationReport};

/// Runs `f` and stamps the elapsed wall time on its report.
pub fn timed(f: impl FnOnce() -> VerificationReport) -> VerificationReport {
    let start = Instant::now();
    let mut r = f();
    r.runtime_ms = start.elapsed().as_millis() as u64;
    r
}

pub fn family_id(f: Family) -> &'static str {
    match f {
        Family::HabsiegerKadell => "eq1.1",
        Family::Thm73I => "thm7.3-I",
        Family::Thm73II => "thm7.3-II",
        Family::Thm74 => "thm7.4",
    }
}

pub fn parse_family(s: &str) -> Option<Family> {
    match s.to_ascii_lowercase().as_str() {
        "hk" | "eq1.1" | "habsieger-kadell" => Some(Family::HabsiegerKadell),
        "thm73-i" | "thm7.3-i" | "i" => Some(Family::Thm73I),
        "thm73-ii" | "thm7.3-ii" | "ii" => Some(Family::Thm73II),
        "thm74" | "thm7.4" | "bf" => Some(Family::Thm74),
        _ => None,
    }
}

fn parse_t<T: Real>(what: &str, s: &str) -> Result<T, Error> {
    T::parse_real(s).ok_or_else(|| Error::Parse(format!("{what}: cannot read {s:?} as a number")))
}

pub fn parse_q(s: &str) -> Result<Rational, Error> {
    qsel_core::scalars::parse_rational(s).ok_or_else(|| Error::Parse(format!("cannot read {s:?} as a rational")))
}

#[derive(Clone, Debug)]
pub struct SelbergInput {
    pub family: Family,
    pub n0: usize,
    pub n1: usize,
    pub alpha: String,
    pub beta: String,
    pub k: u32,
    pub q: String,
}

impl SelbergInput {
    fn snapshot(&self) -> Params {
        let (a, b) = if self.family == Family::Thm74 { ("x", "y") } else { ("alpha", "beta") };
        let mut p = params([
            ("family", self.family.name().to_string()),
            ("k", self.k.to_string()),
            (a, self.alpha.clone()),
            (b, self.beta.clone()),
            ("q", self.q.clone()),
        ]);
        if self.family == Family::HabsiegerKadell {
            p.insert("n".into(), (self.n0 + self.n1).to_string());
        } else {
            p.insert("n0".into(), self.n0.to_string());
            p.insert("n1".into(), self.n1.to_string());
        }
        p
    }
}

/// Jackson-sum side against the q-gamma product side at the precision of `T`.
pub fn selberg<T: Real>(inp: &SelbergInput, tol: f64) -> VerificationReport {
    let id = family_id(inp.family);
    let snap = inp.snapshot();
    timed(|| {
        let run = || -> Result<VerificationReport, Error> {
            let p = SelbergParams::new(
                inp.n0,
                inp.n1,
                parse_t::<T>("alpha", &inp.alpha)?,
                parse_t::<T>("beta", &inp.beta)?,
                inp.k,
                parse_t::<T>("q", &inp.q)?,
            );
            let ctx = PrecisionCtx::for_scalar::<T>();
            let plan = TruncationPlan::new(tol.min(1e-6) * 1e-2);
            let c = qselberg::compare(inp.family, &p, &plan, &ctx)?;
            Ok(VerificationReport::real(id, snap.clone(), &c.lhs.value, &c.rhs, tol)
                .with_truncation(Truncation::new("J", c.lhs.shells as u64, c.lhs.last_delta)))
        };
        run().unwrap_or_else(|e| VerificationReport::failed(id, snap.clone(), Mode::Real, T::precision_bits(), &e))
    })
}

/// Both sides in exact rational arithmetic (integer α, β; rational q).
pub fn selberg_exact(inp: &SelbergInput) -> VerificationReport {
    let id = family_id(inp.family);
    let snap = inp.snapshot();
    timed(|| {
        let run = || -> Result<VerificationReport, Error> {
            let p = SelbergParams::new(inp.n0, inp.n1, parse_q(&inp.alpha)?, parse_q(&inp.beta)?, inp.k, parse_q(&inp.q)?);
            let l = qselberg::lhs_exact(inp.family, &p)?;
            let r = qselberg::rhs_exact(inp.family, &p)?;
            Ok(VerificationReport::exact(id, snap.clone(), &l, &r))
        };
        run().unwrap_or_else(|e| VerificationReport::failed(id, snap.clone(), Mode::Exact, 0, &e))
    })
}

pub fn ct(p: &CtParams, opts: &CtOptions) -> VerificationReport {
    let snap = params([
        ("n0", p.n0.to_string()),
        ("n1", p.n1.to_string()),
        ("a", p.a.to_string()),
        ("b", p.b.to_string()),
        ("k", p.k.to_string()),
        ("q", p.q.to_string()),
    ]);
    timed(|| match ctidentity::bf_lhs_expand(p, opts) {
        Ok(e) => VerificationReport::exact("eq1.3", snap.clone(), &e.value, &ctidentity::bf_rhs(p))
            .with_truncation(Truncation::new("terms", e.peak_terms as u64, 0.0)),
        Err(e) => VerificationReport::failed("eq1.3", snap.clone(), Mode::Exact, 0, &e),
    })
}

/// Rational parameter point given as (√q, t, t₀, t₀∨, tₙ, tₙ∨).
pub fn parse_param_point(s: &str) -> Result<ParamSet<Rational>, Error> {
    let v: Vec<Rational> = s.split(',').map(|x| parse_q(x.trim())).collect::<Result<_, _>>()?;
    if v.len() != 6 {
        return Err(Error::Parse(format!("expected 6 comma-separated rationals, got {}", v.len())));
    }
    ParamSet::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone(), v[5].clone())
}

pub fn param_text(p: &ParamSet<Rational>) -> String {
    [&p.sqrt_q, &p.t, &p.t0, &p.t0v, &p.tn, &p.tnv].map(|x| x.to_string()).join(",")
}

/// Quadratic, braid, inverse and Y-commutation relations on monomials.
pub fn hecke_relations(p: &ParamSet<Rational>, n: usize, max_deg: i64) -> VerificationReport {
    let snap = params([
        ("n", n.to_string()),
        ("max_deg", max_deg.to_string()),
        ("point", param_text(p)),
    ]);
    timed(|| match HeckeCtx::new(p.clone(), n) {
        Ok(ctx) => {
            let s = ctx.relation_suite(max_deg);
            let mut r = VerificationReport::count("hecke.relations", snap.clone(), s.checks - s.failures.len(), s.checks);
            if let Some(f) = s.failures.first() {
                r.reason = Some(format!("{} failures, first: {f}", s.failures.len()));
            }
            r
        }
        Err(e) => VerificationReport::failed("hecke.relations", snap.clone(), Mode::Exact, 0, &e),
    })
}

/// E_λ is monic, supported below λ and a joint Y-eigenvector with
/// eigenvalues γ_λ.
pub fn koornwinder_check(p: &ParamSet<Rational>, lambda: &[i64]) -> VerificationReport {
    let w = Weight::new(lambda.to_vec());
    let snap = params([("lambda", w.to_string()), ("point", param_text(p))]);
    timed(|| {
        let run = || -> Result<VerificationReport, Error> {
            let ctx = HeckeCtx::new(p.clone(), lambda.len())?;
            let e = ctx.koornwinder_e(lambda)?;
            let below = weights_below(lambda);
            let g = ctx.gamma(lambda);
            let mut checks = vec![
                e.coeff(lambda).is_one(),
                e.support().all(|mu| below.iter().any(|b| b.0 == *mu)),
            ];
            if lambda.iter().all(|&c| c == 0) {
                checks.push(e == LaurentPoly::one(lambda.len()));
            }
            for i in 1..=lambda.len() {
                checks.push(ctx.apply_y(&e, i) == e.scale(&g[i - 1]));
            }
            let ok = checks.iter().filter(|&&c| c).count();
            Ok(VerificationReport::count("koornwinder.eigen", snap.clone(), ok, checks.len())
                .with_truncation(Truncation::new("terms", e.len() as u64, 0.0)))
        };
        run().unwrap_or_else(|e| VerificationReport::failed("koornwinder.eigen", snap.clone(), Mode::Exact, 0, &e))
    })
}

fn test_poly(n: usize) -> LaurentPoly<Rational> {
    let mut f = LaurentPoly::zero(n);
    let mut k = 0i64;
    for e in crate::box_exponents(n, 1) {
        k += 1;
        if k % 3 != 2 {
            f.add_term(e, Rational::new(k.into(), (k % 4 + 1).into()));
        }
    }
    f
}

/// Partial antisymmetrization: U₁⁻E_{ρ₁} = c_{ρ₁ρ₁}χ₁, the Poincaré
/// product, the projector identities of U₁±, and the twisted symmetry of χ₁.
pub fn antisymmetrization(p: &ParamSet<Rational>, n0: usize, n1: usize) -> Vec<VerificationReport> {
    let snap = params([("n0", n0.to_string()), ("n1", n1.to_string()), ("point", param_text(p))]);
    let ctx = match HeckeCtx::with_blocks(p.clone(), n0, n1) {
        Ok(c) => c,
        Err(e) => return vec![VerificationReport::failed("eq4.15", snap, Mode::Exact, 0, &e)],
    };
    let n = n0 + n1;
    let mut out = Vec::new();
    out.push(timed(|| {
        let direct = enumerate_w1(n0, n1)
            .iter()
            .fold(Rational::zero(), |acc, w| acc + w.t_w(p).powi(-2));
        VerificationReport::exact("eq4.12", snap.clone(), &direct, &poincare_w1(p, n1))
    }));
    out.push(timed(|| {
        let rho = Weight::rho1(n0, n1);
        match ctx.koornwinder_e(&rho) {
            Ok(e) => {
                let u = ctx.apply_u1(&e, Sign::Minus);
                let c = ctx.coeff_c_rho1();
                let chi = ctx.build_chi1().scale(&c);
                let mismatch = u.sub(&chi).len();
                let mut r = VerificationReport::exact("eq4.15", snap.clone(), &u.coeff(&rho), &c_rho1_formula(p, n0, n1));
                r.pass = r.pass && mismatch == 0;
                r.abs_err = format!("{}", mismatch);
                r.with_truncation(Truncation::new("terms", u.len() as u64, 0.0))
            }
            Err(e) => VerificationReport::failed("eq4.15", snap.clone(), Mode::Exact, 0, &e),
        }
    }));
    out.push(timed(|| {
        let f = test_poly(n);
        let mut ok = 0;
        let mut total = 0;
        for sign in [Sign::Plus, Sign::Minus] {
            let u = ctx.apply_u1(&f, sign);
            total += 1;
            ok += usize::from(ctx.apply_u1(&u, sign) == u);
            for i in n0 + 1..=n {
                let t = ctx.t(i);
                let ev = if sign == Sign::Plus { t } else { -t.recip() };
                total += 1;
                ok += usize::from(ctx.apply_t(&u, i).sub(&u.scale(&ev)).is_zero());
            }
        }
        VerificationReport::count("eq4.2", snap.clone(), ok, total)
    }));
    out.push(timed(|| {
        let chi = ctx.build_chi1();
        let f = test_poly(n);
        let mut ok = 0;
        let mut total = 0;
        for i in n0 + 1..=n {
            let ti = ctx.t(i);
            let plus = |g: &LaurentPoly<Rational>| ctx.apply_t(g, i).add(&g.scale(&ti.recip()));
            let lhs = plus(&chi.mul(&f));
            let rhs = ctx.apply_si(&chi, i).mul(&ctx.apply_t(&f, i).sub(&f.scale(&ti)));
            total += 2;
            ok += usize::from(plus(&chi).is_zero()) + usize::from(lhs == rhs);
        }
        VerificationReport::count("eq4.14", snap.clone(), ok, total)
    }));
    out
}

/// Real Askey–Wilson point: q, t and (a₁, a₂, a₃, a₄).
#[derive(Clone, Debug)]
pub struct NormInput {
    pub q: String,
    pub t: String,
    pub a: [String; 4],
    pub m_max: usize,
}

impl Default for NormInput {
    fn default() -> Self {
        NormInput {
            q: "0.3".into(),
            t: "0.5".into(),
            a: ["0.3", "-0.2", "0.25", "-0.35"].map(String::from),
            m_max: 512,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NormWhat {
    /// ⟨E_λ, E_λ⟩ for dominant λ.
    E(Vec<i64>),
    /// ⟨χ₁, χ₁⟩ for the block split (n₀, n₁).
    Chi1(usize, usize),
    /// |⟨T_i f, g⟩ − ⟨f, T_i⁻¹ g⟩| for fixed test polynomials in two variables.
    Adjoint(usize),
}

fn norm_setup<T: Real>(inp: &NormInput, n: usize) -> Result<(DensityEval<T>, Quadrature), Error> {
    let q = parse_t::<T>("q", &inp.q)?;
    let t = parse_t::<T>("t", &inp.t)?;
    let mut a = Vec::new();
    for (i, s) in inp.a.iter().enumerate() {
        a.push(parse_t::<T>(&format!("a{}", i + 1), s)?);
    }
    let a: [T; 4] = a.try_into().map_err(|_| Error::Parse("four a parameters".into()))?;
    let p = ParamSet::from_askey_wilson(q.sqrt(), t, a)?;
    let d = DensityEval::new(p, n, PrecisionCtx::for_scalar::<T>())?;
    let quad = Quadrature { m_max: inp.m_max, ..Quadrature::default() };
    Ok((d, quad))
}

/// Torus quadrature against the closed norm formulas.
pub fn norm<T: Real>(what: &NormWhat, inp: &NormInput, tol: f64) -> VerificationReport {
    let mut snap = params([
        ("q", inp.q.clone()),
        ("t", inp.t.clone()),
        ("a", inp.a.join(",")),
        ("m_max", inp.m_max.to_string()),
    ]);
    let id = match what {
        NormWhat::E(l) => {
            snap.insert("lambda".into(), Weight::new(l.clone()).to_string());
            "eq3.3"
        }
        NormWhat::Chi1(n0, n1) => {
            snap.insert("n0".into(), n0.to_string());
            snap.insert("n1".into(), n1.to_string());
            "eq4.21"
        }
        NormWhat::Adjoint(i) => {
            snap.insert("i".into(), i.to_string());
            "eq3.2"
        }
    };
    timed(|| {
        let run = || -> Result<VerificationReport, Error> {
            match what {
                NormWhat::E(l) => {
                    let (d, quad) = norm_setup::<T>(inp, l.len())?;
                    let f = FunctionSpec::koornwinder(l.clone());
                    let v = pairing::pair(&f, &f, &d, &quad)?;
                    let closed = pairing::norm_e_formula(l, &d.p, &d.ctx)?;
                    Ok(VerificationReport::real(id, snap.clone(), &v.value.re, &closed, tol)
                        .with_truncation(Truncation::new("M", v.nodes as u64, v.error_estimate)))
                }
                NormWhat::Chi1(n0, n1) => {
                    let (d, quad) = norm_setup::<T>(inp, n0 + n1)?;
                    let f = FunctionSpec::chi1(*n0, *n1);
                    let v = pairing::pair(&f, &f, &d, &quad)?;
                    let closed = pairing::norm_chi1_simplified(&d.p, *n0, *n1, &d.ctx)?;
                    Ok(VerificationReport::real(id, snap.clone(), &v.value.re, &closed, tol)
                        .with_truncation(Truncation::new("M", v.nodes as u64, v.error_estimate)))
                }
                NormWhat::Adjoint(i) => {
                    let (d, quad) = norm_setup::<T>(inp, 2)?;
                    let c = |s: &str| T::parse_real(s).expect("literal");
                    let f = FunctionSpec::fixed(
                        "f",
                        LaurentPoly::from_terms(2, [(vec![1, 0], c("0.5")), (vec![0, -1], c("-1.25")), (vec![0, 0], c("1"))]),
                    );
                    let g = FunctionSpec::fixed(
                        "g",
                        LaurentPoly::from_terms(2, [(vec![-1, 1], c("2")), (vec![0, 1], c("0.75"))]),
                    );
                    let lhs = pairing::pair(&f.then_t(*i), &g, &d, &quad)?;
                    let rhs = pairing::pair(&f, &g.then_t_inv(*i), &d, &quad)?;
                    let est = lhs.error_estimate + rhs.error_estimate;
                    // residual measured against the quadrature error estimate
                    let bound = tol.max(10.0 * est);
                    let r = VerificationReport::real(id, snap.clone(), &lhs.value.re, &rhs.value.re, bound);
                    Ok(r.with_truncation(Truncation::new("M", lhs.nodes.max(rhs.nodes) as u64, est)))
                }
            }
        };
        run().unwrap_or_else(|e| VerificationReport::failed(id, snap.clone(), Mode::Real, T::precision_bits(), &e))
    })
}

#[derive(Clone, Debug)]
pub struct ClassicalInput {
    pub which: Corollary,
    pub n0: usize,
    pub n1: usize,
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
    pub c: String,
}

/// Gauss-rule LHS against the Gamma product RHS.
pub fn classical<T: Real>(inp: &ClassicalInput, tol: f64) -> VerificationReport {
    let id = inp.which.id();
    let (ua, ub, uc) = inp.which.uses();
    let mut snap = params([("n0", inp.n0.to_string()), ("n1", inp.n1.to_string()), ("gamma", inp.gamma.clone())]);
    if ua {
        snap.insert("alpha".into(), inp.alpha.clone());
    }
    if ub {
        snap.insert("beta".into(), inp.beta.clone());
    }
    if uc {
        snap.insert("c".into(), inp.c.clone());
    }
    timed(|| {
        let run = || -> Result<VerificationReport, Error> {
            let p = ClassicalParams::new(
                inp.n0,
                inp.n1,
                parse_t::<T>("alpha", &inp.alpha)?,
                parse_t::<T>("beta", &inp.beta)?,
                parse_t::<T>("gamma", &inp.gamma)?,
                parse_t::<T>("c", &inp.c)?,
            );
            let rep = classical::verify(inp.which, &p)?;
            Ok(VerificationReport::real(id, snap.clone(), &rep.lhs, &rep.rhs, tol)
                .with_truncation(Truncation::new("nodes", rep.nodes as u64, 0.0)))
        };
        run().unwrap_or_else(|e| VerificationReport::failed(id, snap.clone(), Mode::Real, T::precision_bits(), &e))
    })
}

/// Degree product of the reflection-group form against the corollary
/// product it reduces to; for integer γ also against a literal Gauss–Hermite
/// integral.
pub fn reflection<T: Real>(fam: ReflectionFamily, n0: usize, n1: usize, gamma: &str, tol: f64) -> VerificationReport {
    let snap = params([
        ("family", format!("{fam:?}")),
        ("n0", n0.to_string()),
        ("n1", n1.to_string()),
        ("gamma", gamma.to_string()),
    ]);
    timed(|| {
        let run = || -> Result<VerificationReport, Error> {
            let rp = ReflectionPair::new(fam, n0, n1)?;
            let g = parse_t::<T>("gamma", gamma)?;
            let uniform = classical::reflection_rhs(&rp, &g);
            let corollary = classical::reflection_corollary_rhs(&rp, &g);
            let mut r = VerificationReport::real("prop7.12", snap.clone(), &uniform, &corollary, tol);
            if let Some(gi) = g.as_integer().filter(|&v| (0..=4).contains(&v)) {
                if rp.n() <= 3 {
                    let lit = classical::reflection_lhs::<T>(&rp, gi as u32)?;
                    let e = ((lit - uniform.clone()) / uniform.clone()).magnitude();
                    r.pass = r.pass && e < tol;
                    r.reason = Some(format!("literal integral rel err {}", crate::report::fmt_err(e)));
                }
            }
            Ok(r)
        };
        run().unwrap_or_else(|e| VerificationReport::failed("prop7.12", snap.clone(), Mode::Real, T::precision_bits(), &e))
    })
}
