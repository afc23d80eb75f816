//! Frozen reference values and the library computations they are checked
//! against. Each fixture records the independent oracle that produced it.

use num_traits::{One, Zero};
use qsel_core::classical::{self, ClassicalParams, Corollary, GaussKind};
use qsel_core::ctidentity::{self, CtParams};
use qsel_core::hecke::{c_rho1_formula, v_root};
use qsel_core::pairing::{self, DensityEval, FunctionSpec, Quadrature};
use qsel_core::qselberg::{self, Family, SelbergParams};
use qsel_core::scalars::{self, cis, parse_rational, Real};
use qsel_core::weights::{self, enumerate_w1, Weight};
use qsel_core::{
    Analytic,
    Complex, Error, HeckeCtx, LaurentPoly, ParamSet, PrecisionCtx, Rational, Real128, Real256, Real64, Scalar,
};
use serde::{Deserialize, Serialize};

use crate::report::{params, Mode, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Rational, compared for equality.
    Exact,
    /// Decimal, compared to `tolerance` (relative, or absolute when the value is 0).
    Real,
    /// Structured text, compared verbatim.
    Text,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub id: String,
    pub quantity: String,
    pub value: String,
    pub kind: Kind,
    pub tolerance: f64,
    pub oracle: String,
    pub settings: String,
}

pub const DERIVED_JSON: &str = include_str!("../fixtures/derived.json");

pub fn load() -> Vec<Fixture> {
    serde_json::from_str(DERIVED_JSON).expect("fixture file parses")
}

fn q(s: &str) -> Rational {
    parse_rational(s).expect("literal")
}

fn rd<T: Real>(s: &str) -> T {
    T::parse_real(s).expect("literal")
}

/// Sorted weights as "a b; c d; ...".
pub fn fmt_weights(ws: &[Weight]) -> String {
    let mut v: Vec<&Weight> = ws.iter().collect();
    v.sort();
    v.iter()
        .map(|w| w.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn fmt_vec(v: &[i64]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

/// Rational point for the Koornwinder fixtures: √q = 1/2, t = 1/2,
/// (t₀, t₀∨, tₙ, tₙ∨) = (1/2, 1/3, 2/5, 1/4).
pub fn koornwinder_point() -> ParamSet<Rational> {
    ParamSet::new(q("1/2"), q("1/2"), q("1/2"), q("1/3"), q("2/5"), q("1/4")).expect("valid point")
}

/// Rational point for the χ₁ coefficient fixtures.
pub fn hecke_point() -> ParamSet<Rational> {
    ParamSet::new(q("1/2"), q("1/3"), q("1/2"), q("1/3"), q("2/5"), q("1/4")).expect("valid point")
}

/// Real point for the pairing fixtures: q = 0.3, t = 0.5, a = (0.3, −0.2, 0.25, −0.35).
pub fn pairing_density() -> Result<DensityEval<Real64>, Error> {
    let p = ParamSet::from_askey_wilson(
        rd::<Real64>("0.3").sqrt(),
        rd("0.5"),
        [rd("0.3"), rd("-0.2"), rd("0.25"), rd("-0.35")],
    )?;
    DensityEval::new(p, 2, PrecisionCtx::for_scalar::<Real64>())
}

fn selberg_rhs(family: Family, n0: usize, n1: usize, a: &str, b: &str, k: u32, qs: &str) -> Result<String, Error> {
    type T = Real256;
    let p = SelbergParams::new(n0, n1, rd::<T>(a), rd(b), k, rd(qs));
    let ctx = PrecisionCtx::for_scalar::<T>();
    Ok(qselberg::rhs(family, &p, &ctx)?.to_text())
}

fn classical_lhs(which: Corollary, n0: usize, n1: usize, a: i64, b: i64, g: i64, c: i64) -> Result<String, Error> {
    type T = Real128;
    let p = ClassicalParams::new(n0, n1, T::from_i64(a), T::from_i64(b), T::from_i64(g), T::from_i64(c));
    Ok(classical::lhs(which, &p)?.to_text())
}

fn ct_value(n0: usize, n1: usize, a: u32, b: u32, k: u32, qs: &str) -> Result<String, Error> {
    Ok(ctidentity::bf_lhs(&CtParams::new(n0, n1, a, b, k, q(qs)))?.to_string())
}

/// The library's value for fixture `id`, formatted like the fixture.
pub fn library_value(id: &str) -> Result<String, Error> {
    Ok(match id {
        "qpoch.finite" => scalars::qpoch_finite(&q("1/2"), &q("1/3"), 2).to_string(),
        "qpoch.inf" => {
            let h = rd::<Real256>("0.5");
            scalars::qpoch_inf(&h, &h, &PrecisionCtx::for_scalar::<Real256>())?.to_text()
        }
        "qgamma.3" => scalars::qgamma_int_exact(3, &q("1/2")).to_string(),
        "qgamma.4" => scalars::qgamma_int_exact(4, &q("1/2")).to_string(),
        "qfactorial.3" => scalars::qfactorial(3, &q("1/2")).to_string(),
        "weights.leq" => weights::leq_dominance(&[0, 0], &[1, 1]).to_string(),
        "weights.preceq" => weights::preceq(&[0, 1], &[1, 0]).to_string(),
        "weights.below10" => fmt_weights(&weights::weights_below(&[1, 0])),
        "weights.below11.size" => weights::weights_below(&[1, 1]).len().to_string(),
        "weights.rho_m.00" => fmt_vec(&weights::rho_vectors(&[0, 0]).0),
        "weights.rho_m.rho1_12" => fmt_vec(&weights::rho_vectors(&Weight::rho1(1, 2)).0),
        "weights.w1_02" => {
            let g = enumerate_w1(0, 2);
            format!("{} {}", g.len(), g.iter().map(|w| w.length).max().unwrap_or(0))
        }
        "laurent.product" => {
            let one = LaurentPoly::<Rational>::one(1);
            let x = LaurentPoly::var(1, 0);
            one.sub(&x).mul(&one.add(&x)).to_text()
        }
        "laurent.ct" => {
            let one = LaurentPoly::<Rational>::one(2);
            let u = one.sub(&LaurentPoly::monomial(vec![1, -1], Rational::one()));
            let v = one.sub(&LaurentPoly::monomial(vec![-1, 1], Rational::one()));
            u.mul(&v).constant_term().to_string()
        }
        "hecke.v_root" => {
            type T = Real64;
            let p = ParamSet::new(rd::<T>("0.3").sqrt(), rd("0.5"), rd("0.5"), rd("0.5"), rd("0.5"), rd("0.5"))?;
            v_root(&[rd::<T>("0.7"), rd("0.4")], &[1, -1], &p).to_text()
        }
        "hecke.e10" => HeckeCtx::new(koornwinder_point(), 2)?.koornwinder_e(&[1, 0])?.to_text(),
        "hecke.e_rho1_02" => HeckeCtx::new(koornwinder_point(), 2)?.koornwinder_e(&Weight::rho1(0, 2))?.to_text(),
        "hecke.c_rho1_02" => c_rho1_formula(&hecke_point(), 0, 2).to_string(),
        "hecke.c_rho1_12" => c_rho1_formula(&hecke_point(), 1, 2).to_string(),
        "pairing.delta" => {
            let d = pairing_density()?;
            let x: Vec<Complex<Real64>> = ["0.4", "1.9"].iter().map(|s| cis(&rd::<Real64>(s))).collect();
            d.eval_delta(&x)?.re.to_text()
        }
        "pairing.biorth" => {
            let d = pairing_density()?;
            let e10 = FunctionSpec::koornwinder(vec![1, 0]);
            let e01 = FunctionSpec::koornwinder(vec![0, 1]);
            pairing::pair(&e10, &e01, &d, &Quadrature::default())?.value.magnitude().to_string()
        }
        "pairing.norm00" => {
            let d = pairing_density()?;
            pairing::norm_e_formula(&[0, 0], &d.p, &d.ctx)?.to_text()
        }
        "pairing.norm10" => {
            let d = pairing_density()?;
            pairing::norm_e_formula(&[1, 0], &d.p, &d.ctx)?.to_text()
        }
        "pairing.norm_chi1_02" => {
            let d = pairing_density()?;
            pairing::norm_chi1_formula(&d.p, 0, 2, &d.ctx)?.to_text()
        }
        "selberg.hk.n2" => selberg_rhs(Family::HabsiegerKadell, 2, 0, "1.5", "2.5", 1, "0.3")?,
        "selberg.hk.n3" => selberg_rhs(Family::HabsiegerKadell, 3, 0, "1", "1", 2, "0.2")?,
        "selberg.thm73-I.02" => selberg_rhs(Family::Thm73I, 0, 2, "1", "1", 0, "0.5")?,
        "selberg.thm73-I.12" => selberg_rhs(Family::Thm73I, 1, 2, "1.5", "2", 1, "0.3")?,
        "selberg.thm73-II.12" => selberg_rhs(Family::Thm73II, 1, 2, "1.5", "2", 1, "0.3")?,
        "selberg.thm74.12" => selberg_rhs(Family::Thm74, 1, 2, "1", "1", 0, "0.4")?,
        "selberg.thm74.22" => selberg_rhs(Family::Thm74, 2, 2, "1.5", "0.5", 1, "0.3")?,
        "ct.12.111.half" => ct_value(1, 2, 1, 1, 1, "1/2")?,
        "ct.02.121.third" => ct_value(0, 2, 1, 2, 1, "1/3")?,
        "classical.laguerre" => {
            type T = Real128;
            let rule = classical::gauss_nodes::<T>(&GaussKind::Laguerre(T::from_i64(0)), 3)?;
            rule.integrate(|x| x.powi(5)).to_text()
        }
        "classical.eq77.02.111" => classical_lhs(Corollary::Eq77, 0, 2, 1, 1, 1, 0)?,
        "classical.eq77.02.110" => classical_lhs(Corollary::Eq77, 0, 2, 1, 1, 0, 0)?,
        "classical.eq77.12.211" => classical_lhs(Corollary::Eq77, 1, 2, 2, 1, 1, 0)?,
        "classical.eq79.20.1" => classical_lhs(Corollary::Eq79, 2, 0, 1, 1, 1, 0)?,
        "classical.eq79.02.0" => classical_lhs(Corollary::Eq79, 0, 2, 1, 1, 0, 0)?,
        "classical.eq79.12.1" => classical_lhs(Corollary::Eq79, 1, 2, 1, 1, 1, 0)?,
        "classical.eq710.02.10" => classical_lhs(Corollary::Eq710, 0, 2, 1, 1, 0, 0)?,
        "classical.eq712.02.110" => classical_lhs(Corollary::Eq712, 0, 2, 1, 1, 0, 0)?,
        "classical.eq714.02.00" => classical_lhs(Corollary::Eq714, 0, 2, 1, 1, 0, 0)?,
        "classical.eq714.20.11" => classical_lhs(Corollary::Eq714, 2, 0, 1, 1, 1, 1)?,
        other => return Err(Error::InvalidParams(format!("no library computation for fixture {other}"))),
    })
}

/// Compares `got` against the frozen value under the fixture's kind.
pub fn matches(f: &Fixture, got: &str) -> (bool, f64) {
    match f.kind {
        Kind::Text => (got.trim() == f.value.trim(), 0.0),
        Kind::Exact => match (parse_rational(got), parse_rational(&f.value)) {
            (Some(a), Some(b)) => (a == b, 0.0),
            _ => (false, f64::INFINITY),
        },
        Kind::Real => match (Real256::parse_real(got), Real256::parse_real(&f.value)) {
            (Some(a), Some(b)) => {
                let diff = (a - b.clone()).magnitude();
                let e = if b.is_zero() { diff } else { diff / b.magnitude() };
                (e < f.tolerance, e)
            }
            _ => (false, f64::INFINITY),
        },
    }
}

/// Library value against the frozen fixture.
pub fn check(f: &Fixture) -> VerificationReport {
    let snap = params([("fixture", f.id.as_str()), ("oracle", f.oracle.as_str())]);
    crate::checks::timed(|| match library_value(&f.id) {
        Ok(got) => {
            let (ok, e) = matches(f, &got);
            let mode = if f.kind == Kind::Real { Mode::Real } else { Mode::Exact };
            VerificationReport {
                identity: "fixture".into(),
                params: snap.clone(),
                lhs: got,
                rhs: f.value.clone(),
                abs_err: crate::report::fmt_err(e),
                rel_err: crate::report::fmt_err(e),
                tolerance: crate::report::fmt_err(f.tolerance),
                pass: ok,
                truncation: None,
                runtime_ms: 0,
                mode,
                precision_bits: if mode == Mode::Real { 256 } else { 0 },
                error: None,
                reason: None,
            }
        }
        Err(e) => VerificationReport::failed("fixture", snap.clone(), Mode::Exact, 0, &e),
    })
}
