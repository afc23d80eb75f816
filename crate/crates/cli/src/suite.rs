//! The acceptance suite: ten criteria, each a batch of reports plus any
//! runtime limit.

use std::time::{Duration, Instant};

use qsel_core::classical::{Corollary, ReflectionFamily};
use qsel_core::ctidentity::{CtOptions, CtParams};
use qsel_core::qselberg::Family;
use qsel_core::weights::{weights_below, Weight};
use qsel_core::{Real128, Real256, Real64};

use crate::checks::{self, ClassicalInput, NormInput, NormWhat, SelbergInput};
use crate::fixtures;
use crate::report::VerificationReport;

pub const TITLES: [&str; 10] = [
    "Habsieger-Kadell q-Selberg grid",
    "two-block q-Selberg grid, both variants",
    "two-block q-Selberg grid with x, y",
    "Baker-Forrester constant term, exact",
    "Hecke relations on monomials",
    "nonsymmetric Koornwinder eigenpolynomials",
    "partial antisymmetrization",
    "torus norms and adjointness",
    "classical q -> 1 corollaries and reflection products",
    "frozen oracle fixtures",
];

pub struct CriterionResult {
    pub number: usize,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub reports: Vec<VerificationReport>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {}: {} {} ({})",
            self.number,
            if self.pass { "PASS" } else { "FAIL" },
            self.title,
            self.detail
        )
    }
}

/// Real-mode tolerance for the q-Selberg criteria at 256 bits.
pub const SELBERG_TOL: f64 = 1e-30;
pub const NORM_TOL: f64 = 1e-10;
pub const CLASSICAL_TOL: f64 = 1e-12;

fn finish(number: usize, reports: Vec<VerificationReport>, elapsed: Duration, limit: Option<Duration>) -> CriterionResult {
    let ok = reports.iter().filter(|r| r.pass).count();
    let worst = reports
        .iter()
        .filter_map(|r| r.rel_err.parse::<f64>().ok())
        .fold(0.0f64, f64::max);
    let in_time = limit.map_or(true, |l| elapsed <= l);
    let mut detail = format!("{ok}/{} pass, max rel err {worst:.1e}, {:.1}s", reports.len(), elapsed.as_secs_f64());
    if let Some(l) = limit {
        detail.push_str(&format!(" of {}s allowed", l.as_secs()));
    }
    if let Some(r) = reports.iter().find(|r| !r.pass) {
        detail.push_str(&format!("; first failure {} {:?}", r.identity, r.params));
    }
    CriterionResult {
        number,
        title: TITLES[number - 1],
        pass: ok == reports.len() && !reports.is_empty() && in_time,
        detail,
        reports,
    }
}

fn selberg_case(family: Family, n0: usize, n1: usize, alpha: &str, beta: &str, k: u32, q: &str) -> SelbergInput {
    SelbergInput { family, n0, n1, alpha: alpha.into(), beta: beta.into(), k, q: q.into() }
}

pub fn hk_grid() -> Vec<SelbergInput> {
    let mut v = Vec::new();
    for n in 1..=3 {
        for k in 0..=2 {
            for (a, b) in [("1", "1"), ("1.5", "2.5")] {
                for q in ["0.2", "0.5"] {
                    v.push(selberg_case(Family::HabsiegerKadell, n, 0, a, b, k, q));
                }
            }
        }
    }
    v
}

pub fn thm73_grid() -> Vec<SelbergInput> {
    let mut v = Vec::new();
    for family in [Family::Thm73I, Family::Thm73II] {
        for (n0, n1) in [(0, 2), (1, 2), (2, 2)] {
            for k in 0..=2 {
                for q in ["0.3", "0.5"] {
                    v.push(selberg_case(family, n0, n1, "1.5", "2", k, q));
                }
            }
        }
    }
    v
}

pub fn thm74_grid() -> Vec<SelbergInput> {
    let mut v = Vec::new();
    for (n0, n1) in [(1, 2), (2, 2)] {
        for k in 0..=1 {
            for q in ["0.3", "0.5"] {
                v.push(selberg_case(Family::Thm74, n0, n1, "1", "1.5", k, q));
            }
        }
    }
    v
}

pub fn ct_grid() -> Vec<CtParams> {
    let mut v = Vec::new();
    for q in ["1/2", "1/3"] {
        let q = checks::parse_q(q).expect("literal");
        for (n0, n1) in [(0, 2), (1, 2), (0, 3), (1, 3)] {
            for a in 0..=2 {
                for b in 0..=2 {
                    for k in 0..=2 {
                        v.push(CtParams::new(n0, n1, a, b, k, q.clone()));
                    }
                }
            }
        }
    }
    v
}

/// Integer-parameter corollary grid with n ≤ 3 (n = 2 for the simplex forms).
pub fn classical_grid() -> Vec<ClassicalInput> {
    let mut out = Vec::new();
    for which in Corollary::ALL {
        let splits: &[(usize, usize)] = match which {
            Corollary::Eq712 | Corollary::Eq713 => &[(0, 2), (1, 1), (2, 0)],
            _ => &[(0, 2), (1, 2), (2, 1), (0, 3), (3, 0)],
        };
        let (ua, ub, uc) = which.uses();
        for &(n0, n1) in splits {
            if which == Corollary::Eq78 && n1 == 0 {
                continue;
            }
            for g in 0..=2 {
                for (a, b) in [(1, 1), (2, 3)] {
                    for c in [0, 1] {
                        if (!ua && a != 1) || (!ub && b != 1) || (!uc && c != 0) {
                            continue;
                        }
                        out.push(ClassicalInput {
                            which,
                            n0,
                            n1,
                            alpha: a.to_string(),
                            beta: b.to_string(),
                            gamma: g.to_string(),
                            c: c.to_string(),
                        });
                    }
                }
            }
        }
    }
    out
}

/// The two rational parameter points used by the exact suites, as
/// (√q, t, t₀, t₀∨, tₙ, tₙ∨).
pub const POINTS: [&str; 2] = ["1/2,1/3,1/2,1/3,2/5,1/4", "2/3,3/7,3/5,5/4,1/3,2/3"];

pub fn criterion(number: usize) -> CriterionResult {
    let start = Instant::now();
    let mins = |m: u64| Some(Duration::from_secs(60 * m));
    let (reports, limit) = match number {
        1 => (hk_grid().iter().map(|c| checks::selberg::<Real256>(c, SELBERG_TOL)).collect(), mins(10)),
        2 => (thm73_grid().iter().map(|c| checks::selberg::<Real256>(c, SELBERG_TOL)).collect(), mins(30)),
        3 => (thm74_grid().iter().map(|c| checks::selberg::<Real256>(c, SELBERG_TOL)).collect(), None),
        4 => {
            let opts = CtOptions::default();
            let reports: Vec<VerificationReport> = ct_grid().iter().map(|p| checks::ct(p, &opts)).collect();
            let slowest = reports.iter().map(|r| r.runtime_ms).max().unwrap_or(0);
            let mut res = finish(4, reports, start.elapsed(), None);
            res.detail.push_str(&format!(", slowest tuple {slowest} ms of 300000 allowed"));
            res.pass &= slowest <= 300_000;
            return res;
        }
        5 => {
            let mut v = Vec::new();
            for pt in POINTS {
                let p = checks::parse_param_point(pt).expect("literal point");
                for n in [2, 3] {
                    v.push(checks::hecke_relations(&p, n, 2));
                }
            }
            (v, None)
        }
        6 => {
            let p = checks::parse_param_point(POINTS[0]).expect("literal point");
            let mut lams: Vec<Weight> = weights_below(&[1, 1]);
            lams.sort();
            lams.push(Weight::rho1(0, 2));
            (lams.iter().map(|l| checks::koornwinder_check(&p, &l.0)).collect(), None)
        }
        7 => {
            let p = checks::parse_param_point(POINTS[0]).expect("literal point");
            let mut v = checks::antisymmetrization(&p, 0, 2);
            v.extend(checks::antisymmetrization(&p, 1, 2));
            (v, None)
        }
        8 => {
            let inp = NormInput::default();
            let mut v = Vec::new();
            for what in [NormWhat::E(vec![0, 0]), NormWhat::E(vec![1, 0]), NormWhat::Chi1(0, 2)] {
                v.push(checks::norm::<Real64>(&what, &inp, NORM_TOL));
            }
            for i in 0..=2 {
                v.push(checks::norm::<Real64>(&NormWhat::Adjoint(i), &inp, 1e-12));
            }
            (v, None)
        }
        9 => {
            let mut v: Vec<VerificationReport> =
                classical_grid().iter().map(|c| checks::classical::<Real128>(c, CLASSICAL_TOL)).collect();
            for fam in [ReflectionFamily::A, ReflectionFamily::B, ReflectionFamily::D] {
                for (n0, n1) in [(0, 2), (1, 2)] {
                    for g in ["1", "2"] {
                        v.push(checks::reflection::<Real128>(fam, n0, n1, g, CLASSICAL_TOL));
                    }
                }
            }
            (v, None)
        }
        10 => (fixtures::load().iter().map(fixtures::check).collect(), None),
        _ => panic!("no criterion {number}"),
    };
    finish(number, reports, start.elapsed(), limit)
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=10).map(criterion).collect()
}
