//! q → 1 corollaries: Selberg, Mehta, Laguerre, simplex and squared-variable
//! Gaussian integrals with squared-difference blocks, plus the degree form
//! over reflection groups of type A, B, D.
//!
//! Left sides are computed by tensor Gauss rules and are exact for integer
//! exponents. Right sides are products of Γ values.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qselberg::{self, Family, SelbergParams};
use crate::scalars::{PrecisionCtx, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Corollary {
    Eq77,
    Eq78,
    Eq79,
    Eq710,
    Eq711,
    Eq712,
    Eq713,
    Eq714,
    Eq715,
}

impl Corollary {
    pub const ALL: [Corollary; 9] = [
        Corollary::Eq77,
        Corollary::Eq78,
        Corollary::Eq79,
        Corollary::Eq710,
        Corollary::Eq711,
        Corollary::Eq712,
        Corollary::Eq713,
        Corollary::Eq714,
        Corollary::Eq715,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Corollary::Eq77 => "eq7.7",
            Corollary::Eq78 => "eq7.8",
            Corollary::Eq79 => "eq7.9",
            Corollary::Eq710 => "eq7.10",
            Corollary::Eq711 => "eq7.11",
            Corollary::Eq712 => "eq7.12",
            Corollary::Eq713 => "eq7.13",
            Corollary::Eq714 => "eq7.14",
            Corollary::Eq715 => "eq7.15",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.id() == s || c.id().trim_start_matches("eq") == s)
    }

    /// Which of α, β, c the identity depends on.
    pub fn uses(self) -> (bool, bool, bool) {
        match self {
            Corollary::Eq77 | Corollary::Eq78 | Corollary::Eq712 | Corollary::Eq713 => (true, true, false),
            Corollary::Eq710 | Corollary::Eq711 => (true, false, false),
            Corollary::Eq714 | Corollary::Eq715 => (false, false, true),
            Corollary::Eq79 => (false, false, false),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalParams<T> {
    pub n0: usize,
    pub n1: usize,
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
    pub c: T,
}

impl<T: Real> ClassicalParams<T> {
    pub fn new(n0: usize, n1: usize, alpha: T, beta: T, gamma: T, c: T) -> Self {
        Self { n0, n1, alpha, beta, gamma, c }
    }

    pub fn n(&self) -> usize {
        self.n0 + self.n1
    }

    /// γ as a nonnegative integer, required for quadrature.
    pub fn int_gamma(&self) -> Result<u32> {
        nonneg_int(&self.gamma, "gamma")
    }

    pub fn int_c(&self) -> Result<u32> {
        nonneg_int(&self.c, "c")
    }
}

fn nonneg_int<T: Real>(x: &T, what: &str) -> Result<u32> {
    match x.as_integer() {
        Some(m) if (0..=1000).contains(&m) => Ok(m as u32),
        _ => Err(Error::InvalidParams(format!(
            "{what} = {} must be a nonnegative integer for quadrature",
            x.to_text()
        ))),
    }
}

/// Γ(x), exact ladder at integers and half-integers, otherwise the backend.
pub fn gamma<T: Real>(x: &T) -> T {
    let two_x = x.clone() * T::from_i64(2);
    if let Some(m2) = two_x.as_integer() {
        if m2 > 0 && m2 <= 4000 {
            if m2 % 2 == 0 {
                return (1..m2 / 2).fold(T::one(), |acc, i| acc * T::from_i64(i));
            }
            // Γ(m + 1/2) = √π · (2m−1)!!/2^m
            let m = (m2 - 1) / 2;
            let mut acc = T::pi().sqrt();
            for i in 0..m {
                acc = acc * T::from_i64(2 * i + 1) / T::from_i64(2);
            }
            return acc;
        }
    }
    x.gamma_fn()
}

#[derive(Clone, Debug, PartialEq)]
pub enum GaussKind<T> {
    /// Standard Gaussian measure (2π)^{-1/2} e^{-x²/2} on ℝ.
    Hermite,
    /// x^α e^{-x} on [0, ∞).
    Laguerre(T),
    /// t^α (1 − t)^β on [0, 1].
    Jacobi(T, T),
}

#[derive(Clone, Debug)]
pub struct GaussRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussRule<T> {
    pub fn integrate(&self, f: impl Fn(&T) -> T) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (x, w)| acc + w.clone() * f(x))
    }
}

/// Monic three-term recurrence p_{k+1} = (x − a_k) p_k − b_k p_{k−1} and the
/// total mass μ₀.
fn recurrence<T: Real>(kind: &GaussKind<T>, m: usize) -> (Vec<T>, Vec<T>, T) {
    let one = T::one();
    let two = T::from_i64(2);
    match kind {
        GaussKind::Hermite => (
            vec![T::zero(); m],
            (0..m).map(|k| T::from_i64(k as i64)).collect(),
            one,
        ),
        GaussKind::Laguerre(al) => (
            (0..m).map(|k| T::from_i64(2 * k as i64 + 1) + al.clone()).collect(),
            (0..m)
                .map(|k| {
                    let k = T::from_i64(k as i64);
                    k.clone() * (k + al.clone())
                })
                .collect(),
            gamma(&(al.clone() + one)),
        ),
        GaussKind::Jacobi(al, be) => {
            // Jacobi on [−1,1] with weight (1−x)^β(1+x)^α, then x = 2t − 1
            let (a, b) = (be.clone(), al.clone());
            let s = a.clone() + b.clone();
            let four = T::from_i64(4);
            let mut diag = Vec::with_capacity(m);
            let mut off = Vec::with_capacity(m);
            for k in 0..m {
                let kk = T::from_i64(k as i64);
                let d = if k == 0 {
                    (b.clone() - a.clone()) / (s.clone() + two.clone())
                } else {
                    let t = two.clone() * kk.clone() + s.clone();
                    (b.clone() * b.clone() - a.clone() * a.clone()) / (t.clone() * (t + two.clone()))
                };
                diag.push((one.clone() + d) / two.clone());
                let o = match k {
                    0 => T::zero(),
                    1 => {
                        let t = s.clone() + two.clone();
                        four.clone() * (one.clone() + a.clone()) * (one.clone() + b.clone())
                            / (t.clone() * t * (s.clone() + T::from_i64(3)))
                    }
                    _ => {
                        let t = two.clone() * kk.clone() + s.clone();
                        four.clone()
                            * kk.clone()
                            * (kk.clone() + a.clone())
                            * (kk.clone() + b.clone())
                            * (kk.clone() + s.clone())
                            / (t.clone() * t.clone() * (t.clone() + one.clone()) * (t - one.clone()))
                    }
                };
                off.push(o / four.clone());
            }
            let mu0 = gamma(&(al.clone() + one.clone())) * gamma(&(be.clone() + one.clone()))
                / gamma(&(s + two));
            (diag, off, mu0)
        }
    }
}

/// Gauss rule with m nodes: Golub–Welsch in double precision, then Newton
/// refinement of each node and Christoffel weights at working precision.
pub fn gauss_nodes<T: Real>(kind: &GaussKind<T>, m: usize) -> Result<GaussRule<T>> {
    if m == 0 {
        return Err(Error::InvalidParams("Gauss rule needs m ≥ 1".into()));
    }
    let (a, b, mu0) = recurrence(kind, m + 1);
    let jac = DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            a[i].to_f64()
        } else if i + 1 == j {
            b[j].to_f64().sqrt()
        } else if j + 1 == i {
            b[i].to_f64().sqrt()
        } else {
            0.0
        }
    });
    let mut seeds: Vec<f64> = SymmetricEigen::new(jac).eigenvalues.iter().copied().collect();
    seeds.sort_by(f64::total_cmp);

    // p_m, p_m' and Σ p_k²/h_k at x
    let eval = |x: &T| {
        let (mut p0, mut p1) = (T::zero(), T::one());
        let (mut d0, mut d1) = (T::zero(), T::zero());
        let mut h = mu0.clone();
        let mut sum = T::one() / h.clone();
        for k in 0..m {
            let p2 = (x.clone() - a[k].clone()) * p1.clone() - b[k].clone() * p0.clone();
            let d2 = p1.clone() + (x.clone() - a[k].clone()) * d1.clone() - b[k].clone() * d0.clone();
            p0 = p1;
            p1 = p2;
            d0 = d1;
            d1 = d2;
            if k + 1 < m {
                h = h * b[k + 1].clone();
                sum = sum + p1.clone() * p1.clone() / h.clone();
            }
        }
        (p1, d1, sum)
    };
    let bits = T::precision_bits().min(2000) as f64;
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for s in seeds {
        let mut x = T::from_f64(s);
        let mut converged = false;
        for _ in 0..200 {
            let (p, d, _) = eval(&x);
            let step = p / d;
            x = x - step.clone();
            let scale = x.magnitude().max(1.0);
            if step.magnitude() <= scale * (4.0 - bits).exp2() {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NonConvergence { what: "Gauss node refinement", steps: 200, delta: f64::NAN });
        }
        let (_, _, sum) = eval(&x);
        weights.push(T::one() / sum);
        nodes.push(x);
    }
    Ok(GaussRule { nodes, weights })
}

/// Σ over the tensor grid of `rules` of ∏w · f(x).
pub fn tensor<T: Real>(rules: &[&GaussRule<T>], f: impl Fn(&[T]) -> T) -> T {
    let n = rules.len();
    let mut idx = vec![0usize; n];
    let mut x: Vec<T> = rules.iter().map(|r| r.nodes[0].clone()).collect();
    let mut total = T::zero();
    'outer: loop {
        let w = (0..n).fold(T::one(), |acc, i| acc * rules[i].weights[idx[i]].clone());
        total = total + w * f(&x);
        for i in (0..n).rev() {
            idx[i] += 1;
            if idx[i] < rules[i].nodes.len() {
                x[i] = rules[i].nodes[idx[i]].clone();
                continue 'outer;
            }
            idx[i] = 0;
            x[i] = rules[i].nodes[0].clone();
        }
        break;
    }
    total
}

fn vandermonde_blocks<T: Real>(x: &[T], n0: usize, gamma: u32, squared: bool) -> T {
    let n = x.len();
    let mut acc = T::one();
    for i in 0..n {
        for j in i + 1..n {
            let d = if squared {
                x[i].clone() * x[i].clone() - x[j].clone() * x[j].clone()
            } else {
                x[i].clone() - x[j].clone()
            };
            let d2 = d.clone() * d;
            let e = gamma + u32::from(i >= n0);
            acc = acc * d2.powi(e as i64);
        }
    }
    acc
}

fn check_size(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::InvalidParams(format!("classical quadrature supports 1 ≤ n ≤ {max}, got {n}")));
    }
    Ok(())
}

/// Left side by exact-degree tensor quadrature. `extra` adds nodes per axis.
pub fn lhs_with<T: Real>(which: Corollary, p: &ClassicalParams<T>, extra: usize) -> Result<(T, usize)> {
    let g = p.int_gamma()?;
    let (n0, n1, n) = (p.n0, p.n1, p.n());
    let one = T::one();
    // per-variable polynomial degree bound of the non-weight part
    let pair_deg = 2 * (n as u32 - 1) * (g + 1);
    match which {
        Corollary::Eq77 | Corollary::Eq78 => {
            check_size(n, 3)?;
            if which == Corollary::Eq78 && n1 == 0 && n0 > 0 {
                return Err(Error::InvalidParams("eq7.8 needs n1 ≥ 1 (factor t^(n1−1))".into()));
            }
            let extra_deg = if which == Corollary::Eq77 { 2 } else { n1.saturating_sub(1) as u32 };
            let m = ((pair_deg + extra_deg) / 2 + 1) as usize + extra;
            let rule = gauss_nodes(&GaussKind::Jacobi(p.alpha.clone() - one.clone(), p.beta.clone() - one.clone()), m)?;
            let rules = vec![&rule; n];
            let v = tensor(&rules, |t| {
                let mut acc = vandermonde_blocks(t, n0, g, false);
                for (i, ti) in t.iter().enumerate() {
                    if which == Corollary::Eq77 && i >= n0 {
                        acc = acc * ti.clone() * (one.clone() - ti.clone());
                    }
                    if which == Corollary::Eq78 && i < n0 {
                        acc = acc * ti.powi(n1 as i64 - 1);
                    }
                }
                acc
            });
            Ok((v, m.pow(n as u32)))
        }
        Corollary::Eq79 => {
            check_size(n, 3)?;
            let m = (pair_deg / 2 + 1) as usize + extra;
            let rule = gauss_nodes(&GaussKind::Hermite, m)?;
            let v = tensor(&vec![&rule; n], |x| vandermonde_blocks(x, n0, g, false));
            Ok((v, m.pow(n as u32)))
        }
        Corollary::Eq710 | Corollary::Eq711 => {
            check_size(n, 3)?;
            let m = (pair_deg / 2 + 2) as usize + extra;
            let rule = gauss_nodes(&GaussKind::Laguerre(p.alpha.clone() - one), m)?;
            let v = tensor(&vec![&rule; n], |x| {
                let mut acc = vandermonde_blocks(x, n0, g, false);
                if which == Corollary::Eq710 {
                    for xi in &x[n0..] {
                        acc = acc * xi.clone();
                    }
                }
                acc
            });
            Ok((v, m.pow(n as u32)))
        }
        Corollary::Eq712 | Corollary::Eq713 => {
            if n != 2 {
                return Err(Error::InvalidParams("simplex quadrature is implemented for n = 2".into()));
            }
            // x₁ = u, x₂ = (1−u)v, dx = (1−u) du dv
            let deg = pair_deg + 2;
            let m = (deg / 2 + 2) as usize + extra;
            let (al, be) = (p.alpha.clone() - one.clone(), p.beta.clone() - one.clone());
            let ru = gauss_nodes(&GaussKind::Jacobi(al.clone(), al.clone() + be.clone() + one.clone()), m)?;
            let rv = gauss_nodes(&GaussKind::Jacobi(al, be), m)?;
            let v = tensor(&[&ru, &rv], |uv| {
                let x = [uv[0].clone(), (one.clone() - uv[0].clone()) * uv[1].clone()];
                let mut acc = vandermonde_blocks(&x, n0, g, false);
                if which == Corollary::Eq712 {
                    for xi in &x[n0..] {
                        acc = acc * xi.clone();
                    }
                }
                acc
            });
            Ok((v, m * m))
        }
        Corollary::Eq714 | Corollary::Eq715 => {
            check_size(n, 3)?;
            let c = p.int_c()?;
            let m = ((2 * pair_deg + 2 * c + 2) / 2 + 1) as usize + extra;
            let rule = gauss_nodes(&GaussKind::Hermite, m)?;
            let v = tensor(&vec![&rule; n], |x: &[T]| {
                let mut acc = vandermonde_blocks(x, n0, g, true);
                for (i, xi) in x.iter().enumerate() {
                    let sq = xi.clone() * xi.clone();
                    acc = acc * sq.powi(c as i64);
                    if which == Corollary::Eq714 && i >= n0 {
                        acc = acc * sq;
                    }
                }
                acc
            });
            Ok((v, m.pow(n as u32)))
        }
    }
}

pub fn lhs<T: Real>(which: Corollary, p: &ClassicalParams<T>) -> Result<T> {
    lhs_with(which, p, 0).map(|(v, _)| v)
}

/// Right side Γ product as displayed.
pub fn rhs<T: Real>(which: Corollary, p: &ClassicalParams<T>) -> T {
    let g = |x: T| gamma(&x);
    let i64t = |v: i64| T::from_i64(v);
    let (n0, n1, n) = (p.n0 as i64, p.n1 as i64, p.n() as i64);
    let (al, be, ga, c) = (p.alpha.clone(), p.beta.clone(), p.gamma.clone(), p.c.clone());
    let one = T::one();
    let two = i64t(2);
    // ∏_{j=1}^{n₁} j(1+γ)Γ(j+(n₀+j)γ)/Γ(2+γ)
    let common = |acc: T| {
        (1..=n1).fold(acc, |acc, j| {
            acc * i64t(j) * (one.clone() + ga.clone()) * g(i64t(j) + i64t(n0 + j) * ga.clone())
                / g(two.clone() + ga.clone())
        })
    };
    match which {
        Corollary::Eq77 => {
            let mut acc = T::one();
            for i in 1..=n0 {
                acc = acc * g(one.clone() + i64t(i) * ga.clone()) * g(al.clone() + i64t(i - 1) * ga.clone())
                    * g(be.clone() + i64t(i - 1) * ga.clone())
                    / (g(one.clone() + ga.clone()) * g(al.clone() + be.clone() + i64t(n0 + i - 2) * ga.clone()));
            }
            acc = common(acc);
            for j in 1..=n1 {
                let s = i64t(j) + i64t(n0 + j - 1) * ga.clone();
                acc = acc * g(al.clone() + s.clone()) * g(be.clone() + s)
                    * g(al.clone() + be.clone() + i64t(j) + i64t(n0 + j - 2) * ga.clone());
            }
            for j in 1..=2 * n1 {
                acc = acc / g(al.clone() + be.clone() + i64t(j) + i64t(2 * n0 + j - 2) * ga.clone());
            }
            acc
        }
        Corollary::Eq78 => {
            let mut acc = T::one();
            for i in 1..=n0 {
                acc = acc
                    * g(one.clone() + i64t(i) * ga.clone())
                    * g(al.clone() + i64t(n1 + i - 1) * ga.clone() + i64t(n1 - 1))
                    * g(be.clone() + i64t(i - 1) * ga.clone())
                    / (g(one.clone() + ga.clone())
                        * g(al.clone() + be.clone() + i64t(n + i - 2) * ga.clone() + i64t(n1 - 1)));
            }
            acc = common(acc);
            for j in 1..=n1 {
                acc = acc * g(al.clone() + i64t(j - 1) + i64t(j - 1) * ga.clone())
                    * g(be.clone() + i64t(j - 1) + i64t(n0 + j - 1) * ga.clone())
                    / g(al.clone() + be.clone() + i64t(2 * n1 - j - 1) + i64t(2 * n - j - 1) * ga.clone());
            }
            acc
        }
        Corollary::Eq79 => {
            let acc = (1..=n0).fold(T::one(), |acc, i| {
                acc * g(one.clone() + i64t(i) * ga.clone()) / g(one.clone() + ga.clone())
            });
            common(acc)
        }
        Corollary::Eq710 | Corollary::Eq711 => {
            let shift = if which == Corollary::Eq710 { 0 } else { -1 };
            let mut acc = (1..=n0).fold(T::one(), |acc, i| {
                acc * g(one.clone() + i64t(i) * ga.clone()) * g(al.clone() + i64t(i - 1) * ga.clone())
                    / g(one.clone() + ga.clone())
            });
            acc = common(acc);
            for j in 1..=n1 {
                acc = acc * g(al.clone() + i64t(j + shift) + i64t(n0 + j - 1) * ga.clone());
            }
            acc
        }
        Corollary::Eq712 | Corollary::Eq713 => {
            let (base, extra) = if which == Corollary::Eq712 {
                (Corollary::Eq710, n1 * n1)
            } else {
                (Corollary::Eq711, n1 * (n1 - 1))
            };
            let arg = be.clone() + i64t(n) * al + i64t(extra) + i64t(n * (n - 1)) * ga;
            g(be) / g(arg) * rhs(base, p)
        }
        Corollary::Eq714 | Corollary::Eq715 => {
            let (pow, shift) = if which == Corollary::Eq714 { (-n1, 1) } else { (0, 0) };
            let mut acc = two.powi(pow) / two.powf(&(c.clone() * i64t(n)));
            for i in 1..=n0 {
                acc = acc * g(one.clone() + i64t(i) * ga.clone())
                    * g(one.clone() + two.clone() * c.clone() + i64t(2 * (i - 1)) * ga.clone())
                    / (g(one.clone() + ga.clone()) * g(one.clone() + c.clone() + i64t(i - 1) * ga.clone()));
            }
            for j in 1..=n1 {
                let s = i64t(n0 + j - 1) * ga.clone();
                acc = acc * i64t(j) * (one.clone() + ga.clone()) * g(i64t(j) + i64t(n0 + j) * ga.clone())
                    * g(one.clone() + two.clone() * c.clone() + i64t(2 * (j - 1 + shift)) + two.clone() * s.clone())
                    / (g(two.clone() + ga.clone()) * g(c.clone() + i64t(j + shift) + s));
            }
            acc
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassicalReport<T> {
    pub which: Corollary,
    pub lhs: T,
    pub rhs: T,
    pub rel_error: f64,
    pub nodes: usize,
}

pub fn verify<T: Real>(which: Corollary, p: &ClassicalParams<T>) -> Result<ClassicalReport<T>> {
    let (l, nodes) = lhs_with(which, p, 0)?;
    let r = rhs(which, p);
    let rel_error = ((l.clone() - r.clone()) / r.clone()).magnitude();
    Ok(ClassicalReport { which, lhs: l, rhs: r, rel_error, nodes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReflectionFamily {
    A,
    B,
    D,
}

impl ReflectionFamily {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "A" | "a" => Some(Self::A),
            "B" | "b" => Some(Self::B),
            "D" | "d" => Some(Self::D),
            _ => None,
        }
    }

    /// Degrees of the basic invariants for rank n (A_{n−1}, B_n, D_n).
    pub fn degrees(self, n: usize) -> Vec<u32> {
        let n32 = n as u32;
        match self {
            Self::A => (1..=n32).collect(),
            Self::B => (1..=n32).map(|i| 2 * i).collect(),
            Self::D => (1..=n32).map(|i| if i < n32 { 2 * i } else { n32 }).collect(),
        }
    }

    /// Normalized roots (Σ a² = 2), one per reflecting hyperplane, on
    /// coordinates `from..n`.
    fn roots(self, n: usize, from: usize) -> Vec<Vec<f64>> {
        let mut out = Vec::new();
        for i in from..n {
            if self == Self::B {
                let mut v = vec![0.0; n];
                v[i] = std::f64::consts::SQRT_2;
                out.push(v);
            }
            for j in i + 1..n {
                let mut v = vec![0.0; n];
                v[i] = 1.0;
                v[j] = -1.0;
                out.push(v.clone());
                if self != Self::A {
                    v[j] = 1.0;
                    out.push(v);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReflectionPair {
    pub family: ReflectionFamily,
    pub n0: usize,
    pub n1: usize,
}

impl ReflectionPair {
    pub fn new(family: ReflectionFamily, n0: usize, n1: usize) -> Result<Self> {
        let min_n1 = if family == ReflectionFamily::D { 2 } else { 1 };
        if n1 < min_n1 {
            return Err(Error::InvalidParams(format!("{family:?} parabolic needs n1 ≥ {min_n1}")));
        }
        Ok(Self { family, n0, n1 })
    }

    pub fn n(&self) -> usize {
        self.n0 + self.n1
    }
}

/// The degree product of the reflection-group form.
pub fn reflection_rhs<T: Real>(rp: &ReflectionPair, gamma_: &T) -> T {
    let d = rp.family.degrees(rp.n());
    let d1 = rp.family.degrees(rp.n1);
    let one = T::one();
    let t = |v: u32| T::from_i64(v as i64);
    let mut acc = T::one();
    for &di in &d[..rp.n0] {
        acc = acc * gamma(&(one.clone() + t(di) * gamma_.clone())) / gamma(&(one.clone() + gamma_.clone()));
    }
    for j in 1..=rp.n1 {
        let jj = t(j as u32);
        acc = acc * jj.clone() * (one.clone() + gamma_.clone())
            / (jj + t((rp.n0 + j) as u32) * gamma_.clone())
            * gamma(&(one.clone() + t(d1[j - 1]) + t(d[rp.n0 + j - 1]) * gamma_.clone()))
            / gamma(&(T::from_i64(2) + gamma_.clone()));
    }
    acc
}

/// The corollary right side the reflection form reduces to, with the
/// normalization of P: A ↔ `Eq79`, B ↔ 2^{n₁+nγ}·(`Eq714` at c = γ), D ↔ `Eq715` at c = 0.
pub fn reflection_corollary_rhs<T: Real>(rp: &ReflectionPair, gamma_: &T) -> T {
    let p = |c: T| ClassicalParams::new(rp.n0, rp.n1, T::one(), T::one(), gamma_.clone(), c);
    match rp.family {
        ReflectionFamily::A => rhs(Corollary::Eq79, &p(T::zero())),
        ReflectionFamily::B => {
            let e = T::from_i64(rp.n1 as i64) + T::from_i64(rp.n() as i64) * gamma_.clone();
            T::from_i64(2).powf(&e) * rhs(Corollary::Eq714, &p(gamma_.clone()))
        }
        ReflectionFamily::D => rhs(Corollary::Eq715, &p(T::zero())),
    }
}

/// ∫ P₁² |P|^{2γ} dμ by Gauss–Hermite, with P built from normalized roots.
pub fn reflection_lhs<T: Real>(rp: &ReflectionPair, gamma_: u32) -> Result<T> {
    let n = rp.n();
    check_size(n, 3)?;
    let to_t = |v: f64| {
        if v == std::f64::consts::SQRT_2 {
            T::from_i64(2).sqrt()
        } else {
            T::from_f64(v)
        }
    };
    let all: Vec<Vec<T>> = rp.family.roots(n, 0).into_iter().map(|r| r.into_iter().map(to_t).collect()).collect();
    let sub: Vec<Vec<T>> = rp.family.roots(n, rp.n0).into_iter().map(|r| r.into_iter().map(to_t).collect()).collect();
    let deg = 2 * (all.len() as u32 * gamma_ + sub.len() as u32);
    let m = (deg / 2 + 1) as usize;
    let rule = gauss_nodes(&GaussKind::Hermite, m)?;
    let lin = |r: &[T], x: &[T]| r.iter().zip(x).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
    Ok(tensor(&vec![&rule; n], |x| {
        let p = all.iter().fold(T::one(), |acc, r| acc * lin(r, x));
        let p1 = sub.iter().fold(T::one(), |acc, r| acc * lin(r, x));
        p1.clone() * p1 * (p.clone() * p).powi(gamma_ as i64)
    }))
}

/// |RHS_q / RHS_classical − 1| at q = 1 − 10^{−d} for each d. Both two-block
/// families limit to `Eq77`; `Thm74` with (x, y) = (α, β) limits to `Eq78`.
pub fn q_to_one_gaps<T: Real>(
    family: Family,
    p: &ClassicalParams<T>,
    digits: &[i32],
    ctx: &PrecisionCtx,
) -> Result<Vec<f64>> {
    let k = p.int_gamma()?;
    let target = match family {
        Family::Thm74 => rhs(Corollary::Eq78, p),
        Family::Thm73I | Family::Thm73II => rhs(Corollary::Eq77, p),
        Family::HabsiegerKadell => {
            return Err(Error::InvalidParams("no block corollary for the plain q-Selberg family".into()))
        }
    };
    let mut out = Vec::new();
    for &d in digits {
        let q = T::one() - T::from_i64(10).powi(-(d as i64));
        let sp = SelbergParams::new(p.n0, p.n1, p.alpha.clone(), p.beta.clone(), k, q);
        let v = qselberg::rhs(family, &sp, ctx)?;
        out.push((v / target.clone() - T::one()).magnitude());
    }
    Ok(out)
}
