//! Jackson q-integrals of Selberg type: the Habsieger–Kadell formula, the
//! two partially antisymmetrized variants and the Baker–Forrester
//! reformulation, each with its q-gamma product evaluation.

use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalars::{qgamma, qgamma_int_exact, qnumber_int, Analytic, PrecisionCtx, Scalar};

/// The four integrand families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Family {
    /// Habsieger–Kadell q-Selberg integral (all n variables alike).
    HabsiegerKadell,
    /// Extra factor ∏ t_i(1 − q^β t_i) ∏ (t_i − q^{−k}t_j)(t_i − q^{k+1}t_j).
    Thm73I,
    /// Extra factor ∏ t_i(1 − t_i) ∏ (t_i − q^{−k−1}t_j)(t_i − q^k t_j), shifted difference product.
    Thm73II,
    /// Baker–Forrester form with ∏_{i≤n₀} t_i^{n₁−1}.
    Thm74,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::HabsiegerKadell => "hk",
            Family::Thm73I => "thm73-I",
            Family::Thm73II => "thm73-II",
            Family::Thm74 => "thm74",
        }
    }
}

/// Parameters of a Selberg-type q-integral. For [`Family::HabsiegerKadell`]
/// the block split is ignored and n = n₀ + n₁. For [`Family::Thm74`], α
/// and β play the roles of x and y.
#[derive(Clone, Debug, PartialEq)]
pub struct SelbergParams<T> {
    pub n0: usize,
    pub n1: usize,
    pub alpha: T,
    pub beta: T,
    pub k: u32,
    pub q: T,
}

impl<T: Scalar> SelbergParams<T> {
    pub fn new(n0: usize, n1: usize, alpha: T, beta: T, k: u32, q: T) -> Self {
        SelbergParams {
            n0,
            n1,
            alpha,
            beta,
            k,
            q,
        }
    }

    pub fn n(&self) -> usize {
        self.n0 + self.n1
    }

    pub fn validate(&self, family: Family) -> Result<()> {
        let qa = self.q.magnitude();
        if !(qa > 0.0 && qa < 1.0) {
            return Err(Error::Divergence { q: qa });
        }
        if self.n() == 0 {
            return Err(Error::InvalidParams("n must be positive".into()));
        }
        if family != Family::HabsiegerKadell && self.n1 < 2 {
            return Err(Error::InvalidParams("the block part needs n1 >= 2".into()));
        }
        Ok(())
    }
}

/// Shell truncation of a Jackson sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationPlan {
    /// Largest total index Σj summed.
    pub max_shell: usize,
    /// Stop once `quiet_shells` consecutive shells are each below
    /// `target_rel / 10` of the running total.
    pub target_rel: f64,
    pub quiet_shells: usize,
    pub adaptive: bool,
}

impl TruncationPlan {
    pub fn new(target_rel: f64) -> Self {
        TruncationPlan {
            max_shell: 400,
            target_rel,
            quiet_shells: 3,
            adaptive: true,
        }
    }

    /// Plan for the verification tolerance 10^{−p/8} at precision p, with
    /// two digits of headroom.
    pub fn for_scalar<T: Scalar>() -> Self {
        let p = T::precision_bits().min(1000) as f64;
        Self::new(10f64.powf(-(p / 8.0 + 2.0)))
    }

    /// Sum exactly the shells 0..=J.
    pub fn fixed(j: usize) -> Self {
        TruncationPlan {
            max_shell: j,
            target_rel: 0.0,
            quiet_shells: 1,
            adaptive: false,
        }
    }
}

/// A truncated Jackson sum together with its truncation record.
#[derive(Clone, Debug, PartialEq)]
pub struct JacksonValue<T> {
    pub value: T,
    /// Last shell summed (the achieved J).
    pub shells: usize,
    /// Relative size of the last shell.
    pub last_delta: f64,
    pub terms: u64,
}

/// Calls `f` on every j ∈ ℤⁿ_{≥0} with Σj = s, in lexicographic order.
pub fn for_each_composition(n: usize, s: usize, mut f: impl FnMut(&[usize])) {
    fn rec(j: &mut Vec<usize>, n: usize, left: usize, f: &mut dyn FnMut(&[usize])) {
        if j.len() + 1 == n {
            j.push(left);
            f(j);
            j.pop();
            return;
        }
        for v in 0..=left {
            j.push(v);
            rec(j, n, left - v, f);
            j.pop();
        }
    }
    if n == 0 {
        if s == 0 {
            f(&[]);
        }
        return;
    }
    rec(&mut Vec::with_capacity(n), n, s, &mut f);
}

fn sum_shells<T: Scalar>(
    n: usize,
    plan: &TruncationPlan,
    mut term: impl FnMut(&[usize]) -> T,
) -> Result<(T, usize, f64, u64)> {
    let mut total = T::zero();
    let mut quiet = 0usize;
    let mut terms = 0u64;
    let mut last = f64::INFINITY;
    for s in 0..=plan.max_shell {
        let mut shell = T::zero();
        for_each_composition(n, s, |j| {
            shell = shell.clone() + term(j);
            terms += 1;
        });
        total = total + shell.clone();
        let tm = total.magnitude();
        last = if tm > 0.0 { shell.magnitude() / tm } else { f64::INFINITY };
        if plan.adaptive && !total.is_zero() && s >= 2 * n {
            if last < plan.target_rel / 10.0 {
                quiet += 1;
                if quiet >= plan.quiet_shells {
                    return Ok((total, s, last, terms));
                }
            } else {
                quiet = 0;
            }
        }
    }
    if plan.adaptive {
        return Err(Error::NonConvergence {
            what: "jackson sum",
            steps: plan.max_shell,
            delta: last,
        });
    }
    Ok((total, plan.max_shell, last, terms))
}

/// (1−q)ⁿ Σ_j f(q^{j₁},…,q^{jₙ}) q^{Σj}, summed shell by shell in Σj.
pub fn jackson_sum<T: Scalar>(
    f: impl Fn(&[T]) -> T,
    n: usize,
    q: &T,
    plan: &TruncationPlan,
) -> Result<JacksonValue<T>> {
    let qa = q.magnitude();
    if !(qa > 0.0 && qa < 1.0) {
        return Err(Error::Divergence { q: qa });
    }
    let mut qpow = vec![T::one()];
    for i in 0..plan.max_shell {
        let v = qpow[i].clone() * q.clone();
        qpow.push(v);
    }
    let mut pt = vec![T::zero(); n];
    let (sum, shells, last, terms) = sum_shells(n, plan, |j| {
        let mut w = T::one();
        for (i, &ji) in j.iter().enumerate() {
            pt[i] = qpow[ji].clone();
            w = w * qpow[ji].clone();
        }
        f(&pt) * w
    })?;
    let scale = (T::one() - q.clone()).powi(n as i64);
    Ok(JacksonValue {
        value: sum * scale,
        shells,
        last_delta: last,
        terms,
    })
}

/// q^e for integer e with a cache of nonnegative powers.
struct PowTable<T> {
    pos: Vec<T>,
    neg: Vec<T>,
}

impl<T: Scalar> PowTable<T> {
    fn new(q: &T, max_pos: usize, max_neg: usize) -> Self {
        let mut pos = vec![T::one()];
        for i in 0..max_pos {
            let v = pos[i].clone() * q.clone();
            pos.push(v);
        }
        let qi = q.recip();
        let mut neg = vec![T::one()];
        for i in 0..max_neg {
            let v = neg[i].clone() * qi.clone();
            neg.push(v);
        }
        PowTable { pos, neg }
    }

    fn get(&self, e: i64) -> T {
        if e >= 0 {
            self.pos[e as usize].clone()
        } else {
            self.neg[(-e) as usize].clone()
        }
    }

    /// 1 − q^e, exactly zero at e = 0.
    fn one_minus(&self, e: i64) -> T {
        if e == 0 {
            T::zero()
        } else {
            T::one() - self.get(e)
        }
    }
}

/// Integer data describing one integrand family.
#[derive(Clone, Copy, Debug)]
struct Shape {
    n: usize,
    n0: usize,
    /// Pair product t_i^{2k}(q^{shift} t_j/t_i)_{2k}.
    pair_shift: i64,
    /// ∏_{n₀<i<j} (t_i − q^{e₁}t_j)(t_i − q^{e₂}t_j).
    block: Option<(i64, i64)>,
    single: Single,
    /// t_i^{p} for i ≤ n₀.
    n0_power: i64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Single {
    None,
    /// t(1 − q^β t) on the block variables.
    OneMinusQBeta,
    /// t(1 − t) on the block variables.
    OneMinusT,
}

fn shape(family: Family, n0: usize, n1: usize, k: u32) -> Shape {
    let k = k as i64;
    let n = n0 + n1;
    match family {
        Family::HabsiegerKadell => Shape {
            n,
            n0: n,
            pair_shift: 1 - k,
            block: None,
            single: Single::None,
            n0_power: 0,
        },
        Family::Thm73I => Shape {
            n,
            n0,
            pair_shift: 1 - k,
            block: Some((-k, k + 1)),
            single: Single::OneMinusQBeta,
            n0_power: 0,
        },
        Family::Thm73II => Shape {
            n,
            n0,
            pair_shift: -k,
            block: Some((-k - 1, k)),
            single: Single::OneMinusT,
            n0_power: 0,
        },
        Family::Thm74 => Shape {
            n,
            n0,
            pair_shift: 1 - k,
            block: Some((-k, k + 1)),
            single: Single::None,
            n0_power: n1 as i64 - 1,
        },
    }
}

/// Left-hand side q-integral by shell summation with precomputed tables.
pub fn lhs<T: Analytic>(
    family: Family,
    p: &SelbergParams<T>,
    plan: &TruncationPlan,
    ctx: &PrecisionCtx,
) -> Result<JacksonValue<T>> {
    p.validate(family)?;
    let sh = shape(family, p.n0, p.n1, p.k);
    let n = sh.n;
    let k = p.k as i64;
    let s_max = plan.max_shell;
    let q = &p.q;
    let qa = q.powf(&p.alpha);
    let qb = q.powf(&p.beta);
    // r(j) = q^{αj}(q^{j+1})_∞/(q^{β+j})_∞
    let mut r = Vec::with_capacity(s_max + 1);
    r.push(crate::scalars::qpoch_inf(q, q, ctx)? / crate::scalars::qpoch_inf(&qb, q, ctx)?);
    let npos = s_max + 2 * k as usize + 4;
    let pow = PowTable::new(q, npos, s_max + 2 * k as usize + 4);
    for j in 0..s_max {
        let next = r[j].clone() * qa.clone() * (T::one() - qb.clone() * pow.get(j as i64))
            / pow.one_minus(j as i64 + 1);
        r.push(next);
    }
    // pair(d) = (q^{shift+d})_{2k}, d = j_b − j_a
    let off = s_max as i64;
    let pair: Vec<T> = (-off..=off)
        .map(|d| {
            (0..2 * k).fold(T::one(), |acc, m| acc * pow.one_minus(sh.pair_shift + d + m))
        })
        .collect();
    let block: Option<Vec<T>> = sh.block.map(|(e1, e2)| {
        (-off..=off)
            .map(|d| pow.one_minus(e1 + d) * pow.one_minus(e2 + d))
            .collect()
    });
    let single: Option<Vec<T>> = match sh.single {
        Single::None => None,
        Single::OneMinusQBeta => Some(
            (0..=s_max)
                .map(|a| T::one() - qb.clone() * pow.get(a as i64))
                .collect(),
        ),
        Single::OneMinusT => Some((0..=s_max).map(|a| pow.one_minus(a as i64)).collect()),
    };
    let n1 = n - sh.n0;
    let max_e = s_max as i64
        * (2 * k * (n * (n - 1) / 2) as i64
            + 2 * (n1 * n1.saturating_sub(1) / 2) as i64
            + n as i64
            + sh.n0_power.max(0) * sh.n0 as i64);
    let big = PowTable::new(q, max_e as usize + 1, 0);
    let (sum, shells, last, terms) = sum_shells(n, plan, |j| {
        let mut e: i64 = 0;
        let mut acc = T::one();
        for &ji in j {
            acc = acc * r[ji].clone();
        }
        for a in 0..n {
            for b in a + 1..n {
                let d = j[b] as i64 - j[a] as i64;
                let v = &pair[(d + off) as usize];
                if v.is_zero() {
                    return T::zero();
                }
                acc = acc * v.clone();
                e += 2 * k * j[a] as i64;
                if a >= sh.n0 {
                    if let Some(bl) = &block {
                        let v = &bl[(d + off) as usize];
                        if v.is_zero() {
                            return T::zero();
                        }
                        acc = acc * v.clone();
                        e += 2 * j[a] as i64;
                    }
                }
            }
            if a >= sh.n0 {
                if let Some(sg) = &single {
                    acc = acc * sg[j[a]].clone();
                    e += j[a] as i64;
                }
            } else {
                e += sh.n0_power * j[a] as i64;
            }
        }
        acc * big.get(e)
    })?;
    let scale = (T::one() - q.clone()).powi(n as i64);
    Ok(JacksonValue {
        value: sum * scale,
        shells,
        last_delta: last,
        terms,
    })
}

/// Exact left-hand side for integer α ≥ 1, β ≥ 1 and rational q: the
/// integrand is a polynomial and ∫ t^m d_qt = (1 − q)/(1 − q^{m+1}).
pub fn lhs_exact(family: Family, p: &SelbergParams<BigRational>) -> Result<BigRational> {
    p.validate(family)?;
    let alpha = p
        .alpha
        .as_integer()
        .filter(|&a| a >= 1)
        .ok_or_else(|| Error::InvalidParams("exact mode needs an integer alpha >= 1".into()))?;
    let beta = p
        .beta
        .as_integer()
        .filter(|&b| b >= 1)
        .ok_or_else(|| Error::InvalidParams("exact mode needs an integer beta >= 1".into()))?;
    let sh = shape(family, p.n0, p.n1, p.k);
    let n = sh.n;
    let k = p.k as i64;
    let q = &p.q;
    type P = LaurentPoly<BigRational>;
    let one = || P::one(n);
    let x = |i: usize| P::var(n, i);
    let mono = |e: Vec<i64>, c: BigRational| P::monomial(e, c);
    let mut f = one();
    for i in 0..n {
        // t^{α−1}(qt)_{β−1}
        let mut e = vec![0; n];
        e[i] = alpha - 1;
        f = f.mul(&mono(e, BigRational::one()));
        for m in 1..beta {
            f = f.mul(&one().sub(&x(i).scale(&q.powi(m))));
        }
        if i >= sh.n0 {
            match sh.single {
                Single::None => {}
                Single::OneMinusQBeta => {
                    let qb = q.powi(beta);
                    f = f.mul(&x(i)).mul(&one().sub(&x(i).scale(&qb)));
                }
                Single::OneMinusT => f = f.mul(&x(i)).mul(&one().sub(&x(i))),
            }
        } else if sh.n0_power > 0 {
            let mut e = vec![0; n];
            e[i] = sh.n0_power;
            f = f.mul(&mono(e, BigRational::one()));
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            // t_a^{2k}(q^{s} t_b/t_a)_{2k} = ∏ (t_a − q^{s+m} t_b)
            for m in 0..2 * k {
                f = f.mul(&x(a).sub(&x(b).scale(&q.powi(sh.pair_shift + m))));
            }
            if a >= sh.n0 {
                if let Some((e1, e2)) = sh.block {
                    f = f.mul(&x(a).sub(&x(b).scale(&q.powi(e1))));
                    f = f.mul(&x(a).sub(&x(b).scale(&q.powi(e2))));
                }
            }
        }
    }
    let one_q = BigRational::one() - q;
    let mut acc = BigRational::zero();
    for (e, c) in f.terms() {
        let mut v = c.clone();
        for &m in e {
            if m < 0 {
                return Err(Error::InvalidParams("integrand is not a polynomial".into()));
            }
            v = v * &one_q / (BigRational::one() - q.powi(m + 1));
        }
        acc += v;
    }
    Ok(acc)
}

fn binom(n: i64, r: i64) -> i64 {
    if r < 0 || r > n {
        return 0;
    }
    (0..r).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// The q-power exponent as c₀ + c₁·α with c₀, c₁ integers.
pub fn exponent(family: Family, n0: usize, n1: usize, k: u32) -> (i64, i64) {
    let (n0, n1, k) = (n0 as i64, n1 as i64, k as i64);
    let n = n0 + n1;
    let r = |a: i64, b: i64| Ratio::new(a, b);
    match family {
        Family::HabsiegerKadell => (2 * k * k * binom(n, 3), k * binom(n, 2)),
        Family::Thm73I => {
            let c0 = r(n1 * (n1 - 1) * (2 * n1 - 1), 6)
                + (r(n0 * n1 * n1, 1) + r(n1 * (n1 - 1) * (4 * n1 - 5), 6)) * k
                + r(2 * binom(n, 3) * k * k, 1);
            (int_of(c0), binom(n1, 2) + binom(n, 2) * k)
        }
        Family::Thm73II => {
            let c0 = r(n1 * (n1 * n1 + 2), 3)
                + (r(n1 * (n1 + 1) * (3 * n - n1 - 2), 3) - binom(n1, 2) - binom(n, 2)) * k
                + r(2 * binom(n, 3) * k * k, 1);
            (int_of(c0), n1 * (n1 + 1) / 2 + binom(n, 2) * k)
        }
        Family::Thm74 => {
            let lin = r(n1 - 1, 2) * (r(n * (n - 1), 1) + r(n1 * (n1 - 5), 3));
            let quad = r(1, 2)
                * (r(n * (n - 1) * (2 * n - 3), 2)
                    - n0 * n1 * (n - 1)
                    - r(n0 * (n0 - 1) * (2 * n0 - 1) + n1 * (n1 - 1) * (2 * n1 - 1), 6));
            let c0 = r(2 * binom(n1, 3), 1) + lin * k + quad * k * k;
            (int_of(c0), binom(n1, 2) + binom(n, 2) * k)
        }
    }
}

fn int_of(r: Ratio<i64>) -> i64 {
    assert!(r.is_integer(), "q-exponent {r} is not an integer");
    r.to_integer()
}

/// Right-hand side product, generic over the q-gamma evaluator.
fn rhs_with<T: Scalar>(
    family: Family,
    p: &SelbergParams<T>,
    qpow_alpha: &T,
    gq: &dyn Fn(&T) -> Result<T>,
) -> Result<T> {
    let (n0, n1) = (p.n0 as i64, p.n1 as i64);
    let n = n0 + n1;
    let k = T::from_i64(p.k as i64);
    let kk = p.k as i64;
    let q = &p.q;
    let a = &p.alpha;
    let b = &p.beta;
    let ab = a.clone() + b.clone();
    let int = |m: i64| T::from_i64(m);
    let (c0, c1) = exponent(family, p.n0, p.n1, p.k);
    let mut acc = q.powi(c0) * qpow_alpha.powi(c1);
    let g = |x: T| gq(&x);
    let g1k = g(int(1 + kk))?;
    let g2k = g(int(2 + kk))?;
    match family {
        Family::HabsiegerKadell => {
            for i in 1..=n {
                acc = acc * g(int(1 + i * kk))? * g(a.clone() + int(i - 1) * k.clone())?
                    * g(b.clone() + int(i - 1) * k.clone())?
                    / (g1k.clone() * g(ab.clone() + int(n + i - 2) * k.clone())?);
            }
        }
        Family::Thm73I | Family::Thm73II => {
            for i in 1..=n0 {
                acc = acc * g(int(1 + i * kk))? * g(a.clone() + int(i - 1) * k.clone())?
                    * g(b.clone() + int(i - 1) * k.clone())?
                    / (g1k.clone() * g(ab.clone() + int(n0 + i - 2) * k.clone())?);
            }
            for j in 1..=n1 {
                acc = acc * qnumber_int((1 + kk) * j, q) * g(int(j + (n0 + j) * kk))? / g2k.clone();
                acc = acc
                    * g(a.clone() + int(j + (n0 + j - 1) * kk))?
                    * g(b.clone() + int(j + (n0 + j - 1) * kk))?
                    * g(ab.clone() + int(j + (n0 + j - 2) * kk))?;
            }
            for j in 1..=2 * n1 {
                acc = acc / g(ab.clone() + int(j + (2 * n0 + j - 2) * kk))?;
            }
        }
        Family::Thm74 => {
            for i in 1..=n0 {
                acc = acc
                    * g(int(1 + i * kk))?
                    * g(a.clone() + int((n1 + i - 1) * kk + n1 - 1))?
                    * g(b.clone() + int((i - 1) * kk))?
                    / (g1k.clone() * g(ab.clone() + int((n + i - 2) * kk + n1 - 1))?);
            }
            for j in 1..=n1 {
                acc = acc * qnumber_int((1 + kk) * j, q) * g(int(j + (n0 + j) * kk))? / g2k.clone();
                acc = acc
                    * g(a.clone() + int(j - 1 + (j - 1) * kk))?
                    * g(b.clone() + int(j - 1 + (n0 + j - 1) * kk))?
                    / g(ab.clone() + int(2 * n1 - j - 1 + (2 * n - j - 1) * kk))?;
            }
        }
    }
    Ok(acc)
}

/// Right-hand side q-gamma product.
pub fn rhs<T: Analytic>(family: Family, p: &SelbergParams<T>, ctx: &PrecisionCtx) -> Result<T> {
    p.validate(family)?;
    let qa = p.q.powf(&p.alpha);
    rhs_with(family, p, &qa, &|x| qgamma(x, &p.q, ctx))
}

/// Right-hand side as an exact rational (integer α, β and rational q).
pub fn rhs_exact(family: Family, p: &SelbergParams<BigRational>) -> Result<BigRational> {
    p.validate(family)?;
    let alpha = p
        .alpha
        .as_integer()
        .ok_or_else(|| Error::InvalidParams("exact mode needs an integer alpha".into()))?;
    let qa = p.q.powi(alpha);
    rhs_with(family, p, &qa, &|x| {
        let m = x
            .as_integer()
            .filter(|&m| m >= 1)
            .ok_or_else(|| Error::Pole {
                what: "q-gamma",
                at: x.to_text(),
            })?;
        Ok(qgamma_int_exact(m as u32, &p.q))
    })
}

/// Outcome of a two-sided evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison<T> {
    pub lhs: JacksonValue<T>,
    pub rhs: T,
    /// |LHS/RHS − 1|.
    pub rel_error: f64,
}

pub fn compare<T: Analytic>(
    family: Family,
    p: &SelbergParams<T>,
    plan: &TruncationPlan,
    ctx: &PrecisionCtx,
) -> Result<Comparison<T>> {
    let l = lhs(family, p, plan, ctx)?;
    let r = rhs(family, p, ctx)?;
    let rel_error = (l.value.clone() / r.clone() - T::one()).magnitude();
    Ok(Comparison {
        lhs: l,
        rhs: r,
        rel_error,
    })
}

/// Both sides of the antisymmetric exchange identity
/// ∫∏(t_i − Q₁t_j) f = ([n₁]_{Q₁}!/[n₁]_{Q₂}!) ∫∏(t_i − Q₂t_j) f.
#[derive(Clone, Debug, PartialEq)]
pub struct ExchangeReport<T> {
    pub lhs: T,
    pub rhs: T,
    pub rel_error: f64,
    pub shells: usize,
}

pub fn antisym_exchange_check<T: Scalar>(
    q1: &T,
    q2: &T,
    f: impl Fn(&[T]) -> T,
    n0: usize,
    n1: usize,
    q: &T,
    plan: &TruncationPlan,
) -> Result<ExchangeReport<T>> {
    let n = n0 + n1;
    if n1 < 2 {
        return Err(Error::InvalidParams("n1 must be at least 2".into()));
    }
    check_antisymmetry(&f, n0, n1, q)?;
    let block = |t: &[T], qq: &T| {
        let mut acc = T::one();
        for i in n0..n {
            for j in i + 1..n {
                acc = acc * (t[i].clone() - qq.clone() * t[j].clone());
            }
        }
        acc
    };
    let l = jackson_sum(|t| block(t, q1) * f(t), n, q, plan)?;
    let r = jackson_sum(|t| block(t, q2) * f(t), n, q, plan)?;
    let fact = |qq: &T| crate::scalars::qfactorial(n1 as u32, qq);
    let rhs = fact(q1) / fact(q2) * r.value;
    let rel_error = ((l.value.clone() - rhs.clone()) / rhs.clone()).magnitude();
    Ok(ExchangeReport {
        lhs: l.value,
        rhs,
        rel_error,
        shells: l.shells.max(r.shells),
    })
}

/// Samples adjacent swaps in the block variables at a few points of the
/// q-lattice.
fn check_antisymmetry<T: Scalar>(f: &impl Fn(&[T]) -> T, n0: usize, n1: usize, q: &T) -> Result<()> {
    let n = n0 + n1;
    for shift in 0..3usize {
        let t: Vec<T> = (0..n).map(|i| q.powi(((i * 7 + shift * 3) % 11) as i64)).collect();
        let v = f(&t);
        for i in n0..n - 1 {
            let mut s = t.clone();
            s.swap(i, i + 1);
            let w = f(&s);
            let scale = v.magnitude().max(w.magnitude()).max(f64::MIN_POSITIVE);
            if !(v.clone() + w).is_negligible(scale * 1024.0) {
                let r = (f(&s) + f(&t)).magnitude() / scale;
                return Err(Error::AntisymmetryViolation(r));
            }
        }
    }
    Ok(())
}
