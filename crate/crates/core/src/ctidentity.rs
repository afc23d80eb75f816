//! Baker–Forrester constant term identity, both sides in exact arithmetic.
//!
//! The left side is expanded as a product of binomials `1 − c·t^β`. With
//! q = u/v every binomial is carried as `v^m − u^m t^β`, so the expansion runs
//! over integers and the constant term is divided by `v^{Σm}` at the end.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rug::ops::Pow;
use rug::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{qgamma_int_exact, qnumber_int, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct CtParams {
    pub n0: usize,
    pub n1: usize,
    pub a: u32,
    pub b: u32,
    pub k: u32,
    pub q: BigRational,
}

impl CtParams {
    pub fn new(n0: usize, n1: usize, a: u32, b: u32, k: u32, q: BigRational) -> Self {
        Self { n0, n1, a, b, k, q }
    }

    pub fn n(&self) -> usize {
        self.n0 + self.n1
    }

    pub fn validate(&self) -> Result<()> {
        if self.n() == 0 {
            return Err(Error::InvalidParams("n0 + n1 must be positive".into()));
        }
        if !(self.q.is_positive() && self.q < BigRational::one()) {
            return Err(Error::InvalidParams(format!("q = {} is not in (0,1)", self.q)));
        }
        Ok(())
    }

    /// Same tuple with a and b exchanged.
    pub fn swapped(&self) -> Self {
        Self { a: self.b, b: self.a, ..self.clone() }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CtOptions {
    /// Cap on stored terms, checked before every multiplication.
    pub budget: usize,
    /// Drop terms that the remaining factors cannot bring back to exponent 0.
    pub prune: bool,
}

impl Default for CtOptions {
    fn default() -> Self {
        Self { budget: 50_000_000, prune: true }
    }
}

#[derive(Clone, Debug)]
pub struct CtExpansion {
    pub value: BigRational,
    pub factors: usize,
    pub peak_terms: usize,
}

/// One binomial `1 − q^m t^β`.
#[derive(Clone, Debug)]
struct Binomial {
    m: u32,
    beta: Vec<i64>,
}

fn ratio(n: usize, i: usize, j: usize, m: u32) -> Binomial {
    let mut beta = vec![0; n];
    beta[i] += 1;
    beta[j] -= 1;
    Binomial { m, beta }
}

fn single(n: usize, i: usize, m: u32, sign: i64) -> Binomial {
    let mut beta = vec![0; n];
    beta[i] = sign;
    Binomial { m, beta }
}

/// The factors of the product, pairs first, then the one-variable ones.
fn binomials(p: &CtParams) -> Vec<Binomial> {
    let n = p.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for m in 0..p.k {
                out.push(ratio(n, i, j, m));
                out.push(ratio(n, j, i, m + 1));
            }
            if i >= p.n0 {
                out.push(ratio(n, i, j, p.k));
                out.push(ratio(n, j, i, p.k + 1));
            }
        }
    }
    for i in 0..n {
        for m in 0..p.a {
            out.push(single(n, i, m, 1));
        }
        for m in 1..=p.b {
            out.push(single(n, i, m, -1));
        }
    }
    out
}

/// Packs exponent vectors with `bits` bits per coordinate around `bias`.
struct Packer {
    n: usize,
    bits: u32,
    bias: i64,
}

impl Packer {
    fn new(n: usize, reach: i64) -> Result<Self> {
        let bits = (64 / n as u32).min(16);
        let bias = 1i64 << (bits - 1);
        if reach >= bias {
            return Err(Error::InvalidParams(format!(
                "exponent range ±{reach} does not fit {bits}-bit packing for n = {n}"
            )));
        }
        Ok(Self { n, bits, bias })
    }

    fn pack(&self, e: &[i64]) -> u64 {
        e.iter()
            .fold(0u64, |acc, &x| (acc << self.bits) | (x + self.bias) as u64)
    }

    fn delta(&self, beta: &[i64]) -> i64 {
        beta.iter().fold(0i64, |acc, &x| (acc << self.bits) + x)
    }

    fn coord(&self, key: u64, i: usize) -> i64 {
        let shift = self.bits * (self.n - 1 - i) as u32;
        ((key >> shift) & ((1u64 << self.bits) - 1)) as i64 - self.bias
    }
}

fn big_to_rug(x: &BigInt) -> Integer {
    Integer::from_str_radix(&x.to_str_radix(16), 16).expect("hex digits")
}

fn rug_to_big(x: &Integer) -> BigInt {
    BigInt::parse_bytes(x.to_string_radix(16).as_bytes(), 16).expect("hex digits")
}

/// Constant term of the left side, with expansion statistics.
pub fn bf_lhs_expand(p: &CtParams, opts: &CtOptions) -> Result<CtExpansion> {
    p.validate()?;
    let n = p.n();
    let factors = binomials(p);
    // suffix ranges: coordinate-wise [lo, hi] reachable by factors[f..]
    let mut lo = vec![vec![0i64; n]; factors.len() + 1];
    let mut hi = vec![vec![0i64; n]; factors.len() + 1];
    for f in (0..factors.len()).rev() {
        for i in 0..n {
            let b = factors[f].beta[i];
            lo[f][i] = lo[f + 1][i] + b.min(0);
            hi[f][i] = hi[f + 1][i] + b.max(0);
        }
    }
    let reach = (0..n).map(|i| hi[0][i].max(-lo[0][i])).max().unwrap_or(0);
    let packer = Packer::new(n, reach)?;
    let u = big_to_rug(p.q.numer());
    let v = big_to_rug(p.q.denom());
    let max_m = factors.iter().map(|b| b.m).max().unwrap_or(0);
    let upow: Vec<Integer> = (0..=max_m).map(|m| u.clone().pow(m)).collect();
    let vpow: Vec<Integer> = (0..=max_m).map(|m| v.clone().pow(m)).collect();

    let mut poly: HashMap<u64, Integer> = HashMap::new();
    poly.insert(packer.pack(&vec![0; n]), Integer::from(1));
    let mut peak = 1usize;
    let mut total_m: u32 = 0;
    let mut scratch = vec![0i64; n];
    for (f, bin) in factors.iter().enumerate() {
        let estimate = poly.len().saturating_mul(2);
        if estimate > opts.budget {
            return Err(Error::Budget {
                what: "constant term expansion",
                needed: estimate as u128,
                limit: opts.budget as u128,
            });
        }
        let d = packer.delta(&bin.beta);
        let (cu, cv) = (&upow[bin.m as usize], &vpow[bin.m as usize]);
        let mut next: HashMap<u64, Integer> = HashMap::with_capacity(estimate);
        for (key, c) in poly.drain() {
            let shifted = key.wrapping_add(d as u64);
            *next.entry(key).or_default() += Integer::from(&c * cv);
            *next.entry(shifted).or_default() -= c * cu;
        }
        total_m += bin.m;
        let (rlo, rhi) = (&lo[f + 1], &hi[f + 1]);
        next.retain(|&key, c| {
            if *c == 0 {
                return false;
            }
            if !opts.prune {
                return true;
            }
            for (i, s) in scratch.iter_mut().enumerate() {
                *s = packer.coord(key, i);
            }
            scratch
                .iter()
                .enumerate()
                .all(|(i, &e)| e + rlo[i] <= 0 && e + rhi[i] >= 0)
        });
        peak = peak.max(next.len());
        poly = next;
    }
    let ct = poly
        .get(&packer.pack(&vec![0; n]))
        .map(rug_to_big)
        .unwrap_or_else(BigInt::zero);
    let den = rug_to_big(&v.pow(total_m));
    Ok(CtExpansion {
        value: BigRational::new(ct, den),
        factors: factors.len(),
        peak_terms: peak,
    })
}

pub fn bf_lhs(p: &CtParams) -> Result<BigRational> {
    bf_lhs_expand(p, &CtOptions::default()).map(|e| e.value)
}

/// M_n(a,b,k;q) with Γ_q and [·]_q supplied by the caller.
pub fn morris_with<S: Scalar>(n: usize, a: u32, b: u32, k: u32, gq: &impl Fn(u32) -> S) -> S {
    let mut acc = S::one();
    for l in 0..n as u32 {
        acc = acc * gq(a + b + 1 + k * l) * gq(1 + k * (l + 1))
            / (gq(a + 1 + k * l) * gq(b + 1 + k * l) * gq(1 + k));
    }
    acc
}

/// Right side with Γ_q at positive integers and `[m]_q` supplied by the caller.
pub fn bf_rhs_with<S: Scalar>(
    p: &CtParams,
    gq: &impl Fn(u32) -> S,
    qn: &impl Fn(i64) -> S,
) -> S {
    let (a, b, k) = (p.a, p.b, p.k);
    let kn0 = k * p.n0 as u32;
    let mut acc = morris_with(p.n0, a, b, k, gq);
    for j in 0..p.n1 as u32 {
        let s = (k + 1) * j;
        acc = acc * qn(((k + 1) * (j + 1)) as i64) * gq(s + a + b + kn0 + 1) * gq((k + 1) * (j + 1) + kn0)
            / (gq(2 + k) * gq(s + a + kn0 + 1) * gq(s + b + kn0 + 1));
    }
    acc
}

pub fn bf_rhs(p: &CtParams) -> BigRational {
    let q = p.q.clone();
    bf_rhs_with(p, &|m| qgamma_int_exact(m, &q), &|m| qnumber_int(m, &q))
}

#[derive(Clone, Debug)]
pub struct CtCheck {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub peak_terms: usize,
}

impl CtCheck {
    pub fn pass(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn verify(p: &CtParams, opts: &CtOptions) -> Result<CtCheck> {
    let e = bf_lhs_expand(p, opts)?;
    Ok(CtCheck { lhs: e.value, rhs: bf_rhs(p), peak_terms: e.peak_terms })
}
