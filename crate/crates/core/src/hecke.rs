//! Noumi's representation of the affine Hecke algebra of type C̃ₙ on
//! Laurent polynomials, Y-operators, nonsymmetric Koornwinder polynomials
//! and the partial (anti)symmetrizers U₁±.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalars::Scalar;
use crate::weights::{
    enumerate_w1, gamma_vec, weights_below, GroupElement, ParamSet, SignedPerm, Weight,
};

/// Data of T_i = t_i + t_i⁻¹ · N/(1 − c x^β) · (s_i − 1).
#[derive(Clone)]
struct TData<S> {
    t: S,
    t_inv: S,
    beta: Vec<i64>,
    c: S,
    numer: LaurentPoly<S>,
}

/// Parameters and rank for operator computations.
#[derive(Clone)]
pub struct HeckeCtx<S> {
    pub p: ParamSet<S>,
    pub n: usize,
    pub n0: usize,
    pub n1: usize,
    /// Use the dual multiplicities t̃ in place of t.
    pub dual: bool,
    eff: ParamSet<S>,
    ops: Vec<TData<S>>,
}

impl<S: Scalar> std::fmt::Debug for HeckeCtx<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HeckeCtx")
            .field("n0", &self.n0)
            .field("n1", &self.n1)
            .field("dual", &self.dual)
            .field("p", &self.p)
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl<S: Scalar> HeckeCtx<S> {
    /// Rank-n context with n₀ = 0, n₁ = n.
    pub fn new(p: ParamSet<S>, n: usize) -> Result<Self> {
        Self::build(p, 0, n, false)
    }

    /// Context with a distinguished block of the last n₁ ≥ 2 variables.
    pub fn with_blocks(p: ParamSet<S>, n0: usize, n1: usize) -> Result<Self> {
        if n1 < 2 {
            return Err(Error::InvalidParams("n1 must be at least 2".into()));
        }
        Self::build(p, n0, n1, false)
    }

    /// The same context over the dual multiplicities.
    pub fn to_dual(&self) -> Self {
        Self::build(self.p.clone(), self.n0, self.n1, !self.dual).expect("valid context")
    }

    fn build(p: ParamSet<S>, n0: usize, n1: usize, dual: bool) -> Result<Self> {
        let n = n0 + n1;
        if n < 1 {
            return Err(Error::InvalidParams("rank must be positive".into()));
        }
        let eff = if dual { p.dual() } else { p.clone() };
        let ops = (0..=n).map(|i| t_data(&eff, n, i)).collect();
        Ok(HeckeCtx {
            p,
            n,
            n0,
            n1,
            dual,
            eff,
            ops,
        })
    }

    /// Parameters actually used by the operators (dual if requested).
    pub fn params(&self) -> &ParamSet<S> {
        &self.eff
    }

    /// t_i for i = 0..n.
    pub fn t(&self, i: usize) -> S {
        self.ops[i].t.clone()
    }

    pub fn apply_si(&self, f: &LaurentPoly<S>, i: usize) -> LaurentPoly<S> {
        f.apply_si(i, &self.eff.q)
    }

    /// T_i f = t_i f + t_i⁻¹ v_{a_i}(x) (s_i f − f).
    ///
    /// Panics if the divided difference is not a Laurent polynomial, which
    /// only happens for inexact scalars at very low precision.
    pub fn apply_t(&self, f: &LaurentPoly<S>, i: usize) -> LaurentPoly<S> {
        self.try_apply_t(f, i)
            .unwrap_or_else(|e| panic!("T_{i}: {e}"))
    }

    pub fn try_apply_t(&self, f: &LaurentPoly<S>, i: usize) -> Result<LaurentPoly<S>> {
        let d = &self.ops[i];
        let diff = self.apply_si(f, i).sub(f);
        let g = diff.div_binomial(&d.c, &d.beta)?;
        Ok(f.scale(&d.t).add(&d.numer.mul(&g).scale(&d.t_inv)))
    }

    /// T_i⁻¹ = T_i − t_i + t_i⁻¹.
    pub fn apply_t_inv(&self, f: &LaurentPoly<S>, i: usize) -> LaurentPoly<S> {
        self.try_apply_t_inv(f, i)
            .unwrap_or_else(|e| panic!("T_{i}^-1: {e}"))
    }

    pub fn try_apply_t_inv(&self, f: &LaurentPoly<S>, i: usize) -> Result<LaurentPoly<S>> {
        let d = &self.ops[i];
        let shift = d.t.clone() - d.t_inv.clone();
        Ok(self.try_apply_t(f, i)?.sub(&f.scale(&shift)))
    }

    /// Word applied right to left: `word = [i₁, …, i_r]` gives T_{i₁}⋯T_{i_r} f.
    pub fn apply_word(&self, f: &LaurentPoly<S>, word: &[usize]) -> LaurentPoly<S> {
        word.iter().rev().fold(f.clone(), |g, &i| self.apply_t(&g, i))
    }

    /// Y_i = T_i⋯T_{n−1} T_n T_{n−1}⋯T_1 T_0 T_1⁻¹⋯T_{i−1}⁻¹, i = 1..n.
    pub fn apply_y(&self, f: &LaurentPoly<S>, i: usize) -> LaurentPoly<S> {
        assert!(i >= 1 && i <= self.n, "Y index out of range");
        let mut g = f.clone();
        for j in (1..i).rev() {
            g = self.apply_t_inv(&g, j);
        }
        for j in 0..self.n {
            g = self.apply_t(&g, j);
        }
        g = self.apply_t(&g, self.n);
        for j in (i..self.n).rev() {
            g = self.apply_t(&g, j);
        }
        g
    }

    /// Spectral vector γ_λ for the operator parameters.
    pub fn gamma(&self, lambda: &[i64]) -> Vec<S> {
        gamma_vec(lambda, &self.eff)
    }

    /// Monic E_λ as the joint kernel of (Y_i − γ_{λ,i}) on span{x^μ : μ ⪯ λ}.
    pub fn koornwinder_e(&self, lambda: &[i64]) -> Result<LaurentPoly<S>> {
        assert_eq!(lambda.len(), self.n, "weight rank");
        let basis = weights_below(lambda);
        let index: HashMap<&[i64], usize> = basis
            .iter()
            .enumerate()
            .map(|(k, w)| (w.0.as_slice(), k))
            .collect();
        let b = basis.len();
        let gamma = self.gamma(lambda);
        let mut rows: Vec<Vec<S>> = vec![vec![S::zero(); b]; self.n * b];
        for (col, mu) in basis.iter().enumerate() {
            let mono = LaurentPoly::monomial(mu.0.clone(), S::one());
            for i in 1..=self.n {
                let y = self.apply_y(&mono, i);
                let scale = y.max_magnitude();
                for (e, c) in y.terms() {
                    if !index.contains_key(e.as_slice()) && c.is_negligible(scale * 1024.0) {
                        // rounding residue of an exact cancellation
                        continue;
                    }
                    let r = *index.get(e.as_slice()).ok_or_else(|| {
                        Error::InvalidParams(format!(
                            "Y_{i} x^{mu} leaves the span below {}",
                            Weight(lambda.to_vec())
                        ))
                    })?;
                    rows[(i - 1) * b + r][col] = c.clone();
                }
                let d = &mut rows[(i - 1) * b + col][col];
                *d = d.clone() - gamma[i - 1].clone();
            }
        }
        let kernel = nullspace(rows, b);
        if kernel.len() != 1 {
            return Err(Error::Degenerate { dim: kernel.len() });
        }
        let v = &kernel[0];
        let lead = v[index[lambda]].clone();
        if lead.is_zero() {
            return Err(Error::InvalidParams(
                "joint eigenvector has no x^lambda component".into(),
            ));
        }
        let inv = lead.recip();
        Ok(LaurentPoly::from_terms(
            self.n,
            basis
                .iter()
                .zip(v)
                .map(|(mu, c)| (mu.0.clone(), c.clone() * inv.clone())),
        ))
    }

    /// Elements of W₁ with their reduced words (BFS order).
    pub fn w1(&self) -> Vec<GroupElement> {
        enumerate_w1(self.n0, self.n1)
    }

    /// T_w f for every w ∈ W₁, built incrementally along the BFS tree.
    pub fn apply_all_tw(&self, f: &LaurentPoly<S>, group: &[GroupElement]) -> Vec<LaurentPoly<S>> {
        let pos: HashMap<&SignedPerm, usize> =
            group.iter().enumerate().map(|(k, w)| (&w.perm, k)).collect();
        let mut out: Vec<Option<LaurentPoly<S>>> = vec![None; group.len()];
        for (k, w) in group.iter().enumerate() {
            let v = match w.reduced_word.first() {
                None => f.clone(),
                Some(&i) => {
                    let parent = SignedPerm::generator(self.n, i).compose(&w.perm);
                    let pk = pos[&parent];
                    let prev = out[pk].as_ref().expect("parent precedes child in BFS order");
                    self.apply_t(prev, i)
                }
            };
            out[k] = Some(v);
        }
        out.into_iter().map(|v| v.expect("filled")).collect()
    }

    /// U₁± f = (Σ t_w^{±2})⁻¹ Σ (±1)^{l(w)} t_w^{±1} T_w f.
    pub fn apply_u1(&self, f: &LaurentPoly<S>, sign: Sign) -> LaurentPoly<S> {
        let group = self.w1();
        let tw = self.apply_all_tw(f, &group);
        let mut acc = LaurentPoly::zero(self.n);
        let mut norm = S::zero();
        for (w, g) in group.iter().zip(&tw) {
            let t = w.t_w(&self.eff);
            let (c, c2) = match sign {
                Sign::Plus => (t.clone(), t.clone() * t),
                Sign::Minus => {
                    let ti = t.recip();
                    let s = if w.length % 2 == 0 { ti.clone() } else { -ti.clone() };
                    (s, ti.clone() * ti)
                }
            };
            norm = norm + c2;
            acc = acc.add(&g.scale(&c));
        }
        acc.scale(&norm.recip())
    }

    /// χ₁ expanded from its product form.
    pub fn build_chi1(&self) -> LaurentPoly<S> {
        let p = &self.eff;
        let (n, n0, n1) = (self.n, self.n0, self.n1);
        let t2 = p.t.clone() * p.t.clone();
        let mut f = LaurentPoly::one(n);
        for i in n0..n {
            for j in i + 1..n {
                let mut a = LaurentPoly::var(n, i).scale(&t2);
                a = a.sub(&LaurentPoly::var(n, j));
                let mut e = vec![0; n];
                e[i] = 1;
                e[j] = 1;
                let b = LaurentPoly::one(n).sub(&LaurentPoly::monomial(e, t2.clone()));
                f = f.mul(&a).mul(&b);
            }
            for a in [&p.a[2], &p.a[3]] {
                let fac = LaurentPoly::one(n).sub(&LaurentPoly::var(n, i).scale(a));
                f = f.mul(&fac);
            }
        }
        let mut shift = vec![0; n];
        for s in shift.iter_mut().skip(n0) {
            *s = -(n1 as i64);
        }
        let sign = if (n1 * (n1 + 1) / 2) % 2 == 0 {
            S::one()
        } else {
            -S::one()
        };
        let pref = sign
            * p.t.powi(-2 * (n1 * (n1 - 1)) as i64)
            * p.tn.powi(-2 * n1 as i64);
        f.shift(&shift).scale(&pref)
    }

    /// c_{ρ₁ρ₁} from its closed product, with the Poincaré series in
    /// product form.
    pub fn coeff_c_rho1(&self) -> S {
        c_rho1_formula(&self.eff, self.n0, self.n1)
    }
}

fn t_data<S: Scalar>(p: &ParamSet<S>, n: usize, i: usize) -> TData<S> {
    let t = p.multiplicity(i, n);
    let one = LaurentPoly::one(n);
    let mut beta = vec![0i64; n];
    let (c, numer) = if i == 0 {
        beta[0] = -2;
        let s = p.a[0].clone() + p.a[1].clone();
        let pr = p.a[0].clone() * p.a[1].clone();
        let mut e1 = vec![0; n];
        e1[0] = -1;
        let mut e2 = vec![0; n];
        e2[0] = -2;
        let numer = one
            .sub(&LaurentPoly::monomial(e1, s))
            .add(&LaurentPoly::monomial(e2, pr));
        (p.q.clone(), numer)
    } else if i == n {
        beta[n - 1] = 2;
        let s = p.a[2].clone() + p.a[3].clone();
        let pr = p.a[2].clone() * p.a[3].clone();
        let mut e1 = vec![0; n];
        e1[n - 1] = 1;
        let mut e2 = vec![0; n];
        e2[n - 1] = 2;
        let numer = one
            .sub(&LaurentPoly::monomial(e1, s))
            .add(&LaurentPoly::monomial(e2, pr));
        (S::one(), numer)
    } else {
        beta[i - 1] = 1;
        beta[i] = -1;
        let t2 = p.t.clone() * p.t.clone();
        let numer = one.sub(&LaurentPoly::monomial(beta.clone(), t2));
        (S::one(), numer)
    };
    TData {
        t_inv: t.recip(),
        t,
        beta,
        c,
        numer,
    }
}

/// Σ_{w∈W₁} t̃_w⁻² = t^{−2n₁(n₁−1)} (−a₃a₄)^{−n₁} ∏ (1 − t^{2i})(1 − a₃a₄t^{2(i−1)})/(1 − t²).
pub fn poincare_w1<S: Scalar>(p: &ParamSet<S>, n1: usize) -> S {
    let t2 = p.t.clone() * p.t.clone();
    let a34 = p.a[2].clone() * p.a[3].clone();
    let mut acc = p.t.powi(-2 * (n1 * (n1 - 1)) as i64) * (-a34.clone()).powi(-(n1 as i64));
    for i in 1..=n1 {
        acc = acc
            * (S::one() - t2.powi(i as i64))
            * (S::one() - a34.clone() * t2.powi(i as i64 - 1))
            / (S::one() - t2.clone());
    }
    acc
}

/// Closed form of c_{ρ₁ρ₁}.
pub fn c_rho1_formula<S: Scalar>(p: &ParamSet<S>, n0: usize, n1: usize) -> S {
    let n = (n0 + n1) as i64;
    let n1i = n1 as i64;
    let q = &p.q;
    let t2 = p.t.clone() * p.t.clone();
    let a = &p.big_a;
    let a12 = p.a[0].clone() * p.a[1].clone();
    let one = S::one;
    let mut acc = poincare_w1(p, n1).recip();
    for i in 1..=n1i {
        for j in i + 1..=n1i {
            let num = (one() - q.powi(j - i) * t2.powi(j - i - 1))
                * (one() - a.clone() * q.powi(2 * n1i - i - j + 1) * t2.powi(2 * n - i - j - 1));
            let den = (one() - q.powi(j - i) * t2.powi(j - i))
                * (one() - a.clone() * q.powi(2 * n1i - i - j + 1) * t2.powi(2 * n - i - j));
            acc = acc * num / den;
        }
    }
    for i in 1..=n1i {
        let num = (one() - q.powi(n1i - i + 1) * t2.powi(n - i))
            * (one() - a12.clone() * q.powi(n1i - i) * t2.powi(n - i));
        let den = one() - a.clone() * q.powi(2 * (n1i - i + 1) - 1) * t2.powi(2 * (n - i));
        acc = acc * num / den;
    }
    acc
}

/// Numeric v_β(x) for a finite root β given in the ε-basis.
pub fn v_root<S: Scalar>(x: &[S], beta: &[i64], p: &ParamSet<S>) -> S {
    let mono = |e: &[i64]| {
        x.iter()
            .zip(e)
            .fold(S::one(), |acc, (xi, &a)| acc * xi.powi(a))
    };
    let xb = mono(beta);
    let long = beta.iter().filter(|&&b| b != 0).count() == 1;
    if long {
        let half: Vec<i64> = beta.iter().map(|b| b / 2).collect();
        let xh = mono(&half);
        (S::one() - p.tn.clone() * p.tnv.clone() * xh.clone())
            * (S::one() + p.tn.clone() / p.tnv.clone() * xh)
            / (S::one() - xb)
    } else {
        let t2 = p.t.clone() * p.t.clone();
        (S::one() - t2 * xb.clone()) / (S::one() - xb)
    }
}

/// Kernel basis of a dense matrix with `cols` columns.
pub fn nullspace<S: Scalar>(mut rows: Vec<Vec<S>>, cols: usize) -> Vec<Vec<S>> {
    let scale = rows
        .iter()
        .flat_map(|r| r.iter().map(|c| c.magnitude()))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let pick = if S::EXACT {
            (r..rows.len()).find(|&k| !rows[k][c].is_zero())
        } else {
            (r..rows.len())
                .filter(|&k| !rows[k][c].is_negligible(scale * 64.0))
                .max_by(|&a, &b| {
                    rows[a][c]
                        .magnitude()
                        .partial_cmp(&rows[b][c].magnitude())
                        .unwrap()
                })
        };
        let Some(k) = pick else { continue };
        rows.swap(r, k);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (k2, row) in rows.iter_mut().enumerate() {
            if k2 == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
            row[c] = S::zero();
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![S::zero(); cols];
            v[fc] = S::one();
            for (pr, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[pr][fc].clone();
            }
            v
        })
        .collect()
}

/// Outcome of [`HeckeCtx::relation_suite`].
#[derive(Clone, Debug, Default)]
pub struct RelationSummary {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl RelationSummary {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

impl<S: Scalar> HeckeCtx<S> {
    /// Quadratic and braid relations, T_i T_i⁻¹ round trips and Y-commutativity
    /// as operator identities on every x^μ with |μ_i| ≤ `max_deg`.
    pub fn relation_suite(&self, max_deg: i64) -> RelationSummary {
        let n = self.n;
        let mut out = RelationSummary::default();
        let mut basis = vec![vec![]];
        for _ in 0..n {
            basis = basis
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    (-max_deg..=max_deg).map(move |a| {
                        let mut w = v.clone();
                        w.push(a);
                        w
                    })
                })
                .collect();
        }
        for mu in basis {
            let f = LaurentPoly::monomial(mu.clone(), S::one());
            let t: Vec<LaurentPoly<S>> = (0..=n).map(|i| self.apply_t(&f, i)).collect();
            for i in 0..=n {
                let (ti, ti_inv) = (self.t(i), self.t(i).recip());
                let quad = self.apply_t(&t[i], i).sub(&t[i].scale(&(ti.clone() - ti_inv))).sub(&f);
                out.check(quad.is_zero(), || format!("quadratic i={i} mu={mu:?}"));
                let a = self.apply_t_inv(&t[i], i);
                let b = self.apply_t(&self.apply_t_inv(&f, i), i);
                out.check(a == f && b == f, || format!("inverse i={i} mu={mu:?}"));
            }
            for i in 0..n {
                let j = i + 1;
                let long = i == 0 || i == n - 1;
                let (w1, w2) = if long {
                    (vec![i, j, i, j], vec![j, i, j, i])
                } else {
                    (vec![i, j, i], vec![j, i, j])
                };
                out.check(self.apply_word(&f, &w1) == self.apply_word(&f, &w2), || {
                    format!("braid ({i},{j}) mu={mu:?}")
                });
            }
            for i in 0..=n {
                for j in i + 2..=n {
                    out.check(self.apply_t(&t[j], i) == self.apply_t(&t[i], j), || {
                        format!("commute ({i},{j}) mu={mu:?}")
                    });
                }
            }
            let y: Vec<LaurentPoly<S>> = (1..=n).map(|i| self.apply_y(&f, i)).collect();
            for i in 1..=n {
                for j in i + 1..=n {
                    let a = self.apply_y(&y[j - 1], i);
                    let b = self.apply_y(&y[i - 1], j);
                    out.check(a == b, || format!("Y commute ({i},{j}) mu={mu:?}"));
                }
            }
        }
        out
    }
}
