//! The torus pairing ⟨f,g⟩ against the Koornwinder density Δ and the
//! closed-form norm evaluations it is compared with.

use std::sync::Arc;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hecke::{c_rho1_formula, poincare_w1, v_root, HeckeCtx, Sign};
use crate::laurent::LaurentPoly;
use crate::scalars::{qpoch_inf, Analytic, PrecisionCtx, Real, Scalar};
use crate::weights::{dominant, gamma_vec, min_coset_rep, ParamSet};

/// Δ = 𝒞·Δ₊ with each denominator factor of 𝒞 absorbed into the vanishing
/// leading factor of the matching numerator product of Δ₊:
///
/// pair(i,j) = (x_ix_j − t²)(x_i/x_j − t²) (qx_ix_j, qx_i/x_j, x_j/x_i, 1/(x_ix_j))_∞
///             / (t²x_ix_j, t²x_i/x_j, t²x_j/x_i, t²/(x_ix_j))_∞
///
/// single(i) = −(x_i − a₃)(x_i − a₄)(qx_i², x_i⁻²)_∞ / ∏_r (a_rx_i, a_r/x_i)_∞
#[derive(Clone, Debug)]
pub struct DensityEval<T> {
    pub p: ParamSet<T>,
    pub ctx: PrecisionCtx,
    pub n: usize,
}

type C<T> = Complex<T>;

fn cr<T: Real>(v: &T) -> C<T> {
    Complex::new(v.clone(), T::zero())
}

impl<T: Real> DensityEval<T> {
    pub fn new(p: ParamSet<T>, n: usize, ctx: PrecisionCtx) -> Result<Self> {
        p.ensure_pairing()?;
        ctx.validate()?;
        if n == 0 {
            return Err(Error::InvalidParams("rank must be positive".into()));
        }
        Ok(DensityEval { p, ctx, n })
    }

    fn qp(&self, x: &C<T>) -> Result<C<T>> {
        qpoch_inf(x, &cr(&self.p.q), &self.ctx)
    }

    fn pair_factor(&self, xi: &C<T>, xj: &C<T>) -> Result<C<T>> {
        let t2 = cr(&(self.p.t.clone() * self.p.t.clone()));
        let q = cr(&self.p.q);
        let prod = xi.clone() * xj.clone();
        let ratio = xi.clone() / xj.clone();
        let rinv = xj.clone() / xi.clone();
        let pinv = prod.recip();
        let lead = (prod.clone() - t2.clone()) * (ratio.clone() - t2.clone());
        let num = self.qp(&(q.clone() * prod.clone()))?
            * self.qp(&(q * ratio.clone()))?
            * self.qp(&rinv)?
            * self.qp(&pinv)?;
        let den = self.qp(&(t2.clone() * prod))?
            * self.qp(&(t2.clone() * ratio))?
            * self.qp(&(t2.clone() * rinv))?
            * self.qp(&(t2 * pinv))?;
        Ok(lead * num / den)
    }

    fn single_factor(&self, x: &C<T>) -> Result<C<T>> {
        let q = cr(&self.p.q);
        let x2 = x.clone() * x.clone();
        let xinv = x.recip();
        let lead = -((x.clone() - cr(&self.p.a[2])) * (x.clone() - cr(&self.p.a[3])));
        let mut den = C::<T>::one();
        for a in &self.p.a {
            let a = cr(a);
            den = den * self.qp(&(a.clone() * x.clone()))? * self.qp(&(a * xinv.clone()))?;
        }
        Ok(lead * self.qp(&(q * x2.clone()))? * self.qp(&x2.recip())? / den)
    }

    /// Δ(x) from the regrouped, pole-free factorization.
    pub fn eval_delta(&self, x: &[C<T>]) -> Result<C<T>> {
        assert_eq!(x.len(), self.n, "point dimension");
        let mut acc = C::<T>::one();
        for i in 0..self.n {
            acc = acc * self.single_factor(&x[i])?;
            for j in i + 1..self.n {
                acc = acc * self.pair_factor(&x[i], &x[j])?;
            }
        }
        Ok(acc)
    }

    /// Δ(x) = 𝒞(x)Δ₊(x) exactly as displayed; singular where x_i = x_j^{±1}
    /// or x_i = ±1.
    pub fn eval_delta_naive(&self, x: &[C<T>]) -> Result<C<T>> {
        assert_eq!(x.len(), self.n, "point dimension");
        let one = C::<T>::one();
        let t2 = cr(&(self.p.t.clone() * self.p.t.clone()));
        let mut cfac = one.clone();
        let mut dplus = one.clone();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let pr = x[i].clone() * x[j].clone();
                let ra = x[i].clone() / x[j].clone();
                cfac = cfac * (pr.clone() - t2.clone()) * (ra.clone() - t2.clone())
                    / ((pr.clone() - one.clone()) * (ra.clone() - one.clone()));
                for y in [pr.clone(), ra.clone(), ra.recip(), pr.recip()] {
                    dplus = dplus * self.qp(&y)? / self.qp(&(t2.clone() * y))?;
                }
            }
            let xi = &x[i];
            let x2 = xi.clone() * xi.clone();
            cfac = cfac * (xi.clone() - cr(&self.p.a[2])) * (xi.clone() - cr(&self.p.a[3]))
                / (x2.clone() - one.clone());
            dplus = dplus * self.qp(&x2)? * self.qp(&x2.recip())?;
            for a in &self.p.a {
                let a = cr(a);
                dplus = dplus
                    / (self.qp(&(a.clone() * xi.clone()))? * self.qp(&(a / xi.clone()))?);
            }
        }
        Ok(cfac * dplus)
    }

    /// Factor tables on the M-point equispaced grid of the unit circle.
    fn grid(&self, m: usize) -> Result<Grid<T>> {
        let roots = unit_roots::<T>(m);
        let mut single = Vec::with_capacity(m);
        for x in &roots {
            single.push(self.single_factor(x)?);
        }
        let mut pair = Vec::new();
        if self.n >= 2 {
            // pair(k₁,k₂) only depends on k₁ ± k₂ mod M
            let q = cr(&self.p.q);
            let t2 = cr(&(self.p.t.clone() * self.p.t.clone()));
            let mut qq = Vec::with_capacity(m);
            let mut q1 = Vec::with_capacity(m);
            let mut qt = Vec::with_capacity(m);
            for u in &roots {
                qq.push(self.qp(&(q.clone() * u.clone()))?);
                q1.push(self.qp(u)?);
                qt.push(self.qp(&(t2.clone() * u.clone()))?);
            }
            pair = Vec::with_capacity(m * m);
            for k1 in 0..m {
                for k2 in 0..m {
                    let s = (k1 + k2) % m;
                    let d = (k1 + m - k2) % m;
                    let nd = (m - d) % m;
                    let ns = (m - s) % m;
                    let lead = (roots[s].clone() - t2.clone()) * (roots[d].clone() - t2.clone());
                    let num = qq[s].clone() * qq[d].clone() * q1[nd].clone() * q1[ns].clone();
                    let den = qt[s].clone() * qt[d].clone() * qt[nd].clone() * qt[ns].clone();
                    pair.push(lead * num / den);
                }
            }
        }
        Ok(Grid {
            m,
            roots,
            single,
            pair,
        })
    }
}

struct Grid<T> {
    m: usize,
    roots: Vec<C<T>>,
    single: Vec<C<T>>,
    pair: Vec<C<T>>,
}

/// e^{2πik/M} for k = 0..M, exact at the quarter points.
fn unit_roots<T: Real>(m: usize) -> Vec<C<T>> {
    let two_pi = T::pi() * T::from_i64(2);
    (0..m)
        .map(|k| {
            if 4 * k % m == 0 {
                let (re, im) = match 4 * k / m {
                    0 => (1, 0),
                    1 => (0, 1),
                    2 => (-1, 0),
                    _ => (0, -1),
                };
                return Complex::new(T::from_i64(re), T::from_i64(im));
            }
            let th = two_pi.clone() * T::from_i64(k as i64) / T::from_i64(m as i64);
            let (s, c) = th.sin_cos();
            Complex::new(c, s)
        })
        .collect()
}

/// A parameter-dependent Laurent polynomial. The dagger f† is produced by
/// rebuilding the polynomial at inverted parameters and inverting x.
#[derive(Clone)]
pub struct FunctionSpec<T> {
    pub label: String,
    recipe: Arc<dyn Fn(&ParamSet<T>) -> Result<LaurentPoly<T>> + Send + Sync>,
}

impl<T> std::fmt::Debug for FunctionSpec<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FunctionSpec({})", self.label)
    }
}

impl<T: Scalar> FunctionSpec<T> {
    pub fn new(
        label: impl Into<String>,
        recipe: impl Fn(&ParamSet<T>) -> Result<LaurentPoly<T>> + Send + Sync + 'static,
    ) -> Self {
        FunctionSpec {
            label: label.into(),
            recipe: Arc::new(recipe),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::new("1", move |_| Ok(LaurentPoly::one(n)))
    }

    /// A fixed polynomial whose coefficients do not depend on parameters.
    pub fn fixed(label: impl Into<String>, f: LaurentPoly<T>) -> Self {
        Self::new(label, move |_| Ok(f.clone()))
    }

    /// Monic nonsymmetric Koornwinder polynomial E_λ.
    pub fn koornwinder(lambda: Vec<i64>) -> Self {
        let label = format!("E{}", crate::weights::Weight(lambda.clone()));
        Self::new(label, move |p| {
            HeckeCtx::new(p.clone(), lambda.len())?.koornwinder_e(&lambda)
        })
    }

    /// χ₁ for the block split (n₀, n₁).
    pub fn chi1(n0: usize, n1: usize) -> Self {
        Self::new(format!("chi1({n0},{n1})"), move |p| {
            Ok(HeckeCtx::with_blocks(p.clone(), n0, n1)?.build_chi1())
        })
    }

    /// T_i ∘ self.
    pub fn then_t(&self, i: usize) -> Self {
        let inner = self.clone();
        Self::new(format!("T{i} {}", self.label), move |p| {
            let f = inner.poly_at(p)?;
            HeckeCtx::new(p.clone(), f.nvars())?.try_apply_t(&f, i)
        })
    }

    /// T_i⁻¹ ∘ self.
    pub fn then_t_inv(&self, i: usize) -> Self {
        let inner = self.clone();
        Self::new(format!("T{i}^-1 {}", self.label), move |p| {
            let f = inner.poly_at(p)?;
            HeckeCtx::new(p.clone(), f.nvars())?.try_apply_t_inv(&f, i)
        })
    }

    /// U₁± ∘ self for the block split (n₀, n₁).
    pub fn then_u1(&self, sign: Sign, n0: usize, n1: usize) -> Self {
        let inner = self.clone();
        let tag = if sign == Sign::Plus { "+" } else { "-" };
        Self::new(format!("U1{tag} {}", self.label), move |p| {
            let f = inner.poly_at(p)?;
            Ok(HeckeCtx::with_blocks(p.clone(), n0, n1)?.apply_u1(&f, sign))
        })
    }

    pub fn poly_at(&self, p: &ParamSet<T>) -> Result<LaurentPoly<T>> {
        (self.recipe)(p)
    }

    /// f†(x) = f(x⁻¹; t⁻¹, q⁻¹).
    pub fn dagger_at(&self, p: &ParamSet<T>) -> Result<LaurentPoly<T>> {
        Ok(self.poly_at(&p.inverted())?.invert_vars())
    }
}

/// M-doubling schedule for the tensor trapezoid rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub m_start: usize,
    pub m_max: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature {
            m_start: 16,
            m_max: 512,
            rel_tol: 1e-12,
            abs_tol: 1e-15,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairValue<T> {
    pub value: Complex<T>,
    /// |I_{2M} − I_M| at acceptance.
    pub error_estimate: f64,
    /// Nodes per dimension of the accepted rule.
    pub nodes: usize,
    /// Error estimates of every doubling step.
    pub history: Vec<f64>,
}

/// Trapezoid approximation with M nodes per dimension of
/// (2πi)^{−n} ∮ f g† Δ dx/x, i.e. the mean of f·g†·Δ over the grid.
pub fn pair_at<T: Real>(
    f: &LaurentPoly<T>,
    g_dagger: &LaurentPoly<T>,
    d: &DensityEval<T>,
    m: usize,
) -> Result<Complex<T>> {
    let n = d.n;
    if n > 3 {
        return Err(Error::InvalidParams("tensor quadrature supports n <= 3".into()));
    }
    let m_total = (m as u128).pow(n as u32);
    if m_total > 1 << 26 {
        return Err(Error::Budget {
            what: "quadrature nodes",
            needed: m_total,
            limit: 1 << 26,
        });
    }
    let grid = d.grid(m)?;
    let h = f.mul(g_dagger);
    let terms: Vec<(Vec<i64>, T)> = h.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    let eval_h = |k: &[usize]| -> C<T> {
        let mut acc = C::<T>::zero();
        for (e, c) in &terms {
            let mut idx: i64 = 0;
            for (a, &ki) in e.iter().zip(k) {
                idx += a * ki as i64;
            }
            let r = &grid.roots[idx.rem_euclid(m as i64) as usize];
            acc = acc + Complex::new(r.re.clone() * c.clone(), r.im.clone() * c.clone());
        }
        acc
    };
    let mut rows: Vec<C<T>> = Vec::with_capacity(m);
    let mut k = vec![0usize; n];
    for k0 in 0..m {
        k[0] = k0;
        let mut row = C::<T>::zero();
        match n {
            1 => row = eval_h(&k) * grid.single[k0].clone(),
            2 => {
                for k1 in 0..m {
                    k[1] = k1;
                    let delta = grid.single[k0].clone()
                        * grid.single[k1].clone()
                        * grid.pair[k0 * m + k1].clone();
                    row = row + eval_h(&k) * delta;
                }
            }
            _ => {
                for k1 in 0..m {
                    k[1] = k1;
                    let d01 = grid.single[k0].clone()
                        * grid.single[k1].clone()
                        * grid.pair[k0 * m + k1].clone();
                    for k2 in 0..m {
                        k[2] = k2;
                        let delta = d01.clone()
                            * grid.single[k2].clone()
                            * grid.pair[k0 * m + k2].clone()
                            * grid.pair[k1 * m + k2].clone();
                        row = row + eval_h(&k) * delta;
                    }
                }
            }
        }
        rows.push(row);
    }
    let total = pairwise_sum(&rows);
    let scale = T::from_i64(1) / T::from_i64(m as i64).powi(n as i64);
    debug_assert_eq!(grid.m, m);
    Ok(Complex::new(total.re * scale.clone(), total.im * scale))
}

fn pairwise_sum<T: Real>(v: &[C<T>]) -> C<T> {
    match v.len() {
        0 => C::<T>::zero(),
        1 => v[0].clone(),
        len => pairwise_sum(&v[..len / 2]) + pairwise_sum(&v[len / 2..]),
    }
}

/// ⟨f,g⟩ with M doubled from `m_start` until two consecutive rules agree.
pub fn pair<T: Real>(
    f: &FunctionSpec<T>,
    g: &FunctionSpec<T>,
    d: &DensityEval<T>,
    quad: &Quadrature,
) -> Result<PairValue<T>> {
    if quad.m_start < 16 || !quad.m_start.is_power_of_two() {
        return Err(Error::InvalidParams(
            "quadrature needs a power-of-two M >= 16".into(),
        ));
    }
    let fp = f.poly_at(&d.p)?;
    let gd = g.dagger_at(&d.p)?;
    if fp.nvars() != d.n || gd.nvars() != d.n {
        return Err(Error::InvalidParams("function rank differs from density rank".into()));
    }
    pair_polys(&fp, &gd, d, quad)
}

/// [`pair`] on already built f and g†.
pub fn pair_polys<T: Real>(
    f: &LaurentPoly<T>,
    g_dagger: &LaurentPoly<T>,
    d: &DensityEval<T>,
    quad: &Quadrature,
) -> Result<PairValue<T>> {
    let mut m = quad.m_start;
    let mut prev = pair_at(f, g_dagger, d, m)?;
    let mut history = Vec::new();
    while m < quad.m_max {
        m *= 2;
        let cur = pair_at(f, g_dagger, d, m)?;
        let delta = (cur.clone() - prev).magnitude();
        history.push(delta);
        if delta <= quad.rel_tol * cur.magnitude() + quad.abs_tol {
            return Ok(PairValue {
                value: cur,
                error_estimate: delta,
                nodes: m,
                history,
            });
        }
        prev = cur;
    }
    Err(Error::NonConvergence {
        what: "torus quadrature",
        steps: history.len(),
        delta: history.last().copied().unwrap_or(f64::INFINITY),
    })
}

/// Σ⁺ of type C_n: ε_i − ε_j, ε_i + ε_j (i < j) and 2ε_i.
pub fn positive_roots(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for s in [-1, 1] {
                let mut r = vec![0; n];
                r[i] = 1;
                r[j] = s;
                out.push(r);
            }
        }
        let mut r = vec![0; n];
        r[i] = 2;
        out.push(r);
    }
    out
}

fn is_negative(v: &[i64]) -> bool {
    v.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0)
}

struct Qp<'a, T> {
    q: &'a T,
    ctx: &'a PrecisionCtx,
}

impl<T: Analytic> Qp<'_, T> {
    fn inf(&self, x: T) -> Result<T> {
        qpoch_inf(&x, self.q, self.ctx)
    }
}

/// ⟨E_λ,E_λ⟩ for dominant λ as the closed double product.
pub fn norm_e_formula<T: Analytic>(
    lambda: &[i64],
    p: &ParamSet<T>,
    ctx: &PrecisionCtx,
) -> Result<T> {
    if !crate::weights::Weight(lambda.to_vec()).is_dominant() {
        return Err(Error::InvalidParams("norm formula needs a dominant weight".into()));
    }
    let n = lambda.len() as i64;
    let q = &p.q;
    let qp = Qp { q, ctx };
    let tp = |e: i64| p.t.powi(e);
    let qe = |e: i64| q.powi(e);
    let a = &p.big_a;
    let a34 = p.a[2].clone() * p.a[3].clone();
    let one = T::one;
    let mut acc = one();
    for i in 1..=n {
        let li = lambda[i as usize - 1];
        let e = n - i;
        let x = a.clone() * qe(2 * li) * tp(4 * e);
        let num = qp.inf(x.clone())? * qp.inf(x)? * (one() - a34.clone() * qe(li) * tp(2 * e));
        let mut den = qp.inf(qe(li + 1) * tp(2 * e))? * qp.inf(a.clone() * qe(li) * tp(2 * e))?;
        for r in 0..4 {
            for s in r + 1..4 {
                den = den * qp.inf(p.a[r].clone() * p.a[s].clone() * qe(li) * tp(2 * e))?;
            }
        }
        acc = acc * num / den;
        for j in i + 1..=n {
            let lj = lambda[j as usize - 1];
            let b = qe(li - lj + 1);
            let d = j - i;
            acc = acc * qp.inf(b.clone() * tp(2 * d))?.powi(2)
                / (qp.inf(b.clone() * tp(2 * (d + 1)))? * qp.inf(b * tp(2 * (d - 1)))?);
            let c = a.clone() * qe(li + lj);
            let k = 2 * n - i - j;
            acc = acc * qp.inf(c.clone() * tp(2 * k))?.powi(2)
                / (qp.inf(c.clone() * tp(2 * (k + 1)))? * qp.inf(c * tp(2 * (k - 1)))?);
        }
    }
    Ok(acc)
}

/// ⟨E_λ,E_λ⟩/⟨E_λ⁺,E_λ⁺⟩ as a product over the inversion set of w_λ.
pub fn norm_ratio_formula<T: Scalar>(lambda: &[i64], p: &ParamSet<T>) -> T {
    let n = lambda.len();
    let lp = dominant(lambda);
    let w = min_coset_rep(lambda);
    let gamma = gamma_vec(&lp, p);
    let ginv: Vec<T> = gamma.iter().map(|g| g.recip()).collect();
    let pd = p.dual();
    let pdi = pd.inverted();
    let mut acc = T::one();
    for alpha in positive_roots(n) {
        if !is_negative(&w.perm.apply(&alpha)) {
            continue;
        }
        let neg: Vec<i64> = alpha.iter().map(|a| -a).collect();
        let v1 = v_root(&ginv, &alpha, &pd);
        let v2 = v_root(&gamma, &neg, &pdi);
        acc = acc / (v1 * v2);
    }
    acc
}

/// ⟨E_ρ₁,E_ρ₁⟩ written out explicitly for ρ₁ = (0^{n₀}, n₁, …, 1).
pub fn norm_rho1_explicit<T: Analytic>(
    p: &ParamSet<T>,
    n0: usize,
    n1: usize,
    ctx: &PrecisionCtx,
) -> Result<T> {
    let (n, n1) = ((n0 + n1) as i64, n1 as i64);
    let q = &p.q;
    let qp = Qp { q, ctx };
    let tp = |e: i64| p.t.powi(e);
    let qe = |e: i64| q.powi(e);
    let a = &p.big_a;
    let a34 = p.a[2].clone() * p.a[3].clone();
    let one = T::one;
    let pairs = |x: T| -> Result<T> {
        let mut d = one();
        for r in 0..4 {
            for s in r + 1..4 {
                d = d * qp.inf(p.a[r].clone() * p.a[s].clone() * x.clone())?;
            }
        }
        Ok(d)
    };
    // cross ratio (xT^k)²/((xT^{k+1})(xT^{k−1})) with T = t²
    let tri = |x: T, k: i64| -> Result<T> {
        Ok(qp.inf(x.clone() * tp(2 * k))?.powi(2)
            / (qp.inf(x.clone() * tp(2 * (k + 1)))? * qp.inf(x * tp(2 * (k - 1)))?))
    };
    let mut acc = one();
    for i in 1..=n1 {
        let m = n1 - i + 1;
        let e = n - i;
        let x = a.clone() * qe(2 * m) * tp(4 * e);
        acc = acc * qp.inf(x.clone())? * qp.inf(x)? * (one() - a34.clone() * qe(m) * tp(2 * e))
            / (qp.inf(qe(m + 1) * tp(2 * e))?
                * qp.inf(a.clone() * qe(m) * tp(2 * e))?
                * pairs(qe(m) * tp(2 * e))?);
    }
    for i in n1 + 1..=n {
        let e = n - i;
        let x = a.clone() * tp(4 * e);
        acc = acc * qp.inf(x.clone())? * qp.inf(x)? * (one() - a34.clone() * tp(2 * e))
            / (qp.inf(q.clone() * tp(2 * e))? * qp.inf(a.clone() * tp(2 * e))? * pairs(tp(2 * e))?);
    }
    for i in 1..=n1 {
        for j in i + 1..=n1 {
            acc = acc * tri(qe(j - i + 1), j - i)?;
            acc = acc * tri(a.clone() * qe(2 * n1 - i - j + 2), 2 * n - i - j)?;
        }
        for j in n1 + 1..=n {
            let m = n1 - i + 1;
            acc = acc * tri(qe(m), j - i)?;
            acc = acc * tri(a.clone() * qe(m), 2 * n - i - j)?;
        }
    }
    for i in n1 + 1..=n {
        for j in i + 1..=n {
            acc = acc * tri(q.clone(), j - i)? * tri(a.clone(), 2 * n - i - j)?;
        }
    }
    Ok(acc)
}

/// ⟨E_ρ₁,E_ρ₁⟩/c_{ρ₁ρ₁} in its raw, unsimplified arrangement.
pub fn norm_chi1_raw<T: Analytic>(
    p: &ParamSet<T>,
    n0: usize,
    n1: usize,
    ctx: &PrecisionCtx,
) -> Result<T> {
    let (n, n1i) = ((n0 + n1) as i64, n1 as i64);
    let q = &p.q;
    let qp = Qp { q, ctx };
    let tp = |e: i64| p.t.powi(e);
    let qe = |e: i64| q.powi(e);
    let a = &p.big_a;
    let a12 = p.a[0].clone() * p.a[1].clone();
    let a34 = p.a[2].clone() * p.a[3].clone();
    let one = T::one;
    let pairs = |x: T| -> Result<T> {
        let mut d = one();
        for r in 0..4 {
            for s in r + 1..4 {
                d = d * qp.inf(p.a[r].clone() * p.a[s].clone() * x.clone())?;
            }
        }
        Ok(d)
    };
    let mut acc = poincare_w1(p, n1);
    for i in 1..=n1i {
        let m = n1i - i + 1;
        let e = n - i;
        acc = acc
            * qp.inf(a.clone() * qe(2 * m - 1) * tp(4 * e))?
            * qp.inf(a.clone() * qe(2 * m) * tp(4 * e))?
            / (qp.inf(qe(m) * tp(2 * e))? * qp.inf(a.clone() * qe(m) * tp(2 * e))?);
        acc = acc * (one() - a34.clone() * qe(m) * tp(2 * e))
            / ((one() - a12.clone() * qe(m - 1) * tp(2 * e)) * pairs(qe(m) * tp(2 * e))?);
    }
    for i in n1i + 1..=n {
        let e = n - i;
        let x = a.clone() * tp(4 * e);
        acc = acc * qp.inf(x.clone())? * qp.inf(x)? * (one() - a34.clone() * tp(2 * e))
            / (qp.inf(q.clone() * tp(2 * e))? * qp.inf(a.clone() * tp(2 * e))? * pairs(tp(2 * e))?);
    }
    for i in 1..=n1i {
        for j in i + 1..=n1i {
            let d = j - i;
            acc = acc * qp.inf(qe(d) * tp(2 * d))? * qp.inf(qe(d + 1) * tp(2 * d))?
                / (qp.inf(qe(d + 1) * tp(2 * (d + 1)))? * qp.inf(qe(d) * tp(2 * (d - 1)))?);
            let s = 2 * n1i - i - j;
            let k = 2 * n - i - j;
            acc = acc
                * qp.inf(a.clone() * qe(s + 1) * tp(2 * k))?
                * qp.inf(a.clone() * qe(s + 2) * tp(2 * k))?
                / (qp.inf(a.clone() * qe(s + 2) * tp(2 * (k + 1)))?
                    * qp.inf(a.clone() * qe(s + 1) * tp(2 * (k - 1)))?);
        }
        for j in n1i + 1..=n {
            let m = n1i - i + 1;
            let d = j - i;
            acc = acc * qp.inf(qe(m) * tp(2 * d))?.powi(2)
                / (qp.inf(qe(m) * tp(2 * (d + 1)))? * qp.inf(qe(m) * tp(2 * (d - 1)))?);
            let k = 2 * n - i - j;
            let x = a.clone() * qe(m);
            acc = acc * qp.inf(x.clone() * tp(2 * k))?.powi(2)
                / (qp.inf(x.clone() * tp(2 * (k + 1)))? * qp.inf(x * tp(2 * (k - 1)))?);
        }
    }
    for i in n1i + 1..=n {
        for j in i + 1..=n {
            let d = j - i;
            let k = 2 * n - i - j;
            acc = acc * qp.inf(q.clone() * tp(2 * d))?.powi(2) * qp.inf(a.clone() * tp(2 * k))?.powi(2)
                / (qp.inf(q.clone() * tp(2 * (d + 1)))?
                    * qp.inf(q.clone() * tp(2 * (d - 1)))?
                    * qp.inf(a.clone() * tp(2 * (k + 1)))?
                    * qp.inf(a.clone() * tp(2 * (k - 1)))?);
        }
    }
    Ok(acc)
}

/// F(a₁,…,a₄) in the (−a₃a₄)^{−n₁} arrangement.
pub fn chi1_f_first<T: Scalar>(p: &ParamSet<T>, n0: usize, n1: usize) -> T {
    let (n, n1i) = ((n0 + n1) as i64, n1 as i64);
    let tp = |e: i64| p.t.powi(e);
    let qe = |e: i64| p.q.powi(e);
    let a12 = p.a[0].clone() * p.a[1].clone();
    let a34 = p.a[2].clone() * p.a[3].clone();
    let one = T::one;
    let mut acc = (-a34.clone()).powi(-n1i);
    for i in 1..=n1i {
        acc = acc
            * (one() - a34.clone() * tp(2 * (i - 1)))
            * (one() - a34.clone() * qe(n1i - i + 1) * tp(2 * (n - i)))
            / (one() - a12.clone() * qe(n1i - i) * tp(2 * (n - i)));
    }
    for i in 1..=n0 as i64 {
        acc = acc * (one() - a34.clone() * tp(2 * (i - 1)));
    }
    acc
}

/// F(a₁,…,a₄) with the denominators −a₃a₄ + Aq^{i−1}t^{2(n₀+i−1)}.
pub fn chi1_f<T: Scalar>(p: &ParamSet<T>, n0: usize, n1: usize) -> T {
    let n0i = n0 as i64;
    let tp = |e: i64| p.t.powi(e);
    let qe = |e: i64| p.q.powi(e);
    let a34 = p.a[2].clone() * p.a[3].clone();
    let one = T::one;
    let mut acc = one();
    for i in 1..=n1 as i64 {
        acc = acc
            * (one() - a34.clone() * tp(2 * (i - 1)))
            * (one() - a34.clone() * qe(i) * tp(2 * (n0i + i - 1)))
            / (-a34.clone() + p.big_a.clone() * qe(i - 1) * tp(2 * (n0i + i - 1)));
    }
    for i in 1..=n0i {
        acc = acc * (one() - a34.clone() * tp(2 * (i - 1)));
    }
    acc
}

/// G(a₁,…,a₄), the infinite-product part of ⟨χ₁,χ₁⟩.
pub fn chi1_g<T: Analytic>(
    p: &ParamSet<T>,
    n0: usize,
    n1: usize,
    ctx: &PrecisionCtx,
) -> Result<T> {
    let (n0i, n1i) = (n0 as i64, n1 as i64);
    let n = n0i + n1i;
    let q = &p.q;
    let qp = Qp { q, ctx };
    let tp = |e: i64| p.t.powi(e);
    let qe = |e: i64| q.powi(e);
    let a = &p.big_a;
    let t2 = tp(2);
    let one = T::one;
    let pairs = |x: T| -> Result<T> {
        let mut d = one();
        for r in 0..4 {
            for s in r + 1..4 {
                d = d * qp.inf(p.a[r].clone() * p.a[s].clone() * x.clone())?;
            }
        }
        Ok(d)
    };
    let mut acc = tp(-2 * n1i * (n1i - 1))
        * (qp.inf(q.clone() * t2.clone())? / qp.inf(q.clone())?).powi(n);
    for i in 1..=n0i {
        acc = acc / qp.inf(q.clone() * tp(2 * i))?;
        acc = acc * qp.inf(a.clone() * tp(2 * (n0i + i - 2)))? / pairs(tp(2 * (i - 1)))?;
    }
    for i in 1..=n1i {
        acc = acc * (one() - tp(2 * i))
            / ((one() - t2.clone()) * qp.inf(qe(i) * tp(2 * (n0i + i)))?);
        acc = acc
            / (qp.inf(a.clone() * qe(i) * tp(2 * (n0i + i - 2)))?
                * pairs(qe(i) * tp(2 * (n0i + i - 1)))?);
    }
    for i in 1..=2 * n1i {
        acc = acc * qp.inf(a.clone() * qe(i) * tp(2 * (2 * n0i + i - 2)))?;
    }
    Ok(acc)
}

/// ⟨χ₁,χ₁⟩ = F·G.
pub fn norm_chi1_formula<T: Analytic>(
    p: &ParamSet<T>,
    n0: usize,
    n1: usize,
    ctx: &PrecisionCtx,
) -> Result<T> {
    Ok(chi1_f(p, n0, n1) * chi1_g(p, n0, n1, ctx)?)
}

/// ⟨χ₁,χ₁⟩ in the simplified closed form with the first arrangement of F.
pub fn norm_chi1_simplified<T: Analytic>(
    p: &ParamSet<T>,
    n0: usize,
    n1: usize,
    ctx: &PrecisionCtx,
) -> Result<T> {
    Ok(chi1_f_first(p, n0, n1) * chi1_g(p, n0, n1, ctx)?)
}

/// ⟨E_ρ₁,E_ρ₁⟩ / c_{ρ₁ρ₁} from the explicit norm and the closed form of c.
pub fn norm_chi1_via_rho1<T: Analytic>(
    p: &ParamSet<T>,
    n0: usize,
    n1: usize,
    ctx: &PrecisionCtx,
) -> Result<T> {
    Ok(norm_rho1_explicit(p, n0, n1, ctx)? / c_rho1_formula(p, n0, n1))
}

/// Residual |⟨T_if,g⟩ − ⟨f,T_i⁻¹g⟩| together with the combined quadrature
/// error estimate.
pub fn adjointness_residual<T: Real>(
    f: &FunctionSpec<T>,
    g: &FunctionSpec<T>,
    i: usize,
    d: &DensityEval<T>,
    quad: &Quadrature,
) -> Result<(f64, f64)> {
    let lhs = pair(&f.then_t(i), g, d, quad)?;
    let rhs = pair(f, &g.then_t_inv(i), d, quad)?;
    let r = (lhs.value - rhs.value).magnitude();
    Ok((r, lhs.error_estimate + rhs.error_estimate))
}
