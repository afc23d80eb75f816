//! Sparse multivariate Laurent polynomials.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::Scalar;
use crate::weights::SignedPerm;

/// Exponent vector in ℤⁿ.
pub type Exponent = Vec<i64>;

/// Finite sum Σ c_μ x^μ with nonzero coefficients, ordered by exponent.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<S> {
    nvars: usize,
    terms: BTreeMap<Exponent, S>,
}

impl<S: Scalar> LaurentPoly<S> {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, S::one())
    }

    /// c · x^μ.
    pub fn monomial(mu: Exponent, c: S) -> Self {
        let mut p = Self::zero(mu.len());
        p.add_term(mu, c);
        p
    }

    /// x_i (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut mu = vec![0; nvars];
        mu[i] = 1;
        Self::monomial(mu, S::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, S)>) -> Self {
        let mut p = Self::zero(nvars);
        for (mu, c) in terms {
            p.add_term(mu, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &S)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Exponent, S> {
        self.terms
    }

    pub fn coeff(&self, mu: &[i64]) -> S {
        self.terms.get(mu).cloned().unwrap_or_else(S::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    /// Adds c·x^μ in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, mu: Exponent, c: S) {
        assert_eq!(mu.len(), self.nvars, "exponent length");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mu) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "nvars mismatch");
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "nvars mismatch");
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = Self::zero(self.nvars);
        for (mu, v) in &self.terms {
            out.add_term(mu.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "nvars mismatch");
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mu = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(mu, c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Multiplies by x^μ.
    pub fn shift(&self, mu: &[i64]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(mu).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Coefficient at the zero exponent.
    pub fn constant_term(&self) -> S {
        self.coeff(&vec![0; self.nvars])
    }

    /// f(x⁻¹).
    pub fn invert_vars(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().map(|a| -a).collect(), c.clone()))
            .collect();
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// (w f)(x) with w(x^μ) = x^{wμ}.
    pub fn act_weyl(&self, w: &SignedPerm) -> Self {
        assert_eq!(w.n(), self.nvars, "group rank");
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(w.apply(e), c.clone());
        }
        out
    }

    /// Action of s_i, i = 0..n: s₀ sends x₁ to q/x₁, s_i swaps x_i and
    /// x_{i+1}, s_n inverts x_n.
    pub fn apply_si(&self, i: usize, q: &S) -> Self {
        let n = self.nvars;
        assert!(i <= n, "generator index out of range");
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let mut c2 = c.clone();
            if i == 0 {
                c2 = c2 * q.powi(e[0]);
                e2[0] = -e[0];
            } else if i == n {
                e2[n - 1] = -e[n - 1];
            } else {
                e2.swap(i - 1, i);
            }
            out.add_term(e2, c2);
        }
        out
    }

    /// Largest absolute coefficient magnitude (as f64).
    pub fn max_magnitude(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.magnitude())
            .fold(0.0, f64::max)
    }

    /// g with f = (1 − c·x^β)·g; errors if the division leaves a remainder.
    pub fn div_binomial(&self, c: &S, beta: &[i64]) -> Result<Self> {
        let p = beta
            .iter()
            .position(|&b| b != 0)
            .expect("binomial direction must be nonzero");
        let mut lines: BTreeMap<Exponent, BTreeMap<i64, S>> = BTreeMap::new();
        for (e, v) in &self.terms {
            let m = e[p].div_euclid(beta[p]);
            let base: Exponent = e.iter().zip(beta).map(|(a, b)| a - m * b).collect();
            lines.entry(base).or_default().insert(m, v.clone());
        }
        let scale = self.max_magnitude().max(f64::MIN_POSITIVE);
        let mut out = Self::zero(self.nvars);
        for (base, line) in lines {
            let lo = *line.keys().next().unwrap();
            let hi = *line.keys().next_back().unwrap();
            let mut g = S::zero();
            for m in lo..=hi {
                let f_m = line.get(&m).cloned().unwrap_or_else(S::zero);
                g = f_m + c.clone() * g;
                if m == hi {
                    if !g.is_negligible(scale * 1024.0) {
                        return Err(Error::InexactDivision("div_binomial"));
                    }
                } else {
                    let e: Exponent = base.iter().zip(beta).map(|(a, b)| a + m * b).collect();
                    out.add_term(e, g.clone());
                }
            }
        }
        Ok(out)
    }

    /// Maps coefficients into another scalar type.
    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LaurentPoly<T> {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Evaluates at a point, with x^μ computed by integer powers.
    pub fn eval<T: Scalar>(&self, x: &[T], conv: impl Fn(&S) -> T) -> T {
        assert_eq!(x.len(), self.nvars, "point dimension");
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut m = conv(c);
            for (xi, &a) in x.iter().zip(e) {
                if a != 0 {
                    m = m * xi.powi(a);
                }
            }
            acc = acc + m;
        }
        acc
    }

    /// One term per line: `c : e1 e2 … en`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (e, c) in &self.terms {
            s.push_str(&c.to_text());
            s.push_str(" :");
            for a in e {
                s.push(' ');
                s.push_str(&a.to_string());
            }
            s.push('\n');
        }
        s
    }

    /// Parses the format written by [`to_text`](Self::to_text).
    pub fn parse_text(
        nvars: usize,
        text: &str,
        parse_coeff: impl Fn(&str) -> Option<S>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (c, e) = line
                .rsplit_once(':')
                .ok_or_else(|| Error::Parse(format!("line {}: missing ':'", ln + 1)))?;
            let c = parse_coeff(c.trim())
                .ok_or_else(|| Error::Parse(format!("line {}: bad coefficient", ln + 1)))?;
            let e: Exponent = e
                .split_whitespace()
                .map(|t| t.parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|err| Error::Parse(format!("line {}: {err}", ln + 1)))?;
            if e.len() != nvars {
                return Err(Error::Parse(format!(
                    "line {}: expected {nvars} exponents, got {}",
                    ln + 1,
                    e.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl<S: Scalar> fmt::Debug for LaurentPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})x^{:?}", c.to_text(), e)?;
        }
        Ok(())
    }
}
