//! Weight-lattice combinatorics of type C_n, the parameter set, and the
//! signed-permutation groups W and W₁.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::scalars::{Analytic, Scalar};

/// λ ∈ ℤⁿ in the ε-basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Weight(coords.into())
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// ρ₁ = (0^{n₀}, n₁, n₁ − 1, …, 1).
    pub fn rho1(n0: usize, n1: usize) -> Self {
        let mut v = vec![0; n0];
        v.extend((1..=n1 as i64).rev());
        Weight(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.windows(2).all(|w| w[0] >= w[1])
    }
}

impl Deref for Weight {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Dominant representative λ⁺: absolute values sorted decreasingly.
pub fn dominant(lambda: &[i64]) -> Weight {
    let mut v: Vec<i64> = lambda.iter().map(|c| c.abs()).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Weight(v)
}

/// μ ≤ λ: λ − μ lies in the cone spanned by ε_i − ε_{i+1} and ε_n, i.e.
/// all prefix sums of λ − μ are nonnegative.
pub fn leq_dominance(mu: &[i64], lambda: &[i64]) -> bool {
    assert_eq!(mu.len(), lambda.len(), "weights of different rank");
    let mut s = 0i64;
    for (m, l) in mu.iter().zip(lambda) {
        s += l - m;
        if s < 0 {
            return false;
        }
    }
    true
}

/// μ ⪯ λ: μ⁺ < λ⁺, or μ⁺ = λ⁺ and μ ≤ λ.
pub fn preceq(mu: &[i64], lambda: &[i64]) -> bool {
    let mp = dominant(mu);
    let lp = dominant(lambda);
    if mp == lp {
        leq_dominance(mu, lambda)
    } else {
        leq_dominance(&mp, &lp)
    }
}

fn dominant_below(lp: &[i64]) -> Vec<Vec<i64>> {
    let n = lp.len();
    let top = lp.first().copied().unwrap_or(0);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(
        cur: &mut Vec<i64>,
        n: usize,
        cap: i64,
        lp: &[i64],
        acc: i64,
        out: &mut Vec<Vec<i64>>,
    ) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let idx = cur.len();
        for v in 0..=cap {
            let acc2 = acc + lp[idx] - v;
            if acc2 < 0 {
                break;
            }
            cur.push(v);
            rec(cur, n, v, lp, acc2, out);
            cur.pop();
        }
    }
    rec(&mut cur, n, top, lp, 0, &mut out);
    out
}

/// Signed permutations of a dominant weight (its W-orbit), sorted.
pub fn orbit(dom: &[i64]) -> Vec<Weight> {
    let mut perms: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut base = dom.to_vec();
    base.sort_unstable();
    // all distinct permutations via next_permutation
    loop {
        perms.insert(base.clone());
        if !next_permutation(&mut base) {
            break;
        }
    }
    let mut out = BTreeSet::new();
    for p in perms {
        let nz: Vec<usize> = (0..p.len()).filter(|&i| p[i] != 0).collect();
        for mask in 0u32..(1 << nz.len()) {
            let mut v = p.clone();
            for (b, &i) in nz.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    v[i] = -v[i];
                }
            }
            out.insert(Weight(v));
        }
    }
    out.into_iter().collect()
}

fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// {μ : μ ⪯ λ}, sorted lexicographically.
pub fn weights_below(lambda: &[i64]) -> Vec<Weight> {
    let lp = dominant(lambda);
    let mut out = BTreeSet::new();
    for mp in dominant_below(&lp) {
        let same = mp == lp.0;
        for mu in orbit(&mp) {
            if !same || leq_dominance(&mu, lambda) {
                out.insert(mu);
            }
        }
    }
    out.into_iter().collect()
}

fn eps(v: i64) -> i64 {
    if v >= 0 {
        1
    } else {
        -1
    }
}

/// (ρ⁽ᵐ⁾(λ), ρ⁽ˡ⁾(λ)) from the ε-sign sums over positive roots.
pub fn rho_vectors(lambda: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let n = lambda.len();
    let mut rm = vec![0i64; n];
    for i in 0..n {
        for j in i + 1..n {
            let a = eps(lambda[i] - lambda[j]);
            rm[i] += a;
            rm[j] -= a;
            let b = eps(lambda[i] + lambda[j]);
            rm[i] += b;
            rm[j] += b;
        }
    }
    let rl = lambda.iter().map(|&c| eps(c)).collect();
    (rm, rl)
}

/// γ_{λ,i} = (t₀tₙ)^{ρ⁽ˡ⁾ᵢ} t^{ρ⁽ᵐ⁾ᵢ} q^{λᵢ}.
pub fn gamma_vec<S: Scalar>(lambda: &[i64], p: &ParamSet<S>) -> Vec<S> {
    let (rm, rl) = rho_vectors(lambda);
    let t0tn = p.t0.clone() * p.tn.clone();
    (0..lambda.len())
        .map(|i| t0tn.powi(rl[i]) * p.t.powi(rm[i]) * p.q.powi(lambda[i]))
        .collect()
}

/// Koornwinder multiplicities with the derived Askey–Wilson parameters.
///
/// `q` is stored through its square root so that a₁, a₂ stay in the
/// scalar field: q = sqrt_q².
#[derive(Clone, Debug, PartialEq)]
pub struct ParamSet<S> {
    pub sqrt_q: S,
    pub q: S,
    pub t: S,
    pub k: Option<u32>,
    pub t0: S,
    pub t0v: S,
    pub tn: S,
    pub tnv: S,
    pub a: [S; 4],
    pub big_a: S,
}

impl<S: Scalar> ParamSet<S> {
    pub fn new(sqrt_q: S, t: S, t0: S, t0v: S, tn: S, tnv: S) -> Result<Self> {
        for (name, v) in [
            ("sqrt_q", &sqrt_q),
            ("t", &t),
            ("t0", &t0),
            ("t0v", &t0v),
            ("tn", &tn),
            ("tnv", &tnv),
        ] {
            if v.is_zero() {
                return Err(Error::InvalidParams(format!("{name} must be nonzero")));
            }
        }
        let q = sqrt_q.clone() * sqrt_q.clone();
        let a1 = t0.clone() * t0v.clone() * sqrt_q.clone();
        let a2 = -(t0.clone() * sqrt_q.clone() / t0v.clone());
        let a3 = tn.clone() * tnv.clone();
        let a4 = -(tn.clone() / tnv.clone());
        let big_a = a1.clone() * a2.clone() * a3.clone() * a4.clone();
        let check = q.clone() * t0.clone() * t0.clone() * tn.clone() * tn.clone();
        let scale = check.magnitude().max(1e-300);
        if !(big_a.clone() - check).is_negligible(scale * 16.0) {
            return Err(Error::InvalidParams("A != q t0^2 tn^2".into()));
        }
        Ok(ParamSet {
            sqrt_q,
            q,
            t,
            k: None,
            t0,
            t0v,
            tn,
            tnv,
            a: [a1, a2, a3, a4],
            big_a,
        })
    }

    /// Parameters with t = q^{k/2}.
    pub fn with_k(sqrt_q: S, k: u32, t0: S, t0v: S, tn: S, tnv: S) -> Result<Self> {
        let t = sqrt_q.powi(k as i64);
        let mut p = Self::new(sqrt_q, t, t0, t0v, tn, tnv)?;
        p.k = Some(k);
        Ok(p)
    }

    /// All of q, t and the four multiplicities inverted.
    pub fn inverted(&self) -> Self {
        let mut p = Self::new(
            self.sqrt_q.recip(),
            self.t.recip(),
            self.t0.recip(),
            self.t0v.recip(),
            self.tn.recip(),
            self.tnv.recip(),
        )
        .expect("inversion keeps parameters nonzero");
        p.k = self.k;
        p
    }

    /// Dual multiplicities t̃: t̃₀ = tₙ∨, t̃₀∨ = t₀∨, t̃ = t, t̃ₙ∨ = t₀, t̃ₙ = tₙ.
    pub fn dual(&self) -> Self {
        let mut p = Self::new(
            self.sqrt_q.clone(),
            self.t.clone(),
            self.tnv.clone(),
            self.t0v.clone(),
            self.tn.clone(),
            self.t0.clone(),
        )
        .expect("dual keeps parameters nonzero");
        p.k = self.k;
        p
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> ParamSet<T> {
        let mut p = ParamSet::new(
            f(&self.sqrt_q),
            f(&self.t),
            f(&self.t0),
            f(&self.t0v),
            f(&self.tn),
            f(&self.tnv),
        )
        .expect("mapped parameters");
        p.k = self.k;
        p
    }

    /// Multiplicity t_i of the generator T_i (i = 0..n).
    pub fn multiplicity(&self, i: usize, n: usize) -> S {
        if i == 0 {
            self.t0.clone()
        } else if i == n {
            self.tn.clone()
        } else {
            self.t.clone()
        }
    }

    /// Requirements of the torus pairing: 0 < q, t < 1 and |a_r| < 1.
    pub fn ensure_pairing(&self) -> Result<()> {
        let q = self.q.magnitude();
        let t = self.t.magnitude();
        if !(q > 0.0 && q < 1.0 && t > 0.0 && t < 1.0) {
            return Err(Error::InvalidParams(format!(
                "pairing needs 0 < q, t < 1 (q = {q}, t = {t})"
            )));
        }
        for (r, a) in self.a.iter().enumerate() {
            if !(a.magnitude() < 1.0) {
                return Err(Error::InvalidParams(format!(
                    "pairing needs |a{}| < 1, got {}",
                    r + 1,
                    a.magnitude()
                )));
            }
        }
        Ok(())
    }
}

impl<S: Analytic> ParamSet<S> {
    /// Recover multiplicities from (a₁, a₂, a₃, a₄) with a₁a₂ < 0, a₃a₄ < 0.
    pub fn from_askey_wilson(sqrt_q: S, t: S, a: [S; 4]) -> Result<Self> {
        let q = sqrt_q.clone() * sqrt_q.clone();
        let p12 = -(a[0].clone() * a[1].clone()) / q;
        let p34 = -(a[2].clone() * a[3].clone());
        let t0 = p12.sqrt();
        let tn = p34.sqrt();
        if t0.is_zero() || tn.is_zero() {
            return Err(Error::InvalidParams("a1 a2 and a3 a4 must be nonzero".into()));
        }
        let t0v = a[0].clone() / (t0.clone() * sqrt_q.clone());
        let tnv = a[2].clone() / tn.clone();
        let p = Self::new(sqrt_q, t, t0, t0v, tn, tnv)?;
        for r in 0..4 {
            let d = p.a[r].clone() - a[r].clone();
            if !d.is_negligible(a[r].magnitude().max(1e-300) * 64.0) {
                return Err(Error::InvalidParams(format!(
                    "a{} is not reachable from real multiplicities",
                    r + 1
                )));
            }
        }
        Ok(p)
    }
}

/// Signed permutation w with w(ε_j) = sign_j ε_{π(j)}, stored as
/// `img[j] = ±(π(j) + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    pub img: Vec<i64>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm {
            img: (1..=n as i64).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.img.len()
    }

    /// Simple reflection s_i for i in 1..=n (s_n negates the last coordinate).
    pub fn generator(n: usize, i: usize) -> Self {
        let mut g = Self::identity(n);
        if i == n {
            g.img[n - 1] = -g.img[n - 1];
        } else {
            g.img.swap(i - 1, i);
        }
        g
    }

    /// (self ∘ other)(ε_j) = self(other(ε_j)).
    pub fn compose(&self, other: &Self) -> Self {
        let img = other
            .img
            .iter()
            .map(|&o| {
                let k = (o.unsigned_abs() - 1) as usize;
                o.signum() * self.img[k]
            })
            .collect();
        SignedPerm { img }
    }

    /// w·λ for a vector in the ε-basis.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (j, &o) in self.img.iter().enumerate() {
            let k = (o.unsigned_abs() - 1) as usize;
            out[k] = o.signum() * v[j];
        }
        out
    }

    /// Number of positive roots supported on coordinates `from..n` sent to
    /// negative roots.
    pub fn inversions_from(&self, from: usize) -> usize {
        let n = self.n();
        let negative = |v: &[i64]| v.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0);
        let mut count = 0;
        let mut root = vec![0i64; n];
        for i in from..n {
            root[i] = 1;
            if negative(&self.apply(&root)) {
                count += 1;
            }
            for j in i + 1..n {
                for s in [-1, 1] {
                    root[j] = s;
                    if negative(&self.apply(&root)) {
                        count += 1;
                    }
                }
                root[j] = 0;
            }
            root[i] = 0;
        }
        count
    }
}

/// Element of a parabolic subgroup generated by s_first, …, s_n.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub perm: SignedPerm,
    /// Reduced word (i₁, …, i_r) with w = s_{i₁} ⋯ s_{i_r}.
    pub reduced_word: Vec<usize>,
    pub length: usize,
}

impl GroupElement {
    /// Generator multiplicities along the reduced word.
    pub fn multiplicity_word<S: Scalar>(&self, p: &ParamSet<S>) -> Vec<S> {
        let n = self.perm.n();
        self.reduced_word
            .iter()
            .map(|&i| p.multiplicity(i, n))
            .collect()
    }

    /// t_w = ∏ t_{i_k}.
    pub fn t_w<S: Scalar>(&self, p: &ParamSet<S>) -> S {
        self.multiplicity_word(p)
            .into_iter()
            .fold(S::one(), |a, b| a * b)
    }
}

/// Breadth-first enumeration of ⟨s_first, …, s_n⟩ acting on ℤⁿ. Elements
/// come out in nondecreasing length; each word is `[i] ++ word(parent)`.
pub fn enumerate_parabolic(n: usize, first: usize) -> Vec<GroupElement> {
    assert!(first >= 1 && first <= n, "generator range");
    let gens: Vec<(usize, SignedPerm)> = (first..=n)
        .map(|i| (i, SignedPerm::generator(n, i)))
        .collect();
    let id = SignedPerm::identity(n);
    let mut seen: HashMap<SignedPerm, usize> = HashMap::new();
    let mut out = vec![GroupElement {
        perm: id.clone(),
        reduced_word: vec![],
        length: 0,
    }];
    seen.insert(id, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        for (i, g) in &gens {
            let w = g.compose(&out[idx].perm);
            if seen.contains_key(&w) {
                continue;
            }
            let mut word = vec![*i];
            word.extend_from_slice(&out[idx].reduced_word);
            let length = out[idx].length + 1;
            seen.insert(w.clone(), out.len());
            out.push(GroupElement {
                perm: w,
                reduced_word: word,
                length,
            });
            queue.push_back(out.len() - 1);
        }
    }
    out
}

/// W₁ = ⟨s_{n₀+1}, …, s_n⟩, the signed permutations of the last n₁
/// coordinates.
pub fn enumerate_w1(n0: usize, n1: usize) -> Vec<GroupElement> {
    assert!(n1 >= 1, "W1 needs n1 >= 1");
    enumerate_parabolic(n0 + n1, n0 + 1)
}

/// The shortest w ∈ W with w·λ⁺ = λ.
pub fn min_coset_rep(lambda: &[i64]) -> GroupElement {
    let lp = dominant(lambda);
    enumerate_parabolic(lambda.len(), 1)
        .into_iter()
        .find(|w| w.perm.apply(&lp) == lambda)
        .expect("every weight lies in the orbit of its dominant representative")
}
