//! Weight bookkeeping and residue arithmetic.
//!
//! All positions are 1-based, matching the usual indexing of weights
//! `λ = (λ_1, …, λ_n)`. A [`BranchingPair`] fixes `(n, p, λ, μ)` with `μ`
//! interlacing `λ`; every residue function below is a pure function of it.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of positions, kept sorted.
pub type IndexSet = BTreeSet<usize>;

/// `(i..j)`: the integers strictly between `i` and `j`.
pub fn open_interval(i: usize, j: usize) -> IndexSet {
    ((i + 1)..j).collect()
}

/// `[i..j)`.
pub fn half_open(i: usize, j: usize) -> IndexSet {
    (i..j).collect()
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the prime field `Z/pZ`, stored by its canonical representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Residue {
    value: u64,
    p: u64,
}

impl Residue {
    pub fn new(value: i128, p: u64) -> Self {
        let value = value.rem_euclid(p as i128) as u64;
        Residue { value, p }
    }

    pub fn zero(p: u64) -> Self {
        Residue { value: 0, p }
    }

    pub fn one(p: u64) -> Self {
        Residue { value: 1 % p, p }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl std::ops::Mul for Residue {
    type Output = Residue;

    fn mul(self, rhs: Residue) -> Residue {
        debug_assert_eq!(self.p, rhs.p);
        Residue {
            value: self.value * rhs.value % self.p,
            p: self.p,
        }
    }
}

impl std::ops::Add for Residue {
    type Output = Residue;

    fn add(self, rhs: Residue) -> Residue {
        debug_assert_eq!(self.p, rhs.p);
        Residue {
            value: (self.value + rhs.value) % self.p,
            p: self.p,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `res_p(i, j) = (i - j) + pZ`.
pub fn residue(i: i64, j: i64, p: u64) -> Residue {
    Residue::new(i as i128 - j as i128, p)
}

/// `λ_i ≥ μ_i ≥ λ_{i+1}` for all `i < n`.
pub fn interlaces(lambda: &[i64], mu: &[i64]) -> Result<bool> {
    if lambda.is_empty() || mu.len() + 1 != lambda.len() {
        return Err(Error::input(format!(
            "expected |lambda| = |mu| + 1, got {} and {}",
            lambda.len(),
            mu.len()
        )));
    }
    Ok(mu
        .iter()
        .enumerate()
        .all(|(s, &m)| lambda[s] >= m && m >= lambda[s + 1]))
}

pub fn is_non_increasing(w: &[i64]) -> bool {
    w.windows(2).all(|ab| ab[0] >= ab[1])
}

/// The context `(n, p, λ, μ)` with `μ ⟵ λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BranchingPair {
    n: usize,
    p: u64,
    lambda: Vec<i64>,
    mu: Vec<i64>,
}

impl BranchingPair {
    pub fn new(p: u64, lambda: Vec<i64>, mu: Vec<i64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::input(format!("{p} is not prime")));
        }
        if lambda.len() < 2 {
            return Err(Error::input("lambda must have at least two parts"));
        }
        if !is_non_increasing(&lambda) {
            return Err(Error::input(format!(
                "lambda {lambda:?} is not non-increasing"
            )));
        }
        if !is_non_increasing(&mu) {
            return Err(Error::input(format!("mu {mu:?} is not non-increasing")));
        }
        if !interlaces(&lambda, &mu)? {
            return Err(Error::input(format!(
                "mu {mu:?} does not interlace lambda {lambda:?}"
            )));
        }
        Ok(BranchingPair {
            n: lambda.len(),
            p,
            lambda,
            mu,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    /// `λ_q`, 1-based.
    pub fn lam_at(&self, q: usize) -> i64 {
        self.lambda[q - 1]
    }

    /// `μ_q`, 1-based.
    pub fn mu_at(&self, q: usize) -> i64 {
        self.mu[q - 1]
    }

    /// The same pair with `c` added to every part of `λ` and `μ`.
    pub fn shifted(&self, c: i64) -> BranchingPair {
        BranchingPair {
            n: self.n,
            p: self.p,
            lambda: self.lambda.iter().map(|x| x + c).collect(),
            mu: self.mu.iter().map(|x| x + c).collect(),
        }
    }

    /// Same `(n, p, λ)` with a different `μ`.
    pub fn with_mu(&self, mu: Vec<i64>) -> Result<BranchingPair> {
        BranchingPair::new(self.p, self.lambda.clone(), mu)
    }

    /// `a_i = Σ_{s ≤ i} (λ_s − μ_s)` for `i = 1..n-1`.
    pub fn a_values(&self) -> Vec<i64> {
        self.mu
            .iter()
            .zip(&self.lambda)
            .scan(0, |acc, (m, l)| {
                *acc += l - m;
                Some(*acc)
            })
            .collect()
    }

    fn check_k(&self, t: usize, k: usize) -> Result<()> {
        let lo = if t + 1 == self.n { self.n } else { 1 };
        if k < lo || k > self.n {
            return Err(Error::domain(format!(
                "k = {k} outside [{lo}..{}] for t = {t}, n = {}",
                self.n, self.n
            )));
        }
        Ok(())
    }

    /// `B^{μ,λ,k}(i, t)`: the value of `y_{t+1} − x_i` under the substitution
    /// with split point `k`.
    pub fn b_residue(&self, i: usize, t: usize, k: usize) -> Result<Residue> {
        if !(1 <= i && i <= t && t < self.n) {
            return Err(Error::domain(format!(
                "B(i, t) needs 1 <= i <= t < n, got i = {i}, t = {t}, n = {}",
                self.n
            )));
        }
        self.check_k(t, k)?;
        let next = if k <= t {
            self.mu_at(t + 1)
        } else {
            self.lam_at(t + 1)
        };
        Ok(self.raw_b(i, t, next))
    }

    fn raw_b(&self, i: usize, t: usize, next: i64) -> Residue {
        Residue::new(
            t as i128 - i as i128 + self.mu_at(i) as i128 - next as i128,
            self.p,
        )
    }

    /// `B^{μ,λ}(i, t) = B^{μ,λ,n}(i, t)`.
    pub fn b_lambda(&self, i: usize, t: usize) -> Result<Residue> {
        self.b_residue(i, t, self.n)
    }

    /// `B^μ(i, t) = t − i + μ_i − μ_{t+1}`; needs `t + 1 ≤ n − 1`.
    pub fn b_mu(&self, i: usize, t: usize) -> Result<Residue> {
        if !(1 <= i && i <= t && t + 1 < self.n) {
            return Err(Error::domain(format!(
                "B^mu(i, t) needs 1 <= i <= t < n - 1, got i = {i}, t = {t}, n = {}",
                self.n
            )));
        }
        Ok(self.raw_b(i, t, self.mu_at(t + 1)))
    }

    /// `C^μ(i, a) = a − i + μ_i − μ_a` for `1 ≤ i < a < n`.
    pub fn c_residue(&self, i: usize, a: usize) -> Result<Residue> {
        if !(1 <= i && i < a && a < self.n) {
            return Err(Error::domain(format!(
                "C(i, a) needs 1 <= i < a < n, got i = {i}, a = {a}, n = {}",
                self.n
            )));
        }
        Ok(Residue::new(
            a as i128 - i as i128 + self.mu_at(i) as i128 - self.mu_at(a) as i128,
            self.p,
        ))
    }

    /// `𝔅^{μ,λ,k}(i, j) = {a ∈ [i..j) : B^{μ,λ,k}(i, a) = 0}`.
    pub fn b_set(&self, i: usize, j: usize, k: usize) -> Result<IndexSet> {
        let mut out = IndexSet::new();
        for a in i..j {
            if self.b_residue(i, a, k)?.is_zero() {
                out.insert(a);
            }
        }
        Ok(out)
    }

    /// `𝔅^{μ,λ}(i, j)`.
    pub fn b_lambda_set(&self, i: usize, j: usize) -> Result<IndexSet> {
        self.b_set(i, j, self.n)
    }

    /// `𝔅^μ(i, j)`; defined for `j ≤ n − 1`.
    pub fn b_mu_set(&self, i: usize, j: usize) -> Result<IndexSet> {
        if j + 1 > self.n {
            return Err(Error::domain(format!(
                "B^mu set needs j <= n - 1, got j = {j}, n = {}",
                self.n
            )));
        }
        let mut out = IndexSet::new();
        for a in i..j {
            if self.b_mu(i, a)?.is_zero() {
                out.insert(a);
            }
        }
        Ok(out)
    }

    /// `𝔠^μ(i, j) = {a : i < a < j, C^μ(i, a) = 0}`.
    pub fn c_set(&self, i: usize, j: usize) -> Result<IndexSet> {
        if j > self.n || i == 0 {
            return Err(Error::domain(format!(
                "C set needs 1 <= i and j <= n, got i = {i}, j = {j}, n = {}",
                self.n
            )));
        }
        let mut out = IndexSet::new();
        for a in (i + 1)..j {
            if self.c_residue(i, a)?.is_zero() {
                out.insert(a);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for BranchingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={} lambda=({}) mu=({})",
            self.p,
            join(&self.lambda),
            join(&self.mu)
        )
    }
}

/// Comma-separated rendering of a slice.
pub fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
