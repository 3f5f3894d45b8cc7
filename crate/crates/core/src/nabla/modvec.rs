//! Sparse vectors over the prime field, keyed by any ordered basis label.

use std::collections::BTreeMap;

/// `a^{-1}` in `F_p`, for `a ≠ 0`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "zero has no inverse");
    pow_mod(a % p, p - 2, p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Reduce a signed integer into `[0, p)`.
pub fn reduce(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseVec<K: Ord> {
    p: u64,
    terms: BTreeMap<K, u64>,
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn zero(p: u64) -> Self {
        SparseVec {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(p: u64, k: K) -> Self {
        let mut v = Self::zero(p);
        v.add_term(k, 1);
        v
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn get(&self, k: &K) -> u64 {
        self.terms.get(k).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&K, u64)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn leading(&self) -> Option<(&K, u64)> {
        self.terms.iter().next_back().map(|(k, &c)| (k, c))
    }

    pub fn pop_leading(&mut self) -> Option<(K, u64)> {
        self.terms.pop_last()
    }

    pub fn add_term(&mut self, k: K, c: u64) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let p = self.p;
        let slot = self.terms.entry(k.clone()).or_insert(0);
        *slot = (*slot + c) % p;
        if *slot == 0 {
            self.terms.remove(&k);
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &SparseVec<K>, c: u64) {
        assert_eq!(self.p, other.p, "vectors over different fields");
        let c = c % self.p;
        if c == 0 {
            return;
        }
        for (k, &x) in &other.terms {
            self.add_term(k.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: u64) -> SparseVec<K> {
        let mut out = Self::zero(self.p);
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> SparseVec<K> {
        self.scaled(self.p - 1)
    }

    pub fn sub(&self, other: &SparseVec<K>) -> SparseVec<K> {
        let mut out = self.clone();
        out.add_scaled(other, self.p - 1);
        out
    }

    /// Whether `self = ±other`.
    pub fn equals_up_to_sign(&self, other: &SparseVec<K>) -> bool {
        self == other || *self == other.neg()
    }
}
