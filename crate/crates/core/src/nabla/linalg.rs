//! Row echelon forms and left kernels over `F_p` for sparse vectors.

use std::collections::BTreeMap;

use super::modvec::{inv_mod, SparseVec};

/// Rows with distinct leading labels, each normalized to leading coefficient 1.
#[derive(Debug, Clone)]
pub struct Echelon<K: Ord> {
    p: u64,
    rows: Vec<SparseVec<K>>,
    pivots: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new(p: u64) -> Self {
        Echelon {
            p,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<K>] {
        &self.rows
    }

    /// Remainder of `v` after eliminating every pivot label.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut rest = v.clone();
        let mut out = SparseVec::zero(self.p);
        while let Some((k, c)) = rest.pop_leading() {
            match self.pivots.get(&k) {
                Some(&idx) => {
                    let mut tail = self.rows[idx].clone();
                    tail.pop_leading();
                    rest.add_scaled(&tail, self.p - c);
                }
                None => out.add_term(k, c),
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let r = self.reduce(v);
        let Some((k, c)) = r.leading() else {
            return false;
        };
        let k = k.clone();
        let row = r.scaled(inv_mod(c, self.p));
        self.pivots.insert(k, self.rows.len());
        self.rows.push(row);
        true
    }
}

/// A basis of `{c : Σ_i c_i rows[i] = 0}`.
pub fn left_kernel<K: Ord + Clone>(p: u64, rows: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    let mut kept: Vec<(SparseVec<K>, SparseVec<usize>)> = Vec::new();
    let mut pivots: BTreeMap<K, usize> = BTreeMap::new();
    let mut kernel = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut rest = row.clone();
        let mut combo = SparseVec::unit(p, idx);
        let mut out = SparseVec::zero(p);
        while let Some((k, c)) = rest.pop_leading() {
            match pivots.get(&k) {
                Some(&at) => {
                    let (prow, pcombo) = &kept[at];
                    let mut tail = prow.clone();
                    tail.pop_leading();
                    rest.add_scaled(&tail, p - c);
                    combo.add_scaled(pcombo, p - c);
                }
                None => out.add_term(k, c),
            }
        }
        match out.leading() {
            None => kernel.push(combo),
            Some((k, c)) => {
                let k = k.clone();
                let s = inv_mod(c, p);
                pivots.insert(k, kept.len());
                kept.push((out.scaled(s), combo.scaled(s)));
            }
        }
    }
    kernel
}
