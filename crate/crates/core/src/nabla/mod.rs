//! An explicit model of the costandard module `∇_n(λ)` over `F_p`.
//!
//! Vectors are polynomials in the matrix coordinates `c_{u,v}`; `∇_n(λ)` is
//! the span of the bideterminants whose left tableau is the canonical one.
//! The divided powers `X_{a,b}^{(m)}` act by moving `m` factors from column
//! `b` to column `a`, so a monomial's weight is its vector of column sums.

pub mod identities;
pub mod linalg;
pub mod modvec;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::criteria::{Class, Classification};
use crate::error::{Error, Result};
use crate::poly::{eval_h_at_weight, subsets_of_open};
use crate::seq_graph::SeqX;
use crate::weights::{BranchingPair, IndexSet};

use linalg::{left_kernel, Echelon};
use modvec::SparseVec;

/// Exponent matrix, row-major, entry `u*n + v` for `c_{u+1,v+1}`.
pub type Mono = Vec<u8>;

pub type ModVector = SparseVec<Mono>;

/// Adds `c·(1,…,1)` to `λ` and `μ` with `c = max(0, −λ_n)`; returns the shifted pair and `c`.
pub fn normalize_polynomial(pair: &BranchingPair) -> (BranchingPair, i64) {
    let c = (-pair.lam_at(pair.n())).max(0);
    (pair.shifted(c), c)
}

fn binomial_table(max: usize) -> Vec<Vec<u64>> {
    let mut t = vec![vec![0u64; max + 1]; max + 1];
    for a in 0..=max {
        t[a][0] = 1;
        for b in 1..=a {
            t[a][b] = t[a - 1][b - 1] + t[a - 1][b];
        }
    }
    t
}

/// Semistandard tableaux of shape `lambda` with entries in `1..=n`, counted by content.
pub fn kostka_numbers(lambda: &[usize], n: usize) -> BTreeMap<Vec<u32>, usize> {
    let shape: Vec<usize> = lambda.iter().copied().filter(|&x| x > 0).collect();
    let mut out = BTreeMap::new();
    let mut rows: Vec<Vec<usize>> = shape.iter().map(|&len| Vec::with_capacity(len)).collect();
    fill_tableau(&shape, n, 0, &mut rows, &mut out);
    out
}

fn fill_tableau(
    shape: &[usize],
    n: usize,
    row: usize,
    rows: &mut Vec<Vec<usize>>,
    out: &mut BTreeMap<Vec<u32>, usize>,
) {
    if row == shape.len() {
        let mut content = vec![0u32; n];
        for r in rows.iter() {
            for &x in r {
                content[x - 1] += 1;
            }
        }
        *out.entry(content).or_insert(0) += 1;
        return;
    }
    let col = rows[row].len();
    if col == shape[row] {
        fill_tableau(shape, n, row + 1, rows, out);
        return;
    }
    let left = if col > 0 { rows[row][col - 1] } else { 1 };
    let above = if row > 0 { rows[row - 1][col] + 1 } else { 1 };
    for x in left.max(above)..=n {
        rows[row].push(x);
        fill_tableau(shape, n, row, rows, out);
        rows[row].pop();
    }
}

/// `∇_n(λ)` over `F_p`, split into weight spaces.
#[derive(Debug, Clone)]
pub struct CostandardModel {
    p: u64,
    n: usize,
    lambda: Vec<i64>,
    shift: i64,
    degree: usize,
    spaces: BTreeMap<Vec<u32>, Echelon<Mono>>,
    binom: Vec<Vec<u64>>,
}

impl CostandardModel {
    /// Builds the model for `pair.lambda()`, normalized to `λ_n ≥ 0`.
    pub fn build(p: u64, lambda: &[i64]) -> Result<Self> {
        let n = lambda.len();
        if !(2..=8).contains(&n) {
            return Err(Error::domain(format!(
                "model supports 2 <= n <= 8, got n = {n}"
            )));
        }
        let probe = BranchingPair::new(p, lambda.to_vec(), lambda[..n - 1].to_vec())?;
        let (norm, shift) = normalize_polynomial(&probe);
        let lam: Vec<usize> = norm.lambda().iter().map(|&x| x as usize).collect();
        let degree: usize = lam.iter().sum();
        if degree > 255 {
            return Err(Error::domain("degree too large for the model"));
        }
        let heights: Vec<usize> = (1..=lam[0])
            .map(|c| lam.iter().filter(|&&x| x >= c).count())
            .collect();

        let mut spaces: BTreeMap<Vec<u32>, Echelon<Mono>> = BTreeMap::new();
        let mut columns: Vec<Vec<usize>> = Vec::new();
        for_each_column_choice(n, &heights, 0, &mut columns, &mut |cols| {
            let v = bideterminant(p, n, cols);
            let mut content = vec![0u32; n];
            for col in cols {
                for &x in col {
                    content[x - 1] += 1;
                }
            }
            spaces
                .entry(content)
                .or_insert_with(|| Echelon::new(p))
                .insert(&v);
        });
        spaces.retain(|_, e| e.dim() > 0);

        let model = CostandardModel {
            p,
            n,
            lambda: norm.lambda().to_vec(),
            shift,
            degree,
            spaces,
            binom: binomial_table(degree.max(1)),
        };
        let expected = kostka_numbers(&lam, n);
        let got: BTreeMap<Vec<u32>, usize> = model
            .spaces
            .iter()
            .map(|(w, e)| (w.clone(), e.dim()))
            .collect();
        if got != expected {
            return Err(Error::internal(format!(
                "weight multiplicities {got:?} differ from tableau counts {expected:?} for λ = {lambda:?}"
            )));
        }
        Ok(model)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The normalized `λ`.
    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    /// Amount added to every coordinate of the original weights.
    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.spaces.values().map(Echelon::dim).sum()
    }

    pub fn weight_dim(&self, weight: &[u32]) -> usize {
        self.spaces.get(weight).map_or(0, Echelon::dim)
    }

    pub fn weights(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.spaces.keys()
    }

    pub fn basis(&self, weight: &[u32]) -> &[ModVector] {
        self.spaces.get(weight).map_or(&[], |e| e.rows())
    }

    /// Every basis vector of every weight space.
    pub fn all_basis_vectors(&self) -> impl Iterator<Item = &ModVector> {
        self.spaces.values().flat_map(|e| e.rows().iter())
    }

    pub fn contains(&self, v: &ModVector) -> bool {
        if v.is_zero() {
            return true;
        }
        match self.weight_of(v) {
            Some(w) => self.spaces.get(&w).is_some_and(|e| e.contains(v)),
            None => false,
        }
    }

    /// Column sums of the monomials of `v`, if they all agree.
    pub fn weight_of(&self, v: &ModVector) -> Option<Vec<u32>> {
        let mut w: Option<Vec<u32>> = None;
        for (m, _) in v.iter() {
            let here = column_sums(self.n, m);
            match &w {
                None => w = Some(here),
                Some(prev) if *prev != here => return None,
                _ => {}
            }
        }
        w
    }

    /// `X_{to,from}^{(m)}`: move `m` factors from column `from` to column `to` (1-based).
    pub fn act_x(&self, to: usize, from: usize, m: usize, v: &ModVector) -> ModVector {
        let n = self.n;
        assert!(to >= 1 && to <= n && from >= 1 && from <= n && to != from);
        if m == 0 {
            return v.clone();
        }
        let (to, from) = (to - 1, from - 1);
        let mut out = SparseVec::zero(self.p);
        let mut take = vec![0usize; n];
        for (mono, c) in v.iter() {
            let avail: Vec<usize> = (0..n).map(|u| mono[u * n + from] as usize).collect();
            if avail.iter().sum::<usize>() < m {
                continue;
            }
            self.distribute(&avail, m, 0, &mut take, &mut |take| {
                let mut coef = c;
                let mut next = mono.clone();
                for u in 0..n {
                    if take[u] > 0 {
                        coef = coef * (self.binom[avail[u]][take[u]] % self.p) % self.p;
                        next[u * n + from] -= take[u] as u8;
                        next[u * n + to] += take[u] as u8;
                    }
                }
                out.add_term(next, coef);
            });
        }
        out
    }

    fn distribute(
        &self,
        avail: &[usize],
        left: usize,
        u: usize,
        take: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if u == avail.len() {
            if left == 0 {
                f(take);
            }
            return;
        }
        let rest: usize = avail[u + 1..].iter().sum();
        let lo = left.saturating_sub(rest);
        for t in lo..=left.min(avail[u]) {
            take[u] = t;
            self.distribute(avail, left - t, u + 1, take, f);
        }
        take[u] = 0;
    }

    /// `E_l^{(m)}`.
    pub fn act_e(&self, l: usize, m: usize, v: &ModVector) -> ModVector {
        assert!(l >= 1 && l < self.n, "E_{l} needs 1 <= l < n");
        self.act_x(l, l + 1, m, v)
    }

    /// `F_{a,b}` for `a < b`; `F_{a,a} = 1`.
    pub fn act_f(&self, a: usize, b: usize, v: &ModVector) -> ModVector {
        if a == b {
            return v.clone();
        }
        assert!(a < b && b <= self.n, "F_{{{a},{b}}} needs a < b <= n");
        self.act_x(b, a, 1, v)
    }

    /// `F_{i,j}^B = F_{a_0,a_1} ⋯ F_{a_k,a_{k+1}}` with `B ∪ {i,j} = {a_0 < … < a_{k+1}}`.
    pub fn act_f_chain(&self, i: usize, j: usize, b: &IndexSet, v: &ModVector) -> ModVector {
        if i == j {
            return v.clone();
        }
        let mut pts: Vec<usize> = vec![i];
        pts.extend(b.iter().copied());
        pts.push(j);
        let mut out = v.clone();
        for w in pts.windows(2).rev() {
            out = self.act_f(w[0], w[1], &out);
        }
        out
    }

    /// `E(k, j−1) = E_k ⋯ E_{j−1}`, rightmost first.
    pub fn act_e_word(&self, k: usize, j: usize, v: &ModVector) -> ModVector {
        let mut out = v.clone();
        for l in (k..j).rev() {
            out = self.act_e(l, 1, &out);
        }
        out
    }

    /// `E_1^{(c_1)} ⋯ E_{n−1}^{(c_{n−1})}`, rightmost first.
    pub fn act_e_powers(&self, powers: &[usize], v: &ModVector) -> ModVector {
        let mut out = v.clone();
        for (idx, &c) in powers.iter().enumerate().rev() {
            out = self.act_e(idx + 1, c, &out);
            if out.is_zero() {
                break;
            }
        }
        out
    }

    /// `S_{i,j}(A) v` for a weight vector `v`; `H` acts through the weight of `v`.
    pub fn apply_s(&self, i: usize, j: usize, a: &IndexSet, v: &ModVector) -> Result<ModVector> {
        if i == j {
            return Ok(v.clone());
        }
        if v.is_zero() {
            return Ok(v.clone());
        }
        let w = self
            .weight_of(v)
            .ok_or_else(|| Error::input("S applied to a vector with mixed weights"))?;
        let w: Vec<i64> = w.iter().map(|&x| x as i64).collect();
        let mut out = SparseVec::zero(self.p);
        for b in subsets_of_open(i, j) {
            let h = eval_h_at_weight(self.p, &w, i, j, a, &b)?;
            if h.is_zero() {
                continue;
            }
            out.add_scaled(&self.act_f_chain(i, j, &b, v), h.value());
        }
        Ok(out)
    }

    /// `Φ(x) v`: each quad's `S` and then its `E`-word, last quad first.
    pub fn apply_phi(&self, x: &SeqX, v: &ModVector) -> Result<ModVector> {
        if !x.validate(self.n) {
            return Err(Error::input(format!(
                "{x} is not a valid sequence for n = {}",
                self.n
            )));
        }
        let mut out = v.clone();
        for q in x.quads().iter().rev() {
            out = self.apply_s(q.i, q.j, &q.a, &out)?;
            out = self.act_e_word(q.k, q.j, &out);
            if out.is_zero() {
                break;
            }
        }
        Ok(out)
    }

    /// Whether `E_l^{(m)} v = 0` for all `1 ≤ l ≤ n−2` and `m ≥ 1`.
    pub fn is_high_weight(&self, v: &ModVector) -> bool {
        let Some(w) = self.weight_of(v) else {
            return v.is_zero();
        };
        (1..self.n.saturating_sub(1))
            .all(|l| (1..=w[l] as usize).all(|m| self.act_e(l, m, v).is_zero()))
    }

    /// Weight-`(μ, r−|μ|)` vectors killed by every `E_l^{(m)}`, `l ≤ n−2`;
    /// `mu` is in original (unshifted) coordinates.
    pub fn high_weight_space(&self, mu: &[i64]) -> Result<Vec<ModVector>> {
        if mu.len() + 1 != self.n {
            return Err(Error::input(format!("μ must have {} entries", self.n - 1)));
        }
        let shifted: Vec<i64> = mu.iter().map(|&x| x + self.shift).collect();
        let total: i64 = shifted.iter().sum();
        if shifted.iter().any(|&x| x < 0) || total > self.degree as i64 {
            return Ok(Vec::new());
        }
        let mut weight: Vec<u32> = shifted.iter().map(|&x| x as u32).collect();
        weight.push((self.degree as i64 - total) as u32);
        let basis = self.basis(&weight);
        let images: Vec<SparseVec<(usize, usize, Mono)>> = basis
            .iter()
            .map(|b| {
                let mut img = SparseVec::zero(self.p);
                for (l, &wl) in weight.iter().enumerate().take(self.n - 1).skip(1) {
                    for m in 1..=wl as usize {
                        for (mono, c) in self.act_e(l, m, b).iter() {
                            img.add_term((l, m, mono.clone()), c);
                        }
                    }
                }
                img
            })
            .collect();
        Ok(left_kernel(self.p, &images)
            .into_iter()
            .map(|combo| {
                let mut v = SparseVec::zero(self.p);
                for (&idx, c) in combo.iter() {
                    v.add_scaled(&basis[idx], c);
                }
                v
            })
            .collect())
    }

    /// `f_{μ,λ}`, fixed up to a scalar.
    pub fn find_f_mu(&self, mu: &[i64]) -> Result<ModVector> {
        let mut space = self.high_weight_space(mu)?;
        if space.len() != 1 {
            return Err(Error::internal(format!(
                "high weight space of weight {mu:?} in ∇({:?}) has dimension {}",
                self.lambda,
                space.len()
            )));
        }
        Ok(space.pop().unwrap())
    }

    /// Zero, high weight, or neither, for `S_{i,j}(A) f`, in original coordinates.
    pub fn classify_vector(&self, v: &ModVector) -> Classification {
        if v.is_zero() {
            return Classification {
                class: Class::Zero,
                nu: None,
                d: None,
                thetas: Vec::new(),
            };
        }
        if !self.is_high_weight(v) {
            return Classification {
                class: Class::NonzeroNotHighWeight,
                nu: None,
                d: None,
                thetas: Vec::new(),
            };
        }
        let w = self.weight_of(v).expect("homogeneous");
        Classification {
            class: Class::NonzeroHighWeight,
            nu: Some(
                w[..self.n - 1]
                    .iter()
                    .map(|&x| x as i64 - self.shift)
                    .collect(),
            ),
            d: None,
            thetas: Vec::new(),
        }
    }

    /// Ground-truth classification of `S_{i,j}(A) f_{μ,λ}`.
    pub fn oracle_classify(
        &self,
        mu: &[i64],
        i: usize,
        j: usize,
        a: &IndexSet,
    ) -> Result<Classification> {
        let f = self.find_f_mu(mu)?;
        Ok(self.classify_vector(&self.apply_s(i, j, a, &f)?))
    }

    /// Line-oriented text form of the echelon basis, one vector per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "p={} n={} lambda={:?} dim={}",
            self.p,
            self.n,
            self.lambda,
            self.dim()
        );
        for (w, e) in &self.spaces {
            for (idx, row) in e.rows().iter().enumerate() {
                let _ = write!(out, "{w:?}#{idx}:");
                for (m, c) in row.iter().rev() {
                    let _ = write!(out, " {c}*{}", mono_text(self.n, m));
                }
                out.push('\n');
            }
        }
        out
    }
}

fn column_sums(n: usize, m: &Mono) -> Vec<u32> {
    (0..n)
        .map(|v| (0..n).map(|u| m[u * n + v] as u32).sum())
        .collect()
}

fn mono_text(n: usize, m: &Mono) -> String {
    let mut parts = Vec::new();
    for u in 0..n {
        for v in 0..n {
            match m[u * n + v] {
                0 => {}
                1 => parts.push(format!("c{}{}", u + 1, v + 1)),
                e => parts.push(format!("c{}{}^{e}", u + 1, v + 1)),
            }
        }
    }
    parts.join("*")
}

/// Every tuple of column-strict columns with the given heights, listing
/// equal-height columns in non-decreasing order (the factors commute).
fn for_each_column_choice(
    n: usize,
    heights: &[usize],
    c: usize,
    chosen: &mut Vec<Vec<usize>>,
    f: &mut impl FnMut(&[Vec<usize>]),
) {
    if c == heights.len() {
        f(chosen);
        return;
    }
    let h = heights[c];
    let floor = if c > 0 && heights[c - 1] == h {
        Some(chosen[c - 1].clone())
    } else {
        None
    };
    for col in increasing_tuples(n, h) {
        if floor.as_ref().is_some_and(|prev| col < *prev) {
            continue;
        }
        chosen.push(col);
        for_each_column_choice(n, heights, c + 1, chosen, f);
        chosen.pop();
    }
}

fn increasing_tuples(n: usize, h: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(n: usize, h: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == h {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            go(n, h, x + 1, cur, out);
            cur.pop();
        }
    }
    go(n, h, 1, &mut cur, &mut out);
    out
}

fn permutations(h: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..h).collect();
    fn go(k: usize, perm: &mut Vec<usize>, even: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        if k == perm.len() {
            out.push((perm.clone(), even));
            return;
        }
        for s in k..perm.len() {
            perm.swap(k, s);
            go(k + 1, perm, if s == k { even } else { !even }, out);
            perm.swap(k, s);
        }
    }
    go(0, &mut perm, true, &mut out);
    out
}

/// `∏_c det(c_{r, T_c[s]})_{r,s ≤ h_c}` expanded into monomials.
fn bideterminant(p: u64, n: usize, cols: &[Vec<usize>]) -> ModVector {
    let mut acc: ModVector = SparseVec::unit(p, vec![0u8; n * n]);
    for col in cols {
        let mut next = SparseVec::zero(p);
        let perms = permutations(col.len());
        for (mono, c) in acc.iter() {
            for (perm, even) in &perms {
                let mut m = mono.clone();
                for (r, &s) in perm.iter().enumerate() {
                    m[r * n + col[s] - 1] += 1;
                }
                next.add_term(m, if *even { c } else { (p - c) % p });
            }
        }
        acc = next;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> IndexSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn dimensions() {
        assert_eq!(CostandardModel::build(2, &[1, 0]).unwrap().dim(), 2);
        assert_eq!(CostandardModel::build(3, &[1, 1, 0]).unwrap().dim(), 3);
        assert_eq!(CostandardModel::build(2, &[2, 1, 0]).unwrap().dim(), 8);
        assert_eq!(CostandardModel::build(3, &[2, 1, 0]).unwrap().dim(), 8);
        assert_eq!(CostandardModel::build(2, &[3, 2, 1, 0]).unwrap().dim(), 64);
    }

    #[test]
    fn kostka_totals_match_hook_content() {
        // hook-content formula, computed independently
        let cases: [(&[usize], usize); 4] =
            [(&[2, 1], 3), (&[3, 2, 1], 4), (&[2, 2], 3), (&[4], 4)];
        for (shape, n) in cases {
            let total: usize = kostka_numbers(shape, n).values().sum();
            let mut num = 1u64;
            let mut den = 1u64;
            for (r, &len) in shape.iter().enumerate() {
                for c in 0..len {
                    num *= (n + c - r) as u64;
                    let arm = len - c - 1;
                    let leg = shape.iter().skip(r + 1).filter(|&&l| l > c).count();
                    den *= (arm + leg + 1) as u64;
                }
            }
            assert_eq!(total as u64, num / den, "{shape:?}");
        }
    }

    #[test]
    fn normalization() {
        let pr = BranchingPair::new(3, vec![1, 0, -2], vec![1, -1]).unwrap();
        let (norm, c) = normalize_polynomial(&pr);
        assert_eq!(c, 2);
        assert_eq!(norm.lambda(), &[3, 2, 0]);
        assert_eq!(norm.mu(), &[3, 1]);
        assert_eq!(
            norm.b_residue(1, 1, 3).unwrap(),
            pr.b_residue(1, 1, 3).unwrap()
        );
        let pr = BranchingPair::new(3, vec![2, 1, 0], vec![1, 1]).unwrap();
        assert_eq!(normalize_polynomial(&pr).1, 0);
        let model = CostandardModel::build(3, &[1, 0, -2]).unwrap();
        assert_eq!(model.lambda(), &[3, 2, 0]);
        assert_eq!(model.dim(), 15);
    }

    #[test]
    fn operator_basics() {
        let model = CostandardModel::build(3, &[3, 1, 0]).unwrap();
        for v in model.all_basis_vectors() {
            let w = model.weight_of(v).unwrap();
            // E^2 = 2 E^(2)
            let twice = model.act_e(1, 1, &model.act_e(1, 1, v));
            assert_eq!(twice, model.act_e(1, 2, v).scaled(2));
            // F_{1,3} lowers column 1 and raises column 3
            let fv = model.act_f(1, 3, v);
            if !fv.is_zero() {
                let fw = model.weight_of(&fv).unwrap();
                assert_eq!(fw, vec![w[0] - 1, w[1], w[2] + 1]);
                assert!(model.contains(&fv));
            }
            if (w[1] as usize) < 1 {
                assert!(model.act_e(1, 1, v).is_zero());
            }
        }
    }

    #[test]
    fn chain_order() {
        let model = CostandardModel::build(5, &[2, 1, 0, 0]).unwrap();
        let f = model.find_f_mu(&[2, 1, 0]).unwrap();
        let direct = model.act_f(1, 2, &model.act_f(2, 4, &f));
        assert_eq!(model.act_f_chain(1, 4, &set(&[2]), &f), direct);
        assert_eq!(
            model.act_f_chain(1, 4, &set(&[]), &f),
            model.act_f(1, 4, &f)
        );
        assert_eq!(model.act_f_chain(2, 2, &set(&[]), &f), f);
    }

    #[test]
    fn high_weight_spaces() {
        let model = CostandardModel::build(2, &[2, 1, 0]).unwrap();
        assert_eq!(model.high_weight_space(&[1, 1]).unwrap().len(), 1);
        assert_eq!(model.high_weight_space(&[0, 0]).unwrap().len(), 0);
        let top = model.find_f_mu(&[2, 1]).unwrap();
        assert!(model.act_e(2, 1, &top).is_zero());
        assert!(model.is_high_weight(&top));
    }

    #[test]
    fn oracle_examples() {
        let model = CostandardModel::build(2, &[2, 1, 0]).unwrap();
        let c = model.oracle_classify(&[1, 1], 1, 3, &set(&[])).unwrap();
        assert_eq!(c.class, Class::NonzeroNotHighWeight);
        let c = model.oracle_classify(&[1, 1], 1, 3, &set(&[2])).unwrap();
        assert_eq!(c.class, Class::Zero);

        let model = CostandardModel::build(3, &[4, 2, 0]).unwrap();
        let c = model.oracle_classify(&[4, 1], 1, 2, &set(&[])).unwrap();
        assert_eq!(c.class, Class::NonzeroHighWeight);
        assert_eq!(c.nu, Some(vec![3, 2]));

        let model = CostandardModel::build(2, &[3, 2, 1, 0]).unwrap();
        let c = model.oracle_classify(&[3, 2, 0], 1, 3, &set(&[2])).unwrap();
        assert_eq!(c.class, Class::NonzeroHighWeight);
        assert_eq!(c.nu, Some(vec![2, 2, 1]));
    }

    #[test]
    fn single_lowering_fails_when_mu_gap_is_nonzero() {
        // μ_1 − μ_2 = 1 ≢ 0 mod 3: F_{1,2} f is not high weight
        let model = CostandardModel::build(3, &[4, 2, 0]).unwrap();
        let f = model.find_f_mu(&[3, 2]).unwrap();
        let v = model.act_f(1, 2, &f);
        assert!(!v.is_zero());
        assert!(!model.is_high_weight(&v));
    }

    #[test]
    fn s_with_empty_a_is_plain_f() {
        let model = CostandardModel::build(3, &[3, 2, 1, 0]).unwrap();
        let f = model.find_f_mu(&[3, 1, 1]).unwrap();
        for (i, j) in [(1, 3), (1, 4), (2, 4)] {
            assert_eq!(
                model.apply_s(i, j, &set(&[]), &f).unwrap(),
                model.act_f(i, j, &f)
            );
        }
    }

    #[test]
    fn dump_is_stable() {
        let model = CostandardModel::build(2, &[1, 0]).unwrap();
        assert_eq!(
            model.dump(),
            "p=2 n=2 lambda=[1, 0] dim=2\n[0, 1]#0: 1*c12\n[1, 0]#0: 1*c11\n"
        );
    }
}
