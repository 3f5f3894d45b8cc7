//! Lowering sequences `x = ((i_1,k_1,j_1,A_1), …)`, the three transition
//! rules between them, and the vanishing test built on their closure.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{eval_k, subsets_of_open};
use crate::weights::{BranchingPair, IndexSet, Residue};

/// One factor `E(k, j−1) S_{i,j}(A)` of `Φ(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Quad {
    pub i: usize,
    pub k: usize,
    pub j: usize,
    pub a: IndexSet,
}

impl Quad {
    pub fn new(i: usize, k: usize, j: usize, a: impl IntoIterator<Item = usize>) -> Self {
        Quad {
            i,
            k,
            j,
            a: a.into_iter().collect(),
        }
    }

    /// The placeholder `S_{i,i}(∅) = 1`.
    pub fn is_trivial(&self) -> bool {
        self.i == self.j
    }

    fn is_valid(&self, n: usize) -> bool {
        if self.i == 0 || self.j > n || self.i > self.k || self.k > self.j {
            return false;
        }
        if self.is_trivial() {
            return self.a.is_empty();
        }
        if self.j == n && self.k != n {
            return false;
        }
        self.a.iter().all(|&a| self.i < a && a < self.j)
    }

    /// `{a ∈ A : lo < a < hi}`.
    fn a_between(&self, lo: usize, hi: usize) -> IndexSet {
        self.a.range(lo + 1..hi.max(lo + 1)).copied().collect()
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "({},{},{},{{{}}})", self.i, self.k, self.j, a.join(","))
    }
}

/// An element of `V_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SeqX(pub Vec<Quad>);

impl SeqX {
    pub fn single(q: Quad) -> Self {
        SeqX(vec![q])
    }

    pub fn quads(&self) -> &[Quad] {
        &self.0
    }

    pub fn validate(&self, n: usize) -> bool {
        !self.0.is_empty()
            && self.0.iter().all(|q| q.is_valid(n))
            && self.0.windows(2).all(|w| w[0].j < w[1].i)
    }

    fn require_valid(&self, n: usize) -> Result<()> {
        if self.validate(n) {
            Ok(())
        } else {
            Err(Error::input(format!(
                "{self} is not a valid sequence for n = {n}"
            )))
        }
    }

    /// Flat integer form `[i, k, j, |A|, A…]` per quad; injective on sequences.
    pub fn encode(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for q in &self.0 {
            out.extend([q.i, q.k, q.j, q.a.len()]);
            out.extend(q.a.iter().copied());
        }
        out
    }

    pub fn concat(&self, other: &SeqX) -> SeqX {
        SeqX(self.0.iter().chain(&other.0).cloned().collect())
    }

    fn replace(&self, pos: usize, with: Vec<Quad>) -> SeqX {
        let mut out = self.0[..pos].to_vec();
        out.extend(with);
        out.extend_from_slice(&self.0[pos + 1..]);
        SeqX(out)
    }

    /// `Σ_t (k_t − i_t)`; each transition lowers it by one.
    pub fn height(&self) -> usize {
        self.0.iter().map(|q| q.k - q.i).sum()
    }
}

impl fmt::Display for SeqX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (pos, q) in self.0.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    LowerK,
    RaiseI,
    Split,
}

impl Rule {
    pub fn id(self) -> u8 {
        match self {
            Rule::LowerK => 1,
            Rule::RaiseI => 2,
            Rule::Split => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub l: usize,
    pub rule: Rule,
    pub target: SeqX,
}

/// Every `x →^l x'`, by quad position and then by `l`.
pub fn transitions(x: &SeqX, n: usize) -> Result<Vec<Transition>> {
    x.require_valid(n)?;
    let mut out = Vec::new();
    for (pos, q) in x.0.iter().enumerate() {
        let mut here = Vec::new();
        let (i, k, j) = (q.i, q.k, q.j);
        if i < k && k < n {
            here.push(Transition {
                l: k - 1,
                rule: Rule::LowerK,
                target: x.replace(
                    pos,
                    vec![Quad {
                        k: k - 1,
                        ..q.clone()
                    }],
                ),
            });
        }
        if i + 1 < k && !q.a.contains(&(i + 1)) {
            here.push(Transition {
                l: i,
                rule: Rule::RaiseI,
                target: x.replace(
                    pos,
                    vec![Quad {
                        i: i + 1,
                        ..q.clone()
                    }],
                ),
            });
        }
        for l in i + 1..k.saturating_sub(1) {
            if q.a.contains(&l) && !q.a.contains(&(l + 1)) {
                let left = Quad {
                    i,
                    k: l,
                    j: l,
                    a: q.a_between(i, l),
                };
                let right = Quad {
                    i: l + 1,
                    k,
                    j,
                    a: q.a_between(l + 1, j),
                };
                here.push(Transition {
                    l,
                    rule: Rule::Split,
                    target: x.replace(pos, vec![left, right]),
                });
            }
        }
        here.sort_by_key(|t| t.l);
        out.extend(here);
    }
    Ok(out)
}

/// One recorded step of a closure search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub parent: SeqX,
    pub l: usize,
    pub rule: Rule,
    pub child: SeqX,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} --{}/r{}--> {}",
            self.parent,
            self.l,
            self.rule.id(),
            self.child
        )
    }
}

/// Everything that follows from `x`, in breadth-first discovery order.
pub fn closure(x: &SeqX, n: usize) -> Result<Vec<SeqX>> {
    closure_traced(x, n).map(|(seen, _)| seen)
}

/// Like [`closure`], also returning every transition examined.
pub fn closure_traced(x: &SeqX, n: usize) -> Result<(Vec<SeqX>, Vec<TraceStep>)> {
    x.require_valid(n)?;
    let mut seen = vec![x.clone()];
    let mut keys: HashSet<Vec<usize>> = HashSet::from([x.encode()]);
    let mut queue = VecDeque::from([x.clone()]);
    let mut trace = Vec::new();
    while let Some(cur) = queue.pop_front() {
        for t in transitions(&cur, n)? {
            if t.target.height() + 1 != cur.height() {
                return Err(Error::internal(format!(
                    "transition {cur} -> {} does not descend",
                    t.target
                )));
            }
            trace.push(TraceStep {
                parent: cur.clone(),
                l: t.l,
                rule: t.rule,
                child: t.target.clone(),
            });
            if keys.insert(t.target.encode()) {
                seen.push(t.target.clone());
                queue.push_back(t.target);
            }
        }
    }
    Ok((seen, trace))
}

/// `K^{μ,λ}(x)`, the product of `K^{μ,λ,k_t}_{i_t,j_t}(A_t)`.
pub fn k_of_seq(pair: &BranchingPair, x: &SeqX) -> Result<Residue> {
    x.require_valid(pair.n())?;
    let mut acc = Residue::one(pair.p());
    for q in x.0.iter().filter(|q| !q.is_trivial()) {
        acc = acc * eval_k(pair, q.i, q.j, &q.a, q.k)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// `Φ(x) f_{μ,λ} = 0` decided through the closure of `x`.
pub fn sequence_vanishes(pair: &BranchingPair, x: &SeqX) -> Result<bool> {
    for y in closure(x, pair.n())? {
        if !k_of_seq(pair, &y)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Weight `μ − Σ_t (ε_{i_t} − ε_{k_t})` of `Φ(x) f_{μ,λ}`, with `ε_n = 0`.
pub fn phi_weight(pair: &BranchingPair, x: &SeqX) -> Result<Vec<i64>> {
    let n = pair.n();
    x.require_valid(n)?;
    let mut nu = pair.mu().to_vec();
    for q in &x.0 {
        if q.i < n {
            nu[q.i - 1] -= 1;
        }
        if q.k < n {
            nu[q.k - 1] += 1;
        }
    }
    Ok(nu)
}

/// All of `V_n` without trivial quads, in lexicographic order.
pub fn enumerate_vn(n: usize) -> Vec<SeqX> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    extend_from(n, 1, &mut prefix, &mut out);
    out.sort();
    out
}

fn extend_from(n: usize, start: usize, prefix: &mut Vec<Quad>, out: &mut Vec<SeqX>) {
    for i in start..n {
        for j in i + 1..=n {
            let ks: Vec<usize> = if j == n { vec![n] } else { (i..=j).collect() };
            for a in subsets_of_open(i, j) {
                for &k in &ks {
                    prefix.push(Quad {
                        i,
                        k,
                        j,
                        a: a.clone(),
                    });
                    out.push(SeqX(prefix.clone()));
                    extend_from(n, j + 1, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
}
