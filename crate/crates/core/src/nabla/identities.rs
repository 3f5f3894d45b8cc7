//! Operator identities checked on the model: commutation of `E_l^{(m)}`
//! past `F^A_{i,j}`, the top-vector scalar formulas, the single-step
//! transition law, and the splitting law for concatenated sequences.

use super::modvec::reduce;
use super::{CostandardModel, ModVector};
use crate::error::Result;
use crate::poly::subsets_of_open;
use crate::report::CheckReport;
use crate::seq_graph::{k_of_seq, transitions, SeqX};
use crate::weights::{BranchingPair, IndexSet};

fn part(a: &IndexSet, lo: usize, hi: usize) -> IndexSet {
    a.iter().copied().filter(|&x| lo < x && x < hi).collect()
}

/// `E_l^{(m)} F^A_{i,j} = F^A_{i,j} E_l^{(m)} + correction`, on every basis
/// vector, for all `i < j`, `A`, `l` and `1 ≤ m ≤ max_m`.
pub fn check_commutation(model: &CostandardModel, max_m: usize) -> CheckReport {
    let n = model.n();
    let mut report = CheckReport::default();
    let basis: Vec<&ModVector> = model.all_basis_vectors().collect();
    for i in 1..n {
        for j in i + 1..=n {
            for a in subsets_of_open(i, j) {
                let mut ends = a.clone();
                ends.insert(i);
                let mut starts = a.clone();
                starts.insert(j);
                for l in 1..n {
                    let low = ends.contains(&l);
                    let high = starts.contains(&(l + 1));
                    for m in 1..=max_m {
                        for v in &basis {
                            let lhs = model.act_e(l, m, &model.act_f_chain(i, j, &a, v));
                            let mut rhs = model.act_f_chain(i, j, &a, &model.act_e(l, m, v));
                            if low || high {
                                let inner = model.act_f_chain(
                                    l + 1,
                                    j,
                                    &part(&a, l + 1, j),
                                    &model.act_e(l, m - 1, v),
                                );
                                let scalar = match (low, high) {
                                    (true, false) => model.p() - 1,
                                    (false, true) => 1,
                                    _ => match model.weight_of(&inner) {
                                        Some(w) => reduce(
                                            w[l - 1] as i64 - w[l] as i64 + 1 - m as i64,
                                            model.p(),
                                        ),
                                        None => 0,
                                    },
                                };
                                let corr =
                                    model.act_f_chain(i, l, &part(&a, i, l), &inner.scaled(scalar));
                                rhs.add_scaled(&corr, 1);
                            }
                            report.record(lhs == rhs, "commutation", || {
                                format!(
                                    "i={i} j={j} A={a:?} l={l} m={m} lambda={:?}",
                                    model.lambda()
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    report
}

/// `f_λ = E_1^{(a_1)} ⋯ E_{n−1}^{(a_{n−1})} f_{μ,λ}`, or `None` when that is zero.
pub fn top_vector(
    model: &CostandardModel,
    pair: &BranchingPair,
    f: &ModVector,
) -> Option<ModVector> {
    let a: Vec<usize> = pair.a_values().iter().map(|&x| x as usize).collect();
    let top = model.act_e_powers(&a, f);
    (!top.is_zero()).then_some(top)
}

fn raised_powers(pair: &BranchingPair, intervals: &[(usize, usize)]) -> Vec<usize> {
    pair.a_values()
        .iter()
        .enumerate()
        .map(|(idx, &a)| {
            let t = idx + 1;
            a as usize + usize::from(intervals.iter().any(|&(lo, hi)| lo <= t && t < hi))
        })
        .collect()
}

/// The raising word with exponents `a_t + δ_{t∈G}` sends `Φ(x) f_{μ,λ}` to
/// `K^{μ,λ}(x) f_λ`, for every `x` in `xs`.
pub fn check_top_scalar(
    model: &CostandardModel,
    pair: &BranchingPair,
    xs: &[SeqX],
) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let f = model.find_f_mu(pair.mu())?;
    let Some(top) = top_vector(model, pair, &f) else {
        report.skipped.push(format!("{pair}: raising word kills f"));
        return Ok(report);
    };
    for x in xs {
        let g: Vec<(usize, usize)> = x.quads().iter().map(|q| (q.i, q.k)).collect();
        let lhs = model.act_e_powers(&raised_powers(pair, &g), &model.apply_phi(x, &f)?);
        let rhs = top.scaled(k_of_seq(pair, x)?.value());
        report.record(lhs == rhs, "top_scalar", || format!("{x} at {pair}"));
    }
    Ok(report)
}

/// Chains `d_1 < d'_1 ≤ d_2 < d'_2 ≤ … ≤ n` with at most `max_r` links.
pub fn chains(n: usize, max_r: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(
        n: usize,
        start: usize,
        left: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for d in start..n {
            for d2 in d + 1..=n {
                cur.push((d, d2));
                go(n, d2, left - 1, cur, out);
                cur.pop();
            }
        }
    }
    go(n, 1, max_r, &mut cur, &mut out);
    out
}

/// The raising word sends `F_{d_1,d'_1} ⋯ F_{d_r,d'_r} f_{μ,λ}` to
/// `∏_q (μ_{d_q} − λ_{d_q+1}) f_λ`.
pub fn check_chain_products(
    model: &CostandardModel,
    pair: &BranchingPair,
    max_r: usize,
) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let f = model.find_f_mu(pair.mu())?;
    let Some(top) = top_vector(model, pair, &f) else {
        report.skipped.push(format!("{pair}: raising word kills f"));
        return Ok(report);
    };
    for chain in chains(pair.n(), max_r) {
        let mut v = f.clone();
        for &(d, d2) in chain.iter().rev() {
            v = model.act_f(d, d2, &v);
        }
        let lhs = model.act_e_powers(&raised_powers(pair, &chain), &v);
        let scalar = chain.iter().fold(1u64, |acc, &(d, _)| {
            acc * reduce(pair.mu_at(d) - pair.lam_at(d + 1), pair.p()) % pair.p()
        });
        report.record(lhs == top.scaled(scalar), "chain_product", || {
            format!("{chain:?} at {pair}")
        });
    }
    Ok(report)
}

/// `x →^l x'` implies `E_l Φ(x) f = ±Φ(x') f`.
pub fn check_transitions(
    model: &CostandardModel,
    pair: &BranchingPair,
    xs: &[SeqX],
) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let f = model.find_f_mu(pair.mu())?;
    for x in xs {
        let here = model.apply_phi(x, &f)?;
        for t in transitions(x, pair.n())? {
            let lhs = model.act_e(t.l, 1, &here);
            let rhs = model.apply_phi(&t.target, &f)?;
            report.record(lhs.equals_up_to_sign(&rhs), "transition", || {
                format!("E_{} on {x} differs from ±{} at {pair}", t.l, t.target)
            });
        }
    }
    Ok(report)
}

/// `Φ(x_1 x_2) f = 0` iff `Φ(x_1) f = 0` or `Φ(x_2) f = 0`, for two-quad `x`.
pub fn check_split_law(
    model: &CostandardModel,
    pair: &BranchingPair,
    xs: &[SeqX],
) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let f = model.find_f_mu(pair.mu())?;
    for x in xs.iter().filter(|x| x.quads().len() == 2) {
        let x1 = SeqX(vec![x.quads()[0].clone()]);
        let x2 = SeqX(vec![x.quads()[1].clone()]);
        let whole = model.apply_phi(x, &f)?.is_zero();
        let parts = model.apply_phi(&x1, &f)?.is_zero() || model.apply_phi(&x2, &f)?.is_zero();
        report.record(whole == parts, "split_law", || format!("{x} at {pair}"));
    }
    Ok(report)
}
