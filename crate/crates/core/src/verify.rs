//! Case grids and the cross-checks run over them: criteria against the
//! sequence graph and the explicit model, plus the symbolic, identity and
//! structural suites.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::{
    classify, components, enumerate_good_a, exists, lowering_vanishes, moving_exists_via_thetas,
    pi, pi_bar, raised_vanishes, Class,
};
use crate::error::{Error, Result};
use crate::nabla::identities::{
    check_chain_products, check_commutation, check_split_law, check_top_scalar, check_transitions,
};
use crate::nabla::CostandardModel;
use crate::poly::{h_poly, k_poly_def, k_poly_rec, subsets_of_open};
use crate::report::{CaseRef, CheckReport};
use crate::seq_graph::{enumerate_vn, sequence_vanishes, Quad, SeqX};
use crate::weights::{half_open, interlaces, BranchingPair, IndexSet};

/// Generator ranges for a grid of branching pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub primes: Vec<u64>,
    pub ns: Vec<usize>,
    pub max_lambda1: i64,
    pub max_size: i64,
}

impl GridSpec {
    /// `p ∈ {2,3}`, `n ∈ {3,4}`, `λ_1 ≤ 3`, `|λ| ≤ 6`.
    pub fn standard() -> Self {
        GridSpec {
            primes: vec![2, 3],
            ns: vec![3, 4],
            max_lambda1: 3,
            max_size: 6,
        }
    }
}

/// Non-increasing `λ` of length `n` with `λ_n = 0`, `λ_1 ≤ max_lambda1`,
/// `|λ| ≤ max_size`, in lexicographic order.
pub fn partitions(n: usize, max_lambda1: i64, max_size: i64) -> Vec<Vec<i64>> {
    fn go(n: usize, cap: i64, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() + 1 == n {
            let mut lam = cur.clone();
            lam.push(0);
            out.push(lam);
            return;
        }
        for v in 0..=cap.min(left) {
            cur.push(v);
            go(n, v, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 1 {
        go(n, max_lambda1, max_size, &mut Vec::new(), &mut out);
    }
    out
}

/// Every `μ` interlacing `λ`, in lexicographic order.
pub fn interlacing(lambda: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for q in 0..lambda.len().saturating_sub(1) {
        out = out
            .into_iter()
            .flat_map(|m: Vec<i64>| {
                (lambda[q + 1]..=lambda[q]).map(move |v| {
                    let mut next = m.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out
}

pub fn grid(spec: &GridSpec) -> Result<Vec<BranchingPair>> {
    if spec.primes.is_empty() || spec.ns.is_empty() {
        return Err(Error::input("grid needs at least one prime and one n"));
    }
    let mut out = Vec::new();
    for &p in &spec.primes {
        for &n in &spec.ns {
            if n < 2 {
                return Err(Error::input(format!("grid needs n >= 2, got {n}")));
            }
            for lam in partitions(n, spec.max_lambda1, spec.max_size) {
                for mu in interlacing(&lam) {
                    out.push(BranchingPair::new(p, lam.clone(), mu)?);
                }
            }
        }
    }
    Ok(out)
}

/// Every `(i, j, A)` with `1 ≤ i < j ≤ n` and `A ⊆ (i..j)`.
pub fn cases(n: usize) -> Vec<(usize, usize, IndexSet)> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in i + 1..=n {
            for a in subsets_of_open(i, j) {
                out.push((i, j, a));
            }
        }
    }
    out
}

/// Runs `check` once per pair, building one model per `(p, λ)`; results
/// are merged in grid order whatever the worker count.
pub fn run_grid<F>(pairs: &[BranchingPair], workers: usize, check: F) -> Result<CheckReport>
where
    F: Fn(&CostandardModel, &BranchingPair, usize) -> Result<CheckReport> + Sync,
{
    let mut groups: Vec<Vec<(usize, &BranchingPair)>> = Vec::new();
    for (idx, pair) in pairs.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if g[0].1.p() == pair.p() && g[0].1.lambda() == pair.lambda() => {
                g.push((idx, pair))
            }
            _ => groups.push(vec![(idx, pair)]),
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::internal(format!("worker pool: {e}")))?;
    let parts: Vec<Result<CheckReport>> = pool.install(|| {
        groups
            .par_iter()
            .map(|group| {
                let model = CostandardModel::build(group[0].1.p(), group[0].1.lambda())?;
                let mut report = CheckReport::default();
                for &(idx, pair) in group {
                    report.merge(check(&model, pair, idx)?);
                }
                Ok(report)
            })
            .collect()
    });
    let mut total = CheckReport::default();
    for part in parts {
        total.merge(part?);
    }
    Ok(total)
}

/// Criteria against the model on every `(i, j, A)`, the residue-product test
/// against both on `((i,j,j,A))`, and the residue-product test against the
/// model on every sequence of `V_n`. With `fault`, the first vanishing
/// decision is flipped.
pub fn agreement(
    model: &CostandardModel,
    pair: &BranchingPair,
    fault: bool,
) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let f = model.find_f_mu(pair.mu())?;
    for (idx, (i, j, a)) in cases(pair.n()).into_iter().enumerate() {
        let case = || CaseRef::new(pair, i, j, &a);
        let crit = classify(pair, i, j, &a)?;
        let oracle = model.classify_vector(&model.apply_s(i, j, &a, &f)?);
        let same_nu = crit.class != Class::NonzeroHighWeight || crit.nu == oracle.nu;
        report.record_case(
            crit.class == oracle.class && same_nu,
            "classify",
            case,
            || {
                format!(
                    "criteria {} {:?}, model {} {:?}",
                    crit.class, crit.nu, oracle.class, oracle.nu
                )
            },
        );
        let mut zero = lowering_vanishes(pair, i, j, &a)?;
        if fault && idx == 0 {
            zero = !zero;
        }
        let x = SeqX::single(Quad::new(i, j, j, a.iter().copied()));
        let seq_zero = sequence_vanishes(pair, &x)?;
        let model_zero = oracle.class == Class::Zero;
        report.record_case(
            zero == seq_zero && seq_zero == model_zero,
            "vanishing",
            case,
            || format!("criteria {zero}, sequences {seq_zero}, model {model_zero}"),
        );
    }
    for x in enumerate_vn(pair.n()) {
        let seq_zero = sequence_vanishes(pair, &x)?;
        let model_zero = model.apply_phi(&x, &f)?.is_zero();
        report.record(seq_zero == model_zero, "sequence_vanishing", || {
            format!("{x} at {pair}: sequences {seq_zero}, model {model_zero}")
        });
    }
    Ok(report)
}

/// The `E_{j−1}`-vanishing criterion against the model and the sequence
/// `((i, j−1, j, A))`, for `i < j−1 < n−1` and `j−1 ∈ A`.
pub fn raised_agreement(model: &CostandardModel, pair: &BranchingPair) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let n = pair.n();
    let f = model.find_f_mu(pair.mu())?;
    for i in 1..n {
        for j in i + 2..n {
            for a in subsets_of_open(i, j)
                .into_iter()
                .filter(|a| a.contains(&(j - 1)))
            {
                let crit = raised_vanishes(pair, i, j, &a)?;
                let x = SeqX::single(Quad::new(i, j - 1, j, a.iter().copied()));
                let model_zero = model.apply_phi(&x, &f)?.is_zero();
                let seq_zero = sequence_vanishes(pair, &x)?;
                report.record_case(
                    crit == model_zero && model_zero == seq_zero,
                    "raised_vanishing",
                    || CaseRef::new(pair, i, j, &a),
                    || format!("criteria {crit}, model {model_zero}, sequences {seq_zero}"),
                );
            }
        }
    }
    Ok(report)
}

/// Existence answers against the full enumeration, and each witness
/// re-classified by the criteria and by the model.
pub fn existence(model: &CostandardModel, pair: &BranchingPair) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let n = pair.n();
    let f = model.find_f_mu(pair.mu())?;
    for i in 1..n {
        for j in i + 1..=n {
            let found = exists(pair, i, j)?;
            let listed = enumerate_good_a(pair, i, j)?;
            let any_good = listed
                .iter()
                .any(|(_, c)| c.class == Class::NonzeroHighWeight);
            let mut model_good = false;
            for (a, _) in &listed {
                let v = model.apply_s(i, j, a, &f)?;
                model_good |= model.classify_vector(&v).class == Class::NonzeroHighWeight;
            }
            let case = || CaseRef::new(pair, i, j, &IndexSet::new());
            report.record_case(
                found.is_some() == any_good && any_good == model_good,
                "existence",
                case,
                || {
                    format!(
                        "witness {:?}, enumeration {any_good}, model {model_good}",
                        found.as_ref().map(|w| &w.a)
                    )
                },
            );
            if let Some(w) = &found {
                let again = classify(pair, i, j, &w.a)?.class;
                let v = model.apply_s(i, j, &w.a, &f)?;
                let in_model = model.classify_vector(&v).class;
                let image_ok = w.eps.image().is_disjoint(&w.a)
                    && w.a
                        .iter()
                        .chain(w.eps.image().iter())
                        .all(|t| i < *t && *t < j);
                report.record_case(
                    again == Class::NonzeroHighWeight
                        && in_model == Class::NonzeroHighWeight
                        && image_ok,
                    "witness",
                    || CaseRef::new(pair, i, j, &w.a),
                    || format!("witness classifies as {again}, model {in_model}"),
                );
            }
            if i + 1 < j - 1 && j < n {
                let via = moving_exists_via_thetas(pair, i, j)?;
                report.record_case(via == found.is_some(), "existence_routes", case, || {
                    format!("injection route {via}, direct route {}", found.is_some())
                });
            }
        }
    }
    Ok(report)
}

/// `𝓚` from its definition and from its recursion agree for every
/// `i ≤ max_i`, `j − i ≤ max_gap` and `A ⊆ (i..j)`; every `𝓗` divides exactly.
pub fn symbolic_suite(max_i: usize, max_gap: usize) -> Result<CheckReport> {
    let mut jobs = Vec::new();
    for i in 1..=max_i {
        for j in i + 1..=i + max_gap {
            for a in subsets_of_open(i, j) {
                jobs.push((i, j, a));
            }
        }
    }
    let parts: Vec<Result<CheckReport>> = jobs
        .par_iter()
        .map(|(i, j, a)| {
            let (i, j) = (*i, *j);
            let mut report = CheckReport::default();
            for b in subsets_of_open(i, j) {
                let ok = h_poly(i, j, a, &b).is_ok();
                report.record(ok, "exact_division", || format!("H({i},{j},{a:?},{b:?})"));
            }
            let def = k_poly_def(i, j, a)?;
            let rec = k_poly_rec(i, j, a)?;
            report.record(def == rec, "recursion", || {
                format!("K({i},{j},{a:?}): definition {def}, recursion {rec}")
            });
            Ok(report)
        })
        .collect();
    let mut total = CheckReport::default();
    for part in parts {
        total.merge(part?);
    }
    Ok(total)
}

/// The commutation law on every basis vector of the model.
pub fn commutation_suite(model: &CostandardModel, max_m: usize) -> CheckReport {
    check_commutation(model, max_m)
}

/// Top-vector scalars on all of `V_n`, chain products with at most
/// `max_chains` links, single-step transitions of one-quad sequences and the
/// splitting law on two-quad sequences.
pub fn identity_suite(
    model: &CostandardModel,
    pair: &BranchingPair,
    max_chains: usize,
) -> Result<CheckReport> {
    let xs = enumerate_vn(pair.n());
    let singles: Vec<SeqX> = xs
        .iter()
        .filter(|x| x.quads().len() == 1)
        .cloned()
        .collect();
    let doubles: Vec<SeqX> = xs
        .iter()
        .filter(|x| x.quads().len() == 2)
        .cloned()
        .collect();
    let mut report = check_top_scalar(model, pair, &xs)?;
    report.merge(check_chain_products(model, pair, max_chains)?);
    report.merge(check_transitions(model, pair, &singles)?);
    report.merge(check_split_law(model, pair, &doubles)?);
    Ok(report)
}

/// The `U(n−1)`-high weight space of weight `μ` has dimension one when `μ`
/// interlaces `λ` and zero otherwise, for every `μ` with entries in
/// `[λ_n .. λ_1]`.
pub fn branching_dimensions(model: &CostandardModel) -> Result<CheckReport> {
    let lam = model.lambda();
    let n = lam.len();
    let mut report = CheckReport::default();
    let mut mus = vec![Vec::new()];
    for _ in 0..n - 1 {
        mus = mus
            .into_iter()
            .flat_map(|m: Vec<i64>| {
                (lam[n - 1]..=lam[0]).map(move |v| {
                    let mut next = m.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    for mu in mus {
        let expect = usize::from(interlaces(lam, &mu)?);
        let got = model.high_weight_space(&mu)?.len();
        report.record(got == expect, "branching_dimension", || {
            format!("lambda={lam:?} mu={mu:?}: dimension {got}, expected {expect}")
        });
    }
    Ok(report)
}

/// `𝔅^{μ,λ,k}(i,j) = 𝔅^{μ,λ}(i,k) ∪ (𝔅^μ(i,j) ∩ [k..j))` for `j ≤ n−1`, `i ≤ k ≤ j`.
pub fn split_point_sets(pair: &BranchingPair) -> Result<CheckReport> {
    let n = pair.n();
    let mut report = CheckReport::default();
    for i in 1..n {
        for j in i + 1..n {
            for k in i..=j {
                let lhs = pair.b_set(i, j, k)?;
                let mut rhs = pair.b_lambda_set(i, k)?;
                rhs.extend(pair.b_mu_set(i, j)?.intersection(&half_open(k, j)));
                report.record_case(
                    lhs == rhs,
                    "split_point_sets",
                    || CaseRef::new(pair, i, j, &IndexSet::new()),
                    || format!("k={k}: {lhs:?} vs {rhs:?}"),
                );
            }
        }
    }
    Ok(report)
}

/// `π̄(v) ⇔ π(v)` for `v ≤ N`, on every `M ⊆ (i..j−1)`, `i < j−1 < n−1`.
pub fn pi_equivalence(pair: &BranchingPair) -> Result<CheckReport> {
    let n = pair.n();
    let mut report = CheckReport::default();
    for i in 1..n {
        for j in i + 2..n {
            for m in subsets_of_open(i, j - 1) {
                let blocks = components(&m).len();
                for v in 1..=blocks {
                    let plain = pi(pair, i, j, &m, v)?;
                    let barred = pi_bar(pair, i, j, &m, v)?;
                    report.record_case(
                        plain == barred,
                        "pi_equivalence",
                        || CaseRef::new(pair, i, j, &m),
                        || format!("v={v}: pi {plain}, pi_bar {barred}"),
                    );
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, PartialEq)]
struct Decisions {
    classes: Vec<(Class, Option<Vec<i64>>)>,
    vanishing: Vec<bool>,
    raised: Vec<bool>,
    existence: Vec<Option<IndexSet>>,
}

fn decisions(pair: &BranchingPair, c: i64) -> Result<Decisions> {
    let n = pair.n();
    let mut out = Decisions {
        classes: Vec::new(),
        vanishing: Vec::new(),
        raised: Vec::new(),
        existence: Vec::new(),
    };
    for (i, j, a) in cases(n) {
        let cl = classify(pair, i, j, &a)?;
        out.classes.push((
            cl.class,
            cl.nu.map(|nu| nu.into_iter().map(|x| x - c).collect()),
        ));
        out.vanishing.push(lowering_vanishes(pair, i, j, &a)?);
        if i + 1 < j - 1 && j < n && a.contains(&(j - 1)) {
            out.raised.push(raised_vanishes(pair, i, j, &a)?);
        }
    }
    for i in 1..n {
        for j in i + 1..=n {
            out.existence.push(exists(pair, i, j)?.map(|w| w.a));
        }
    }
    Ok(out)
}

/// Every decision is unchanged when `λ` and `μ` are shifted by `c·(1,…,1)`,
/// `c ∈ shifts`; `ν` shifts along.
pub fn shift_invariance(pair: &BranchingPair, shifts: &[i64]) -> Result<CheckReport> {
    let base = decisions(pair, 0)?;
    let mut report = CheckReport::default();
    for &c in shifts {
        let moved = decisions(&pair.shifted(c), c)?;
        report.record(moved == base, "shift_invariance", || {
            format!("c={c} at {pair}")
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_listing() {
        assert_eq!(
            partitions(3, 2, 3),
            vec![
                vec![0, 0, 0],
                vec![1, 0, 0],
                vec![1, 1, 0],
                vec![2, 0, 0],
                vec![2, 1, 0]
            ]
        );
        assert!(partitions(4, 3, 6)
            .iter()
            .all(|l| l[3] == 0 && l.iter().sum::<i64>() <= 6));
    }

    #[test]
    fn interlacing_listing() {
        assert_eq!(
            interlacing(&[2, 1, 0]),
            vec![vec![1, 0], vec![1, 1], vec![2, 0], vec![2, 1]]
        );
    }

    #[test]
    fn case_counts() {
        assert_eq!(cases(3).len(), 1 + 2 + 1);
        assert_eq!(cases(4).len(), 3 + 2 * 2 + 4);
    }

    #[test]
    fn small_grid_agrees() {
        let spec = GridSpec {
            primes: vec![2],
            ns: vec![3],
            max_lambda1: 2,
            max_size: 3,
        };
        let pairs = grid(&spec).unwrap();
        let r = run_grid(&pairs, 2, |m, p, _| agreement(m, p, false)).unwrap();
        assert!(r.is_ok(), "{:?}", r.failures);
        let faulty = run_grid(&pairs, 2, |m, p, idx| agreement(m, p, idx == 0)).unwrap();
        assert_eq!(faulty.failures.len(), 1);
    }
}
