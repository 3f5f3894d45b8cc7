//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use lowering::criteria::{classify, Class};
use lowering::nabla::identities::{
    check_chain_products, check_commutation, check_split_law, check_top_scalar, check_transitions,
};
use lowering::nabla::CostandardModel;
use lowering::report::CheckReport;
use lowering::seq_graph::{enumerate_vn, SeqX};
use lowering::verify::{
    agreement, branching_dimensions, existence, grid, interlacing, partitions, pi_equivalence,
    raised_agreement, run_grid, shift_invariance, split_point_sets, symbolic_suite, GridSpec,
};
use lowering::{BranchingPair, IndexSet, Result};

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn standard_grid() -> Result<Vec<BranchingPair>> {
    grid(&GridSpec::standard())
}

fn three_way() -> Result<CheckReport> {
    run_grid(&standard_grid()?, workers(), |m, p, _| {
        agreement(m, p, false)
    })
}

fn raised() -> Result<CheckReport> {
    run_grid(&standard_grid()?, workers(), |m, p, _| {
        raised_agreement(m, p)
    })
}

fn existence_all() -> Result<CheckReport> {
    run_grid(&standard_grid()?, workers(), |m, p, _| existence(m, p))
}

fn symbolic() -> Result<CheckReport> {
    symbolic_suite(4, 6)
}

fn identities() -> Result<CheckReport> {
    let mut pairs = Vec::new();
    let mut total = CheckReport::default();
    for p in [2, 3] {
        for n in [3, 4] {
            for lam in partitions(n, 6, 6) {
                total.merge(check_commutation(&CostandardModel::build(p, &lam)?, 3));
                for mu in interlacing(&lam) {
                    pairs.push(BranchingPair::new(p, lam.clone(), mu)?);
                }
            }
        }
    }
    let top = std::sync::Mutex::new(0usize);
    let rest = run_grid(&pairs, workers(), |model, pair, _| {
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
        let scalar = check_top_scalar(model, pair, &xs)?;
        *top.lock().unwrap() += scalar.checked;
        let mut r = scalar;
        r.merge(check_chain_products(model, pair, 2)?);
        r.merge(check_transitions(model, pair, &singles)?);
        r.merge(check_split_law(model, pair, &doubles)?);
        Ok(r)
    })?;
    total.merge(rest);
    let top = top.into_inner().unwrap();
    total.record(top >= 100, "top_scalar_sample", || {
        format!("only {top} sequences checked")
    });
    Ok(total)
}

fn structural() -> Result<CheckReport> {
    let pairs = standard_grid()?;
    let mut total = run_grid(&pairs, workers(), |model, pair, _| {
        let mut r = CheckReport::default();
        if pair.mu() == interlacing(pair.lambda())[0].as_slice() {
            r.merge(branching_dimensions(model)?);
        }
        r.merge(split_point_sets(pair)?);
        r.merge(pi_equivalence(pair)?);
        r.merge(shift_invariance(pair, &[1, 2, 3])?);
        Ok(r)
    })?;
    // pi_bar needs n >= 4 with room for j < n - 1
    for lam in partitions(5, 3, 6) {
        for mu in interlacing(&lam) {
            for p in [2, 3] {
                let pair = BranchingPair::new(p, lam.clone(), mu.clone())?;
                total.merge(split_point_sets(&pair)?);
                total.merge(pi_equivalence(&pair)?);
            }
        }
    }
    Ok(total)
}

struct Worked {
    p: u64,
    lambda: &'static [i64],
    mu: &'static [i64],
    i: usize,
    j: usize,
    a: &'static [usize],
    class: Class,
    nu: Option<&'static [i64]>,
}

const WORKED: [Worked; 4] = [
    Worked {
        p: 2,
        lambda: &[2, 1, 0],
        mu: &[1, 1],
        i: 1,
        j: 3,
        a: &[],
        class: Class::NonzeroNotHighWeight,
        nu: None,
    },
    Worked {
        p: 2,
        lambda: &[2, 1, 0],
        mu: &[1, 1],
        i: 1,
        j: 3,
        a: &[2],
        class: Class::Zero,
        nu: None,
    },
    Worked {
        p: 3,
        lambda: &[4, 2, 0],
        mu: &[4, 1],
        i: 1,
        j: 2,
        a: &[],
        class: Class::NonzeroHighWeight,
        nu: Some(&[3, 2]),
    },
    Worked {
        p: 2,
        lambda: &[3, 2, 1, 0],
        mu: &[3, 2, 0],
        i: 1,
        j: 3,
        a: &[2],
        class: Class::NonzeroHighWeight,
        nu: Some(&[2, 2, 1]),
    },
];

fn golden() -> Result<CheckReport> {
    let mut r = CheckReport::default();
    for w in &WORKED {
        let (p, i, j, class) = (w.p, w.i, w.j, w.class);
        let (lam, mu) = (w.lambda.to_vec(), w.mu.to_vec());
        let a: IndexSet = w.a.iter().copied().collect();
        let nu = w.nu.map(|v| v.to_vec());
        let pair = BranchingPair::new(p, lam.clone(), mu.clone())?;
        let crit = classify(&pair, i, j, &a)?;
        let model = CostandardModel::build(p, &lam)?;
        let oracle = model.oracle_classify(&mu, i, j, &a)?;
        let expect = |c: &lowering::criteria::Classification| {
            c.class == class && (class != Class::NonzeroHighWeight || c.nu == nu)
        };
        r.record(expect(&crit) && expect(&oracle), "golden", || {
            format!(
                "{pair} i={i} j={j} A={a:?}: criteria {}, model {}",
                crit.class, oracle.class
            )
        });
    }
    Ok(r)
}

type Suite = fn() -> Result<CheckReport>;

fn main() -> ExitCode {
    let suites: [(&str, Suite); 7] = [
        ("three-way agreement", three_way),
        ("raised vanishing agreement", raised),
        ("existence consistency", existence_all),
        ("symbolic suite", symbolic),
        ("identity suite", identities),
        ("structural checks", structural),
        ("worked examples", golden),
    ];
    let mut all_ok = true;
    for (idx, (name, run)) in suites.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(r) if r.is_ok() && r.checked > 0 => {
                println!("criterion {}: PASS {name} ({r}, {secs:.1}s)", idx + 1);
                for s in &r.skipped {
                    println!("    skipped: {s}");
                }
            }
            Ok(r) => {
                all_ok = false;
                println!("criterion {}: FAIL {name} ({r}, {secs:.1}s)", idx + 1);
                for f in r.failures.iter().take(10) {
                    println!("    {f}");
                }
            }
            Err(e) => {
                all_ok = false;
                println!("criterion {}: FAIL {name} (error: {e})", idx + 1);
            }
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
