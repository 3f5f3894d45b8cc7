//! Worked examples, checked against both the criteria and the explicit model.

use lowering::criteria::{classify, exists, Class};
use lowering::nabla::CostandardModel;
use lowering::seq_graph::{sequence_vanishes, Quad, SeqX};
use lowering::{BranchingPair, IndexSet};

fn set(xs: &[usize]) -> IndexSet {
    xs.iter().copied().collect()
}

fn both(
    p: u64,
    lam: &[i64],
    mu: &[i64],
    i: usize,
    j: usize,
    a: &[usize],
) -> (Class, Option<Vec<i64>>) {
    let pair = BranchingPair::new(p, lam.to_vec(), mu.to_vec()).unwrap();
    let crit = classify(&pair, i, j, &set(a)).unwrap();
    let model = CostandardModel::build(p, lam).unwrap();
    let oracle = model.oracle_classify(mu, i, j, &set(a)).unwrap();
    assert_eq!(crit.class, oracle.class, "{pair} i={i} j={j} A={a:?}");
    if crit.class == Class::NonzeroHighWeight {
        assert_eq!(crit.nu, oracle.nu);
    }
    (crit.class, crit.nu)
}

#[test]
fn two_one_zero_table() {
    assert_eq!(
        both(2, &[2, 1, 0], &[1, 1], 1, 3, &[]).0,
        Class::NonzeroNotHighWeight
    );
    assert_eq!(both(2, &[2, 1, 0], &[1, 1], 1, 3, &[2]).0, Class::Zero);
    let pair = BranchingPair::new(2, vec![2, 1, 0], vec![1, 1]).unwrap();
    assert!(sequence_vanishes(&pair, &SeqX::single(Quad::new(1, 3, 3, [2]))).unwrap());
    assert!(!sequence_vanishes(&pair, &SeqX::single(Quad::new(1, 3, 3, []))).unwrap());
    assert!(exists(&pair, 1, 3).unwrap().is_none());
}

#[test]
fn single_step_moves_a_node() {
    assert_eq!(
        both(3, &[4, 2, 0], &[4, 1], 1, 2, &[]),
        (Class::NonzeroHighWeight, Some(vec![3, 2]))
    );
}

#[test]
fn two_step_moves_a_node() {
    assert_eq!(
        both(2, &[3, 2, 1, 0], &[3, 2, 0], 1, 3, &[2]),
        (Class::NonzeroHighWeight, Some(vec![2, 2, 1]))
    );
}

#[test]
fn removing_a_node() {
    // j = n lowers the weight by ε_i
    assert_eq!(
        both(3, &[2, 0, 0], &[1, 0], 1, 3, &[2]),
        (Class::NonzeroHighWeight, Some(vec![0, 0]))
    );
    assert_eq!(
        both(3, &[3, 1, 0], &[2, 1], 1, 3, &[]).0,
        Class::NonzeroNotHighWeight
    );
    assert_eq!(both(3, &[3, 1, 0], &[2, 1], 1, 3, &[2]).0, Class::Zero);
}
