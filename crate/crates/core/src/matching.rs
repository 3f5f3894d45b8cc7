//! Monotone injections between finite sets of integers, found by
//! augmenting-path bipartite matching.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::weights::IndexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `θ(a) ≥ a`
    Increasing,
    /// `θ(a) ≤ a`
    Decreasing,
}

impl Direction {
    pub fn admits(self, source: usize, target: usize) -> bool {
        match self {
            Direction::Increasing => target >= source,
            Direction::Decreasing => target <= source,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectionWitness {
    pub direction: Direction,
    pub map: BTreeMap<usize, usize>,
}

impl InjectionWitness {
    pub fn image(&self) -> IndexSet {
        self.map.values().copied().collect()
    }

    /// Re-check every defining property against the inputs that produced it.
    pub fn is_valid_for(
        &self,
        sources: &IndexSet,
        codomain: &IndexSet,
        allowed: impl Fn(usize, usize) -> bool,
    ) -> bool {
        let keys: IndexSet = self.map.keys().copied().collect();
        keys == *sources
            && self.image().len() == self.map.len()
            && self.map.iter().all(|(&s, &t)| {
                codomain.contains(&t) && self.direction.admits(s, t) && allowed(s, t)
            })
    }
}

struct Graph {
    adj: BTreeMap<usize, Vec<usize>>,
    radj: BTreeMap<usize, Vec<usize>>,
    of_source: HashMap<usize, usize>,
    of_target: HashMap<usize, usize>,
}

impl Graph {
    fn new(
        sources: &IndexSet,
        codomain: &IndexSet,
        direction: Direction,
        allowed: impl Fn(usize, usize) -> bool,
    ) -> Self {
        let mut adj = BTreeMap::new();
        let mut radj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &s in sources {
            let ts: Vec<usize> = codomain
                .iter()
                .copied()
                .filter(|&t| direction.admits(s, t) && allowed(s, t))
                .collect();
            for &t in &ts {
                radj.entry(t).or_default().push(s);
            }
            adj.insert(s, ts);
        }
        Graph {
            adj,
            radj,
            of_source: HashMap::new(),
            of_target: HashMap::new(),
        }
    }

    fn link(&mut self, s: usize, t: usize) {
        self.of_source.insert(s, t);
        self.of_target.insert(t, s);
    }

    fn augment_from_source(&mut self, s: usize, seen: &mut HashSet<usize>) -> bool {
        let targets = self.adj[&s].clone();
        for t in targets {
            if !seen.insert(t) {
                continue;
            }
            let free = match self.of_target.get(&t) {
                None => true,
                Some(&other) => self.augment_from_source(other, seen),
            };
            if free {
                self.link(s, t);
                return true;
            }
        }
        false
    }

    fn augment_from_target(&mut self, t: usize, seen: &mut HashSet<usize>) -> bool {
        let sources = self.radj.get(&t).cloned().unwrap_or_default();
        for s in sources {
            if !seen.insert(s) {
                continue;
            }
            let free = match self.of_source.get(&s) {
                None => true,
                Some(&other) => self.augment_from_target(other, seen),
            };
            if free {
                self.link(s, t);
                return true;
            }
        }
        false
    }

    fn witness(self, direction: Direction) -> InjectionWitness {
        InjectionWitness {
            direction,
            map: self.of_source.into_iter().collect(),
        }
    }
}

/// A monotone injection `sources → codomain` using only pairs with
/// `allowed(s, t)`, if one exists.
pub fn find_injection(
    sources: &IndexSet,
    codomain: &IndexSet,
    direction: Direction,
    allowed: impl Fn(usize, usize) -> bool,
) -> Option<InjectionWitness> {
    find_covering_injection(sources, codomain, &IndexSet::new(), direction, allowed)
}

/// As [`find_injection`], with the extra demand that the image contain
/// `must_cover`. Targets are saturated first; augmenting from the sources
/// afterwards never unmatches a target.
pub fn find_covering_injection(
    sources: &IndexSet,
    codomain: &IndexSet,
    must_cover: &IndexSet,
    direction: Direction,
    allowed: impl Fn(usize, usize) -> bool,
) -> Option<InjectionWitness> {
    if sources.len() > codomain.len()
        || !must_cover.is_subset(codomain)
        || must_cover.len() > sources.len()
    {
        return None;
    }
    let mut g = Graph::new(sources, codomain, direction, allowed);
    for &t in must_cover {
        if !g.augment_from_target(t, &mut HashSet::new()) {
            return None;
        }
    }
    for &s in sources {
        if !g.of_source.contains_key(&s) && !g.augment_from_source(s, &mut HashSet::new()) {
            return None;
        }
    }
    Some(g.witness(direction))
}

/// Whether a weakly increasing injection `s → t` with no other constraint
/// exists, by counting tails: `|S ∩ [k..)| ≤ |T ∩ [k..)|` for all `k`.
pub fn tail_counts_allow(s: &IndexSet, t: &IndexSet) -> bool {
    s.iter()
        .all(|&k| s.range(k..).count() <= t.range(k..).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::BranchingPair;
    use proptest::prelude::*;

    fn set(xs: &[usize]) -> IndexSet {
        xs.iter().copied().collect()
    }

    fn brute(
        sources: &[usize],
        codomain: &IndexSet,
        must_cover: &IndexSet,
        dir: Direction,
        allowed: &dyn Fn(usize, usize) -> bool,
        used: &mut Vec<usize>,
    ) -> bool {
        match sources.split_first() {
            None => must_cover.iter().all(|t| used.contains(t)),
            Some((&s, rest)) => codomain.iter().any(|&t| {
                if used.contains(&t) || !dir.admits(s, t) || !allowed(s, t) {
                    return false;
                }
                used.push(t);
                let ok = brute(rest, codomain, must_cover, dir, allowed, used);
                used.pop();
                ok
            }),
        }
    }

    #[test]
    fn examples() {
        let w = find_injection(&set(&[]), &set(&[1]), Direction::Increasing, |_, _| false).unwrap();
        assert!(w.map.is_empty());
        assert!(
            find_injection(&set(&[1, 2]), &set(&[]), Direction::Decreasing, |_, _| true).is_none()
        );

        let pr = BranchingPair::new(2, vec![2, 1, 0], vec![1, 1]).unwrap();
        let allowed = |s: usize, t: usize| pr.b_residue(s, t, 3).unwrap().is_zero();
        assert!(
            find_injection(&set(&[1, 2]), &set(&[1, 2]), Direction::Increasing, allowed).is_none()
        );
    }

    #[test]
    fn covering_needs_rematch() {
        // greedy source-first picks 1 -> 2, leaving 3 uncovered
        let w = find_covering_injection(
            &set(&[1, 2]),
            &set(&[2, 3, 4]),
            &set(&[3]),
            Direction::Increasing,
            |s, t| !(s == 2 && t == 3),
        )
        .unwrap();
        assert_eq!(w.map, BTreeMap::from([(1, 3), (2, 2)]));
    }

    fn arb_instance() -> impl Strategy<Value = (IndexSet, IndexSet, IndexSet, Vec<bool>, bool)> {
        (
            prop::collection::btree_set(1usize..8, 0..5),
            prop::collection::btree_set(1usize..8, 0..6),
            prop::collection::btree_set(1usize..8, 0..3),
            prop::collection::vec(any::<bool>(), 64),
            any::<bool>(),
        )
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force((s, t, c, bits, inc) in arb_instance()) {
            let dir = if inc { Direction::Increasing } else { Direction::Decreasing };
            let allowed = |a: usize, b: usize| bits[a * 8 + b];
            let cover: IndexSet = c.intersection(&t).copied().collect();
            let src: Vec<usize> = s.iter().copied().collect();
            let expect = brute(&src, &t, &cover, dir, &allowed, &mut Vec::new());
            let got = find_covering_injection(&s, &t, &cover, dir, allowed);
            prop_assert_eq!(got.is_some(), expect);
            if let Some(w) = got {
                prop_assert!(w.is_valid_for(&s, &t, allowed));
                prop_assert!(cover.is_subset(&w.image()));
            }
        }

        #[test]
        fn tail_count_law(s in prop::collection::btree_set(0usize..12, 0..7),
                          t in prop::collection::btree_set(0usize..12, 0..7)) {
            let got = find_injection(&s, &t, Direction::Increasing, |_, _| true).is_some();
            prop_assert_eq!(got, tail_counts_allow(&s, &t));
        }
    }
}
