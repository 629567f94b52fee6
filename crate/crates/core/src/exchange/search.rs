//! Depth-first searches over pair states.
//!
//! A pair state is identified by its current `A`: the movable elements are
//! fixed by the start pair, so `B` is the rest of `A0 ∪ B0` plus the common
//! elements.

use std::collections::{HashMap, HashSet};

use super::{apply_exchange, pair_distance, BasisPair, ExchangeSequence, ExchangeStep};
use crate::element_set::ElementSet;

/// Looks for `k` serial symmetric exchanges that each move a fresh element of
/// `A \ B` against a fresh element of `B \ A`. Candidates are tried in
/// ascending id order and the first sequence found is returned.
pub fn find_serial_exchange(pair: &BasisPair<'_>, k: usize) -> Option<ExchangeSequence> {
    let a_side = pair.a().difference(pair.b());
    if k > a_side.len() {
        return None;
    }
    let b_side = pair.b().difference(pair.a());
    let mut search = SerialSearch {
        a_side,
        b_side,
        target: k,
        dead: HashSet::new(),
        path: Vec::with_capacity(k),
    };
    search.run(pair).then(|| {
        ExchangeSequence::replay(pair, search.path).expect("search only takes valid steps")
    })
}

struct SerialSearch {
    a_side: ElementSet,
    b_side: ElementSet,
    target: usize,
    dead: HashSet<ElementSet>,
    path: Vec<ExchangeStep>,
}

impl SerialSearch {
    fn run(&mut self, cur: &BasisPair<'_>) -> bool {
        if self.path.len() == self.target {
            return true;
        }
        if self.dead.contains(&cur.a()) {
            return false;
        }
        // untouched elements of the original sides
        let fresh_a = cur.a().intersection(self.a_side);
        let fresh_b = cur.b().intersection(self.b_side);
        for a in fresh_a {
            for b in fresh_b {
                if !cur.exchangeable(a, b) {
                    continue;
                }
                let step = ExchangeStep::new(a, b);
                let next = apply_exchange(cur, step).expect("checked exchangeable");
                self.path.push(step);
                if self.run(&next) {
                    return true;
                }
                self.path.pop();
            }
        }
        self.dead.insert(cur.a());
        false
    }
}

/// Shortest full serial symmetric exchange of at most `max_len` steps, found
/// by iterative deepening. Elements may cross more than once; the search
/// succeeds when the current `A` equals the starting `B`.
pub fn find_full_exchange(pair: &BasisPair<'_>, max_len: usize) -> Option<ExchangeSequence> {
    let need = pair.a().difference(pair.b()).len();
    for limit in need..=max_len {
        let mut search = FullSearch {
            goal: pair.b(),
            movable: pair.movable(),
            failed: HashMap::new(),
            path: Vec::with_capacity(limit),
        };
        if search.run(pair, limit) {
            return Some(
                ExchangeSequence::replay(pair, search.path).expect("search only takes valid steps"),
            );
        }
    }
    None
}

struct FullSearch {
    goal: ElementSet,
    movable: ElementSet,
    /// State -> largest remaining budget already shown insufficient.
    failed: HashMap<ElementSet, usize>,
    path: Vec<ExchangeStep>,
}

impl FullSearch {
    fn run(&mut self, cur: &BasisPair<'_>, remaining: usize) -> bool {
        if cur.a() == self.goal {
            return true;
        }
        // each step brings at most one goal element into A
        if self.goal.difference(cur.a()).len() > remaining {
            return false;
        }
        if self.failed.get(&cur.a()).is_some_and(|&r| r >= remaining) {
            return false;
        }
        let out_a = cur.a().intersection(self.movable);
        let out_b = cur.b().intersection(self.movable);
        for a in out_a {
            for b in out_b {
                if !cur.exchangeable(a, b) {
                    continue;
                }
                let step = ExchangeStep::new(a, b);
                let next = apply_exchange(cur, step).expect("checked exchangeable");
                self.path.push(step);
                if self.run(&next, remaining - 1) {
                    return true;
                }
                self.path.pop();
            }
        }
        self.failed.insert(cur.a(), remaining);
        false
    }
}

/// Every (correcting, increasing) step pair at `current`: the first step keeps
/// the distance from `origin`, the second then increases it.
pub fn correcting_exchanges(
    origin: &BasisPair<'_>,
    current: &BasisPair<'_>,
) -> Vec<(ExchangeStep, ExchangeStep)> {
    let movable = origin.movable();
    let base_distance = pair_distance(origin, current);
    let steps_at = |p: &BasisPair<'_>| -> Vec<ExchangeStep> {
        let mut out = Vec::new();
        for a in p.a().intersection(movable) {
            for b in p.b().intersection(movable) {
                if p.exchangeable(a, b) {
                    out.push(ExchangeStep::new(a, b));
                }
            }
        }
        out
    };
    let mut found = Vec::new();
    for correcting in steps_at(current) {
        let mid = apply_exchange(current, correcting).expect("enumerated steps are valid");
        if pair_distance(origin, &mid) != base_distance {
            continue;
        }
        for increasing in steps_at(&mid) {
            let after = apply_exchange(&mid, increasing).expect("enumerated steps are valid");
            if pair_distance(origin, &after) > base_distance {
                found.push((correcting, increasing));
            }
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::tests::{k4, uniform};
    use crate::matroid::Matroid;

    fn set<const N: usize>(ids: [usize; N]) -> ElementSet {
        ElementSet::from(ids)
    }

    fn disjoint_pairs(m: &Matroid) -> Vec<BasisPair<'_>> {
        let bases: Vec<_> = m.bases().unwrap().collect();
        let mut out = Vec::new();
        for (i, &a) in bases.iter().enumerate() {
            for &b in &bases[i + 1..] {
                if a.is_disjoint(b) {
                    out.push(BasisPair::new(m, a, b).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn serial_on_u36() {
        let u = uniform(3, 6);
        let p = BasisPair::new(&u, set([0, 1, 2]), set([3, 4, 5])).unwrap();
        let seq = find_serial_exchange(&p, 3).unwrap();
        assert_eq!(
            seq.steps(),
            &[ExchangeStep::new(0, 3), ExchangeStep::new(1, 4), ExchangeStep::new(2, 5)]
        );
        assert!(seq.is_full());
        assert!(find_serial_exchange(&p, 4).is_none());
    }

    #[test]
    fn one_and_two_steps_always_exist_on_k4() {
        let k = k4();
        let pairs = disjoint_pairs(&k);
        assert!(!pairs.is_empty());
        for p in &pairs {
            for k in 1..=2 {
                let seq = find_serial_exchange(p, k).unwrap();
                assert_eq!(seq.len(), k);
                let moved_a: ElementSet = seq.steps().iter().map(|s| s.a).collect();
                let moved_b: ElementSet = seq.steps().iter().map(|s| s.b).collect();
                assert_eq!((moved_a.len(), moved_b.len()), (k, k));
            }
        }
    }

    #[test]
    fn full_on_u24() {
        let u = uniform(2, 4);
        let p = BasisPair::new(&u, set([0, 1]), set([2, 3])).unwrap();
        let seq = find_full_exchange(&p, 2).unwrap();
        assert_eq!(seq.steps(), &[ExchangeStep::new(0, 2), ExchangeStep::new(1, 3)]);
        assert_eq!(seq.end(), (set([2, 3]), set([0, 1])));
        assert!(find_full_exchange(&p, 1).is_none());
    }

    #[test]
    fn full_on_non_disjoint_pair_fixes_common_elements() {
        let u = uniform(2, 4);
        let p = BasisPair::new(&u, set([0, 1]), set([0, 2])).unwrap();
        let seq = find_full_exchange(&p, 2).unwrap();
        assert_eq!(seq.steps(), &[ExchangeStep::new(1, 2)]);
        assert!(seq.is_full());
    }

    #[test]
    fn identical_bases_need_no_steps() {
        let u = uniform(2, 4);
        let p = BasisPair::new(&u, set([0, 1]), set([0, 1])).unwrap();
        assert!(find_full_exchange(&p, 0).unwrap().is_empty());
        assert!(find_serial_exchange(&p, 1).is_none());
    }

    #[test]
    fn no_correcting_exchange_at_origin() {
        let u = uniform(2, 4);
        let p = BasisPair::new(&u, set([0, 1]), set([2, 3])).unwrap();
        assert!(correcting_exchanges(&p, &p).is_empty());
    }

    #[test]
    fn correcting_exchanges_on_u24_after_one_step() {
        let u = uniform(2, 4);
        let origin = BasisPair::new(&u, set([0, 1]), set([2, 3])).unwrap();
        let cur = apply_exchange(&origin, ExchangeStep::new(0, 2)).unwrap();
        // cur = ({1,2}, {0,3}), distance 1
        let found = correcting_exchanges(&origin, &cur);
        // brute force over all step pairs
        let mut expected = Vec::new();
        for a in cur.a() {
            for b in cur.b() {
                let Ok(mid) = apply_exchange(&cur, ExchangeStep::new(a, b)) else {
                    continue;
                };
                if pair_distance(&origin, &mid) != 1 {
                    continue;
                }
                for a2 in mid.a() {
                    for b2 in mid.b() {
                        if let Ok(end) = apply_exchange(&mid, ExchangeStep::new(a2, b2)) {
                            if pair_distance(&origin, &end) > 1 {
                                expected.push((ExchangeStep::new(a, b), ExchangeStep::new(a2, b2)));
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(found, expected);
        // 2<->0 returns to the origin, so it is not correcting
        assert!(found.iter().all(|(c, _)| *c != ExchangeStep::new(2, 0)));
        // 2<->3 keeps distance 1 and enables 1<->2 (but 1<->0 only holds it at 1)
        assert!(found.contains(&(ExchangeStep::new(2, 3), ExchangeStep::new(1, 2))));
        assert!(!found.contains(&(ExchangeStep::new(2, 3), ExchangeStep::new(1, 0))));
    }
}
