//! The root poset of Φ⁺ with its order filters and order ideals.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::rootset::RootSet;
use crate::rootsys::RootSystem;

/// Upward-closed subset of Φ⁺.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Filter(pub RootSet);

/// Downward-closed subset of Φ⁺ (complement of a filter).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Ideal(pub RootSet);

#[derive(Debug, Clone)]
pub struct RootPoset {
    rs: RootSystem,
    // up[i] = {j : α_i ≤ α_j}, down[i] = {j : α_j ≤ α_i}
    up: Vec<RootSet>,
    down: Vec<RootSet>,
}

pub fn build_poset(rs: RootSystem) -> RootPoset {
    RootPoset::new(rs)
}

impl RootPoset {
    pub fn new(rs: RootSystem) -> Self {
        let n = rs.num_positive();
        let mut up = vec![RootSet::EMPTY; n];
        let mut down = vec![RootSet::EMPTY; n];
        for i in 0..n {
            for j in 0..n {
                if leq_coords(&rs.root(i).0, &rs.root(j).0) {
                    up[i].insert(j);
                    down[j].insert(i);
                }
            }
        }
        RootPoset { rs, up, down }
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rs
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    /// `α_a ≤ α_b`: the difference has nonnegative simple-root coordinates.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn up_set(&self, a: usize) -> RootSet {
        self.up[a]
    }

    pub fn down_set(&self, a: usize) -> RootSet {
        self.down[a]
    }

    /// Cover relations `(a, b)` with `α_b − α_a` a simple root.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let rank = self.rs.rank();
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                let d = self.rs.root(b).sub(self.rs.root(a));
                if d.height() == 1 && d.0.iter().all(|&c| c >= 0) && d.0.len() == rank {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn up_closure(&self, s: RootSet) -> RootSet {
        s.iter().fold(RootSet::EMPTY, |acc, i| acc.union(self.up[i]))
    }

    pub fn down_closure(&self, s: RootSet) -> RootSet {
        s.iter().fold(RootSet::EMPTY, |acc, i| acc.union(self.down[i]))
    }

    pub fn is_filter(&self, s: RootSet) -> bool {
        self.up_closure(s) == s
    }

    pub fn is_ideal(&self, s: RootSet) -> bool {
        self.down_closure(s) == s
    }

    pub fn minimal_elements(&self, s: RootSet) -> RootSet {
        s.iter().filter(|&i| self.down[i].intersection(s) == RootSet::singleton(i)).collect()
    }

    pub fn maximal_elements(&self, s: RootSet) -> RootSet {
        s.iter().filter(|&i| self.up[i].intersection(s) == RootSet::singleton(i)).collect()
    }

    /// A filter is positive when it contains no simple root.
    pub fn is_positive_filter(&self, f: Filter) -> bool {
        f.0.intersection(self.rs.simple_set()).is_empty()
    }

    /// An ideal is positive when it contains every simple root.
    pub fn is_positive_ideal(&self, j: Ideal) -> bool {
        self.rs.simple_set().is_subset(j.0)
    }

    pub fn complement_filter(&self, f: Filter) -> Ideal {
        Ideal(f.0.complement(self.len()))
    }

    pub fn complement_ideal(&self, j: Ideal) -> Filter {
        Filter(j.0.complement(self.len()))
    }

    /// Antichains in depth-first order over the fixed root order.
    pub fn antichains(&self) -> Antichains<'_> {
        Antichains { poset: self, stack: vec![(RootSet::EMPTY, 0)], started: false }
    }

    /// Every filter exactly once, as the upward closure of its antichain of
    /// minimal elements.
    pub fn enumerate_filters(&self) -> impl Iterator<Item = Filter> + '_ {
        self.antichains().map(move |a| Filter(self.up_closure(a)))
    }

    /// Every ideal exactly once, as the downward closure of its antichain of
    /// maximal elements.
    pub fn enumerate_ideals(&self) -> impl Iterator<Item = Ideal> + '_ {
        self.antichains().map(move |a| Ideal(self.down_closure(a)))
    }

    pub fn count_filters_by_min_elements(&self, positive_only: bool) -> BTreeMap<usize, u64> {
        let simples = self.rs.simple_set();
        let mut hist = BTreeMap::new();
        for a in self.antichains() {
            // The minimal elements of the filter are the antichain itself; the
            // filter is positive iff no generator is simple.
            if positive_only && !a.intersection(simples).is_empty() {
                continue;
            }
            *hist.entry(a.len()).or_insert(0) += 1;
        }
        hist
    }

    pub fn count_ideals_by_max_elements(&self, must_contain_simples: bool) -> BTreeMap<usize, u64> {
        let simples = self.rs.simple_set();
        let mut hist = BTreeMap::new();
        for a in self.antichains() {
            if must_contain_simples && !simples.is_subset(self.down_closure(a)) {
                continue;
            }
            *hist.entry(a.len()).or_insert(0) += 1;
        }
        hist
    }
}

fn leq_coords(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Depth-first antichain iterator. Each stack entry is an antichain together
/// with the smallest root index still allowed to extend it.
pub struct Antichains<'a> {
    poset: &'a RootPoset,
    stack: Vec<(RootSet, usize)>,
    started: bool,
}

impl Iterator for Antichains<'_> {
    type Item = RootSet;

    fn next(&mut self) -> Option<RootSet> {
        if !self.started {
            self.started = true;
            return Some(RootSet::EMPTY);
        }
        let n = self.poset.len();
        while let Some((anti, from)) = self.stack.last_mut() {
            let anti = *anti;
            let mut found = None;
            for i in *from..n {
                if anti.iter().all(|a| !self.poset.comparable(a, i)) {
                    found = Some(i);
                    break;
                }
            }
            match found {
                Some(i) => {
                    self.stack.last_mut().expect("nonempty").1 = i + 1;
                    let mut ext = anti;
                    ext.insert(i);
                    self.stack.push((ext, i + 1));
                    return Some(ext);
                }
                None => {
                    self.stack.pop();
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn poset(name: &str) -> RootPoset {
        build_poset(RootSystem::of(name).unwrap())
    }

    fn hist(pairs: &[(usize, u64)]) -> BTreeMap<usize, u64> {
        pairs.iter().copied().collect()
    }

    /// All filters by testing every subset (small posets only).
    fn brute_force_filters(p: &RootPoset) -> HashSet<RootSet> {
        let n = p.len();
        (0u128..1 << n)
            .map(|b| RootSet::from_indices((0..n).filter(|i| b >> i & 1 == 1)))
            .filter(|&s| s.iter().all(|i| (0..n).all(|j| !p.leq(i, j) || s.contains(j))))
            .collect()
    }

    #[test]
    fn a2_order() {
        let p = poset("A2");
        assert!(p.leq(0, 2));
        assert!(p.leq(1, 2));
        assert!(!p.comparable(0, 1));
        assert_eq!(p.covers(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn covers_are_the_transitive_reduction() {
        for name in ["A3", "B3", "G2", "D4"] {
            let p = poset(name);
            let n = p.len();
            let mut reduction = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if a != b && p.leq(a, b) && !(0..n).any(|c| c != a && c != b && p.leq(a, c) && p.leq(c, b)) {
                        reduction.push((a, b));
                    }
                }
            }
            let mut covers = p.covers();
            covers.sort_unstable();
            reduction.sort_unstable();
            assert_eq!(covers, reduction, "{name}");
        }
    }

    #[test]
    fn height_shapes() {
        let heights = |name: &str| {
            let p = poset(name);
            let mut h = BTreeMap::new();
            for r in p.rs().positive_roots() {
                *h.entry(r.height()).or_insert(0) += 1;
            }
            h.into_values().collect::<Vec<_>>()
        };
        assert_eq!(heights("B2"), vec![2, 1, 1]);
        assert_eq!(heights("G2"), vec![2, 1, 1, 1, 1]);
    }

    #[test]
    fn a2_filters() {
        let p = poset("A2");
        let filters: Vec<RootSet> = p.enumerate_filters().map(|f| f.0).collect();
        assert_eq!(filters.len(), 5);
        let expected: HashSet<RootSet> = brute_force_filters(&p);
        assert_eq!(filters.iter().copied().collect::<HashSet<_>>(), expected);
        let positive: Vec<_> = p.enumerate_filters().filter(|&f| p.is_positive_filter(f)).collect();
        assert_eq!(positive, vec![Filter(RootSet::EMPTY), Filter(RootSet::singleton(2))]);
    }

    #[test]
    fn filters_match_brute_force() {
        for name in ["A3", "B3", "C3", "G2"] {
            let p = poset(name);
            let got: Vec<RootSet> = p.enumerate_filters().map(|f| f.0).collect();
            let set: HashSet<RootSet> = got.iter().copied().collect();
            assert_eq!(set.len(), got.len(), "{name}: duplicates");
            assert_eq!(set, brute_force_filters(&p), "{name}");
        }
    }

    #[test]
    fn positive_filter_histograms() {
        assert_eq!(poset("A2").count_filters_by_min_elements(true), hist(&[(0, 1), (1, 1)]));
        assert_eq!(poset("G2").count_filters_by_min_elements(true), hist(&[(0, 1), (1, 4)]));
        assert_eq!(poset("F4").count_filters_by_min_elements(true), hist(&[(0, 1), (1, 20), (2, 35), (3, 10)]));
        assert_eq!(
            poset("E6").count_filters_by_min_elements(true),
            hist(&[(0, 1), (1, 30), (2, 135), (3, 175), (4, 70), (5, 7)])
        );
    }

    #[test]
    fn ideals_containing_simples() {
        assert_eq!(poset("A2").count_ideals_by_max_elements(true), hist(&[(1, 1), (2, 1)]));
        assert_eq!(poset("B2").count_ideals_by_max_elements(true), hist(&[(1, 2), (2, 1)]));
    }

    #[test]
    fn complementation_exchanges_histograms() {
        for name in ["A3", "B3", "D4", "F4"] {
            let p = poset(name);
            assert_eq!(p.count_filters_by_min_elements(false), p.count_ideals_by_max_elements(false));
            for f in p.enumerate_filters() {
                let j = p.complement_filter(f);
                assert!(p.is_ideal(j.0));
                assert_eq!(p.complement_ideal(j), f);
            }
        }
    }
}
