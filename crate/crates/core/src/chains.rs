//! Geometric chains of ideals and filters, the rank function `r_α(J)` and
//! indecomposable roots.
//!
//! An ideal chain `J₁ ⊆ … ⊆ J_m` is geometric when
//! `(J_i + J_j) ∩ Φ⁺ ⊆ J_{i+j}` for `i + j ≤ m` and
//! `(I_i + I_j) ∩ Φ⁺ ⊆ I_{min(i+j, m)}` for all `i, j`, where `I_i = Φ⁺ ∖ J_i`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{AtlasError, Result};
use crate::poset::RootPoset;
use crate::rootset::RootSet;
use crate::rootsys::RootSystem;

/// Nested ideals `J₁ ⊆ … ⊆ J_m`; `J₀ = ∅` is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IdealChain {
    ideals: Vec<RootSet>,
}

/// Nested filters `I₁ ⊇ … ⊇ I_m`; `I₀ = Φ⁺` is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FilterChain {
    filters: Vec<RootSet>,
}

impl IdealChain {
    pub fn new(p: &RootPoset, ideals: Vec<RootSet>) -> Result<Self> {
        if ideals.is_empty() {
            return Err(AtlasError::InvalidM(0));
        }
        for (k, &j) in ideals.iter().enumerate() {
            if !p.is_ideal(j) || (k > 0 && !ideals[k - 1].is_subset(j)) {
                return Err(AtlasError::NotNested(k + 1));
            }
        }
        Ok(IdealChain { ideals })
    }

    pub fn m(&self) -> usize {
        self.ideals.len()
    }

    pub fn ideals(&self) -> &[RootSet] {
        &self.ideals
    }

    /// `J_r`, with `J₀ = ∅` and `J_r = J_m` beyond `m`.
    pub fn ideal(&self, r: usize) -> RootSet {
        match r {
            0 => RootSet::EMPTY,
            r => self.ideals[r.min(self.m()) - 1],
        }
    }

    pub fn is_positive(&self, rs: &RootSystem) -> bool {
        rs.simple_set().is_subset(self.ideal(self.m()))
    }

    pub fn to_filter_chain(&self, n: usize) -> FilterChain {
        FilterChain { filters: self.ideals.iter().map(|j| j.complement(n)).collect() }
    }

    /// Smallest `r` with `α ∈ J_r`, if any.
    pub fn level(&self, a: usize) -> Option<usize> {
        self.ideals.iter().position(|j| j.contains(a)).map(|k| k + 1)
    }
}

impl FilterChain {
    pub fn new(p: &RootPoset, filters: Vec<RootSet>) -> Result<Self> {
        if filters.is_empty() {
            return Err(AtlasError::InvalidM(0));
        }
        for (k, &f) in filters.iter().enumerate() {
            if !p.is_filter(f) || (k > 0 && !f.is_subset(filters[k - 1])) {
                return Err(AtlasError::NotNested(k + 1));
            }
        }
        Ok(FilterChain { filters })
    }

    pub fn m(&self) -> usize {
        self.filters.len()
    }

    pub fn filters(&self) -> &[RootSet] {
        &self.filters
    }

    /// `I_r`, with `I₀ = Φ⁺` and `I_r = I_m` beyond `m`.
    pub fn filter(&self, r: usize, n: usize) -> RootSet {
        match r {
            0 => RootSet::full(n),
            r => self.filters[r.min(self.m()) - 1],
        }
    }

    /// Positive when `I_m` contains no simple root.
    pub fn is_positive(&self, rs: &RootSystem) -> bool {
        self.filters[self.m() - 1].intersection(rs.simple_set()).is_empty()
    }

    pub fn to_ideal_chain(&self, n: usize) -> IdealChain {
        IdealChain { ideals: self.filters.iter().map(|f| f.complement(n)).collect() }
    }

    /// Largest `r ≤ m` with `α ∈ I_r`.
    pub fn level(&self, a: usize) -> usize {
        self.filters.iter().take_while(|f| f.contains(a)).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Condition {
    /// `(J_i + J_j) ∩ Φ⁺ ⊆ J_{i+j}`
    IdealSum,
    /// `(I_i + I_j) ∩ Φ⁺ ⊆ I_{min(i+j,m)}`
    FilterSum,
}

/// Witness of a failed geometricity condition: `α + β` should lie in the
/// target set but does not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub i: usize,
    pub j: usize,
    pub alpha: usize,
    pub beta: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (set, target) = match self.condition {
            Condition::IdealSum => ("J", "J"),
            Condition::FilterSum => ("I", "I"),
        };
        write!(
            f,
            "root {} in {set}_{} plus root {} in {set}_{} is a root outside {target}_{}",
            self.alpha,
            self.i,
            self.beta,
            self.j,
            self.i + self.j
        )
    }
}

/// First `(a, b)` with `a ∈ x`, `b ∈ y`, `a + b ∈ Φ⁺ ∖ target`.
fn sum_escape(rs: &RootSystem, x: RootSet, y: RootSet, target: RootSet) -> Option<(usize, usize)> {
    for &(a, b, c) in rs.additive_triples() {
        if target.contains(c) {
            continue;
        }
        if x.contains(a) && y.contains(b) {
            return Some((a, b));
        }
        if x.contains(b) && y.contains(a) {
            return Some((b, a));
        }
    }
    None
}

/// Conditions whose target index is `k = js.len()`, given `J₁..J_k` and the
/// final length `m`. Checking this for every prefix checks the whole chain.
fn step_violation(rs: &RootSystem, js: &[RootSet], m: usize) -> Option<Violation> {
    let k = js.len();
    let n = rs.num_positive();
    let jk = js[k - 1];
    for i in 1..=k / 2 {
        let j = k - i;
        if let Some((alpha, beta)) = sum_escape(rs, js[i - 1], js[j - 1], jk) {
            return Some(Violation { condition: Condition::IdealSum, i, j, alpha, beta });
        }
    }
    let filter = |r: usize| js[r - 1].complement(n);
    let ik = jk.complement(n);
    let pairs: Vec<(usize, usize)> = if k < m {
        (1..=k / 2).map(|i| (i, k - i)).collect()
    } else {
        (1..=m).flat_map(|i| (i..=m).filter(move |&j| i + j >= m).map(move |j| (i, j))).collect()
    };
    for (i, j) in pairs {
        if let Some((alpha, beta)) = sum_escape(rs, filter(i), filter(j), ik) {
            return Some(Violation { condition: Condition::FilterSum, i, j, alpha, beta });
        }
    }
    None
}

/// First violated condition of a nested ideal chain, or `None` if geometric.
pub fn geometric_violation(rs: &RootSystem, chain: &IdealChain) -> Option<Violation> {
    let m = chain.m();
    (1..=m).find_map(|k| step_violation(rs, &chain.ideals[..k], m))
}

pub fn is_geometric(rs: &RootSystem, chain: &IdealChain) -> bool {
    geometric_violation(rs, chain).is_none()
}

pub fn is_geometric_filters(rs: &RootSystem, chain: &FilterChain) -> bool {
    is_geometric(rs, &chain.to_ideal_chain(rs.num_positive()))
}

/// Depth-first enumeration of geometric ideal chains. Each ideal is chosen
/// from the supersets of the previous one, and a prefix is abandoned as soon
/// as a condition whose target index it has reached fails.
pub struct IdealChains<'a> {
    rs: &'a RootSystem,
    m: usize,
    positive_only: bool,
    all: Vec<RootSet>,
    prefix: Vec<RootSet>,
    cursor: Vec<usize>,
}

impl Iterator for IdealChains<'_> {
    type Item = IdealChain;

    fn next(&mut self) -> Option<IdealChain> {
        let simples = self.rs.simple_set();
        while let Some(pos) = self.cursor.last_mut() {
            let depth = self.prefix.len();
            let lower = self.prefix.last().copied().unwrap_or(RootSet::EMPTY);
            let Some(off) = self.all[*pos..].iter().position(|&j| lower.is_subset(j)) else {
                self.cursor.pop();
                self.prefix.pop();
                continue;
            };
            let idx = *pos + off;
            *pos = idx + 1;
            let cand = self.all[idx];
            if depth + 1 == self.m && self.positive_only && !simples.is_subset(cand) {
                continue;
            }
            self.prefix.push(cand);
            if step_violation(self.rs, &self.prefix, self.m).is_some() {
                self.prefix.pop();
                continue;
            }
            if self.prefix.len() == self.m {
                let chain = IdealChain { ideals: self.prefix.clone() };
                self.prefix.pop();
                return Some(chain);
            }
            self.cursor.push(0);
        }
        None
    }
}

/// Every geometric chain of ideals of length `m` exactly once.
pub fn enumerate_ideal_chains(p: &RootPoset, m: usize, positive_only: bool) -> Result<IdealChains<'_>> {
    if m == 0 {
        return Err(AtlasError::InvalidM(0));
    }
    Ok(IdealChains {
        rs: p.rs(),
        m,
        positive_only,
        all: p.enumerate_ideals().map(|j| j.0).collect(),
        prefix: Vec::with_capacity(m),
        cursor: vec![0],
    })
}

/// Every geometric chain of filters of length `m`, as complements of the
/// geometric ideal chains.
pub fn enumerate_filter_chains(p: &RootPoset, m: usize) -> Result<impl Iterator<Item = FilterChain> + '_> {
    let n = p.len();
    Ok(enumerate_ideal_chains(p, m, false)?.map(move |c| c.to_filter_chain(n)))
}

/// `r_α(J)` for every positive root of a positive geometric chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankTable {
    pub r: Vec<usize>,
}

impl RankTable {
    pub fn get(&self, a: usize) -> usize {
        self.r[a]
    }

    /// First additive triple violating `r_α + r_β − 1 ≤ r_{α+β} ≤ r_α + r_β`.
    pub fn shi_violation(&self, rs: &RootSystem) -> Option<(usize, usize, usize)> {
        rs.additive_triples().iter().copied().find(|&(a, b, c)| {
            let (ra, rb, rc) = (self.r[a], self.r[b], self.r[c]);
            rc + 1 < ra + rb || rc > ra + rb
        })
    }

    /// Values above `m` shown as `m + 1`.
    pub fn capped(&self, m: usize) -> Vec<usize> {
        self.r.iter().map(|&x| x.min(m + 1)).collect()
    }
}

/// Minimum of `r₁ + … + r_k` over decompositions `α = α₁ + … + α_k` into
/// positive roots with `α_i ∈ J_{r_i}`.
pub fn rank_table(rs: &RootSystem, chain: &IdealChain) -> Result<RankTable> {
    if !chain.is_positive(rs) {
        return Err(AtlasError::NotPositive);
    }
    if let Some(v) = geometric_violation(rs, chain) {
        return Err(AtlasError::NotGeometric { violation: v.to_string() });
    }
    let m = chain.m();
    let n = rs.num_positive();
    let mut r = vec![usize::MAX; n];
    // Roots are sorted by height, so both parts of a split come first.
    for c in 0..n {
        let mut best = chain.level(c).unwrap_or(usize::MAX);
        for &(a, b) in rs.splits(c) {
            best = best.min(r[a].saturating_add(r[b]));
        }
        r[c] = best;
    }
    for c in 0..n {
        let rc = r[c];
        if rc == usize::MAX {
            return Err(AtlasError::Internal(format!("root {c} has no finite rank")));
        }
        if rc <= m && !chain.ideal(rc).contains(c) {
            return Err(AtlasError::Internal(format!("root {c} of rank {rc} is outside J_{rc}")));
        }
        if rc > m && !rs.splits(c).iter().any(|&(a, b)| r[a] + r[b] == rc && r[a].min(r[b]) <= m) {
            return Err(AtlasError::Internal(format!("root {c} of rank {rc} has no short split")));
        }
    }
    Ok(RankTable { r })
}

/// Roots that are indecomposable of rank `r` with respect to `chain`.
pub fn indecomposables_with(rs: &RootSystem, chain: &IdealChain, table: &RankTable, r: usize) -> Result<RootSet> {
    let m = chain.m();
    if r == 0 || r > m {
        return Err(AtlasError::RankOutOfRange { r, m });
    }
    let n = rs.num_positive();
    let level = |a: usize| chain.level(a).unwrap_or(usize::MAX);
    let mut out = RootSet::EMPTY;
    for a in 0..n {
        if table.r[a] != r {
            continue;
        }
        if rs.splits(a).iter().any(|&(b, c)| level(b).saturating_add(level(c)) <= r) {
            continue;
        }
        let cond_iii = (0..n).all(|b| match rs.sum_index(a, b) {
            Some(s) if table.r[s] <= m => {
                let t = table.r[s];
                t > r && chain.ideal(t - r).contains(b)
            }
            _ => true,
        });
        if cond_iii {
            out.insert(a);
        }
    }
    Ok(out)
}

pub fn indecomposables(rs: &RootSystem, chain: &IdealChain, r: usize) -> Result<RootSet> {
    let table = rank_table(rs, chain)?;
    indecomposables_with(rs, chain, &table, r)
}

/// Rank-`m` indecomposables by the maximality criterion: maximal elements of
/// `J_m ∖ J_{m−1}` admitting no split `β + γ` with `β ∈ J_i`, `γ ∈ J_j`,
/// `i + j = m`.
pub fn top_indecomposables_by_maximality(p: &RootPoset, chain: &IdealChain) -> RootSet {
    let rs = p.rs();
    let m = chain.m();
    let fresh = chain.ideal(m).difference(chain.ideal(m - 1));
    let level = |a: usize| chain.level(a).unwrap_or(usize::MAX);
    p.maximal_elements(fresh)
        .iter()
        .filter(|&a| !rs.splits(a).iter().any(|&(b, c)| level(b).saturating_add(level(c)) <= m))
        .collect()
}

/// Number of indecomposables of each rank `1..=m`.
pub fn indecomposable_profile(rs: &RootSystem, chain: &IdealChain) -> Result<Vec<usize>> {
    let table = rank_table(rs, chain)?;
    (1..=chain.m()).map(|r| indecomposables_with(rs, chain, &table, r).map(|s| s.len())).collect()
}

/// Rank-`m` indecomposables of a filter chain: `α ∈ I_m` not of the form
/// `β + γ` with `β ∈ I_i`, `γ ∈ I_j`, `i, j ≥ 0`, `i + j = m`.
pub fn filter_indecomposables(rs: &RootSystem, chain: &FilterChain) -> RootSet {
    let m = chain.m();
    let top = chain.filters[m - 1];
    top.iter()
        .filter(|&a| !rs.splits(a).iter().any(|&(b, c)| chain.level(b) + chain.level(c) >= m))
        .collect()
}

/// Positive geometric ideal chains keyed by their number of rank-`m`
/// indecomposables.
pub fn positive_chain_histogram(p: &RootPoset, m: usize) -> Result<BTreeMap<usize, u64>> {
    let mut hist = BTreeMap::new();
    for chain in enumerate_ideal_chains(p, m, true)? {
        let top = top_indecomposables_by_maximality(p, &chain);
        *hist.entry(top.len()).or_insert(0) += 1;
    }
    Ok(hist)
}

/// Geometric filter chains keyed by their number of rank-`m` indecomposables.
pub fn filter_chain_histogram(p: &RootPoset, m: usize) -> Result<BTreeMap<usize, u64>> {
    let rs = p.rs();
    let mut hist = BTreeMap::new();
    for chain in enumerate_filter_chains(p, m)? {
        *hist.entry(filter_indecomposables(rs, &chain).len()).or_insert(0) += 1;
    }
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::build_poset;
    use std::collections::HashSet;

    fn poset(name: &str) -> RootPoset {
        build_poset(RootSystem::of(name).unwrap())
    }

    /// Geometricity straight from the definition, quantifying over all
    /// `i, j ≤ 2m` with `I_i = I_m` beyond `m`.
    fn geometric_by_definition(rs: &RootSystem, chain: &IdealChain) -> bool {
        let m = chain.m();
        let n = rs.num_positive();
        let sums = |x: RootSet, y: RootSet| -> RootSet {
            let mut out = RootSet::EMPTY;
            for a in x.iter() {
                for b in y.iter() {
                    if let Some(c) = rs.index_of(&rs.root(a).add(rs.root(b))) {
                        out.insert(c);
                    }
                }
            }
            out
        };
        let filter = |r: usize| chain.ideal(r).complement(n);
        for i in 0..=2 * m {
            for j in 0..=2 * m {
                if i >= 1 && j >= 1 && i + j <= m && !sums(chain.ideal(i), chain.ideal(j)).is_subset(chain.ideal(i + j)) {
                    return false;
                }
                if !sums(filter(i), filter(j)).is_subset(filter(i + j)) {
                    return false;
                }
            }
        }
        true
    }

    /// Every nested sequence of ideals, geometric or not.
    fn all_nested(p: &RootPoset, m: usize) -> Vec<IdealChain> {
        let ideals: Vec<RootSet> = p.enumerate_ideals().map(|j| j.0).collect();
        let mut out: Vec<Vec<RootSet>> = vec![vec![]];
        for _ in 0..m {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    let lower = prefix.last().copied().unwrap_or(RootSet::EMPTY);
                    ideals.iter().filter(move |j| lower.is_subset(**j)).map(move |&j| {
                        let mut next = prefix.clone();
                        next.push(j);
                        next
                    })
                })
                .collect();
        }
        out.into_iter().map(|ideals| IdealChain::new(p, ideals).unwrap()).collect()
    }

    /// Minimum weighted decomposition over all integer vectors below `α`,
    /// not only roots, by unbounded knapsack.
    fn rank_by_knapsack(rs: &RootSystem, chain: &IdealChain, target: usize) -> usize {
        let alpha = &rs.root(target).0;
        let dims: Vec<usize> = alpha.iter().map(|&c| c as usize + 1).collect();
        let total: usize = dims.iter().product();
        let encode = |v: &[i64]| v.iter().zip(&dims).rev().fold(0usize, |acc, (&x, &d)| acc * d + x as usize);
        let mut best = vec![usize::MAX; total];
        best[0] = 0;
        let mut vectors: Vec<Vec<i64>> = vec![vec![]];
        for &d in &dims {
            vectors = vectors.into_iter().flat_map(|v| (0..d as i64).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        vectors.sort_by_key(|v| v.iter().sum::<i64>());
        for v in &vectors {
            let here = best[encode(v)];
            if here == usize::MAX {
                continue;
            }
            for a in 0..rs.num_positive() {
                let Some(w) = chain.level(a) else { continue };
                let next: Vec<i64> = v.iter().zip(&rs.root(a).0).map(|(x, y)| x + y).collect();
                if next.iter().zip(alpha).all(|(x, y)| x <= y) {
                    let k = encode(&next);
                    best[k] = best[k].min(here + w);
                }
            }
        }
        best[encode(alpha)]
    }

    #[test]
    fn incremental_check_matches_definition() {
        for (name, m) in [("A2", 1), ("A2", 2), ("A2", 3), ("B2", 2), ("G2", 2), ("A3", 2)] {
            let p = poset(name);
            for chain in all_nested(&p, m) {
                assert_eq!(is_geometric(p.rs(), &chain), geometric_by_definition(p.rs(), &chain), "{name} {chain:?}");
            }
        }
    }

    #[test]
    fn enumeration_matches_exhaustive_filtering() {
        for (name, m) in [("A2", 2), ("B2", 3), ("G2", 2), ("A3", 2), ("C3", 1)] {
            let p = poset(name);
            for positive in [false, true] {
                let got: Vec<IdealChain> = enumerate_ideal_chains(&p, m, positive).unwrap().collect();
                let set: HashSet<_> = got.iter().cloned().collect();
                assert_eq!(set.len(), got.len());
                let expected: HashSet<_> = all_nested(&p, m)
                    .into_iter()
                    .filter(|c| geometric_by_definition(p.rs(), c) && (!positive || c.is_positive(p.rs())))
                    .collect();
                assert_eq!(set, expected, "{name} m={m} positive={positive}");
            }
        }
    }

    #[test]
    fn chain_counts() {
        let count = |name: &str, m: usize, positive: bool| enumerate_ideal_chains(&poset(name), m, positive).unwrap().count();
        assert_eq!(count("A2", 2, true), 7);
        assert_eq!(count("A2", 1, true), 2);
        assert_eq!(count("B2", 1, true), 3);
        assert_eq!(count("A2", 1, false), 5);
        assert_eq!(count("A2", 2, false), 12);
        for m in 1..=5 {
            assert_eq!(count("A1", m, false), m + 1);
            assert_eq!(count("A1", m, true), m);
        }
    }

    #[test]
    fn examples_of_geometricity() {
        let p = poset("A2");
        let rs = p.rs();
        let simples = RootSet::from_indices([0, 1]);
        let c = IdealChain::new(&p, vec![simples, RootSet::full(3)]).unwrap();
        assert!(is_geometric(rs, &c) && c.is_positive(rs));
        let c = IdealChain::new(&p, vec![RootSet::singleton(0), RootSet::singleton(0)]).unwrap();
        assert!(is_geometric(rs, &c) && !c.is_positive(rs));
        let c = IdealChain::new(&p, vec![RootSet::EMPTY, simples]).unwrap();
        assert!(is_geometric(rs, &c));
        let c = IdealChain::new(&p, vec![simples, simples]).unwrap();
        let v = geometric_violation(rs, &c).expect("σ₁ + σ₂ escapes J₂");
        assert_eq!(v.condition, Condition::IdealSum);
        assert_eq!((v.i, v.j), (1, 1));
        assert!(IdealChain::new(&p, vec![simples, RootSet::singleton(0)]).is_err());
    }

    #[test]
    fn rank_table_examples() {
        let p = poset("A2");
        let rs = p.rs();
        let simples = RootSet::from_indices([0, 1]);
        let c = IdealChain::new(&p, vec![simples, RootSet::full(3)]).unwrap();
        assert_eq!(rank_table(rs, &c).unwrap().r, vec![1, 1, 2]);
        let c = IdealChain::new(&p, vec![simples, simples]).unwrap();
        assert!(matches!(rank_table(rs, &c), Err(AtlasError::NotGeometric { .. })));
        let c = IdealChain::new(&p, vec![RootSet::singleton(0)]).unwrap();
        assert!(matches!(rank_table(rs, &c), Err(AtlasError::NotPositive)));
    }

    #[test]
    fn rank_table_matches_knapsack_and_shi_bounds() {
        for (name, m) in [("A2", 3), ("B2", 3), ("G2", 2), ("A3", 2), ("B3", 2), ("C3", 2)] {
            let p = poset(name);
            let rs = p.rs();
            for chain in enumerate_ideal_chains(&p, m, true).unwrap() {
                let table = rank_table(rs, &chain).unwrap();
                for a in 0..rs.num_positive() {
                    assert_eq!(table.r[a], rank_by_knapsack(rs, &chain, a), "{name} {chain:?} root {a}");
                }
                assert_eq!(table.shi_violation(rs), None);
                assert!(chain.ideal(1).iter().all(|a| table.r[a] == 1));
            }
        }
    }

    #[test]
    fn indecomposable_examples() {
        let p = poset("A2");
        let rs = p.rs();
        let full = IdealChain::new(&p, vec![RootSet::full(3)]).unwrap();
        assert_eq!(indecomposables(rs, &full, 1).unwrap(), RootSet::singleton(2));
        let simples = IdealChain::new(&p, vec![RootSet::from_indices([0, 1])]).unwrap();
        assert_eq!(indecomposables(rs, &simples, 1).unwrap(), RootSet::from_indices([0, 1]));
        assert!(matches!(indecomposables(rs, &full, 2), Err(AtlasError::RankOutOfRange { .. })));
        assert_eq!(positive_chain_histogram(&p, 1).unwrap(), [(1, 1), (2, 1)].into_iter().collect());
    }

    #[test]
    fn definition_matches_maximality_criterion_and_rank_identities() {
        for (name, m) in [("A2", 3), ("B2", 3), ("G2", 3), ("A3", 3), ("B3", 2), ("C3", 2), ("D4", 2)] {
            let p = poset(name);
            let rs = p.rs();
            for chain in enumerate_ideal_chains(&p, m, true).unwrap() {
                let table = rank_table(rs, &chain).unwrap();
                let top = indecomposables_with(rs, &chain, &table, m).unwrap();
                assert_eq!(top, top_indecomposables_by_maximality(&p, &chain), "{name} {chain:?}");
                for r in 1..=m {
                    for a in indecomposables_with(rs, &chain, &table, r).unwrap().iter() {
                        for &(b, c) in rs.splits(a) {
                            assert_eq!(table.r[a] + 1, table.r[b] + table.r[c]);
                        }
                        for b in 0..rs.num_positive() {
                            if let Some(s) = rs.sum_index(a, b) {
                                assert_eq!(table.r[a] + table.r[b], table.r[s]);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn filter_side() {
        let p = poset("A2");
        let rs = p.rs();
        let mut counts: Vec<usize> = enumerate_filter_chains(&p, 1).unwrap().map(|c| filter_indecomposables(rs, &c).len()).collect();
        counts.sort_unstable();
        assert_eq!(counts, vec![0, 1, 1, 1, 2]);
        assert_eq!(filter_chain_histogram(&p, 2).unwrap().values().sum::<u64>(), 12);
        for name in ["A3", "B3", "D4", "G2"] {
            let p = poset(name);
            let top = FilterChain::new(&p, vec![RootSet::full(p.len())]).unwrap();
            assert_eq!(filter_indecomposables(p.rs(), &top), p.rs().simple_set());
        }
    }

    #[test]
    fn positive_ideal_chains_are_positive_filter_chains() {
        for (name, m) in [("A3", 2), ("B3", 2), ("G2", 3)] {
            let p = poset(name);
            let rs = p.rs();
            let positive = enumerate_ideal_chains(&p, m, true).unwrap().count();
            let filters = enumerate_filter_chains(&p, m).unwrap().filter(|c| c.is_positive(rs)).count();
            assert_eq!(positive, filters);
            for c in enumerate_filter_chains(&p, m).unwrap() {
                assert!(is_geometric_filters(rs, &c));
                assert_eq!(c.to_ideal_chain(p.len()).to_filter_chain(p.len()), c);
            }
        }
    }
}
