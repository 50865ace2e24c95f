//! Dominant regions of the extended Catalan arrangement `A^m_Φ`
//! (hyperplanes `(α, x) = k`, `0 ≤ k ≤ m`), their walls, maximal alcoves and
//! the cells `F_k`.
//!
//! A region is stored by its geometric chain of filters; its inequalities are
//! `k_α < (α, x) < k_α + 1` where `k_α` is the last filter containing `α`
//! (`(α, x) > m` when `k_α = m`).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::alcove::{shi_length, AffineElement, AffineWeyl, ShiVector};
use crate::chains::{
    enumerate_filter_chains, enumerate_ideal_chains, filter_indecomposables, geometric_violation, indecomposables_with,
    rank_table, FilterChain, IdealChain,
};
use crate::error::{AtlasError, Result};
use crate::fm::{Feasibility, Rel};
use crate::poset::RootPoset;
use crate::rootset::RootSet;
use crate::rootsys::RootSystem;
use crate::scalar::binomial;
use crate::{ExactSystem, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Region {
    chain: FilterChain,
    bounded: bool,
}

impl Region {
    pub fn chain(&self) -> &FilterChain {
        &self.chain
    }

    pub fn bounded(&self) -> bool {
        self.bounded
    }

    pub fn m(&self) -> usize {
        self.chain.m()
    }

    pub fn ideal_chain(&self, n: usize) -> IdealChain {
        self.chain.to_ideal_chain(n)
    }

    /// `k` with `k < (α, x) < k + 1` on the region, or `m` for `(α, x) > m`.
    pub fn level(&self, a: usize) -> usize {
        self.chain.level(a)
    }

    /// The defining inequalities in coordinates `c_i = (σ_i, x)`.
    pub fn system(&self, rs: &RootSystem) -> ExactSystem {
        let mut sys = ExactSystem::new(rs.rank());
        for a in 0..rs.num_positive() {
            push_level(&mut sys, &rs.root(a).0, self.level(a), self.m());
        }
        sys
    }
}

fn push_level(sys: &mut ExactSystem, alpha: &[i64], k: usize, m: usize) {
    sys.push_int(alpha, Rel::Gt, k as i64);
    if k < m {
        sys.push_int(alpha, Rel::Lt, k as i64 + 1);
    }
}

pub fn region_of_chain(rs: &RootSystem, chain: &FilterChain) -> Result<Region> {
    let ideals = chain.to_ideal_chain(rs.num_positive());
    if let Some(v) = geometric_violation(rs, &ideals) {
        return Err(AtlasError::NotGeometric { violation: v.to_string() });
    }
    Ok(Region { chain: chain.clone(), bounded: chain.is_positive(rs) })
}

pub fn region_of_ideal_chain(rs: &RootSystem, chain: &IdealChain) -> Result<Region> {
    region_of_chain(rs, &chain.to_filter_chain(rs.num_positive()))
}

/// The region of `A^m_Φ` containing a dominant point that lies on none of
/// its hyperplanes, given as `num / den` in coordinates `(σ_i, x)`.
pub fn region_containing(p: &RootPoset, m: usize, num: &[i64], den: i64) -> Result<Region> {
    let rs = p.rs();
    let n = rs.num_positive();
    let mut filters = vec![RootSet::EMPTY; m];
    for a in 0..n {
        let v: i64 = rs.root(a).0.iter().zip(num).map(|(x, y)| x * y).sum();
        if v <= 0 || (v % den == 0 && v / den <= m as i64) {
            return Err(AtlasError::Internal("point is not in an open dominant region".into()));
        }
        for (r, f) in filters.iter_mut().enumerate() {
            if v > (r as i64 + 1) * den {
                f.insert(a);
            }
        }
    }
    region_of_chain(rs, &FilterChain::new(p, filters)?)
}

pub fn dominant_regions(p: &RootPoset, m: usize) -> Result<Vec<Region>> {
    let rs = p.rs();
    enumerate_filter_chains(p, m)?.map(|c| region_of_chain(rs, &c)).collect()
}

pub fn bounded_regions(p: &RootPoset, m: usize) -> Result<Vec<Region>> {
    let rs = p.rs();
    enumerate_ideal_chains(p, m, true)?.map(|c| region_of_ideal_chain(rs, &c)).collect()
}

/// Shi coordinates of the alcove of a bounded region farthest from `A∘`:
/// the rank table of the region's ideal chain.
pub fn max_alcove(rs: &RootSystem, chain: &IdealChain) -> Result<ShiVector> {
    let table = rank_table(rs, chain)?;
    let shi = ShiVector(table.r.iter().map(|&x| x as i64).collect());
    if let Some((a, b, c)) = shi.violation(rs) {
        return Err(AtlasError::Internal(format!("rank table breaks the alcove condition at ({a}, {b}, {c})")));
    }
    Ok(shi)
}

/// `w_R` for a bounded region.
pub fn max_alcove_element(g: &AffineWeyl, region: &Region) -> Result<AffineElement> {
    let rs = g.rs();
    if !region.bounded() {
        return Err(AtlasError::NotPositive);
    }
    g.shi_to_affine(&max_alcove(rs, &region.ideal_chain(rs.num_positive()))?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub root: usize,
    pub level: usize,
    pub separates: bool,
}

/// Every wall of a region, decided by exact feasibility: `H_{α,k}` is a wall
/// when it meets the closure in a set of dimension `ℓ − 1`.
pub fn walls_and_separation(rs: &RootSystem, region: &Region) -> Result<Vec<Wall>> {
    let m = region.m();
    let l = rs.rank();
    let mut walls = Vec::new();
    for a in 0..rs.num_positive() {
        let k = region.level(a);
        let mut candidates = vec![(k, true)];
        if k < m {
            candidates.push((k + 1, false));
        }
        for (level, from_above) in candidates {
            let mut sys = ExactSystem::new(l);
            for b in 0..rs.num_positive() {
                if b == a {
                    sys.push_int(&rs.root(a).0, Rel::Eq, level as i64);
                } else {
                    push_level(&mut sys, &rs.root(b).0, region.level(b), m);
                }
            }
            match sys.feasibility()? {
                Feasibility::Empty => {}
                Feasibility::Nonempty { dim, .. } => {
                    if dim + 1 != l {
                        return Err(AtlasError::Internal(format!("hyperplane section of dimension {dim}")));
                    }
                    // A∘ satisfies 0 < (α, x) < 1, so only a wall at level ≥ 1
                    // approached from above separates.
                    walls.push(Wall { root: a, level, separates: from_above && level >= 1 });
                }
            }
        }
    }
    Ok(walls)
}

/// Roots `α` with `H_{α,r}` a wall of the region not separating it from `A∘`.
pub fn non_separating(walls: &[Wall], r: usize) -> RootSet {
    walls.iter().filter(|w| w.level == r && !w.separates).map(|w| w.root).collect()
}

/// Roots `α` with `H_{α,r}` a wall of the region separating it from `A∘`.
pub fn separating(walls: &[Wall], r: usize) -> RootSet {
    walls.iter().filter(|w| w.level == r && w.separates).map(|w| w.root).collect()
}

/// Roots `α` with `H_{α,r}` a wall of `w A∘` not separating it from `A∘`.
pub fn alcove_non_separating(g: &AffineWeyl, w: &AffineElement, r: usize) -> RootSet {
    let shi = g.shi(w);
    g.walls(w)
        .into_iter()
        .filter(|&(root, k)| k == r as i64 && !AffineWeyl::separates_from_fundamental(&shi, root, k))
        .map(|(root, _)| root)
        .collect()
}

/// Non-separating `H_{α,r}` walls of a bounded region for each `r = 1..=m`,
/// from the indecomposable roots of its chain (no geometry involved).
pub fn non_separating_by_chain(rs: &RootSystem, region: &Region) -> Result<Vec<RootSet>> {
    let chain = region.ideal_chain(rs.num_positive());
    let table = rank_table(rs, &chain)?;
    (1..=region.m()).map(|r| indecomposables_with(rs, &chain, &table, r)).collect()
}

/// Separating `H_{α,m}` walls of any dominant region, from its chain.
pub fn separating_top_by_chain(rs: &RootSystem, region: &Region) -> RootSet {
    filter_indecomposables(rs, &region.chain)
}

/// Bounded regions keyed by their number of non-separating `H_{α,m}` walls,
/// using the chain description.
pub fn bounded_wall_histogram(p: &RootPoset, m: usize) -> Result<BTreeMap<usize, u64>> {
    let rs = p.rs();
    let mut hist = BTreeMap::new();
    for region in bounded_regions(p, m)? {
        let top = non_separating_by_chain(rs, &region)?.pop().expect("m ≥ 1");
        *hist.entry(top.len()).or_insert(0) += 1;
    }
    Ok(hist)
}

/// Bounded regions keyed by their number of non-separating `H_{α,m}` walls,
/// with walls found by exact feasibility.
pub fn bounded_wall_histogram_fm(p: &RootPoset, m: usize) -> Result<BTreeMap<usize, u64>> {
    let rs = p.rs();
    let mut hist = BTreeMap::new();
    for region in bounded_regions(p, m)? {
        let walls = walls_and_separation(rs, &region)?;
        *hist.entry(non_separating(&walls, m).len()).or_insert(0) += 1;
    }
    Ok(hist)
}

/// Right-ascent counts of the maximal alcoves of the bounded regions of the
/// Catalan arrangement (`m = 1`).
pub fn ascent_histogram(p: &RootPoset) -> Result<BTreeMap<usize, u64>> {
    let g = AffineWeyl::new(p.rs())?;
    let mut hist = BTreeMap::new();
    for region in bounded_regions(p, 1)? {
        let w = max_alcove_element(&g, &region)?;
        *hist.entry(g.ascent_count(&w)).or_insert(0) += 1;
    }
    Ok(hist)
}

/// Position of a point relative to the hyperplanes `H_{α,0}, …, H_{α,m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    /// `k − 1 < (α, x) < k` for `1 ≤ k ≤ m`
    Below(usize),
    /// `(α, x) = m`
    On,
    /// `(α, x) > m`
    Above,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub sides: Vec<Side>,
    pub dim: usize,
    pub bounded: bool,
}

/// Cell counts indexed by dimension: `f[k]` is `f_{k−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellCounts {
    pub f: Vec<u64>,
    pub f_plus: Vec<u64>,
}

fn push_side(sys: &mut ExactSystem, alpha: &[i64], side: Side, m: usize) {
    match side {
        Side::Below(k) => {
            sys.push_int(alpha, Rel::Gt, k as i64 - 1);
            sys.push_int(alpha, Rel::Lt, k as i64);
        }
        Side::On => sys.push_int(alpha, Rel::Eq, m as i64),
        Side::Above => sys.push_int(alpha, Rel::Gt, m as i64),
    }
}

/// All nonempty cells `⋂ H̃_{α,r}` by depth-first search over sides, pruned
/// by feasibility of each partial system.
pub fn enumerate_cells(rs: &RootSystem, m: usize, work_limit: u64) -> Result<Vec<Cell>> {
    if m == 0 {
        return Err(AtlasError::InvalidM(0));
    }
    let n = rs.num_positive();
    let options: Vec<Side> = (1..=m).map(Side::Below).chain([Side::On, Side::Above]).collect();
    let mut out = Vec::new();
    let mut work = 0u64;
    let mut stack: Vec<Vec<Side>> = vec![vec![]];
    while let Some(prefix) = stack.pop() {
        work += 1;
        if work > work_limit {
            return Err(AtlasError::ResourceLimit { what: "cell search nodes".into(), limit: work_limit });
        }
        let mut sys = ExactSystem::new(rs.rank());
        for (a, &side) in prefix.iter().enumerate() {
            push_side(&mut sys, &rs.root(a).0, side, m);
        }
        let Feasibility::Nonempty { dim, .. } = sys.feasibility()? else { continue };
        if prefix.len() == n {
            let bounded = (0..rs.rank()).all(|i| prefix[i] != Side::Above);
            out.push(Cell { sides: prefix, dim, bounded });
            continue;
        }
        for &side in options.iter().rev() {
            let mut next = prefix.clone();
            next.push(side);
            stack.push(next);
        }
    }
    Ok(out)
}

/// `f_{k−1}` and `f⁺_{k−1}` by counting cells of each dimension.
pub fn cell_counts_geometric(rs: &RootSystem, m: usize, work_limit: u64) -> Result<CellCounts> {
    let l = rs.rank();
    let mut f = vec![0; l + 1];
    let mut f_plus = vec![0; l + 1];
    for cell in enumerate_cells(rs, m, work_limit)? {
        f[cell.dim] += 1;
        if cell.bounded {
            f_plus[cell.dim] += 1;
        }
    }
    Ok(CellCounts { f, f_plus })
}

/// Number of elements of `F_k` (or `F⁺_k`) of one dimension.
pub fn count_cells(rs: &RootSystem, m: usize, k: usize, bounded_only: bool, work_limit: u64) -> Result<u64> {
    let c = cell_counts_geometric(rs, m, work_limit)?;
    let v = if bounded_only { c.f_plus } else { c.f };
    Ok(v.get(k).copied().unwrap_or(0))
}

/// `f_{k−1}` as pairs (filter chain, `ℓ − k` of its rank-`m`
/// indecomposables) and `f⁺_{k−1}` as pairs (positive ideal chain, `ℓ − k`
/// of its rank-`m` indecomposables).
pub fn cell_counts_by_pairs(p: &RootPoset, m: usize) -> Result<CellCounts> {
    let rs = p.rs();
    let l = rs.rank() as i64;
    let mut f = vec![0u64; rs.rank() + 1];
    for chain in enumerate_filter_chains(p, m)? {
        let t = filter_indecomposables(rs, &chain).len() as i64;
        for (k, x) in f.iter_mut().enumerate() {
            *x += binomial::<i64>(t, l - k as i64) as u64;
        }
    }
    let mut f_plus = vec![0u64; rs.rank() + 1];
    for chain in enumerate_ideal_chains(p, m, true)? {
        let region = region_of_ideal_chain(rs, &chain)?;
        let t = non_separating_by_chain(rs, &region)?.pop().expect("m ≥ 1").len() as i64;
        for (k, x) in f_plus.iter_mut().enumerate() {
            *x += binomial::<i64>(t, l - k as i64) as u64;
        }
    }
    Ok(CellCounts { f, f_plus })
}

/// `f⁺_{k−1}` as pairs (filter chain, `ℓ − k` rank-`m` indecomposables
/// including every simple one).
pub fn positive_counts_by_simple_pairs(p: &RootPoset, m: usize) -> Result<Vec<u64>> {
    let rs = p.rs();
    let l = rs.rank() as i64;
    let mut out = vec![0u64; rs.rank() + 1];
    for chain in enumerate_filter_chains(p, m)? {
        let ind = filter_indecomposables(rs, &chain);
        let s = ind.intersection(rs.simple_set()).len() as i64;
        let t = ind.len() as i64;
        for (k, x) in out.iter_mut().enumerate() {
            *x += binomial::<i64>(t - s, l - k as i64 - s) as u64;
        }
    }
    Ok(out)
}

/// Shi coordinates of every dominant alcove inside `{(σ_i, x) < m}`, by a
/// depth-first search over the alcove inequalities
/// `r_α + r_β − 1 ≤ r_{α+β} ≤ r_α + r_β`.
pub fn box_alcoves(rs: &RootSystem, m: usize) -> Vec<ShiVector> {
    fn go(rs: &RootSystem, m: i64, r: &mut Vec<i64>, out: &mut Vec<ShiVector>) {
        let a = r.len();
        if a == rs.num_positive() {
            out.push(ShiVector(r.clone()));
            return;
        }
        let (lo, hi) = if a < rs.rank() {
            (1, m)
        } else {
            rs.splits(a).iter().fold((i64::MIN, i64::MAX), |(lo, hi), &(b, c)| {
                (lo.max(r[b] + r[c] - 1), hi.min(r[b] + r[c]))
            })
        };
        for x in lo..=hi {
            r.push(x);
            go(rs, m, r, out);
            r.pop();
        }
    }
    let mut out = Vec::new();
    go(rs, m as i64, &mut Vec::new(), &mut out);
    out
}

/// Bounded dominant regions as classes of [`box_alcoves`] with the same
/// levels `min(r_α, m + 1)`, each with its alcove farthest from `A∘`.
pub fn bounded_regions_by_alcoves(rs: &RootSystem, m: usize) -> BTreeMap<Vec<i64>, ShiVector> {
    let mut classes: BTreeMap<Vec<i64>, ShiVector> = BTreeMap::new();
    for shi in box_alcoves(rs, m) {
        let key: Vec<i64> = shi.0.iter().map(|&x| x.min(m as i64 + 1)).collect();
        match classes.get(&key) {
            Some(best) if shi_length(best) >= shi_length(&shi) => {}
            _ => {
                classes.insert(key, shi);
            }
        }
    }
    classes
}

/// Bounded regions keyed by the number of non-separating `H_{α,m}` walls of
/// their farthest alcove, found from the alcove tiling alone.
pub fn bounded_wall_histogram_alcoves(g: &AffineWeyl, m: usize) -> Result<BTreeMap<usize, u64>> {
    let mut hist = BTreeMap::new();
    for shi in bounded_regions_by_alcoves(g.rs(), m).into_values() {
        let w = g.shi_to_affine(&shi)?;
        *hist.entry(alcove_non_separating(g, &w, m).len()).or_insert(0) += 1;
    }
    Ok(hist)
}

/// A point of the region, exact, from the feasibility oracle.
pub fn sample_point(rs: &RootSystem, region: &Region) -> Result<Vec<Rational>> {
    match region.system(rs).feasibility()? {
        Feasibility::Nonempty { sample, .. } => Ok(sample),
        Feasibility::Empty => Err(AtlasError::Internal("empty region".into())),
    }
}
