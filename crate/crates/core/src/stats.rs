//! Closed-form counts, the f/h change of basis, and the tabulated
//! positive-filter counts of the exceptional types.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::chains::{
    enumerate_ideal_chains, filter_chain_histogram, indecomposable_profile, positive_chain_histogram, rank_table,
};
use crate::cluster::{parabolic_face_sides, ModelFamily, PolygonModel};
use crate::error::{AtlasError, Result};
use crate::lattice::{orbit_count_bruteforce, Dilation, SimplexSigma};
use crate::poset::{build_poset, RootPoset};
use crate::regions::{
    bounded_regions, bounded_regions_by_alcoves, bounded_wall_histogram_alcoves, bounded_wall_histogram_fm,
    cell_counts_by_pairs, cell_counts_geometric, max_alcove_element, positive_counts_by_simple_pairs,
    region_containing, sample_point, walls_and_separation,
};
use crate::rootsys::{build_root_system, CartanType, Family, RootSystem};
use crate::scalar::{binomial, Integer};
use crate::{ExactSystem, Rational};

/// `h` from `f`, where `f[k] = f_{k−1}` and
/// `Σ f_{k−1} (x−1)^{ℓ−k} = Σ h_i x^{ℓ−i}`.
pub fn h_from_f<T: Integer>(f: &[T]) -> Vec<T> {
    let l = f.len() as i64 - 1;
    (0..=l)
        .map(|i| {
            (0..=i).fold(T::zero(), |acc, k| {
                let term = binomial::<T>(l - k, i - k) * f[k as usize].clone();
                if (i - k) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect()
}

/// Inverse of [`h_from_f`]: `f_{k−1} = Σ_{i ≤ k} C(ℓ−i, k−i) h_i`.
pub fn f_from_h<T: Integer>(h: &[T]) -> Vec<T> {
    let l = h.len() as i64 - 1;
    (0..=l)
        .map(|k| (0..=k).fold(T::zero(), |acc, i| acc + binomial::<T>(l - i, k - i) * h[i as usize].clone()))
        .collect()
}

/// `Π (e_i + s) / (e_i + 1)` over the exponents, exactly.
pub fn exponent_product(exponents: &[i64], s: i64) -> Rational {
    exponents.iter().fold(Rational::one(), |acc, &e| acc * Rational::new((e + s).into(), (e + 1).into()))
}

fn integral(q: Rational, what: &str) -> Result<BigInt> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(AtlasError::Internal(format!("{what} is not an integer: {q}")))
    }
}

/// `N⁺(Φ, m) = Π (e_i + mh − 1)/(e_i + 1)`.
pub fn n_plus_formula(rs: &RootSystem, m: i64) -> Result<BigInt> {
    let h = rs.coxeter_number()?;
    integral(exponent_product(&rs.exponents(), m * h - 1), "N⁺")
}

/// `N(Φ, m) = Π (e_i + mh + 1)/(e_i + 1)`, for any integer `m`.
pub fn n_total_formula(rs: &RootSystem, m: i64) -> Result<BigInt> {
    let h = rs.coxeter_number()?;
    integral(exponent_product(&rs.exponents(), m * h + 1), "N")
}

/// `C(a, i) C(b, i) / (i + 1)`, the division being exact.
fn narayana_like(a: i64, b: i64, i: i64) -> BigInt {
    let num = binomial::<BigInt>(a, i) * binomial::<BigInt>(b, i);
    debug_assert!((&num % BigInt::from(i + 1)).is_zero());
    num / BigInt::from(i + 1)
}

/// `h⁺_i(Φ, m)` for `i = 0..=ℓ` in the classical types.
pub fn h_plus_closed_form(ctype: CartanType, m: i64) -> Option<Vec<BigInt>> {
    let l = ctype.rank as i64;
    let row = |i: i64| -> BigInt {
        match ctype.family {
            Family::A => {
                let n = l + 1;
                narayana_like(n - 1, m * n - 2, i)
            }
            Family::B | Family::C => binomial::<BigInt>(l, i) * binomial::<BigInt>(m * l - 1, i),
            _ => {
                let n = l;
                binomial::<BigInt>(n, i) * binomial::<BigInt>(m * (n - 1) - 1, i)
                    + binomial::<BigInt>(n - 2, i - 2) * binomial::<BigInt>(m * (n - 1), i)
            }
        }
    };
    matches!(ctype.family, Family::A | Family::B | Family::C | Family::D).then(|| (0..=l).map(row).collect())
}

/// `f⁺_{k−1}(Φ, m)` for `k = 0..=ℓ` in the classical types.
pub fn f_plus_closed_form(ctype: CartanType, m: i64) -> Option<Vec<BigInt>> {
    let l = ctype.rank as i64;
    let row = |k: i64| -> BigInt {
        match ctype.family {
            Family::A => {
                let n = l + 1;
                narayana_like(n - 1, m * n + k - 1, k)
            }
            Family::B | Family::C => binomial::<BigInt>(l, k) * binomial::<BigInt>(m * l + k - 1, k),
            _ => {
                let n = l;
                binomial::<BigInt>(n, k) * binomial::<BigInt>(m * (n - 1) + k - 1, k)
                    + binomial::<BigInt>(n - 2, k - 2) * binomial::<BigInt>(m * (n - 1) + k - 2, k)
            }
        }
    };
    matches!(ctype.family, Family::A | Family::B | Family::C | Family::D).then(|| (0..=l).map(row).collect())
}

/// Face numbers of the positive part of the generalized cluster complex:
/// types A, B, C for every `m`, type D for `m = 1`.
pub fn positive_cluster_f_closed_form(ctype: CartanType, m: i64) -> Option<Vec<BigInt>> {
    match ctype.family {
        Family::A | Family::B | Family::C => f_plus_closed_form(ctype, m),
        Family::D if m == 1 => f_plus_closed_form(ctype, 1),
        _ => None,
    }
}

/// Positive filters of the exceptional root posets by number of minimal
/// elements, `i = 0, 1, …`.
pub fn exceptional_table(ctype: CartanType) -> Option<&'static [u64]> {
    match (ctype.family, ctype.rank) {
        (Family::G, 2) => Some(&[1, 4]),
        (Family::F, 4) => Some(&[1, 20, 35, 10]),
        (Family::E, 6) => Some(&[1, 30, 135, 175, 70, 7]),
        (Family::E, 7) => Some(&[1, 56, 420, 952, 770, 216, 16]),
        (Family::E, 8) => Some(&[1, 112, 1323, 4774, 6622, 3696, 770, 44]),
        _ => None,
    }
}

/// `(−1)^ℓ N(Φ, −m)`, which equals `N⁺(Φ, m − 1)`.
pub fn reciprocal_count(rs: &RootSystem, m: i64) -> Result<BigInt> {
    let n = n_total_formula(rs, -m)?;
    Ok(if rs.rank().is_multiple_of(2) { n } else { -n })
}

/// Convert a histogram keyed by `i` into a dense vector of length `len`.
pub fn dense(hist: &std::collections::BTreeMap<usize, u64>, len: usize) -> Vec<u64> {
    let mut v = vec![0; len];
    for (&i, &c) in hist {
        if i < len {
            v[i] += c;
        }
    }
    v
}

/// Reverse a vector indexed by `i` into one indexed by `ℓ − i`.
pub fn reversed<T: Clone>(v: &[T]) -> Vec<T> {
    v.iter().rev().cloned().collect()
}

pub fn to_bigint(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn is_nonnegative(v: &[BigInt]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

/// What a check is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Topic {
    /// Totals: chains, regions, lattice points, formula.
    Counts,
    /// Histograms by number of rank-`m` walls or indecomposables.
    Refined,
    /// Positive filters by minimal elements and the tabulated rows.
    Filters,
    /// Face numbers `f` and `f⁺` by several routes.
    Faces,
    /// Polygon models against the region side.
    Cluster,
    /// The bijections between chains, regions, alcoves and points.
    Bijection,
    /// Structural identities and closed forms.
    Identities,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub topic: Topic,
    pub name: String,
    pub status: Status,
    /// The values compared, one entry per route.
    pub detail: String,
}

impl Check {
    fn compare<T: PartialEq + Debug>(topic: Topic, name: &str, routes: &[(&str, T)]) -> Check {
        let passed = routes.windows(2).all(|w| w[0].1 == w[1].1);
        let detail = routes.iter().map(|(r, v)| format!("{r}={v:?}")).collect::<Vec<_>>().join(" ");
        Check { topic, name: name.into(), status: if passed { Status::Pass } else { Status::Fail }, detail }
    }

    fn holds(topic: Topic, name: &str, ok: bool, detail: String) -> Check {
        Check { topic, name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, detail }
    }

    fn skipped(topic: Topic, name: &str, why: &str) -> Check {
        Check { topic, name: name.into(), status: Status::Skipped, detail: why.into() }
    }

    fn failed(topic: Topic, name: &str, err: AtlasError) -> Check {
        Check { topic, name: name.into(), status: Status::Fail, detail: err.to_string() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Depth {
    Quick,
    Full,
}

/// Statistics of `(Φ, m)` and the checks run on them.
#[derive(Debug, Clone, Serialize)]
pub struct StatReport {
    pub ctype: CartanType,
    pub m: usize,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "N_plus")]
    pub n_plus: u64,
    pub h: Vec<u64>,
    pub h_plus: Vec<u64>,
    pub f: Vec<u64>,
    pub f_plus: Vec<u64>,
    pub sources: BTreeMap<String, String>,
    pub checks: Vec<Check>,
}

impl StatReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

fn small(x: &BigInt) -> Result<u64> {
    x.to_u64().ok_or_else(|| AtlasError::Internal(format!("{x} does not fit in 64 bits")))
}

fn unsigned(v: &[i64]) -> Vec<u64> {
    v.iter().map(|&x| x.max(0) as u64).collect()
}

fn signed(v: &[u64]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

/// `h` and `h⁺` from the chain side: `h_i` counts filter chains with
/// `ℓ − i` rank-`m` indecomposables, `h⁺_{ℓ−i}` positive ideal chains with
/// `i` of them.
pub fn h_vectors(p: &RootPoset, m: usize) -> Result<(Vec<u64>, Vec<u64>)> {
    let len = p.rs().rank() + 1;
    let h = reversed(&dense(&filter_chain_histogram(p, m)?, len));
    let h_plus = reversed(&dense(&positive_chain_histogram(p, m)?, len));
    Ok((h, h_plus))
}

/// The statistics alone, from the chain side and the product formulas.
pub fn stat_report(rs: &RootSystem, m: usize) -> Result<StatReport> {
    let ctype = rs.ctype()?;
    let p = build_poset(rs.clone());
    let (h, h_plus) = h_vectors(&p, m)?;
    let f = unsigned(&f_from_h(&signed(&h)));
    let f_plus = unsigned(&f_from_h(&signed(&h_plus)));
    let sources = [
        ("N", "formula"),
        ("N_plus", "formula"),
        ("h", "chains"),
        ("h_plus", "chains"),
        ("f", "chains"),
        ("f_plus", "chains"),
    ]
    .into_iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    Ok(StatReport {
        ctype,
        m,
        n: small(&n_total_formula(rs, m as i64)?)?,
        n_plus: small(&n_plus_formula(rs, m as i64)?)?,
        h,
        h_plus,
        f,
        f_plus,
        sources,
        checks: Vec::new(),
    })
}

/// `f⁺` of every irreducible type met as a parabolic factor, memoized.
struct PositiveFaces {
    m: usize,
    cache: HashMap<CartanType, Vec<i64>>,
}

impl PositiveFaces {
    fn get(&mut self, ctype: CartanType) -> Result<Vec<i64>> {
        if let Some(v) = self.cache.get(&ctype) {
            return Ok(v.clone());
        }
        let p = build_poset(build_root_system(ctype));
        let (_, h_plus) = h_vectors(&p, self.m)?;
        let v = f_from_h(&signed(&h_plus));
        self.cache.insert(ctype, v.clone());
        Ok(v)
    }
}

fn convolve(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Right side of `f_{k−1}(Φ_I, m) = Σ_{J ⊆ I} f⁺_{k−|J|−1}(Φ_{I∖J}, m)`,
/// with `f⁺` of each parabolic subsystem the product over its factors.
pub fn parabolic_face_sum(rs: &RootSystem, m: usize) -> Result<Vec<i64>> {
    let l = rs.rank();
    let mut faces = PositiveFaces { m, cache: HashMap::new() };
    let mut out = vec![0i64; l + 1];
    for j in 0u32..1 << l {
        let rest: Vec<usize> = (0..l).filter(|&i| j >> i & 1 == 0).collect();
        let sub = rs.parabolic(&rest);
        let mut fp = vec![1i64];
        for c in sub.components() {
            fp = convolve(&fp, &faces.get(c.ctype)?);
        }
        for (k, x) in fp.iter().enumerate() {
            out[k + j.count_ones() as usize] += x;
        }
    }
    Ok(out)
}

fn common_denominator(x: &[Rational]) -> Option<(Vec<i64>, i64)> {
    let den = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let num = x.iter().map(|q| (q.numer() * (&den / q.denom())).to_i64()).collect::<Option<Vec<_>>>()?;
    Some((num, den.to_i64()?))
}

/// Limits on the more expensive routes.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    /// Nodes for the geometric cell search and faces for the polygon models.
    pub work: u64,
    /// Largest rank for exact-feasibility routes.
    pub fm_rank: usize,
    /// Largest number of regions compared pairwise for disjointness.
    pub pairwise_regions: usize,
    /// Largest `|Q̌/pQ̌|` for orbit counting.
    pub residues: u64,
    /// Largest number of alcoves scanned in the alcove tiling.
    pub alcoves: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { work: 2_000_000, fm_rank: 3, pairwise_regions: 60, residues: 200_000, alcoves: 500_000 }
    }
}

fn counts_checks(rs: &RootSystem, d: &Dilation, report: &StatReport, budget: Budget) -> Vec<Check> {
    let m = report.m;
    let mut out = Vec::new();
    let chains: u64 = report.h_plus.iter().sum();
    let points = d.points().len() as u64;
    let alcove_estimate = rs.weyl_group_order().saturating_mul((m as u64).saturating_pow(rs.rank() as u32));
    let routes_name = "positive chains = bounded regions = lattice points = N⁺";
    if alcove_estimate <= budget.alcoves {
        let regions = bounded_regions_by_alcoves(rs, m).len() as u64;
        out.push(Check::compare(
            Topic::Counts,
            routes_name,
            &[("chains", chains), ("regions", regions), ("lattice", points), ("formula", report.n_plus)],
        ));
    } else {
        out.push(Check::compare(
            Topic::Counts,
            routes_name,
            &[("chains", chains), ("lattice", points), ("formula", report.n_plus)],
        ));
    }
    let filters: u64 = report.h.iter().sum();
    out.push(Check::compare(Topic::Counts, "filter chains = N", &[("chains", filters), ("formula", report.n)]));
    let p_value = d.p() as u64;
    if p_value.checked_pow(rs.rank() as u32).is_some_and(|s| s <= budget.residues) {
        match orbit_count_bruteforce(rs, m, budget.residues) {
            Ok(orbits) => {
                out.push(Check::compare(Topic::Counts, "W-orbits on Q̌/pQ̌ = |D_m|", &[("orbits", orbits), ("lattice", points)]))
            }
            Err(e) => out.push(Check::failed(Topic::Counts, "W-orbits on Q̌/pQ̌ = |D_m|", e)),
        }
    } else {
        out.push(Check::skipped(Topic::Counts, "W-orbits on Q̌/pQ̌ = |D_m|", "residue budget"));
    }
    out
}

fn refined_checks(rs: &RootSystem, p: &RootPoset, d: &Dilation, m: usize, budget: Budget) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let chains = positive_chain_histogram(p, m)?;
    let lattice = d.wall_histogram();
    let alcove_estimate = rs.weyl_group_order().saturating_mul((m as u64).saturating_pow(rs.rank() as u32));
    let mut routes = vec![("chains", chains), ("lattice", lattice)];
    if alcove_estimate <= budget.alcoves {
        routes.push(("regions", bounded_wall_histogram_alcoves(d.weyl(), m)?));
    }
    if rs.rank() <= budget.fm_rank {
        routes.push(("regions-fm", bounded_wall_histogram_fm(p, m)?));
    }
    out.push(Check::compare(Topic::Refined, "non-separating m-walls = rank-m indecomposables = points on walls", &routes));
    let mut profile = BTreeMap::new();
    for c in enumerate_ideal_chains(p, m, true)? {
        *profile.entry(indecomposable_profile(rs, &c)?).or_insert(0u64) += 1;
    }
    out.push(Check::compare(
        Topic::Refined,
        "indecomposables of every rank = walls of every Σ^r_m",
        &[("chains", profile), ("lattice", d.wall_profile())],
    ));
    Ok(out)
}

fn filter_checks(p: &RootPoset, report: &StatReport) -> Vec<Check> {
    let mut out = Vec::new();
    if report.m != 1 {
        return out;
    }
    let len = report.h_plus.len();
    let filters = dense(&p.count_filters_by_min_elements(true), len);
    out.push(Check::compare(
        Topic::Filters,
        "positive filters by minimal elements = h⁺",
        &[("filters", filters.clone()), ("chains", report.h_plus.clone())],
    ));
    if let Some(row) = exceptional_table(report.ctype) {
        let mut row = row.to_vec();
        row.resize(len, 0);
        out.push(Check::compare(Topic::Filters, "positive filters = table row", &[("filters", filters), ("table", row)]));
    }
    out
}

fn face_checks(rs: &RootSystem, p: &RootPoset, report: &StatReport, depth: Depth, budget: Budget) -> Result<Vec<Check>> {
    let m = report.m;
    let mut out = Vec::new();
    let pairs = cell_counts_by_pairs(p, m)?;
    out.push(Check::compare(Topic::Faces, "f: h-transform = (chain, subset) pairs", &[("h-transform", report.f.clone()), ("pairs", pairs.f)]));
    out.push(Check::compare(
        Topic::Faces,
        "f⁺: h-transform = (chain, subset) pairs = pairs containing simple indecomposables",
        &[("h-transform", report.f_plus.clone()), ("pairs", pairs.f_plus), ("simple-pairs", positive_counts_by_simple_pairs(p, m)?)],
    ));
    let name = "f, f⁺: h-transform = cells of the arrangement";
    if depth == Depth::Full && rs.rank() <= budget.fm_rank {
        match cell_counts_geometric(rs, m, budget.work) {
            Ok(cells) => out.push(Check::compare(
                Topic::Faces,
                name,
                &[("h-transform", (report.f.clone(), report.f_plus.clone())), ("cells", (cells.f, cells.f_plus))],
            )),
            Err(AtlasError::ResourceLimit { .. }) => out.push(Check::skipped(Topic::Faces, name, "work budget")),
            Err(e) => out.push(Check::failed(Topic::Faces, name, e)),
        }
    } else {
        out.push(Check::skipped(Topic::Faces, name, "rank or depth"));
    }
    Ok(out)
}

fn cluster_checks(report: &StatReport, budget: Budget) -> Vec<Check> {
    let mut out = Vec::new();
    let model = match PolygonModel::for_type(report.ctype, report.m) {
        Ok(model) => model,
        Err(AtlasError::NoPolygonModel(_)) => return out,
        Err(e) => return vec![Check::failed(Topic::Cluster, "polygon model", e)],
    };
    let positive = model.summary(true, budget.work);
    let full = model.summary(false, budget.work);
    match (positive, full) {
        (Ok(pos), Ok(full)) => {
            out.push(Check::compare(
                Topic::Cluster,
                "h(Δ^m_+) = h⁺",
                &[("cluster", pos.h.clone()), ("chains", signed(&report.h_plus))],
            ));
            out.push(Check::compare(Topic::Cluster, "h(Δ^m) = h", &[("cluster", full.h), ("chains", signed(&report.h))]));
            if let Some(closed) = positive_cluster_f_closed_form(report.ctype, report.m as i64) {
                let closed: Vec<u64> = closed.iter().map(|x| x.to_u64().unwrap_or(u64::MAX)).collect();
                out.push(Check::compare(Topic::Cluster, "f(Δ^m_+) = closed form", &[("cluster", pos.f), ("closed", closed)]));
            }
        }
        (Err(AtlasError::ResourceLimit { .. }), _) | (_, Err(AtlasError::ResourceLimit { .. })) => {
            out.push(Check::skipped(Topic::Cluster, "h(Δ^m_+) = h⁺", "work budget"));
            return out;
        }
        (Err(e), _) | (_, Err(e)) => {
            out.push(Check::failed(Topic::Cluster, "h(Δ^m_+) = h⁺", e));
            return out;
        }
    }
    let (family, n) = match report.ctype.family {
        Family::A => (ModelFamily::A, report.ctype.rank + 1),
        _ => (ModelFamily::B, report.ctype.rank),
    };
    match parabolic_face_sides(family, n, report.m, budget.work) {
        Ok((lhs, rhs)) => out.push(Check::compare(
            Topic::Cluster,
            "faces of Δ^m split by their negative part",
            &[("Δ^m", lhs), ("Σ Δ^m_+", rhs)],
        )),
        Err(e) => out.push(Check::failed(Topic::Cluster, "faces of Δ^m split by their negative part", e)),
    }
    out
}

fn bijection_checks(rs: &RootSystem, p: &RootPoset, d: &Dilation, m: usize, depth: Depth, budget: Budget) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    if depth == Depth::Quick {
        return Ok(out);
    }
    let g = d.weyl();
    let regions = bounded_regions(p, m)?;
    // Chains → regions → chains, and regions → sample point → region.
    let mut round_trip = true;
    let mut witness = String::new();
    for (i, c) in enumerate_ideal_chains(p, m, true)?.enumerate() {
        let region = &regions[i];
        if region.ideal_chain(rs.num_positive()) != c {
            round_trip = false;
            witness = format!("{c:?}");
            break;
        }
        if rs.rank() <= budget.fm_rank {
            let pt = sample_point(rs, region)?;
            let (num, den) = common_denominator(&pt).ok_or_else(|| AtlasError::Internal("sample too large".into()))?;
            if region_containing(p, m, &num, den)? != *region {
                round_trip = false;
                witness = format!("sample {pt:?}");
                break;
            }
        }
    }
    out.push(Check::holds(Topic::Bijection, "chain → region → chain and region → point → region", round_trip, witness));

    let mut images = BTreeSet::new();
    let mut transfer = true;
    let mut witness = String::new();
    for region in &regions {
        let w = max_alcove_element(g, region)?;
        let pt = d.rho(&w)?;
        for r in 1..=m {
            let sigma = SimplexSigma::new(r, m)?;
            if d.wall_pattern(&pt, sigma) != d.transported_walls(&w, r) {
                transfer = false;
                witness = format!("point {:?}, r = {r}", pt.pairings);
            }
        }
        images.insert(pt);
    }
    let all: BTreeSet<_> = d.points().into_iter().collect();
    out.push(Check::holds(
        Topic::Bijection,
        "ρ is injective onto D_m",
        images == all && images.len() == regions.len(),
        format!("images={} points={} regions={}", images.len(), all.len(), regions.len()),
    ));
    out.push(Check::holds(Topic::Bijection, "ρ carries non-separating walls to walls of Σ^r_m", transfer, witness));

    if rs.rank() <= budget.fm_rank {
        let mut ok = true;
        let mut witness = String::new();
        for region in &regions {
            if let Err(e) = walls_and_separation(rs, region) {
                ok = false;
                witness = e.to_string();
            }
        }
        let n = regions.len().min(budget.pairwise_regions);
        for i in 0..n {
            for j in i + 1..n {
                let mut sys = ExactSystem::new(rs.rank());
                sys.extend(&regions[i].system(rs));
                sys.extend(&regions[j].system(rs));
                if sys.is_feasible()? {
                    ok = false;
                    witness = format!("regions {i} and {j} overlap");
                }
            }
            if !regions[i].system(rs).is_feasible()? {
                ok = false;
                witness = format!("region {i} is empty");
            }
        }
        out.push(Check::holds(Topic::Bijection, "regions are nonempty, pairwise disjoint, walls of dimension ℓ−1", ok, witness));
    }
    Ok(out)
}

fn identity_checks(rs: &RootSystem, p: &RootPoset, d: &Dilation, report: &StatReport) -> Result<Vec<Check>> {
    let m = report.m;
    let l = rs.rank();
    let mut out = Vec::new();
    let highest: i64 = rs.highest_root()?.0.iter().sum();
    out.push(Check::compare(Topic::Identities, "Σ c̃_i = h − 1", &[("highest root", highest), ("h-1", rs.coxeter_number()? - 1)]));

    let mut bad = None;
    for c in enumerate_ideal_chains(p, m, true)? {
        if let Some(v) = rank_table(rs, &c)?.shi_violation(rs) {
            bad = Some(format!("{c:?} at {v:?}"));
            break;
        }
    }
    out.push(Check::holds(
        Topic::Identities,
        "r_α + r_β − 1 ≤ r_{α+β} ≤ r_α + r_β on every chain",
        bad.is_none(),
        bad.unwrap_or_default(),
    ));

    if l <= 4 {
        out.push(Check::compare(
            Topic::Identities,
            "f = Σ_J f⁺ of parabolic subsystems",
            &[("f", signed(&report.f)), ("parabolic", parabolic_face_sum(rs, m)?)],
        ));
    }
    if m == 1 {
        out.push(Check::compare(Topic::Identities, "h_k = h_{ℓ−k} at m = 1", &[("h", report.h.clone()), ("reversed", reversed(&report.h))]));
    }
    if m >= 2 {
        let previous = small(&n_plus_formula(rs, m as i64 - 1)?)?;
        out.push(Check::compare(
            Topic::Identities,
            "h⁺_ℓ(m) = interior points = N⁺(m−1)",
            &[("h⁺_ℓ", report.h_plus[l]), ("interior", d.interior_count()), ("formula", previous)],
        ));
    }
    out.push(Check::compare(
        Topic::Identities,
        "N⁺(m−1) = (−1)^ℓ N(−m)",
        &[("N⁺", n_plus_formula(rs, m as i64 - 1)?), ("reciprocal", reciprocal_count(rs, m as i64)?)],
    ));
    if let Some(closed) = h_plus_closed_form(report.ctype, m as i64) {
        out.push(Check::compare(Topic::Identities, "h⁺ = closed form", &[("chains", to_bigint(&report.h_plus)), ("closed", closed)]));
        let fc = f_plus_closed_form(report.ctype, m as i64).expect("classical");
        out.push(Check::compare(Topic::Identities, "f⁺ = closed form", &[("chains", to_bigint(&report.f_plus)), ("closed", fc)]));
    }
    Ok(out)
}

/// Every cross-check applicable to `(Φ, m)`.
pub fn verify_all(rs: &RootSystem, m: usize, depth: Depth, budget: Budget) -> Result<StatReport> {
    let mut report = stat_report(rs, m)?;
    let p = build_poset(rs.clone());
    let d = Dilation::new(rs, m)?;
    let mut checks = counts_checks(rs, &d, &report, budget);
    checks.extend(refined_checks(rs, &p, &d, m, budget)?);
    checks.extend(filter_checks(&p, &report));
    checks.extend(face_checks(rs, &p, &report, depth, budget)?);
    checks.extend(cluster_checks(&report, budget));
    checks.extend(bijection_checks(rs, &p, &d, m, depth, budget)?);
    checks.extend(identity_checks(rs, &p, &d, &report)?);
    report.checks = checks;
    report.sources.insert("regions".into(), "alcove tiling; exact feasibility at low rank".into());
    report.sources.insert("lattice".into(), "box scan".into());
    if report.checks.iter().any(|c| c.topic == Topic::Cluster) {
        report.sources.insert("cluster".into(), "polygon model".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn ct(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    #[test]
    fn transforms() {
        assert_eq!(f_from_h(&[1i64, 4, 2]), vec![1, 6, 7]);
        assert_eq!(h_from_f(&[1i64, 6, 7]), vec![1, 4, 2]);
        assert_eq!(f_from_h(&[1i64, 0, 0, 0]), vec![1, 3, 3, 1]);
        assert_eq!(h_from_f(&[1i64, 5, 5]), vec![1, 3, 1]);
    }

    proptest! {
        #[test]
        fn transforms_are_inverse(h in proptest::collection::vec(-50i64..50, 1..7)) {
            prop_assert_eq!(h_from_f(&f_from_h(&h)), h.clone());
            prop_assert_eq!(f_from_h(&h_from_f(&h)), h);
        }
    }

    #[test]
    fn product_formulas() {
        let rs = |s| RootSystem::of(s).unwrap();
        assert_eq!(n_plus_formula(&rs("A2"), 1).unwrap(), 2.into());
        assert_eq!(n_plus_formula(&rs("G2"), 1).unwrap(), 5.into());
        assert_eq!(n_plus_formula(&rs("F4"), 1).unwrap(), 66.into());
        assert_eq!(n_total_formula(&rs("A2"), 1).unwrap(), 5.into());
        assert_eq!(n_plus_formula(&rs("A2"), 0).unwrap(), 0.into());
        for m in 1..5 {
            assert_eq!(n_plus_formula(&rs("A1"), m).unwrap(), m.into());
            assert_eq!(n_total_formula(&rs("A1"), m).unwrap(), (m + 1).into());
        }
        assert_eq!(reciprocal_count(&rs("A2"), 2).unwrap(), 2.into());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(h_plus_closed_form(ct("A2"), 2).unwrap(), big(&[1, 4, 2]));
        assert_eq!(h_plus_closed_form(ct("B2"), 1).unwrap(), big(&[1, 2, 0]));
        assert_eq!(f_plus_closed_form(ct("A2"), 2).unwrap(), big(&[1, 6, 7]));
        assert_eq!(f_plus_closed_form(ct("B2"), 1).unwrap()[2], 3.into());
        assert!(h_plus_closed_form(ct("G2"), 1).is_none());
        for name in ["A3", "B3", "C4", "D4", "D5"] {
            let rs = RootSystem::of(name).unwrap();
            for m in 1..4 {
                let h = h_plus_closed_form(ct(name), m).unwrap();
                let total: BigInt = h.iter().sum();
                assert_eq!(total, n_plus_formula(&rs, m).unwrap(), "{name} m={m}");
                assert_eq!(f_from_h(&h), f_plus_closed_form(ct(name), m).unwrap(), "{name} m={m}");
            }
        }
    }

    #[test]
    fn table_rows_sum_to_the_formula() {
        for name in ["G2", "F4", "E6", "E7", "E8"] {
            let row = exceptional_table(ct(name)).unwrap();
            let total: u64 = row.iter().sum();
            assert_eq!(BigInt::from(total), n_plus_formula(&RootSystem::of(name).unwrap(), 1).unwrap(), "{name}");
        }
    }

    #[test]
    fn verification_suite_passes_at_small_scale() {
        for (name, m) in [("A1", 3), ("A2", 2), ("B2", 1), ("G2", 2), ("A3", 1)] {
            let rs = RootSystem::of(name).unwrap();
            let report = verify_all(&rs, m, Depth::Full, Budget::default()).unwrap();
            for c in report.failures() {
                eprintln!("{name} m={m}: {} {}", c.name, c.detail);
            }
            assert!(report.passed(), "{name} m={m}");
            assert!(report.checks.len() > 10);
        }
        let rs = RootSystem::of("A2").unwrap();
        let report = verify_all(&rs, 2, Depth::Full, Budget::default()).unwrap();
        assert_eq!((report.n_plus, report.h_plus.clone(), report.f_plus.clone()), (7, vec![1, 4, 2], vec![1, 6, 7]));
        assert_eq!(report.f, vec![1, 8, 12]);
        assert_eq!(verify_all(&RootSystem::of("A1").unwrap(), 3, Depth::Quick, Budget::default()).unwrap().h_plus, vec![1, 2]);
    }
}
