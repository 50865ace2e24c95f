//! Coroot lattice points in the dilated closed alcove `p·A̅∘`, `p = mh − 1`,
//! the simplices `Σ^r_m`, and the map `ρ(w) = (w_f w⁻¹)·0` from maximal
//! alcoves onto those points.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::alcove::{AffineElement, AffineWeyl, ShiVector};
use crate::error::{AtlasError, Result};
use crate::rootsys::RootSystem;
use crate::scalar::ceil_div;

/// A point of the coroot lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CorootPoint {
    /// Coefficients on the simple coroots.
    pub coords: Vec<i64>,
    /// `(σ_i, x)` for each simple root.
    pub pairings: Vec<i64>,
}

/// `Σ^r_m = {(σ_i, x) ≥ m − r, (α̃, x) ≤ mh − m + r − 1}`. Its walls are
/// numbered as the generators: wall 0 lies on `α̃`, wall `i` on `σ_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimplexSigma {
    pub r: usize,
    pub m: usize,
}

impl SimplexSigma {
    pub fn new(r: usize, m: usize) -> Result<Self> {
        if r == 0 || r > m {
            return Err(AtlasError::RankOutOfRange { r, m });
        }
        Ok(SimplexSigma { r, m })
    }

    /// `Σ^m_m = p·A̅∘`.
    pub fn full(m: usize) -> Result<Self> {
        Self::new(m, m)
    }

    fn floor(self) -> i64 {
        (self.m - self.r) as i64
    }

    fn ceiling(self, h: i64) -> i64 {
        let (m, r) = (self.m as i64, self.r as i64);
        m * h - m + r - 1
    }
}

/// The lattice side of the correspondence for fixed `(Φ, m)`.
#[derive(Debug, Clone)]
pub struct Dilation {
    g: AffineWeyl,
    m: usize,
    h: i64,
    highest: Vec<i64>,
    wf: AffineElement,
}

impl Dilation {
    pub fn new(rs: &RootSystem, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(AtlasError::InvalidM(0));
        }
        let g = AffineWeyl::new(rs)?;
        let h = rs.coxeter_number()?;
        let highest = rs.highest_root()?.0.clone();
        let wf = top_alcove(&g, m)?;
        Ok(Dilation { g, m, h, highest, wf })
    }

    pub fn weyl(&self) -> &AffineWeyl {
        &self.g
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `mh − 1`.
    pub fn p(&self) -> i64 {
        self.m as i64 * self.h - 1
    }

    /// The element whose alcove is `{(σ_i, x) < m, (α̃, x) > mh − m − 1}`.
    pub fn w_f(&self) -> &AffineElement {
        &self.wf
    }

    fn tilde(&self, c: &[i64]) -> i64 {
        self.highest.iter().zip(c).map(|(a, b)| a * b).sum()
    }

    /// Whether `(σ_i, x) = c_i` describes a point of `D_m(Φ)`.
    pub fn contains(&self, c: &[i64]) -> bool {
        c.iter().all(|&x| x >= 0) && self.tilde(c) <= self.p() && self.g.to_coroot_basis(c).is_some()
    }

    pub fn point(&self, c: &[i64]) -> Option<CorootPoint> {
        let coords = self.g.to_coroot_basis(c)?;
        Some(CorootPoint { coords, pairings: c.to_vec() })
    }

    /// `D_m(Φ)`, by a box scan in the coordinates `(σ_i, x)`.
    pub fn points(&self) -> Vec<CorootPoint> {
        let l = self.g.rank();
        let mut out = Vec::new();
        let mut c = vec![0; l];
        self.scan(0, self.p(), &mut c, &mut out);
        out
    }

    fn scan(&self, i: usize, budget: i64, c: &mut Vec<i64>, out: &mut Vec<CorootPoint>) {
        if i == c.len() {
            if let Some(pt) = self.point(c) {
                out.push(pt);
            }
            return;
        }
        for x in 0..=budget / self.highest[i] {
            c[i] = x;
            self.scan(i + 1, budget - x * self.highest[i], c, out);
        }
        c[i] = 0;
    }

    /// Which walls of `Σ^r_m` (as hyperplanes) contain the point.
    pub fn wall_pattern(&self, pt: &CorootPoint, sigma: SimplexSigma) -> Vec<bool> {
        let c = &pt.pairings;
        std::iter::once(self.tilde(c) == sigma.ceiling(self.h))
            .chain(c.iter().map(|&x| x == sigma.floor()))
            .collect()
    }

    pub fn in_simplex(&self, pt: &CorootPoint, sigma: SimplexSigma) -> bool {
        pt.pairings.iter().all(|&x| x >= sigma.floor()) && self.tilde(&pt.pairings) <= sigma.ceiling(self.h)
    }

    /// Number of walls of `Σ^r_m` containing a point of the closed simplex.
    pub fn wall_incidence(&self, pt: &CorootPoint, sigma: SimplexSigma) -> Result<usize> {
        if !self.in_simplex(pt, sigma) {
            return Err(AtlasError::OutsideSimplex);
        }
        Ok(self.wall_pattern(pt, sigma).into_iter().filter(|&b| b).count())
    }

    /// `ρ(w) = (w_f w⁻¹)·0`.
    pub fn rho(&self, w: &AffineElement) -> Result<CorootPoint> {
        let u = self.g.compose(&self.wf, &self.g.inverse(w));
        let c = u.shift();
        if !self.contains(c) {
            return Err(AtlasError::NotMaximal);
        }
        Ok(self.point(c).expect("translations lie in the coroot lattice"))
    }

    /// For each wall `i` of `w_f A∘`, whether its image under `w w_f⁻¹` is a
    /// wall `H_{α,r}` of `w A∘` not separating it from `A∘`.
    pub fn transported_walls(&self, w: &AffineElement, r: usize) -> Vec<bool> {
        let u = self.g.compose(w, &self.g.inverse(&self.wf));
        let shi = self.g.shi(w);
        let m = self.m as i64;
        (0..=self.g.rank())
            .map(|i| {
                let (gamma, k) = if i == 0 {
                    (self.highest.clone(), m * self.h - m - 1)
                } else {
                    let mut e = vec![0; self.g.rank()];
                    e[i - 1] = 1;
                    (e, m)
                };
                let (root, level) = self.g.image_of_hyperplane(&u, &gamma, k);
                level == r as i64 && !AffineWeyl::separates_from_fundamental(&shi, root, level)
            })
            .collect()
    }

    /// Points of `D_m(Φ)` keyed by the number of walls of `p·A̅∘` they lie on.
    pub fn wall_histogram(&self) -> BTreeMap<usize, u64> {
        let full = SimplexSigma { r: self.m, m: self.m };
        let mut hist = BTreeMap::new();
        for pt in self.points() {
            *hist.entry(self.wall_incidence(&pt, full).expect("point of the simplex")).or_insert(0) += 1;
        }
        hist
    }

    /// Points keyed by `(i_1, …, i_m)`, `i_r` the number of walls of `Σ^r_m`
    /// through the point.
    pub fn wall_profile(&self) -> BTreeMap<Vec<usize>, u64> {
        let mut hist = BTreeMap::new();
        for pt in self.points() {
            let key = (1..=self.m)
                .map(|r| self.wall_pattern(&pt, SimplexSigma { r, m: self.m }).into_iter().filter(|&b| b).count())
                .collect();
            *hist.entry(key).or_insert(0) += 1;
        }
        hist
    }

    /// Points of the open simplex `p·A∘`.
    pub fn interior_count(&self) -> u64 {
        self.wall_histogram().get(&0).copied().unwrap_or(0)
    }
}

/// The alcove `{(σ_i, x) < m, (α̃, x) > mh − m − 1}`, located through the
/// Shi coordinates of its barycenter `c_i = m − 1/((ℓ+1)c̃_i)`.
fn top_alcove(g: &AffineWeyl, m: usize) -> Result<AffineElement> {
    let (bary, den) = g.barycenter();
    let target: Vec<i64> = bary.iter().map(|&b| m as i64 * den - b).collect();
    let shi = ShiVector(g.rs().positive_roots().iter().map(|a| ceil_div(a.eval(&target), den)).collect());
    let w = g.shi_to_affine(&shi)?;
    if g.alcove_barycenter(&w) != (target, den) {
        return Err(AtlasError::Internal("top alcove misplaced".into()));
    }
    Ok(w)
}

/// `D_m(Φ) = Q̌ ∩ p·A̅∘`.
pub fn enumerate_dm(rs: &RootSystem, m: usize) -> Result<Vec<CorootPoint>> {
    Ok(Dilation::new(rs, m)?.points())
}

/// Orbits of W on `Q̌ / pQ̌`, by flooding residue vectors in the coroot basis
/// under the simple reflections.
pub fn orbit_count_bruteforce(rs: &RootSystem, m: usize, limit: u64) -> Result<u64> {
    if m == 0 {
        return Err(AtlasError::InvalidM(0));
    }
    let l = rs.rank();
    let p = m as i64 * rs.coxeter_number()? - 1;
    let size = (p as u64).checked_pow(l as u32).filter(|&s| s <= limit);
    let Some(size) = size else {
        return Err(AtlasError::ResourceLimit { what: format!("residues ({p}^{l})"), limit });
    };
    let a = rs.cartan();
    let decode = |mut k: u64| -> Vec<i64> {
        (0..l)
            .map(|_| {
                let d = (k % p as u64) as i64;
                k /= p as u64;
                d
            })
            .collect()
    };
    let encode = |n: &[i64]| -> u64 { n.iter().rev().fold(0u64, |acc, &d| acc * p as u64 + d.rem_euclid(p) as u64) };
    let mut seen = vec![false; size as usize];
    let mut orbits = 0;
    for start in 0..size {
        if seen[start as usize] {
            continue;
        }
        orbits += 1;
        seen[start as usize] = true;
        let mut stack = vec![start];
        while let Some(k) = stack.pop() {
            let n = decode(k);
            for j in 0..l {
                let cj: i64 = (0..l).map(|t| a[j][t] * n[t]).sum();
                let mut img = n.clone();
                img[j] -= cj;
                let e = encode(&img);
                if !seen[e as usize] {
                    seen[e as usize] = true;
                    stack.push(e);
                }
            }
        }
    }
    Ok(orbits)
}
