//! Alcoves of the affine Weyl arrangement, their Shi coordinates, and the
//! affine Weyl group generated by `s₀, s₁, …, s_ℓ`.
//!
//! Points of V are written in coordinates `c_i = (σ_i, x)`. In these
//! coordinates every `(α, x)` is an integer form, the coroot lattice is
//! the image of the Cartan matrix, and the fundamental alcove is
//! `{c_i > 0, (α̃, x) < 1}`.

use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{AtlasError, Result};
use crate::rootsys::{RootSystem, RootVec};
use crate::scalar::ceil_div;
use crate::Rational;

type Mat = Vec<Vec<i64>>;

/// `r(w, α)` for every positive root: the alcove lies in
/// `r − 1 < (α, x) < r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ShiVector(pub Vec<i64>);

impl ShiVector {
    /// First additive triple violating `r_α + r_β − 1 ≤ r_{α+β} ≤ r_α + r_β`.
    pub fn violation(&self, rs: &RootSystem) -> Option<(usize, usize, usize)> {
        let r = &self.0;
        rs.additive_triples().iter().copied().find(|&(a, b, c)| r[c] < r[a] + r[b] - 1 || r[c] > r[a] + r[b])
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 1)
    }
}

/// `x ↦ w̄(x) + t` with `w̄ ∈ W` and `t ∈ Q̌`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AffineElement {
    /// Action of `w̄` on simple-root coordinates: column `k` is `w̄(σ_k)`.
    pub linear: Mat,
    /// `t` on the basis of simple coroots.
    pub translation: Vec<i64>,
    /// A word in the simple affine reflections (0 is `s₀`), reduced for
    /// elements built by [`AffineWeyl::shi_to_affine`].
    pub word: Vec<usize>,
    #[serde(skip)]
    dual: Mat,
    #[serde(skip)]
    shift: Vec<i64>,
}

impl AffineElement {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// The translation as a point, in coordinates `(σ_i, t)`.
    pub fn shift(&self) -> &[i64] {
        &self.shift
    }
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn mat_vec(a: &Mat, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Generator {
    linear: Mat,
    dual: Mat,
    shift: Vec<i64>,
}

/// The affine Weyl group of an irreducible root system together with the
/// data needed to locate alcoves.
#[derive(Debug, Clone)]
pub struct AffineWeyl {
    rs: RootSystem,
    highest: Vec<i64>,
    /// `(σ_i, α̃^∨)`
    tilde_pairing: Vec<i64>,
    /// `α̃ = Σ c̃_i σ_i`; the barycenter of the fundamental alcove is
    /// `bary / scale`.
    bary: Vec<i64>,
    scale: i64,
    cartan_inv: Vec<Vec<Rational>>,
}

impl AffineWeyl {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let highest = rs.highest_root()?.0.clone();
        let l = rs.rank();
        let tilde_coroot = rs.coroot_in_coroot_basis(&RootVec(highest.clone()));
        let tilde_pairing = rs.coweight_coords(&tilde_coroot);
        let lcm = highest.iter().fold(1i64, |acc, &c| acc.lcm(&c));
        let scale = (l as i64 + 1) * lcm;
        let bary = highest.iter().map(|&c| scale / ((l as i64 + 1) * c)).collect();
        let cartan: Vec<Vec<Rational>> =
            rs.cartan().iter().map(|row| row.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
        let cartan_inv = invert(cartan).ok_or_else(|| AtlasError::Internal("singular Cartan matrix".into()))?;
        Ok(AffineWeyl { rs: rs.clone(), highest, tilde_pairing, bary, scale, cartan_inv })
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// The barycenter of the fundamental alcove as `(numerators, denominator)`.
    pub fn barycenter(&self) -> (&[i64], i64) {
        (&self.bary, self.scale)
    }

    pub fn identity(&self) -> AffineElement {
        let l = self.rank();
        AffineElement { linear: identity(l), translation: vec![0; l], word: vec![], dual: identity(l), shift: vec![0; l] }
    }

    fn generator(&self, j: usize) -> Generator {
        let l = self.rank();
        let a = self.rs.cartan();
        let mut linear = identity(l);
        let mut dual = identity(l);
        let mut shift = vec![0; l];
        if j == 0 {
            // x ↦ x − ((α̃, x) − 1) α̃^∨; on roots β ↦ β − ⟨β, α̃^∨⟩ α̃
            for i in 0..l {
                for k in 0..l {
                    linear[i][k] -= self.highest[i] * self.tilde_pairing[k];
                    dual[i][k] -= self.tilde_pairing[i] * self.highest[k];
                }
            }
            shift.clone_from(&self.tilde_pairing);
        } else {
            let j = j - 1;
            for k in 0..l {
                linear[j][k] -= a[k][j];
                dual[k][j] -= a[k][j];
            }
        }
        Generator { linear, dual, shift }
    }

    /// `w · s_j`.
    pub fn mul_generator(&self, w: &AffineElement, j: usize) -> AffineElement {
        let g = self.generator(j);
        let shift: Vec<i64> = mat_vec(&w.dual, &g.shift).iter().zip(&w.shift).map(|(x, y)| x + y).collect();
        let mut word = w.word.clone();
        if word.last() == Some(&j) {
            word.pop();
        } else {
            word.push(j);
        }
        AffineElement {
            linear: mat_mul(&w.linear, &g.linear),
            translation: self.coroot_coords(&shift),
            word,
            dual: mat_mul(&w.dual, &g.dual),
            shift,
        }
    }

    /// Product of simple affine reflections, left to right. The stored word
    /// is reduced only if the input is.
    pub fn from_word(&self, word: &[usize]) -> AffineElement {
        let mut w = self.identity();
        for &j in word {
            let g = self.generator(j);
            let shift: Vec<i64> = mat_vec(&w.dual, &g.shift).iter().zip(&w.shift).map(|(x, y)| x + y).collect();
            w = AffineElement {
                linear: mat_mul(&w.linear, &g.linear),
                translation: self.coroot_coords(&shift),
                word: [w.word, vec![j]].concat(),
                dual: mat_mul(&w.dual, &g.dual),
                shift,
            };
        }
        w
    }

    pub fn compose(&self, a: &AffineElement, b: &AffineElement) -> AffineElement {
        let shift: Vec<i64> = mat_vec(&a.dual, &b.shift).iter().zip(&a.shift).map(|(x, y)| x + y).collect();
        AffineElement {
            linear: mat_mul(&a.linear, &b.linear),
            translation: self.coroot_coords(&shift),
            word: [a.word.clone(), b.word.clone()].concat(),
            dual: mat_mul(&a.dual, &b.dual),
            shift,
        }
    }

    pub fn inverse(&self, w: &AffineElement) -> AffineElement {
        let rev: Vec<usize> = w.word.iter().rev().copied().collect();
        self.from_word(&rev)
    }

    fn coroot_coords(&self, c: &[i64]) -> Vec<i64> {
        self.to_coroot_basis(c).expect("translation in the coroot lattice")
    }

    /// Coefficients on the simple coroots of the point with coordinates
    /// `(σ_i, x) = c_i`, if it lies in the coroot lattice.
    pub fn to_coroot_basis(&self, c: &[i64]) -> Option<Vec<i64>> {
        self.cartan_inv
            .iter()
            .map(|row| {
                let v = row.iter().zip(c).fold(Rational::zero(), |acc, (x, &y)| acc + x * Rational::from_integer(y.into()));
                v.is_integer().then(|| i64::try_from(v.to_integer()).expect("small coordinate"))
            })
            .collect()
    }

    /// `w(x)` for `x = num / den`, returned with the same denominator.
    pub fn apply(&self, w: &AffineElement, num: &[i64], den: i64) -> Vec<i64> {
        mat_vec(&w.dual, num).iter().zip(&w.shift).map(|(x, t)| x + den * t).collect()
    }

    /// The barycenter of `w A∘` as `(numerators, denominator)`.
    pub fn alcove_barycenter(&self, w: &AffineElement) -> (Vec<i64>, i64) {
        (self.apply(w, &self.bary, self.scale), self.scale)
    }

    pub fn shi(&self, w: &AffineElement) -> ShiVector {
        let (x, d) = self.alcove_barycenter(w);
        ShiVector(self.rs.positive_roots().iter().map(|a| ceil_div(dot(&a.0, &x), d)).collect())
    }

    /// Number of hyperplanes `H_{α,k}` separating `w A∘` from `A∘`.
    pub fn length(&self, w: &AffineElement) -> usize {
        shi_length(&self.shi(w))
    }

    /// Image of `H_{γ,k}` under `w`, as `(index of ±w̄γ in Φ⁺, level)`.
    pub fn image_of_hyperplane(&self, w: &AffineElement, gamma: &[i64], k: i64) -> (usize, i64) {
        let img = mat_vec(&w.linear, gamma);
        let level = k + dot(&img, &w.shift);
        let v = RootVec(img);
        match self.rs.index_of(&v) {
            Some(i) => (i, level),
            None => (self.rs.index_of(&v.neg()).expect("W preserves Φ"), -level),
        }
    }

    /// The wall of `A∘` fixed by `s_j`: `H_{α̃,1}` for `j = 0`, else `H_{σ_j,0}`.
    pub fn fundamental_wall(&self, j: usize) -> (Vec<i64>, i64) {
        if j == 0 {
            (self.highest.clone(), 1)
        } else {
            (RootVec::unit(self.rank(), j - 1).0, 0)
        }
    }

    /// Walls of `w A∘` in generator order, each as `(root index, level)`.
    pub fn walls(&self, w: &AffineElement) -> Vec<(usize, i64)> {
        (0..=self.rank())
            .map(|j| {
                let (g, k) = self.fundamental_wall(j);
                self.image_of_hyperplane(w, &g, k)
            })
            .collect()
    }

    /// `ℓ(w s_j) > ℓ(w)`.
    pub fn is_right_ascent(&self, w: &AffineElement, j: usize) -> bool {
        self.length(&self.mul_generator(w, j)) > self.length(w)
    }

    pub fn ascent_count(&self, w: &AffineElement) -> usize {
        (0..=self.rank()).filter(|&j| self.is_right_ascent(w, j)).count()
    }

    /// The element whose alcove has the given Shi coordinates, found by a
    /// gallery walk from `A∘` that crosses one separating hyperplane per
    /// step.
    pub fn shi_to_affine(&self, target: &ShiVector) -> Result<AffineElement> {
        if target.0.len() != self.rs.num_positive() {
            return Err(AtlasError::DimensionMismatch { expected: self.rs.num_positive(), found: target.0.len() });
        }
        if target.violation(&self.rs).is_some() {
            return Err(AtlasError::NotAnAlcove(target.0.clone()));
        }
        let dist = |s: &ShiVector| -> i64 { s.0.iter().zip(&target.0).map(|(a, b)| (a - b).abs()).sum() };
        let mut w = self.identity();
        let mut d = dist(&self.shi(&w));
        while d > 0 {
            let next = (0..=self.rank())
                .map(|j| self.mul_generator(&w, j))
                .find(|v| dist(&self.shi(v)) < d)
                .ok_or_else(|| AtlasError::NotAnAlcove(target.0.clone()))?;
            w = next;
            d -= 1;
        }
        Ok(w)
    }

    /// Whether `H_{α,k}` separates the alcove with coordinates `shi` from `A∘`.
    pub fn separates_from_fundamental(shi: &ShiVector, root: usize, k: i64) -> bool {
        let r = shi.0[root];
        if k >= 1 {
            r > k
        } else {
            r <= k
        }
    }
}

/// `Σ |r_α − 1|`: the number of hyperplanes between the alcove and `A∘`.
pub fn shi_length(s: &ShiVector) -> usize {
    s.0.iter().map(|&r| (r - 1).unsigned_abs() as usize).sum()
}

fn invert(mut a: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let lead = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &lead;
            inv[col][j] = &inv[col][j] / &lead;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                a[r][j] -= x;
                inv[r][j] -= y;
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashMap, HashSet, VecDeque};

    fn weyl(name: &str) -> AffineWeyl {
        AffineWeyl::new(&RootSystem::of(name).unwrap()).unwrap()
    }

    #[test]
    fn identity_is_the_fundamental_alcove() {
        for name in ["A1", "A3", "B3", "C3", "D4", "G2", "F4"] {
            let g = weyl(name);
            let s = g.shi(&g.identity());
            assert!(s.0.iter().all(|&r| r == 1), "{name}");
            assert_eq!(g.ascent_count(&g.identity()), g.rank() + 1);
        }
    }

    #[test]
    fn generators_are_involutions_and_reflect_their_walls() {
        for name in ["A2", "B2", "G2", "C3", "D4"] {
            let g = weyl(name);
            for j in 0..=g.rank() {
                let s = g.from_word(&[j]);
                let ss = g.compose(&s, &s);
                assert_eq!(ss.linear, g.identity().linear);
                assert_eq!(ss.shift(), g.identity().shift());
                assert_eq!(g.length(&s), 1);
                // The wall H_j of A∘ is fixed pointwise, so its image is itself.
                let (gamma, k) = g.fundamental_wall(j);
                let fixed = g.image_of_hyperplane(&s, &gamma, k);
                let idx = g.rs().index_of(&RootVec(gamma)).unwrap();
                assert_eq!(fixed, (idx, k));
            }
        }
    }

    #[test]
    fn a1_one_step() {
        let g = weyl("A1");
        let w = g.shi_to_affine(&ShiVector(vec![2])).unwrap();
        assert_eq!(w.word, vec![0]);
        assert_eq!(g.shi(&w), ShiVector(vec![2]));
        assert_eq!(w.translation, vec![1]);
    }

    /// Breadth-first search over words: alcoves reached at distance `d` in
    /// the Cayley graph have length `d`.
    fn ball(g: &AffineWeyl, radius: usize) -> HashMap<ShiVector, (usize, AffineElement)> {
        let mut seen = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(g.shi(&g.identity()), (0, g.identity()));
        queue.push_back((g.identity(), 0));
        while let Some((w, d)) = queue.pop_front() {
            if d == radius {
                continue;
            }
            for j in 0..=g.rank() {
                let v = g.from_word(&[w.word.clone(), vec![j]].concat());
                let s = g.shi(&v);
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(s) {
                    e.insert((d + 1, v.clone()));
                    queue.push_back((v, d + 1));
                }
            }
        }
        seen
    }

    #[test]
    fn length_matches_word_distance_and_walk_round_trips() {
        for (name, radius) in [("A2", 6), ("B2", 7), ("G2", 9), ("A3", 4), ("C3", 4)] {
            let g = weyl(name);
            let b = ball(&g, radius);
            for (s, (d, w)) in &b {
                assert_eq!(shi_length(s), *d, "{name}");
                assert_eq!(s.violation(g.rs()), None);
                let back = g.shi_to_affine(s).unwrap();
                assert_eq!(&g.shi(&back), s);
                assert_eq!(back.len(), *d);
                assert_eq!(back.linear, w.linear);
                assert_eq!(back.translation, w.translation);
                let inv = g.inverse(&back);
                assert_eq!(g.shi(&g.compose(&back, &inv)), g.shi(&g.identity()));
            }
        }
    }

    #[test]
    fn ascents_are_the_non_separating_walls() {
        for (name, radius) in [("A2", 5), ("B2", 6), ("A3", 3)] {
            let g = weyl(name);
            for (s, (_, w)) in ball(&g, radius) {
                for (j, (root, k)) in g.walls(&w).into_iter().enumerate() {
                    assert_eq!(g.is_right_ascent(&w, j), !AffineWeyl::separates_from_fundamental(&s, root, k));
                }
            }
        }
    }

    #[test]
    fn bad_shi_vectors_are_rejected() {
        let g = weyl("A2");
        assert!(matches!(g.shi_to_affine(&ShiVector(vec![1, 1, 3])), Err(AtlasError::NotAnAlcove(_))));
        assert!(g.shi_to_affine(&ShiVector(vec![1, 1])).is_err());
    }

    #[test]
    fn translations_cover_the_coroot_lattice_locally() {
        // Every translation reached by short words is an integer coroot vector,
        // and distinct alcoves have distinct (linear, translation) pairs.
        let g = weyl("B2");
        let b = ball(&g, 8);
        let pairs: HashSet<(Mat, Vec<i64>)> = b.values().map(|(_, w)| (w.linear.clone(), w.translation.clone())).collect();
        assert_eq!(pairs.len(), b.len());
        for (_, w) in b.values() {
            assert_eq!(g.rs().coweight_coords(&w.translation), w.shift());
        }
    }
}
