//! Polygon models of the generalized cluster complexes `Δ^m(A_{n−1})` and
//! `Δ^m(B_n) = Δ^m(C_n)`: vertices are m-allowable diagonals, faces are
//! pairwise noncrossing sets.

use serde::Serialize;

use crate::error::{AtlasError, Result};
use crate::rootsys::{CartanType, Family};
use crate::stats::h_from_f;

/// Which polygon model: an `(mn+2)`-gon for type A, a centrally symmetric
/// `(2mn+2)`-gon for types B and C.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ModelFamily {
    A,
    B,
}

/// A vertex of the complex: one diagonal, or a half-turn pair. Endpoints
/// are polygon vertices `0..size`, each segment stored with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Diagonal {
    pub segments: Vec<(usize, usize)>,
}

impl Diagonal {
    pub fn is_diameter(&self, size: usize) -> bool {
        self.segments.len() == 1 && self.segments[0].1 - self.segments[0].0 == size / 2 && size.is_multiple_of(2)
    }
}

fn segment(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn segments_cross((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

pub fn crosses(x: &Diagonal, y: &Diagonal) -> bool {
    x.segments.iter().any(|&s| y.segments.iter().any(|&t| segments_cross(s, t)))
}

/// Face numbers and h-vector of a simplicial complex; `f[k] = f_{k−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexSummary {
    pub f: Vec<u64>,
    pub h: Vec<i64>,
}

impl ComplexSummary {
    pub fn from_f(f: Vec<u64>) -> Self {
        let fi: Vec<i64> = f.iter().map(|&x| x as i64).collect();
        ComplexSummary { h: h_from_f(&fi), f }
    }

    /// The join with another complex: f-polynomials multiply.
    pub fn join(&self, other: &ComplexSummary) -> ComplexSummary {
        let mut f = vec![0; self.f.len() + other.f.len() - 1];
        for (i, a) in self.f.iter().enumerate() {
            for (j, b) in other.f.iter().enumerate() {
                f[i + j] += a * b;
            }
        }
        ComplexSummary::from_f(f)
    }

    /// The empty complex `{∅}`, unit for [`ComplexSummary::join`].
    pub fn point() -> ComplexSummary {
        ComplexSummary { f: vec![1], h: vec![1] }
    }
}

#[derive(Debug, Clone)]
pub struct PolygonModel {
    family: ModelFamily,
    n: usize,
    m: usize,
    size: usize,
    diagonals: Vec<Diagonal>,
    compatible: Vec<u128>,
}

impl PolygonModel {
    /// Type `A_{n−1}` (`family = A`) or `B_n`/`C_n` (`family = B`).
    pub fn new(family: ModelFamily, n: usize, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(AtlasError::InvalidM(0));
        }
        let min = match family {
            ModelFamily::A => 2,
            ModelFamily::B => 1,
        };
        if n < min {
            return Err(AtlasError::InvalidRank { family: 'n', rank: n });
        }
        let diagonals = allowable_diagonals(family, n, m);
        if diagonals.len() > 128 {
            return Err(AtlasError::ResourceLimit { what: "complex vertices".into(), limit: 128 });
        }
        let compatible = diagonals
            .iter()
            .enumerate()
            .map(|(i, x)| {
                diagonals
                    .iter()
                    .enumerate()
                    .filter(|&(j, y)| j != i && !crosses(x, y))
                    .fold(0u128, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        let size = polygon_size(family, n, m);
        Ok(PolygonModel { family, n, m, size, diagonals, compatible })
    }

    pub fn for_type(ctype: CartanType, m: usize) -> Result<Self> {
        match ctype.family {
            Family::A => Self::new(ModelFamily::A, ctype.rank + 1, m),
            Family::B | Family::C => Self::new(ModelFamily::B, ctype.rank, m),
            _ => Err(AtlasError::NoPolygonModel(ctype.to_string())),
        }
    }

    pub fn rank(&self) -> usize {
        match self.family {
            ModelFamily::A => self.n - 1,
            ModelFamily::B => self.n,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    fn index(&self, d: &Diagonal) -> usize {
        self.diagonals.iter().position(|x| x == d).expect("snake diagonals are allowable")
    }

    /// The ℓ vertices standing for the negative simple roots: a zig-zag of
    /// diagonals, consecutive ones sharing an endpoint, cutting the polygon
    /// into `(m+2)`-gons. `rotation` turns the polygon.
    pub fn snake(&self, rotation: usize) -> Vec<usize> {
        let (n, m, size) = (self.n, self.m, self.size);
        let at = |v: usize| (v + rotation) % size;
        let mut out = Vec::new();
        match self.family {
            ModelFamily::A => {
                let (mut lo, mut hi) = (0usize, m + 1);
                for step in 0..n - 1 {
                    out.push(Diagonal { segments: vec![segment(at(lo % size), at(hi))] });
                    if step % 2 == 0 {
                        lo = (lo + size - m) % size;
                    } else {
                        hi += m;
                    }
                }
            }
            ModelFamily::B => {
                let half = m * n + 1;
                out.push(Diagonal { segments: vec![segment(at(0), at(half))] });
                let (mut lo, mut hi) = (0, half);
                for step in 0..n - 1 {
                    if step % 2 == 0 {
                        hi -= m;
                    } else {
                        lo += m;
                    }
                    out.push(pair(at(lo), at(hi), size));
                }
            }
        }
        out.iter().map(|d| self.index(d)).collect()
    }

    /// Faces by size, restricted to the vertices in `allowed`. Every
    /// maximal face is checked to have `expected_facet` vertices.
    pub fn face_counts(&self, allowed: u128, expected_facet: usize, limit: u64) -> Result<Vec<u64>> {
        let mut counts = vec![0u64; self.rank() + 1];
        let mut work = 0u64;
        self.extend(allowed, allowed, 0, 0, expected_facet, &mut counts, &mut work, limit)?;
        Ok(counts)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        candidates: u128,
        common: u128,
        start: usize,
        size: usize,
        expected: usize,
        counts: &mut [u64],
        work: &mut u64,
        limit: u64,
    ) -> Result<()> {
        *work += 1;
        if *work > limit {
            return Err(AtlasError::ResourceLimit { what: "faces".into(), limit });
        }
        if size >= counts.len() {
            return Err(AtlasError::Internal(format!("face with {size} vertices")));
        }
        counts[size] += 1;
        if common == 0 && size != expected {
            return Err(AtlasError::Internal(format!("maximal face with {size} vertices, expected {expected}")));
        }
        let mut rest = candidates >> start << start;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let c = self.compatible[v];
            self.extend(candidates & c, common & c, v + 1, size + 1, expected, counts, work, limit)?;
        }
        Ok(())
    }

    fn all(&self) -> u128 {
        if self.diagonals.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.diagonals.len()) - 1
        }
    }

    /// `Δ^m`, or its positive part when `positive` removes the snake.
    pub fn summary(&self, positive: bool, limit: u64) -> Result<ComplexSummary> {
        let mut allowed = self.all();
        if positive {
            for v in self.snake(0) {
                allowed &= !(1u128 << v);
            }
        }
        Ok(ComplexSummary::from_f(self.face_counts(allowed, self.rank(), limit)?))
    }

    /// Whether the snake is a facet of pairwise noncrossing diagonals.
    pub fn snake_is_facet(&self, rotation: usize) -> bool {
        let s = self.snake(rotation);
        let mut distinct = s.clone();
        distinct.sort();
        distinct.dedup();
        let common = s.iter().fold(self.all(), |acc, &v| acc & self.compatible[v]);
        let pairwise = s.iter().all(|&v| s.iter().all(|&w| v == w || self.compatible[v] >> w & 1 == 1));
        distinct.len() == self.rank() && pairwise && common & !s.iter().fold(0u128, |a, &v| a | 1 << v) == 0
    }
}

fn pair(a: usize, b: usize, size: usize) -> Diagonal {
    let h = size / 2;
    let mut segments = vec![segment(a, b), segment((a + h) % size, (b + h) % size)];
    segments.sort();
    Diagonal { segments }
}

fn polygon_size(family: ModelFamily, n: usize, m: usize) -> usize {
    match family {
        ModelFamily::A => m * n + 2,
        ModelFamily::B => 2 * m * n + 2,
    }
}

/// The vertices of `Δ^m`: diagonals splitting the polygon into two pieces
/// whose vertex counts are `2 mod m`, paired by the half-turn in type B.
pub fn allowable_diagonals(family: ModelFamily, n: usize, m: usize) -> Vec<Diagonal> {
    let size = polygon_size(family, n, m);
    let mut out = Vec::new();
    for a in 0..size {
        for b in a + 2..size {
            if (a == 0 && b == size - 1) || (b - a) % m != 1 % m {
                continue;
            }
            match family {
                ModelFamily::A => out.push(Diagonal { segments: vec![(a, b)] }),
                ModelFamily::B => {
                    if b - a == size / 2 {
                        out.push(Diagonal { segments: vec![(a, b)] });
                    } else {
                        let d = pair(a, b, size);
                        if d.segments[0] == (a, b) {
                            out.push(d);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// f-vector and h-vector of `Δ^m` or `Δ^m_+` for `A_{n−1}` or `B_n`.
pub fn build_complex(family: ModelFamily, n: usize, m: usize, positive_only: bool, limit: u64) -> Result<ComplexSummary> {
    PolygonModel::new(family, n, m)?.summary(positive_only, limit)
}

/// The model of a product of types, as a join; components are `(family, n)`
/// with `n = 0` meaning the empty system.
fn join_of(parts: &[(ModelFamily, usize)], m: usize, positive: bool, limit: u64) -> Result<ComplexSummary> {
    let mut acc = ComplexSummary::point();
    for &(family, n) in parts {
        let trivial = match family {
            ModelFamily::A => n <= 1,
            ModelFamily::B => n == 0,
        };
        if !trivial {
            acc = acc.join(&build_complex(family, n, m, positive, limit)?);
        }
    }
    Ok(acc)
}

/// Connected pieces of the Dynkin diagram on the nodes in `keep` (a bitmask
/// over `0..rank`), as polygon-model types. In type B the last node is the
/// special end.
fn parabolic_parts(family: ModelFamily, rank: usize, keep: u32) -> Vec<(ModelFamily, usize)> {
    let mut parts = Vec::new();
    let mut run = 0;
    for i in 0..rank {
        if keep >> i & 1 == 1 {
            run += 1;
        } else if run > 0 {
            parts.push((ModelFamily::A, run + 1));
            run = 0;
        }
    }
    if run > 0 {
        parts.push(match family {
            ModelFamily::A => (ModelFamily::A, run + 1),
            ModelFamily::B => (ModelFamily::B, run),
        });
    }
    parts
}

/// Both sides of `f_{k−1}(Δ^m(Φ_I)) = Σ_{J ⊆ I} f_{k−|J|−1}(Δ^m_+(Φ_{I∖J}))`.
pub fn parabolic_face_sides(family: ModelFamily, n: usize, m: usize, limit: u64) -> Result<(Vec<u64>, Vec<u64>)> {
    let model = PolygonModel::new(family, n, m)?;
    let rank = model.rank();
    let lhs = model.summary(false, limit)?.f;
    let mut rhs = vec![0u64; rank + 1];
    for j in 0u32..1 << rank {
        let size = j.count_ones() as usize;
        let rest = join_of(&parabolic_parts(family, rank, !j & ((1 << rank) - 1)), m, true, limit)?;
        for (k, &x) in rest.f.iter().enumerate() {
            rhs[k + size] += x;
        }
    }
    Ok((lhs, rhs))
}

pub fn parabolic_face_identity_check(family: ModelFamily, n: usize, m: usize, limit: u64) -> Result<bool> {
    let (lhs, rhs) = parabolic_face_sides(family, n, m, limit)?;
    Ok(lhs == rhs)
}
