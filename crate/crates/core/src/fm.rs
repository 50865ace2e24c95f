//! Exact Fourier–Motzkin feasibility with strict inequalities.
//!
//! Answers emptiness, the affine dimension of the solution set, and a point
//! in its relative interior. Used only as an independent check on the
//! combinatorial descriptions of regions and cells, so it favours being
//! obviously correct over being fast.

use std::fmt;

use serde::Serialize;

use crate::error::{AtlasError, Result};
use crate::scalar::Field;

/// Default bound on the number of rows alive during one elimination.
pub const DEFAULT_ROW_LIMIT: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rel {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
            Rel::Ge => ">=",
            Rel::Gt => ">",
        })
    }
}

/// `a · x  rel  b`
#[derive(Debug, Clone, PartialEq)]
pub struct Row<T> {
    pub a: Vec<T>,
    pub rel: Rel,
    pub b: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem<T> {
    nvars: usize,
    rows: Vec<Row<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility<T> {
    Empty,
    Nonempty { dim: usize, sample: Vec<T> },
}

impl<T> Feasibility<T> {
    pub fn is_empty(&self) -> bool {
        matches!(self, Feasibility::Empty)
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            Feasibility::Empty => None,
            Feasibility::Nonempty { dim, .. } => Some(*dim),
        }
    }
}

/// `a · x < b` (strict) or `a · x ≤ b`.
#[derive(Debug, Clone, PartialEq)]
struct Ineq<T> {
    a: Vec<T>,
    b: T,
    strict: bool,
}

fn int<T: Field>(x: i64) -> T {
    T::from_i64(x).expect("small integer")
}

fn dot<T: Field>(a: &[T], x: &[T]) -> T {
    a.iter().zip(x).fold(T::zero(), |acc, (p, q)| acc + p.clone() * q.clone())
}

impl<T: Field> LinearSystem<T> {
    pub fn new(nvars: usize) -> Self {
        LinearSystem { nvars, rows: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> &[Row<T>] {
        &self.rows
    }

    pub fn push(&mut self, a: Vec<T>, rel: Rel, b: T) {
        assert_eq!(a.len(), self.nvars, "row width");
        self.rows.push(Row { a, rel, b });
    }

    pub fn push_int(&mut self, a: &[i64], rel: Rel, b: i64) {
        self.push(a.iter().map(|&x| int(x)).collect(), rel, int(b));
    }

    pub fn with(mut self, a: &[i64], rel: Rel, b: i64) -> Self {
        self.push_int(a, rel, b);
        self
    }

    pub fn extend(&mut self, other: &LinearSystem<T>) {
        assert_eq!(other.nvars, self.nvars, "row width");
        self.rows.extend(other.rows.iter().cloned());
    }

    pub fn satisfied_by(&self, x: &[T]) -> bool {
        self.rows.iter().all(|row| {
            let v = dot(&row.a, x);
            match row.rel {
                Rel::Lt => v < row.b,
                Rel::Le => v <= row.b,
                Rel::Eq => v == row.b,
                Rel::Ge => v >= row.b,
                Rel::Gt => v > row.b,
            }
        })
    }

    pub fn is_feasible(&self) -> Result<bool> {
        Ok(!self.feasibility()?.is_empty())
    }

    pub fn feasibility(&self) -> Result<Feasibility<T>> {
        self.feasibility_with_limit(DEFAULT_ROW_LIMIT)
    }

    pub fn feasibility_with_limit(&self, limit: usize) -> Result<Feasibility<T>> {
        let mut eqs = Vec::new();
        let mut ineqs = Vec::new();
        for row in &self.rows {
            let neg = || row.a.iter().map(|x| -x.clone()).collect::<Vec<T>>();
            match row.rel {
                Rel::Eq => eqs.push((row.a.clone(), row.b.clone())),
                Rel::Lt => ineqs.push(Ineq { a: row.a.clone(), b: row.b.clone(), strict: true }),
                Rel::Le => ineqs.push(Ineq { a: row.a.clone(), b: row.b.clone(), strict: false }),
                Rel::Gt => ineqs.push(Ineq { a: neg(), b: -row.b.clone(), strict: true }),
                Rel::Ge => ineqs.push(Ineq { a: neg(), b: -row.b.clone(), strict: false }),
            }
        }
        let Some(param) = Parametrization::solve(self.nvars, &eqs) else {
            return Ok(Feasibility::Empty);
        };
        let reduced: Vec<Ineq<T>> = ineqs.iter().map(|q| param.pull_back(q)).collect();
        let d = param.free.len();
        if fm_sample(d, reduced.clone(), limit)?.is_none() {
            return Ok(Feasibility::Empty);
        }
        // A weak row is an implicit equality when it cannot be made strict.
        let mut implicit = Vec::new();
        for (k, q) in reduced.iter().enumerate() {
            if q.strict {
                continue;
            }
            let mut trial = reduced.clone();
            trial[k].strict = true;
            if fm_sample(d, trial, limit)?.is_none() {
                implicit.push(k);
            }
        }
        let hull: Vec<(Vec<T>, T)> = implicit.iter().map(|&k| (reduced[k].a.clone(), reduced[k].b.clone())).collect();
        let inner = Parametrization::solve(d, &hull).ok_or_else(|| AtlasError::Internal("implicit equalities inconsistent".into()))?;
        let rest: Vec<Ineq<T>> = reduced
            .iter()
            .enumerate()
            .filter(|(k, _)| !implicit.contains(k))
            .map(|(_, q)| inner.pull_back(&Ineq { strict: true, ..q.clone() }))
            .collect();
        let dim = inner.free.len();
        let y = fm_sample(dim, rest, limit)?.ok_or_else(|| AtlasError::Internal("relative interior empty".into()))?;
        let sample = param.lift(&inner.lift(&y));
        debug_assert!(self.satisfied_by(&sample));
        Ok(Feasibility::Nonempty { dim, sample })
    }
}

/// Solution set of `A x = b` as `x = x₀ + Σ y_f e_f` over the free columns.
struct Parametrization<T> {
    n: usize,
    free: Vec<usize>,
    // pivot column and its row: x_p = rhs − Σ_f coef_f y_f
    pivots: Vec<(usize, Vec<T>, T)>,
}

impl<T: Field> Parametrization<T> {
    fn solve(n: usize, eqs: &[(Vec<T>, T)]) -> Option<Self> {
        let mut rows: Vec<(Vec<T>, T)> = eqs.to_vec();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i].0[col].is_zero()) else { continue };
            rows.swap(r, p);
            let lead = rows[r].0[col].clone();
            for x in rows[r].0.iter_mut() {
                *x = x.clone() / lead.clone();
            }
            rows[r].1 = rows[r].1.clone() / lead;
            for i in 0..rows.len() {
                if i == r || rows[i].0[col].is_zero() {
                    continue;
                }
                let f = rows[i].0[col].clone();
                for c in 0..n {
                    let v = rows[r].0[c].clone() * f.clone();
                    rows[i].0[c] = rows[i].0[c].clone() - v;
                }
                rows[i].1 = rows[i].1.clone() - rows[r].1.clone() * f;
            }
            pivot_cols.push(col);
            r += 1;
        }
        if rows[r..].iter().any(|(_, b)| !b.is_zero()) {
            return None;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
        let pivots = pivot_cols
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, free.iter().map(|&f| rows[i].0[f].clone()).collect(), rows[i].1.clone()))
            .collect();
        Some(Parametrization { n, free, pivots })
    }

    /// The inequality in terms of the free variables.
    fn pull_back(&self, q: &Ineq<T>) -> Ineq<T> {
        let mut a: Vec<T> = self.free.iter().map(|&f| q.a[f].clone()).collect();
        let mut b = q.b.clone();
        for (p, coef, rhs) in &self.pivots {
            let w = q.a[*p].clone();
            if w.is_zero() {
                continue;
            }
            b = b - w.clone() * rhs.clone();
            for (ak, ck) in a.iter_mut().zip(coef) {
                *ak = ak.clone() - w.clone() * ck.clone();
            }
        }
        Ineq { a, b, strict: q.strict }
    }

    fn lift(&self, y: &[T]) -> Vec<T> {
        let mut x = vec![T::zero(); self.n];
        for (&f, v) in self.free.iter().zip(y) {
            x[f] = v.clone();
        }
        for (p, coef, rhs) in &self.pivots {
            x[*p] = rhs.clone() - dot(coef, y);
        }
        x
    }
}

/// Scale so the first nonzero coefficient has absolute value one.
fn normalize<T: Field>(mut q: Ineq<T>) -> Ineq<T> {
    if let Some(lead) = q.a.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
        for x in q.a.iter_mut() {
            *x = x.clone() / lead.clone();
        }
        q.b = q.b / lead;
    }
    q
}

/// Drop trivially true rows and rows dominated by a row with the same left
/// side. Returns `None` if some row reads `0 < b` with `b ≤ 0` or similar.
fn prune<T: Field>(rows: Vec<Ineq<T>>) -> Option<Vec<Ineq<T>>> {
    let mut kept: Vec<Ineq<T>> = Vec::new();
    for q in rows {
        let q = normalize(q);
        if q.a.iter().all(|x| x.is_zero()) {
            let zero = T::zero();
            if q.b < zero || (q.strict && q.b == zero) {
                return None;
            }
            continue;
        }
        match kept.iter_mut().find(|k| k.a == q.a) {
            Some(k) => {
                if q.b < k.b || (q.b == k.b && q.strict) {
                    *k = q;
                }
            }
            None => kept.push(q),
        }
    }
    Some(kept)
}

/// A point satisfying every row, or `None` if there is none.
fn fm_sample<T: Field>(n: usize, rows: Vec<Ineq<T>>, limit: usize) -> Result<Option<Vec<T>>> {
    let Some(mut rows) = prune(rows) else { return Ok(None) };
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut stages: Vec<(usize, Vec<Ineq<T>>)> = Vec::new();
    while !remaining.is_empty() {
        let (pos, &var) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| rows.iter().filter(|q| !q.a[v].is_zero()).count())
            .expect("nonempty");
        remaining.swap_remove(pos);
        let (with, without): (Vec<_>, Vec<_>) = rows.into_iter().partition(|q| !q.a[var].is_zero());
        let mut next = without;
        let upper: Vec<&Ineq<T>> = with.iter().filter(|q| q.a[var] > T::zero()).collect();
        let lower: Vec<&Ineq<T>> = with.iter().filter(|q| q.a[var] < T::zero()).collect();
        if next.len() + upper.len() * lower.len() > limit {
            return Err(AtlasError::ResourceLimit { what: "elimination rows".into(), limit: limit as u64 });
        }
        for u in &upper {
            for l in &lower {
                let su = u.a[var].clone();
                let sl = -l.a[var].clone();
                let a = u.a.iter().zip(&l.a).map(|(x, y)| x.clone() / su.clone() + y.clone() / sl.clone()).collect();
                let b = u.b.clone() / su.clone() + l.b.clone() / sl.clone();
                next.push(Ineq { a, b, strict: u.strict || l.strict });
            }
        }
        stages.push((var, with));
        match prune(next) {
            Some(r) => rows = r,
            None => return Ok(None),
        }
    }
    let mut x = vec![T::zero(); n];
    for (var, rows) in stages.into_iter().rev() {
        x[var] = pick(var, &rows, &x);
    }
    Ok(Some(x))
}

/// A value for `x[var]` within the bounds the stage rows impose once every
/// later-eliminated variable is fixed.
fn pick<T: Field>(var: usize, rows: &[Ineq<T>], x: &[T]) -> T {
    let mut lo: Option<(T, bool)> = None;
    let mut hi: Option<(T, bool)> = None;
    for q in rows {
        let c = q.a[var].clone();
        let rest = q.a.iter().zip(x).enumerate().filter(|(k, _)| *k != var).fold(T::zero(), |acc, (_, (a, v))| acc + a.clone() * v.clone());
        let bound = (q.b.clone() - rest) / c.clone();
        if c > T::zero() {
            if hi.as_ref().is_none_or(|(h, s)| bound < *h || (bound == *h && !s)) {
                hi = Some((bound, q.strict));
            }
        } else if lo.as_ref().is_none_or(|(l, s)| bound > *l || (bound == *l && !s)) {
            lo = Some((bound, q.strict));
        }
    }
    let one = T::one();
    match (lo, hi) {
        (Some((l, _)), Some((h, _))) => (l + h) / (one.clone() + one),
        (Some((l, _)), None) => l + one,
        (None, Some((h, _))) => h - one,
        (None, None) => T::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(n: i64, d: i64) -> Q {
        Ratio::new(n, d)
    }

    #[test]
    fn interval() {
        let sys = LinearSystem::<Q>::new(1).with(&[1], Rel::Gt, 0).with(&[1], Rel::Lt, 1);
        assert_eq!(sys.feasibility().unwrap(), Feasibility::Nonempty { dim: 1, sample: vec![q(1, 2)] });
        let sys = LinearSystem::<Q>::new(1).with(&[1], Rel::Gt, 1).with(&[1], Rel::Lt, 1);
        assert!(sys.feasibility().unwrap().is_empty());
        let sys = LinearSystem::<Q>::new(1).with(&[1], Rel::Ge, 1).with(&[1], Rel::Le, 1);
        assert_eq!(sys.feasibility().unwrap(), Feasibility::Nonempty { dim: 0, sample: vec![q(1, 1)] });
    }

    #[test]
    fn equalities_and_implicit_equalities() {
        // x + y = 1, x ≥ 0, y ≥ 0: a segment.
        let sys = LinearSystem::<Q>::new(2).with(&[1, 1], Rel::Eq, 1).with(&[1, 0], Rel::Ge, 0).with(&[0, 1], Rel::Ge, 0);
        let f = sys.feasibility().unwrap();
        assert_eq!(f.dim(), Some(1));
        // x + y ≤ 1, x + y ≥ 1 written as two weak rows.
        let sys = LinearSystem::<Q>::new(2).with(&[1, 1], Rel::Le, 1).with(&[1, 1], Rel::Ge, 1).with(&[1, -1], Rel::Lt, 0);
        let Feasibility::Nonempty { dim, sample } = sys.feasibility().unwrap() else { panic!() };
        assert_eq!(dim, 1);
        assert!(sys.satisfied_by(&sample));
        // Triangle pinched to a point: x ≥ 0, y ≥ 0, x + y ≤ 0.
        let sys = LinearSystem::<Q>::new(2).with(&[1, 0], Rel::Ge, 0).with(&[0, 1], Rel::Ge, 0).with(&[1, 1], Rel::Le, 0);
        assert_eq!(sys.feasibility().unwrap().dim(), Some(0));
        let sys = LinearSystem::<Q>::new(2).with(&[1, 1], Rel::Eq, 1).with(&[2, 2], Rel::Eq, 3);
        assert!(sys.feasibility().unwrap().is_empty());
    }

    #[test]
    fn unbounded_and_free_variables() {
        let sys = LinearSystem::<Rational>::new(3).with(&[1, 0, 0], Rel::Gt, 5);
        let Feasibility::Nonempty { dim, sample } = sys.feasibility().unwrap() else { panic!() };
        assert_eq!(dim, 3);
        assert!(sys.satisfied_by(&sample));
    }

    #[test]
    fn row_limit_is_reported() {
        let mut sys = LinearSystem::<Q>::new(2);
        for k in 0..30 {
            sys.push_int(&[1, k - 15], Rel::Le, 100 + k);
            sys.push_int(&[-1, 14 - k], Rel::Le, 100 + k);
        }
        assert!(matches!(sys.feasibility_with_limit(10), Err(AtlasError::ResourceLimit { .. })));
        assert!(sys.is_feasible().unwrap());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rel() -> impl Strategy<Value = Rel> {
            prop_oneof![Just(Rel::Lt), Just(Rel::Le), Just(Rel::Eq), Just(Rel::Ge), Just(Rel::Gt)]
        }

        /// Grid search over points with denominators dividing 12 in a box; a
        /// hit proves nonemptiness.
        fn grid_hit(sys: &LinearSystem<Q>) -> bool {
            let pts: Vec<Q> = (-36..=36).map(|k| q(k, 12)).collect();
            pts.iter().any(|x| pts.iter().any(|y| sys.satisfied_by(&[*x, *y])))
        }

        proptest! {
            #[test]
            fn samples_satisfy_and_grid_hits_are_found(
                rows in prop::collection::vec((-2i64..=2, -2i64..=2, rel(), -3i64..=3), 1..6)
            ) {
                let mut sys = LinearSystem::<Q>::new(2);
                for (a, b, r, c) in rows {
                    sys.push_int(&[a, b], r, c);
                }
                match sys.feasibility().unwrap() {
                    Feasibility::Empty => prop_assert!(!grid_hit(&sys)),
                    Feasibility::Nonempty { dim, sample } => {
                        prop_assert!(sys.satisfied_by(&sample));
                        prop_assert!(dim <= 2);
                    }
                }
            }
        }
    }
}
