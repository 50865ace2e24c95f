//! Rank-2 pictures: the hyperplanes `H_{α,k}` in the dominant cone, the
//! bounded regions, their maximal alcoves, the simplex `p·A̅∘` and the
//! points of `D_m`. Geometry is exact in the coordinates `(σ_i, x)` and
//! only turned into floats when written out.

use std::fmt::Write as _;

use catalan_atlas::lattice::Dilation;
use catalan_atlas::regions::{bounded_regions, max_alcove_element, Region};
use catalan_atlas::{build_poset, AtlasError, Rational, Result, RootSystem};
use num_integer::Integer as _;
use num_traits::{ToPrimitive, Zero};

type Point = [Rational; 2];

/// A half-plane `a·c ≥ b` (or `≤` when `upper`).
struct Bound {
    a: [Rational; 2],
    b: Rational,
    upper: bool,
}

impl Bound {
    fn holds(&self, p: &Point) -> bool {
        let v = &self.a[0] * &p[0] + &self.a[1] * &p[1];
        if self.upper {
            v <= self.b
        } else {
            v >= self.b
        }
    }
}

fn int(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

fn meet(x: &Bound, y: &Bound) -> Option<Point> {
    let det = &x.a[0] * &y.a[1] - &x.a[1] * &y.a[0];
    if det.is_zero() {
        return None;
    }
    let c0 = (&x.b * &y.a[1] - &x.a[1] * &y.b) / &det;
    let c1 = (&x.a[0] * &y.b - &x.b * &y.a[0]) / &det;
    Some([c0, c1])
}

/// Vertices of the bounded polygon cut out by the half-planes.
fn polygon(bounds: &[Bound]) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::new();
    for i in 0..bounds.len() {
        for j in i + 1..bounds.len() {
            if let Some(p) = meet(&bounds[i], &bounds[j]) {
                if bounds.iter().all(|b| b.holds(&p)) && !pts.contains(&p) {
                    pts.push(p);
                }
            }
        }
    }
    pts
}

/// From coordinates `(σ_i, x)` to the Euclidean plane.
struct Plane {
    inv: [[f64; 2]; 2],
    scale: f64,
}

impl Plane {
    fn new(rs: &RootSystem) -> Plane {
        let g: Vec<Vec<f64>> = rs.sym().iter().map(|r| r.iter().map(|x| x.to_f64().unwrap_or(0.0)).collect()).collect();
        let (l0, l1) = (g[0][0].sqrt(), g[1][1].sqrt());
        let cos = g[0][1] / (l0 * l1);
        let sin = (1.0 - cos * cos).sqrt();
        let s = [[l0, 0.0], [l1 * cos, l1 * sin]];
        let det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
        let inv = [[s[1][1] / det, -s[0][1] / det], [-s[1][0] / det, s[0][0] / det]];
        Plane { inv, scale: 60.0 }
    }

    fn map(&self, p: &Point) -> (f64, f64) {
        let c = [p[0].to_f64().unwrap_or(0.0), p[1].to_f64().unwrap_or(0.0)];
        let x = self.inv[0][0] * c[0] + self.inv[0][1] * c[1];
        let y = self.inv[1][0] * c[0] + self.inv[1][1] * c[1];
        (x * self.scale, -y * self.scale)
    }
}

fn sort_around(pts: &mut [(f64, f64)]) {
    let n = pts.len() as f64;
    let cx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let cy = pts.iter().map(|p| p.1).sum::<f64>() / n;
    pts.sort_by(|a, b| (a.1 - cy).atan2(a.0 - cx).total_cmp(&(b.1 - cy).atan2(b.0 - cx)));
}

fn points_attr(pts: &[(f64, f64)]) -> String {
    pts.iter().map(|(x, y)| format!("{x:.6},{y:.6}")).collect::<Vec<_>>().join(" ")
}

fn region_bounds(rs: &RootSystem, region: &Region) -> Vec<Bound> {
    let m = region.m() as i64;
    let mut out = Vec::new();
    for a in 0..rs.num_positive() {
        let coef = [int(rs.root(a).0[0]), int(rs.root(a).0[1])];
        let k = region.level(a) as i64;
        out.push(Bound { a: coef.clone(), b: int(k), upper: false });
        if k < m {
            out.push(Bound { a: coef, b: int(k + 1), upper: true });
        }
    }
    out
}

/// The SVG picture for a rank-2 root system.
pub fn render(rs: &RootSystem, m: usize) -> Result<String> {
    if rs.rank() != 2 || !rs.is_irreducible() {
        return Err(AtlasError::RankNotTwo(rs.rank()));
    }
    let p = build_poset(rs.clone());
    let d = Dilation::new(rs, m)?;
    let g = d.weyl();
    let plane = Plane::new(rs);
    let tilde = rs.highest_root()?.0.clone();
    let h = rs.coxeter_number()?;
    let cone_top = int(m as i64 * h);
    let cone = [
        Bound { a: [int(1), int(0)], b: int(0), upper: false },
        Bound { a: [int(0), int(1)], b: int(0), upper: false },
        Bound { a: [int(tilde[0]), int(tilde[1])], b: cone_top.clone(), upper: true },
    ];
    let corners: Vec<(f64, f64)> = polygon(&cone).iter().map(|q| plane.map(q)).collect();
    let pad = 20.0;
    let min_x = corners.iter().map(|c| c.0).fold(f64::MAX, f64::min) - pad;
    let max_x = corners.iter().map(|c| c.0).fold(f64::MIN, f64::max) + pad;
    let min_y = corners.iter().map(|c| c.1).fold(f64::MAX, f64::min) - pad;
    let max_y = corners.iter().map(|c| c.1).fold(f64::MIN, f64::max) + pad;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{min_x:.6} {min_y:.6} {:.6} {:.6}">"#,
        max_x - min_x,
        max_y - min_y
    );
    svg.push_str(concat!(
        r#"<defs><pattern id="hatch" width="4" height="4" patternUnits="userSpaceOnUse" patternTransform="rotate(45)">"#,
        r#"<line x1="0" y1="0" x2="0" y2="4" stroke="black" stroke-width="1"/></pattern></defs>"#,
        "\n"
    ));

    for region in bounded_regions(&p, m)? {
        let mut pts: Vec<_> = polygon(&region_bounds(rs, &region)).iter().map(|q| plane.map(q)).collect();
        sort_around(&mut pts);
        let _ = writeln!(svg, r##"<polygon class="region" points="{}" fill="#dde8f4" stroke="none"/>"##, points_attr(&pts));
    }

    for a in 0..rs.num_positive() {
        let coef = [int(rs.root(a).0[0]), int(rs.root(a).0[1])];
        for k in 0..=m as i64 {
            let line = [
                Bound { a: coef.clone(), b: int(k), upper: false },
                Bound { a: coef.clone(), b: int(k), upper: true },
            ];
            let ends: Vec<Point> = cone
                .iter()
                .filter_map(|edge| meet(&line[0], edge))
                .filter(|q| cone.iter().all(|b| b.holds(q)))
                .fold(Vec::new(), |mut acc, q| {
                    if !acc.contains(&q) {
                        acc.push(q);
                    }
                    acc
                });
            if let [s, t] = ends.as_slice() {
                let (x1, y1) = plane.map(s);
                let (x2, y2) = plane.map(t);
                let _ = writeln!(
                    svg,
                    r#"<line class="hyperplane" data-root="{a}" data-level="{k}" x1="{x1:.6}" y1="{y1:.6}" x2="{x2:.6}" y2="{y2:.6}" stroke="gray" stroke-width="1"/>"#
                );
            }
        }
    }

    let lcm = tilde[0].lcm(&tilde[1]);
    let vertices: Vec<Vec<i64>> = vec![vec![0, 0], vec![lcm / tilde[0], 0], vec![0, lcm / tilde[1]]];
    for region in bounded_regions(&p, m)? {
        let w = max_alcove_element(g, &region)?;
        let mut pts: Vec<_> = vertices
            .iter()
            .map(|v| {
                let img = g.apply(&w, v, lcm);
                plane.map(&[Rational::new(img[0].into(), lcm.into()), Rational::new(img[1].into(), lcm.into())])
            })
            .collect();
        sort_around(&mut pts);
        let _ = writeln!(
            svg,
            r#"<polygon class="alcove" points="{}" fill="url(#hatch)" stroke="black" stroke-width="1"/>"#,
            points_attr(&pts)
        );
    }

    let pv = d.p();
    let simplex: Vec<_> = [[int(0), int(0)], [Rational::new(pv.into(), tilde[0].into()), int(0)], [
        int(0),
        Rational::new(pv.into(), tilde[1].into()),
    ]]
    .iter()
    .map(|q| plane.map(q))
    .collect();
    let _ = writeln!(
        svg,
        r#"<polygon class="simplex" points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        points_attr(&simplex)
    );

    for pt in d.points() {
        let (x, y) = plane.map(&[int(pt.pairings[0]), int(pt.pairings[1])]);
        let _ = writeln!(svg, r#"<circle class="lattice-point" cx="{x:.6}" cy="{y:.6}" r="3" fill="black"/>"#);
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    #[test]
    fn element_counts() {
        for (name, m, n) in [("A2", 2, 7), ("A2", 1, 2), ("B2", 1, 3), ("G2", 1, 5)] {
            let svg = render(&RootSystem::of(name).unwrap(), m).unwrap();
            assert_eq!(count(&svg, r#"class="alcove""#), n, "{name} m={m}");
            assert_eq!(count(&svg, r#"<circle class="lattice-point""#), n, "{name} m={m}");
            assert_eq!(count(&svg, r#"class="region""#), n, "{name} m={m}");
            assert_eq!(count(&svg, r#"class="simplex""#), 1);
        }
    }

    #[test]
    fn region_polygons_are_nondegenerate() {
        let rs = RootSystem::of("B2").unwrap();
        let p = build_poset(rs.clone());
        for region in bounded_regions(&p, 2).unwrap() {
            assert!(polygon(&region_bounds(&rs, &region)).len() >= 3);
        }
    }

    #[test]
    fn rejects_other_ranks() {
        assert!(matches!(render(&RootSystem::of("A3").unwrap(), 1), Err(AtlasError::RankNotTwo(_))));
    }
}
