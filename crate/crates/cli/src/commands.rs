use std::collections::BTreeMap;

use catalan_atlas::chains::{
    enumerate_filter_chains, enumerate_ideal_chains, filter_chain_histogram, filter_indecomposables,
    positive_chain_histogram, top_indecomposables_by_maximality,
};
use catalan_atlas::cluster::PolygonModel;
use catalan_atlas::lattice::{Dilation, SimplexSigma};
use catalan_atlas::regions::{
    bounded_wall_histogram, dominant_regions, max_alcove, non_separating_by_chain, separating_top_by_chain,
};
use catalan_atlas::stats::{stat_report, verify_all, Budget, Depth, Status};
use catalan_atlas::{build_poset, AtlasError, Result, RootSet, RootSystem};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub i: usize,
    pub value: String,
    pub source: String,
}

pub struct Output {
    pub data: Value,
    pub rows: Vec<Row>,
    pub failed: bool,
}

impl Output {
    fn new(data: Value, rows: Vec<Row>) -> Output {
        Output { data, rows, failed: false }
    }
}

fn hist_rows(hist: &BTreeMap<usize, u64>, source: &str) -> Vec<Row> {
    hist.iter().map(|(&i, v)| Row { i, value: v.to_string(), source: source.into() }).collect()
}

fn vec_rows<T: ToString>(v: &[T], source: &str) -> Vec<Row> {
    v.iter().enumerate().map(|(i, x)| Row { i, value: x.to_string(), source: source.into() }).collect()
}

fn indices(s: RootSet) -> Vec<usize> {
    s.iter().collect()
}

fn guard(count: usize, limit: u64, what: &str) -> Result<()> {
    if count as u64 > limit {
        return Err(AtlasError::ResourceLimit { what: what.into(), limit });
    }
    Ok(())
}

pub fn roots(rs: &RootSystem) -> Result<Output> {
    let roots: Vec<Value> = rs
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(i, r)| json!({ "index": i, "coefficients": r.0, "height": r.height() }))
        .collect();
    let rows = rs
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(i, r)| Row { i, value: r.to_string(), source: "rootsys".into() })
        .collect();
    let data = json!({
        "rank": rs.rank(),
        "coxeter_number": rs.coxeter_number()?,
        "exponents": rs.exponents(),
        "highest_root": rs.highest_root()?.0,
        "cartan": rs.cartan(),
        "positive_roots": roots,
    });
    Ok(Output::new(data, rows))
}

pub fn poset(rs: &RootSystem, positive: bool) -> Result<Output> {
    let p = build_poset(rs.clone());
    let filters = p.count_filters_by_min_elements(positive);
    let ideals = p.count_ideals_by_max_elements(positive);
    let data = json!({
        "covers": p.covers(),
        "filters_by_minimal_elements": filters,
        "ideals_by_maximal_elements": ideals,
        "positive": positive,
    });
    Ok(Output::new(data, hist_rows(&filters, "poset")))
}

pub fn chains(rs: &RootSystem, m: usize, positive: bool, limit: u64) -> Result<Output> {
    let p = build_poset(rs.clone());
    let n = rs.num_positive();
    let mut listed = Vec::new();
    let hist = if positive {
        for c in enumerate_ideal_chains(&p, m, true)? {
            guard(listed.len() + 1, limit, "listed chains")?;
            let top = top_indecomposables_by_maximality(&p, &c);
            let ideals: Vec<Vec<usize>> = c.ideals().iter().map(|&j| indices(j)).collect();
            listed.push(json!({ "ideals": ideals, "indecomposables": indices(top) }));
        }
        positive_chain_histogram(&p, m)?
    } else {
        for c in enumerate_filter_chains(&p, m)? {
            guard(listed.len() + 1, limit, "listed chains")?;
            let ideals: Vec<Vec<usize>> = c.to_ideal_chain(n).ideals().iter().map(|&j| indices(j)).collect();
            listed.push(json!({ "ideals": ideals, "indecomposables": indices(filter_indecomposables(rs, &c)) }));
        }
        filter_chain_histogram(&p, m)?
    };
    let data = json!({ "positive": positive, "count": listed.len(), "by_indecomposables": hist, "chains": listed });
    Ok(Output::new(data, hist_rows(&hist, "chains")))
}

pub fn regions(rs: &RootSystem, m: usize, positive: bool, limit: u64) -> Result<Output> {
    let p = build_poset(rs.clone());
    let n = rs.num_positive();
    let mut listed = Vec::new();
    let mut hist = BTreeMap::new();
    for region in dominant_regions(&p, m)? {
        if positive && !region.bounded() {
            continue;
        }
        guard(listed.len() + 1, limit, "listed regions")?;
        let levels: Vec<usize> = (0..n).map(|a| region.level(a)).collect();
        let mut entry = json!({ "levels": levels, "bounded": region.bounded() });
        if positive {
            let walls = non_separating_by_chain(rs, &region)?;
            let top = walls.last().copied().unwrap_or(RootSet::EMPTY);
            *hist.entry(top.len()).or_insert(0u64) += 1;
            entry["non_separating_walls"] = json!(walls.iter().map(|&s| indices(s)).collect::<Vec<_>>());
            entry["max_alcove"] = json!(max_alcove(rs, &region.ideal_chain(n))?.0);
        } else {
            let sep = separating_top_by_chain(rs, &region);
            *hist.entry(sep.len()).or_insert(0u64) += 1;
            entry["separating_top_walls"] = json!(indices(sep));
        }
        listed.push(entry);
    }
    if positive {
        debug_assert_eq!(hist, bounded_wall_histogram(&p, m)?);
    }
    let data = json!({ "positive": positive, "count": listed.len(), "by_walls": hist, "regions": listed });
    Ok(Output::new(data, hist_rows(&hist, "regions")))
}

pub fn lattice(rs: &RootSystem, m: usize, limit: u64) -> Result<Output> {
    let d = Dilation::new(rs, m)?;
    let full = SimplexSigma::full(m)?;
    let pts = d.points();
    guard(pts.len(), limit, "listed points")?;
    let listed: Vec<Value> = pts
        .iter()
        .map(|pt| {
            let walls = d.wall_incidence(pt, full).expect("point of p·A̅∘");
            json!({ "pairings": pt.pairings, "coroot_coords": pt.coords, "walls": walls })
        })
        .collect();
    let hist = d.wall_histogram();
    let data = json!({
        "p": d.p(),
        "count": pts.len(),
        "interior": d.interior_count(),
        "by_walls": hist,
        "points": listed,
    });
    Ok(Output::new(data, hist_rows(&hist, "lattice")))
}

pub fn cluster(rs: &RootSystem, m: usize, positive: bool, limit: u64) -> Result<Output> {
    let model = PolygonModel::for_type(rs.ctype()?, m)?;
    let summary = model.summary(positive, limit)?;
    let snake: Vec<&Vec<(usize, usize)>> = model.snake(0).iter().map(|&v| &model.diagonals()[v].segments).collect();
    let data = json!({
        "positive": positive,
        "polygon": model.size(),
        "vertices": model.diagonals().len(),
        "snake": snake,
        "f": summary.f,
        "h": summary.h,
    });
    Ok(Output::new(data, vec_rows(&summary.h, "cluster")))
}

pub fn stats(rs: &RootSystem, m: usize) -> Result<Output> {
    let report = stat_report(rs, m)?;
    let rows = vec_rows(&report.h_plus, "chains");
    Ok(Output::new(serde_json::to_value(&report).expect("serializable"), rows))
}

pub fn verify(rs: &RootSystem, m: usize, depth: Depth, budget: Budget) -> Result<Output> {
    let report = verify_all(rs, m, depth, budget)?;
    let rows = report
        .checks
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Skipped => "skipped",
            };
            Row { i, value: status.into(), source: c.name.clone() }
        })
        .collect();
    let failed = !report.passed();
    let mut out = Output::new(serde_json::to_value(&report).expect("serializable"), rows);
    out.failed = failed;
    Ok(out)
}
