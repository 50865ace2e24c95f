use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use catalan_atlas::stats::{Budget, Depth};
use catalan_atlas::{AtlasError, RootSystem};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

mod commands;
mod figure;

use commands::Output;

/// Exact enumeration for extended Catalan arrangements.
#[derive(Parser)]
#[command(name = "catalan-atlas", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Positive roots, Cartan matrix, exponents.
    Roots(Common),
    /// Covers of the root poset and filter/ideal counts.
    Poset(Common),
    /// Geometric chains of ideals (positive ones with --positive).
    Chains(Common),
    /// Dominant regions (bounded ones with --positive).
    Regions(Common),
    /// Coroot lattice points in the dilated fundamental alcove.
    Lattice(Common),
    /// Polygon model of the generalized cluster complex (types A, B, C).
    Cluster(Common),
    /// N, N⁺, h, h⁺, f, f⁺.
    Stats(Common),
    /// Every cross-check for the type and m.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "full")]
        depth: DepthArg,
    },
    /// SVG of the bounded regions, maximal alcoves and lattice points (rank 2).
    Figure(Common),
}

#[derive(clap::Args)]
struct Common {
    /// Cartan type such as A3, B2, F4.
    #[arg(long = "type")]
    ctype: String,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long)]
    positive: bool,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum DepthArg {
    Quick,
    Full,
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<AtlasError> for Failure {
    fn from(e: AtlasError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn budget() -> Result<Budget, Failure> {
    let mut b = Budget::default();
    if let Ok(v) = std::env::var("CATALAN_ATLAS_MAX_WORK") {
        b.work = v.parse().map_err(|_| Failure::Usage(format!("CATALAN_ATLAS_MAX_WORK is not a number: {v}")))?;
    }
    Ok(b)
}

fn render(cmd: &str, common: &Common, output: Output) -> Result<String, Failure> {
    match common.format.unwrap_or(Format::Json) {
        Format::Json => {
            let doc = json!({
                "meta": { "type": common.ctype, "m": common.m, "version": env!("CARGO_PKG_VERSION") },
                "data": output.data,
            });
            Ok(serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &output.rows {
                w.serialize(row).map_err(|e| Failure::Usage(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv is utf-8"))
        }
        Format::Svg => Err(Failure::Usage(format!("`{cmd}` has no svg output"))),
    }
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let budget = budget()?;
    let (name, common, depth) = match &cli.command {
        Command::Roots(c) => ("roots", c, None),
        Command::Poset(c) => ("poset", c, None),
        Command::Chains(c) => ("chains", c, None),
        Command::Regions(c) => ("regions", c, None),
        Command::Lattice(c) => ("lattice", c, None),
        Command::Cluster(c) => ("cluster", c, None),
        Command::Stats(c) => ("stats", c, None),
        Command::Verify { common, depth } => ("verify", common, Some(*depth)),
        Command::Figure(c) => ("figure", c, None),
    };
    let rs = RootSystem::of(&common.ctype)?;
    if common.m == 0 {
        return Err(AtlasError::InvalidM(0).into());
    }
    let (m, positive, limit) = (common.m, common.positive, budget.work);
    if name == "figure" {
        if !matches!(common.format, None | Some(Format::Svg)) {
            return Err(Failure::Usage("`figure` only writes svg".into()));
        }
        return emit(common, &figure::render(&rs, m)?);
    }
    let output = match name {
        "roots" => commands::roots(&rs)?,
        "poset" => commands::poset(&rs, positive)?,
        "chains" => commands::chains(&rs, m, positive, limit)?,
        "regions" => commands::regions(&rs, m, positive, limit)?,
        "lattice" => commands::lattice(&rs, m, limit)?,
        "cluster" => commands::cluster(&rs, m, positive, limit)?,
        "stats" => commands::stats(&rs, m)?,
        _ => {
            let depth = match depth.expect("verify has a depth") {
                DepthArg::Quick => Depth::Quick,
                DepthArg::Full => Depth::Full,
            };
            commands::verify(&rs, m, depth, budget)?
        }
    };
    let failed = output.failed;
    emit(common, &render(name, common, output)?)?;
    if failed {
        return Err(Failure::Verification);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => {
            eprintln!("verification failed");
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
