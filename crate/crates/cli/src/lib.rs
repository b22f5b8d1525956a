//! Command-line front end: argument grammar, dispatch and output formatting.

mod format;
mod verify;

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use entscale::bounds::{deformed_bounds, prop1_bounds, BoundReport};
use entscale::lattice::{build_grid, min_balanced_cut, read_graph, CutMode, LatticeGraph, EXACT_CUT_LIMIT};
use entscale::runtime::{
    achievable_depth, depth_table, eval_runtime, fit_params, heatmap, ingest_benchmarks, invert_depth,
    standard_horizons, write_heatmap_dir, RuntimeParams,
};
use entscale::simulator::{max_qubits_from_env, suite_cuts, verify_caps, write_records_file, CheckKind, VerifyOptions};
use entscale::{BoundsError, LatticeError, RuntimeError, SimError};

pub use format::fmt6;

#[derive(Debug, Parser)]
#[command(name = "entscale", version, about = "Entanglement-scaling bounds and runtime frontier for qubit lattices")]
pub struct Cli {
    /// Machine-readable JSON instead of aligned text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bond-dimension and gate-count lower bounds for a lattice.
    Bounds(BoundsArgs),
    /// Depth window (sqrt(4n), 8 sqrt(n)) for n qubits.
    Interval {
        #[arg(long)]
        qubits: usize,
    },
    /// Runtime model at (qubits, depth).
    RuntimeEval {
        #[arg(long)]
        qubits: usize,
        #[arg(long, allow_negative_numbers = true)]
        depth: f64,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Depth whose modelled runtime equals the given seconds.
    RuntimeInvert {
        #[arg(long)]
        qubits: usize,
        #[arg(long, allow_negative_numbers = true)]
        seconds: f64,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Fit the runtime exponents to a benchmark CSV.
    Fit {
        #[arg(long, value_name = "FILE")]
        data: PathBuf,
        #[arg(long, default_value_t = RuntimeParams::PAPER.flops)]
        flops: f64,
    },
    /// Achievable depth per runtime horizon.
    Tables {
        /// Halve the depths (iSwap-style benchmark).
        #[arg(long)]
        modified: bool,
        #[arg(long, value_delimiter = ',', default_values_t = [50usize, 72])]
        qubits: Vec<usize>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Runtime heatmap, interval curve and horizon contours as CSV files.
    Heatmap {
        #[arg(long, value_name = "MIN:MAX", value_parser = parse_range::<usize>)]
        qubits: RangeInclusive<usize>,
        #[arg(long, value_name = "MIN:MAX", value_parser = parse_range::<u64>)]
        depth: RangeInclusive<u64>,
        #[arg(long, default_value_t = 1)]
        step: usize,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Simulate one random circuit and report entropy per layer and cut.
    Simulate {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        seed: u64,
        /// Random balanced cuts added after the min cuts.
        #[arg(long, default_value_t = 0)]
        random_cuts: usize,
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
        /// Statevector size limit (default: ENTSCALE_MAX_QUBITS or 20).
        #[arg(long)]
        max_qubits: Option<usize>,
    },
    /// Run the reproduction and simulator checks; exit 0 iff all pass.
    Verify {
        /// Largest grid simulated.
        #[arg(long, default_value_t = 16)]
        max_qubits: usize,
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Random balanced cuts per grid, on top of every min cut.
        #[arg(long, default_value_t = 0)]
        random_cuts: usize,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("topology").required(true).args(["grid", "deformed", "graph"])))]
pub struct BoundsArgs {
    #[arg(long, num_args = 2, value_names = ["R", "C"])]
    grid: Option<Vec<usize>>,
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    deformed: Option<Vec<usize>>,
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Min-cut search (default: exact up to 24 vertices, heuristic above).
    #[arg(long, value_enum)]
    cut: Option<CutArg>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CutArg {
    Exact,
    Heuristic,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long, default_value_t = RuntimeParams::PAPER.a1)]
    a1: f64,
    #[arg(long, default_value_t = RuntimeParams::PAPER.a2)]
    a2: f64,
    #[arg(long, default_value_t = RuntimeParams::PAPER.flops)]
    flops: f64,
}

impl ParamArgs {
    fn params(&self) -> Result<RuntimeParams, CliError> {
        Ok(RuntimeParams::new(self.a1, self.a2, self.flops)?)
    }
}

fn parse_range<T>(s: &str) -> Result<RangeInclusive<T>, String>
where
    T: std::str::FromStr + PartialOrd,
{
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected MIN:MAX, got `{s}`"))?;
    let lo: T = lo.trim().parse().map_err(|_| format!("`{lo}` is not a non-negative integer"))?;
    let hi: T = hi.trim().parse().map_err(|_| format!("`{hi}` is not a non-negative integer"))?;
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok(lo..=hi)
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Runtime(#[from] RuntimeError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Parses `args` (including the program name) and runs the command. Returns
/// the process exit code: 0 success, 1 domain error or failed check, 2 usage.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match run(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// `Ok(false)` means the command ran but a check it performs failed.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    let json = cli.json;
    match &cli.command {
        Command::Bounds(args) => bounds(args, json, out)?,
        Command::Interval { qubits } => {
            if *qubits == 0 {
                return Err(BoundsError::NoQubits.into());
            }
            let (lo, hi) = entscale::bounds::depth_interval(*qubits);
            if json {
                emit(out, &json!({"qubits": qubits, "lower": lo, "upper": hi}))?;
            } else {
                writeln!(out, "{} {}", fmt6(lo), fmt6(hi))?;
            }
        }
        Command::RuntimeEval { qubits, depth, params } => {
            let est = eval_runtime(&params.params()?, *qubits, *depth)?;
            if json {
                emit(
                    out,
                    &json!({
                        "qubits": qubits,
                        "depth": depth,
                        "seconds": est.seconds(),
                        "log10_seconds": est.log10_seconds(),
                        "ln_seconds": est.ln_seconds,
                    }),
                )?;
            } else {
                let secs = est.seconds().map_or_else(|| "overflow".to_string(), fmt6);
                writeln!(out, "seconds        {secs}")?;
                writeln!(out, "log10_seconds  {}", fmt6(est.log10_seconds()))?;
            }
        }
        Command::RuntimeInvert { qubits, seconds, params } => {
            let p = params.params()?;
            let depth = invert_depth(&p, *qubits, *seconds)?;
            let achievable = achievable_depth(&p, *qubits, *seconds)?;
            if json {
                emit(out, &json!({"qubits": qubits, "seconds": seconds, "depth": depth, "achievable": achievable}))?;
            } else {
                writeln!(out, "depth       {}", fmt6(depth))?;
                writeln!(out, "achievable  {achievable}")?;
            }
        }
        Command::Fit { data, flops } => {
            let points = ingest_benchmarks(data)?;
            let fit = fit_params(&points, *flops)?;
            if json {
                emit(out, &serde_json::to_value(&fit)?)?;
            } else {
                writeln!(out, "a1             {}", fmt6(fit.params.a1))?;
                writeln!(out, "a2             {}", fmt6(fit.params.a2))?;
                writeln!(out, "flops          {}", fmt6(fit.params.flops))?;
                writeln!(out, "residual_norm  {}", fmt6(fit.residual_norm))?;
                writeln!(out, "points         {}", fit.points)?;
            }
        }
        Command::Tables { modified, qubits, params } => {
            let table = depth_table(&params.params()?, qubits, &standard_horizons(), *modified)?;
            if json {
                emit(out, &serde_json::to_value(&table)?)?;
            } else {
                write!(out, "{table}")?;
            }
        }
        Command::Heatmap { qubits, depth, step, out: dir, params } => {
            let data = heatmap(&params.params()?, qubits.clone(), depth.clone(), *step)?;
            write_heatmap_dir(&data, dir)?;
            if json {
                emit(
                    out,
                    &json!({
                        "dir": dir,
                        "cells": data.cells.len(),
                        "interval_points": data.interval.len(),
                        "contour_points": data.contours.len(),
                    }),
                )?;
            } else {
                writeln!(
                    out,
                    "wrote {} cells, {} interval points, {} contour points to {}",
                    data.cells.len(),
                    data.interval.len(),
                    data.contours.len(),
                    dir.display()
                )?;
            }
        }
        Command::Simulate { rows, cols, depth, seed, random_cuts, report, max_qubits } => {
            simulate(*rows, *cols, *depth, *seed, *random_cuts, report.as_ref(), *max_qubits, json, out)?
        }
        Command::Verify { max_qubits, seeds, depth, random_cuts } => {
            let cfg = verify::Config {
                max_grid: *max_qubits,
                seeds: *seeds,
                depth: *depth,
                random_cuts: *random_cuts,
                sim_limit: max_qubits_from_env(),
            };
            return verify::verify_all(&cfg, json, out);
        }
    }
    Ok(true)
}

fn emit(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn cut_mode(arg: Option<CutArg>, graph: &LatticeGraph) -> CutMode {
    match arg {
        Some(CutArg::Exact) => CutMode::Exact,
        Some(CutArg::Heuristic) => CutMode::heuristic(),
        None if graph.n() <= EXACT_CUT_LIMIT => CutMode::Exact,
        None => CutMode::heuristic(),
    }
}

fn bounds(args: &BoundsArgs, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let (report, source): (BoundReport, &str) = if let Some(rc) = &args.grid {
        let g = build_grid(rc[0], rc[1])?;
        let cut = min_balanced_cut(&g, cut_mode(args.cut, &g))?;
        (prop1_bounds(g.n(), g.edge_count(), cut.f())?, "min cut")
    } else if let Some(nk) = &args.deformed {
        (deformed_bounds(nk[0], nk[1])?, "short side")
    } else if let Some(path) = &args.graph {
        let g = read_graph(path)?;
        let cut = min_balanced_cut(&g, cut_mode(args.cut, &g))?;
        (prop1_bounds(g.n(), g.edge_count(), cut.f())?, "min cut")
    } else {
        return Err(CliError::Usage("one of --grid, --deformed, --graph is required".into()));
    };

    if json {
        let mut v = serde_json::to_value(&report)?;
        v["cut_source"] = json!(source);
        return emit(out, &v);
    }
    writeln!(out, "qubits       {}", report.n)?;
    writeln!(out, "edges        {}", report.e)?;
    writeln!(out, "cut          {} ({source})", report.f)?;
    writeln!(out, "log2_chi_lb  {}", fmt6(report.log2_chi_lb))?;
    writeln!(out, "chi_lb       {}", fmt6(report.chi_lb))?;
    writeln!(out, "gate_lb      {}", fmt6(report.gate_lb))?;
    writeln!(out, "depth        {} {}", fmt6(report.depth_interval.0), fmt6(report.depth_interval.1))?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    rows: usize,
    cols: usize,
    depth: usize,
    seed: u64,
    random_cuts: usize,
    report: Option<&PathBuf>,
    max_qubits: Option<usize>,
    json: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let graph = build_grid(rows, cols)?;
    let options = VerifyOptions { max_qubits: max_qubits.unwrap_or_else(max_qubits_from_env), local_probe: true };
    // Fail on the size limit before the exhaustive cut search.
    if graph.n() > options.max_qubits {
        return Err(SimError::TooManyQubits {
            n: graph.n(),
            limit: options.max_qubits,
            bytes: entscale::bounds::memory_bytes(graph.n()).to_string(),
        }
        .into());
    }
    let cuts = suite_cuts(&graph, random_cuts, seed)?;
    let summary = verify_caps(&graph, depth, &[seed], &cuts, &options)?;
    if let Some(path) = report {
        write_records_file(&summary.records, path)?;
    }
    if json {
        let mut v = summary.to_json(100);
        v["cuts_side_a"] = json!(cuts.iter().map(|c| c.side_a()).collect::<Vec<_>>());
        v["records"] = serde_json::to_value(&summary.records)?;
        return emit(out, &v);
    }

    writeln!(out, "{rows}x{cols} grid, seed {seed}, depth {depth}")?;
    for (i, c) in cuts.iter().enumerate() {
        writeln!(out, "cut {i}: A = {:?} (crossing {})", c.side_a(), c.f())?;
    }
    writeln!(out, "{:>5}  {:>3}  {:>10}  {:>6}  {:>8}  {:>3}", "layer", "cut", "entropy", "rank", "crossing", "cap")?;
    for r in &summary.records {
        writeln!(
            out,
            "{:>5}  {:>3}  {:>10}  {:>6}  {:>8}  {:>3}",
            r.layer,
            r.cut_id,
            fmt6(r.entropy_ebits),
            r.rank,
            r.crossing_cz,
            r.cap
        )?;
    }
    for check in CheckKind::ALL {
        let t = summary.tallies.get(&check).copied().unwrap_or_default();
        let verdict = if t.failed == 0 { "pass".to_string() } else { format!("FAIL ({} of {})", t.failed, t.evaluated) };
        writeln!(out, "{:<17} {verdict}", check.name())?;
    }
    if let Some(v) = summary.first_violation(None) {
        writeln!(out, "first counterexample: {v}")?;
    }
    Ok(())
}
