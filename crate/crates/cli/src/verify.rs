use std::io::Write;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use entscale::bounds::{deformed_edge_formula, deformed_exact, prop1_exact, series_check};
use entscale::lattice::{build_deformed_grid, build_grid, deformed_dims, exact_sqrt};
use entscale::runtime::{depth_table, standard_horizons, RuntimeParams};
use entscale::simulator::{suite_cuts, verify_caps, CheckKind, VerifyOptions};

use crate::CliError;

pub const TABLE1: [[u64; 2]; 4] = [[75, 60], [84, 67], [93, 75], [102, 82]];
pub const TABLE2: [[u64; 2]; 4] = [[38, 30], [42, 33], [46, 38], [51, 41]];
pub const CONSISTENCY_MAX_N: usize = 400;
pub const SERIES_MAX_N: usize = 144;
pub const SERIES_MAX_ORDER: usize = 64;
/// Seed for drawing the random cuts of each grid.
pub const CUT_SEED: u64 = 0;

pub struct Config {
    pub max_grid: usize,
    pub seeds: u64,
    pub depth: usize,
    pub random_cuts: usize,
    pub sim_limit: usize,
}

#[derive(Debug, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub cases: u64,
    pub failed: u64,
    pub first_counterexample: Option<String>,
}

impl CheckRow {
    fn new(name: &str) -> Self {
        CheckRow { name: name.into(), cases: 0, failed: 0, first_counterexample: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            self.first_counterexample.get_or_insert_with(what);
        }
    }

    fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Serialize)]
pub struct GridRow {
    pub rows: usize,
    pub cols: usize,
    pub cuts: usize,
    /// `(check, evaluated, failed)` in `CheckKind::ALL` order.
    pub checks: Vec<(String, u64, u64)>,
    pub first_counterexample: Option<String>,
}

impl GridRow {
    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.2 == 0)
    }
}

fn tables_check(p: &RuntimeParams) -> Result<Vec<CheckRow>, CliError> {
    let mut rows = Vec::new();
    for (halve, expected, slack, name) in
        [(false, TABLE1, 0, "table 1 (exact)"), (true, TABLE2, 1, "table 2 (within 1)")]
    {
        let table = depth_table(p, &[50, 72], &standard_horizons(), halve)?;
        let mut row = CheckRow::new(name);
        for (r, want) in table.rows.iter().zip(expected) {
            for (i, (&got, &want)) in r.depths.iter().zip(&want).enumerate() {
                row.record(got.abs_diff(want) <= slack, || {
                    format!("{}, {} qubits: got {got}, expected {want}", r.label, table.qubits[i])
                });
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Valid deformations `(n, k)` with `n` a perfect square up to `max_n`.
pub fn deformed_cases(max_n: usize) -> Vec<(usize, usize)> {
    (2..)
        .map(|s: usize| s * s)
        .take_while(|&n| n <= max_n)
        .flat_map(|n| {
            let s = exact_sqrt(n).expect("square");
            (0..s).filter(move |&k| deformed_dims(n, k).is_ok()).map(move |k| (n, k))
        })
        .collect()
}

fn consistency_check() -> Result<CheckRow, CliError> {
    let mut row = CheckRow::new("prop. 1 vs closed form");
    for (n, k) in deformed_cases(CONSISTENCY_MAX_N) {
        let g = build_deformed_grid(n, k)?;
        let f = exact_sqrt(n).expect("square") - k;
        let general = prop1_exact(n, g.edge_count(), f)?;
        let closed = deformed_exact(n, k)?;
        let edges = deformed_edge_formula(n, k)?;
        let ok = general == closed && edges == BigRational::from_integer(g.edge_count().into());
        row.record(ok, || format!("n = {n}, k = {k}: edges {} vs formula {edges}", g.edge_count()));
    }
    Ok(row)
}

fn series_rows() -> Result<CheckRow, CliError> {
    let mut row = CheckRow::new("series convergence");
    for (n, k) in deformed_cases(SERIES_MAX_N) {
        let c = series_check(n, k, SERIES_MAX_ORDER)?;
        row.record(c.passed(), || format!("n = {n}, k = {k}: {c:?}"));
    }
    Ok(row)
}

/// Every `rows x cols` orientation with `4 <= rows * cols <= max`.
pub fn suite_grids(max: usize) -> Vec<(usize, usize)> {
    (4..=max).flat_map(|n| (1..=n).filter(move |r| n % r == 0).map(move |r| (r, n / r))).collect()
}

fn grid_row(rows: usize, cols: usize, cfg: &Config) -> Result<GridRow, CliError> {
    let g = build_grid(rows, cols)?;
    let cuts = suite_cuts(&g, cfg.random_cuts, CUT_SEED)?;
    let seeds: Vec<u64> = (0..cfg.seeds).collect();
    let options = VerifyOptions { max_qubits: cfg.sim_limit, local_probe: true };
    let summary = verify_caps(&g, cfg.depth, &seeds, &cuts, &options)?;
    let checks = CheckKind::ALL
        .iter()
        .map(|&k| {
            let t = summary.tallies.get(&k).copied().unwrap_or_default();
            (k.name().to_string(), t.evaluated, t.failed)
        })
        .collect();
    Ok(GridRow {
        rows,
        cols,
        cuts: cuts.len(),
        checks,
        first_counterexample: summary.first_violation(None).map(|v| v.to_string()),
    })
}

pub fn verify_all(cfg: &Config, json: bool, out: &mut dyn Write) -> Result<bool, CliError> {
    let mut checks = tables_check(&RuntimeParams::PAPER)?;
    checks.push(consistency_check()?);
    checks.push(series_rows()?);
    let grids = suite_grids(cfg.max_grid)
        .into_iter()
        .map(|(r, c)| grid_row(r, c, cfg))
        .collect::<Result<Vec<_>, _>>()?;

    let pass = checks.iter().all(CheckRow::passed) && grids.iter().all(GridRow::passed);
    let first = checks
        .iter()
        .find_map(|c| c.first_counterexample.clone().map(|x| format!("{}: {x}", c.name)))
        .or_else(|| {
            grids.iter().find_map(|g| {
                g.first_counterexample.clone().map(|x| format!("{}x{} grid: {x}", g.rows, g.cols))
            })
        });

    if json {
        crate::emit(
            out,
            &json!({
                "seeds": cfg.seeds,
                "depth": cfg.depth,
                "random_cuts": cfg.random_cuts,
                "checks": checks,
                "grids": grids,
                "pass": pass,
                "first_counterexample": first,
            }),
        )?;
        return Ok(pass);
    }

    let verdict = |failed: u64, cases: u64| {
        if failed == 0 {
            "pass".to_string()
        } else {
            format!("FAIL {failed}/{cases}")
        }
    };
    writeln!(out, "{:<26} {:>6}  result", "check", "cases")?;
    for c in &checks {
        writeln!(out, "{:<26} {:>6}  {}", c.name, c.cases, verdict(c.failed, c.cases))?;
    }
    if !grids.is_empty() {
        writeln!(out)?;
        writeln!(out, "simulator: {} seeds, depth {}, min cuts + {} random", cfg.seeds, cfg.depth, cfg.random_cuts)?;
        write!(out, "{:<6} {:>4}", "grid", "cuts")?;
        for k in CheckKind::ALL {
            write!(out, "  {:>16}", k.name())?;
        }
        writeln!(out)?;
        for g in &grids {
            write!(out, "{:<6} {:>4}", format!("{}x{}", g.rows, g.cols), g.cuts)?;
            for (_, evaluated, failed) in &g.checks {
                write!(out, "  {:>16}", verdict(*failed, *evaluated))?;
            }
            writeln!(out)?;
        }
    }
    writeln!(out)?;
    match &first {
        None => writeln!(out, "all checks pass")?,
        Some(x) => writeln!(out, "first counterexample: {x}")?,
    }
    Ok(pass)
}
