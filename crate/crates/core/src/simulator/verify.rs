use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gate::GateKind;
use super::schmidt::{entropy_ebits, max_deviation, schmidt_rank, schmidt_spectrum, RANK_TOLERANCE};
use super::state::{check_limit, max_qubits_from_env, run_with, StateVector};
use super::{build_random_circuit, SimError};
use crate::bounds::ebit_cap;
use crate::lattice::{all_min_balanced_cuts, random_balanced_cut, Cut, LatticeGraph};

/// Slack on every entropy inequality.
pub const ENTROPY_SLACK: f64 = 1e-9;
/// Allowed deviation of `sum sigma^2` from one.
pub const WEIGHT_SLACK: f64 = 1e-10;
/// Allowed spectrum change under a local gate.
pub const INVARIANCE_TOLERANCE: f64 = 1e-9;

pub const RECORD_HEADER: [&str; 7] = ["seed", "layer", "cut_id", "entropy_ebits", "rank", "crossing_cz", "cap"];

/// Per-layer measurement of one cut.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EbitRecord {
    pub seed: u64,
    pub layer: usize,
    pub cut_id: usize,
    pub entropy_ebits: f64,
    pub rank: usize,
    /// CZ gates across the cut applied so far.
    pub crossing_cz: usize,
    pub cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// entropy <= min(ceil(n/2), entangling layers so far)
    EbitCap,
    /// rank <= 2^min(crossing CZ so far, smaller side)
    CrossingRank,
    /// entropy gain in a layer <= CZ gates crossing in that layer
    LayerGain,
    /// entropy <= log2(rank)
    EntropyRank,
    Normalization,
    LocalInvariance,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::EbitCap,
        CheckKind::CrossingRank,
        CheckKind::LayerGain,
        CheckKind::EntropyRank,
        CheckKind::Normalization,
        CheckKind::LocalInvariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::EbitCap => "ebit_cap",
            CheckKind::CrossingRank => "crossing_rank",
            CheckKind::LayerGain => "layer_gain",
            CheckKind::EntropyRank => "entropy_rank",
            CheckKind::Normalization => "normalization",
            CheckKind::LocalInvariance => "local_invariance",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A counterexample: `observed` exceeded `bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub seed: u64,
    pub layer: usize,
    pub cut_id: usize,
    pub check: CheckKind,
    pub observed: f64,
    pub bound: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} violated: seed {} layer {} cut {}: observed {} > bound {}",
            self.check, self.seed, self.layer, self.cut_id, self.observed, self.bound
        )
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub evaluated: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max_qubits: usize,
    /// Apply one local gate per (seed, layer) to a copy of the state and
    /// compare spectra across cut 0.
    pub local_probe: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_qubits: max_qubits_from_env(), local_probe: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapSummary {
    pub n: usize,
    pub depth: usize,
    pub seeds: Vec<u64>,
    pub cut_count: usize,
    /// Seed-major, then layer, then cut.
    pub records: Vec<EbitRecord>,
    /// `max_entropy[layer][cut_id]` over all seeds.
    pub max_entropy: Vec<Vec<f64>>,
    pub violations: Vec<Violation>,
    pub tallies: BTreeMap<CheckKind, CheckTally>,
}

impl CapSummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check_passed(&self, check: CheckKind) -> bool {
        self.tallies.get(&check).map_or(true, |t| t.failed == 0)
    }

    pub fn first_violation(&self, check: Option<CheckKind>) -> Option<&Violation> {
        self.violations.iter().find(|v| check.map_or(true, |c| v.check == c))
    }

    /// Worst excess `observed - bound` for a check, if it ever failed.
    pub fn worst_excess(&self, check: CheckKind) -> Option<f64> {
        self.violations
            .iter()
            .filter(|v| v.check == check)
            .map(|v| v.observed - v.bound)
            .reduce(f64::max)
    }

    /// JSON form: a verdict block, the per-(layer, cut) maxima and at most
    /// `max_violations` counterexamples.
    pub fn to_json(&self, max_violations: usize) -> serde_json::Value {
        let checks: serde_json::Map<String, serde_json::Value> = self
            .tallies
            .iter()
            .map(|(k, t)| (k.name().to_string(), serde_json::json!({"evaluated": t.evaluated, "failed": t.failed})))
            .collect();
        serde_json::json!({
            "verdict": {
                "pass": self.passed(),
                "checks": checks,
                "violations_total": self.violations.len(),
                "first_violation": self.violations.first(),
            },
            "n": self.n,
            "depth": self.depth,
            "seeds": self.seeds.len(),
            "cuts": self.cut_count,
            "max_entropy": self.max_entropy,
            "violations": self.violations.iter().take(max_violations).collect::<Vec<_>>(),
        })
    }
}

/// Every exact balanced min cut followed by `random` uniformly drawn balanced
/// cuts (seeded, so the list is reproducible).
pub fn suite_cuts(graph: &LatticeGraph, random: usize, seed: u64) -> Result<Vec<Cut>, SimError> {
    let mut cuts = all_min_balanced_cuts(graph)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    cuts.extend((0..random).map(|_| random_balanced_cut(graph, &mut rng)));
    Ok(cuts)
}

struct SeedOutcome {
    records: Vec<EbitRecord>,
    violations: Vec<Violation>,
    tallies: BTreeMap<CheckKind, CheckTally>,
}

fn tally(
    out: &mut SeedOutcome,
    check: CheckKind,
    (seed, layer, cut_id): (u64, usize, usize),
    observed: f64,
    bound: f64,
) {
    let t = out.tallies.entry(check).or_default();
    t.evaluated += 1;
    if observed > bound {
        t.failed += 1;
        out.violations.push(Violation { seed, layer, cut_id, check, observed, bound });
    }
}

fn probe_gate(seed: u64, layer: usize, n: usize) -> (GateKind, usize) {
    let mix = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(layer as u64);
    let kind = GateKind::LOCAL[(mix % GateKind::LOCAL.len() as u64) as usize];
    (kind, ((mix >> 8) % n as u64) as usize)
}

fn verify_seed(
    graph: &LatticeGraph,
    depth: usize,
    seed: u64,
    cuts: &[Cut],
    options: &VerifyOptions,
) -> Result<SeedOutcome, SimError> {
    let n = graph.n();
    let circuit = build_random_circuit(graph, depth, seed)?;
    let mut out = SeedOutcome { records: Vec::new(), violations: Vec::new(), tallies: BTreeMap::new() };
    let mut cumulative = vec![0usize; cuts.len()];
    let mut previous = vec![0.0f64; cuts.len()];
    let mut entangling = 0usize;

    run_with(&circuit, options.max_qubits, |layer_idx, layer, state: &StateVector| {
        if layer.is_entangling() {
            entangling += 1;
        }
        let cap = ebit_cap(n, entangling);
        for (cut_id, cut) in cuts.iter().enumerate() {
            let at = (seed, layer_idx, cut_id);
            let crossing_now = layer.cz_edges().filter(|&(a, b)| cut.separates(a, b)).count();
            cumulative[cut_id] += crossing_now;

            let spectrum = schmidt_spectrum(state, cut)?;
            let entropy = entropy_ebits(&spectrum);
            let rank = schmidt_rank(&spectrum, RANK_TOLERANCE);
            let exponent = cumulative[cut_id].min(cut.min_side()).min(63);

            tally(&mut out, CheckKind::EbitCap, at, entropy, cap as f64 + ENTROPY_SLACK);
            tally(&mut out, CheckKind::CrossingRank, at, rank as f64, (1u64 << exponent) as f64);
            tally(
                &mut out,
                CheckKind::LayerGain,
                at,
                entropy - previous[cut_id],
                crossing_now as f64 + ENTROPY_SLACK,
            );
            tally(&mut out, CheckKind::EntropyRank, at, entropy, (rank.max(1) as f64).log2() + ENTROPY_SLACK);
            tally(&mut out, CheckKind::Normalization, at, (spectrum.weight() - 1.0).abs(), WEIGHT_SLACK);

            if options.local_probe && cut_id == 0 {
                let (kind, qubit) = probe_gate(seed, layer_idx, n);
                let mut moved = state.clone();
                moved.apply_local(kind, qubit);
                let after = schmidt_spectrum(&moved, cut)?;
                let dev = max_deviation(&spectrum.values, &after.values);
                tally(&mut out, CheckKind::LocalInvariance, at, dev, INVARIANCE_TOLERANCE);
            }

            previous[cut_id] = entropy;
            out.records.push(EbitRecord {
                seed,
                layer: layer_idx,
                cut_id,
                entropy_ebits: entropy,
                rank,
                crossing_cz: cumulative[cut_id],
                cap,
            });
        }
        Ok(())
    })?;
    Ok(out)
}

/// Simulates one random circuit per seed and checks every layer against every
/// cut. Seeds run in parallel; results are merged in seed order.
pub fn verify_caps(
    graph: &LatticeGraph,
    depth: usize,
    seeds: &[u64],
    cuts: &[Cut],
    options: &VerifyOptions,
) -> Result<CapSummary, SimError> {
    let n = graph.n();
    check_limit(n, options.max_qubits)?;
    if let Some(bad) = cuts.iter().find(|c| c.n() != n) {
        return Err(SimError::CutMismatch { cut: bad.n(), state: n });
    }
    let outcomes: Vec<SeedOutcome> = seeds
        .par_iter()
        .map(|&seed| verify_seed(graph, depth, seed, cuts, options))
        .collect::<Result<_, _>>()?;

    let mut summary = CapSummary {
        n,
        depth,
        seeds: seeds.to_vec(),
        cut_count: cuts.len(),
        records: Vec::new(),
        max_entropy: vec![vec![0.0; cuts.len()]; depth + 1],
        violations: Vec::new(),
        tallies: BTreeMap::new(),
    };
    for o in outcomes {
        for r in &o.records {
            let slot = &mut summary.max_entropy[r.layer][r.cut_id];
            *slot = slot.max(r.entropy_ebits);
        }
        summary.records.extend(o.records);
        summary.violations.extend(o.violations);
        for (k, t) in o.tallies {
            let acc = summary.tallies.entry(k).or_default();
            acc.evaluated += t.evaluated;
            acc.failed += t.failed;
        }
    }
    Ok(summary)
}

pub fn write_records_csv<W: std::io::Write>(records: &[EbitRecord], sink: W) -> Result<(), SimError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(sink);
    let io = |e: csv::Error| SimError::Io(e.to_string());
    w.write_record(RECORD_HEADER).map_err(io)?;
    for r in records {
        w.serialize(r).map_err(io)?;
    }
    w.flush().map_err(|e| SimError::Io(e.to_string()))
}

pub fn write_records_file(records: &[EbitRecord], path: impl AsRef<Path>) -> Result<(), SimError> {
    let path = path.as_ref();
    let file = std::fs::File::create(path).map_err(|e| SimError::Io(format!("{}: {e}", path.display())))?;
    write_records_csv(records, std::io::BufWriter::new(file))
}

pub fn read_records_csv(path: impl AsRef<Path>) -> Result<Vec<EbitRecord>, SimError> {
    let path = path.as_ref();
    let mut r = csv::Reader::from_path(path).map_err(|e| SimError::Io(format!("{}: {e}", path.display())))?;
    let header = r.headers().map_err(|e| SimError::Report { line: 1, msg: e.to_string() })?;
    if header.iter().collect::<Vec<_>>() != RECORD_HEADER {
        return Err(SimError::Report { line: 1, msg: format!("expected header `{}`", RECORD_HEADER.join(",")) });
    }
    r.deserialize()
        .map(|rec| {
            rec.map_err(|e| SimError::Report { line: e.position().map_or(0, |p| p.line()), msg: e.to_string() })
        })
        .collect()
}
