//! Detuning sweeps, effective-Ising convergence and table output.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolve::{Evolver, ZeemanSchedule};
use crate::gates::{align_z_phases, basis_defects, g_gate, Revival, RevivalConfig};
use crate::linalg::{op_distance, ComplexMatrix};
use crate::model::{Coupling, ZeemanLevels};
use crate::schemes::{arch1, logical_columns};

pub const DEFAULT_DELTA_GRID: [f64; 7] = [5.0, 10.0, 20.0, 50.0, 100.0, 300.0, 1000.0];

/// Revival thresholds tried in turn; low detuning never reaches the first.
pub const REVIVAL_THRESHOLDS: [f64; 8] = [0.999, 0.99, 0.95, 0.9, 0.8, 0.7, 0.6, 0.5];

/// Entries of the ideal gate below this magnitude carry no phase information.
const PHASE_FLOOR: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    DefectWorst,
    PhaseNoise,
    Leakage,
    TraceDistance,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepScheme {
    /// Nine-spin `Ĝ` on the four-qubit (16-state) encoding.
    #[default]
    Arch1G,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub delta_values: Vec<f64>,
    #[serde(default)]
    pub scheme: SweepScheme,
    #[serde(default = "all_metrics")]
    pub metrics: Vec<Metric>,
    #[serde(default = "unit_j", rename = "J")]
    pub j: f64,
}

fn all_metrics() -> Vec<Metric> {
    vec![Metric::DefectWorst, Metric::PhaseNoise, Metric::Leakage]
}

fn unit_j() -> f64 {
    1.0
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self { delta_values: DEFAULT_DELTA_GRID.to_vec(), scheme: SweepScheme::Arch1G, metrics: all_metrics(), j: 1.0 }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.delta_values.len() < 2 {
            return Err(Error::Config("sweep needs at least two detuning values".into()));
        }
        if self.delta_values.iter().any(|d| !(*d > 0.0 && d.is_finite())) {
            return Err(Error::Config("detuning values must be positive".into()));
        }
        if self.delta_values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("detuning values must be strictly ascending".into()));
        }
        if !(self.j > 0.0 && self.j.is_finite()) {
            return Err(Error::Config(format!("J = {} must be positive", self.j)));
        }
        Ok(())
    }

    fn wants(&self, m: Metric) -> bool {
        self.metrics.contains(&m)
    }
}

/// One sweep point. Unrequested metrics are `NaN`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DefectRecord {
    pub delta: f64,
    pub t_r: f64,
    /// Max over the 16 basis inputs of `1 - |⟨ideal|actual⟩|²`.
    pub defect_worst: f64,
    pub phase_noise_rad: f64,
    pub leakage: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_distance: Option<f64>,
}

impl DefectRecord {
    /// Phase noise as a probability, `sin²(φ/2)`.
    pub fn phase_noise_probability(&self) -> f64 {
        (self.phase_noise_rad / 2.0).sin().powi(2)
    }
}

/// Records written by [`emit_table`].
pub trait TableRow {
    fn columns(&self) -> Vec<(&'static str, f64)>;
}

impl TableRow for DefectRecord {
    fn columns(&self) -> Vec<(&'static str, f64)> {
        let mut c = vec![
            ("delta", self.delta),
            ("t_r", self.t_r),
            ("defect_worst", self.defect_worst),
            ("phase_noise_rad", self.phase_noise_rad),
            ("leakage", self.leakage),
        ];
        if let Some(d) = self.trace_distance {
            c.push(("trace_distance", d));
        }
        c
    }
}

/// Revival search with decreasing thresholds.
fn gate_revival(levels: &ZeemanLevels, j: f64) -> Result<Revival> {
    let mut last = None;
    for threshold in REVIVAL_THRESHOLDS {
        match arch1::find_gate_revival(levels, j, &RevivalConfig { threshold, ..RevivalConfig::default() }) {
            Ok(r) => return Ok(r),
            Err(e @ Error::NoRevivalFound { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one threshold"))
}

/// `I ⊗ Ĝ ⊗ I` on (W, X, Y, Z).
pub fn ideal_four_qubit_g() -> ComplexMatrix {
    ComplexMatrix::identity(2).kron(&g_gate()).kron(&ComplexMatrix::identity(2))
}

/// Max `|arg(actual/ideal)|` over entries where the ideal is not small.
pub fn phase_noise(actual: &ComplexMatrix, ideal: &ComplexMatrix) -> f64 {
    actual
        .data()
        .iter()
        .zip(ideal.data())
        .filter(|(_, b)| b.norm() > PHASE_FLOOR)
        .map(|(a, b)| (a / b).arg().abs())
        .fold(0.0, f64::max)
}

fn defect_point(spec: &SweepSpec, delta: f64) -> Result<DefectRecord> {
    let j = spec.j;
    let levels = ZeemanLevels::from_delta(delta, j);
    let rev = gate_revival(&levels, j)?;
    let chain = arch1::chain(levels, j)?;
    let enc = arch1::encoding_four_qubit();
    let sched = ZeemanSchedule::single(rev.t_r, arch1::resonant_energies(&levels, j));
    let ev = Evolver::for_chain(&chain, Coupling::Heisenberg);
    let cols = logical_columns(&ev, &sched, &enc, &chain.passive_energies())?;
    // raw block: leakage shows up as missing column norm
    let basis = enc.basis_states();
    let block = ComplexMatrix::from_fn(basis.len(), |i, k| cols[k][basis[i]]);
    let leakage = (0..block.dim())
        .map(|k| 1.0 - block.column(k).iter().map(|z| z.norm_sqr()).sum::<f64>())
        .fold(0.0, f64::max)
        .max(0.0);
    let ideal = ideal_four_qubit_g();
    let fit = align_z_phases(&block, &ideal)?;
    let nan_unless = |m: Metric, v: f64| if spec.wants(m) { v } else { f64::NAN };
    Ok(DefectRecord {
        delta,
        t_r: rev.t_r,
        defect_worst: nan_unless(
            Metric::DefectWorst,
            basis_defects(&fit.aligned, &ideal).into_iter().fold(0.0, f64::max),
        ),
        phase_noise_rad: nan_unless(Metric::PhaseNoise, phase_noise(&fit.aligned, &ideal)),
        leakage: nan_unless(Metric::Leakage, leakage),
        trace_distance: spec.wants(Metric::TraceDistance).then_some(fit.distance),
    })
}

/// Sweep points in grid order. Points without a revival are dropped.
pub fn defect_sweep(spec: &SweepSpec) -> Result<Vec<DefectRecord>> {
    spec.validate()?;
    let points: Vec<Result<DefectRecord>> = spec.delta_values.par_iter().map(|&d| defect_point(spec, d)).collect();
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        match p {
            Ok(r) => out.push(r),
            Err(Error::NoRevivalFound { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsingRecord {
    pub delta: f64,
    /// Propagator distance at `t = 1/J`.
    pub op_distance: f64,
    /// Max over basis inputs and the time window of the population leaving
    /// the input state under full Heisenberg evolution.
    pub leakage: f64,
}

impl TableRow for IsingRecord {
    fn columns(&self) -> Vec<(&'static str, f64)> {
        vec![("delta", self.delta), ("op_distance", self.op_distance), ("leakage", self.leakage)]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsingConvergence {
    pub records: Vec<IsingRecord>,
    pub leakage_slope: f64,
    pub distance_slope: f64,
}

/// Least-squares slope of `log y` against `log x`, over points with both positive.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> =
        xs.iter().zip(ys).filter(|(x, y)| **x > 0.0 && **y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return f64::NAN;
    }
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    sxy / sxx
}

const ISING_SITES: usize = 4;

fn ising_point(delta: f64, j: f64) -> Result<IsingRecord> {
    // Δ = 0 is allowed here, so the levels bypass chain validation
    let levels = ZeemanLevels::from_delta(delta, j);
    let e: Vec<f64> = (0..ISING_SITES).map(|i| if i % 2 == 0 { levels.a } else { levels.b }).collect();
    let heis = Evolver::new(ISING_SITES, j, Coupling::Heisenberg);
    let ising = Evolver::new(ISING_SITES, j, Coupling::Ising);
    // both share the Zeeman frame, so stripping it leaves the distance unchanged
    let t = 1.0 / j;
    let sched = ZeemanSchedule::single(t, e.clone());
    let op = op_distance(&heis.propagator(&sched)?, &ising.propagator(&sched)?)?;
    // leakage oscillates at ~2ΔJ; sample it finely over [0, 1/J]
    let steps = 200 + (20.0 * delta).ceil() as usize;
    let dt = t / steps as f64;
    let leakage = (0..1usize << ISING_SITES)
        .into_par_iter()
        .map(|s| -> Result<f64> {
            let mut psi = vec![crate::linalg::ZERO; 1 << ISING_SITES];
            psi[s] = crate::linalg::ONE;
            let mut worst: f64 = 0.0;
            for _ in 0..steps {
                heis.evolve_constant(&e, dt, &mut psi)?;
                worst = worst.max(1.0 - psi[s].norm_sqr());
            }
            Ok(worst)
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(IsingRecord { delta, op_distance: op, leakage })
}

/// Heisenberg vs effective-Ising evolution on a four-spin `ABAB` chain.
/// Slopes are fitted over the positive grid points.
pub fn ising_convergence(delta_grid: &[f64], j: f64) -> Result<IsingConvergence> {
    let positive: Vec<f64> = delta_grid.iter().copied().filter(|d| *d > 0.0).collect();
    if positive.len() < 3 {
        return Err(Error::Config("Ising convergence needs at least three positive detunings".into()));
    }
    let (lo, hi) = positive.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &d| (l.min(d), h.max(d)));
    if hi < 10.0 * lo {
        return Err(Error::Config("Ising convergence grid must span a decade".into()));
    }
    let records: Vec<IsingRecord> =
        delta_grid.iter().map(|&d| ising_point(d, j)).collect::<Result<_>>()?;
    let fit: Vec<&IsingRecord> = records.iter().filter(|r| r.delta > 0.0).collect();
    let xs: Vec<f64> = fit.iter().map(|r| r.delta).collect();
    let leakage_slope = loglog_slope(&xs, &fit.iter().map(|r| r.leakage).collect::<Vec<_>>());
    let distance_slope = loglog_slope(&xs, &fit.iter().map(|r| r.op_distance).collect::<Vec<_>>());
    Ok(IsingConvergence { records, leakage_slope, distance_slope })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::Config(format!("unknown table format {other:?}"))),
        }
    }
}

/// `x` rounded to 12 significant digits.
pub fn round_sig12(x: f64) -> f64 {
    if x.is_finite() {
        format!("{x:.11e}").parse().expect("formatted float parses")
    } else {
        x
    }
}

/// Writes `records` with a header row (CSV) or as an array of objects keyed
/// by the same column names (JSON). Floats are rounded to 12 significant
/// digits; non-finite values become empty cells / `null`.
pub fn emit_table<R: TableRow>(records: &[R], path: &Path, format: TableFormat) -> Result<()> {
    let Some(first) = records.first() else {
        return Err(Error::Config("no records to write".into()));
    };
    let header: Vec<&str> = first.columns().iter().map(|c| c.0).collect();
    let rows: Vec<Vec<f64>> = records
        .iter()
        .map(|r| {
            let cols = r.columns();
            if cols.len() != header.len() || cols.iter().zip(&header).any(|(c, h)| c.0 != *h) {
                return Err(Error::Config("records do not share a column layout".into()));
            }
            Ok(cols.into_iter().map(|c| round_sig12(c.1)).collect())
        })
        .collect::<Result<_>>()?;
    match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_path(path)?;
            w.write_record(&header)?;
            for row in &rows {
                w.write_record(row.iter().map(|x| if x.is_finite() { x.to_string() } else { String::new() }))?;
            }
            w.flush().map_err(|e| Error::io(path, e))
        }
        TableFormat::Json => {
            let doc: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .iter()
                .map(|row| header.iter().zip(row).map(|(h, &x)| (h.to_string(), serde_json::json!(x))).collect())
                .collect();
            let mut text = serde_json::to_string_pretty(&doc)?;
            text.push('\n');
            fs::write(path, text).map_err(|e| Error::io(path, e))
        }
    }
}

/// Reads a table written by [`emit_table`]: header and rows (`NaN` for empty cells / `null`).
pub fn read_table(path: &Path, format: TableFormat) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    match format {
        TableFormat::Csv => {
            let mut r = csv::Reader::from_path(path)?;
            let header: Vec<String> = r.headers()?.iter().map(String::from).collect();
            let mut rows = Vec::new();
            for rec in r.records() {
                let rec = rec?;
                let row = rec
                    .iter()
                    .map(|c| if c.is_empty() { Ok(f64::NAN) } else { c.parse::<f64>() })
                    .collect::<std::result::Result<Vec<f64>, _>>()
                    .map_err(|e| Error::Config(format!("bad number in {}: {e}", path.display())))?;
                rows.push(row);
            }
            Ok((header, rows))
        }
        TableFormat::Json => {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            let doc: Vec<serde_json::Map<String, serde_json::Value>> = serde_json::from_str(&text)?;
            let header: Vec<String> = doc.first().map(|o| o.keys().cloned().collect()).unwrap_or_default();
            let rows = doc
                .iter()
                .map(|o| header.iter().map(|h| o.get(h).and_then(|v| v.as_f64()).unwrap_or(f64::NAN)).collect())
                .collect();
            Ok((header, rows))
        }
    }
}
