//! Files written by `simulate` and `monitor`.
//!
//! A run directory holds `manifest.json`, `snap-NNNNNN.cnf` snapshots and
//! one `<monitor>.csv` per monitor with the columns
//! `time,value,running_integral`. The manifest is written with status
//! `incomplete` before the first step and rewritten at the end.

use std::path::Path;
use std::sync::mpsc;
use std::thread;

use serde::Serialize;

use super::config::{PreparedRun, RunConfig};
use super::write_json;
use crate::error::{Error, Result};
use crate::monitors::{GronwallReport, MonitorOutput, MonitorSet, MonitorSummary};
use crate::solver::{run, RunStatus};
use crate::spectral::{Snapshot, VelocityState};

/// Snapshots in flight between the solver and the monitor worker.
const QUEUE_DEPTH: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RunState {
    Incomplete,
    Complete,
    BlowUpSuspected { time: f64 },
}

impl RunState {
    pub fn label(&self) -> String {
        match self {
            RunState::Incomplete => "incomplete".into(),
            RunState::Complete => "complete".into(),
            RunState::BlowUpSuspected { time } => format!("blow-up suspected at t = {time}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MonitorFile {
    pub file: String,
    #[serde(flatten)]
    pub summary: MonitorSummary,
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub format: &'static str,
    pub version: &'static str,
    #[serde(flatten)]
    pub state: RunState,
    pub output_dir: String,
    pub config: RunConfig,
    pub steps: usize,
    pub final_time: f64,
    pub max_cfl: f64,
    pub cfl_warnings: usize,
    pub snapshots: Vec<String>,
    pub monitors: Vec<MonitorFile>,
    pub gronwall: Vec<GronwallReport>,
}

impl Manifest {
    fn new(cfg: &RunConfig) -> Self {
        Self {
            format: "critnorm-run",
            version: env!("CARGO_PKG_VERSION"),
            state: RunState::Incomplete,
            output_dir: cfg.output.dir.display().to_string(),
            config: cfg.clone(),
            steps: 0,
            final_time: 0.0,
            max_cfl: 0.0,
            cfl_warnings: 0,
            snapshots: Vec::new(),
            monitors: Vec::new(),
            gronwall: Vec::new(),
        }
    }
}

/// CSV names: the monitor name, suffixed with its position when a kind repeats.
fn csv_names(out: &MonitorOutput) -> Vec<String> {
    let names: Vec<&str> = out.series.iter().map(|s| s.spec.kind.name()).collect();
    names
        .iter()
        .enumerate()
        .map(|(i, n)| {
            if names.iter().filter(|m| *m == n).count() > 1 {
                format!("{n}-{i}.csv")
            } else {
                format!("{n}.csv")
            }
        })
        .collect()
}

/// Writes one CSV per monitor plus `monitors.json` with the summaries.
pub fn write_monitor_outputs(dir: &Path, out: &MonitorOutput) -> Result<Vec<MonitorFile>> {
    std::fs::create_dir_all(dir)?;
    let files = write_csvs(dir, out)?;
    #[derive(Serialize)]
    struct Summary<'a> {
        monitors: &'a [MonitorFile],
        gronwall: &'a [GronwallReport],
    }
    write_json(
        &dir.join("monitors.json"),
        &Summary {
            monitors: &files,
            gronwall: &out.gronwall,
        },
    )?;
    Ok(files)
}

fn write_csvs(dir: &Path, out: &MonitorOutput) -> Result<Vec<MonitorFile>> {
    let names = csv_names(out);
    let mut files = Vec::with_capacity(names.len());
    for ((series, summary), name) in out.series.iter().zip(&out.summaries).zip(names) {
        std::fs::write(dir.join(&name), series.to_csv()?)?;
        files.push(MonitorFile {
            file: name,
            summary: summary.clone(),
        });
    }
    Ok(files)
}

/// What the monitor worker hands back.
struct Collected {
    monitors: MonitorSet,
    snapshots: Vec<String>,
}

/// Evaluates monitors and writes snapshots as states arrive.
fn worker(
    rx: mpsc::Receiver<VelocityState>,
    mut monitors: MonitorSet,
    dir: &Path,
    write_snapshots: bool,
) -> Result<Collected> {
    let mut snapshots = Vec::new();
    for (i, v) in rx.into_iter().enumerate() {
        if write_snapshots {
            let name = format!("snap-{i:06}.cnf");
            Snapshot::from_velocity(&v).write(&dir.join(&name))?;
            snapshots.push(name);
        }
        monitors.observe(&v)?;
    }
    Ok(Collected { monitors, snapshots })
}

/// Integrates a prepared run, streaming snapshots to a monitor worker thread,
/// and writes every output file.
pub fn simulate(run_cfg: PreparedRun) -> Result<Manifest> {
    let PreparedRun {
        config,
        initial,
        monitors,
        ..
    } = run_cfg;
    let dir = config.output.dir.clone();
    std::fs::create_dir_all(&dir)?;
    let mut manifest = Manifest::new(&config);
    let manifest_path = dir.join("manifest.json");
    write_json(&manifest_path, &manifest)?;

    let (tx, rx) = mpsc::sync_channel::<VelocityState>(QUEUE_DEPTH);
    let (summary, collected) = thread::scope(|scope| {
        let handle = scope.spawn(|| worker(rx, monitors, &dir, config.output.snapshots));
        let summary = run(&initial, &config.solver, |_| Ok(()), |v| {
            tx.send(v.clone())
                .map_err(|_| Error::Invariant("monitor worker stopped early".into()))
        });
        drop(tx);
        let collected = handle
            .join()
            .unwrap_or_else(|_| Err(Error::Invariant("monitor worker panicked".into())));
        (summary, collected)
    });
    // a worker failure explains a failed send, so it is reported first
    let collected = collected?;
    let summary = summary?;

    let out = collected.monitors.finish();
    manifest.monitors = write_csvs(&dir, &out)?;
    manifest.gronwall = out.gronwall;
    manifest.snapshots = collected.snapshots;
    manifest.steps = summary.steps;
    manifest.final_time = summary.final_time;
    manifest.max_cfl = summary.max_cfl;
    manifest.cfl_warnings = summary.cfl_warnings;
    manifest.state = match summary.status {
        RunStatus::Complete => RunState::Complete,
        RunStatus::BlowUpSuspected { time } => RunState::BlowUpSuspected { time },
    };
    write_json(&manifest_path, &manifest)?;
    Ok(manifest)
}
