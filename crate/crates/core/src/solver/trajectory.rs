use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::VelocityState;

use super::config::SolverConfig;
use super::dynamics::Integrator;

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RunStatus {
    Complete,
    /// Non-finite values appeared; this is a numerical signal, not a proof
    /// of a singularity.
    BlowUpSuspected { time: f64 },
}

/// Snapshots at the configured cadence, first and last state included.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub config: SolverConfig,
    pub snapshots: Vec<VelocityState>,
    pub status: RunStatus,
    /// Largest `dt max|v| / dx` seen.
    pub max_cfl: f64,
    /// Steps whose CFL number exceeded the advisory limit.
    pub cfl_warnings: usize,
}

impl Trajectory {
    pub fn last(&self) -> &VelocityState {
        self.snapshots.last().expect("trajectory holds the initial state")
    }

    pub fn times(&self) -> Vec<f64> {
        self.snapshots.iter().map(|s| s.time).collect()
    }
}

/// Outcome of a streamed run; the states went to the callbacks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunSummary {
    pub status: RunStatus,
    pub steps: usize,
    pub final_time: f64,
    pub max_cfl: f64,
    pub cfl_warnings: usize,
}

/// Integrates from `initial` to `cfg.t_end` without retaining states.
/// `observe` sees the initial state and every step; `snapshot` sees the
/// initial state, every `snapshot_every`-th step, the last step and, on
/// suspected blow-up, the last finite state.
pub fn run(
    initial: &VelocityState,
    cfg: &SolverConfig,
    mut observe: impl FnMut(&VelocityState) -> Result<()>,
    mut snapshot: impl FnMut(&VelocityState) -> Result<()>,
) -> Result<RunSummary> {
    let integrator = Integrator::new(*initial.grid(), cfg)?;
    let steps = cfg.steps();
    let t0 = initial.time;
    let mut summary = RunSummary {
        status: RunStatus::Complete,
        steps: 0,
        final_time: t0,
        max_cfl: 0.0,
        cfl_warnings: 0,
    };
    observe(initial)?;
    snapshot(initial)?;
    let mut current = initial.clone();
    let mut stored = true;
    for n in 1..=steps {
        match integrator.step(&current) {
            Ok(out) => {
                summary.max_cfl = summary.max_cfl.max(out.cfl);
                if out.cfl_exceeded(cfg.cfl_limit) {
                    summary.cfl_warnings += 1;
                }
                // times are recomputed from the step count to avoid drift
                current = out.state.with_time(t0 + n as f64 * cfg.dt);
                summary.steps = n;
                summary.final_time = current.time;
                observe(&current)?;
                stored = n % cfg.snapshot_every == 0 || n == steps;
                if stored {
                    snapshot(&current)?;
                }
            }
            Err(Error::BlowUpSuspected { time }) => {
                summary.status = RunStatus::BlowUpSuspected { time };
                if !stored {
                    snapshot(&current)?;
                }
                return Ok(summary);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(summary)
}

/// [`run`] with the snapshots kept in memory.
pub fn integrate(
    initial: &VelocityState,
    cfg: &SolverConfig,
    observe: impl FnMut(&VelocityState) -> Result<()>,
) -> Result<Trajectory> {
    let mut snapshots = Vec::new();
    let summary = run(initial, cfg, observe, |v| {
        snapshots.push(v.clone());
        Ok(())
    })?;
    Ok(Trajectory {
        config: cfg.clone(),
        snapshots,
        status: summary.status,
        max_cfl: summary.max_cfl,
        cfl_warnings: summary.cfl_warnings,
    })
}
