//! Run configuration files.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monitors::{MonitorSet, MonitorSpec};
use crate::solver::{InitialData, SolverConfig};
use crate::spectral::{Grid, VelocityState};

/// A scalar applied to every axis or one value per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PerAxis<T> {
    All(T),
    Each([T; 3]),
}

impl<T: Copy> PerAxis<T> {
    pub fn expand(self) -> [T; 3] {
        match self {
            PerAxis::All(v) => [v; 3],
            PerAxis::Each(v) => v,
        }
    }
}

fn two_pi() -> PerAxis<f64> {
    PerAxis::All(std::f64::consts::TAU)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub n: PerAxis<usize>,
    /// Box side lengths; `2 pi` when omitted.
    #[serde(default = "two_pi")]
    pub length: PerAxis<f64>,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
    /// Write the velocity snapshots; the monitors are evaluated on them either way.
    #[serde(default = "yes")]
    pub snapshots: bool,
}

/// Everything `simulate` needs. Snapshot cadence is `solver.snapshot_every`;
/// monitors are sampled at the snapshot times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub grid: GridConfig,
    pub initial: InitialData,
    pub solver: SolverConfig,
    #[serde(default)]
    pub monitors: Vec<MonitorSpec>,
    pub output: OutputConfig,
}

/// A configuration that passed every check, with its derived objects.
#[derive(Debug)]
pub struct PreparedRun {
    pub config: RunConfig,
    pub grid: Grid,
    pub initial: VelocityState,
    pub monitors: MonitorSet,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Replaces the seed of seeded initial data; returns false when the data has none.
    pub fn override_seed(&mut self, seed: u64) -> bool {
        match &mut self.initial {
            InitialData::Random { seed: s, .. } | InitialData::PerturbedTaylorGreen { seed: s, .. } => {
                *s = seed;
                true
            }
            _ => false,
        }
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.grid.n.expand(), self.grid.length.expand()).map_err(|e| Error::Config(e.to_string()))
    }

    /// Runs every check and builds the initial state; nothing touches the disk.
    pub fn prepare(self) -> Result<PreparedRun> {
        let as_config = |e: Error| match e {
            Error::Config(_) => e,
            other => Error::Config(other.to_string()),
        };
        let grid = self.grid()?;
        self.solver.validate().map_err(as_config)?;
        let monitors = MonitorSet::new(self.monitors.clone(), self.solver.nu).map_err(as_config)?;
        let initial = self.initial.build(grid).map_err(as_config)?;
        if self.output.dir.as_os_str().is_empty() {
            return Err(Error::Config("output.dir must not be empty".into()));
        }
        Ok(PreparedRun {
            config: self,
            grid,
            initial,
            monitors,
        })
    }
}
