//! Command-line front end: `simulate`, `norms`, `monitor` and `verify`.
//!
//! Exit codes: 0 success, 2 user or configuration error, 3 suspected
//! blow-up, 4 internal invariant violation. Data outputs carry no
//! timestamps, so equal inputs give byte-identical files.

pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::lab::{self, LabConfig, SUITE_IDS};
use crate::lp::norms::FieldNorms;
use crate::lp::NormSpec;
use crate::monitors::{MonitorKind, MonitorSet, MonitorSpec};
use crate::spectral::Snapshot;

pub use config::{PreparedRun, RunConfig};
pub use output::{simulate, Manifest, RunState};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USER: i32 = 2;
pub const EXIT_BLOW_UP: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Exit code for an error that ended a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BlowUpSuspected { .. } => EXIT_BLOW_UP,
        Error::Invariant(_) => EXIT_INTERNAL,
        _ => EXIT_USER,
    }
}

#[derive(Debug, Parser)]
#[command(name = "critnorm", version, about = "Critical-norm monitors for periodic Navier-Stokes runs")]
pub struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "CRITNORM_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate a run configuration, writing snapshots, monitor CSVs and a manifest.
    Simulate(SimulateArgs),
    /// Print norms of a snapshot, one line per spec.
    Norms(NormsArgs),
    /// Recompute monitors from stored snapshots.
    Monitor(MonitorArgs),
    /// Run inequality suites and write one JSON report per suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Replaces the seed of random initial data.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Replaces `output.dir`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NormsArgs {
    pub snapshot: PathBuf,
    /// Norm spec such as `besov:s=0.5,p=2,q=2`; repeatable.
    #[arg(long = "spec", required = true)]
    pub specs: Vec<String>,
    /// Restrict a velocity snapshot to one component (0, 1 or 2).
    #[arg(long)]
    pub component: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MonitorArgs {
    /// Snapshot files or directories holding `.cnf` files.
    #[arg(required = true)]
    pub snapshots: Vec<PathBuf>,
    /// Run configuration supplying the monitor list and viscosity.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite id, or `all`.
    pub suite: String,
    #[arg(long, default_value_t = LabConfig::default().seed)]
    pub seed: u64,
    #[arg(long, default_value_t = LabConfig::default().count)]
    pub count: usize,
    #[arg(long, default_value_t = LabConfig::default().n)]
    pub n: usize,
    #[arg(long, default_value_t = LabConfig::default().refine_count)]
    pub refine_count: usize,
    #[arg(long, default_value_t = LabConfig::default().refine_n)]
    pub refine_n: usize,
    #[arg(long, default_value = "reports")]
    pub out: PathBuf,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USER } else { EXIT_OK };
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return EXIT_USER;
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let result = match cli.command {
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Norms(a) => cmd_norms(&a, &mut std::io::stdout()),
        Command::Monitor(a) => cmd_monitor(&a),
        Command::Verify(a) => cmd_verify(&a, &mut std::io::stdout()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn cmd_simulate(a: &SimulateArgs) -> Result<i32> {
    let mut cfg = RunConfig::load(&a.config)?;
    if let Some(seed) = a.seed {
        if !cfg.override_seed(seed) {
            eprintln!("note: initial data `{:?}` takes no seed; --seed ignored", cfg.initial);
        }
    }
    if let Some(out) = &a.out {
        cfg.output.dir = out.clone();
    }
    let prepared = cfg.prepare()?;
    let manifest = simulate(prepared)?;
    eprintln!("{}: {}", manifest.output_dir, manifest.state.label());
    Ok(match manifest.state {
        RunState::BlowUpSuspected { .. } => EXIT_BLOW_UP,
        _ => EXIT_OK,
    })
}

/// Twelve significant digits.
pub fn format_value(v: f64) -> String {
    format!("{v:.11e}")
}

/// Norm of a snapshot: the field itself for one component; for a velocity,
/// the pointwise Euclidean magnitude for Lebesgue norms and the `l^2`
/// combination of component norms otherwise.
pub fn snapshot_norm(snap: &Snapshot, spec: &NormSpec) -> Result<f64> {
    if let [f] = snap.components.as_slice() {
        return FieldNorms::new(f).norm(spec);
    }
    if let NormSpec::Lebesgue { p } = *spec {
        let real: Vec<_> = snap.components.iter().map(|c| c.to_real()).collect();
        return crate::lab::checks::vector_lp(&real, p);
    }
    let mut acc = 0.0;
    for c in &snap.components {
        acc += FieldNorms::new(c).norm(spec)?.powi(2);
    }
    Ok(acc.sqrt())
}

pub fn cmd_norms(a: &NormsArgs, out: &mut impl std::io::Write) -> Result<i32> {
    let specs = a
        .specs
        .iter()
        .map(|s| {
            let spec: NormSpec = s
                .parse()
                .map_err(|e: Error| Error::Config(format!("bad norm spec `{s}`: {e}")))?;
            spec.validate()
                .map_err(|e| Error::Config(format!("bad norm spec `{s}`: {e}")))?;
            Ok((s.trim(), spec))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut snap = Snapshot::read(&a.snapshot)?;
    if let Some(i) = a.component {
        if i >= snap.components.len() {
            return Err(Error::Config(format!(
                "component {i} requested from a snapshot with {} components",
                snap.components.len()
            )));
        }
        snap.components = vec![snap.components.swap_remove(i)];
    }
    for (text, spec) in specs {
        writeln!(out, "{text} {}", format_value(snapshot_norm(&snap, &spec)?))?;
    }
    Ok(EXIT_OK)
}

/// Snapshot files named on the command line, directories expanded to their
/// `.cnf` files in name order.
pub fn collect_snapshots(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut found: Vec<PathBuf> = std::fs::read_dir(p)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "cnf"))
                .collect();
            found.sort();
            out.extend(found);
        } else {
            out.push(p.clone());
        }
    }
    if out.is_empty() {
        return Err(Error::Config("no snapshot files found".into()));
    }
    Ok(out)
}

pub fn cmd_monitor(a: &MonitorArgs) -> Result<i32> {
    let (specs, nu) = match &a.config {
        Some(path) => {
            let cfg = RunConfig::load(path)?;
            (cfg.monitors, cfg.solver.nu)
        }
        None => (MonitorKind::ALL.iter().map(|&k| MonitorSpec::new(k)).collect(), 1.0),
    };
    let mut set = MonitorSet::new(specs, nu).map_err(|e| Error::Config(e.to_string()))?;
    let files = collect_snapshots(&a.snapshots)?;
    let mut states = Vec::with_capacity(files.len());
    for f in &files {
        states.push(Snapshot::read(f)?.to_velocity()?);
    }
    states.sort_by(|x, y| x.time.total_cmp(&y.time));
    for w in states.windows(2) {
        if w[0].time == w[1].time {
            return Err(Error::Config(format!("two snapshots share the time {}", w[0].time)));
        }
    }
    for v in &states {
        set.observe(v)?;
    }
    output::write_monitor_outputs(&a.out, &set.finish())?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut impl std::io::Write) -> Result<i32> {
    let ids: Vec<&str> = if a.suite == "all" {
        SUITE_IDS.to_vec()
    } else {
        let id = lab::suite(&a.suite)?.id();
        vec![id]
    };
    let cfg = LabConfig {
        seed: a.seed,
        count: a.count,
        n: a.n,
        refine_count: a.refine_count,
        refine_n: a.refine_n,
    };
    cfg.validate().map_err(|e| Error::Config(e.to_string()))?;
    std::fs::create_dir_all(&a.out)?;
    let mut all = true;
    for id in ids {
        let report = lab::run(id, &cfg)?;
        write_json(&a.out.join(format!("{id}.json")), &report)?;
        let worst = report
            .cases
            .iter()
            .filter(|c| c.gate != lab::Gate::Informational)
            .filter_map(|c| c.refinement.as_ref().map(|r| r.relative_change))
            .fold(0.0_f64, f64::max);
        writeln!(
            out,
            "{} {} cases={} hard_violations={} non_finite={} worst_refinement_drift={:.3}",
            id,
            if report.passed { "PASS" } else { "FAIL" },
            report.cases.len(),
            report.hard_violations,
            report.violations.len(),
            worst
        )?;
        all &= report.passed;
    }
    Ok(if all { EXIT_OK } else { 1 })
}

pub(crate) fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}
