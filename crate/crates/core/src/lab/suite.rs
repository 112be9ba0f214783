//! Generic driver: draw a corpus, evaluate every case per sample, refine.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{hard_violations, max_ratio, ratio, CaseReport, Gate, InequalityReport, Refinement};
use crate::error::{Error, Result};
use crate::spectral::{Grid, SpectralField, VelocityState};

/// Fields of one corpus sample.
#[derive(Debug, Clone, Default)]
pub struct Sample {
    pub scalars: Vec<SpectralField>,
    pub vectors: Vec<VelocityState>,
}

impl Sample {
    pub fn zero_padded(&self, target: Grid) -> Result<Self> {
        Ok(Self {
            scalars: self.scalars.iter().map(|f| f.zero_padded(target)).collect::<Result<_>>()?,
            vectors: self.vectors.iter().map(|v| v.zero_padded(target)).collect::<Result<_>>()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseInfo {
    pub name: String,
    pub params: String,
    pub gate: Gate,
}

impl CaseInfo {
    pub fn new(name: impl Into<String>, params: impl Into<String>, gate: Gate) -> Self {
        Self {
            name: name.into(),
            params: params.into(),
            gate,
        }
    }
}

pub trait Suite: Sync {
    fn id(&self) -> &'static str;
    /// Allowed relative drift of each empirical constant under refinement.
    fn margin(&self) -> f64 {
        0.10
    }
    /// Case list; fails when a parameter violates the inequality's hypotheses.
    fn cases(&self) -> Result<Vec<CaseInfo>>;
    fn sample(&self, grid: Grid, seed: u64, index: usize) -> Result<Sample>;
    /// One `(lhs, rhs)` pair per case, in `cases()` order.
    fn evaluate(&self, sample: &Sample) -> Result<Vec<(f64, f64)>>;
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabConfig {
    pub seed: u64,
    pub count: usize,
    pub n: usize,
    /// Leading samples re-evaluated on the fine grid.
    pub refine_count: usize,
    pub refine_n: usize,
}

impl Default for LabConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            count: 200,
            n: 32,
            refine_count: 25,
            refine_n: 64,
        }
    }
}

impl LabConfig {
    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::Config("corpus count must be positive".into()));
        }
        if self.refine_count > 0 && self.refine_n <= self.n {
            return Err(Error::Config(format!(
                "refinement grid {} must be finer than {}",
                self.refine_n, self.n
            )));
        }
        Ok(())
    }
}

fn evaluate_all(suite: &dyn Suite, grid: Grid, fine: Option<Grid>, seed: u64, count: usize, ncases: usize) -> Result<Vec<Vec<(f64, f64)>>> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut s = suite.sample(grid, seed, i)?;
            if let Some(f) = fine {
                s = s.zero_padded(f)?;
            }
            let out = suite.evaluate(&s)?;
            if out.len() != ncases {
                return Err(Error::Invariant(format!(
                    "{} returned {} values for {} cases",
                    suite.id(),
                    out.len(),
                    ncases
                )));
            }
            Ok(out)
        })
        .collect()
}

/// Runs one suite. Sample order, not thread scheduling, fixes every reduction.
pub fn run_suite(suite: &dyn Suite, cfg: &LabConfig) -> Result<InequalityReport> {
    cfg.validate()?;
    let cases = suite.cases()?;
    let grid = Grid::cubic(cfg.n)?;
    let coarse = evaluate_all(suite, grid, None, cfg.seed, cfg.count, cases.len())?;
    let nref = cfg.refine_count.min(cfg.count);
    let fine = if nref > 0 {
        Some(evaluate_all(suite, grid, Some(Grid::cubic(cfg.refine_n)?), cfg.seed, nref, cases.len())?)
    } else {
        None
    };
    let reports = cases
        .iter()
        .enumerate()
        .map(|(c, info)| {
            let pairs: Vec<(f64, f64)> = coarse.iter().map(|row| row[c]).collect();
            let mut rep = CaseReport::new(info.name.clone(), info.params.clone(), info.gate, &pairs);
            if let Some(fine) = &fine {
                let fine_pairs: Vec<(f64, f64)> = fine.iter().map(|row| row[c]).collect();
                let fr: Vec<f64> = fine_pairs.iter().map(|&(l, r)| ratio(l, r)).collect();
                let mut refinement = Refinement::new(
                    cfg.n,
                    cfg.refine_n,
                    nref,
                    max_ratio(&rep.ratios[..nref]),
                    max_ratio(&fr),
                    suite.margin(),
                );
                if info.gate == Gate::Hard {
                    refinement.fine_hard_violations = hard_violations(&fine_pairs);
                }
                rep.refinement = Some(refinement);
            }
            rep
        })
        .collect();
    Ok(InequalityReport::new(suite.id(), cfg.seed, cfg.n, cfg.count, reports))
}
