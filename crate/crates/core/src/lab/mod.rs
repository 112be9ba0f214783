//! Empirical checks of functional inequalities on seeded field corpora.

pub mod checks;
pub mod corpus;
pub mod mixed;
pub mod report;
pub mod suite;
pub mod suites;

pub use corpus::{Corpus, CorpusField, GeneratorKind};
pub use mixed::mixed_norm;
pub use report::{CaseReport, Gate, InequalityReport, Refinement};
pub use suite::{run_suite, LabConfig, Sample, Suite};
pub use suites::{suite, SUITE_IDS};

use crate::error::Result;

/// Runs the suite with the given id.
pub fn run(id: &str, cfg: &LabConfig) -> Result<InequalityReport> {
    run_suite(suite(id)?.as_ref(), cfg)
}

/// Runs every suite in registry order.
pub fn run_all(cfg: &LabConfig) -> Result<Vec<InequalityReport>> {
    SUITE_IDS.iter().map(|id| run(id, cfg)).collect()
}
