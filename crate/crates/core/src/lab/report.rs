//! Ratio reports for empirical inequality checks.

use serde::Serialize;

/// Stated at the top of every report.
pub const SEMANTICS: &str = "Numerical evidence only: each case reports LHS/RHS over a seeded corpus. \
A bounded case passes when every ratio is finite and the corpus supremum moves by less than the stated \
margin when the same band-limited fields are re-evaluated on a grid twice as fine. A hard case passes \
when LHS <= RHS sample by sample on both grids; its constant is pinned at 1, so refinement drift is \
reported but does not gate.";

/// How a case enters the pass/fail decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gate {
    /// `LHS <= RHS` on every sample (constant 1).
    Hard,
    /// Finite, refinement-stable constant.
    Bounded,
    /// Reported but never gating; used on hypothesis boundaries.
    Informational,
}

/// Absolute tolerance slack for hard inequalities: `lhs <= rhs (1 + HARD_SLACK)`.
pub const HARD_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct Refinement {
    pub coarse_n: usize,
    pub fine_n: usize,
    pub samples: usize,
    pub coarse_max_ratio: f64,
    pub fine_max_ratio: f64,
    pub relative_change: f64,
    pub margin: f64,
    pub stable: bool,
    /// Fine-grid samples breaking a hard inequality.
    pub fine_hard_violations: Vec<usize>,
}

impl Refinement {
    pub fn new(coarse_n: usize, fine_n: usize, samples: usize, coarse: f64, fine: f64, margin: f64) -> Self {
        let relative_change = if coarse == fine {
            0.0
        } else {
            (fine - coarse).abs() / coarse.abs().max(fine.abs())
        };
        Self {
            coarse_n,
            fine_n,
            samples,
            coarse_max_ratio: coarse,
            fine_max_ratio: fine,
            relative_change,
            margin,
            stable: relative_change.is_finite() && relative_change <= margin,
            fine_hard_violations: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub name: String,
    pub params: String,
    pub gate: Gate,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    pub ratios: Vec<f64>,
    /// Empirical constant: supremum of the ratios.
    pub max_ratio: f64,
    pub hard_violations: Vec<usize>,
    pub refinement: Option<Refinement>,
}

/// `lhs / rhs` with `0 / 0 = 0`; a positive numerator over zero is infinite.
pub fn ratio(lhs: f64, rhs: f64) -> f64 {
    if lhs == 0.0 && rhs == 0.0 {
        0.0
    } else if rhs == 0.0 {
        f64::INFINITY
    } else {
        lhs / rhs
    }
}

/// Indices with `lhs > rhs (1 + HARD_SLACK)`, NaN included.
pub fn hard_violations(pairs: &[(f64, f64)]) -> Vec<usize> {
    pairs
        .iter()
        .enumerate()
        .filter(|(_, &(l, r))| !(l <= r * (1.0 + HARD_SLACK)))
        .map(|(i, _)| i)
        .collect()
}

pub fn max_ratio(ratios: &[f64]) -> f64 {
    ratios.iter().copied().fold(0.0, |m, r| if r.is_nan() { f64::NAN } else { m.max(r) })
}

impl CaseReport {
    pub fn new(name: String, params: String, gate: Gate, pairs: &[(f64, f64)]) -> Self {
        let lhs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let rhs: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        let ratios: Vec<f64> = pairs.iter().map(|&(l, r)| ratio(l, r)).collect();
        let hard_violations = if gate == Gate::Hard { hard_violations(pairs) } else { Vec::new() };
        Self {
            name,
            params,
            gate,
            lhs,
            rhs,
            max_ratio: max_ratio(&ratios),
            ratios,
            hard_violations,
            refinement: None,
        }
    }

    pub fn non_finite(&self) -> Vec<usize> {
        self.ratios
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_finite())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn passed(&self) -> bool {
        match self.gate {
            Gate::Informational => true,
            Gate::Hard => {
                self.non_finite().is_empty()
                    && self.hard_violations.is_empty()
                    && self.refinement.as_ref().is_none_or(|r| r.fine_hard_violations.is_empty())
            }
            Gate::Bounded => {
                self.non_finite().is_empty() && self.refinement.as_ref().is_none_or(|r| r.stable)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub lemma_id: String,
    pub semantics: &'static str,
    pub seed: u64,
    pub grid_n: usize,
    pub count: usize,
    pub cases: Vec<CaseReport>,
    /// `case[sample]` for every non-finite ratio; empty iff all ratios are finite.
    pub violations: Vec<String>,
    pub hard_violations: usize,
    pub passed: bool,
}

impl InequalityReport {
    pub fn new(lemma_id: &str, seed: u64, grid_n: usize, count: usize, cases: Vec<CaseReport>) -> Self {
        let violations = cases
            .iter()
            .flat_map(|c| c.non_finite().into_iter().map(move |i| format!("{}[{i}]", c.name)))
            .collect();
        let hard_violations = cases
            .iter()
            .map(|c| c.hard_violations.len() + c.refinement.as_ref().map_or(0, |r| r.fine_hard_violations.len()))
            .sum();
        let passed = cases.iter().all(CaseReport::passed);
        Self {
            lemma_id: lemma_id.to_string(),
            semantics: SEMANTICS,
            seed,
            grid_n,
            count,
            cases,
            violations,
            hard_violations,
            passed,
        }
    }

    pub fn case(&self, name: &str) -> Option<&CaseReport> {
        self.cases.iter().find(|c| c.name == name)
    }
}
