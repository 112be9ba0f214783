//! Evaluation of a list of monitors along a run.

use rayon::prelude::*;
use serde::Serialize;

use super::gronwall::{gronwall_report, GronwallInputs, GronwallReport};
use super::quantities::{
    criterion_integrand, endpoint_integrand, grad_three_quarter_sq, htheta_monitors, klips_terms,
    three_quarter_sq, vector_l32, vorticity_sup,
};
use super::series::{simpson_running, trapezoid_running, MonitorSeries};
use super::spec::{MonitorKind, MonitorSpec};
use crate::error::{Error, Result};
use crate::spectral::VelocityState;
use crate::vorticity::{compute_vorticity, horizontal_vorticity};

/// Raw per-snapshot values of each monitor, reduced to series by [`MonitorSet::finish`].
#[derive(Debug, Clone)]
pub struct MonitorSet {
    specs: Vec<MonitorSpec>,
    nu: f64,
    times: Vec<f64>,
    raw: Vec<Vec<Vec<f64>>>,
}

/// Headline numbers of a finished monitor set.
#[derive(Debug, Clone, Serialize)]
pub struct MonitorSummary {
    pub name: String,
    pub final_value: f64,
    pub final_integral: f64,
    /// Largest value over the run; for the balance monitors this is the worst residual.
    pub max_value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonitorOutput {
    pub series: Vec<MonitorSeries>,
    pub summaries: Vec<MonitorSummary>,
    pub gronwall: Vec<GronwallReport>,
}

impl MonitorOutput {
    pub fn series_of(&self, kind: MonitorKind) -> Option<&MonitorSeries> {
        self.series.iter().find(|s| s.spec.kind == kind)
    }
}

fn raw_values(spec: &MonitorSpec, v: &VelocityState, nu: f64) -> Result<Vec<f64>> {
    Ok(match spec.kind {
        MonitorKind::CriterionIntegral => vec![criterion_integrand(v, spec.e, spec.p)],
        MonitorKind::VorticityL32 => {
            let w = compute_vorticity(v);
            vec![vector_l32(&w.omega.map(|c| c.to_real()))]
        }
        MonitorKind::Omega34Energy => vec![grad_three_quarter_sq(&horizontal_vorticity(v))?],
        MonitorKind::HThetaEnergy => vec![htheta_monitors(v, spec.theta).d3v3],
        MonitorKind::D3sqHTheta => vec![htheta_monitors(v, spec.theta).d3sq_v3.powi(2)],
        MonitorKind::EndpointBp => vec![endpoint_integrand(v, &spec.p_matrix)],
        MonitorKind::BkmSupNorm => vec![vorticity_sup(v)],
        MonitorKind::GronwallEnvelope => {
            let w = compute_vorticity(v);
            let h = htheta_monitors(v, spec.theta);
            vec![
                criterion_integrand(v, spec.e, spec.p),
                three_quarter_sq(&w.omega_h),
                grad_three_quarter_sq(&w.omega_h)?,
                vector_l32(&w.omega.map(|c| c.to_real())),
                h.d3v3.powi(2),
                h.grad_d3v3.powi(2),
            ]
        }
        MonitorKind::EnergyBalance => vec![0.5 * v.l2_sq(), nu * v.grad_l2_sq()],
        MonitorKind::KlipsBalance => klips_terms(v, nu)?
            .iter()
            .flat_map(|k| [k.energy, k.dissipation, k.forcing])
            .collect(),
    })
}

fn column(raw: &[Vec<f64>], i: usize) -> Vec<f64> {
    raw.iter().map(|r| r[i]).collect()
}

impl MonitorSet {
    pub fn new(specs: Vec<MonitorSpec>, nu: f64) -> Result<Self> {
        for s in &specs {
            s.validate()?;
        }
        let n = specs.len();
        Ok(Self {
            specs,
            nu,
            times: Vec::new(),
            raw: vec![Vec::new(); n],
        })
    }

    pub fn specs(&self) -> &[MonitorSpec] {
        &self.specs
    }

    /// Raw values of every monitor at one snapshot; monitors run in parallel.
    pub fn evaluate(&self, v: &VelocityState) -> Result<Vec<Vec<f64>>> {
        self.specs
            .par_iter()
            .map(|s| raw_values(s, v, self.nu))
            .collect()
    }

    /// Appends evaluated values; times must increase.
    pub fn record(&mut self, time: f64, values: Vec<Vec<f64>>) -> Result<()> {
        if let Some(&last) = self.times.last() {
            if time <= last {
                return Err(Error::Invariant(format!("monitor time {time} does not follow {last}")));
            }
        }
        self.times.push(time);
        for (slot, v) in self.raw.iter_mut().zip(values) {
            slot.push(v);
        }
        Ok(())
    }

    pub fn observe(&mut self, v: &VelocityState) -> Result<()> {
        let values = self.evaluate(v)?;
        self.record(v.time, values)
    }

    pub fn finish(&self) -> MonitorOutput {
        let mut series = Vec::with_capacity(self.specs.len());
        let mut gronwall = Vec::new();
        for (spec, raw) in self.specs.iter().zip(&self.raw) {
            let values = match spec.kind {
                MonitorKind::GronwallEnvelope => {
                    let report = self.gronwall(spec, raw);
                    let v = report.vorticity_envelope.clone();
                    gronwall.push(report);
                    v
                }
                MonitorKind::EnergyBalance => self.energy_residual(raw),
                MonitorKind::KlipsBalance => self.klips_residual(raw),
                _ => column(raw, 0),
            };
            series.push(MonitorSeries::from_samples(spec.clone(), self.times.clone(), values));
        }
        let summaries = series
            .iter()
            .map(|s| MonitorSummary {
                name: s.spec.kind.name().to_string(),
                final_value: s.final_value(),
                final_integral: s.final_integral(),
                max_value: s.values.iter().copied().fold(0.0, f64::max),
            })
            .collect();
        MonitorOutput {
            series,
            summaries,
            gronwall,
        }
    }

    fn gronwall(&self, spec: &MonitorSpec, raw: &[Vec<f64>]) -> GronwallReport {
        let criterion = MonitorSeries::from_samples(spec.clone(), self.times.clone(), column(raw, 0));
        let grad_int = trapezoid_running(&self.times, &column(raw, 2));
        let d3_int = trapezoid_running(&self.times, &column(raw, 5));
        gronwall_report(
            &GronwallInputs {
                criterion: &criterion,
                omega0_l32: raw.first().map(|r| r[3]).unwrap_or(0.0),
                omega34_sq: &column(raw, 1),
                grad_omega34_sq_integral: &grad_int,
                d3v3_htheta_sq: &column(raw, 4),
                grad_d3v3_htheta_sq_integral: &d3_int,
            },
            spec.gronwall_c,
        )
    }

    /// `|E(t) + int D - E(0)| / E(0)` with Simpson's rule in time.
    fn energy_residual(&self, raw: &[Vec<f64>]) -> Vec<f64> {
        let e = column(raw, 0);
        let d = simpson_running(&self.times, &column(raw, 1));
        let e0 = e.first().copied().unwrap_or(0.0);
        let scale = if e0 > 0.0 { e0 } else { 1.0 };
        e.iter().zip(&d).map(|(x, y)| (x + y - e0).abs() / scale).collect()
    }

    /// Largest relative residual of the `L^{3/2}` identity over the three components.
    fn klips_residual(&self, raw: &[Vec<f64>]) -> Vec<f64> {
        let n = self.times.len();
        let mut worst = vec![0.0_f64; n];
        if n == 0 {
            return worst;
        }
        let scale_all = (0..3).map(|c| raw[0][3 * c]).fold(0.0, f64::max);
        for c in 0..3 {
            let e = column(raw, 3 * c);
            let d = simpson_running(&self.times, &column(raw, 3 * c + 1));
            let f = simpson_running(&self.times, &column(raw, 3 * c + 2));
            let scale = if e[0] > 0.0 {
                e[0]
            } else if scale_all > 0.0 {
                scale_all
            } else {
                1.0
            };
            for i in 0..n {
                worst[i] = worst[i].max((e[i] + d[i] - e[0] - f[i]).abs() / scale);
            }
        }
        worst
    }
}
