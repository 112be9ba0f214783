use serde::Serialize;

use super::series::MonitorSeries;

/// `E(t) = exp(C exp(C int_0^t criterion))` from the running integral of the criterion series.
pub fn double_exponential(criterion: &MonitorSeries, c: f64) -> Vec<f64> {
    criterion
        .running_integral
        .iter()
        .map(|&i| (c * (c * i).exp()).exp())
        .collect()
}

/// `e(T) = C exp(C int_0^T criterion)`.
pub fn single_exponential(criterion: &MonitorSeries, c: f64) -> Vec<f64> {
    criterion.running_integral.iter().map(|&i| c * (c * i).exp()).collect()
}

/// `t -> C ||Omega_0||_{L^{3/2}}^{(p+3)/2} E(t)`.
pub fn gronwall_envelope(criterion: &MonitorSeries, omega0_l32: f64, c: f64) -> Vec<f64> {
    let p = criterion.spec.p;
    let pre = c * omega0_l32.powf(0.5 * (p + 3.0));
    double_exponential(criterion, c).into_iter().map(|e| pre * e).collect()
}

/// Comparison of the measured quantities with both envelope curves.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GronwallReport {
    pub c: f64,
    pub times: Vec<f64>,
    /// `C ||Omega_0||^{(p+3)/2} E(t)`.
    pub vorticity_envelope: Vec<f64>,
    /// `||omega_{3/4}(t)||^{2(p+3)/3} + (int ||grad omega_{3/4}||^2)^{(p+3)/3}`.
    pub vorticity_measured: Vec<f64>,
    /// `||Omega_0||^2 E(t)`.
    pub htheta_envelope: Vec<f64>,
    /// `||d3v3(t)||^2_{H_theta} + int ||grad d3v3||^2_{H_theta}`.
    pub htheta_measured: Vec<f64>,
    pub vorticity_below: bool,
    pub htheta_below: bool,
    /// Smallest `envelope - measured` over both comparisons.
    pub min_margin: f64,
}

/// Inputs sampled along a run, all on the criterion series' time grid.
pub struct GronwallInputs<'a> {
    pub criterion: &'a MonitorSeries,
    pub omega0_l32: f64,
    pub omega34_sq: &'a [f64],
    pub grad_omega34_sq_integral: &'a [f64],
    pub d3v3_htheta_sq: &'a [f64],
    pub grad_d3v3_htheta_sq_integral: &'a [f64],
}

pub fn gronwall_report(inputs: &GronwallInputs<'_>, c: f64) -> GronwallReport {
    let p = inputs.criterion.spec.p;
    let e = double_exponential(inputs.criterion, c);
    let vorticity_envelope = gronwall_envelope(inputs.criterion, inputs.omega0_l32, c);
    let expo = (p + 3.0) / 3.0;
    let vorticity_measured: Vec<f64> = inputs
        .omega34_sq
        .iter()
        .zip(inputs.grad_omega34_sq_integral)
        .map(|(a, b)| a.powf(expo) + b.powf(expo))
        .collect();
    let htheta_envelope: Vec<f64> = e.iter().map(|x| inputs.omega0_l32.powi(2) * x).collect();
    let htheta_measured: Vec<f64> = inputs
        .d3v3_htheta_sq
        .iter()
        .zip(inputs.grad_d3v3_htheta_sq_integral)
        .map(|(a, b)| a + b)
        .collect();
    let margin = |env: &[f64], meas: &[f64]| {
        env.iter()
            .zip(meas)
            .map(|(e, m)| e - m)
            .fold(f64::INFINITY, f64::min)
    };
    let m1 = margin(&vorticity_envelope, &vorticity_measured);
    let m2 = margin(&htheta_envelope, &htheta_measured);
    GronwallReport {
        c,
        times: inputs.criterion.times.clone(),
        vorticity_below: m1 >= 0.0,
        htheta_below: m2 >= 0.0,
        min_margin: m1.min(m2),
        vorticity_envelope,
        vorticity_measured,
        htheta_envelope,
        htheta_measured,
    }
}
