//! Instantaneous monitor quantities of a velocity snapshot.

use crate::error::Result;
use crate::lp::norms::{heat_norm, htheta_sq, sobolev_sq};
use crate::spectral::ops::{derivative, gradient, laplacian, signed_power_real};
use crate::spectral::{RealField, SpectralField, VelocityState};
use crate::vorticity::{compute_vorticity, curl};

/// `||v.e||^p_{H^{1/2+2/p}}`.
pub fn criterion_integrand(v: &VelocityState, e: [f64; 3], p: f64) -> f64 {
    let s = 0.5 + 2.0 / p;
    sobolev_sq(&v.along(e), s).powf(0.5 * p)
}

/// `(int |w|^{3/2})^{2/3}` for the Euclidean length of a vector field.
pub fn vector_l32(w: &[RealField; 3]) -> f64 {
    let s: f64 = (0..w[0].values.len())
        .map(|i| {
            (w[0].values[i].powi(2) + w[1].values[i].powi(2) + w[2].values[i].powi(2)).powf(0.75)
        })
        .sum();
    (s * w[0].grid.cell_volume()).powf(2.0 / 3.0)
}

/// `||grad a_{3/4}||^2_{L^2}` through `-(9/8) int Lap(a) a_{1/2}`.
///
/// Integrating by parts moves the derivative off the non-smooth power,
/// which the node quadrature resolves far better than `|a|^{-1/2} |grad a|^2`.
pub fn grad_three_quarter_sq(a: &SpectralField) -> Result<f64> {
    let half = signed_power_real(&a.to_real(), 0.5)?;
    let lap = laplacian(a).to_real();
    Ok((-(9.0 / 8.0) * lap.inner(&half)).max(0.0))
}

/// `||a_{3/4}||^2_{L^2} = int |a|^{3/2}`.
pub fn three_quarter_sq(a: &SpectralField) -> f64 {
    let r = a.to_real();
    r.values.iter().map(|x| x.abs().powf(1.5)).sum::<f64>() * r.grid.cell_volume()
}

/// `(||Omega||_{L^{3/2}}, ||omega_{3/4}||_{L^2}, ||grad omega_{3/4}||_{L^2})`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct VorticityMonitors {
    pub omega_l32: f64,
    pub omega34_l2: f64,
    pub grad_omega34_l2: f64,
}

pub fn vorticity_monitors(v: &VelocityState) -> Result<VorticityMonitors> {
    let w = compute_vorticity(v);
    let omega_r = [0, 1, 2].map(|i| w.omega[i].to_real());
    Ok(VorticityMonitors {
        omega_l32: vector_l32(&omega_r),
        omega34_l2: three_quarter_sq(&w.omega_h).sqrt(),
        grad_omega34_l2: grad_three_quarter_sq(&w.omega_h)?.sqrt(),
    })
}

/// `(||d3v3||, ||grad d3v3||, ||d3^2 v3||)` in `H_theta`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct HThetaMonitors {
    pub d3v3: f64,
    pub grad_d3v3: f64,
    pub d3sq_v3: f64,
}

pub fn htheta_monitors(v: &VelocityState, theta: f64) -> HThetaMonitors {
    let d3v3 = derivative(v.component(2), 2);
    let grad: f64 = gradient(&d3v3).iter().map(|g| htheta_sq(g, theta)).sum();
    HThetaMonitors {
        d3v3: htheta_sq(&d3v3, theta).sqrt(),
        grad_d3v3: grad.sqrt(),
        d3sq_v3: htheta_sq(&derivative(&d3v3, 2), theta).sqrt(),
    }
}

/// `||d_l v^k||_{B_{p_kl}}` indexed `[k][l]`.
pub fn endpoint_bp(v: &VelocityState, p_matrix: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    [0, 1, 2].map(|k| {
        [0, 1, 2].map(|l| heat_norm(&derivative(v.component(k), l), 2.0 - 2.0 / p_matrix[k][l]))
    })
}

/// `sum_{k,l} ||d_l v^k||^{p_kl}_{B_{p_kl}}`.
pub fn endpoint_integrand(v: &VelocityState, p_matrix: &[[f64; 3]; 3]) -> f64 {
    let b = endpoint_bp(v, p_matrix);
    (0..3)
        .flat_map(|k| (0..3).map(move |l| (k, l)))
        .map(|(k, l)| b[k][l].powf(p_matrix[k][l]))
        .sum()
}

/// `||curl v||_{L^inf}` as the largest node length.
pub fn vorticity_sup(v: &VelocityState) -> f64 {
    let w = curl(v.components()).map(|c| c.to_real());
    (0..w[0].values.len())
        .map(|i| (w[0].values[i].powi(2) + w[1].values[i].powi(2) + w[2].values[i].powi(2)).sqrt())
        .fold(0.0, f64::max)
}

/// Instantaneous terms of the `L^{3/2}` identity for `a = Omega_i`:
/// `(2/3)||a_{3/4}||^2`, `nu (8/9)||grad a_{3/4}||^2` and `int f a_{1/2}`
/// with `f = Omega . grad v^i`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct KlipsTerms {
    pub energy: f64,
    pub dissipation: f64,
    pub forcing: f64,
}

pub fn klips_terms(v: &VelocityState, nu: f64) -> Result<[KlipsTerms; 3]> {
    let omega = curl(v.components());
    let omega_r = [0, 1, 2].map(|i| omega[i].to_real());
    let mut out = [KlipsTerms {
        energy: 0.0,
        dissipation: 0.0,
        forcing: 0.0,
    }; 3];
    for (i, slot) in out.iter_mut().enumerate() {
        let a = &omega[i];
        let half = signed_power_real(&omega_r[i], 0.5)?;
        let grad_vi = gradient(v.component(i)).map(|g| g.to_real());
        let mut forcing = 0.0;
        for n in 0..half.values.len() {
            let f = omega_r[0].values[n] * grad_vi[0].values[n]
                + omega_r[1].values[n] * grad_vi[1].values[n]
                + omega_r[2].values[n] * grad_vi[2].values[n];
            forcing += f * half.values[n];
        }
        *slot = KlipsTerms {
            energy: (2.0 / 3.0) * three_quarter_sq(a),
            dissipation: nu * (8.0 / 9.0) * grad_three_quarter_sq(a)?,
            forcing: forcing * half.grid.cell_volume(),
        };
    }
    Ok(out)
}
