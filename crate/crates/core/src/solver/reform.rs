//! The vorticity / `d3 v3` reformulation of the momentum equation and the
//! term splittings used in the criterion estimates.

use crate::error::Result;
use crate::lp::norms::{htheta_inner, htheta_sq};
use crate::spectral::ops::{d33_inv_laplacian, derivative, gradient, signed_power_real};
use crate::spectral::{RealField, SpectralField, VelocityState};
use crate::vorticity::{horizontal_split, horizontal_vorticity};

use super::dynamics::{band_values, truncate, velocity_gradient};

/// Truncated `sum_i a_i b_i` of node values.
fn dot_truncated(a: &[&RealField], b: &[&RealField]) -> SpectralField {
    let mut acc = RealField::zeros(a[0].grid);
    for (x, y) in a.iter().zip(b) {
        for (s, (p, q)) in acc.values.iter_mut().zip(x.values.iter().zip(&y.values)) {
            *s += p * q;
        }
    }
    truncate(&acc)
}

/// Left minus right side of both reformulated equations.
#[derive(Debug, Clone)]
pub struct TildeNsResidual {
    pub r_omega: SpectralField,
    pub r_d3v3: SpectralField,
    /// Largest coefficient among the terms of each equation.
    pub scale_omega: f64,
    pub scale_d3v3: f64,
}

impl TildeNsResidual {
    fn rel(r: &SpectralField, scale: f64) -> f64 {
        if scale == 0.0 {
            r.max_coeff()
        } else {
            r.max_coeff() / scale
        }
    }

    pub fn relative_omega(&self) -> f64 {
        Self::rel(&self.r_omega, self.scale_omega)
    }

    pub fn relative_d3v3(&self) -> f64 {
        Self::rel(&self.r_d3v3, self.scale_d3v3)
    }

    pub fn relative(&self) -> f64 {
        self.relative_omega().max(self.relative_d3v3())
    }
}

fn combine(terms: &[(f64, &SpectralField)]) -> (SpectralField, f64) {
    let mut acc = SpectralField::zeros(*terms[0].1.grid());
    let mut scale = 0.0_f64;
    for (c, t) in terms {
        acc.axpy(*c, t);
        scale = scale.max(c.abs() * t.max_coeff());
    }
    (acc, scale)
}

/// Residuals of
/// `dt omega + v.grad omega - nu Lap omega = d3v3 omega + d2v3 d3v1 - d1v3 d3v2` and
/// `dt d3v3 + v.grad d3v3 - nu Lap d3v3 + d3v.grad v3 = d3^2 Lap^{-1} sum d_l v^m d_m v^l`,
/// given the momentum tendency `dvdt`.
pub fn tilde_ns_residual_with_viscosity(
    state: &VelocityState,
    dvdt: &[SpectralField; 3],
    nu: f64,
) -> TildeNsResidual {
    let grad = velocity_gradient(state);
    let vr: Vec<RealField> = (0..3).map(|i| band_values(state.component(i))).collect();
    let vrefs: Vec<&RealField> = vr.iter().collect();

    let omega = horizontal_vorticity(state).dealiased();
    let d3v3 = derivative(state.component(2), 2).dealiased();
    let grad_omega: Vec<RealField> = gradient(&omega).iter().map(SpectralField::to_real).collect();
    let grad_d3v3: Vec<RealField> = gradient(&d3v3).iter().map(SpectralField::to_real).collect();
    let omega_r = omega.to_real();
    let d3v3_r = &grad[2][2];

    // omega equation
    let dt_omega = &derivative(&dvdt[1], 0) - &derivative(&dvdt[0], 1);
    let adv_omega = dot_truncated(&vrefs, &grad_omega.iter().collect::<Vec<_>>());
    let lap_omega = crate::spectral::ops::laplacian(&omega);
    let stretch = dot_truncated(&[d3v3_r], &[&omega_r]);
    let tilt_a = dot_truncated(&[&grad[2][1]], &[&grad[0][2]]);
    let tilt_b = dot_truncated(&[&grad[2][0]], &[&grad[1][2]]);
    let (r_omega, scale_omega) = combine(&[
        (1.0, &dt_omega),
        (1.0, &adv_omega),
        (-nu, &lap_omega),
        (-1.0, &stretch),
        (-1.0, &tilt_a),
        (1.0, &tilt_b),
    ]);

    // d3v3 equation
    let dt_d3v3 = derivative(&dvdt[2], 2);
    let adv_d3v3 = dot_truncated(&vrefs, &grad_d3v3.iter().collect::<Vec<_>>());
    let lap_d3v3 = crate::spectral::ops::laplacian(&d3v3);
    let d3v_grad_v3 = dot_truncated(
        &[&grad[0][2], &grad[1][2], &grad[2][2]],
        &[&grad[2][0], &grad[2][1], &grad[2][2]],
    );
    let source = d33_inv_laplacian(&super::dynamics::pressure_source(state));
    let (r_d3v3, scale_d3v3) = combine(&[
        (1.0, &dt_d3v3),
        (1.0, &adv_d3v3),
        (-nu, &lap_d3v3),
        (1.0, &d3v_grad_v3),
        (-1.0, &source),
    ]);

    TildeNsResidual {
        r_omega,
        r_d3v3,
        scale_omega,
        scale_d3v3,
    }
}

/// Residuals at unit viscosity.
pub fn tilde_ns_residual(state: &VelocityState, dvdt: &[SpectralField; 3]) -> TildeNsResidual {
    tilde_ns_residual_with_viscosity(state, dvdt, 1.0)
}

/// Instantaneous integrands of the `L^{3/2}` vorticity balance:
/// `F1 = int d3v3 |omega|^{3/2}`, `F2`/`F3` the tilting terms built from
/// the rotational/potential parts of `v^h`, `F_shear` the same built from
/// the `k_h = 0` part. `direct` is `int F omega_{1/2}` for the whole
/// right-hand side `F`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct FTerms {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub f_shear: f64,
    pub direct: f64,
}

impl FTerms {
    pub fn sum(&self) -> f64 {
        self.f1 + self.f2 + self.f3 + self.f_shear
    }

    /// `|sum - direct|` relative to the largest contribution.
    pub fn consistency(&self) -> f64 {
        let scale = [self.f1, self.f2, self.f3, self.f_shear, self.direct]
            .iter()
            .fold(0.0_f64, |m, x| m.max(x.abs()));
        if scale == 0.0 {
            0.0
        } else {
            (self.sum() - self.direct).abs() / scale
        }
    }
}

/// Node quadrature of `(d2 v3 d3 w1 - d1 v3 d3 w2) * weight`.
fn tilt_integral(d1v3: &RealField, d2v3: &RealField, w: &[SpectralField; 2], weight: &RealField) -> f64 {
    let a = derivative(&w[0], 2).to_real();
    let b = derivative(&w[1], 2).to_real();
    let mut s = 0.0;
    for i in 0..weight.values.len() {
        s += (d2v3.values[i] * a.values[i] - d1v3.values[i] * b.values[i]) * weight.values[i];
    }
    s * weight.grid.cell_volume()
}

pub fn f_terms(state: &VelocityState) -> Result<FTerms> {
    let omega = horizontal_vorticity(state).to_real();
    let half = signed_power_real(&omega, 0.5)?;
    let d1v3 = derivative(state.component(2), 0).to_real();
    let d2v3 = derivative(state.component(2), 1).to_real();
    let d3v1 = derivative(state.component(0), 2).to_real();
    let d3v2 = derivative(state.component(1), 2).to_real();
    let d3v3 = derivative(state.component(2), 2).to_real();
    let dv = omega.grid.cell_volume();

    let mut f1 = 0.0;
    let mut direct = 0.0;
    for i in 0..omega.values.len() {
        let w = omega.values[i];
        f1 += d3v3.values[i] * w.abs().powf(1.5);
        let f = d3v3.values[i] * w + d2v3.values[i] * d3v1.values[i] - d1v3.values[i] * d3v2.values[i];
        direct += f * half.values[i];
    }
    let split = horizontal_split(state);
    Ok(FTerms {
        f1: f1 * dv,
        f2: tilt_integral(&d1v3, &d2v3, &split.curl, &half),
        f3: tilt_integral(&d1v3, &d2v3, &split.div, &half),
        f_shear: tilt_integral(&d1v3, &d2v3, &split.shear, &half),
        direct: direct * dv,
    })
}

/// `(Q_n(v,v) | d3v3)_{H_theta}` for the three quadratic terms
/// `Q1 = (Id - d3^2 Lap^{-1})(d3v3)^2 - d3^2 Lap^{-1} sum_{l,m<=2} d_l v^m d_m v^l`,
/// `Q2 = (Id - 2 d3^2 Lap^{-1}) sum_{l<=2} d3 v^l d_l v3`,
/// `Q3 = v.grad d3v3`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct QTerms {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

impl QTerms {
    pub fn sum(&self) -> f64 {
        self.q1 + self.q2 + self.q3
    }
}

pub fn q_fields(state: &VelocityState) -> [SpectralField; 3] {
    let grad = velocity_gradient(state);
    let vr: Vec<RealField> = (0..3).map(|i| band_values(state.component(i))).collect();
    let d3v3 = derivative(state.component(2), 2).dealiased();

    let sq = dot_truncated(&[&grad[2][2]], &[&grad[2][2]]);
    let horiz = dot_truncated(
        &[&grad[0][0], &grad[0][1], &grad[1][0], &grad[1][1]],
        &[&grad[0][0], &grad[1][0], &grad[0][1], &grad[1][1]],
    );
    let mut q1 = &sq - &d33_inv_laplacian(&sq);
    q1.axpy(-1.0, &d33_inv_laplacian(&horiz));

    let mixed = dot_truncated(&[&grad[0][2], &grad[1][2]], &[&grad[2][0], &grad[2][1]]);
    let mut q2 = mixed.clone();
    q2.axpy(-2.0, &d33_inv_laplacian(&mixed));

    let g3: Vec<RealField> = gradient(&d3v3).iter().map(SpectralField::to_real).collect();
    let q3 = dot_truncated(&vr.iter().collect::<Vec<_>>(), &g3.iter().collect::<Vec<_>>());
    [q1, q2, q3]
}

pub fn q_terms(state: &VelocityState, theta: f64) -> QTerms {
    let d3v3 = derivative(state.component(2), 2);
    let [q1, q2, q3] = q_fields(state);
    QTerms {
        q1: htheta_inner(&q1, &d3v3, theta),
        q2: htheta_inner(&q2, &d3v3, theta),
        q3: htheta_inner(&q3, &d3v3, theta),
    }
}

/// `||grad d3v3||^2_{H_theta}`.
pub fn grad_d3v3_htheta_sq(state: &VelocityState, theta: f64) -> f64 {
    let d3v3 = derivative(state.component(2), 2);
    gradient(&d3v3).iter().map(|g| htheta_sq(g, theta)).sum()
}

/// `d/dt (1/2)||d3v3||^2_{H_theta} + nu ||grad d3v3||^2_{H_theta}` from the tendency.
pub fn htheta_energy_rate(state: &VelocityState, dvdt: &[SpectralField; 3], theta: f64, nu: f64) -> f64 {
    let d3v3 = derivative(state.component(2), 2);
    htheta_inner(&derivative(&dvdt[2], 2), &d3v3, theta) + nu * grad_d3v3_htheta_sq(state, theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::config::{taylor_green, InitialData};
    use crate::solver::dynamics::tendency;
    use crate::spectral::Grid;

    #[test]
    fn zero_state() {
        let g = Grid::cubic(8).unwrap();
        let v = VelocityState::zeros(g);
        let r = tilde_ns_residual(&v, &tendency(&v, 1.0).unwrap());
        assert_eq!(r.r_omega.max_coeff(), 0.0);
        assert_eq!(r.r_d3v3.max_coeff(), 0.0);
        let f = f_terms(&v).unwrap();
        assert_eq!(f.sum(), 0.0);
        assert_eq!(q_terms(&v, 0.125).sum(), 0.0);
    }

    #[test]
    fn shear_residuals_vanish() {
        let g = Grid::cubic(16).unwrap();
        let v = VelocityState::from_fn(g, |_, y, _| [y.sin(), 0.0, 0.0]).unwrap();
        let r = tilde_ns_residual(&v, &tendency(&v, 1.0).unwrap());
        assert!(r.r_omega.max_coeff() < 1e-12 && r.r_d3v3.max_coeff() < 1e-12);
        let q = q_terms(&v, 0.125);
        assert_eq!((q.q1, q.q2, q.q3), (0.0, 0.0, 0.0));
    }

    #[test]
    fn reformulation_holds_on_random_state() {
        let g = Grid::cubic(16).unwrap();
        let v = InitialData::Random { seed: 11, slope: 1.0, kmax: 5.0, l2: 10.0 }.build(g).unwrap();
        let r = tilde_ns_residual(&v, &tendency(&v, 1.0).unwrap());
        assert!(r.relative() < 1e-12, "{}", r.relative());
    }

    #[test]
    fn horizontal_flow_has_no_f_terms() {
        let g = Grid::cubic(16).unwrap();
        let v = taylor_green(g, 1.0).unwrap();
        let f = f_terms(&v).unwrap();
        for x in [f.f1, f.f2, f.f3, f.f_shear] {
            assert!(x.abs() < 1e-20, "{f:?}");
        }
    }

    #[test]
    fn q_terms_close_the_htheta_balance() {
        let g = Grid::cubic(16).unwrap();
        let v = InitialData::Random { seed: 5, slope: 1.0, kmax: 5.0, l2: 10.0 }.build(g).unwrap();
        let dvdt = tendency(&v, 1.0).unwrap();
        let rate = htheta_energy_rate(&v, &dvdt, 0.125, 1.0);
        let q = q_terms(&v, 0.125);
        assert!((rate + q.sum()).abs() < 1e-10 * rate.abs().max(q.q3.abs()), "{rate} {q:?}");
    }
}
