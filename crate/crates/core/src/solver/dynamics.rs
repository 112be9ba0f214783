//! Nonlinear term, pressure and the integrating-factor RK4 step.

use crate::error::{Error, Result};
use crate::spectral::ops::{derivative, inv_laplacian};
use crate::spectral::velocity::leray_project;
use crate::spectral::{Grid, RealField, SpectralField, VelocityState};
use crate::vorticity::curl;

use super::config::SolverConfig;

/// Node values of the 2/3-truncated field.
pub fn band_values(f: &SpectralField) -> RealField {
    f.dealiased().to_real()
}

/// Transform of node values truncated to the 2/3 band.
pub fn truncate(r: &RealField) -> SpectralField {
    SpectralField::from_real(r).dealiased()
}

/// Node values of `d_l v^m`, indexed `[m][l]`, from the truncated velocity.
pub fn velocity_gradient(v: &VelocityState) -> [[RealField; 3]; 3] {
    [0, 1, 2].map(|m| {
        let vm = v.component(m).dealiased();
        [0, 1, 2].map(|l| derivative(&vm, l).to_real())
    })
}

fn cross(a: &[RealField; 3], b: &[RealField; 3]) -> [RealField; 3] {
    let n = a[0].values.len();
    let mut out = [0, 1, 2].map(|_| RealField::zeros(a[0].grid));
    for i in 0..n {
        let (a0, a1, a2) = (a[0].values[i], a[1].values[i], a[2].values[i]);
        let (b0, b1, b2) = (b[0].values[i], b[1].values[i], b[2].values[i]);
        out[0].values[i] = a1 * b2 - a2 * b1;
        out[1].values[i] = a2 * b0 - a0 * b2;
        out[2].values[i] = a0 * b1 - a1 * b0;
    }
    out
}

/// Nonlinear term and the largest node speed of the truncated velocity.
fn nonlinear_with_speed(v: &VelocityState) -> Result<([SpectralField; 3], f64)> {
    let vt = [0, 1, 2].map(|i| v.component(i).dealiased());
    let omega = curl(&vt);
    let vr = [0, 1, 2].map(|i| vt[i].to_real());
    let wr = [0, 1, 2].map(|i| omega[i].to_real());
    let speed = (0..vr[0].values.len())
        .map(|i| (vr[0].values[i].powi(2) + vr[1].values[i].powi(2) + vr[2].values[i].powi(2)).sqrt())
        .fold(0.0, f64::max);
    let c = cross(&vr, &wr);
    let projected = leray_project([truncate(&c[0]), truncate(&c[1]), truncate(&c[2])])?;
    Ok((projected.into_components(), speed))
}

/// `-P[(v.grad)v]` in rotational form: the Leray projection of the truncated `v x Omega`.
pub fn nonlinear_term(v: &VelocityState) -> Result<[SpectralField; 3]> {
    Ok(nonlinear_with_speed(v)?.0)
}

/// Truncated `(v.grad)v` in convective form, not projected.
pub fn convective_term(v: &VelocityState) -> [SpectralField; 3] {
    let grad = velocity_gradient(v);
    let vr = [0, 1, 2].map(|i| band_values(v.component(i)));
    [0, 1, 2].map(|m| {
        let mut acc = RealField::zeros(*v.grid());
        for l in 0..3 {
            for (a, (u, d)) in acc.values.iter_mut().zip(vr[l].values.iter().zip(&grad[m][l].values)) {
                *a += u * d;
            }
        }
        truncate(&acc)
    })
}

/// Truncated `sum_{l,m} d_l v^m d_m v^l`.
pub fn pressure_source(v: &VelocityState) -> SpectralField {
    let grad = velocity_gradient(v);
    let mut acc = RealField::zeros(*v.grid());
    for l in 0..3 {
        for m in 0..3 {
            for (a, (x, y)) in acc.values.iter_mut().zip(grad[m][l].values.iter().zip(&grad[l][m].values)) {
                *a += x * y;
            }
        }
    }
    truncate(&acc)
}

/// `Pi = -Delta^{-1} sum d_l v^m d_m v^l`, mean zero.
pub fn pressure(v: &VelocityState) -> SpectralField {
    inv_laplacian(&pressure_source(v)).scale(-1.0)
}

/// Instantaneous right-hand side `-P[(v.grad)v] + nu Delta v`.
pub fn tendency(v: &VelocityState, nu: f64) -> Result<[SpectralField; 3]> {
    let n = nonlinear_term(v)?;
    Ok([0, 1, 2].map(|i| {
        let mut out = n[i].clone();
        out.axpy(nu, &crate::spectral::ops::laplacian(v.component(i)));
        out
    }))
}

/// Integrating-factor RK4 stepper for fixed `(grid, nu, dt)`.
pub struct Integrator {
    grid: Grid,
    dt: f64,
    cfl_limit: f64,
    full: Vec<f64>,
    half: Vec<f64>,
}

/// One completed step.
#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub state: VelocityState,
    /// `dt max|v| / min dx` at the start of the step.
    pub cfl: f64,
}

impl StepOutcome {
    pub fn cfl_exceeded(&self, limit: f64) -> bool {
        self.cfl > limit
    }
}

impl Integrator {
    pub fn new(grid: Grid, cfg: &SolverConfig) -> Result<Self> {
        cfg.validate()?;
        let mut full = vec![0.0; grid.size()];
        let mut half = vec![0.0; grid.size()];
        grid.for_each_k(|f, k| {
            let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
            full[f] = (-cfg.nu * k2 * cfg.dt).exp();
            half[f] = (-cfg.nu * k2 * cfg.dt * 0.5).exp();
        });
        Ok(Self {
            grid,
            dt: cfg.dt,
            cfl_limit: cfg.cfl_limit,
            full,
            half,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn cfl_limit(&self) -> f64 {
        self.cfl_limit
    }

    fn decay(&self, f: &SpectralField, half: bool) -> SpectralField {
        let table = if half { &self.half } else { &self.full };
        f.map_real_symbol(|i, _| table[i])
    }

    /// `E_h (u + c k)` componentwise.
    fn stage(&self, u: &[SpectralField; 3], c: f64, k: &[SpectralField; 3], half: bool) -> VelocityState {
        let s = [0, 1, 2].map(|i| {
            let mut w = u[i].clone();
            w.axpy(c, &k[i]);
            self.decay(&w, half)
        });
        VelocityState::from_parts_unchecked(s, 0.0)
    }

    /// Advances by `dt`. Non-finite output is reported as suspected blow-up;
    /// the input state stays valid with the caller.
    pub fn step(&self, state: &VelocityState) -> Result<StepOutcome> {
        if state.grid() != &self.grid {
            return Err(Error::Shape("state grid differs from the integrator grid".into()));
        }
        let dt = self.dt;
        let u = state.components();
        let (k1, speed) = nonlinear_with_speed(state)?;
        let k2 = nonlinear_term(&self.stage(u, 0.5 * dt, &k1, true))?;
        let e2u = self.stage(u, 0.0, &k1, true).into_components();
        let k3 = nonlinear_term(&VelocityState::from_parts_unchecked(
            [0, 1, 2].map(|i| {
                let mut w = e2u[i].clone();
                w.axpy(0.5 * dt, &k2[i]);
                w
            }),
            0.0,
        ))?;
        let k4 = nonlinear_term(&VelocityState::from_parts_unchecked(
            [0, 1, 2].map(|i| {
                let mut w = self.decay(&u[i], false);
                w.axpy(dt, &self.decay(&k3[i], true));
                w
            }),
            0.0,
        ))?;
        let next = [0, 1, 2].map(|i| {
            let mut w = self.decay(&u[i], false);
            w.axpy(dt / 6.0, &self.decay(&k1[i], false));
            let mut mid = k2[i].clone();
            mid.axpy(1.0, &k3[i]);
            w.axpy(dt / 3.0, &self.decay(&mid, true));
            w.axpy(dt / 6.0, &k4[i]);
            w
        });
        let time = state.time + dt;
        if !next.iter().all(SpectralField::is_finite) {
            return Err(Error::BlowUpSuspected { time });
        }
        let projected = leray_project(next)?.with_time(time);
        Ok(StepOutcome {
            state: projected,
            cfl: dt * speed / self.grid.min_spacing(),
        })
    }
}

/// One step of `cfg` from `state`.
pub fn step(state: &VelocityState, cfg: &SolverConfig) -> Result<VelocityState> {
    Ok(Integrator::new(*state.grid(), cfg)?.step(state)?.state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::config::taylor_green;

    #[test]
    fn shear_has_no_nonlinearity_and_no_pressure() {
        let g = Grid::cubic(16).unwrap();
        let v = VelocityState::from_fn(g, |_, y, _| [y.sin(), 0.0, 0.0]).unwrap();
        for c in nonlinear_term(&v).unwrap() {
            assert!(c.max_coeff() < 1e-15);
        }
        assert!(pressure(&v).max_coeff() < 1e-15);
    }

    #[test]
    fn zero_state_is_fixed() {
        let g = Grid::cubic(8).unwrap();
        let v = VelocityState::zeros(g);
        assert_eq!(pressure(&v).max_coeff(), 0.0);
        let next = step(&v, &SolverConfig::new(0.1, 0.1)).unwrap();
        assert_eq!(next.max_coeff(), 0.0);
        assert!((next.time - 0.1).abs() < 1e-15);
    }

    #[test]
    fn shear_decays_exactly() {
        let g = Grid::cubic(16).unwrap();
        let v = VelocityState::from_fn(g, |_, y, _| [y.sin(), 0.0, 0.0]).unwrap();
        let next = step(&v, &SolverConfig::new(0.1, 0.1)).unwrap();
        let expect = v.component(0).scale((-0.1f64).exp());
        assert!(next.component(0).max_diff(&expect) < 1e-12);
    }

    #[test]
    fn rotational_matches_convective_after_projection() {
        let g = Grid::cubic(32).unwrap();
        let v = taylor_green(g, 1.0).unwrap();
        let rot = nonlinear_term(&v).unwrap();
        let conv = leray_project(convective_term(&v)).unwrap();
        for i in 0..3 {
            let d = rot[i].max_diff(&conv.component(i).scale(-1.0));
            assert!(d < 1e-8 * rot[i].max_coeff().max(1e-300) + 1e-15, "component {i}: {d}");
        }
    }

    #[test]
    fn taylor_green_pressure_closed_form() {
        let g = Grid::cubic(32).unwrap();
        let v = taylor_green(g, 1.0).unwrap();
        let p = pressure(&v);
        let expect = SpectralField::from_fn(g, |x, y, z| {
            ((2.0 * x).cos() + (2.0 * y).cos()) * (2.0 + (2.0 * z).cos()) / 16.0
        })
        .without_mean();
        assert!(p.max_diff(&expect) < 1e-14);
    }

    #[test]
    fn pressure_balances_convective_divergence() {
        let g = Grid::cubic(16).unwrap();
        let v = crate::solver::config::InitialData::Random { seed: 4, slope: 1.0, kmax: 4.0, l2: 3.0 }
            .build(g)
            .unwrap();
        let conv = convective_term(&v);
        let div = &(&derivative(&conv[0], 0) + &derivative(&conv[1], 1)) + &derivative(&conv[2], 2);
        let lap = crate::spectral::ops::laplacian(&pressure(&v));
        let r = (&div + &lap).max_coeff();
        assert!(r < 1e-8 * div.max_coeff(), "{r}");
    }
}
