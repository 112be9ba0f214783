use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::random::{random_solenoidal, Band};
use crate::spectral::{Grid, VelocityState};

/// Time discretization of the momentum equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Exact viscous factor, classical RK4 on the nonlinear term.
    #[default]
    IfRk4,
}

fn default_nu() -> f64 {
    1.0
}
fn default_dealias() -> bool {
    true
}
fn default_cadence() -> usize {
    1
}
fn default_cfl() -> f64 {
    0.5
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    #[serde(default = "default_nu")]
    pub nu: f64,
    pub dt: f64,
    pub t_end: f64,
    #[serde(default)]
    pub scheme: Scheme,
    /// The 2/3 rule cannot be switched off; `false` is rejected.
    #[serde(default = "default_dealias")]
    pub dealias: bool,
    /// Steps between stored snapshots.
    #[serde(default = "default_cadence")]
    pub snapshot_every: usize,
    /// Advisory bound on `dt max|v| / dx`.
    #[serde(default = "default_cfl")]
    pub cfl_limit: f64,
}

impl SolverConfig {
    pub fn new(dt: f64, t_end: f64) -> Self {
        Self {
            nu: 1.0,
            dt,
            t_end,
            scheme: Scheme::IfRk4,
            dealias: true,
            snapshot_every: 1,
            cfl_limit: 0.5,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::Config(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.nu >= 0.0 && self.nu.is_finite()) {
            return Err(Error::Config(format!("viscosity must be >= 0, got {}", self.nu)));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(Error::Config(format!("t_end must be >= 0, got {}", self.t_end)));
        }
        if !self.dealias {
            return Err(Error::Config("dealiasing is always on; remove `dealias = false`".into()));
        }
        if self.snapshot_every == 0 {
            return Err(Error::Config("snapshot_every must be >= 1".into()));
        }
        if !(self.cfl_limit > 0.0) {
            return Err(Error::Config("cfl_limit must be positive".into()));
        }
        let ratio = self.t_end / self.dt;
        if (ratio - ratio.round()).abs() > 1e-9 * ratio.max(1.0) {
            return Err(Error::Config(format!(
                "t_end = {} is not a whole number of steps of dt = {}",
                self.t_end, self.dt
            )));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }

    /// Parameters of the rescaled run `lambda v(lambda^2 t, lambda x)`.
    pub fn rescaled(&self, lambda: f64) -> Self {
        Self {
            dt: self.dt / (lambda * lambda),
            t_end: self.t_end / (lambda * lambda),
            ..self.clone()
        }
    }
}

fn one() -> f64 {
    1.0
}
fn default_slope() -> f64 {
    5.0 / 3.0
}
fn default_kmax() -> f64 {
    4.0
}

/// Library of initial velocity fields. Wavenumbers are integer multiples of
/// the fundamental wavenumber of each axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InitialData {
    Zero {},
    /// `A (sin x cos y cos z, -cos x sin y cos z, 0)`.
    TaylorGreen {
        #[serde(default = "one")]
        amplitude: f64,
    },
    /// `A (sin(m y), 0, 0)`.
    Shear {
        #[serde(default = "one")]
        amplitude: f64,
        #[serde(default = "one_mode")]
        mode: u32,
    },
    /// Random solenoidal field, shell spectrum `k^{-slope}` up to `kmax`
    /// fundamental wavenumbers, `L^2` norm `l2`.
    Random {
        seed: u64,
        #[serde(default = "default_slope")]
        slope: f64,
        #[serde(default = "default_kmax")]
        kmax: f64,
        #[serde(default = "one")]
        l2: f64,
    },
    /// Taylor-Green plus a random solenoidal perturbation of relative size `perturbation`.
    PerturbedTaylorGreen {
        seed: u64,
        #[serde(default = "one")]
        amplitude: f64,
        #[serde(default = "default_perturbation")]
        perturbation: f64,
        #[serde(default = "default_kmax")]
        kmax: f64,
    },
}

fn one_mode() -> u32 {
    1
}
fn default_perturbation() -> f64 {
    0.1
}

impl InitialData {
    pub fn build(&self, grid: Grid) -> Result<VelocityState> {
        let k = [grid.k0(0), grid.k0(1), grid.k0(2)];
        match *self {
            InitialData::Zero {} => Ok(VelocityState::zeros(grid)),
            InitialData::TaylorGreen { amplitude } => taylor_green(grid, amplitude),
            InitialData::Shear { amplitude, mode } => {
                let m = mode as f64 * k[1];
                VelocityState::from_fn(grid, |_, y, _| [amplitude * (m * y).sin(), 0.0, 0.0])
            }
            InitialData::Random { seed, slope, kmax, l2 } => {
                let band = Band::isotropic(kmax * k[0].min(k[1]).min(k[2]), slope);
                random_solenoidal(grid, &band, l2, &mut ChaCha8Rng::seed_from_u64(seed))
            }
            InitialData::PerturbedTaylorGreen {
                seed,
                amplitude,
                perturbation,
                kmax,
            } => {
                let tg = taylor_green(grid, amplitude)?;
                let band = Band::isotropic(kmax * k[0].min(k[1]).min(k[2]), default_slope());
                let l2 = perturbation * tg.l2_sq().sqrt();
                let noise = random_solenoidal(grid, &band, l2, &mut ChaCha8Rng::seed_from_u64(seed))?;
                let [a, b, c] = [0, 1, 2].map(|i| tg.component(i) + noise.component(i));
                VelocityState::new([a, b, c], 0.0)
            }
        }
    }
}

pub fn taylor_green(grid: Grid, amplitude: f64) -> Result<VelocityState> {
    let k = [grid.k0(0), grid.k0(1), grid.k0(2)];
    VelocityState::from_fn(grid, |x, y, z| {
        let (x, y, z) = (k[0] * x, k[1] * y, k[2] * z);
        [
            amplitude * x.sin() * y.cos() * z.cos(),
            -amplitude * x.cos() * y.sin() * z.cos(),
            0.0,
        ]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(SolverConfig::new(1e-3, 0.5).validate().is_ok());
        assert!(SolverConfig::new(0.0, 0.5).validate().is_err());
        assert!(SolverConfig::new(0.3, 0.5).validate().is_err());
        let mut c = SolverConfig::new(1e-3, 0.5);
        c.dealias = false;
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        assert_eq!(SolverConfig::new(1e-3, 0.5).steps(), 500);
    }

    #[test]
    fn initial_data_parses_from_toml() {
        let d: InitialData = toml::from_str("kind = \"random\"\nseed = 3\nslope = 2.0").unwrap();
        assert_eq!(
            d,
            InitialData::Random {
                seed: 3,
                slope: 2.0,
                kmax: 4.0,
                l2: 1.0
            }
        );
        assert!(toml::from_str::<InitialData>("kind = \"zero\"\nbogus = 1").is_err());
    }

    #[test]
    fn library_fields_are_solenoidal() {
        let g = Grid::cubic(16).unwrap();
        for d in [
            InitialData::Zero {},
            InitialData::TaylorGreen { amplitude: 2.0 },
            InitialData::Shear { amplitude: 1.0, mode: 2 },
            InitialData::Random { seed: 1, slope: 1.0, kmax: 4.0, l2: 1.0 },
            InitialData::PerturbedTaylorGreen { seed: 2, amplitude: 5.0, perturbation: 0.2, kmax: 4.0 },
        ] {
            let v = d.build(g).unwrap();
            assert!(v.divergence_defect() < 1e-12, "{d:?}");
        }
    }
}
