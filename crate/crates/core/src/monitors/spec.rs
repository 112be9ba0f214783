use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonitorKind {
    /// `||v.e||^p` in `H^{1/2+2/p}`.
    CriterionIntegral,
    /// `||Omega||_{L^{3/2}}`.
    VorticityL32,
    /// `||grad omega_{3/4}||^2_{L^2}`.
    Omega34Energy,
    /// `||d3v3||_{H_theta}`.
    HThetaEnergy,
    /// `||d3^2 v3||^2_{H_theta}`.
    D3sqHTheta,
    /// `sum_{k,l} ||d_l v^k||^{p_kl}_{B_{p_kl}}`.
    EndpointBp,
    /// `||Omega||_{L^inf}`.
    BkmSupNorm,
    /// Double-exponential bound on the `L^{3/2}` vorticity quantities.
    GronwallEnvelope,
    /// Relative residual of the kinetic energy identity.
    EnergyBalance,
    /// Largest relative residual of the `L^{3/2}` identity over the components of `Omega`.
    KlipsBalance,
}

impl MonitorKind {
    pub const ALL: [MonitorKind; 10] = [
        MonitorKind::CriterionIntegral,
        MonitorKind::VorticityL32,
        MonitorKind::Omega34Energy,
        MonitorKind::HThetaEnergy,
        MonitorKind::D3sqHTheta,
        MonitorKind::EndpointBp,
        MonitorKind::BkmSupNorm,
        MonitorKind::GronwallEnvelope,
        MonitorKind::EnergyBalance,
        MonitorKind::KlipsBalance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MonitorKind::CriterionIntegral => "criterion-integral",
            MonitorKind::VorticityL32 => "vorticity-l32",
            MonitorKind::Omega34Energy => "omega34-energy",
            MonitorKind::HThetaEnergy => "htheta-energy",
            MonitorKind::D3sqHTheta => "d3sq-htheta",
            MonitorKind::EndpointBp => "endpoint-bp",
            MonitorKind::BkmSupNorm => "bkm-sup-norm",
            MonitorKind::GronwallEnvelope => "gronwall-envelope",
            MonitorKind::EnergyBalance => "energy-balance",
            MonitorKind::KlipsBalance => "klips-balance",
        }
    }
}

fn default_e() -> [f64; 3] {
    [0.0, 0.0, 1.0]
}
fn default_p() -> f64 {
    5.0
}
fn default_theta() -> f64 {
    0.125
}
fn default_p_matrix() -> [[f64; 3]; 3] {
    [[5.0; 3]; 3]
}
fn default_c() -> f64 {
    1.0
}

/// A monitor and its parameters. `p` lies in `(4, 6)`, `theta` in
/// `(1/2 - 2/p, 1/6)` and `e` is a unit vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonitorSpec {
    pub kind: MonitorKind,
    #[serde(default = "default_e")]
    pub e: [f64; 3],
    #[serde(default = "default_p")]
    pub p: f64,
    #[serde(default = "default_theta")]
    pub theta: f64,
    /// Exponents `p_{k,l}` of the endpoint monitor, indexed `[k][l]`.
    #[serde(default = "default_p_matrix")]
    pub p_matrix: [[f64; 3]; 3],
    /// Constant of the Gronwall envelope; user-supplied and only reported.
    #[serde(default = "default_c")]
    pub gronwall_c: f64,
}

impl MonitorSpec {
    pub fn new(kind: MonitorKind) -> Self {
        Self {
            kind,
            e: default_e(),
            p: default_p(),
            theta: default_theta(),
            p_matrix: default_p_matrix(),
            gronwall_c: default_c(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 4.0 && self.p < 6.0) {
            return Err(Error::Parameter(format!("p must lie in (4, 6), got {}", self.p)));
        }
        let lo = 0.5 - 2.0 / self.p;
        if !(self.theta > lo && self.theta < 1.0 / 6.0) {
            return Err(Error::Parameter(format!(
                "theta must lie in ({lo}, 1/6) for p = {}, got {}",
                self.p, self.theta
            )));
        }
        let norm = self.e.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Parameter(format!("e must be a unit vector, |e| = {norm}")));
        }
        for row in &self.p_matrix {
            for &p in row {
                if !(p > 1.0 && p.is_finite()) {
                    return Err(Error::Parameter(format!("endpoint exponents need 1 < p < inf, got {p}")));
                }
            }
        }
        if !(self.gronwall_c > 0.0 && self.gronwall_c.is_finite()) {
            return Err(Error::Parameter(format!("Gronwall constant must be positive, got {}", self.gronwall_c)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        for k in MonitorKind::ALL {
            MonitorSpec::new(k).validate().unwrap();
        }
    }

    #[test]
    fn ranges_are_enforced() {
        let mut s = MonitorSpec::new(MonitorKind::CriterionIntegral);
        s.p = 6.0;
        assert!(s.validate().is_err());
        s.p = 5.0;
        s.theta = 0.09;
        assert!(s.validate().is_err());
        s.theta = 0.125;
        s.e = [1.0, 1.0, 0.0];
        assert!(s.validate().is_err());
    }

    #[test]
    fn toml_roundtrip() {
        let s: MonitorSpec = toml::from_str("kind = \"endpoint-bp\"\ntheta = 0.15").unwrap();
        assert_eq!(s.kind, MonitorKind::EndpointBp);
        assert_eq!(s.theta, 0.15);
        assert!(toml::from_str::<MonitorSpec>("kind = \"bkm-sup-norm\"\nq = 1").is_err());
    }
}
