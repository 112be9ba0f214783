//! Declarative norm descriptions and their text encoding.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A norm on scalar fields.
///
/// `Besov` and `AnisoBesov` are homogeneous; the realization condition
/// `s < 3/p` is not enforced since it has no finite-grid counterpart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum NormSpec {
    Besov { s: f64, p: f64, q: f64 },
    AnisoBesov { s1: f64, p: f64, q1: f64, s2: f64, q2: f64 },
    /// `int |k_h|^{2s} |k3|^{2s'} |a_k|^2`, square-rooted.
    SobolevAniso { s: f64, sp: f64 },
    /// `H^{-1/2+theta, -theta}`.
    HTheta { theta: f64 },
    /// `sup_t t^{sigma/2} ||e^{t Delta} f||_inf`.
    HeatBesov { sigma: f64 },
    /// Isotropic homogeneous `H^s`.
    Sobolev { s: f64 },
    Lebesgue { p: f64 },
}

impl NormSpec {
    /// `B_p`, the heat norm with `sigma = 2 - 2/p`.
    pub fn bp(p: f64) -> Result<Self> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::Parameter(format!("B_p needs 1 < p < inf, got {p}")));
        }
        Ok(NormSpec::HeatBesov {
            sigma: 2.0 - 2.0 / p,
        })
    }

    pub fn htheta(theta: f64) -> Self {
        NormSpec::HTheta { theta }
    }

    /// The weight exponents `(s, s')` of the `H^{s,s'}` families.
    pub fn aniso_sobolev_indices(&self) -> Option<(f64, f64)> {
        match *self {
            NormSpec::SobolevAniso { s, sp } => Some((s, sp)),
            NormSpec::HTheta { theta } => Some((-0.5 + theta, -theta)),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let lebesgue = |name: &str, p: f64| -> Result<()> {
            if p.is_nan() || p < 1.0 {
                return Err(Error::Parameter(format!("{name} must be >= 1, got {p}")));
            }
            Ok(())
        };
        let finite = |name: &str, s: f64| -> Result<()> {
            if !s.is_finite() {
                return Err(Error::Parameter(format!("{name} must be finite, got {s}")));
            }
            Ok(())
        };
        match *self {
            NormSpec::Besov { s, p, q } => {
                finite("s", s)?;
                lebesgue("p", p)?;
                lebesgue("q", q)
            }
            NormSpec::AnisoBesov { s1, p, q1, s2, q2 } => {
                finite("s1", s1)?;
                finite("s2", s2)?;
                lebesgue("p", p)?;
                lebesgue("q1", q1)?;
                lebesgue("q2", q2)
            }
            NormSpec::SobolevAniso { s, sp } => {
                finite("s", s)?;
                finite("sp", sp)
            }
            NormSpec::HTheta { theta } => {
                if !(theta > 0.0 && theta < 0.5) {
                    return Err(Error::Parameter(format!(
                        "theta must lie in (0, 1/2), got {theta}"
                    )));
                }
                Ok(())
            }
            NormSpec::HeatBesov { sigma } => {
                if !(sigma > 0.0 && sigma.is_finite()) {
                    return Err(Error::Parameter(format!(
                        "heat norm needs sigma > 0, got {sigma}"
                    )));
                }
                Ok(())
            }
            NormSpec::Sobolev { s } => finite("s", s),
            NormSpec::Lebesgue { p } => lebesgue("p", p),
        }
    }
}

fn fmt_num(x: f64) -> String {
    if x.is_infinite() {
        "inf".into()
    } else {
        format!("{x}")
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NormSpec::Besov { s, p, q } => write!(
                f,
                "besov:s={},p={},q={}",
                fmt_num(s),
                fmt_num(p),
                fmt_num(q)
            ),
            NormSpec::AnisoBesov { s1, p, q1, s2, q2 } => write!(
                f,
                "aniso:s1={},p={},q1={},s2={},q2={}",
                fmt_num(s1),
                fmt_num(p),
                fmt_num(q1),
                fmt_num(s2),
                fmt_num(q2)
            ),
            NormSpec::SobolevAniso { s, sp } => write!(f, "hss:s={},sp={}", fmt_num(s), fmt_num(sp)),
            NormSpec::HTheta { theta } => write!(f, "htheta:theta={}", fmt_num(theta)),
            NormSpec::HeatBesov { sigma } => write!(f, "heat:sigma={}", fmt_num(sigma)),
            NormSpec::Sobolev { s } => write!(f, "sobolev:s={}", fmt_num(s)),
            NormSpec::Lebesgue { p } => write!(f, "leb:p={}", fmt_num(p)),
        }
    }
}

fn parse_num(token: &str, value: &str) -> Result<f64> {
    match value {
        "inf" | "infinity" => Ok(f64::INFINITY),
        v => {
            if let Some((a, b)) = v.split_once('/') {
                let (a, b): (f64, f64) = (
                    a.trim().parse().map_err(|_| bad(token))?,
                    b.trim().parse().map_err(|_| bad(token))?,
                );
                Ok(a / b)
            } else {
                v.parse().map_err(|_| bad(token))
            }
        }
    }
}

fn bad(token: &str) -> Error {
    Error::Parameter(format!("cannot parse norm token '{token}'"))
}

impl FromStr for NormSpec {
    type Err = Error;

    /// Parses `family:key=value,...`; values may be decimals, `a/b` or `inf`.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (family, rest) = text.split_once(':').unwrap_or((text, ""));
        let mut keys: Vec<(&str, f64)> = Vec::new();
        for token in rest.split(',').filter(|t| !t.trim().is_empty()) {
            let (k, v) = token.split_once('=').ok_or_else(|| bad(token))?;
            let k = k.trim();
            if keys.iter().any(|(seen, _)| *seen == k) {
                return Err(Error::Parameter(format!("duplicate norm key '{k}'")));
            }
            keys.push((k, parse_num(token, v.trim())?));
        }
        let allowed: &[&str] = match family {
            "besov" => &["s", "p", "q"],
            "aniso" => &["s1", "p", "q1", "s2", "q2"],
            "hss" => &["s", "sp"],
            "htheta" => &["theta"],
            "heat" => &["sigma", "p"],
            "sobolev" => &["s"],
            "leb" => &["p"],
            other => return Err(Error::Parameter(format!("unknown norm family '{other}'"))),
        };
        if let Some((k, _)) = keys.iter().find(|(k, _)| !allowed.contains(k)) {
            return Err(Error::Parameter(format!("unknown key '{k}' for norm family '{family}'")));
        }
        let get = |name: &str| -> Result<f64> {
            keys.iter()
                .find(|(k, _)| *k == name)
                .map(|(_, v)| *v)
                .ok_or_else(|| Error::Parameter(format!("norm '{text}' is missing '{name}'")))
        };
        let spec = match family {
            "besov" => NormSpec::Besov {
                s: get("s")?,
                p: get("p")?,
                q: get("q")?,
            },
            "aniso" => NormSpec::AnisoBesov {
                s1: get("s1")?,
                p: get("p")?,
                q1: get("q1")?,
                s2: get("s2")?,
                q2: get("q2")?,
            },
            "hss" => NormSpec::SobolevAniso {
                s: get("s")?,
                sp: get("sp")?,
            },
            "htheta" => NormSpec::HTheta {
                theta: get("theta")?,
            },
            "heat" => match (get("sigma"), get("p")) {
                (Ok(sigma), Err(_)) => NormSpec::HeatBesov { sigma },
                (Err(_), Ok(p)) => NormSpec::bp(p)?,
                _ => {
                    return Err(Error::Parameter(format!(
                        "norm '{text}' needs exactly one of 'sigma' or 'p'"
                    )))
                }
            },
            "sobolev" => NormSpec::Sobolev { s: get("s")? },
            _ => NormSpec::Lebesgue { p: get("p")? },
        };
        spec.validate()?;
        Ok(spec)
    }
}
