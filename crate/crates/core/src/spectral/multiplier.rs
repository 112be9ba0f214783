use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::{SpectralField, ZERO};
use crate::error::{Error, Result};

/// One elementary Fourier symbol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Symbol {
    /// `|k|^s`
    AbsPow(f64),
    /// `|k_h|^s`
    HorizPow(f64),
    /// `|k3|^s`
    VertPow(f64),
    /// `d/dx_axis`, symbol `i k_axis`; axis is 0-based.
    Deriv(usize),
    /// `Delta`, symbol `-|k|^2`.
    Laplacian,
    /// `Delta^{-1}`, symbol `-1/|k|^2`.
    InvLaplacian,
    /// `Delta_h^{-1}`, symbol `-1/|k_h|^2`.
    InvHorizLaplacian,
    /// `d3^2 Delta^{-1}`, symbol `k3^2/|k|^2`.
    D33InvLaplacian,
}

/// What to do at lattice points where a factor is singular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroModeRule {
    Unspecified,
    /// Singular points receive a zero coefficient.
    Zero,
}

/// A product of elementary symbols together with its zero-mode rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplierSpec {
    pub factors: Vec<Symbol>,
    pub zero_mode: ZeroModeRule,
}

impl Symbol {
    /// Value at `k`, or `None` where the symbol is singular.
    /// Derivatives vanish on the Nyquist line of their axis.
    fn eval(&self, k: [f64; 3], nyquist: [bool; 3]) -> Option<Complex64> {
        let kh2 = k[0] * k[0] + k[1] * k[1];
        let k2 = kh2 + k[2] * k[2];
        let pow = |base: f64, s: f64| -> Option<f64> {
            if base == 0.0 {
                if s < 0.0 {
                    None
                } else if s == 0.0 {
                    Some(1.0)
                } else {
                    Some(0.0)
                }
            } else {
                Some(base.powf(s))
            }
        };
        let real = |x: f64| Complex64::new(x, 0.0);
        match *self {
            Symbol::AbsPow(s) => pow(k2.sqrt(), s).map(real),
            Symbol::HorizPow(s) => pow(kh2.sqrt(), s).map(real),
            Symbol::VertPow(s) => pow(k[2].abs(), s).map(real),
            Symbol::Deriv(a) => Some(if nyquist[a] {
                ZERO
            } else {
                Complex64::new(0.0, k[a])
            }),
            Symbol::Laplacian => Some(real(-k2)),
            Symbol::InvLaplacian => (k2 > 0.0).then(|| real(-1.0 / k2)),
            Symbol::InvHorizLaplacian => (kh2 > 0.0).then(|| real(-1.0 / kh2)),
            Symbol::D33InvLaplacian => (k2 > 0.0).then(|| real(k[2] * k[2] / k2)),
        }
    }

    fn may_be_singular(&self) -> bool {
        match *self {
            Symbol::AbsPow(s) | Symbol::HorizPow(s) | Symbol::VertPow(s) => s < 0.0,
            Symbol::InvLaplacian | Symbol::InvHorizLaplacian | Symbol::D33InvLaplacian => true,
            Symbol::Deriv(_) | Symbol::Laplacian => false,
        }
    }
}

impl MultiplierSpec {
    pub fn new(factors: Vec<Symbol>) -> Self {
        Self {
            factors,
            zero_mode: ZeroModeRule::Unspecified,
        }
    }

    pub fn single(symbol: Symbol) -> Self {
        Self::new(vec![symbol])
    }

    pub fn with_zero_mode(mut self, rule: ZeroModeRule) -> Self {
        self.zero_mode = rule;
        self
    }

    /// Composition `self o other`.
    pub fn then(mut self, other: &MultiplierSpec) -> Self {
        self.factors.extend_from_slice(&other.factors);
        if other.zero_mode == ZeroModeRule::Zero {
            self.zero_mode = ZeroModeRule::Zero;
        }
        self
    }

    pub fn is_singular(&self) -> bool {
        self.factors.iter().any(Symbol::may_be_singular)
    }

    pub fn validate(&self) -> Result<()> {
        for f in &self.factors {
            if let Symbol::Deriv(a) = f {
                if *a > 2 {
                    return Err(Error::Parameter(format!("derivative axis {a} out of range")));
                }
            }
            if let Symbol::AbsPow(s) | Symbol::HorizPow(s) | Symbol::VertPow(s) = f {
                if !s.is_finite() {
                    return Err(Error::Parameter(format!("non-finite exponent {s}")));
                }
            }
        }
        if self.is_singular() && self.zero_mode == ZeroModeRule::Unspecified {
            return Err(Error::Config(format!(
                "multiplier {:?} is singular on the lattice but has no zero-mode rule",
                self.factors
            )));
        }
        Ok(())
    }

    /// Symbol value at `k`, `None` at singular points.
    pub fn eval(&self, k: [f64; 3], nyquist: [bool; 3]) -> Option<Complex64> {
        let mut acc = Complex64::new(1.0, 0.0);
        for f in &self.factors {
            acc *= f.eval(k, nyquist)?;
        }
        Some(acc)
    }

    pub fn apply(&self, f: &SpectralField) -> Result<SpectralField> {
        self.validate()?;
        let g = *f.grid();
        let n = g.n();
        let mut coeffs = f.coeffs().to_vec();
        g.for_each_k(|flat, k| {
            let i = g.unflat(flat);
            let nyq = [i[0] == n[0] / 2, i[1] == n[1] / 2, i[2] == n[2] / 2];
            coeffs[flat] *= self.eval(k, nyq).unwrap_or(ZERO);
        });
        Ok(SpectralField::from_coeffs_unchecked(g, coeffs))
    }
}

/// Applies a multiplier to a field.
pub fn apply_multiplier(f: &SpectralField, m: &MultiplierSpec) -> Result<SpectralField> {
    m.apply(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::grid::Grid;

    fn close(a: &SpectralField, b: &SpectralField, tol: f64) {
        let d = a.max_diff(b);
        assert!(d < tol, "max coefficient difference {d}");
    }

    #[test]
    fn zero_power_is_identity_on_mean_zero() {
        let g = Grid::cubic(16).unwrap();
        let f = SpectralField::from_fn(g, |x, y, z| (x + y).sin() * z.cos() + (3.0 * y).cos());
        let out = MultiplierSpec::single(Symbol::AbsPow(0.0)).apply(&f).unwrap();
        close(&out, &f, 1e-15);
    }

    #[test]
    fn derivative_of_sine() {
        let g = Grid::cubic(16).unwrap();
        let f = SpectralField::from_fn(g, |x, _, _| x.sin());
        let d = MultiplierSpec::single(Symbol::Deriv(0)).apply(&f).unwrap();
        close(&d, &SpectralField::from_fn(g, |x, _, _| x.cos()), 1e-15);
    }

    #[test]
    fn inverse_horizontal_laplacian_of_sine() {
        let g = Grid::cubic(16).unwrap();
        let f = SpectralField::from_fn(g, |x, _, _| x.sin());
        let m = MultiplierSpec::single(Symbol::InvHorizLaplacian).with_zero_mode(ZeroModeRule::Zero);
        close(&m.apply(&f).unwrap(), &f.scale(-1.0), 1e-15);
    }

    #[test]
    fn singular_without_rule_is_config_error() {
        let g = Grid::cubic(8).unwrap();
        let f = SpectralField::zeros(g);
        for s in [Symbol::InvLaplacian, Symbol::InvHorizLaplacian, Symbol::AbsPow(-0.5)] {
            assert!(matches!(
                MultiplierSpec::single(s).apply(&f),
                Err(Error::Config(_))
            ));
        }
    }

    #[test]
    fn symbols_preserve_hermitian_symmetry() {
        let g = Grid::new([8, 10, 12], [1.0, 2.0, 3.0]).unwrap();
        let f = SpectralField::from_fn(g, |x, y, z| (7.0 * x + y).sin() + (z * 2.0).cos() * y.sin());
        let m = MultiplierSpec::new(vec![
            Symbol::Deriv(0),
            Symbol::Deriv(2),
            Symbol::HorizPow(-0.3),
            Symbol::D33InvLaplacian,
            Symbol::Deriv(1),
        ])
        .with_zero_mode(ZeroModeRule::Zero);
        assert!(m.apply(&f).unwrap().hermitian_defect() < 1e-14);
    }
}
