//! Smooth radial cutoffs `chi` and `phi` of the dyadic partition of unity.

/// `chi = 1` on `|tau| <= CHI_FLAT`.
pub const CHI_FLAT: f64 = 0.75;
/// `chi = 0` on `|tau| >= CHI_SUPPORT`.
pub const CHI_SUPPORT: f64 = 4.0 / 3.0;
/// `phi` vanishes outside `[PHI_INNER, PHI_OUTER]`.
pub const PHI_INNER: f64 = 0.75;
pub const PHI_OUTER: f64 = 8.0 / 3.0;

fn bump(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-1.0 / x).exp()
    }
}

/// Smooth ramp, exactly 0 for `x <= 0` and exactly 1 for `x >= 1`.
pub fn ramp(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let a = bump(x);
        a / (a + bump(1.0 - x))
    }
}

/// The pair `(chi, phi)` with `phi(tau) = chi(tau/2) - chi(tau)`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CutoffPair;

impl CutoffPair {
    pub fn chi(&self, tau: f64) -> f64 {
        chi(tau)
    }

    pub fn phi(&self, tau: f64) -> f64 {
        phi(tau)
    }

    /// Closed support of `chi`.
    pub fn chi_support(&self) -> (f64, f64) {
        (-CHI_SUPPORT, CHI_SUPPORT)
    }

    /// Closed support of `phi` on the positive half-line.
    pub fn phi_support(&self) -> (f64, f64) {
        (PHI_INNER, PHI_OUTER)
    }

    /// `chi(tau) + sum_{j >= 0} phi(2^{-j} tau)`, summed until the terms vanish.
    pub fn inhomogeneous_sum(&self, tau: f64) -> f64 {
        let mut acc = chi(tau);
        let mut j = 0;
        while 2f64.powi(j) * PHI_INNER < tau.abs() {
            acc += phi(tau * 2f64.powi(-j));
            j += 1;
        }
        acc
    }

    /// `sum_{j in Z} phi(2^{-j} tau)` for `tau > 0`.
    pub fn homogeneous_sum(&self, tau: f64) -> f64 {
        let t = tau.abs();
        let lo = (t / PHI_OUTER).log2().floor() as i32 - 1;
        let hi = (t / PHI_INNER).log2().ceil() as i32 + 1;
        (lo..=hi).map(|j| phi(t * 2f64.powi(-j))).sum()
    }
}

pub fn make_cutoffs() -> CutoffPair {
    CutoffPair
}

pub fn chi(tau: f64) -> f64 {
    1.0 - ramp((tau.abs() - CHI_FLAT) / (CHI_SUPPORT - CHI_FLAT))
}

pub fn phi(tau: f64) -> f64 {
    chi(0.5 * tau) - chi(tau)
}
