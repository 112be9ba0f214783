//! Evaluation of every `NormSpec` family.

use std::cell::RefCell;
use std::collections::HashMap;

use rustfft::num_complex::Complex64;

use super::blocks::{block_weight, BlockIndexRange, BlockKind, BlockMode};
use super::spec::NormSpec;
use crate::error::Result;
use crate::spectral::ops::lp_norm_real;
use crate::spectral::{Grid, SpectralField};

/// `(sum x_i^q)^{1/q}`, or the max for `q = inf`.
pub fn ell_q(values: impl IntoIterator<Item = f64>, q: f64) -> f64 {
    let v: Vec<f64> = values.into_iter().collect();
    let m = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if q.is_infinite() || m == 0.0 {
        return m;
    }
    m * v.iter().map(|x| (x.abs() / m).powf(q)).sum::<f64>().powf(1.0 / q)
}

/// `L^p` norm of a block; `p = 2` uses Parseval, which is exact for the
/// grid quadrature.
fn block_lp(b: &SpectralField, p: f64) -> Result<f64> {
    if p == 2.0 {
        Ok(b.l2_norm())
    } else {
        lp_norm_real(&b.to_real(), p)
    }
}

/// Homogeneous weight `r^{2s}`, `None` where it is singular or at `r = 0` with `s < 0`.
#[inline]
fn radial_weight(r: f64, s: f64) -> Option<f64> {
    if r == 0.0 {
        if s < 0.0 {
            None
        } else if s == 0.0 {
            Some(1.0)
        } else {
            Some(0.0)
        }
    } else {
        Some(r.powf(2.0 * s))
    }
}

/// `|k_h|^{2s} |k3|^{2s'}`; zero at `k = 0` and wherever a factor is singular.
#[inline]
pub fn aniso_sobolev_weight(k: [f64; 3], s: f64, sp: f64) -> f64 {
    if k == [0.0; 3] {
        return 0.0;
    }
    let kh = (k[0] * k[0] + k[1] * k[1]).sqrt();
    match (radial_weight(kh, s), radial_weight(k[2].abs(), sp)) {
        (Some(a), Some(b)) => a * b,
        _ => 0.0,
    }
}

/// `|k|^{2s}`, zero at `k = 0`.
#[inline]
pub fn sobolev_weight(k: [f64; 3], s: f64) -> f64 {
    let r2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    if r2 == 0.0 {
        0.0
    } else {
        r2.powf(s)
    }
}

/// `||a||^2_{H^{s,s'}}`.
pub fn aniso_sobolev_sq(f: &SpectralField, s: f64, sp: f64) -> f64 {
    f.weighted_sum(|_, k| aniso_sobolev_weight(k, s, sp))
}

/// The `H^{s,s'}` inner product `(a | b)`.
pub fn aniso_sobolev_inner(a: &SpectralField, b: &SpectralField, s: f64, sp: f64) -> f64 {
    a.weighted_inner(b, |_, k| aniso_sobolev_weight(k, s, sp))
}

/// `||a||^2_{H_theta}`.
pub fn htheta_sq(f: &SpectralField, theta: f64) -> f64 {
    aniso_sobolev_sq(f, theta - 0.5, -theta)
}

pub fn htheta_inner(a: &SpectralField, b: &SpectralField, theta: f64) -> f64 {
    aniso_sobolev_inner(a, b, theta - 0.5, -theta)
}

/// `||a||^2_{H^s}` (homogeneous, isotropic).
pub fn sobolev_sq(f: &SpectralField, s: f64) -> f64 {
    f.weighted_sum(|_, k| sobolev_weight(k, s))
}

/// Sample exponents `m` of the heat times `t = 2^{-2m}`, spanning the lattice
/// radii with two octaves of margin on each side.
pub fn heat_levels(grid: &Grid) -> std::ops::RangeInclusive<i32> {
    let (kmin, _, _) = grid.min_magnitudes();
    let (kmax, _, _) = grid.max_magnitudes();
    let lo = kmin.log2().floor() as i32 - 2;
    let hi = kmax.log2().ceil() as i32 + 2;
    lo..=hi
}

/// `(t, ||e^{t Delta} f||_inf)` at `t = 2^{-2m}` over `heat_levels`; the mean is dropped.
pub fn heat_profile(f: &SpectralField) -> Vec<(f64, f64)> {
    let g = *f.grid();
    let k2: Vec<f64> = {
        let mut v = vec![0.0; g.size()];
        g.for_each_k(|i, k| v[i] = k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
        v
    };
    heat_levels(&g)
        .map(|m| {
            let t = 2f64.powi(-2 * m);
            let smoothed = f.map_real_symbol(|i, _| if k2[i] == 0.0 { 0.0 } else { (-t * k2[i]).exp() });
            (t, smoothed.to_real().max_abs())
        })
        .collect()
}

/// `max_m t^{sigma/2} sup` over a heat profile.
pub fn heat_norm_from_profile(profile: &[(f64, f64)], sigma: f64) -> f64 {
    profile.iter().fold(0.0_f64, |best, &(t, sup)| best.max(t.powf(0.5 * sigma) * sup))
}

/// `max_m t^{sigma/2} ||e^{t Delta} f||_inf` at `t = 2^{-2m}`; the mean is dropped.
pub fn heat_norm(f: &SpectralField, sigma: f64) -> f64 {
    heat_norm_from_profile(&heat_profile(f), sigma)
}

/// Per-field memo of block `L^p` norms, so several Besov norms sharing `p`
/// cost one set of block transforms.
pub struct FieldNorms<'a> {
    field: &'a SpectralField,
    /// Flat indices and wave vectors of the nonzero coefficients.
    support: Vec<(usize, [f64; 3])>,
    iso: RefCell<HashMap<(BlockMode, u64), Vec<(i32, f64)>>>,
    aniso: RefCell<HashMap<u64, AnisoBlockNorms>>,
}

/// `||Delta^h_k Delta^v_l f||_{L^p}` indexed `[k - kh_min][l - lv_min]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnisoBlockNorms {
    pub horizontal: BlockIndexRange,
    pub vertical: BlockIndexRange,
    pub values: Vec<Vec<f64>>,
}

impl AnisoBlockNorms {
    pub fn get(&self, kh: i32, lv: i32) -> f64 {
        if !self.horizontal.contains(kh) || !self.vertical.contains(lv) {
            return 0.0;
        }
        self.values[(kh - self.horizontal.j_min) as usize][(lv - self.vertical.j_min) as usize]
    }
}

impl<'a> FieldNorms<'a> {
    pub fn new(field: &'a SpectralField) -> Self {
        let mut support = Vec::new();
        field.grid().for_each_k(|f, k| {
            if field.coeff(f) != Complex64::new(0.0, 0.0) {
                support.push((f, k));
            }
        });
        Self {
            field,
            support,
            iso: RefCell::new(HashMap::new()),
            aniso: RefCell::new(HashMap::new()),
        }
    }

    pub fn field(&self) -> &SpectralField {
        self.field
    }

    /// `L^p` norm of the field filtered by `weight`; zero without a transform
    /// when the filter misses the support.
    fn filtered_lp(&self, weight: impl Fn([f64; 3]) -> f64, p: f64) -> Result<f64> {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.field.grid().size()];
        let mut empty = true;
        for &(f, k) in &self.support {
            let w = weight(k);
            if w != 0.0 {
                coeffs[f] = self.field.coeff(f) * w;
                empty = false;
            }
        }
        if empty {
            return Ok(0.0);
        }
        block_lp(&SpectralField::from_coeffs_unchecked(*self.field.grid(), coeffs), p)
    }

    /// `(j, ||Delta_j f||_{L^p})` over the retained range of `mode`.
    pub fn block_norms(&self, mode: BlockMode, p: f64) -> Result<Vec<(i32, f64)>> {
        let key = (mode, p.to_bits());
        if let Some(v) = self.iso.borrow().get(&key) {
            return Ok(v.clone());
        }
        let g = *self.field.grid();
        let range = BlockIndexRange::for_grid(&g, mode);
        let mut out = Vec::with_capacity(range.len());
        for j in range.iter() {
            let n = self.filtered_lp(|k| block_weight(BlockKind::Delta, j, mode.radius(k)), p)?;
            out.push((j, n));
        }
        self.iso.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    pub fn aniso_block_norms(&self, p: f64) -> Result<AnisoBlockNorms> {
        if let Some(v) = self.aniso.borrow().get(&p.to_bits()) {
            return Ok(v.clone());
        }
        let g = *self.field.grid();
        let horizontal = BlockIndexRange::for_grid(&g, BlockMode::Horizontal);
        let vertical = BlockIndexRange::for_grid(&g, BlockMode::Vertical);
        let mut values = Vec::with_capacity(horizontal.len());
        for kh in horizontal.iter() {
            let mut row = Vec::with_capacity(vertical.len());
            for lv in vertical.iter() {
                row.push(self.filtered_lp(
                    |k| {
                        block_weight(BlockKind::Delta, kh, BlockMode::Horizontal.radius(k))
                            * block_weight(BlockKind::Delta, lv, BlockMode::Vertical.radius(k))
                    },
                    p,
                )?);
            }
            values.push(row);
        }
        let out = AnisoBlockNorms {
            horizontal,
            vertical,
            values,
        };
        self.aniso.borrow_mut().insert(p.to_bits(), out.clone());
        Ok(out)
    }

    pub fn besov(&self, s: f64, p: f64, q: f64) -> Result<f64> {
        self.besov_mode(BlockMode::Iso, s, p, q)
    }

    /// One-directional Besov norm built from `mode` blocks.
    pub fn besov_mode(&self, mode: BlockMode, s: f64, p: f64, q: f64) -> Result<f64> {
        let b = self.block_norms(mode, p)?;
        Ok(ell_q(b.iter().map(|&(j, n)| 2f64.powf(j as f64 * s) * n), q))
    }

    /// Vertical sum inside, horizontal sum outside.
    pub fn aniso_besov(&self, s1: f64, p: f64, q1: f64, s2: f64, q2: f64) -> Result<f64> {
        let b = self.aniso_block_norms(p)?;
        let inner: Vec<f64> = b
            .values
            .iter()
            .map(|row| {
                ell_q(
                    row.iter()
                        .zip(b.vertical.iter())
                        .map(|(&n, l)| 2f64.powf(l as f64 * s2) * n),
                    q2,
                )
            })
            .collect();
        Ok(ell_q(
            inner
                .iter()
                .zip(b.horizontal.iter())
                .map(|(&n, k)| 2f64.powf(k as f64 * s1) * n),
            q1,
        ))
    }

    pub fn norm(&self, spec: &NormSpec) -> Result<f64> {
        spec.validate()?;
        let f = self.field;
        match *spec {
            NormSpec::Besov { s, p, q } => self.besov(s, p, q),
            NormSpec::AnisoBesov { s1, p, q1, s2, q2 } => self.aniso_besov(s1, p, q1, s2, q2),
            NormSpec::SobolevAniso { s, sp } => Ok(aniso_sobolev_sq(f, s, sp).sqrt()),
            NormSpec::HTheta { theta } => Ok(htheta_sq(f, theta).sqrt()),
            NormSpec::HeatBesov { sigma } => Ok(heat_norm(f, sigma)),
            NormSpec::Sobolev { s } => Ok(sobolev_sq(f, s).sqrt()),
            NormSpec::Lebesgue { p } => lp_norm_real(&f.to_real(), p),
        }
    }
}

/// Evaluates a norm of a scalar field.
pub fn norm(f: &SpectralField, spec: &NormSpec) -> Result<f64> {
    FieldNorms::new(f).norm(spec)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::spectral::lp_norm;

    #[test]
    fn h00_is_l2_on_mean_zero() {
        let g = Grid::cubic(16).unwrap();
        let f = SpectralField::from_fn(g, |x, y, z| (x + y).sin() + (2.0 * z).cos() + (3.0 * y).sin());
        let a = norm(&f, &NormSpec::SobolevAniso { s: 0.0, sp: 0.0 }).unwrap();
        let b = lp_norm(&f, 2.0).unwrap();
        assert!((a - b).abs() < 1e-10 * b);
    }

    #[test]
    fn htheta_single_mode_closed_form() {
        let g = Grid::cubic(16).unwrap();
        // |k_h| = 2, |k3| = 4
        let f = SpectralField::from_fn(g, |x, _, z| 2.0 * (2.0 * x + 4.0 * z).cos());
        let mass = lp_norm(&f, 2.0).unwrap();
        let theta: f64 = 0.125;
        let expect = 2f64.powf(-0.5 + theta) * 4f64.powf(-theta) * mass;
        let got = norm(&f, &NormSpec::htheta(theta)).unwrap();
        assert!((got - expect).abs() < 1e-12 * expect, "{got} vs {expect}");
    }

    #[test]
    fn ell_q_limits() {
        assert_eq!(ell_q([3.0, -4.0], f64::INFINITY), 4.0);
        assert!((ell_q([3.0, 4.0], 2.0) - 5.0).abs() < 1e-15);
        assert!((ell_q([3.0, 4.0], 1.0) - 7.0).abs() < 1e-15);
        assert_eq!(ell_q([], 2.0), 0.0);
    }

    #[test]
    fn heat_norm_single_mode_matches_sampled_profile() {
        let g = Grid::cubic(32).unwrap();
        let amp = 1.7;
        let f = SpectralField::from_fn(g, |x, _, _| amp * (3.0 * x).cos());
        let sigma = 1.6;
        let k2 = 9.0_f64;
        let sampled = heat_levels(&g)
            .map(|m| {
                let t = 2f64.powi(-2 * m);
                t.powf(sigma / 2.0) * (-t * k2).exp() * amp
            })
            .fold(0.0, f64::max);
        let got = heat_norm(&f, sigma);
        assert!((got - sampled).abs() < 1e-12 * sampled);
        let ts = sigma / (2.0 * k2);
        let peak = ts.powf(sigma / 2.0) * (-ts * k2).exp() * amp;
        assert!(got <= peak * (1.0 + 1e-14) && got > 0.5 * peak);
    }

    #[test]
    fn lebesgue_spec_matches_lp() {
        let g = Grid::cubic(16).unwrap();
        let f = SpectralField::from_fn(g, |x, _, _| x.sin());
        let v = norm(&f, &NormSpec::Lebesgue { p: 2.0 }).unwrap();
        assert!((v - (4.0 * PI.powi(3)).sqrt()).abs() < 1e-11);
    }
}
