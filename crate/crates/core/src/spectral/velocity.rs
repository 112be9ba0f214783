use super::field::{RealField, SpectralField, ZERO};
use super::grid::Grid;
use super::ops;
use crate::error::{Error, Result};

/// Relative divergence tolerance of a velocity state.
pub const DIVERGENCE_TOL: f64 = 1e-12;

/// Divergence-free velocity field `v = (v1, v2, v3)` at a time.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocityState {
    v: [SpectralField; 3],
    pub time: f64,
}

fn same_grid(w: &[SpectralField; 3]) -> Result<Grid> {
    let g = *w[0].grid();
    if w[1].grid() != &g || w[2].grid() != &g {
        return Err(Error::Shape("velocity components live on different grids".into()));
    }
    Ok(g)
}

/// Largest `|k . w(k)|` and largest `|k| |w(k)|` over the lattice.
pub fn divergence_parts(w: &[SpectralField; 3]) -> (f64, f64) {
    let g = *w[0].grid();
    let (mut div, mut scale) = (0.0_f64, 0.0_f64);
    let c = [w[0].coeffs(), w[1].coeffs(), w[2].coeffs()];
    g.for_each_k(|f, k| {
        let d = c[0][f] * k[0] + c[1][f] * k[1] + c[2][f] * k[2];
        let kn = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        let vn = (c[0][f].norm_sqr() + c[1][f].norm_sqr() + c[2][f].norm_sqr()).sqrt();
        div = div.max(d.norm());
        scale = scale.max(kn * vn);
    });
    (div, scale)
}

/// Orthogonal projection onto divergence-free fields. Modes on a Nyquist
/// plane are dropped, since their wave vector is ambiguous; the mean is kept.
pub fn leray_project(w: [SpectralField; 3]) -> Result<VelocityState> {
    let g = same_grid(&w)?;
    let [a, b, c] = w;
    let (mut a, mut b, mut c) = (a.into_coeffs(), b.into_coeffs(), c.into_coeffs());
    g.for_each_k(|f, k| {
        if g.touches_nyquist(f) {
            a[f] = ZERO;
            b[f] = ZERO;
            c[f] = ZERO;
            return;
        }
        let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if k2 == 0.0 {
            return;
        }
        let d = (a[f] * k[0] + b[f] * k[1] + c[f] * k[2]) / k2;
        a[f] -= d * k[0];
        b[f] -= d * k[1];
        c[f] -= d * k[2];
    });
    Ok(VelocityState {
        v: [
            SpectralField::from_coeffs_unchecked(g, a),
            SpectralField::from_coeffs_unchecked(g, b),
            SpectralField::from_coeffs_unchecked(g, c),
        ],
        time: 0.0,
    })
}

impl VelocityState {
    /// Checks the shared grid and the divergence constraint.
    pub fn new(v: [SpectralField; 3], time: f64) -> Result<Self> {
        same_grid(&v)?;
        let (div, scale) = divergence_parts(&v);
        if div > DIVERGENCE_TOL * scale {
            return Err(Error::Validation(format!(
                "velocity is not divergence-free: max |k.v| = {div:e} vs scale {scale:e}"
            )));
        }
        if !v.iter().all(SpectralField::is_finite) {
            return Err(Error::Validation("non-finite velocity coefficient".into()));
        }
        Ok(Self { v, time })
    }

    pub(crate) fn from_parts_unchecked(v: [SpectralField; 3], time: f64) -> Self {
        Self { v, time }
    }

    pub fn zeros(grid: Grid) -> Self {
        let z = SpectralField::zeros(grid);
        Self {
            v: [z.clone(), z.clone(), z],
            time: 0.0,
        }
    }

    /// Samples a vector function and projects it.
    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64, f64) -> [f64; 3]) -> Result<Self> {
        let comps = [0, 1, 2].map(|i| SpectralField::from_fn(grid, |x, y, z| f(x, y, z)[i]));
        leray_project(comps)
    }

    pub fn with_time(mut self, time: f64) -> Self {
        self.time = time;
        self
    }

    pub fn grid(&self) -> &Grid {
        self.v[0].grid()
    }

    pub fn components(&self) -> &[SpectralField; 3] {
        &self.v
    }

    pub fn into_components(self) -> [SpectralField; 3] {
        self.v
    }

    pub fn component(&self, i: usize) -> &SpectralField {
        &self.v[i]
    }

    pub fn to_real(&self) -> [RealField; 3] {
        [self.v[0].to_real(), self.v[1].to_real(), self.v[2].to_real()]
    }

    /// `max |k.v| / max |k||v|`, zero for the zero field.
    pub fn divergence_defect(&self) -> f64 {
        let (d, s) = divergence_parts(&self.v);
        if s == 0.0 {
            0.0
        } else {
            d / s
        }
    }

    pub fn is_finite(&self) -> bool {
        self.v.iter().all(SpectralField::is_finite)
    }

    /// `int |v|^2`.
    pub fn l2_sq(&self) -> f64 {
        self.v.iter().map(SpectralField::l2_norm_sq).sum()
    }

    /// `int |grad v|^2 = volume * sum |k|^2 |v_k|^2`.
    pub fn grad_l2_sq(&self) -> f64 {
        self.v
            .iter()
            .map(|c| c.weighted_sum(|_, k| k[0] * k[0] + k[1] * k[1] + k[2] * k[2]))
            .sum()
    }

    /// `v . e`.
    pub fn along(&self, e: [f64; 3]) -> SpectralField {
        let mut out = self.v[0].scale(e[0]);
        out.axpy(e[1], &self.v[1]);
        out.axpy(e[2], &self.v[2]);
        out
    }

    /// `d_l v^k` for `l, k` 0-based.
    pub fn partial(&self, k: usize, l: usize) -> SpectralField {
        ops::derivative(&self.v[k], l)
    }

    /// `lambda v(lambda^2 t, lambda x)`: the same coefficients times `lambda`
    /// on a box shrunk by `lambda`, at time `t / lambda^2`.
    pub fn rescaled(&self, lambda: f64) -> Result<Self> {
        let v = [0, 1, 2].map(|i| self.v[i].rescaled(lambda, lambda));
        let [a, b, c] = v;
        Ok(Self {
            v: [a?, b?, c?],
            time: self.time / (lambda * lambda),
        })
    }

    /// Embeds into a finer grid on the same box.
    pub fn zero_padded(&self, target: Grid) -> Result<Self> {
        let [a, b, c] = [0, 1, 2].map(|i| self.v[i].zero_padded(target));
        Ok(Self {
            v: [a?, b?, c?],
            time: self.time,
        })
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        (0..3)
            .map(|i| self.v[i].max_diff(&other.v[i]))
            .fold(0.0, f64::max)
    }

    pub fn max_coeff(&self) -> f64 {
        self.v.iter().map(SpectralField::max_coeff).fold(0.0, f64::max)
    }

    /// `sup |v|` over the nodes.
    pub fn max_speed(&self) -> f64 {
        let r = self.to_real();
        (0..r[0].values.len())
            .map(|i| {
                (r[0].values[i].powi(2) + r[1].values[i].powi(2) + r[2].values[i].powi(2)).sqrt()
            })
            .fold(0.0, f64::max)
    }
}
