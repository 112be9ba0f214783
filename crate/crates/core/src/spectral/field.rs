use std::ops::{Add, Mul, Neg, Sub};

use rustfft::num_complex::Complex64;

use super::fft;
use super::grid::Grid;
use crate::error::{Error, Result};

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Samples of a real scalar field at the grid nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct RealField {
    pub grid: Grid,
    pub values: Vec<f64>,
}

impl RealField {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.size() {
            return Err(Error::Shape(format!(
                "expected {} samples for grid {:?}, got {}",
                grid.size(),
                grid.n(),
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.size()],
        }
    }

    /// Samples `f(x1, x2, x3)` at the nodes.
    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64, f64) -> f64) -> Self {
        let n = grid.n();
        let mut values = Vec::with_capacity(grid.size());
        for i in 0..n[0] {
            let x = grid.coord(0, i);
            for j in 0..n[1] {
                let y = grid.coord(1, j);
                for k in 0..n[2] {
                    values.push(f(x, y, grid.coord(2, k)));
                }
            }
        }
        Self { grid, values }
    }

    pub fn to_spectral(&self) -> SpectralField {
        SpectralField::from_real(self)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Equal-weight quadrature of the samples over the box.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.cell_volume()
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        debug_assert_eq!(self.grid, other.grid);
        Self {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Quadrature of the pointwise product `self * other`.
    pub fn inner(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            * self.grid.cell_volume()
    }
}

/// Fourier coefficients of a real scalar field, stored in FFT order.
///
/// Coefficients are Fourier-series coefficients, so Parseval reads
/// `int |f|^2 = volume * sum |c_k|^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            coeffs: vec![ZERO; grid.size()],
        }
    }

    /// Wraps raw coefficients, checking the shape and finiteness and
    /// projecting onto the Hermitian-symmetric subspace.
    pub fn from_coeffs(grid: Grid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.size() {
            return Err(Error::Shape(format!(
                "expected {} coefficients for grid {:?}, got {}",
                grid.size(),
                grid.n(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Validation("non-finite spectral coefficient".into()));
        }
        let mut f = Self { grid, coeffs };
        f.enforce_hermitian();
        Ok(f)
    }

    /// Internal constructor for coefficient arrays that are symmetric by construction.
    pub(crate) fn from_coeffs_unchecked(grid: Grid, coeffs: Vec<Complex64>) -> Self {
        debug_assert_eq!(coeffs.len(), grid.size());
        Self { grid, coeffs }
    }

    pub fn from_real(field: &RealField) -> Self {
        let coeffs = fft::forward_real(&field.values, field.grid.n());
        let mut f = Self {
            grid: field.grid,
            coeffs,
        };
        f.enforce_hermitian();
        f
    }

    /// Forward transform of physical samples; the array length must match the grid.
    pub fn transform(values: &[f64], grid: Grid) -> Result<Self> {
        let field = RealField::new(grid, values.to_vec())?;
        Ok(Self::from_real(&field))
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64, f64) -> f64) -> Self {
        Self::from_real(&RealField::from_fn(grid, f))
    }

    pub fn to_real(&self) -> RealField {
        RealField {
            grid: self.grid,
            values: fft::inverse_real(&self.coeffs, self.grid.n()),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn coeff(&self, flat: usize) -> Complex64 {
        self.coeffs[flat]
    }

    /// Coefficient of the integer mode `(m1, m2, m3)`.
    pub fn mode(&self, m: [i64; 3]) -> Complex64 {
        let g = &self.grid;
        self.coeffs[g.flat([
            g.index_of_mode(0, m[0]),
            g.index_of_mode(1, m[1]),
            g.index_of_mode(2, m[2]),
        ])]
    }

    /// `amp cos(k.x + phase)` for the integer mode `m`, built exactly in
    /// spectral space. Errors if `m` or `-m` falls outside the grid.
    pub fn cosine_mode(grid: Grid, m: [i64; 3], amp: f64, phase: f64) -> Result<Self> {
        let n = grid.n();
        for a in 0..3 {
            let half = (n[a] / 2) as i64;
            if m[a].abs() >= half.max(1) && !(n[a] == 1 && m[a] == 0) {
                return Err(Error::Parameter(format!("mode {m:?} is not resolved on {n:?}")));
            }
        }
        let mut out = Self::zeros(grid);
        let flat = |m: [i64; 3]| {
            grid.flat([grid.index_of_mode(0, m[0]), grid.index_of_mode(1, m[1]), grid.index_of_mode(2, m[2])])
        };
        let c = Complex64::from_polar(0.5 * amp, phase);
        out.coeffs[flat(m)] += c;
        out.coeffs[flat([-m[0], -m[1], -m[2]])] += c.conj();
        Ok(out)
    }

    /// Replaces each coefficient by `c_k -> 0.5 (c_k + conj(c_{-k}))`.
    pub fn enforce_hermitian(&mut self) {
        let g = self.grid;
        for f in 0..self.coeffs.len() {
            let m = g.mirror(f);
            if m < f {
                continue;
            }
            if m == f {
                self.coeffs[f].im = 0.0;
            } else {
                let avg = 0.5 * (self.coeffs[f] + self.coeffs[m].conj());
                self.coeffs[f] = avg;
                self.coeffs[m] = avg.conj();
            }
        }
    }

    /// Largest `|c_k - conj(c_{-k})|`.
    pub fn hermitian_defect(&self) -> f64 {
        let g = self.grid;
        (0..self.coeffs.len())
            .map(|f| (self.coeffs[f] - self.coeffs[g.mirror(f)].conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    pub fn without_mean(&self) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = ZERO;
        out
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Spectral L2 norm via Parseval.
    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    pub fn l2_norm_sq(&self) -> f64 {
        self.grid.volume() * self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()
    }

    /// `int f g dx` computed from the coefficients.
    pub fn inner(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.grid, other.grid);
        self.grid.volume()
            * self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| (a * b.conj()).re)
                .sum::<f64>()
    }

    /// Multiplies each coefficient by a real weight depending on the wave vector.
    pub fn map_real_symbol(&self, symbol: impl Fn(usize, [f64; 3]) -> f64) -> Self {
        let mut coeffs = self.coeffs.clone();
        self.grid.for_each_k(|f, k| coeffs[f] *= symbol(f, k));
        Self::from_coeffs_unchecked(self.grid, coeffs)
    }

    /// Weighted sum `volume * sum_k w(k) |c_k|^2`.
    pub fn weighted_sum(&self, weight: impl Fn(usize, [f64; 3]) -> f64) -> f64 {
        let mut acc = 0.0;
        self.grid
            .for_each_k(|f, k| acc += weight(f, k) * self.coeffs[f].norm_sqr());
        acc * self.grid.volume()
    }

    /// Weighted pairing `volume * sum_k w(k) Re(a_k conj(b_k))`.
    pub fn weighted_inner(&self, other: &Self, weight: impl Fn(usize, [f64; 3]) -> f64) -> f64 {
        debug_assert_eq!(self.grid, other.grid);
        let mut acc = 0.0;
        self.grid.for_each_k(|f, k| {
            acc += weight(f, k) * (self.coeffs[f] * other.coeffs[f].conj()).re
        });
        acc * self.grid.volume()
    }

    /// Zeroes every mode outside the 2/3 band.
    pub fn dealiased(&self) -> Self {
        let mut out = self.clone();
        out.dealias_in_place();
        out
    }

    pub fn dealias_in_place(&mut self) {
        let g = self.grid;
        for (f, c) in self.coeffs.iter_mut().enumerate() {
            if !g.in_dealias_band(f) {
                *c = ZERO;
            }
        }
    }

    /// True when every mode outside the 2/3 band vanishes.
    pub fn is_dealiased(&self) -> bool {
        let g = self.grid;
        self.coeffs
            .iter()
            .enumerate()
            .all(|(f, c)| g.in_dealias_band(f) || *c == ZERO)
    }

    /// Dealiased product: truncate both factors, multiply at the nodes,
    /// transform back and truncate the result.
    pub fn product(&self, other: &Self) -> Self {
        debug_assert_eq!(self.grid, other.grid);
        let a = self.dealiased().to_real();
        let b = other.dealiased().to_real();
        let p = a.zip_map(&b, |x, y| x * y);
        Self::from_real(&p).dealiased()
    }

    /// Embeds the coefficients into a grid with at least as many modes on the
    /// same box; Nyquist planes of the source are dropped.
    pub fn zero_padded(&self, target: Grid) -> Result<Self> {
        let src = self.grid;
        if src.lengths() != target.lengths() || (0..3).any(|a| target.n()[a] < src.n()[a]) {
            return Err(Error::Shape(format!(
                "cannot pad {:?} into {:?}",
                src.n(),
                target.n()
            )));
        }
        let mut coeffs = vec![ZERO; target.size()];
        for (f, c) in self.coeffs.iter().enumerate() {
            if src.touches_nyquist(f) {
                continue;
            }
            let i = src.unflat(f);
            let t = [
                target.index_of_mode(0, src.mode(0, i[0])),
                target.index_of_mode(1, src.mode(1, i[1])),
                target.index_of_mode(2, src.mode(2, i[2])),
            ];
            coeffs[target.flat(t)] = *c;
        }
        Ok(Self::from_coeffs_unchecked(target, coeffs))
    }

    /// The same coefficients on a box shrunk by `lambda`, scaled by `amplitude`.
    /// With `amplitude = lambda` this realises `a -> lambda a(lambda x)`.
    pub fn rescaled(&self, lambda: f64, amplitude: f64) -> Result<Self> {
        let grid = self.grid.rescaled(lambda)?;
        Ok(Self::from_coeffs_unchecked(
            grid,
            self.coeffs.iter().map(|c| c * amplitude).collect(),
        ))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_coeffs_unchecked(self.grid, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn axpy(&mut self, a: f64, x: &Self) {
        for (c, xc) in self.coeffs.iter_mut().zip(&x.coeffs) {
            *c += xc * a;
        }
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Largest coefficient difference.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for &SpectralField {
    type Output = SpectralField;
    fn add(self, rhs: &SpectralField) -> SpectralField {
        debug_assert_eq!(self.grid, rhs.grid);
        SpectralField::from_coeffs_unchecked(
            self.grid,
            self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        )
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;
    fn sub(self, rhs: &SpectralField) -> SpectralField {
        debug_assert_eq!(self.grid, rhs.grid);
        SpectralField::from_coeffs_unchecked(
            self.grid,
            self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        )
    }
}

impl Neg for &SpectralField {
    type Output = SpectralField;
    fn neg(self) -> SpectralField {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, s: f64) -> SpectralField {
        self.scale(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_mismatch_is_reported() {
        let g = Grid::cubic(8).unwrap();
        assert!(matches!(
            SpectralField::transform(&[0.0; 10], g),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn constant_has_only_mean() {
        let g = Grid::cubic(8).unwrap();
        let f = SpectralField::from_fn(g, |_, _, _| 1.0);
        assert!((f.coeff(0).re - 1.0).abs() < 1e-15);
        for (i, c) in f.coeffs().iter().enumerate().skip(1) {
            assert!(c.norm() < 1e-15, "mode {i} = {c}");
        }
    }

    #[test]
    fn sine_has_two_modes() {
        let g = Grid::cubic(16).unwrap();
        let f = SpectralField::from_fn(g, |x, _, _| x.sin());
        let mut nonzero = vec![];
        for (i, c) in f.coeffs().iter().enumerate() {
            if c.norm() > 1e-14 {
                nonzero.push(g.k(i));
            }
        }
        assert_eq!(nonzero, vec![[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]]);
        assert!((f.mode([1, 0, 0]) - Complex64::new(0.0, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn nonfinite_coefficients_rejected() {
        let g = Grid::cubic(8).unwrap();
        let mut c = vec![ZERO; g.size()];
        c[3] = Complex64::new(f64::NAN, 0.0);
        assert!(SpectralField::from_coeffs(g, c).is_err());
    }

    #[test]
    fn padding_preserves_samples_of_band_limited_field() {
        let g = Grid::cubic(8).unwrap();
        let f = SpectralField::from_fn(g, |x, y, z| (x + 2.0 * y).sin() * z.cos());
        let fine = f.zero_padded(g.refined(2).unwrap()).unwrap();
        let r = fine.to_real();
        let n = fine.grid().n();
        let x = fine.grid().coord(0, 3);
        let y = fine.grid().coord(1, 5);
        let z = fine.grid().coord(2, 7);
        let expect = (x + 2.0 * y).sin() * z.cos();
        assert!((r.values[(3 * n[1] + 5) * n[2] + 7] - expect).abs() < 1e-13);
    }
}
