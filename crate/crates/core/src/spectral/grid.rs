use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform periodic grid on the box `[0,L1) x [0,L2) x [0,L3)`.
///
/// Spectral coefficients are stored in FFT order along each axis: index `i`
/// carries the integer mode `i` for `i < n/2` and `i - n` otherwise, so the
/// Nyquist mode is `-n/2`. Flat indices are C row-major with axis 3 fastest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    n: [usize; 3],
    len: [f64; 3],
}

impl Grid {
    pub const MIN_MODES: usize = 8;

    pub fn new(n: [usize; 3], len: [f64; 3]) -> Result<Self> {
        for (axis, (&ni, &li)) in n.iter().zip(len.iter()).enumerate() {
            if ni < Self::MIN_MODES || ni % 2 != 0 {
                return Err(Error::Parameter(format!(
                    "axis {} needs an even mode count >= {}, got {}",
                    axis + 1,
                    Self::MIN_MODES,
                    ni
                )));
            }
            if !(li.is_finite() && li > 0.0) {
                return Err(Error::Parameter(format!(
                    "axis {} box length must be positive, got {}",
                    axis + 1,
                    li
                )));
            }
        }
        Ok(Self { n, len })
    }

    /// `n^3` grid on the box `[0, 2*pi)^3`.
    pub fn cubic(n: usize) -> Result<Self> {
        Self::new([n; 3], [2.0 * PI; 3])
    }

    pub fn cubic_with_length(n: usize, len: f64) -> Result<Self> {
        Self::new([n; 3], [len; 3])
    }

    pub fn n(&self) -> [usize; 3] {
        self.n
    }

    pub fn lengths(&self) -> [f64; 3] {
        self.len
    }

    pub fn size(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    pub fn volume(&self) -> f64 {
        self.len[0] * self.len[1] * self.len[2]
    }

    pub fn cell_volume(&self) -> f64 {
        self.volume() / self.size() as f64
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        self.len[axis] / self.n[axis] as f64
    }

    /// Smallest spacing over the three axes.
    pub fn min_spacing(&self) -> f64 {
        (0..3).map(|a| self.spacing(a)).fold(f64::INFINITY, f64::min)
    }

    /// Signed integer mode carried by index `idx` on `axis`.
    #[inline]
    pub fn mode(&self, axis: usize, idx: usize) -> i64 {
        let n = self.n[axis];
        if idx < n / 2 {
            idx as i64
        } else {
            idx as i64 - n as i64
        }
    }

    #[inline]
    pub fn index_of_mode(&self, axis: usize, mode: i64) -> usize {
        let n = self.n[axis] as i64;
        mode.rem_euclid(n) as usize
    }

    /// Fundamental wavenumber `2*pi/L` of an axis.
    #[inline]
    pub fn k0(&self, axis: usize) -> f64 {
        2.0 * PI / self.len[axis]
    }

    #[inline]
    pub fn wavenumber(&self, axis: usize, idx: usize) -> f64 {
        self.mode(axis, idx) as f64 * self.k0(axis)
    }

    #[inline]
    pub fn is_nyquist(&self, axis: usize, idx: usize) -> bool {
        idx == self.n[axis] / 2
    }

    #[inline]
    pub fn flat(&self, i: [usize; 3]) -> usize {
        (i[0] * self.n[1] + i[1]) * self.n[2] + i[2]
    }

    #[inline]
    pub fn unflat(&self, flat: usize) -> [usize; 3] {
        let i3 = flat % self.n[2];
        let rest = flat / self.n[2];
        [rest / self.n[1], rest % self.n[1], i3]
    }

    /// Flat index of the mode `-k` paired with `flat` under Hermitian symmetry.
    #[inline]
    pub fn mirror(&self, flat: usize) -> usize {
        let i = self.unflat(flat);
        let m = [
            (self.n[0] - i[0]) % self.n[0],
            (self.n[1] - i[1]) % self.n[1],
            (self.n[2] - i[2]) % self.n[2],
        ];
        self.flat(m)
    }

    /// Wave vector of a flat index.
    #[inline]
    pub fn k(&self, flat: usize) -> [f64; 3] {
        let i = self.unflat(flat);
        [
            self.wavenumber(0, i[0]),
            self.wavenumber(1, i[1]),
            self.wavenumber(2, i[2]),
        ]
    }

    /// Per-axis wavenumber tables in storage order.
    pub fn wavenumber_tables(&self) -> [Vec<f64>; 3] {
        let table = |a: usize| (0..self.n[a]).map(|i| self.wavenumber(a, i)).collect();
        [table(0), table(1), table(2)]
    }

    /// Calls `f(flat, k)` for every lattice point in storage order.
    pub fn for_each_k(&self, mut f: impl FnMut(usize, [f64; 3])) {
        let [t1, t2, t3] = self.wavenumber_tables();
        let mut flat = 0;
        for &k1 in &t1 {
            for &k2 in &t2 {
                for &k3 in &t3 {
                    f(flat, [k1, k2, k3]);
                    flat += 1;
                }
            }
        }
    }

    /// True when the mode survives the 2/3 truncation (`3|m_i| < n_i` on every axis).
    #[inline]
    pub fn in_dealias_band(&self, flat: usize) -> bool {
        let i = self.unflat(flat);
        (0..3).all(|a| 3 * self.mode(a, i[a]).unsigned_abs() < self.n[a] as u64)
    }

    /// True when the mode sits on a Nyquist plane of any axis.
    #[inline]
    pub fn touches_nyquist(&self, flat: usize) -> bool {
        let i = self.unflat(flat);
        (0..3).any(|a| self.is_nyquist(a, i[a]))
    }

    /// Physical coordinate of grid node `idx` on `axis`.
    #[inline]
    pub fn coord(&self, axis: usize, idx: usize) -> f64 {
        idx as f64 * self.spacing(axis)
    }

    /// Largest |k|, |k_h| and |k_3| on the lattice.
    pub fn max_magnitudes(&self) -> (f64, f64, f64) {
        let kmax: Vec<f64> = (0..3)
            .map(|a| (self.n[a] / 2) as f64 * self.k0(a))
            .collect();
        let h = (kmax[0] * kmax[0] + kmax[1] * kmax[1]).sqrt();
        ((h * h + kmax[2] * kmax[2]).sqrt(), h, kmax[2])
    }

    /// Smallest nonzero |k|, |k_h| and |k_3| on the lattice.
    pub fn min_magnitudes(&self) -> (f64, f64, f64) {
        let k0 = [self.k0(0), self.k0(1), self.k0(2)];
        let h = k0[0].min(k0[1]);
        (h.min(k0[2]), h, k0[2])
    }

    /// The same mode counts on a box shrunk by `lambda`.
    pub fn rescaled(&self, lambda: f64) -> Result<Self> {
        Self::new(
            self.n,
            [self.len[0] / lambda, self.len[1] / lambda, self.len[2] / lambda],
        )
    }

    /// The same box with every mode count multiplied by `factor`.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        Self::new(
            [self.n[0] * factor, self.n[1] * factor, self.n[2] * factor],
            self.len,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_odd_or_small_counts() {
        assert!(Grid::new([7, 8, 8], [1.0; 3]).is_err());
        assert!(Grid::new([6, 8, 8], [1.0; 3]).is_err());
        assert!(Grid::new([8, 8, 8], [0.0, 1.0, 1.0]).is_err());
        assert!(Grid::new([8, 10, 12], [1.0; 3]).is_ok());
    }

    #[test]
    fn lattice_contains_zero_once() {
        let g = Grid::new([8, 10, 12], [1.0, 2.0, 3.0]).unwrap();
        let mut zeros = 0;
        g.for_each_k(|_, k| {
            if k == [0.0; 3] {
                zeros += 1;
            }
        });
        assert_eq!(zeros, 1);
    }

    #[test]
    fn mirror_is_involution() {
        let g = Grid::new([8, 10, 12], [1.0; 3]).unwrap();
        for f in 0..g.size() {
            assert_eq!(g.mirror(g.mirror(f)), f);
            let (k, km) = (g.k(f), g.k(g.mirror(f)));
            for a in 0..3 {
                let i = g.unflat(f)[a];
                if !g.is_nyquist(a, i) {
                    assert_eq!(k[a], -km[a]);
                }
            }
        }
    }

    #[test]
    fn dealias_band_for_64() {
        let g = Grid::cubic(64).unwrap();
        assert!(g.in_dealias_band(g.flat([21, 0, 0])));
        assert!(!g.in_dealias_band(g.flat([22, 0, 0])));
        assert!(g.in_dealias_band(g.flat([64 - 21, 0, 0])));
        assert!(!g.in_dealias_band(g.flat([64 - 22, 0, 0])));
    }
}
