//! Isotropic, horizontal and vertical dyadic blocks on the lattice.

use serde::{Deserialize, Serialize};

use super::cutoff::{chi, phi, PHI_INNER, PHI_OUTER};
use crate::spectral::{Grid, SpectralField};

/// Which frequency magnitude a block localizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockMode {
    /// `|k|`
    Iso,
    /// `|k_h|`
    Horizontal,
    /// `|k3|`
    Vertical,
}

/// `Delta_j` (annulus) or `S_j` (ball) localization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    Delta,
    Low,
}

impl BlockMode {
    pub const ALL: [BlockMode; 3] = [BlockMode::Iso, BlockMode::Horizontal, BlockMode::Vertical];

    #[inline]
    pub fn radius(self, k: [f64; 3]) -> f64 {
        match self {
            BlockMode::Iso => (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt(),
            BlockMode::Horizontal => (k[0] * k[0] + k[1] * k[1]).sqrt(),
            BlockMode::Vertical => k[2].abs(),
        }
    }

    /// Smallest and largest nonzero radius on the lattice.
    pub fn radius_range(self, grid: &Grid) -> (f64, f64) {
        let (min_iso, min_h, min_v) = grid.min_magnitudes();
        let (max_iso, max_h, max_v) = grid.max_magnitudes();
        match self {
            BlockMode::Iso => (min_iso, max_iso),
            BlockMode::Horizontal => (min_h, max_h),
            BlockMode::Vertical => (min_v, max_v),
        }
    }
}

/// Dyadic indices whose annulus meets the lattice radii of one mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockIndexRange {
    pub j_min: i32,
    pub j_max: i32,
}

impl BlockIndexRange {
    pub fn for_grid(grid: &Grid, mode: BlockMode) -> Self {
        let (r_min, r_max) = mode.radius_range(grid);
        // phi(2^-j r) != 0 iff 2^j PHI_INNER < r < 2^j PHI_OUTER
        let mut j_min = (r_min / PHI_OUTER).log2().floor() as i32 - 1;
        while 2f64.powi(j_min) * PHI_OUTER <= r_min {
            j_min += 1;
        }
        let mut j_max = (r_max / PHI_INNER).log2().ceil() as i32 + 1;
        while 2f64.powi(j_max) * PHI_INNER >= r_max {
            j_max -= 1;
        }
        Self { j_min, j_max }
    }

    pub fn contains(&self, j: i32) -> bool {
        (self.j_min..=self.j_max).contains(&j)
    }

    pub fn iter(&self) -> impl Iterator<Item = i32> {
        self.j_min..=self.j_max
    }

    pub fn len(&self) -> usize {
        (self.j_max - self.j_min + 1).max(0) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Block symbol at radius `r`; zero at `r = 0` (homogeneous blocks).
#[inline]
pub fn block_weight(kind: BlockKind, j: i32, r: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    let t = r * 2f64.powi(-j);
    match kind {
        BlockKind::Delta => phi(t),
        BlockKind::Low => chi(t),
    }
}

/// `Delta_j f` or `S_j f` in the given mode. `Delta_j` outside the retained
/// range is the zero field; `S_j` never contains the `r = 0` modes.
pub fn dyadic_block(f: &SpectralField, mode: BlockMode, j: i32, kind: BlockKind) -> SpectralField {
    let g = *f.grid();
    if kind == BlockKind::Delta && !BlockIndexRange::for_grid(&g, mode).contains(j) {
        return SpectralField::zeros(g);
    }
    f.map_real_symbol(|_, k| block_weight(kind, j, mode.radius(k)))
}

/// `Delta^h_k Delta^v_l f`.
pub fn aniso_block(f: &SpectralField, kh: i32, lv: i32) -> SpectralField {
    f.map_real_symbol(|_, k| {
        block_weight(BlockKind::Delta, kh, BlockMode::Horizontal.radius(k))
            * block_weight(BlockKind::Delta, lv, BlockMode::Vertical.radius(k))
    })
}

/// All retained `Delta_j f` of one mode, paired with their index.
pub fn blocks(f: &SpectralField, mode: BlockMode) -> Vec<(i32, SpectralField)> {
    BlockIndexRange::for_grid(f.grid(), mode)
        .iter()
        .map(|j| (j, dyadic_block(f, mode, j, BlockKind::Delta)))
        .collect()
}

/// `sum_j Delta_j f` over the retained range.
pub fn reconstruct(f: &SpectralField, mode: BlockMode) -> SpectralField {
    let mut acc = SpectralField::zeros(*f.grid());
    for (_, b) in blocks(f, mode) {
        acc.axpy(1.0, &b);
    }
    acc
}

/// `f` with every `r = 0` mode of the given block mode removed.
pub fn without_zero_radius(f: &SpectralField, mode: BlockMode) -> SpectralField {
    f.map_real_symbol(|_, k| if mode.radius(k) == 0.0 { 0.0 } else { 1.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_covers_lattice() {
        let g = Grid::new([16, 32, 8], [1.0, 3.0, 7.0]).unwrap();
        for mode in BlockMode::ALL {
            let range = BlockIndexRange::for_grid(&g, mode);
            g.for_each_k(|_, k| {
                let r = mode.radius(k);
                if r > 0.0 {
                    let total: f64 = range.iter().map(|j| block_weight(BlockKind::Delta, j, r)).sum();
                    assert!((total - 1.0).abs() < 1e-13, "{mode:?} r={r} total={total}");
                }
            });
            // neighbours outside the range touch no lattice radius
            for j in [range.j_min - 1, range.j_max + 1] {
                g.for_each_k(|_, k| assert_eq!(block_weight(BlockKind::Delta, j, mode.radius(k)), 0.0));
            }
        }
    }

    #[test]
    fn vertical_only_field_has_no_horizontal_blocks() {
        let g = Grid::cubic(16).unwrap();
        let f = SpectralField::from_fn(g, |_, _, z| (3.0 * z).sin() + z.cos());
        for j in -3..6 {
            let b = dyadic_block(&f, BlockMode::Horizontal, j, BlockKind::Delta);
            assert_eq!(b.max_coeff(), 0.0);
        }
    }

    #[test]
    fn low_pass_above_range_drops_only_mean() {
        let g = Grid::cubic(16).unwrap();
        let f = SpectralField::from_fn(g, |x, y, z| 2.0 + (7.0 * x).sin() * y.cos() + (5.0 * z).cos());
        let r = BlockIndexRange::for_grid(&g, BlockMode::Iso);
        let s = dyadic_block(&f, BlockMode::Iso, r.j_max + 1, BlockKind::Low);
        assert!(s.max_diff(&f.without_mean()) < 1e-15);
    }

    #[test]
    fn almost_orthogonality_is_exact() {
        let g = Grid::cubic(32).unwrap();
        let f = SpectralField::from_fn(g, |x, y, z| (x * y).sin() + (z + 3.0 * x).cos() * (y * 9.0).sin());
        let range = BlockIndexRange::for_grid(&g, BlockMode::Iso);
        for j in range.iter() {
            let bj = dyadic_block(&f, BlockMode::Iso, j, BlockKind::Delta);
            for jp in range.iter().filter(|&jp| (jp - j).abs() >= 2) {
                let b = dyadic_block(&bj, BlockMode::Iso, jp, BlockKind::Delta);
                assert_eq!(b.max_coeff(), 0.0);
            }
        }
    }
}
