//! Periodic grid, spectral fields, Fourier multipliers and pointwise operations.

pub mod fft;
pub mod field;
pub mod grid;
pub mod multiplier;
pub mod ops;
pub mod random;
pub mod snapshot;
pub mod velocity;

pub use field::{RealField, SpectralField};
pub use grid::Grid;
pub use multiplier::{apply_multiplier, MultiplierSpec, Symbol, ZeroModeRule};
pub use ops::{lp_norm, signed_power};
pub use snapshot::Snapshot;
pub use velocity::{leray_project, VelocityState};
pub use rustfft::num_complex::Complex64;
