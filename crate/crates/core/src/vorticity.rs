//! Vorticity and the horizontal Biot-Savart splitting.

use crate::error::{Error, Result};
use crate::spectral::ops::{derivative, horizontal_mean_part, inv_horizontal_laplacian, inv_laplacian};
use crate::spectral::velocity::divergence_parts;
use crate::spectral::{SpectralField, VelocityState};

/// Relative tolerance on `div Omega` accepted by [`velocity_from_vorticity`].
pub const SOLENOIDAL_TOL: f64 = 1e-10;

/// `Omega = curl v`, its third component `omega` and `d3 v3`.
#[derive(Debug, Clone, PartialEq)]
pub struct VorticityState {
    pub omega: [SpectralField; 3],
    pub omega_h: SpectralField,
    pub d3v3: SpectralField,
}

/// `curl w` of three spectral fields.
pub fn curl(w: &[SpectralField; 3]) -> [SpectralField; 3] {
    [
        &derivative(&w[2], 1) - &derivative(&w[1], 2),
        &derivative(&w[0], 2) - &derivative(&w[2], 0),
        &derivative(&w[1], 0) - &derivative(&w[0], 1),
    ]
}

/// `d1 v2 - d2 v1`.
pub fn horizontal_vorticity(v: &VelocityState) -> SpectralField {
    &derivative(v.component(1), 0) - &derivative(v.component(0), 1)
}

pub fn compute_vorticity(v: &VelocityState) -> VorticityState {
    let omega = curl(v.components());
    VorticityState {
        omega_h: omega[2].clone(),
        d3v3: derivative(v.component(2), 2),
        omega,
    }
}

/// Parts of `v^h = (v1, v2)`: `curl = grad_h^perp Delta_h^{-1} omega`,
/// `div = -grad_h Delta_h^{-1} d3 v3` and the `k_h = 0` remainder `shear`.
#[derive(Debug, Clone, PartialEq)]
pub struct HorizontalSplit {
    pub curl: [SpectralField; 2],
    pub div: [SpectralField; 2],
    pub shear: [SpectralField; 2],
}

impl HorizontalSplit {
    /// `curl + div + shear`, component `i`.
    pub fn sum(&self, i: usize) -> SpectralField {
        &(&self.curl[i] + &self.div[i]) + &self.shear[i]
    }
}

pub fn horizontal_split(v: &VelocityState) -> HorizontalSplit {
    let omega = horizontal_vorticity(v);
    let stream = inv_horizontal_laplacian(&omega);
    let potential = inv_horizontal_laplacian(&derivative(v.component(2), 2));
    HorizontalSplit {
        curl: [derivative(&stream, 1).scale(-1.0), derivative(&stream, 0)],
        div: [
            derivative(&potential, 0).scale(-1.0),
            derivative(&potential, 1).scale(-1.0),
        ],
        shear: [
            horizontal_mean_part(v.component(0)),
            horizontal_mean_part(v.component(1)),
        ],
    }
}

/// `v = curl(-Delta^{-1} Omega)`, the mean-zero solenoidal field with `curl v = Omega`.
pub fn velocity_from_vorticity(omega: &[SpectralField; 3]) -> Result<VelocityState> {
    let (div, scale) = divergence_parts(omega);
    if div > SOLENOIDAL_TOL * scale {
        return Err(Error::Validation(format!(
            "vorticity is not solenoidal: max |k.Omega| = {div:e} vs scale {scale:e}"
        )));
    }
    let psi = [0, 1, 2].map(|i| inv_laplacian(&omega[i]).scale(-1.0));
    VelocityState::new(curl(&psi), 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;

    fn shear(g: Grid) -> VelocityState {
        VelocityState::from_fn(g, |_, y, _| [y.sin(), 0.0, 0.0]).unwrap()
    }

    #[test]
    fn shear_vorticity() {
        let g = Grid::cubic(16).unwrap();
        let w = compute_vorticity(&shear(g));
        let expect = SpectralField::from_fn(g, |_, y, _| -y.cos());
        assert!(w.omega[2].max_diff(&expect) < 1e-15);
        assert!(w.omega[0].max_coeff() < 1e-15 && w.omega[1].max_coeff() < 1e-15);
        assert_eq!(w.omega_h, w.omega[2]);
    }

    #[test]
    fn shear_from_vorticity() {
        let g = Grid::cubic(16).unwrap();
        let z = SpectralField::zeros(g);
        let omega = [z.clone(), z, SpectralField::from_fn(g, |_, y, _| -y.cos())];
        let v = velocity_from_vorticity(&omega).unwrap();
        assert!(v.max_diff(&shear(g)) < 1e-15);
    }

    #[test]
    fn non_solenoidal_vorticity_rejected() {
        let g = Grid::cubic(8).unwrap();
        let z = SpectralField::zeros(g);
        let omega = [SpectralField::from_fn(g, |x, _, _| x.sin()), z.clone(), z];
        assert!(matches!(velocity_from_vorticity(&omega), Err(Error::Validation(_))));
    }

    #[test]
    fn streamfunction_flow_is_pure_curl() {
        let g = Grid::cubic(16).unwrap();
        // psi = sin x sin y
        let v = VelocityState::from_fn(g, |x, y, _| [-x.sin() * y.cos(), x.cos() * y.sin(), 0.0]).unwrap();
        let s = horizontal_split(&v);
        for i in 0..2 {
            assert!(s.div[i].max_coeff() < 1e-15);
            assert!(s.curl[i].max_diff(v.component(i)) < 1e-15);
        }
    }

    #[test]
    fn potential_flow_is_pure_div() {
        let g = Grid::cubic(16).unwrap();
        // v^h = grad_h (sin x sin y sin z), v3 chosen to cancel the divergence
        let v = VelocityState::from_fn(g, |x, y, z| {
            [
                x.cos() * y.sin() * z.sin(),
                x.sin() * y.cos() * z.sin(),
                -2.0 * x.sin() * y.sin() * z.cos(),
            ]
        })
        .unwrap();
        let s = horizontal_split(&v);
        for i in 0..2 {
            assert!(s.curl[i].max_coeff() < 1e-15);
            assert!(s.div[i].max_diff(v.component(i)) < 1e-15);
        }
    }
}
