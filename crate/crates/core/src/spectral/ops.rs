use rustfft::num_complex::Complex64;

use super::field::{RealField, SpectralField, ZERO};
use crate::error::{Error, Result};

/// `d f / d x_axis`; the Nyquist line of `axis` is zeroed.
pub fn derivative(f: &SpectralField, axis: usize) -> SpectralField {
    let g = *f.grid();
    let n = g.n()[axis];
    let table: Vec<Complex64> = (0..n)
        .map(|i| {
            if g.is_nyquist(axis, i) {
                ZERO
            } else {
                Complex64::new(0.0, g.wavenumber(axis, i))
            }
        })
        .collect();
    let mut coeffs = f.coeffs().to_vec();
    for (flat, c) in coeffs.iter_mut().enumerate() {
        *c *= table[g.unflat(flat)[axis]];
    }
    SpectralField::from_coeffs_unchecked(g, coeffs)
}

pub fn gradient(f: &SpectralField) -> [SpectralField; 3] {
    [derivative(f, 0), derivative(f, 1), derivative(f, 2)]
}

pub fn laplacian(f: &SpectralField) -> SpectralField {
    f.map_real_symbol(|_, k| -(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]))
}

/// `Delta^{-1} f`, with the mean mode set to zero.
pub fn inv_laplacian(f: &SpectralField) -> SpectralField {
    f.map_real_symbol(|_, k| {
        let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if k2 > 0.0 {
            -1.0 / k2
        } else {
            0.0
        }
    })
}

/// `Delta_h^{-1} f`, with every `k_h = 0` mode set to zero.
pub fn inv_horizontal_laplacian(f: &SpectralField) -> SpectralField {
    f.map_real_symbol(|_, k| {
        let kh2 = k[0] * k[0] + k[1] * k[1];
        if kh2 > 0.0 {
            -1.0 / kh2
        } else {
            0.0
        }
    })
}

/// `d3^2 Delta^{-1} f`, zero on the mean mode.
pub fn d33_inv_laplacian(f: &SpectralField) -> SpectralField {
    f.map_real_symbol(|_, k| {
        let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if k2 > 0.0 {
            k[2] * k[2] / k2
        } else {
            0.0
        }
    })
}

/// Keeps only the modes with `k_h = 0`.
pub fn horizontal_mean_part(f: &SpectralField) -> SpectralField {
    f.map_real_symbol(|_, k| if k[0] == 0.0 && k[1] == 0.0 { 1.0 } else { 0.0 })
}

fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::Parameter(format!("Lebesgue exponent must be >= 1, got {p}")));
    }
    Ok(())
}

/// Equal-weight quadrature of `|f|^p` times the cell volume, to the power `1/p`.
pub fn lp_norm_real(f: &RealField, p: f64) -> Result<f64> {
    check_exponent(p)?;
    if p.is_infinite() {
        return Ok(f.max_abs());
    }
    let dv = f.grid.cell_volume();
    if p == 2.0 {
        return Ok((f.values.iter().map(|v| v * v).sum::<f64>() * dv).sqrt());
    }
    if p == 1.0 {
        return Ok(f.values.iter().map(|v| v.abs()).sum::<f64>() * dv);
    }
    // Scaling by the sup norm keeps |f/m|^p in range for large p.
    let m = f.max_abs();
    if m == 0.0 {
        return Ok(0.0);
    }
    let s: f64 = if p.fract() == 0.0 && p <= 64.0 {
        let e = p as i32;
        f.values.iter().map(|v| (v.abs() / m).powi(e)).sum()
    } else {
        f.values.iter().map(|v| (v.abs() / m).powf(p)).sum()
    };
    Ok(m * (s * dv).powf(1.0 / p))
}

pub fn lp_norm(f: &SpectralField, p: f64) -> Result<f64> {
    check_exponent(p)?;
    lp_norm_real(&f.to_real(), p)
}

fn signed_pow(a: f64, alpha: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a.signum() * a.abs().powf(alpha)
    }
}

fn check_power(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Parameter(format!(
            "signed power exponent must lie in (0, 1], got {alpha}"
        )));
    }
    Ok(())
}

/// Pointwise `sign(a)|a|^alpha` at the nodes.
pub fn signed_power_real(a: &RealField, alpha: f64) -> Result<RealField> {
    check_power(alpha)?;
    Ok(a.map(|v| signed_pow(v, alpha)))
}

/// Spectral representation of `sign(a)|a|^alpha`.
///
/// The result is not truncated to the 2/3 band, so its node values are
/// exactly the pointwise powers and `||a_alpha||_2^2 = ||a||_{2 alpha}^{2 alpha}`
/// holds to round-off.
pub fn signed_power(f: &SpectralField, alpha: f64) -> Result<SpectralField> {
    if alpha == 1.0 {
        return Ok(f.clone());
    }
    Ok(signed_power_real(&f.to_real(), alpha)?.to_spectral())
}

/// Regularization scale used wherever `|a|^{alpha-1}` appears.
pub fn regularization(a: &RealField) -> f64 {
    1e-30 + 1e-12 * a.max_abs()
}

/// `grad(a_alpha) = alpha |a|^{alpha-1} grad a`, evaluated at the nodes
/// with `|a|` replaced by `|a| + eps`.
pub fn signed_power_gradient(f: &SpectralField, alpha: f64) -> Result<[RealField; 3]> {
    check_power(alpha)?;
    let a = f.to_real();
    let eps = regularization(&a);
    let weight = a.map(|v| alpha * (v.abs() + eps).powf(alpha - 1.0));
    let grad = gradient(f);
    Ok([0, 1, 2].map(|i| grad[i].to_real().zip_map(&weight, |d, w| d * w)))
}

/// `sum_i int |g_i|^2` over the box.
pub fn vector_l2_sq(g: &[RealField]) -> f64 {
    g.iter().map(|c| c.inner(c)).sum()
}
