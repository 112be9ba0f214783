//! Mixed Lebesgue norms `L^p_h(L^q_v)` by iterated grid quadrature.

use crate::error::{Error, Result};
use crate::spectral::RealField;

fn check(p: f64) -> Result<()> {
    if p >= 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("mixed norm exponent must be >= 1, got {p}")))
    }
}

/// `L^q` norms in `x3` of every vertical column, in `(i, j)` storage order.
pub fn vertical_column_norms(f: &RealField, q: f64) -> Result<Vec<f64>> {
    check(q)?;
    let g = f.grid;
    let [n1, n2, n3] = g.n();
    let dz = g.spacing(2);
    let mut out = Vec::with_capacity(n1 * n2);
    for i in 0..n1 {
        for j in 0..n2 {
            let col = (0..n3).map(|k| f.values[g.flat([i, j, k])].abs());
            out.push(if q.is_infinite() {
                col.fold(0.0, f64::max)
            } else {
                let m = (0..n3).map(|k| f.values[g.flat([i, j, k])].abs()).fold(0.0, f64::max);
                if m == 0.0 {
                    0.0
                } else {
                    m * (col.map(|x| (x / m).powf(q)).sum::<f64>() * dz).powf(1.0 / q)
                }
            });
        }
    }
    Ok(out)
}

/// `L^p` norm over the horizontal plane of per-column values.
pub fn horizontal_norm(f: &RealField, columns: &[f64], p: f64) -> Result<f64> {
    check(p)?;
    let da = f.grid.spacing(0) * f.grid.spacing(1);
    let m = columns.iter().copied().fold(0.0, f64::max);
    if p.is_infinite() || m == 0.0 {
        return Ok(m);
    }
    Ok(m * (columns.iter().map(|x| (x / m).powf(p)).sum::<f64>() * da).powf(1.0 / p))
}

/// `|| ||f(x_h, .)||_{L^q_v} ||_{L^p_h}`, inner (vertical) axis first.
pub fn mixed_norm(f: &RealField, p: f64, q: f64) -> Result<f64> {
    let cols = vertical_column_norms(f, q)?;
    horizontal_norm(f, &cols, p)
}
