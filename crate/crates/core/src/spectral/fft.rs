//! Three-dimensional complex FFT over the periodic grid, built from
//! one-dimensional `rustfft` passes along each axis.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

type Plan = Arc<dyn Fft<f64>>;

fn plan(len: usize, direction: FftDirection) -> Plan {
    static PLANS: OnceLock<Mutex<HashMap<(usize, bool), Plan>>> = OnceLock::new();
    let cache = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (len, direction == FftDirection::Forward);
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry(key)
        .or_insert_with(|| FftPlanner::new().plan_fft(len, direction))
        .clone()
}

/// Columns gathered per batch on the strided axes.
const BATCH: usize = 16;

/// Unnormalized in-place 3-D transform of a C row-major `n[0] x n[1] x n[2]` array.
pub fn fft3(data: &mut [Complex64], n: [usize; 3], direction: FftDirection) {
    assert_eq!(data.len(), n[0] * n[1] * n[2]);
    let zero = Complex64::new(0.0, 0.0);

    // axis 3: contiguous rows
    // all-zero lines and planes transform to zero and are skipped
    let p3 = plan(n[2], direction);
    let mut scratch = vec![zero; p3.get_inplace_scratch_len()];
    for row in data.chunks_exact_mut(n[2]) {
        if row.iter().any(|v| *v != zero) {
            p3.process_with_scratch(row, &mut scratch);
        }
    }

    // axis 2: stride n3 within each axis-1 slab
    let p2 = plan(n[1], direction);
    let mut scratch = vec![zero; p2.get_inplace_scratch_len()];
    let mut lines = vec![zero; BATCH * n[1]];
    let slab = n[1] * n[2];
    for plane in data.chunks_exact_mut(slab) {
        if plane.iter().all(|v| *v == zero) {
            continue;
        }
        let mut c0 = 0;
        while c0 < n[2] {
            let width = BATCH.min(n[2] - c0);
            for j in 0..n[1] {
                let row = &plane[j * n[2] + c0..j * n[2] + c0 + width];
                for (b, v) in row.iter().enumerate() {
                    lines[b * n[1] + j] = *v;
                }
            }
            p2.process_with_scratch(&mut lines[..width * n[1]], &mut scratch);
            for j in 0..n[1] {
                let row = &mut plane[j * n[2] + c0..j * n[2] + c0 + width];
                for (b, v) in row.iter_mut().enumerate() {
                    *v = lines[b * n[1] + j];
                }
            }
            c0 += width;
        }
    }

    // axis 1: stride n2*n3
    let p1 = plan(n[0], direction);
    let mut scratch = vec![zero; p1.get_inplace_scratch_len()];
    let mut lines = vec![zero; BATCH * n[0]];
    let mut c0 = 0;
    while c0 < slab {
        let width = BATCH.min(slab - c0);
        for i in 0..n[0] {
            let row = &data[i * slab + c0..i * slab + c0 + width];
            for (b, v) in row.iter().enumerate() {
                lines[b * n[0] + i] = *v;
            }
        }
        p1.process_with_scratch(&mut lines[..width * n[0]], &mut scratch);
        for i in 0..n[0] {
            let row = &mut data[i * slab + c0..i * slab + c0 + width];
            for (b, v) in row.iter_mut().enumerate() {
                *v = lines[b * n[0] + i];
            }
        }
        c0 += width;
    }
}

/// Fourier-series coefficients `c_k = N^{-1} sum_x f(x) e^{-i k.x}` of real samples.
pub fn forward_real(values: &[f64], n: [usize; 3]) -> Vec<Complex64> {
    let mut data: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft3(&mut data, n, FftDirection::Forward);
    let scale = 1.0 / data.len() as f64;
    for c in &mut data {
        *c *= scale;
    }
    data
}

/// Synthesis `f(x) = sum_k c_k e^{i k.x}`, keeping the real part.
pub fn inverse_real(coeffs: &[Complex64], n: [usize; 3]) -> Vec<f64> {
    let mut data = coeffs.to_vec();
    fft3(&mut data, n, FftDirection::Inverse);
    data.into_iter().map(|c| c.re).collect()
}
