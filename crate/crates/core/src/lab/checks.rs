//! Both sides of each verified inequality, as pure functions of the fields.
//!
//! Every function returns `(lhs, rhs)` with the implicit constant omitted,
//! and rejects parameters outside the inequality's hypotheses.

use crate::error::{Error, Result};
use crate::lp::norms::{
    aniso_sobolev_sq, ell_q, heat_norm_from_profile, heat_profile, htheta_inner, htheta_sq, sobolev_sq, FieldNorms};
use crate::lp::blocks::{block_weight, BlockIndexRange, BlockKind, BlockMode};
use crate::monitors::quantities::{grad_three_quarter_sq, three_quarter_sq};
use crate::spectral::ops::{
    d33_inv_laplacian, derivative, gradient, inv_horizontal_laplacian, lp_norm_real, signed_power,
};
use crate::spectral::{RealField, SpectralField, VelocityState};
use crate::vorticity::horizontal_vorticity;

use super::mixed::{horizontal_norm, mixed_norm, vertical_column_norms};

fn param(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Parameter(msg()))
    }
}

fn exponent(p: f64) -> Result<()> {
    param(p >= 1.0, || format!("Lebesgue exponent must be >= 1, got {p}"))
}

/// `1/p` with `1/inf = 0`.
pub fn inv(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

fn derivatives(f: &SpectralField, axis: usize, n: usize) -> SpectralField {
    (0..n).fold(f.clone(), |g, _| derivative(&g, axis))
}

/// Pointwise Euclidean `L^p` norm of a vector field.
pub fn vector_lp(components: &[RealField], p: f64) -> Result<f64> {
    let g = components[0].grid;
    let mag = RealField {
        grid: g,
        values: (0..g.size())
            .map(|i| components.iter().map(|c| c.values[i] * c.values[i]).sum::<f64>().sqrt())
            .collect(),
    };
    lp_norm_real(&mag, p)
}

// ---- anisotropic Bernstein inequalities ----

/// `||d_h^alpha a||_{L^p1_h(L^q1_v)}` against `2^{k(|alpha| + 2(1/p2 - 1/p1))} ||a||_{L^p2_h(L^q1_v)}`
/// for `a` spectrally supported in `|xi_h| <= 2^k`.
pub fn bernstein_horizontal_ball(
    a: &SpectralField,
    k: i32,
    alpha: [usize; 2],
    (p2, p1): (f64, f64),
    q1: f64,
) -> Result<(f64, f64)> {
    exponent(p2)?;
    param(p2 <= p1, || format!("need p2 <= p1, got ({p2}, {p1})"))?;
    let d = derivatives(&derivatives(a, 0, alpha[0]), 1, alpha[1]);
    let lhs = mixed_norm(&d.to_real(), p1, q1)?;
    let order = (alpha[0] + alpha[1]) as f64 + 2.0 * (inv(p2) - inv(p1));
    let rhs = 2f64.powf(k as f64 * order) * mixed_norm(&a.to_real(), p2, q1)?;
    Ok((lhs, rhs))
}

/// `||d_3^beta a||_{L^p1_h(L^q1_v)}` against `2^{l(beta + 1/q2 - 1/q1)} ||a||_{L^p1_h(L^q2_v)}`
/// for `a` supported in `|xi_3| <= 2^l`.
pub fn bernstein_vertical_ball(a: &SpectralField, l: i32, beta: usize, p1: f64, (q2, q1): (f64, f64)) -> Result<(f64, f64)> {
    exponent(q2)?;
    param(q2 <= q1, || format!("need q2 <= q1, got ({q2}, {q1})"))?;
    let d = derivatives(a, 2, beta);
    let lhs = mixed_norm(&d.to_real(), p1, q1)?;
    let order = beta as f64 + inv(q2) - inv(q1);
    let rhs = 2f64.powf(l as f64 * order) * mixed_norm(&a.to_real(), p1, q2)?;
    Ok((lhs, rhs))
}

/// `||a||` against `2^{-kN} max_{|alpha| = N} ||d_h^alpha a||` for `a` supported in a horizontal ring.
pub fn bernstein_horizontal_ring(a: &SpectralField, k: i32, n: usize, p1: f64, q1: f64) -> Result<(f64, f64)> {
    exponent(p1)?;
    let lhs = mixed_norm(&a.to_real(), p1, q1)?;
    let mut best = 0.0_f64;
    for i in 0..=n {
        let d = derivatives(&derivatives(a, 0, i), 1, n - i);
        best = best.max(mixed_norm(&d.to_real(), p1, q1)?);
    }
    Ok((lhs, 2f64.powf(-(k as f64) * n as f64) * best))
}

/// `||a||` against `2^{-lN} ||d_3^N a||` for `a` supported in a vertical ring.
pub fn bernstein_vertical_ring(a: &SpectralField, l: i32, n: usize, p1: f64, q1: f64) -> Result<(f64, f64)> {
    exponent(p1)?;
    let lhs = mixed_norm(&a.to_real(), p1, q1)?;
    let d = derivatives(a, 2, n);
    Ok((lhs, 2f64.powf(-(l as f64) * n as f64) * mixed_norm(&d.to_real(), p1, q1)?))
}

// ---- embeddings ----

/// `|| (2^{ls} ||Delta^v_l a(x_h, .)||_{L^p_v})_l ||_{l^q}` in `L^p_h`, against `||a||_{B^s_{p,q}}`.
pub fn vertical_besov_embedding(a: &SpectralField, s: f64, p: f64, q: f64) -> Result<(f64, f64)> {
    param(s > 0.0, || format!("need s > 0, got {s}"))?;
    exponent(q)?;
    param(p >= q, || format!("need p >= q, got p = {p}, q = {q}"))?;
    let g = *a.grid();
    let range = BlockIndexRange::for_grid(&g, BlockMode::Vertical);
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for l in range.iter() {
        let b = a.map_real_symbol(|_, k| block_weight(BlockKind::Delta, l, k[2].abs()));
        let w = 2f64.powf(l as f64 * s);
        columns.push(vertical_column_norms(&b.to_real(), p)?.into_iter().map(|x| w * x).collect());
    }
    let ncol = g.n()[0] * g.n()[1];
    let per_column: Vec<f64> = (0..ncol).map(|c| ell_q(columns.iter().map(|b| b[c]), q)).collect();
    let lhs = horizontal_norm(&a.to_real(), &per_column, p)?;
    let rhs = FieldNorms::new(a).besov(s, p, q)?;
    Ok((lhs, rhs))
}

/// `||f||_{(B^{s-theta}_{p,q})_h (B^theta_{p,1})_v}` against `||f||_{B^s_{p,q}}`.
pub fn iso_aniso_embedding(norms: &FieldNorms, s: f64, theta: f64, p: f64, q: f64) -> Result<(f64, f64)> {
    param(s > 0.0 && theta > 0.0 && theta < s, || format!("need 0 < theta < s, got s = {s}, theta = {theta}"))?;
    exponent(p)?;
    exponent(q)?;
    Ok((norms.aniso_besov(s - theta, p, q, theta, 1.0)?, norms.besov(s, p, q)?))
}

/// Upper branch `(s, s') >= 0`: `||a||_{H^{s,s'}} <= ||a||_{H^{s+s'}}`.
pub fn aniso_below_iso(a: &SpectralField, s: f64, sp: f64) -> Result<(f64, f64)> {
    param(s >= 0.0 && sp >= 0.0, || format!("upper branch needs s, s' >= 0, got ({s}, {sp})"))?;
    Ok((aniso_sobolev_sq(a, s, sp).sqrt(), sobolev_sq(a, s + sp).sqrt()))
}

/// Lower branch `(s, s') <= 0`: `||a||_{H^{s+s'}} <= ||a||_{H^{s,s'}}`. Modes on the
/// planes `xi_h = 0` or `xi_3 = 0` must be absent, where the anisotropic weight is infinite.
pub fn iso_below_aniso(a: &SpectralField, s: f64, sp: f64) -> Result<(f64, f64)> {
    param(s <= 0.0 && sp <= 0.0, || format!("lower branch needs s, s' <= 0, got ({s}, {sp})"))?;
    let g = *a.grid();
    let mut on_plane = false;
    g.for_each_k(|f, k| {
        let singular = (s < 0.0 && k[0] == 0.0 && k[1] == 0.0) || (sp < 0.0 && k[2] == 0.0);
        if singular && a.coeff(f).norm() > 0.0 {
            on_plane = true;
        }
    });
    param(!on_plane, || "field has modes where the anisotropic weight is infinite".into())?;
    Ok((sobolev_sq(a, s + sp).sqrt(), aniso_sobolev_sq(a, s, sp).sqrt()))
}

/// Horizontal and vertical integrability traded for regularity, `p2 <= p1`.
pub fn aniso_lebesgue_inclusion(
    a: &FieldNorms,
    (s1, s2): (f64, f64),
    (p2, p1): (f64, f64),
    (q1, q2): (f64, f64),
) -> Result<(f64, f64)> {
    exponent(p2)?;
    param(p2 <= p1, || format!("need p2 <= p1, got ({p2}, {p1})"))?;
    let d = inv(p2) - inv(p1);
    let lhs = a.aniso_besov(s1 - 2.0 * d, p1, q1, s2 - d, q2)?;
    let rhs = a.aniso_besov(s1, p2, q1, s2, q2)?;
    Ok((lhs, rhs))
}

// ---- products ----

/// Index set of an anisotropic product law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductIndices {
    pub p1: f64,
    pub p2: f64,
    pub q: f64,
    pub s: (f64, f64),
    pub sigma: (f64, f64),
}

impl ProductIndices {
    /// `Ok(true)` when an index sits on an endpoint only admitted for `q = 1`.
    pub fn check(&self) -> Result<bool> {
        let &Self { p1, p2, q, s, sigma } = self;
        exponent(p2)?;
        exponent(q)?;
        param(p1 >= p2, || format!("need p1 >= p2, got ({p1}, {p2})"))?;
        param(inv(p1) + inv(p2) <= 1.0, || format!("need 1/p1 + 1/p2 <= 1, got ({p1}, {p2})"))?;
        param(s.0 + s.1 > 0.0, || format!("need s1 + s2 > 0, got {s:?}"))?;
        param(sigma.0 + sigma.1 > 0.0, || format!("need sigma1 + sigma2 > 0, got {sigma:?}"))?;
        let bounds = [(s.0, 2.0 * inv(p1)), (s.1, 2.0 * inv(p2)), (sigma.0, inv(p1)), (sigma.1, inv(p2))];
        let mut endpoint = false;
        for (x, b) in bounds {
            if x == b {
                param(q == 1.0, || format!("index {x} = {b} is only admitted for q = 1"))?;
                endpoint = true;
            } else {
                param(x < b, || format!("index {x} exceeds its bound {b}"))?;
            }
        }
        Ok(endpoint)
    }
}

/// `||ab||` in the product space against the product of the factor norms.
pub fn product_law(a: &FieldNorms, b: &FieldNorms, ix: &ProductIndices) -> Result<(f64, f64)> {
    ix.check()?;
    let ab = a.field().product(b.field());
    let (s, sg, q) = (ix.s, ix.sigma, ix.q);
    let lhs = FieldNorms::new(&ab).aniso_besov(
        s.0 + s.1 - 2.0 * inv(ix.p2),
        ix.p1,
        q,
        sg.0 + sg.1 - inv(ix.p2),
        q,
    )?;
    let rhs = a.aniso_besov(s.0, ix.p1, q, sg.0, q)? * b.aniso_besov(s.1, ix.p2, q, sg.1, q)?;
    Ok((lhs, rhs))
}

// ---- L^{3/2} interpolation ----

/// `(||a_{3/4}||_{L^2}, ||grad a_{3/4}||_{L^2})`.
pub fn three_quarter_norms(a: &SpectralField) -> Result<(f64, f64)> {
    Ok((three_quarter_sq(a).sqrt(), grad_three_quarter_sq(a)?.sqrt()))
}

/// `||grad a||_{L^{3/2}}` against `||grad a_{3/4}|| ||a_{3/4}||^{1/3}`.
pub fn gradient_l32(a: &SpectralField, tq: (f64, f64)) -> Result<(f64, f64)> {
    let g = gradient(a).map(|c| c.to_real());
    Ok((vector_lp(&g, 1.5)?, tq.1 * tq.0.powf(1.0 / 3.0)))
}

/// `||a||_{H^s}` against `||a_{3/4}||^{5/6 - s} ||grad a_{3/4}||^{1/2 + s}`, `s in [-1/2, 5/6]`.
pub fn sobolev_from_three_quarter(a: &SpectralField, s: f64, tq: (f64, f64)) -> Result<(f64, f64)> {
    param((-0.5..=5.0 / 6.0).contains(&s), || format!("need s in [-1/2, 5/6], got {s}"))?;
    Ok((sobolev_sq(a, s).sqrt(), tq.0.powf(5.0 / 6.0 - s) * tq.1.powf(0.5 + s)))
}

/// `||a||_{(B^0_{2,1})_h (B^{1/2-alpha}_{2,1})_v}` against `||a||^alpha_{H_theta} ||grad a||^{1-alpha}_{H_theta}`.
pub fn htheta_interpolation(a: &FieldNorms, alpha: f64, theta: f64) -> Result<(f64, f64)> {
    param(alpha > 0.0 && alpha < 0.5 && theta > 0.0 && theta < 0.5, || {
        format!("need (alpha, theta) in (0, 1/2)^2, got ({alpha}, {theta})")
    })?;
    let f = a.field();
    let lhs = a.aniso_besov(0.0, 2.0, 1.0, 0.5 - alpha, 1.0)?;
    let grad = grad_htheta(f, theta);
    Ok((lhs, htheta_sq(f, theta).sqrt().powf(alpha) * grad.powf(1.0 - alpha)))
}

/// `||grad f||_{H_theta}`.
pub fn grad_htheta(f: &SpectralField, theta: f64) -> f64 {
    gradient(f).iter().map(|c| htheta_sq(c, theta)).sum::<f64>().sqrt()
}

/// `||G(a)||_{B^{alpha s}_{p/alpha, q/alpha}}` against `||a||^alpha_{B^s_{p,q}}` with `G(r) = r|r|^{alpha-1}`.
pub fn holder_composition(a: &FieldNorms, s: f64, alpha: f64, p: f64, q: f64) -> Result<(f64, f64)> {
    param(s > 0.0 && s < 1.0 && alpha > 0.0 && alpha < 1.0, || {
        format!("need (s, alpha) in (0, 1)^2, got ({s}, {alpha})")
    })?;
    exponent(p)?;
    exponent(q)?;
    let ga = signed_power(a.field(), alpha)?;
    let lhs = FieldNorms::new(&ga).besov(alpha * s, p / alpha, q / alpha)?;
    Ok((lhs, a.besov(s, p, q)?.powf(alpha)))
}

// ---- trilinear forms ----

/// `max_{i,j in {1,2}} |int d_i Lap_h^{-1} f d_j a w_{1/2}|`, products dealiased.
pub fn trilinear_integral(f: &SpectralField, a: &SpectralField, w_half: &SpectralField) -> f64 {
    let lf = inv_horizontal_laplacian(f);
    let mut best = 0.0_f64;
    for i in 0..2 {
        let di = derivative(&lf, i);
        for j in 0..2 {
            let prod = di.product(&derivative(a, j));
            best = best.max(prod.inner(w_half).abs());
        }
    }
    best
}

/// Both right-hand sides of the trilinear bound: `(L^{3/2} variant, H_theta variant)`.
pub fn trilinear_bounds(
    f: &SpectralField,
    a: &SpectralField,
    w: &SpectralField,
    sigma: f64,
    theta: f64,
) -> Result<(f64, f64)> {
    param(sigma > 0.75 && sigma < 1.0, || format!("need sigma in (3/4, 1), got {sigma}"))?;
    param(theta > 0.0 && theta < 1.0 / 6.0, || format!("need theta in (0, 1/6), got {theta}"))?;
    let s = 1.5 - 2.0 * sigma / 3.0;
    let w34 = signed_power(w, 0.75)?;
    let common = sobolev_sq(a, s).sqrt() * sobolev_sq(&w34, sigma).sqrt().powf(2.0 / 3.0);
    let l32 = lp_norm_real(&f.to_real(), 1.5)?;
    Ok((l32 * common, htheta_sq(f, theta).sqrt() * common))
}

/// Bounded multipliers used for `A(D)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundedMultiplier {
    Identity,
    D33InvLaplacian,
    D11InvHorizontalLaplacian,
}

impl BoundedMultiplier {
    pub fn apply(self, f: &SpectralField) -> SpectralField {
        match self {
            Self::Identity => f.clone(),
            Self::D33InvLaplacian => d33_inv_laplacian(f),
            Self::D11InvHorizontalLaplacian => derivative(&derivative(&inv_horizontal_laplacian(f), 0), 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Identity => "id",
            Self::D33InvLaplacian => "d33-inv-lap",
            Self::D11InvHorizontalLaplacian => "d11-inv-lap-h",
        }
    }
}

fn energy_conditions(p: f64, theta: f64) -> Result<()> {
    param(p > 4.0 && p < 6.0, || format!("need p in (4, 6), got {p}"))?;
    param(theta > 0.0 && theta < 0.5 - 1.0 / p, || format!("need 0 < theta < 1/2 - 1/p, got {theta}"))
}

/// `|(A(fg) | d3 v3)_{H_theta}|` against `||f||_{H^{theta, 1/2-theta-1/p}} ||g||_{...} ||v3||_{H^{1/2+2/p}}`.
pub fn htheta_product_pairing(
    f: &SpectralField,
    g: &SpectralField,
    v: &VelocityState,
    m: BoundedMultiplier,
    p: f64,
    theta: f64,
) -> Result<(f64, f64)> {
    energy_conditions(p, theta)?;
    let d3v3 = v.partial(2, 2);
    let lhs = htheta_inner(&m.apply(&f.product(g)), &d3v3, theta).abs();
    let sp = 0.5 - theta - 1.0 / p;
    let rhs = aniso_sobolev_sq(f, theta, sp).sqrt()
        * aniso_sobolev_sq(g, theta, sp).sqrt()
        * sobolev_sq(v.component(2), 0.5 + 2.0 / p).sqrt();
    Ok((lhs, rhs))
}

/// `|(A(v^l d_l d3 v3) | d3 v3)_{H_theta}|` against the vorticity and `d3 v3` interpolation bound.
pub fn htheta_transport_pairing(
    v: &VelocityState,
    l: usize,
    m: BoundedMultiplier,
    p: f64,
    theta: f64,
) -> Result<(f64, f64)> {
    energy_conditions(p, theta)?;
    param(theta < 2.0 / p, || format!("need theta < 2/p, got {theta}"))?;
    param(l < 2, || format!("l must be horizontal, got {l}"))?;
    let d3v3 = v.partial(2, 2);
    let transport = v.component(l).product(&derivative(&d3v3, l));
    let lhs = htheta_inner(&m.apply(&transport), &d3v3, theta).abs();
    let omega = horizontal_vorticity(v);
    let (w0, w1) = three_quarter_norms(&omega)?;
    let h0 = htheta_sq(&d3v3, theta).sqrt();
    let h1 = grad_htheta(&d3v3, theta);
    let rhs = sobolev_sq(v.component(2), 0.5 + 2.0 / p).sqrt()
        * (w0.powf(1.0 / 3.0 + 2.0 / p) * w1.powf(1.0 - 2.0 / p) + h0.powf(2.0 / p) * h1.powf(1.0 - 2.0 / p))
        * h1;
    Ok((lhs, rhs))
}

// ---- velocity bounds ----

/// `||v^h||_{(B^1_{2,1})_h (B^{1/2-alpha}_{2,1})_v}` against
/// `||w34||^{1/3+alpha} ||grad w34||^{1-alpha} + ||d3v3||^alpha_{H_theta} ||grad d3v3||^{1-alpha}_{H_theta}`.
pub fn horizontal_velocity_bound(v: &VelocityState, alpha: f64, theta: f64) -> Result<(f64, f64)> {
    Ok(horizontal_velocity_bounds(v, &[(alpha, theta)])?[0])
}

/// `horizontal_velocity_bound` over several `(alpha, theta)`, sharing the field transforms.
pub fn horizontal_velocity_bounds(v: &VelocityState, at: &[(f64, f64)]) -> Result<Vec<(f64, f64)>> {
    for &(alpha, theta) in at {
        param(alpha > 0.0 && alpha < 0.5 && theta > 0.0 && theta < 0.5, || {
            format!("need (alpha, theta) in (0, 1/2)^2, got ({alpha}, {theta})")
        })?;
    }
    let horizontal = [FieldNorms::new(v.component(0)), FieldNorms::new(v.component(1))];
    let (w0, w1) = three_quarter_norms(&horizontal_vorticity(v))?;
    let d3v3 = v.partial(2, 2);
    at.iter()
        .map(|&(alpha, theta)| {
            let mut lhs = 0.0;
            for n in &horizontal {
                lhs += n.aniso_besov(1.0, 2.0, 1.0, 0.5 - alpha, 1.0)?;
            }
            let rhs = w0.powf(1.0 / 3.0 + alpha) * w1.powf(1.0 - alpha)
                + htheta_sq(&d3v3, theta).sqrt().powf(alpha) * grad_htheta(&d3v3, theta).powf(1.0 - alpha);
            Ok((lhs, rhs))
        })
        .collect()
}

/// `||d3 w3||_{H_theta}` against `||w||_{H^{1/2}}` for divergence-free `w`.
pub fn divergence_free_htheta(w: &VelocityState, theta: f64) -> Result<(f64, f64)> {
    param(theta > 0.0 && theta < 0.5, || format!("need theta in (0, 1/2), got {theta}"))?;
    let rhs = w.components().iter().map(|c| sobolev_sq(c, 0.5)).sum::<f64>().sqrt();
    Ok((htheta_sq(&w.partial(2, 2), theta).sqrt(), rhs))
}

/// `max_{k,l} ||d_l v^k||_{B_p}` against `||v||_{L^q}` with `2/p + 3/q = 1`.
pub fn endpoint_besov_inclusion(v: &VelocityState, p: f64) -> Result<(f64, f64)> {
    Ok(endpoint_besov_inclusions(v, &[p])?[0])
}

/// `endpoint_besov_inclusion` over several `p`, sharing the heat profiles.
pub fn endpoint_besov_inclusions(v: &VelocityState, ps: &[f64]) -> Result<Vec<(f64, f64)>> {
    for &p in ps {
        param(p > 2.0 && p.is_finite(), || format!("need 2 < p < inf, got {p}"))?;
    }
    let mut profiles = Vec::with_capacity(9);
    for k in 0..3 {
        for l in 0..3 {
            profiles.push(heat_profile(&v.partial(k, l)));
        }
    }
    let real = v.to_real();
    ps.iter()
        .map(|&p| {
            let q = 3.0 * p / (p - 2.0);
            let sigma = 2.0 - 2.0 / p;
            let lhs = profiles
                .iter()
                .fold(0.0_f64, |m, prof| m.max(heat_norm_from_profile(prof, sigma)));
            Ok((lhs, vector_lp(&real, q)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::spectral::Grid;

    fn mode(g: Grid, m: [f64; 3], amp: f64) -> SpectralField {
        SpectralField::cosine_mode(g, [m[0] as i64, m[1] as i64, m[2] as i64], amp, 0.0).unwrap()
    }

    #[test]
    fn single_horizontal_mode_derivative_ratio() {
        // |k_h| = 2 inside 2^1 B_h; ||d_1 a|| / (2 ||a||) = |k_1| / 2
        let g = Grid::cubic(16).unwrap();
        let a = mode(g, [2.0, 0.0, 1.0], 0.7);
        let (l, r) = bernstein_horizontal_ball(&a, 1, [1, 0], (2.0, 2.0), 2.0).unwrap();
        assert!((l / r - 1.0).abs() < 1e-12);
        let a = mode(g, [1.0, 1.0, 0.0], 0.7);
        let (l, r) = bernstein_horizontal_ball(&a, 1, [1, 0], (2.0, 2.0), 2.0).unwrap();
        assert!((l / r - 0.5).abs() < 1e-12);
        assert!(l / r <= 8.0 / 3.0);
    }

    #[test]
    fn bernstein_rejects_bad_exponents() {
        let g = Grid::cubic(8).unwrap();
        let a = mode(g, [1.0, 0.0, 0.0], 1.0);
        assert!(bernstein_horizontal_ball(&a, 0, [0, 0], (3.0, 2.0), 2.0).is_err());
        assert!(bernstein_vertical_ball(&a, 0, 0, 2.0, (0.5, 2.0)).is_err());
    }

    #[test]
    fn zero_field_gives_zero_sides() {
        let g = Grid::cubic(16).unwrap();
        let z = SpectralField::zeros(g);
        let n = FieldNorms::new(&z);
        assert_eq!(bernstein_vertical_ring(&z, 1, 2, 2.0, 2.0).unwrap(), (0.0, 0.0));
        assert_eq!(iso_aniso_embedding(&n, 0.9, 0.45, 2.0, 2.0).unwrap(), (0.0, 0.0));
        let tq = three_quarter_norms(&z).unwrap();
        assert_eq!(sobolev_from_three_quarter(&z, 0.5, tq).unwrap(), (0.0, 0.0));
        assert_eq!(trilinear_integral(&z, &z, &z), 0.0);
        let ix = ProductIndices { p1: 2.0, p2: 2.0, q: 2.0, s: (0.5, 0.5), sigma: (0.25, 0.25) };
        let a = mode(g, [1.0, 2.0, 1.0], 1.0);
        let (l, _) = product_law(&n, &FieldNorms::new(&a), &ix).unwrap();
        assert_eq!(l, 0.0);
    }

    #[test]
    fn iso_aniso_weights_single_mode() {
        // k = (3, 0, 4): |k_h| = 3, |k3| = 4, |k| = 5
        let g = Grid::cubic(32).unwrap();
        let a = mode(g, [3.0, 0.0, 4.0], 1.0);
        let l2 = a.l2_norm();
        let (l, r) = aniso_below_iso(&a, 0.3, 0.4).unwrap();
        assert!((l - 3f64.powf(0.3) * 4f64.powf(0.4) * l2).abs() < 1e-12 * l);
        assert!((r - 5f64.powf(0.7) * l2).abs() < 1e-12 * r);
        assert!(l <= r);
        let (l, r) = iso_below_aniso(&a, -0.3, -0.4).unwrap();
        assert!(l <= r);
        assert!(aniso_below_iso(&a, -0.1, 0.2).is_err());
        let b = mode(g, [3.0, 0.0, 0.0], 1.0);
        assert!(iso_below_aniso(&b, -0.3, -0.4).is_err());
    }

    #[test]
    fn product_index_validation() {
        let good = ProductIndices { p1: 3.0, p2: 2.0, q: 2.0, s: (0.3, 0.6), sigma: (0.1, 0.2) };
        assert_eq!(good.check().unwrap(), false);
        let endpoint = ProductIndices { p1: 2.0, p2: 2.0, q: 1.0, s: (1.0, -0.75), sigma: (0.1, 0.25) };
        assert_eq!(endpoint.check().unwrap(), true);
        let bad = ProductIndices { q: 2.0, ..endpoint };
        assert!(bad.check().is_err());
        let bad = ProductIndices { s: (-0.5, 0.2), ..good };
        assert!(bad.check().is_err());
    }

    #[test]
    fn interpolation_ratio_is_amplitude_free() {
        let g = Grid::cubic(32).unwrap();
        let base = SpectralField::from_fn(g, |x, y, z| (x + 2.0 * z).sin() + 0.5 * (2.0 * y - z).cos());
        let ratios: Vec<[f64; 3]> = [0.1, 1.0, 10.0]
            .iter()
            .map(|&amp| {
                let a = base.scale(amp);
                let tq = three_quarter_norms(&a).unwrap();
                let (l1, r1) = gradient_l32(&a, tq).unwrap();
                let (l2, r2) = sobolev_from_three_quarter(&a, 0.5, tq).unwrap();
                let n = FieldNorms::new(&a);
                let (l3, r3) = htheta_interpolation(&n, 0.25, 0.125).unwrap();
                [l1 / r1, l2 / r2, l3 / r3]
            })
            .collect();
        for i in 0..3 {
            assert!((ratios[0][i] - ratios[1][i]).abs() < 1e-9 * ratios[1][i], "{i} {ratios:?}");
            assert!((ratios[2][i] - ratios[1][i]).abs() < 1e-9 * ratios[1][i], "{i} {ratios:?}");
        }
    }

    #[test]
    fn dual_sobolev_two_routes() {
        let g = Grid::cubic(32).unwrap();
        let a = SpectralField::from_fn(g, |x, y, z| (x + z).sin() * (1.0 + 0.3 * y.cos()));
        let direct = lp_norm_real(&a.to_real(), 1.5).unwrap();
        let via = three_quarter_sq(&a).powf(2.0 / 3.0);
        assert!((direct - via).abs() < 1e-12 * direct);
    }

    #[test]
    fn gradient_l32_constant_is_four_thirds() {
        // |grad a| = (4/3)|grad a_{3/4}||a|^{1/4}; Holder gives the constant 4/3
        let g = Grid::cubic(32).unwrap();
        let a = SpectralField::from_fn(g, |x, y, z| (x + z).sin() + 0.4 * (2.0 * y).cos());
        let (l, r) = gradient_l32(&a, three_quarter_norms(&a).unwrap()).unwrap();
        assert!(l <= 4.0 / 3.0 * r * 1.01, "{}", l / r);
    }

    #[test]
    fn trilinear_parameters() {
        let g = Grid::cubic(8).unwrap();
        let z = SpectralField::zeros(g);
        assert!(trilinear_bounds(&z, &z, &z, 0.7, 0.1).is_err());
        assert!(trilinear_bounds(&z, &z, &z, 0.9, 0.2).is_err());
        assert_eq!(trilinear_bounds(&z, &z, &z, 0.9, 0.1).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn two_dimensional_flow_has_no_d3v3_terms() {
        let g = Grid::cubic(16).unwrap();
        let v = VelocityState::from_fn(g, |x, y, _| [y.sin() * x.cos(), -x.sin() * y.cos(), 0.0]).unwrap();
        let (l, r) = divergence_free_htheta(&v, 0.125).unwrap();
        assert_eq!(l, 0.0);
        assert!(r > 0.0);
        let (l, _) = htheta_transport_pairing(&v, 0, BoundedMultiplier::Identity, 5.0, 0.125).unwrap();
        assert_eq!(l, 0.0);
    }

    #[test]
    fn endpoint_inclusion_single_mode() {
        let g = Grid::cubic(32).unwrap();
        let v = VelocityState::from_fn(g, |_, y, _| [y.sin(), 0.0, 0.0]).unwrap();
        let (l, r) = endpoint_besov_inclusion(&v, 5.0).unwrap();
        assert!(l > 0.0 && r > 0.0);
        // ||sin||_{L^5} over the box: (int |sin|^5)^{1/5} (2 pi)^{2/5}
        let n = 32;
        let line: f64 = (0..n).map(|i| (2.0 * PI * i as f64 / n as f64).sin().abs().powi(5)).sum::<f64>()
            * 2.0 * PI / n as f64;
        let expect = (line * (2.0 * PI).powi(2)).powf(0.2);
        assert!((r - expect).abs() < 1e-12 * expect);
    }
}
