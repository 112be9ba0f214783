//! The ten verification suites.

use super::checks::*;
use super::corpus::{Corpus, CorpusField, GeneratorKind};
use super::report::Gate;
use super::suite::{CaseInfo, Sample, Suite};
use crate::error::{Error, Result};
use crate::lp::norms::FieldNorms;
use crate::spectral::ops::lp_norm_real;
use crate::spectral::random::Band;
use crate::spectral::Grid;
use crate::monitors::quantities::three_quarter_sq;

pub const SUITE_IDS: [&str; 10] = [
    "lemma4.2-bernstein",
    "lemma4.3-embedding",
    "lemma4.4-isoaniso",
    "eq-isoanisoinclud",
    "eq-inclusionSobolevtypeaniso",
    "lemma4.6-product",
    "lemma3.2-interpolation",
    "lemma5.1-holder",
    "eq-b.1-trilinear",
    "prop2.1-biotsavart-aniso",
];

pub fn suite(id: &str) -> Result<Box<dyn Suite>> {
    Ok(match id {
        "lemma4.2-bernstein" => Box::new(Bernstein),
        "lemma4.3-embedding" => Box::new(VerticalEmbedding),
        "lemma4.4-isoaniso" => Box::new(IsoAniso),
        "eq-isoanisoinclud" => Box::new(SobolevInclusion),
        "eq-inclusionSobolevtypeaniso" => Box::new(LebesgueInclusion),
        "lemma4.6-product" => Box::new(Product),
        "lemma3.2-interpolation" => Box::new(Interpolation),
        "lemma5.1-holder" => Box::new(Holder),
        "eq-b.1-trilinear" => Box::new(Trilinear),
        "prop2.1-biotsavart-aniso" => Box::new(VelocityBounds),
        other => {
            return Err(Error::Config(format!(
                "unknown suite id '{other}'; known: {}",
                SUITE_IDS.join(", ")
            )))
        }
    })
}

/// Corpus stream of component `c` of suite `id`.
fn stream(id: &str, c: u64) -> u64 {
    let salt = SUITE_IDS.iter().position(|s| *s == id).unwrap_or(SUITE_IDS.len()) as u64;
    salt * 64 + c
}

/// Bands stay within `|m| <= 5` per axis so products and powers are well
/// sampled on the coarse grid.
fn band(kh: (f64, f64), kv: (f64, f64), slope: f64) -> Band {
    Band {
        k: (0.0, 7.5),
        kh: (kh.0, kh.1.min(5.5)),
        kv: (kv.0, kv.1.min(5.0)),
        slope,
    }
}

const ANY: (f64, f64) = (0.0, f64::INFINITY);

fn scalar(id: &str, c: u64, band: Band, grid: Grid, seed: u64, index: usize) -> Result<crate::spectral::SpectralField> {
    match Corpus::new(seed, index + 1, GeneratorKind::Scalar, band).sample(grid, stream(id, c), index)? {
        CorpusField::Scalar(f) => Ok(f),
        CorpusField::Vector(_) => unreachable!("scalar generator"),
    }
}

fn solenoidal(id: &str, c: u64, band: Band, grid: Grid, seed: u64, index: usize) -> Result<crate::spectral::VelocityState> {
    match Corpus::new(seed, index + 1, GeneratorKind::Solenoidal, band).sample(grid, stream(id, c), index)? {
        CorpusField::Vector(v) => Ok(v),
        CorpusField::Scalar(_) => unreachable!("solenoidal generator"),
    }
}

fn fmt_p(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        format!("{p}")
    }
}

// ---- Bernstein inequalities ----

/// Dyadic scale of the balls and rings: support radius `2^1`.
const BERN_K: i32 = 1;
const BERN_PAIRS: [(f64, f64); 3] = [(1.0, 2.0), (2.0, f64::INFINITY), (1.5, 3.0)];
const BERN_ALPHA: [[usize; 2]; 6] = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]];
const BERN_RING_P: [(f64, f64); 3] = [(2.0, 2.0), (f64::INFINITY, f64::INFINITY), (3.0, 1.5)];

pub struct Bernstein;

impl Suite for Bernstein {
    fn id(&self) -> &'static str {
        "lemma4.2-bernstein"
    }

    fn cases(&self) -> Result<Vec<CaseInfo>> {
        let mut out = Vec::new();
        for (p2, p1) in BERN_PAIRS {
            for a in BERN_ALPHA {
                out.push(CaseInfo::new(
                    format!("ball-h/a={}{}/p={}->{}", a[0], a[1], fmt_p(p2), fmt_p(p1)),
                    format!("k={BERN_K}, q1=2"),
                    Gate::Bounded,
                ));
            }
        }
        for (q2, q1) in BERN_PAIRS {
            for b in 0..3 {
                out.push(CaseInfo::new(
                    format!("ball-v/b={b}/q={}->{}", fmt_p(q2), fmt_p(q1)),
                    format!("l={BERN_K}, p1=2"),
                    Gate::Bounded,
                ));
            }
        }
        for dir in ["ring-h", "ring-v"] {
            for n in 1..=2 {
                for (p, q) in BERN_RING_P {
                    out.push(CaseInfo::new(
                        format!("{dir}/N={n}/p={},q={}", fmt_p(p), fmt_p(q)),
                        format!("scale={BERN_K}"),
                        Gate::Bounded,
                    ));
                }
            }
        }
        Ok(out)
    }

    fn sample(&self, grid: Grid, seed: u64, index: usize) -> Result<Sample> {
        let r = 2f64.powi(BERN_K);
        let ring = (0.75 * r, 8.0 / 3.0 * r);
        let bands = [
            band((0.0, r), ANY, 1.0),
            band(ANY, (0.0, r), 1.0),
            band(ring, ANY, 1.0),
            band(ANY, ring, 1.0),
        ];
        let scalars = bands
            .iter()
            .enumerate()
            .map(|(c, b)| scalar(self.id(), c as u64, *b, grid, seed, index))
            .collect::<Result<_>>()?;
        Ok(Sample {
            scalars,
            vectors: vec![],
        })
    }

    fn evaluate(&self, s: &Sample) -> Result<Vec<(f64, f64)>> {
        let [bh, bv, rh, rv] = [&s.scalars[0], &s.scalars[1], &s.scalars[2], &s.scalars[3]];
        let mut out = Vec::new();
        for pair in BERN_PAIRS {
            for a in BERN_ALPHA {
                out.push(bernstein_horizontal_ball(bh, BERN_K, a, pair, 2.0)?);
            }
        }
        for pair in BERN_PAIRS {
            for b in 0..3 {
                out.push(bernstein_vertical_ball(bv, BERN_K, b, 2.0, pair)?);
            }
        }
        for n in 1..=2 {
            for (p, q) in BERN_RING_P {
                out.push(bernstein_horizontal_ring(rh, BERN_K, n, p, q)?);
            }
        }
        for n in 1..=2 {
            for (p, q) in BERN_RING_P {
                out.push(bernstein_vertical_ring(rv, BERN_K, n, p, q)?);
            }
        }
        Ok(out)
    }
}

// ---- embeddings ----

const EMB_S: [f64; 3] = [0.5, 0.9, 1.3];
const EMB_PQ: [(f64, f64); 3] = [(2.0, 2.0), (3.0, 2.0), (2.0, 1.0)];
const EMB_THETA: [f64; 3] = [0.2, 0.5, 0.8];

fn generic_scalar(id: &str, grid: Grid, seed: u64, index: usize) -> Result<Sample> {
    Ok(Sample {
        scalars: vec![scalar(id, 0, band(ANY, ANY, 1.0), grid, seed, index)?],
        vectors: vec![],
    })
}

pub struct VerticalEmbedding;

impl Suite for VerticalEmbedding {
    fn id(&self) -> &'static str {
        "lemma4.3-embedding"
    }

    fn cases(&self) -> Result<Vec<CaseInfo>> {
        let mut out = Vec::new();
        for s in EMB_S {
            for (p, q) in EMB_PQ {
                param_check(vertical_params(s, p, q))?;
                out.push(CaseInfo::new(format!("s={s}/p={p},q={q}"), "", Gate::Bounded));
            }
        }
        Ok(out)
    }

    fn sample(&self, grid: Grid, seed: u64, index: usize) -> Result<Sample> {
        generic_scalar(self.id(), grid, seed, index)
    }

    fn evaluate(&self, s: &Sample) -> Result<Vec<(f64, f64)>> {
        let a = &s.scalars[0];
        let mut out = Vec::new();
        for s in EMB_S {
            for (p, q) in EMB_PQ {
                out.push(vertical_besov_embedding(a, s, p, q)?);
            }
        }
        Ok(out)
    }
}

fn vertical_params(s: f64, p: f64, q: f64) -> Result<()> {
    if s > 0.0 && q >= 1.0 && p >= q {
        Ok(())
    } else {
        Err(Error::Parameter(format!("embedding needs s > 0 and p >= q >= 1, got s={s}, p={p}, q={q}")))
    }
}

fn param_check(r: Result<()>) -> Result<()> {
    r
}

pub struct IsoAniso;

impl Suite for IsoAniso {
    fn id(&self) -> &'static str {
        "lemma4.4-isoaniso"
    }

    fn cases(&self) -> Result<Vec<CaseInfo>> {
        let mut out = Vec::new();
        for s in EMB_S {
            for t in EMB_THETA {
                for (p, q) in EMB_PQ {
                    out.push(CaseInfo::new(
                        format!("s={s}/theta={}/p={p},q={q}", t * s),
                        "vertical l^1",
                        Gate::Bounded,
                    ));
                }
            }
        }
        Ok(out)
    }

    fn sample(&self, grid: Grid, seed: u64, index: usize) -> Result<Sample> {
        generic_scalar(self.id(), grid, seed, index)
    }

    fn evaluate(&self, s: &Sample) -> Result<Vec<(f64, f64)>> {
        let n = FieldNorms::new(&s.scalars[0]);
        let mut out = Vec::new();
        for s in EMB_S {
            for t in EMB_THETA {
                for (p, q) in EMB_PQ {
                    out.push(iso_aniso_embedding(&n, s, t * s, p, q)?);
                }
            }
        }
        Ok(out)
    }
}

const UPPER: [(f64, f64); 4] = [(0.3, 0.4), (0.5, 0.0), (0.0, 0.7), (1.0, 0.25)];
const LOWER: [(f64, f64); 4] = [(-0.3, -0.4), (-0.5, 0.0), (0.0, -0.25), (-0.2, -0.2)];

pub struct SobolevInclusion;

impl Suite for SobolevInclusion {
    fn id(&self) -> &'static str {
        "eq-isoanisoinclud"
    }

    fn cases(&self) -> Result<Vec<CaseInfo>> {
        let mut out = Vec::new();
        for (s, sp) in UPPER {
            out.push(CaseInfo::new(format!("upper/s={s},s'={sp}"), "H^{s,s'} <= H^{s+s'}", Gate::Hard));
        }
        for (s, sp) in LOWER {
            out.push(CaseInfo::new(format!("lower/s={s},s'={sp}"), "H^{s+s'} <= H^{s,s'}", Gate::Hard));
        }
        Ok(out)
    }

    fn sample(&self, grid: Grid, seed: u64, index: usize) -> Result<Sample> {
        // the lower branch needs fields away from the planes xi_h = 0 and xi_3 = 0
        Ok(Sample {
            scalars: vec![
                scalar(self.id(), 0, band(ANY, ANY, 1.0), grid, seed, index)?,
                scalar(self.id(), 1, band((1.0, f64::INFINITY), (1.0, f64::INFINITY), 1.0), grid, seed, index)?,
            ],
            vectors: vec![],
        })
    }

    fn evaluate(&self, s: &Sample) -> Result<Vec<(f64, f64)>> {
        let mut out = Vec::new();
        for (a, b) in UPPER {
            out.push(aniso_below_iso(&s.scalars[0], a, b)?);
        }
        for (a, b) in LOWER {
            out.push(iso_below_aniso(&s.scalars[1], a, b)?);
        }
        Ok(out)
    }
}

const INCL_P: [(f64, f64); 3] = [(1.0, 2.0), (2.0, f64::INFINITY), (1.5, 3.0)];
const INCL_S: [(f64, f64); 2] = [(0.5, 0.5), (1.0, 0.25)];
const INCL_Q: [(f64, f64); 2] = [(2.0, 2.0), (2.0, 1.0)];

pub struct LebesgueInclusion;

impl Suite for LebesgueInclusion {
    fn id(&self) -> &'static str {
        "eq-inclusionSobolevtypeaniso"
    }

    fn cases(&self) -> Result<Vec<CaseInfo>> {
        let mut out = Vec::new();
        for (p2, p1) in INCL_P {
            for (s1, s2) in INCL_S {
                for (q1, q2) in INCL_Q {
                    out.push(CaseInfo::new(
                        format!("p={}->{}/s={s1},{s2}/q={q1},{q2}", fmt_p(p2), fmt_p(p1)),
                        "",
                        Gate::Bounded,
                    ));
                }
            }
        }
        Ok(out)
    }

    fn sample(&self, grid: Grid, seed: u64, index: usize) -> Result<Sample> {
        generic_scalar(self.id(), grid, seed, index)
    }

    fn evaluate(&self, s: &Sample) -> Result<Vec<(f64, f64)>> {
        let n = FieldNorms::new(&s.scalars[0]);
        let mut out = Vec::new();
        for p in INCL_P {
            for sv in INCL_S {
                for q in INCL_Q {
                    out.push(aniso_lebesgue_inclusion(&n, sv, p, q)?);
                }
            }
        }
        Ok(out)
    }
}

// ---- anisotropic product laws ----

/// Interior index sets plus the two endpoint sets used by the `d3 v3` energy estimate.
pub const PRODUCT_INDICES: [ProductIndices; 6] = [
    ProductIndices { p1: 2.0, p2: 2.0, q: 2.0, s: (0.125, 0.125), sigma: (0.175, 0.175) },
    ProductIndices { p1: 2.0, p2: 2.0, q: 1.0, s: (1.0, -0.75), sigma: (0.1, 0.25) },
    ProductIndices { p1: 2.0, p2: 2.0, q: 2.0, s: (0.5, 0.5), sigma: (0.25, 0.25) },
    ProductIndices { p1: 3.0, p2: 2.0, q: 2.0, s: (0.3, 0.6), sigma: (0.1, 0.2) },
    ProductIndices { p1: 4.0, p2: 2.0, q: 2.0, s: (0.2, 0.5), sigma: (0.1, 0.3) },
    ProductIndices { p1: 2.0, p2: 2.0, q: 1.0, s: (0.6, -0.2), sigma: (0.3, -0.1) },
];

pub struct Product;

impl Suite for Product {
    fn id(&self) -> &'static str {
        "lemma4.6-product"
    }

    fn cases(&self) -> Result<Vec<CaseInfo>> {
        PRODUCT_INDICES
            .iter()
            .enumerate()
            .map(|(i, ix)| {
                let endpoint = ix.check()?;
                Ok(CaseInfo::new(
                    format!("set{i}/p={},{}/q={}", ix.p1, ix.p2, ix.q),
                    format!("s={:?}, sigma={:?}{}", ix.s, ix.sigma, if endpoint { ", hypothesis-boundary" } else { "" }),
                    if endpoint { Gate::Informational } else { Gate::Bounded },
                ))
            })
            .collect()
    }

    /// Samples cycle through independent pairs, `a = b`, and a high-band `a` against a low-band `b`.
    fn sample(&self, grid: Grid, seed: u64, index: usize) -> Result<Sample> {
        let id = self.id();
        let scalars = match index % 3 {
            0 => vec![
                scalar(id, 0, band(ANY, ANY, 1.0), grid, seed, index)?,
                scalar(id, 1, band(ANY, ANY, 1.0), grid, seed, index)?,
            ],
            1 => {
                let a = scalar(id, 0, band(ANY, ANY, 1.0), grid, seed, index)?;
                vec![a.clone(), a]
            }
            _ => {
                let mut high = band(ANY, ANY, 1.0);
                high.k = (3.0, 7.5);
                let mut low = band(ANY, ANY, 1.0);
                low.k = (0.0, 2.0);
                vec![
                    scalar(id, 0, high, grid, seed, index)?,
                    scalar(id, 1, low, grid, seed, index)?,
                ]
            }
        };
        Ok(Sample {
            scalars,
            vectors: vec![],
        })
    }

    fn evaluate(&self, s: &Sample) -> Result<Vec<(f64, f64)>> {
        let a = FieldNorms::new(&s.scalars[0]);
        let b = FieldNorms::new(&s.scalars[1]);
        PRODUCT_INDICES.iter().map(|ix| product_law(&a, &b, ix)).collect()
    }
}

// ---- L^{3/2} interpolation ----

const INTERP_S: [f64; 4] = [-0.5, 0.0, 0.5, 5.0 / 6.0];
const INTERP_AT: [f64; 3] = [0.1, 0.25, 0.4];
/// Tolerance of the two-route `L^{3/2}` identity.
pub const TWO_ROUTE_TOL: f64 = 1e-10;

pub struct Interpolation;

impl Suite for Interpolation {
    fn id(&self) -> &'static str {
        "lemma3.2-interpolation"
    }

    fn cases(&self) -> Result<Vec<CaseInfo>> {
        let mut out = vec![CaseInfo::new("grad-l32", "||grad a||_{3/2} vs ||grad a34|| ||a34||^{1/3}", Gate::Bounded)];
        for s in INTERP_S {
            out.push(CaseInfo::new(format!("sobolev/s={s:.4}"), "", Gate::Bounded));
        }
        out.push(CaseInfo::new("dual-sobolev", "H^{-1/2} vs L^{3/2}", Gate::Bounded));
        out.push(CaseInfo::new(
            "l32-two-route",
            format!("| ||a||_{{3/2}} - ||a34||^{{4/3}} | vs {TWO_ROUTE_TOL} ||a||_{{3/2}}"),
            Gate::Hard,
        ));
        for a in INTERP_AT {
            for t in INTERP_AT {
                out.push(CaseInfo::new(format!("htheta/alpha={a},theta={t}"), "", Gate::Bounded));
            }
        }
        Ok(out)
    }

    fn sample(&self, grid: Grid, seed: u64, index: usize) -> Result<Sample> {
        generic_scalar(self.id(), grid, seed, index)
    }

    fn evaluate(&self, s: &Sample) -> Result<Vec<(f64, f64)>> {
        let a = &s.scalars[0];
        let tq = three_quarter_norms(a)?;
        let mut out = vec![gradient_l32(a, tq)?];
        for s in INTERP_S {
            out.push(sobolev_from_three_quarter(a, s, tq)?);
        }
        let l32 = lp_norm_real(&a.to_real(), 1.5)?;
        out.push((crate::lp::norms::sobolev_sq(a, -0.5).sqrt(), l32));
        let via = three_quarter_sq(a).powf(2.0 / 3.0);
        out.push(((l32 - via).abs(), TWO_ROUTE_TOL * l32));
        let n = FieldNorms::new(a);
        for al in INTERP_AT {
            for t in INTERP_AT {
                out.push(htheta_interpolation(&n, al, t)?);
            }
        }
        Ok(out)
    }
}

// ---- Holder bounds for signed powers ----

const HOLDER: [(f64, f64, f64, f64); 4] = [
    (0.9, 2.0 / 3.0, 2.0, 2.0),
    (0.6, 2.0 / 3.0, 2.0, 2.0),
    (0.9, 2.0 / 3.0, 3.0, 3.0),
    (0.8, 0.5, 2.0, 2.0),
];

pub struct Holder;

impl Suite for Holder {
    fn id(&self) -> &'static str {
        "lemma5.1-holder"
    }

    fn cases(&self) -> Result<Vec<CaseInfo>> {
        Ok(HOLDER
            .iter()
            .map(|&(s, a, p, q)| {
                CaseInfo::new(
                    format!("s={s}/alpha={a:.4}/p={p},q={q}"),
                    "G(r) = r|r|^{alpha-1}",
                    Gate::Bounded,
                )
            })
            .collect())
    }

    fn sample(&self, grid: Grid, seed: u64, index: usize) -> Result<Sample> {
        generic_scalar(self.id(), grid, seed, index)
    }

    fn evaluate(&self, s: &Sample) -> Result<Vec<(f64, f64)>> {
        let n = FieldNorms::new(&s.scalars[0]);
        HOLDER.iter().map(|&(s, a, p, q)| holder_composition(&n, s, a, p, q)).collect()
    }
}

// ---- trilinear forms ----

const TRI_SIGMA: [f64; 3] = [0.8, 0.9, 0.95];
const TRI_THETA: f64 = 0.125;
const ENERGY_P: f64 = 5.0;
const PAIRING_THETA: [f64; 2] = [0.1, 0.125];
const PAIRING_A: [BoundedMultiplier; 3] = [
    BoundedMultiplier::Identity,
    BoundedMultiplier::D33InvLaplacian,
    BoundedMultiplier::D11InvHorizontalLaplacian,
];
const TRANSPORT_A: [BoundedMultiplier; 2] = [BoundedMultiplier::Identity, BoundedMultiplier::D33InvLaplacian];

pub struct Trilinear;

impl Suite for Trilinear {
    fn id(&self) -> &'static str {
        "eq-b.1-trilinear"
    }

    fn margin(&self) -> f64 {
        0.15
    }

    fn cases(&self) -> Result<Vec<CaseInfo>> {
        let mut out = Vec::new();
        for sg in TRI_SIGMA {
            for v in ["l32", "htheta"] {
                out.push(CaseInfo::new(
                    format!("b1-{v}/sigma={sg}"),
                    format!("s = 3/2 - 2 sigma/3, theta={TRI_THETA}"),
                    Gate::Bounded,
                ));
            }
        }
        for m in PAIRING_A {
            for t in PAIRING_THETA {
                out.push(CaseInfo::new(
                    format!("pairing/{}/theta={t}", m.name()),
                    format!("p={ENERGY_P}"),
                    Gate::Bounded,
                ));
            }
        }
        for m in TRANSPORT_A {
            for l in 1..=2 {
                out.push(CaseInfo::new(
                    format!("transport/{}/l={l}", m.name()),
                    format!("p={ENERGY_P}, theta={TRI_THETA}"),
                    Gate::Bounded,
                ));
            }
        }
        Ok(out)
    }

    fn sample(&self, grid: Grid, seed: u64, index: usize) -> Result<Sample> {
        let id = self.id();
        let b = band(ANY, ANY, 1.0);
        Ok(Sample {
            scalars: vec![
                // f must avoid xi_h = 0 where d_h Lap_h^{-1} is singular
                scalar(id, 0, band((1.0, f64::INFINITY), ANY, 1.0), grid, seed, index)?,
                scalar(id, 1, b, grid, seed, index)?,
                scalar(id, 2, b, grid, seed, index)?,
                scalar(id, 3, b, grid, seed, index)?,
            ],
            vectors: vec![solenoidal(id, 4, band(ANY, ANY, 5.0 / 3.0), grid, seed, index)?],
        })
    }

    fn evaluate(&self, s: &Sample) -> Result<Vec<(f64, f64)>> {
        let (f, a, w, g) = (&s.scalars[0], &s.scalars[1], &s.scalars[2], &s.scalars[3]);
        let v = &s.vectors[0];
        let w_half = crate::spectral::ops::signed_power(w, 0.5)?;
        let lhs = trilinear_integral(f, a, &w_half);
        let mut out = Vec::new();
        for sg in TRI_SIGMA {
            let (r1, r2) = trilinear_bounds(f, a, w, sg, TRI_THETA)?;
            out.push((lhs, r1));
            out.push((lhs, r2));
        }
        for m in PAIRING_A {
            for t in PAIRING_THETA {
                out.push(htheta_product_pairing(f, g, v, m, ENERGY_P, t)?);
            }
        }
        for m in TRANSPORT_A {
            for l in 0..2 {
                out.push(htheta_transport_pairing(v, l, m, ENERGY_P, TRI_THETA)?);
            }
        }
        Ok(out)
    }
}

// ---- velocity bounds from the Biot-Savart split ----

const VEL_AT: [f64; 3] = [0.1, 0.25, 0.4];
pub const DIV_FREE_THETA: [f64; 4] = [0.1, 0.125, 0.25, 0.4];
const BP_P: [f64; 3] = [4.0, 5.0, 6.0];

pub struct VelocityBounds;

impl Suite for VelocityBounds {
    fn id(&self) -> &'static str {
        "prop2.1-biotsavart-aniso"
    }

    fn cases(&self) -> Result<Vec<CaseInfo>> {
        let mut out = Vec::new();
        for a in VEL_AT {
            for t in VEL_AT {
                out.push(CaseInfo::new(format!("vh-aniso/alpha={a},theta={t}"), "", Gate::Bounded));
            }
        }
        for t in DIV_FREE_THETA {
            out.push(CaseInfo::new(
                format!("d3w3-htheta/theta={t}"),
                "||d3 w3||_{H_theta} vs ||w||_{H^{1/2}}",
                Gate::Bounded,
            ));
        }
        for p in BP_P {
            out.push(CaseInfo::new(
                format!("endpoint-bp/p={p}"),
                format!("max ||d_l v^k||_{{B_p}} vs ||v||_{{L^q}}, q={}", 3.0 * p / (p - 2.0)),
                Gate::Bounded,
            ));
        }
        Ok(out)
    }

    fn sample(&self, grid: Grid, seed: u64, index: usize) -> Result<Sample> {
        Ok(Sample {
            scalars: vec![],
            vectors: vec![solenoidal(self.id(), 0, band(ANY, ANY, 5.0 / 3.0), grid, seed, index)?],
        })
    }

    fn evaluate(&self, s: &Sample) -> Result<Vec<(f64, f64)>> {
        let v = &s.vectors[0];
        let at: Vec<(f64, f64)> = VEL_AT.iter().flat_map(|&a| VEL_AT.iter().map(move |&t| (a, t))).collect();
        let mut out = horizontal_velocity_bounds(v, &at)?;
        for t in DIV_FREE_THETA {
            out.push(divergence_free_htheta(v, t)?);
        }
        out.extend(endpoint_besov_inclusions(v, &BP_P)?);
        Ok(out)
    }
}
