//! Seeded corpora of band-limited test fields.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::random::{random_scalar, random_solenoidal, Band};
use crate::spectral::{Grid, SpectralField, VelocityState};
use crate::vorticity::SOLENOIDAL_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorKind {
    Scalar,
    Solenoidal,
    /// `cos(m . x)` with a random phase.
    SingleMode { mode: [i64; 3] },
}

/// A reproducible family of fields. Sample `i` of stream `c` depends only on
/// `(seed, c, i)`, so samples can be drawn in any order or in parallel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Corpus {
    pub seed: u64,
    pub count: usize,
    pub generator: GeneratorKind,
    pub band: Band,
    /// `L^2` norm of every sample.
    pub l2: f64,
}

#[derive(Debug, Clone)]
pub enum CorpusField {
    Scalar(SpectralField),
    Vector(VelocityState),
}

impl CorpusField {
    pub fn scalar(&self) -> Option<&SpectralField> {
        match self {
            Self::Scalar(f) => Some(f),
            Self::Vector(_) => None,
        }
    }

    pub fn vector(&self) -> Option<&VelocityState> {
        match self {
            Self::Vector(v) => Some(v),
            Self::Scalar(_) => None,
        }
    }
}

/// Independent generator for `(seed, stream, index)`.
pub fn sample_rng(seed: u64, stream: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(index as u64);
    rng
}

impl Corpus {
    pub fn new(seed: u64, count: usize, generator: GeneratorKind, band: Band) -> Self {
        Self {
            seed,
            count,
            generator,
            band,
            l2: 1.0,
        }
    }

    /// Sample `index` of stream `stream`, checked against its declared constraints.
    pub fn sample(&self, grid: Grid, stream: u64, index: usize) -> Result<CorpusField> {
        let mut rng = sample_rng(self.seed, stream, index);
        let field = match self.generator {
            GeneratorKind::Scalar => CorpusField::Scalar(random_scalar(grid, &self.band, self.l2, &mut rng)?),
            GeneratorKind::Solenoidal => {
                CorpusField::Vector(random_solenoidal(grid, &self.band, self.l2, &mut rng)?)
            }
            GeneratorKind::SingleMode { mode } => {
                use rand::Rng;
                let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                let f = SpectralField::cosine_mode(grid, mode, 1.0, phase)?;
                let n = f.l2_norm();
                if n == 0.0 || !f.is_dealiased() {
                    return Err(Error::Parameter(format!("mode {mode:?} is not resolved on {:?}", grid.n())));
                }
                CorpusField::Scalar(f.scale(self.l2 / n))
            }
        };
        self.check(&field)?;
        Ok(field)
    }

    fn check(&self, f: &CorpusField) -> Result<()> {
        match f {
            CorpusField::Scalar(s) => {
                if s.mean().abs() > 1e-14 * s.l2_norm().max(1.0) {
                    return Err(Error::Invariant("corpus scalar has a nonzero mean".into()));
                }
            }
            CorpusField::Vector(v) => {
                if v.divergence_defect() > SOLENOIDAL_TOL {
                    return Err(Error::Invariant("corpus vector field is not solenoidal".into()));
                }
            }
        }
        Ok(())
    }

    pub fn scalars(&self, grid: Grid, stream: u64) -> Result<Vec<SpectralField>> {
        (0..self.count)
            .map(|i| match self.sample(grid, stream, i)? {
                CorpusField::Scalar(f) => Ok(f),
                CorpusField::Vector(_) => Err(Error::Parameter("corpus generates vector fields".into())),
            })
            .collect()
    }
}
