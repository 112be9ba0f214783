//! Binary snapshot files: magic `CNF1`, `u32 n1 n2 n3`, `f64 L1 L2 L3`,
//! `f64 time`, `u32 count`, then `count` coefficient arrays of `(re, im)`
//! `f64` pairs in storage order. Everything is little-endian.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rustfft::num_complex::Complex64;

use super::field::SpectralField;
use super::grid::Grid;
use super::velocity::VelocityState;
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"CNF1";
const HEADER_LEN: usize = 4 + 3 * 4 + 3 * 8 + 8 + 4;

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub grid: Grid,
    pub time: f64,
    pub components: Vec<SpectralField>,
}

impl Snapshot {
    pub fn from_velocity(v: &VelocityState) -> Self {
        Self {
            grid: *v.grid(),
            time: v.time,
            components: v.components().to_vec(),
        }
    }

    pub fn scalar(field: SpectralField, time: f64) -> Self {
        Self {
            grid: *field.grid(),
            time,
            components: vec![field],
        }
    }

    /// Three components are read as a velocity state, with its invariants checked.
    pub fn to_velocity(&self) -> Result<VelocityState> {
        match self.components.as_slice() {
            [a, b, c] => VelocityState::new([a.clone(), b.clone(), c.clone()], self.time),
            other => Err(Error::Format(format!(
                "expected 3 velocity components, found {}",
                other.len()
            ))),
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.components.len() * self.grid.size() * 16);
        out.extend_from_slice(MAGIC);
        for n in self.grid.n() {
            out.extend_from_slice(&(n as u32).to_le_bytes());
        }
        for l in self.grid.lengths() {
            out.extend_from_slice(&l.to_le_bytes());
        }
        out.extend_from_slice(&self.time.to_le_bytes());
        out.extend_from_slice(&(self.components.len() as u32).to_le_bytes());
        for c in &self.components {
            for z in c.coeffs() {
                out.extend_from_slice(&z.re.to_le_bytes());
                out.extend_from_slice(&z.im.to_le_bytes());
            }
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN || &bytes[..4] != MAGIC {
            return Err(Error::Format("missing CNF1 header".into()));
        }
        let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
        let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
        let n = [u32_at(4) as usize, u32_at(8) as usize, u32_at(12) as usize];
        let len = [f64_at(16), f64_at(24), f64_at(32)];
        let time = f64_at(40);
        let count = u32_at(48) as usize;
        let grid = Grid::new(n, len).map_err(|e| Error::Format(format!("bad grid header: {e}")))?;
        let per = grid.size() * 16;
        let expected = count
            .checked_mul(per)
            .and_then(|p| p.checked_add(HEADER_LEN))
            .ok_or_else(|| Error::Format("component count overflows".into()))?;
        if bytes.len() != expected {
            return Err(Error::Format(format!(
                "expected {expected} bytes for {count} components, found {}",
                bytes.len()
            )));
        }
        let mut components = Vec::with_capacity(count);
        for c in 0..count {
            let base = HEADER_LEN + c * per;
            let coeffs = (0..grid.size())
                .map(|i| Complex64::new(f64_at(base + 16 * i), f64_at(base + 16 * i + 8)))
                .collect();
            components.push(
                SpectralField::from_coeffs(grid, coeffs)
                    .map_err(|e| Error::Format(format!("component {c}: {e}")))?,
            );
        }
        Ok(Self {
            grid,
            time,
            components,
        })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(&self.encode())?;
        w.flush()?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let mut bytes = Vec::new();
        BufReader::new(File::open(path)?).read_to_end(&mut bytes)?;
        Self::decode(&bytes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode_roundtrip() {
        let g = Grid::new([8, 8, 10], [1.0, 2.0, 3.0]).unwrap();
        let f = SpectralField::from_fn(g, |x, y, z| (6.0 * x).sin() + (y * z).cos());
        let s = Snapshot {
            grid: g,
            time: 0.25,
            components: vec![f.clone(), f.scale(2.0)],
        };
        let bytes = s.encode();
        assert_eq!(&bytes[..4], b"CNF1");
        assert_eq!(bytes.len(), HEADER_LEN + 2 * g.size() * 16);
        assert_eq!(Snapshot::decode(&bytes).unwrap(), s);
    }

    #[test]
    fn truncated_payload_rejected() {
        let g = Grid::cubic(8).unwrap();
        let bytes = Snapshot::scalar(SpectralField::zeros(g), 0.0).encode();
        assert!(matches!(
            Snapshot::decode(&bytes[..bytes.len() - 1]),
            Err(Error::Format(_))
        ));
        assert!(Snapshot::decode(b"XXXX").is_err());
    }
}
