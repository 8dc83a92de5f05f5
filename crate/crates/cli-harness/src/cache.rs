//! Flat binary cache for sample sets and theoretical curves.
//!
//! Layout: 8-byte magic, one version byte, one kind byte, then little-endian payload.
//! A file that does not parse is ignored and recomputed.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use empirical_stats::{AngleSampleSet, Convention};

use crate::error::HarnessError;
use crate::theory::TheoryPoint;

const MAGIC: &[u8; 8] = b"GEOCORR\0";
const VERSION: u8 = 1;
const KIND_SAMPLES: u8 = 1;
const KIND_THEORY: u8 = 2;

fn convention_tag(c: Convention) -> &'static str {
    match c {
        Convention::Angle => "angle",
        Convention::Tan => "tan",
    }
}

pub fn samples_path(dir: &Path, order: i64, conv: Convention) -> PathBuf {
    dir.join(format!("samples-q{order}-{}.bin", convention_tag(conv)))
}

pub fn theory_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("theory-{key}.bin"))
}

fn header(kind: u8) -> Vec<u8> {
    let mut v = MAGIC.to_vec();
    v.push(VERSION);
    v.push(kind);
    v
}

/// Write to a temporary name first so an interrupted run leaves no truncated file.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), HarnessError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    fs::File::create(&tmp)?.write_all(bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

struct Reader {
    bytes: Vec<u8>,
    pos: usize,
}

impl Reader {
    fn open(path: &Path, kind: u8) -> Option<Reader> {
        let mut bytes = Vec::new();
        fs::File::open(path).ok()?.read_to_end(&mut bytes).ok()?;
        let h = header(kind);
        (bytes.len() >= h.len() && bytes[..h.len()] == h[..]).then_some(Reader { pos: h.len(), bytes })
    }

    fn take<const N: usize>(&mut self) -> Option<[u8; N]> {
        let s = self.bytes.get(self.pos..self.pos + N)?;
        self.pos += N;
        s.try_into().ok()
    }

    fn u64(&mut self) -> Option<u64> {
        self.take().map(u64::from_le_bytes)
    }

    fn f64(&mut self) -> Option<f64> {
        self.take().map(f64::from_le_bytes)
    }

    fn done(&self) -> bool {
        self.pos == self.bytes.len()
    }
}

pub fn store_samples(path: &Path, order: i64, samples: &AngleSampleSet) -> Result<(), HarnessError> {
    let mut v = header(KIND_SAMPLES);
    v.extend_from_slice(&order.to_le_bytes());
    v.push(matches!(samples.convention(), Convention::Tan) as u8);
    v.extend_from_slice(&(samples.b() as u64).to_le_bytes());
    for x in samples.values() {
        v.extend_from_slice(&x.to_le_bytes());
    }
    write_atomic(path, &v)
}

pub fn load_samples(path: &Path, order: i64, conv: Convention) -> Option<AngleSampleSet> {
    let mut r = Reader::open(path, KIND_SAMPLES)?;
    if r.u64()? as i64 != order || r.take::<1>()?[0] != matches!(conv, Convention::Tan) as u8 {
        return None;
    }
    let n = r.u64()? as usize;
    let values: Option<Vec<f64>> = (0..n).map(|_| r.f64()).collect();
    let values = values?;
    r.done().then(|| AngleSampleSet::new(values, conv).ok()).flatten()
}

pub fn store_theory(path: &Path, points: &[TheoryPoint]) -> Result<(), HarnessError> {
    let mut v = header(KIND_THEORY);
    v.extend_from_slice(&(points.len() as u64).to_le_bytes());
    for p in points {
        for f in [p.x, p.cumulative, p.cumulative_tail, p.density, p.density_tail] {
            v.extend_from_slice(&f.to_le_bytes());
        }
    }
    write_atomic(path, &v)
}

/// Loads a curve only if it was computed on exactly `grid`.
pub fn load_theory(path: &Path, grid: &[f64]) -> Option<Vec<TheoryPoint>> {
    let mut r = Reader::open(path, KIND_THEORY)?;
    let n = r.u64()? as usize;
    if n != grid.len() {
        return None;
    }
    let mut out = Vec::with_capacity(n);
    for &x in grid {
        let p = TheoryPoint {
            x: r.f64()?,
            cumulative: r.f64()?,
            cumulative_tail: r.f64()?,
            density: r.f64()?,
            density_tail: r.f64()?,
        };
        if p.x.to_bits() != x.to_bits() {
            return None;
        }
        out.push(p);
    }
    r.done().then_some(out)
}

/// The sample set at `order`, read from `dir` when cached and written there otherwise.
pub fn cached_samples(dir: Option<&Path>, order: i64, conv: Convention) -> Result<AngleSampleSet, HarnessError> {
    let Some(dir) = dir else {
        return Ok(AngleSampleSet::from_ball(order, conv));
    };
    let path = samples_path(dir, order, conv);
    if let Some(s) = load_samples(&path, order, conv) {
        return Ok(s);
    }
    let s = AngleSampleSet::from_ball(order, conv);
    store_samples(&path, order, &s)?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scratch(name: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("geocorr-cache-test-{}-{name}", std::process::id()));
        fs::create_dir_all(&d).unwrap();
        d
    }

    #[test]
    fn samples_round_trip() {
        let dir = scratch("samples");
        let s = AngleSampleSet::from_ball(60, Convention::Angle);
        let p = samples_path(&dir, 60, Convention::Angle);
        store_samples(&p, 60, &s).unwrap();
        assert_eq!(load_samples(&p, 60, Convention::Angle), Some(s));
        assert_eq!(load_samples(&p, 61, Convention::Angle), None);
        assert_eq!(load_samples(&p, 60, Convention::Tan), None);
        // truncation and bad magic are rejected
        let bytes = fs::read(&p).unwrap();
        fs::write(&p, &bytes[..bytes.len() - 3]).unwrap();
        assert_eq!(load_samples(&p, 60, Convention::Angle), None);
        let mut bad = bytes.clone();
        bad[0] = b'X';
        fs::write(&p, &bad).unwrap();
        assert_eq!(load_samples(&p, 60, Convention::Angle), None);
        bad = bytes;
        bad[8] = VERSION + 1;
        fs::write(&p, &bad).unwrap();
        assert_eq!(load_samples(&p, 60, Convention::Angle), None);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn theory_round_trip() {
        let dir = scratch("theory");
        let pts: Vec<TheoryPoint> = (0..5)
            .map(|i| TheoryPoint {
                x: i as f64 * 0.1,
                cumulative: i as f64,
                cumulative_tail: 1e-6,
                density: 0.7,
                density_tail: 2e-6,
            })
            .collect();
        let grid: Vec<f64> = pts.iter().map(|p| p.x).collect();
        let p = theory_path(&dir, "k");
        store_theory(&p, &pts).unwrap();
        assert_eq!(load_theory(&p, &grid), Some(pts));
        assert_eq!(load_theory(&p, &grid[..4]), None);
        let mut other = grid.clone();
        other[2] += 1e-12;
        assert_eq!(load_theory(&p, &other), None);
        fs::remove_dir_all(&dir).unwrap();
    }
}
