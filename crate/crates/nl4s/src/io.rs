//! Field snapshots, trajectory tables and JSON reports.
//!
//! A snapshot is the bytes "NL4S", a u16 format version, a u16 dimension,
//! N_i as u32 and L_i as f64 for every axis, the time t as f64, and then the
//! ∏N_i values as (re, im) f64 pairs in row-major order. All numbers are
//! little-endian.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolution::TrajectoryRecord;
use crate::spectral::{Field, Grid};

pub const MAGIC: &[u8; 4] = b"NL4S";
pub const FORMAT_VERSION: u16 = 1;
/// Version string embedded in every report.
pub const VERSION: &str = concat!("nl4s ", env!("CARGO_PKG_VERSION"));

pub fn encode_field(f: &Field, t: f64) -> Vec<u8> {
    let g = f.grid();
    let d = g.dim();
    let mut out = Vec::with_capacity(16 + 12 * d + 16 * g.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&(d as u16).to_le_bytes());
    for &n in g.n_points() {
        out.extend_from_slice(&(n as u32).to_le_bytes());
    }
    for &l in g.lengths() {
        out.extend_from_slice(&l.to_le_bytes());
    }
    out.extend_from_slice(&t.to_le_bytes());
    for v in f.values() {
        out.extend_from_slice(&v.re.to_le_bytes());
        out.extend_from_slice(&v.im.to_le_bytes());
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take<const K: usize>(&mut self) -> Option<[u8; K]> {
        let s = self.bytes.get(self.pos..self.pos + K)?;
        self.pos += K;
        s.try_into().ok()
    }

    fn u16(&mut self) -> Option<u16> {
        self.take().map(u16::from_le_bytes)
    }

    fn u32(&mut self) -> Option<u32> {
        self.take().map(u32::from_le_bytes)
    }

    fn f64(&mut self) -> Option<f64> {
        self.take().map(f64::from_le_bytes)
    }
}

/// Decodes a snapshot; `origin` only labels errors.
pub fn decode_field(bytes: &[u8], origin: &str) -> Result<(Field, f64)> {
    let bad = |msg: String| Error::Format {
        path: origin.to_string(),
        msg,
    };
    let short = || bad("truncated header".into());
    let mut r = Reader { bytes, pos: 0 };
    if r.take::<4>().as_ref() != Some(MAGIC) {
        return Err(bad("missing NL4S magic".into()));
    }
    let version = r.u16().ok_or_else(short)?;
    if version != FORMAT_VERSION {
        return Err(bad(format!("unsupported format version {version}")));
    }
    let d = r.u16().ok_or_else(short)? as usize;
    if d == 0 {
        return Err(bad("zero dimension".into()));
    }
    let n: Vec<usize> = (0..d)
        .map(|_| r.u32().map(|v| v as usize))
        .collect::<Option<_>>()
        .ok_or_else(short)?;
    let l: Vec<f64> = (0..d).map(|_| r.f64()).collect::<Option<_>>().ok_or_else(short)?;
    let t = r.f64().ok_or_else(short)?;
    let grid = Grid::new(d, &n, &l).map_err(|e| bad(e.to_string()))?;
    let expect = r.pos + 16 * grid.len();
    if bytes.len() != expect {
        return Err(bad(format!("expected {expect} bytes, found {}", bytes.len())));
    }
    let values = (0..grid.len())
        .map(|_| {
            let re = r.f64().expect("length checked");
            let im = r.f64().expect("length checked");
            Complex64::new(re, im)
        })
        .collect();
    Ok((Field::from_values(&grid, values)?, t))
}

pub fn write_field(path: impl AsRef<Path>, f: &Field, t: f64) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_field(f, t)).map_err(|e| Error::io(path, e))
}

pub fn read_field(path: impl AsRef<Path>) -> Result<(Field, f64)> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_field(&bytes, &path.display().to_string())
}

/// Scientific form with 17 significant digits, enough to round-trip any f64.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn trajectory_csv(rows: &[TrajectoryRecord]) -> String {
    let mut s = String::from(TrajectoryRecord::HEADER);
    s.push('\n');
    for r in rows {
        let line: Vec<String> = r.values().iter().map(|&v| fmt17(v)).collect();
        s.push_str(&line.join(","));
        s.push('\n');
    }
    s
}

pub fn write_trajectory_csv(path: impl AsRef<Path>, rows: &[TrajectoryRecord]) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, trajectory_csv(rows)).map_err(|e| Error::io(path, e))
}

pub fn parse_trajectory_csv(text: &str, origin: &str) -> Result<Vec<TrajectoryRecord>> {
    let bad = |msg: String| Error::Format {
        path: origin.to_string(),
        msg,
    };
    let mut lines = text.lines();
    if lines.next() != Some(TrajectoryRecord::HEADER) {
        return Err(bad("unexpected header".into()));
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let v: Vec<f64> = line
                .split(',')
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| bad(format!("row {}: {e}", i + 1)))?;
            if v.len() != 9 {
                return Err(bad(format!("row {}: expected 9 columns", i + 1)));
            }
            Ok(TrajectoryRecord {
                t: v[0],
                dt: v[1],
                mass: v[2],
                energy: v[3],
                h_gamma_c: v[4],
                h_2: v[5],
                l_alpha2: v[6],
                l_alpha_c: v[7],
                max_amp: v[8],
            })
        })
        .collect()
}

pub fn write_json(path: impl AsRef<Path>, value: &impl Serialize) -> Result<()> {
    let path = path.as_ref();
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Format {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snapshot_layout_is_bit_exact() {
        let g = Grid::new(2, &[8, 16], &[2.0, 3.5]).unwrap();
        let f = Field::from_fn(&g, |x| Complex64::new(x[0], -x[1]));
        let bytes = encode_field(&f, 0.25);
        assert_eq!(&bytes[..4], b"NL4S");
        assert_eq!(u16::from_le_bytes([bytes[4], bytes[5]]), 1);
        assert_eq!(u16::from_le_bytes([bytes[6], bytes[7]]), 2);
        assert_eq!(u32::from_le_bytes(bytes[8..12].try_into().unwrap()), 8);
        assert_eq!(u32::from_le_bytes(bytes[12..16].try_into().unwrap()), 16);
        assert_eq!(f64::from_le_bytes(bytes[16..24].try_into().unwrap()), 2.0);
        assert_eq!(f64::from_le_bytes(bytes[24..32].try_into().unwrap()), 3.5);
        assert_eq!(f64::from_le_bytes(bytes[32..40].try_into().unwrap()), 0.25);
        assert_eq!(bytes.len(), 40 + 16 * 128);
        // second value in row-major order: x0 index 0, x1 index 1
        let re = f64::from_le_bytes(bytes[56..64].try_into().unwrap());
        let im = f64::from_le_bytes(bytes[64..72].try_into().unwrap());
        assert_eq!((re, im), (-1.0, -(-1.75 + 3.5 / 16.0)));
        let (back, t) = decode_field(&bytes, "mem").unwrap();
        assert_eq!(t, 0.25);
        assert_eq!(back, f);
        assert_eq!(encode_field(&back, t), bytes);
    }

    #[test]
    fn malformed_snapshots_are_rejected() {
        let g = Grid::cube(1, 8, 1.0).unwrap();
        let bytes = encode_field(&Field::zeros(&g), 0.0);
        for broken in [&bytes[..bytes.len() - 1], &bytes[..10], b"NL5S".as_slice()] {
            assert!(matches!(decode_field(broken, "x"), Err(Error::Format { .. })));
        }
        let mut v2 = bytes.clone();
        v2[4] = 2;
        assert!(matches!(decode_field(&v2, "x"), Err(Error::Format { .. })));
        assert!(matches!(read_field("/nonexistent/q.nl4s"), Err(Error::Io { .. })));
    }

    #[test]
    fn trajectory_round_trips_exactly() {
        let rows: Vec<TrajectoryRecord> = (0..5)
            .map(|i| {
                let x = 1.0 / (3.0 + i as f64);
                TrajectoryRecord {
                    t: x,
                    dt: x * 1e-7,
                    mass: std::f64::consts::PI,
                    energy: -x,
                    h_gamma_c: x.sqrt(),
                    h_2: 1e300 * x,
                    l_alpha2: 0.0,
                    l_alpha_c: f64::MIN_POSITIVE,
                    max_amp: 2.0,
                }
            })
            .collect();
        let text = trajectory_csv(&rows);
        assert!(text.starts_with("t,dt,mass,energy,h_gamma_c,h_2,l_alpha2,l_alpha_c,max_amp\n"));
        assert_eq!(parse_trajectory_csv(&text, "mem").unwrap(), rows);
        assert_eq!(fmt17(0.1), "1.0000000000000001e-1");
    }
}
