//! Binary PPM (`P6`, maxval 255) and its mapping to quaternion signals.
//!
//! A square `N × N` image is a signal on `Z_N × Z_N`: row `r`, column `c`
//! is the bin `(r, c)`. Red, green and blue go to the `i`, `j`, `k`
//! components scaled to `[0, 1]`; the scalar part is zero.

use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::quat::Quaternion;
use crate::signal::QSignal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ppm {
    pub width: usize,
    pub height: usize,
    /// Row-major RGB triples.
    pub pixels: Vec<u8>,
}

impl Ppm {
    pub fn decode(bytes: &[u8]) -> Result<Self> {
        let mut pos = 0;
        let magic = next_token(bytes, &mut pos)?;
        if magic != b"P6" {
            return Err(Error::Format("not a binary PPM (expected magic P6)".into()));
        }
        let width = parse_number(next_token(bytes, &mut pos)?)?;
        let height = parse_number(next_token(bytes, &mut pos)?)?;
        let maxval = parse_number(next_token(bytes, &mut pos)?)?;
        if maxval != 255 {
            return Err(Error::Format(format!("maxval {maxval} is not supported (expected 255)")));
        }
        // exactly one whitespace byte separates the header from the raster
        match bytes.get(pos) {
            Some(b) if b.is_ascii_whitespace() => pos += 1,
            _ => return Err(Error::Format("missing whitespace after maxval".into())),
        }
        let len = width
            .checked_mul(height)
            .and_then(|p| p.checked_mul(3))
            .ok_or_else(|| Error::Format("image dimensions overflow".into()))?;
        let raster = &bytes[pos..];
        if raster.len() != len {
            return Err(Error::Format(format!(
                "raster has {} bytes, {width}×{height} needs {len}",
                raster.len()
            )));
        }
        Ok(Ppm {
            width,
            height,
            pixels: raster.to_vec(),
        })
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }
}

fn next_token<'a>(bytes: &'a [u8], pos: &mut usize) -> Result<&'a [u8]> {
    loop {
        match bytes.get(*pos) {
            Some(b) if b.is_ascii_whitespace() => *pos += 1,
            Some(b'#') => {
                while bytes.get(*pos).is_some_and(|&b| b != b'\n') {
                    *pos += 1;
                }
            }
            Some(_) => break,
            None => return Err(Error::Format("truncated PPM header".into())),
        }
    }
    let start = *pos;
    while bytes.get(*pos).is_some_and(|b| !b.is_ascii_whitespace()) {
        *pos += 1;
    }
    Ok(&bytes[start..*pos])
}

fn parse_number(tok: &[u8]) -> Result<usize> {
    std::str::from_utf8(tok)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Format(format!("bad PPM header field '{}'", String::from_utf8_lossy(tok))))
}

/// `R/255 ↦ i`, `G/255 ↦ j`, `B/255 ↦ k`, scalar part 0.
pub fn image_to_signal(img: &Ppm) -> Result<QSignal> {
    if img.width != img.height || img.width == 0 {
        return Err(Error::Domain(format!(
            "domain must be G×G: image is {}×{}",
            img.width, img.height
        )));
    }
    let group = FiniteAbelianGroup::cyclic(img.width)?;
    let values = img
        .pixels
        .chunks_exact(3)
        .map(|p| {
            Quaternion::new(
                0.0,
                f64::from(p[0]) / 255.0,
                f64::from(p[1]) / 255.0,
                f64::from(p[2]) / 255.0,
            )
        })
        .collect();
    QSignal::new(group, values)
}

/// Clamps to `[0, 1]`, scales by 255 and rounds half up.
pub fn quantize(v: f64) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0 + 0.5).floor() as u8
}

/// Inverse of [`image_to_signal`] for an `N × N` image, `N = |G|`.
pub fn signal_to_image(f: &QSignal) -> Ppm {
    let n = f.side_len();
    let pixels = f
        .values()
        .iter()
        .flat_map(|q| [quantize(q.x), quantize(q.y), quantize(q.z)])
        .collect();
    Ppm {
        width: n,
        height: n,
        pixels,
    }
}

/// Grayscale rendering of `|F|` on a log scale with zero frequency at the
/// center: pixel `(r, c)` shows bin `((r + ⌈N/2⌉) mod N, (c + ⌈N/2⌉) mod N)`.
pub fn magnitude_image(mags: &[f64], n: usize) -> Ppm {
    let max = mags.iter().copied().fold(0.0, f64::max);
    let denom = max.ln_1p();
    let shift = n - n / 2;
    let mut pixels = Vec::with_capacity(3 * n * n);
    for r in 0..n {
        for c in 0..n {
            let m = mags[((r + shift) % n) * n + (c + shift) % n];
            let level = if denom > 0.0 {
                (255.0 * m.ln_1p() / denom).round().clamp(0.0, 255.0) as u8
            } else {
                0
            };
            pixels.extend_from_slice(&[level; 3]);
        }
    }
    Ppm {
        width: n,
        height: n,
        pixels,
    }
}
