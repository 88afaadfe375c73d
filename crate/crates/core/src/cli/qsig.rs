//! The QSIG binary container.
//!
//! ```text
//! offset  size      field
//! 0       4         magic "QSG1"
//! 4       1         version = 1
//! 5       1         rank k
//! 6       1         side: 0 = G×G, 1 = dual
//! 7       1         reserved = 0
//! 8       4k        moduli, u32 little endian
//! 8+4k    32·|G|²   values (w, x, y, z) as f64 little endian
//! ```
//!
//! Bins are stored in signal order, `index(x1)·|G| + index(x2)`.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::quat::Quaternion;
use crate::signal::{QField, QSignal, QSpectrum, Side};

pub const MAGIC: &[u8; 4] = b"QSG1";
pub const VERSION: u8 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileSide {
    Primal = 0,
    Dual = 1,
}

impl FileSide {
    fn label(self) -> &'static str {
        match self {
            FileSide::Primal => "primal (G×G)",
            FileSide::Dual => "dual",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QsigFile {
    pub group: FiniteAbelianGroup,
    pub side: FileSide,
    pub values: Vec<Quaternion>,
}

impl QsigFile {
    pub fn from_signal(f: &QSignal) -> Self {
        Self::from_field(f, FileSide::Primal)
    }

    pub fn from_spectrum(f: &QSpectrum) -> Self {
        Self::from_field(f, FileSide::Dual)
    }

    fn from_field<S: Side>(f: &QField<S>, side: FileSide) -> Self {
        QsigFile {
            group: f.group().clone(),
            side,
            values: f.values().to_vec(),
        }
    }

    fn expect_side(&self, side: FileSide) -> Result<()> {
        if self.side != side {
            return Err(Error::Format(format!(
                "expected a {} file, found a {} file",
                side.label(),
                self.side.label()
            )));
        }
        Ok(())
    }

    pub fn into_signal(self) -> Result<QSignal> {
        self.expect_side(FileSide::Primal)?;
        QSignal::new(self.group, self.values)
    }

    pub fn into_spectrum(self) -> Result<QSpectrum> {
        self.expect_side(FileSide::Dual)?;
        QSpectrum::new(self.group, self.values)
    }

    pub fn encode(&self) -> Result<Vec<u8>> {
        let n = self.group.order();
        if self.values.len() != n * n {
            return Err(Error::Usage(format!(
                "{} values for a group of order {n}",
                self.values.len()
            )));
        }
        if let Some(i) = self.values.iter().position(|q| !q.is_finite()) {
            return Err(Error::Domain(format!("non-finite value at bin {i}")));
        }
        let moduli = self.group.moduli();
        let rank = u8::try_from(moduli.len()).map_err(|_| Error::Usage("rank exceeds 255".into()))?;
        let mut out = Vec::with_capacity(8 + 4 * moduli.len() + 32 * self.values.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&[VERSION, rank, self.side as u8, 0]);
        for &m in moduli {
            let m = u32::try_from(m).map_err(|_| Error::Usage(format!("modulus {m} exceeds u32")))?;
            out.extend_from_slice(&m.to_le_bytes());
        }
        for q in &self.values {
            for c in q.to_array() {
                out.extend_from_slice(&c.to_le_bytes());
            }
        }
        Ok(out)
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        let bad = |msg: String| Error::Format(msg);
        if bytes.len() < 8 {
            return Err(bad(format!("file is {} bytes, shorter than the QSIG header", bytes.len())));
        }
        if &bytes[..4] != MAGIC {
            return Err(bad("bad magic (expected QSG1)".into()));
        }
        let (version, rank, side, reserved) = (bytes[4], bytes[5], bytes[6], bytes[7]);
        if version != VERSION {
            return Err(bad(format!("unsupported version {version}")));
        }
        let side = match side {
            0 => FileSide::Primal,
            1 => FileSide::Dual,
            s => return Err(bad(format!("side byte {s} is neither 0 nor 1"))),
        };
        if reserved != 0 {
            return Err(bad("reserved byte is not zero".into()));
        }
        if rank == 0 {
            return Err(bad("rank 0".into()));
        }
        let header = 8 + 4 * rank as usize;
        if bytes.len() < header {
            return Err(bad("truncated moduli".into()));
        }
        let moduli: Vec<usize> = bytes[8..header]
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().unwrap()) as usize)
            .collect();
        let group = FiniteAbelianGroup::new(moduli).map_err(|e| bad(format!("invalid moduli: {e}")))?;
        let n = group.order();
        let expected = n
            .checked_mul(n)
            .and_then(|b| b.checked_mul(32))
            .and_then(|p| p.checked_add(header))
            .ok_or_else(|| bad("payload size overflows".into()))?;
        if bytes.len() != expected {
            return Err(bad(format!(
                "payload length mismatch: file is {} bytes, header implies {expected}",
                bytes.len()
            )));
        }
        let values: Vec<Quaternion> = bytes[header..]
            .chunks_exact(32)
            .map(|c| {
                let f = |i: usize| f64::from_le_bytes(c[8 * i..8 * i + 8].try_into().unwrap());
                Quaternion::new(f(0), f(1), f(2), f(3))
            })
            .collect();
        if let Some(i) = values.iter().position(|q| !q.is_finite()) {
            return Err(bad(format!("non-finite value at bin {i}")));
        }
        Ok(QsigFile { group, side, values })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::decode(&fs::read(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, &self.encode()?)
    }
}

/// Writes through a temporary file in the target directory, renamed into
/// place only after the whole payload is on disk.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub fn read_signal(path: &Path) -> Result<QSignal> {
    QsigFile::read(path)?.into_signal()
}

pub fn read_spectrum(path: &Path) -> Result<QSpectrum> {
    QsigFile::read(path)?.into_spectrum()
}

pub fn write_signal(path: &Path, f: &QSignal) -> Result<()> {
    QsigFile::from_signal(f).write(path)
}

pub fn write_spectrum(path: &Path, f: &QSpectrum) -> Result<()> {
    QsigFile::from_spectrum(f).write(path)
}
