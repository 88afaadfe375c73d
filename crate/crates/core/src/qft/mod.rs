//! Quaternion Fourier transforms on `G × G`.
//!
//! Three placements of the kernel `χ_{μ1}(u, x1)·χ_{μ2}(v, x2)` are provided:
//! both factors on the right ([`rqft_direct`]), both on the left
//! ([`lqft_direct`]), or one on each side ([`sqft_direct`]). Forward
//! transforms are plain sums; inverses carry `1/|G|²`, so that
//! `‖F‖₂ = ‖f‖₂` with the normalized dual measure.
//!
//! Each transform has a direct evaluator, `O(|G|⁴)`, and a fast one built on
//! complex FFTs. The direct versions are the reference; the fast versions are
//! tested against them.
//!
//! On a finite group every signal is integrable and square integrable, so
//! there is no separate `L²` extension: the transforms below already are the
//! unitary operators.

mod dft;
mod direct;
mod fast;
mod pairing;


use std::fmt;
use std::str::FromStr;

pub use dft::{dft_1d_complex, dft_naive, dft_naive_multi, Sign};
pub use direct::{ilqft_direct, irqft_direct, isqft_direct, lqft_direct, rqft_direct, sqft_direct};
pub use fast::{ilqft_fast, irqft_fast, isqft_fast, lqft_fast, rqft_fast, sqft_fast};
pub use pairing::{classical_dft_via_rqft, multiplication_pairing, MultiplicationPairing};

use crate::error::{Error, Result};
use crate::quat::AxisPair;
use crate::signal::{QSignal, QSpectrum};

/// Where the kernel sits relative to the signal value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sidedness {
    Right,
    Left,
    TwoSided,
}

impl Sidedness {
    /// The short CLI name: `rqft`, `lqft` or `sqft`.
    pub fn name(self) -> &'static str {
        match self {
            Sidedness::Right => "rqft",
            Sidedness::Left => "lqft",
            Sidedness::TwoSided => "sqft",
        }
    }
}

impl fmt::Display for Sidedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sidedness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rqft" | "right" => Ok(Sidedness::Right),
            "lqft" | "left" => Ok(Sidedness::Left),
            "sqft" | "two-sided" | "twosided" => Ok(Sidedness::TwoSided),
            other => Err(Error::Usage(format!("unknown transform kind '{other}' (expected rqft, sqft or lqft)"))),
        }
    }
}

/// Evaluation strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Fast,
    Direct,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Mode::Fast),
            "direct" => Ok(Mode::Direct),
            other => Err(Error::Usage(format!("unknown mode '{other}' (expected fast or direct)"))),
        }
    }
}

/// A transform selector: kernel placement plus axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformKind {
    pub sidedness: Sidedness,
    pub axes: AxisPair,
}

impl TransformKind {
    pub fn new(sidedness: Sidedness, axes: AxisPair) -> Self {
        TransformKind { sidedness, axes }
    }

    pub fn forward(&self, f: &QSignal, mode: Mode) -> QSpectrum {
        let ax = &self.axes;
        match (self.sidedness, mode) {
            (Sidedness::Right, Mode::Fast) => rqft_fast(f, ax),
            (Sidedness::Right, Mode::Direct) => rqft_direct(f, ax),
            (Sidedness::Left, Mode::Fast) => lqft_fast(f, ax),
            (Sidedness::Left, Mode::Direct) => lqft_direct(f, ax),
            (Sidedness::TwoSided, Mode::Fast) => sqft_fast(f, ax),
            (Sidedness::TwoSided, Mode::Direct) => sqft_direct(f, ax),
        }
    }

    pub fn inverse(&self, spec: &QSpectrum, mode: Mode) -> QSignal {
        let ax = &self.axes;
        match (self.sidedness, mode) {
            (Sidedness::Right, Mode::Fast) => irqft_fast(spec, ax),
            (Sidedness::Right, Mode::Direct) => irqft_direct(spec, ax),
            (Sidedness::Left, Mode::Fast) => ilqft_fast(spec, ax),
            (Sidedness::Left, Mode::Direct) => ilqft_direct(spec, ax),
            (Sidedness::TwoSided, Mode::Fast) => isqft_fast(spec, ax),
            (Sidedness::TwoSided, Mode::Direct) => isqft_direct(spec, ax),
        }
    }
}
