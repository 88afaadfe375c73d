//! Complex DFT kernel for the fast transforms.
//!
//! Complex numbers here stand for elements of a commutative plane `{1, μ}`
//! (imaginary unit ↦ μ). The transform is
//! `Y[k] = Σ_n X[n]·exp(sign·2πi·k·n/N)` without normalization.
//!
//! The one-dimensional transforms come from `rustfft`, which is
//! `O(N log N)` for every length, primes included.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::ops::Range;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

/// Direction of the exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    /// `exp(−2πi k n / N)`.
    Forward,
    /// `exp(+2πi k n / N)`.
    Backward,
}

impl Sign {
    fn as_f64(self) -> f64 {
        match self {
            Sign::Forward => -1.0,
            Sign::Backward => 1.0,
        }
    }

    fn direction(self) -> FftDirection {
        match self {
            Sign::Forward => FftDirection::Forward,
            Sign::Backward => FftDirection::Inverse,
        }
    }

    /// `-1 ↦ Forward`, `+1 ↦ Backward`.
    pub fn from_i32(s: i32) -> Self {
        if s < 0 {
            Sign::Forward
        } else {
            Sign::Backward
        }
    }
}

/// One-dimensional DFT of any positive length; `sign` is `-1` (forward) or `+1`.
pub fn dft_1d_complex(values: &[Complex64], sign: i32) -> Vec<Complex64> {
    assert!(!values.is_empty(), "DFT length must be positive");
    let mut out = values.to_vec();
    FftPlanner::new()
        .plan_fft(values.len(), Sign::from_i32(sign).direction())
        .process(&mut out);
    out
}

/// `O(N²)` definition of the DFT.
pub fn dft_naive(values: &[Complex64], sign: i32) -> Vec<Complex64> {
    let n = values.len();
    let s = Sign::from_i32(sign).as_f64();
    (0..n)
        .map(|k| {
            values
                .iter()
                .enumerate()
                .map(|(j, &v)| {
                    let (sin, cos) = (s * TAU * ((k * j) % n) as f64 / n as f64).sin_cos();
                    v * Complex64::new(cos, sin)
                })
                .sum()
        })
        .collect()
}

/// `O(N²)` DFT of a row-major array on a product of cyclic factors, applied
/// one factor at a time.
pub fn dft_naive_multi(values: &[Complex64], moduli: &[usize], sign: i32) -> Vec<Complex64> {
    assert_eq!(values.len(), moduli.iter().product::<usize>(), "shape does not match data");
    let mut data = values.to_vec();
    let mut inner = values.len();
    for &n in moduli {
        inner /= n;
        let outer = data.len() / (n * inner);
        for o in 0..outer {
            for i in 0..inner {
                let at = |k: usize| (o * n + k) * inner + i;
                let line: Vec<Complex64> = (0..n).map(|k| data[at(k)]).collect();
                for (k, v) in dft_naive(&line, sign).into_iter().enumerate() {
                    data[at(k)] = v;
                }
            }
        }
    }
    data
}

/// Separable DFT of a row-major array of `shape` along the axes in `axes`.
pub(crate) struct AxisDft {
    planner: FftPlanner<f64>,
    plans: HashMap<usize, Arc<dyn Fft<f64>>>,
    sign: Sign,
}

impl AxisDft {
    pub(crate) fn new(sign: Sign) -> Self {
        AxisDft {
            planner: FftPlanner::new(),
            plans: HashMap::new(),
            sign,
        }
    }

    pub(crate) fn apply(&mut self, data: &mut [Complex64], shape: &[usize], axes: Range<usize>) {
        let total: usize = shape.iter().product();
        assert_eq!(data.len(), total);
        for t in axes {
            let len = shape[t];
            if len == 1 {
                continue;
            }
            let direction = self.sign.direction();
            let planner = &mut self.planner;
            let plan = self
                .plans
                .entry(len)
                .or_insert_with(|| planner.plan_fft(len, direction))
                .clone();
            let inner: usize = shape[t + 1..].iter().product();
            let outer = total / (len * inner);
            let mut line = vec![Complex64::default(); len];
            let mut scratch = vec![Complex64::default(); plan.get_inplace_scratch_len()];
            for o in 0..outer {
                for i in 0..inner {
                    let base = o * len * inner + i;
                    if inner == 1 {
                        plan.process_with_scratch(&mut data[base..base + len], &mut scratch);
                        continue;
                    }
                    for (j, slot) in line.iter_mut().enumerate() {
                        *slot = data[base + j * inner];
                    }
                    plan.process_with_scratch(&mut line, &mut scratch);
                    for (j, &v) in line.iter().enumerate() {
                        data[base + j * inner] = v;
                    }
                }
            }
        }
    }
}
