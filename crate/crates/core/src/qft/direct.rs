//! Definition-faithful evaluators: every output bin is the literal
//! `O(|G|²)` sum over the input with the kernel placed exactly as the
//! transform defines it. These are the oracles the fast paths are checked
//! against, so they stay deliberately naive.

use crate::group::FiniteAbelianGroup;
use crate::quat::{AxisPair, Quaternion};
use crate::signal::{QField, QSignal, QSpectrum, Side};

/// Character tables `χ_{μ1}` and `χ_{μ2}`, indexed `[u·|G| + x]`.
struct Kernels {
    n: usize,
    chi1: Vec<Quaternion>,
    chi2: Vec<Quaternion>,
}

impl Kernels {
    fn new(group: &FiniteAbelianGroup, axes: &AxisPair) -> Self {
        // axes are validated on construction, so the tables cannot fail
        Kernels {
            n: group.order(),
            chi1: group.character_table(axes.mu1()).expect("valid axis"),
            chi2: group.character_table(axes.mu2()).expect("valid axis"),
        }
    }
}

fn evaluate<S: Side, T: Side>(
    input: &QField<S>,
    axes: &AxisPair,
    term: impl Fn(Quaternion, Quaternion, Quaternion) -> Quaternion,
) -> QField<T> {
    let group = input.group().clone();
    let k = Kernels::new(&group, axes);
    let n = k.n;
    let w = S::weight(&group);
    QField::from_fn(group, |p, q| {
        let mut acc = Quaternion::ZERO;
        for a in 0..n {
            let c1 = k.chi1[p * n + a];
            for b in 0..n {
                acc += term(input.at(a, b), c1, k.chi2[q * n + b]);
            }
        }
        acc * w
    })
}

/// Right-sided transform `F(u, v) = Σ f(x)·conj χ_{μ1}(u, x1)·conj χ_{μ2}(v, x2)`.
pub fn rqft_direct(f: &QSignal, axes: &AxisPair) -> QSpectrum {
    evaluate(f, axes, |v, c1, c2| v * c1.conj() * c2.conj())
}

/// Inverse right-sided transform
/// `f(x) = Σ F(ω)·χ_{μ2}(v, x2)·χ_{μ1}(u, x1) / |G|²`.
///
/// The `μ2` factor comes before the `μ1` factor; with the opposite order
/// the inversion fails for quaternion-valued spectra.
pub fn irqft_direct(spec: &QSpectrum, axes: &AxisPair) -> QSignal {
    evaluate(spec, axes, |v, c1, c2| v * c2 * c1)
}

/// Two-sided (sandwich) transform `F(u, v) = Σ conj χ_{μ1}·f(x)·conj χ_{μ2}`.
pub fn sqft_direct(f: &QSignal, axes: &AxisPair) -> QSpectrum {
    evaluate(f, axes, |v, c1, c2| c1.conj() * v * c2.conj())
}

/// Inverse two-sided transform `f(x) = Σ χ_{μ1}·F(ω)·χ_{μ2} / |G|²`.
pub fn isqft_direct(spec: &QSpectrum, axes: &AxisPair) -> QSignal {
    evaluate(spec, axes, |v, c1, c2| c1 * v * c2)
}

/// Left-sided transform `F(u, v) = Σ conj χ_{μ1}·conj χ_{μ2}·f(x)`.
pub fn lqft_direct(f: &QSignal, axes: &AxisPair) -> QSpectrum {
    evaluate(f, axes, |v, c1, c2| c1.conj() * c2.conj() * v)
}

/// Inverse left-sided transform `f(x) = Σ χ_{μ2}·χ_{μ1}·F(ω) / |G|²`.
pub fn ilqft_direct(spec: &QSpectrum, axes: &AxisPair) -> QSignal {
    evaluate(spec, axes, |v, c1, c2| c2 * c1 * v)
}
