//! FFT-factorized transforms, `O(|G|² log |G|)` for composite orders.
//!
//! A quaternion signal is split as `f = c1 + c2·μ2` with `c1, c2` in the
//! commutative plane `{1, μ1}`. Because `z·μ2 = μ2·conj(z)` for plane
//! elements, a `μ1`-kernel on the right acts on `c1` at frequency `u` and on
//! `c2` at frequency `−u`, so the first axis reduces to two complex DFTs.
//! The `μ2`-kernel does not commute with the plane; writing
//! `(A + B·μ2)(cos θ − μ2 sin θ) = (A cos θ + B sin θ) + (B cos θ − A sin θ)·μ2`
//! the second axis needs only the cosine and sine sums, which come from one
//! complex DFT evaluated at `v` and `−v`.

use num_complex::Complex64;

use super::dft::{AxisDft, Sign};
use crate::group::FiniteAbelianGroup;
use crate::quat::AxisPair;
use crate::signal::{QField, QSignal, QSpectrum, Side};

/// Plane arrays `(c1, c2)` of a field, row-major over `|G| × |G|`.
fn split<S: Side>(f: &QField<S>, axes: &AxisPair) -> (Vec<Complex64>, Vec<Complex64>) {
    f.values().iter().map(|&q| axes.symplectic_split(q)).unzip()
}

fn join<S: Side>(group: FiniteAbelianGroup, axes: &AxisPair, c1: &[Complex64], c2: &[Complex64], scale: f64) -> QField<S> {
    let values = c1
        .iter()
        .zip(c2)
        .map(|(&a, &b)| axes.symplectic_join(a * scale, b * scale))
        .collect();
    QField::from_parts(group, values)
}

/// The array shape of `G × G`: the moduli of `G` repeated twice.
fn grid_shape(group: &FiniteAbelianGroup) -> Vec<usize> {
    let mut s = group.moduli().to_vec();
    s.extend_from_slice(group.moduli());
    s
}

/// Given `X̂` (a DFT along the second variable), returns the sums
/// `Σ X cos θ` and `Σ X sin θ` at every `(a, b)`.
#[inline]
fn cos_sin(hat: &[Complex64], idx: usize, neg_idx: usize, forward: bool) -> (Complex64, Complex64) {
    // forward DFT: hat(b) = Σ X e^{-iθ}; backward: Σ X e^{+iθ}
    let (plus, minus) = if forward {
        (hat[neg_idx], hat[idx])
    } else {
        (hat[idx], hat[neg_idx])
    };
    let cos = (plus + minus) * 0.5;
    // (Σ X e^{+iθ} − Σ X e^{−iθ}) / 2i
    let sin = (plus - minus) * Complex64::new(0.0, -0.5);
    (cos, sin)
}

/// Fast right-sided transform; agrees with [`rqft_direct`](super::rqft_direct).
pub fn rqft_fast(f: &QSignal, axes: &AxisPair) -> QSpectrum {
    let group = f.group().clone();
    let n = group.order();
    let k = group.rank();
    let shape = grid_shape(&group);
    let neg = group.neg_table();
    let (mut c1, mut c2) = split(f, axes);

    let mut fwd = AxisDft::new(Sign::Forward);
    // first variable: c1 at u, c2 at −u
    fwd.apply(&mut c1, &shape, 0..k);
    fwd.apply(&mut c2, &shape, 0..k);
    let mut a = c1;
    let mut b: Vec<Complex64> = (0..n * n).map(|i| c2[neg[i / n] * n + i % n]).collect();

    // second variable
    fwd.apply(&mut a, &shape, k..2 * k);
    fwd.apply(&mut b, &shape, k..2 * k);
    let mut f1 = vec![Complex64::default(); n * n];
    let mut f2 = vec![Complex64::default(); n * n];
    for u in 0..n {
        for v in 0..n {
            let (i, j) = (u * n + v, u * n + neg[v]);
            let (a_cos, a_sin) = cos_sin(&a, i, j, true);
            let (b_cos, b_sin) = cos_sin(&b, i, j, true);
            f1[i] = a_cos + b_sin;
            f2[i] = b_cos - a_sin;
        }
    }
    join(group, axes, &f1, &f2, 1.0)
}

/// Fast inverse right-sided transform; agrees with [`irqft_direct`](super::irqft_direct).
pub fn irqft_fast(spec: &QSpectrum, axes: &AxisPair) -> QSignal {
    let group = spec.group().clone();
    let n = group.order();
    let k = group.rank();
    let shape = grid_shape(&group);
    let neg = group.neg_table();
    let (mut p, mut q) = split(spec, axes);

    // second variable first: (P + Q μ2)(cos θ + μ2 sin θ)
    let mut bwd = AxisDft::new(Sign::Backward);
    bwd.apply(&mut p, &shape, k..2 * k);
    bwd.apply(&mut q, &shape, k..2 * k);
    let mut r = vec![Complex64::default(); n * n];
    let mut s = vec![Complex64::default(); n * n];
    for u in 0..n {
        for x in 0..n {
            let (i, j) = (u * n + x, u * n + neg[x]);
            let (p_cos, p_sin) = cos_sin(&p, i, j, false);
            let (q_cos, q_sin) = cos_sin(&q, i, j, false);
            r[i] = p_cos - q_sin;
            s[i] = q_cos + p_sin;
        }
    }

    // first variable: (R + S μ2)·χ_{μ1} = R χ + S conj(χ) μ2
    bwd.apply(&mut r, &shape, 0..k);
    AxisDft::new(Sign::Forward).apply(&mut s, &shape, 0..k);
    let scale = group.haar_weight_dual();
    join(group, axes, &r, &s, scale)
}

/// Fast two-sided transform, computed as the right-sided transform of `W f`.
pub fn sqft_fast(f: &QSignal, axes: &AxisPair) -> QSpectrum {
    rqft_fast(&f.transform_w(axes), axes)
}

/// Fast inverse two-sided transform, computed as `W` of the inverse right-sided transform.
pub fn isqft_fast(spec: &QSpectrum, axes: &AxisPair) -> QSignal {
    irqft_fast(spec, axes).transform_w(axes)
}

/// Fast left-sided transform via `conj(lqft f) = |G|²·irqft(conj f)`.
pub fn lqft_fast(f: &QSignal, axes: &AxisPair) -> QSpectrum {
    let n = f.group().order() as f64;
    let as_spectrum: QSpectrum = f.conj().reinterpret();
    irqft_fast(&as_spectrum, axes).conj().scale(n * n).reinterpret()
}

/// Fast inverse left-sided transform via `conj(ilqft F) = rqft(conj F) / |G|²`.
pub fn ilqft_fast(spec: &QSpectrum, axes: &AxisPair) -> QSignal {
    let w = spec.group().haar_weight_dual();
    let as_signal: QSignal = spec.conj().reinterpret();
    rqft_fast(&as_signal, axes).conj().scale(w).reinterpret()
}
