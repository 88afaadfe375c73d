use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::quat::{AxisPair, Quaternion};
use crate::signal::{QSignal, QSpectrum};

use super::direct::{irqft_direct, rqft_direct};
use super::fast::rqft_fast;

/// Both sides of the modified multiplication formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplicationPairing {
    /// `Σ_ω rqft(f)(ω)·g(ω)` against the dual weight.
    pub lhs: Quaternion,
    /// `Σ_x f(x)·H(x)` with `H(x) = Σ_ω h(ω)·conj χ_{μ1}(u, x1)·conj χ_{μ2}(v, x2) / |G|²`
    /// and `h = β g`.
    pub rhs: Quaternion,
    /// The same sum with the kernel factors swapped,
    /// `H'(x) = Σ_ω h(ω)·conj χ_{μ2}(v, x2)·conj χ_{μ1}(u, x1) / |G|²`,
    /// which is the inverse transform of `h` evaluated at `−x`.
    pub rhs_inverse_order: Quaternion,
}

impl MultiplicationPairing {
    pub fn error(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }

    pub fn inverse_order_error(&self) -> f64 {
        (self.lhs - self.rhs_inverse_order).norm()
    }
}

/// Evaluates the modified multiplication formula for `f` and `g`.
///
/// Every sum is taken by definition; no fast path is involved.
pub fn multiplication_pairing(f: &QSignal, g: &QSpectrum, axes: &AxisPair) -> Result<MultiplicationPairing> {
    if f.group() != g.group() {
        return Err(Error::Usage(format!(
            "signal over {} paired with spectrum over {}",
            f.group(),
            g.group()
        )));
    }
    let group = f.group();
    let n = group.order();
    let w = group.haar_weight_dual();

    let spec = rqft_direct(f, axes);
    let lhs: Quaternion = spec.values().iter().zip(g.values()).map(|(&a, &b)| a * b).sum::<Quaternion>() * w;

    let h = g.transform_beta(axes);
    let chi1 = group.character_table(axes.mu1())?;
    let chi2 = group.character_table(axes.mu2())?;
    let mut rhs = Quaternion::ZERO;
    for a in 0..n {
        for b in 0..n {
            let mut kernel = Quaternion::ZERO;
            for u in 0..n {
                let c1 = chi1[u * n + a].conj();
                for v in 0..n {
                    kernel += h.at(u, v) * c1 * chi2[v * n + b].conj();
                }
            }
            rhs += f.at(a, b) * kernel * w;
        }
    }

    let inv = irqft_direct(&h, axes);
    let neg = group.neg_table();
    let mut rhs_inverse_order = Quaternion::ZERO;
    for a in 0..n {
        for b in 0..n {
            rhs_inverse_order += f.at(a, b) * inv.at(neg[a], neg[b]);
        }
    }

    Ok(MultiplicationPairing {
        lhs,
        rhs,
        rhs_inverse_order,
    })
}

/// Classical DFT `f̂(u) = Σ_x f(x)·conj χ_{μ1}(u, x)` of a `{1, μ1}`-valued
/// signal on `G`, obtained from the right-sided transform.
///
/// The signal is lifted to `f_H(x, y) = f(x)`, transformed, restricted to
/// second frequency zero and divided by `|G|`.
pub fn classical_dft_via_rqft(
    values: &[Quaternion],
    group: &FiniteAbelianGroup,
    axes: &AxisPair,
) -> Result<Vec<Quaternion>> {
    let n = group.order();
    if values.len() != n {
        return Err(Error::Usage(format!(
            "signal has {} values, group {} has order {n}",
            values.len(),
            group
        )));
    }
    for (idx, &q) in values.iter().enumerate() {
        let r = axes.plane_residual(q);
        if !q.is_finite() || r > 1e-12 * q.norm().max(1.0) {
            return Err(Error::Domain(format!(
                "value {q} at index {idx} is not in the plane spanned by 1 and {}",
                axes.mu1()
            )));
        }
    }
    let lifted = QSignal::from_fn(group.clone(), |a, _| values[a]);
    let spec = rqft_fast(&lifted, axes);
    let scale = 1.0 / n as f64;
    Ok((0..n).map(|u| spec.at(u, 0) * scale).collect())
}
