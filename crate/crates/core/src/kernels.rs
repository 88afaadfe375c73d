//! Approximate identities on `G × G`.
//!
//! A family is a level-indexed spectral envelope `φ(l, u) ∈ [0, 1]` with
//! `φ(l, 0) = 1`, non-decreasing in `l` and tending to 1. The spatial kernel
//! at level `l` is its inverse transform along each variable,
//!
//! ```text
//! P_l(x1, x2) = P_l,1(x1)·P_l,2(x2),    P_l,t(x) = (1/|G|) Σ_u φ(l, u)·χ(u, x)
//! ```
//!
//! which is real because `φ(l, −u) = φ(l, u)`, and has total mass
//! `φ(l, 0)² = 1`. Smoothing is convolution with `P_l`.
//!
//! On the real line the geometric family corresponds to the Poisson kernel
//! `P_ε(x) = ε / (π (ε² + x²))` with `ε = 2^{-l}`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{DualElement, FiniteAbelianGroup};
use crate::quat::{AxisPair, Quaternion};
use crate::qft::rqft_direct;
use crate::signal::{Lp, QSignal};

/// The built-in spectral envelopes, all functions of the circular distance
/// `d(u) = Σ_t min(u_t, n_t − u_t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `φ = 1` for `d ≤ l`, else 0.
    Dirichlet,
    /// `φ = max(0, 1 − d/(l + 1))`.
    Fejer,
    /// `φ = exp(−d / 2^l)`.
    PoissonGeometric,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 3] = [FamilyKind::Dirichlet, FamilyKind::Fejer, FamilyKind::PoissonGeometric];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Dirichlet => "dirichlet",
            FamilyKind::Fejer => "fejer",
            FamilyKind::PoissonGeometric => "poisson_geometric",
        }
    }

    fn envelope(self, level: u32, dist: usize) -> f64 {
        let d = dist as f64;
        match self {
            FamilyKind::Dirichlet => {
                if dist as u64 <= u64::from(level) {
                    1.0
                } else {
                    0.0
                }
            }
            FamilyKind::Fejer => (1.0 - d / (f64::from(level) + 1.0)).max(0.0),
            FamilyKind::PoissonGeometric => (-d * (-f64::from(level)).exp2()).exp(),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown kernel family '{s}' (expected dirichlet, fejer or poisson_geometric)")))
    }
}

/// A family bound to a group. Both variables use the same envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelFamily {
    kind: FamilyKind,
    group: FiniteAbelianGroup,
    dist: Vec<usize>,
}

impl KernelFamily {
    pub fn new(kind: FamilyKind, group: FiniteAbelianGroup) -> Self {
        let dist = (0..group.order()).map(|u| group.circular_distance(u)).collect();
        KernelFamily { kind, group, dist }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// `φ(l, u)` with `u` given by its linear index.
    pub fn phi(&self, level: u32, freq: usize) -> f64 {
        self.kind.envelope(level, self.dist[freq])
    }

    /// Envelope for the first variable.
    pub fn phi1(&self, level: u32, freq: &DualElement) -> Result<f64> {
        Ok(self.phi(level, self.group.index(freq)?))
    }

    /// Envelope for the second variable.
    pub fn phi2(&self, level: u32, freq: &DualElement) -> Result<f64> {
        self.phi1(level, freq)
    }

    /// The smallest level at which the envelope is 1 everywhere, if any.
    pub fn full_level(&self) -> Option<u32> {
        match self.kind {
            FamilyKind::Dirichlet => Some(self.group.max_circular_distance() as u32),
            _ if self.group.order() == 1 => Some(0),
            _ => None,
        }
    }
}

/// Looks up a built-in family by name.
pub fn builtin_family(name: &str, group: &FiniteAbelianGroup) -> Result<KernelFamily> {
    Ok(KernelFamily::new(name.parse()?, group.clone()))
}

/// `P_l` on `G × G`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialKernel {
    pub level: u32,
    /// The one-variable factor `P_l,t` on `G`.
    pub factor: Vec<f64>,
    /// Largest imaginary part discarded from the factor.
    pub imag_residual: f64,
    pub values: QSignal,
}

impl SpatialKernel {
    pub fn mass(&self) -> f64 {
        self.values.values().iter().map(|q| q.w).sum::<f64>() * self.values.weight()
    }
}

pub fn spatial_kernel(family: &KernelFamily, level: u32) -> SpatialKernel {
    let group = family.group();
    let n = group.order();
    let mut factor = Vec::with_capacity(n);
    let mut imag_residual = 0.0_f64;
    for x in 0..n {
        let mut acc = Complex64::default();
        for u in 0..n {
            let phi = family.phi(level, u);
            if phi != 0.0 {
                acc += Complex64::from_polar(phi, group.phase(u, x));
            }
        }
        acc /= n as f64;
        imag_residual = imag_residual.max(acc.im.abs());
        factor.push(acc.re);
    }
    let values = QSignal::from_fn(group.clone(), |a, b| Quaternion::real(factor[a] * factor[b]));
    SpatialKernel {
        level,
        factor,
        imag_residual,
        values,
    }
}

/// `f * P_l`, with `f` as the left factor.
pub fn smooth(f: &QSignal, family: &KernelFamily, level: u32) -> Result<QSignal> {
    check_group(f, family)?;
    f.convolve(&spatial_kernel(family, level).values)
}

/// `‖f * P_l − f‖_p` for `l = 0, …, lmax`; `p` must be 1 or 2.
pub fn convergence_report(f: &QSignal, family: &KernelFamily, lmax: u32, p: Lp) -> Result<Vec<f64>> {
    if p == Lp::Inf {
        return Err(Error::Usage("convergence report supports p = 1 or 2".into()));
    }
    check_group(f, family)?;
    (0..=lmax)
        .map(|l| Ok(smooth(f, family, l)?.try_sub(f)?.norm(p)))
        .collect()
}

/// Both sides of the smoothed energy identity
/// `Sc(((f̃ * f) * P_l)(0, 0)) = Σ_ω φ(l, u)·φ(l, v)·|rqft f(ω)|²` (dual weight).
pub fn energy_identity(f: &QSignal, family: &KernelFamily, level: u32, axes: &AxisPair) -> Result<(f64, f64)> {
    check_group(f, family)?;
    let group = f.group();
    let n = group.order();
    let neg = group.neg_table();

    let g = f.reflect_conj().convolve(f)?;
    let kernel = spatial_kernel(family, level);
    // (g * P)(0) = Σ_y g(y)·P(−y)
    let mut lhs = 0.0;
    for a in 0..n {
        for b in 0..n {
            lhs += g.at(a, b).w * kernel.values.at(neg[a], neg[b]).w;
        }
    }

    let spec = rqft_direct(f, axes);
    let mut rhs = 0.0;
    for u in 0..n {
        let pu = family.phi(level, u);
        for v in 0..n {
            rhs += pu * family.phi(level, v) * spec.at(u, v).norm_sqr();
        }
    }
    Ok((lhs, rhs * spec.weight()))
}

fn check_group(f: &QSignal, family: &KernelFamily) -> Result<()> {
    if f.group() != family.group() {
        return Err(Error::Usage(format!(
            "signal over {} with kernel family over {}",
            f.group(),
            family.group()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::random_axes;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::TAU;

    fn z(n: usize) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    fn fam(kind: FamilyKind, n: usize) -> KernelFamily {
        KernelFamily::new(kind, z(n))
    }

    #[test]
    fn envelope_examples() {
        let d = fam(FamilyKind::Dirichlet, 8);
        assert!((0..8).all(|u| d.phi(4, u) == 1.0));
        assert_eq!(d.full_level(), Some(4));

        let f = fam(FamilyKind::Fejer, 8);
        assert_eq!(f.phi(0, 0), 1.0);
        assert!((1..8).all(|u| f.phi(0, u) == 0.0));

        let p = fam(FamilyKind::PoissonGeometric, 8);
        assert!((p.phi(3, 4) - (-0.5f64).exp()).abs() <= 1e-15);
    }

    #[test]
    fn multi_coordinate_distance_is_summed() {
        let g = FiniteAbelianGroup::new(vec![4, 5]).unwrap();
        let f = KernelFamily::new(FamilyKind::Fejer, g.clone());
        let u = g.element_from_coords(&[3, 2]).unwrap();
        // d = 1 + 2
        assert!((f.phi1(3, &u).unwrap() - 0.25).abs() <= 1e-15);
        assert_eq!(f.phi2(3, &u).unwrap(), f.phi1(3, &u).unwrap());
    }

    #[test]
    fn unknown_family_is_a_usage_error() {
        assert!(matches!(builtin_family("gauss", &z(4)), Err(Error::Usage(_))));
        assert_eq!(builtin_family("fejer", &z(4)).unwrap().kind(), FamilyKind::Fejer);
    }

    #[test]
    fn full_passband_is_a_point_mass() {
        let k = spatial_kernel(&fam(FamilyKind::Dirichlet, 6), 3);
        let delta = QSignal::delta(z(6), 0, 0, Quaternion::ONE);
        assert!(k.values.distance(&delta).unwrap() <= 1e-14);
    }

    #[test]
    fn zero_level_fejer_is_flat() {
        let k = spatial_kernel(&fam(FamilyKind::Fejer, 5), 0);
        assert!(k.values.values().iter().all(|q| (q.w - 1.0 / 25.0).abs() <= 1e-15));
    }

    #[test]
    fn fejer_matches_closed_form() {
        for (n, l) in [(4, 1), (9, 3), (16, 5), (7, 2)] {
            let k = spatial_kernel(&fam(FamilyKind::Fejer, n), l);
            for x in 0..n {
                let expect = if x == 0 {
                    (f64::from(l) + 1.0) / n as f64
                } else {
                    let t = TAU * x as f64 / n as f64;
                    let m = f64::from(l) + 1.0;
                    ((m * t / 2.0).sin() / (t / 2.0).sin()).powi(2) / (m * n as f64)
                };
                assert!((k.factor[x] - expect).abs() <= 1e-14, "n={n} l={l} x={x}");
            }
        }
        // Z_4, l = 1: (1 + cos(πx/2)) / 4
        let k = spatial_kernel(&fam(FamilyKind::Fejer, 4), 1);
        assert_eq!(k.factor.iter().map(|v| (v * 4.0).round()).collect::<Vec<_>>(), [2.0, 1.0, 0.0, 1.0]);
    }

    #[test]
    fn kernels_are_real_with_unit_mass() {
        for kind in FamilyKind::ALL {
            for m in [vec![8], vec![5], vec![3, 4]] {
                let f = KernelFamily::new(kind, FiniteAbelianGroup::new(m).unwrap());
                for l in 0..6 {
                    let k = spatial_kernel(&f, l);
                    assert!(k.imag_residual <= 1e-12);
                    assert!((k.mass() - 1.0).abs() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn envelopes_are_monotone_and_bounded() {
        for kind in FamilyKind::ALL {
            let f = fam(kind, 12);
            for u in 0..12 {
                assert!((0..10).all(|l| f.phi(l, 0) == 1.0));
                for l in 0..10 {
                    let (a, b) = (f.phi(l, u), f.phi(l + 1, u));
                    assert!((0.0..=1.0).contains(&a) && b >= a);
                }
            }
        }
    }

    #[test]
    fn smoothing_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = z(6);
        let f = QSignal::random(g.clone(), &mut rng);
        let d = fam(FamilyKind::Dirichlet, 6);
        assert!(smooth(&f, &d, 3).unwrap().distance(&f).unwrap() <= 1e-10);

        let c = QSignal::constant(g, Quaternion::new(0.3, -1.0, 0.5, 2.0));
        for kind in FamilyKind::ALL {
            for l in [0, 2, 5] {
                assert!(smooth(&c, &fam(kind, 6), l).unwrap().distance(&c).unwrap() <= 1e-12);
            }
        }
    }

    #[test]
    fn smoothing_rejects_other_groups() {
        let f = QSignal::zeros(z(3));
        assert!(matches!(smooth(&f, &fam(FamilyKind::Fejer, 4), 1), Err(Error::Usage(_))));
    }

    #[test]
    fn convergence_reports() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = z(8);
        let f = QSignal::random(g.clone(), &mut rng);
        let d = convergence_report(&f, &fam(FamilyKind::Dirichlet, 8), 4, Lp::Two).unwrap();
        assert_eq!(d.len(), 5);
        assert!(d[4] < 1e-10);

        let c = QSignal::constant(g, Quaternion::ONE);
        for kind in FamilyKind::ALL {
            let r = convergence_report(&c, &fam(kind, 8), 4, Lp::One).unwrap();
            assert!(r.iter().all(|&e| e < 1e-12));
        }

        let p = convergence_report(&f, &fam(FamilyKind::PoissonGeometric, 8), 8, Lp::Two).unwrap();
        assert!(p.windows(2).all(|w| w[1] < w[0]));
        let q = convergence_report(&f, &fam(FamilyKind::Fejer, 8), 8, Lp::Two).unwrap();
        assert!(q.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));

        assert!(matches!(convergence_report(&f, &fam(FamilyKind::Fejer, 8), 2, Lp::Inf), Err(Error::Usage(_))));
    }

    #[test]
    fn pointwise_convergence_at_full_level() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let f = QSignal::random(g.clone(), &mut rng);
        let fam = KernelFamily::new(FamilyKind::Dirichlet, g);
        let s = smooth(&f, &fam, fam.full_level().unwrap()).unwrap();
        for (a, b) in s.values().iter().zip(f.values()) {
            assert!(a.max_abs_diff(*b) <= 1e-12);
        }
    }

    #[test]
    fn energy_identity_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let g = z(8);
        let axes = AxisPair::default();
        let f = QSignal::random(g.clone(), &mut rng);
        let (lhs, rhs) = energy_identity(&f, &fam(FamilyKind::Dirichlet, 8), 4, &axes).unwrap();
        let e = f.norm2().powi(2);
        assert!((lhs - e).abs() <= 1e-9 * e && (rhs - e).abs() <= 1e-9 * e);

        let delta = QSignal::delta(g.clone(), 0, 0, Quaternion::ONE);
        let fejer = fam(FamilyKind::Fejer, 8);
        let flat: f64 = (0..8).map(|u| fejer.phi(2, u)).sum::<f64>().powi(2) / 64.0;
        let (lhs, rhs) = energy_identity(&delta, &fejer, 2, &axes).unwrap();
        assert!((lhs - flat).abs() <= 1e-12 && (rhs - flat).abs() <= 1e-12);

        let (lhs, rhs) = energy_identity(&f, &fejer, 2, &axes).unwrap();
        assert!((lhs - rhs).abs() <= 1e-9 * e);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn energy_identity_holds(seed in any::<u64>(), family in 0..3usize, level in 0..5u32) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let axes = random_axes(&mut rng);
            let g = FiniteAbelianGroup::new(vec![6]).unwrap();
            let f = QSignal::random(g.clone(), &mut rng);
            let k = KernelFamily::new(FamilyKind::ALL[family], g);
            let (lhs, rhs) = energy_identity(&f, &k, level, &axes).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-9 * f.norm2().powi(2));
        }

        #[test]
        fn fejer_smoothing_error_is_non_increasing(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = QSignal::random(z(6), &mut rng);
            let r = convergence_report(&f, &fam(FamilyKind::Fejer, 6), 6, Lp::Two).unwrap();
            prop_assert!(r.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12) + 1e-15));
        }
    }
}
