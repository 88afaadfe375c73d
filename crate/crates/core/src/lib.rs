//! Quaternion Fourier analysis on finite abelian groups.
//!
//! Signals are quaternion-valued functions on `G × G` for a finite abelian
//! group `G = Z_{n1} × … × Z_{nk}`. The crate provides the right-, left- and
//! two-sided quaternion Fourier transforms with their inverses, both as
//! direct sums and as FFT-based fast paths, the auxiliary reflections `W`
//! and `β`, approximate-identity smoothing, and a command-line tool.
//!
//! ```
//! use quatfourier::{rqft_fast, irqft_fast, AxisPair, FiniteAbelianGroup, QSignal, Quaternion};
//!
//! let g = FiniteAbelianGroup::cyclic(8)?;
//! let f = QSignal::from_fn(g, |a, b| Quaternion::new(a as f64, 0.0, b as f64, 1.0));
//! let axes = AxisPair::default();
//! let spec = rqft_fast(&f, &axes);
//! assert!((spec.norm2() - f.norm2()).abs() < 1e-10 * f.norm2());
//! assert!(irqft_fast(&spec, &axes).distance(&f)? < 1e-10 * f.norm2());
//! # Ok::<(), quatfourier::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod group;
pub mod kernels;
pub mod qft;
pub mod quat;
pub mod signal;
pub mod testing;

pub use error::{Error, Result};
pub use group::{DualElement, FiniteAbelianGroup, GroupElement};
pub use kernels::{builtin_family, convergence_report, energy_identity, smooth, spatial_kernel, FamilyKind, KernelFamily, SpatialKernel};
pub use qft::{
    classical_dft_via_rqft, dft_1d_complex, ilqft_direct, ilqft_fast, irqft_direct, irqft_fast, isqft_direct,
    isqft_fast, lqft_direct, lqft_fast, multiplication_pairing, rqft_direct, rqft_fast, sqft_direct, sqft_fast, Mode,
    Sidedness, TransformKind,
};
pub use quat::{AxisPair, Quaternion};
pub use signal::{Dual, Lp, Primal, QField, QSignal, QSpectrum, Side};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/quaternions.md")]
    mod quaternions {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/signals.md")]
    mod signals {}
    #[doc = include_str!("../../../book/src/transforms.md")]
    mod transforms {}
    #[doc = include_str!("../../../book/src/fast-transforms.md")]
    mod fast_transforms {}
    #[doc = include_str!("../../../book/src/kernels.md")]
    mod kernels {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
