//! Quaternion-valued functions on `G × G` and on its dual.
//!
//! [`QSignal`] lives on `G × G` with counting measure; [`QSpectrum`] lives on
//! the dual with the normalized measure `1/|G|²` per point. Both are dense
//! arrays indexed by `index(x1)·|G| + index(x2)`.
//!
//! Convolution keeps the quaternion order `(f * g)(x) = Σ_y f(y)·g(x − y)`:
//! the left operand's value is always the left factor. Swapping the
//! operands changes the result for non-real data.

use std::fmt;
use std::marker::PhantomData;

use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::quat::{AxisPair, Quaternion};

/// Which side of the duality a [`QField`] lives on, and its Haar weight.
pub trait Side: Copy + Clone + fmt::Debug + Default + PartialEq + Send + Sync + 'static {
    const NAME: &'static str;
    fn weight(group: &FiniteAbelianGroup) -> f64;
}

/// `G × G` with counting measure.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Primal;

/// The dual of `G × G` with normalized counting measure.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Dual;

impl Side for Primal {
    const NAME: &'static str = "primal";
    fn weight(group: &FiniteAbelianGroup) -> f64 {
        group.haar_weight_primal()
    }
}

impl Side for Dual {
    const NAME: &'static str = "dual";
    fn weight(group: &FiniteAbelianGroup) -> f64 {
        group.haar_weight_dual()
    }
}

/// Dense quaternion-valued function on `G × G` or its dual.
#[derive(Debug, Clone, PartialEq)]
pub struct QField<S: Side> {
    group: FiniteAbelianGroup,
    values: Vec<Quaternion>,
    _side: PhantomData<S>,
}

pub type QSignal = QField<Primal>;
pub type QSpectrum = QField<Dual>;

/// Supported `L^p` exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lp {
    One,
    Two,
    Inf,
}

impl Lp {
    /// Accepts `1`, `2`, or `∞`; anything else is a usage error.
    pub fn from_exponent(p: f64) -> Result<Self> {
        if p == 1.0 {
            Ok(Lp::One)
        } else if p == 2.0 {
            Ok(Lp::Two)
        } else if p == f64::INFINITY {
            Ok(Lp::Inf)
        } else {
            Err(Error::Usage(format!("unsupported L^p exponent {p}")))
        }
    }
}

impl<S: Side> QField<S> {
    /// Wraps `values`; the length must be `|G|²` and every value finite.
    pub fn new(group: FiniteAbelianGroup, values: Vec<Quaternion>) -> Result<Self> {
        let n = group.order();
        if values.len() != n * n {
            return Err(Error::Usage(format!(
                "expected {} values for {}², got {}",
                n * n,
                group,
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|q| !q.is_finite()) {
            return Err(Error::Domain(format!("non-finite value at bin {pos}")));
        }
        Ok(Self::from_parts(group, values))
    }

    pub(crate) fn from_parts(group: FiniteAbelianGroup, values: Vec<Quaternion>) -> Self {
        debug_assert_eq!(values.len(), group.order() * group.order());
        QField {
            group,
            values,
            _side: PhantomData,
        }
    }

    pub fn zeros(group: FiniteAbelianGroup) -> Self {
        let n = group.order();
        Self::from_parts(group, vec![Quaternion::ZERO; n * n])
    }

    pub fn constant(group: FiniteAbelianGroup, q: Quaternion) -> Self {
        let n = group.order();
        Self::from_parts(group, vec![q; n * n])
    }

    /// `q` at bin `(a, b)` (linear indices), zero elsewhere.
    pub fn delta(group: FiniteAbelianGroup, a: usize, b: usize, q: Quaternion) -> Self {
        let n = group.order();
        assert!(a < n && b < n, "delta position out of range");
        let mut f = Self::zeros(group);
        f.values[a * n + b] = q;
        f
    }

    /// Builds from a function of the two linear indices.
    pub fn from_fn(group: FiniteAbelianGroup, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let n = group.order();
        let mut values = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                values.push(f(a, b));
            }
        }
        Self::from_parts(group, values)
    }

    /// Components drawn uniformly from `[-1, 1)`.
    pub fn random<R: Rng + ?Sized>(group: FiniteAbelianGroup, rng: &mut R) -> Self {
        Self::from_fn(group, |_, _| {
            Quaternion::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            )
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// `|G|`, the side length of the square array.
    pub fn side_len(&self) -> usize {
        self.group.order()
    }

    pub fn values(&self) -> &[Quaternion] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Quaternion> {
        self.values
    }

    #[inline]
    pub fn at(&self, a: usize, b: usize) -> Quaternion {
        self.values[a * self.side_len() + b]
    }

    /// Value at a pair of group elements.
    pub fn get(&self, x1: &GroupElement, x2: &GroupElement) -> Result<Quaternion> {
        let a = self.group.index(x1)?;
        let b = self.group.index(x2)?;
        Ok(self.at(a, b))
    }

    pub fn weight(&self) -> f64 {
        S::weight(&self.group)
    }

    pub(crate) fn reinterpret<T: Side>(self) -> QField<T> {
        QField::from_parts(self.group, self.values)
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
        Self::from_parts(self.group.clone(), self.values.iter().map(|&q| f(q)).collect())
    }

    /// Pointwise `q · f(x)`.
    pub fn left_mul(&self, q: Quaternion) -> Self {
        self.map(|v| q * v)
    }

    /// Pointwise `f(x) · q`.
    pub fn right_mul(&self, q: Quaternion) -> Self {
        self.map(|v| v * q)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|v| v * s)
    }

    /// Pointwise conjugate.
    pub fn conj(&self) -> Self {
        self.map(Quaternion::conj)
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::Usage(format!(
                "group mismatch: {} vs {}",
                self.group, other.group
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> Result<Self> {
        self.same_group(other)?;
        Ok(Self::from_parts(
            self.group.clone(),
            self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        ))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Real component arrays `(f_0, f_1, f_2, f_3)` in the standard basis.
    pub fn components(&self) -> [Vec<f64>; 4] {
        let mut out: [Vec<f64>; 4] = Default::default();
        for q in &self.values {
            for (m, c) in q.to_array().into_iter().enumerate() {
                out[m].push(c);
            }
        }
        out
    }

    /// Weighted `L^p` norm for `p ∈ {1, 2, ∞}`.
    pub fn norm(&self, p: Lp) -> f64 {
        let w = self.weight();
        match p {
            Lp::One => self.values.iter().map(|q| q.norm()).sum::<f64>() * w,
            Lp::Two => (self.values.iter().map(|q| q.norm_sqr()).sum::<f64>() * w).sqrt(),
            Lp::Inf => self.values.iter().map(|q| q.norm()).fold(0.0, f64::max),
        }
    }

    /// [`norm`](Self::norm) with a numeric exponent; unsupported `p` is a usage error.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        Ok(self.norm(Lp::from_exponent(p)?))
    }

    pub fn norm1(&self) -> f64 {
        self.norm(Lp::One)
    }

    pub fn norm2(&self) -> f64 {
        self.norm(Lp::Two)
    }

    pub fn norm_inf(&self) -> f64 {
        self.norm(Lp::Inf)
    }

    /// `‖self − other‖₂` under this side's weight.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.try_sub(other)?.norm2())
    }

    /// Quaternion inner product `(f, g) = Σ f(x)·conj(g(x))·weight`.
    pub fn inner_q(&self, other: &Self) -> Result<Quaternion> {
        self.same_group(other)?;
        let s: Quaternion = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| a * b.conj())
            .sum();
        Ok(s * self.weight())
    }

    /// Real inner product `⟨f, g⟩ = Sc (f, g)`.
    pub fn inner_real(&self, other: &Self) -> Result<f64> {
        Ok(self.inner_q(other)?.scalar_part())
    }

    /// Relabels the first variable by `x1 ↦ −x1` on the selected frame components.
    fn reflect_components(&self, axes: &AxisPair, reflect: [(bool, bool); 4]) -> Self {
        let n = self.side_len();
        let neg = self.group.neg_table();
        let frames: Vec<[f64; 4]> = self.values.iter().map(|&q| axes.component_in_frame(q)).collect();
        let values = (0..n * n)
            .map(|i| {
                let (a, b) = (i / n, i % n);
                let mut c = [0.0; 4];
                for (m, &(r1, r2)) in reflect.iter().enumerate() {
                    let sa = if r1 { neg[a] } else { a };
                    let sb = if r2 { neg[b] } else { b };
                    c[m] = frames[sa * n + sb][m];
                }
                axes.from_frame(c)
            })
            .collect();
        Self::from_parts(self.group.clone(), values)
    }
}

impl QSignal {
    /// `(L_y f)(x) = f(x + y)`.
    pub fn translate(&self, y: (&GroupElement, &GroupElement)) -> Result<QSignal> {
        let g = &self.group;
        let (y1, y2) = (g.index(y.0)?, g.index(y.1)?);
        let n = self.side_len();
        Ok(QSignal::from_fn(g.clone(), |a, b| {
            self.values[g.add_index(a, y1) * n + g.add_index(b, y2)]
        }))
    }

    /// `f̃(x) = conj(f(−x))`.
    pub fn reflect_conj(&self) -> QSignal {
        let neg = self.group.neg_table();
        let n = self.side_len();
        QSignal::from_fn(self.group.clone(), |a, b| self.values[neg[a] * n + neg[b]].conj())
    }

    /// `(f * g)(x) = Σ_y f(y)·g(x − y)` with counting measure.
    pub fn convolve(&self, other: &QSignal) -> Result<QSignal> {
        self.same_group(other)?;
        let g = &self.group;
        let n = self.side_len();
        let sub: Vec<usize> = (0..n * n).map(|i| g.sub_index(i / n, i % n)).collect();
        let w = self.weight();
        Ok(QSignal::from_fn(g.clone(), |a, b| {
            let mut acc = Quaternion::ZERO;
            for c in 0..n {
                let row = sub[a * n + c] * n;
                for d in 0..n {
                    let fy = self.values[c * n + d];
                    acc += fy * other.values[row + sub[b * n + d]];
                }
            }
            acc * w
        }))
    }

    /// The involution `W`: in the frame `{1, μ1, μ2, μ3}` the `μ2` and `μ3`
    /// components are reflected in the first variable.
    pub fn transform_w(&self, axes: &AxisPair) -> QSignal {
        self.reflect_components(
            axes,
            [(false, false), (false, false), (true, false), (true, false)],
        )
    }
}

impl QSpectrum {
    /// The auxiliary transform `β`: components `(a, b, c, d)(u, v)` map to
    /// `a(u, v)`, `b(u, −v)`, `c(−u, v)`, `d(−u, −v)` in the frame of `axes`.
    pub fn transform_beta(&self, axes: &AxisPair) -> QSpectrum {
        self.reflect_components(
            axes,
            [(false, false), (false, true), (true, false), (true, true)],
        )
    }
}

/// Free-function forms mirroring the method API.
pub fn lp_norm<S: Side>(f: &QField<S>, p: f64) -> Result<f64> {
    f.lp_norm(p)
}

pub fn inner_q<S: Side>(f: &QField<S>, g: &QField<S>) -> Result<Quaternion> {
    f.inner_q(g)
}

pub fn inner_real<S: Side>(f: &QField<S>, g: &QField<S>) -> Result<f64> {
    f.inner_real(g)
}

pub fn translate(f: &QSignal, y: (&GroupElement, &GroupElement)) -> Result<QSignal> {
    f.translate(y)
}

pub fn reflect_conj(f: &QSignal) -> QSignal {
    f.reflect_conj()
}

pub fn convolve(f: &QSignal, g: &QSignal) -> Result<QSignal> {
    f.convolve(g)
}

pub fn transform_w(f: &QSignal, axes: &AxisPair) -> QSignal {
    f.transform_w(axes)
}

pub fn transform_beta(g: &QSpectrum, axes: &AxisPair) -> QSpectrum {
    g.transform_beta(axes)
}
