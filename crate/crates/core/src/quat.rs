//! Quaternion algebra and orthonormal axis frames.
//!
//! A [`Quaternion`] is stored scalar-first as `w + x·i + y·j + z·k`. An
//! [`AxisPair`] fixes two perpendicular unit pure-imaginary quaternions
//! `(μ1, μ2)`; together with `μ3 = μ1·μ2` they form the orthonormal frame
//! `{1, μ1, μ2, μ3}` that every transform in this crate is expressed in.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance used when validating unit length and perpendicularity of axes.
pub const AXIS_TOLERANCE: f64 = 1e-9;

/// A real quaternion `w + x·i + y·j + z·k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    /// Embeds a real number.
    #[inline]
    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    /// Builds a pure-imaginary quaternion from a 3-vector.
    #[inline]
    pub const fn pure(x: f64, y: f64, z: f64) -> Self {
        Quaternion::new(0.0, x, y, z)
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub fn from_array(c: [f64; 4]) -> Self {
        Quaternion::new(c[0], c[1], c[2], c[3])
    }

    /// Conjugate `w − x·i − y·j − z·k`.
    #[inline]
    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Multiplicative inverse `conj(q) / |q|²`.
    pub fn inverse(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::Domain("zero quaternion has no inverse".into()));
        }
        Ok(self.conj() / n2)
    }

    /// Scalar part `Sc(q)`.
    #[inline]
    pub fn scalar_part(self) -> f64 {
        self.w
    }

    /// Vector part `vec(q)` as a pure-imaginary quaternion.
    #[inline]
    pub fn vector_part(self) -> Self {
        Quaternion::pure(self.x, self.y, self.z)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Euclidean dot product of the four components.
    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.w, self.x, self.y, self.z)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
///
/// Terms are grouped as `(scalar·vector) + (cross product)` so that
/// `conj(p·q) == conj(q)·conj(p)` holds bit for bit.
impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        let p = self;
        Quaternion::new(
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            (p.w * q.x + p.x * q.w) + (p.y * q.z - p.z * q.y),
            (p.w * q.y + p.y * q.w) + (p.z * q.x - p.x * q.z),
            (p.w * q.z + p.z * q.w) + (p.x * q.y - p.y * q.x),
        )
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, o: Quaternion) {
        *self = *self * o;
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl std::iter::Sum for Quaternion {
    fn sum<I: Iterator<Item = Quaternion>>(iter: I) -> Quaternion {
        iter.fold(Quaternion::ZERO, |a, b| a + b)
    }
}

/// Free-function form of the Hamilton product.
#[inline]
pub fn mul(p: Quaternion, q: Quaternion) -> Quaternion {
    p * q
}

#[inline]
pub fn conj(q: Quaternion) -> Quaternion {
    q.conj()
}

#[inline]
pub fn norm(q: Quaternion) -> f64 {
    q.norm()
}

#[inline]
pub fn inverse(q: Quaternion) -> Result<Quaternion> {
    q.inverse()
}

#[inline]
pub fn scalar_part(q: Quaternion) -> f64 {
    q.scalar_part()
}

#[inline]
pub fn vector_part(q: Quaternion) -> Quaternion {
    q.vector_part()
}

fn is_unit_pure(q: Quaternion) -> bool {
    q.w.abs() <= AXIS_TOLERANCE && (q.norm() - 1.0).abs() <= AXIS_TOLERANCE
}

/// Checks that `axis` is a unit pure-imaginary quaternion.
pub fn validate_axis(axis: Quaternion) -> Result<()> {
    if !axis.is_finite() || !is_unit_pure(axis) {
        return Err(Error::Domain(format!(
            "axis {axis} is not a unit pure-imaginary quaternion"
        )));
    }
    Ok(())
}

/// Two perpendicular unit pure-imaginary quaternions `(μ1, μ2)` and their
/// product `μ3 = μ1·μ2`.
///
/// Construction validates rather than renormalizes: inputs must already be
/// unit length and perpendicular within [`AXIS_TOLERANCE`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisPair {
    mu1: Quaternion,
    mu2: Quaternion,
    mu3: Quaternion,
}

impl Default for AxisPair {
    /// The standard frame `(i, j)`.
    fn default() -> Self {
        AxisPair {
            mu1: Quaternion::I,
            mu2: Quaternion::J,
            mu3: Quaternion::K,
        }
    }
}

impl AxisPair {
    pub fn new(mu1: Quaternion, mu2: Quaternion) -> Result<Self> {
        validate_axis(mu1)?;
        validate_axis(mu2)?;
        if (mu1 * mu2.conj()).scalar_part().abs() > AXIS_TOLERANCE {
            return Err(Error::Domain(format!(
                "axes {mu1} and {mu2} are not perpendicular"
            )));
        }
        Ok(AxisPair {
            mu1,
            mu2,
            mu3: mu1 * mu2,
        })
    }

    /// Parses the eight-float form `[μ1.w, μ1.x, μ1.y, μ1.z, μ2.w, …]`.
    pub fn from_components(c: [f64; 8]) -> Result<Self> {
        AxisPair::new(
            Quaternion::new(c[0], c[1], c[2], c[3]),
            Quaternion::new(c[4], c[5], c[6], c[7]),
        )
    }

    pub fn to_components(&self) -> [f64; 8] {
        let a = self.mu1.to_array();
        let b = self.mu2.to_array();
        [a[0], a[1], a[2], a[3], b[0], b[1], b[2], b[3]]
    }

    #[inline]
    pub fn mu1(&self) -> Quaternion {
        self.mu1
    }

    #[inline]
    pub fn mu2(&self) -> Quaternion {
        self.mu2
    }

    #[inline]
    pub fn mu3(&self) -> Quaternion {
        self.mu3
    }

    pub fn is_standard(&self) -> bool {
        *self == AxisPair::default()
    }

    /// Coordinates `(a, b, c, d)` of `q` in the frame `{1, μ1, μ2, μ3}`.
    #[inline]
    pub fn component_in_frame(&self, q: Quaternion) -> [f64; 4] {
        [
            q.scalar_part(),
            -(q * self.mu1).scalar_part(),
            -(q * self.mu2).scalar_part(),
            -(q * self.mu3).scalar_part(),
        ]
    }

    /// Inverse of [`component_in_frame`](Self::component_in_frame).
    #[inline]
    pub fn from_frame(&self, c: [f64; 4]) -> Quaternion {
        Quaternion::real(c[0]) + self.mu1 * c[1] + self.mu2 * c[2] + self.mu3 * c[3]
    }

    /// Embeds a complex number `re + im·μ1` into the `{1, μ1}` plane.
    #[inline]
    pub fn plane(&self, z: Complex64) -> Quaternion {
        Quaternion::real(z.re) + self.mu1 * z.im
    }

    /// Splits `q = c1 + c2·μ2` with `c1, c2` in the `{1, μ1}` plane,
    /// returned as complex numbers (imaginary unit ↦ μ1).
    #[inline]
    pub fn symplectic_split(&self, q: Quaternion) -> (Complex64, Complex64) {
        let [a, b, c, d] = self.component_in_frame(q);
        (Complex64::new(a, b), Complex64::new(c, d))
    }

    /// Reassembles `c1 + c2·μ2`.
    #[inline]
    pub fn symplectic_join(&self, c1: Complex64, c2: Complex64) -> Quaternion {
        self.from_frame([c1.re, c1.im, c2.re, c2.im])
    }

    /// Distance of `q` from the `{1, μ1}` plane.
    pub fn plane_residual(&self, q: Quaternion) -> f64 {
        let [_, _, c, d] = self.component_in_frame(q);
        c.hypot(d)
    }
}

/// Free-function form of [`AxisPair::symplectic_split`].
pub fn symplectic_split(q: Quaternion, axes: &AxisPair) -> (Complex64, Complex64) {
    axes.symplectic_split(q)
}

/// Free-function form of [`AxisPair::component_in_frame`].
pub fn component_in_frame(q: Quaternion, axes: &AxisPair) -> [f64; 4] {
    axes.component_in_frame(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    // Product through the basis multiplication table, independent of the
    // closed-form Hamilton product above.
    fn table_mul(p: Quaternion, q: Quaternion) -> Quaternion {
        // (sign, index) of e_a * e_b for basis 1, i, j, k
        const T: [[(f64, usize); 4]; 4] = [
            [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
            [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
            [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
            [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
        ];
        let a = p.to_array();
        let b = q.to_array();
        let mut out = [0.0; 4];
        for (r, row) in T.iter().enumerate() {
            for (c, &(s, idx)) in row.iter().enumerate() {
                out[idx] += s * a[r] * b[c];
            }
        }
        Quaternion::from_array(out)
    }

    fn quat() -> impl Strategy<Value = Quaternion> {
        (-10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64)
            .prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
    }

    fn frame() -> impl Strategy<Value = AxisPair> {
        (
            (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64),
            (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64),
        )
            .prop_filter_map("degenerate frame", |(a, b)| {
                let u = Quaternion::pure(a.0, a.1, a.2);
                if u.norm() < 0.1 {
                    return None;
                }
                let u = u / u.norm();
                let v = Quaternion::pure(b.0, b.1, b.2);
                let v = v - u * (-(v * u).scalar_part());
                if v.norm() < 0.1 {
                    return None;
                }
                let v = v / v.norm();
                AxisPair::new(u, v).ok()
            })
    }

    #[test]
    fn hamilton_rules() {
        assert_eq!(Quaternion::I * Quaternion::J, Quaternion::K);
        assert_eq!(Quaternion::J * Quaternion::I, -Quaternion::K);
        assert_eq!(Quaternion::K * Quaternion::I, Quaternion::J);
        assert_eq!(Quaternion::J * Quaternion::K, Quaternion::I);
        for u in [Quaternion::I, Quaternion::J, Quaternion::K] {
            assert_eq!(u * u, -Quaternion::ONE);
        }
    }

    #[test]
    fn mul_examples() {
        let q = Quaternion::new(1.5, -2.0, 0.25, 3.0);
        assert_eq!(q * Quaternion::ONE, q);
        let p = Quaternion::new(1.0, 1.0, 0.0, 0.0) * Quaternion::new(1.0, 0.0, 1.0, 0.0);
        assert_eq!(p, Quaternion::new(1.0, 1.0, 1.0, 1.0));
        assert_eq!(
            table_mul(Quaternion::new(1.0, 1.0, 0.0, 0.0), Quaternion::new(1.0, 0.0, 1.0, 0.0)),
            p
        );
    }

    #[test]
    fn conj_examples() {
        assert_eq!(
            Quaternion::new(1.0, 1.0, 1.0, 1.0).conj(),
            Quaternion::new(1.0, -1.0, -1.0, -1.0)
        );
        assert_eq!(Quaternion::real(5.0).conj(), Quaternion::real(5.0));
        let lhs = (Quaternion::I * Quaternion::J).conj();
        assert_eq!(lhs, Quaternion::J.conj() * Quaternion::I.conj());
        assert_eq!(lhs, -Quaternion::K);
    }

    #[test]
    fn norm_inverse_parts() {
        assert_eq!(Quaternion::new(1.0, 1.0, 1.0, 1.0).norm(), 2.0);
        let inv = Quaternion::I.inverse().unwrap();
        assert_eq!(inv, -Quaternion::I);
        assert_eq!(table_mul(Quaternion::I, inv), Quaternion::ONE);
        assert_eq!(Quaternion::new(3.0, 2.0, 0.0, 0.0).scalar_part(), 3.0);
        let q = Quaternion::new(3.0, 2.0, -1.0, 4.0);
        assert_eq!(Quaternion::real(q.scalar_part()) + q.vector_part(), q);
    }

    #[test]
    fn inverse_of_zero_is_domain_error() {
        let err = Quaternion::ZERO.inverse().unwrap_err();
        assert!(err.to_string().contains("zero quaternion has no inverse"));
    }

    #[test]
    fn symplectic_split_examples() {
        let axes = AxisPair::default();
        let (c1, c2) = axes.symplectic_split(Quaternion::new(1.0, 2.0, 3.0, 4.0));
        assert_eq!((c1, c2), (Complex64::new(1.0, 2.0), Complex64::new(3.0, 4.0)));
        assert_eq!(
            axes.symplectic_join(c1, c2),
            Quaternion::new(1.0, 2.0, 3.0, 4.0)
        );
        let (c1, c2) = axes.symplectic_split(Quaternion::real(7.0));
        assert_eq!((c1, c2), (Complex64::new(7.0, 0.0), Complex64::new(0.0, 0.0)));
        let (c1, c2) = axes.symplectic_split(Quaternion::J);
        assert_eq!((c1, c2), (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn component_in_frame_examples() {
        let axes = AxisPair::default();
        assert_eq!(axes.component_in_frame(Quaternion::K), [0.0, 0.0, 0.0, 1.0]);
        let q = Quaternion::new(0.5, -1.0, 2.0, 3.5);
        assert_eq!(axes.component_in_frame(q), q.to_array());
    }

    #[test]
    fn axis_validation() {
        assert!(AxisPair::new(Quaternion::I, Quaternion::I).is_err());
        assert!(AxisPair::new(Quaternion::I * 2.0, Quaternion::J).is_err());
        assert!(AxisPair::new(Quaternion::new(0.1, 1.0, 0.0, 0.0), Quaternion::J).is_err());
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let ax = AxisPair::new(Quaternion::pure(s, s, 0.0), Quaternion::K).unwrap();
        let mu3 = ax.mu3();
        assert_abs_diff_eq!(mu3.norm(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(mu3.scalar_part(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(mu3.dot(ax.mu1()), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(mu3.dot(ax.mu2()), 0.0, epsilon = 1e-15);
        assert!(AxisPair::from_components([0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0])
            .unwrap()
            .is_standard());
    }

    proptest! {
        #[test]
        fn mul_matches_table(p in quat(), q in quat()) {
            let d = (p * q).max_abs_diff(table_mul(p, q));
            prop_assert!(d <= 1e-12);
        }

        #[test]
        fn scalar_part_is_cyclic(p in quat(), q in quat()) {
            prop_assert!(((p * q).scalar_part() - (q * p).scalar_part()).abs() <= 1e-12);
        }

        #[test]
        fn norm_is_multiplicative(p in quat(), q in quat()) {
            let lhs = (p * q).norm();
            let rhs = p.norm() * q.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
        }

        #[test]
        fn conj_is_antihomomorphic(p in quat(), q in quat()) {
            prop_assert_eq!((p * q).conj(), q.conj() * p.conj());
            prop_assert_eq!(p.conj().conj(), p);
        }

        #[test]
        fn norm_matches_components(q in quat()) {
            let s = q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
            prop_assert!((q.norm_sqr() - s).abs() <= 1e-12 * s.max(1.0));
            prop_assert!(((q * q.conj()).scalar_part() - s).abs() <= 1e-12 * s.max(1.0));
        }

        #[test]
        fn inverse_is_two_sided(q in quat()) {
            prop_assume!(q.norm() > 1e-3);
            let inv = q.inverse().unwrap();
            prop_assert!((q * inv).max_abs_diff(Quaternion::ONE) <= 1e-12);
            prop_assert!((inv * q).max_abs_diff(Quaternion::ONE) <= 1e-12);
        }

        #[test]
        fn frame_reassembly(q in quat(), ax in frame()) {
            let back = ax.from_frame(ax.component_in_frame(q));
            prop_assert!(back.max_abs_diff(q) <= 1e-12);
            let (c1, c2) = ax.symplectic_split(q);
            prop_assert!((ax.plane(c1) + ax.plane(c2) * ax.mu2()).max_abs_diff(q) <= 1e-12);
        }

        #[test]
        fn plane_commutes_past_mu2_by_conjugation(re in -5.0..5.0f64, im in -5.0..5.0f64, ax in frame()) {
            let z = ax.plane(Complex64::new(re, im));
            let zbar = ax.plane(Complex64::new(re, -im));
            prop_assert!((z * ax.mu2()).max_abs_diff(ax.mu2() * zbar) <= 1e-12);
        }
    }
}
