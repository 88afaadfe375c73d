//! Finite abelian groups `G = Z_{n1} × … × Z_{nk}` and their characters.
//!
//! The dual group of a finite abelian group is isomorphic to the group
//! itself, so frequencies ([`DualElement`]) share the coordinate
//! representation of points ([`GroupElement`]). The pairing between a
//! frequency `u` and a point `x` is the phase
//! `θ(u, x) = 2π Σ_t (u_t·x_t mod n_t) / n_t`.
//!
//! Elements are enumerated in mixed-radix row-major order with the last
//! coordinate varying fastest; that order defines the linear index used by
//! signals, spectra, and the QSIG file format.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::quat::{validate_axis, Quaternion};

/// A point of `G`, stored as residues `coords[t] ∈ [0, n_t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    coords: Vec<usize>,
}

/// A frequency of the dual group; same representation as [`GroupElement`].
pub type DualElement = GroupElement;

impl GroupElement {
    pub fn coords(&self) -> &[usize] {
        &self.coords
    }
}

/// `Z_{n1} × … × Z_{nk}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    moduli: Vec<usize>,
    strides: Vec<usize>,
    order: usize,
}

impl FiniteAbelianGroup {
    pub fn new(moduli: Vec<usize>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::Usage("group needs at least one modulus".into()));
        }
        if let Some(&bad) = moduli.iter().find(|&&n| n == 0) {
            return Err(Error::Usage(format!("modulus must be positive, got {bad}")));
        }
        let mut strides = vec![1; moduli.len()];
        for t in (0..moduli.len().saturating_sub(1)).rev() {
            strides[t] = strides[t + 1] * moduli[t + 1];
        }
        let order = moduli
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::Usage("group order overflows".into()))?;
        Ok(FiniteAbelianGroup {
            moduli,
            strides,
            order,
        })
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        FiniteAbelianGroup::new(vec![n])
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// `|G| = Π n_t`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.rank()],
        }
    }

    /// Builds an element, reducing each coordinate modulo its modulus.
    pub fn element_from_coords(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::Usage(format!(
                "element has {} coordinates, group {} has rank {}",
                coords.len(),
                self,
                self.rank()
            )));
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.moduli)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as usize)
                .collect(),
        })
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if a.coords.len() != self.rank()
            || a.coords.iter().zip(&self.moduli).any(|(&c, &n)| c >= n)
        {
            return Err(Error::Usage(format!(
                "element {:?} does not belong to {}",
                a.coords, self
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.moduli)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &n)| (n - x) % n)
                .collect(),
        })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    /// Linear index of an element in enumeration order.
    pub fn index(&self, a: &GroupElement) -> Result<usize> {
        self.check(a)?;
        Ok(a.coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum())
    }

    /// Element at a linear index.
    pub fn element(&self, index: usize) -> GroupElement {
        assert!(index < self.order, "index {index} out of range for {self}");
        GroupElement {
            coords: self
                .moduli
                .iter()
                .zip(&self.strides)
                .map(|(&n, &s)| (index / s) % n)
                .collect(),
        }
    }

    /// All elements in mixed-radix row-major order.
    pub fn enumerate(&self) -> Vec<GroupElement> {
        (0..self.order).map(|i| self.element(i)).collect()
    }

    /// Index of `a + b` given the indices of `a` and `b`.
    #[inline]
    pub fn add_index(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (&n, &s) in self.moduli.iter().zip(&self.strides) {
            out += (((a / s) % n + (b / s) % n) % n) * s;
        }
        out
    }

    /// Index of `−a` given the index of `a`.
    #[inline]
    pub fn neg_index(&self, a: usize) -> usize {
        let mut out = 0;
        for (&n, &s) in self.moduli.iter().zip(&self.strides) {
            out += ((n - (a / s) % n) % n) * s;
        }
        out
    }

    /// Index of `a − b`.
    #[inline]
    pub fn sub_index(&self, a: usize, b: usize) -> usize {
        self.add_index(a, self.neg_index(b))
    }

    /// Table `t[i] = index(−element(i))`.
    pub fn neg_table(&self) -> Vec<usize> {
        (0..self.order).map(|i| self.neg_index(i)).collect()
    }

    /// Pairing phase `θ(u, x)` in `[0, 2π)` for linear indices `u`, `x`.
    ///
    /// Each product `u_t·x_t` is reduced modulo `n_t` before scaling so the
    /// phase error does not grow with the group size.
    pub fn phase(&self, freq: usize, point: usize) -> f64 {
        let mut frac = 0.0;
        for (&n, &s) in self.moduli.iter().zip(&self.strides) {
            let u = (freq / s) % n;
            let x = (point / s) % n;
            frac += ((u * x) % n) as f64 / n as f64;
        }
        TAU * (frac - frac.floor())
    }

    /// `χ(u, x) = cos θ + axis·sin θ`, a unit quaternion in the plane `{1, axis}`.
    pub fn character_value(
        &self,
        freq: &DualElement,
        point: &GroupElement,
        axis: Quaternion,
    ) -> Result<Quaternion> {
        validate_axis(axis)?;
        let u = self.index(freq)?;
        let x = self.index(point)?;
        Ok(unit_in_plane(self.phase(u, x), axis))
    }

    /// Table `t[u·|G| + x] = χ(u, x)` over all frequency/point index pairs.
    pub fn character_table(&self, axis: Quaternion) -> Result<Vec<Quaternion>> {
        validate_axis(axis)?;
        let n = self.order;
        let mut table = Vec::with_capacity(n * n);
        for u in 0..n {
            for x in 0..n {
                table.push(unit_in_plane(self.phase(u, x), axis));
            }
        }
        Ok(table)
    }

    /// Circular distance to zero, summed across coordinates: `Σ_t min(u_t, n_t − u_t)`.
    pub fn circular_distance(&self, index: usize) -> usize {
        self.moduli
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| {
                let u = (index / s) % n;
                u.min(n - u)
            })
            .sum()
    }

    /// Largest circular distance over the group.
    pub fn max_circular_distance(&self) -> usize {
        self.moduli.iter().map(|&n| n / 2).sum()
    }

    /// Haar weight of one point of `G × G` (counting measure).
    pub fn haar_weight_primal(&self) -> f64 {
        1.0
    }

    /// Haar weight of one point of the dual of `G × G` (normalized counting measure).
    pub fn haar_weight_dual(&self) -> f64 {
        let n = self.order as f64;
        1.0 / (n * n)
    }
}

#[inline]
pub(crate) fn unit_in_plane(theta: f64, axis: Quaternion) -> Quaternion {
    let (s, c) = theta.sin_cos();
    Quaternion::real(c) + axis * s
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Parses `"8"` or `"3x4x5"`.
impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let moduli = s
            .split(['x', 'X', '×'])
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Usage(format!("invalid group spec {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteAbelianGroup::new(moduli)
    }
}
