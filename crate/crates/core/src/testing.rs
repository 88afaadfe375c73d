//! Random inputs for property checks, shared by the unit tests, the
//! verification harness and the acceptance suite.

use rand::Rng;

use crate::group::FiniteAbelianGroup;
use crate::quat::{AxisPair, Quaternion};
use crate::signal::{QField, QSignal, Side};

pub fn random_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    Quaternion::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    )
}

fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    loop {
        let v = Quaternion::pure(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 0.2 && n <= 1.0 {
            return v / n;
        }
    }
}

/// A uniformly oriented valid frame `(μ1, μ2)`.
pub fn random_axes<R: Rng + ?Sized>(rng: &mut R) -> AxisPair {
    loop {
        let mu1 = random_unit_vector(rng);
        let v = random_unit_vector(rng);
        // remove the μ1 component: v·μ1 as vectors is -Sc(v μ1)
        let along = -(v * mu1).scalar_part();
        let w = v - mu1 * along;
        let n = w.norm();
        if n < 0.2 {
            continue;
        }
        if let Ok(ax) = AxisPair::new(mu1, w / n) {
            return ax;
        }
    }
}

/// Random values in the `{1, μ1}` plane of `axes`.
pub fn random_plane_valued<S: Side, R: Rng + ?Sized>(
    group: FiniteAbelianGroup,
    axes: &AxisPair,
    rng: &mut R,
) -> QField<S> {
    QField::from_fn(group, |_, _| {
        Quaternion::real(rng.random_range(-1.0..1.0)) + axes.mu1() * rng.random_range(-1.0..1.0)
    })
}

pub fn random_real_valued<S: Side, R: Rng + ?Sized>(group: FiniteAbelianGroup, rng: &mut R) -> QField<S> {
    QField::from_fn(group, |_, _| Quaternion::real(rng.random_range(-1.0..1.0)))
}

/// A random signal with `f(−x1, x2) = f(x1, x2)`.
pub fn random_first_even<R: Rng + ?Sized>(group: FiniteAbelianGroup, rng: &mut R) -> QSignal {
    let base = QSignal::random(group.clone(), rng);
    let neg = group.neg_table();
    QSignal::from_fn(group, |a, b| (base.at(a, b) + base.at(neg[a], b)) * 0.5)
}
