//! Symmetry reduction through Hilbert maps: the invariant generators of each
//! rotation class, the reduced variety `w4^2 = q(w1) w3 - w2^2`, membership
//! tests for the image of the tangent bundle, explicit lifts back to phase
//! space, fiber descriptions, and the reduced Hamiltonian systems.
//!
//! The three classes differ only through the class polynomial `q` and the
//! invariant coordinate, so a single implementation is parameterized by
//! `RotationClass` throughout.

use crate::bracket::BracketTable;
use crate::certify::GeneratorSet;
use crate::dynamics::Potential;
use crate::minkowski::MinkVec;
use crate::phase::{coord, velocity_norm_poly, PhasePoint, X1, X2, X3, Y1, Y2, Y3};
use crate::poly::{Poly, ReducedPoly};
use crate::symmetry::RotationClass;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Point on (or near) the reduced variety in four invariant coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducedPoint {
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
    pub w4: f64,
}

impl ReducedPoint {
    pub const fn new(w1: f64, w2: f64, w3: f64, w4: f64) -> Self {
        ReducedPoint { w1, w2, w3, w4 }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        ReducedPoint::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w1, self.w2, self.w3, self.w4]
    }

    /// Projection to the first three coordinates.
    pub fn project(self) -> [f64; 3] {
        [self.w1, self.w2, self.w3]
    }

    /// Residual of the variety relation `w4^2 - (q(w1) w3 - w2^2)`.
    pub fn variety_residual(self, class: RotationClass) -> f64 {
        self.w4 * self.w4 - (class.q(self.w1) * self.w3 - self.w2 * self.w2)
    }
}

/// Value of `j^2 = q(w1) w3 - w2^2` at a projected point.
pub fn jsq(class: RotationClass, w: [f64; 3]) -> f64 {
    class.q(w[0]) * w[2] - w[1] * w[1]
}

/// Value of the reduced Hamiltonian `h = w3/2 + U(w1)`.
pub fn reduced_energy(u: &Potential, w: [f64; 3]) -> f64 {
    0.5 * w[2] + u.eval(w[0])
}

/// Hilbert map: `(s(x), s-conjugate velocity, <y,y>_L, momentum)`.
pub fn hilbert_map(class: RotationClass, z: PhasePoint) -> ReducedPoint {
    let w1 = class.invariant_coordinate(z.x);
    let w2 = class.invariant_coordinate(z.y);
    let w3 = crate::minkowski::lorentz_inner(z.y, z.y);
    let w4 = class.momentum_map(z);
    ReducedPoint::new(w1, w2, w3, w4)
}

/// The four Hilbert generators as phase polynomials, with the variety
/// relation in the reduced variables.
pub fn hilbert_generator_set(class: RotationClass) -> GeneratorSet<4> {
    let s = class.invariant_coordinate_poly();
    let sv = match class {
        RotationClass::Elliptic => coord(Y3),
        RotationClass::Hyperbolic => coord(Y1),
        RotationClass::Parabolic => coord(Y2).sub(&coord(Y3)),
    };
    let generators = [s, sv, velocity_norm_poly(), class.momentum_poly()];
    let relations = vec![variety_relation_poly(class)];
    GeneratorSet {
        generators,
        relations,
    }
}

/// `w4^2 - q(w1) w3 + w2^2` as a reduced polynomial.
pub fn variety_relation_poly(class: RotationClass) -> ReducedPoly {
    let w = |i: usize| ReducedPoly::var(i);
    let q = match class {
        RotationClass::Elliptic => w(0).pow(2).sub(&ReducedPoly::one()),
        RotationClass::Hyperbolic => w(0).pow(2).add(&ReducedPoly::one()),
        RotationClass::Parabolic => w(0).pow(2),
    };
    w(3).pow(2).sub(&q.mul(&w(2))).add(&w(1).pow(2))
}

/// The full six-generator invariant sets with their relation and the extra
/// identities that hold after restriction to the constraint variety.
pub fn full_invariant_set(class: RotationClass) -> GeneratorSet<6> {
    let x = |i: usize| coord(i);
    let g = |i: usize| Poly::<6>::var(i);
    match class {
        RotationClass::Elliptic => {
            let generators = [
                x(X3),
                x(Y3),
                velocity_norm_poly(),
                x(X1).mul(&x(Y1)).add(&x(X2).mul(&x(Y2))),
                x(X1).pow(2).add(&x(X2).pow(2)),
                class.momentum_poly(),
            ];
            // g4^2 + g6^2 = g5 (g3 + g2^2); on the variety additionally
            // g5 - g1^2 = -1 and g4 = g1 g2.
            let relations = vec![
                g(3).pow(2)
                    .add(&g(5).pow(2))
                    .sub(&g(4).mul(&g(2).add(&g(1).pow(2)))),
                g(4).sub(&g(0).pow(2)).add(&Poly::<6>::one()),
                g(3).sub(&g(0).mul(&g(1))),
            ];
            GeneratorSet {
                generators,
                relations,
            }
        }
        RotationClass::Hyperbolic => {
            let generators = [
                x(X1),
                x(Y1),
                velocity_norm_poly(),
                x(X2).mul(&x(Y2)).sub(&x(X3).mul(&x(Y3))),
                x(X2).pow(2).sub(&x(X3).pow(2)),
                class.momentum_poly(),
            ];
            // g4^2 - g6^2 = g5 (g3 - g2^2); on the variety g5 + g1^2 = -1
            // and g4 = -g1 g2.
            let relations = vec![
                g(3).pow(2)
                    .sub(&g(5).pow(2))
                    .sub(&g(4).mul(&g(2).sub(&g(1).pow(2)))),
                g(4).add(&g(0).pow(2)).add(&Poly::<6>::one()),
                g(3).add(&g(0).mul(&g(1))),
            ];
            GeneratorSet {
                generators,
                relations,
            }
        }
        RotationClass::Parabolic => {
            let generators = [
                x(X2).sub(&x(X3)),
                x(Y2).sub(&x(Y3)),
                velocity_norm_poly(),
                x(X1)
                    .mul(&x(Y1))
                    .add(&x(X2).mul(&x(Y2)).scale(2.0))
                    .sub(&x(X2).mul(&x(Y3)))
                    .sub(&x(X3).mul(&x(Y2))),
                x(X1)
                    .pow(2)
                    .sub(&x(X2).mul(&x(X3)).scale(2.0))
                    .add(&x(X2).pow(2).scale(2.0)),
                class.momentum_poly(),
            ];
            // g1^2 g2^2 + g1^2 g3 - 2 g1 g2 g4 + g2^2 g5 - g6^2 = 0; on the
            // variety g5 - g1^2 = -1, g4 = g1 g2, and g1^2 g3 - g2^2 = g6^2.
            let relations = vec![
                g(0).pow(2)
                    .mul(&g(1).pow(2))
                    .add(&g(0).pow(2).mul(&g(2)))
                    .sub(&g(0).mul(&g(1)).mul(&g(3)).scale(2.0))
                    .add(&g(1).pow(2).mul(&g(4)))
                    .sub(&g(5).pow(2)),
                g(4).sub(&g(0).pow(2)).add(&Poly::<6>::one()),
                g(3).sub(&g(0).mul(&g(1))),
                g(0).pow(2).mul(&g(2)).sub(&g(1).pow(2)).sub(&g(5).pow(2)),
            ];
            GeneratorSet {
                generators,
                relations,
            }
        }
    }
}

/// Reduced Poisson bracket table on the invariant coordinates:
/// `{w1,w2} = q(w1)`, `{w2,w3} = 2 w1 w3`, `{w3,w1} = -2 w2`, and the
/// momentum coordinate `w4` is Casimir.
pub fn reduced_bracket_table(class: RotationClass) -> BracketTable<4> {
    let w = |i: usize| ReducedPoly::var(i);
    let q = match class {
        RotationClass::Elliptic => w(0).pow(2).sub(&ReducedPoly::one()),
        RotationClass::Hyperbolic => w(0).pow(2).add(&ReducedPoly::one()),
        RotationClass::Parabolic => w(0).pow(2),
    };
    BracketTable::from_upper(|i, j| match (i, j) {
        (0, 1) => q.clone(),
        (1, 2) => w(0).mul(&w(2)).scale(2.0),
        (0, 2) => w(1).scale(2.0),
        _ => ReducedPoly::zero(),
    })
}

/// Stratum of the image of the tangent bundle under the Hilbert map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ImageStratum {
    /// Open stratum of the image.
    Interior,
    /// Elliptic boundary family `(1, 0, w3, 0)` with `w3 >= 0`: states at the
    /// apex of the plane.
    ApexStates,
    /// Elliptic boundary family `(w1, 0, 0, 0)` with `w1 >= 1`: rest states
    /// on circles of constant height.
    RestStates,
}

/// Membership verdict with the reason for rejection.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Membership {
    Member { stratum: ImageStratum },
    NotMember { reason: String },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }

    pub fn stratum(&self) -> Option<ImageStratum> {
        match self {
            Membership::Member { stratum } => Some(*stratum),
            Membership::NotMember { .. } => None,
        }
    }
}

fn not_member(reason: &str) -> Membership {
    Membership::NotMember {
        reason: reason.to_string(),
    }
}

/// Membership of a four-coordinate point in the image of the tangent bundle.
pub fn image_membership(class: RotationClass, w: ReducedPoint, tol: f64) -> Membership {
    let res = w.variety_residual(class).abs();
    if res > tol {
        return not_member("off the reduced variety");
    }
    match class {
        RotationClass::Elliptic => {
            if w.w1 < 1.0 - tol {
                return not_member("w1 < 1");
            }
            if w.w1 <= 1.0 + tol {
                // Apex stratum: requires w2 = w4 = 0 and w3 >= 0.
                if w.w2.abs() <= tol && w.w4.abs() <= tol && w.w3 >= -tol {
                    return Membership::Member {
                        stratum: ImageStratum::ApexStates,
                    };
                }
                return not_member("w1 = 1 requires w2 = w4 = 0 and w3 >= 0");
            }
            let gap = w.w2 * w.w2 + w.w3;
            if gap > tol {
                Membership::Member {
                    stratum: ImageStratum::Interior,
                }
            } else if gap >= -tol {
                if w.w2.abs() <= tol && w.w3.abs() <= tol && w.w4.abs() <= tol {
                    Membership::Member {
                        stratum: ImageStratum::RestStates,
                    }
                } else {
                    not_member("w2^2 + w3 = 0 requires w2 = w3 = w4 = 0")
                }
            } else {
                not_member("w2^2 + w3 < 0")
            }
        }
        RotationClass::Hyperbolic => Membership::Member {
            stratum: ImageStratum::Interior,
        },
        RotationClass::Parabolic => {
            if w.w1 < 0.0 {
                Membership::Member {
                    stratum: ImageStratum::Interior,
                }
            } else {
                not_member("w1 >= 0")
            }
        }
    }
}

/// Membership of a projected (three-coordinate) point in the image.
pub fn image_membership_projected(class: RotationClass, w: [f64; 3], tol: f64) -> Membership {
    let j2 = jsq(class, w);
    if j2 < -tol {
        return not_member("q(w1) w3 - w2^2 < 0");
    }
    match class {
        RotationClass::Elliptic => {
            if w[0] < 1.0 - tol {
                not_member("w1 < 1")
            } else if w[1] * w[1] + w[2] < -tol {
                not_member("w2^2 + w3 < 0")
            } else {
                Membership::Member {
                    stratum: ImageStratum::Interior,
                }
            }
        }
        RotationClass::Hyperbolic => Membership::Member {
            stratum: ImageStratum::Interior,
        },
        RotationClass::Parabolic => {
            if w[0] < 0.0 {
                Membership::Member {
                    stratum: ImageStratum::Interior,
                }
            } else {
                not_member("w1 >= 0")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum LiftError {
    #[error("point not in the image of the tangent bundle: {reason}")]
    NotInImage { reason: String },
}

/// Canonical lift: a phase point whose Hilbert image is `w`.
///
/// One representative per image point, following the explicit constructions
/// of the membership proofs; square roots take the nonnegative branch, so the
/// output is deterministic.
pub fn lift(class: RotationClass, w: ReducedPoint, tol: f64) -> Result<PhasePoint, LiftError> {
    let verdict = image_membership(class, w, tol);
    let stratum = match verdict {
        Membership::Member { stratum } => stratum,
        Membership::NotMember { reason } => return Err(LiftError::NotInImage { reason }),
    };
    let z = match (class, stratum) {
        (RotationClass::Elliptic, ImageStratum::ApexStates) => PhasePoint::new(
            MinkVec::apex(),
            MinkVec::new(0.0, w.w3.max(0.0).sqrt(), 0.0),
        ),
        (RotationClass::Elliptic, ImageStratum::RestStates) => {
            let r = (w.w1 * w.w1 - 1.0).max(0.0).sqrt();
            PhasePoint::new(MinkVec::new(r, 0.0, w.w1), MinkVec::zero())
        }
        (RotationClass::Elliptic, ImageStratum::Interior) => {
            // x3 = w1, y3 = w2, y1 = 0, y2 = sqrt(w2^2 + w3); x1 carries the
            // momentum and x2 is forced by <x,y> = 0.
            let speed = (w.w2 * w.w2 + w.w3).sqrt();
            let x1 = w.w4 / speed;
            let x2 = w.w1 * w.w2 / speed;
            PhasePoint::new(MinkVec::new(x1, x2, w.w1), MinkVec::new(0.0, speed, w.w2))
        }
        (RotationClass::Hyperbolic, _) => {
            let root = (1.0 + w.w1 * w.w1).sqrt();
            PhasePoint::new(
                MinkVec::new(w.w1, 0.0, root),
                MinkVec::new(w.w2, w.w4 / root, w.w1 * w.w2 / root),
            )
        }
        (RotationClass::Parabolic, _) => {
            let x2 = (w.w1 * w.w1 - 1.0) / (2.0 * w.w1);
            let x3 = -(w.w1 * w.w1 + 1.0) / (2.0 * w.w1);
            let y2 = (1.0 + w.w1 * w.w1) / (2.0 * w.w1 * w.w1) * w.w2;
            let y3 = y2 - w.w2;
            let y1 = -w.w4 / w.w1;
            PhasePoint::new(MinkVec::new(0.0, x2, x3), MinkVec::new(y1, y2, y3))
        }
    };
    Ok(z)
}

/// Momentum-squared of a projected point, snapped to zero within `tol` so
/// the lifts stay consistent with `fiber_description` (a square root would
/// otherwise amplify rounding noise into a spurious momentum).
fn fiber_momentum_sq(class: RotationClass, w: [f64; 3], tol: f64) -> f64 {
    let j2 = jsq(class, w);
    if j2 <= tol {
        0.0
    } else {
        j2
    }
}

/// Lift of a projected point to the orbit with nonnegative momentum.
pub fn lift_projected(
    class: RotationClass,
    w: [f64; 3],
    tol: f64,
) -> Result<PhasePoint, LiftError> {
    let j2 = fiber_momentum_sq(class, w, tol);
    lift(class, ReducedPoint::new(w[0], w[1], w[2], j2.sqrt()), tol)
}

/// Lift of a projected point to the second orbit in its fiber (negative
/// momentum sign). Coincides with `lift_projected` when the fiber is a
/// single orbit.
pub fn lift_other(class: RotationClass, w: [f64; 3], tol: f64) -> Result<PhasePoint, LiftError> {
    let j2 = fiber_momentum_sq(class, w, tol);
    lift(
        class,
        ReducedPoint::new(w[0], w[1], w[2], -(j2.sqrt())),
        tol,
    )
}

/// Geometry of a group orbit in phase space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitGeometry {
    Ellipse,
    HyperbolaBranch,
    Parabola,
}

impl RotationClass {
    pub fn orbit_geometry(self) -> OrbitGeometry {
        match self {
            RotationClass::Elliptic => OrbitGeometry::Ellipse,
            RotationClass::Hyperbolic => OrbitGeometry::HyperbolaBranch,
            RotationClass::Parabolic => OrbitGeometry::Parabola,
        }
    }
}

/// Structure of the fiber over a projected image point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FiberDescription {
    /// Single point (elliptic apex rest state only).
    Point,
    /// One group orbit, when the momentum vanishes on the fiber.
    OneOrbit(OrbitGeometry),
    /// Two group orbits, one per momentum sign.
    TwoOrbits(OrbitGeometry),
}

/// Describe the fiber of the projected Hilbert map over `w`.
pub fn fiber_description(
    class: RotationClass,
    w: [f64; 3],
    tol: f64,
) -> Result<FiberDescription, LiftError> {
    match image_membership_projected(class, w, tol) {
        Membership::Member { .. } => {}
        Membership::NotMember { reason } => return Err(LiftError::NotInImage { reason }),
    }
    if class == RotationClass::Elliptic
        && (w[0] - 1.0).abs() <= tol
        && (w[1] * w[1] + w[2]).abs() <= tol
    {
        return Ok(FiberDescription::Point);
    }
    let j2 = jsq(class, w);
    if j2 > tol {
        Ok(FiberDescription::TwoOrbits(class.orbit_geometry()))
    } else {
        Ok(FiberDescription::OneOrbit(class.orbit_geometry()))
    }
}

/// Right-hand side of the reduced Hamiltonian system on the projection:
/// `dw1 = w2`, `dw2 = w1 w3 - q(w1) U'(w1)`, `dw3 = -2 w2 U'(w1)`.
pub fn reduced_field(class: RotationClass, u: &Potential, w: [f64; 3]) -> [f64; 3] {
    let du = u.eval_derivative(w[0]);
    [w[1], w[0] * w[2] - class.q(w[0]) * du, -2.0 * w[1] * du]
}

/// Four-coordinate variant; the momentum coordinate is constant.
pub fn reduced_field4(class: RotationClass, u: &Potential, w: [f64; 4]) -> [f64; 4] {
    let f = reduced_field(class, u, [w[0], w[1], w[2]]);
    [f[0], f[1], f[2], 0.0]
}

/// Reduced trajectory with first-integral diagnostics per sample.
#[derive(Clone, Debug)]
pub struct ReducedTrajectory {
    pub t: Vec<f64>,
    pub w: Vec<[f64; 4]>,
    pub jsq: Vec<f64>,
    pub h: Vec<f64>,
}

impl ReducedTrajectory {
    pub fn max_jsq_drift(&self) -> f64 {
        drift(&self.jsq)
    }

    pub fn max_h_drift(&self) -> f64 {
        drift(&self.h)
    }

    /// CSV with header `t,w1,w2,w3,w4,jsq,h`.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "t,w1,w2,w3,w4,jsq,h")?;
        for i in 0..self.t.len() {
            let w = self.w[i];
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                self.t[i], w[0], w[1], w[2], w[3], self.jsq[i], self.h[i]
            )?;
        }
        Ok(())
    }
}

fn drift(series: &[f64]) -> f64 {
    let first = match series.first() {
        Some(&v) => v,
        None => return 0.0,
    };
    series.iter().fold(0.0f64, |m, &v| m.max((v - first).abs()))
}

/// Classical fourth-order integration of the reduced system. The momentum
/// coordinate `w4` is carried along as a constant.
pub fn integrate_reduced(
    class: RotationClass,
    u: &Potential,
    w0: [f64; 4],
    dt: f64,
    steps: usize,
) -> ReducedTrajectory {
    let mut t = Vec::with_capacity(steps + 1);
    let mut ws = Vec::with_capacity(steps + 1);
    let mut jv = Vec::with_capacity(steps + 1);
    let mut hv = Vec::with_capacity(steps + 1);

    let mut w = [w0[0], w0[1], w0[2]];
    let record = |t_now: f64,
                  w: [f64; 3],
                  t: &mut Vec<f64>,
                  ws: &mut Vec<[f64; 4]>,
                  jv: &mut Vec<f64>,
                  hv: &mut Vec<f64>| {
        t.push(t_now);
        ws.push([w[0], w[1], w[2], w0[3]]);
        jv.push(jsq(class, w));
        hv.push(reduced_energy(u, w));
    };
    record(0.0, w, &mut t, &mut ws, &mut jv, &mut hv);

    for k in 0..steps {
        w = rk4_step3(|w| reduced_field(class, u, w), w, dt);
        record((k + 1) as f64 * dt, w, &mut t, &mut ws, &mut jv, &mut hv);
    }
    ReducedTrajectory {
        t,
        w: ws,
        jsq: jv,
        h: hv,
    }
}

fn rk4_step3(f: impl Fn([f64; 3]) -> [f64; 3], w: [f64; 3], dt: f64) -> [f64; 3] {
    let advance =
        |w: [f64; 3], k: [f64; 3], h: f64| [w[0] + h * k[0], w[1] + h * k[1], w[2] + h * k[2]];
    let k1 = f(w);
    let k2 = f(advance(w, k1, dt / 2.0));
    let k3 = f(advance(w, k2, dt / 2.0));
    let k4 = f(advance(w, k3, dt));
    let mut out = w;
    for i in 0..3 {
        out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::VSampler;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn hilbert_map_at_the_apex_rest_state() {
        let z = PhasePoint::new(MinkVec::apex(), MinkVec::zero());
        let w = hilbert_map(RotationClass::Elliptic, z);
        assert_eq!(w.to_array(), [1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn hilbert_map_elliptic_example() {
        let z = PhasePoint::new(
            MinkVec::new(3.0f64.sqrt(), 0.0, 2.0),
            MinkVec::new(0.0, 1.0, 0.0),
        );
        let w = hilbert_map(RotationClass::Elliptic, z);
        assert_close(w.w1, 2.0, 1e-15);
        assert_close(w.w2, 0.0, 1e-15);
        assert_close(w.w3, 1.0, 1e-15);
        assert_close(w.w4, 3.0f64.sqrt(), 1e-15);
        assert_close(w.variety_residual(RotationClass::Elliptic), 0.0, 1e-12);
    }

    #[test]
    fn hilbert_map_parabolic_example() {
        let z = PhasePoint::new(MinkVec::apex(), MinkVec::new(1.0, 0.0, 0.0));
        let w = hilbert_map(RotationClass::Parabolic, z);
        assert_eq!(w.to_array(), [-1.0, 0.0, 1.0, 1.0]);
        assert_close(w.variety_residual(RotationClass::Parabolic), 0.0, 1e-15);
    }

    #[test]
    fn hilbert_image_satisfies_the_variety_relation() {
        let mut s = VSampler::new(31);
        for class in RotationClass::ALL {
            let rel = variety_relation_poly(class);
            for _ in 0..200 {
                let z = s.phase_point();
                let w = hilbert_map(class, z);
                assert!(rel.eval(&w.to_array()).abs() < 1e-9);
                assert!(w.variety_residual(class).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn full_invariant_relations_vanish_on_the_variety() {
        let mut s = VSampler::new(32);
        for class in RotationClass::ALL {
            let set = full_invariant_set(class);
            let samples = s.phase_points(200);
            let worst = set.max_relation_residual(&samples);
            assert!(worst < 1e-9, "{class:?}: {worst}");
        }
    }

    #[test]
    fn membership_examples() {
        let m = image_membership(
            RotationClass::Elliptic,
            ReducedPoint::new(1.0, 0.0, 5.0, 0.0),
            1e-9,
        );
        assert_eq!(m.stratum(), Some(ImageStratum::ApexStates));

        let m = image_membership(
            RotationClass::Parabolic,
            ReducedPoint::new(0.5, 0.0, 1.0, 0.5),
            1e-9,
        );
        match m {
            Membership::NotMember { reason } => assert!(reason.contains("w1 >= 0")),
            _ => panic!("expected rejection"),
        }

        let m = image_membership(
            RotationClass::Hyperbolic,
            ReducedPoint::new(0.0, 0.0, 1.0, 1.0),
            1e-9,
        );
        assert!(m.is_member());
    }

    #[test]
    fn elliptic_rest_state_stratum_is_tagged() {
        let m = image_membership(
            RotationClass::Elliptic,
            ReducedPoint::new(2.5, 0.0, 0.0, 0.0),
            1e-9,
        );
        assert_eq!(m.stratum(), Some(ImageStratum::RestStates));
    }

    #[test]
    fn lift_examples_round_trip() {
        let z = lift(
            RotationClass::Elliptic,
            ReducedPoint::new(2.0, 0.0, 1.0, 3.0f64.sqrt()),
            1e-9,
        )
        .unwrap();
        assert!(
            z.max_abs_diff(PhasePoint::new(
                MinkVec::new(3.0f64.sqrt(), 0.0, 2.0),
                MinkVec::new(0.0, 1.0, 0.0),
            )) < 1e-12
        );

        let z = lift(
            RotationClass::Hyperbolic,
            ReducedPoint::new(0.0, 0.0, 1.0, 1.0),
            1e-9,
        )
        .unwrap();
        assert!(
            z.max_abs_diff(PhasePoint::new(
                MinkVec::apex(),
                MinkVec::new(0.0, 1.0, 0.0)
            )) < 1e-12
        );

        let z = lift(
            RotationClass::Parabolic,
            ReducedPoint::new(-1.0, 0.0, 1.0, 1.0),
            1e-9,
        )
        .unwrap();
        assert!(
            z.max_abs_diff(PhasePoint::new(
                MinkVec::apex(),
                MinkVec::new(1.0, 0.0, 0.0)
            )) < 1e-12
        );
    }

    #[test]
    fn lift_rejects_points_off_the_image() {
        let r = lift(
            RotationClass::Parabolic,
            ReducedPoint::new(0.5, 0.0, 1.0, 0.5),
            1e-9,
        );
        assert!(matches!(r, Err(LiftError::NotInImage { .. })));
        let r = lift(
            RotationClass::Elliptic,
            ReducedPoint::new(0.5, 0.0, 1.0, 0.0),
            1e-9,
        );
        assert!(matches!(r, Err(LiftError::NotInImage { .. })));
    }

    #[test]
    fn lift_round_trips_on_random_admissible_points() {
        let mut s = VSampler::new(33);
        for class in RotationClass::ALL {
            for _ in 0..300 {
                let w1 = match class {
                    RotationClass::Elliptic => s.uniform(1.05, 4.0),
                    RotationClass::Hyperbolic => s.uniform(-3.0, 3.0),
                    RotationClass::Parabolic => s.uniform(-3.0, -0.2),
                };
                let w2 = s.uniform(-2.0, 2.0);
                let j2 = s.uniform(0.0, 4.0);
                let w3 = (j2 + w2 * w2) / class.q(w1);
                let w4 = if s.uniform(0.0, 1.0) < 0.5 {
                    j2.sqrt()
                } else {
                    -j2.sqrt()
                };
                let w = ReducedPoint::new(w1, w2, w3, w4);
                let z = lift(class, w, 1e-9).unwrap();
                assert!(z.on_tangent_bundle(1e-10), "{class:?} lift off the bundle");
                let back = hilbert_map(class, z);
                for (a, b) in back.to_array().iter().zip(w.to_array()) {
                    assert!((a - b).abs() < 1e-12, "{class:?}: {back:?} vs {w:?}");
                }
            }
        }
    }

    #[test]
    fn fiber_description_examples() {
        let f = fiber_description(RotationClass::Elliptic, [1.0, 0.0, 0.0], 1e-9).unwrap();
        assert_eq!(f, FiberDescription::Point);

        let f = fiber_description(RotationClass::Elliptic, [2.0, 0.0, 1.0], 1e-9).unwrap();
        assert_eq!(f, FiberDescription::TwoOrbits(OrbitGeometry::Ellipse));

        let f = fiber_description(RotationClass::Parabolic, [-1.0, 0.0, 0.0], 1e-9).unwrap();
        assert_eq!(f, FiberDescription::OneOrbit(OrbitGeometry::Parabola));
    }

    #[test]
    fn reduced_field_stationary_examples() {
        // Linear potential with unit slope: the equilibrium height formula
        // q(rho) U'(rho) / rho makes the field vanish.
        let u = Potential::linear(1.0);
        let f = reduced_field(RotationClass::Elliptic, &u, [2.0, 0.0, 1.5]);
        assert_eq!(f, [0.0, 0.0, 0.0]);
        let f = reduced_field(RotationClass::Hyperbolic, &u, [1.0, 0.0, 2.0]);
        assert_eq!(f, [0.0, 0.0, 0.0]);
        let u = Potential::linear(-1.0);
        let f = reduced_field(RotationClass::Parabolic, &u, [-1.0, 0.0, 1.0]);
        assert_eq!(f, [0.0, 0.0, 0.0]);
    }

    #[test]
    fn reduced_integration_conserves_first_integrals() {
        let mut s = VSampler::new(34);
        for class in RotationClass::ALL {
            let u = Potential::linear(if class == RotationClass::Parabolic {
                -1.0
            } else {
                1.0
            });
            let z = s.phase_point();
            let w0 = hilbert_map(class, z).to_array();
            let traj = integrate_reduced(class, &u, w0, 1e-3, 10_000);
            assert!(
                traj.max_jsq_drift() <= 1e-8,
                "{class:?} jsq drift {}",
                traj.max_jsq_drift()
            );
            assert!(
                traj.max_h_drift() <= 1e-8,
                "{class:?} h drift {}",
                traj.max_h_drift()
            );
        }
    }

    #[test]
    fn stationary_reduced_point_stays_fixed() {
        let u = Potential::linear(1.0);
        let w0 = [
            2.0,
            0.0,
            1.5,
            (jsq(RotationClass::Elliptic, [2.0, 0.0, 1.5])).sqrt(),
        ];
        let traj = integrate_reduced(RotationClass::Elliptic, &u, w0, 1e-2, 100);
        for w in &traj.w {
            for k in 0..4 {
                assert!((w[k] - w0[k]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn momentum_component_equals_momentum_map() {
        let mut s = VSampler::new(35);
        for class in RotationClass::ALL {
            for _ in 0..50 {
                let z = s.phase_point();
                let w = hilbert_map(class, z);
                assert_eq!(w.w4, class.momentum_map(z));
            }
        }
    }

    #[test]
    fn parabolic_invariants_separate_orbits() {
        // Two points on the same orbit normalize to the same representative.
        let mut s = VSampler::new(36);
        let class = RotationClass::Parabolic;
        for _ in 0..100 {
            let z = s.phase_point();
            let z2 = class.act(s.uniform(-2.0, 2.0), z);
            let a = hilbert_map(class, z).to_array();
            let b = hilbert_map(class, z2).to_array();
            for k in 0..4 {
                assert!((a[k] - b[k]).abs() < 1e-9);
            }
            let na = class.normalize_representative(z);
            let nb = class.normalize_representative(z2);
            assert!(na.max_abs_diff(nb) < 1e-8);
        }
    }

    #[test]
    fn reduced_csv_header_is_stable() {
        let u = Potential::linear(1.0);
        let traj = integrate_reduced(RotationClass::Elliptic, &u, [2.0, 0.0, 1.5, 1.0], 1e-3, 2);
        let mut buf = Vec::new();
        traj.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,w1,w2,w3,w4,jsq,h\n"));
        assert_eq!(text.lines().count(), 4);
    }
}
