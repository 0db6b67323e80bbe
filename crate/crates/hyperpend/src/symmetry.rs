//! The three one-parameter rotation subgroups of the Lorentz group that fix a
//! line, their tangent-lifted actions on phase space, infinitesimal
//! generators, and momentum maps.
//!
//! Each class carries a class polynomial `q(w1)` and an invariant linear
//! coordinate `s(x)`; these two pieces of data parameterize everything the
//! reduction and analysis layers need.

use crate::minkowski::{lorentz_cross, Mat3, MinkVec};
use crate::phase::{coord, PhasePoint, X1, X2, X3, Y1, Y2, Y3};
use crate::poly::PhasePoly;
use serde::{Deserialize, Serialize};

/// Conjugacy class of a one-parameter rotation subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RotationClass {
    /// Rotations about the `x3` axis (compact).
    Elliptic,
    /// Boosts about the `x1` axis (reductive, noncompact).
    Hyperbolic,
    /// Unipotent rotations fixing the line `x1 = 0`, `x2 = x3`.
    Parabolic,
}

impl RotationClass {
    pub const ALL: [RotationClass; 3] = [
        RotationClass::Elliptic,
        RotationClass::Hyperbolic,
        RotationClass::Parabolic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RotationClass::Elliptic => "elliptic",
            RotationClass::Hyperbolic => "hyperbolic",
            RotationClass::Parabolic => "parabolic",
        }
    }

    pub fn parse(s: &str) -> Option<RotationClass> {
        match s.to_ascii_lowercase().as_str() {
            "elliptic" | "e" => Some(RotationClass::Elliptic),
            "hyperbolic" | "h" => Some(RotationClass::Hyperbolic),
            "parabolic" | "p" => Some(RotationClass::Parabolic),
            _ => None,
        }
    }

    /// Class polynomial: `w^2 - 1`, `w^2 + 1`, `w^2`.
    pub fn q(self, w: f64) -> f64 {
        match self {
            RotationClass::Elliptic => w * w - 1.0,
            RotationClass::Hyperbolic => w * w + 1.0,
            RotationClass::Parabolic => w * w,
        }
    }

    /// Derivative of the class polynomial; `2w` for every class.
    pub fn q_prime(self, w: f64) -> f64 {
        let _ = self;
        2.0 * w
    }

    /// The invariant linear coordinate `s(x)`: `x3`, `x1`, or `x2 - x3`.
    pub fn invariant_coordinate(self, x: MinkVec) -> f64 {
        match self {
            RotationClass::Elliptic => x.x3,
            RotationClass::Hyperbolic => x.x1,
            RotationClass::Parabolic => x.x2 - x.x3,
        }
    }

    /// Lorentz gradient of `s`, a constant vector.
    pub fn invariant_gradient(self) -> MinkVec {
        match self {
            RotationClass::Elliptic => MinkVec::new(0.0, 0.0, -1.0),
            RotationClass::Hyperbolic => MinkVec::new(1.0, 0.0, 0.0),
            RotationClass::Parabolic => MinkVec::new(0.0, 1.0, 1.0),
        }
    }

    /// `s(x)` applied to the position slot, as a phase polynomial.
    pub fn invariant_coordinate_poly(self) -> PhasePoly {
        match self {
            RotationClass::Elliptic => coord(X3),
            RotationClass::Hyperbolic => coord(X1),
            RotationClass::Parabolic => coord(X2).sub(&coord(X3)),
        }
    }

    /// Group element at parameter value `p`.
    pub fn group_matrix(self, p: f64) -> Mat3 {
        match self {
            RotationClass::Elliptic => {
                let (s, c) = p.sin_cos();
                Mat3::new([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
            }
            RotationClass::Hyperbolic => {
                let (s, c) = (p.sinh(), p.cosh());
                Mat3::new([[1.0, 0.0, 0.0], [0.0, c, s], [0.0, s, c]])
            }
            RotationClass::Parabolic => {
                let h = p * p / 2.0;
                Mat3::new([[1.0, -p, p], [p, 1.0 - h, h], [p, -h, 1.0 + h]])
            }
        }
    }

    /// Diagonal (tangent-lifted) action on a phase point.
    pub fn act(self, p: f64, z: PhasePoint) -> PhasePoint {
        let m = self.group_matrix(p);
        PhasePoint::new(m.apply(z.x), m.apply(z.y))
    }

    /// Axis direction entering the generator cross products.
    fn generator_axis(self) -> (f64, MinkVec) {
        match self {
            RotationClass::Elliptic => (-1.0, MinkVec::basis(3)),
            RotationClass::Hyperbolic => (1.0, MinkVec::basis(1)),
            RotationClass::Parabolic => (-1.0, MinkVec::basis(2).add(MinkVec::basis(3))),
        }
    }

    /// Infinitesimal generator of the lifted action:
    /// `d/dp act(p, z)` at `p = 0`, as a 6-vector `(dx, dy)`.
    pub fn infinitesimal_generator(self, z: PhasePoint) -> [f64; 6] {
        let (sign, axis) = self.generator_axis();
        let dx = lorentz_cross(z.x, axis).scale(sign);
        let dy = lorentz_cross(z.y, axis).scale(sign);
        [dx.x1, dx.x2, dx.x3, dy.x1, dy.x2, dy.x3]
    }

    /// The generator as a polynomial vector field.
    pub fn generator_field(self) -> [PhasePoly; 6] {
        let (sign, axis) = self.generator_axis();
        let cross = |a: usize, b: usize, c: usize| -> [PhasePoly; 3] {
            // x x_L v for constant v, per slot offset; v components below.
            let v = axis.to_array();
            let x = |i: usize| coord(i);
            [
                x(b).scale(v[2]).sub(&x(c).scale(v[1])).scale(sign),
                x(c).scale(v[0]).sub(&x(a).scale(v[2])).scale(sign),
                x(b).scale(v[0]).sub(&x(a).scale(v[1])).scale(sign),
            ]
        };
        let dx = cross(X1, X2, X3);
        let dy = cross(Y1, Y2, Y3);
        let [a, b, c] = dx;
        let [d, e, f] = dy;
        [a, b, c, d, e, f]
    }

    /// Momentum map generating the action: `x1 y2 - x2 y1`, `x3 y2 - x2 y3`,
    /// or `x1 (y2 - y3) + y1 (x3 - x2)`.
    pub fn momentum_map(self, z: PhasePoint) -> f64 {
        let (x, y) = (z.x, z.y);
        match self {
            RotationClass::Elliptic => x.x1 * y.x2 - x.x2 * y.x1,
            RotationClass::Hyperbolic => x.x3 * y.x2 - x.x2 * y.x3,
            RotationClass::Parabolic => x.x1 * (y.x2 - y.x3) + y.x1 * (x.x3 - x.x2),
        }
    }

    /// Momentum map as a polynomial.
    pub fn momentum_poly(self) -> PhasePoly {
        let x = |i: usize| coord(i);
        match self {
            RotationClass::Elliptic => x(X1).mul(&x(Y2)).sub(&x(X2).mul(&x(Y1))),
            RotationClass::Hyperbolic => x(X3).mul(&x(Y2)).sub(&x(X2).mul(&x(Y3))),
            RotationClass::Parabolic => x(X1)
                .mul(&x(Y2).sub(&x(Y3)))
                .add(&x(Y1).mul(&x(X3).sub(&x(X2)))),
        }
    }

    /// Group-orbit sweep of a phase point over the given parameter values.
    pub fn orbit_points(self, z: PhasePoint, params: &[f64]) -> Vec<PhasePoint> {
        params.iter().map(|&p| self.act(p, z)).collect()
    }

    /// Canonical representative of the group orbit through `z`.
    ///
    /// Elliptic: rotate the position to `x2 = 0`, `x1 >= 0`; a point above the
    /// apex is instead rotated so the velocity points along `+y2`. Hyperbolic:
    /// boost to `x2 = 0` (always possible since `x3 > |x2|` on the plane).
    /// Parabolic: shear to `x1 = 0` (unique since `x3 - x2 > 0`).
    pub fn normalize_representative(self, z: PhasePoint) -> PhasePoint {
        match self {
            RotationClass::Elliptic => {
                let r2 = z.x.x1 * z.x.x1 + z.x.x2 * z.x.x2;
                if r2 > 1e-24 {
                    let theta = -z.x.x2.atan2(z.x.x1);
                    self.act(theta, z)
                } else {
                    let v2 = z.y.x1 * z.y.x1 + z.y.x2 * z.y.x2;
                    if v2 > 1e-24 {
                        let theta = std::f64::consts::FRAC_PI_2 - z.y.x2.atan2(z.y.x1);
                        self.act(theta, z)
                    } else {
                        z
                    }
                }
            }
            RotationClass::Hyperbolic => {
                let s = (-z.x.x2 / z.x.x3).atanh();
                self.act(s, z)
            }
            RotationClass::Parabolic => {
                let t = -z.x.x1 / (z.x.x3 - z.x.x2);
                self.act(t, z)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::dirac_table;
    use crate::minkowski::lorentz_inner;
    use crate::reduction::hilbert_map;
    use crate::sample::VSampler;

    #[test]
    fn group_matrix_at_zero_is_identity() {
        for class in RotationClass::ALL {
            assert_eq!(class.group_matrix(0.0), Mat3::identity());
        }
    }

    #[test]
    fn elliptic_quarter_turn() {
        let m = RotationClass::Elliptic.group_matrix(std::f64::consts::FRAC_PI_2);
        let expect = Mat3::new([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(m.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn parabolic_matrix_at_one() {
        let m = RotationClass::Parabolic.group_matrix(1.0);
        let expect = Mat3::new([[1.0, -1.0, 1.0], [1.0, 0.5, 0.5], [1.0, -0.5, 1.5]]);
        assert!(m.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn group_law_and_metric_preservation() {
        let mut s = VSampler::new(11);
        for class in RotationClass::ALL {
            for _ in 0..100 {
                let a = s.uniform(-2.0, 2.0);
                let b = s.uniform(-2.0, 2.0);
                let lhs = class.group_matrix(a).matmul(&class.group_matrix(b));
                let rhs = class.group_matrix(a + b);
                assert!(lhs.max_abs_diff(&rhs) < 1e-9, "{class:?} group law");
                assert!((class.group_matrix(a).det() - 1.0).abs() < 1e-9);

                let u = MinkVec::new(
                    s.uniform(-2.0, 2.0),
                    s.uniform(-2.0, 2.0),
                    s.uniform(-2.0, 2.0),
                );
                let v = MinkVec::new(
                    s.uniform(-2.0, 2.0),
                    s.uniform(-2.0, 2.0),
                    s.uniform(-2.0, 2.0),
                );
                let m = class.group_matrix(a);
                let before = lorentz_inner(u, v);
                let after = lorentz_inner(m.apply(u), m.apply(v));
                assert!(
                    (before - after).abs() < 1e-9,
                    "{class:?} metric preservation"
                );
            }
        }
    }

    #[test]
    fn elliptic_parameters_add_mod_two_pi() {
        let class = RotationClass::Elliptic;
        let m = class.group_matrix(0.3);
        let n = class.group_matrix(0.3 + 2.0 * std::f64::consts::PI);
        assert!(m.max_abs_diff(&n) < 1e-12);
    }

    #[test]
    fn fixed_lines() {
        let mut s = VSampler::new(12);
        for _ in 0..20 {
            let lam = s.uniform(-3.0, 3.0);
            let p = s.uniform(-2.0, 2.0);
            let axis_e = MinkVec::new(0.0, 0.0, lam);
            let axis_h = MinkVec::new(lam, 0.0, 0.0);
            let axis_p = MinkVec::new(0.0, lam, lam);
            assert!(
                RotationClass::Elliptic
                    .group_matrix(p)
                    .apply(axis_e)
                    .max_abs_diff(axis_e)
                    < 1e-12
            );
            assert!(
                RotationClass::Hyperbolic
                    .group_matrix(p)
                    .apply(axis_h)
                    .max_abs_diff(axis_h)
                    < 1e-12
            );
            assert!(
                RotationClass::Parabolic
                    .group_matrix(p)
                    .apply(axis_p)
                    .max_abs_diff(axis_p)
                    < 1e-12
            );
        }
    }

    #[test]
    fn elliptic_action_fixes_the_apex_rest_state() {
        let z = PhasePoint::new(MinkVec::apex(), MinkVec::zero());
        let moved = RotationClass::Elliptic.act(1.234, z);
        assert!(moved.max_abs_diff(z) < 1e-15);
    }

    #[test]
    fn action_preserves_the_variety_and_invariants() {
        let mut s = VSampler::new(13);
        for class in RotationClass::ALL {
            for _ in 0..50 {
                let z = s.phase_point();
                let p = s.uniform(-1.5, 1.5);
                let zz = class.act(p, z);
                assert!(zz.on_tangent_bundle(1e-9));
                let before = hilbert_map(class, z).to_array();
                let after = hilbert_map(class, zz).to_array();
                for k in 0..4 {
                    assert!(
                        (before[k] - after[k]).abs() < 1e-9,
                        "{class:?} component {k}"
                    );
                }
                // The invariant coordinate itself is preserved exactly.
                let su = class.invariant_coordinate(z.x);
                let sv = class.invariant_coordinate(zz.x);
                assert!((su - sv).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn generator_matches_finite_difference_of_action() {
        let mut s = VSampler::new(14);
        let h = 1e-4;
        for class in RotationClass::ALL {
            for _ in 0..20 {
                let z = s.phase_point();
                let gen = class.infinitesimal_generator(z);
                let plus = class.act(h, z).to_array();
                let minus = class.act(-h, z).to_array();
                for k in 0..6 {
                    let fd = (plus[k] - minus[k]) / (2.0 * h);
                    assert!((fd - gen[k]).abs() < 1e-7, "{class:?} component {k}");
                }
            }
        }
    }

    #[test]
    fn elliptic_generator_example() {
        let z = PhasePoint::new(MinkVec::new(1.0, 0.0, 2.0f64.sqrt()), MinkVec::zero());
        let g = RotationClass::Elliptic.infinitesimal_generator(z);
        assert_eq!(g, [0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn generator_field_polynomials_match_numeric_generator() {
        let mut s = VSampler::new(15);
        for class in RotationClass::ALL {
            let field = class.generator_field();
            for _ in 0..20 {
                let z = s.phase_point();
                let a = z.to_array();
                let num = class.infinitesimal_generator(z);
                for k in 0..6 {
                    assert!((field[k].eval(&a) - num[k]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn generator_is_hamiltonian_for_the_momentum_map() {
        let table = dirac_table();
        let mut s = VSampler::new(16);
        for class in RotationClass::ALL {
            let field = table.hamiltonian_field_poly(&class.momentum_poly());
            for _ in 0..30 {
                let z = s.phase_point();
                let a = z.to_array();
                let gen = class.infinitesimal_generator(z);
                for k in 0..6 {
                    assert!(
                        (field[k].eval(&a) - gen[k]).abs() < 1e-9,
                        "{class:?} component {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn momentum_map_examples() {
        let apex = PhasePoint::new(MinkVec::apex(), MinkVec::zero());
        assert_eq!(RotationClass::Elliptic.momentum_map(apex), 0.0);
        let z = PhasePoint::new(MinkVec::apex(), MinkVec::new(0.0, 1.0, 0.0));
        assert_eq!(RotationClass::Hyperbolic.momentum_map(z), 1.0);
    }

    #[test]
    fn orbit_sweep_preserves_invariants_and_returns_inputs() {
        let mut s = VSampler::new(17);
        let z = s.phase_point();
        assert_eq!(RotationClass::Parabolic.orbit_points(z, &[0.0]), vec![z]);

        let params: Vec<f64> = (0..64)
            .map(|k| k as f64 * std::f64::consts::TAU / 64.0)
            .collect();
        let orbit = RotationClass::Elliptic.orbit_points(z, &params);
        let w0 = hilbert_map(RotationClass::Elliptic, z).to_array();
        for p in &orbit {
            assert!(p.on_tangent_bundle(1e-9));
            let w = hilbert_map(RotationClass::Elliptic, *p).to_array();
            for k in 0..4 {
                assert!((w[k] - w0[k]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn parabolic_orbit_quadratic_coefficient_never_degenerates() {
        // The quadratic-in-parameter term of the orbit is proportional to
        // x3 - x2, which is bounded away from zero on the plane.
        let mut s = VSampler::new(18);
        for _ in 0..50 {
            let z = s.phase_point();
            assert!(z.x.x3 - z.x.x2 > 0.0);
        }
    }

    #[test]
    fn normalized_representative_is_on_the_same_orbit() {
        let mut s = VSampler::new(19);
        for class in RotationClass::ALL {
            for _ in 0..30 {
                let z = s.phase_point();
                let n = class.normalize_representative(z);
                assert!(n.on_tangent_bundle(1e-9));
                let a = hilbert_map(class, z).to_array();
                let b = hilbert_map(class, n).to_array();
                for k in 0..4 {
                    assert!((a[k] - b[k]).abs() < 1e-9);
                }
                // Normal form conditions.
                match class {
                    RotationClass::Elliptic => assert!(n.x.x2.abs() < 1e-9 && n.x.x1 >= -1e-12),
                    RotationClass::Hyperbolic => assert!(n.x.x2.abs() < 1e-9),
                    RotationClass::Parabolic => assert!(n.x.x1.abs() < 1e-9),
                }
            }
        }
    }
}
