//! Constrained equations of motion on the tangent bundle of the hyperbolic
//! plane, their fourth-order integration with constraint projection, and
//! conservation diagnostics.
//!
//! The field is `dx/dt = y`, `dy/dt = -grad_L U + x (<y,y> - <x, grad_L U>)`
//! with `U` a function of the class's invariant coordinate `s(x)`; since `s`
//! is linear, `<x, grad_L s> = s(x)` and the force term collapses to
//! `-U'(s) grad_L s + x (<y,y> - s U'(s))`.

use crate::minkowski::{lorentz_inner, MinkVec};
use crate::phase::{coord, velocity_norm_poly, PhasePoint, X1, X2, X3, Y1, Y2, Y3};
use crate::poly::PhasePoly;
use crate::symmetry::RotationClass;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error(
        "step {step}: trajectory left the chart (<x,x> = {metric:.3e}, x3 = {x3:.3e}); reduce dt"
    )]
    LeftChart { step: usize, metric: f64, x3: f64 },
    #[error(
        "step {step}: potential denominator {value:.3e} within {tol:.3e} of a pole at s = {s:.6}"
    )]
    NearPole {
        step: usize,
        s: f64,
        value: f64,
        tol: f64,
    },
    #[error("operation requires a polynomial potential, got a rational one")]
    RationalPotential,
}

/// Univariate potential in the invariant coordinate: a polynomial, or a
/// rational function given as numerator/denominator coefficient lists
/// (ascending powers).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Potential {
    pub num: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<Vec<f64>>,
}

fn horner(coeffs: &[f64], s: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c)
}

fn derivative_coeffs(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| k as f64 * c)
        .collect()
}

impl Potential {
    pub fn zero() -> Self {
        Potential {
            num: vec![],
            den: None,
        }
    }

    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        Potential {
            num: coeffs,
            den: None,
        }
    }

    /// Linear potential `U(s) = c s`.
    pub fn linear(c: f64) -> Self {
        Potential::polynomial(vec![0.0, c])
    }

    pub fn rational(num: Vec<f64>, den: Vec<f64>) -> Self {
        Potential {
            num,
            den: Some(den),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_none()
    }

    pub fn eval(&self, s: f64) -> f64 {
        let n = horner(&self.num, s);
        match &self.den {
            None => n,
            Some(d) => n / horner(d, s),
        }
    }

    /// `U'(s)`, using the quotient rule for rational potentials.
    pub fn eval_derivative(&self, s: f64) -> f64 {
        let n = horner(&self.num, s);
        let dn = horner(&derivative_coeffs(&self.num), s);
        match &self.den {
            None => dn,
            Some(den) => {
                let d = horner(den, s);
                let dd = horner(&derivative_coeffs(den), s);
                (dn * d - n * dd) / (d * d)
            }
        }
    }

    /// Magnitude of the denominator at `s` (infinite for polynomials).
    pub fn denominator_magnitude(&self, s: f64) -> f64 {
        match &self.den {
            None => f64::INFINITY,
            Some(d) => horner(d, s).abs(),
        }
    }

    /// `U(s(x,y))` as a phase polynomial; requires a polynomial potential.
    pub fn phase_poly(&self, class: RotationClass) -> Result<PhasePoly, DynamicsError> {
        if !self.is_polynomial() {
            return Err(DynamicsError::RationalPotential);
        }
        let s = class.invariant_coordinate_poly();
        let mut out = PhasePoly::zero();
        let mut power = PhasePoly::one();
        for &c in &self.num {
            out = out.add(&power.scale(c));
            power = power.mul(&s);
        }
        Ok(out)
    }
}

/// Energy `H = <y,y>/2 + U(s(x))`.
pub fn hamiltonian(class: RotationClass, u: &Potential, z: PhasePoint) -> f64 {
    0.5 * lorentz_inner(z.y, z.y) + u.eval(class.invariant_coordinate(z.x))
}

/// Energy as a phase polynomial (polynomial potentials).
pub fn hamiltonian_poly(class: RotationClass, u: &Potential) -> Result<PhasePoly, DynamicsError> {
    Ok(velocity_norm_poly().scale(0.5).add(&u.phase_poly(class)?))
}

/// Right-hand side of the constrained equations of motion.
pub fn vector_field(class: RotationClass, u: &Potential, z: PhasePoint) -> [f64; 6] {
    let s = class.invariant_coordinate(z.x);
    let du = u.eval_derivative(s);
    let grad = class.invariant_gradient();
    let multiplier = lorentz_inner(z.y, z.y) - s * du;
    let dy = z.x.scale(multiplier).sub(grad.scale(du));
    [z.y.x1, z.y.x2, z.y.x3, dy.x1, dy.x2, dy.x3]
}

/// The constrained field as a polynomial vector field (polynomial potentials).
pub fn constrained_field_poly(
    class: RotationClass,
    u: &Potential,
) -> Result<[PhasePoly; 6], DynamicsError> {
    if !u.is_polynomial() {
        return Err(DynamicsError::RationalPotential);
    }
    let s = class.invariant_coordinate_poly();
    let mut du = PhasePoly::zero();
    let mut power = PhasePoly::one();
    for (k, &c) in u.num.iter().enumerate().skip(1) {
        du = du.add(&power.scale(k as f64 * c));
        power = power.mul(&s);
    }
    let grad = class.invariant_gradient().to_array();
    let multiplier = velocity_norm_poly().sub(&s.mul(&du));
    let x = [coord(X1), coord(X2), coord(X3)];
    let dy: Vec<PhasePoly> = (0..3)
        .map(|k| x[k].mul(&multiplier).sub(&du.scale(grad[k])))
        .collect();
    Ok([
        coord(Y1),
        coord(Y2),
        coord(Y3),
        dy[0].clone(),
        dy[1].clone(),
        dy[2].clone(),
    ])
}

/// Trajectory samples with conserved-quantity diagnostics.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub z: Vec<PhasePoint>,
    pub h: Vec<f64>,
    pub j: Vec<f64>,
    pub c1: Vec<f64>,
    pub c2: Vec<f64>,
}

impl Trajectory {
    pub fn max_h_drift(&self) -> f64 {
        drift(&self.h)
    }

    pub fn max_j_drift(&self) -> f64 {
        drift(&self.j)
    }

    pub fn max_c1_residual(&self) -> f64 {
        self.c1.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn max_c2_residual(&self) -> f64 {
        self.c2.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// CSV with header `t,x1,x2,x3,y1,y2,y3,H,J,c1res,c2res`.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "t,x1,x2,x3,y1,y2,y3,H,J,c1res,c2res")?;
        for i in 0..self.t.len() {
            let a = self.z[i].to_array();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                self.t[i],
                a[0],
                a[1],
                a[2],
                a[3],
                a[4],
                a[5],
                self.h[i],
                self.j[i],
                self.c1[i],
                self.c2[i]
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

/// Project a raw step result back onto the constraint variety: normalize the
/// position to the hyperboloid, then remove the velocity component along it.
/// The velocity projection uses the already-normalized position, which makes
/// `<x,y>` vanish to machine rounding.
fn project(z: PhasePoint) -> PhasePoint {
    let metric = lorentz_inner(z.x, z.x);
    let x = z.x.scale(1.0 / (-metric).sqrt());
    let y = z.y.add(x.scale(lorentz_inner(x, z.y)));
    PhasePoint::new(x, y)
}

fn rk4_step(class: RotationClass, u: &Potential, z: PhasePoint, dt: f64) -> PhasePoint {
    let f = |z: PhasePoint| vector_field(class, u, z);
    let advance = |z: PhasePoint, k: [f64; 6], h: f64| {
        let a = z.to_array();
        PhasePoint::from_array(std::array::from_fn(|i| a[i] + h * k[i]))
    };
    let k1 = f(z);
    let k2 = f(advance(z, k1, dt / 2.0));
    let k3 = f(advance(z, k2, dt / 2.0));
    let k4 = f(advance(z, k3, dt));
    let a = z.to_array();
    PhasePoint::from_array(std::array::from_fn(|i| {
        a[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
    }))
}

/// Integrate the constrained system with per-step projection.
///
/// Fails if the raw step leaves the chart (`<x,x> >= 0` or `x3 <= 0` before
/// projection) or, for rational potentials, if the denominator comes within
/// `tol_degenerate` of zero along the way.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // negated so NaN fails too
pub fn integrate(
    class: RotationClass,
    u: &Potential,
    z0: PhasePoint,
    dt: f64,
    steps: usize,
    tol_degenerate: f64,
) -> Result<Trajectory, DynamicsError> {
    let n = steps + 1;
    let mut traj = Trajectory {
        t: Vec::with_capacity(n),
        z: Vec::with_capacity(n),
        h: Vec::with_capacity(n),
        j: Vec::with_capacity(n),
        c1: Vec::with_capacity(n),
        c2: Vec::with_capacity(n),
    };
    let mut record = |t: f64, z: PhasePoint| {
        traj.t.push(t);
        traj.z.push(z);
        traj.h.push(hamiltonian(class, u, z));
        traj.j.push(class.momentum_map(z));
        traj.c1.push(z.casimir_c1());
        traj.c2.push(z.casimir_c2());
    };

    let mut z = project(z0);
    record(0.0, z);
    for step in 1..=steps {
        let s = class.invariant_coordinate(z.x);
        let den = u.denominator_magnitude(s);
        if den < tol_degenerate {
            return Err(DynamicsError::NearPole {
                step,
                s,
                value: den,
                tol: tol_degenerate,
            });
        }
        let raw = rk4_step(class, u, z, dt);
        let metric = lorentz_inner(raw.x, raw.x);
        // Negated comparisons so that non-finite values also fail the step.
        if !(metric < 0.0) || !(raw.x.x3 > 0.0) {
            return Err(DynamicsError::LeftChart {
                step,
                metric,
                x3: raw.x.x3,
            });
        }
        z = project(raw);
        record(step as f64 * dt, z);
    }
    Ok(traj)
}

/// Rest states of the constrained system.
///
/// A rest state `(x, 0)` is stationary iff the force `grad_L U` is normal to
/// the surface at `x`, i.e. `U'(s) (grad_L s + s x) = 0`. For an invariant
/// linear coordinate this means `U'(s(x)) = 0`, except in the elliptic class
/// where `grad_L s + s x` vanishes at the apex, which is therefore stationary
/// for every potential. Roots of `U'` are located by sign scanning and
/// bisection over the physically realizable range of `s`; each root
/// contributes the sampled level set `s(x) = rho`, `y = 0`.
#[derive(Clone, Debug)]
pub struct FullEquilibria {
    /// With a constant potential every rest state `(x, 0)` is stationary.
    pub every_rest_state: bool,
    pub levels: Vec<EquilibriumLevel>,
}

#[derive(Clone, Debug)]
pub struct EquilibriumLevel {
    pub s_value: f64,
    pub points: Vec<PhasePoint>,
}

/// Realizable range of the invariant coordinate on the plane, intersected
/// with the scan radius.
fn realizable_range(class: RotationClass, radius: f64) -> (f64, f64) {
    match class {
        RotationClass::Elliptic => (1.0, radius),
        RotationClass::Hyperbolic => (-radius, radius),
        RotationClass::Parabolic => (-radius, -1e-6),
    }
}

/// Sample the level set `s(x) = rho`, `y = 0` on the plane.
fn sample_level(class: RotationClass, rho: f64, n: usize) -> Vec<PhasePoint> {
    let mut points = Vec::with_capacity(n);
    match class {
        RotationClass::Elliptic => {
            let r = (rho * rho - 1.0).max(0.0).sqrt();
            for k in 0..n {
                let phi = k as f64 * std::f64::consts::TAU / n as f64;
                points.push(PhasePoint::new(
                    MinkVec::new(r * phi.cos(), r * phi.sin(), rho),
                    MinkVec::zero(),
                ));
            }
        }
        RotationClass::Hyperbolic => {
            let scale = (1.0 + rho * rho).sqrt();
            for k in 0..n {
                let t = -2.0 + 4.0 * k as f64 / (n.max(2) - 1) as f64;
                points.push(PhasePoint::new(
                    MinkVec::new(rho, scale * t.sinh(), scale * t.cosh()),
                    MinkVec::zero(),
                ));
            }
        }
        RotationClass::Parabolic => {
            for k in 0..n {
                let x1 = -2.0 + 4.0 * k as f64 / (n.max(2) - 1) as f64;
                let x2 = (rho * rho - 1.0 - x1 * x1) / (2.0 * rho);
                points.push(PhasePoint::new(
                    MinkVec::new(x1, x2, x2 - rho),
                    MinkVec::zero(),
                ));
            }
        }
    }
    points
}

pub fn find_full_equilibria(
    class: RotationClass,
    u: &Potential,
    scan_radius: f64,
    samples_per_level: usize,
) -> FullEquilibria {
    let du_is_zero = u.num.len() <= 1 && u.is_polynomial();
    if du_is_zero {
        return FullEquilibria {
            every_rest_state: true,
            levels: vec![],
        };
    }
    let (lo, hi) = realizable_range(class, scan_radius);
    let roots = crate::numeric::find_roots(|s| u.eval_derivative(s), lo, hi, 4096, 1e-12);
    let mut levels: Vec<EquilibriumLevel> = roots
        .into_iter()
        .map(|rho| {
            // The height-1 circle degenerates to the apex point itself.
            let n = if class == RotationClass::Elliptic && (rho - 1.0).abs() < 1e-12 {
                1
            } else {
                samples_per_level
            };
            EquilibriumLevel {
                s_value: rho,
                points: sample_level(class, rho, n),
            }
        })
        .collect();
    if class == RotationClass::Elliptic && !levels.iter().any(|l| (l.s_value - 1.0).abs() < 1e-9) {
        // The apex rest state, stationary regardless of the potential; kept
        // behind a field check so a future force model cannot silently break
        // the assumption.
        let apex = PhasePoint::new(MinkVec::apex(), MinkVec::zero());
        let field = vector_field(class, u, apex);
        if field.iter().all(|v| v.abs() < 1e-12) {
            levels.insert(
                0,
                EquilibriumLevel {
                    s_value: 1.0,
                    points: vec![apex],
                },
            );
        }
    }
    FullEquilibria {
        every_rest_state: false,
        levels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::VSampler;

    #[test]
    fn geodesic_field_at_the_reference_point() {
        let z = PhasePoint::new(MinkVec::apex(), MinkVec::new(1.0, 0.0, 0.0));
        let f = vector_field(RotationClass::Elliptic, &Potential::zero(), z);
        assert_eq!(f, [1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn rest_states_with_critical_potential_are_stationary() {
        // U = (s - 2)^2 has U'(2) = 0; the circle at height 2 is stationary.
        let u = Potential::polynomial(vec![4.0, -4.0, 1.0]);
        let x = MinkVec::new(3.0f64.sqrt(), 0.0, 2.0);
        let z = PhasePoint::new(x, MinkVec::zero());
        let f = vector_field(RotationClass::Elliptic, &u, z);
        for v in f {
            assert!(v.abs() < 1e-12);
        }
    }

    #[test]
    fn elliptic_linear_force_follows_the_chain_rule() {
        let c = 0.7;
        let u = Potential::linear(c);
        let mut s = VSampler::new(41);
        for _ in 0..20 {
            let z = s.phase_point();
            let f = vector_field(RotationClass::Elliptic, &u, z);
            let kin = lorentz_inner(z.y, z.y);
            // dy = (0,0,c) + x (kin - c x3): the gradient contributes +c to
            // the third slot through the metric sign.
            let expect = [
                z.x.x1 * (kin - c * z.x.x3),
                z.x.x2 * (kin - c * z.x.x3),
                c + z.x.x3 * (kin - c * z.x.x3),
            ];
            for k in 0..3 {
                assert!((f[3 + k] - expect[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn field_poly_matches_numeric_field() {
        let mut s = VSampler::new(42);
        for class in RotationClass::ALL {
            let u = Potential::polynomial(vec![0.3, -1.0, 0.5]);
            let field = constrained_field_poly(class, &u).unwrap();
            for _ in 0..30 {
                let z = s.phase_point();
                let num = vector_field(class, &u, z);
                let a = z.to_array();
                for k in 0..6 {
                    assert!((field[k].eval(&a) - num[k]).abs() < 1e-11);
                }
            }
        }
    }

    #[test]
    fn field_matches_hamiltonian_flow_of_the_dirac_table() {
        use crate::bracket::dirac_table;
        let table = dirac_table();
        let mut s = VSampler::new(43);
        for class in RotationClass::ALL {
            let u = Potential::linear(1.0);
            let h = hamiltonian_poly(class, &u).unwrap();
            let flow = table.hamiltonian_field_poly(&h);
            for _ in 0..20 {
                let z = s.phase_point();
                let a = z.to_array();
                let f = vector_field(class, &u, z);
                for k in 0..6 {
                    assert!(
                        (flow[k].eval(&a) - f[k]).abs() < 1e-9,
                        "{class:?} component {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn geodesic_matches_the_closed_form() {
        let z0 = PhasePoint::new(MinkVec::apex(), MinkVec::new(1.0, 0.0, 0.0));
        let dt = 1e-3;
        let steps = 5000;
        let traj = integrate(
            RotationClass::Elliptic,
            &Potential::zero(),
            z0,
            dt,
            steps,
            1e-8,
        )
        .unwrap();
        let mut worst: f64 = 0.0;
        for (k, z) in traj.z.iter().enumerate() {
            let t = k as f64 * dt;
            let exact = MinkVec::new(t.sinh(), 0.0, t.cosh());
            worst = worst.max(z.x.max_abs_diff(exact));
        }
        assert!(worst <= 1e-6, "geodesic error {worst}");
    }

    #[test]
    fn conservation_along_linear_potential_trajectories() {
        let mut s = VSampler::new(44);
        let z0 = s.phase_point();
        let u = Potential::linear(1.0);
        let traj = integrate(RotationClass::Elliptic, &u, z0, 1e-3, 10_000, 1e-8).unwrap();
        assert!(traj.max_h_drift() <= 1e-8, "H drift {}", traj.max_h_drift());
        assert!(traj.max_j_drift() <= 1e-8, "J drift {}", traj.max_j_drift());
        assert!(traj.max_c1_residual() <= 1e-10);
        assert!(traj.max_c2_residual() <= 1e-10);
    }

    #[test]
    fn zero_steps_returns_the_projected_start() {
        let z0 = PhasePoint::new(MinkVec::new(0.1, 0.0, 1.01), MinkVec::new(0.0, 0.2, 0.0));
        let traj = integrate(
            RotationClass::Elliptic,
            &Potential::zero(),
            z0,
            1e-3,
            0,
            1e-8,
        )
        .unwrap();
        assert_eq!(traj.z.len(), 1);
        assert!(traj.z[0].on_tangent_bundle(1e-12));
    }

    #[test]
    fn integration_is_equivariant_under_the_symmetry() {
        let mut s = VSampler::new(45);
        for class in RotationClass::ALL {
            let u = Potential::linear(0.8);
            let z0 = s.phase_point();
            let g = s.uniform(-1.0, 1.0);
            let a = integrate(class, &u, class.act(g, z0), 1e-3, 500, 1e-8).unwrap();
            let b = integrate(class, &u, z0, 1e-3, 500, 1e-8).unwrap();
            let mut worst: f64 = 0.0;
            for (za, zb) in a.z.iter().zip(&b.z) {
                worst = worst.max(za.max_abs_diff(class.act(g, *zb)));
            }
            assert!(worst < 1e-6, "{class:?} equivariance gap {worst}");
        }
    }

    #[test]
    fn halving_the_step_cuts_the_error_sixteenfold() {
        let z0 = PhasePoint::new(MinkVec::apex(), MinkVec::new(1.0, 0.0, 0.0));
        let err = |dt: f64| {
            let steps = (1.0 / dt) as usize;
            let traj = integrate(
                RotationClass::Elliptic,
                &Potential::zero(),
                z0,
                dt,
                steps,
                1e-8,
            )
            .unwrap();
            let mut worst: f64 = 0.0;
            for (k, z) in traj.z.iter().enumerate() {
                let t = k as f64 * dt;
                worst = worst.max(z.x.max_abs_diff(MinkVec::new(t.sinh(), 0.0, t.cosh())));
            }
            worst
        };
        let coarse = err(8e-3);
        let fine = err(4e-3);
        let ratio = coarse / fine;
        assert!((8.0..32.0).contains(&ratio), "order ratio {ratio}");
    }

    #[test]
    fn oversized_step_reports_chart_failure() {
        // A step large enough to overflow the quadratic terms must fail the
        // chart check rather than silently propagate non-finite values.
        let z0 = PhasePoint::new(MinkVec::apex(), MinkVec::new(1e200, 0.0, 0.0));
        let r = integrate(
            RotationClass::Elliptic,
            &Potential::zero(),
            z0,
            10.0,
            10,
            1e-8,
        );
        assert!(matches!(r, Err(DynamicsError::LeftChart { .. })));
    }

    #[test]
    fn rational_potential_pole_guard() {
        // U = 1 / (s - x3(0)): the denominator vanishes right at the start.
        let z0 = PhasePoint::new(MinkVec::apex(), MinkVec::new(0.1, 0.0, 0.0));
        let u = Potential::rational(vec![1.0], vec![-1.0, 1.0]);
        let r = integrate(RotationClass::Elliptic, &u, z0, 1e-3, 10, 1e-8);
        assert!(matches!(r, Err(DynamicsError::NearPole { .. })));
    }

    #[test]
    fn rational_potential_derivative_matches_finite_differences() {
        let u = Potential::rational(vec![1.0, 2.0], vec![3.0, 0.0, 1.0]);
        let h = 1e-6;
        for s in [-1.2, 0.4, 2.5] {
            let fd = (u.eval(s + h) - u.eval(s - h)) / (2.0 * h);
            assert!((u.eval_derivative(s) - fd).abs() < 1e-7);
        }
    }

    #[test]
    fn full_equilibria_for_critical_potentials() {
        // U = (s-2)^2 on the elliptic class: the circle at height 2, plus
        // the always-stationary apex.
        let u = Potential::polynomial(vec![4.0, -4.0, 1.0]);
        let eq = find_full_equilibria(RotationClass::Elliptic, &u, 10.0, 8);
        assert!(!eq.every_rest_state);
        assert_eq!(eq.levels.len(), 2);
        assert!((eq.levels[0].s_value - 1.0).abs() < 1e-12);
        assert!((eq.levels[1].s_value - 2.0).abs() < 1e-10);
        for level in &eq.levels {
            for z in &level.points {
                assert!(z.on_tangent_bundle(1e-10));
                let f = vector_field(RotationClass::Elliptic, &u, *z);
                for v in f {
                    assert!(v.abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn constant_potential_marks_every_rest_state_stationary() {
        let eq = find_full_equilibria(RotationClass::Hyperbolic, &Potential::zero(), 10.0, 4);
        assert!(eq.every_rest_state);
        assert!(eq.levels.is_empty());
    }

    #[test]
    fn linear_elliptic_potential_leaves_only_the_apex() {
        // U' never vanishes, but the apex is stationary for every elliptic
        // potential since the force there is normal to the surface.
        let eq = find_full_equilibria(RotationClass::Elliptic, &Potential::linear(1.0), 10.0, 4);
        assert!(!eq.every_rest_state);
        assert_eq!(eq.levels.len(), 1);
        assert_eq!(
            eq.levels[0].points,
            vec![PhasePoint::new(MinkVec::apex(), MinkVec::zero())]
        );
        let f = vector_field(
            RotationClass::Elliptic,
            &Potential::linear(1.0),
            eq.levels[0].points[0],
        );
        assert!(f.iter().all(|v| v.abs() < 1e-15));

        // The other classes really have none for a linear potential of the
        // non-confining sign.
        let eq = find_full_equilibria(RotationClass::Parabolic, &Potential::linear(1.0), 10.0, 4);
        assert!(eq.levels.is_empty());
    }

    #[test]
    fn trajectory_csv_header_is_stable() {
        let z0 = PhasePoint::new(MinkVec::apex(), MinkVec::new(0.1, 0.0, 0.0));
        let traj = integrate(
            RotationClass::Elliptic,
            &Potential::zero(),
            z0,
            1e-3,
            1,
            1e-8,
        )
        .unwrap();
        let mut buf = Vec::new();
        traj.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,x1,x2,x3,y1,y2,y3,H,J,c1res,c2res\n"));
        assert_eq!(text.lines().count(), 3);
    }
}
