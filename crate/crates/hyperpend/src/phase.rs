//! Phase-space points and the polynomial coordinate functions on them.
//!
//! Phase space is the tangent bundle of Minkowski 3-space with coordinates
//! `(x, y)`; the constraint variety `V` is cut out by the two Casimir
//! functions `c1 = <x,x> + 1` and `c2 = <x,y>`, and the physical chart
//! additionally requires `x3 > 0`.

use crate::minkowski::{lorentz_inner, MinkVec};
use crate::poly::PhasePoly;
use serde::{Deserialize, Serialize};

/// Indices of the phase-space coordinates in polynomial variables.
pub const X1: usize = 0;
pub const X2: usize = 1;
pub const X3: usize = 2;
pub const Y1: usize = 3;
pub const Y2: usize = 4;
pub const Y3: usize = 5;

/// Position/velocity pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub x: MinkVec,
    pub y: MinkVec,
}

impl PhasePoint {
    pub const fn new(x: MinkVec, y: MinkVec) -> Self {
        PhasePoint { x, y }
    }

    pub fn from_array(a: [f64; 6]) -> Self {
        PhasePoint::new(
            MinkVec::new(a[0], a[1], a[2]),
            MinkVec::new(a[3], a[4], a[5]),
        )
    }

    pub fn to_array(self) -> [f64; 6] {
        [
            self.x.x1, self.x.x2, self.x.x3, self.y.x1, self.y.x2, self.y.x3,
        ]
    }

    /// Residual of the first constraint, `<x,x> + 1`.
    pub fn casimir_c1(self) -> f64 {
        lorentz_inner(self.x, self.x) + 1.0
    }

    /// Residual of the second constraint, `<x,y>`.
    pub fn casimir_c2(self) -> f64 {
        lorentz_inner(self.x, self.y)
    }

    /// Whether the point lies on the constraint variety within `tol`.
    pub fn on_variety(self, tol: f64) -> bool {
        self.casimir_c1().abs() <= tol && self.casimir_c2().abs() <= tol
    }

    /// Whether the point lies on the tangent bundle of the hyperbolic plane.
    pub fn on_tangent_bundle(self, tol: f64) -> bool {
        self.on_variety(tol) && self.x.x3 > 0.0
    }

    pub fn max_abs_diff(self, o: PhasePoint) -> f64 {
        self.x.max_abs_diff(o.x).max(self.y.max_abs_diff(o.y))
    }
}

/// Coordinate function `z_i` as a phase-space polynomial.
pub fn coord(i: usize) -> PhasePoly {
    PhasePoly::var(i)
}

/// First Casimir `x1^2 + x2^2 - x3^2 + 1` as a polynomial.
pub fn casimir_c1_poly() -> PhasePoly {
    coord(X1)
        .pow(2)
        .add(&coord(X2).pow(2))
        .sub(&coord(X3).pow(2))
        .add(&PhasePoly::one())
}

/// Second Casimir `x1 y1 + x2 y2 - x3 y3` as a polynomial.
pub fn casimir_c2_poly() -> PhasePoly {
    coord(X1)
        .mul(&coord(Y1))
        .add(&coord(X2).mul(&coord(Y2)))
        .sub(&coord(X3).mul(&coord(Y3)))
}

/// Kinetic form `<y,y>_L = y1^2 + y2^2 - y3^2` as a polynomial.
pub fn velocity_norm_poly() -> PhasePoly {
    coord(Y1)
        .pow(2)
        .add(&coord(Y2).pow(2))
        .sub(&coord(Y3).pow(2))
}
