//! Minkowski 3-space primitives: vectors, the Lorentz pseudo inner product,
//! cross product, gradient, and 3x3 matrices.
//!
//! The signature convention is `(+, +, -)`: the third coordinate carries the
//! negative sign. The hyperbolic plane is the upper sheet `<x,x> = -1`,
//! `x3 > 0` of the two-sheeted hyperboloid.

use crate::poly::SpacePoly;
use serde::{Deserialize, Serialize};

/// Vector in Minkowski 3-space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinkVec {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl MinkVec {
    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        MinkVec { x1, x2, x3 }
    }

    pub const fn zero() -> Self {
        MinkVec::new(0.0, 0.0, 0.0)
    }

    /// Standard basis vector `e_i`, `i` in `1..=3`.
    pub fn basis(i: usize) -> Self {
        match i {
            1 => MinkVec::new(1.0, 0.0, 0.0),
            2 => MinkVec::new(0.0, 1.0, 0.0),
            3 => MinkVec::new(0.0, 0.0, 1.0),
            _ => panic!("basis index must be 1, 2 or 3"),
        }
    }

    /// Apex of the hyperbolic plane, `(0, 0, 1)`.
    pub const fn apex() -> Self {
        MinkVec::new(0.0, 0.0, 1.0)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        MinkVec::new(a[0], a[1], a[2])
    }

    pub fn add(self, o: MinkVec) -> MinkVec {
        MinkVec::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }

    pub fn sub(self, o: MinkVec) -> MinkVec {
        MinkVec::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }

    pub fn scale(self, k: f64) -> MinkVec {
        MinkVec::new(k * self.x1, k * self.x2, k * self.x3)
    }

    /// Euclidean sup-norm distance, used by tests and diagnostics.
    pub fn max_abs_diff(self, o: MinkVec) -> f64 {
        (self.x1 - o.x1)
            .abs()
            .max((self.x2 - o.x2).abs())
            .max((self.x3 - o.x3).abs())
    }

    /// Whether the point lies on the hyperbolic plane within `tol`.
    pub fn on_hyperbolic_plane(self, tol: f64) -> bool {
        (lorentz_inner(self, self) + 1.0).abs() <= tol && self.x3 > 0.0
    }
}

/// Lorentz pseudo inner product `u1 v1 + u2 v2 - u3 v3`.
pub fn lorentz_inner(u: MinkVec, v: MinkVec) -> f64 {
    u.x1 * v.x1 + u.x2 * v.x2 - u.x3 * v.x3
}

/// Lorentz cross product.
///
/// The third component is `u2 v1 - u1 v2`, opposite the Euclidean convention;
/// this sign makes `-x x_L e3` the generator of rotations about the `x3` axis.
pub fn lorentz_cross(u: MinkVec, v: MinkVec) -> MinkVec {
    MinkVec::new(
        u.x2 * v.x3 - u.x3 * v.x2,
        u.x3 * v.x1 - u.x1 * v.x3,
        u.x2 * v.x1 - u.x1 * v.x2,
    )
}

/// Lorentz gradient of a polynomial scalar field on configuration space:
/// `(df/dx1, df/dx2, -df/dx3)`, so that `<grad_L f(x), v>_L = Df(x) v`.
pub fn lorentz_gradient(f: &SpacePoly, z: MinkVec) -> MinkVec {
    let p = z.to_array();
    MinkVec::new(
        f.partial(0).eval(&p),
        f.partial(1).eval(&p),
        -f.partial(2).eval(&p),
    )
}

/// Row-major 3x3 matrix acting on `MinkVec`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3 {
    pub rows: [[f64; 3]; 3],
}

impl Mat3 {
    pub const fn new(rows: [[f64; 3]; 3]) -> Self {
        Mat3 { rows }
    }

    pub const fn identity() -> Self {
        Mat3::new([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn apply(&self, v: MinkVec) -> MinkVec {
        let a = v.to_array();
        let mut out = [0.0; 3];
        for (i, row) in self.rows.iter().enumerate() {
            out[i] = row[0] * a[0] + row[1] * a[1] + row[2] * a[2];
        }
        MinkVec::from_array(out)
    }

    pub fn matmul(&self, o: &Mat3) -> Mat3 {
        let mut rows = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                rows[i][j] = (0..3).map(|k| self.rows[i][k] * o.rows[k][j]).sum();
            }
        }
        Mat3::new(rows)
    }

    pub fn det(&self) -> f64 {
        let r = &self.rows;
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    }

    pub fn max_abs_diff(&self, o: &Mat3) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                m = m.max((self.rows[i][j] - o.rows[i][j]).abs());
            }
        }
        m
    }
}
