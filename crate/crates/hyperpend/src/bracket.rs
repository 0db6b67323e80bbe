//! Poisson structures on phase space: the full bracket of the tangent-bundle
//! symplectic form, the Dirac correction for the constraint variety, and
//! generic bracket tables described by polynomial structure functions.
//!
//! Two independent routes to the Dirac bracket are kept side by side: the
//! closed-form correction `{f,g}* = {f,g} + sum C_ij {f,c_i}{g,c_j}` evaluated
//! pointwise, and the hardcoded coordinate table. Their agreement on sampled
//! constrained points is one of the main verification suites.

use crate::minkowski::{lorentz_inner, MinkVec};
use crate::phase::{casimir_c1_poly, casimir_c2_poly, coord, PhasePoint, X1, X2, X3, Y1, Y2, Y3};
use crate::poly::{PhasePoly, Poly};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BracketError {
    /// The Dirac correction matrix is singular when `<x,x>` vanishes.
    #[error("degenerate point: |<x,x>| = {metric:.3e} below tolerance {tol:.3e}")]
    DegeneratePoint { metric: f64, tol: f64 },
}

/// Lorentz gradient of a phase polynomial in the position slot, evaluated.
fn grad_x(f: &PhasePoly, z: &[f64; 6]) -> MinkVec {
    MinkVec::new(
        f.partial(X1).eval(z),
        f.partial(X2).eval(z),
        -f.partial(X3).eval(z),
    )
}

/// Lorentz gradient in the velocity slot, evaluated.
fn grad_y(f: &PhasePoly, z: &[f64; 6]) -> MinkVec {
    MinkVec::new(
        f.partial(Y1).eval(z),
        f.partial(Y2).eval(z),
        -f.partial(Y3).eval(z),
    )
}

/// Full Poisson bracket of the tangent-bundle symplectic form, at a point:
/// `{f,g} = <grad_x f, grad_y g>_L - <grad_x g, grad_y f>_L`.
pub fn full_bracket(f: &PhasePoly, g: &PhasePoly, z: PhasePoint) -> f64 {
    let a = z.to_array();
    lorentz_inner(grad_x(f, &a), grad_y(g, &a)) - lorentz_inner(grad_x(g, &a), grad_y(f, &a))
}

/// Full Poisson bracket as a polynomial.
///
/// Signature signs cancel pairwise, leaving
/// `{f,g} = sum_k s_k (df/dx_k dg/dy_k - dg/dx_k df/dy_k)` with `s = (1,1,-1)`.
pub fn full_bracket_poly(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    let signs = [1.0, 1.0, -1.0];
    let mut out = PhasePoly::zero();
    for k in 0..3 {
        let t = f
            .partial(k)
            .mul(&g.partial(k + 3))
            .sub(&g.partial(k).mul(&f.partial(k + 3)))
            .scale(signs[k]);
        out = out.add(&t);
    }
    out
}

/// Dirac bracket at a constrained point, via the correction formula.
///
/// The correction matrix is `C = (1 / 2<x,x>) [[0,-1],[1,0]]` with `<x,x>`
/// taken at the actual point, so the bracket is exact on a neighborhood of
/// the variety, not only on its ideal zero set.
pub fn dirac_bracket(
    f: &PhasePoly,
    g: &PhasePoly,
    z: PhasePoint,
    tol_degenerate: f64,
) -> Result<f64, BracketError> {
    let metric = lorentz_inner(z.x, z.x);
    if metric.abs() < tol_degenerate {
        return Err(BracketError::DegeneratePoint {
            metric: metric.abs(),
            tol: tol_degenerate,
        });
    }
    let c1 = casimir_c1_poly();
    let c2 = casimir_c2_poly();
    let fc1 = full_bracket(f, &c1, z);
    let fc2 = full_bracket(f, &c2, z);
    let gc1 = full_bracket(g, &c1, z);
    let gc2 = full_bracket(g, &c2, z);
    let correction = (-fc1 * gc2 + fc2 * gc1) / (2.0 * metric);
    Ok(full_bracket(f, g, z) + correction)
}

/// Antisymmetric table of polynomial structure functions defining a Poisson
/// bracket on coordinates: entry `(i, j)` is `{z_i, z_j}`.
#[derive(Clone)]
pub struct BracketTable<const N: usize> {
    entries: Vec<Vec<Poly<N>>>,
}

impl<const N: usize> BracketTable<N> {
    /// Build from the strictly upper triangle; the lower triangle is filled
    /// by antisymmetry and the diagonal is zero.
    pub fn from_upper(mut upper: impl FnMut(usize, usize) -> Poly<N>) -> Self {
        let mut entries = vec![vec![Poly::<N>::zero(); N]; N];
        for i in 0..N {
            for j in (i + 1)..N {
                let p = upper(i, j);
                entries[j][i] = p.neg();
                entries[i][j] = p;
            }
        }
        BracketTable { entries }
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly<N> {
        &self.entries[i][j]
    }

    /// Structural antisymmetry: `entry(i,j) + entry(j,i)` is the zero
    /// polynomial and the diagonal vanishes, checked term by term.
    pub fn is_antisymmetric(&self) -> bool {
        for i in 0..N {
            if !self.entries[i][i].is_zero() {
                return false;
            }
            for j in 0..N {
                if !self.entries[i][j].add(&self.entries[j][i]).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Bracket of two polynomials under this table, symbolically:
    /// `{f,g} = sum_ij gamma_ij df/dz_i dg/dz_j`.
    pub fn bracket_poly(&self, f: &Poly<N>, g: &Poly<N>) -> Poly<N> {
        let df: Vec<Poly<N>> = (0..N).map(|i| f.partial(i)).collect();
        let dg: Vec<Poly<N>> = (0..N).map(|j| g.partial(j)).collect();
        let mut out = Poly::<N>::zero();
        for i in 0..N {
            if df[i].is_zero() {
                continue;
            }
            for j in 0..N {
                if dg[j].is_zero() || self.entries[i][j].is_zero() {
                    continue;
                }
                out = out.add(&self.entries[i][j].mul(&df[i]).mul(&dg[j]));
            }
        }
        out
    }

    pub fn bracket_at(&self, f: &Poly<N>, g: &Poly<N>, z: &[f64; N]) -> f64 {
        self.bracket_poly(f, g).eval(z)
    }

    /// Hamiltonian vector field of `h`: component `j` is `{z_j, h}`, so the
    /// flow satisfies `dz_j/dt = {z_j, h}`.
    pub fn hamiltonian_field_poly(&self, h: &Poly<N>) -> Vec<Poly<N>> {
        let dh: Vec<Poly<N>> = (0..N).map(|i| h.partial(i)).collect();
        (0..N)
            .map(|j| {
                let mut acc = Poly::<N>::zero();
                for i in 0..N {
                    if dh[i].is_zero() || self.entries[j][i].is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.entries[j][i].mul(&dh[i]));
                }
                acc
            })
            .collect()
    }

    /// Hamiltonian vector field of `h` evaluated at a point.
    pub fn hamiltonian_field(&self, h: &Poly<N>, z: &[f64; N]) -> Vec<f64> {
        self.hamiltonian_field_poly(h)
            .iter()
            .map(|p| p.eval(z))
            .collect()
    }

    /// Cyclic Jacobi sum `{z_i,{z_j,z_k}} + {z_j,{z_k,z_i}} + {z_k,{z_i,z_j}}`
    /// as a polynomial.
    pub fn jacobi_poly(&self, i: usize, j: usize, k: usize) -> Poly<N> {
        let zi = Poly::<N>::var(i);
        let zj = Poly::<N>::var(j);
        let zk = Poly::<N>::var(k);
        self.bracket_poly(&zi, &self.bracket_poly(&zj, &zk))
            .add(&self.bracket_poly(&zj, &self.bracket_poly(&zk, &zi)))
            .add(&self.bracket_poly(&zk, &self.bracket_poly(&zi, &zj)))
    }
}

/// The ambient (unconstrained) bracket table: `{x_k, y_k} = s_k` with
/// signature signs `s = (1, 1, -1)`, all other coordinate brackets zero.
pub fn full_table() -> BracketTable<6> {
    BracketTable::from_upper(|i, j| match (i, j) {
        (X1, Y1) => PhasePoly::one(),
        (X2, Y2) => PhasePoly::one(),
        (X3, Y3) => PhasePoly::constant(-1.0),
        _ => PhasePoly::zero(),
    })
}

/// The Dirac bracket table on the constraint variety.
///
/// Position brackets vanish; position-velocity and velocity-velocity entries
/// are the quadratic polynomials below, with Casimirs `c1 = <x,x>+1` and
/// `c2 = <x,y>`.
pub fn dirac_table() -> BracketTable<6> {
    let x = |i: usize| coord(i);
    BracketTable::from_upper(|i, j| match (i, j) {
        (X1, Y1) => PhasePoly::one().add(&x(X1).pow(2)),
        (X1, Y2) => x(X1).mul(&x(X2)),
        (X1, Y3) => x(X1).mul(&x(X3)),
        (X2, Y1) => x(X1).mul(&x(X2)),
        (X2, Y2) => PhasePoly::one().add(&x(X2).pow(2)),
        (X2, Y3) => x(X2).mul(&x(X3)),
        (X3, Y1) => x(X1).mul(&x(X3)),
        (X3, Y2) => x(X2).mul(&x(X3)),
        (X3, Y3) => PhasePoly::constant(-1.0).add(&x(X3).pow(2)),
        (Y1, Y2) => x(X1).mul(&x(Y2)).sub(&x(X2).mul(&x(Y1))),
        (Y1, Y3) => x(X1).mul(&x(Y3)).sub(&x(Y1).mul(&x(X3))),
        (Y2, Y3) => x(X2).mul(&x(Y3)).sub(&x(Y2).mul(&x(X3))),
        _ => PhasePoly::zero(),
    })
}

/// Lie derivative of a scalar along a polynomial vector field, symbolically:
/// `L_f(phi) = sum_j f_j dphi/dz_j`.
pub fn lie_derivative_poly<const N: usize>(field: &[Poly<N>], phi: &Poly<N>) -> Poly<N> {
    let mut out = Poly::<N>::zero();
    for (j, fj) in field.iter().enumerate() {
        if fj.is_zero() {
            continue;
        }
        out = out.add(&fj.mul(&phi.partial(j)));
    }
    out
}

/// Lie derivative evaluated at a point: `Dphi(z) . f(z)`.
pub fn lie_derivative<const N: usize>(field: &[Poly<N>], phi: &Poly<N>, z: &[f64; N]) -> f64 {
    (0..N)
        .map(|j| phi.partial(j).eval(z) * field[j].eval(z))
        .sum()
}
