//! Sparse multivariate polynomials with `f64` coefficients.
//!
//! Bracket tables, constraint functions, and invariant generators are all
//! polynomial, so they are stored symbolically: monomial exponent vectors map
//! to coefficients in a `BTreeMap`, which keeps the representation canonical.
//! Identities such as antisymmetry of a bracket table can then be checked
//! structurally (term by term) instead of only at sampled points. All built-in
//! tables use small integer coefficients, for which `f64` arithmetic is exact.

use std::collections::BTreeMap;
use std::fmt;

/// Polynomial in `N` variables, stored as exponent-vector -> coefficient.
///
/// Zero coefficients are never stored, so `terms` is a canonical form and
/// `PartialEq` is structural equality of polynomials.
#[derive(Clone, PartialEq)]
pub struct Poly<const N: usize> {
    terms: BTreeMap<[u8; N], f64>,
}

impl<const N: usize> Poly<N> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: f64) -> Self {
        let mut p = Poly::zero();
        if c != 0.0 {
            p.terms.insert([0; N], c);
        }
        p
    }

    pub fn one() -> Self {
        Poly::constant(1.0)
    }

    /// The coordinate function `z_i`.
    pub fn var(i: usize) -> Self {
        assert!(i < N, "variable index {i} out of range for {N} variables");
        let mut exps = [0u8; N];
        exps[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, 1.0);
        Poly { terms }
    }

    /// Single monomial `c * prod z_i^e_i`.
    pub fn monomial(c: f64, exps: [u8; N]) -> Self {
        let mut p = Poly::zero();
        if c != 0.0 {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&d| d as u32).sum())
            .max()
            .unwrap_or(0)
    }

    fn insert(&mut self, exps: [u8; N], c: f64) {
        if c == 0.0 {
            return;
        }
        let entry = self.terms.entry(exps).or_insert(0.0);
        *entry += c;
        if *entry == 0.0 {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.insert(e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.insert(e, -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -*c;
        }
        out
    }

    pub fn scale(&self, k: f64) -> Self {
        if k == 0.0 {
            return Poly::zero();
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= k;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Poly::zero();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let mut e = [0u8; N];
                for i in 0..N {
                    e[i] = ea[i].checked_add(eb[i]).expect("monomial degree overflow");
                }
                out.insert(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Poly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < N);
        let mut out = Poly::zero();
        for (&e, &c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e;
            d[i] -= 1;
            out.insert(d, c * e[i] as f64);
        }
        out
    }

    pub fn eval(&self, z: &[f64; N]) -> f64 {
        let mut acc = 0.0;
        for (e, &c) in &self.terms {
            let mut m = c;
            for i in 0..N {
                if e[i] > 0 {
                    m *= z[i].powi(e[i] as i32);
                }
            }
            acc += m;
        }
        acc
    }

    /// Substitute polynomials (in `M` variables) for each of the `N` variables.
    pub fn compose<const M: usize>(&self, args: &[Poly<M>; N]) -> Poly<M> {
        let mut out = Poly::<M>::zero();
        for (e, &c) in &self.terms {
            let mut m = Poly::<M>::constant(c);
            for i in 0..N {
                if e[i] > 0 {
                    m = m.mul(&args[i].pow(e[i] as u32));
                }
            }
            out = out.add(&m);
        }
        out
    }

    /// Maximum absolute coefficient, a cheap magnitude scale for residuals.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |a, c| a.max(c.abs()))
    }
}

impl<const N: usize> fmt::Debug for Poly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &d) in e.iter().enumerate() {
                match d {
                    0 => {}
                    1 => write!(f, "*z{i}")?,
                    _ => write!(f, "*z{i}^{d}")?,
                }
            }
        }
        Ok(())
    }
}

impl<const N: usize> std::ops::Add for &Poly<N> {
    type Output = Poly<N>;
    fn add(self, rhs: &Poly<N>) -> Poly<N> {
        Poly::add(self, rhs)
    }
}

impl<const N: usize> std::ops::Sub for &Poly<N> {
    type Output = Poly<N>;
    fn sub(self, rhs: &Poly<N>) -> Poly<N> {
        Poly::sub(self, rhs)
    }
}

impl<const N: usize> std::ops::Mul for &Poly<N> {
    type Output = Poly<N>;
    fn mul(self, rhs: &Poly<N>) -> Poly<N> {
        Poly::mul(self, rhs)
    }
}

/// Polynomial on phase space, variables ordered `(x1, x2, x3, y1, y2, y3)`.
pub type PhasePoly = Poly<6>;

/// Polynomial on the reduced space, variables `(w1, w2, w3, w4)`.
pub type ReducedPoly = Poly<4>;

/// Polynomial on configuration space, variables `(x1, x2, x3)`.
pub type SpacePoly = Poly<3>;
