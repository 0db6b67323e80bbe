//! Numeric certificates for the reduction machinery: invariance of an ideal
//! under a polynomial flow, and correctness of a pushed-forward Poisson
//! bracket on the image variety of a Hilbert map.
//!
//! Certificates never throw on failure; they report the worst residual so a
//! caller (or the `verify` command) can print PASS/FAIL lines with evidence.

use crate::bracket::{lie_derivative_poly, BracketTable};
use crate::phase::PhasePoint;
use crate::poly::{PhasePoly, Poly};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("empty sample set")]
    EmptySampleSet,
    #[error("sample {index} off the variety: residual {residual:.3e} exceeds {tol:.3e}")]
    SampleOffVariety {
        index: usize,
        residual: f64,
        tol: f64,
    },
}

/// A Hilbert map given by generator polynomials on phase space, together with
/// the relations that vanish on their image (polynomials in the generator
/// values).
#[derive(Clone)]
pub struct GeneratorSet<const R: usize> {
    pub generators: [PhasePoly; R],
    pub relations: Vec<Poly<R>>,
}

impl<const R: usize> GeneratorSet<R> {
    /// Evaluate the generators at a phase point.
    pub fn evaluate(&self, z: PhasePoint) -> [f64; R] {
        let a = z.to_array();
        std::array::from_fn(|i| self.generators[i].eval(&a))
    }

    /// Worst relation residual over the samples.
    pub fn max_relation_residual(&self, samples: &[PhasePoint]) -> f64 {
        let mut worst: f64 = 0.0;
        for &z in samples {
            let g = self.evaluate(z);
            for rel in &self.relations {
                worst = worst.max(rel.eval(&g).abs());
            }
        }
        worst
    }
}

/// Outcome of a certificate: worst residual over all checks versus tolerance.
#[derive(Clone, Debug)]
pub struct CertificateReport {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub cases: usize,
    pub pass: bool,
}

impl CertificateReport {
    pub fn new(name: impl Into<String>, max_residual: f64, tolerance: f64, cases: usize) -> Self {
        CertificateReport {
            name: name.into(),
            max_residual,
            tolerance,
            cases,
            pass: max_residual <= tolerance,
        }
    }
}

impl std::fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {:<34} max residual {:.3e} (tol {:.1e}, {} cases)",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.max_residual,
            self.tolerance,
            self.cases
        )
    }
}

fn check_samples(
    ideal_gens: &[PhasePoly],
    samples: &[PhasePoint],
    tol_constraint: f64,
) -> Result<(), CertifyError> {
    if samples.is_empty() {
        return Err(CertifyError::EmptySampleSet);
    }
    for (index, &z) in samples.iter().enumerate() {
        let a = z.to_array();
        for g in ideal_gens {
            let r = g.eval(&a).abs();
            if r > tol_constraint {
                return Err(CertifyError::SampleOffVariety {
                    index,
                    residual: r,
                    tol: tol_constraint,
                });
            }
        }
    }
    Ok(())
}

/// Certify that the flow of `field` leaves the zero set of `ideal_gens`
/// invariant: the Lie derivative of every generator must vanish on the
/// sampled zero-set points.
pub fn certify_invariant_ideal(
    name: &str,
    field: &[PhasePoly; 6],
    ideal_gens: &[PhasePoly],
    samples: &[PhasePoint],
    tol_constraint: f64,
    tol_identity: f64,
) -> Result<CertificateReport, CertifyError> {
    check_samples(ideal_gens, samples, tol_constraint)?;
    let derivatives: Vec<PhasePoly> = ideal_gens
        .iter()
        .map(|g| lie_derivative_poly(field, g))
        .collect();
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for &z in samples {
        let a = z.to_array();
        for d in &derivatives {
            worst = worst.max(d.eval(&a).abs());
            cases += 1;
        }
    }
    Ok(CertificateReport::new(name, worst, tol_identity, cases))
}

/// Certify a reduced bracket table against the Dirac bracket of the
/// generators: `{g_i, g_j}*(z)` must equal the table entry evaluated at the
/// image point, and the reduced table must satisfy the Jacobi identity on
/// image points.
pub fn certify_reduced_bracket(
    name: &str,
    gens: &GeneratorSet<4>,
    phase_table: &BracketTable<6>,
    reduced_table: &BracketTable<4>,
    samples: &[PhasePoint],
    tol_constraint: f64,
    tol_identity: f64,
) -> Result<CertificateReport, CertifyError> {
    // The constraint ideal defining the sampling set is implicit in the
    // caller's sampler; only the on-variety precondition is validated here.
    let c1 = crate::phase::casimir_c1_poly();
    let c2 = crate::phase::casimir_c2_poly();
    check_samples(&[c1, c2], samples, tol_constraint)?;

    // Pushforward identity, precomputed symbolically per generator pair.
    let mut pair_polys = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            let lhs = phase_table.bracket_poly(&gens.generators[i], &gens.generators[j]);
            pair_polys.push((i, j, lhs));
        }
    }
    // Jacobi residuals of the reduced table, per coordinate triple.
    let mut jacobi_polys = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            for k in (j + 1)..4 {
                jacobi_polys.push(reduced_table.jacobi_poly(i, j, k));
            }
        }
    }

    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for &z in samples {
        let a = z.to_array();
        let w = gens.evaluate(z);
        for (i, j, lhs) in &pair_polys {
            let gap = lhs.eval(&a) - reduced_table.entry(*i, *j).eval(&w);
            worst = worst.max(gap.abs());
            cases += 1;
        }
        for p in &jacobi_polys {
            worst = worst.max(p.eval(&w).abs());
            cases += 1;
        }
    }
    Ok(CertificateReport::new(name, worst, tol_identity, cases))
}
