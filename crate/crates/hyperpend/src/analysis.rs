//! Analysis of the reduced systems: relative equilibria, level-set geometry,
//! trajectory classification for linear potentials, reconstruction topology,
//! and level-set smoothness.
//!
//! Every nonstationary reduced solution lies on a joint level set
//! `j^2 = q(w1) w3 - w2^2 = jsq`, `h = w3/2 + U(w1) = energy`, which projects
//! to the plane curve `w2^2 = 2 (energy - U(w1)) q(w1) - jsq` with
//! `w3 = 2 (energy - U(w1))`. The classification logic works on that radicand.

use crate::dynamics::Potential;
use crate::numeric::{find_roots, sigma_min_2x3};
use crate::symmetry::RotationClass;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("potential slope must be nonzero")]
    ZeroSlope,
    #[error("jsq must be nonnegative, got {0}")]
    NegativeJsq(f64),
}

/// Joint level of the two first integrals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelSpec {
    pub jsq: f64,
    pub energy: f64,
}

impl LevelSpec {
    pub fn new(jsq: f64, energy: f64) -> Self {
        LevelSpec { jsq, energy }
    }
}

/// `w3` on the energy level, as a function of `w1`.
pub fn level_w3(u: &Potential, energy: f64, w1: f64) -> f64 {
    2.0 * (energy - u.eval(w1))
}

/// The level-curve radicand `w2^2 = 2 (energy - U(w1)) q(w1) - jsq`.
pub fn level_radicand(class: RotationClass, u: &Potential, level: LevelSpec, w1: f64) -> f64 {
    level_w3(u, level.energy, w1) * class.q(w1) - level.jsq
}

/// Derivative of the radicand; vanishes together with the radicand exactly at
/// reduced equilibria on the level.
fn level_radicand_prime(class: RotationClass, u: &Potential, level: LevelSpec, w1: f64) -> f64 {
    let du = u.eval_derivative(w1);
    -2.0 * du * class.q(w1) + level_w3(u, level.energy, w1) * class.q_prime(w1)
}

/// Realizable `w1` range of the image, intersected with a scan radius.
fn class_domain(class: RotationClass, radius: f64) -> (f64, f64) {
    match class {
        RotationClass::Elliptic => (1.0, radius),
        RotationClass::Hyperbolic => (-radius, radius),
        RotationClass::Parabolic => (-radius, 0.0),
    }
}

/// Reduced equilibrium `z_rho = (rho, 0, q(rho) U'(rho) / rho)`.
pub fn equilibrium_point(class: RotationClass, u: &Potential, rho: f64) -> [f64; 3] {
    [rho, 0.0, class.q(rho) * u.eval_derivative(rho) / rho]
}

/// Admissibility of `rho` as a relative equilibrium: the equilibrium height
/// must produce a point in the image.
///
/// Elliptic: `rho > 1` and `U'(rho) >= 0`. Hyperbolic: `rho U'(rho) >= 0`,
/// `rho != 0`. Parabolic: `rho < 0` and `rho U'(rho) >= 0`.
fn admissibility(class: RotationClass, u: &Potential, rho: f64) -> f64 {
    match class {
        RotationClass::Elliptic => u.eval_derivative(rho),
        RotationClass::Hyperbolic => rho * u.eval_derivative(rho),
        RotationClass::Parabolic => -u.eval_derivative(rho),
    }
}

/// Maximal interval (possibly a single point) of admissible `rho`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EquilibriumBranch {
    pub rho_lo: f64,
    pub rho_hi: f64,
    /// The branch continues beyond the scan radius.
    pub clipped: bool,
}

impl EquilibriumBranch {
    pub fn is_point(&self) -> bool {
        self.rho_lo == self.rho_hi
    }
}

/// Relative equilibria of the reduced system for a polynomial or rational
/// potential, found by scanning the admissibility condition.
#[derive(Clone, Debug, Serialize)]
pub struct RelativeEquilibria {
    pub class: RotationClass,
    /// Elliptic only: the apex rest state `(1, 0, 0)`, always stationary.
    pub apex: bool,
    /// Hyperbolic only: the ray `(0, 0, sigma)`, present when `U'(0) = 0`.
    pub sigma_ray: bool,
    pub branches: Vec<EquilibriumBranch>,
}

impl RelativeEquilibria {
    pub fn is_empty(&self) -> bool {
        !self.apex && !self.sigma_ray && self.branches.is_empty()
    }

    /// Representative equilibrium points, up to `per_branch` per branch.
    pub fn sample_points(&self, u: &Potential, per_branch: usize) -> Vec<[f64; 3]> {
        let mut out = Vec::new();
        if self.apex {
            out.push([1.0, 0.0, 0.0]);
        }
        for b in &self.branches {
            if b.is_point() {
                out.push(equilibrium_point(self.class, u, b.rho_lo));
                continue;
            }
            let n = per_branch.max(1);
            for k in 0..n {
                // Interior samples; the open elliptic endpoint rho = 1 and the
                // excluded hyperbolic rho = 0 are avoided by construction.
                let t = (k as f64 + 0.5) / n as f64;
                let rho = b.rho_lo + t * (b.rho_hi - b.rho_lo);
                if rho.abs() < 1e-9 {
                    continue;
                }
                out.push(equilibrium_point(self.class, u, rho));
            }
        }
        out
    }
}

pub fn relative_equilibria(
    class: RotationClass,
    u: &Potential,
    scan_radius: f64,
) -> RelativeEquilibria {
    let (lo, hi) = class_domain(class, scan_radius);
    let g = |rho: f64| admissibility(class, u, rho);

    let mut cuts = find_roots(g, lo, hi, 4096, 1e-12);
    cuts.insert(0, lo);
    cuts.push(hi);
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-11);

    let mut branches: Vec<EquilibriumBranch> = Vec::new();
    for pair in cuts.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let mid = 0.5 * (a + b);
        if g(mid) > 0.0 && mid.abs() > 1e-12 {
            // Merge with the previous branch when they share an endpoint at
            // which the condition merely touches zero.
            if let Some(last) = branches.last_mut() {
                if (last.rho_hi - a).abs() < 1e-11 && !last.is_point() {
                    last.rho_hi = b;
                    last.clipped = (b - hi).abs() < 1e-11;
                    continue;
                }
            }
            branches.push(EquilibriumBranch {
                rho_lo: a,
                rho_hi: b,
                clipped: (b - hi).abs() < 1e-11,
            });
        }
    }
    // Isolated admissible points: roots of g with g < 0 on both sides are
    // still equilibria (the fiber there is stationary).
    for &r in &cuts[1..cuts.len().saturating_sub(1)] {
        let covered = branches
            .iter()
            .any(|b| r >= b.rho_lo - 1e-11 && r <= b.rho_hi + 1e-11);
        if !covered && r.abs() > 1e-12 && g(r).abs() < 1e-9 {
            let excluded = class == RotationClass::Elliptic && r <= 1.0 + 1e-12;
            if !excluded {
                branches.push(EquilibriumBranch {
                    rho_lo: r,
                    rho_hi: r,
                    clipped: false,
                });
            }
        }
    }
    branches.sort_by(|x, y| x.rho_lo.partial_cmp(&y.rho_lo).unwrap());

    RelativeEquilibria {
        class,
        apex: class == RotationClass::Elliptic,
        sigma_ray: class == RotationClass::Hyperbolic && u.eval_derivative(0.0).abs() <= 1e-12,
        branches,
    }
}

/// A sample of the projected level curve.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LevelCurveSample {
    pub w1: f64,
    /// Magnitude of `w2`; the curve contains both signs.
    pub w2_abs: f64,
    pub w3: f64,
    /// The radicand vanishes here: a curve endpoint or axis crossing.
    pub at_boundary: bool,
}

/// Sample the level curve over the given `w1` range. Both square-root
/// branches are represented through `w2_abs`; endpoints where the radicand
/// vanishes are refined and included. An empty result is a valid outcome.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // negated so NaN fails too
pub fn level_curve(
    class: RotationClass,
    u: &Potential,
    level: LevelSpec,
    w1_range: (f64, f64),
    n: usize,
) -> Vec<LevelCurveSample> {
    assert!(n >= 2, "need at least two samples");
    let (dlo, dhi) = class_domain(class, f64::INFINITY);
    let lo = w1_range.0.max(dlo);
    let hi = w1_range.1.min(dhi);
    if !(hi > lo) {
        return Vec::new();
    }
    let rad = |w1: f64| level_radicand(class, u, level, w1);
    let mut samples: Vec<LevelCurveSample> = Vec::new();
    for k in 0..n {
        let w1 = lo + (hi - lo) * k as f64 / (n - 1) as f64;
        let r = rad(w1);
        if r >= 0.0 {
            samples.push(LevelCurveSample {
                w1,
                w2_abs: r.sqrt(),
                w3: level_w3(u, level.energy, w1),
                at_boundary: false,
            });
        }
    }
    for root in find_roots(rad, lo, hi, (4 * n).max(256), 1e-12) {
        samples.push(LevelCurveSample {
            w1: root,
            w2_abs: 0.0,
            w3: level_w3(u, level.energy, root),
            at_boundary: true,
        });
    }
    samples.sort_by(|a, b| a.w1.partial_cmp(&b.w1).unwrap());
    samples
}

/// Connected component of the level set, described by its `w1` extent.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LevelComponent {
    pub w1_lo: f64,
    pub w1_hi: f64,
    /// Extends beyond the scan radius on either side.
    pub unbounded: bool,
    /// Isolated point of the level set (a stationary point).
    pub single_point: bool,
    /// A reduced equilibrium lies on this component.
    pub contains_equilibrium: bool,
}

impl LevelComponent {
    /// A bounded component free of equilibria is a closed loop of the
    /// reduced flow.
    pub fn closed_loop(&self) -> bool {
        !self.unbounded && !self.single_point && !self.contains_equilibrium
    }
}

/// Decompose the level set into connected components by scanning the
/// radicand sign over the class domain.
pub fn level_components(
    class: RotationClass,
    u: &Potential,
    level: LevelSpec,
    scan_radius: f64,
    tol_case: f64,
) -> Vec<LevelComponent> {
    let (lo, hi) = class_domain(class, scan_radius);
    let rad = |w1: f64| level_radicand(class, u, level, w1);
    let is_equilibrium =
        |w1: f64| level_radicand_prime(class, u, level, w1).abs() <= tol_case.max(1e-9) * scale(w1);

    fn scale(w1: f64) -> f64 {
        1.0 + w1.abs().powi(3)
    }

    let mut cuts = find_roots(rad, lo, hi, 8192, 1e-12);
    let roots = cuts.clone();
    cuts.insert(0, lo);
    cuts.push(hi);

    let mut components: Vec<LevelComponent> = Vec::new();
    for pair in cuts.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let mid = 0.5 * (a + b);
        if rad(mid) <= 0.0 {
            continue;
        }
        let open_lo = (a - lo).abs() < 1e-11 && rad(lo) > 0.0;
        let open_hi = (b - hi).abs() < 1e-11 && rad(hi) > 0.0;
        let contains_eq = (!open_lo && is_equilibrium(a)) || (!open_hi && is_equilibrium(b));
        if let Some(last) = components.last_mut() {
            // Components joined across an equilibrium root still form one
            // level-set component (the curve crosses itself there).
            if (last.w1_hi - a).abs() < 1e-11 && is_equilibrium(a) {
                last.w1_hi = b;
                last.unbounded = last.unbounded || open_hi;
                last.contains_equilibrium = true;
                continue;
            }
        }
        components.push(LevelComponent {
            w1_lo: a,
            w1_hi: b,
            unbounded: open_lo || open_hi,
            single_point: false,
            contains_equilibrium: contains_eq,
        });
    }
    // Isolated roots with negative radicand on both sides: single points.
    for r in roots {
        let inside = components
            .iter()
            .any(|c| r >= c.w1_lo - 1e-11 && r <= c.w1_hi + 1e-11);
        if !inside {
            components.push(LevelComponent {
                w1_lo: r,
                w1_hi: r,
                unbounded: false,
                single_point: true,
                contains_equilibrium: is_equilibrium(r),
            });
        }
    }
    // Tangency roots carry no sign change, so the scan above misses them:
    // locate radicand extrema and test whether the radicand vanishes there.
    for e in find_roots(
        |w1| level_radicand_prime(class, u, level, w1),
        lo,
        hi,
        8192,
        1e-12,
    ) {
        if rad(e).abs() > tol_case.max(1e-9) * scale(e) {
            continue;
        }
        match components
            .iter_mut()
            .find(|c| e >= c.w1_lo - 1e-9 && e <= c.w1_hi + 1e-9)
        {
            Some(c) => c.contains_equilibrium = true,
            None => components.push(LevelComponent {
                w1_lo: e,
                w1_hi: e,
                unbounded: false,
                single_point: true,
                contains_equilibrium: true,
            }),
        }
    }
    components.sort_by(|x, y| x.w1_lo.partial_cmp(&y.w1_lo).unwrap());
    components
}

/// Stability of a reduced equilibrium, from the linearization of the planar
/// system restricted to the energy level: eigenvalues are `+-sqrt(g')` with
/// `g(w1) = 2 w1 (energy - U(w1)) - q(w1) U'(w1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Center,
    Saddle,
    Degenerate,
}

/// Eigenvalue pair of the restricted linearization at `(w1, 0)` on the
/// energy level: `(re, im)` with the pair being `+-(re + i im)`.
pub fn linearization_eigenvalues(
    class: RotationClass,
    u: &Potential,
    energy: f64,
    w1: f64,
) -> (f64, f64) {
    let lambda_sq = restricted_gprime(class, u, energy, w1);
    if lambda_sq >= 0.0 {
        (lambda_sq.sqrt(), 0.0)
    } else {
        (0.0, (-lambda_sq).sqrt())
    }
}

fn restricted_gprime(class: RotationClass, u: &Potential, energy: f64, w1: f64) -> f64 {
    // g'(w1) with g as above; derived termwise so it works for any
    // polynomial or rational potential.
    let h = 1e-6 * (1.0 + w1.abs());
    let g = |w: f64| 2.0 * w * (energy - u.eval(w)) - class.q(w) * u.eval_derivative(w);
    (g(w1 + h) - g(w1 - h)) / (2.0 * h)
}

pub fn stability_at(
    class: RotationClass,
    u: &Potential,
    energy: f64,
    w1: f64,
    tol: f64,
) -> Stability {
    let lambda_sq = restricted_gprime(class, u, energy, w1);
    if lambda_sq > tol {
        Stability::Saddle
    } else if lambda_sq < -tol {
        Stability::Center
    } else {
        Stability::Degenerate
    }
}

/// One classified component for the report.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub w1_min: f64,
    pub w1_max: f64,
    pub bounded: bool,
    pub closed_loop: bool,
    pub single_point: bool,
    pub contains_equilibrium: bool,
    pub description: String,
}

/// One equilibrium entry for the report.
#[derive(Clone, Debug, Serialize)]
pub struct EquilibriumReport {
    pub w1: f64,
    pub w3: f64,
    pub jsq_level: f64,
    pub energy_level: f64,
    pub on_queried_level: bool,
    pub stability: Stability,
}

/// Full classification of a linear-potential level set.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub class: String,
    pub c: f64,
    pub jsq: f64,
    pub energy: f64,
    pub case: String,
    pub regime: String,
    /// Critical `w1` values ordered `[center, saddle]` where applicable.
    pub critical_w1: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c1_plus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c1_minus: Option<f64>,
    /// Slopes of degenerate branches at the origin (parabolic cases).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch_slopes: Option<[f64; 2]>,
    pub components: Vec<ComponentReport>,
    pub equilibria: Vec<EquilibriumReport>,
}

const CLASSIFY_SCAN_RADIUS: f64 = 64.0;

/// `j^2` of the equilibrium at `rho` on its own level (linear potential).
fn equilibrium_jsq(class: RotationClass, c: f64, rho: f64) -> f64 {
    // w3 = c q(rho)/rho and jsq = q(rho) w3.
    let q = class.q(rho);
    q * q * c / rho
}

fn equilibrium_energy(class: RotationClass, c: f64, rho: f64) -> f64 {
    0.5 * class.q(rho) * c / rho + c * rho
}

/// Classify the level set of a linear potential `U = c s`, reproducing the
/// case tables of the three reduced systems.
pub fn classify_linear(
    class: RotationClass,
    c: f64,
    level: LevelSpec,
) -> Result<ClassificationReport, AnalysisError> {
    if c == 0.0 {
        return Err(AnalysisError::ZeroSlope);
    }
    if level.jsq < 0.0 {
        return Err(AnalysisError::NegativeJsq(level.jsq));
    }
    let u = Potential::linear(c);
    let tol = 1e-9;

    let mut report = ClassificationReport {
        class: class.name().to_string(),
        c,
        jsq: level.jsq,
        energy: level.energy,
        case: String::new(),
        regime: String::new(),
        critical_w1: vec![],
        c1_plus: None,
        c1_minus: None,
        branch_slopes: None,
        components: vec![],
        equilibria: vec![],
    };

    match class {
        RotationClass::Elliptic => {
            // Bounded for c > 0 (radicand leading term -2c w1^3), unbounded
            // for c < 0; the apex is always an equilibrium.
            report.case = if c > 0.0 { "bounded" } else { "unbounded" }.to_string();
            report.regime = report.case.clone();
        }
        RotationClass::Hyperbolic => {
            let disc = level.energy * level.energy - 3.0 * c * c;
            if disc < -tol {
                report.case = "1".to_string();
                report.regime = "unbounded-component".to_string();
            } else if disc <= tol {
                report.case = "2".to_string();
                let w1_star = level.energy / (3.0 * c);
                report.critical_w1 = vec![w1_star];
                let c1_deg = 2.0 * (level.energy - c * w1_star) * (w1_star * w1_star + 1.0);
                report.c1_plus = Some(c1_deg);
                report.regime = if (level.jsq - c1_deg).abs() <= tol {
                    "degenerate-branches".to_string()
                } else {
                    "unbounded-component".to_string()
                };
            } else {
                report.case = "3".to_string();
                let root = disc.sqrt();
                let w1_center = (level.energy + root) / (3.0 * c);
                let w1_saddle = (level.energy - root) / (3.0 * c);
                report.critical_w1 = vec![w1_center, w1_saddle];
                let c1_plus = 2.0 * (level.energy - c * w1_center) * (w1_center * w1_center + 1.0);
                let c1_minus = 2.0 * (level.energy - c * w1_saddle) * (w1_saddle * w1_saddle + 1.0);
                report.c1_plus = Some(c1_plus);
                report.c1_minus = Some(c1_minus);
                report.regime = if level.jsq < c1_minus - tol {
                    "below-saddle-level"
                } else if level.jsq <= c1_minus + tol {
                    "homoclinic"
                } else if level.jsq < c1_plus - tol {
                    "two-components"
                } else if level.jsq <= c1_plus + tol {
                    "at-center-level"
                } else {
                    "above-center-level"
                }
                .to_string();
                for (w1, which) in [
                    (w1_center, Stability::Center),
                    (w1_saddle, Stability::Saddle),
                ] {
                    let e_level = equilibrium_energy(class, c, w1);
                    let j_level = equilibrium_jsq(class, c, w1);
                    let stab = stability_at(class, &u, e_level, w1, 1e-12);
                    debug_assert_eq!(stab, which);
                    report.equilibria.push(EquilibriumReport {
                        w1,
                        w3: class.q(w1) * c / w1,
                        jsq_level: j_level,
                        energy_level: e_level,
                        on_queried_level: (j_level - level.jsq).abs() <= tol
                            && (e_level - level.energy).abs() <= tol,
                        stability: stab,
                    });
                }
            }
        }
        RotationClass::Parabolic => {
            if c > 0.0 {
                report.case = "1".to_string();
                if level.jsq > tol {
                    report.regime = "unbounded-component".to_string();
                } else if level.energy > tol {
                    report.regime = "two-branches".to_string();
                    let slope = (2.0 * level.energy).sqrt();
                    report.branch_slopes = Some([slope, -slope]);
                } else if level.energy < -tol {
                    report.regime = "unbounded-component".to_string();
                } else {
                    report.regime = "two-branches".to_string();
                    report.branch_slopes = Some([0.0, 0.0]);
                }
            } else {
                report.case = "2".to_string();
                if level.energy <= tol {
                    report.regime = "empty".to_string();
                } else if level.jsq <= tol {
                    report.regime = "loop".to_string();
                    let slope = (2.0 * level.energy).sqrt();
                    report.branch_slopes = Some([slope, -slope]);
                } else {
                    // The critical level through the equilibrium at
                    // rho = 2 energy / (3c).
                    let rho_star = 2.0 * level.energy / (3.0 * c);
                    let c1_star = 8.0 * level.energy.powi(3) / (27.0 * c * c);
                    report.critical_w1 = vec![rho_star];
                    report.c1_plus = Some(c1_star);
                    report.regime = if level.jsq < c1_star - tol {
                        "bounded-component"
                    } else if level.jsq <= c1_star + tol {
                        "single-point"
                    } else {
                        "empty"
                    }
                    .to_string();
                    let e_level = equilibrium_energy(class, c, rho_star);
                    report.equilibria.push(EquilibriumReport {
                        w1: rho_star,
                        w3: c * rho_star,
                        jsq_level: c1_star,
                        energy_level: e_level,
                        on_queried_level: (c1_star - level.jsq).abs() <= tol,
                        stability: stability_at(class, &u, level.energy, rho_star, 1e-12),
                    });
                }
            }
        }
    }

    for comp in level_components(class, &u, level, CLASSIFY_SCAN_RADIUS, tol) {
        let bounded = !comp.unbounded;
        let description = if comp.single_point {
            "stationary point".to_string()
        } else if comp.closed_loop() {
            "closed loop".to_string()
        } else if comp.contains_equilibrium {
            "component through an equilibrium".to_string()
        } else if bounded {
            "bounded arc".to_string()
        } else {
            "unbounded component".to_string()
        };
        report.components.push(ComponentReport {
            w1_min: comp.w1_lo,
            w1_max: comp.w1_hi,
            bounded,
            closed_loop: comp.closed_loop(),
            single_point: comp.single_point,
            contains_equilibrium: comp.contains_equilibrium,
            description,
        });
    }
    Ok(report)
}

/// Topology of the reconstructed (full phase-space) invariant set over a
/// reduced solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TopologyLabel {
    Torus,
    Cylinder,
    PinchedCylinder,
    Plane,
    UnboundedInvariantSet,
}

/// Qualitative summary of a reduced trajectory for reconstruction.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TrajectorySummary {
    pub bounded: bool,
    pub stationary: bool,
}

pub fn reconstruction_topology(
    class: RotationClass,
    level: LevelSpec,
    summary: TrajectorySummary,
) -> TopologyLabel {
    match class {
        RotationClass::Elliptic => {
            if level.jsq > 1e-12 {
                if summary.bounded {
                    TopologyLabel::Torus
                } else {
                    TopologyLabel::Cylinder
                }
            } else {
                TopologyLabel::PinchedCylinder
            }
        }
        RotationClass::Hyperbolic => {
            if summary.bounded {
                TopologyLabel::Cylinder
            } else {
                TopologyLabel::Plane
            }
        }
        RotationClass::Parabolic => TopologyLabel::UnboundedInvariantSet,
    }
}

/// Smoothness verdict for a point of a level set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Smoothness {
    Smooth,
    Critical,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SmoothnessReport {
    pub verdict: Smoothness,
    pub sigma_min: f64,
    /// How far the queried point is from the stated level.
    pub level_residual: f64,
}

/// Rank test of the Jacobian of `(j^2, h)` at a point of the level set: the
/// level set is smooth at `w` unless the smallest singular value drops below
/// `tol_rank`, which happens exactly at reduced equilibria.
pub fn level_set_smoothness(
    class: RotationClass,
    u: &Potential,
    level: LevelSpec,
    w: [f64; 3],
    tol_rank: f64,
) -> SmoothnessReport {
    let jac = [
        [class.q_prime(w[0]) * w[2], -2.0 * w[1], class.q(w[0])],
        [u.eval_derivative(w[0]), 0.0, 0.5],
    ];
    let sigma_min = sigma_min_2x3(&jac);
    let level_residual = (crate::reduction::jsq(class, w) - level.jsq)
        .abs()
        .max((crate::reduction::reduced_energy(u, w) - level.energy).abs());
    SmoothnessReport {
        verdict: if sigma_min < tol_rank {
            Smoothness::Critical
        } else {
            Smoothness::Smooth
        },
        sigma_min,
        level_residual,
    }
}
