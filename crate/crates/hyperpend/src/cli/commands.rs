//! Implementations of the CLI commands, decoupled from argument parsing so
//! they can be driven from tests.

use crate::analysis::{classify_linear, level_curve, relative_equilibria, LevelSpec};
use crate::cli::config::ScenarioConfig;
use crate::dynamics::{integrate, Potential};
use crate::phase::PhasePoint;
use crate::reduction::{hilbert_map, image_membership, integrate_reduced, jsq, lift, ReducedPoint};
use crate::sample::VSampler;
use crate::svg::{Curve, Figure, Marker};
use crate::symmetry::RotationClass;
use serde::Serialize;
use std::io::Write as _;
use std::path::Path;

/// Command failure carrying the process exit code.
#[derive(Debug)]
pub struct CommandError {
    pub exit_code: i32,
    pub message: String,
}

impl CommandError {
    pub fn new(exit_code: i32, message: impl Into<String>) -> Self {
        CommandError {
            exit_code,
            message: message.into(),
        }
    }

    pub fn config(message: impl Into<String>) -> Self {
        CommandError::new(2, message)
    }

    pub fn integration(message: impl Into<String>) -> Self {
        CommandError::new(3, message)
    }

    pub fn membership(message: impl Into<String>) -> Self {
        CommandError::new(4, message)
    }

    pub fn io(message: impl Into<String>) -> Self {
        CommandError::new(5, message)
    }
}

fn write_file(path: &str, contents: &str) -> Result<(), CommandError> {
    std::fs::write(Path::new(path), contents)
        .map_err(|e| CommandError::io(format!("cannot write {path}: {e}")))
}

/// Diagnostics summary emitted by `simulate`.
#[derive(Debug, Serialize)]
pub struct SimulateSummary {
    pub schema: u32,
    pub command: String,
    pub class: String,
    pub dt: f64,
    pub steps: usize,
    pub seed: u64,
    pub max_h_drift: f64,
    pub max_j_drift: f64,
    pub max_c1_residual: f64,
    pub max_c2_residual: f64,
    pub within_tolerances: bool,
    pub csv: String,
}

/// Run the full-space simulation; returns the summary and whether drifts
/// stayed within tolerance (the process exit status).
pub fn cmd_simulate(cfg: &ScenarioConfig) -> Result<SimulateSummary, CommandError> {
    cfg.validate().map_err(CommandError::config)?;
    let class = cfg.require_class().map_err(CommandError::config)?;
    let u = cfg.effective_potential();
    let z0 = match cfg.initial.as_ref().and_then(|i| i.full) {
        Some(a) => PhasePoint::from_array(a),
        None => VSampler::new(cfg.seed).phase_point(),
    };
    if !z0.on_variety(1e-6) {
        return Err(CommandError::config(format!(
            "initial condition violates the constraints: c1 = {:.3e}, c2 = {:.3e}",
            z0.casimir_c1(),
            z0.casimir_c2()
        )));
    }
    let traj = integrate(
        class,
        &u,
        z0,
        cfg.dt,
        cfg.steps,
        cfg.tolerances.tol_degenerate,
    )
    .map_err(|e| CommandError::integration(e.to_string()))?;

    let out_path = cfg
        .out
        .clone()
        .unwrap_or_else(|| "trajectory.csv".to_string());
    let mut buf = Vec::new();
    traj.write_csv(&mut buf)
        .map_err(|e| CommandError::io(e.to_string()))?;
    write_file(&out_path, &String::from_utf8(buf).expect("csv is utf-8"))?;

    let tol = &cfg.tolerances;
    let summary = SimulateSummary {
        schema: 1,
        command: "simulate".to_string(),
        class: class.name().to_string(),
        dt: cfg.dt,
        steps: cfg.steps,
        seed: cfg.seed,
        max_h_drift: traj.max_h_drift(),
        max_j_drift: traj.max_j_drift(),
        max_c1_residual: traj.max_c1_residual(),
        max_c2_residual: traj.max_c2_residual(),
        within_tolerances: traj.max_h_drift() <= tol.tol_drift
            && traj.max_j_drift() <= tol.tol_drift
            && traj.max_c1_residual() <= tol.tol_constraint
            && traj.max_c2_residual() <= tol.tol_constraint,
        csv: out_path,
    };
    Ok(summary)
}

/// Diagnostics summary emitted by `reduce`.
#[derive(Debug, Serialize)]
pub struct ReduceSummary {
    pub schema: u32,
    pub command: String,
    pub class: String,
    pub dt: f64,
    pub steps: usize,
    pub max_jsq_drift: f64,
    pub max_h_drift: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutation_error: Option<f64>,
    pub csv: String,
}

/// Integrate the reduced system; with `compare`, also integrate the full
/// system from a lift and report the worst commutation gap.
pub fn cmd_reduce(cfg: &ScenarioConfig) -> Result<ReduceSummary, CommandError> {
    cfg.validate().map_err(CommandError::config)?;
    let class = cfg.require_class().map_err(CommandError::config)?;
    let u = cfg.effective_potential();
    let raw = cfg
        .initial
        .as_ref()
        .and_then(|i| i.reduced.clone())
        .ok_or_else(|| {
            CommandError::config("missing reduced initial condition (initial.reduced or --w0)")
        })?;
    let w0 = match raw.len() {
        3 => {
            let j2 = jsq(class, [raw[0], raw[1], raw[2]]);
            if j2 < -cfg.tolerances.tol_identity {
                return Err(CommandError::membership(format!(
                    "q(w1) w3 - w2^2 = {j2:.3e} is negative"
                )));
            }
            ReducedPoint::new(raw[0], raw[1], raw[2], j2.max(0.0).sqrt())
        }
        4 => ReducedPoint::new(raw[0], raw[1], raw[2], raw[3]),
        k => {
            return Err(CommandError::config(format!(
                "reduced initial condition needs 3 or 4 entries, got {k}"
            )))
        }
    };
    let verdict = image_membership(class, w0, cfg.tolerances.tol_identity);
    if let crate::reduction::Membership::NotMember { reason } = verdict {
        return Err(CommandError::membership(reason));
    }

    let traj = integrate_reduced(class, &u, w0.to_array(), cfg.dt, cfg.steps);
    let out_path = cfg.out.clone().unwrap_or_else(|| "reduced.csv".to_string());
    let mut buf = Vec::new();
    traj.write_csv(&mut buf)
        .map_err(|e| CommandError::io(e.to_string()))?;
    write_file(&out_path, &String::from_utf8(buf).expect("csv is utf-8"))?;

    let commutation_error = if cfg.compare {
        let z0 = lift(class, w0, cfg.tolerances.tol_identity)
            .map_err(|e| CommandError::membership(e.to_string()))?;
        let full = integrate(
            class,
            &u,
            z0,
            cfg.dt,
            cfg.steps,
            cfg.tolerances.tol_degenerate,
        )
        .map_err(|e| CommandError::integration(e.to_string()))?;
        let mut worst: f64 = 0.0;
        for (z, w) in full.z.iter().zip(&traj.w) {
            let img = hilbert_map(class, *z).to_array();
            for k in 0..4 {
                worst = worst.max((img[k] - w[k]).abs());
            }
        }
        Some(worst)
    } else {
        None
    };

    Ok(ReduceSummary {
        schema: 1,
        command: "reduce".to_string(),
        class: class.name().to_string(),
        dt: cfg.dt,
        steps: cfg.steps,
        max_jsq_drift: traj.max_jsq_drift(),
        max_h_drift: traj.max_h_drift(),
        commutation_error,
        csv: out_path,
    })
}

/// Classification report as pretty JSON.
pub fn cmd_classify(
    class: RotationClass,
    c: f64,
    jsq_level: f64,
    energy: f64,
) -> Result<String, CommandError> {
    let report = classify_linear(class, c, LevelSpec::new(jsq_level, energy))
        .map_err(|e| CommandError::config(e.to_string()))?;
    serde_json::to_string_pretty(&report).map_err(|e| CommandError::io(e.to_string()))
}

/// Inputs for the `plot` command.
#[derive(Debug, Clone)]
pub struct PlotRequest {
    pub class: RotationClass,
    pub c: f64,
    pub energy: f64,
    /// One level curve per `j^2` value.
    pub levels: Vec<f64>,
    /// Optional reduced-trajectory CSVs to overlay.
    pub trajectory_csvs: Vec<String>,
    pub out: String,
}

fn regime_color(class: RotationClass, c: f64, energy: f64, level_jsq: f64) -> &'static str {
    // Hyperbolic saddle/center regimes use the conventional palette; other
    // classes default to blue.
    if class != RotationClass::Hyperbolic {
        return "blue";
    }
    let disc = energy * energy - 3.0 * c * c;
    if disc <= 0.0 {
        return "blue";
    }
    let root = disc.sqrt();
    let w1_center = (energy + root) / (3.0 * c);
    let w1_saddle = (energy - root) / (3.0 * c);
    let c1_plus = 2.0 * (energy - c * w1_center) * (w1_center * w1_center + 1.0);
    let c1_minus = 2.0 * (energy - c * w1_saddle) * (w1_saddle * w1_saddle + 1.0);
    let tol = 1e-9;
    if level_jsq < c1_minus - tol {
        "blue"
    } else if level_jsq <= c1_minus + tol {
        "purple"
    } else if level_jsq < c1_plus - tol {
        "red"
    } else if level_jsq <= c1_plus + tol {
        "black"
    } else {
        "green"
    }
}

fn plot_range(class: RotationClass) -> (f64, f64) {
    match class {
        RotationClass::Elliptic => (1.0, 8.0),
        RotationClass::Hyperbolic => (-6.0, 6.0),
        RotationClass::Parabolic => (-8.0, -1e-6),
    }
}

/// Build the figure for a plot request (pure; no I/O).
pub fn build_figure(req: &PlotRequest) -> Result<Figure, CommandError> {
    let u = Potential::linear(req.c);
    let mut fig = Figure {
        title: format!(
            "{} reduced system, c = {}, h = {}",
            req.class.name(),
            req.c,
            req.energy
        ),
        x_label: "w1".to_string(),
        y_label: "w2".to_string(),
        ..Default::default()
    };
    let range = plot_range(req.class);
    for &level_jsq in &req.levels {
        if level_jsq < 0.0 {
            return Err(CommandError::config(format!(
                "jsq must be nonnegative, got {level_jsq}"
            )));
        }
        let level = LevelSpec::new(level_jsq, req.energy);
        let samples = level_curve(req.class, &u, level, range, 600);
        if samples.is_empty() {
            continue;
        }
        let color = regime_color(req.class, req.c, req.energy, level_jsq).to_string();
        // Upper branch left to right, then lower branch back, so closed
        // curves render closed.
        let mut points: Vec<(f64, f64)> = samples.iter().map(|s| (s.w1, s.w2_abs)).collect();
        points.extend(samples.iter().rev().map(|s| (s.w1, -s.w2_abs)));
        fig.curves.push(Curve { points, color });
    }
    // Stationary points on the queried energy level, in red: roots of
    // h(z_rho) - energy over each admissible branch.
    let scan = range.1.abs().max(range.0.abs());
    let eq = relative_equilibria(req.class, &u, scan);
    let on_level = |rho: f64| {
        crate::reduction::reduced_energy(&u, crate::analysis::equilibrium_point(req.class, &u, rho))
            - req.energy
    };
    if eq.apex && (u.eval(1.0) - req.energy).abs() <= 1e-9 {
        fig.markers.push(Marker {
            at: (1.0, 0.0),
            color: "red".to_string(),
        });
    }
    for b in &eq.branches {
        if b.is_point() {
            if on_level(b.rho_lo).abs() <= 1e-9 {
                fig.markers.push(Marker {
                    at: (b.rho_lo, 0.0),
                    color: "red".to_string(),
                });
            }
            continue;
        }
        let lo = if b.rho_lo.abs() < 1e-9 {
            b.rho_lo + 1e-6
        } else {
            b.rho_lo + 1e-9
        };
        for rho in crate::numeric::find_roots(on_level, lo, b.rho_hi, 2048, 1e-12) {
            if rho >= range.0 && rho <= range.1 {
                fig.markers.push(Marker {
                    at: (rho, 0.0),
                    color: "red".to_string(),
                });
            }
        }
    }
    for path in &req.trajectory_csvs {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CommandError::io(format!("cannot read {path}: {e}")))?;
        let mut points = Vec::new();
        for (k, line) in text.lines().enumerate() {
            if k == 0 {
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() >= 3 {
                let w1: f64 = cols[1]
                    .parse()
                    .map_err(|e| CommandError::config(format!("{path}:{}: bad w1: {e}", k + 1)))?;
                let w2: f64 = cols[2]
                    .parse()
                    .map_err(|e| CommandError::config(format!("{path}:{}: bad w2: {e}", k + 1)))?;
                points.push((w1, w2));
            }
        }
        fig.curves.push(Curve {
            points,
            color: "blue".to_string(),
        });
    }
    Ok(fig)
}

pub fn cmd_plot(req: &PlotRequest) -> Result<(), CommandError> {
    let fig = build_figure(req)?;
    write_file(&req.out, &fig.render())
}

/// Serialize a summary to pretty JSON and optionally also write it to a file.
pub fn emit_summary<T: Serialize>(
    summary: &T,
    summary_out: Option<&str>,
) -> Result<String, CommandError> {
    let text =
        serde_json::to_string_pretty(summary).map_err(|e| CommandError::io(e.to_string()))?;
    if let Some(path) = summary_out {
        write_file(path, &format!("{text}\n"))?;
    }
    Ok(text)
}

/// Write a string to stdout, tolerating broken pipes.
pub fn print_stdout(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.write_all(b"\n");
}
