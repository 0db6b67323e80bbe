//! `hyperpend`: simulate, reduce, classify, verify, and plot the constrained
//! dynamics of a particle on the hyperbolic plane.
//!
//! Exit codes: 0 success, 1 verification or tolerance failure, 2 bad
//! configuration or parameters, 3 integration failure, 4 membership
//! violation, 5 I/O error.

use hyperpend::cli::{
    cmd_classify, cmd_plot, cmd_reduce, cmd_simulate, emit_summary, print_stdout, run_verify,
    CommandError, InitialCondition, PlotRequest, ScenarioConfig, VerifyOptions,
};
use hyperpend::symmetry::RotationClass;
use std::collections::BTreeMap;
use std::process::ExitCode;

const USAGE: &str = "\
hyperpend <command> [flags]

commands:
  simulate   integrate the constrained system; writes a trajectory CSV and a
             JSON diagnostics summary (exit 0 iff drifts within tolerances)
  reduce     integrate the reduced system from a reduced initial condition;
             --compare also integrates a lift of it and reports the worst
             commutation error
  classify   print the linear-potential level-set classification as JSON
  verify     run every numeric certificate; one PASS/FAIL line per suite
  plot       write an SVG phase portrait of level curves and equilibria

flags (CLI overrides --config):
  --config PATH      scenario JSON (schema 1)
  --class NAME       elliptic | hyperbolic | parabolic
  --c VALUE          linear potential slope U(s) = c s
  --potential LIST   polynomial coefficients, ascending: \"0,1\" is 1*s
  --init LIST        full initial condition x1,x2,x3,y1,y2,y3
  --w0 LIST          reduced initial condition w1,w2,w3[,w4]
  --jsq VALUE        momentum level j^2 (classify/plot)
  --energy VALUE     energy level h (classify/plot)
  --levels LIST      comma-separated j^2 values (plot)
  --traj PATHS       reduced CSVs to overlay (plot)
  --dt VALUE         time step (default 1e-3)
  --steps N          step count (default 10000)
  --seed N           RNG seed (default 42)
  --counts N         verification sample count (default 400)
  --out PATH         output file (CSV or SVG)
  --summary-out PATH also write the JSON summary to a file
  --compare          reduce: run the commutation comparison
  --self-test-corrupt verify: plant a sign error and require detection

environment:
  HYPERPEND_TOL_OVERRIDE  JSON fragment merged into the tolerances,
                          e.g. '{\"tol_drift\": 1e-6}'
";

struct Args {
    flags: BTreeMap<String, String>,
    switches: Vec<String>,
}

const SWITCHES: [&str; 3] = ["compare", "self-test-corrupt", "help"];

fn parse_args(raw: &[String]) -> Result<Args, String> {
    let mut flags = BTreeMap::new();
    let mut switches = Vec::new();
    let mut i = 0;
    while i < raw.len() {
        let token = &raw[i];
        let name = token
            .strip_prefix("--")
            .ok_or_else(|| format!("unexpected argument {token:?}"))?;
        if SWITCHES.contains(&name) {
            switches.push(name.to_string());
            i += 1;
            continue;
        }
        let value = raw
            .get(i + 1)
            .ok_or_else(|| format!("flag --{name} needs a value"))?;
        flags.insert(name.to_string(), value.clone());
        i += 2;
    }
    Ok(Args { flags, switches })
}

impl Args {
    fn get(&self, name: &str) -> Option<&str> {
        self.flags.get(name).map(|s| s.as_str())
    }

    fn has(&self, name: &str) -> bool {
        self.switches.iter().any(|s| s == name)
    }

    fn parse_f64(&self, name: &str) -> Result<Option<f64>, String> {
        match self.get(name) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|e| format!("--{name}: {e}")),
        }
    }

    fn parse_usize(&self, name: &str) -> Result<Option<usize>, String> {
        match self.get(name) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|e| format!("--{name}: {e}")),
        }
    }

    fn parse_list(&self, name: &str) -> Result<Option<Vec<f64>>, String> {
        match self.get(name) {
            None => Ok(None),
            Some(v) => v
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<Vec<f64>, _>>()
                .map(Some)
                .map_err(|e| format!("--{name}: {e}")),
        }
    }

    fn unknown_flags(&self, allowed: &[&str]) -> Vec<String> {
        self.flags
            .keys()
            .filter(|k| !allowed.contains(&k.as_str()))
            .cloned()
            .collect()
    }
}

/// Load the config file (if any) and apply command-line overrides.
fn build_config(args: &Args) -> Result<ScenarioConfig, String> {
    let mut cfg = match args.get("config") {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {path}: {e}"))?;
            ScenarioConfig::from_json(&text).map_err(|e| format!("config {path}: {e}"))?
        }
        None => ScenarioConfig::default(),
    };
    if let Some(name) = args.get("class") {
        cfg.class =
            Some(RotationClass::parse(name).ok_or_else(|| format!("unknown class {name:?}"))?);
    }
    if let Some(c) = args.parse_f64("c")? {
        cfg.c = Some(c);
    }
    if let Some(coeffs) = args.parse_list("potential")? {
        cfg.potential = Some(hyperpend::cli::PotentialSpec::Coefficients(coeffs));
        if args.get("c").is_none() {
            // An explicit potential list overrides any linear shorthand
            // carried over from the config file.
            cfg.c = None;
        }
    }
    if let Some(init) = args.parse_list("init")? {
        if init.len() != 6 {
            return Err(format!("--init needs 6 entries, got {}", init.len()));
        }
        let mut full = [0.0; 6];
        full.copy_from_slice(&init);
        let reduced = cfg.initial.take().and_then(|i| i.reduced);
        cfg.initial = Some(InitialCondition {
            full: Some(full),
            reduced,
        });
    }
    if let Some(w0) = args.parse_list("w0")? {
        let full = cfg.initial.take().and_then(|i| i.full);
        cfg.initial = Some(InitialCondition {
            full,
            reduced: Some(w0),
        });
    }
    if let Some(v) = args.parse_f64("jsq")? {
        cfg.jsq = Some(v);
    }
    if let Some(v) = args.parse_f64("energy")? {
        cfg.energy = Some(v);
    }
    if let Some(v) = args.parse_f64("dt")? {
        cfg.dt = v;
    }
    if let Some(v) = args.parse_usize("steps")? {
        cfg.steps = v;
    }
    if let Some(v) = args.parse_usize("seed")? {
        cfg.seed = v as u64;
    }
    if let Some(v) = args.get("out") {
        cfg.out = Some(v.to_string());
    }
    if let Some(v) = args.get("summary-out") {
        cfg.summary_out = Some(v.to_string());
    }
    if args.has("compare") {
        cfg.compare = true;
    }
    cfg.tolerances = cfg
        .tolerances
        .with_env_override()
        .map_err(|e| format!("HYPERPEND_TOL_OVERRIDE: {e}"))?;
    Ok(cfg)
}

fn fail(err: CommandError) -> ExitCode {
    eprintln!("error: {}", err.message);
    ExitCode::from(err.exit_code as u8)
}

fn run() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let Some(command) = argv.first().map(|s| s.as_str()) else {
        eprint!("{USAGE}");
        return ExitCode::from(2);
    };
    if command == "help" || command == "--help" || command == "-h" {
        print_stdout(USAGE);
        return ExitCode::SUCCESS;
    }
    let args = match parse_args(&argv[1..]) {
        Ok(a) => a,
        Err(e) => return fail(CommandError::config(e)),
    };
    if args.has("help") {
        print_stdout(USAGE);
        return ExitCode::SUCCESS;
    }

    let common = [
        "config",
        "class",
        "c",
        "potential",
        "init",
        "w0",
        "jsq",
        "energy",
        "levels",
        "traj",
        "dt",
        "steps",
        "seed",
        "counts",
        "out",
        "summary-out",
    ];
    let unknown = args.unknown_flags(&common);
    if !unknown.is_empty() {
        return fail(CommandError::config(format!(
            "unknown flags: {}",
            unknown.join(", ")
        )));
    }

    match command {
        "simulate" => {
            let cfg = match build_config(&args) {
                Ok(c) => c,
                Err(e) => return fail(CommandError::config(e)),
            };
            match cmd_simulate(&cfg) {
                Ok(summary) => {
                    match emit_summary(&summary, cfg.summary_out.as_deref()) {
                        Ok(text) => print_stdout(&text),
                        Err(e) => return fail(e),
                    }
                    if summary.within_tolerances {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => fail(e),
            }
        }
        "reduce" => {
            let cfg = match build_config(&args) {
                Ok(c) => c,
                Err(e) => return fail(CommandError::config(e)),
            };
            match cmd_reduce(&cfg) {
                Ok(summary) => match emit_summary(&summary, cfg.summary_out.as_deref()) {
                    Ok(text) => {
                        print_stdout(&text);
                        ExitCode::SUCCESS
                    }
                    Err(e) => fail(e),
                },
                Err(e) => fail(e),
            }
        }
        "classify" => {
            let cfg = match build_config(&args) {
                Ok(c) => c,
                Err(e) => return fail(CommandError::config(e)),
            };
            let class = match cfg.require_class() {
                Ok(c) => c,
                Err(e) => return fail(CommandError::config(e)),
            };
            let Some(c) = cfg.c else {
                return fail(CommandError::config("classify needs --c"));
            };
            let jsq = cfg.jsq.unwrap_or(0.0);
            let energy = cfg.energy.unwrap_or(0.0);
            if jsq < 0.0 {
                return fail(CommandError::config(format!(
                    "jsq must be nonnegative, got {jsq}"
                )));
            }
            match cmd_classify(class, c, jsq, energy) {
                Ok(json) => {
                    print_stdout(&json);
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        "verify" => {
            let cfg = match build_config(&args) {
                Ok(c) => c,
                Err(e) => return fail(CommandError::config(e)),
            };
            let counts = match args.parse_usize("counts") {
                Ok(v) => v.unwrap_or(400),
                Err(e) => return fail(CommandError::config(e)),
            };
            let opts = VerifyOptions {
                seed: cfg.seed,
                counts,
                self_test_corrupt: args.has("self-test-corrupt"),
            };
            let outcome = run_verify(&opts, &cfg.tolerances);
            for warning in &outcome.warnings {
                eprintln!("warning: {warning}");
            }
            for report in &outcome.reports {
                print_stdout(&report.to_string());
            }
            let failed = outcome.reports.iter().filter(|r| !r.pass).count();
            print_stdout(&format!(
                "verify: {} suites, {} failed (seed {}, counts {})",
                outcome.reports.len(),
                failed,
                opts.seed,
                opts.counts
            ));
            if outcome.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        "plot" => {
            let cfg = match build_config(&args) {
                Ok(c) => c,
                Err(e) => return fail(CommandError::config(e)),
            };
            let class = match cfg.require_class() {
                Ok(c) => c,
                Err(e) => return fail(CommandError::config(e)),
            };
            let levels = match args.parse_list("levels") {
                Ok(v) => v.unwrap_or_else(|| cfg.jsq.map(|j| vec![j]).unwrap_or_default()),
                Err(e) => return fail(CommandError::config(e)),
            };
            let trajectory_csvs: Vec<String> = args
                .get("traj")
                .map(|t| t.split(',').map(|s| s.trim().to_string()).collect())
                .unwrap_or_default();
            let req = PlotRequest {
                class,
                c: cfg.c.unwrap_or(1.0),
                energy: cfg.energy.unwrap_or(0.0),
                levels,
                trajectory_csvs,
                out: cfg
                    .out
                    .clone()
                    .unwrap_or_else(|| "portrait.svg".to_string()),
            };
            match cmd_plot(&req) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(e),
            }
        }
        other => {
            eprintln!("error: unknown command {other:?}\n");
            eprint!("{USAGE}");
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    run()
}
