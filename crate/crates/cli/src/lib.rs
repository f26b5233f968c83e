//! Command-line front end: error sweeps with CSV/SVG output, FWHM table
//! reproduction and the invariant suite.

pub mod args;
pub mod output;
pub mod validate;

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::Parser;
use pulseforge::analysis::{reproduce_table, sweep, Grid, Observable, PulseChoice, SweepConfig, Tolerance};
use pulseforge::{
    Assignment, Case1Kind, Case2Kind, ErrorChannel, IntegratorConfig, OrderPolicy, PhasePolicy, SequenceSpec,
};
use serde_json::json;

use args::{AssignArg, CaseArg, Cli, Command, ErrorArg, ObservableArg, OrderArg, PhaseArg, SweepArgs, TableArgs};
use output::{sweep_csv, sweep_svg, table_csv, with_suffix, write_all, IntegratorEcho, RunManifest};

/// Overrides the integrator's steps per unit time.
pub const STEPS_ENV: &str = "PULSEFORGE_STEPS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags or flag combinations.
    Usage(String),
    /// A tolerance check or computation failed.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn failure(e: impl ToString) -> CliError {
    CliError::Failure(e.to_string())
}

/// Integrator settings, with `PULSEFORGE_STEPS` taking precedence.
pub fn integrator_from_env() -> Result<(IntegratorConfig<f64>, bool), CliError> {
    match std::env::var(STEPS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok((IntegratorConfig::default(), false)),
        Err(e) => Err(usage(format!("{STEPS_ENV}: {e}"))),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(steps) if steps > 0 => {
                Ok((IntegratorConfig::unchecked(steps, IntegratorConfig::<f64>::default().unitarity_tolerance), true))
            }
            _ => Err(usage(format!("{STEPS_ENV} must be a positive integer, got '{v}'"))),
        },
    }
}

fn echo(cfg: &IntegratorConfig<f64>, overridden: bool) -> IntegratorEcho {
    IntegratorEcho {
        steps_per_t: cfg.steps_per_t(),
        unitarity_tolerance: cfg.unitarity_tolerance,
        steps_overridden: overridden,
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Table(a) => cmd_table(&a),
        Command::Validate => cmd_validate(),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            match &e {
                CliError::Usage(m) => eprintln!("usage error: {m}"),
                CliError::Failure(m) => eprintln!("error: {m}"),
            }
            e.exit_code()
        }
    }
}

/// A fully resolved sweep request.
#[derive(Debug, Clone)]
pub struct SweepPlan {
    pub pulse: PulseChoice,
    pub phase: PhasePolicy,
    pub order: OrderPolicy,
    pub channel: ErrorChannel,
    pub grid: Grid,
    pub ns: Vec<usize>,
    pub observable: Option<Observable>,
}

pub fn parse_grid(s: &str) -> Result<Grid, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let [min, max, points] = parts[..] else {
        return Err(usage(format!("--grid expects min:max:points, got '{s}'")));
    };
    let num = |x: &str| f64::from_str(x.trim()).map_err(|_| usage(format!("--grid: '{x}' is not a number")));
    let points =
        points.trim().parse::<usize>().map_err(|_| usage(format!("--grid: '{points}' is not a point count")))?;
    Grid::new(num(min)?, num(max)?, points).map_err(|e| usage(format!("--grid: {e}")))
}

pub fn plan_sweep(a: &SweepArgs) -> Result<SweepPlan, CliError> {
    let pulse = match a.case {
        CaseArg::One => {
            let kind = Case1Kind::from_str(a.pulse.as_deref().unwrap_or("pi")).map_err(|e| usage(e.to_string()))?;
            PulseChoice::Case1(match kind {
                Case1Kind::Sta { .. } => Case1Kind::Sta { n: a.sta_n },
                k => k,
            })
        }
        CaseArg::Two => PulseChoice::Case2(
            Case2Kind::from_str(a.pulse.as_deref().unwrap_or("cds")).map_err(|e| usage(e.to_string()))?,
        ),
    };
    let error = a.error.unwrap_or(match a.case {
        CaseArg::One => ErrorArg::Rabi,
        CaseArg::Two => ErrorArg::Arm,
    });
    let channel = match (a.case, error) {
        (_, ErrorArg::Rabi) => ErrorChannel::RabiGlobal,
        (CaseArg::One, ErrorArg::Detuning) => ErrorChannel::DetuningStatic,
        (CaseArg::Two, ErrorArg::Detuning) => {
            return Err(usage("--error detuning needs --case 1 (case 2 pulses are one-photon resonant)"))
        }
        (CaseArg::One, ErrorArg::Arm) => {
            return Err(usage("--error arm needs --case 2 (case 1 drives both arms with one coupling)"))
        }
        (CaseArg::Two, ErrorArg::Arm) => ErrorChannel::RabiArm(match a.assign {
            AssignArg::FixedP => Assignment::FixedP,
            AssignArg::FixedS => Assignment::FixedS,
            AssignArg::Alt => Assignment::AlternatingStartS,
        }),
    };
    let phase = match a.phase {
        PhaseArg::Same => PhasePolicy::Same,
        PhaseArg::Alt => PhasePolicy::Alternating,
    };
    let order = match (a.order, pulse) {
        (OrderArg::Fixed, _) => OrderPolicy::Fixed,
        (OrderArg::Reverse, PulseChoice::Case1(_)) => return Err(usage("--order reverse needs --case 2")),
        (OrderArg::Reverse, _) => OrderPolicy::AlternateTimeReversal,
        (OrderArg::Auto, PulseChoice::Case2(k)) if k.is_stirap() && phase == PhasePolicy::Alternating => {
            OrderPolicy::AlternateTimeReversal
        }
        (OrderArg::Auto, _) => OrderPolicy::Fixed,
    };
    if a.n.is_empty() || a.n.contains(&0) {
        return Err(usage("--n needs positive pulse counts"));
    }
    let mut ns = a.n.clone();
    ns.dedup();
    let grid = match &a.grid {
        Some(g) => parse_grid(g)?,
        None => Grid::default_for(channel),
    };
    let observable = match a.observable {
        ObservableArg::Auto => None,
        ObservableArg::P1 => Some(Observable::P1),
        ObservableArg::P3 => Some(Observable::P3),
    };
    Ok(SweepPlan { pulse, phase, order, channel, grid, ns, observable })
}

fn axis_label(channel: ErrorChannel) -> &'static str {
    match channel {
        ErrorChannel::RabiGlobal => "lambda",
        ErrorChannel::DetuningStatic => "delta",
        ErrorChannel::RabiArm(_) => "eta",
    }
}

fn observable_name(o: Observable) -> &'static str {
    match o {
        Observable::P1 => "P1",
        Observable::P3 => "P3",
    }
}

pub fn cmd_sweep(a: &SweepArgs) -> Result<i32, CliError> {
    let started = Instant::now();
    let plan = plan_sweep(a)?;
    let (integrator, overridden) = integrator_from_env()?;
    let mut files = Vec::new();
    let mut series = Vec::new();
    let mut footer = Vec::new();
    let mut observables = Vec::new();
    for &n in &plan.ns {
        let spec = SequenceSpec::new(n, plan.phase, plan.order).map_err(|e| usage(e.to_string()))?;
        let observable = plan.observable.unwrap_or(Observable::for_parity(n));
        let cfg =
            SweepConfig { grid: plan.grid, observable, integrator, ..SweepConfig::new(plan.pulse, spec, plan.channel) };
        cfg.validate().map_err(|e| usage(e.to_string()))?;
        let r = sweep(&cfg).map_err(failure)?;
        let csv_path =
            if plan.ns.len() == 1 { with_suffix(&a.out, ".csv") } else { with_suffix(&a.out, &format!(".n{n}.csv")) };
        files.push((csv_path, sweep_csv(&r.values, &r.populations)));
        footer.push(format!("N={n} {} peak={} FWHM={}", observable_name(observable), r.peak, r.fwhm));
        observables.push(observable_name(observable));
        series.push((format!("N = {n}"), r.values, r.populations));
    }
    observables.dedup();
    let y_label = observables.join("/");
    files.push((with_suffix(&a.out, ".svg"), sweep_svg(axis_label(plan.channel), &y_label, &series)));
    let manifest = RunManifest {
        command: "sweep".into(),
        config: json!({
            "pulse": plan.pulse.name(),
            "sta_n": match plan.pulse { PulseChoice::Case1(Case1Kind::Sta { n }) => Some(n), _ => None },
            "n": plan.ns,
            "phase": format!("{:?}", plan.phase),
            "order": format!("{:?}", plan.order),
            "error": format!("{:?}", plan.channel),
            "grid": { "min": plan.grid.min(), "max": plan.grid.max(), "points": plan.grid.points() },
            "observable": y_label,
            "out": a.out.display().to_string(),
        }),
        version: env!("CARGO_PKG_VERSION"),
        integrator: echo(&integrator, overridden),
        wall_time_s: started.elapsed().as_secs_f64(),
    };
    files.push((with_suffix(&a.out, ".manifest.json"), manifest.to_json()));
    write_all(&files).map_err(failure)?;
    for line in footer {
        println!("{line}");
    }
    Ok(EXIT_OK)
}

pub fn cmd_table(a: &TableArgs) -> Result<i32, CliError> {
    let started = Instant::now();
    let override_tol = match a.tolerance {
        Some(t) if t.is_finite() && t > 0.0 => Some(Tolerance::Relative(t)),
        Some(t) => return Err(usage(format!("--tolerance must be positive, got {t}"))),
        None => None,
    };
    let (integrator, overridden) = integrator_from_env()?;
    let mut cells = reproduce_table(a.id, &integrator).map_err(failure)?;
    if let Some(t) = override_tol {
        for c in &mut cells {
            c.tolerance = t;
        }
    }
    let csv_path: PathBuf = a.out_dir.join(format!("table{}.csv", a.id));
    let manifest = RunManifest {
        command: "table".into(),
        config: json!({
            "id": a.id,
            "tolerance": a.tolerance,
            "out_dir": a.out_dir.display().to_string(),
        }),
        version: env!("CARGO_PKG_VERSION"),
        integrator: echo(&integrator, overridden),
        wall_time_s: started.elapsed().as_secs_f64(),
    };
    write_all(&[
        (csv_path.clone(), table_csv(&cells)),
        (a.out_dir.join(format!("table{}.manifest.json", a.id)), manifest.to_json()),
    ])
    .map_err(failure)?;
    let mut failed = 0;
    for c in &cells {
        let verdict = if c.passes() { "ok  " } else { "FAIL" };
        if !c.passes() {
            failed += 1;
        }
        println!(
            "{verdict} {:<12} N={} computed={} reference={} tolerance={}",
            c.scheme, c.n, c.fwhm, c.reference, c.tolerance
        );
    }
    println!(
        "table {}: {}/{} cells within tolerance -> {}",
        a.id,
        cells.len() - failed,
        cells.len(),
        csv_path.display()
    );
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
}

pub fn cmd_validate() -> Result<i32, CliError> {
    let (integrator, _) = integrator_from_env()?;
    let outcomes = validate::run_all(&integrator);
    for o in &outcomes {
        println!("{}", o.line());
    }
    Ok(if outcomes.iter().all(|o| o.passed) { EXIT_OK } else { EXIT_FAILURE })
}
