use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qapbound::augment::augment_instance;
use qapbound::batch::{run_manifest_file, StdClock};
use qapbound::error::InputError;
use qapbound::input::{load_instance, Format, LoadOptions};
use qapbound::lapfile::{parse_lap_file, LapFile};
use qapbound::report::SolveRecord;
use qapbound_core::oracle::{
    brute_force_optimum, check_dual_relative_interior_ilap, check_dual_relative_interior_lap, check_guard,
};
use qapbound_core::{
    run_with_clock, shift_to_relative_interior, solve_ilap, solve_lap, IlapMode, IqapInstance, Method, SolverConfig,
    Tolerance, DUMMY,
};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "qapbound", version, about = "Dual lower bounds for incomplete quadratic assignment problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Bca,
    Hung,
    HungRi,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Bca => Method::Bca,
            MethodArg::Hung => Method::Hung,
            MethodArg::HungRi => Method::HungRi,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum LapMode {
    Optimal,
    Ri,
}

#[derive(Subcommand)]
enum Command {
    /// Run the alternating ascent on one IQAP instance
    Solve {
        #[arg(long, value_enum, default_value = "hung-ri")]
        method: MethodArg,
        #[arg(long)]
        input: PathBuf,
        /// Read QAPLIB instead of .dd
        #[arg(long)]
        qaplib: bool,
        /// Put 1e7 on shared-label diagonals of every edge
        #[arg(long)]
        augment: bool,
        /// Seconds
        #[arg(long)]
        time_limit: Option<f64>,
        /// Iteration cap (default 100 without a time limit)
        #[arg(long)]
        max_iters: Option<usize>,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Stop once an iteration gains less than this (0 = never)
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
        /// Sweep the edges backwards too
        #[arg(long)]
        backward: bool,
        /// Cost of the dummy label in .dd input
        #[arg(long, default_value_t = 0.0)]
        dummy_cost: f64,
        #[arg(long, value_enum, default_value = "json")]
        output: Output,
        /// Include the per-iteration bounds
        #[arg(long)]
        trajectory: bool,
    },
    /// Solve a single LAP or ILAP given in the .lap format
    Lap {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "ri")]
        mode: LapMode,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Cross-check the solvers against brute force on a small instance
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        qaplib: bool,
        #[arg(long, default_value_t = 0.0)]
        dummy_cost: f64,
        #[arg(long, default_value_t = 20)]
        max_iters: usize,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Run a method x instance grid from a TOML manifest
    Batch {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        output: Output,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn print(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    if !text.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
}

fn name_of(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn execute(command: Command) -> Result<u8, InputError> {
    match command {
        Command::Solve {
            method,
            input,
            qaplib,
            augment,
            time_limit,
            max_iters,
            tolerance,
            epsilon,
            backward,
            dummy_cost,
            output,
            trajectory,
        } => {
            let format = if qaplib { Format::Qaplib } else { Format::Auto };
            let loaded = load_instance(&input, LoadOptions { format, dummy_cost, augment })?;
            let config = SolverConfig {
                method: method.into(),
                time_limit,
                max_iterations: max_iters.unwrap_or(if time_limit.is_some() { 0 } else { 100 }),
                bound_improvement_epsilon: epsilon,
                tolerance: Tolerance(tolerance),
                backward_mplp_pass: backward,
            };
            let report = run_with_clock(&loaded.instance, &config, &StdClock::start())?;
            let record = SolveRecord::new(&name_of(&input), &report, loaded.offset, trajectory);
            match output {
                Output::Csv => print(&record.to_csv().map_err(|e| InputError::Manifest(e.to_string()))?),
                _ => print(&serde_json::to_string_pretty(&record).expect("record serializes")),
            }
            Ok(0)
        }
        Command::Lap { input, mode, tolerance } => {
            let text = std::fs::read_to_string(&input).map_err(|source| InputError::Io { path: input.clone(), source })?;
            let file = parse_lap_file(&text).map_err(|e| InputError::parse(&input, e))?;
            let tol = Tolerance(tolerance);
            let shifted = mode == LapMode::Ri;
            let out = match file {
                LapFile::Lap(inst) => {
                    let sol = solve_lap(&inst)?;
                    let dual = if shifted {
                        shift_to_relative_interior(&inst, &sol.dual, &sol.assignment, inst.eps(tol))?
                    } else {
                        sol.dual
                    };
                    let ri = check_guard(&inst).ok().map(|_| check_dual_relative_interior_lap(&inst, &dual, tol)).transpose()?;
                    json!({
                        "kind": "lap",
                        "value": sol.value,
                        "assignment": sol.assignment.0,
                        "alpha": dual.alpha,
                        "beta": dual.beta,
                        "shifted": shifted,
                        "relative_interior": ri,
                    })
                }
                LapFile::Ilap(inst) => {
                    let m = if shifted { IlapMode::RelativeInterior } else { IlapMode::Optimal };
                    let sol = solve_ilap(&inst, m, tol)?;
                    let ri = check_guard(&inst)
                        .ok()
                        .map(|_| check_dual_relative_interior_ilap(&inst, &sol.dual, tol))
                        .transpose()?;
                    let assignment: Vec<Option<usize>> =
                        sol.assignment.0.iter().map(|&l| (l != DUMMY).then_some(l)).collect();
                    json!({
                        "kind": "ilap",
                        "value": sol.value,
                        "assignment": assignment,
                        "alpha": sol.dual.alpha,
                        "beta": sol.dual.beta,
                        "shifted": shifted,
                        "relative_interior": ri,
                    })
                }
            };
            print(&serde_json::to_string_pretty(&out).expect("json"));
            Ok(0)
        }
        Command::Verify { input, qaplib, dummy_cost, max_iters, tolerance } => {
            let tol = Tolerance(tolerance);
            let checks = if input.extension().is_some_and(|e| e == "lap") {
                let text =
                    std::fs::read_to_string(&input).map_err(|source| InputError::Io { path: input.clone(), source })?;
                verify_lap(parse_lap_file(&text).map_err(|e| InputError::parse(&input, e))?, tol)?
            } else {
                let format = if qaplib { Format::Qaplib } else { Format::Auto };
                let loaded = load_instance(&input, LoadOptions { format, dummy_cost, augment: false })?;
                verify_iqap(&loaded.instance, max_iters, tol)?
            };
            let failed = checks.as_ref().is_some_and(|c| c.iter().any(|c| !c.passed));
            let out = json!({
                "instance": name_of(&input),
                "skipped": checks.is_none(),
                "checks": checks.unwrap_or_default(),
            });
            print(&serde_json::to_string_pretty(&out).expect("json"));
            Ok(if failed { 2 } else { 0 })
        }
        Command::Batch { manifest, output } => {
            let table = run_manifest_file(&manifest)?;
            match output {
                Output::Json => print(&table.to_json()),
                Output::Csv => print(&table.to_csv().map_err(|e| InputError::Manifest(e.to_string()))?),
                Output::Table => print(&table.render()),
            }
            Ok(0)
        }
    }
}

#[derive(Serialize)]
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: String) -> Check {
    Check { name: name.into(), passed, detail }
}

fn verify_lap(file: LapFile, tol: Tolerance) -> Result<Option<Vec<Check>>, InputError> {
    Ok(Some(match file {
        LapFile::Lap(inst) => {
            if check_guard(&inst).is_err() {
                return Ok(None);
            }
            let opt = brute_force_optimum(&inst, tol)?;
            let sol = solve_lap(&inst)?;
            let dual = shift_to_relative_interior(&inst, &sol.dual, &sol.assignment, inst.eps(tol))?;
            vec![
                check("optimum", sol.value == opt.value, format!("solver {} oracle {}", sol.value, opt.value)),
                check(
                    "relative_interior",
                    check_dual_relative_interior_lap(&inst, &dual, tol)?,
                    "active set equals minimally assignable pairs".into(),
                ),
            ]
        }
        LapFile::Ilap(inst) => {
            if check_guard(&inst).is_err() {
                return Ok(None);
            }
            let opt = brute_force_optimum(&inst, tol)?;
            let sol = solve_ilap(&inst, IlapMode::RelativeInterior, tol)?;
            vec![
                check("optimum", sol.value == opt.value, format!("solver {} oracle {}", sol.value, opt.value)),
                check(
                    "relative_interior",
                    check_dual_relative_interior_ilap(&inst, &sol.dual, tol)?,
                    "active set and zero label duals match the optima".into(),
                ),
            ]
        }
    }))
}

fn verify_iqap(inst: &IqapInstance, max_iters: usize, tol: Tolerance) -> Result<Option<Vec<Check>>, InputError> {
    if check_guard(inst).is_err() {
        return Ok(None);
    }
    let opt = brute_force_optimum(inst, tol)?.value;
    let slack = 1e-8 * (1.0 + inst.max_abs_cost());
    let mut checks = Vec::new();
    for m in Method::ALL {
        let r = run_with_clock(inst, &SolverConfig::new(m, max_iters.max(1)), &qapbound_core::NoClock)?;
        let mut prev = r.initial_bound;
        let monotone = r.trajectory.iter().all(|&b| {
            let ok = b >= prev - slack;
            prev = b;
            ok
        });
        checks.push(check(format!("{m} monotone"), monotone, format!("{} iterations", r.iterations)));
        checks.push(check(
            format!("{m} sound"),
            r.final_bound <= opt + slack,
            format!("bound {} optimum {}", r.final_bound, opt),
        ));
    }
    let aug = brute_force_optimum(&augment_instance(inst), tol)?.value;
    checks.push(check("augmentation", aug == opt, format!("augmented {aug} original {opt}")));
    Ok(Some(checks))
}
