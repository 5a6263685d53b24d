//! Method x instance grids described by a TOML manifest.
//!
//! ```toml
//! workers = 4                       # default: $QAPBOUND_WORKERS or all cores
//! methods = ["bca", "hung", "hung-ri"]
//! max_iters = 50                    # optional global iteration cap
//! augment = false
//! dummy_cost = 0.0
//!
//! [[group]]
//! name = "toy"
//! time_limit = 2.0                  # seconds per run
//! format = "dd"                     # dd | qaplib | auto
//! instances = ["a.dd", "b.dd"]      # relative to the manifest
//! ```

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use qapbound_core::{run_with_clock, BoundReport, Method, SolverConfig, Stopwatch};
use serde::Deserialize;

use crate::error::{read, InputError};
use crate::input::{load_instance, Format, LoadOptions};
use crate::report::{ResultRow, ResultTable};

/// Environment variable with the default worker count.
pub const WORKERS_ENV: &str = "QAPBOUND_WORKERS";

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub workers: Option<usize>,
    #[serde(default = "all_methods")]
    pub methods: Vec<String>,
    pub max_iters: Option<usize>,
    #[serde(default)]
    pub augment: bool,
    #[serde(default)]
    pub dummy_cost: f64,
    #[serde(rename = "group", default)]
    pub groups: Vec<Group>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Group {
    pub name: String,
    pub time_limit: Option<f64>,
    pub max_iters: Option<usize>,
    #[serde(default)]
    pub format: Format,
    pub instances: Vec<PathBuf>,
}

fn all_methods() -> Vec<String> {
    Method::ALL.iter().map(|m| m.name().to_string()).collect()
}

pub fn parse_manifest(text: &str) -> Result<Manifest, InputError> {
    toml::from_str(text).map_err(|e| InputError::Manifest(e.to_string()))
}

pub struct StdClock(Instant);

impl StdClock {
    pub fn start() -> Self {
        StdClock(Instant::now())
    }
}

impl Stopwatch for StdClock {
    fn elapsed(&self) -> f64 {
        self.0.elapsed().as_secs_f64()
    }
}

fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

struct Job {
    group: usize,
    instance: usize,
    method: Method,
}

/// Reads the manifest at `path` and runs it. Instance paths are relative to
/// the manifest's directory.
pub fn run_manifest_file(path: &Path) -> Result<ResultTable, InputError> {
    let manifest = parse_manifest(&read(path)?)?;
    run_manifest(&manifest, path.parent().unwrap_or(Path::new(".")))
}

pub fn run_manifest(manifest: &Manifest, base: &Path) -> Result<ResultTable, InputError> {
    let methods: Vec<Method> =
        manifest.methods.iter().map(|m| m.parse()).collect::<Result<_, _>>().map_err(InputError::Instance)?;
    if methods.is_empty() {
        return Err(InputError::Manifest("no methods".into()));
    }

    let mut configs = Vec::new();
    let mut instances = Vec::new();
    for g in &manifest.groups {
        let max_iterations = g.max_iters.or(manifest.max_iters).unwrap_or(0);
        if max_iterations == 0 && !g.time_limit.is_some_and(|t| t > 0.0) {
            return Err(InputError::Manifest(format!("group `{}` needs max_iters or a positive time_limit", g.name)));
        }
        let config = SolverConfig { time_limit: g.time_limit, max_iterations, ..SolverConfig::default() };
        config.validate()?;
        configs.push(config);
        let opts = LoadOptions { format: g.format, dummy_cost: manifest.dummy_cost, augment: manifest.augment };
        let loaded = g
            .instances
            .iter()
            .map(|p| load_instance(&base.join(p), opts).map(|l| l.instance))
            .collect::<Result<Vec<_>, _>>()?;
        instances.push(loaded);
    }

    let mut jobs = Vec::new();
    for (gi, group) in instances.iter().enumerate() {
        for ii in 0..group.len() {
            for &method in &methods {
                jobs.push(Job { group: gi, instance: ii, method });
            }
        }
    }
    let workers = manifest.workers.unwrap_or_else(default_workers).clamp(1, jobs.len().max(1));
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<BoundReport, qapbound_core::Error>>>> =
        Mutex::new((0..jobs.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else { break };
                let config = SolverConfig { method: job.method, ..configs[job.group].clone() };
                let report = run_with_clock(&instances[job.group][job.instance], &config, &StdClock::start());
                results.lock().expect("no worker panicked")[i] = Some(report);
            });
        }
    });

    let mut rows = Vec::with_capacity(jobs.len());
    for (job, result) in jobs.iter().zip(results.into_inner().expect("no worker panicked")) {
        let report = result.expect("every job ran")?;
        let group = &manifest.groups[job.group];
        rows.push(ResultRow {
            group: group.name.clone(),
            instance: group.instances[job.instance].display().to_string(),
            method: job.method.name().to_string(),
            final_bound: report.final_bound,
            initial_bound: report.initial_bound,
            iterations: report.iterations,
            wall_time: report.wall_time,
            best: false,
        });
    }
    Ok(ResultTable::new(methods.iter().map(|m| m.name().to_string()).collect(), rows))
}
