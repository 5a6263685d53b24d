//! The alternating ascent driver and the dual lower bound it reports.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::instance::{IqapInstance, Tolerance};
use crate::wcsp::IqapDualState;

/// How the label duals are updated after each MPLP++ pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// One coordinate ascent sweep.
    Bca,
    /// Exact ILAP dual.
    Hung,
    /// Exact ILAP dual shifted into the relative interior.
    HungRi,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Bca, Method::Hung, Method::HungRi];

    pub fn name(self) -> &'static str {
        match self {
            Method::Bca => "bca",
            Method::Hung => "hung",
            Method::HungRi => "hung-ri",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bca" => Ok(Method::Bca),
            "hung" => Ok(Method::Hung),
            "hung-ri" | "hung+ri" | "hungri" => Ok(Method::HungRi),
            _ => Err(Error::InvalidInstance(alloc::format!("unknown method `{s}`"))),
        }
    }
}

/// Elapsed wall time in seconds since the run started.
pub trait Stopwatch {
    fn elapsed(&self) -> f64;
}

/// A clock that never advances. Runs stop on the iteration budget only.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoClock;

impl Stopwatch for NoClock {
    fn elapsed(&self) -> f64 {
        0.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub method: Method,
    /// Seconds; `None` means unlimited.
    pub time_limit: Option<f64>,
    /// `0` means unlimited (a time limit is then required).
    pub max_iterations: usize,
    /// Stop once an iteration gains less than this. `0` disables the test.
    pub bound_improvement_epsilon: f64,
    pub tolerance: Tolerance,
    pub backward_mplp_pass: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            method: Method::HungRi,
            time_limit: None,
            max_iterations: 100,
            bound_improvement_epsilon: 0.0,
            tolerance: Tolerance::default(),
            backward_mplp_pass: false,
        }
    }
}

impl SolverConfig {
    pub fn new(method: Method, max_iterations: usize) -> Self {
        SolverConfig { method, max_iterations, ..SolverConfig::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let timed = matches!(self.time_limit, Some(t) if t > 0.0);
        if self.max_iterations == 0 && !timed {
            return Err(Error::Precondition("need an iteration cap or a positive time limit"));
        }
        if let Some(t) = self.time_limit {
            if t.is_nan() || t < 0.0 {
                return Err(Error::Precondition("time limit must be non-negative"));
            }
        }
        if self.bound_improvement_epsilon.is_nan() || self.bound_improvement_epsilon < 0.0 {
            return Err(Error::Precondition("improvement epsilon must be non-negative"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub instance: String,
    pub method: Method,
    /// Bound at `phi = 0`, `beta = 0`.
    pub initial_bound: f64,
    pub final_bound: f64,
    /// Bound after each completed iteration.
    pub trajectory: Vec<f64>,
    pub iterations: usize,
    pub wall_time: f64,
}

/// `sum_v min_l (theta^phi_v(l) - [l != #] beta_l) + sum_l beta_l +
/// sum_uv min theta^phi_uv`. A lower bound whenever `beta <= 0`.
pub fn dual_bound(inst: &IqapInstance, state: &IqapDualState, tol: Tolerance) -> Result<f64> {
    if state.beta.len() != inst.num_labels() || state.unary.len() != inst.unary.num_entries() {
        return Err(Error::DimensionMismatch {
            what: "dual state",
            expected: inst.unary.num_entries(),
            found: state.unary.len(),
        });
    }
    let eps = inst.eps(tol);
    if let Some((l, &b)) = state.beta.iter().enumerate().find(|(_, &b)| b > eps) {
        return Err(Error::DualInfeasible { vertex: None, label: Some(l), excess: b });
    }
    let mut total = state.beta_objective(inst);
    for e in 0..inst.edges.len() {
        total += state.pairwise_minimum(inst, e);
    }
    Ok(total)
}

/// Runs the alternating scheme without a clock.
pub fn run(inst: &IqapInstance, config: &SolverConfig) -> Result<BoundReport> {
    run_with_clock(inst, config, &NoClock)
}

/// Alternates MPLP++ passes and label dual steps until the iteration cap,
/// the time limit, or the improvement threshold stops it.
pub fn run_with_clock(inst: &IqapInstance, config: &SolverConfig, clock: &dyn Stopwatch) -> Result<BoundReport> {
    config.validate()?;
    let tol = config.tolerance;
    let mut state = IqapDualState::new(inst);
    let initial_bound = dual_bound(inst, &state, tol)?;
    let mut trajectory = Vec::new();
    let mut last = initial_bound;
    loop {
        if config.max_iterations > 0 && trajectory.len() >= config.max_iterations {
            break;
        }
        if let Some(limit) = config.time_limit {
            if clock.elapsed() >= limit {
                break;
            }
        }
        state.mplp_pp_pass(inst, config.backward_mplp_pass);
        match config.method {
            Method::Bca => state.beta_bca_pass(inst),
            Method::Hung => state.beta_exact_update(inst, false, tol)?,
            Method::HungRi => state.beta_exact_update(inst, true, tol)?,
        }
        let bound = dual_bound(inst, &state, tol)?;
        trajectory.push(bound);
        let gain = bound - last;
        last = bound;
        if config.bound_improvement_epsilon > 0.0 && gain < config.bound_improvement_epsilon {
            break;
        }
    }
    Ok(BoundReport {
        instance: String::new(),
        method: config.method,
        initial_bound,
        final_bound: last,
        iterations: trajectory.len(),
        trajectory,
        wall_time: clock.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{EdgeCosts, IlapInstance};
    use alloc::vec;

    fn small() -> IqapInstance {
        let unary = IlapInstance::new(
            2,
            vec![vec![(0, 1.0), (1, -2.0)], vec![(0, -1.0), (1, 3.0)], vec![(0, 0.5)]],
            vec![0.0, 0.0, 0.0],
        )
        .unwrap();
        IqapInstance::new(
            unary,
            vec![
                EdgeCosts { u: 0, v: 1, entries: vec![(1, 0, 4.0), (0, 1, -1.0)] },
                EdgeCosts { u: 1, v: 2, entries: vec![(1, 0, -2.0)] },
            ],
        )
        .unwrap()
    }

    #[test]
    fn initial_bound_formula() {
        let inst = small();
        let s = IqapDualState::new(&inst);
        // Unary minima -2, -1, 0 and pairwise minima -1, -2.
        assert_eq!(dual_bound(&inst, &s, Tolerance::default()).unwrap(), -6.0);
    }

    #[test]
    fn positive_beta_rejected() {
        let inst = small();
        let mut s = IqapDualState::new(&inst);
        s.set_beta(vec![0.0, 1.0]).unwrap();
        assert!(dual_bound(&inst, &s, Tolerance::default()).is_err());
    }

    #[test]
    fn trajectories_are_monotone() {
        let inst = small();
        for m in Method::ALL {
            let r = run(&inst, &SolverConfig::new(m, 10)).unwrap();
            assert_eq!(r.iterations, 10);
            let mut prev = r.initial_bound;
            for &b in &r.trajectory {
                assert!(b >= prev - 1e-9, "{m}: {b} < {prev}");
                prev = b;
            }
            assert_eq!(r.final_bound, *r.trajectory.last().unwrap());
        }
    }

    #[test]
    fn zero_instance_stops_early() {
        let unary = IlapInstance::new(1, vec![vec![(0, 0.0)]; 2], vec![0.0; 2]).unwrap();
        let inst = IqapInstance::new(unary, vec![EdgeCosts { u: 0, v: 1, entries: vec![] }]).unwrap();
        for m in Method::ALL {
            let mut c = SolverConfig::new(m, 50);
            c.bound_improvement_epsilon = 1e-9;
            let r = run(&inst, &c).unwrap();
            assert_eq!(r.iterations, 1);
            assert_eq!(r.final_bound, 0.0);
        }
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::new(Method::Bca, 0).validate().is_err());
        let mut c = SolverConfig::new(Method::Bca, 0);
        c.time_limit = Some(1.0);
        assert!(c.validate().is_ok());
        c.bound_improvement_epsilon = -1.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("nope".parse::<Method>().is_err());
    }
}
