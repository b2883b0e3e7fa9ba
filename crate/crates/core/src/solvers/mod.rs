//! Pluggable QUBO minimization backends.
//!
//! All backends share one contract: given a [`Qubo`](crate::qubo::Qubo) and a
//! [`SolveBudget`], return the best assignment found with its exact energy
//! (re-verified through `Qubo::evaluate`, never an inconsistent pair).
//! External solvers can be added behind the same trait without touching the
//! pipeline.

mod anneal;
mod exact;
mod qaoa;

use std::fmt;

pub use anneal::simulated_anneal;
pub use exact::{exact_enumerate, exact_enumerate_visit, EXACT_VAR_CAP};
pub use qaoa::{
    optimize_qaoa_params, qaoa_statevector, QaoaOutcome, QaoaParams, STATEVECTOR_VAR_CAP,
};

use crate::qubo::Qubo;

/// Resource budget for a backend call.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveBudget {
    /// Metropolis sweeps per chain (annealing) or search evaluations (QAOA).
    pub sweeps: usize,
    /// Independent restart chains.
    pub restarts: usize,
    /// Wall-clock cap in seconds, if any.
    pub time_cap_s: Option<f64>,
    pub seed: u64,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            sweeps: 300,
            restarts: 8,
            time_cap_s: None,
            seed: 0,
        }
    }
}

impl SolveBudget {
    pub fn seeded(seed: u64) -> SolveBudget {
        SolveBudget {
            seed,
            ..Default::default()
        }
    }
}

/// Result of one backend call.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub x_best: Vec<bool>,
    /// Energy of `x_best`; always equals `qubo.evaluate(&x_best)` exactly.
    pub value: f64,
    pub states_visited: u64,
    pub wall_time_s: f64,
    pub backend: &'static str,
}

/// Backend failure modes.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveError {
    /// The formulation needs more variables than the backend supports.
    Capacity { needed: usize, cap: usize },
    BadInput(String),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Capacity { needed, cap } => {
                write!(f, "qubit limit exceeded: needs {needed} variables, cap is {cap}")
            }
            SolveError::BadInput(msg) => write!(f, "bad solver input: {msg}"),
        }
    }
}

impl std::error::Error for SolveError {}

/// Uniform backend contract used by the pipeline.
pub trait QuboBackend: Sync {
    fn name(&self) -> &'static str;
    fn solve(&self, q: &Qubo, budget: &SolveBudget) -> Result<SolveResult, SolveError>;
}

/// Exhaustive Gray-code enumeration backend (exact up to 28 variables).
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactBackend;

impl QuboBackend for ExactBackend {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn solve(&self, q: &Qubo, _budget: &SolveBudget) -> Result<SolveResult, SolveError> {
        exact_enumerate(q)
    }
}

/// Single-flip Metropolis simulated annealing backend.
#[derive(Debug, Clone, Copy, Default)]
pub struct AnnealBackend;

impl QuboBackend for AnnealBackend {
    fn name(&self) -> &'static str {
        "anneal"
    }

    fn solve(&self, q: &Qubo, budget: &SolveBudget) -> Result<SolveResult, SolveError> {
        simulated_anneal(q, budget)
    }
}

/// Statevector QAOA backend: optimizes (gamma, beta) classically, then
/// samples the final state and keeps the best shot.
#[derive(Debug, Clone, Copy)]
pub struct QaoaBackend {
    pub layers: usize,
    pub shots: usize,
    /// Evaluation budget of the classical parameter search.
    pub opt_evals: usize,
}

impl Default for QaoaBackend {
    fn default() -> Self {
        QaoaBackend {
            layers: 1,
            shots: 256,
            opt_evals: 80,
        }
    }
}

impl QuboBackend for QaoaBackend {
    fn name(&self) -> &'static str {
        "qaoa"
    }

    fn solve(&self, q: &Qubo, budget: &SolveBudget) -> Result<SolveResult, SolveError> {
        let start = std::time::Instant::now();
        let (params, _expect) = optimize_qaoa_params(q, self.layers, self.opt_evals)?;
        let outcome = qaoa_statevector(q, &params, self.shots, budget.seed)?;
        let mut result = outcome.result;
        result.wall_time_s = start.elapsed().as_secs_f64();
        Ok(result)
    }
}

/// Looks a backend up by its CLI name.
pub fn backend_by_name(name: &str) -> Option<Box<dyn QuboBackend>> {
    match name {
        "exact" => Some(Box::new(ExactBackend)),
        "anneal" => Some(Box::new(AnnealBackend)),
        "qaoa" => Some(Box::new(QaoaBackend::default())),
        _ => None,
    }
}

/// Compares two assignments lexicographically (variable 0 first).
pub(crate) fn lex_less(a: &[bool], b: &[bool]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return !x; // false < true
        }
    }
    false
}
