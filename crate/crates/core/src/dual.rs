//! Dual multiplier optimization: subgradient, dual averaging, stochastic
//! subgradient, bundle and cutting-plane updates, plus the augmented
//! Lagrangian outer loop.
//!
//! The engine always minimizes. Problems whose dual is maximized (TSP) are
//! negated at the oracle boundary and un-negated in results and traces, so
//! every step implementation below only handles minimization.

use std::fmt;
use std::time::Instant;

use rand::seq::index::sample;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::instances::ProblemKind;
use crate::kernels::{
    lp_solve, prox_qp_solve, Cut, KernelError, LinearProgram, ProxQp,
};
use crate::qubo::{add_squared_penalty, build_mdkp_slackfree_qubo, build_mis_qubo, PenaltyConfig, Qubo};
use crate::relaxation::{
    DualOracle, MdkpOracle, MisOracle, Multipliers, MultiplierDomain, RelaxError,
};
use crate::solvers::{QuboBackend, SolveBudget, SolveError};

/// The implemented multiplier update methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Subgradient,
    DualAveraging,
    StochasticSubgradient,
    Bundle,
    CuttingPlane,
    AugmentedLagrangian,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Subgradient,
        Method::DualAveraging,
        Method::StochasticSubgradient,
        Method::Bundle,
        Method::CuttingPlane,
        Method::AugmentedLagrangian,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Subgradient => "subgradient",
            Method::DualAveraging => "dual_averaging",
            Method::StochasticSubgradient => "stochastic_subgradient",
            Method::Bundle => "bundle",
            Method::CuttingPlane => "cutting_plane",
            Method::AugmentedLagrangian => "augmented_lagrangian",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        Method::ALL.iter().copied().find(|m| m.as_str() == s)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Step-size schedule kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleKind {
    Constant,
    /// alpha0 / k
    Harmonic,
    /// alpha0 / sqrt(k)
    Sqrt,
    /// theta (g_k - target) / ||s||^2
    Polyak,
}

/// Step-size schedule. Polyak needs a target bound on the optimal dual
/// value; when absent the engine fills it from a greedy primal heuristic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepSchedule {
    pub kind: ScheduleKind,
    pub alpha0: f64,
    pub polyak_target: Option<f64>,
    /// theta in (0, 2].
    pub polyak_scale: f64,
}

impl StepSchedule {
    pub fn harmonic(alpha0: f64) -> StepSchedule {
        StepSchedule {
            kind: ScheduleKind::Harmonic,
            alpha0,
            polyak_target: None,
            polyak_scale: 1.0,
        }
    }

    pub fn sqrt(alpha0: f64) -> StepSchedule {
        StepSchedule {
            kind: ScheduleKind::Sqrt,
            ..StepSchedule::harmonic(alpha0)
        }
    }

    pub fn constant(alpha0: f64) -> StepSchedule {
        StepSchedule {
            kind: ScheduleKind::Constant,
            ..StepSchedule::harmonic(alpha0)
        }
    }

    /// Step size at (1-indexed) iteration k for an oriented value/subgradient.
    fn step(&self, k: usize, oriented_value: f64, subgrad: &[f64], target: Option<f64>) -> f64 {
        debug_assert!(k >= 1);
        match self.kind {
            ScheduleKind::Constant => self.alpha0,
            ScheduleKind::Harmonic => self.alpha0 / k as f64,
            ScheduleKind::Sqrt => self.alpha0 / (k as f64).sqrt(),
            ScheduleKind::Polyak => {
                let target = self
                    .polyak_target
                    .or(target)
                    .expect("polyak schedule requires a target");
                let norm_sq: f64 = subgrad.iter().map(|s| s * s).sum();
                if norm_sq == 0.0 {
                    0.0
                } else {
                    (self.polyak_scale * (oriented_value - target) / norm_sq).max(0.0)
                }
            }
        }
    }
}

/// Dual-averaging update variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AveragingVariant {
    /// lambda^{k+1} = proj(-alpha_k G^k), assuming lambda^0 = 0.
    Cumulative,
    /// lambda^{k+1} = proj(lambda^k - alpha_k G^k / k).
    Averaged,
}

/// Augmented-Lagrangian dual update rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlmRule {
    /// Literal rule lambda_j <- max(0, lambda_j + mu (b_j - sum w x)).
    Paper,
    /// Standard multiplier ascent lambda_j <- max(0, lambda_j + mu (sum w x - b_j)).
    Kkt,
}

/// Full method configuration. `MethodConfig::new` fills per-method defaults;
/// every field can be overridden.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodConfig {
    pub method: Method,
    /// Maximum iterations K.
    pub max_iters: usize,
    /// Stopping tolerance epsilon on the subgradient norm (and on the model
    /// gap for bundle / cutting plane).
    pub tol: f64,
    pub schedule: StepSchedule,
    /// Mini-batch size for the stochastic method; defaults to ceil(m / 2).
    pub batch_size: Option<usize>,
    pub averaging: AveragingVariant,
    /// Bundle proximal weight.
    pub beta: f64,
    /// Bundle serious-step fraction m_L in (0, 1).
    pub serious_fraction: f64,
    /// Bundle size cap; oldest cuts are evicted beyond it.
    pub bundle_cap: usize,
    /// Cutting-plane box half-width; defaults to 10x the oracle's
    /// multiplier scale.
    pub lambda_max: Option<f64>,
    /// Augmented-Lagrangian penalty weight.
    pub mu: f64,
    /// Multiplicative penalty growth per iteration (>= 1).
    pub mu_growth: f64,
    /// Decay applied to the effective mu_k (constant / harmonic / sqrt).
    pub mu_decay: ScheduleKind,
    pub alm_rule: AlmRule,
    pub seed: u64,
}

impl MethodConfig {
    /// Defaults per method: K = 500, eps = 1e-6, harmonic alpha0 = 1 steps,
    /// beta = 1, m_L = 0.1, bundle cap 50, mu = 1 with harmonic decay under
    /// the KKT rule.
    pub fn new(method: Method) -> MethodConfig {
        MethodConfig {
            method,
            max_iters: 500,
            tol: 1e-6,
            schedule: StepSchedule::harmonic(1.0),
            batch_size: None,
            averaging: AveragingVariant::Cumulative,
            beta: 1.0,
            serious_fraction: 0.1,
            bundle_cap: 50,
            lambda_max: None,
            mu: 1.0,
            mu_growth: 1.0,
            mu_decay: ScheduleKind::Harmonic,
            alm_rule: AlmRule::Kkt,
            seed: 0,
        }
    }

    fn validate(&self) -> Result<(), DualError> {
        if self.schedule.alpha0 <= 0.0 {
            return Err(DualError::BadConfig("alpha0 must be positive".into()));
        }
        if !(self.serious_fraction > 0.0 && self.serious_fraction < 1.0) {
            return Err(DualError::BadConfig("m_L must be in (0, 1)".into()));
        }
        if self.beta <= 0.0 || self.mu <= 0.0 || self.mu_growth < 1.0 {
            return Err(DualError::BadConfig("beta, mu > 0 and mu_growth >= 1 required".into()));
        }
        if !(self.schedule.polyak_scale > 0.0 && self.schedule.polyak_scale <= 2.0) {
            return Err(DualError::BadConfig("polyak scale must be in (0, 2]".into()));
        }
        Ok(())
    }
}

/// Mutable state of a dual run. Values and cuts live in the engine's
/// minimization space.
#[derive(Debug, Clone)]
pub struct DualState {
    /// Current evaluation point.
    pub lambda: Multipliers,
    /// Completed method steps.
    pub k: usize,
    /// Running subgradient sum G^k (dual averaging).
    pub cumulative_subgrad: Vec<f64>,
    /// Bundle cuts (lambda_i, g_i, s_i).
    pub bundle: Vec<Cut>,
    /// Cutting-plane cuts.
    pub cuts: Vec<Cut>,
    pub best_lambda: Multipliers,
    /// Best oriented (minimized) dual value seen.
    pub best_dual: f64,
    /// Bundle stability center and its value.
    center: Multipliers,
    center_value: f64,
    /// Model decrease predicted for the current evaluation point.
    pending_decrease: Option<f64>,
    /// Model optimum of the last bundle / cutting-plane subproblem.
    pub last_model_value: Option<f64>,
    /// Step label of the last update ("serious", "null", "cut", ...).
    last_step_kind: &'static str,
}

impl DualState {
    pub fn new(dim: usize, domain: MultiplierDomain) -> DualState {
        let zero = Multipliers::zeros(dim, domain);
        DualState {
            lambda: zero.clone(),
            k: 0,
            cumulative_subgrad: vec![0.0; dim],
            bundle: Vec::new(),
            cuts: Vec::new(),
            best_lambda: zero.clone(),
            best_dual: f64::INFINITY,
            center: zero,
            center_value: f64::INFINITY,
            pending_decrease: None,
            last_model_value: None,
            last_step_kind: "init",
        }
    }

    fn observe(&mut self, value: f64) {
        if value < self.best_dual {
            self.best_dual = value;
            self.best_lambda = self.lambda.clone();
        }
    }
}

/// Oriented (minimization-space) evaluation of the subproblem.
#[derive(Debug, Clone)]
pub struct OrientedEval {
    pub value: f64,
    pub subgrad: Vec<f64>,
}

impl OrientedEval {
    pub fn norm(&self) -> f64 {
        self.subgrad.iter().map(|s| s * s).sum::<f64>().sqrt()
    }
}

/// Errors from dual optimization.
#[derive(Debug, Clone, PartialEq)]
pub enum DualError {
    Relax(RelaxError),
    Kernel(KernelError),
    Solve(SolveError),
    NonFiniteSubgradient,
    BadConfig(String),
    /// augmented_lagrangian needs a QUBO backend and an inequality-form
    /// problem; TSP in particular is unsupported.
    MethodMismatch(String),
}

impl fmt::Display for DualError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualError::Relax(e) => write!(f, "subproblem error: {e}"),
            DualError::Kernel(e) => write!(f, "kernel error: {e}"),
            DualError::Solve(e) => write!(f, "backend error: {e}"),
            DualError::NonFiniteSubgradient => write!(f, "non-finite subgradient"),
            DualError::BadConfig(msg) => write!(f, "bad method config: {msg}"),
            DualError::MethodMismatch(msg) => write!(f, "method mismatch: {msg}"),
        }
    }
}

impl std::error::Error for DualError {}

impl From<RelaxError> for DualError {
    fn from(e: RelaxError) -> Self {
        DualError::Relax(e)
    }
}

impl From<KernelError> for DualError {
    fn from(e: KernelError) -> Self {
        DualError::Kernel(e)
    }
}

impl From<SolveError> for DualError {
    fn from(e: SolveError) -> Self {
        DualError::Solve(e)
    }
}

/// One trace row per subproblem evaluation; values in native orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub k: usize,
    pub dual_value: f64,
    pub subgrad_norm: f64,
    pub step_kind: String,
    pub elapsed_s: f64,
    /// Cut-model optimum (bundle / cutting plane), native orientation.
    pub model_value: Option<f64>,
}

/// Result of a dual run; values in native orientation.
#[derive(Debug, Clone)]
pub struct DualResult {
    pub best_multipliers: Multipliers,
    pub best_dual: f64,
    pub iterations: usize,
    pub trace: Vec<TraceRow>,
    /// Time spent inside QUBO backends (augmented Lagrangian inner solves).
    pub solver_time_s: f64,
}

/// Serializes a trace as CSV rows `k,dual_value,subgrad_norm,step_kind,elapsed_s`.
pub fn trace_to_csv(trace: &[TraceRow]) -> String {
    let mut out = String::from("k,dual_value,subgrad_norm,step_kind,elapsed_s\n");
    for row in trace {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.k, row.dual_value, row.subgrad_norm, row.step_kind, row.elapsed_s
        ));
    }
    out
}

fn check_finite(subgrad: &[f64]) -> Result<(), DualError> {
    if subgrad.iter().any(|s| !s.is_finite()) {
        return Err(DualError::NonFiniteSubgradient);
    }
    Ok(())
}

/// Plain projected subgradient step: lambda' = proj(lambda - alpha s).
pub fn subgradient_step(
    state: &mut DualState,
    eval: &OrientedEval,
    alpha: f64,
) -> Result<(), DualError> {
    check_finite(&eval.subgrad)?;
    if alpha <= 0.0 && eval.norm() > 0.0 {
        return Err(DualError::BadConfig(format!("step size {alpha} must be positive")));
    }
    let raw: Vec<f64> = state
        .lambda
        .values
        .iter()
        .zip(&eval.subgrad)
        .map(|(l, s)| l - alpha * s)
        .collect();
    state.lambda = state.lambda.project(raw);
    state.k += 1;
    state.last_step_kind = "subgradient";
    Ok(())
}

/// Dual-averaging step over the running subgradient sum G^k.
pub fn dual_averaging_step(
    state: &mut DualState,
    eval: &OrientedEval,
    alpha: f64,
    variant: AveragingVariant,
) -> Result<(), DualError> {
    check_finite(&eval.subgrad)?;
    for (g, s) in state.cumulative_subgrad.iter_mut().zip(&eval.subgrad) {
        *g += s;
    }
    let k = state.k + 1;
    let raw: Vec<f64> = match variant {
        AveragingVariant::Cumulative => state
            .cumulative_subgrad
            .iter()
            .map(|g| -alpha * g)
            .collect(),
        AveragingVariant::Averaged => state
            .lambda
            .values
            .iter()
            .zip(&state.cumulative_subgrad)
            .map(|(l, g)| l - alpha * g / k as f64)
            .collect(),
    };
    state.lambda = state.lambda.project(raw);
    state.k += 1;
    state.last_step_kind = "dual_averaging";
    Ok(())
}

/// Stochastic subgradient step: only the coordinates of a uniformly sampled
/// (without replacement) mini-batch move.
pub fn stochastic_subgradient_step(
    state: &mut DualState,
    eval: &OrientedEval,
    alpha: f64,
    batch_size: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(), DualError> {
    check_finite(&eval.subgrad)?;
    let m = state.lambda.len();
    if batch_size == 0 || batch_size > m {
        return Err(DualError::BadConfig(format!(
            "batch_size {batch_size} out of range 1..={m}"
        )));
    }
    let batch = sample(rng, m, batch_size);
    let nonneg = state.lambda.domain == MultiplierDomain::NonNegative;
    for j in batch.iter() {
        let next = state.lambda.values[j] - alpha * eval.subgrad[j];
        state.lambda.values[j] = if nonneg { next.max(0.0) } else { next };
    }
    state.k += 1;
    state.last_step_kind = "stochastic";
    Ok(())
}

/// Bundle step: insert the current cut, test the pending serious-step
/// condition, and propose the next candidate from the proximal cut model
/// around the stability center.
pub fn bundle_step(
    state: &mut DualState,
    eval: &OrientedEval,
    beta: f64,
    serious_fraction: f64,
    bundle_cap: usize,
) -> Result<(), DualError> {
    check_finite(&eval.subgrad)?;
    state.bundle.push(Cut {
        point: state.lambda.values.clone(),
        value: eval.value,
        subgrad: eval.subgrad.clone(),
    });
    if state.bundle.len() > bundle_cap.max(1) {
        state.bundle.remove(0);
    }

    let step_kind = if state.center_value.is_infinite() {
        // first evaluation initializes the center
        state.center = state.lambda.clone();
        state.center_value = eval.value;
        "serious"
    } else if let Some(predicted) = state.pending_decrease.take() {
        if eval.value <= state.center_value - serious_fraction * predicted {
            state.center = state.lambda.clone();
            state.center_value = eval.value;
            "serious"
        } else {
            "null" // the stability center never moves on a null step
        }
    } else {
        "null"
    };

    let qp = ProxQp {
        cuts: state.bundle.clone(),
        center: state.center.values.clone(),
        beta,
        nonneg: state.lambda.domain == MultiplierDomain::NonNegative,
    };
    let sol = prox_qp_solve(&qp, 1e-8, 10_000)?;
    state.pending_decrease = Some((state.center_value - sol.objective).max(0.0));
    state.last_model_value = Some(sol.model_value);
    state.lambda = state.lambda.project(sol.lambda);
    state.k += 1;
    state.last_step_kind = step_kind;
    Ok(())
}

/// Cutting-plane step: insert the current cut and move to the minimizer of
/// the piecewise-linear model over the multiplier box, recording the model
/// optimum t*.
pub fn cutting_plane_step(
    state: &mut DualState,
    eval: &OrientedEval,
    lambda_max: f64,
) -> Result<(), DualError> {
    check_finite(&eval.subgrad)?;
    if lambda_max <= 0.0 {
        return Err(DualError::BadConfig("lambda_max must be positive".into()));
    }
    state.cuts.push(Cut {
        point: state.lambda.values.clone(),
        value: eval.value,
        subgrad: eval.subgrad.clone(),
    });

    let d = state.lambda.len();
    let lo = match state.lambda.domain {
        MultiplierDomain::NonNegative => 0.0,
        MultiplierDomain::Free => -lambda_max,
    };
    // Finite t bounds derived from the cuts over the box keep the LP boxed.
    let mut t_hi = f64::NEG_INFINITY;
    let mut t_lo = f64::INFINITY;
    for cut in &state.cuts {
        let offset = cut.value
            - cut
                .subgrad
                .iter()
                .zip(&cut.point)
                .map(|(s, p)| s * p)
                .sum::<f64>();
        let mut hi = offset;
        let mut low = offset;
        for &s in &cut.subgrad {
            hi += if s >= 0.0 { s * lambda_max } else { s * lo };
            low += if s >= 0.0 { s * lo } else { s * lambda_max };
        }
        t_hi = t_hi.max(hi);
        t_lo = t_lo.min(low);
    }
    let (t_lo, t_hi) = (t_lo - 1.0, t_hi + 1.0);

    let mut objective = vec![0.0; d + 1];
    objective[d] = 1.0;
    let mut rows = Vec::with_capacity(state.cuts.len());
    for cut in &state.cuts {
        // t >= g_i + s_i (lambda - lambda_i)  <=>  t - s_i lambda >= offset_i
        let offset = cut.value
            - cut
                .subgrad
                .iter()
                .zip(&cut.point)
                .map(|(s, p)| s * p)
                .sum::<f64>();
        let mut coeffs = vec![0.0; d + 1];
        for (c, s) in coeffs.iter_mut().zip(&cut.subgrad) {
            *c = -s;
        }
        coeffs[d] = 1.0;
        rows.push((coeffs, offset));
    }
    let mut bounds = vec![(lo, lambda_max); d];
    bounds.push((t_lo, t_hi));
    let lp = LinearProgram {
        objective,
        rows,
        bounds,
    };
    let (x, t_star) = lp_solve(&lp)?;
    state.last_model_value = Some(t_star);
    state.lambda = state.lambda.project(x[..d].to_vec());
    state.k += 1;
    state.last_step_kind = "cut";
    Ok(())
}

/// A dual oracle that can also build the augmented (quadratic penalty)
/// inner problem as a QUBO and report constraint residuals b - Wx.
pub trait AugmentedDualOracle: DualOracle {
    fn penalized_qubo(&self, lambda: &Multipliers, mu: f64) -> Result<Qubo, RelaxError>;
    /// Residuals b_j - sum_i w_ji x_i of the native inequality constraints.
    fn residuals(&self, x: &[bool]) -> Vec<f64>;
}

impl AugmentedDualOracle for MdkpOracle<'_> {
    fn penalized_qubo(&self, lambda: &Multipliers, mu: f64) -> Result<Qubo, RelaxError> {
        let mut q = build_mdkp_slackfree_qubo(self.inst, lambda)?;
        for j in 0..self.inst.m {
            let terms: Vec<(usize, f64)> = (0..self.inst.n)
                .map(|i| (i, self.inst.weights[j][i] as f64))
                .filter(|&(_, w)| w != 0.0)
                .collect();
            add_squared_penalty(&mut q, &terms, -(self.inst.capacities[j] as f64), mu / 2.0);
        }
        Ok(q)
    }

    fn residuals(&self, x: &[bool]) -> Vec<f64> {
        (0..self.inst.m)
            .map(|j| (self.inst.capacities[j] - self.inst.usage(j, x)) as f64)
            .collect()
    }
}

impl AugmentedDualOracle for MisOracle<'_> {
    fn penalized_qubo(&self, lambda: &Multipliers, mu: f64) -> Result<Qubo, RelaxError> {
        // Pure Lagrangian objective (conflict weight 0), then the quadratic
        // penalty (mu/2)(1 - x_i - x_j)^2 per edge.
        let pc = PenaltyConfig {
            conflict: Some(0.0),
            ..Default::default()
        };
        let mut q = build_mis_qubo(self.inst, Some(lambda), &pc)?;
        for &(i, j) in &self.inst.edges {
            add_squared_penalty(&mut q, &[(i, -1.0), (j, -1.0)], 1.0, mu / 2.0);
        }
        Ok(q)
    }

    fn residuals(&self, x: &[bool]) -> Vec<f64> {
        self.inst
            .edges
            .iter()
            .map(|&(i, j)| 1.0 - (x[i] as i64 + x[j] as i64) as f64)
            .collect()
    }
}

fn effective_mu(cfg: &MethodConfig, k: usize) -> f64 {
    let grown = cfg.mu * cfg.mu_growth.powi(k as i32 - 1);
    match cfg.mu_decay {
        ScheduleKind::Constant => grown,
        ScheduleKind::Harmonic => grown / k as f64,
        ScheduleKind::Sqrt => grown / (k as f64).sqrt(),
        ScheduleKind::Polyak => grown,
    }
}

/// One augmented-Lagrangian iteration: the inner quadratic problem is
/// minimized by the QUBO backend, then the multipliers move by mu times the
/// residual (sign per [`AlmRule`]) with a clamp to the nonnegative domain.
/// Returns the residual vector of the inner solution.
pub fn augmented_lagrangian_iterate(
    oracle: &dyn AugmentedDualOracle,
    state: &mut DualState,
    mu: f64,
    rule: AlmRule,
    backend: &dyn QuboBackend,
    budget: &SolveBudget,
    solver_time_s: &mut f64,
) -> Result<Vec<f64>, DualError> {
    let q = oracle.penalized_qubo(&state.lambda, mu)?;
    let t0 = Instant::now();
    let res = backend.solve(&q, budget)?;
    *solver_time_s += t0.elapsed().as_secs_f64();
    let residuals = oracle.residuals(&res.x_best);
    let raw: Vec<f64> = state
        .lambda
        .values
        .iter()
        .zip(&residuals)
        .map(|(l, r)| match rule {
            AlmRule::Paper => l + mu * r,
            AlmRule::Kkt => l - mu * r,
        })
        .collect();
    state.lambda = state.lambda.project(raw);
    state.k += 1;
    state.last_step_kind = "alm";
    Ok(residuals)
}

/// Runs one of the five dual update methods. Stops when the subgradient norm
/// drops below `tol`, when the cut model certifies optimality (bundle /
/// cutting plane), or after `max_iters` steps; returns the best multipliers
/// under the problem's orientation plus a per-iteration trace.
///
/// `augmented_lagrangian` needs a backend; use [`run_augmented_lagrangian`].
pub fn run_dual_optimization(
    oracle: &dyn DualOracle,
    cfg: &MethodConfig,
) -> Result<DualResult, DualError> {
    if cfg.method == Method::AugmentedLagrangian {
        return Err(DualError::MethodMismatch(
            "augmented_lagrangian requires a QUBO backend; call run_augmented_lagrangian".into(),
        ));
    }
    cfg.validate()?;
    let orientation = oracle.orientation();
    let dim = oracle.dim();
    let start = Instant::now();
    let mut state = DualState::new(dim, orientation.domain);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut trace = Vec::new();

    // Polyak target in oriented space: a greedy feasible primal bound is a
    // valid lower bound on the minimized dual value.
    let polyak_target = if cfg.schedule.kind == ScheduleKind::Polyak {
        Some(cfg.schedule.polyak_target.unwrap_or_else(|| {
            let bound = oracle.greedy_primal_bound();
            if orientation.minimizes() {
                bound
            } else {
                -bound
            }
        }))
    } else {
        None
    };
    let lambda_max = cfg
        .lambda_max
        .unwrap_or_else(|| 10.0 * oracle.multiplier_scale());
    let batch_size = cfg.batch_size.unwrap_or_else(|| (dim + 1) / 2).max(1);

    let mut eval = oriented_eval(oracle, &state.lambda, orientation)?;
    state.observe(eval.value);
    push_trace(&mut trace, &state, &eval, orientation, start.elapsed().as_secs_f64());

    for k in 1..=cfg.max_iters {
        if eval.norm() < cfg.tol {
            break;
        }
        match cfg.method {
            Method::Subgradient => {
                let alpha = cfg.schedule.step(k, eval.value, &eval.subgrad, polyak_target);
                subgradient_step(&mut state, &eval, alpha)?;
            }
            Method::DualAveraging => {
                let alpha = cfg.schedule.step(k, eval.value, &eval.subgrad, polyak_target);
                dual_averaging_step(&mut state, &eval, alpha, cfg.averaging)?;
            }
            Method::StochasticSubgradient => {
                let alpha = cfg.schedule.step(k, eval.value, &eval.subgrad, polyak_target);
                stochastic_subgradient_step(&mut state, &eval, alpha, batch_size, &mut rng)?;
            }
            Method::Bundle => {
                bundle_step(
                    &mut state,
                    &eval,
                    cfg.beta,
                    cfg.serious_fraction,
                    cfg.bundle_cap,
                )?;
            }
            Method::CuttingPlane => {
                cutting_plane_step(&mut state, &eval, lambda_max)?;
            }
            Method::AugmentedLagrangian => unreachable!(),
        }
        eval = oriented_eval(oracle, &state.lambda, orientation)?;
        state.observe(eval.value);
        push_trace(&mut trace, &state, &eval, orientation, start.elapsed().as_secs_f64());

        // Model-gap certificates: the cut model under-estimates the dual, so
        // t* reaching the incumbent proves optimality within tol.
        match cfg.method {
            Method::CuttingPlane => {
                if let Some(t_star) = state.last_model_value {
                    if state.best_dual - t_star <= cfg.tol {
                        break;
                    }
                }
            }
            Method::Bundle => {
                if let Some(pred) = state.pending_decrease {
                    if pred <= cfg.tol {
                        break;
                    }
                }
            }
            _ => {}
        }
    }

    Ok(finish(state, trace, orientation, 0.0))
}

/// Augmented-Lagrangian outer loop for inequality-form problems (MDKP /
/// MIS). The inner quadratic minimization goes to `backend`; the trace
/// reports the true dual value g(lambda) of each visited point.
pub fn run_augmented_lagrangian(
    oracle: &dyn AugmentedDualOracle,
    cfg: &MethodConfig,
    backend: &dyn QuboBackend,
) -> Result<DualResult, DualError> {
    if cfg.method != Method::AugmentedLagrangian {
        return Err(DualError::MethodMismatch(format!(
            "run_augmented_lagrangian called with method {}",
            cfg.method
        )));
    }
    if oracle.kind() == ProblemKind::Tsp {
        return Err(DualError::MethodMismatch(
            "augmented_lagrangian is unsupported for tsp".into(),
        ));
    }
    cfg.validate()?;
    let orientation = oracle.orientation();
    let start = Instant::now();
    let mut state = DualState::new(oracle.dim(), orientation.domain);
    let mut trace = Vec::new();
    let mut solver_time = 0.0;
    let budget = SolveBudget::seeded(cfg.seed);

    let mut eval = oriented_eval(oracle, &state.lambda, orientation)?;
    state.observe(eval.value);
    push_trace(&mut trace, &state, &eval, orientation, start.elapsed().as_secs_f64());

    for k in 1..=cfg.max_iters {
        let mu = effective_mu(cfg, k);
        let residuals = augmented_lagrangian_iterate(
            oracle,
            &mut state,
            mu,
            cfg.alm_rule,
            backend,
            &budget,
            &mut solver_time,
        )?;
        eval = oriented_eval(oracle, &state.lambda, orientation)?;
        state.observe(eval.value);
        push_trace(&mut trace, &state, &eval, orientation, start.elapsed().as_secs_f64());
        let res_norm = residuals.iter().map(|r| r * r).sum::<f64>().sqrt();
        if res_norm < cfg.tol {
            break;
        }
    }

    Ok(finish(state, trace, orientation, solver_time))
}

fn oriented_eval(
    oracle: &dyn DualOracle,
    lambda: &Multipliers,
    orientation: crate::relaxation::DualOrientation,
) -> Result<OrientedEval, DualError> {
    let sub = oracle.evaluate(lambda)?;
    let (value, subgrad) = orientation.negate(sub.dual_value, &sub.subgrad);
    Ok(OrientedEval { value, subgrad })
}

fn push_trace(
    trace: &mut Vec<TraceRow>,
    state: &DualState,
    eval: &OrientedEval,
    orientation: crate::relaxation::DualOrientation,
    elapsed_s: f64,
) {
    let (native_value, _) = orientation.negate(eval.value, &[]);
    let native_model = state
        .last_model_value
        .map(|m| orientation.negate(m, &[]).0);
    trace.push(TraceRow {
        k: state.k,
        dual_value: native_value,
        subgrad_norm: eval.norm(),
        step_kind: state.last_step_kind.to_string(),
        elapsed_s,
        model_value: native_model,
    });
}

fn finish(
    state: DualState,
    trace: Vec<TraceRow>,
    orientation: crate::relaxation::DualOrientation,
    solver_time_s: f64,
) -> DualResult {
    let (best_native, _) = orientation.negate(state.best_dual, &[]);
    DualResult {
        best_multipliers: state.best_lambda,
        best_dual: best_native,
        iterations: state.k,
        trace,
        solver_time_s,
    }
}
