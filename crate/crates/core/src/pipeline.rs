//! End-to-end orchestration: one pipeline run per (instance, method,
//! backend, seed), full benchmark suites, and the CSV / JSON artifacts.
//!
//! A run executes dual loop -> multipliers -> slack-free QUBO -> one backend
//! solve -> repair -> metrics. The `slack_qubo` baseline skips the dual loop
//! and solves the slack formulation directly. Backend capacity misses become
//! a `qubit_limit` status on the record instead of aborting the suite.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brute;
use crate::dual::{
    run_augmented_lagrangian, run_dual_optimization, AlmRule, AveragingVariant, DualResult,
    Method, MethodConfig, ScheduleKind,
};
use crate::instances::{
    parse_dimacs_graph, parse_mdkp, parse_tsplib, InstanceError, MdkpInstance, MisInstance,
    ProblemInstance, ProblemKind, TspInstance,
};
use crate::postprocess::{
    check_feasibility_mdkp, check_feasibility_mis, check_feasibility_tsp, minimization_gap_pct,
    opt_gap_pct, repair_mdkp, repair_mis, repair_tsp, rsq_pct,
};
use crate::qubo::{
    build_mdkp_slack_qubo, build_mdkp_slackfree_qubo, build_mis_qubo, build_tsp_slack_qubo,
    build_tsp_slackfree_qubo, qubit_counts, PenaltyConfig, Qubo, VarRole,
};
use crate::relaxation::{MdkpOracle, MisOracle, Multipliers, TspOracle};
use crate::solvers::{backend_by_name, QuboBackend, SolveBudget, SolveError, SolveResult};

/// A pipeline method: either the direct slack-QUBO baseline or one of the
/// Lagrangian dual methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PipelineMethod {
    SlackQubo,
    Dual(Method),
}

impl PipelineMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            PipelineMethod::SlackQubo => "slack_qubo",
            PipelineMethod::Dual(m) => m.as_str(),
        }
    }

    pub fn parse(s: &str) -> Option<PipelineMethod> {
        if s == "slack_qubo" {
            return Some(PipelineMethod::SlackQubo);
        }
        Method::parse(s).map(PipelineMethod::Dual)
    }
}

impl fmt::Display for PipelineMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One result row; the CSV column order is the field order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub problem: String,
    pub method: String,
    pub backend: String,
    pub seed: u64,
    pub qubits_slack: usize,
    pub qubits_slackfree: usize,
    pub dual_iterations: usize,
    pub best_dual: Option<f64>,
    pub objective_raw: Option<f64>,
    pub objective_repaired: Option<f64>,
    pub feasible_raw: Option<bool>,
    pub feasible_repaired: Option<bool>,
    pub metric_kind: Option<String>,
    pub metric_value: Option<f64>,
    pub classical_time_s: f64,
    pub solver_time_s: f64,
    pub status: String,
}

pub const STATUS_OK: &str = "ok";
/// Mirrors a benchmark table's "exceeded qubit limit" marker.
pub const STATUS_QUBIT_LIMIT: &str = "qubit_limit";

/// Tunable knobs shared by pipeline runs. Unset method fields keep the
/// per-method defaults of [`MethodConfig::new`].
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct MethodOverrides {
    pub max_iters: Option<usize>,
    pub tol: Option<f64>,
    pub schedule: Option<ScheduleKind>,
    pub alpha0: Option<f64>,
    pub polyak_target: Option<f64>,
    pub polyak_scale: Option<f64>,
    pub batch_size: Option<usize>,
    pub averaging: Option<AveragingVariant>,
    pub beta: Option<f64>,
    pub serious_fraction: Option<f64>,
    pub bundle_cap: Option<usize>,
    pub lambda_max: Option<f64>,
    pub mu: Option<f64>,
    pub mu_growth: Option<f64>,
    pub mu_decay: Option<ScheduleKind>,
    pub alm_rule: Option<AlmRule>,
}

impl MethodOverrides {
    pub fn apply(&self, mut cfg: MethodConfig) -> MethodConfig {
        if let Some(v) = self.max_iters {
            cfg.max_iters = v;
        }
        if let Some(v) = self.tol {
            cfg.tol = v;
        }
        if let Some(v) = self.schedule {
            cfg.schedule.kind = v;
        }
        if let Some(v) = self.alpha0 {
            cfg.schedule.alpha0 = v;
        }
        if let Some(v) = self.polyak_target {
            cfg.schedule.polyak_target = Some(v);
        }
        if let Some(v) = self.polyak_scale {
            cfg.schedule.polyak_scale = v;
        }
        if let Some(v) = self.batch_size {
            cfg.batch_size = Some(v);
        }
        if let Some(v) = self.averaging {
            cfg.averaging = v;
        }
        if let Some(v) = self.beta {
            cfg.beta = v;
        }
        if let Some(v) = self.serious_fraction {
            cfg.serious_fraction = v;
        }
        if let Some(v) = self.bundle_cap {
            cfg.bundle_cap = v;
        }
        if let Some(v) = self.lambda_max {
            cfg.lambda_max = Some(v);
        }
        if let Some(v) = self.mu {
            cfg.mu = v;
        }
        if let Some(v) = self.mu_growth {
            cfg.mu_growth = v;
        }
        if let Some(v) = self.mu_decay {
            cfg.mu_decay = v;
        }
        if let Some(v) = self.alm_rule {
            cfg.alm_rule = v;
        }
        cfg
    }
}

/// Options for a single pipeline run.
#[derive(Debug, Clone, Default)]
pub struct PipelineOptions {
    pub seed: u64,
    pub penalties: PenaltyConfig,
    pub overrides: MethodOverrides,
}

/// Pipeline-level failures (configuration and I/O; individual runs never
/// abort a suite).
#[derive(Debug)]
pub enum PipelineError {
    Instance(InstanceError),
    Io(std::io::Error),
    Config(String),
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineError::Instance(e) => write!(f, "{e}"),
            PipelineError::Io(e) => write!(f, "io error: {e}"),
            PipelineError::Config(msg) => write!(f, "config error: {msg}"),
        }
    }
}

impl std::error::Error for PipelineError {}

impl From<InstanceError> for PipelineError {
    fn from(e: InstanceError) -> Self {
        PipelineError::Instance(e)
    }
}

impl From<std::io::Error> for PipelineError {
    fn from(e: std::io::Error) -> Self {
        PipelineError::Io(e)
    }
}

/// Loads an instance file of the given kind; the file stem becomes the
/// instance name unless the format carries its own.
pub fn load_instance(path: &Path, kind: ProblemKind) -> Result<ProblemInstance, PipelineError> {
    let text = fs::read_to_string(path)?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into());
    Ok(match kind {
        ProblemKind::Tsp => ProblemInstance::Tsp(parse_tsplib(&text)?),
        ProblemKind::Mdkp => {
            let mut inst = parse_mdkp(&text)?;
            inst.name = stem;
            ProblemInstance::Mdkp(inst)
        }
        ProblemKind::Mis => {
            let mut inst = parse_dimacs_graph(&text)?;
            if inst.name == "graph" {
                inst.name = stem;
            }
            ProblemInstance::Mis(inst)
        }
    })
}

/// Executes one full pipeline run. All failures are folded into the
/// record's status; capacity misses are marked `qubit_limit`.
pub fn run_pipeline(
    inst: &ProblemInstance,
    method: PipelineMethod,
    backend: &dyn QuboBackend,
    opts: &PipelineOptions,
) -> RunRecord {
    let started = Instant::now();
    let (qubits_slack, qubits_slackfree) = qubit_counts(inst.kind(), inst);
    let mut record = RunRecord {
        instance: inst.name().to_string(),
        problem: inst.kind().as_str().to_string(),
        method: method.as_str().to_string(),
        backend: backend.name().to_string(),
        seed: opts.seed,
        qubits_slack,
        qubits_slackfree,
        dual_iterations: 0,
        best_dual: None,
        objective_raw: None,
        objective_repaired: None,
        feasible_raw: None,
        feasible_repaired: None,
        metric_kind: None,
        metric_value: None,
        classical_time_s: 0.0,
        solver_time_s: 0.0,
        status: STATUS_OK.to_string(),
    };

    let mut solver_time = 0.0f64;
    let outcome = execute(inst, method, backend, opts, &mut record, &mut solver_time);
    record.solver_time_s = solver_time;
    record.classical_time_s = (started.elapsed().as_secs_f64() - solver_time).max(0.0);
    if let Err(e) = outcome {
        record.status = match e {
            RunFailure::Capacity => STATUS_QUBIT_LIMIT.to_string(),
            RunFailure::Other(msg) => format!("error: {msg}"),
        };
    }
    record
}

enum RunFailure {
    Capacity,
    Other(String),
}

impl From<SolveError> for RunFailure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Capacity { .. } => RunFailure::Capacity,
            other => RunFailure::Other(other.to_string()),
        }
    }
}

fn execute(
    inst: &ProblemInstance,
    method: PipelineMethod,
    backend: &dyn QuboBackend,
    opts: &PipelineOptions,
    record: &mut RunRecord,
    solver_time: &mut f64,
) -> Result<(), RunFailure> {
    // 1. dual loop (unless running the slack baseline) and QUBO build
    let qubo = match method {
        PipelineMethod::SlackQubo => match inst {
            ProblemInstance::Tsp(t) => build_tsp_slack_qubo(t, &opts.penalties),
            ProblemInstance::Mdkp(m) => build_mdkp_slack_qubo(m, &opts.penalties),
            ProblemInstance::Mis(g) => build_mis_qubo(g, None, &opts.penalties)
                .map_err(|e| RunFailure::Other(e.to_string()))?,
        },
        PipelineMethod::Dual(m) => {
            let dual = run_dual(inst, m, backend, opts).map_err(|e| RunFailure::Other(e))?;
            *solver_time += dual.solver_time_s;
            record.dual_iterations = dual.iterations;
            record.best_dual = Some(dual.best_dual);
            build_slackfree(inst, &dual.best_multipliers, &opts.penalties)
                .map_err(|e| RunFailure::Other(e))?
        }
    };

    // 2. single backend solve
    let budget = SolveBudget::seeded(opts.seed);
    let t0 = Instant::now();
    let solved: SolveResult = backend.solve(&qubo, &budget).map_err(RunFailure::from)?;
    *solver_time += t0.elapsed().as_secs_f64();

    // 3. decode, check, repair, measure
    match inst {
        ProblemInstance::Mdkp(m) => {
            let x_raw: Vec<bool> = (0..m.n).map(|i| solved.x_best[i]).collect();
            record.objective_raw = Some(m.objective(&x_raw) as f64);
            record.feasible_raw = Some(check_feasibility_mdkp(m, &x_raw).feasible);
            let x_rep = repair_mdkp(m, &x_raw);
            let obj = m.objective(&x_rep) as f64;
            record.objective_repaired = Some(obj);
            record.feasible_repaired = Some(check_feasibility_mdkp(m, &x_rep).feasible);
            let best = m
                .best_known
                .map(|b| b as f64)
                .or_else(|| brute::mdkp_optimum(m).map(|(b, _)| b as f64));
            if let Some(best) = best {
                record.metric_kind = Some("gap".into());
                record.metric_value = opt_gap_pct(best, obj).ok();
            }
        }
        ProblemInstance::Mis(g) => {
            let x_raw: Vec<bool> = (0..g.n).map(|i| solved.x_best[i]).collect();
            record.objective_raw = Some(g.objective(&x_raw) as f64);
            record.feasible_raw = Some(check_feasibility_mis(g, &x_raw).feasible);
            let x_rep = repair_mis(g, &x_raw);
            let obj = g.objective(&x_rep) as f64;
            record.objective_repaired = Some(obj);
            record.feasible_repaired = Some(check_feasibility_mis(g, &x_rep).feasible);
            let best = g
                .best_known
                .map(|b| b as f64)
                .or_else(|| brute::mis_optimum(g).map(|(b, _)| b as f64));
            if let Some(best) = best {
                record.metric_kind = Some("rsq".into());
                record.metric_value = rsq_pct(obj, best).ok();
            }
        }
        ProblemInstance::Tsp(t) => {
            let edges = decode_tsp_edges(t.n, &solved.x_best, &qubo);
            record.objective_raw = Some(t.edge_set_cost(&edges) as f64);
            record.feasible_raw = Some(check_feasibility_tsp(t, &edges).feasible);
            let tour = repair_tsp(t, &edges);
            let tour_edges: Vec<(usize, usize)> = (0..t.n)
                .map(|i| {
                    let (a, b) = (tour[i], tour[(i + 1) % t.n]);
                    (a.min(b), a.max(b))
                })
                .collect();
            let obj = t.tour_cost(&tour) as f64;
            record.objective_repaired = Some(obj);
            record.feasible_repaired = Some(check_feasibility_tsp(t, &tour_edges).feasible);
            if let Some(best) = brute::tsp_optimum(t) {
                record.metric_kind = Some("gap".into());
                record.metric_value = minimization_gap_pct(best as f64, obj).ok();
            }
        }
    }
    Ok(())
}

fn run_dual(
    inst: &ProblemInstance,
    method: Method,
    backend: &dyn QuboBackend,
    opts: &PipelineOptions,
) -> Result<DualResult, String> {
    let mut cfg = opts.overrides.apply(MethodConfig::new(method));
    cfg.seed = opts.seed;
    let result = match inst {
        ProblemInstance::Mdkp(m) => {
            let oracle = MdkpOracle { inst: m };
            if method == Method::AugmentedLagrangian {
                run_augmented_lagrangian(&oracle, &cfg, backend)
            } else {
                run_dual_optimization(&oracle, &cfg)
            }
        }
        ProblemInstance::Mis(g) => {
            let oracle = MisOracle { inst: g };
            if method == Method::AugmentedLagrangian {
                run_augmented_lagrangian(&oracle, &cfg, backend)
            } else {
                run_dual_optimization(&oracle, &cfg)
            }
        }
        ProblemInstance::Tsp(t) => {
            if method == Method::AugmentedLagrangian {
                return Err("augmented_lagrangian is unsupported for tsp".into());
            }
            let oracle = TspOracle { inst: t };
            run_dual_optimization(&oracle, &cfg)
        }
    };
    result.map_err(|e| e.to_string())
}

fn build_slackfree(
    inst: &ProblemInstance,
    lambda: &Multipliers,
    pc: &PenaltyConfig,
) -> Result<Qubo, String> {
    match inst {
        ProblemInstance::Mdkp(m) => {
            build_mdkp_slackfree_qubo(m, lambda).map_err(|e| e.to_string())
        }
        ProblemInstance::Mis(g) => {
            build_mis_qubo(g, Some(lambda), pc).map_err(|e| e.to_string())
        }
        ProblemInstance::Tsp(t) => {
            build_tsp_slackfree_qubo(t, lambda, pc).map_err(|e| e.to_string())
        }
    }
}

/// Extracts a TSP edge set from a backend assignment, for either encoding.
/// Position encodings contribute an edge for every pair of consecutive
/// positions that each hold exactly one city; repair completes the rest.
fn decode_tsp_edges(n: usize, x: &[bool], qubo: &Qubo) -> Vec<(usize, usize)> {
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut pos_city: Vec<Option<usize>> = vec![None; n];
    let mut pos_count = vec![0usize; n];
    let mut is_position_encoding = false;
    for (idx, &set) in x.iter().enumerate() {
        if !set {
            continue;
        }
        match qubo.var_map[idx] {
            VarRole::Edge(i, j) => {
                edges.insert((i.min(j), i.max(j)));
            }
            VarRole::Position { city, pos } => {
                is_position_encoding = true;
                pos_count[pos] += 1;
                pos_city[pos] = Some(city);
            }
            _ => {}
        }
    }
    if is_position_encoding {
        for p in 0..n {
            let q = (p + 1) % n;
            if pos_count[p] == 1 && pos_count[q] == 1 {
                if let (Some(a), Some(b)) = (pos_city[p], pos_city[q]) {
                    if a != b {
                        edges.insert((a.min(b), a.max(b)));
                    }
                }
            }
        }
    }
    edges.into_iter().collect()
}

/// One instance entry of a suite configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceEntry {
    pub path: String,
    pub problem: String,
    /// Per-instance method list; falls back to the suite-wide list.
    #[serde(default)]
    pub methods: Option<Vec<String>>,
}

/// Declarative benchmark suite: the cross product of instances, methods,
/// backends and seeds. Unknown keys in the file are errors.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub out_dir: PathBuf,
    pub seeds: Vec<u64>,
    pub methods: Vec<String>,
    pub backends: Vec<String>,
    pub instances: Vec<InstanceEntry>,
    #[serde(default)]
    pub method_overrides: MethodOverrides,
    #[serde(default)]
    pub penalties: PenaltyConfig,
    /// Worker threads for the run cross product; 0 or absent = rayon default.
    #[serde(default)]
    pub parallelism: Option<usize>,
}

impl SuiteConfig {
    /// Parses a TOML suite file and validates methods, backends and that
    /// every referenced instance file exists.
    pub fn load(path: &Path) -> Result<SuiteConfig, PipelineError> {
        let text = fs::read_to_string(path)?;
        let cfg: SuiteConfig = toml::from_str(&text)
            .map_err(|e| PipelineError::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        cfg.validate(base)?;
        Ok(cfg)
    }

    pub fn validate(&self, base: &Path) -> Result<(), PipelineError> {
        if self.seeds.is_empty() {
            return Err(PipelineError::Config("seeds must not be empty".into()));
        }
        for m in self.all_method_names() {
            if PipelineMethod::parse(&m).is_none() {
                return Err(PipelineError::Config(format!("unknown method {m:?}")));
            }
        }
        for b in &self.backends {
            if backend_by_name(b).is_none() {
                return Err(PipelineError::Config(format!("unknown backend {b:?}")));
            }
        }
        for entry in &self.instances {
            if ProblemKind::parse(&entry.problem).is_none() {
                return Err(PipelineError::Config(format!(
                    "unknown problem kind {:?}",
                    entry.problem
                )));
            }
            let path = base.join(&entry.path);
            if !path.is_file() {
                return Err(PipelineError::Config(format!(
                    "instance file {} does not exist",
                    path.display()
                )));
            }
        }
        Ok(())
    }

    fn all_method_names(&self) -> Vec<String> {
        let mut names = self.methods.clone();
        for entry in &self.instances {
            if let Some(ms) = &entry.methods {
                names.extend(ms.clone());
            }
        }
        names
    }

    /// Number of runs in the cross product.
    pub fn run_count(&self) -> usize {
        self.instances
            .iter()
            .map(|e| {
                e.methods.as_ref().map_or(self.methods.len(), |m| m.len())
                    * self.backends.len()
                    * self.seeds.len()
            })
            .sum()
    }
}

/// Runs the full cross product, optionally in parallel, and writes
/// `results.csv`, `results.json` and `qubits.csv` into the output
/// directory. Records come back sorted by (instance order, method, backend,
/// seed), independent of scheduling; per-run failures are statuses, never
/// aborts.
pub fn run_suite(cfg: &SuiteConfig, base: &Path) -> Result<Vec<RunRecord>, PipelineError> {
    let mut instances = Vec::new();
    for entry in &cfg.instances {
        let kind = ProblemKind::parse(&entry.problem)
            .ok_or_else(|| PipelineError::Config(format!("unknown problem {:?}", entry.problem)))?;
        let inst = load_instance(&base.join(&entry.path), kind)?;
        instances.push((inst, entry.methods.clone()));
    }

    let mut runs: Vec<(usize, &ProblemInstance, PipelineMethod, &str, u64)> = Vec::new();
    let mut idx = 0;
    for (inst, methods) in &instances {
        let method_names = methods.as_ref().unwrap_or(&cfg.methods);
        for method_name in method_names {
            let method = PipelineMethod::parse(method_name)
                .ok_or_else(|| PipelineError::Config(format!("unknown method {method_name:?}")))?;
            for backend_name in &cfg.backends {
                for &seed in &cfg.seeds {
                    runs.push((idx, inst, method, backend_name, seed));
                    idx += 1;
                }
            }
        }
    }
    eprintln!("suite: {} runs", runs.len());

    let execute_one = |&(i, inst, method, backend_name, seed): &(
        usize,
        &ProblemInstance,
        PipelineMethod,
        &str,
        u64,
    )|
     -> (usize, RunRecord) {
        let backend = backend_by_name(backend_name).expect("validated backend");
        let opts = PipelineOptions {
            seed,
            penalties: cfg.penalties.clone(),
            overrides: cfg.method_overrides.clone(),
        };
        (i, run_pipeline(inst, method, backend.as_ref(), &opts))
    };

    let mut indexed: Vec<(usize, RunRecord)> = match cfg.parallelism {
        Some(threads) if threads > 0 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| PipelineError::Config(e.to_string()))?;
            pool.install(|| runs.par_iter().map(execute_one).collect())
        }
        _ => runs.par_iter().map(execute_one).collect(),
    };
    indexed.sort_by_key(|(i, _)| *i);
    let records: Vec<RunRecord> = indexed.into_iter().map(|(_, r)| r).collect();

    fs::create_dir_all(&cfg.out_dir)?;
    write_results_csv(&records, &cfg.out_dir.join("results.csv"))?;
    write_results_json(&records, &cfg.out_dir.join("results.json"))?;
    let unique: Vec<&ProblemInstance> = instances.iter().map(|(i, _)| i).collect();
    write_qubits_csv(&unique, &cfg.out_dir.join("qubits.csv"))?;
    Ok(records)
}

/// Writes a file atomically (temp file in the same directory, then rename).
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), PipelineError> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Results CSV schema version, recorded in the header comment.
pub const RESULTS_SCHEMA: u32 = 1;

pub fn results_csv_string(records: &[RunRecord]) -> Result<String, PipelineError> {
    let stamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let mut out = format!("# slackfree results schema={RESULTS_SCHEMA} generated={stamp}\n");
    let mut writer = csv::Writer::from_writer(Vec::new());
    for record in records {
        writer
            .serialize(record)
            .map_err(|e| PipelineError::Config(e.to_string()))?;
    }
    if records.is_empty() {
        // header-only output still carries the schema
        writer
            .write_record([
                "instance",
                "problem",
                "method",
                "backend",
                "seed",
                "qubits_slack",
                "qubits_slackfree",
                "dual_iterations",
                "best_dual",
                "objective_raw",
                "objective_repaired",
                "feasible_raw",
                "feasible_repaired",
                "metric_kind",
                "metric_value",
                "classical_time_s",
                "solver_time_s",
                "status",
            ])
            .map_err(|e| PipelineError::Config(e.to_string()))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| PipelineError::Config(e.to_string()))?;
    out.push_str(&String::from_utf8_lossy(&bytes));
    Ok(out)
}

pub fn write_results_csv(records: &[RunRecord], path: &Path) -> Result<(), PipelineError> {
    write_atomic(path, &results_csv_string(records)?)
}

pub fn write_results_json(records: &[RunRecord], path: &Path) -> Result<(), PipelineError> {
    let json = serde_json::to_string_pretty(records)
        .map_err(|e| PipelineError::Config(e.to_string()))?;
    write_atomic(path, &json)
}

/// `qubits.csv`: per-instance slack vs slack-free variable counts.
pub fn write_qubits_csv(
    instances: &[&ProblemInstance],
    path: &Path,
) -> Result<(), PipelineError> {
    let mut out = String::from("instance,problem,n,slack,slackfree\n");
    for inst in instances {
        let (s, ns) = qubit_counts(inst.kind(), inst);
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            inst.name(),
            inst.kind(),
            inst.n(),
            s,
            ns
        ));
    }
    write_atomic(path, &out)
}

/// Convenience constructors used by tests and the CLI.
pub fn mdkp_instance(inst: MdkpInstance) -> ProblemInstance {
    ProblemInstance::Mdkp(inst)
}

pub fn mis_instance(inst: MisInstance) -> ProblemInstance {
    ProblemInstance::Mis(inst)
}

pub fn tsp_instance(inst: TspInstance) -> ProblemInstance {
    ProblemInstance::Tsp(inst)
}
