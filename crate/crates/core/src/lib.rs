//! Slack-free combinatorial optimization toolkit.
//!
//! Solves constrained combinatorial problems (TSP, MDKP, MIS) by dualizing the
//! complicating constraints with Lagrange multipliers, optimizing the
//! multipliers classically (subgradient, dual averaging, stochastic
//! subgradient, bundle, cutting plane, augmented Lagrangian), and handing the
//! resulting compact QUBO to a pluggable minimization backend. Post-processing
//! repairs infeasible outputs and computes gap / relative-solution-quality
//! metrics; the `pipeline` module orchestrates full benchmark suites.

pub mod brute;
pub mod dual;
pub mod instances;
pub mod kernels;
pub mod pipeline;
pub mod postprocess;
pub mod qubo;
pub mod relaxation;
pub mod report;
pub mod solvers;

pub use instances::{MdkpInstance, MisInstance, ProblemInstance, ProblemKind, TspInstance};
pub use qubo::{IsingModel, PenaltyConfig, Qubo};
pub use relaxation::{DualOrientation, DualSense, Multipliers, MultiplierDomain, SubproblemSolution};
pub use solvers::{QuboBackend, SolveBudget, SolveResult};
