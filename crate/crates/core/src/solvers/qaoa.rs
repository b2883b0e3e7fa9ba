//! Dense statevector simulation of a QAOA-style circuit for diagonal cost
//! Hamiltonians, plus a derivative-free parameter search.

use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{lex_less, SolveError, SolveResult};
use crate::qubo::Qubo;
use crate::solvers::exact_enumerate_visit;

/// Variable cap: 2^20 amplitudes keep the state under ~20 MiB.
pub const STATEVECTOR_VAR_CAP: usize = 20;

/// One (gamma, beta) pair per layer.
pub type QaoaParams = Vec<(f64, f64)>;

/// Output of a statevector run.
#[derive(Debug, Clone, PartialEq)]
pub struct QaoaOutcome {
    pub result: SolveResult,
    /// Exact energy expectation of the final state.
    pub expectation: f64,
    /// Squared norm of the final state (1 up to float error).
    pub norm_sq: f64,
}

fn energies(q: &Qubo) -> Result<Vec<f64>, SolveError> {
    let n = q.n_vars;
    if n > STATEVECTOR_VAR_CAP {
        return Err(SolveError::Capacity {
            needed: n,
            cap: STATEVECTOR_VAR_CAP,
        });
    }
    let mut table = vec![0.0f64; 1usize << n];
    let mut mask = 0usize;
    let mut last = vec![false; n];
    exact_enumerate_visit(q, |x, e| {
        for (i, (&now, was)) in x.iter().zip(last.iter_mut()).enumerate() {
            if now != *was {
                mask ^= 1 << i;
                *was = now;
            }
        }
        table[mask] = e;
    })?;
    Ok(table)
}

/// Simulates the circuit: uniform superposition, then per layer a diagonal
/// cost phase exp(-i gamma E(x)) and a single-qubit transverse mixer
/// exp(-i beta X) on every qubit. Returns the exact expectation of the
/// final state and the best of `n_shots` seeded samples.
pub fn qaoa_statevector(
    q: &Qubo,
    params: &QaoaParams,
    n_shots: usize,
    seed: u64,
) -> Result<QaoaOutcome, SolveError> {
    if params.iter().any(|(g, b)| !g.is_finite() || !b.is_finite()) {
        return Err(SolveError::BadInput("non-finite circuit parameters".into()));
    }
    let start = Instant::now();
    let n = q.n_vars;
    let table = energies(q)?;
    let size = table.len();

    let amp0 = Complex64::new(1.0 / (size as f64).sqrt(), 0.0);
    let mut state = vec![amp0; size];
    for &(gamma, beta) in params {
        for (m, amp) in state.iter_mut().enumerate() {
            *amp *= Complex64::from_polar(1.0, -gamma * table[m]);
        }
        let (c, s) = (beta.cos(), beta.sin());
        let mix = Complex64::new(0.0, -s);
        for b in 0..n {
            let bit = 1usize << b;
            for m in 0..size {
                if m & bit == 0 {
                    let a0 = state[m];
                    let a1 = state[m | bit];
                    state[m] = a0 * c + a1 * mix;
                    state[m | bit] = a0 * mix + a1 * c;
                }
            }
        }
    }

    let mut norm_sq = 0.0;
    let mut expectation = 0.0;
    let mut probs = vec![0.0f64; size];
    for (m, amp) in state.iter().enumerate() {
        let p = amp.norm_sqr();
        probs[m] = p;
        norm_sq += p;
        expectation += p * table[m];
    }
    expectation /= norm_sq;

    // Cumulative sampling of the measurement distribution.
    let mut cdf = probs;
    for m in 1..size {
        cdf[m] += cdf[m - 1];
    }
    let total = cdf[size - 1];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_mask = 0usize;
    let mut best_e = f64::INFINITY;
    for _ in 0..n_shots.max(1) {
        let r = rng.gen::<f64>() * total;
        let m = cdf.partition_point(|&c| c < r).min(size - 1);
        let e = table[m];
        if e < best_e || (e == best_e && mask_lex_less(m, best_mask, n)) {
            best_e = e;
            best_mask = m;
        }
    }
    let x_best: Vec<bool> = (0..n).map(|i| best_mask >> i & 1 == 1).collect();
    let value = q.evaluate(&x_best);
    Ok(QaoaOutcome {
        result: SolveResult {
            x_best,
            value,
            states_visited: n_shots.max(1) as u64,
            wall_time_s: start.elapsed().as_secs_f64(),
            backend: "qaoa",
        },
        expectation,
        norm_sq,
    })
}

fn mask_lex_less(a: usize, b: usize, n: usize) -> bool {
    let xa: Vec<bool> = (0..n).map(|i| a >> i & 1 == 1).collect();
    let xb: Vec<bool> = (0..n).map(|i| b >> i & 1 == 1).collect();
    lex_less(&xa, &xb)
}

/// Expectation of the circuit output for given parameters (no sampling).
pub fn qaoa_expectation(q: &Qubo, params: &QaoaParams) -> Result<f64, SolveError> {
    qaoa_statevector(q, params, 1, 0).map(|o| o.expectation)
}

/// Derivative-free (gamma, beta) search: a coarse grid seeded at the origin
/// followed by shrinking compass refinement, minimizing the expectation.
/// Deterministic; the origin is always evaluated first, so the result is
/// never worse than the p = 0 mean energy.
pub fn optimize_qaoa_params(
    q: &Qubo,
    layers: usize,
    max_evals: usize,
) -> Result<(QaoaParams, f64), SolveError> {
    if layers == 0 {
        return Err(SolveError::BadInput("at least one layer required".into()));
    }
    let budget = max_evals.max(1);
    struct Counter {
        evals: usize,
        budget: usize,
    }
    let mut counter = Counter { evals: 0, budget };
    let mut eval = move |params: &QaoaParams,
                         q: &Qubo|
          -> Result<Option<f64>, SolveError> {
        if counter.evals >= counter.budget {
            return Ok(None);
        }
        counter.evals += 1;
        qaoa_expectation(q, params).map(Some)
    };

    let mut best: QaoaParams = vec![(0.0, 0.0); layers];
    let mut best_val = eval(&best, q)?.expect("first evaluation is within budget");

    // Coarse grid on the first layer only; refinement handles the rest.
    let mut exhausted = false;
    let grid = [0.1, 0.3, 0.6, 1.0, 1.5];
    'grid: for &g in &grid {
        for &b in &grid {
            let mut cand = vec![(0.0, 0.0); layers];
            cand[0] = (g, b);
            match eval(&cand, q)? {
                Some(v) => {
                    if v < best_val {
                        best_val = v;
                        best = cand;
                    }
                }
                None => {
                    exhausted = true;
                    break 'grid;
                }
            }
        }
    }

    // Compass search over all 2 * layers coordinates with shrinking step.
    let mut step = 0.4;
    while step > 1e-3 && !exhausted {
        let mut improved = false;
        'coords: for layer in 0..layers {
            for coord in 0..2 {
                for dir in [1.0, -1.0] {
                    let mut cand = best.clone();
                    if coord == 0 {
                        cand[layer].0 += dir * step;
                    } else {
                        cand[layer].1 += dir * step;
                    }
                    match eval(&cand, q)? {
                        Some(v) => {
                            if v < best_val - 1e-12 {
                                best_val = v;
                                best = cand;
                                improved = true;
                            }
                        }
                        None => {
                            exhausted = true;
                            break 'coords;
                        }
                    }
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    Ok((best, best_val))
}
