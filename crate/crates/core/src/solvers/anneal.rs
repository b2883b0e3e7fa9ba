//! Single-flip Metropolis simulated annealing with a geometric temperature
//! schedule and independent restart chains.

use std::time::Instant;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{lex_less, SolveBudget, SolveError, SolveResult};
use crate::qubo::Qubo;

/// Best-effort QUBO minimization. Deterministic per (qubo, budget, seed):
/// chain c uses ChaCha stream c + 1 of the budget seed, and the best state
/// across chains is merged by (value, lexicographic state). The reported
/// value is re-verified with an exact evaluation.
pub fn simulated_anneal(q: &Qubo, budget: &SolveBudget) -> Result<SolveResult, SolveError> {
    if budget.sweeps == 0 || budget.restarts == 0 {
        return Err(SolveError::BadInput("sweeps and restarts must be positive".into()));
    }
    let start = Instant::now();
    let n = q.n_vars;
    if n == 0 {
        return Ok(SolveResult {
            x_best: Vec::new(),
            value: q.offset,
            states_visited: 1,
            wall_time_s: start.elapsed().as_secs_f64(),
            backend: "anneal",
        });
    }
    let (diag, adj) = q.adjacency();
    let delta = |x: &[bool], b: usize| -> f64 {
        let mut local = diag[b];
        for &(j, c) in &adj[b] {
            if x[j] {
                local += c;
            }
        }
        if x[b] {
            -local
        } else {
            local
        }
    };

    // Initial temperature from the 95th percentile of |dE| over 1000 random
    // single flips; T_min = 1e-3 T0; geometric schedule across the sweeps.
    let mut probe = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut magnitudes: Vec<f64> = (0..1000)
        .map(|_| {
            let x: Vec<bool> = (0..n).map(|_| probe.gen_bool(0.5)).collect();
            let b = probe.gen_range(0..n);
            delta(&x, b).abs()
        })
        .collect();
    magnitudes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let t0 = magnitudes[(magnitudes.len() * 95) / 100].max(1e-9);
    let t_min = 1e-3 * t0;
    let cooling = if budget.sweeps > 1 {
        (t_min / t0).powf(1.0 / (budget.sweeps - 1) as f64)
    } else {
        1.0
    };

    let mut best_x: Option<Vec<bool>> = None;
    let mut best_e = f64::INFINITY;
    let mut visited: u64 = 0;
    'chains: for chain in 0..budget.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        rng.set_stream(chain as u64 + 1);
        let mut x: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let mut e = q.evaluate(&x);
        let mut temp = t0;
        for _ in 0..budget.sweeps {
            for _ in 0..n {
                let b = rng.gen_range(0..n);
                let d = delta(&x, b);
                visited += 1;
                if d <= 0.0 || rng.gen::<f64>() < (-d / temp).exp() {
                    x[b] = !x[b];
                    e += d;
                    if e < best_e || (e == best_e && better_tie(&x, &best_x)) {
                        best_e = e;
                        best_x = Some(x.clone());
                    }
                }
            }
            temp = (temp * cooling).max(t_min);
            if let Some(cap) = budget.time_cap_s {
                if start.elapsed().as_secs_f64() > cap {
                    break 'chains;
                }
            }
        }
        // chains that never accepted a move still contribute their start state
        if e < best_e || (e == best_e && better_tie(&x, &best_x)) {
            best_e = e;
            best_x = Some(x.clone());
        }
    }

    let x_best = best_x.expect("at least one chain ran");
    let value = q.evaluate(&x_best);
    Ok(SolveResult {
        x_best,
        value,
        states_visited: visited,
        wall_time_s: start.elapsed().as_secs_f64(),
        backend: "anneal",
    })
}

fn better_tie(candidate: &[bool], best: &Option<Vec<bool>>) -> bool {
    match best {
        None => true,
        Some(b) => lex_less(candidate, b),
    }
}
