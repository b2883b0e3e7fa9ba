//! Feasibility checking, repair heuristics and solution-quality metrics.
//!
//! Repairs are deterministic: every tie is broken explicitly so regression
//! tests hold across platforms. Each repair always returns a feasible
//! solution (the empty selection / any Hamiltonian cycle is feasible).

use std::collections::BTreeSet;
use std::fmt;

use crate::instances::{MdkpInstance, MisInstance, TspInstance};

/// Outcome of an exact constraint check.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// (constraint id, violation magnitude) pairs; empty iff feasible.
    /// TSP uses node ids for degree violations and id = n for a
    /// connectivity (subtour) violation.
    pub violations: Vec<(usize, f64)>,
    /// Set by the pipeline after a repair pass produced this report.
    pub repaired: bool,
}

impl FeasibilityReport {
    fn from_violations(violations: Vec<(usize, f64)>) -> FeasibilityReport {
        FeasibilityReport {
            feasible: violations.is_empty(),
            violations,
            repaired: false,
        }
    }
}

/// Checks all MDKP capacity constraints.
pub fn check_feasibility_mdkp(inst: &MdkpInstance, x: &[bool]) -> FeasibilityReport {
    assert_eq!(x.len(), inst.n, "selection length mismatch");
    let violations = (0..inst.m)
        .filter_map(|j| {
            let over = inst.usage(j, x) - inst.capacities[j];
            (over > 0).then_some((j, over as f64))
        })
        .collect();
    FeasibilityReport::from_violations(violations)
}

/// Checks every edge constraint x_i + x_j <= 1.
pub fn check_feasibility_mis(inst: &MisInstance, x: &[bool]) -> FeasibilityReport {
    assert_eq!(x.len(), inst.n, "selection length mismatch");
    let violations = inst
        .edges
        .iter()
        .enumerate()
        .filter_map(|(e, &(i, j))| (x[i] && x[j]).then_some((e, 1.0)))
        .collect();
    FeasibilityReport::from_violations(violations)
}

/// Checks that an edge set is a single Hamiltonian cycle: every node has
/// degree 2 and the selected edges form one connected component.
pub fn check_feasibility_tsp(inst: &TspInstance, edges: &[(usize, usize)]) -> FeasibilityReport {
    let n = inst.n;
    let mut deg = vec![0usize; n];
    for &(i, j) in edges {
        assert!(i < n && j < n, "edge endpoint out of range");
        deg[i] += 1;
        deg[j] += 1;
    }
    let mut violations: Vec<(usize, f64)> = deg
        .iter()
        .enumerate()
        .filter_map(|(i, &d)| (d != 2).then_some((i, (d as f64 - 2.0).abs())))
        .collect();
    if violations.is_empty() {
        // All degrees are 2, so the edges partition into disjoint cycles;
        // more than one cycle is a subtour violation.
        let components = count_components(n, edges);
        if components > 1 {
            violations.push((n, (components - 1) as f64));
        }
    }
    FeasibilityReport::from_violations(violations)
}

fn count_components(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(i, j) in edges {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
        }
    }
    (0..n)
        .filter(|&i| find(&mut parent, i) == i)
        .count()
}

/// Repairs an MDKP selection: drop the least efficient selected item until
/// feasible (efficiency p_i / sum_j w_ji / c_j), then greedily re-add items
/// by descending efficiency while they fit.
pub fn repair_mdkp(inst: &MdkpInstance, x: &[bool]) -> Vec<bool> {
    assert_eq!(x.len(), inst.n);
    let mut x = x.to_vec();
    let efficiency: Vec<f64> = (0..inst.n)
        .map(|i| {
            let load: f64 = (0..inst.m)
                .map(|j| inst.weights[j][i] as f64 / inst.capacities[j] as f64)
                .sum();
            if load == 0.0 {
                f64::INFINITY
            } else {
                inst.profits[i] as f64 / load
            }
        })
        .collect();

    let mut usage: Vec<i64> = (0..inst.m).map(|j| inst.usage(j, &x)).collect();
    while (0..inst.m).any(|j| usage[j] > inst.capacities[j]) {
        // A violated constraint has a positive-weight selected item, and
        // items with no resource use have infinite efficiency, so a finite
        // drop candidate always exists.
        let drop = (0..inst.n)
            .filter(|&i| x[i] && efficiency[i].is_finite())
            .min_by(|&a, &b| {
                efficiency[a]
                    .partial_cmp(&efficiency[b])
                    .unwrap()
                    .then(a.cmp(&b))
            })
            .expect("violated constraint without droppable item");
        x[drop] = false;
        for j in 0..inst.m {
            usage[j] -= inst.weights[j][drop];
        }
    }

    let mut order: Vec<usize> = (0..inst.n).collect();
    order.sort_by(|&a, &b| {
        efficiency[b]
            .partial_cmp(&efficiency[a])
            .unwrap()
            .then(a.cmp(&b))
    });
    for i in order {
        if x[i] {
            continue;
        }
        let fits = (0..inst.m).all(|j| usage[j] + inst.weights[j][i] <= inst.capacities[j]);
        if fits {
            x[i] = true;
            for j in 0..inst.m {
                usage[j] += inst.weights[j][i];
            }
        }
    }
    x
}

/// Repairs a vertex selection into a maximal independent set: while a
/// violated edge exists, unselect the endpoint with the larger selected
/// neighborhood (tie: lower index), then greedily add free vertices in
/// ascending index order.
pub fn repair_mis(inst: &MisInstance, x: &[bool]) -> Vec<bool> {
    assert_eq!(x.len(), inst.n);
    let mut x = x.to_vec();
    let adj = inst.adjacency();
    let selected_degree = |x: &[bool], v: usize| adj[v].iter().filter(|&&u| x[u]).count();
    loop {
        let Some(&(i, j)) = inst.edges.iter().find(|&&(i, j)| x[i] && x[j]) else {
            break;
        };
        let (di, dj) = (selected_degree(&x, i), selected_degree(&x, j));
        // larger selected degree goes; on a tie the lower index goes
        let out = if di > dj {
            i
        } else if dj > di {
            j
        } else {
            i.min(j)
        };
        x[out] = false;
    }
    for v in 0..inst.n {
        if !x[v] && adj[v].iter().all(|&u| !x[u]) {
            x[v] = true;
        }
    }
    x
}

/// Repairs an arbitrary edge subset into a Hamiltonian cycle, returned as a
/// city sequence starting at city 0.
///
/// Stage 1 fixes degrees (drop costliest excess edges, connect under-degree
/// nodes by cheapest valid edges), stage 2 patches subtours by repeatedly
/// merging the two cycles with the cheapest 2-exchange reconnection, and
/// stage 3 runs one full 2-opt improvement pass.
pub fn repair_tsp(inst: &TspInstance, edges: &[(usize, usize)]) -> Vec<usize> {
    let n = inst.n;
    let mut selected: BTreeSet<(usize, usize)> = edges
        .iter()
        .map(|&(i, j)| (i.min(j), i.max(j)))
        .filter(|&(i, j)| i != j && j < n)
        .collect();
    let mut deg = vec![0usize; n];
    for &(i, j) in &selected {
        deg[i] += 1;
        deg[j] += 1;
    }

    // Stage 1a: drop costliest excess edges at over-degree nodes.
    for u in 0..n {
        while deg[u] > 2 {
            let worst = selected
                .iter()
                .filter(|&&(i, j)| i == u || j == u)
                .max_by(|&&a, &&b| {
                    let ca = inst.dist[a.0][a.1];
                    let cb = inst.dist[b.0][b.1];
                    ca.cmp(&cb).then(a.cmp(&b))
                })
                .copied()
                .expect("over-degree node without incident edge");
            selected.remove(&worst);
            deg[worst.0] -= 1;
            deg[worst.1] -= 1;
        }
    }

    // Stage 1b: connect under-degree nodes with the cheapest valid edge.
    // Cross-component additions are preferred; closing a component into a
    // cycle is allowed only when nothing else is available (stage 2 merges
    // cycles later). If a node is stuck because everything else is already
    // a cycle, the costliest edge of another component is opened first.
    loop {
        let Some(u) = (0..n).find(|&u| deg[u] < 2) else {
            break;
        };
        let comp = components_of(n, &selected);
        let candidate = (0..n)
            .filter(|&v| v != u && deg[v] < 2 && !selected.contains(&key(u, v)))
            .filter(|&v| comp[v] != comp[u])
            .min_by(|&a, &b| inst.dist[u][a].cmp(&inst.dist[u][b]).then(a.cmp(&b)));
        let candidate = candidate.or_else(|| {
            // same-component closure (other endpoint of u's path)
            (0..n)
                .filter(|&v| v != u && deg[v] < 2 && !selected.contains(&key(u, v)))
                .min_by(|&a, &b| inst.dist[u][a].cmp(&inst.dist[u][b]).then(a.cmp(&b)))
        });
        match candidate {
            Some(v) => {
                selected.insert(key(u, v));
                deg[u] += 1;
                deg[v] += 1;
            }
            None => {
                // Everything else is saturated: open the costliest edge not
                // incident to u so a partner appears.
                let worst = selected
                    .iter()
                    .filter(|&&(i, j)| i != u && j != u)
                    .max_by(|&&a, &&b| {
                        inst.dist[a.0][a.1].cmp(&inst.dist[b.0][b.1]).then(a.cmp(&b))
                    })
                    .copied()
                    .expect("stuck repair with no removable edge");
                selected.remove(&worst);
                deg[worst.0] -= 1;
                deg[worst.1] -= 1;
            }
        }
    }

    // Stage 2: merge cycles by the cheapest 2-exchange until one remains.
    loop {
        let comp = components_of(n, &selected);
        let ncomp = 1 + comp.iter().copied().max().unwrap_or(0);
        if ncomp <= 1 {
            break;
        }
        let edge_list: Vec<(usize, usize)> = selected.iter().copied().collect();
        let mut best: Option<(i64, (usize, usize), (usize, usize), [(usize, usize); 2])> = None;
        for (ei, &(a, b)) in edge_list.iter().enumerate() {
            for &(c, d) in edge_list.iter().skip(ei + 1) {
                if comp[a] == comp[c] {
                    continue;
                }
                let removed = inst.dist[a][b] + inst.dist[c][d];
                for (p, q) in [((a, c), (b, d)), ((a, d), (b, c))] {
                    let delta = inst.dist[p.0][p.1] + inst.dist[q.0][q.1] - removed;
                    let new_edges = [key(p.0, p.1), key(q.0, q.1)];
                    let cand = (delta, (a, b), (c, d), new_edges);
                    let better = match &best {
                        None => true,
                        Some(b0) => (cand.0, cand.3) < (b0.0, b0.3),
                    };
                    if better {
                        best = Some(cand);
                    }
                }
            }
        }
        let (_, rm1, rm2, add) = best.expect("multiple components but no merge candidate");
        selected.remove(&rm1);
        selected.remove(&rm2);
        selected.insert(add[0]);
        selected.insert(add[1]);
    }

    // Extract the tour starting at city 0.
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in &selected {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut tour = Vec::with_capacity(n);
    let mut prev = usize::MAX;
    let mut at = 0usize;
    for _ in 0..n {
        tour.push(at);
        let next = adj[at]
            .iter()
            .copied()
            .find(|&v| v != prev)
            .expect("degree-2 node");
        prev = at;
        at = next;
    }
    debug_assert_eq!(at, 0, "tour must close");

    // Stage 3: one full 2-opt improvement pass (first improvement, in order).
    two_opt_pass(inst, &mut tour);
    tour
}

fn key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

fn components_of(n: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(i, j) in edges {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for i in 0..n {
        let r = find(&mut parent, i);
        if label[r] == usize::MAX {
            label[r] = next;
            next += 1;
        }
        label[i] = label[r];
    }
    label
}

fn two_opt_pass(inst: &TspInstance, tour: &mut [usize]) {
    let n = tour.len();
    for i in 1..n - 1 {
        for j in (i + 1)..n {
            let (a, b) = (tour[i - 1], tour[i]);
            let (c, d) = (tour[j], tour[(j + 1) % n]);
            if a == c || b == d {
                continue;
            }
            let delta =
                inst.dist[a][c] + inst.dist[b][d] - inst.dist[a][b] - inst.dist[c][d];
            if delta < 0 {
                tour[i..=j].reverse();
            }
        }
    }
}

/// Solution-quality metrics for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Metrics {
    pub objective: f64,
    pub best_known: Option<f64>,
    pub opt_gap_pct: Option<f64>,
    pub rsq_pct: Option<f64>,
    pub qubits_slack: usize,
    pub qubits_slackfree: usize,
}

/// Error for metrics that divide by the best-known objective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndefinedMetric;

impl fmt::Display for UndefinedMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "metric undefined: best-known objective is zero")
    }
}

impl std::error::Error for UndefinedMetric {}

/// Optimality gap (best - obtained) / best * 100. Negative gaps (obtained
/// better than best-known) are reported as-is.
pub fn opt_gap_pct(best: f64, obtained: f64) -> Result<f64, UndefinedMetric> {
    if best == 0.0 {
        return Err(UndefinedMetric);
    }
    Ok((best - obtained) / best * 100.0)
}

/// Relative solution quality obtained / best * 100.
pub fn rsq_pct(obtained: f64, best: f64) -> Result<f64, UndefinedMetric> {
    if best == 0.0 {
        return Err(UndefinedMetric);
    }
    Ok(obtained / best * 100.0)
}

/// Gap convention for minimization problems (TSP): (obtained - best) / best
/// * 100, so suboptimal tours report nonnegative gaps.
pub fn minimization_gap_pct(best: f64, obtained: f64) -> Result<f64, UndefinedMetric> {
    if best == 0.0 {
        return Err(UndefinedMetric);
    }
    Ok((obtained - best) / best * 100.0)
}
