//! QUBO construction: slack-based and slack-free formulations for all three
//! problem families, qubit counting, Ising conversion and exact evaluation.
//!
//! A [`Qubo`] is always a minimization problem. Coefficients live in an
//! upper-triangular map keyed by (i, j) with i <= j; diagonal entries are
//! linear terms since x^2 = x for binary x.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::instances::{MdkpInstance, MisInstance, ProblemKind, TspInstance};
use crate::relaxation::{Multipliers, RelaxError};

/// What a QUBO variable stands for in the original problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VarRole {
    /// Knapsack item or MIS vertex i.
    Item(usize),
    /// TSP edge (i, j), i < j.
    Edge(usize, usize),
    /// TSP position encoding: city at tour position.
    Position { city: usize, pos: usize },
    /// Binary slack bit k of constraint j.
    Slack { constraint: usize, bit: usize },
}

/// Upper-triangular QUBO with a constant offset; minimization sense.
#[derive(Debug, Clone, PartialEq)]
pub struct Qubo {
    pub n_vars: usize,
    /// (i, j) -> coefficient with i <= j; (i, i) entries are linear terms.
    pub coeffs: BTreeMap<(usize, usize), f64>,
    pub offset: f64,
    /// Meaning of each variable index.
    pub var_map: Vec<VarRole>,
}

impl Qubo {
    pub fn new(n_vars: usize, var_map: Vec<VarRole>) -> Qubo {
        assert_eq!(var_map.len(), n_vars);
        Qubo {
            n_vars,
            coeffs: BTreeMap::new(),
            offset: 0.0,
            var_map,
        }
    }

    /// Accumulates a coefficient, normalizing the key to i <= j.
    pub fn add(&mut self, i: usize, j: usize, value: f64) {
        if value == 0.0 {
            return;
        }
        let key = (i.min(j), i.max(j));
        assert!(key.1 < self.n_vars, "variable index out of range");
        *self.coeffs.entry(key).or_insert(0.0) += value;
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        self.coeffs
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(0.0)
    }

    /// Evaluates x^T Q x + offset exactly.
    pub fn evaluate(&self, x: &[bool]) -> f64 {
        assert_eq!(x.len(), self.n_vars, "assignment length mismatch");
        let mut total = self.offset;
        for (&(i, j), &q) in &self.coeffs {
            if x[i] && x[j] {
                total += q;
            }
        }
        total
    }

    /// Adjacency view: for each variable, the (other, coefficient) pairs of
    /// its off-diagonal terms plus its diagonal term. Used by backends for
    /// O(degree) single-flip energy deltas.
    pub fn adjacency(&self) -> (Vec<f64>, Vec<Vec<(usize, f64)>>) {
        let mut diag = vec![0.0; self.n_vars];
        let mut adj = vec![Vec::new(); self.n_vars];
        for (&(i, j), &q) in &self.coeffs {
            if i == j {
                diag[i] = q;
            } else {
                adj[i].push((j, q));
                adj[j].push((i, q));
            }
        }
        (diag, adj)
    }

    /// Serializes to the JSON interchange document.
    pub fn to_json(&self) -> String {
        let doc = QuboDocument {
            n_vars: self.n_vars,
            terms: self
                .coeffs
                .iter()
                .map(|(&(i, j), &q)| (i, j, q))
                .collect(),
            offset: self.offset,
            var_map: self.var_map.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("qubo serialization")
    }

    /// Parses the JSON interchange document.
    pub fn from_json(text: &str) -> Result<Qubo, serde_json::Error> {
        let doc: QuboDocument = serde_json::from_str(text)?;
        let mut q = Qubo::new(doc.n_vars, doc.var_map);
        q.offset = doc.offset;
        for (i, j, v) in doc.terms {
            q.add(i, j, v);
        }
        Ok(q)
    }
}

#[derive(Serialize, Deserialize)]
struct QuboDocument {
    n_vars: usize,
    terms: Vec<(usize, usize, f64)>,
    offset: f64,
    var_map: Vec<VarRole>,
}

/// Ising model equivalent to a QUBO under x_i = (1 - z_i) / 2.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingModel {
    pub h: Vec<f64>,
    pub j: BTreeMap<(usize, usize), f64>,
    pub offset: f64,
}

impl IsingModel {
    /// Evaluates sum h_i z_i + sum J_ij z_i z_j + offset for z in {-1, +1}^n.
    pub fn evaluate(&self, z: &[i8]) -> f64 {
        let mut total = self.offset;
        for (i, &hi) in self.h.iter().enumerate() {
            total += hi * z[i] as f64;
        }
        for (&(i, j), &jij) in &self.j {
            total += jij * (z[i] as f64) * (z[j] as f64);
        }
        total
    }
}

/// Converts a QUBO to Ising form via x_i = (1 - z_i) / 2; the value identity
/// `qubo(x) = ising(z)` holds for every assignment.
pub fn to_ising(q: &Qubo) -> IsingModel {
    let mut h = vec![0.0; q.n_vars];
    let mut j_map: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut offset = q.offset;
    for (&(i, j), &c) in &q.coeffs {
        if i == j {
            // c x = c (1 - z) / 2
            h[i] += -c / 2.0;
            offset += c / 2.0;
        } else {
            // c x_i x_j = c (1 - z_i)(1 - z_j) / 4
            offset += c / 4.0;
            h[i] += -c / 4.0;
            h[j] += -c / 4.0;
            *j_map.entry((i, j)).or_insert(0.0) += c / 4.0;
        }
    }
    IsingModel {
        h,
        j: j_map,
        offset,
    }
}

/// Penalty coefficients for the QUBO builders. `None` fields resolve to
/// instance-dependent defaults inside each builder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct PenaltyConfig {
    /// Quadratic penalty P (MDKP slack builder) / one-hot weight A (TSP).
    pub quadratic: Option<f64>,
    /// Unbalanced-penalty linear coefficient.
    pub unbalanced_linear: Option<f64>,
    /// Unbalanced-penalty quadratic coefficient.
    pub unbalanced_quadratic: Option<f64>,
    /// TSP slack-free degree penalty.
    pub degree: Option<f64>,
    /// MIS conflict-product weight.
    pub conflict: Option<f64>,
}

/// Number of binary slack bits for an integer capacity c >= 1:
/// ceil(log2(c + 1)), so that sum 2^k s_k spans at least [0, c].
pub fn slack_bits(capacity: i64) -> Result<u32, RelaxError> {
    if capacity < 1 {
        return Err(RelaxError::TooSmall(format!(
            "slack expansion needs capacity >= 1, got {capacity}"
        )));
    }
    let mut bits = 0u32;
    while (1i64 << bits) < capacity + 1 {
        bits += 1;
    }
    Ok(bits)
}

/// Slack-based MDKP QUBO: items plus binary-expanded slack per constraint,
/// penalized by P (sum_i w_ji x_i + s_j - c_j)^2. Default P = 1 + sum p_i.
pub fn build_mdkp_slack_qubo(inst: &MdkpInstance, pc: &PenaltyConfig) -> Qubo {
    let penalty = pc
        .quadratic
        .unwrap_or_else(|| 1.0 + inst.profits.iter().sum::<i64>() as f64);
    let mut var_map: Vec<VarRole> = (0..inst.n).map(VarRole::Item).collect();
    let mut slack_start = Vec::with_capacity(inst.m);
    for (j, &c) in inst.capacities.iter().enumerate() {
        slack_start.push(var_map.len());
        let bits = slack_bits(c).expect("validated positive capacity");
        for k in 0..bits {
            var_map.push(VarRole::Slack {
                constraint: j,
                bit: k as usize,
            });
        }
    }
    let n_vars = var_map.len();
    let mut q = Qubo::new(n_vars, var_map);

    for i in 0..inst.n {
        q.add(i, i, -(inst.profits[i] as f64));
    }
    for j in 0..inst.m {
        // residual L = sum_t a_t y_t - c_j over items and slack bits
        let mut terms: Vec<(usize, f64)> = (0..inst.n)
            .map(|i| (i, inst.weights[j][i] as f64))
            .filter(|&(_, w)| w != 0.0)
            .collect();
        let bits = slack_bits(inst.capacities[j]).unwrap();
        for k in 0..bits {
            terms.push((slack_start[j] + k as usize, (1i64 << k) as f64));
        }
        let c = inst.capacities[j] as f64;
        add_squared_penalty(&mut q, &terms, -c, penalty);
    }
    q
}

/// Expands penalty * (sum a_t y_t + constant)^2 into the QUBO.
pub(crate) fn add_squared_penalty(q: &mut Qubo, terms: &[(usize, f64)], constant: f64, penalty: f64) {
    for (idx, &(t, a)) in terms.iter().enumerate() {
        q.add(t, t, penalty * (a * a + 2.0 * a * constant));
        for &(u, b) in terms.iter().skip(idx + 1) {
            q.add(t, u, penalty * 2.0 * a * b);
        }
    }
    q.offset += penalty * constant * constant;
}

/// Slack-free MDKP QUBO at fixed multipliers: minimize
/// -(sum_i [p_i - sum_j lambda_j w_ji] x_i + sum_j lambda_j c_j).
/// Purely diagonal with n variables.
pub fn build_mdkp_slackfree_qubo(
    inst: &MdkpInstance,
    lambda: &Multipliers,
) -> Result<Qubo, RelaxError> {
    if lambda.len() != inst.m {
        return Err(RelaxError::DimensionMismatch {
            expected: inst.m,
            got: lambda.len(),
        });
    }
    if lambda.values.iter().any(|&v| v < 0.0) {
        return Err(RelaxError::NegativeMultiplier);
    }
    let lam = &lambda.values;
    let var_map: Vec<VarRole> = (0..inst.n).map(VarRole::Item).collect();
    let mut q = Qubo::new(inst.n, var_map);
    for i in 0..inst.n {
        let reduced = inst.profits[i] as f64
            - (0..inst.m).map(|j| lam[j] * inst.weights[j][i] as f64).sum::<f64>();
        q.add(i, i, -reduced);
    }
    q.offset = -(0..inst.m)
        .map(|j| lam[j] * inst.capacities[j] as f64)
        .sum::<f64>();
    Ok(q)
}

/// Unbalanced-penalty MDKP QUBO: minimize
/// -sum p_i x_i + sum_j [-l1 h_j(x) + l2 h_j(x)^2] with
/// h_j(x) = sum_i w_ji x_i - c_j. Keeps n variables. Defaults l1 = l2 = 1.
pub fn build_mdkp_unbalanced_qubo(inst: &MdkpInstance, pc: &PenaltyConfig) -> Qubo {
    let l1 = pc.unbalanced_linear.unwrap_or(1.0);
    let l2 = pc.unbalanced_quadratic.unwrap_or(1.0);
    let var_map: Vec<VarRole> = (0..inst.n).map(VarRole::Item).collect();
    let mut q = Qubo::new(inst.n, var_map);
    for i in 0..inst.n {
        q.add(i, i, -(inst.profits[i] as f64));
    }
    for j in 0..inst.m {
        let c = inst.capacities[j] as f64;
        let terms: Vec<(usize, f64)> = (0..inst.n)
            .map(|i| (i, inst.weights[j][i] as f64))
            .filter(|&(_, w)| w != 0.0)
            .collect();
        // -l1 h = -l1 (sum w x - c)
        for &(i, w) in &terms {
            q.add(i, i, -l1 * w);
        }
        q.offset += l1 * c;
        // +l2 h^2
        add_squared_penalty(&mut q, &terms, -c, l2);
    }
    q
}

/// Slack-based TSP QUBO in the position encoding: n^2 variables x_{city,pos},
/// tour cost plus one-hot penalties A per row and column.
/// Default A = 1 + n * max c_ij.
pub fn build_tsp_slack_qubo(inst: &TspInstance, pc: &PenaltyConfig) -> Qubo {
    let n = inst.n;
    let a = pc
        .quadratic
        .unwrap_or_else(|| 1.0 + (n as f64) * inst.max_dist() as f64);
    let mut var_map = Vec::with_capacity(n * n);
    for city in 0..n {
        for pos in 0..n {
            var_map.push(VarRole::Position { city, pos });
        }
    }
    let idx = |city: usize, pos: usize| city * n + pos;
    let mut q = Qubo::new(n * n, var_map);

    // Tour cost: consecutive positions p, p+1 occupied by cities i, j.
    for p in 0..n {
        let p_next = (p + 1) % n;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    q.add(idx(i, p), idx(j, p_next), inst.dist[i][j] as f64);
                }
            }
        }
    }
    // Each city appears exactly once.
    for city in 0..n {
        let terms: Vec<(usize, f64)> = (0..n).map(|p| (idx(city, p), 1.0)).collect();
        add_squared_penalty(&mut q, &terms, -1.0, a);
    }
    // Each position holds exactly one city.
    for pos in 0..n {
        let terms: Vec<(usize, f64)> = (0..n).map(|city| (idx(city, pos), 1.0)).collect();
        add_squared_penalty(&mut q, &terms, -1.0, a);
    }
    q
}

/// Slack-free TSP QUBO over n(n-1)/2 edge variables with Held-Karp modified
/// costs and a quadratic degree-2 penalty:
/// sum (c_ij - lambda_i - lambda_j) x_ij + 2 sum lambda_i
/// + rho_deg * sum_i (deg_i(x) - 2)^2.
/// Default rho_deg = 1 + 2 max |c~_ij|.
pub fn build_tsp_slackfree_qubo(
    inst: &TspInstance,
    lambda: &Multipliers,
    pc: &PenaltyConfig,
) -> Result<Qubo, RelaxError> {
    let n = inst.n;
    if lambda.len() != n {
        return Err(RelaxError::DimensionMismatch {
            expected: n,
            got: lambda.len(),
        });
    }
    let lam = &lambda.values;
    let mut var_map = Vec::with_capacity(n * (n - 1) / 2);
    let mut edge_index = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edge_index.insert((i, j), var_map.len());
            var_map.push(VarRole::Edge(i, j));
        }
    }
    let modified = |i: usize, j: usize| inst.dist[i][j] as f64 - lam[i] - lam[j];
    let max_mod = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .map(|(i, j)| modified(i, j).abs())
        .fold(0.0f64, f64::max);
    let rho = pc.degree.unwrap_or(1.0 + 2.0 * max_mod);

    let mut q = Qubo::new(var_map.len(), var_map);
    for (&(i, j), &e) in &edge_index {
        q.add(e, e, modified(i, j));
    }
    q.offset += 2.0 * lam.iter().sum::<f64>();
    // Degree penalty per node: rho (sum_{e at i} x_e - 2)^2.
    for i in 0..n {
        let terms: Vec<(usize, f64)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| (edge_index[&(i.min(j), i.max(j))], 1.0))
            .collect();
        add_squared_penalty(&mut q, &terms, -2.0, rho);
    }
    Ok(q)
}

/// MIS QUBO over n vertex variables.
///
/// Without multipliers (the slack/baseline variant): minimize
/// -sum x_i + P sum_{(i,j) in E} x_i x_j with default P = 2.
/// With multipliers (slack-free): minimize
/// -sum_i (1 - sum_{e at i} lambda_e) x_i - sum_e lambda_e
/// + rho_conflict sum_{(i,j) in E} x_i x_j with default rho_conflict = 1.
pub fn build_mis_qubo(
    inst: &MisInstance,
    lambda: Option<&Multipliers>,
    pc: &PenaltyConfig,
) -> Result<Qubo, RelaxError> {
    let var_map: Vec<VarRole> = (0..inst.n).map(VarRole::Item).collect();
    let mut q = Qubo::new(inst.n, var_map);
    match lambda {
        None => {
            let p = pc.conflict.unwrap_or(2.0);
            for i in 0..inst.n {
                q.add(i, i, -1.0);
            }
            for &(i, j) in &inst.edges {
                q.add(i, j, p);
            }
        }
        Some(lambda) => {
            if lambda.len() != inst.edges.len() {
                return Err(RelaxError::DimensionMismatch {
                    expected: inst.edges.len(),
                    got: lambda.len(),
                });
            }
            if lambda.values.iter().any(|&v| v < 0.0) {
                return Err(RelaxError::NegativeMultiplier);
            }
            let lam = &lambda.values;
            let rho = pc.conflict.unwrap_or(1.0);
            let mut incident = vec![0.0f64; inst.n];
            for (e, &(i, j)) in inst.edges.iter().enumerate() {
                incident[i] += lam[e];
                incident[j] += lam[e];
            }
            for i in 0..inst.n {
                q.add(i, i, -(1.0 - incident[i]));
            }
            q.offset = -lam.iter().sum::<f64>();
            for &(i, j) in &inst.edges {
                q.add(i, j, rho);
            }
        }
    }
    Ok(q)
}

/// Qubit counts (slack, slack-free) per problem family:
/// TSP (n^2, n(n-1)/2); MDKP (n + sum slack_bits(c_j), n); MIS (n, n).
pub fn qubit_counts(kind: ProblemKind, inst: &crate::instances::ProblemInstance) -> (usize, usize) {
    use crate::instances::ProblemInstance as P;
    match (kind, inst) {
        (ProblemKind::Tsp, P::Tsp(t)) => (t.n * t.n, t.n * (t.n - 1) / 2),
        (ProblemKind::Mdkp, P::Mdkp(m)) => {
            let slack: u32 = m
                .capacities
                .iter()
                .map(|&c| slack_bits(c).expect("positive capacity"))
                .sum();
            (m.n + slack as usize, m.n)
        }
        (ProblemKind::Mis, P::Mis(g)) => (g.n, g.n),
        _ => panic!("problem kind does not match instance"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{generate_tsp, MdkpInstance, MisInstance, ProblemInstance};
    use crate::relaxation::MultiplierDomain;

    fn all_assignments(n: usize) -> impl Iterator<Item = Vec<bool>> {
        (0..(1u64 << n)).map(move |mask| (0..n).map(|i| mask >> i & 1 == 1).collect())
    }

    #[test]
    fn slack_bits_examples() {
        assert_eq!(slack_bits(1).unwrap(), 1);
        assert_eq!(slack_bits(3).unwrap(), 2);
        assert_eq!(slack_bits(7).unwrap(), 3);
        assert_eq!(slack_bits(8).unwrap(), 4);
        assert!(slack_bits(0).is_err());
    }

    #[test]
    fn slack_bits_matches_naive_doubling() {
        for c in 1..2000i64 {
            let mut b = 0u32;
            let mut span = 1i64; // 2^b
            while span < c + 1 {
                span *= 2;
                b += 1;
            }
            assert_eq!(slack_bits(c).unwrap(), b, "c = {c}");
        }
    }

    fn tiny_mdkp() -> MdkpInstance {
        MdkpInstance::new("t", vec![1, 1], vec![vec![1, 1]], vec![3], None).unwrap()
    }

    #[test]
    fn mdkp_slack_qubo_var_count_and_tight_penalty() {
        let inst = tiny_mdkp();
        let q = build_mdkp_slack_qubo(&inst, &PenaltyConfig::default());
        assert_eq!(q.n_vars, 4); // 2 items + slack_bits(3) = 2
        assert_eq!(
            q.var_map[2],
            VarRole::Slack {
                constraint: 0,
                bit: 0
            }
        );
        // Feasible tight assignment: x = (1, 1), usage 2, slack s = 1 -> bits (1, 0).
        let x = vec![true, true, true, false];
        // Penalty contributes 0, so energy is exactly -(profit).
        assert_eq!(q.evaluate(&x), -2.0);
    }

    #[test]
    fn mdkp_slack_qubo_minimizer_is_best_feasible() {
        let inst = tiny_mdkp();
        let q = build_mdkp_slack_qubo(&inst, &PenaltyConfig::default());
        let best = all_assignments(q.n_vars)
            .map(|x| q.evaluate(&x))
            .fold(f64::INFINITY, f64::min);
        // Optimal feasible profit is 2 (both items fit).
        assert_eq!(best, -2.0);
    }

    #[test]
    fn mdkp_slack_penalty_separates_infeasible_from_feasible() {
        // P > sum p: every infeasible item assignment (for every slack
        // choice) costs strictly more than the best feasible energy.
        let inst =
            MdkpInstance::new("s", vec![8, 7, 5], vec![vec![4, 3, 2]], vec![6], None).unwrap();
        let q = build_mdkp_slack_qubo(&inst, &PenaltyConfig::default());
        assert!(q.n_vars <= 16);
        let mut best_feasible = f64::INFINITY;
        let mut worst_needed = f64::INFINITY;
        for x in all_assignments(q.n_vars) {
            let items: Vec<bool> = x[..inst.n].to_vec();
            let e = q.evaluate(&x);
            if inst.is_feasible(&items) {
                best_feasible = best_feasible.min(e);
            } else {
                worst_needed = worst_needed.min(e);
            }
        }
        assert!(best_feasible < worst_needed);
    }

    #[test]
    fn mdkp_slackfree_matches_hand_expansion() {
        let inst =
            MdkpInstance::new("k3", vec![10, 6, 4], vec![vec![5, 4, 3]], vec![7], None).unwrap();
        let lam = Multipliers::new(vec![1.5], MultiplierDomain::NonNegative).unwrap();
        let q = build_mdkp_slackfree_qubo(&inst, &lam).unwrap();
        assert_eq!(q.n_vars, 3);
        assert_eq!(q.coeff(0, 0), -2.5);
        assert_eq!(q.coeff(1, 1), 0.0);
        assert_eq!(q.coeff(2, 2), 0.5);
        assert_eq!(q.offset, -10.5);
        // minimizer selects item 0, leaves item 2 out; item 1 is indifferent
        let e = q.evaluate(&[true, false, false]);
        assert_eq!(e, -13.0);
    }

    #[test]
    fn mdkp_slackfree_zero_multipliers() {
        let inst = tiny_mdkp();
        let lam = Multipliers::zeros(1, MultiplierDomain::NonNegative);
        let q = build_mdkp_slackfree_qubo(&inst, &lam).unwrap();
        assert_eq!(q.coeff(0, 0), -1.0);
        assert_eq!(q.coeff(1, 1), -1.0);
        assert_eq!(q.offset, 0.0);
        assert_eq!(q.n_vars, inst.n);
    }

    #[test]
    fn mdkp_unbalanced_matches_hand_energy_table() {
        // 2 items, 1 constraint: p = (3, 2), w = (2, 1), c = 2, l1 = l2 = 1.
        let inst = MdkpInstance::new("u", vec![3, 2], vec![vec![2, 1]], vec![2], None).unwrap();
        let q = build_mdkp_unbalanced_qubo(&inst, &PenaltyConfig::default());
        assert_eq!(q.n_vars, 2);
        for x in all_assignments(2) {
            let usage = inst.usage(0, &x) as f64;
            let h = usage - 2.0;
            let expect = -(inst.objective(&x) as f64) + (-h + h * h);
            assert!(
                (q.evaluate(&x) - expect).abs() < 1e-12,
                "x = {x:?}: {} vs {expect}",
                q.evaluate(&x)
            );
        }
        // x = 0 pays l1 c + l2 c^2 relative to the -l1 h reward structure.
        let at_zero = q.evaluate(&[false, false]);
        assert_eq!(at_zero, 2.0 + 4.0);
    }

    #[test]
    fn tsp_slack_qubo_counts_and_valid_permutation() {
        let inst = generate_tsp(5, 4, 100).unwrap();
        let q = build_tsp_slack_qubo(&inst, &PenaltyConfig::default());
        assert_eq!(q.n_vars, 25);
        // the identity permutation: city i at position i
        let mut x = vec![false; 25];
        for i in 0..5 {
            x[i * 5 + i] = true;
        }
        let tour: Vec<usize> = (0..5).collect();
        assert_eq!(q.evaluate(&x), inst.tour_cost(&tour) as f64);
    }

    #[test]
    fn tsp_slack_qubo_exact_minimum_is_best_tour() {
        let inst = generate_tsp(4, 9, 50).unwrap();
        let q = build_tsp_slack_qubo(&inst, &PenaltyConfig::default());
        assert_eq!(q.n_vars, 16);
        let qubo_min = all_assignments(16)
            .map(|x| q.evaluate(&x))
            .fold(f64::INFINITY, f64::min);
        // brute-force best tour over permutations fixing city 0
        let mut best = i64::MAX;
        let perms = [
            [0usize, 1, 2, 3],
            [0, 1, 3, 2],
            [0, 2, 1, 3],
            [0, 2, 3, 1],
            [0, 3, 1, 2],
            [0, 3, 2, 1],
        ];
        for p in perms {
            best = best.min(inst.tour_cost(&p));
        }
        assert_eq!(qubo_min, best as f64);
    }

    #[test]
    fn tsp_slackfree_counts_and_degree_penalty_vanishes_on_tours() {
        let inst = generate_tsp(5, 4, 100).unwrap();
        let lam = Multipliers::zeros(5, MultiplierDomain::Free);
        let q = build_tsp_slackfree_qubo(&inst, &lam, &PenaltyConfig::default()).unwrap();
        assert_eq!(q.n_vars, 10);
        // a Hamiltonian cycle edge set: 0-1-2-3-4-0
        let tour = [0usize, 1, 2, 3, 4];
        let mut x = vec![false; 10];
        let mut index = BTreeMap::new();
        let mut e = 0;
        for i in 0..5 {
            for j in (i + 1)..5 {
                index.insert((i, j), e);
                e += 1;
            }
        }
        for w in 0..5 {
            let (a, b) = (tour[w], tour[(w + 1) % 5]);
            x[index[&(a.min(b), a.max(b))]] = true;
        }
        assert_eq!(q.evaluate(&x), inst.tour_cost(&tour) as f64);
    }

    #[test]
    fn tsp_slackfree_minimum_lower_bounds_best_tour() {
        let inst = generate_tsp(5, 21, 60).unwrap();
        let lam = Multipliers::zeros(5, MultiplierDomain::Free);
        let pc = PenaltyConfig {
            degree: Some(2.0 * inst.max_dist() as f64),
            ..Default::default()
        };
        let q = build_tsp_slackfree_qubo(&inst, &lam, &pc).unwrap();
        let qubo_min = all_assignments(10)
            .map(|x| q.evaluate(&x))
            .fold(f64::INFINITY, f64::min);
        let mut best = i64::MAX;
        let mut perm = [0usize, 1, 2, 3, 4];
        // enumerate permutations of 1..5 (Heap's algorithm not needed; 24 cases)
        fn heap(arr: &mut [usize; 5], k: usize, inst: &crate::instances::TspInstance, best: &mut i64) {
            if k == 1 {
                *best = (*best).min(inst.tour_cost(arr));
                return;
            }
            for i in 0..k {
                heap(arr, k - 1, inst, best);
                if k % 2 == 0 {
                    arr.swap(i, k - 1);
                } else {
                    arr.swap(0, k - 1);
                }
            }
        }
        heap(&mut perm, 5, &inst, &mut best);
        assert!(qubo_min <= best as f64);
    }

    #[test]
    fn mis_qubo_variants() {
        let inst = MisInstance::new("tri", 3, vec![(0, 1), (0, 2), (1, 2)], None).unwrap();
        let q = build_mis_qubo(&inst, None, &PenaltyConfig::default()).unwrap();
        assert_eq!(q.n_vars, 3);
        // triangle with P = 2: minimum is -1 at any single vertex
        let best = all_assignments(3)
            .map(|x| q.evaluate(&x))
            .fold(f64::INFINITY, f64::min);
        assert_eq!(best, -1.0);
        // independent set assignments have zero conflict contribution
        assert_eq!(q.evaluate(&[true, false, false]), -1.0);

        let lam = Multipliers::new(vec![0.2, 0.3, 0.1], MultiplierDomain::NonNegative).unwrap();
        let qf = build_mis_qubo(&inst, Some(&lam), &PenaltyConfig::default()).unwrap();
        assert_eq!(qf.n_vars, 3);
        // energy at a single selected vertex reproduces the Lagrangian value
        let e0 = qf.evaluate(&[true, false, false]);
        let expect = -(1.0 - 0.5) - 0.6;
        assert!((e0 - expect).abs() < 1e-12);
    }

    #[test]
    fn qubit_count_matches_builders() {
        let tsp = generate_tsp(6, 1, 100).unwrap();
        let (s, ns) = qubit_counts(ProblemKind::Tsp, &ProblemInstance::Tsp(tsp.clone()));
        assert_eq!(s, 36);
        assert_eq!(ns, 15);
        assert_eq!(
            build_tsp_slack_qubo(&tsp, &PenaltyConfig::default()).n_vars,
            s
        );
        let lam = Multipliers::zeros(6, MultiplierDomain::Free);
        assert_eq!(
            build_tsp_slackfree_qubo(&tsp, &lam, &PenaltyConfig::default())
                .unwrap()
                .n_vars,
            ns
        );

        let mdkp = tiny_mdkp();
        let (s, ns) = qubit_counts(ProblemKind::Mdkp, &ProblemInstance::Mdkp(mdkp.clone()));
        assert_eq!((s, ns), (4, 2));
        assert_eq!(
            build_mdkp_slack_qubo(&mdkp, &PenaltyConfig::default()).n_vars,
            s
        );

        let mis = MisInstance::new("g", 8, vec![(0, 1)], None).unwrap();
        let (s, ns) = qubit_counts(ProblemKind::Mis, &ProblemInstance::Mis(mis));
        assert_eq!((s, ns), (8, 8));
    }

    #[test]
    fn ising_single_diagonal() {
        let mut q = Qubo::new(1, vec![VarRole::Item(0)]);
        q.add(0, 0, 4.0);
        let ising = to_ising(&q);
        assert_eq!(ising.h, vec![-2.0]);
        assert_eq!(ising.offset, 2.0);
        assert!(ising.j.is_empty());
    }

    #[test]
    fn ising_identity_on_all_assignments() {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let n = 6;
            let mut q = Qubo::new(n, (0..n).map(VarRole::Item).collect());
            q.offset = rng.gen_range(-3.0..3.0);
            for i in 0..n {
                for j in i..n {
                    if rng.gen_bool(0.6) {
                        q.add(i, j, rng.gen_range(-4.0..4.0));
                    }
                }
            }
            let ising = to_ising(&q);
            for x in all_assignments(n) {
                let z: Vec<i8> = x.iter().map(|&b| if b { -1 } else { 1 }).collect();
                let qv = q.evaluate(&x);
                let iv = ising.evaluate(&z);
                assert!((qv - iv).abs() < 1e-9, "{qv} vs {iv}");
            }
        }
    }

    #[test]
    fn zero_qubo_gives_zero_ising() {
        let q = Qubo::new(3, (0..3).map(VarRole::Item).collect());
        let ising = to_ising(&q);
        assert_eq!(ising.h, vec![0.0; 3]);
        assert!(ising.j.is_empty());
        assert_eq!(ising.offset, 0.0);
    }

    #[test]
    fn json_roundtrip() {
        let inst = tiny_mdkp();
        let q = build_mdkp_slack_qubo(&inst, &PenaltyConfig::default());
        let back = Qubo::from_json(&q.to_json()).unwrap();
        assert_eq!(q, back);
    }
}
