//! Lagrangian subproblems: closed-form or polynomial evaluation of the dual
//! function for each problem family, with subgradients.
//!
//! The MDKP and MIS duals are convex piecewise-linear functions minimized
//! over nonnegative multipliers. The TSP (Held-Karp) bound is concave and
//! maximized over free multipliers; the dual engine only ever minimizes, so
//! TSP values and subgradients are negated at the [`OrientedOracle`]
//! boundary and un-negated in reports.

use std::fmt;

use crate::instances::{MdkpInstance, MisInstance, ProblemKind, TspInstance};

/// Sign domain of a multiplier vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultiplierDomain {
    /// Unconstrained reals (TSP node multipliers).
    Free,
    /// Elementwise nonnegative (MDKP constraints, MIS edges).
    NonNegative,
}

/// A dual multiplier vector together with its sign domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Multipliers {
    pub values: Vec<f64>,
    pub domain: MultiplierDomain,
}

impl Multipliers {
    pub fn new(values: Vec<f64>, domain: MultiplierDomain) -> Result<Multipliers, RelaxError> {
        if domain == MultiplierDomain::NonNegative && values.iter().any(|&v| v < 0.0) {
            return Err(RelaxError::NegativeMultiplier);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(RelaxError::NonFinite);
        }
        Ok(Multipliers { values, domain })
    }

    pub fn zeros(dim: usize, domain: MultiplierDomain) -> Multipliers {
        Multipliers {
            values: vec![0.0; dim],
            domain,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Projects a raw vector into this domain (clamps at zero when nonnegative).
    pub fn project(&self, raw: Vec<f64>) -> Multipliers {
        let values = match self.domain {
            MultiplierDomain::Free => raw,
            MultiplierDomain::NonNegative => raw.into_iter().map(|v| v.max(0.0)).collect(),
        };
        Multipliers {
            values,
            domain: self.domain,
        }
    }
}

/// Relaxed primal solution of a subproblem.
#[derive(Debug, Clone, PartialEq)]
pub enum RelaxedPrimal {
    /// Item / vertex selection vector.
    Assignment(Vec<bool>),
    /// Edge set of a 1-tree (TSP).
    Edges(Vec<(usize, usize)>),
}

/// Result of evaluating a Lagrangian subproblem at fixed multipliers.
#[derive(Debug, Clone, PartialEq)]
pub struct SubproblemSolution {
    /// Relaxed primal minimizer/maximizer x*(lambda).
    pub primal: RelaxedPrimal,
    /// Dual function value g(lambda) in the problem's native orientation.
    pub dual_value: f64,
    /// Subgradient, one entry per multiplier.
    pub subgrad: Vec<f64>,
    /// Node degrees in the 1-tree (TSP only).
    pub degrees: Option<Vec<usize>>,
}

impl SubproblemSolution {
    pub fn subgrad_norm(&self) -> f64 {
        self.subgrad.iter().map(|s| s * s).sum::<f64>().sqrt()
    }
}

/// Whether the dual problem minimizes or maximizes g.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualSense {
    MinimizeDual,
    MaximizeDual,
}

/// Dual orientation of a problem family: the optimization sense together
/// with the multiplier domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualOrientation {
    pub sense: DualSense,
    pub domain: MultiplierDomain,
}

impl DualOrientation {
    /// Maps a native (value, subgradient) pair into the engine's
    /// minimization space. Applying it twice is the identity.
    pub fn negate(&self, value: f64, subgrad: &[f64]) -> (f64, Vec<f64>) {
        match self.sense {
            DualSense::MinimizeDual => (value, subgrad.to_vec()),
            DualSense::MaximizeDual => (-value, subgrad.iter().map(|s| -s).collect()),
        }
    }

    /// True when a smaller native dual value is better.
    pub fn minimizes(&self) -> bool {
        self.sense == DualSense::MinimizeDual
    }
}

/// Dual orientation per problem family: MDKP/MIS minimize the convex dual
/// over nonnegative multipliers; TSP maximizes the Held-Karp bound over
/// free multipliers.
pub fn dual_orientation(kind: ProblemKind) -> DualOrientation {
    match kind {
        ProblemKind::Mdkp | ProblemKind::Mis => DualOrientation {
            sense: DualSense::MinimizeDual,
            domain: MultiplierDomain::NonNegative,
        },
        ProblemKind::Tsp => DualOrientation {
            sense: DualSense::MaximizeDual,
            domain: MultiplierDomain::Free,
        },
    }
}

/// Errors from subproblem evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum RelaxError {
    DimensionMismatch { expected: usize, got: usize },
    NegativeMultiplier,
    NonFinite,
    TooSmall(String),
}

impl fmt::Display for RelaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelaxError::DimensionMismatch { expected, got } => {
                write!(f, "multiplier dimension mismatch: expected {expected}, got {got}")
            }
            RelaxError::NegativeMultiplier => {
                write!(f, "negative multiplier in a nonnegative domain")
            }
            RelaxError::NonFinite => write!(f, "non-finite multiplier value"),
            RelaxError::TooSmall(msg) => write!(f, "instance too small: {msg}"),
        }
    }
}

impl std::error::Error for RelaxError {}

fn check_dims(lambda: &Multipliers, expected: usize, domain: MultiplierDomain) -> Result<(), RelaxError> {
    if lambda.len() != expected {
        return Err(RelaxError::DimensionMismatch {
            expected,
            got: lambda.len(),
        });
    }
    if domain == MultiplierDomain::NonNegative && lambda.values.iter().any(|&v| v < 0.0) {
        return Err(RelaxError::NegativeMultiplier);
    }
    if lambda.values.iter().any(|v| !v.is_finite()) {
        return Err(RelaxError::NonFinite);
    }
    Ok(())
}

/// MDKP subproblem: select items with strictly positive reduced profit.
///
/// x_i = 1 iff p_i - sum_j lambda_j w_ji > 0;
/// g(lambda) = sum_j lambda_j c_j + sum_i max(0, reduced profit);
/// s_j = c_j - sum_i w_ji x_i.
pub fn mdkp_subproblem(
    inst: &MdkpInstance,
    lambda: &Multipliers,
) -> Result<SubproblemSolution, RelaxError> {
    check_dims(lambda, inst.m, MultiplierDomain::NonNegative)?;
    let lam = &lambda.values;
    let mut x = vec![false; inst.n];
    let mut dual_value: f64 = lam
        .iter()
        .zip(&inst.capacities)
        .map(|(&l, &c)| l * c as f64)
        .sum();
    for i in 0..inst.n {
        let reduced = inst.profits[i] as f64
            - (0..inst.m).map(|j| lam[j] * inst.weights[j][i] as f64).sum::<f64>();
        if reduced > 0.0 {
            x[i] = true;
            dual_value += reduced;
        }
    }
    let subgrad: Vec<f64> = (0..inst.m)
        .map(|j| inst.capacities[j] as f64 - inst.usage(j, &x) as f64)
        .collect();
    Ok(SubproblemSolution {
        primal: RelaxedPrimal::Assignment(x),
        dual_value,
        subgrad,
        degrees: None,
    })
}

/// MIS subproblem: select vertices whose adjacency-discounted weight stays
/// strictly positive.
///
/// x_i = 1 iff 1 - sum_{e incident to i} lambda_e > 0;
/// g(lambda) = sum_i max(0, discounted weight) + sum_e lambda_e;
/// s_e = 1 - x_i - x_j for e = (i, j).
pub fn mis_subproblem(
    inst: &MisInstance,
    lambda: &Multipliers,
) -> Result<SubproblemSolution, RelaxError> {
    check_dims(lambda, inst.edges.len(), MultiplierDomain::NonNegative)?;
    let lam = &lambda.values;
    let mut incident = vec![0.0f64; inst.n];
    for (e, &(i, j)) in inst.edges.iter().enumerate() {
        incident[i] += lam[e];
        incident[j] += lam[e];
    }
    let mut x = vec![false; inst.n];
    let mut dual_value: f64 = lam.iter().sum();
    for i in 0..inst.n {
        let discounted = 1.0 - incident[i];
        if discounted > 0.0 {
            x[i] = true;
            dual_value += discounted;
        }
    }
    let subgrad: Vec<f64> = inst
        .edges
        .iter()
        .map(|&(i, j)| 1.0 - (x[i] as i64 + x[j] as i64) as f64)
        .collect();
    Ok(SubproblemSolution {
        primal: RelaxedPrimal::Assignment(x),
        dual_value,
        subgrad,
        degrees: None,
    })
}

/// Held-Karp subproblem: minimum 1-tree under modified costs
/// c~_ij = c_ij - lambda_i - lambda_j.
///
/// Returns the minimum spanning tree on nodes {1..n-1} plus the two cheapest
/// modified-cost edges at node 0. The bound is
/// g(lambda) = sum_{e in T} c~_e + 2 sum_i lambda_i and s_i = 2 - deg_i.
///
/// Ties in modified cost prefer the lexicographically smallest (i, j), so
/// the output is reproducible across runs and platforms.
pub fn hk_one_tree(
    inst: &TspInstance,
    lambda: &Multipliers,
) -> Result<SubproblemSolution, RelaxError> {
    if inst.n < 3 {
        return Err(RelaxError::TooSmall("1-tree needs n >= 3".into()));
    }
    check_dims(lambda, inst.n, MultiplierDomain::Free)?;
    let n = inst.n;
    let lam = &lambda.values;
    let cost = |i: usize, j: usize| inst.dist[i][j] as f64 - lam[i] - lam[j];

    // Kruskal over nodes {1..n-1} with a (cost, i, j) sort: the index pair
    // breaks ties deterministically.
    let mut edges: Vec<(f64, usize, usize)> = Vec::with_capacity((n - 1) * (n - 2) / 2);
    for i in 1..n {
        for j in (i + 1)..n {
            edges.push((cost(i, j), i, j));
        }
    }
    edges.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap()
            .then(a.1.cmp(&b.1))
            .then(a.2.cmp(&b.2))
    });
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut tree: Vec<(usize, usize)> = Vec::with_capacity(n);
    let mut tree_cost = 0.0;
    for &(c, i, j) in &edges {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
            tree.push((i, j));
            tree_cost += c;
            if tree.len() == n - 2 {
                break;
            }
        }
    }

    // Two cheapest modified-cost edges incident to node 0.
    let mut node0: Vec<(f64, usize)> = (1..n).map(|j| (cost(0, j), j)).collect();
    node0.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    for &(c, j) in node0.iter().take(2) {
        tree.push((0, j));
        tree_cost += c;
    }

    let dual_value = tree_cost + 2.0 * lam.iter().sum::<f64>();
    let mut degrees = vec![0usize; n];
    for &(i, j) in &tree {
        degrees[i] += 1;
        degrees[j] += 1;
    }
    let subgrad: Vec<f64> = degrees.iter().map(|&d| 2.0 - d as f64).collect();
    Ok(SubproblemSolution {
        primal: RelaxedPrimal::Edges(tree),
        dual_value,
        subgrad,
        degrees: Some(degrees),
    })
}

/// A Lagrangian subproblem the dual engine can drive.
pub trait DualOracle {
    /// Multiplier dimension.
    fn dim(&self) -> usize;
    /// Dual orientation (sense + multiplier domain).
    fn orientation(&self) -> DualOrientation;
    /// Evaluates the subproblem at the given multipliers.
    fn evaluate(&self, lambda: &Multipliers) -> Result<SubproblemSolution, RelaxError>;
    /// A cheap feasible primal bound usable as a Polyak target
    /// (profit for MDKP, set size for MIS, tour cost for TSP).
    fn greedy_primal_bound(&self) -> f64;
    /// Magnitude scale of reasonable multipliers; the default cutting-plane
    /// box is ten times this.
    fn multiplier_scale(&self) -> f64;
    /// Problem family.
    fn kind(&self) -> ProblemKind;
}

/// MDKP dual oracle.
pub struct MdkpOracle<'a> {
    pub inst: &'a MdkpInstance,
}

impl DualOracle for MdkpOracle<'_> {
    fn dim(&self) -> usize {
        self.inst.m
    }

    fn orientation(&self) -> DualOrientation {
        dual_orientation(ProblemKind::Mdkp)
    }

    fn evaluate(&self, lambda: &Multipliers) -> Result<SubproblemSolution, RelaxError> {
        mdkp_subproblem(self.inst, lambda)
    }

    fn greedy_primal_bound(&self) -> f64 {
        let x = crate::postprocess::repair_mdkp(self.inst, &vec![true; self.inst.n]);
        self.inst.objective(&x) as f64
    }

    fn multiplier_scale(&self) -> f64 {
        self.inst.profits.iter().copied().max().unwrap_or(1).max(1) as f64
    }

    fn kind(&self) -> ProblemKind {
        ProblemKind::Mdkp
    }
}

/// MIS dual oracle.
pub struct MisOracle<'a> {
    pub inst: &'a MisInstance,
}

impl DualOracle for MisOracle<'_> {
    fn dim(&self) -> usize {
        self.inst.edges.len()
    }

    fn orientation(&self) -> DualOrientation {
        dual_orientation(ProblemKind::Mis)
    }

    fn evaluate(&self, lambda: &Multipliers) -> Result<SubproblemSolution, RelaxError> {
        mis_subproblem(self.inst, lambda)
    }

    fn greedy_primal_bound(&self) -> f64 {
        crate::postprocess::repair_mis(self.inst, &vec![true; self.inst.n])
            .iter()
            .filter(|&&b| b)
            .count() as f64
    }

    fn multiplier_scale(&self) -> f64 {
        1.0
    }

    fn kind(&self) -> ProblemKind {
        ProblemKind::Mis
    }
}

/// Held-Karp dual oracle.
pub struct TspOracle<'a> {
    pub inst: &'a TspInstance,
}

impl DualOracle for TspOracle<'_> {
    fn dim(&self) -> usize {
        self.inst.n
    }

    fn orientation(&self) -> DualOrientation {
        dual_orientation(ProblemKind::Tsp)
    }

    fn evaluate(&self, lambda: &Multipliers) -> Result<SubproblemSolution, RelaxError> {
        hk_one_tree(self.inst, lambda)
    }

    fn greedy_primal_bound(&self) -> f64 {
        let tour = crate::postprocess::repair_tsp(self.inst, &[]);
        self.inst.tour_cost(&tour) as f64
    }

    fn multiplier_scale(&self) -> f64 {
        self.inst.max_dist().max(1) as f64
    }

    fn kind(&self) -> ProblemKind {
        ProblemKind::Tsp
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{generate_tsp, MdkpInstance, MisInstance, TspInstance};

    fn knapsack() -> MdkpInstance {
        MdkpInstance::new("k3", vec![10, 6, 4], vec![vec![5, 4, 3]], vec![7], Some(10)).unwrap()
    }

    fn nonneg(values: Vec<f64>) -> Multipliers {
        Multipliers::new(values, MultiplierDomain::NonNegative).unwrap()
    }

    /// Brute-force max over x of the MDKP Lagrangian L(x, lambda).
    fn mdkp_lagrangian_max(inst: &MdkpInstance, lam: &[f64]) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for mask in 0..(1u32 << inst.n) {
            let x: Vec<bool> = (0..inst.n).map(|i| mask >> i & 1 == 1).collect();
            let mut val = inst.objective(&x) as f64;
            for j in 0..inst.m {
                val -= lam[j] * (inst.usage(j, &x) - inst.capacities[j]) as f64;
            }
            best = best.max(val);
        }
        best
    }

    #[test]
    fn mdkp_zero_multipliers_select_everything() {
        let inst = knapsack();
        let sol = mdkp_subproblem(&inst, &nonneg(vec![0.0])).unwrap();
        assert_eq!(
            sol.primal,
            RelaxedPrimal::Assignment(vec![true, true, true])
        );
        assert_eq!(sol.dual_value, 20.0);
        assert_eq!(sol.subgrad, vec![7.0 - 12.0]);
    }

    #[test]
    fn mdkp_huge_multipliers_select_nothing() {
        let inst = knapsack();
        let sol = mdkp_subproblem(&inst, &nonneg(vec![1e9])).unwrap();
        assert_eq!(
            sol.primal,
            RelaxedPrimal::Assignment(vec![false, false, false])
        );
        assert_eq!(sol.dual_value, 1e9 * 7.0);
    }

    #[test]
    fn mdkp_tie_uses_strict_threshold() {
        // At lambda = 1.5 item 2's reduced profit is exactly 0 and stays out.
        let inst = knapsack();
        let sol = mdkp_subproblem(&inst, &nonneg(vec![1.5])).unwrap();
        assert_eq!(
            sol.primal,
            RelaxedPrimal::Assignment(vec![true, false, false])
        );
        assert_eq!(sol.dual_value, 13.0);
        assert_eq!(sol.subgrad, vec![2.0]);
        // The closed form must agree with brute-force maximization of L.
        assert!((sol.dual_value - mdkp_lagrangian_max(&inst, &[1.5])).abs() < 1e-12);
    }

    #[test]
    fn mdkp_closed_form_matches_bruteforce_on_random_points() {
        let inst = MdkpInstance::new(
            "r",
            vec![9, 14, 3, 8, 11],
            vec![vec![3, 6, 2, 5, 4], vec![5, 1, 4, 2, 6]],
            vec![9, 8],
            None,
        )
        .unwrap();
        for k in 0..40 {
            let lam = vec![(k as f64) * 0.17 % 3.0, (k as f64) * 0.31 % 2.0];
            let sol = mdkp_subproblem(&inst, &nonneg(lam.clone())).unwrap();
            let brute = mdkp_lagrangian_max(&inst, &lam);
            assert!(
                (sol.dual_value - brute).abs() < 1e-9,
                "lambda {lam:?}: {} vs {brute}",
                sol.dual_value
            );
        }
    }

    #[test]
    fn mdkp_dimension_mismatch_is_an_error() {
        let inst = knapsack();
        assert!(matches!(
            mdkp_subproblem(&inst, &nonneg(vec![0.0, 0.0])),
            Err(RelaxError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn mis_zero_multipliers_select_all() {
        let inst = MisInstance::new("tri", 3, vec![(0, 1), (0, 2), (1, 2)], None).unwrap();
        let sol = mis_subproblem(&inst, &nonneg(vec![0.0; 3])).unwrap();
        assert_eq!(sol.primal, RelaxedPrimal::Assignment(vec![true; 3]));
        assert_eq!(sol.dual_value, 3.0);
    }

    #[test]
    fn mis_threshold_is_strict() {
        let inst = MisInstance::new("e", 2, vec![(0, 1)], None).unwrap();
        let sol = mis_subproblem(&inst, &nonneg(vec![1.0])).unwrap();
        assert_eq!(sol.primal, RelaxedPrimal::Assignment(vec![false, false]));
        assert_eq!(sol.dual_value, 1.0);
        assert_eq!(sol.subgrad, vec![1.0]);
    }

    #[test]
    fn mis_triangle_brute_force_check() {
        // Each vertex sees 0.8 < 1 so everything is selected.
        let inst = MisInstance::new("tri", 3, vec![(0, 1), (0, 2), (1, 2)], None).unwrap();
        let lam = vec![0.4, 0.4, 0.4];
        let sol = mis_subproblem(&inst, &nonneg(lam.clone())).unwrap();
        assert_eq!(sol.primal, RelaxedPrimal::Assignment(vec![true; 3]));
        assert!((sol.dual_value - 1.8).abs() < 1e-12);
        assert_eq!(sol.subgrad, vec![-1.0, -1.0, -1.0]);
        // Brute-force max of L(x, lambda) over the 8 assignments.
        let mut best = f64::NEG_INFINITY;
        for mask in 0..8u32 {
            let x: Vec<bool> = (0..3).map(|i| mask >> i & 1 == 1).collect();
            let mut val = x.iter().filter(|&&b| b).count() as f64;
            for (e, &(i, j)) in inst.edges.iter().enumerate() {
                val -= lam[e] * ((x[i] as i64 + x[j] as i64) as f64 - 1.0);
            }
            best = best.max(val);
        }
        assert!((sol.dual_value - best).abs() < 1e-12);
    }

    fn square() -> TspInstance {
        TspInstance::from_coords("sq", vec![(0, 0), (3, 0), (0, 4), (3, 4)], None).unwrap()
    }

    #[test]
    fn one_tree_uniform_costs() {
        // Complete graph with all pairwise distances 5 (scaled 3-4-5 layout
        // does not give uniform costs, so build one directly).
        let mut inst = square();
        for i in 0..4 {
            for j in 0..4 {
                inst.dist[i][j] = if i == j { 0 } else { 5 };
            }
        }
        let sol = hk_one_tree(&inst, &Multipliers::zeros(4, MultiplierDomain::Free)).unwrap();
        assert_eq!(sol.dual_value, 20.0); // n * w
        if let RelaxedPrimal::Edges(edges) = &sol.primal {
            assert_eq!(edges.len(), 4);
        } else {
            panic!("expected edge set");
        }
    }

    #[test]
    fn one_tree_subgradients_sum_to_zero() {
        let inst = generate_tsp(7, 99, 500).unwrap();
        for k in 0..10 {
            let lam: Vec<f64> = (0..7).map(|i| ((i * k) as f64).sin() * 30.0).collect();
            let sol = hk_one_tree(
                &inst,
                &Multipliers::new(lam, MultiplierDomain::Free).unwrap(),
            )
            .unwrap();
            let total: f64 = sol.subgrad.iter().sum();
            assert!(total.abs() < 1e-9);
            let deg = sol.degrees.as_ref().unwrap();
            assert_eq!(deg[0], 2, "node 0 always has degree 2");
            if let RelaxedPrimal::Edges(edges) = &sol.primal {
                assert_eq!(edges.len(), 7);
            }
        }
    }

    #[test]
    fn one_tree_matches_exhaustive_enumeration() {
        // Enumerate every spanning tree on {1,2,3} (3 possible two-edge
        // trees) x every pair of node-0 edges, n = 4.
        let inst = square();
        let lambda = Multipliers::zeros(4, MultiplierDomain::Free);
        let sol = hk_one_tree(&inst, &lambda).unwrap();

        let others = [1usize, 2, 3];
        let tree_edge_sets: Vec<Vec<(usize, usize)>> = vec![
            vec![(1, 2), (1, 3)],
            vec![(1, 2), (2, 3)],
            vec![(1, 3), (2, 3)],
        ];
        let mut best = f64::INFINITY;
        for tree in &tree_edge_sets {
            for a in 0..others.len() {
                for b in (a + 1)..others.len() {
                    let mut cost: f64 =
                        tree.iter().map(|&(i, j)| inst.dist[i][j] as f64).sum();
                    cost += inst.dist[0][others[a]] as f64;
                    cost += inst.dist[0][others[b]] as f64;
                    best = best.min(cost);
                }
            }
        }
        assert_eq!(sol.dual_value, best);
        assert_eq!(sol.dual_value, 14.0); // frozen from the enumeration above
    }

    #[test]
    fn one_tree_rejects_small_instances() {
        let mut inst = square();
        inst.n = 2; // force the guard
        assert!(hk_one_tree(&inst, &Multipliers::zeros(2, MultiplierDomain::Free)).is_err());
    }

    #[test]
    fn orientation_table() {
        assert_eq!(
            dual_orientation(ProblemKind::Mdkp).sense,
            DualSense::MinimizeDual
        );
        assert_eq!(
            dual_orientation(ProblemKind::Mis).sense,
            DualSense::MinimizeDual
        );
        assert_eq!(
            dual_orientation(ProblemKind::Tsp).sense,
            DualSense::MaximizeDual
        );
    }

    #[test]
    fn negation_is_an_involution() {
        let orient = dual_orientation(ProblemKind::Tsp);
        let (g, s) = (12.5, vec![1.0, -2.0, 0.5]);
        let (g1, s1) = orient.negate(g, &s);
        let (g2, s2) = orient.negate(g1, &s1);
        assert_eq!(g2, g);
        assert_eq!(s2, s);
    }
}
