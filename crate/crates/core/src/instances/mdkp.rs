//! Multi-dimensional knapsack instances and their canonical text format.
//!
//! Canonical layout (whitespace/newline insensitive):
//!
//! ```text
//! n m
//! p_1 ... p_n
//! w_11 ... w_1n        (one row per constraint, m rows)
//! ...
//! c_1 ... c_m
//! [best_known]
//! ```
//!
//! Benchmark files circulating in other layouts must be converted to this
//! one; the parser deliberately does not auto-detect variants.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::InstanceError;

/// A multi-dimensional knapsack instance: maximize total profit subject to
/// `m` capacity constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MdkpInstance {
    pub name: String,
    /// Item count.
    pub n: usize,
    /// Constraint count.
    pub m: usize,
    /// Item profits, all nonnegative.
    pub profits: Vec<i64>,
    /// m x n nonnegative weights; `weights[j][i]` is item i's use of resource j.
    pub weights: Vec<Vec<i64>>,
    /// Positive capacities, one per constraint.
    pub capacities: Vec<i64>,
    /// Best-known objective value, when the source records one.
    pub best_known: Option<i64>,
}

impl MdkpInstance {
    pub fn new(
        name: impl Into<String>,
        profits: Vec<i64>,
        weights: Vec<Vec<i64>>,
        capacities: Vec<i64>,
        best_known: Option<i64>,
    ) -> Result<MdkpInstance, InstanceError> {
        let n = profits.len();
        let m = weights.len();
        if n == 0 {
            return Err(InstanceError::invalid("MDKP needs at least one item"));
        }
        if m == 0 || capacities.len() != m {
            return Err(InstanceError::invalid(format!(
                "inconsistent constraint count: {} weight rows vs {} capacities",
                m,
                capacities.len()
            )));
        }
        if let Some(bad) = profits.iter().find(|&&p| p < 0) {
            return Err(InstanceError::invalid(format!("negative profit {bad}")));
        }
        for (j, row) in weights.iter().enumerate() {
            if row.len() != n {
                return Err(InstanceError::invalid(format!(
                    "weight row {j} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|&&w| w < 0) {
                return Err(InstanceError::invalid(format!(
                    "negative weight {bad} in constraint {j}"
                )));
            }
        }
        if let Some(bad) = capacities.iter().find(|&&c| c <= 0) {
            return Err(InstanceError::invalid(format!(
                "capacity must be positive, got {bad}"
            )));
        }
        Ok(MdkpInstance {
            name: name.into(),
            n,
            m,
            profits,
            weights,
            capacities,
            best_known,
        })
    }

    /// Total profit of a selection.
    pub fn objective(&self, x: &[bool]) -> i64 {
        self.profits
            .iter()
            .zip(x)
            .filter(|(_, &sel)| sel)
            .map(|(&p, _)| p)
            .sum()
    }

    /// Resource usage of a selection under constraint `j`.
    pub fn usage(&self, j: usize, x: &[bool]) -> i64 {
        self.weights[j]
            .iter()
            .zip(x)
            .filter(|(_, &sel)| sel)
            .map(|(&w, _)| w)
            .sum()
    }

    pub fn is_feasible(&self, x: &[bool]) -> bool {
        (0..self.m).all(|j| self.usage(j, x) <= self.capacities[j])
    }
}

/// Parses the canonical MDKP layout. The trailing best-known value is
/// optional: it is present iff one more number follows the capacities.
pub fn parse_mdkp(text: &str) -> Result<MdkpInstance, InstanceError> {
    let mut toks = text.split_whitespace();
    let mut next = |what: &str| -> Result<i64, InstanceError> {
        let tok = toks
            .next()
            .ok_or_else(|| InstanceError::parse(format!("truncated stream: expected {what}")))?;
        tok.parse::<i64>()
            .map_err(|_| InstanceError::parse(format!("expected integer {what}, got {tok:?}")))
    };

    let n = next("item count n")?;
    let m = next("constraint count m")?;
    if n <= 0 || m <= 0 {
        return Err(InstanceError::parse(format!(
            "n and m must be positive, got n={n} m={m}"
        )));
    }
    let (n, m) = (n as usize, m as usize);
    let profits: Vec<i64> = (0..n)
        .map(|i| next(&format!("profit {i}")))
        .collect::<Result<_, _>>()?;
    let mut weights = Vec::with_capacity(m);
    for j in 0..m {
        let row: Vec<i64> = (0..n)
            .map(|i| next(&format!("weight ({j},{i})")))
            .collect::<Result<_, _>>()?;
        weights.push(row);
    }
    let capacities: Vec<i64> = (0..m)
        .map(|j| next(&format!("capacity {j}")))
        .collect::<Result<_, _>>()?;
    let best_known = match toks.next() {
        Some(tok) => Some(tok.parse::<i64>().map_err(|_| {
            InstanceError::parse(format!("expected integer best-known value, got {tok:?}"))
        })?),
        None => None,
    };
    MdkpInstance::new("mdkp", profits, weights, capacities, best_known)
        .map_err(|e| match e {
            // surface invariant violations (negative weight etc.) as parse errors
            InstanceError::Invalid(msg) => InstanceError::parse(msg),
            other => other,
        })
}

/// Writes the canonical layout; appends `best_known` when present.
pub fn write_mdkp(inst: &MdkpInstance) -> String {
    let mut out = format!("{} {}\n", inst.n, inst.m);
    out.push_str(&join(&inst.profits));
    out.push('\n');
    for row in &inst.weights {
        out.push_str(&join(row));
        out.push('\n');
    }
    out.push_str(&join(&inst.capacities));
    out.push('\n');
    if let Some(best) = inst.best_known {
        out.push_str(&format!("{best}\n"));
    }
    out
}

fn join(xs: &[i64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Generates a random MDKP instance. Profits are uniform in
/// `[1, profit_max]`, weights in `[1, weight_max]`, and each capacity is
/// `cap_frac` of its row's total weight (at least the largest single
/// weight, so every item fits on its own). Deterministic per seed.
pub fn generate_mdkp(
    n: usize,
    m: usize,
    seed: u64,
    profit_max: i64,
    weight_max: i64,
    cap_frac: f64,
) -> Result<MdkpInstance, InstanceError> {
    if n == 0 || m == 0 {
        return Err(InstanceError::invalid("n and m must be positive"));
    }
    if profit_max < 1 || weight_max < 1 || !(0.0..=1.0).contains(&cap_frac) {
        return Err(InstanceError::invalid("bad generation parameters"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let profits: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=profit_max)).collect();
    let mut weights = Vec::with_capacity(m);
    let mut capacities = Vec::with_capacity(m);
    for _ in 0..m {
        let row: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=weight_max)).collect();
        let total: i64 = row.iter().sum();
        let max_w = row.iter().copied().max().unwrap();
        let cap = ((total as f64) * cap_frac).round() as i64;
        capacities.push(cap.max(max_w));
        weights.push(row);
    }
    MdkpInstance::new(
        format!("mdkp{n}x{m}-s{seed}"),
        profits,
        weights,
        capacities,
        None,
    )
}
