//! Dense numerical kernels: a box-constrained LP solver for cutting-plane
//! models and a proximal QP solver for bundle steps.
//!
//! Dual dimensions in this toolkit stay small (tens of multipliers), so
//! everything is dense. The LP uses a two-phase tableau simplex with
//! Bland's rule, which excludes cycling and makes the returned vertex
//! reproducible; an iteration cap remains as a defensive guard.

use std::fmt;

const PIVOT_TOL: f64 = 1e-9;
const FEAS_TOL: f64 = 1e-7;

/// Errors from the LP / QP kernels.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelError {
    Infeasible,
    IterationCap(usize),
    NonConvergence { residual: f64, tol: f64 },
    BadInput(String),
}

impl fmt::Display for KernelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelError::Infeasible => write!(f, "LP infeasible"),
            KernelError::IterationCap(n) => write!(f, "iteration cap {n} exceeded"),
            KernelError::NonConvergence { residual, tol } => {
                write!(f, "no convergence: residual {residual:.3e} > tol {tol:.3e}")
            }
            KernelError::BadInput(msg) => write!(f, "bad kernel input: {msg}"),
        }
    }
}

impl std::error::Error for KernelError {}

/// A linear program: minimize `objective . x` subject to `row . x >= rhs`
/// for every row and finite box bounds on every variable.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    /// Inequality rows `(coefficients, rhs)` with sense >=.
    pub rows: Vec<(Vec<f64>, f64)>,
    /// Finite `[lo, hi]` bounds per variable.
    pub bounds: Vec<(f64, f64)>,
}

/// Solves the LP, returning an optimal vertex and its objective value.
/// Pivoting follows Bland's rule so the output is deterministic; optimality
/// holds when no reduced cost is negative at termination.
pub fn lp_solve(lp: &LinearProgram) -> Result<(Vec<f64>, f64), KernelError> {
    let n = lp.objective.len();
    if lp.bounds.len() != n {
        return Err(KernelError::BadInput(format!(
            "{} bounds for {n} variables",
            lp.bounds.len()
        )));
    }
    for (lo, hi) in &lp.bounds {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(KernelError::BadInput(format!("bad bound [{lo}, {hi}]")));
        }
    }
    for (coeffs, _) in &lp.rows {
        if coeffs.len() != n {
            return Err(KernelError::BadInput("row length mismatch".into()));
        }
    }

    // Shift to y = x - lo >= 0 and add explicit upper-bound rows y_i <= u_i.
    let lo: Vec<f64> = lp.bounds.iter().map(|b| b.0).collect();
    let upper: Vec<f64> = lp.bounds.iter().map(|b| b.1 - b.0).collect();
    let mut ge_rows: Vec<(Vec<f64>, f64)> = Vec::with_capacity(lp.rows.len() + n);
    for (coeffs, rhs) in &lp.rows {
        let shift: f64 = coeffs.iter().zip(&lo).map(|(a, l)| a * l).sum();
        ge_rows.push((coeffs.clone(), rhs - shift));
    }
    for i in 0..n {
        let mut coeffs = vec![0.0; n];
        coeffs[i] = -1.0;
        ge_rows.push((coeffs, -upper[i]));
    }

    let m = ge_rows.len();
    // Standard form a.y - s = b with nonnegative rhs; negated rows get
    // their surplus as the initial basic variable, the rest get artificials.
    let mut needs_artificial = Vec::with_capacity(m);
    let mut norm_rows: Vec<(Vec<f64>, f64, f64)> = Vec::with_capacity(m); // (a, surplus sign, b)
    for (coeffs, rhs) in ge_rows {
        if rhs < 0.0 {
            let neg: Vec<f64> = coeffs.iter().map(|a| -a).collect();
            norm_rows.push((neg, 1.0, -rhs));
            needs_artificial.push(false);
        } else {
            norm_rows.push((coeffs, -1.0, rhs));
            needs_artificial.push(true);
        }
    }
    let n_art: usize = needs_artificial.iter().filter(|&&b| b).count();
    let cols = n + m + n_art; // y | surplus | artificial
    let art_start = n + m;

    // Tableau: m constraint rows, then rhs column at index `cols`.
    let mut tab = vec![vec![0.0f64; cols + 1]; m];
    let mut basis = vec![0usize; m];
    let mut art_idx = art_start;
    for (r, (coeffs, surplus_sign, rhs)) in norm_rows.iter().enumerate() {
        for (j, &a) in coeffs.iter().enumerate() {
            tab[r][j] = a;
        }
        tab[r][n + r] = *surplus_sign;
        tab[r][cols] = *rhs;
        if needs_artificial[r] {
            tab[r][art_idx] = 1.0;
            basis[r] = art_idx;
            art_idx += 1;
        } else {
            basis[r] = n + r;
        }
    }

    // Phase-1 objective row: minimize the artificial sum.
    let mut w_row = vec![0.0f64; cols + 1];
    for j in art_start..cols {
        w_row[j] = 1.0;
    }
    for r in 0..m {
        if basis[r] >= art_start {
            for j in 0..=cols {
                w_row[j] -= tab[r][j];
            }
        }
    }
    // Phase-2 objective row for the shifted variables.
    let mut z_row = vec![0.0f64; cols + 1];
    for j in 0..n {
        z_row[j] = lp.objective[j];
    }

    let cap = 50_000;
    let mut iters = 0usize;
    // Phase 1.
    loop {
        let enter = (0..cols).find(|&j| w_row[j] < -PIVOT_TOL && basis.iter().all(|&b| b != j));
        let Some(enter) = enter else { break };
        let leave = ratio_test(&tab, &basis, enter, cols)
            .ok_or(KernelError::Infeasible)?; // phase-1 cannot be unbounded
        pivot(&mut tab, &mut w_row, &mut z_row, &mut basis, leave, enter, cols);
        iters += 1;
        if iters > cap {
            return Err(KernelError::IterationCap(cap));
        }
    }
    let phase1: f64 = (0..m)
        .filter(|&r| basis[r] >= art_start)
        .map(|r| tab[r][cols])
        .sum();
    if phase1 > FEAS_TOL {
        return Err(KernelError::Infeasible);
    }
    // Drive any zero-valued basic artificials out when possible.
    for r in 0..m {
        if basis[r] >= art_start {
            if let Some(j) = (0..art_start)
                .find(|&j| tab[r][j].abs() > PIVOT_TOL && basis.iter().all(|&b| b != j))
            {
                pivot(&mut tab, &mut w_row, &mut z_row, &mut basis, r, j, cols);
            }
        }
    }

    // Phase 2: artificial columns are barred from entering.
    loop {
        let enter = (0..art_start)
            .find(|&j| z_row[j] < -PIVOT_TOL && basis.iter().all(|&b| b != j));
        let Some(enter) = enter else { break };
        let leave = ratio_test(&tab, &basis, enter, cols).ok_or_else(|| {
            // box bounds exclude unboundedness; reaching this means the
            // input violated the finite-bound contract
            KernelError::BadInput("unbounded LP despite box bounds".into())
        })?;
        pivot(&mut tab, &mut w_row, &mut z_row, &mut basis, leave, enter, cols);
        iters += 1;
        if iters > cap {
            return Err(KernelError::IterationCap(cap));
        }
    }

    let mut y = vec![0.0f64; n];
    for r in 0..m {
        if basis[r] < n {
            y[basis[r]] = tab[r][cols];
        }
    }
    let x: Vec<f64> = y.iter().zip(&lo).map(|(yi, li)| yi + li).collect();
    let value: f64 = lp.objective.iter().zip(&x).map(|(c, xi)| c * xi).sum();
    Ok((x, value))
}

/// Bland leaving rule: minimum ratio, ties broken by smallest basic index.
fn ratio_test(tab: &[Vec<f64>], basis: &[usize], enter: usize, cols: usize) -> Option<usize> {
    let mut best: Option<(f64, usize, usize)> = None; // (ratio, basic var, row)
    for (r, row) in tab.iter().enumerate() {
        if row[enter] > PIVOT_TOL {
            let ratio = row[cols] / row[enter];
            let key = (ratio, basis[r], r);
            let better = match best {
                None => true,
                Some((br, bb, _)) => ratio < br - PIVOT_TOL || (ratio < br + PIVOT_TOL && basis[r] < bb),
            };
            if better {
                best = Some(key);
            }
        }
    }
    best.map(|(_, _, r)| r)
}

fn pivot(
    tab: &mut [Vec<f64>],
    w_row: &mut [f64],
    z_row: &mut [f64],
    basis: &mut [usize],
    leave: usize,
    enter: usize,
    cols: usize,
) {
    let p = tab[leave][enter];
    for j in 0..=cols {
        tab[leave][j] /= p;
    }
    for r in 0..tab.len() {
        if r != leave && tab[r][enter].abs() > 0.0 {
            let f = tab[r][enter];
            for j in 0..=cols {
                tab[r][j] -= f * tab[leave][j];
            }
        }
    }
    for row in [w_row, z_row] {
        let f = row[enter];
        if f.abs() > 0.0 {
            for j in 0..=cols {
                row[j] -= f * tab[leave][j];
            }
        }
    }
    basis[leave] = enter;
}

/// One affine cut of a piecewise-linear dual model:
/// `f(lambda) = value + subgrad . (lambda - point)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cut {
    pub point: Vec<f64>,
    pub value: f64,
    pub subgrad: Vec<f64>,
}

impl Cut {
    fn offset(&self) -> f64 {
        self.value - dot(&self.subgrad, &self.point)
    }

    fn eval(&self, lambda: &[f64]) -> f64 {
        self.offset() + dot(&self.subgrad, lambda)
    }
}

/// Proximal cut-model QP:
/// minimize over lambda of `max_i f_i(lambda) + (beta/2) ||lambda - center||^2`,
/// with lambda >= 0 when `nonneg` is set.
#[derive(Debug, Clone)]
pub struct ProxQp {
    pub cuts: Vec<Cut>,
    pub center: Vec<f64>,
    pub beta: f64,
    /// Lower bound 0 on the variables (the usual multiplier domain); free
    /// variables are used by the Held-Karp dual.
    pub nonneg: bool,
}

/// Solution of a [`ProxQp`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProxSolution {
    pub lambda: Vec<f64>,
    /// Value of the piecewise-linear cut model at `lambda` (no prox term).
    pub model_value: f64,
    /// Full objective: model value plus the proximal term.
    pub objective: f64,
}

impl ProxQp {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn check(&self) -> Result<(), KernelError> {
        if self.beta <= 0.0 {
            return Err(KernelError::BadInput("beta must be positive".into()));
        }
        if self.cuts.is_empty() {
            return Err(KernelError::BadInput("at least one cut required".into()));
        }
        for c in &self.cuts {
            if c.point.len() != self.dim() || c.subgrad.len() != self.dim() {
                return Err(KernelError::BadInput("cut dimension mismatch".into()));
            }
        }
        Ok(())
    }

    fn project(&self, v: Vec<f64>) -> Vec<f64> {
        if self.nonneg {
            v.into_iter().map(|x| x.max(0.0)).collect()
        } else {
            v
        }
    }

    /// Inner minimizer lambda(theta) for aggregated slope u = sum theta_i s_i.
    fn inner_lambda(&self, u: &[f64]) -> Vec<f64> {
        let v: Vec<f64> = self
            .center
            .iter()
            .zip(u)
            .map(|(c, ui)| c - ui / self.beta)
            .collect();
        self.project(v)
    }

    fn primal_value(&self, lambda: &[f64]) -> (f64, f64) {
        let model = self
            .cuts
            .iter()
            .map(|c| c.eval(lambda))
            .fold(f64::NEG_INFINITY, f64::max);
        let prox: f64 = lambda
            .iter()
            .zip(&self.center)
            .map(|(l, c)| (l - c) * (l - c))
            .sum::<f64>()
            * self.beta
            / 2.0;
        (model, model + prox)
    }

    /// Dual value q(theta) and the corresponding primal point.
    fn dual_value(&self, theta: &[f64]) -> (f64, Vec<f64>) {
        let d = self.dim();
        let mut u = vec![0.0; d];
        for (t, c) in theta.iter().zip(&self.cuts) {
            for (ui, si) in u.iter_mut().zip(&c.subgrad) {
                *ui += t * si;
            }
        }
        let lambda = self.inner_lambda(&u);
        let mut q: f64 = theta
            .iter()
            .zip(&self.cuts)
            .map(|(t, c)| t * c.offset())
            .sum();
        q += dot(&u, &lambda);
        q += lambda
            .iter()
            .zip(&self.center)
            .map(|(l, c)| (l - c) * (l - c))
            .sum::<f64>()
            * self.beta
            / 2.0;
        (q, lambda)
    }
}

/// Solves the proximal cut-model QP by accelerated projected gradient on the
/// dual simplex weights; terminates when the primal-dual gap is within
/// `tol`. Defaults used by the bundle method: `tol = 1e-8`,
/// `max_iters = 10_000`.
pub fn prox_qp_solve(
    qp: &ProxQp,
    tol: f64,
    max_iters: usize,
) -> Result<ProxSolution, KernelError> {
    qp.check()?;
    if tol <= 0.0 {
        return Err(KernelError::BadInput("tol must be positive".into()));
    }
    let k = qp.cuts.len();
    if k == 1 {
        // Single cut: first-order condition gives the projection directly.
        let lambda = qp.inner_lambda(&qp.cuts[0].subgrad);
        let (model, objective) = qp.primal_value(&lambda);
        return Ok(ProxSolution {
            lambda,
            model_value: model,
            objective,
        });
    }

    let lipschitz = (qp
        .cuts
        .iter()
        .map(|c| dot(&c.subgrad, &c.subgrad))
        .sum::<f64>()
        / qp.beta)
        .max(1e-12);
    let step = 1.0 / lipschitz;

    let mut theta = vec![1.0 / k as f64; k];
    let mut momentum = theta.clone();
    let mut t_acc = 1.0f64;
    let mut best: Option<(f64, ProxSolution)> = None;

    for _ in 0..max_iters {
        let (q_val, lambda) = qp.dual_value(&momentum);
        let _ = q_val;
        // gradient of q at `momentum` is the cut values at lambda(momentum)
        let grad: Vec<f64> = qp.cuts.iter().map(|c| c.eval(&lambda)).collect();
        let raw: Vec<f64> = momentum
            .iter()
            .zip(&grad)
            .map(|(m, g)| m + step * g)
            .collect();
        let next = project_simplex(&raw);

        let t_next = (1.0 + (1.0 + 4.0 * t_acc * t_acc).sqrt()) / 2.0;
        let coeff = (t_acc - 1.0) / t_next;
        momentum = next
            .iter()
            .zip(&theta)
            .map(|(n, p)| n + coeff * (n - p))
            .collect();
        momentum = project_simplex(&momentum);
        theta = next;
        t_acc = t_next;

        let (q_theta, lambda_theta) = qp.dual_value(&theta);
        let (model, objective) = qp.primal_value(&lambda_theta);
        let gap = objective - q_theta;
        let candidate = ProxSolution {
            lambda: lambda_theta,
            model_value: model,
            objective,
        };
        let improved = best
            .as_ref()
            .map(|(g, _)| gap < *g)
            .unwrap_or(true);
        if improved {
            best = Some((gap, candidate));
        }
        if gap <= tol {
            return Ok(best.unwrap().1);
        }
    }
    let (gap, _) = best.as_ref().unwrap();
    Err(KernelError::NonConvergence {
        residual: *gap,
        tol,
    })
}

/// Independent route for problems with at most 3 cuts: exact concave
/// maximization of the dual over the simplex by (nested) golden-section
/// search. Returns `None` for more than 3 cuts.
pub fn prox_qp_enumerate_small(qp: &ProxQp) -> Option<Result<ProxSolution, KernelError>> {
    if let Err(e) = qp.check() {
        return Some(Err(e));
    }
    let k = qp.cuts.len();
    let finish = |theta: Vec<f64>| {
        let (_, lambda) = qp.dual_value(&theta);
        let (model, objective) = qp.primal_value(&lambda);
        Ok(ProxSolution {
            lambda,
            model_value: model,
            objective,
        })
    };
    match k {
        1 => Some(finish(vec![1.0])),
        2 => {
            let q1 = |t: f64| qp.dual_value(&[t, 1.0 - t]).0;
            let t = golden_max(&q1, 0.0, 1.0, 1e-12);
            Some(finish(vec![t, 1.0 - t]))
        }
        3 => {
            let inner = |t1: f64| {
                let q2 = |t2: f64| qp.dual_value(&[t1, t2, 1.0 - t1 - t2]).0;
                let hi = 1.0 - t1;
                let t2 = golden_max(&q2, 0.0, hi, 1e-12);
                (q2(t2), t2)
            };
            let t1 = golden_max(&|t1: f64| inner(t1).0, 0.0, 1.0, 1e-10);
            let t2 = inner(t1).1;
            Some(finish(vec![t1, t2, 1.0 - t1 - t2]))
        }
        _ => None,
    }
}

/// Golden-section maximization of a unimodal (here: concave) function.
fn golden_max(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    if b - a <= tol {
        return (a + b) / 2.0;
    }
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    (a + b) / 2.0
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumsum = 0.0;
    let mut rho = 0;
    let mut theta = 0.0;
    for (i, &s) in sorted.iter().enumerate() {
        cumsum += s;
        let t = (cumsum - 1.0) / (i + 1) as f64;
        if s - t > 0.0 {
            rho = i;
            theta = t;
        }
    }
    let _ = rho;
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lp_bound_active_minimum() {
        let lp = LinearProgram {
            objective: vec![1.0],
            rows: vec![],
            bounds: vec![(0.0, 5.0)],
        };
        let (x, v) = lp_solve(&lp).unwrap();
        assert!((x[0]).abs() < 1e-9);
        assert!(v.abs() < 1e-9);
    }

    #[test]
    fn lp_bound_active_maximum() {
        let lp = LinearProgram {
            objective: vec![-1.0],
            rows: vec![],
            bounds: vec![(0.0, 5.0)],
        };
        let (x, v) = lp_solve(&lp).unwrap();
        assert!((x[0] - 5.0).abs() < 1e-9);
        assert!((v + 5.0).abs() < 1e-9);
    }

    #[test]
    fn lp_two_cut_intersection() {
        // minimize t s.t. t >= 1 - lambda, t >= lambda - 1 over the box.
        let lp = LinearProgram {
            objective: vec![0.0, 1.0],
            rows: vec![
                (vec![1.0, 1.0], 1.0),  // lambda + t >= 1
                (vec![-1.0, 1.0], -1.0), // -lambda + t >= -1
            ],
            bounds: vec![(0.0, 10.0), (-100.0, 100.0)],
        };
        let (x, v) = lp_solve(&lp).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-8, "lambda = {}", x[0]);
        assert!(x[1].abs() < 1e-8, "t = {}", x[1]);
        assert!(v.abs() < 1e-8);
    }

    #[test]
    fn lp_negative_lower_bounds() {
        // minimize x + y with x >= -3, y in [-2, 2], x + y >= -4
        let lp = LinearProgram {
            objective: vec![1.0, 1.0],
            rows: vec![(vec![1.0, 1.0], -4.0)],
            bounds: vec![(-3.0, 3.0), (-2.0, 2.0)],
        };
        let (x, v) = lp_solve(&lp).unwrap();
        assert!((v + 4.0).abs() < 1e-8);
        assert!(x[0] + x[1] >= -4.0 - 1e-8);
    }

    #[test]
    fn lp_infeasible_detected() {
        let lp = LinearProgram {
            objective: vec![1.0],
            rows: vec![(vec![1.0], 100.0)],
            bounds: vec![(0.0, 5.0)],
        };
        assert_eq!(lp_solve(&lp).unwrap_err(), KernelError::Infeasible);
    }

    fn random_feasible_lp(rng: &mut ChaCha8Rng, n: usize, m: usize) -> LinearProgram {
        let bounds: Vec<(f64, f64)> = (0..n)
            .map(|_| {
                let lo = rng.gen_range(-3.0..0.0);
                let hi = rng.gen_range(0.5..4.0);
                (lo, hi)
            })
            .collect();
        let objective: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let mut rows = Vec::with_capacity(m);
        for _ in 0..m {
            let coeffs: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            // rhs at most the row minimum over the box, so the box stays feasible
            let min_over_box: f64 = coeffs
                .iter()
                .zip(&bounds)
                .map(|(a, (lo, hi))| if *a >= 0.0 { a * lo } else { a * hi })
                .sum();
            rows.push((coeffs, min_over_box - rng.gen_range(0.0..1.0)));
        }
        LinearProgram {
            objective,
            rows,
            bounds,
        }
    }

    #[test]
    fn lp_value_invariant_under_row_permutation_and_duplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..25 {
            let lp = random_feasible_lp(&mut rng, 4, 5);
            let (_, v) = lp_solve(&lp).unwrap();
            let mut permuted = lp.clone();
            permuted.rows.reverse();
            let (_, vp) = lp_solve(&permuted).unwrap();
            assert!((v - vp).abs() < 1e-7, "{v} vs {vp}");
            let mut duplicated = lp.clone();
            let extra = duplicated.rows[0].clone();
            duplicated.rows.push(extra);
            let (_, vd) = lp_solve(&duplicated).unwrap();
            assert!((v - vd).abs() < 1e-7, "{v} vs {vd}");
        }
    }

    fn qp_1cut(center: Vec<f64>, s: Vec<f64>, beta: f64) -> ProxQp {
        let point = center.clone();
        ProxQp {
            cuts: vec![Cut {
                point,
                value: 3.7,
                subgrad: s,
            }],
            center,
            beta,
            nonneg: true,
        }
    }

    #[test]
    fn prox_single_cut_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let d = rng.gen_range(1..6);
            let center: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..4.0)).collect();
            let s: Vec<f64> = (0..d).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let beta = rng.gen_range(0.1..5.0);
            let qp = qp_1cut(center.clone(), s.clone(), beta);
            let sol = prox_qp_solve(&qp, 1e-8, 10_000).unwrap();
            for i in 0..d {
                let expect = (center[i] - s[i] / beta).max(0.0);
                assert!(
                    (sol.lambda[i] - expect).abs() < 1e-9,
                    "component {i}: {} vs {expect}",
                    sol.lambda[i]
                );
            }
        }
    }

    #[test]
    fn prox_zero_subgradient_returns_center() {
        let qp = qp_1cut(vec![1.5, 0.0, 2.0], vec![0.0; 3], 2.0);
        let sol = prox_qp_solve(&qp, 1e-8, 10_000).unwrap();
        assert_eq!(sol.lambda, vec![1.5, 0.0, 2.0]);
        assert!((sol.model_value - 3.7).abs() < 1e-12);
    }

    #[test]
    fn prox_duplicated_cut_matches_single_cut() {
        let center = vec![2.0, 1.0];
        let s = vec![1.5, -0.5];
        let qp1 = qp_1cut(center.clone(), s.clone(), 1.0);
        let mut qp2 = qp1.clone();
        qp2.cuts.push(qp2.cuts[0].clone());
        let a = prox_qp_solve(&qp1, 1e-10, 20_000).unwrap();
        let b = prox_qp_solve(&qp2, 1e-10, 20_000).unwrap();
        for i in 0..2 {
            assert!((a.lambda[i] - b.lambda[i]).abs() < 1e-6);
        }
    }

    #[test]
    fn prox_never_worse_than_center() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..40 {
            let d = rng.gen_range(1..5);
            let k = rng.gen_range(1..5);
            let center: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..3.0)).collect();
            let cuts: Vec<Cut> = (0..k)
                .map(|_| Cut {
                    point: (0..d).map(|_| rng.gen_range(0.0..3.0)).collect(),
                    value: rng.gen_range(-5.0..5.0),
                    subgrad: (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect(),
                })
                .collect();
            let qp = ProxQp {
                cuts,
                center: center.clone(),
                beta: rng.gen_range(0.2..3.0),
                nonneg: true,
            };
            let sol = prox_qp_solve(&qp, 1e-8, 50_000).unwrap();
            let (_, at_center) = qp.primal_value(&center);
            assert!(sol.objective <= at_center + 1e-9);
        }
    }

    #[test]
    fn prox_routes_agree_on_small_cut_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..40 {
            let d = rng.gen_range(1..4);
            let k = rng.gen_range(2..4);
            let center: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..2.0)).collect();
            let cuts: Vec<Cut> = (0..k)
                .map(|_| Cut {
                    point: (0..d).map(|_| rng.gen_range(0.0..2.0)).collect(),
                    value: rng.gen_range(-3.0..3.0),
                    subgrad: (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect(),
                })
                .collect();
            let qp = ProxQp {
                cuts,
                center,
                beta: rng.gen_range(0.5..2.0),
                nonneg: true,
            };
            let iterative = prox_qp_solve(&qp, 1e-10, 100_000).unwrap();
            let enumerated = prox_qp_enumerate_small(&qp).unwrap().unwrap();
            for i in 0..d {
                assert!(
                    (iterative.lambda[i] - enumerated.lambda[i]).abs() < 1e-6,
                    "dim {i}: {} vs {}",
                    iterative.lambda[i],
                    enumerated.lambda[i]
                );
            }
        }
    }

    #[test]
    fn prox_free_domain_skips_projection() {
        let mut qp = qp_1cut(vec![0.5], vec![3.0], 1.0);
        qp.nonneg = false;
        let sol = prox_qp_solve(&qp, 1e-8, 10_000).unwrap();
        assert!((sol.lambda[0] - (0.5 - 3.0)).abs() < 1e-9);
    }

    #[test]
    fn simplex_projection_sums_to_one() {
        let p = project_simplex(&[0.4, -1.0, 2.2, 0.1]);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(p.iter().all(|&x| x >= 0.0));
    }
}
