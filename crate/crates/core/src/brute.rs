//! Exact reference optima for small instances.
//!
//! The pipeline uses these to fill in best-known objectives (TSP has no
//! best-known field in its file format) and the generators use them to
//! stamp best-known values into synthetic benchmark files.

use crate::instances::{MdkpInstance, MisInstance, TspInstance};

/// Exact MDKP optimum by subset enumeration. Caps at 24 items.
pub fn mdkp_optimum(inst: &MdkpInstance) -> Option<(i64, Vec<bool>)> {
    if inst.n > 24 {
        return None;
    }
    let mut best = (0i64, vec![false; inst.n]); // empty set is feasible
    for mask in 0..(1u64 << inst.n) {
        let x: Vec<bool> = (0..inst.n).map(|i| mask >> i & 1 == 1).collect();
        if inst.is_feasible(&x) {
            let obj = inst.objective(&x);
            if obj > best.0 {
                best = (obj, x);
            }
        }
    }
    Some(best)
}

/// Exact MIS optimum by subset enumeration. Caps at 24 vertices.
pub fn mis_optimum(inst: &MisInstance) -> Option<(i64, Vec<bool>)> {
    if inst.n > 24 {
        return None;
    }
    let mut best = (0i64, vec![false; inst.n]);
    for mask in 0..(1u64 << inst.n) {
        let x: Vec<bool> = (0..inst.n).map(|i| mask >> i & 1 == 1).collect();
        if inst.is_independent(&x) {
            let obj = inst.objective(&x);
            if obj > best.0 {
                best = (obj, x);
            }
        }
    }
    Some(best)
}

/// Exact optimal tour cost by bitmask dynamic programming over subsets.
/// Caps at 14 cities.
pub fn tsp_optimum(inst: &TspInstance) -> Option<i64> {
    let n = inst.n;
    if n > 14 {
        return None;
    }
    // dp[mask][v]: cheapest path from city 0 visiting exactly `mask`
    // (which always contains 0 and v), ending at v.
    let full = 1usize << n;
    let mut dp = vec![vec![i64::MAX; n]; full];
    dp[1][0] = 0;
    for mask in 1..full {
        if mask & 1 == 0 {
            continue;
        }
        for v in 0..n {
            if mask & (1 << v) == 0 || dp[mask][v] == i64::MAX {
                continue;
            }
            for u in 1..n {
                if mask & (1 << u) != 0 {
                    continue;
                }
                let next = mask | (1 << u);
                let cand = dp[mask][v] + inst.dist[v][u];
                if cand < dp[next][u] {
                    dp[next][u] = cand;
                }
            }
        }
    }
    (1..n)
        .filter(|&v| dp[full - 1][v] != i64::MAX)
        .map(|v| dp[full - 1][v] + inst.dist[v][0])
        .min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{generate_tsp, MdkpInstance, MisInstance};

    #[test]
    fn knapsack_optimum() {
        let inst =
            MdkpInstance::new("k3", vec![10, 6, 4], vec![vec![5, 4, 3]], vec![7], None).unwrap();
        let (best, x) = mdkp_optimum(&inst).unwrap();
        assert_eq!(best, 10);
        assert!(inst.is_feasible(&x));
    }

    #[test]
    fn c5_mis_optimum_is_two() {
        let edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let inst = MisInstance::new("c5", 5, edges, None).unwrap();
        assert_eq!(mis_optimum(&inst).unwrap().0, 2);
    }

    #[test]
    fn tsp_dp_matches_permutation_enumeration() {
        let inst = generate_tsp(7, 31, 100).unwrap();
        let dp = tsp_optimum(&inst).unwrap();
        // independent oracle: permutations fixing city 0
        let mut perm: Vec<usize> = (1..7).collect();
        let mut best = i64::MAX;
        permute(&mut perm, 0, &mut |p: &[usize]| {
            let mut tour = vec![0];
            tour.extend_from_slice(p);
            best = best.min(inst.tour_cost(&tour));
        });
        assert_eq!(dp, best);
    }

    fn permute(arr: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == arr.len() {
            visit(arr);
            return;
        }
        for i in k..arr.len() {
            arr.swap(k, i);
            permute(arr, k + 1, visit);
            arr.swap(k, i);
        }
    }
}
