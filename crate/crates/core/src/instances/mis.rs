//! Maximum-independent-set instances in DIMACS edge format.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{lines, InstanceError};

/// An undirected graph for the maximum independent set problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MisInstance {
    pub name: String,
    /// Vertex count.
    pub n: usize,
    /// Unordered edges stored as 0-based pairs (i, j) with i < j, sorted,
    /// no duplicates, no self-loops.
    pub edges: Vec<(usize, usize)>,
    /// Best-known independent-set size, when recorded.
    pub best_known: Option<i64>,
}

impl MisInstance {
    pub fn new(
        name: impl Into<String>,
        n: usize,
        mut edges: Vec<(usize, usize)>,
        best_known: Option<i64>,
    ) -> Result<MisInstance, InstanceError> {
        if n == 0 {
            return Err(InstanceError::invalid("graph needs at least one vertex"));
        }
        for e in edges.iter_mut() {
            if e.0 == e.1 {
                return Err(InstanceError::invalid(format!("self-loop at vertex {}", e.0)));
            }
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
            if e.1 >= n {
                return Err(InstanceError::invalid(format!(
                    "edge ({}, {}) out of range for {n} vertices",
                    e.0, e.1
                )));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(MisInstance {
            name: name.into(),
            n,
            edges,
            best_known,
        })
    }

    /// Adjacency lists derived from the edge set.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    /// Size of the selected set.
    pub fn objective(&self, x: &[bool]) -> i64 {
        x.iter().filter(|&&b| b).count() as i64
    }

    pub fn is_independent(&self, x: &[bool]) -> bool {
        self.edges.iter().all(|&(i, j)| !(x[i] && x[j]))
    }
}

/// Warnings gathered while parsing a DIMACS file.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DimacsWarnings {
    /// Number of duplicate edge lines collapsed into one stored edge.
    pub duplicate_edges: usize,
}

/// Parses DIMACS edge format: a `p edge n m` header followed by `m` lines
/// `e u v` with 1-based vertex indices. Edges are normalized to 0-based
/// ordered pairs and duplicates collapse to one edge.
///
/// A comment line `c best_known V` records a best-known objective.
pub fn parse_dimacs_graph(text: &str) -> Result<MisInstance, InstanceError> {
    parse_dimacs_graph_counting(text).map(|(inst, _)| inst)
}

/// As [`parse_dimacs_graph`], additionally reporting collapsed duplicates.
pub fn parse_dimacs_graph_counting(
    text: &str,
) -> Result<(MisInstance, DimacsWarnings), InstanceError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut raw_edge_lines = 0usize;
    let mut best_known: Option<i64> = None;
    let mut name = String::from("graph");

    for (idx, raw) in lines(text).enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next().unwrap() {
            "c" => {
                let rest: Vec<&str> = parts.collect();
                match rest.as_slice() {
                    ["best_known", v] => {
                        best_known = Some(v.parse().map_err(|_| {
                            InstanceError::parse_at(lineno, format!("bad best_known value {v:?}"))
                        })?);
                    }
                    ["name", v] => name = v.to_string(),
                    _ => {} // ordinary comment
                }
            }
            "p" => {
                if header.is_some() {
                    return Err(InstanceError::parse_at(lineno, "duplicate p header"));
                }
                let fmt = parts.next().unwrap_or("");
                if fmt != "edge" && fmt != "col" {
                    return Err(InstanceError::parse_at(
                        lineno,
                        format!("expected `p edge n m`, got format {fmt:?}"),
                    ));
                }
                let n = parse_usize(parts.next(), lineno, "vertex count")?;
                let m = parse_usize(parts.next(), lineno, "edge count")?;
                header = Some((n, m));
            }
            "e" => {
                let (n, _) = header
                    .ok_or_else(|| InstanceError::parse_at(lineno, "edge before p header"))?;
                let u = parse_usize(parts.next(), lineno, "edge endpoint")?;
                let v = parse_usize(parts.next(), lineno, "edge endpoint")?;
                if u < 1 || u > n || v < 1 || v > n {
                    return Err(InstanceError::parse_at(
                        lineno,
                        format!("edge ({u}, {v}) out of range 1..={n}"),
                    ));
                }
                if u == v {
                    return Err(InstanceError::parse_at(lineno, format!("self-loop at {u}")));
                }
                raw_edge_lines += 1;
                let (a, b) = ((u - 1).min(v - 1), (u - 1).max(v - 1));
                edges.push((a, b));
            }
            other => {
                return Err(InstanceError::parse_at(
                    lineno,
                    format!("unknown record type {other:?}"),
                ))
            }
        }
    }

    let (n, m) = header.ok_or_else(|| InstanceError::parse("missing `p edge n m` header"))?;
    if raw_edge_lines != m {
        return Err(InstanceError::parse(format!(
            "header declares {m} edges but file has {raw_edge_lines} edge lines"
        )));
    }
    let before = edges.len();
    let inst = MisInstance::new(name, n, edges, best_known)?;
    let warnings = DimacsWarnings {
        duplicate_edges: before - inst.edges.len(),
    };
    Ok((inst, warnings))
}

fn parse_usize(tok: Option<&str>, lineno: usize, what: &str) -> Result<usize, InstanceError> {
    let tok = tok.ok_or_else(|| InstanceError::parse_at(lineno, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| InstanceError::parse_at(lineno, format!("bad {what} {tok:?}")))
}

/// Writes DIMACS edge format with 1-based endpoints.
pub fn write_dimacs(inst: &MisInstance) -> String {
    let mut out = String::new();
    out.push_str(&format!("c name {}\n", inst.name));
    if let Some(best) = inst.best_known {
        out.push_str(&format!("c best_known {best}\n"));
    }
    out.push_str(&format!("p edge {} {}\n", inst.n, inst.edges.len()));
    for &(i, j) in &inst.edges {
        out.push_str(&format!("e {} {}\n", i + 1, j + 1));
    }
    out
}

/// Generates a G(n, p) random graph, deterministic per seed.
pub fn generate_mis(n: usize, edge_prob: f64, seed: u64) -> Result<MisInstance, InstanceError> {
    if n == 0 {
        return Err(InstanceError::invalid("n must be positive"));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(InstanceError::invalid("edge_prob must be in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen::<f64>() < edge_prob {
                edges.push((i, j));
            }
        }
    }
    MisInstance::new(format!("gnp{n}-s{seed}"), n, edges, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let inst = parse_dimacs_graph("p edge 2 1\ne 1 2\n").unwrap();
        assert_eq!(inst.n, 2);
        assert_eq!(inst.edges, vec![(0, 1)]);
    }

    #[test]
    fn duplicates_collapse_and_are_counted() {
        let (inst, warn) =
            parse_dimacs_graph_counting("p edge 2 2\ne 1 2\ne 1 2\n").unwrap();
        assert_eq!(inst.edges, vec![(0, 1)]);
        assert_eq!(warn.duplicate_edges, 1);
    }

    #[test]
    fn reversed_duplicate_also_collapses() {
        let (inst, warn) =
            parse_dimacs_graph_counting("p edge 3 3\ne 2 1\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(inst.edges, vec![(0, 1), (1, 2)]);
        assert_eq!(warn.duplicate_edges, 1);
    }

    #[test]
    fn cycle_graph_has_all_degrees_two() {
        // 8-vertex cycle; count degrees independently of the adjacency helper.
        let mut text = String::from("p edge 8 8\n");
        for i in 1..=8 {
            let j = if i == 8 { 1 } else { i + 1 };
            text.push_str(&format!("e {i} {j}\n"));
        }
        let inst = parse_dimacs_graph(&text).unwrap();
        assert_eq!(inst.n, 8);
        assert_eq!(inst.edges.len(), 8);
        let mut deg = vec![0usize; 8];
        for &(a, b) in &inst.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        assert!(deg.iter().all(|&d| d == 2));
    }

    #[test]
    fn edge_count_mismatch_is_an_error() {
        let err = parse_dimacs_graph("p edge 3 2\ne 1 2\n").unwrap_err();
        assert!(err.to_string().contains("edge lines"), "{err}");
    }

    #[test]
    fn out_of_range_vertex_is_an_error() {
        assert!(parse_dimacs_graph("p edge 2 1\ne 1 5\n").is_err());
        assert!(parse_dimacs_graph("p edge 2 1\ne 1 1\n").is_err());
    }

    #[test]
    fn best_known_comment_roundtrips() {
        let inst = MisInstance::new("t", 4, vec![(0, 1), (2, 3)], Some(2)).unwrap();
        let back = parse_dimacs_graph(&write_dimacs(&inst)).unwrap();
        assert_eq!(back, inst);
    }

    #[test]
    fn generator_is_deterministic() {
        let a = generate_mis(10, 0.3, 7).unwrap();
        let b = generate_mis(10, 0.3, 7).unwrap();
        assert_eq!(a, b);
    }
}
