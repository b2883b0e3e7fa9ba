//! Symmetric Euclidean TSP instances and the TSPLIB subset used to store them.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{lines, InstanceError, GENERATOR_ID};

/// A symmetric TSP instance with integer coordinates and an integer
/// Euclidean distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TspInstance {
    pub name: String,
    /// Number of cities, at least 3.
    pub n: usize,
    /// 2D integer coordinates, one per city.
    pub coords: Vec<(i64, i64)>,
    /// n x n distance matrix: symmetric, zero diagonal, nonnegative.
    pub dist: Vec<Vec<i64>>,
    /// Free-form metadata (generator id, seed); round-trips through COMMENT.
    pub comment: Option<String>,
}

impl TspInstance {
    /// Builds an instance from coordinates, computing rounded Euclidean
    /// distances. Rounding is to the nearest integer, ties away from zero.
    pub fn from_coords(
        name: impl Into<String>,
        coords: Vec<(i64, i64)>,
        comment: Option<String>,
    ) -> Result<TspInstance, InstanceError> {
        let n = coords.len();
        if n < 3 {
            return Err(InstanceError::invalid(format!(
                "TSP instance needs at least 3 cities, got {n}"
            )));
        }
        let mut dist = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = euclidean_rounded(coords[i], coords[j]);
                dist[i][j] = d;
                dist[j][i] = d;
            }
        }
        Ok(TspInstance {
            name: name.into(),
            n,
            coords,
            dist,
            comment,
        })
    }

    /// Cost of an edge set (edges need not form a tour).
    pub fn edge_set_cost(&self, edges: &[(usize, usize)]) -> i64 {
        edges.iter().map(|&(i, j)| self.dist[i][j]).sum()
    }

    /// Cost of a tour given as a city permutation (implicitly closed).
    pub fn tour_cost(&self, tour: &[usize]) -> i64 {
        let n = tour.len();
        (0..n).map(|i| self.dist[tour[i]][tour[(i + 1) % n]]).sum()
    }

    pub fn max_dist(&self) -> i64 {
        self.dist
            .iter()
            .flat_map(|row| row.iter().copied())
            .max()
            .unwrap_or(0)
    }
}

fn euclidean_rounded(a: (i64, i64), b: (i64, i64)) -> i64 {
    let dx = (a.0 - b.0) as f64;
    let dy = (a.1 - b.1) as f64;
    (dx * dx + dy * dy).sqrt().round() as i64
}

/// Generates a random TSP instance by sampling integer coordinates uniformly
/// from [0, coord_range]. Deterministic per (n, seed, coord_range).
pub fn generate_tsp(n: usize, seed: u64, coord_range: i64) -> Result<TspInstance, InstanceError> {
    if n < 3 {
        return Err(InstanceError::invalid(format!(
            "cannot generate a TSP instance with {n} < 3 cities"
        )));
    }
    if coord_range <= 0 {
        return Err(InstanceError::invalid("coord_range must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords: Vec<(i64, i64)> = (0..n)
        .map(|_| {
            (
                rng.gen_range(0..=coord_range),
                rng.gen_range(0..=coord_range),
            )
        })
        .collect();
    let comment = format!("generator={GENERATOR_ID} seed={seed} coord_range={coord_range}");
    TspInstance::from_coords(format!("rnd{n}-s{seed}"), coords, Some(comment))
}

/// Writes the TSPLIB subset understood by [`parse_tsplib`]:
/// NAME / TYPE / COMMENT / DIMENSION / EDGE_WEIGHT_TYPE / NODE_COORD_SECTION / EOF.
pub fn write_tsplib(inst: &TspInstance) -> String {
    let mut out = String::new();
    out.push_str(&format!("NAME: {}\n", inst.name));
    out.push_str("TYPE: TSP\n");
    if let Some(c) = &inst.comment {
        out.push_str(&format!("COMMENT: {c}\n"));
    }
    out.push_str(&format!("DIMENSION: {}\n", inst.n));
    out.push_str("EDGE_WEIGHT_TYPE: EUC_2D\n");
    out.push_str("NODE_COORD_SECTION\n");
    for (i, (x, y)) in inst.coords.iter().enumerate() {
        out.push_str(&format!("{} {} {}\n", i + 1, x, y));
    }
    out.push_str("EOF\n");
    out
}

/// Parses the EUC_2D TSPLIB subset. Requires TYPE: TSP, EDGE_WEIGHT_TYPE:
/// EUC_2D, a DIMENSION and a NODE_COORD_SECTION; errors name the offending line.
pub fn parse_tsplib(text: &str) -> Result<TspInstance, InstanceError> {
    let mut name = String::from("unnamed");
    let mut comment: Option<String> = None;
    let mut dimension: Option<usize> = None;
    let mut type_ok = false;
    let mut weight_ok = false;
    let mut coords: Vec<(i64, i64)> = Vec::new();
    let mut in_coords = false;
    let mut saw_section = false;

    for (idx, raw) in lines(text).enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            break;
        }
        if in_coords {
            let mut parts = line.split_whitespace();
            let _index = parts
                .next()
                .ok_or_else(|| InstanceError::parse_at(lineno, "empty coordinate line"))?;
            let x = parse_coord(parts.next(), lineno)?;
            let y = parse_coord(parts.next(), lineno)?;
            coords.push((x, y));
            if Some(coords.len()) == dimension {
                in_coords = false;
            }
            continue;
        }
        if line == "NODE_COORD_SECTION" {
            if dimension.is_none() {
                return Err(InstanceError::parse_at(
                    lineno,
                    "NODE_COORD_SECTION before DIMENSION",
                ));
            }
            saw_section = true;
            in_coords = true;
            continue;
        }
        let (key, value) = match line.split_once(':') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => {
                return Err(InstanceError::parse_at(
                    lineno,
                    format!("expected KEY: VALUE, got {line:?}"),
                ))
            }
        };
        match key {
            "NAME" => name = value.to_string(),
            "COMMENT" => comment = Some(value.to_string()),
            "TYPE" => {
                if value != "TSP" {
                    return Err(InstanceError::parse_at(
                        lineno,
                        format!("unsupported TYPE {value:?}, only TSP is supported"),
                    ));
                }
                type_ok = true;
            }
            "EDGE_WEIGHT_TYPE" => {
                if value != "EUC_2D" {
                    return Err(InstanceError::parse_at(
                        lineno,
                        format!("unsupported EDGE_WEIGHT_TYPE {value:?}, only EUC_2D is supported"),
                    ));
                }
                weight_ok = true;
            }
            "DIMENSION" => {
                let d: usize = value.parse().map_err(|_| {
                    InstanceError::parse_at(lineno, format!("non-numeric DIMENSION {value:?}"))
                })?;
                dimension = Some(d);
            }
            _ => {} // unknown keywords are skipped (DISPLAY_DATA_TYPE etc.)
        }
    }

    if !type_ok {
        return Err(InstanceError::parse("missing TYPE: TSP"));
    }
    if !weight_ok {
        return Err(InstanceError::parse("missing EDGE_WEIGHT_TYPE: EUC_2D"));
    }
    let dim = dimension.ok_or_else(|| InstanceError::parse("missing DIMENSION"))?;
    if !saw_section {
        return Err(InstanceError::parse("missing NODE_COORD_SECTION"));
    }
    if coords.len() != dim {
        return Err(InstanceError::parse(format!(
            "DIMENSION is {dim} but found {} coordinate lines",
            coords.len()
        )));
    }
    TspInstance::from_coords(name, coords, comment)
}

fn parse_coord(tok: Option<&str>, lineno: usize) -> Result<i64, InstanceError> {
    let tok =
        tok.ok_or_else(|| InstanceError::parse_at(lineno, "missing coordinate component"))?;
    let v: f64 = tok.parse().map_err(|_| {
        InstanceError::parse_at(lineno, format!("non-numeric coordinate {tok:?}"))
    })?;
    if v.fract() != 0.0 {
        return Err(InstanceError::parse_at(
            lineno,
            format!("non-integer coordinate {tok:?} (only integer EUC_2D is supported)"),
        ));
    }
    Ok(v as i64)
}
