//! Aggregation of result CSVs into summary tables and plot-ready data.

use std::collections::BTreeMap;
use std::path::Path;

use crate::pipeline::{write_atomic, PipelineError, RunRecord, STATUS_OK, STATUS_QUBIT_LIMIT};

/// Reads a results CSV (skipping `#` comment lines) back into records.
pub fn load_records_csv(path: &Path) -> Result<Vec<RunRecord>, PipelineError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| PipelineError::Config(e.to_string()))?;
    let mut records = Vec::new();
    for row in reader.deserialize() {
        records.push(row.map_err(|e| PipelineError::Config(e.to_string()))?);
    }
    Ok(records)
}

/// `times.csv`: per-method mean classical and solver seconds.
pub fn times_csv_string(records: &[RunRecord]) -> String {
    let mut sums: BTreeMap<&str, (f64, f64, usize)> = BTreeMap::new();
    for r in records {
        let entry = sums.entry(&r.method).or_insert((0.0, 0.0, 0));
        entry.0 += r.classical_time_s;
        entry.1 += r.solver_time_s;
        entry.2 += 1;
    }
    let mut out = String::from("method,mean_classical_s,mean_solver_s\n");
    for (method, (c, s, n)) in sums {
        out.push_str(&format!("{},{},{}\n", method, c / n as f64, s / n as f64));
    }
    out
}

pub fn write_times_csv(records: &[RunRecord], path: &Path) -> Result<(), PipelineError> {
    write_atomic(path, &times_csv_string(records))
}

fn status_cell(records: &[&RunRecord]) -> String {
    // aggregate over seeds: mean metric of ok rows; capacity and error
    // markers mirror benchmark-table conventions
    let ok: Vec<f64> = records
        .iter()
        .filter(|r| r.status == STATUS_OK)
        .filter_map(|r| r.metric_value)
        .collect();
    if !ok.is_empty() {
        let mean = ok.iter().sum::<f64>() / ok.len() as f64;
        return format!("{mean:.2}");
    }
    if records.iter().any(|r| r.status == STATUS_QUBIT_LIMIT) {
        return "Q.L".to_string();
    }
    "--".to_string()
}

/// Per-problem summary table: one row per instance, one column per method,
/// cells holding the seed-mean metric (gap % for TSP/MDKP, RSQ % for MIS)
/// or a Q.L / -- marker.
pub fn summary_table_string(records: &[RunRecord]) -> String {
    let mut out = String::new();
    let problems: Vec<String> = {
        let mut p: Vec<String> = records.iter().map(|r| r.problem.clone()).collect();
        p.sort();
        p.dedup();
        p
    };
    for problem in problems {
        let rows: Vec<&RunRecord> = records.iter().filter(|r| r.problem == problem).collect();
        let metric = rows
            .iter()
            .find_map(|r| r.metric_kind.clone())
            .unwrap_or_else(|| "metric".into());
        let mut methods: Vec<String> = rows.iter().map(|r| r.method.clone()).collect();
        methods.sort();
        methods.dedup();
        let mut instances: Vec<(String, usize, usize)> = rows
            .iter()
            .map(|r| (r.instance.clone(), r.qubits_slack, r.qubits_slackfree))
            .collect();
        instances.dedup();

        out.push_str(&format!("## {problem} ({metric} %)\n"));
        out.push_str("instance,qubits_s,qubits_ns");
        for m in &methods {
            out.push_str(&format!(",{m}"));
        }
        out.push('\n');
        for (instance, qs, qns) in instances {
            out.push_str(&format!("{instance},{qs},{qns}"));
            for m in &methods {
                let cell: Vec<&RunRecord> = rows
                    .iter()
                    .filter(|r| r.instance == instance && &r.method == m)
                    .copied()
                    .collect();
                out.push_str(&format!(",{}", status_cell(&cell)));
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

pub fn write_summary(records: &[RunRecord], path: &Path) -> Result<(), PipelineError> {
    write_atomic(path, &summary_table_string(records))
}
