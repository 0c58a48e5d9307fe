//! Flat tables for plotting.

use super::run::{Payload, RunRecord};
use crate::equidist::sample::fmt_f64;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Csv,
    Jsonl,
}

enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => fmt_f64(*x),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) if x.is_finite() => fmt_f64(*x),
            Cell::Float(_) => "null".into(),
            Cell::Text(s) => serde_json::to_string(s).expect("string serializes"),
        }
    }
}

/// Column names and rows of a tabular payload.
fn columns(p: &Payload) -> Result<(Vec<String>, Vec<Vec<Cell>>)> {
    let mode_cols = |n: usize| {
        let mut c: Vec<String> = (1..=n).map(|i| format!("k{i}")).collect();
        c.extend(["re", "im", "abs_diff"].map(String::from));
        c
    };
    let mode_rows = |rows: &[super::run::ModeRow]| {
        rows.iter()
            .map(|m| {
                let mut r: Vec<Cell> = m.k.iter().map(|&k| Cell::Int(k)).collect();
                r.extend([Cell::Float(m.re), Cell::Float(m.im), Cell::Float(m.abs_diff)]);
                r
            })
            .collect()
    };
    match p {
        Payload::Height { coordinates, .. } => Ok((
            vec!["coordinate".into(), "value".into(), "height".into()],
            coordinates
                .iter()
                .enumerate()
                .map(|(i, c)| vec![Cell::Int(i as i64 + 1), Cell::Text(c.value.clone()), Cell::Float(c.height)])
                .collect(),
        )),
        Payload::Orbit { n, modes, .. } => Ok((mode_cols(*n), mode_rows(modes))),
        Payload::Equidist { modes, .. } => Ok((mode_cols(2), mode_rows(modes))),
        Payload::Scan { reports, .. } => Ok((
            vec!["member".into(), "threshold".into(), "count".into()],
            reports
                .iter()
                .flat_map(|r| r.table_rows())
                .map(|(m, t, c)| vec![Cell::Int(m as i64), Cell::Float(t), Cell::Int(c as i64)])
                .collect(),
        )),
        Payload::Stabilizer { .. } | Payload::Pinning { .. } => Err(Error::Capability(
            "this payload is not tabular; use the JSON run record".into(),
        )),
    }
}

/// The payload as CSV (with header) or JSON lines, floats at 17 significant
/// digits, columns in a fixed order.
pub fn emit_table(record: &RunRecord, format: TableFormat) -> Result<Vec<u8>> {
    let (cols, rows) = columns(&record.payload)?;
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            out.push_str(&cols.join(","));
            out.push('\n');
            for r in rows {
                let cells: Vec<String> = r.iter().map(Cell::csv).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        TableFormat::Jsonl => {
            for r in rows {
                let fields: Vec<String> = cols
                    .iter()
                    .zip(&r)
                    .map(|(c, v)| format!("{}:{}", serde_json::to_string(c).expect("key"), v.json()))
                    .collect();
                out.push('{');
                out.push_str(&fields.join(","));
                out.push_str("}\n");
            }
        }
    }
    Ok(out.into_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::{run_experiment, ExperimentConfig};

    fn record(json: &str) -> RunRecord {
        run_experiment(&ExperimentConfig::from_json(json).unwrap()).unwrap()
    }

    #[test]
    fn orbit_csv_schema() {
        let r = record(r#"{"kind":"orbit","point":"(zeta(5), zeta(5)^2)","K":1}"#);
        let csv = String::from_utf8(emit_table(&r, TableFormat::Csv).unwrap()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "k1,k2,re,im,abs_diff");
        assert_eq!(lines.len(), 1 + 8);
        assert!(lines[1].starts_with("-1,-1,"));
    }

    #[test]
    fn jsonl_rows_parse() {
        let r = record(r#"{"kind":"height","point":"(2, 1/2)"}"#);
        let out = String::from_utf8(emit_table(&r, TableFormat::Jsonl).unwrap()).unwrap();
        let rows: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1]["value"], "1/2");
        assert!((rows[1]["height"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn empty_scan_is_header_only() {
        let r = record(r#"{"kind":"bogomolov-scan","family":"?*x + ?*y - 1","members":[],"thresholds":[0.05]}"#);
        let csv = emit_table(&r, TableFormat::Csv).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap(), "member,threshold,count\n");
    }

    #[test]
    fn non_tabular_is_a_capability_error() {
        let r = record(r#"{"kind":"stabilizer","curve":"x + y - 1"}"#);
        assert!(matches!(emit_table(&r, TableFormat::Csv), Err(Error::Capability(_))));
    }
}
