use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use toric_lab::experiment::{emit_table, run_experiment, ExperimentConfig, TableFormat};
use toric_lab::{Error, Result};

#[derive(Parser)]
#[command(name = "toric-lab", version, about = "Heights, orbits and equidistribution experiments on algebraic tori")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// JSON experiment config; its keys take precedence over inline flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (stdout if absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Emit the payload as a table instead of the JSON run record.
    #[arg(long, global = true, value_enum)]
    format: Option<TableFormat>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weil and canonical heights of a point, e.g. "(2, 1/2)".
    Height {
        #[arg(long)]
        point: Option<String>,
    },
    /// Galois orbit of a cyclotomic point and its Weyl sums.
    Orbit {
        #[arg(long)]
        point: Option<String>,
        #[arg(long = "k-max")]
        k_max: Option<u32>,
    },
    /// Equilibrium-measure sample of a curve.
    Equidist {
        #[arg(long)]
        curve: Option<String>,
        #[arg(long = "n")]
        n: Option<usize>,
        #[arg(long = "k-max")]
        k_max: Option<u32>,
        #[arg(long = "sample-out")]
        sample_out: Option<PathBuf>,
    },
    /// Stabilizer, coset type and generation test.
    Stabilizer {
        #[arg(long)]
        curve: Option<String>,
    },
    /// Small-point scan over members of a coefficient family.
    Scan {
        #[arg(long)]
        family: Option<String>,
        /// Comma-separated parameter values; repeat per member.
        #[arg(long = "member")]
        members: Vec<String>,
        #[arg(long = "threshold")]
        thresholds: Vec<f64>,
    },
    /// Pinning points of a family on a corpus of exact points.
    Pin {
        #[arg(long)]
        family: Option<String>,
        /// An exact point such as "(1, 2)"; repeat for each.
        #[arg(long = "point")]
        points: Vec<String>,
        #[arg(long)]
        u: Option<usize>,
    },
}

fn put<T: Into<Value>>(m: &mut Map<String, Value>, k: &str, v: Option<T>) {
    if let Some(v) = v {
        m.insert(k.into(), v.into());
    }
}

/// Inline flags as a config object.
fn inline(cmd: Cmd) -> Map<String, Value> {
    let mut m = Map::new();
    match cmd {
        Cmd::Height { point } => {
            m.insert("kind".into(), "height".into());
            put(&mut m, "point", point);
        }
        Cmd::Orbit { point, k_max } => {
            m.insert("kind".into(), "orbit".into());
            put(&mut m, "point", point);
            put(&mut m, "K", k_max);
        }
        Cmd::Equidist { curve, n, k_max, sample_out } => {
            m.insert("kind".into(), "equidist".into());
            put(&mut m, "curve", curve);
            put(&mut m, "N", n);
            put(&mut m, "K", k_max);
            put(&mut m, "sample_path", sample_out.map(|p| p.display().to_string()));
        }
        Cmd::Stabilizer { curve } => {
            m.insert("kind".into(), "stabilizer".into());
            put(&mut m, "curve", curve);
        }
        Cmd::Scan { family, members, thresholds } => {
            m.insert("kind".into(), "bogomolov-scan".into());
            put(&mut m, "family", family);
            let members: Vec<Value> = members
                .iter()
                .map(|s| json!(s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect::<Vec<_>>()))
                .collect();
            m.insert("members".into(), members.into());
            if !thresholds.is_empty() {
                m.insert("thresholds".into(), thresholds.into());
            }
        }
        Cmd::Pin { family, points, u } => {
            m.insert("kind".into(), "pinning".into());
            put(&mut m, "family", family);
            m.insert("corpus".into(), points.into());
            put(&mut m, "u", u);
        }
    }
    m
}

fn run(cli: Cli) -> Result<()> {
    let c = cli.common;
    if let Some(t) = c.threads {
        if t == 0 {
            return Err(Error::config("threads", "must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::config("threads", e.to_string()))?;
    }
    let mut doc = inline(cli.cmd);
    let kind = doc["kind"].clone();
    put(&mut doc, "seed", c.seed);
    if let Some(path) = &c.config {
        let text = std::fs::read_to_string(path).map_err(|e| Error::config("config", format!("{}: {e}", path.display())))?;
        let file: Value = serde_json::from_str(&text).map_err(|e| Error::config("config", e.to_string()))?;
        let Value::Object(file) = file else {
            return Err(Error::config("config", "expected a JSON object"));
        };
        if file.get("kind").is_some_and(|k| *k != kind) {
            return Err(Error::config("kind", format!("config is for {}, subcommand is {kind}", file["kind"])));
        }
        doc.extend(file);
    }
    let cfg = ExperimentConfig::from_value(Value::Object(doc))?;
    let record = run_experiment(&cfg)?;
    for w in &record.warnings {
        eprintln!("warning: {w}");
    }
    let bytes = match c.format {
        Some(f) => emit_table(&record, f)?,
        None => {
            let mut s = record.to_json();
            s.push('\n');
            s.into_bytes()
        }
    };
    match c.out.or(cfg.output) {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("toric-lab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
