//! Configurations, run records and plot tables, as used by the CLI.

use toric_lab::experiment::{emit_table, run_experiment, ExperimentConfig, Inputs, RunRecord, TableFormat};
use toric_lab::Result;

pub fn run_example() -> Result<()> {
    let cfg = ExperimentConfig::from_json(r#"{"kind":"orbit","point":"(zeta(7), zeta(7)^3)","K":2}"#)?;
    let rec = run_experiment(&cfg)?;
    print!("{}", String::from_utf8_lossy(&emit_table(&rec, TableFormat::Csv)?));

    let cfg = ExperimentConfig::new(Inputs::Equidist {
        curve: "x + y - 1".into(),
        n: 2000,
        k_max: 1,
        sample_path: None,
    })
    .with_seed(11);
    let rec = run_experiment(&cfg)?;
    print!("{}", String::from_utf8_lossy(&emit_table(&rec, TableFormat::Jsonl)?));

    // Records round-trip; only wall_time differs between reruns.
    let again = RunRecord::from_json(&rec.to_json())?;
    println!("round trip equal: {}", again.payload == rec.payload);
    let rerun = run_experiment(&cfg)?;
    println!("rerun payload identical: {}", rerun.payload.to_json() == rec.payload.to_json());

    match ExperimentConfig::from_json(r#"{"kind":"equidist","curve":"y - x","N":0}"#) {
        Err(e) => println!("rejected: {e} (exit code {})", e.exit_code()),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
