//! The full benchmark loop in a scratch directory: generate, run three
//! methods, evaluate and report.

use topobench::harness::{cmd_evaluate, cmd_generate, cmd_report, cmd_run, Method, RunConfig};
use topobench::synth::GeneratorConfig;

fn main() -> topobench::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(12);
    let dir = tempfile::tempdir()?;
    let (bench, run, results) = (dir.path().join("bench"), dir.path().join("run"), dir.path().join("results"));

    let m = cmd_generate(&GeneratorConfig::default(), n, 20260422, &bench, false)?;
    println!("generated {} samples", m.samples.len());

    let cfg = RunConfig::new(&bench, Method::parse_list("screeb,screebtower,mapper")?, &run);
    let s = cmd_run(&cfg)?;
    println!("run: {} ok, {} failed", s.ok, s.failed);
    let again = cmd_run(&cfg)?;
    println!("rerun reused {} outputs", again.cached);

    let summary = cmd_evaluate(&bench, &run, &results)?;
    print!("{}", summary.to_csv());
    let report = cmd_report(&results)?;
    print!("{}", report.table);
    println!("{} stratified rows", report.rows);
    Ok(())
}
