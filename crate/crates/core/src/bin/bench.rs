use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use topobench::harness::{cmd_evaluate, cmd_generate, cmd_report, cmd_run, Method, MethodParams, RunConfig};
use topobench::synth::GeneratorConfig;

#[derive(Parser)]
#[command(name = "bench", about = "Generate, run, score and report topology benchmarks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a synthetic benchmark directory.
    Generate {
        /// Generator config JSON (defaults to the full preset).
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20260422)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        force: bool,
    },
    /// Run methods over a benchmark.
    Run {
        #[arg(long)]
        bench: PathBuf,
        /// Comma-separated: screeb, screebtower, mapper, oracle, external:<dir>.
        #[arg(long, default_value = "screeb,screebtower,mapper")]
        methods: String,
        /// JSON with optional "reeb" and "mapper" parameter objects.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, env = "BENCH_WORKERS")]
        workers: Option<usize>,
        /// Tower level scored for screebtower (default: last).
        #[arg(long)]
        level: Option<usize>,
    },
    /// Score run outputs against the latent graphs.
    Evaluate {
        #[arg(long)]
        bench: PathBuf,
        #[arg(long)]
        run: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the summary table and write stratified CSV.
    Report {
        #[arg(long)]
        results: PathBuf,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome: topobench::Result<u8> = (|| match cli.cmd {
        Cmd::Generate { config, n, seed, out, force } => {
            let cfg = match config {
                Some(p) => GeneratorConfig::from_json_str(&std::fs::read_to_string(&p)?)?,
                None => GeneratorConfig::default(),
            };
            let m = cmd_generate(&cfg, n, seed, &out, force)?;
            println!("generated {} samples in {}", m.n, out.display());
            Ok(0)
        }
        Cmd::Run { bench, methods, params, out, workers, level } => {
            let mut cfg = RunConfig::new(bench, Method::parse_list(&methods)?, out);
            if let Some(p) = params {
                cfg.params = MethodParams::from_file(&p)?;
            }
            cfg.workers = workers;
            cfg.level = level;
            let s = cmd_run(&cfg)?;
            println!("{} ok, {} failed, {} reused", s.ok, s.failed, s.cached);
            Ok(if s.failed > 0 { 2 } else { 0 })
        }
        Cmd::Evaluate { bench, run, out } => {
            let s = cmd_evaluate(&bench, &run, &out)?;
            print!("{}", s.to_csv());
            Ok(if s.excluded() > 0 { 2 } else { 0 })
        }
        Cmd::Report { results } => {
            let r = cmd_report(&results)?;
            print!("{}", r.table);
            Ok(0)
        }
    })();
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
