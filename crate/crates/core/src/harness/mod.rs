//! On-disk benchmark pipeline: generate a benchmark directory, run methods
//! over it, score their outputs and summarise the scores.

mod evaluate;
mod generate;
mod methods;
mod report;
mod run;

pub use evaluate::{cmd_evaluate, EvalSummary, SampleResult, AGGREGATE_FILE};
pub use generate::{cmd_generate, load_manifest, Manifest, FORMAT_VERSION};
pub use methods::{Method, MethodParams, RunConfig};
pub use report::{cmd_report, Report, STRATIFIED_FILE};
pub use run::{cmd_run, RunSummary, SampleStatus};

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

pub(crate) fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub(crate) fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

pub(crate) fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| Error::Harness(format!("cannot start worker pool: {e}")))
}
