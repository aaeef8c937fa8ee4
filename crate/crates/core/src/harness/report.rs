use std::fmt::Write as _;
use std::path::Path;

use super::evaluate::{SampleResult, RESULTS};
use super::read_json;
use crate::error::{Error, Result};

pub const STRATIFIED_FILE: &str = "stratified.csv";

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub table: String,
    pub methods: Vec<String>,
    pub rows: usize,
}

fn collect(results: &Path) -> Result<Vec<SampleResult>> {
    let mut out = Vec::new();
    let Ok(methods) = std::fs::read_dir(results) else {
        return Ok(out);
    };
    let mut method_dirs: Vec<_> = methods.filter_map(|e| e.ok()).map(|e| e.path()).filter(|p| p.is_dir()).collect();
    method_dirs.sort();
    for m in method_dirs {
        let mut samples: Vec<_> = std::fs::read_dir(&m)?.filter_map(|e| e.ok()).map(|e| e.path()).collect();
        samples.sort();
        for s in samples {
            let f = s.join(RESULTS);
            if f.is_file() {
                out.push(read_json(&f)?);
            }
        }
    }
    Ok(out)
}

fn cell(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.6}")).unwrap_or_default()
}

/// Summary table over `results` (an evaluation output directory), plus
/// `stratified.csv` with one row per (sample, method) and the requested
/// difficulty coordinates.
pub fn cmd_report(results: &Path) -> Result<Report> {
    let all = collect(results)?;
    if all.is_empty() {
        return Err(Error::Harness(format!("no results in {}", results.display())));
    }
    let mut methods: Vec<String> = all.iter().map(|r| r.method.clone()).collect();
    methods.dedup();

    let mut table = format!("{:<24}", "metric");
    for m in &methods {
        let _ = write!(table, " {m:>14}");
    }
    table.push('\n');
    type Row = (&'static str, fn(&[&SampleResult]) -> String);
    let rows: [Row; 4] = [
        ("wasserstein similarity", |rs| {
            let v: Vec<f64> = rs.iter().filter_map(|r| r.wasserstein_similarity).collect();
            cell((!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64))
        }),
        ("graph edit distance", |rs| {
            let v: Vec<f64> = rs.iter().filter_map(|r| r.ged).collect();
            cell((!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64))
        }),
        ("scored", |rs| rs.iter().filter(|r| r.scored).count().to_string()),
        ("excluded", |rs| rs.iter().filter(|r| !r.scored).count().to_string()),
    ];
    for (name, f) in rows {
        let _ = write!(table, "{name:<24}");
        for m in &methods {
            let mine: Vec<&SampleResult> = all.iter().filter(|r| &r.method == m).collect();
            let _ = write!(table, " {:>14}", f(&mine));
        }
        table.push('\n');
    }

    let mut csv = String::from(
        "sample_id,method,noise_ratio,separation,density,thickness_budget,wasserstein_similarity,ged\n",
    );
    for r in &all {
        let d = &r.difficulty;
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{}",
            r.sample_id,
            r.method,
            d.noise_ratio,
            d.separation,
            d.density,
            d.thickness_budget,
            cell(r.wasserstein_similarity),
            cell(r.ged)
        );
    }
    std::fs::write(results.join(STRATIFIED_FILE), csv)?;
    Ok(Report {
        table,
        methods,
        rows: all.len(),
    })
}
