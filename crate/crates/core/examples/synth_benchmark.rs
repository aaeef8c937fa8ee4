//! Generate a small synthetic benchmark and summarise what came out.

use std::collections::BTreeMap;

use topobench::synth::{generate_benchmark, GeneratorConfig};

fn main() -> topobench::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(24);
    let cfg = GeneratorConfig::default();
    let start = std::time::Instant::now();
    let samples = generate_benchmark(&cfg, n, 7)?;
    println!("{n} samples in {:.2?}", start.elapsed());

    let mut classes: BTreeMap<String, usize> = BTreeMap::new();
    let mut rejects: BTreeMap<String, usize> = BTreeMap::new();
    for s in &samples {
        for c in &s.meta.components {
            *classes.entry(c.class.clone()).or_default() += 1;
        }
        for (k, v) in &s.meta.rejects {
            *rejects.entry(k.clone()).or_default() += v;
        }
    }
    for s in samples.iter().take(8) {
        println!(
            "{}  dim {}  points {:5}  betti {}  noise {:.3}  radius {:.3}  attempts {}",
            s.id(),
            s.meta.dim,
            s.cloud.len(),
            s.meta.betti,
            s.meta.realized.noise_scale,
            s.meta.realized.tube_radius,
            s.meta.attempts
        );
    }
    println!("component classes: {classes:?}");
    println!("rejections: {rejects:?}");
    Ok(())
}
