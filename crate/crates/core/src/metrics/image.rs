use statrs::function::erf::erf;

use super::diagram::PersistenceDiagram;
use crate::error::{Error, Result};

pub const GRID: usize = 10;
pub const SIGMA: f64 = 0.1;
pub const IMAGE_LEN: usize = 2 * GRID * GRID;

/// Flattened H0 and H1 images; within each, row `r` is the persistence bin
/// and column `c` the birth bin.
#[derive(Clone, Debug, PartialEq)]
pub struct PersistenceImage(pub Vec<f64>);

impl PersistenceImage {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn mass(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn h0(&self) -> &[f64] {
        &self.0[..GRID * GRID]
    }

    pub fn h1(&self) -> &[f64] {
        &self.0[GRID * GRID..]
    }
}

fn normal_cdf(z: f64) -> f64 {
    0.5 * (1.0 + erf(z / std::f64::consts::SQRT_2))
}

/// Gaussian mass of each grid bin along one axis for a kernel centred at `mu`.
fn axis_mass(mu: f64) -> [f64; GRID] {
    let mut out = [0.0; GRID];
    let h = 1.0 / GRID as f64;
    let mut lo = normal_cdf((0.0 - mu) / SIGMA);
    for (i, o) in out.iter_mut().enumerate() {
        let hi = normal_cdf(((i + 1) as f64 * h - mu) / SIGMA);
        *o = hi - lo;
        lo = hi;
    }
    out
}

fn deposit(img: &mut [f64], birth: f64, pers: f64) {
    let bx = axis_mass(birth);
    let py = axis_mass(pers);
    for (r, &wy) in py.iter().enumerate() {
        for (c, &wx) in bx.iter().enumerate() {
            img[r * GRID + c] += pers * wy * wx;
        }
    }
}

/// Each point's Gaussian is integrated exactly over every cell, weighted by
/// its persistence. H0 bars sit at `(0, death)`, H1 bars at `(b, 1 - b)`.
pub fn persistence_image(d: &PersistenceDiagram) -> Result<PersistenceImage> {
    let inside = |x: f64| (0.0..=1.0).contains(&x);
    if let Some(&x) = d.h0_finite.iter().chain(&d.h1_essential).find(|&&x| !inside(x)) {
        return Err(Error::ContractViolation(format!(
            "bar value {x} lies outside [0, 1]; normalise the diagram first"
        )));
    }
    let mut v = vec![0.0; IMAGE_LEN];
    let (h0, h1) = v.split_at_mut(GRID * GRID);
    for &death in &d.h0_finite {
        deposit(h0, 0.0, death);
    }
    for &b in &d.h1_essential {
        deposit(h1, b, 1.0 - b);
    }
    Ok(PersistenceImage(v))
}
