use serde::{Deserialize, Serialize};

use super::assignment;
use super::diagram::PersistenceDiagram;
use crate::error::{Error, Result};

/// The three parts of the diagram distance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct WassersteinTerms {
    pub h0: f64,
    pub h1: f64,
    pub essential: f64,
}

impl WassersteinTerms {
    pub fn total(&self) -> f64 {
        self.h0 + self.h1 + self.essential
    }
}

/// `p`-Wasserstein distance between two finite point sets on a line above
/// the diagonal. Points are `(birth, death)`; costs are L∞.
fn matching_cost(a: &[(f64, f64)], b: &[(f64, f64)], p: f64) -> f64 {
    let (na, nb) = (a.len(), b.len());
    if na + nb == 0 {
        return 0.0;
    }
    let diag = |x: &(f64, f64)| (x.1 - x.0) / 2.0;
    let pw = |c: f64| if p == 1.0 { c } else { c.powf(p) };
    let linf = |x: &(f64, f64), y: &(f64, f64)| (x.0 - y.0).abs().max((x.1 - y.1).abs());
    let big = 1.0
        + a.iter().chain(b).map(|x| pw(diag(x))).sum::<f64>() * 2.0
        + 2.0 * (na + nb) as f64;
    let size = na + nb;
    let mut cost = vec![vec![0.0; size]; size];
    for i in 0..size {
        for j in 0..size {
            cost[i][j] = match (i < na, j < nb) {
                (true, true) => pw(linf(&a[i], &b[j])),
                (true, false) => {
                    if j - nb == i {
                        pw(diag(&a[i]))
                    } else {
                        big
                    }
                }
                (false, true) => {
                    if i - na == j {
                        pw(diag(&b[j]))
                    } else {
                        big
                    }
                }
                (false, false) => 0.0,
            };
        }
    }
    let (_, col) = assignment::solve(&cost);
    let mut parts: Vec<f64> = col.iter().enumerate().map(|(i, &j)| cost[i][j]).collect();
    parts.sort_by(f64::total_cmp);
    let total: f64 = parts.iter().sum();
    if p == 1.0 {
        total
    } else {
        total.powf(1.0 / p)
    }
}

/// Distance split into H0 finite bars, H1 bars placed at `(b, cap)` and the
/// essential-H0 count mismatch at `cap / 2` per unit. `cap` is 1 for
/// normalized diagrams and the larger scale otherwise.
pub fn wasserstein_terms(
    d1: &PersistenceDiagram,
    d2: &PersistenceDiagram,
    p: f64,
) -> Result<WassersteinTerms> {
    if d1.normalized != d2.normalized {
        return Err(Error::UnitMismatch);
    }
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::ContractViolation(format!(
            "Wasserstein order must be finite and at least 1, got {p}"
        )));
    }
    let cap = if d1.normalized {
        1.0
    } else {
        d1.max_value().max(d2.max_value())
    };
    let h0 = |d: &PersistenceDiagram| d.h0_finite.iter().map(|&x| (0.0, x)).collect::<Vec<_>>();
    let h1 = |d: &PersistenceDiagram| {
        d.h1_essential
            .iter()
            .map(|&b| (b, cap.max(b)))
            .collect::<Vec<_>>()
    };
    let mismatch = d1.h0_essential.abs_diff(d2.h0_essential) as f64;
    Ok(WassersteinTerms {
        h0: matching_cost(&h0(d1), &h0(d2), p),
        h1: matching_cost(&h1(d1), &h1(d2), p),
        essential: mismatch.powf(1.0 / p) * cap / 2.0,
    })
}

pub fn wasserstein_distance(d1: &PersistenceDiagram, d2: &PersistenceDiagram, p: f64) -> Result<f64> {
    wasserstein_terms(d1, d2, p).map(|t| t.total())
}

/// `1 / (1 + d)`.
pub fn persistence_similarity(d: f64) -> Result<f64> {
    if !(d >= 0.0) {
        return Err(Error::ContractViolation(format!(
            "distance must be non-negative, got {d}"
        )));
    }
    Ok(1.0 / (1.0 + d))
}
