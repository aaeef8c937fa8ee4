use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl Range {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Range { lo, hi }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if self.hi > self.lo {
            rng.random_range(self.lo..=self.hi)
        } else {
            self.lo
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    fn check(&self, field: &str) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo <= self.hi) {
            return Err(Error::config(field, "range must be finite with lo <= hi"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRange {
    pub lo: usize,
    pub hi: usize,
}

impl IntRange {
    pub const fn new(lo: usize, hi: usize) -> Self {
        IntRange { lo, hi }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        rng.random_range(self.lo..=self.hi)
    }

    fn check(&self, field: &str) -> Result<()> {
        if self.lo > self.hi {
            return Err(Error::config(field, "range must have lo <= hi"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassProbabilities {
    pub singleton: f64,
    pub single_edge: f64,
    pub tree: f64,
    pub single_cycle: f64,
    pub multi_cycle: f64,
    pub hybrid: f64,
}

impl ClassProbabilities {
    pub fn as_array(&self) -> [f64; 6] {
        [
            self.singleton,
            self.single_edge,
            self.tree,
            self.single_cycle,
            self.multi_cycle,
            self.hybrid,
        ]
    }
}

/// Generator preset. Lengths are in units of `feature_scale`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorConfig {
    pub noise_ratio: Range,
    pub separation: Range,
    pub density: Range,
    pub thickness_budget: Range,
    pub class_probabilities: ClassProbabilities,
    pub cycle_length: IntRange,
    pub max_cycles: usize,
    pub hybrid_cycles: IntRange,
    pub branch_count: IntRange,
    pub branch_length: IntRange,
    pub branch_depth: IntRange,
    pub degree_cap: usize,
    pub max_nodes: usize,
    pub max_edges: usize,
    pub component_probability: f64,
    pub component_decay: f64,
    pub max_components: usize,
    pub gap_ratio: Range,
    pub min_points_per_component: usize,
    pub dim_probabilities: BTreeMap<usize, f64>,
    pub separation_to_feature_ratio: f64,
    pub edge_jitter: Range,
    pub branch_angle_spread: Range,
    pub min_tube_radius_ratio: f64,
    pub cycle_hole_cap_fraction: f64,
    pub eps_sep: f64,
    pub density_jitter: Range,
    pub isotropy_eps: f64,
    pub min_separation_gamma: f64,
    pub search_tolerance: f64,
    pub max_search_iterations: usize,
    pub noise_safety: f64,
    pub component_safety: f64,
    pub max_rejects: usize,
    pub feature_scale: f64,
    pub min_points_per_edge: usize,
    pub max_topology_retries: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            noise_ratio: Range::new(0.02, 0.20),
            separation: Range::new(0.0, 0.60),
            density: Range::new(3.5, 25.0),
            thickness_budget: Range::new(0.45, 1.0),
            class_probabilities: ClassProbabilities {
                singleton: 0.03,
                single_edge: 0.05,
                tree: 0.17,
                single_cycle: 0.20,
                multi_cycle: 0.25,
                hybrid: 0.30,
            },
            cycle_length: IntRange::new(3, 8),
            max_cycles: 6,
            hybrid_cycles: IntRange::new(1, 3),
            branch_count: IntRange::new(0, 4),
            branch_length: IntRange::new(1, 4),
            branch_depth: IntRange::new(1, 3),
            degree_cap: 5,
            max_nodes: 80,
            max_edges: 88,
            component_probability: 0.25,
            component_decay: 0.55,
            max_components: 4,
            gap_ratio: Range::new(4.0, 8.0),
            min_points_per_component: 20,
            dim_probabilities: [(2, 0.50), (3, 0.35), (4, 0.10), (5, 0.05)].into_iter().collect(),
            separation_to_feature_ratio: 6.0,
            edge_jitter: Range::new(0.0, 0.12),
            branch_angle_spread: Range::new(0.5, 1.2),
            min_tube_radius_ratio: 0.02,
            cycle_hole_cap_fraction: 0.20,
            eps_sep: 0.02,
            density_jitter: Range::new(0.0, 0.15),
            isotropy_eps: 0.05,
            min_separation_gamma: 0.01,
            search_tolerance: 0.005,
            max_search_iterations: 24,
            noise_safety: 6.0,
            component_safety: 6.0,
            max_rejects: 100,
            feature_scale: 1.0,
            min_points_per_edge: 2,
            max_topology_retries: 50,
        }
    }
}

fn probability_sum(field: &str, ps: &[f64]) -> Result<()> {
    if ps.iter().any(|&p| !(p >= 0.0 && p.is_finite())) {
        return Err(Error::config(field, "probabilities must be finite and non-negative"));
    }
    let s: f64 = ps.iter().sum();
    if (s - 1.0).abs() > 1e-12 {
        return Err(Error::config(field, format!("probabilities sum to {s}, expected 1")));
    }
    Ok(())
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, r) in [
            ("noise_ratio", &self.noise_ratio),
            ("separation", &self.separation),
            ("density", &self.density),
            ("thickness_budget", &self.thickness_budget),
            ("gap_ratio", &self.gap_ratio),
            ("edge_jitter", &self.edge_jitter),
            ("branch_angle_spread", &self.branch_angle_spread),
            ("density_jitter", &self.density_jitter),
        ] {
            r.check(name)?;
        }
        for (name, r) in [
            ("cycle_length", &self.cycle_length),
            ("hybrid_cycles", &self.hybrid_cycles),
            ("branch_count", &self.branch_count),
            ("branch_length", &self.branch_length),
            ("branch_depth", &self.branch_depth),
        ] {
            r.check(name)?;
        }
        probability_sum("class_probabilities", &self.class_probabilities.as_array())?;
        let dims: Vec<f64> = self.dim_probabilities.values().copied().collect();
        probability_sum("dim_probabilities", &dims)?;
        if self.dim_probabilities.keys().any(|&d| d < 2) {
            return Err(Error::config("dim_probabilities", "dimensions must be at least 2"));
        }
        if self.cycle_length.lo < 3 {
            return Err(Error::config("cycle_length", "cycles need at least 3 vertices"));
        }
        if self.max_cycles < 2 {
            return Err(Error::config("max_cycles", "multi-cycle components need at least 2"));
        }
        if self.branch_length.lo < 1 {
            return Err(Error::config("branch_length", "branches need at least one edge"));
        }
        if self.branch_depth.lo < 1 {
            return Err(Error::config("branch_depth", "depth must be at least 1"));
        }
        if self.degree_cap < 3 {
            return Err(Error::config("degree_cap", "must be at least 3"));
        }
        if self.max_components < 1 {
            return Err(Error::config("max_components", "must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.component_probability) || !(0.0..=1.0).contains(&self.component_decay) {
            return Err(Error::config("component_probability", "probability and decay must lie in [0, 1]"));
        }
        if !(self.feature_scale > 0.0) {
            return Err(Error::config("feature_scale", "must be positive"));
        }
        if !(self.separation_to_feature_ratio > 0.0) {
            return Err(Error::config("separation_to_feature_ratio", "must be positive"));
        }
        if self.separation.hi >= 1.0 || self.separation.lo < 0.0 {
            return Err(Error::config("separation", "must lie in [0, 1)"));
        }
        if self.density.lo <= 0.0 {
            return Err(Error::config("density", "must be positive"));
        }
        if self.max_rejects == 0 {
            return Err(Error::config("max_rejects", "must be at least 1"));
        }
        if self.min_points_per_edge < 2 {
            return Err(Error::config("min_points_per_edge", "must be at least 2"));
        }
        if self.max_search_iterations == 0 {
            return Err(Error::config("max_search_iterations", "must be at least 1"));
        }
        Ok(())
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: GeneratorConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_is_valid() {
        GeneratorConfig::default().validate().unwrap();
    }

    #[test]
    fn bad_probabilities_name_field() {
        let mut c = GeneratorConfig::default();
        c.class_probabilities.hybrid = 0.4;
        match c.validate() {
            Err(Error::Config { field, .. }) => assert_eq!(field, "class_probabilities"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_round_trip_and_partial() {
        let c = GeneratorConfig::default();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(GeneratorConfig::from_json_str(&text).unwrap(), c);
        let p = GeneratorConfig::from_json_str("{\"max_rejects\": 7}").unwrap();
        assert_eq!(p.max_rejects, 7);
    }
}
