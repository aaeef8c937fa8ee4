//! Small fixed-shape clouds with known skeletons.

use std::f64::consts::TAU;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::geometry::PointCloud;
use crate::graph::Multigraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Segment,
    Circle,
    YTree,
    TwoBlobs,
}

impl Shape {
    pub const ALL: [Shape; 4] = [Shape::Segment, Shape::Circle, Shape::YTree, Shape::TwoBlobs];

    pub fn name(self) -> &'static str {
        match self {
            Shape::Segment => "segment",
            Shape::Circle => "circle",
            Shape::YTree => "y-tree",
            Shape::TwoBlobs => "two-blobs",
        }
    }

    /// Reduced skeleton: a unit segment, a unit circle (one self-loop), a
    /// tripod with arms 1, 0.8 and 0.6 at 120 degrees, and two blobs that
    /// a graph builder sees as two short segments.
    pub fn skeleton(self) -> Multigraph {
        let g = match self {
            Shape::Segment => Multigraph::from_edge_list(2, &[(0, 1)]),
            Shape::Circle => Multigraph::from_edge_list(1, &[(0, 0)]),
            Shape::YTree => Multigraph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]),
            Shape::TwoBlobs => Multigraph::from_edge_list(4, &[(0, 1), (2, 3)]),
        };
        g.expect("static skeleton is valid")
    }
}

const ARMS: [f64; 3] = [1.0, 0.8, 0.6];
pub const BLOB_RADIUS: f64 = 0.1;

fn on_shape<R: Rng + ?Sized>(shape: Shape, rng: &mut R) -> [f64; 2] {
    match shape {
        Shape::Segment => [rng.random::<f64>(), 0.0],
        Shape::Circle => {
            let a = rng.random_range(0.0..TAU);
            [a.cos(), a.sin()]
        }
        Shape::YTree => {
            let total: f64 = ARMS.iter().sum();
            let mut u = rng.random::<f64>() * total;
            let mut arm = 2;
            for (k, &l) in ARMS.iter().enumerate() {
                if u < l {
                    arm = k;
                    break;
                }
                u -= l;
            }
            let a = arm as f64 * TAU / 3.0;
            let t = u.min(ARMS[arm]);
            [t * a.cos(), t * a.sin()]
        }
        Shape::TwoBlobs => {
            let cx = if rng.random_bool(0.5) { 0.0 } else { 10.0 * BLOB_RADIUS };
            let (gx, gy): (f64, f64) = (rng.sample(StandardNormal), rng.sample(StandardNormal));
            [cx + BLOB_RADIUS * gx, BLOB_RADIUS * gy]
        }
    }
}

/// `n` planar points on `shape` plus isotropic Gaussian noise of standard
/// deviation `noise`.
pub fn shape_cloud<R: Rng + ?Sized>(shape: Shape, n: usize, noise: f64, rng: &mut R) -> Result<PointCloud> {
    let rows: Vec<[f64; 2]> = (0..n)
        .map(|_| {
            let [x, y] = on_shape(shape, rng);
            let (gx, gy): (f64, f64) = (rng.sample(StandardNormal), rng.sample(StandardNormal));
            [x + noise * gx, y + noise * gy]
        })
        .collect();
    PointCloud::from_rows(&rows)
}
