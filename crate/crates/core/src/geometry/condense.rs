use super::affinity::adaptive_affinity;
use super::cloud::PointCloud;
use super::diffusion::diffusion_operator;
use super::knn::knn_graph;
use crate::error::Result;

/// One condensation step: `P^t X` with `P` built fresh from `cloud` using a
/// `k_smooth`-NN adaptive kernel (bandwidth from the same neighbor count).
pub fn condense(cloud: &PointCloud, k_smooth: usize, t: usize) -> Result<PointCloud> {
    condense_with_bandwidth(cloud, k_smooth, k_smooth, t)
}

/// [`condense`] with the kernel supported on the `k_smooth`-NN graph but
/// bandwidths taken from the `k_bw`-th neighbor (clamped to the support).
pub fn condense_with_bandwidth(cloud: &PointCloud, k_smooth: usize, k_bw: usize, t: usize) -> Result<PointCloud> {
    if t == 0 {
        return Ok(cloud.clone());
    }
    let nbrs = knn_graph(cloud, k_smooth, true)?;
    let w = adaptive_affinity(cloud, &nbrs, k_bw.min(nbrs.k()))?;
    let p = diffusion_operator(&w)?;
    let m = cloud.dim();
    let mut x = cloud.as_flat().to_vec();
    for _ in 0..t {
        x = p.apply(&x, m);
    }
    PointCloud::from_flat(cloud.len(), m, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_steps_is_identity() {
        let x = PointCloud::from_rows(&[[0.1, 0.2], [0.3, -1.0], [2.0, 5.5]]).unwrap();
        assert_eq!(condense(&x, 2, 0).unwrap(), x);
    }

    #[test]
    fn one_step_stays_in_hull() {
        let x = PointCloud::from_rows(&[[0.0], [1.0], [2.0], [4.0]]).unwrap();
        let y = condense(&x, 2, 1).unwrap();
        for r in y.rows() {
            assert!(r[0] >= 0.0 && r[0] <= 4.0);
        }
        assert!(y.diameter() < x.diameter());
    }
}
