use log::warn;
use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::geometry::PointCloud;

/// Projections of the centred cloud onto its top `d_lens` principal axes,
/// as an `n × d_lens` matrix. Each axis is signed so its largest-magnitude
/// loading is positive. Axes beyond the numerical rank are zero columns.
///
/// `seed` is accepted for interface stability; the decomposition is exact
/// and needs no randomness.
pub fn pca_lens(cloud: &PointCloud, d_lens: usize, seed: u64) -> Result<DMatrix<f64>> {
    let _ = seed;
    let (n, m) = (cloud.len(), cloud.dim());
    if d_lens == 0 || d_lens > m.min(n) {
        return Err(Error::DegenerateInput(format!(
            "lens dimension {d_lens} must lie in 1..={}",
            m.min(n)
        )));
    }
    let mean = cloud.centroid();
    let centred = DMatrix::from_fn(n, m, |i, j| cloud.row(i)[j] - mean[j]);
    let cov = centred.transpose() * &centred / n as f64;
    let eig = SymmetricEigen::new(cov);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .total_cmp(&eig.eigenvalues[a])
            .then(a.cmp(&b))
    });
    let top = eig.eigenvalues[order[0]].max(0.0);
    let tol = top * 1e-12 * m as f64 + f64::MIN_POSITIVE;

    let mut lens = DMatrix::zeros(n, d_lens);
    for (c, &k) in order.iter().take(d_lens).enumerate() {
        if eig.eigenvalues[k] <= tol {
            warn!("cloud has rank below lens dimension {d_lens}; padding axis {c} with zeros");
            continue;
        }
        let mut axis = eig.eigenvectors.column(k).into_owned();
        let lead = axis.iamax();
        if axis[lead] < 0.0 {
            axis.neg_mut();
        }
        lens.set_column(c, &(&centred * axis));
    }
    Ok(lens)
}
