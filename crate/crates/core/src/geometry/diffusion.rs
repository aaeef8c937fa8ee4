use super::affinity::AffinityMatrix;
use super::spectral::{top_by_magnitude, SparseSymmetric};
use crate::error::{Error, Result};
use crate::graph::UnionFind;

/// Row-stochastic diffusion operator `P = D⁻¹ W`.
#[derive(Clone, Debug)]
pub struct DiffusionOperator {
    affinity: AffinityMatrix,
    degrees: Vec<f64>,
    rows: Vec<Vec<(usize, f64)>>,
    spectrum: Option<Spectrum>,
}

/// Leading right eigenpairs of `P`, ordered by decreasing magnitude.
/// Vectors are normalised so that `Σ_i D_ii φ(i)² = 1`.
#[derive(Clone, Debug, Default)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

pub fn diffusion_operator(w: &AffinityMatrix) -> Result<DiffusionOperator> {
    let degrees = w.row_sums();
    if let Some(i) = degrees.iter().position(|&d| !(d > 0.0)) {
        return Err(Error::IsolatedPoint(i));
    }
    let rows = (0..w.len())
        .map(|i| w.row(i).iter().map(|&(j, x)| (j, x / degrees[i])).collect())
        .collect();
    Ok(DiffusionOperator {
        affinity: w.clone(),
        degrees,
        rows,
        spectrum: None,
    })
}

impl DiffusionOperator {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn affinity(&self) -> &AffinityMatrix {
        &self.affinity
    }

    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.affinity.get(i, j) / self.degrees[i]
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let n = self.len();
        let mut m = nalgebra::DMatrix::zeros(n, n);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, p) in row {
                m[(i, j)] = p;
            }
        }
        m
    }

    /// `y = P x` for a matrix `x` with `width` columns stored row-major.
    pub fn apply(&self, x: &[f64], width: usize) -> Vec<f64> {
        let mut out = vec![0.0; x.len()];
        for (i, row) in self.rows.iter().enumerate() {
            let dst = &mut out[i * width..(i + 1) * width];
            for &(j, p) in row {
                for (d, s) in dst.iter_mut().zip(&x[j * width..(j + 1) * width]) {
                    *d += p * s;
                }
            }
        }
        out
    }

    /// Compute and cache the `rank` leading eigenpairs.
    pub fn compute_spectrum(&mut self, rank: usize) -> Result<&Spectrum> {
        let sym = symmetric_conjugate(&self.affinity, &self.degrees, None);
        let pairs = top_by_magnitude(&sym, &[], rank)?;
        let sqrt_d: Vec<f64> = self.degrees.iter().map(|d| d.sqrt()).collect();
        let mut spectrum = Spectrum::default();
        for pair in pairs {
            spectrum.values.push(pair.value);
            spectrum
                .vectors
                .push(pair.vector.iter().zip(&sqrt_d).map(|(v, s)| v / s).collect());
        }
        self.spectrum = Some(spectrum);
        Ok(self.spectrum.as_ref().unwrap())
    }

    pub fn spectrum(&self) -> Option<&Spectrum> {
        self.spectrum.as_ref()
    }
}

/// `D^{-1/2} W D^{-1/2}` restricted to `subset` (local indices), or the full
/// matrix when `subset` is `None`.
fn symmetric_conjugate(
    w: &AffinityMatrix,
    degrees: &[f64],
    subset: Option<(&[usize], &[usize])>,
) -> SparseSymmetric {
    match subset {
        None => SparseSymmetric {
            rows: (0..w.len())
                .map(|i| {
                    w.row(i)
                        .iter()
                        .map(|&(j, x)| (j, x / (degrees[i] * degrees[j]).sqrt()))
                        .collect()
                })
                .collect(),
        },
        Some((members, local)) => SparseSymmetric {
            rows: members
                .iter()
                .enumerate()
                .map(|(li, &i)| {
                    w.row(i)
                        .iter()
                        .filter(|&&(j, _)| local[j] != usize::MAX)
                        .map(|&(j, x)| (local[j], x / (degrees[li] * degrees[local[j]]).sqrt()))
                        .collect()
                })
                .collect(),
        },
    }
}

/// Fiedler vector `φ₁` of the operator restricted to `component`.
///
/// The component's sub-operator is `D_c⁻¹ W_c`. The returned values are the
/// right eigenvector whose eigenvalue has the second-largest magnitude,
/// scaled to unit `D_c`-norm and signed so that its largest-magnitude entry
/// is positive. A single vertex gets the constant filter 0.
pub fn fiedler_filter(op: &DiffusionOperator, component: &[usize]) -> Result<Vec<f64>> {
    let n = op.len();
    if component.is_empty() {
        return Err(Error::DegenerateInput("empty component".into()));
    }
    if let Some(&bad) = component.iter().find(|&&v| v >= n) {
        return Err(Error::InvalidData(format!("vertex {bad} out of range")));
    }
    if component.len() == 1 {
        return Ok(vec![0.0]);
    }
    let mut local = vec![usize::MAX; n];
    for (li, &v) in component.iter().enumerate() {
        local[v] = li;
    }
    let w = op.affinity();

    let mut uf = UnionFind::new(component.len());
    let mut degrees = vec![0.0; component.len()];
    for (li, &v) in component.iter().enumerate() {
        for &(j, x) in w.row(v) {
            if local[j] != usize::MAX {
                degrees[li] += x;
                if x > 0.0 {
                    uf.union(li, local[j]);
                }
            }
        }
    }
    let parts = uf.count();
    if parts > 1 {
        return Err(Error::Disconnected { components: parts });
    }

    let sym = symmetric_conjugate(w, &degrees, Some((component, &local)));
    let total: f64 = degrees.iter().sum();
    let trivial: Vec<f64> = degrees.iter().map(|d| (d / total).sqrt()).collect();
    let pair = top_by_magnitude(&sym, &[trivial], 1)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::DegenerateInput("component has no nontrivial mode".into()))?;

    let mut phi: Vec<f64> = pair
        .vector
        .iter()
        .zip(&degrees)
        .map(|(v, d)| v / d.sqrt())
        .collect();
    let lead = phi
        .iter()
        .enumerate()
        .fold((0usize, 0.0f64), |best, (i, x)| {
            if x.abs() > best.1 {
                (i, x.abs())
            } else {
                best
            }
        })
        .0;
    if phi[lead] < 0.0 {
        phi.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    #[test]
    fn uniform_two_by_two() {
        let w = AffinityMatrix::from_dense(&DMatrix::from_element(2, 2, 1.0)).unwrap();
        let p = diffusion_operator(&w).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(p.get(i, j), 0.5);
            }
        }
    }

    #[test]
    fn identity_affinity_gives_identity_operator() {
        let w = AffinityMatrix::from_dense(&DMatrix::identity(2, 2)).unwrap();
        let p = diffusion_operator(&w).unwrap();
        assert_eq!(p.to_dense(), DMatrix::identity(2, 2));
    }

    #[test]
    fn zero_row_is_isolated_point() {
        let mut m = DMatrix::identity(3, 3);
        m[(2, 2)] = 0.0;
        let w = AffinityMatrix::from_dense(&m).unwrap();
        assert!(matches!(diffusion_operator(&w), Err(Error::IsolatedPoint(2))));
    }

    #[test]
    fn singleton_component_has_zero_filter() {
        let w = AffinityMatrix::from_entries(2, &[(0, 1, 0.5)]).unwrap();
        let p = diffusion_operator(&w).unwrap();
        assert_eq!(fiedler_filter(&p, &[1]).unwrap(), vec![0.0]);
    }

    #[test]
    fn disconnected_subset_rejected() {
        let w = AffinityMatrix::from_entries(4, &[(0, 1, 0.5), (2, 3, 0.5)]).unwrap();
        let p = diffusion_operator(&w).unwrap();
        assert!(matches!(
            fiedler_filter(&p, &[0, 1, 2, 3]),
            Err(Error::Disconnected { components: 2 })
        ));
    }

    #[test]
    fn complete_graph_filter_is_stationary_orthogonal() {
        let n = 6;
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                entries.push((i, j, 0.7));
            }
        }
        let w = AffinityMatrix::from_entries(n, &entries).unwrap();
        let p = diffusion_operator(&w).unwrap();
        let comp: Vec<usize> = (0..n).collect();
        let phi = fiedler_filter(&p, &comp).unwrap();
        let s: f64 = phi.iter().zip(p.degrees()).map(|(f, d)| f * d).sum();
        assert!(s.abs() < 1e-8);
        assert!(phi.iter().any(|x| x.abs() > 1e-3));
    }
}
