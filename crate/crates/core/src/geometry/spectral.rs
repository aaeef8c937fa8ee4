//! Symmetric eigensolvers used by the diffusion operator.
//!
//! Small problems go through a dense decomposition. Larger ones use Lanczos
//! with full reorthogonalisation; Ritz values of the tridiagonal projection
//! come from Sturm-sequence bisection and Ritz vectors from inverse iteration,
//! so each convergence check costs O(m) in the Krylov dimension `m`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Problems at or below this size are decomposed densely.
pub const DENSE_LIMIT: usize = 300;

/// Krylov dimension cap for the Lanczos path.
pub const MAX_KRYLOV: usize = 2000;

/// Sparse symmetric matrix in row-list form.
#[derive(Clone, Debug)]
pub struct SparseSymmetric {
    pub(crate) rows: Vec<Vec<(usize, f64)>>,
}

impl SparseSymmetric {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn matvec(&self, x: &[f64], out: &mut [f64]) {
        for (o, row) in out.iter_mut().zip(&self.rows) {
            *o = row.iter().map(|&(j, w)| w * x[j]).sum();
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, w) in row {
                m[(i, j)] = w;
            }
        }
        m
    }
}

/// An eigenpair with unit-norm vector.
#[derive(Clone, Debug)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

/// The `want` eigenpairs of largest magnitude among those orthogonal to the
/// orthonormal set `deflate`. Ties in magnitude prefer the positive value.
pub fn top_by_magnitude(
    mat: &SparseSymmetric,
    deflate: &[Vec<f64>],
    want: usize,
) -> Result<Vec<EigenPair>> {
    let free = mat.len().saturating_sub(deflate.len());
    let want = want.min(free);
    if want == 0 {
        return Ok(Vec::new());
    }
    if mat.len() <= DENSE_LIMIT {
        dense_top(mat, deflate, want)
    } else {
        lanczos_top(mat, deflate, want, 1e-9)
    }
}

fn magnitude_order(a: f64, b: f64) -> std::cmp::Ordering {
    b.abs().total_cmp(&a.abs()).then(b.total_cmp(&a))
}

pub(crate) fn dense_top(
    mat: &SparseSymmetric,
    deflate: &[Vec<f64>],
    want: usize,
) -> Result<Vec<EigenPair>> {
    let n = mat.len();
    let mut dense = mat.to_dense();
    // Shift deflated directions far outside the spectrum's magnitude ordering
    // by projecting them out: P A P with P = I - Σ v vᵀ.
    if !deflate.is_empty() {
        let mut proj = DMatrix::<f64>::identity(n, n);
        for v in deflate {
            for i in 0..n {
                for j in 0..n {
                    proj[(i, j)] -= v[i] * v[j];
                }
            }
        }
        dense = &proj * dense * &proj;
    }
    let eig = SymmetricEigen::new(dense);
    let mut order: Vec<usize> = (0..n).collect();
    // Drop the null directions introduced by the projection: they are exactly
    // the deflated vectors, identified by overlap.
    let mut excluded = vec![false; n];
    for v in deflate {
        let best = (0..n)
            .filter(|&c| !excluded[c])
            .max_by(|&a, &b| {
                let oa = overlap(&eig.eigenvectors, a, v);
                let ob = overlap(&eig.eigenvectors, b, v);
                oa.total_cmp(&ob)
            })
            .expect("nonempty spectrum");
        excluded[best] = true;
    }
    order.retain(|&c| !excluded[c]);
    order.sort_by(|&a, &b| magnitude_order(eig.eigenvalues[a], eig.eigenvalues[b]));
    Ok(order
        .into_iter()
        .take(want)
        .map(|c| EigenPair {
            value: eig.eigenvalues[c],
            vector: eig.eigenvectors.column(c).iter().copied().collect(),
        })
        .collect())
}

fn overlap(vectors: &DMatrix<f64>, col: usize, v: &[f64]) -> f64 {
    vectors
        .column(col)
        .iter()
        .zip(v)
        .map(|(a, b)| a * b)
        .sum::<f64>()
        .abs()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn orthogonalize(w: &mut [f64], basis: &[Vec<f64>]) {
    for q in basis {
        let c = dot(w, q);
        axpy(-c, q, w);
    }
}

/// Deterministic pseudo-random start vector.
fn start_vector(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let mut z = (i as u64).wrapping_add(0x9E37_79B9_7F4A_7C15);
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^= z >> 31;
            (z >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        })
        .collect()
}

pub(crate) fn lanczos_top(
    mat: &SparseSymmetric,
    deflate: &[Vec<f64>],
    want: usize,
    tol: f64,
) -> Result<Vec<EigenPair>> {
    let n = mat.len();
    let max_dim = (n - deflate.len()).min(MAX_KRYLOV);

    let mut q0 = start_vector(n);
    orthogonalize(&mut q0, deflate);
    orthogonalize(&mut q0, deflate);
    let nq = norm(&q0);
    if nq == 0.0 {
        return Err(Error::Solver {
            iterations: 0,
            residual: f64::NAN,
        });
    }
    q0.iter_mut().for_each(|x| *x /= nq);

    let mut basis: Vec<Vec<f64>> = vec![q0];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut w = vec![0.0; n];
    let mut next_check = (want * 2 + 20).min(max_dim);
    let mut last_residual = f64::INFINITY;

    loop {
        let j = alpha.len();
        mat.matvec(&basis[j], &mut w);
        let a = dot(&w, &basis[j]);
        axpy(-a, &basis[j], &mut w);
        if j > 0 {
            axpy(-beta[j - 1], &basis[j - 1], &mut w);
        }
        for _ in 0..2 {
            orthogonalize(&mut w, deflate);
            orthogonalize(&mut w, &basis);
        }
        alpha.push(a);
        let b = norm(&w);
        let m = alpha.len();
        let exhausted = b <= 1e-13 || m >= max_dim;

        if m >= next_check || exhausted {
            let ritz = tridiagonal_top(&alpha, &beta, want.min(m));
            let residual = ritz
                .iter()
                .map(|(_, y)| (b * y[m - 1]).abs())
                .fold(0.0, f64::max);
            last_residual = residual;
            if residual <= tol || exhausted {
                if residual > tol && m < n - deflate.len() {
                    return Err(Error::Solver {
                        iterations: m,
                        residual,
                    });
                }
                return Ok(ritz
                    .into_iter()
                    .map(|(value, y)| {
                        let mut v = vec![0.0; n];
                        for (c, q) in y.iter().zip(&basis) {
                            axpy(*c, q, &mut v);
                        }
                        let nv = norm(&v);
                        v.iter_mut().for_each(|x| *x /= nv);
                        EigenPair { value, vector: v }
                    })
                    .collect());
            }
            next_check = ((m as f64 * 1.4) as usize).max(m + 10).min(max_dim);
        }
        if exhausted {
            return Err(Error::Solver {
                iterations: m,
                residual: last_residual,
            });
        }
        beta.push(b);
        let inv = 1.0 / b;
        basis.push(w.iter().map(|x| x * inv).collect());
    }
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`.
fn sturm_count(alpha: &[f64], beta: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0f64;
    for i in 0..alpha.len() {
        let off = if i == 0 { 0.0 } else { beta[i - 1] * beta[i - 1] };
        d = alpha[i] - x - if i == 0 { 0.0 } else { off / d };
        if d == 0.0 {
            d = -f64::EPSILON * (alpha[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `index`-th smallest eigenvalue (0-based) by bisection.
fn kth_eigenvalue(alpha: &[f64], beta: &[f64], index: usize, lo: f64, hi: f64) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(alpha, beta, mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Solve the tridiagonal system `(T - shift I) y = rhs` with partial
/// pivoting.
fn tridiagonal_solve(alpha: &[f64], beta: &[f64], shift: f64, rhs: &[f64]) -> Vec<f64> {
    let m = alpha.len();
    // rows hold (sub, diag, sup, sup2) after elimination
    let mut diag: Vec<f64> = alpha.iter().map(|a| a - shift).collect();
    let mut sup: Vec<f64> = (0..m).map(|i| if i + 1 < m { beta[i] } else { 0.0 }).collect();
    let mut sup2 = vec![0.0; m];
    let mut sub: Vec<f64> = (0..m).map(|i| if i + 1 < m { beta[i] } else { 0.0 }).collect();
    let mut b = rhs.to_vec();
    let tiny = f64::EPSILON * alpha.iter().chain(beta).fold(1e-300f64, |a, x| a.max(x.abs()));

    for i in 0..m.saturating_sub(1) {
        // candidate pivot rows i and i+1 in column i
        if sub[i].abs() > diag[i].abs() {
            // swap rows i and i+1
            let (d0, s0, t0) = (diag[i], sup[i], sup2[i]);
            diag[i] = sub[i];
            sup[i] = diag[i + 1];
            sup2[i] = sup[i + 1];
            let l = d0 / diag[i];
            diag[i + 1] = s0 - l * sup[i];
            sup[i + 1] = t0 - l * sup2[i];
            b.swap(i, i + 1);
            let bi = b[i];
            b[i + 1] -= l * bi;
            sub[i] = l;
        } else {
            if diag[i].abs() < tiny {
                diag[i] = tiny;
            }
            let l = sub[i] / diag[i];
            diag[i + 1] -= l * sup[i];
            sup[i + 1] -= l * sup2[i];
            let bi = b[i];
            b[i + 1] -= l * bi;
            sub[i] = l;
        }
    }
    if m > 0 && diag[m - 1].abs() < tiny {
        diag[m - 1] = tiny;
    }
    let mut y = vec![0.0; m];
    for i in (0..m).rev() {
        let mut s = b[i];
        if i + 1 < m {
            s -= sup[i] * y[i + 1];
        }
        if i + 2 < m {
            s -= sup2[i] * y[i + 2];
        }
        y[i] = s / diag[i];
    }
    y
}

/// Eigenvector of the tridiagonal matrix for `value` by inverse iteration,
/// orthogonalised against `previous` (vectors of nearby eigenvalues).
fn tridiagonal_vector(alpha: &[f64], beta: &[f64], value: f64, previous: &[Vec<f64>]) -> Vec<f64> {
    let m = alpha.len();
    let scale = alpha.iter().chain(beta).fold(1e-300f64, |a, x| a.max(x.abs()));
    let shift = value + scale * 1e-14;
    let mut y = start_vector(m);
    for _ in 0..4 {
        orthogonalize(&mut y, previous);
        let mut z = tridiagonal_solve(alpha, beta, shift, &y);
        orthogonalize(&mut z, previous);
        let nz = norm(&z);
        if nz == 0.0 || !nz.is_finite() {
            break;
        }
        y = z.into_iter().map(|x| x / nz).collect();
    }
    let ny = norm(&y);
    y.iter_mut().for_each(|x| *x /= ny);
    y
}

/// Largest-magnitude eigenpairs of the symmetric tridiagonal matrix.
fn tridiagonal_top(alpha: &[f64], beta: &[f64], want: usize) -> Vec<(f64, Vec<f64>)> {
    let m = alpha.len();
    if m == 1 {
        return vec![(alpha[0], vec![1.0])];
    }
    let radius = (0..m)
        .map(|i| {
            let l = if i > 0 { beta[i - 1].abs() } else { 0.0 };
            let r = if i + 1 < m { beta[i].abs() } else { 0.0 };
            alpha[i].abs() + l + r
        })
        .fold(0.0, f64::max)
        * 1.01
        + 1e-300;
    let k = want.min(m);
    let mut candidates: Vec<f64> = Vec::with_capacity(2 * k);
    for i in 0..k {
        candidates.push(kth_eigenvalue(alpha, beta, m - 1 - i, -radius, radius));
    }
    for i in 0..k.min(m - k) {
        candidates.push(kth_eigenvalue(alpha, beta, i, -radius, radius));
    }
    candidates.sort_by(|a, b| magnitude_order(*a, *b));
    candidates.truncate(k);

    let cluster = 1e-7 * radius;
    let mut out: Vec<(f64, Vec<f64>)> = Vec::with_capacity(k);
    for value in candidates {
        let previous: Vec<Vec<f64>> = out
            .iter()
            .filter(|(v, _)| (v - value).abs() < cluster)
            .map(|(_, y)| y.clone())
            .collect();
        let y = tridiagonal_vector(alpha, beta, value, &previous);
        out.push((value, y));
    }
    out
}
