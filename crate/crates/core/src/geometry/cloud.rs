use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// An `n × m` matrix of samples, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    n: usize,
    m: usize,
    data: Vec<f64>,
}

impl PointCloud {
    pub fn from_flat(n: usize, m: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::DegenerateInput(format!(
                "point cloud must be at least 1x1, got {n}x{m}"
            )));
        }
        if data.len() != n * m {
            return Err(Error::InvalidData(format!(
                "expected {} values for a {n}x{m} cloud, got {}",
                n * m,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidData(format!(
                "non-finite coordinate at row {}, column {}",
                pos / m,
                pos % m
            )));
        }
        Ok(Self { n, m, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(n * m);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != m {
                return Err(Error::InvalidData(format!(
                    "ragged row {i}: expected {m} columns, got {}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::from_flat(n, m, data)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.m..(i + 1) * self.m]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.data.chunks_exact(self.m)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        euclidean(self.row(i), self.row(j))
    }

    pub fn centroid_of(&self, indices: &[usize]) -> Vec<f64> {
        let mut c = vec![0.0; self.m];
        for &i in indices {
            for (acc, x) in c.iter_mut().zip(self.row(i)) {
                *acc += x;
            }
        }
        let denom = indices.len().max(1) as f64;
        c.iter_mut().for_each(|x| *x /= denom);
        c
    }

    pub fn centroid(&self) -> Vec<f64> {
        let all: Vec<usize> = (0..self.n).collect();
        self.centroid_of(&all)
    }

    /// Largest pairwise distance, by brute force.
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for i in 0..self.n {
            for j in i + 1..self.n {
                best = best.max(self.distance(i, j));
            }
        }
        best
    }

    /// Rows selected by `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let mut data = Vec::with_capacity(indices.len() * self.m);
        for &i in indices {
            data.extend_from_slice(self.row(i));
        }
        Self::from_flat(indices.len(), self.m, data)
    }

    /// One row per line, comma separated, shortest round-trip decimal form.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::with_capacity(self.data.len() * 20);
        for row in self.rows() {
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                write!(out, "{x}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|field| {
                    field.trim().parse::<f64>().map_err(|e| {
                        Error::InvalidData(format!(
                            "line {}: cannot parse `{}`: {e}",
                            lineno + 1,
                            field.trim()
                        ))
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(Error::InvalidData(format!(
                        "line {}: ragged row with {} columns, expected {}",
                        lineno + 1,
                        row.len(),
                        first.len()
                    )));
                }
            }
            rows.push(row);
        }
        Self::from_rows(&rows)
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_csv_str(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv_string())?;
        Ok(())
    }
}

#[inline]
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    squared_euclidean(a, b).sqrt()
}

#[inline]
pub fn squared_euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}
