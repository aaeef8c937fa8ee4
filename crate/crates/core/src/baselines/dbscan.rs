use crate::geometry::PointCloud;

pub const NOISE: i64 = -1;

/// Density clustering. A point is core when at least `min_samples` points
/// (itself included) lie within `eps`. Clusters are the connected groups of
/// core points, numbered by their smallest member; a border point joins the
/// lowest-numbered cluster among its core neighbours. Remaining points get
/// [`NOISE`].
pub fn dbscan(points: &PointCloud, eps: f64, min_samples: usize) -> Vec<i64> {
    let n = points.len();
    let near: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| points.distance(i, j) <= eps).collect())
        .collect();
    let core: Vec<bool> = near.iter().map(|l| l.len() >= min_samples).collect();

    let mut label = vec![NOISE; n];
    let mut next = 0i64;
    for s in 0..n {
        if !core[s] || label[s] != NOISE {
            continue;
        }
        label[s] = next;
        let mut stack = vec![s];
        while let Some(p) = stack.pop() {
            for &q in &near[p] {
                if core[q] && label[q] == NOISE {
                    label[q] = next;
                    stack.push(q);
                }
            }
        }
        next += 1;
    }
    for i in 0..n {
        if !core[i] {
            label[i] = near[i]
                .iter()
                .filter(|&&j| core[j])
                .map(|&j| label[j])
                .min()
                .unwrap_or(NOISE);
        }
    }
    label
}
