use std::fmt::Write as _;
use std::path::Path;

use serde_json::Value;

use super::multigraph::{Edge, Multigraph};
use crate::error::{Error, Result};

/// Format a float with 17 significant digits.
pub(crate) fn num(x: f64) -> String {
    format!("{x:.16e}")
}

impl Multigraph {
    /// `graph.json` text of the canonical form.
    pub fn to_json_string(&self) -> String {
        let g = self.canonical();
        let mut s = String::from("{\n  \"vertices\": [");
        for (i, p) in g.positions().iter().enumerate() {
            s.push_str(if i == 0 { "\n    " } else { ",\n    " });
            match p {
                None => s.push_str("null"),
                Some(p) => {
                    s.push('[');
                    for (j, x) in p.iter().enumerate() {
                        if j > 0 {
                            s.push_str(", ");
                        }
                        s.push_str(&num(*x));
                    }
                    s.push(']');
                }
            }
        }
        s.push_str(if g.vertex_count() > 0 { "\n  ],\n  \"edges\": [" } else { "],\n  \"edges\": [" });
        for (i, e) in g.edges().iter().enumerate() {
            s.push_str(if i == 0 { "\n    " } else { ",\n    " });
            let _ = write!(s, "[{}, {}, {}, {}]", e.u, e.v, num(e.length), e.multiplicity);
        }
        s.push_str(if g.edges().is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
        s
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::from_str(&self.to_json_string()).expect("generated graph json parses")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidData(format!("graph json: {m}"));
        let verts = v
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"vertices\" array"))?;
        let mut positions = Vec::with_capacity(verts.len());
        for p in verts {
            positions.push(match p {
                Value::Null => None,
                Value::Array(xs) => Some(
                    xs.iter()
                        .map(|x| x.as_f64().filter(|x| x.is_finite()))
                        .collect::<Option<Vec<f64>>>()
                        .ok_or_else(|| bad("vertex coordinates must be finite numbers"))?,
                ),
                _ => return Err(bad("vertex entry must be an array or null")),
            });
        }
        let edges = v
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"edges\" array"))?;
        let mut out = Vec::with_capacity(edges.len());
        for e in edges {
            let a = e
                .as_array()
                .filter(|a| a.len() == 4)
                .ok_or_else(|| bad("edge must be [u, v, length, multiplicity]"))?;
            let idx = |x: &Value| x.as_u64().map(|x| x as usize);
            match (idx(&a[0]), idx(&a[1]), a[2].as_f64(), idx(&a[3])) {
                (Some(u), Some(w), Some(length), Some(multiplicity)) => out.push(Edge {
                    u,
                    v: w,
                    length,
                    multiplicity,
                }),
                _ => return Err(bad("edge fields have wrong types")),
            }
        }
        Multigraph::from_parts(positions, out)
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json_string())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut g = Multigraph::with_positions(vec![vec![0.1, 0.2], vec![1.0 / 3.0, 2.0]]);
        g.add_edge(0, 1, std::f64::consts::PI).unwrap();
        g.add_edge(1, 1, 0.5).unwrap();
        let text = g.to_json_string();
        let back = Multigraph::from_json_str(&text).unwrap();
        assert_eq!(back, g.canonical());
        assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn empty_and_null_positions() {
        let g = Multigraph::new(0);
        assert_eq!(Multigraph::from_json_str(&g.to_json_string()).unwrap(), g);
        let g = Multigraph::from_edge_list(2, &[(0, 1)]).unwrap();
        let back = Multigraph::from_json_str(&g.to_json_string()).unwrap();
        assert_eq!(back.position(0), None);
    }

    #[test]
    fn malformed_rejected() {
        assert!(Multigraph::from_json_str("{\"vertices\": [null], \"edges\": [[0, 3, 1.0, 1]]}").is_err());
        assert!(Multigraph::from_json_str("{\"edges\": []}").is_err());
    }
}
