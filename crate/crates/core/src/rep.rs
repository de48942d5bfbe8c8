//! Finite-dimensional representations of bound quivers.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{Path, Presentation, Quiver};

/// A representation: a vector space per vertex and a `dim(target) × dim(source)`
/// matrix per arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl Representation {
    pub fn zero(quiver: &Quiver) -> Self {
        let dims = vec![0; quiver.vertex_count()];
        let maps = quiver
            .arrows()
            .iter()
            .map(|_| Matrix::zeros(0, 0))
            .collect();
        Self { dims, maps }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn check_shape(&self, quiver: &Quiver) -> Result<()> {
        if self.dims.len() != quiver.vertex_count() || self.maps.len() != quiver.arrow_count() {
            return Err(Error::ShapeMismatch(
                "wrong number of vertices or arrows".into(),
            ));
        }
        for (a, m) in quiver.arrows().iter().zip(&self.maps) {
            if m.rows() != self.dims[a.target] || m.cols() != self.dims[a.source] {
                return Err(Error::ShapeMismatch(format!(
                    "arrow {} has a {}x{} matrix, expected {}x{}",
                    a.name,
                    m.rows(),
                    m.cols(),
                    self.dims[a.target],
                    self.dims[a.source]
                )));
            }
        }
        Ok(())
    }

    /// The linear map of a path (arrows applied left to right).
    pub fn path_map(&self, path: &Path) -> Matrix {
        path.arrows()
            .iter()
            .fold(Matrix::identity(self.dims[path.source()]), |acc, &a| {
                self.maps[a].mul(&acc)
            })
    }

    /// Whether every relation of the presentation holds.
    pub fn satisfies(&self, p: &Presentation) -> bool {
        p.relations.iter().all(|r| {
            let mut total: Option<Matrix> = None;
            for t in &r.terms {
                let m = self
                    .path_map(&t.path)
                    .scaled(&crate::linalg::rational(t.coefficient));
                total = Some(match total {
                    None => m,
                    Some(acc) => acc.add(&m),
                });
            }
            total.is_none_or(|m| m.is_zero())
        })
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        Representation {
            dims: self
                .dims
                .iter()
                .zip(&other.dims)
                .map(|(a, b)| a + b)
                .collect(),
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        }
    }

    /// `{"dims": {vertex: n}, "matrices": {arrow: [["p/q", ...], ...]}}`.
    pub fn to_json(&self, quiver: &Quiver) -> Value {
        let mut dims = Map::new();
        for (v, &d) in self.dims.iter().enumerate() {
            dims.insert(quiver.vertex_name(v).to_string(), json!(d));
        }
        let mut matrices = Map::new();
        for (a, m) in self.maps.iter().enumerate() {
            let rows: Vec<Vec<String>> = (0..m.rows())
                .map(|r| m.row(r).iter().map(ToString::to_string).collect())
                .collect();
            matrices.insert(quiver.arrow(a).name.clone(), json!(rows));
        }
        json!({ "dims": dims, "matrices": matrices })
    }
}
