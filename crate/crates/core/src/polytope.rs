use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{subspace_from_differences, RationalVector, Subspace};
use crate::polygon::{all_triangulations, PolygonSize, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionTag {
    Secondary,
    Cluster,
    Minkowski,
}

impl ConstructionTag {
    pub const ALL: [ConstructionTag; 3] = [
        ConstructionTag::Secondary,
        ConstructionTag::Cluster,
        ConstructionTag::Minkowski,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionTag::Secondary => "secondary",
            ConstructionTag::Cluster => "cluster",
            ConstructionTag::Minkowski => "minkowski",
        }
    }
}

impl fmt::Display for ConstructionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ConstructionTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "secondary" | "I" => Ok(ConstructionTag::Secondary),
            "cluster" | "II" => Ok(ConstructionTag::Cluster),
            "minkowski" | "III" => Ok(ConstructionTag::Minkowski),
            other => Err(Error::Parse(format!("unknown construction {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledVertex {
    pub coords: RationalVector,
    pub label: Triangulation,
}

/// A realization of the n-dimensional associahedron: one exact vertex per
/// triangulation of the (n+3)-gon.
///
/// Vertices are kept sorted by label, so vertex indices agree across
/// constructions with the same `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPolytope {
    n: usize,
    ambient_dim: usize,
    tag: ConstructionTag,
    vertices: Vec<LabeledVertex>,
}

impl LabeledPolytope {
    /// Checks that labels are exactly the triangulations, coordinates are
    /// distinct and the affine hull has dimension `n`.
    pub fn new(tag: ConstructionTag, n: usize, mut vertices: Vec<LabeledVertex>) -> Result<Self> {
        let size = PolygonSize::new(n);
        let ambient_dim = vertices
            .first()
            .map(|v| v.coords.dim())
            .ok_or_else(|| Error::Internal("polytope has no vertices".into()))?;
        if vertices.iter().any(|v| v.coords.dim() != ambient_dim) {
            return Err(Error::Internal("vertex dimensions differ".into()));
        }
        vertices.sort_by(|x, y| x.label.cmp(&y.label));
        let labels: Vec<Triangulation> = vertices.iter().map(|v| v.label.clone()).collect();
        if labels != all_triangulations(size) {
            return Err(Error::Internal(format!(
                "{tag} vertex labels are not the {} triangulations of the {}-gon",
                all_triangulations(size).len(),
                size.vertex_count()
            )));
        }
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if let Some(j) = seen.insert(&v.coords, i) {
                return Err(Error::Internal(format!(
                    "{tag}: vertices {j} and {i} coincide at {}",
                    v.coords
                )));
            }
        }
        let p = LabeledPolytope {
            n,
            ambient_dim,
            tag,
            vertices,
        };
        let dim = p.direction().dim();
        if dim != n {
            return Err(Error::Internal(format!(
                "{tag}: affine hull has dimension {dim}, expected {n}"
            )));
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> PolygonSize {
        PolygonSize::new(self.n)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn tag(&self) -> ConstructionTag {
        self.tag
    }

    pub fn vertices(&self) -> &[LabeledVertex] {
        &self.vertices
    }

    pub fn coords(&self) -> Vec<RationalVector> {
        self.vertices.iter().map(|v| v.coords.clone()).collect()
    }

    pub fn index_of(&self, label: &Triangulation) -> Option<usize> {
        self.vertices
            .binary_search_by(|v| v.label.cmp(label))
            .ok()
    }

    /// Direction space of the affine hull.
    pub fn direction(&self) -> Subspace {
        subspace_from_differences(&self.coords())
    }

    /// Image under `f`, keeping labels and tag.
    pub fn map_coords(&self, f: impl Fn(&RationalVector) -> RationalVector) -> Result<Self> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| LabeledVertex {
                coords: f(&v.coords),
                label: v.label.clone(),
            })
            .collect();
        LabeledPolytope::new(self.tag, self.n, vertices)
    }
}
