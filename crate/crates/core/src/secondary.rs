//! The secondary polytope of a convex polygon: the convex hull of the GKZ
//! vectors of its triangulations.
//!
//! Polygon label `k` is coordinate `k` of every GKZ vector.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{int, Rational, RationalVector};
use crate::polygon::{all_triangulations, PolygonSize, Triangulation};
use crate::polytope::{ConstructionTag, LabeledPolytope, LabeledVertex};

/// Vertex coordinates of a convex polygon, indexed by label `0..=n+2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonGeometry {
    coords: Vec<(Rational, Rational)>,
}

fn orientation(p: &(Rational, Rational), q: &(Rational, Rational), r: &(Rational, Rational)) -> Rational {
    (&q.0 - &p.0) * (&r.1 - &p.1) - (&q.1 - &p.1) * (&r.0 - &p.0)
}

impl PolygonGeometry {
    pub fn new(coords: Vec<(Rational, Rational)>) -> Self {
        PolygonGeometry { coords }
    }

    /// Points `(k, k^2)` for `k = 1..=n+3`.
    pub fn parabola(n: usize) -> Self {
        PolygonGeometry {
            coords: (1..=n as i64 + 3).map(|k| (int(k), int(k * k))).collect(),
        }
    }

    pub fn coords(&self) -> &[(Rational, Rational)] {
        &self.coords
    }

    pub fn n(&self) -> Option<usize> {
        self.coords.len().checked_sub(3)
    }

    pub fn size(&self) -> Result<PolygonSize> {
        self.n()
            .map(PolygonSize::new)
            .ok_or_else(|| Error::InvalidGeometry("fewer than 3 points".into()))
    }

    /// Strictly convex position in counterclockwise order.
    ///
    /// Every triple taken in label order must turn left; this rules out
    /// collinear triples and polygons that wind more than once.
    pub fn validate(&self) -> Result<()> {
        let m = self.coords.len();
        if m < 3 {
            return Err(Error::InvalidGeometry(format!("{m} points, need at least 3")));
        }
        for i in 0..m {
            for j in i + 1..m {
                if self.coords[i] == self.coords[j] {
                    return Err(Error::InvalidGeometry(format!(
                        "duplicate points at labels {i} and {j}"
                    )));
                }
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let o = orientation(&self.coords[i], &self.coords[j], &self.coords[k]);
                    if !o.is_positive() {
                        return Err(Error::InvalidGeometry(format!(
                            "labels ({i}, {j}, {k}) are {} rather than counterclockwise",
                            if o.is_zero() { "collinear" } else { "clockwise" }
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn triangle_area(&self, t: [usize; 3]) -> Rational {
        orientation(&self.coords[t[0]], &self.coords[t[1]], &self.coords[t[2]]).abs() / int(2)
    }

    pub fn area(&self) -> Rational {
        let m = self.coords.len();
        (1..m.saturating_sub(1))
            .map(|k| self.triangle_area([0, k, k + 1]))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// Coordinate `i` is the total area of the triangles of `t` incident to vertex `i`.
pub fn gkz_vector(g: &PolygonGeometry, t: &Triangulation) -> Result<RationalVector> {
    let size = g.size()?;
    let mut v = vec![Rational::zero(); size.vertex_count()];
    for tri in t.triangles(size) {
        let area = g.triangle_area(tri);
        for i in tri {
            v[i] += &area;
        }
    }
    Ok(RationalVector::new(v))
}

pub fn build_secondary(g: &PolygonGeometry) -> Result<LabeledPolytope> {
    g.validate()?;
    let size = g.size()?;
    let vertices = all_triangulations(size)
        .into_iter()
        .map(|t| {
            Ok(LabeledVertex {
                coords: gkz_vector(g, &t)?,
                label: t,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    LabeledPolytope::new(ConstructionTag::Secondary, size.n, vertices)
}

/// True iff the GKZ vectors span an affine space of dimension `n`.
pub fn verify_secondary_dimension(p: &LabeledPolytope) -> bool {
    p.direction().dim() == p.n()
}
