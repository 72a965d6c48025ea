//! The associahedron as a weighted Minkowski sum of coordinate simplices
//! `sum a_ij * conv{e_i, ..., e_j}` in `Q^{n+1}`, together with the map from
//! linear functionals to polygon subdivisions that labels its faces.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::analysis::{face_correspondence, CorrespondenceReport};
use crate::error::{Error, Result};
use crate::exactlin::{int, Rational, RationalVector, Subspace};
use crate::polygon::{catalan, Diagonal, PolygonSize, Subdivision, Triangulation};
use crate::polytope::{ConstructionTag, LabeledPolytope, LabeledVertex};

/// Positive weights `a_ij` for `1 <= i <= j <= n+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexWeights {
    n: usize,
    a: BTreeMap<(usize, usize), Rational>,
}

impl SimplexWeights {
    pub fn new(n: usize, a: BTreeMap<(usize, usize), Rational>) -> Result<Self> {
        for (&(i, j), w) in &a {
            if !(1 <= i && i <= j && j <= n + 1) {
                return Err(Error::InvalidWeights(format!("index ({i},{j}) out of range")));
            }
            if !w.is_positive() {
                return Err(Error::InvalidWeights(format!("a_{i},{j} = {w} is not positive")));
            }
        }
        let expected = (n + 1) * (n + 2) / 2;
        if a.len() != expected {
            return Err(Error::InvalidWeights(format!(
                "{} weights given, {expected} required",
                a.len()
            )));
        }
        Ok(SimplexWeights { n, a })
    }

    /// `a = 1`, Loday's realization.
    pub fn ones(n: usize) -> Self {
        SimplexWeights {
            n,
            a: summands(n).map(|ij| (ij, int(1))).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.a[&(i, j)]
    }

    pub fn weights(&self) -> &BTreeMap<(usize, usize), Rational> {
        &self.a
    }

    pub fn total(&self) -> Rational {
        self.a.values().fold(Rational::zero(), |acc, w| acc + w)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        SimplexWeights {
            n: self.n,
            a: self.a.iter().map(|(&k, v)| (k, v * s)).collect(),
        }
    }
}

fn summands(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n + 1).flat_map(move |i| (i..=n + 1).map(move |j| (i, j)))
}

/// `w = (w_1, ..., w_{n+1})`; the polygon vertices `0` and `n+2` act as `+infinity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFunctional(pub RationalVector);

impl LinearFunctional {
    pub fn from_ints(w: &[i64]) -> Self {
        LinearFunctional(RationalVector::from_ints(w))
    }

    pub fn n(&self) -> usize {
        self.0.dim() - 1
    }

    /// `w_k` with 1-based `k`.
    pub fn at(&self, k: usize) -> &Rational {
        &self.0[k - 1]
    }
}

/// The subdivision labelling the face of the Minkowski sum that maximizes `w`.
///
/// For every `k`, the vertices `S_k = {i : w_i >= w_k}` (which always contain
/// `0` and `n+2`) span a sub-polygon; its hull edges that are diagonals of the
/// big polygon are collected over all `k`.
pub fn subdivision_from_functional(w: &LinearFunctional, n: usize) -> Result<Subdivision> {
    if w.0.dim() != n + 1 {
        return Err(Error::Parse(format!(
            "functional has {} entries, expected {}",
            w.0.dim(),
            n + 1
        )));
    }
    let size = PolygonSize::new(n);
    let mut diagonals = Vec::new();
    for k in 1..=n + 1 {
        let mut subset = vec![0];
        subset.extend((1..=n + 1).filter(|&i| w.at(i) >= w.at(k)));
        subset.push(n + 2);
        if subset.len() <= 2 {
            continue;
        }
        for (&a, &b) in subset.iter().circular_tuple_windows() {
            if !size.adjacent(a, b) {
                diagonals.push(Diagonal::new(a, b, size)?);
            }
        }
    }
    Subdivision::new(diagonals)
        .map_err(|e| Error::Internal(format!("induced diagonals of {:?} cross: {e}", w.0)))
}

/// The `k` in `i..=j` maximizing `w_k`.
pub fn summand_max_vertex(w: &LinearFunctional, i: usize, j: usize) -> Result<usize> {
    let best = (i..=j).max_by(|&x, &y| w.at(x).cmp(w.at(y))).expect("i <= j");
    if (i..=j).filter(|&k| w.at(k) == w.at(best)).count() > 1 {
        return Err(Error::NonGenericFunctional(i, j));
    }
    Ok(best)
}

/// Vertex maximizing a generic `w`: each summand contributes its full weight
/// at its `w`-maximal coordinate.
pub fn minkowski_vertex(a: &SimplexWeights, w: &LinearFunctional) -> Result<RationalVector> {
    let n = a.n;
    let mut v = vec![Rational::zero(); n + 1];
    for (&(i, j), weight) in &a.a {
        v[summand_max_vertex(w, i, j)? - 1] += weight;
    }
    Ok(RationalVector::new(v))
}

pub fn build_minkowski(a: &SimplexWeights, n: usize) -> Result<LabeledPolytope> {
    if a.n != n {
        return Err(Error::InvalidWeights(format!(
            "weights are for n = {}, expected {n}",
            a.n
        )));
    }
    let size = PolygonSize::new(n);
    let mut found: BTreeMap<RationalVector, Triangulation> = BTreeMap::new();
    for perm in (1..=n as i64 + 1).permutations(n + 1) {
        let w = LinearFunctional::from_ints(&perm);
        let vertex = minkowski_vertex(a, &w)?;
        let label = subdivision_from_functional(&w, n)?;
        if !label.is_triangulation(size) {
            return Err(Error::Internal(format!(
                "generic functional {perm:?} induced {} diagonals",
                label.len()
            )));
        }
        let label = label.into_triangulation(size)?;
        match found.get(&vertex) {
            Some(existing) if existing != &label => {
                return Err(Error::Internal(format!(
                    "vertex {vertex} labeled both {:?} and {:?}",
                    existing.diagonals(),
                    label.diagonals()
                )));
            }
            Some(_) => {}
            None => {
                found.insert(vertex, label);
            }
        }
    }
    if found.len() as u64 != catalan(n + 1) {
        return Err(Error::Internal(format!(
            "{} distinct vertices, expected {}",
            found.len(),
            catalan(n + 1)
        )));
    }
    let vertices = found
        .into_iter()
        .map(|(coords, label)| LabeledVertex { coords, label })
        .collect();
    LabeledPolytope::new(ConstructionTag::Minkowski, n, vertices)
}

/// Faces of `p` against the subdivision lattice: vertices, edges, facets and
/// every intermediate face.
pub fn verify_correspondence(p: &LabeledPolytope) -> Result<CorrespondenceReport> {
    face_correspondence(p)
}

/// The three kinds of diagonals of the (n+3)-gon, by the face of the
/// Minkowski sum they label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagonalClass {
    /// `{n+2, i}`
    Top { i: usize },
    /// `{0, i+1}`
    Bottom { i: usize },
    /// `{i, j}` with `1 <= i < i+1 < j <= n+1`
    Inner { i: usize, j: usize },
}

impl DiagonalClass {
    /// The two index blocks whose simplices generate the facet's direction.
    pub fn blocks(self, n: usize) -> (Vec<usize>, Vec<usize>) {
        match self {
            DiagonalClass::Top { i } | DiagonalClass::Bottom { i } => {
                ((1..=i).collect(), (i + 1..=n + 1).collect())
            }
            DiagonalClass::Inner { i, j } => (
                (1..=i).chain(j..=n + 1).collect(),
                (i + 1..j).collect(),
            ),
        }
    }

    /// Direction space of the sum of the two block simplices in `Q^{n+1}`.
    pub fn direction(self, n: usize) -> Subspace {
        let (x, y) = self.blocks(n);
        let mut gens = Vec::new();
        for block in [x, y] {
            for w in block.windows(2) {
                let diff = &RationalVector::unit(n + 1, w[0] - 1) - &RationalVector::unit(n + 1, w[1] - 1);
                gens.push(diff);
            }
        }
        Subspace::span(&gens, n + 1)
    }
}

pub fn expected_parallel_direction(d: Diagonal, n: usize) -> Result<DiagonalClass> {
    let d = Diagonal::new(d.a(), d.b(), PolygonSize::new(n))?;
    let (a, b) = d.endpoints();
    Ok(if b == n + 2 {
        DiagonalClass::Top { i: a }
    } else if a == 0 {
        DiagonalClass::Bottom { i: b - 1 }
    } else {
        DiagonalClass::Inner { i: a, j: b }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;
    use crate::polygon::all_triangulations;

    fn d(a: usize, b: usize, n: usize) -> Diagonal {
        Diagonal::new(a, b, PolygonSize::new(n)).unwrap()
    }

    fn sub(n: usize, ds: &[(usize, usize)]) -> Subdivision {
        Subdivision::new(ds.iter().map(|&(a, b)| d(a, b, n))).unwrap()
    }

    #[test]
    fn functional_to_subdivision_examples() {
        let c = LinearFunctional::from_ints(&[4, 4, 4]);
        assert!(subdivision_from_functional(&c, 2).unwrap().is_empty());
        let w = LinearFunctional::from_ints(&[3, 2, 1]);
        assert_eq!(subdivision_from_functional(&w, 2).unwrap(), sub(2, &[(1, 4), (2, 4)]));
        let w = LinearFunctional::from_ints(&[1, 2, 1]);
        assert_eq!(subdivision_from_functional(&w, 2).unwrap(), sub(2, &[(0, 2), (2, 4)]));
    }

    #[test]
    fn facet_functionals_give_single_diagonals() {
        // w_1 = .. = w_i > rest gives {n+2, i}; the reverse gives {0, i+1}
        let n = 4;
        for i in 1..=n {
            let top: Vec<i64> = (1..=n + 1).map(|k| if k <= i { 1 } else { 0 }).collect();
            let bottom: Vec<i64> = top.iter().map(|x| 1 - x).collect();
            assert_eq!(
                subdivision_from_functional(&LinearFunctional::from_ints(&top), n).unwrap(),
                sub(n, &[(i, n + 2)])
            );
            assert_eq!(
                subdivision_from_functional(&LinearFunctional::from_ints(&bottom), n).unwrap(),
                sub(n, &[(0, i + 1)])
            );
        }
    }

    #[test]
    fn summand_maximizers() {
        let w = LinearFunctional::from_ints(&[3, 2, 1]);
        assert_eq!(summand_max_vertex(&w, 1, 3).unwrap(), 1);
        assert_eq!(summand_max_vertex(&w, 2, 3).unwrap(), 2);
        let w = LinearFunctional::from_ints(&[1, 2, 1]);
        assert_eq!(summand_max_vertex(&w, 1, 3).unwrap(), 2);
        assert_eq!(summand_max_vertex(&w, 1, 1).unwrap(), 1);
        assert!(matches!(
            summand_max_vertex(&LinearFunctional::from_ints(&[2, 1, 2]), 1, 3),
            Err(Error::NonGenericFunctional(1, 3))
        ));
    }

    #[test]
    fn loday_segment_and_pentagon() {
        let p = build_minkowski(&SimplexWeights::ones(1), 1).unwrap();
        let mut got = p.coords();
        got.sort();
        assert_eq!(got, vec![RationalVector::from_ints(&[1, 2]), RationalVector::from_ints(&[2, 1])]);

        let p = build_minkowski(&SimplexWeights::ones(2), 2).unwrap();
        let mut got = p.coords();
        got.sort();
        let mut expected: Vec<RationalVector> = [[3, 2, 1], [3, 1, 2], [2, 1, 3], [1, 2, 3], [1, 4, 1]]
            .iter()
            .map(|v| RationalVector::from_ints(v))
            .collect();
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn doubling_weights_doubles_vertices() {
        let a = SimplexWeights::ones(3);
        let p = build_minkowski(&a, 3).unwrap();
        let q = build_minkowski(&a.scale(&int(2)), 3).unwrap();
        for (u, v) in p.vertices().iter().zip(q.vertices()) {
            assert_eq!(u.label, v.label);
            assert_eq!(v.coords, u.coords.scale(&int(2)));
        }
    }

    #[test]
    fn coordinate_sums_equal_total_weight() {
        let mut a = SimplexWeights::ones(3).weights().clone();
        for (k, (_, v)) in a.iter_mut().enumerate() {
            *v = rat(k as i64 + 1, 7);
        }
        let a = SimplexWeights::new(3, a).unwrap();
        let p = build_minkowski(&a, 3).unwrap();
        assert_eq!(p.vertices().len(), 14);
        for v in p.vertices() {
            assert_eq!(v.coords.sum(), a.total());
        }
    }

    #[test]
    fn weights_must_be_positive_and_complete() {
        let mut a = SimplexWeights::ones(2).weights().clone();
        a.insert((1, 1), int(-1));
        assert!(SimplexWeights::new(2, a.clone()).is_err());
        a.insert((1, 1), int(0));
        assert!(SimplexWeights::new(2, a.clone()).is_err());
        a.remove(&(1, 1));
        assert!(SimplexWeights::new(2, a).is_err());
    }

    #[test]
    fn generic_functionals_give_triangulations() {
        let n = 3;
        let size = PolygonSize::new(n);
        let triangulations = all_triangulations(size);
        for perm in (1..=4i64).permutations(4) {
            let w = LinearFunctional::from_ints(&perm);
            let s = subdivision_from_functional(&w, n).unwrap();
            assert!(s.is_triangulation(size));
            assert!(triangulations.contains(&s.clone().into_triangulation(size).unwrap()));
            let shifted = LinearFunctional(RationalVector::new(
                w.0.iter().map(|x| x * rat(5, 2) - rat(1, 3)).collect(),
            ));
            assert_eq!(subdivision_from_functional(&shifted, n).unwrap(), s);
        }
    }

    #[test]
    fn diagonal_classes() {
        assert_eq!(expected_parallel_direction(d(2, 5, 3), 3).unwrap(), DiagonalClass::Top { i: 2 });
        assert_eq!(expected_parallel_direction(d(0, 3, 3), 3).unwrap(), DiagonalClass::Bottom { i: 2 });
        let c = expected_parallel_direction(d(1, 3, 3), 3).unwrap();
        assert_eq!(c, DiagonalClass::Inner { i: 1, j: 3 });
        assert_eq!(c.blocks(3).1, vec![2]);
        assert_eq!(
            DiagonalClass::Top { i: 2 }.direction(3),
            DiagonalClass::Bottom { i: 2 }.direction(3)
        );
        assert_eq!(DiagonalClass::Top { i: 2 }.direction(3).dim(), 2);
        assert!(expected_parallel_direction(Diagonal::new_unchecked(0, 5), 3).is_err());
    }
}
