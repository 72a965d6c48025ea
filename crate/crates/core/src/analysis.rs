//! Construction-agnostic geometry of labeled associahedra.
//!
//! Facets are located by their diagonal (the vertices whose triangulation
//! contains it) and then certified as supporting faces of the right
//! dimension. Nothing here computes a convex hull.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::{
    hyperplane_through, solve_linear, subspace_from_differences, AffineMap, Hyperplane, Rational,
    RationalMatrix, RationalVector, Subspace,
};
use crate::polygon::{
    all_diagonals, all_subdivisions, all_triangulations, crossing, subdivision_counts, Diagonal,
    PolygonSize, Triangulation,
};
use crate::polytope::{ConstructionTag, LabeledPolytope};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetDescriptor {
    pub diagonal: Diagonal,
    /// Sorted indices of the vertices whose label contains `diagonal`.
    pub vertex_indices: Vec<usize>,
    pub hyperplane: Hyperplane,
    /// Direction space of the facet's affine hull.
    pub direction: Subspace,
    /// Whether the polytope lies on the `<= offset` side of `hyperplane`.
    below: bool,
}

impl FacetDescriptor {
    pub fn contains_vertex(&self, i: usize) -> bool {
        self.vertex_indices.binary_search(&i).is_ok()
    }

    /// Normal pointing away from the polytope.
    pub fn outward_normal(&self) -> RationalVector {
        if self.below {
            self.hyperplane.normal().clone()
        } else {
            -self.hyperplane.normal()
        }
    }

    /// `(a, b)` with the polytope inside `a . x <= b` and the facet on equality.
    pub fn inequality(&self) -> (RationalVector, Rational) {
        if self.below {
            (self.hyperplane.normal().clone(), self.hyperplane.offset().clone())
        } else {
            (-self.hyperplane.normal(), -self.hyperplane.offset())
        }
    }
}

fn certify_facet(p: &LabeledPolytope, hull: &Subspace, d: Diagonal) -> Result<FacetDescriptor> {
    let fail = |reason: String| Error::Certification {
        diagonal: d,
        reason,
    };
    let members: Vec<usize> = (0..p.vertices().len())
        .filter(|&i| p.vertices()[i].label.contains(d))
        .collect();
    if members.is_empty() {
        return Err(fail("no vertex carries this diagonal".into()));
    }
    let points: Vec<RationalVector> = members.iter().map(|&i| p.vertices()[i].coords.clone()).collect();
    let hyperplane = hyperplane_through(&points, hull).ok_or_else(|| {
        fail(format!(
            "{} member vertices do not span a flat of dimension {}",
            members.len(),
            p.n().saturating_sub(1)
        ))
    })?;
    let direction = subspace_from_differences(&points);
    let mut below = None;
    for (i, v) in p.vertices().iter().enumerate() {
        let value = hyperplane.eval(&v.coords);
        let member = members.binary_search(&i).is_ok();
        if member {
            if !value.is_zero() {
                return Err(fail(format!("member vertex {i} is off the hyperplane")));
            }
            continue;
        }
        if value.is_zero() {
            return Err(fail(format!("non-member vertex {i} lies on the hyperplane")));
        }
        let side = value.is_negative();
        match below {
            None => below = Some(side),
            Some(s) if s != side => {
                return Err(fail(format!("vertices on both sides, e.g. vertex {i}")));
            }
            Some(_) => {}
        }
    }
    let below = below.ok_or_else(|| fail("every vertex lies on the facet".into()))?;
    Ok(FacetDescriptor {
        diagonal: d,
        vertex_indices: members,
        hyperplane,
        direction,
        below,
    })
}

/// One certified facet per diagonal, in diagonal order.
pub fn extract_facets(p: &LabeledPolytope) -> Result<Vec<FacetDescriptor>> {
    if p.n() == 0 {
        return Err(Error::OutOfRange {
            n: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    let hull = p.direction();
    all_diagonals(p.size())
        .into_par_iter()
        .map(|d| certify_facet(p, &hull, d))
        .collect()
}

/// Pairs of facets with equal direction spaces.
pub fn parallel_pairs_of(facets: &[FacetDescriptor]) -> Vec<(Diagonal, Diagonal)> {
    let mut out = Vec::new();
    for (i, f) in facets.iter().enumerate() {
        for g in &facets[i + 1..] {
            if f.direction == g.direction {
                out.push((f.diagonal, g.diagonal));
            }
        }
    }
    out
}

pub fn parallel_pairs(p: &LabeledPolytope) -> Result<Vec<(Diagonal, Diagonal)>> {
    Ok(parallel_pairs_of(&extract_facets(p)?))
}

/// Facets meet iff they share a vertex; cross-checked against the diagonals not crossing.
pub fn facets_intersect(f1: &FacetDescriptor, f2: &FacetDescriptor) -> Result<bool> {
    let geometric = f1
        .vertex_indices
        .iter()
        .any(|&i| f2.contains_vertex(i));
    let combinatorial = !crossing(f1.diagonal, f2.diagonal);
    if geometric != combinatorial {
        return Err(Error::Internal(format!(
            "facets {} and {} {} but their diagonals {}",
            f1.diagonal,
            f2.diagonal,
            if geometric { "meet" } else { "are disjoint" },
            if combinatorial { "do not cross" } else { "cross" }
        )));
    }
    Ok(geometric)
}

/// For every facet parallel to another facet, how many other such facets it meets.
pub fn special_profile(
    facets: &[FacetDescriptor],
    pairs: &[(Diagonal, Diagonal)],
) -> Result<BTreeMap<Diagonal, usize>> {
    let special: BTreeSet<Diagonal> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let chosen: Vec<&FacetDescriptor> = facets
        .iter()
        .filter(|f| special.contains(&f.diagonal))
        .collect();
    let mut out = BTreeMap::new();
    for f in &chosen {
        let mut count = 0;
        for g in &chosen {
            if g.diagonal != f.diagonal && facets_intersect(f, g)? {
                count += 1;
            }
        }
        out.insert(f.diagonal, count);
    }
    Ok(out)
}

/// Rotation or reflection of the polygon labels `0..m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralMap {
    m: usize,
    shift: usize,
    reflect: bool,
}

impl DihedralMap {
    pub fn identity(size: PolygonSize) -> Self {
        DihedralMap {
            m: size.vertex_count(),
            shift: 0,
            reflect: false,
        }
    }

    pub fn rotation(size: PolygonSize, shift: usize) -> Self {
        let m = size.vertex_count();
        DihedralMap {
            m,
            shift: shift % m,
            reflect: false,
        }
    }

    /// `v -> shift - v (mod m)`
    pub fn reflection(size: PolygonSize, shift: usize) -> Self {
        let m = size.vertex_count();
        DihedralMap {
            m,
            shift: shift % m,
            reflect: true,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && !self.reflect
    }

    pub fn apply_label(&self, v: usize) -> usize {
        if self.reflect {
            (self.shift + self.m - v % self.m) % self.m
        } else {
            (v + self.shift) % self.m
        }
    }

    pub fn apply_diagonal(&self, d: Diagonal) -> Diagonal {
        let (a, b) = (self.apply_label(d.a()), self.apply_label(d.b()));
        Diagonal::new(a, b, PolygonSize::new(self.m - 3))
            .expect("dihedral maps preserve polygon adjacency")
    }

    pub fn apply_triangulation(&self, t: &Triangulation) -> Triangulation {
        Triangulation::new(
            t.diagonals().iter().map(|&d| self.apply_diagonal(d)),
            PolygonSize::new(self.m - 3),
        )
        .expect("dihedral maps preserve triangulations")
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &DihedralMap) -> DihedralMap {
        assert_eq!(self.m, other.m);
        let reflect = self.reflect != other.reflect;
        let shift = self.apply_label(other.apply_label(0));
        DihedralMap {
            m: self.m,
            shift,
            reflect,
        }
    }
}

impl fmt::Display for DihedralMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reflect {
            write!(f, "reflection v -> {} - v mod {}", self.shift, self.m)
        } else {
            write!(f, "rotation v -> v + {} mod {}", self.shift, self.m)
        }
    }
}

/// All `2(n+3)` symmetries of the labeled polygon, identity first.
pub fn dihedral_relabelings(n: usize) -> Vec<DihedralMap> {
    let size = PolygonSize::new(n);
    let m = size.vertex_count();
    (0..m)
        .map(|s| DihedralMap::rotation(size, s))
        .chain((0..m).map(|s| DihedralMap::reflection(size, s)))
        .collect()
}

/// Affinely independent vertices of a polytope and every vertex's
/// coordinates relative to them.
struct AffineFrame {
    base: RationalVector,
    frame: Vec<usize>,
    edges: RationalMatrix,
    local: Vec<RationalVector>,
}

impl AffineFrame {
    fn new(p: &LabeledPolytope) -> Result<Self> {
        let coords = p.coords();
        let base = coords[0].clone();
        let mut frame = vec![0];
        let mut diffs: Vec<RationalVector> = Vec::new();
        for (i, c) in coords.iter().enumerate().skip(1) {
            if diffs.len() == p.n() {
                break;
            }
            let diff = c - &base;
            let mut trial = diffs.clone();
            trial.push(diff.clone());
            if RationalMatrix::from_rows(trial).rank() > diffs.len() {
                diffs.push(diff);
                frame.push(i);
            }
        }
        if diffs.len() != p.n() {
            return Err(Error::Internal(format!(
                "{} vertices span only {} dimensions",
                p.tag(),
                diffs.len()
            )));
        }
        let edges = if diffs.is_empty() {
            RationalMatrix::zeros(base.dim(), 0)
        } else {
            RationalMatrix::from_columns(&diffs)
        };
        let local = coords
            .iter()
            .map(|c| {
                if diffs.is_empty() {
                    return Ok(RationalVector::new(Vec::new()));
                }
                solve_linear(&edges, &(c - &base)).unique().ok_or_else(|| {
                    Error::Internal(format!("vertex {c} is outside the affine hull"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AffineFrame {
            base,
            frame,
            edges,
            local,
        })
    }
}

fn combine(base: &RationalVector, edges: &[RationalVector], local: &RationalVector) -> RationalVector {
    edges
        .iter()
        .zip(local.iter())
        .fold(base.clone(), |acc, (e, l)| &acc + &e.scale(l))
}

fn fit_with_frame(
    frame: &AffineFrame,
    src: &LabeledPolytope,
    dst: &LabeledPolytope,
    image_of: &[usize],
) -> Result<Option<AffineMap>> {
    let dst_coords = dst.coords();
    let q0 = dst_coords[image_of[frame.frame[0]]].clone();
    let dst_edges: Vec<RationalVector> = frame.frame[1..]
        .iter()
        .map(|&k| &dst_coords[image_of[k]] - &q0)
        .collect();
    if !dst_edges.is_empty() && RationalMatrix::from_rows(dst_edges.clone()).rank() != dst_edges.len() {
        return Ok(None);
    }
    for (i, local) in frame.local.iter().enumerate() {
        if combine(&q0, &dst_edges, local) != dst_coords[image_of[i]] {
            return Ok(None);
        }
    }
    // matrix = Q (P^T P)^{-1} P^T, plus the identity on the complement of
    // the source hull when both ambient spaces agree
    let src_dim = src.ambient_dim();
    let dst_dim = dst.ambient_dim();
    let mut matrix = if dst_edges.is_empty() {
        RationalMatrix::zeros(dst_dim, src_dim)
    } else {
        let p = &frame.edges;
        let pt = p.transpose();
        let gram_inv = pt
            .mul(p)
            .inverse()
            .ok_or_else(|| Error::Internal("source frame is degenerate".into()))?;
        let left_inverse = gram_inv.mul(&pt);
        let q = RationalMatrix::from_columns(&dst_edges);
        let m = q.mul(&left_inverse);
        if src_dim == dst_dim {
            m.add(&RationalMatrix::identity(src_dim).sub(&p.mul(&left_inverse)))
        } else {
            m
        }
    };
    if dst_edges.is_empty() && src_dim == dst_dim {
        matrix = RationalMatrix::identity(src_dim);
    }
    let translation = &q0 - &matrix.mul_vec(&frame.base);
    let map = AffineMap::new(matrix, translation)?;
    for (i, v) in src.vertices().iter().enumerate() {
        if map.apply(&v.coords) != dst_coords[image_of[i]] {
            return Err(Error::Internal(format!(
                "fitted map does not replay on vertex {i}"
            )));
        }
    }
    Ok(Some(map))
}

fn image_indices(
    src: &LabeledPolytope,
    dst: &LabeledPolytope,
    bijection: &dyn Fn(&Triangulation) -> Triangulation,
) -> Result<Vec<usize>> {
    let image: Vec<usize> = src
        .vertices()
        .iter()
        .map(|v| {
            let t = bijection(&v.label);
            dst.index_of(&t).ok_or_else(|| {
                Error::Internal(format!("label {:?} has no vertex in the target", t.diagonals()))
            })
        })
        .collect::<Result<_>>()?;
    if image.iter().collect::<BTreeSet<_>>().len() != image.len() {
        return Err(Error::Internal("label map is not injective".into()));
    }
    Ok(image)
}

/// The affine map sending every source vertex to the target vertex whose label
/// is the image of its own, if one exists.
pub fn fit_affine_map(
    src: &LabeledPolytope,
    dst: &LabeledPolytope,
    bijection: impl Fn(&Triangulation) -> Triangulation,
) -> Result<Option<AffineMap>> {
    if src.n() != dst.n() {
        return Err(Error::Internal("polytopes of different dimension".into()));
    }
    let frame = AffineFrame::new(src)?;
    let image = image_indices(src, dst, &bijection)?;
    fit_with_frame(&frame, src, dst, &image)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub name: &'static str,
    pub left: String,
    pub right: String,
    /// Whether the invariant differs, which rules out affine equivalence.
    pub fires: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    NonEquivalent,
    Equivalent,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NonEquivalent => "non-equivalent",
            Verdict::Equivalent => "equivalent",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub relabeling: DihedralMap,
    pub map: AffineMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub pair: (ConstructionTag, ConstructionTag),
    pub n: usize,
    pub obstructions: Vec<Obstruction>,
    pub relabelings_tried: usize,
    pub witness: Option<Witness>,
    pub verdict: Verdict,
    pub note: Option<String>,
}

impl EquivalenceReport {
    pub fn any_obstruction_fires(&self) -> bool {
        self.obstructions.iter().any(|o| o.fires)
    }
}

/// Label-free invariants of a polytope used as equivalence obstructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineInvariants {
    pub parallel_pairs: usize,
    /// Sorted special-intersection counts.
    pub special_profile: Vec<usize>,
}

pub fn affine_invariants(p: &LabeledPolytope) -> Result<AffineInvariants> {
    let facets = extract_facets(p)?;
    let pairs = parallel_pairs_of(&facets);
    let mut profile: Vec<usize> = special_profile(&facets, &pairs)?.into_values().collect();
    profile.sort();
    Ok(AffineInvariants {
        parallel_pairs: pairs.len(),
        special_profile: profile,
    })
}

pub fn equivalence_search(p: &LabeledPolytope, q: &LabeledPolytope) -> Result<EquivalenceReport> {
    if p.n() != q.n() {
        return Err(Error::Internal(format!(
            "cannot compare n = {} with n = {}",
            p.n(),
            q.n()
        )));
    }
    let (ip, iq) = (affine_invariants(p)?, affine_invariants(q)?);
    let obstructions = vec![
        Obstruction {
            name: "parallel-pair count",
            left: ip.parallel_pairs.to_string(),
            right: iq.parallel_pairs.to_string(),
            fires: ip.parallel_pairs != iq.parallel_pairs,
        },
        Obstruction {
            name: "special-profile multiset",
            left: format!("{:?}", ip.special_profile),
            right: format!("{:?}", iq.special_profile),
            fires: ip.special_profile != iq.special_profile,
        },
    ];

    let frame = AffineFrame::new(p)?;
    let relabelings = dihedral_relabelings(p.n());
    let fits: Vec<Option<Witness>> = relabelings
        .par_iter()
        .map(|r| {
            let image = image_indices(p, q, &|t: &Triangulation| r.apply_triangulation(t))?;
            Ok(fit_with_frame(&frame, p, q, &image)?.map(|map| Witness {
                relabeling: *r,
                map,
            }))
        })
        .collect::<Result<_>>()?;
    let witness = fits.into_iter().flatten().next();

    let fired = obstructions.iter().any(|o| o.fires);
    let (verdict, note) = match (&witness, fired) {
        (Some(w), true) => {
            return Err(Error::Internal(format!(
                "affine witness ({}) found although an invariant differs",
                w.relabeling
            )));
        }
        (Some(_), false) => (Verdict::Equivalent, None),
        (None, true) => (Verdict::NonEquivalent, None),
        (None, false) => (
            Verdict::Inconclusive,
            Some(
                "invariants agree and no dihedral relabeling admits an affine map; \
                 completeness of the dihedral family is assumed, not checked"
                    .to_string(),
            ),
        ),
    };
    Ok(EquivalenceReport {
        pair: (p.tag(), q.tag()),
        n: p.n(),
        obstructions,
        relabelings_tried: relabelings.len(),
        witness,
        verdict,
        note,
    })
}

/// Outcome of matching the faces of a polytope with polygon subdivisions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub n: usize,
    pub vertices: usize,
    pub edges: usize,
    pub facets: usize,
    /// Faces found per dimension, `0..=n`.
    pub f_vector: Vec<usize>,
    /// Subdivisions per number of diagonals, `0..=n`.
    pub subdivision_counts: Vec<usize>,
    pub failures: Vec<String>,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn maximizers(values: &[Rational]) -> Vec<usize> {
    let Some(best) = values.iter().max() else {
        return Vec::new();
    };
    (0..values.len()).filter(|&i| &values[i] == best).collect()
}

/// Checks that subdivisions ordered by refinement match the face lattice.
///
/// Each subdivision `s` is matched with the vertices whose labels refine it.
/// That set must be exactly where the sum of outward normals of the facets
/// of `s` is maximized, and must have affine dimension `n - |s|`. Edges of
/// the vertex-facet incidence must be exactly the flips.
pub fn face_correspondence(p: &LabeledPolytope) -> Result<CorrespondenceReport> {
    let n = p.n();
    let size = p.size();
    let facets = extract_facets(p)?;
    let by_diagonal: BTreeMap<Diagonal, &FacetDescriptor> =
        facets.iter().map(|f| (f.diagonal, f)).collect();
    let mut failures = Vec::new();

    let labels: Vec<Triangulation> = p.vertices().iter().map(|v| v.label.clone()).collect();
    if labels != all_triangulations(size) {
        failures.push("vertex labels are not the triangulations".to_string());
    }

    let coords = p.coords();
    let mut f_vector = vec![0; n + 1];
    let subdivisions = all_subdivisions(size);
    let outcomes: Vec<std::result::Result<usize, String>> = subdivisions
        .par_iter()
        .map(|s| {
            let members: Vec<usize> = (0..labels.len())
                .filter(|&i| s.diagonals().iter().all(|&d| labels[i].contains(d)))
                .collect();
            let functional = s.diagonals().iter().fold(RationalVector::zeros(p.ambient_dim()), |acc, d| {
                &acc + &by_diagonal[d].outward_normal()
            });
            let values: Vec<Rational> = coords.iter().map(|c| functional.dot(c)).collect();
            if maximizers(&values) != members {
                return Err(format!(
                    "subdivision {:?} is not cut out by its facets' normals",
                    s.diagonals()
                ));
            }
            let pts: Vec<RationalVector> = members.iter().map(|&i| coords[i].clone()).collect();
            let dim = subspace_from_differences(&pts).dim();
            if dim != n - s.len() {
                return Err(format!(
                    "face of {:?} has dimension {dim}, expected {}",
                    s.diagonals(),
                    n - s.len()
                ));
            }
            Ok(dim)
        })
        .collect();
    for o in outcomes {
        match o {
            Ok(dim) => f_vector[dim] += 1,
            Err(e) => failures.push(e),
        }
    }

    // edges from incidences: pairs whose common facets meet in just the pair
    let incidence: Vec<Vec<usize>> = (0..labels.len())
        .map(|i| {
            facets
                .iter()
                .enumerate()
                .filter(|(_, f)| f.contains_vertex(i))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    for (i, inc) in incidence.iter().enumerate() {
        if inc.len() != n {
            failures.push(format!("vertex {i} lies on {} facets, expected {n}", inc.len()));
        }
    }
    let mut edges = 0;
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            let common: Vec<usize> = incidence[i]
                .iter()
                .filter(|k| incidence[j].contains(k))
                .copied()
                .collect();
            let face_size = (0..labels.len())
                .filter(|&v| common.iter().all(|&k| facets[k].contains_vertex(v)))
                .count();
            let is_edge = face_size == 2 && n >= 1;
            let is_flip = labels[i].common_diagonals(&labels[j]) + 1 == n;
            if is_edge != is_flip {
                failures.push(format!(
                    "vertices {i} and {j}: edge = {is_edge}, flip = {is_flip}"
                ));
            }
            if is_edge {
                edges += 1;
                if common.len() + 1 != n {
                    failures.push(format!(
                        "edge {i}-{j} lies on {} facets, expected {}",
                        common.len(),
                        n - 1
                    ));
                }
            }
        }
    }

    let counts = subdivision_counts(size);
    let expected_f: Vec<usize> = (0..=n).map(|dim| counts[n - dim]).collect();
    if f_vector != expected_f {
        failures.push(format!(
            "f-vector {f_vector:?} differs from subdivision counts {expected_f:?}"
        ));
    }
    if facets.len() != all_diagonals(size).len() {
        failures.push(format!("{} facets certified", facets.len()));
    }
    Ok(CorrespondenceReport {
        n,
        vertices: labels.len(),
        edges,
        facets: facets.len(),
        f_vector,
        subdivision_counts: counts,
        failures,
    })
}

/// Affine dimension of the face of `p` cut out by the facets of `diagonals`.
pub fn face_dimension(p: &LabeledPolytope, diagonals: &[Diagonal]) -> usize {
    let pts: Vec<RationalVector> = p
        .vertices()
        .iter()
        .filter(|v| diagonals.iter().all(|&d| v.label.contains(d)))
        .map(|v| v.coords.clone())
        .collect();
    subspace_from_differences(&pts).dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::{build_cluster_polytope, default_support_values};
    use crate::exactlin::{int, rat};
    use crate::minkowski::{build_minkowski, SimplexWeights};
    use crate::secondary::{build_secondary, PolygonGeometry};

    fn d(a: usize, b: usize, n: usize) -> Diagonal {
        Diagonal::new(a, b, PolygonSize::new(n)).unwrap()
    }

    fn all_three(n: usize) -> Vec<LabeledPolytope> {
        vec![
            build_secondary(&PolygonGeometry::parabola(n)).unwrap(),
            build_cluster_polytope(&default_support_values(n).unwrap(), n).unwrap(),
            build_minkowski(&SimplexWeights::ones(n), n).unwrap(),
        ]
    }

    #[test]
    fn facets_of_segments_are_endpoints() {
        for p in all_three(1) {
            let facets = extract_facets(&p).unwrap();
            assert_eq!(facets.len(), 2);
            for f in &facets {
                assert_eq!(f.vertex_indices.len(), 1);
                assert_eq!(f.direction.dim(), 0);
            }
        }
    }

    #[test]
    fn pentagon_facets() {
        for p in all_three(2) {
            let facets = extract_facets(&p).unwrap();
            assert_eq!(facets.len(), 5);
            assert!(facets.iter().all(|f| f.vertex_indices.len() == 2));
        }
    }

    #[test]
    fn minkowski_facet_of_02_has_five_vertices() {
        let p = build_minkowski(&SimplexWeights::ones(3), 3).unwrap();
        let facets = extract_facets(&p).unwrap();
        assert_eq!(facets.len(), 9);
        let f = facets.iter().find(|f| f.diagonal == d(0, 2, 3)).unwrap();
        let brute: Vec<usize> = p
            .vertices()
            .iter()
            .enumerate()
            .filter(|(_, v)| v.label.diagonals().contains(&d(0, 2, 3)))
            .map(|(i, _)| i)
            .collect();
        assert_eq!(f.vertex_indices, brute);
        assert_eq!(brute.len(), 5);
    }

    #[test]
    fn parallel_pairs_by_construction() {
        let [sec, clu, min]: [LabeledPolytope; 3] = all_three(3).try_into().unwrap();
        assert!(parallel_pairs(&sec).unwrap().is_empty());
        assert_eq!(parallel_pairs(&clu).unwrap().len(), 3);
        assert_eq!(
            parallel_pairs(&min).unwrap(),
            vec![(d(0, 2, 3), d(1, 5, 3)), (d(0, 3, 3), d(2, 5, 3)), (d(0, 4, 3), d(3, 5, 3))]
        );
    }

    #[test]
    fn intersections_agree_with_crossings() {
        for n in 2..=4 {
            for p in all_three(n) {
                let facets = extract_facets(&p).unwrap();
                for f in &facets {
                    for g in &facets {
                        facets_intersect(f, g).unwrap();
                    }
                }
            }
        }
        let p = build_minkowski(&SimplexWeights::ones(3), 3).unwrap();
        let facets = extract_facets(&p).unwrap();
        let get = |a, b| facets.iter().find(|f| f.diagonal == d(a, b, 3)).unwrap();
        assert!(!facets_intersect(get(1, 5), get(0, 4)).unwrap());
        assert!(facets_intersect(get(1, 5), get(1, 3)).unwrap());
        let p2 = build_minkowski(&SimplexWeights::ones(2), 2).unwrap();
        let f2 = extract_facets(&p2).unwrap();
        let g = |a, b| f2.iter().find(|f| f.diagonal == d(a, b, 2)).unwrap();
        assert!(!facets_intersect(g(0, 2), g(1, 3)).unwrap());
    }

    #[test]
    fn disagreeing_criteria_are_an_error() {
        let p = build_minkowski(&SimplexWeights::ones(2), 2).unwrap();
        let facets = extract_facets(&p).unwrap();
        let f = &facets[0];
        let g = facets
            .iter()
            .find(|g| g.diagonal != f.diagonal && !crossing(g.diagonal, f.diagonal))
            .unwrap();
        assert!(facets_intersect(f, g).unwrap());
        // same vertices, but now labelled by a diagonal that crosses f's
        let mut forged = g.clone();
        forged.diagonal = facets
            .iter()
            .map(|h| h.diagonal)
            .find(|&e| crossing(e, f.diagonal))
            .unwrap();
        assert!(matches!(facets_intersect(f, &forged), Err(Error::Internal(_))));
    }

    #[test]
    fn special_profiles_n3() {
        let [_, clu, min]: [LabeledPolytope; 3] = all_three(3).try_into().unwrap();
        let facets = extract_facets(&min).unwrap();
        let profile = special_profile(&facets, &parallel_pairs_of(&facets)).unwrap();
        assert_eq!(profile[&d(1, 5, 3)], 2);
        assert_eq!(profile[&d(0, 4, 3)], 2);
        assert_eq!(profile.values().filter(|&&c| c <= 2).count(), 2);

        let facets = extract_facets(&clu).unwrap();
        let profile = special_profile(&facets, &parallel_pairs_of(&facets)).unwrap();
        assert_eq!(profile.len(), 6);
        assert_eq!(profile.values().filter(|&&c| c == 2).count(), 1);
        assert!(profile.values().all(|&c| c >= 2));
    }

    #[test]
    fn dihedral_group() {
        let maps = dihedral_relabelings(2);
        assert_eq!(maps.len(), 10);
        assert!(maps[0].is_identity());
        let size = PolygonSize::new(2);
        assert_eq!(DihedralMap::rotation(size, 1).apply_diagonal(d(0, 2, 2)), d(1, 3, 2));
        for a in &maps {
            for b in &maps {
                assert!(maps.contains(&a.compose(b)));
                for v in 0..5 {
                    assert_eq!(a.compose(b).apply_label(v), a.apply_label(b.apply_label(v)));
                }
            }
        }
    }

    #[test]
    fn affine_fits() {
        let p = build_minkowski(&SimplexWeights::ones(3), 3).unwrap();
        let id = fit_affine_map(&p, &p, |t| t.clone()).unwrap().unwrap();
        assert_eq!(id, AffineMap::identity(4));

        let shift = RationalVector::from_ints(&[1, 1, 1, 1]);
        let moved = p.map_coords(|c| c + &shift).unwrap();
        let w = fit_affine_map(&p, &moved, |t| t.clone()).unwrap().unwrap();
        assert!(w.is_pure_translation());
        assert_eq!(w.translation(), &shift);

        let q = build_cluster_polytope(&default_support_values(3).unwrap(), 3).unwrap();
        for r in dihedral_relabelings(3) {
            assert!(fit_affine_map(&q, &p, |t| r.apply_triangulation(t)).unwrap().is_none());
        }
    }

    #[test]
    fn fits_across_ambient_dimensions() {
        // the secondary polytope lives in Q^{n+3}; a rescaled copy is still found
        let p = build_secondary(&PolygonGeometry::parabola(3)).unwrap();
        let scaled = p.map_coords(|c| c.scale(&rat(2, 3))).unwrap();
        let w = fit_affine_map(&p, &scaled, |t| t.clone()).unwrap().unwrap();
        for v in p.vertices() {
            assert_eq!(w.apply(&v.coords), v.coords.scale(&rat(2, 3)));
        }
    }

    #[test]
    fn self_comparison_finds_identity() {
        let p = build_minkowski(&SimplexWeights::ones(2), 2).unwrap();
        let r = equivalence_search(&p, &p).unwrap();
        assert_eq!(r.verdict, Verdict::Equivalent);
        let w = r.witness.unwrap();
        assert!(w.relabeling.is_identity());
        assert_eq!(w.map, AffineMap::identity(3));
    }

    #[test]
    fn secondary_vs_cluster_pentagons() {
        let [sec, clu, _]: [LabeledPolytope; 3] = all_three(2).try_into().unwrap();
        let r = equivalence_search(&sec, &clu).unwrap();
        assert_eq!(r.verdict, Verdict::NonEquivalent);
        assert!(r.obstructions[0].fires);
        assert_eq!((r.obstructions[0].left.as_str(), r.obstructions[0].right.as_str()), ("0", "2"));
        assert!(r.witness.is_none());
        assert_eq!(r.relabelings_tried, 10);
    }

    #[test]
    fn correspondence_small() {
        for n in 1..=3 {
            for p in all_three(n) {
                let r = face_correspondence(&p).unwrap();
                assert!(r.passed(), "{} n={n}: {:?}", p.tag(), r.failures);
            }
        }
        let p = build_minkowski(&SimplexWeights::ones(3), 3).unwrap();
        let r = face_correspondence(&p).unwrap();
        assert_eq!((r.vertices, r.edges, r.facets), (14, 21, 9));
        assert_eq!(r.subdivision_counts.iter().sum::<usize>(), 45);
        let r = face_correspondence(&build_minkowski(&SimplexWeights::ones(1), 1).unwrap()).unwrap();
        assert_eq!((r.vertices, r.edges), (2, 1));
    }

    #[test]
    fn parallel_pairs_survive_shear() {
        for p in all_three(3) {
            let dim = p.ambient_dim();
            let shear = |c: &RationalVector| {
                let mut e = c.entries().to_vec();
                e[0] = &e[0] + &e[dim - 1] * rat(3, 2) + int(5);
                e[1] = &e[1] - int(1);
                RationalVector::new(e)
            };
            let q = p.map_coords(shear).unwrap();
            assert_eq!(parallel_pairs(&p).unwrap(), parallel_pairs(&q).unwrap());
        }
    }

    #[test]
    fn certification_rejects_a_broken_polytope() {
        // swap the coordinates of two vertices: labels no longer match faces
        let p = build_minkowski(&SimplexWeights::ones(2), 2).unwrap();
        let mut vs = p.vertices().to_vec();
        let (a, b) = (vs[0].coords.clone(), vs[1].coords.clone());
        vs[0].coords = b;
        vs[1].coords = a;
        let broken = LabeledPolytope::new(ConstructionTag::Minkowski, 2, vs).unwrap();
        assert!(matches!(extract_facets(&broken), Err(Error::Certification { .. })));
    }
}
