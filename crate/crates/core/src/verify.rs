//! The verification suite: named checks over ranges of `n` and seeded
//! parameter draws, run concurrently and reported in manifest order.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::{
    equivalence_search, extract_facets, face_correspondence, parallel_pairs, parallel_pairs_of,
    special_profile, Verdict,
};
use crate::cluster::{
    polytopality_check, root_to_diagonal, verify_fan, AlmostPositiveRoot, SupportValues,
};
use crate::error::{Error, Result};
use crate::exactlin::{int, rat, Rational, RationalVector};
use crate::io::{ConstructionParams, PolytopeFile};
use crate::minkowski::{expected_parallel_direction, verify_correspondence, SimplexWeights};
use crate::polygon::{all_diagonals, all_triangulations, catalan, Diagonal, PolygonSize};
use crate::polytope::{ConstructionTag, LabeledPolytope};
use crate::sampling::{random_geometry, random_support_values, random_weights, rng_for};
use crate::secondary::gkz_vector;

/// Largest `n` accepted by `verify`.
pub const VERIFY_MAX_N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    CatalanCounts,
    VertexCounts,
    FacetCounts,
    SecondaryNoParallel,
    ClusterParallelRoots,
    MinkowskiParallel,
    FaceCorrespondence,
    SpecialFacets,
    NonEquivalence,
    LodayRegression,
    ExactInvariants,
    ClusterFan,
    DefaultSupportValues,
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub name: String,
    /// The claim being checked.
    pub anchor: String,
    pub kind: CheckKind,
    pub n_min: usize,
    pub n_max: usize,
    /// Seeded random parameter draws on top of the defaults.
    #[serde(default)]
    pub draws: usize,
    #[serde(default = "default_true")]
    pub expect_pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyManifest {
    pub checks: Vec<CheckSpec>,
}

fn spec(name: &str, anchor: &str, kind: CheckKind, n_min: usize, n_max: usize, draws: usize) -> CheckSpec {
    CheckSpec {
        name: name.into(),
        anchor: anchor.into(),
        kind,
        n_min,
        n_max,
        draws,
        expect_pass: true,
    }
}

impl Default for VerifyManifest {
    fn default() -> Self {
        use CheckKind::*;
        VerifyManifest {
            checks: vec![
                spec("catalan-counts", "triangulations of the (n+3)-gon are counted by C(n+1)", CatalanCounts, 1, 6, 0),
                spec("vertex-counts", "each construction has one vertex per triangulation", VertexCounts, 1, 6, 0),
                spec("facet-counts", "facets correspond to the n(n+3)/2 diagonals", FacetCounts, 1, 6, 0),
                spec("secondary-no-parallel", "the secondary polytope has no parallel facets for n >= 2", SecondaryNoParallel, 2, 6, 3),
                spec("cluster-parallel", "the cluster polytope has exactly n pairs of parallel facets, {alpha_i, -alpha_i}", ClusterParallelRoots, 2, 6, 3),
                spec("minkowski-parallel", "parallel facets of the Minkowski sum are the pairs ({n+2,i}, {0,i+1})", MinkowskiParallel, 2, 6, 3),
                spec("face-correspondence", "functionals to subdivisions is an order-preserving bijection onto faces", FaceCorrespondence, 1, 5, 0),
                spec("special-facets", "special facets: 2n of them; intersection counts separate the realizations", SpecialFacets, 2, 6, 0),
                spec("non-equivalence", "the three realizations are pairwise affinely non-equivalent", NonEquivalence, 2, 4, 3),
                spec("loday-regression", "a = 1 gives Loday's integer vertices", LodayRegression, 1, 2, 0),
                spec("exact-invariants", "GKZ sums, Minkowski sums and parallel pairs under affine maps are exact", ExactInvariants, 1, 5, 3),
                spec("cluster-fan", "clusters span a complete simplicial fan", ClusterFan, 1, 4, 0),
                spec("default-support-values", "default support values are polytopal (h = 1 recorded per n)", DefaultSupportValues, 1, 6, 0),
            ],
        }
    }
}

impl VerifyManifest {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("manifest: {e}")))
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRow {
    pub name: String,
    pub anchor: String,
    /// Values of `n` actually checked, `None` if the range was empty.
    pub range: Option<(usize, usize)>,
    pub passed: bool,
    pub detail: String,
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub n_max: usize,
    pub seed: u64,
    pub rows: Vec<CheckRow>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckRow> {
        self.rows.iter().find(|r| !r.passed)
    }

    pub fn table(&self) -> String {
        let width = self.rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for r in &self.rows {
            let range = match r.range {
                Some((lo, hi)) if lo == hi => format!("n={lo}"),
                Some((lo, hi)) => format!("n={lo}..{hi}"),
                None => "skipped".into(),
            };
            let _ = writeln!(
                out,
                "{}  {:width$}  {:9}  {}  [{}]",
                if r.passed { "PASS" } else { "FAIL" },
                r.name,
                range,
                r.detail,
                r.anchor
            );
        }
        let failed = self.rows.iter().filter(|r| !r.passed).count();
        let _ = writeln!(
            out,
            "{} of {} checks passed (n <= {}, seed {})",
            self.rows.len() - failed,
            self.rows.len(),
            self.n_max,
            self.seed
        );
        out
    }
}

/// A failed check: what went wrong and the smallest input showing it.
struct Failure {
    detail: String,
    counterexample: Option<Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            detail: e.to_string(),
            counterexample: None,
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

fn fail(detail: impl Into<String>, counterexample: Value) -> Failure {
    Failure {
        detail: detail.into(),
        counterexample: Some(counterexample),
    }
}

fn params_value(p: &ConstructionParams) -> Value {
    serde_json::from_str(&p.to_json_string()).expect("valid json")
}

/// The defaults followed by `draws` seeded draws, for one construction.
fn parameter_sets(
    tag: ConstructionTag,
    n: usize,
    draws: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<ConstructionParams>> {
    let mut out = vec![ConstructionParams::default_for(tag, n)?];
    for _ in 0..draws {
        out.push(match tag {
            ConstructionTag::Secondary => ConstructionParams::Secondary(random_geometry(n, rng)?),
            ConstructionTag::Cluster => ConstructionParams::Cluster(random_support_values(n, rng)?),
            ConstructionTag::Minkowski => ConstructionParams::Minkowski(random_weights(n, rng)?),
        });
    }
    Ok(out)
}

fn list(xs: &[impl ToString]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn check_catalan(ns: &[usize]) -> Outcome {
    let mut counts = Vec::new();
    for &n in ns {
        let size = PolygonSize::new(n);
        let t = all_triangulations(size).len() as u64;
        let d = all_diagonals(size).len();
        if t != catalan(n + 1) || d != n * (n + 3) / 2 {
            return Err(fail(
                format!("n={n}: {t} triangulations, {d} diagonals"),
                json!({"n": n, "triangulations": t, "diagonals": d, "catalan": catalan(n + 1)}),
            ));
        }
        counts.push(t);
    }
    Ok(format!("Catalan counts {}", list(&counts)))
}

fn default_polytopes(n: usize) -> Result<Vec<PolytopeFile>> {
    ConstructionTag::ALL
        .iter()
        .map(|&t| PolytopeFile::build(ConstructionParams::default_for(t, n)?))
        .collect()
}

fn check_vertex_counts(ns: &[usize]) -> Outcome {
    let mut counts = Vec::new();
    for &n in ns {
        for f in default_polytopes(n)? {
            let v = f.polytope.vertices().len() as u64;
            if v != catalan(n + 1) {
                return Err(fail(
                    format!("{} n={n}: {v} vertices", f.polytope.tag()),
                    json!({"n": n, "construction": f.polytope.tag(), "vertices": v}),
                ));
            }
        }
        counts.push(catalan(n + 1));
    }
    Ok(format!("{} vertices for all three constructions", list(&counts)))
}

fn check_facet_counts(ns: &[usize]) -> Outcome {
    let mut counts = Vec::new();
    for &n in ns {
        for f in default_polytopes(n)? {
            let facets = extract_facets(&f.polytope)?;
            let bad_dim = facets.iter().find(|x| x.direction.dim() + 1 != n);
            if facets.len() != n * (n + 3) / 2 || bad_dim.is_some() {
                return Err(fail(
                    format!("{} n={n}: {} facets", f.polytope.tag(), facets.len()),
                    json!({"n": n, "construction": f.polytope.tag()}),
                ));
            }
        }
        counts.push(n * (n + 3) / 2);
    }
    Ok(format!("{} certified facets for all three constructions", list(&counts)))
}

fn pair_set(pairs: &[(Diagonal, Diagonal)]) -> BTreeSet<(Diagonal, Diagonal)> {
    pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect()
}

/// Builds every parameter set and compares its parallel pairs with `expected`.
fn check_parallel(
    tag: ConstructionTag,
    ns: &[usize],
    draws: usize,
    rng: &mut ChaCha8Rng,
    expected: impl Fn(usize) -> Result<Vec<(Diagonal, Diagonal)>>,
    extra: impl Fn(&LabeledPolytope) -> std::result::Result<(), String>,
) -> Outcome {
    let mut built = 0;
    for &n in ns {
        let want = pair_set(&expected(n)?);
        for params in parameter_sets(tag, n, draws, rng)? {
            let p = params.build()?;
            let got = pair_set(&parallel_pairs(&p)?);
            if got != want {
                return Err(fail(
                    format!("n={n}: {} parallel pairs, expected {}", got.len(), want.len()),
                    json!({"n": n, "params": params_value(&params), "found": got, "expected": want}),
                ));
            }
            if let Err(e) = extra(&p) {
                return Err(fail(format!("n={n}: {e}"), json!({"n": n, "params": params_value(&params)})));
            }
            built += 1;
        }
    }
    Ok(format!("{built} polytopes checked"))
}

fn cluster_expected_pairs(n: usize) -> Result<Vec<(Diagonal, Diagonal)>> {
    (1..=n)
        .map(|i| {
            Ok((
                root_to_diagonal(AlmostPositiveRoot::simple(i), n)?,
                root_to_diagonal(AlmostPositiveRoot::NegativeSimple(i), n)?,
            ))
        })
        .collect()
}

fn minkowski_expected_pairs(n: usize) -> Result<Vec<(Diagonal, Diagonal)>> {
    let size = PolygonSize::new(n);
    (1..=n)
        .map(|i| Ok((Diagonal::new(i, n + 2, size)?, Diagonal::new(0, i + 1, size)?)))
        .collect()
}

/// Every facet direction equals the span of its two block simplices.
fn minkowski_directions(p: &LabeledPolytope) -> std::result::Result<(), String> {
    let facets = extract_facets(p).map_err(|e| e.to_string())?;
    for f in facets {
        let class = expected_parallel_direction(f.diagonal, p.n()).map_err(|e| e.to_string())?;
        if f.direction != class.direction(p.n()) {
            return Err(format!("facet {} has direction other than {class:?}", f.diagonal));
        }
    }
    Ok(())
}

fn check_correspondence(ns: &[usize]) -> Outcome {
    let mut f_vectors = Vec::new();
    for &n in ns {
        for f in default_polytopes(n)? {
            let r = if f.polytope.tag() == ConstructionTag::Minkowski {
                verify_correspondence(&f.polytope)?
            } else {
                face_correspondence(&f.polytope)?
            };
            if !r.passed() {
                return Err(fail(
                    format!("{} n={n}: {}", f.polytope.tag(), r.failures[0]),
                    json!({"n": n, "construction": f.polytope.tag(), "failures": r.failures}),
                ));
            }
            if f.polytope.tag() == ConstructionTag::Minkowski {
                f_vectors.push(format!("({})", list(&r.f_vector)));
            }
        }
    }
    Ok(format!("f-vectors {}", f_vectors.join(" ")))
}

fn check_special(ns: &[usize]) -> Outcome {
    for &n in ns {
        for tag in [ConstructionTag::Cluster, ConstructionTag::Minkowski] {
            let params = ConstructionParams::default_for(tag, n)?;
            let p = params.build()?;
            let facets = extract_facets(&p)?;
            let profile = special_profile(&facets, &parallel_pairs_of(&facets))?;
            let low: BTreeSet<Diagonal> = profile
                .iter()
                .filter(|&(_, &c)| c + 1 == n)
                .map(|(&d, _)| d)
                .collect();
            let size = PolygonSize::new(n);
            let problem = if profile.len() != 2 * n {
                Some(format!("{} special facets, expected {}", profile.len(), 2 * n))
            } else if tag == ConstructionTag::Minkowski {
                let want: BTreeSet<Diagonal> =
                    [Diagonal::new(1, n + 2, size)?, Diagonal::new(0, n + 1, size)?].into();
                let min = profile.values().min().copied().unwrap_or(0);
                (low != want || min + 1 < n).then(|| format!("count n-1 at {low:?}, expected {want:?}"))
            } else if n >= 4 {
                (profile.values().any(|&c| c < n)).then(|| "a special facet meets only n-1 others".to_string())
            } else if n == 3 {
                let alpha2: BTreeSet<Diagonal> =
                    [root_to_diagonal(AlmostPositiveRoot::simple(2), n)?].into();
                let min = profile.values().min().copied().unwrap_or(0);
                (low != alpha2 || min < 2).then(|| format!("count 2 at {low:?}, expected {alpha2:?}"))
            } else {
                None
            };
            if let Some(problem) = problem {
                let profile_json: Vec<Value> =
                    profile.iter().map(|(d, c)| json!({"diagonal": d, "count": c})).collect();
                return Err(fail(
                    format!("{tag} n={n}: {problem}"),
                    json!({"n": n, "params": params_value(&params), "profile": profile_json}),
                ));
            }
        }
    }
    Ok("2n special facets; profiles distinguish cluster from Minkowski".into())
}

fn check_non_equivalence(ns: &[usize], draws: usize, rng: &mut ChaCha8Rng) -> Outcome {
    use ConstructionTag::*;
    let mut compared = 0;
    for &n in ns {
        let sets: Vec<Vec<ConstructionParams>> = ConstructionTag::ALL
            .iter()
            .map(|&t| parameter_sets(t, n, draws, rng))
            .collect::<Result<_>>()?;
        let built: Vec<Vec<LabeledPolytope>> = sets
            .iter()
            .map(|s| s.iter().map(|p| p.build()).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let mut pairs = vec![(Secondary, Cluster), (Secondary, Minkowski)];
        if n >= 3 {
            pairs.push((Cluster, Minkowski));
        }
        for (a, b) in pairs {
            let (ia, ib) = (a as usize, b as usize);
            for k in 0..=draws {
                let r = equivalence_search(&built[ia][k], &built[ib][k])?;
                let ok = r.verdict == Verdict::NonEquivalent
                    && r.any_obstruction_fires()
                    && r.witness.is_none()
                    && r.relabelings_tried == 2 * (n + 3);
                if !ok {
                    return Err(fail(
                        format!("{a} vs {b}, n={n}, draw {k}: {}", r.verdict.as_str()),
                        json!({
                            "n": n,
                            "left": params_value(&sets[ia][k]),
                            "right": params_value(&sets[ib][k]),
                            "report": crate::io::equivalence_json(&r),
                        }),
                    ));
                }
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} comparisons, all non-equivalent with no dihedral witness"))
}

fn check_loday(ns: &[usize]) -> Outcome {
    let expected: [(usize, Vec<Vec<i64>>); 2] = [
        (1, vec![vec![2, 1], vec![1, 2]]),
        (2, vec![vec![3, 2, 1], vec![3, 1, 2], vec![2, 1, 3], vec![1, 2, 3], vec![1, 4, 1]]),
    ];
    let mut done = Vec::new();
    for (n, pts) in expected {
        if !ns.contains(&n) {
            continue;
        }
        let p = crate::minkowski::build_minkowski(&SimplexWeights::ones(n), n)?;
        let got: BTreeSet<RationalVector> = p.coords().into_iter().collect();
        let want: BTreeSet<RationalVector> = pts.iter().map(|v| RationalVector::from_ints(v)).collect();
        if got != want {
            return Err(fail(
                format!("n={n}: vertex set differs"),
                json!({"n": n, "found": got.iter().map(|v| v.to_strings()).collect::<Vec<_>>()}),
            ));
        }
        done.push(n);
    }
    Ok(format!("exact match at n={}", list(&done)))
}

/// A fixed invertible rational shear followed by a translation.
pub fn shear(c: &RationalVector) -> RationalVector {
    let x = c.entries();
    RationalVector::new(
        (0..x.len())
            .map(|k| {
                let next = x.get(k + 1).map_or_else(Rational::default, |y| y * rat(k as i64 + 2, 3));
                &x[k] + next + rat(k as i64 - 1, 7)
            })
            .collect(),
    )
}

fn check_invariants(ns: &[usize], draws: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let mut tested = 0;
    for &n in ns {
        for params in parameter_sets(ConstructionTag::Secondary, n, draws, rng)? {
            let ConstructionParams::Secondary(g) = &params else { unreachable!() };
            let three_area = g.area() * int(3);
            for t in all_triangulations(PolygonSize::new(n)) {
                let s = gkz_vector(g, &t)?.sum();
                if s != three_area {
                    return Err(fail(
                        format!("n={n}: GKZ sum {s} is not 3 * area"),
                        json!({"n": n, "params": params_value(&params), "triangulation": t.diagonals()}),
                    ));
                }
                tested += 1;
            }
        }
        for params in parameter_sets(ConstructionTag::Minkowski, n, draws, rng)? {
            let ConstructionParams::Minkowski(a) = &params else { unreachable!() };
            let p = params.build()?;
            if let Some(v) = p.vertices().iter().find(|v| v.coords.sum() != a.total()) {
                return Err(fail(
                    format!("n={n}: Minkowski coordinate sum {} is not {}", v.coords.sum(), a.total()),
                    json!({"n": n, "params": params_value(&params), "vertex": v.coords.to_strings()}),
                ));
            }
            tested += p.vertices().len();
        }
        for f in default_polytopes(n)? {
            let moved = f.polytope.map_coords(shear)?;
            let (before, after) = (parallel_pairs(&f.polytope)?, parallel_pairs(&moved)?);
            if before != after {
                return Err(fail(
                    format!("{} n={n}: parallel pairs change under an affine map", f.polytope.tag()),
                    json!({"n": n, "before": before, "after": after}),
                ));
            }
            tested += 1;
        }
    }
    Ok(format!("{tested} exact identities"))
}

fn check_fan(ns: &[usize]) -> Outcome {
    let mut summary = Vec::new();
    for &n in ns {
        let r = verify_fan(n, 200)?;
        if !r.passed() {
            return Err(fail(
                format!("n={n}: {}", r.failures[0]),
                json!({"n": n, "failures": r.failures}),
            ));
        }
        summary.push(format!("{}/{}", r.cones, r.walls));
    }
    Ok(format!("cones/walls {}", summary.join(" ")))
}

fn check_default_support(ns: &[usize]) -> Outcome {
    let (mut plain, mut repaired) = (Vec::new(), Vec::new());
    for &n in ns {
        let ones = SupportValues::constant(n, Rational::from_integer(1.into()));
        if polytopality_check(&ones, n)?.is_valid() {
            plain.push(n);
        } else {
            repaired.push(n);
        }
        let h = crate::cluster::default_support_values(n)?;
        if !polytopality_check(&h, n)?.is_valid() {
            return Err(fail(format!("n={n}: default h not polytopal"), json!({"n": n})));
        }
    }
    Ok(format!(
        "h = 1 polytopal at n={{{}}}, repaired at n={{{}}}",
        list(&plain),
        list(&repaired)
    ))
}

fn run_kind(spec: &CheckSpec, ns: &[usize], rng: &mut ChaCha8Rng) -> Outcome {
    use CheckKind::*;
    let draws = spec.draws;
    match spec.kind {
        CatalanCounts => check_catalan(ns),
        VertexCounts => check_vertex_counts(ns),
        FacetCounts => check_facet_counts(ns),
        SecondaryNoParallel => check_parallel(ConstructionTag::Secondary, ns, draws, rng, |_| Ok(Vec::new()), |_| Ok(())),
        ClusterParallelRoots => check_parallel(ConstructionTag::Cluster, ns, draws, rng, cluster_expected_pairs, |_| Ok(())),
        MinkowskiParallel => check_parallel(ConstructionTag::Minkowski, ns, draws, rng, minkowski_expected_pairs, minkowski_directions),
        FaceCorrespondence => check_correspondence(ns),
        SpecialFacets => check_special(ns),
        NonEquivalence => check_non_equivalence(ns, draws, rng),
        LodayRegression => check_loday(ns),
        ExactInvariants => check_invariants(ns, draws, rng),
        ClusterFan => check_fan(ns),
        DefaultSupportValues => check_default_support(ns),
    }
}

/// Runs one check for `n` in `spec.n_min..=min(spec.n_max, n_max)`.
pub fn run_check(spec: &CheckSpec, n_max: usize, seed: u64) -> CheckRow {
    let hi = spec.n_max.min(n_max);
    let ns: Vec<usize> = (spec.n_min.max(1)..=hi).collect();
    let mut row = CheckRow {
        name: spec.name.clone(),
        anchor: spec.anchor.clone(),
        range: ns.first().map(|&lo| (lo, hi)),
        passed: true,
        detail: "no n in range".into(),
        counterexample: None,
    };
    if ns.is_empty() {
        return row;
    }
    let mut rng = rng_for(seed, &spec.name);
    let outcome = run_kind(spec, &ns, &mut rng);
    let succeeded = outcome.is_ok();
    match outcome {
        Ok(detail) => row.detail = detail,
        Err(f) => {
            row.detail = f.detail;
            row.counterexample = f.counterexample;
        }
    }
    row.passed = succeeded == spec.expect_pass;
    if !row.passed && succeeded {
        row.detail = format!("expected a failure, got: {}", row.detail);
    }
    row
}

/// Runs all checks concurrently; rows follow manifest order.
pub fn run_manifest(manifest: &VerifyManifest, n_max: usize, seed: u64) -> Result<VerifyReport> {
    if !(1..=VERIFY_MAX_N).contains(&n_max) {
        return Err(Error::OutOfRange {
            n: n_max,
            min: 1,
            max: VERIFY_MAX_N,
        });
    }
    let rows = manifest
        .checks
        .par_iter()
        .map(|c| run_check(c, n_max, seed))
        .collect();
    Ok(VerifyReport { n_max, seed, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_manifest_round_trips() {
        let m = VerifyManifest::default();
        assert_eq!(VerifyManifest::from_json(&m.to_json_string()).unwrap(), m);
        assert!(m.checks.iter().all(|c| !c.anchor.is_empty()));
    }

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let r = run_manifest(&VerifyManifest::default(), 2, 42).unwrap();
        assert!(r.passed(), "{}", r.table());
        assert!(r.table().contains("Catalan counts 2,5"));
        assert_eq!(r, run_manifest(&VerifyManifest::default(), 2, 42).unwrap());
    }

    #[test]
    fn out_of_range() {
        assert!(run_manifest(&VerifyManifest::default(), 7, 0).is_err());
        assert!(run_manifest(&VerifyManifest::default(), 0, 0).is_err());
    }

    #[test]
    fn expected_failure_is_honoured() {
        let mut s = spec("wrong", "deliberately false", CheckKind::SecondaryNoParallel, 2, 2, 0);
        s.kind = CheckKind::ClusterParallelRoots;
        assert!(run_check(&s, 2, 0).passed);
        s.expect_pass = false;
        let row = run_check(&s, 2, 0);
        assert!(!row.passed);
        assert!(row.detail.starts_with("expected a failure"));
    }

    #[test]
    fn shear_is_affine_and_invertible() {
        let a = RationalVector::from_ints(&[1, 2, 3]);
        let b = RationalVector::from_ints(&[-4, 0, 5]);
        let mid = (&a + &b).scale(&rat(1, 2));
        assert_eq!(shear(&mid), (&shear(&a) + &shear(&b)).scale(&rat(1, 2)));
        assert_ne!(shear(&a), shear(&b));
    }
}
