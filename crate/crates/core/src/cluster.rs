//! Almost positive roots of type A_n, their identification with polygon
//! diagonals, the cluster fan and polytopes realizing it as a normal fan.
//!
//! Roots live in the sum-zero hyperplane of `Q^{n+1}`; `alpha_i` is
//! `e_i - e_{i+1}` with 1-based indices.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{rat, solve_linear, Rational, RationalMatrix, RationalVector};
use crate::polygon::{all_diagonals, crossing, Diagonal, PolygonSize, Triangulation};
use crate::polytope::{ConstructionTag, LabeledPolytope, LabeledVertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlmostPositiveRoot {
    /// `-alpha_i`
    NegativeSimple(usize),
    /// `alpha_i + ... + alpha_j`
    Positive(usize, usize),
}

use AlmostPositiveRoot::{NegativeSimple, Positive};

impl AlmostPositiveRoot {
    pub fn is_valid(self, n: usize) -> bool {
        match self {
            NegativeSimple(i) => (1..=n).contains(&i),
            Positive(i, j) => 1 <= i && i <= j && j <= n,
        }
    }

    /// `alpha_i`
    pub fn simple(i: usize) -> Self {
        Positive(i, i)
    }
}

impl fmt::Display for AlmostPositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NegativeSimple(i) => write!(f, "-a{i}"),
            Positive(i, j) if i == j => write!(f, "a{i}"),
            Positive(i, j) => write!(f, "a{i}..{j}"),
        }
    }
}

impl FromStr for AlmostPositiveRoot {
    type Err = Error;

    /// Parses `-ai`, `ai` and `ai..j`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a root key: {s:?}"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix("-a") {
            return Ok(NegativeSimple(num(rest)?));
        }
        let rest = s.strip_prefix('a').ok_or_else(bad)?;
        match rest.split_once("..") {
            Some((i, j)) => Ok(Positive(num(i)?, num(j)?)),
            None => {
                let i = num(rest)?;
                Ok(Positive(i, i))
            }
        }
    }
}

/// Negative simple roots first, then positive roots in lexicographic order.
pub fn all_roots(n: usize) -> Vec<AlmostPositiveRoot> {
    let mut out: Vec<_> = (1..=n).map(NegativeSimple).collect();
    for i in 1..=n {
        for j in i..=n {
            out.push(Positive(i, j));
        }
    }
    out
}

pub fn root_coordinates(r: AlmostPositiveRoot, n: usize) -> RationalVector {
    let mut v = vec![Rational::zero(); n + 1];
    match r {
        NegativeSimple(i) => {
            v[i] = Rational::one();
            v[i - 1] = -Rational::one();
        }
        Positive(i, j) => {
            v[i - 1] = Rational::one();
            v[j] = -Rational::one();
        }
    }
    RationalVector::new(v)
}

/// The diagonal of `-alpha_i` on the zigzag triangulation.
pub fn snake_diagonal(i: usize, n: usize) -> Diagonal {
    let a = i.div_ceil(2);
    let b = n + 2 - i / 2;
    Diagonal::new(a, b, PolygonSize::new(n)).expect("snake diagonals are valid for 1 <= i <= n")
}

fn positive_root_diagonal(i: usize, j: usize, n: usize) -> Result<Diagonal> {
    let snake: Vec<Diagonal> = (1..=n).map(|k| snake_diagonal(k, n)).collect();
    let candidates: Vec<Diagonal> = all_diagonals(PolygonSize::new(n))
        .into_iter()
        .filter(|&d| {
            snake
                .iter()
                .enumerate()
                .all(|(k, &s)| crossing(d, s) == (i..=j).contains(&(k + 1)))
        })
        .collect();
    match candidates.as_slice() {
        [d] => Ok(*d),
        _ => Err(Error::Internal(format!(
            "{} diagonals cross exactly snake diagonals {i}..={j}",
            candidates.len()
        ))),
    }
}

pub fn root_to_diagonal(r: AlmostPositiveRoot, n: usize) -> Result<Diagonal> {
    if !r.is_valid(n) {
        return Err(Error::Parse(format!("{r} is not an almost positive root of A_{n}")));
    }
    match r {
        NegativeSimple(i) => Ok(snake_diagonal(i, n)),
        Positive(i, j) => positive_root_diagonal(i, j, n),
    }
}

pub fn compatible(r1: AlmostPositiveRoot, r2: AlmostPositiveRoot, n: usize) -> Result<bool> {
    Ok(!crossing(root_to_diagonal(r1, n)?, root_to_diagonal(r2, n)?))
}

/// The root/diagonal bijection for a fixed `n`, verified on construction.
#[derive(Clone, Debug)]
pub struct RootDiagonalMap {
    n: usize,
    to_diagonal: BTreeMap<AlmostPositiveRoot, Diagonal>,
    to_root: BTreeMap<Diagonal, AlmostPositiveRoot>,
}

impl RootDiagonalMap {
    pub fn new(n: usize) -> Result<Self> {
        let mut to_diagonal = BTreeMap::new();
        let mut to_root = BTreeMap::new();
        for r in all_roots(n) {
            let d = root_to_diagonal(r, n)?;
            to_diagonal.insert(r, d);
            if let Some(other) = to_root.insert(d, r) {
                return Err(Error::Internal(format!(
                    "roots {other} and {r} share diagonal {d}"
                )));
            }
        }
        if to_root.len() != all_diagonals(PolygonSize::new(n)).len() {
            return Err(Error::Internal("root/diagonal map is not onto".into()));
        }
        Ok(RootDiagonalMap {
            n,
            to_diagonal,
            to_root,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonal(&self, r: AlmostPositiveRoot) -> Diagonal {
        self.to_diagonal[&r]
    }

    pub fn root(&self, d: Diagonal) -> Option<AlmostPositiveRoot> {
        self.to_root.get(&d).copied()
    }
}

/// `n` pairwise compatible roots, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cluster {
    roots: Vec<AlmostPositiveRoot>,
}

impl Cluster {
    pub fn roots(&self) -> &[AlmostPositiveRoot] {
        &self.roots
    }

    pub fn contains(&self, r: AlmostPositiveRoot) -> bool {
        self.roots.binary_search(&r).is_ok()
    }

    pub fn triangulation(&self, map: &RootDiagonalMap) -> Result<Triangulation> {
        Triangulation::new(
            self.roots.iter().map(|&r| map.diagonal(r)),
            PolygonSize::new(map.n()),
        )
    }

    pub fn from_triangulation(t: &Triangulation, map: &RootDiagonalMap) -> Result<Self> {
        let mut roots = t
            .diagonals()
            .iter()
            .map(|&d| {
                map.root(d)
                    .ok_or_else(|| Error::Internal(format!("no root for diagonal {d}")))
            })
            .collect::<Result<Vec<_>>>()?;
        roots.sort();
        Ok(Cluster { roots })
    }
}

/// Maximal cliques of the compatibility relation, sorted.
pub fn all_clusters(n: usize) -> Result<Vec<Cluster>> {
    let roots = all_roots(n);
    let map = RootDiagonalMap::new(n)?;
    let ok = |a: AlmostPositiveRoot, b: AlmostPositiveRoot| !crossing(map.diagonal(a), map.diagonal(b));

    fn extend(
        roots: &[AlmostPositiveRoot],
        start: usize,
        current: &mut Vec<AlmostPositiveRoot>,
        ok: &dyn Fn(AlmostPositiveRoot, AlmostPositiveRoot) -> bool,
        out: &mut Vec<Cluster>,
    ) {
        let maximal = roots
            .iter()
            .all(|&r| current.contains(&r) || current.iter().any(|&c| !ok(c, r)));
        if maximal {
            out.push(Cluster {
                roots: current.clone(),
            });
            return;
        }
        for i in start..roots.len() {
            let r = roots[i];
            if current.iter().all(|&c| ok(c, r)) {
                current.push(r);
                extend(roots, i + 1, current, ok, out);
                current.pop();
            }
        }
    }

    let mut out = Vec::new();
    extend(&roots, 0, &mut Vec::new(), &ok, &mut out);
    for c in &mut out {
        c.roots.sort();
    }
    out.sort();
    out.dedup();
    if let Some(c) = out.iter().find(|c| c.roots.len() != n) {
        return Err(Error::Internal(format!(
            "maximal compatible set of size {} instead of {n}: {:?}",
            c.roots.len(),
            c.roots
        )));
    }
    Ok(out)
}

/// Linear dependence `beta + lambda' beta' = sum c_gamma gamma` across a wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallRelation {
    pub beta: AlmostPositiveRoot,
    pub beta_prime: AlmostPositiveRoot,
    pub lambda: Rational,
    pub lambda_prime: Rational,
    pub coefficients: Vec<(AlmostPositiveRoot, Rational)>,
}

pub fn wall_relation(c1: &Cluster, c2: &Cluster, n: usize) -> Result<WallRelation> {
    let only1: Vec<_> = c1.roots.iter().filter(|r| !c2.contains(**r)).copied().collect();
    let only2: Vec<_> = c2.roots.iter().filter(|r| !c1.contains(**r)).copied().collect();
    let ([beta], [beta_prime]) = (only1.as_slice(), only2.as_slice()) else {
        return Err(Error::NotAdjacent);
    };
    let shared: Vec<_> = c1.roots.iter().filter(|r| c2.contains(**r)).copied().collect();
    let mut cols = vec![root_coordinates(*beta, n), root_coordinates(*beta_prime, n)];
    cols.extend(shared.iter().map(|&g| root_coordinates(g, n)));
    let null = RationalMatrix::from_columns(&cols).nullspace();
    let [x] = null.as_slice() else {
        return Err(Error::Internal(format!(
            "wall {beta}|{beta_prime} has a {}-dimensional dependence space",
            null.len()
        )));
    };
    if x[0].is_zero() {
        return Err(Error::Internal(format!(
            "cluster containing {beta_prime} is linearly dependent"
        )));
    }
    let x = x.scale(&x[0].recip());
    if !x[1].is_positive() {
        return Err(Error::Internal(format!(
            "{beta} and {beta_prime} lie on the same side of their wall"
        )));
    }
    Ok(WallRelation {
        beta: *beta,
        beta_prime: *beta_prime,
        lambda: Rational::one(),
        lambda_prime: x[1].clone(),
        coefficients: shared
            .iter()
            .enumerate()
            .map(|(k, &g)| (g, -x[k + 2].clone()))
            .collect(),
    })
}

/// Clusters of `A_n` with their adjacency (walls) precomputed.
#[derive(Clone, Debug)]
pub struct ClusterComplex {
    n: usize,
    map: RootDiagonalMap,
    clusters: Vec<Cluster>,
    walls: Vec<(usize, usize, WallRelation)>,
}

impl ClusterComplex {
    pub fn new(n: usize) -> Result<Self> {
        let map = RootDiagonalMap::new(n)?;
        let clusters = all_clusters(n)?;
        let mut by_facet: HashMap<Vec<AlmostPositiveRoot>, Vec<usize>> = HashMap::new();
        for (idx, c) in clusters.iter().enumerate() {
            for skip in 0..c.roots.len() {
                let mut f = c.roots.clone();
                f.remove(skip);
                by_facet.entry(f).or_default().push(idx);
            }
        }
        let mut walls = Vec::new();
        let mut keys: Vec<_> = by_facet.into_iter().collect();
        keys.sort();
        for (shared, members) in keys {
            let [i, j] = members.as_slice() else {
                return Err(Error::Internal(format!(
                    "wall {shared:?} lies in {} clusters",
                    members.len()
                )));
            };
            walls.push((*i, *j, wall_relation(&clusters[*i], &clusters[*j], n)?));
        }
        Ok(ClusterComplex {
            n,
            map,
            clusters,
            walls,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn map(&self) -> &RootDiagonalMap {
        &self.map
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn walls(&self) -> &[(usize, usize, WallRelation)] {
        &self.walls
    }
}

/// Right-hand sides `h(rho)` of the inequalities `<rho, x> <= h(rho)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportValues {
    n: usize,
    h: BTreeMap<AlmostPositiveRoot, Rational>,
}

impl SupportValues {
    pub fn new(n: usize, h: BTreeMap<AlmostPositiveRoot, Rational>) -> Result<Self> {
        for r in h.keys() {
            if !r.is_valid(n) {
                return Err(Error::InvalidSupport(format!("{r} is not a root of A_{n}")));
            }
        }
        if let Some(r) = all_roots(n).into_iter().find(|r| !h.contains_key(r)) {
            return Err(Error::InvalidSupport(format!("missing value for {r}")));
        }
        Ok(SupportValues { n, h })
    }

    pub fn constant(n: usize, value: Rational) -> Self {
        SupportValues {
            n,
            h: all_roots(n).into_iter().map(|r| (r, value.clone())).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: AlmostPositiveRoot) -> &Rational {
        &self.h[&r]
    }

    pub fn values(&self) -> &BTreeMap<AlmostPositiveRoot, Rational> {
        &self.h
    }

    pub fn map_values(&self, mut f: impl FnMut(AlmostPositiveRoot, &Rational) -> Rational) -> Self {
        SupportValues {
            n: self.n,
            h: self.h.iter().map(|(&r, v)| (r, f(r, v))).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallViolation {
    pub relation: WallRelation,
    /// `lambda h(beta) + lambda' h(beta')`
    pub lhs: Rational,
    /// `sum c_gamma h(gamma)`
    pub rhs: Rational,
}

impl WallViolation {
    pub fn amount(&self) -> Rational {
        &self.rhs - &self.lhs
    }
}

impl fmt::Display for WallViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "wall {}|{}: {} is not > {}",
            self.relation.beta, self.relation.beta_prime, self.lhs, self.rhs
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopalityReport {
    pub walls_checked: usize,
    pub violations: Vec<WallViolation>,
}

impl PolytopalityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_walls(h: &SupportValues, complex: &ClusterComplex) -> PolytopalityReport {
    let violations = complex
        .walls
        .iter()
        .filter_map(|(_, _, rel)| {
            let lhs = &rel.lambda * h.get(rel.beta) + &rel.lambda_prime * h.get(rel.beta_prime);
            let rhs = rel
                .coefficients
                .iter()
                .fold(Rational::zero(), |acc, (g, c)| acc + c * h.get(*g));
            (lhs <= rhs).then(|| WallViolation {
                relation: rel.clone(),
                lhs,
                rhs,
            })
        })
        .collect();
    PolytopalityReport {
        walls_checked: complex.walls.len(),
        violations,
    }
}

/// Strict convexity of the piecewise-linear support function across every wall.
pub fn polytopality_check(h: &SupportValues, n: usize) -> Result<PolytopalityReport> {
    if h.n() != n {
        return Err(Error::InvalidSupport(format!(
            "support values are for n = {}, expected {n}",
            h.n()
        )));
    }
    Ok(check_walls(h, &ClusterComplex::new(n)?))
}

fn cluster_vertex(c: &Cluster, h: &SupportValues, n: usize) -> Result<RationalVector> {
    let mut rows: Vec<RationalVector> = c.roots.iter().map(|&r| root_coordinates(r, n)).collect();
    rows.push(RationalVector::new(vec![Rational::one(); n + 1]));
    let mut rhs: Vec<Rational> = c.roots.iter().map(|&r| h.get(r).clone()).collect();
    rhs.push(Rational::zero());
    solve_linear(&RationalMatrix::from_rows(rows), &RationalVector::new(rhs))
        .unique()
        .ok_or_else(|| Error::Internal(format!("cluster {:?} does not span the hyperplane", c.roots)))
}

pub fn build_cluster_polytope(h: &SupportValues, n: usize) -> Result<LabeledPolytope> {
    let complex = ClusterComplex::new(n)?;
    build_with_complex(h, &complex)
}

pub(crate) fn build_with_complex(h: &SupportValues, complex: &ClusterComplex) -> Result<LabeledPolytope> {
    let n = complex.n;
    if h.n() != n {
        return Err(Error::InvalidSupport(format!(
            "support values are for n = {}, expected {n}",
            h.n()
        )));
    }
    let report = check_walls(h, complex);
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidSupport(format!(
            "not polytopal ({} violated walls), first: {v}",
            report.violations.len()
        )));
    }
    let roots = all_roots(n);
    let coords: Vec<RationalVector> = roots.iter().map(|&r| root_coordinates(r, n)).collect();
    let mut vertices = Vec::with_capacity(complex.clusters.len());
    for c in &complex.clusters {
        let x = cluster_vertex(c, h, n)?;
        for (r, rc) in roots.iter().zip(&coords) {
            let value = rc.dot(&x);
            let bound = h.get(*r);
            let ok = if c.contains(*r) {
                &value == bound
            } else {
                &value < bound
            };
            if !ok {
                return Err(Error::Internal(format!(
                    "vertex of cluster {:?} gives <{r}, x> = {value} against h = {bound}",
                    c.roots
                )));
            }
        }
        vertices.push(LabeledVertex {
            coords: x,
            label: c.triangulation(&complex.map)?,
        });
    }
    LabeledPolytope::new(ConstructionTag::Cluster, n, vertices)
}

/// `h = 1`, repaired wall by wall if that is not polytopal.
pub fn default_support_values(n: usize) -> Result<SupportValues> {
    let complex = ClusterComplex::new(n)?;
    repair_support_values(SupportValues::constant(n, Rational::one()), &complex)
}

pub(crate) fn repair_support_values(mut h: SupportValues, complex: &ClusterComplex) -> Result<SupportValues> {
    let budget = 10 * complex.walls.len().max(1);
    for _ in 0..budget {
        let report = check_walls(&h, complex);
        let Some(worst) = report
            .violations
            .iter()
            .max_by(|a, b| a.amount().cmp(&b.amount()))
        else {
            return Ok(h);
        };
        let bump = worst.amount() + Rational::one();
        for r in [worst.relation.beta, worst.relation.beta_prime] {
            let v = h.h.get_mut(&r).expect("all roots present");
            *v += &bump;
        }
    }
    if check_walls(&h, complex).is_valid() {
        Ok(h)
    } else {
        Err(Error::NoSupportValues(budget))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanReport {
    pub n: usize,
    pub cones: usize,
    pub walls: usize,
    pub samples: usize,
    pub off_wall_samples: usize,
    pub failures: Vec<String>,
}

impl FanReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Integer row `r` with the same sign pattern as `v` scaled by a positive factor.
fn clear_denominators(v: &RationalVector) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Checks that the cluster cones form a complete simplicial fan.
///
/// Coordinates on the sum-zero hyperplane are the first `n` entries. Every
/// sample must lie in some cone, and samples off every wall hyperplane must
/// lie in exactly one cone, in its interior.
pub fn verify_fan(n: usize, samples: usize) -> Result<FanReport> {
    let complex = ClusterComplex::new(n)?;
    let mut failures = Vec::new();
    let project = |r: AlmostPositiveRoot| {
        RationalVector::new(root_coordinates(r, n).entries()[..n].to_vec())
    };

    // inverse rows of each cone's generator matrix, scaled to integers
    let mut cone_rows: Vec<Vec<Vec<BigInt>>> = Vec::new();
    for c in &complex.clusters {
        let gens: Vec<RationalVector> = c.roots.iter().map(|&r| project(r)).collect();
        match RationalMatrix::from_columns(&gens).inverse() {
            Some(inv) => cone_rows.push(inv.rows().iter().map(clear_denominators).collect()),
            None => {
                failures.push(format!("cluster {:?} is linearly dependent", c.roots));
                cone_rows.push(Vec::new());
            }
        }
    }

    let mut wall_normals: Vec<Vec<BigInt>> = Vec::new();
    for (i, j, rel) in &complex.walls {
        let shared: Vec<RationalVector> = rel.coefficients.iter().map(|(g, _)| project(*g)).collect();
        let normal = if shared.is_empty() {
            RationalVector::new(vec![Rational::one(); n])
        } else {
            let ns = RationalMatrix::from_rows(shared).nullspace();
            if ns.len() != 1 {
                failures.push(format!("wall between clusters {i} and {j} is degenerate"));
                continue;
            }
            ns[0].clone()
        };
        wall_normals.push(clear_denominators(&normal));
    }

    let mut battery: Vec<Vec<BigInt>> = Vec::with_capacity(samples + 64);
    for r in all_roots(n) {
        battery.push(clear_denominators(&project(r)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0066_616e_5f63_686b);
    while battery.len() < samples.max(1000) + all_roots(n).len() {
        let v = RationalVector::new(
            (0..n)
                .map(|_| rat(rng.gen_range(-60..=60), rng.gen_range(1..=9)))
                .collect(),
        );
        if !v.is_zero() {
            battery.push(clear_denominators(&v));
        }
    }

    let mut off_wall = 0;
    for v in &battery {
        let mut containing = 0;
        let mut interior = 0;
        for rows in cone_rows.iter().filter(|r| !r.is_empty()) {
            let signs: Vec<BigInt> = rows.iter().map(|row| dot_int(row, v)).collect();
            if signs.iter().all(|s| !s.is_negative()) {
                containing += 1;
                if signs.iter().all(Signed::is_positive) {
                    interior += 1;
                }
            }
        }
        let on_wall = wall_normals.iter().any(|w| dot_int(w, v).is_zero());
        if containing == 0 {
            failures.push(format!("direction {v:?} lies in no cone"));
        }
        if !on_wall {
            off_wall += 1;
            if interior != 1 || containing != 1 {
                failures.push(format!(
                    "generic direction {v:?} lies in {containing} cones ({interior} interiors)"
                ));
            }
        }
        if failures.len() > 20 {
            break;
        }
    }

    Ok(FanReport {
        n,
        cones: complex.clusters.len(),
        walls: complex.walls.len(),
        samples: battery.len(),
        off_wall_samples: off_wall,
        failures,
    })
}

/// `h(rho) + perturbation` for a seeded draw that stays polytopal.
pub fn perturbed_support_values(base: &SupportValues, rng: &mut impl Rng) -> Result<SupportValues> {
    let complex = ClusterComplex::new(base.n())?;
    for attempt in 0..64 {
        let scale = rat(1, 1 << (attempt / 8).min(20));
        let h = base.map_values(|_, v| {
            v + rat(rng.gen_range(0..=1000), 1000) * &scale
        });
        if check_walls(&h, &complex).is_valid() {
            return Ok(h);
        }
    }
    Err(Error::NoSupportValues(64))
}
