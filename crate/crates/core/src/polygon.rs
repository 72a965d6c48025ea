//! Combinatorics of the convex (n+3)-gon with vertices labeled `0..=n+2`
//! counterclockwise: diagonals, triangulations, flips and subdivisions.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The polygon has `n + 3` vertices; `n` is the associahedron dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PolygonSize {
    pub n: usize,
}

impl PolygonSize {
    pub fn new(n: usize) -> Self {
        PolygonSize { n }
    }

    pub fn vertex_count(self) -> usize {
        self.n + 3
    }

    /// True when `a` and `b` are joined by a polygon edge.
    pub fn adjacent(self, a: usize, b: usize) -> bool {
        let m = self.vertex_count();
        (a + 1) % m == b || (b + 1) % m == a
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagonal {
    a: usize,
    b: usize,
}

impl Diagonal {
    /// Validated diagonal; endpoints may be given in either order.
    pub fn new(a: usize, b: usize, size: PolygonSize) -> Result<Self> {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let m = size.vertex_count();
        if b >= m {
            return Err(Error::InvalidDiagonal(
                (a, b),
                format!("label out of range for a {m}-gon"),
            ));
        }
        if a == b || size.adjacent(a, b) {
            return Err(Error::InvalidDiagonal(
                (a, b),
                "endpoints are adjacent on the polygon".into(),
            ));
        }
        Ok(Diagonal { a, b })
    }

    pub(crate) fn new_unchecked(a: usize, b: usize) -> Self {
        debug_assert!(a < b);
        Diagonal { a, b }
    }

    pub fn a(self) -> usize {
        self.a
    }

    pub fn b(self) -> usize {
        self.b
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn has_endpoint(self, v: usize) -> bool {
        self.a == v || self.b == v
    }
}

impl fmt::Debug for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

impl Serialize for Diagonal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a, self.b].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagonal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[usize; 2]>::deserialize(d)?;
        if a == b {
            return Err(serde::de::Error::custom("diagonal endpoints must differ"));
        }
        Ok(Diagonal {
            a: a.min(b),
            b: a.max(b),
        })
    }
}

/// True iff the endpoints strictly interleave; a shared endpoint is not a crossing.
pub fn crossing(d1: Diagonal, d2: Diagonal) -> bool {
    (d1.a < d2.a && d2.a < d1.b && d1.b < d2.b) || (d2.a < d1.a && d1.a < d2.b && d2.b < d1.b)
}

fn pairwise_noncrossing(diagonals: &[Diagonal]) -> bool {
    diagonals
        .iter()
        .enumerate()
        .all(|(i, &d)| diagonals[i + 1..].iter().all(|&e| !crossing(d, e)))
}

/// A set of pairwise non-crossing diagonals, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Subdivision {
    diagonals: Vec<Diagonal>,
}

impl Subdivision {
    pub fn new(diagonals: impl IntoIterator<Item = Diagonal>) -> Result<Self> {
        let diagonals: Vec<Diagonal> = diagonals
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if !pairwise_noncrossing(&diagonals) {
            return Err(Error::InvalidTriangulation(format!(
                "diagonals cross: {diagonals:?}"
            )));
        }
        Ok(Subdivision { diagonals })
    }

    pub fn empty() -> Self {
        Subdivision {
            diagonals: Vec::new(),
        }
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn len(&self) -> usize {
        self.diagonals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonals.is_empty()
    }

    pub fn contains(&self, d: Diagonal) -> bool {
        self.diagonals.binary_search(&d).is_ok()
    }

    pub fn is_triangulation(&self, size: PolygonSize) -> bool {
        self.len() == size.n
    }

    pub fn into_triangulation(self, size: PolygonSize) -> Result<Triangulation> {
        Triangulation::new(self.diagonals, size)
    }
}

/// True iff `s1` is at least as fine as `s2`.
pub fn refines(s1: &Subdivision, s2: &Subdivision) -> bool {
    s2.diagonals.iter().all(|&d| s1.contains(d))
}

/// Exactly `n` pairwise non-crossing diagonals, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Triangulation {
    diagonals: Vec<Diagonal>,
}

impl Triangulation {
    pub fn new(diagonals: impl IntoIterator<Item = Diagonal>, size: PolygonSize) -> Result<Self> {
        let sub = Subdivision::new(diagonals)?;
        for &d in &sub.diagonals {
            Diagonal::new(d.a, d.b, size)?;
        }
        if sub.len() != size.n {
            return Err(Error::InvalidTriangulation(format!(
                "expected {} diagonals, got {}",
                size.n,
                sub.len()
            )));
        }
        Ok(Triangulation {
            diagonals: sub.diagonals,
        })
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn contains(&self, d: Diagonal) -> bool {
        self.diagonals.binary_search(&d).is_ok()
    }

    pub fn as_subdivision(&self) -> Subdivision {
        Subdivision {
            diagonals: self.diagonals.clone(),
        }
    }

    fn joined(&self, size: PolygonSize, x: usize, y: usize) -> bool {
        size.adjacent(x, y) || self.contains(Diagonal::new_unchecked(x.min(y), x.max(y)))
    }

    /// Triangles `(i, j, k)` with `i < j < k`, in lexicographic order.
    pub fn triangles(&self, size: PolygonSize) -> Vec<[usize; 3]> {
        let m = size.vertex_count();
        let mut out = Vec::with_capacity(size.n + 1);
        for i in 0..m {
            for j in i + 1..m {
                if !self.joined(size, i, j) {
                    continue;
                }
                for k in j + 1..m {
                    if self.joined(size, j, k) && self.joined(size, i, k) {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }

    /// Number of diagonals shared with `other`.
    pub fn common_diagonals(&self, other: &Triangulation) -> usize {
        self.diagonals.iter().filter(|&&d| other.contains(d)).count()
    }
}

/// All diagonals in lexicographic order.
pub fn all_diagonals(size: PolygonSize) -> Vec<Diagonal> {
    let m = size.vertex_count();
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 2..m {
            if !size.adjacent(a, b) {
                out.push(Diagonal::new_unchecked(a, b));
            }
        }
    }
    out
}

/// All triangulations, sorted by diagonal list.
pub fn all_triangulations(size: PolygonSize) -> Vec<Triangulation> {
    // Triangulations of the sub-polygon on the consecutive labels lo..=hi:
    // the edge {lo, hi} lies in a unique triangle {lo, k, hi}.
    fn rec(lo: usize, hi: usize, out: &mut Vec<Vec<Diagonal>>) {
        if hi - lo < 2 {
            out.push(Vec::new());
            return;
        }
        for k in lo + 1..hi {
            let mut left = Vec::new();
            rec(lo, k, &mut left);
            let mut right = Vec::new();
            rec(k, hi, &mut right);
            for l in &left {
                for r in &right {
                    let mut t = l.clone();
                    t.extend_from_slice(r);
                    if k - lo >= 2 {
                        t.push(Diagonal::new_unchecked(lo, k));
                    }
                    if hi - k >= 2 {
                        t.push(Diagonal::new_unchecked(k, hi));
                    }
                    out.push(t);
                }
            }
        }
    }
    let mut raw = Vec::new();
    rec(0, size.vertex_count() - 1, &mut raw);
    let mut out: Vec<Triangulation> = raw
        .into_iter()
        .map(|mut d| {
            d.sort();
            Triangulation { diagonals: d }
        })
        .collect();
    out.sort();
    out
}

/// Replace `d` by the other diagonal of the quadrilateral formed by its two triangles.
pub fn flip(t: &Triangulation, d: Diagonal, size: PolygonSize) -> Result<Triangulation> {
    if !t.contains(d) {
        return Err(Error::DiagonalNotInTriangulation(d));
    }
    let m = size.vertex_count();
    let (a, b) = d.endpoints();
    let is_apex = |c: &usize| t.joined(size, a, *c) && t.joined(size, b, *c);
    let inner = (a + 1..b).find(is_apex);
    let outer = (b + 1..m).chain(0..a).find(is_apex);
    let (Some(c), Some(e)) = (inner, outer) else {
        return Err(Error::Internal(format!(
            "diagonal {d} is missing an adjacent triangle"
        )));
    };
    let replacement = Diagonal::new(c, e, size)?;
    let diagonals = t
        .diagonals
        .iter()
        .copied()
        .filter(|&x| x != d)
        .chain(std::iter::once(replacement));
    Triangulation::new(diagonals, size)
}

/// All pairwise non-crossing diagonal sets, the empty set included, sorted.
pub fn all_subdivisions(size: PolygonSize) -> Vec<Subdivision> {
    fn rec(
        diagonals: &[Diagonal],
        start: usize,
        current: &mut Vec<Diagonal>,
        out: &mut Vec<Subdivision>,
    ) {
        out.push(Subdivision {
            diagonals: current.clone(),
        });
        for i in start..diagonals.len() {
            let d = diagonals[i];
            if current.iter().all(|&e| !crossing(d, e)) {
                current.push(d);
                rec(diagonals, i + 1, current, out);
                current.pop();
            }
        }
    }
    let diagonals = all_diagonals(size);
    let mut out = Vec::new();
    rec(&diagonals, 0, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Subdivision counts indexed by number of diagonals.
pub fn subdivision_counts(size: PolygonSize) -> Vec<usize> {
    let mut counts = vec![0; size.n + 1];
    for s in all_subdivisions(size) {
        counts[s.len()] += 1;
    }
    counts
}

pub fn catalan(k: usize) -> u64 {
    let mut c = 1u64;
    for i in 0..k as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}
