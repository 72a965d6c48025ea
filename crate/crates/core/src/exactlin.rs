//! Exact rational linear algebra.
//!
//! Everything here works over arbitrary-precision rationals. Subspaces are
//! kept in reduced row echelon form so that two equal subspaces compare equal
//! with `==`, which is what the parallel-facet checks rely on.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RationalVector(entries)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        RationalVector(entries.iter().map(|&v| int(v)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        RationalVector(vec![Rational::zero(); dim])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn dot(&self, other: &RationalVector) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in dot product");
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, s: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|x| x * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(RationalVector)
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in addition");
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in subtraction");
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    ncols: usize,
    rows: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<RationalVector>) -> Self {
        let ncols = rows.first().map_or(0, RationalVector::dim);
        assert!(
            rows.iter().all(|r| r.dim() == ncols),
            "matrix rows must have equal length"
        );
        RationalMatrix {
            ncols,
            rows: rows.into_iter().map(RationalVector::into_entries).collect(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| RationalVector::from_ints(r)).collect())
    }

    pub fn from_columns(cols: &[RationalVector]) -> Self {
        let nrows = cols.first().map_or(0, RationalVector::dim);
        let rows = (0..nrows)
            .map(|i| RationalVector(cols.iter().map(|c| c[i].clone()).collect()))
            .collect();
        Self::from_rows(rows)
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RationalMatrix {
            ncols,
            rows: vec![vec![Rational::zero(); ncols]; nrows],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.rows[i][i] = Rational::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn row(&self, i: usize) -> RationalVector {
        RationalVector(self.rows[i].clone())
    }

    pub fn rows(&self) -> Vec<RationalVector> {
        self.rows.iter().cloned().map(RationalVector).collect()
    }

    pub fn column(&self, j: usize) -> RationalVector {
        RationalVector(self.rows.iter().map(|r| r[j].clone()).collect())
    }

    pub fn transpose(&self) -> RationalMatrix {
        RationalMatrix::from_rows((0..self.ncols).map(|j| self.column(j)).collect())
            .with_cols(self.nrows())
    }

    fn with_cols(mut self, ncols: usize) -> Self {
        if self.rows.is_empty() {
            self.ncols = ncols;
        }
        self
    }

    pub fn mul_vec(&self, v: &RationalVector) -> RationalVector {
        assert_eq!(self.ncols, v.dim(), "dimension mismatch in matrix-vector product");
        RationalVector(
            self.rows
                .iter()
                .map(|r| {
                    r.iter()
                        .zip(v.iter())
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.ncols, other.nrows(), "dimension mismatch in matrix product");
        let cols: Vec<RationalVector> = (0..other.ncols).map(|j| other.column(j)).collect();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let r = RationalVector(r.clone());
                RationalVector(cols.iter().map(|c| r.dot(c)).collect())
            })
            .collect();
        RationalMatrix::from_rows(rows).with_cols(other.ncols)
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.nrows(), other.nrows());
        assert_eq!(self.ncols, other.ncols);
        RationalMatrix {
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.nrows(), other.nrows());
        assert_eq!(self.ncols, other.ncols);
        RationalMatrix {
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let pivots = rref_in_place(&mut rows, self.ncols);
        (
            RationalMatrix {
                ncols: self.ncols,
                rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<RationalVector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.rows[row][f].clone();
                }
                RationalVector(v)
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<RationalMatrix> {
        let n = self.nrows();
        if n != self.ncols {
            return None;
        }
        let mut aug: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                row
            })
            .collect();
        let pivots = rref_in_place(&mut aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(RationalMatrix {
            ncols: n,
            rows: aug.into_iter().map(|r| r[n..].to_vec()).collect(),
        })
    }
}

fn rref_in_place(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank by fraction-free (Bareiss) elimination on the matrix scaled to integers.
pub fn rank(m: &RationalMatrix) -> usize {
    let mut rows: Vec<Vec<BigInt>> = m
        .rows
        .iter()
        .map(|r| {
            let lcm = r
                .iter()
                .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
            r.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();
    let ncols = m.ncols;
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        let (head, tail) = rows.split_at_mut(rank + 1);
        let top = &head[rank];
        for row in tail {
            let lead = row[c].clone();
            for (x, t) in row[c..].iter_mut().zip(&top[c..]) {
                *x = (&pivot * &*x - &lead * t) / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Outcome of [`solve_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(RationalVector),
    Inconsistent,
    Underdetermined,
}

impl LinearSolution {
    pub fn unique(self) -> Option<RationalVector> {
        match self {
            LinearSolution::Unique(x) => Some(x),
            _ => None,
        }
    }
}

pub fn solve_linear(a: &RationalMatrix, b: &RationalVector) -> LinearSolution {
    assert_eq!(a.nrows(), b.dim(), "row count must match right-hand side");
    let n = a.ncols();
    let mut aug: Vec<Vec<Rational>> = a
        .rows
        .iter()
        .zip(b.iter())
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let pivots = rref_in_place(&mut aug, n + 1);
    if pivots.last() == Some(&n) {
        return LinearSolution::Inconsistent;
    }
    if pivots.len() < n {
        return LinearSolution::Underdetermined;
    }
    LinearSolution::Unique(RationalVector(
        (0..n).map(|i| aug[i][n].clone()).collect(),
    ))
}

/// A linear subspace stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<RationalVector>,
}

impl Subspace {
    pub fn span(vectors: &[RationalVector], ambient_dim: usize) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient_dim);
        }
        let (r, pivots) = RationalMatrix::from_rows(vectors.to_vec()).rref();
        Subspace {
            ambient_dim,
            basis: r.rows().into_iter().take(pivots.len()).collect(),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: (0..ambient_dim)
                .map(|i| RationalVector::unit(ambient_dim, i))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[RationalVector] {
        &self.basis
    }

    pub fn canonicalize(&self) -> Self {
        Self::span(&self.basis, self.ambient_dim)
    }

    pub fn contains(&self, v: &RationalVector) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.clone());
        rank(&RationalMatrix::from_rows(rows)) == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// The sum `self + other`.
    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(&vs, self.ambient_dim)
    }
}

/// Canonical subspace spanned by `p_i - p_0`.
pub fn subspace_from_differences(points: &[RationalVector]) -> Subspace {
    let Some(p0) = points.first() else {
        return Subspace::zero(0);
    };
    let diffs: Vec<RationalVector> = points[1..].iter().map(|p| p - p0).collect();
    Subspace::span(&diffs, p0.dim())
}

/// The set `{x : <normal, x> = offset}` with the first nonzero normal entry equal to one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: RationalVector,
    offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: RationalVector, offset: Rational) -> Option<Self> {
        let lead = normal.iter().find(|x| !x.is_zero())?.clone();
        let inv = lead.recip();
        Some(Hyperplane {
            normal: normal.scale(&inv),
            offset: offset * inv,
        })
    }

    pub fn normal(&self) -> &RationalVector {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// `<normal, x> - offset`.
    pub fn eval(&self, x: &RationalVector) -> Rational {
        self.normal.dot(x) - &self.offset
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        self.eval(x).is_zero()
    }

    pub fn canonicalize(&self) -> Self {
        Hyperplane::new(self.normal.clone(), self.offset.clone())
            .expect("hyperplane normal is nonzero")
    }
}

/// Hyperplane of the affine hull through `points` whose normal lies in `ambient`.
///
/// Returns `None` unless the points affinely span a flat of codimension one
/// in `ambient`.
pub fn hyperplane_through(points: &[RationalVector], ambient: &Subspace) -> Option<Hyperplane> {
    let p0 = points.first()?;
    let direction = subspace_from_differences(points);
    if ambient.dim() == 0 || direction.dim() + 1 != ambient.dim() {
        return None;
    }
    if !ambient.contains_subspace(&direction) {
        return None;
    }
    // normal = sum c_k b_k with <d, normal> = 0 for every direction vector d
    let gram = RationalMatrix::from_rows(
        direction
            .basis()
            .iter()
            .map(|d| RationalVector::new(ambient.basis().iter().map(|b| d.dot(b)).collect()))
            .collect(),
    );
    let coeffs = if direction.dim() == 0 {
        vec![RationalVector::from_ints(&[1])]
    } else {
        gram.nullspace()
    };
    if coeffs.len() != 1 {
        return None;
    }
    let normal = ambient
        .basis()
        .iter()
        .zip(coeffs[0].iter())
        .fold(RationalVector::zeros(p0.dim()), |acc, (b, c)| {
            &acc + &b.scale(c)
        });
    let offset = normal.dot(p0);
    Hyperplane::new(normal, offset)
}

/// `x -> matrix * x + translation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    matrix: RationalMatrix,
    translation: RationalVector,
}

impl AffineMap {
    pub fn new(matrix: RationalMatrix, translation: RationalVector) -> Result<Self> {
        if matrix.nrows() != translation.dim() {
            return Err(Error::Internal(format!(
                "affine map has {} rows but translation of dimension {}",
                matrix.nrows(),
                translation.dim()
            )));
        }
        Ok(AffineMap {
            matrix,
            translation,
        })
    }

    pub fn identity(dim: usize) -> Self {
        AffineMap {
            matrix: RationalMatrix::identity(dim),
            translation: RationalVector::zeros(dim),
        }
    }

    pub fn translation_by(t: RationalVector) -> Self {
        AffineMap {
            matrix: RationalMatrix::identity(t.dim()),
            translation: t,
        }
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn translation(&self) -> &RationalVector {
        &self.translation
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn apply(&self, x: &RationalVector) -> RationalVector {
        &self.matrix.mul_vec(x) + &self.translation
    }

    pub fn is_pure_translation(&self) -> bool {
        self.matrix == RationalMatrix::identity(self.source_dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> RationalVector {
        RationalVector::from_ints(xs)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::identity(3).rank(), 3);
        assert_eq!(RationalMatrix::zeros(2, 4).rank(), 0);
        let m = RationalMatrix::from_ints(&[&[1, 1, -2], &[2, 2, -4], &[1, -1, 0]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rank_handles_fractions() {
        let m = RationalMatrix::from_rows(vec![
            RationalVector::new(vec![rat(1, 2), rat(1, 3)]),
            RationalVector::new(vec![rat(3, 2), int(1)]),
        ]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_examples() {
        let id = RationalMatrix::identity(2);
        assert_eq!(
            solve_linear(&id, &v(&[1, 2])),
            LinearSolution::Unique(v(&[1, 2]))
        );
        let a = RationalMatrix::from_ints(&[&[1, -1], &[0, 1]]);
        assert_eq!(
            solve_linear(&a, &v(&[1, 1])),
            LinearSolution::Unique(v(&[2, 1]))
        );
        let a = RationalMatrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve_linear(&a, &v(&[1, 3])), LinearSolution::Inconsistent);
        assert_eq!(solve_linear(&a, &v(&[1, 2])), LinearSolution::Underdetermined);
    }

    #[test]
    fn subspace_examples() {
        let s = subspace_from_differences(&[v(&[0, 0]), v(&[1, 0])]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), &[v(&[1, 0])]);

        let s = subspace_from_differences(&[v(&[0, 0, 0]), v(&[1, 1, 0]), v(&[2, 2, 0])]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), &[v(&[1, 1, 0])]);

        let s = subspace_from_differences(&[v(&[0, 0]), v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(s, Subspace::full(2));

        let s = subspace_from_differences(&[v(&[3, 4]), v(&[3, 4])]);
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn hyperplane_examples() {
        let plane = Subspace::full(2);
        let h = hyperplane_through(&[v(&[0, 0]), v(&[1, 0])], &plane).unwrap();
        assert_eq!(h.normal(), &v(&[0, 1]));
        assert_eq!(h.offset(), &int(0));

        let h = hyperplane_through(&[v(&[1, 1]), v(&[2, 2]), v(&[3, 3])], &plane).unwrap();
        assert_eq!(h.normal(), &v(&[1, -1]));
        assert_eq!(h.offset(), &int(0));

        assert!(hyperplane_through(&[v(&[0, 0]), v(&[1, 0]), v(&[0, 1])], &plane).is_none());
    }

    #[test]
    fn hyperplane_inside_a_proper_subspace() {
        // the plane x+y+z = 0, a line in it through (1,-1,0) and (0,0,0)
        let ambient = Subspace::span(&[v(&[1, -1, 0]), v(&[0, 1, -1])], 3);
        let h = hyperplane_through(&[v(&[0, 0, 0]), v(&[1, -1, 0])], &ambient).unwrap();
        assert_eq!(h.normal().dot(&v(&[1, -1, 0])), int(0));
        assert!(ambient.contains(h.normal()));
        assert_eq!(h.normal(), &v(&[1, 1, -2]));
    }

    #[test]
    fn single_point_hyperplane_in_a_line() {
        let ambient = Subspace::span(&[v(&[1, -1])], 2);
        let h = hyperplane_through(&[v(&[2, 1])], &ambient).unwrap();
        assert_eq!(h.normal(), &v(&[1, -1]));
        assert_eq!(h.offset(), &int(1));
    }

    #[test]
    fn inverse_and_nullspace() {
        let a = RationalMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RationalMatrix::identity(2));
        assert!(RationalMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let ns = RationalMatrix::from_ints(&[&[1, 1, 1]]).nullspace();
        assert_eq!(ns.len(), 2);
    }

    #[test]
    fn rational_strings() {
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(-4, 2)), "-2");
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(
                proptest::collection::vec((-4i64..5, 1i64..4), c),
                r,
            )
            .prop_map(|rows| {
                RationalMatrix::from_rows(
                    rows.into_iter()
                        .map(|row| {
                            RationalVector::new(row.into_iter().map(|(p, q)| rat(p, q)).collect())
                        })
                        .collect(),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn rank_equals_rank_of_transpose(m in small_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert_eq!(m.rank(), m.rref().1.len());
        }

        #[test]
        fn differences_are_order_independent(
            pts in proptest::collection::vec(proptest::collection::vec(-3i64..4, 3), 2..6),
            rot in 0usize..6,
        ) {
            let pts: Vec<RationalVector> = pts.iter().map(|p| v(p)).collect();
            let mut shuffled = pts.clone();
            let k = rot % shuffled.len();
            shuffled.rotate_left(k);
            shuffled.reverse();
            let a = subspace_from_differences(&pts);
            prop_assert_eq!(&a, &subspace_from_differences(&shuffled));
            prop_assert_eq!(&a, &a.canonicalize());
        }

        #[test]
        fn solve_recovers_constructed_solution(m in small_matrix(), x in proptest::collection::vec(-5i64..6, 4)) {
            let x0 = RationalVector::from_ints(&x[..m.ncols()]);
            let b = m.mul_vec(&x0);
            let sol = solve_linear(&m, &b);
            if m.rank() == m.ncols() {
                prop_assert_eq!(sol, LinearSolution::Unique(x0));
            } else {
                prop_assert_eq!(sol, LinearSolution::Underdetermined);
            }
        }

        #[test]
        fn hyperplane_canonicalization_is_idempotent(
            n in proptest::collection::vec(-5i64..6, 3), c in -5i64..6, s in 1i64..7,
        ) {
            let normal = v(&n);
            prop_assume!(!normal.is_zero());
            let h = Hyperplane::new(normal.clone(), int(c)).unwrap();
            prop_assert_eq!(&h, &h.canonicalize());
            let scaled = Hyperplane::new(normal.scale(&rat(-s, 3)), int(c) * rat(-s, 3)).unwrap();
            prop_assert_eq!(h, scaled);
        }
    }
}
