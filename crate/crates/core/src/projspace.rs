//! PG(n,q): points, subspaces, incidence, enumeration and projection.
//!
//! Points are normalized so the first nonzero coordinate is 1 and carry a
//! dense lexicographic rank in `0..num_points`. Subspaces are identified by
//! their reduced row-echelon basis, so equal subspaces compare equal.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{self, Row};

/// Gaussian binomial `[m choose r]_q`: the number of r-dimensional vector
/// subspaces of GF(q)^m. Zero when `r > m`.
pub fn gaussian_binomial(m: i64, r: i64, q: u64) -> Result<BigUint> {
    if m < 0 || r < 0 {
        return Err(Error::Range(format!("gaussian binomial [{m} {r}] needs 0 <= r <= m")));
    }
    if r > m {
        return Err(Error::Range(format!("gaussian binomial [{m} {r}] needs r <= m")));
    }
    let q = BigUint::from(q);
    let one = BigUint::one();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        num *= q.pow((m - i) as u32) - &one;
        den *= q.pow((r - i) as u32) - &one;
    }
    Ok(num / den)
}

/// Same as [`gaussian_binomial`] but with the convention `[m r] = 0` outside
/// `0 <= r <= m`, which is what the counting identities need.
pub fn gaussian_binomial_or_zero(m: i64, r: i64, q: u64) -> BigUint {
    if m < 0 || r < 0 || r > m {
        BigUint::zero()
    } else {
        gaussian_binomial(m, r, q).expect("in range")
    }
}

/// Number of points of PG(d, q), i.e. `(q^(d+1) - 1)/(q - 1)`; zero for d < 0.
pub fn num_points_of(d: i64, q: u64) -> u64 {
    if d < 0 {
        return 0;
    }
    (0..=d as u32).map(|i| q.pow(i)).sum()
}

#[derive(Clone)]
pub struct ProjSpace {
    n: usize,
    field: Arc<Field>,
    num_points: u32,
    /// `offsets[i]`: rank of the first point whose leading coordinate is at position `i`.
    offsets: Vec<u32>,
}

impl fmt::Debug for ProjSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PG({},{})", self.n, self.field.order())
    }
}

impl PartialEq for ProjSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && *self.field == *other.field
    }
}
impl Eq for ProjSpace {}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<u32>,
}

impl ProjPoint {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    rows: Vec<Row>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Projective dimension; -1 for the empty subspace.
    pub fn dim(&self) -> i64 {
        self.rows.len() as i64 - 1
    }
    /// Vector dimension.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn basis(&self) -> &[Row] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

impl ProjSpace {
    pub fn new(n: usize, field: Arc<Field>) -> Result<ProjSpace> {
        if n == 0 {
            return Err(Error::Range("projective dimension must be at least 1".into()));
        }
        let q = field.order() as u64;
        let total = num_points_of(n as i64, q);
        if total >= u32::MAX as u64 || q.checked_pow(n as u32).is_none_or(|v| v >= u32::MAX as u64) {
            return Err(Error::TooLarge(format!("PG({n},{q}) has too many points")));
        }
        let offsets = (0..=n).map(|i| num_points_of(n as i64 - i as i64 - 1, q) as u32).collect();
        Ok(ProjSpace { n, field, num_points: total as u32, offsets })
    }

    pub fn dim(&self) -> usize {
        self.n
    }
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn q(&self) -> u32 {
        self.field.order()
    }
    pub fn num_points(&self) -> u32 {
        self.num_points
    }

    /// Rank of an already normalized nonzero vector.
    #[inline]
    pub fn rank_of(&self, v: &[u32]) -> u32 {
        let i = v.iter().position(|&x| x != 0).expect("nonzero vector");
        let mut tail = 0u32;
        for &c in &v[i + 1..] {
            tail = tail * self.q() + c;
        }
        self.offsets[i] + tail
    }

    /// Normalizes in place and ranks; `None` for the zero vector.
    #[inline]
    pub fn rank_vector(&self, v: &mut [u32]) -> Option<u32> {
        matrix::normalize(&self.field, v).then(|| self.rank_of(v))
    }

    pub fn unrank(&self, r: u32) -> Vec<u32> {
        assert!(r < self.num_points, "rank out of range");
        let i = (0..=self.n).find(|&i| r >= self.offsets[i]).expect("offsets end at 0");
        let mut v = vec![0u32; self.n + 1];
        v[i] = 1;
        let mut tail = r - self.offsets[i];
        let q = self.q();
        for j in (i + 1..=self.n).rev() {
            v[j] = tail % q;
            tail /= q;
        }
        v
    }

    pub fn point(&self, coords: &[u32]) -> Result<ProjPoint> {
        if coords.len() != self.n + 1 {
            return Err(Error::DimensionMismatch(format!("expected {} coordinates", self.n + 1)));
        }
        if coords.iter().any(|&c| c >= self.q()) {
            return Err(Error::Range("coordinate is not a field element".into()));
        }
        let mut v = coords.to_vec();
        if !matrix::normalize(&self.field, &mut v) {
            return Err(Error::Range("the zero vector is not a point".into()));
        }
        Ok(ProjPoint { coords: v })
    }

    pub fn point_at(&self, rank: u32) -> ProjPoint {
        ProjPoint { coords: self.unrank(rank) }
    }

    pub fn rank(&self, p: &ProjPoint) -> u32 {
        self.rank_of(&p.coords)
    }

    /// All points in lexicographic order of their normalized coordinates.
    pub fn points(&self) -> impl Iterator<Item = ProjPoint> + '_ {
        (0..self.num_points).map(move |r| self.point_at(r))
    }

    pub fn subspace_from_rows(&self, rows: Vec<Row>) -> Result<Subspace> {
        if rows.iter().any(|r| r.len() != self.n + 1) {
            return Err(Error::DimensionMismatch(format!("rows must have {} entries", self.n + 1)));
        }
        let mut rows = rows;
        let pivots = matrix::rref(&self.field, &mut rows);
        Ok(Subspace { rows, pivots })
    }

    pub fn point_subspace(&self, p: &ProjPoint) -> Subspace {
        let pivot = p.coords.iter().position(|&x| x != 0).expect("nonzero");
        Subspace { rows: vec![p.coords.clone()], pivots: vec![pivot] }
    }

    pub fn whole(&self) -> Subspace {
        let rows = (0..=self.n)
            .map(|i| {
                let mut r = vec![0; self.n + 1];
                r[i] = 1;
                r
            })
            .collect();
        Subspace { rows, pivots: (0..=self.n).collect() }
    }

    pub fn span(&self, items: &[&Subspace]) -> Result<Subspace> {
        if items.is_empty() {
            return Err(Error::EmptyInput);
        }
        let rows: Vec<Row> = items.iter().flat_map(|s| s.rows.iter().cloned()).collect();
        self.subspace_from_rows(rows)
    }

    pub fn span_points(&self, pts: &[&ProjPoint]) -> Result<Subspace> {
        if pts.is_empty() {
            return Err(Error::EmptyInput);
        }
        self.subspace_from_rows(pts.iter().map(|p| p.coords.clone()).collect())
    }

    pub fn join_point(&self, s: &Subspace, p: &ProjPoint) -> Subspace {
        let mut rows = s.rows.clone();
        rows.push(p.coords.clone());
        self.subspace_from_rows(rows).expect("matching dimension")
    }

    /// Line through two points (a point if they coincide).
    pub fn line_through(&self, a: &[u32], b: &[u32]) -> Subspace {
        self.subspace_from_rows(vec![a.to_vec(), b.to_vec()]).expect("matching dimension")
    }

    /// Intersection; `None` when the subspaces are disjoint.
    pub fn meet(&self, a: &Subspace, b: &Subspace) -> Option<Subspace> {
        let mut dual = self.annihilator(a);
        dual.extend(self.annihilator(b));
        let rows = matrix::nullspace(&self.field, &dual, self.n + 1);
        if rows.is_empty() {
            return None;
        }
        Some(self.subspace_from_rows(rows).expect("dimension"))
    }

    /// Rows spanning the orthogonal complement; `a` is the common zero set of them.
    pub fn annihilator(&self, s: &Subspace) -> Vec<Row> {
        matrix::nullspace(&self.field, &s.rows, self.n + 1)
    }

    pub fn contains_point(&self, s: &Subspace, p: &[u32]) -> bool {
        matrix::coordinates(&self.field, &s.rows, &s.pivots, p).is_some()
    }

    pub fn contains(&self, big: &Subspace, small: &Subspace) -> bool {
        small.rows.iter().all(|r| self.contains_point(big, r))
    }

    /// Coordinates of `p` with respect to the RREF basis of `s`, or `None` when `p` is outside.
    pub fn coordinates_in(&self, s: &Subspace, p: &[u32]) -> Option<Vec<u32>> {
        matrix::coordinates(&self.field, &s.rows, &s.pivots, p)
    }

    /// Points of a subspace, already normalized, in the order of their coefficient vectors.
    pub fn subspace_points<'a>(&'a self, s: &'a Subspace) -> impl Iterator<Item = Vec<u32>> + 'a {
        let r = s.rows.len();
        let q = self.q();
        let count = num_points_of(r as i64 - 1, q as u64) as u32;
        let local = LocalRanker::new(r, q);
        (0..count).map(move |i| {
            let coeffs = local.unrank(i);
            let mut v = vec![0u32; self.n + 1];
            for (c, row) in coeffs.iter().zip(&s.rows) {
                matrix::axpy(&self.field, &mut v, *c, row);
            }
            v
        })
    }

    pub fn subspace_point_ranks(&self, s: &Subspace) -> Vec<u32> {
        let mut out: Vec<u32> = self.subspace_points(s).map(|v| self.rank_of(&v)).collect();
        out.sort_unstable();
        out
    }

    pub fn num_points_in(&self, s: &Subspace) -> u64 {
        num_points_of(s.dim(), self.q() as u64)
    }

    /// Hyperplane with the given normal vector (a point of the dual space).
    pub fn hyperplane(&self, normal: &[u32]) -> Result<Subspace> {
        if normal.len() != self.n + 1 || normal.iter().all(|&x| x == 0) {
            return Err(Error::DimensionMismatch("normal must be a nonzero vector of length n+1".into()));
        }
        let rows = matrix::nullspace(&self.field, &[normal.to_vec()], self.n + 1);
        self.subspace_from_rows(rows)
    }

    /// Normalized normal vector of a hyperplane.
    pub fn normal_of(&self, h: &Subspace) -> Result<Vec<u32>> {
        if h.dim() != self.n as i64 - 1 {
            return Err(Error::NotHyperplane);
        }
        let mut a = self.annihilator(h).pop().expect("one-dimensional annihilator");
        matrix::normalize(&self.field, &mut a);
        Ok(a)
    }

    /// Dual ranks of the hyperplanes through a point.
    pub fn hyperplanes_through(&self, p: &[u32]) -> Vec<u32> {
        let dual = Subspace::from_rows_unchecked(matrix::nullspace(&self.field, &[p.to_vec()], self.n + 1), &self.field);
        self.subspace_points(&dual).map(|v| self.rank_of(&v)).collect()
    }

    /// All subspaces of projective dimension `dim`, each once, in a fixed order.
    pub fn subspaces(&self, dim: i64) -> Result<SubspaceIter<'_>> {
        if dim < 0 || dim > self.n as i64 {
            return Err(Error::Range(format!("no {dim}-spaces in PG({},q)", self.n)));
        }
        Ok(SubspaceIter::new(self, (dim + 1) as usize, None))
    }

    /// All `dim`-subspaces containing `through`, each once, in a fixed order.
    pub fn subspaces_through(&self, dim: i64, through: &Subspace) -> Result<SubspaceIter<'_>> {
        if dim < through.dim() || dim > self.n as i64 {
            return Err(Error::Range(format!(
                "no {dim}-spaces through a {}-space in PG({},q)",
                through.dim(),
                self.n
            )));
        }
        Ok(SubspaceIter::new(self, (dim + 1) as usize, Some(through.clone())))
    }

    pub fn count_subspaces(&self, dim: i64) -> Result<BigUint> {
        gaussian_binomial(self.n as i64 + 1, dim + 1, self.q() as u64)
    }

    /// Image of `b` under projection from `centre` onto the hyperplane `target`.
    pub fn project(&self, b: &PointSet, centre: &ProjPoint, target: &Subspace) -> Result<PointSet> {
        if target.dim() != self.n as i64 - 1 {
            return Err(Error::NotHyperplane);
        }
        if b.contains(centre) {
            return Err(Error::QInB);
        }
        let a = self.normal_of(target)?;
        let f = &self.field;
        let aq = matrix::dot(f, &a, &centre.coords);
        if aq == 0 {
            return Err(Error::QInH);
        }
        let neg_aq = f.neg(aq);
        let ranks = b.ranks().iter().map(|&r| {
            let rv = self.unrank(r);
            // (a.R) Q - (a.Q) R lies on the line QR and in the hyperplane.
            let ar = matrix::dot(f, &a, &rv);
            let mut v = vec![0u32; self.n + 1];
            matrix::axpy(f, &mut v, ar, &centre.coords);
            matrix::axpy(f, &mut v, neg_aq, &rv);
            self.rank_vector(&mut v).expect("Q not equal to R")
        });
        Ok(PointSet::from_ranks(self.clone(), ranks))
    }
}

impl Subspace {
    fn from_rows_unchecked(mut rows: Vec<Row>, f: &Field) -> Subspace {
        let pivots = matrix::rref(f, &mut rows);
        Subspace { rows, pivots }
    }
}

/// Lexicographic ranking of points of PG(len-1, q) on coefficient vectors.
struct LocalRanker {
    len: usize,
    q: u32,
    offsets: Vec<u32>,
}

impl LocalRanker {
    fn new(len: usize, q: u32) -> Self {
        let offsets = (0..len).map(|i| num_points_of(len as i64 - i as i64 - 2, q as u64) as u32).collect();
        LocalRanker { len, q, offsets }
    }

    fn unrank(&self, r: u32) -> Vec<u32> {
        let i = (0..self.len).find(|&i| r >= self.offsets[i]).expect("offsets end at 0");
        let mut v = vec![0u32; self.len];
        v[i] = 1;
        let mut tail = r - self.offsets[i];
        for j in (i + 1..self.len).rev() {
            v[j] = tail % self.q;
            tail /= self.q;
        }
        v
    }
}

/// Enumerates RREF matrices of a given rank over GF(q)^m: pivot sets in
/// lexicographic order, free entries as an odometer.
struct RrefEnum {
    m: usize,
    r: usize,
    q: u32,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    values: Vec<u32>,
    done: bool,
}

impl RrefEnum {
    fn new(m: usize, r: usize, q: u32) -> Self {
        let mut e = RrefEnum { m, r, q, pivots: (0..r).collect(), free: Vec::new(), values: Vec::new(), done: r > m };
        e.reset_free();
        e
    }

    fn reset_free(&mut self) {
        self.free.clear();
        for (row, &pc) in self.pivots.iter().enumerate() {
            for col in pc + 1..self.m {
                if !self.pivots.contains(&col) {
                    self.free.push((row, col));
                }
            }
        }
        self.values = vec![0; self.free.len()];
    }

    fn current(&self) -> Vec<Row> {
        let mut rows = vec![vec![0u32; self.m]; self.r];
        for (row, &pc) in self.pivots.iter().enumerate() {
            rows[row][pc] = 1;
        }
        for (&(row, col), &v) in self.free.iter().zip(&self.values) {
            rows[row][col] = v;
        }
        rows
    }

    fn advance(&mut self) {
        for v in self.values.iter_mut() {
            *v += 1;
            if *v < self.q {
                return;
            }
            *v = 0;
        }
        // next combination of pivot columns
        let (m, r) = (self.m, self.r);
        let mut i = r;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < m - r + i {
                self.pivots[i] += 1;
                for j in i + 1..r {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                self.reset_free();
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for RrefEnum {
    type Item = Vec<Row>;
    fn next(&mut self) -> Option<Vec<Row>> {
        if self.done {
            return None;
        }
        let out = self.current();
        if self.r == 0 {
            self.done = true;
        } else {
            self.advance();
        }
        Some(out)
    }
}

/// Stream of subspaces, optionally restricted to those containing a fixed subspace.
pub struct SubspaceIter<'a> {
    space: &'a ProjSpace,
    base: Option<Subspace>,
    complement: Vec<usize>,
    inner: RrefEnum,
}

impl<'a> SubspaceIter<'a> {
    fn new(space: &'a ProjSpace, rank: usize, base: Option<Subspace>) -> Self {
        let n1 = space.n + 1;
        let (complement, inner) = match &base {
            None => ((0..n1).collect(), RrefEnum::new(n1, rank, space.q())),
            Some(b) => {
                let comp: Vec<usize> = (0..n1).filter(|c| !b.pivots.contains(c)).collect();
                let m = comp.len();
                (comp, RrefEnum::new(m, rank - b.rank(), space.q()))
            }
        };
        SubspaceIter { space, base, complement, inner }
    }
}

impl Iterator for SubspaceIter<'_> {
    type Item = Subspace;
    fn next(&mut self) -> Option<Subspace> {
        let coeffs = self.inner.next()?;
        let n1 = self.space.n + 1;
        let mut rows: Vec<Row> = coeffs
            .into_iter()
            .map(|c| {
                let mut row = vec![0u32; n1];
                for (&col, v) in self.complement.iter().zip(c) {
                    row[col] = v;
                }
                row
            })
            .collect();
        match &self.base {
            None => {
                let pivots = rows.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect();
                Some(Subspace { rows, pivots })
            }
            Some(b) => {
                rows.extend(b.rows.iter().cloned());
                Some(Subspace::from_rows_unchecked(rows, &self.space.field))
            }
        }
    }
}

/// A finite set of points of one projective space with O(1) membership.
#[derive(Clone)]
pub struct PointSet {
    space: ProjSpace,
    ranks: Vec<u32>,
    bits: Vec<u64>,
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet({:?}, {} points)", self.space, self.ranks.len())
    }
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.ranks == other.ranks
    }
}
impl Eq for PointSet {}

impl PointSet {
    pub fn from_ranks(space: ProjSpace, ranks: impl IntoIterator<Item = u32>) -> PointSet {
        let mut ranks: Vec<u32> = ranks.into_iter().collect();
        ranks.sort_unstable();
        ranks.dedup();
        let mut bits = vec![0u64; (space.num_points() as usize).div_ceil(64)];
        for &r in &ranks {
            bits[(r / 64) as usize] |= 1 << (r % 64);
        }
        PointSet { space, ranks, bits }
    }

    pub fn from_points<'a>(space: ProjSpace, pts: impl IntoIterator<Item = &'a ProjPoint>) -> PointSet {
        let ranks: Vec<u32> = pts.into_iter().map(|p| space.rank(p)).collect();
        Self::from_ranks(space, ranks)
    }

    pub fn empty(space: ProjSpace) -> PointSet {
        Self::from_ranks(space, [])
    }

    pub fn space(&self) -> &ProjSpace {
        &self.space
    }
    pub fn len(&self) -> usize {
        self.ranks.len()
    }
    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
    /// Sorted point ranks.
    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    #[inline]
    pub fn contains_rank(&self, r: u32) -> bool {
        (self.bits[(r / 64) as usize] >> (r % 64)) & 1 == 1
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        p.coords.len() == self.space.n + 1 && self.contains_rank(self.space.rank(p))
    }

    pub fn points(&self) -> impl Iterator<Item = ProjPoint> + '_ {
        self.ranks.iter().map(|&r| self.space.point_at(r))
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.ranks.iter().all(|&r| other.contains_rank(r))
    }

    pub fn with_rank(&self, r: u32) -> PointSet {
        Self::from_ranks(self.space.clone(), self.ranks.iter().copied().chain([r]))
    }

    pub fn without_rank(&self, r: u32) -> PointSet {
        Self::from_ranks(self.space.clone(), self.ranks.iter().copied().filter(|&x| x != r))
    }

    /// Ranks of the points of this set lying in `s`.
    pub fn ranks_in(&self, s: &Subspace) -> Vec<u32> {
        let sp = &self.space;
        if (self.len() as u64) * (sp.n as u64 + 1 - s.rank() as u64) <= sp.num_points_in(s) {
            let ann = sp.annihilator(s);
            self.ranks
                .iter()
                .copied()
                .filter(|&r| {
                    let v = sp.unrank(r);
                    ann.iter().all(|a| matrix::dot(&sp.field, a, &v) == 0)
                })
                .collect()
        } else {
            let mut out: Vec<u32> =
                sp.subspace_points(s).map(|v| sp.rank_of(&v)).filter(|&r| self.contains_rank(r)).collect();
            out.sort_unstable();
            out
        }
    }

    pub fn intersection_size(&self, s: &Subspace) -> usize {
        self.ranks_in(s).len()
    }

    /// The points of this set inside `s`, written in the coordinates of `s`'s
    /// basis, as a point set of PG(dim s, q).
    pub fn restrict_to(&self, s: &Subspace) -> Result<PointSet> {
        if s.dim() < 1 {
            return Err(Error::Range("restriction needs a subspace of dimension >= 1".into()));
        }
        let sub = ProjSpace::new(s.dim() as usize, self.space.field.clone())?;
        let ranks: Vec<u32> = self
            .ranks_in(s)
            .into_iter()
            .map(|r| {
                let mut c = self.space.coordinates_in(s, &self.space.unrank(r)).expect("inside");
                sub.rank_vector(&mut c).expect("nonzero")
            })
            .collect();
        Ok(PointSet::from_ranks(sub, ranks))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pg(n: usize, p: u32, t: u32) -> ProjSpace {
        ProjSpace::new(n, Field::conway(p, t).unwrap()).unwrap()
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(2, 1, 3).unwrap(), BigUint::from(4u32));
        assert_eq!(gaussian_binomial(5, 0, 7).unwrap(), BigUint::from(1u32));
        assert_eq!(gaussian_binomial(4, 2, 9).unwrap(), BigUint::from(7462u32));
        assert!(gaussian_binomial(2, 3, 3).is_err());
        assert!(gaussian_binomial(-1, 0, 3).is_err());
    }

    #[test]
    fn gaussian_binomial_matches_brute_force_over_gf2() {
        // 2-dimensional subspaces of GF(2)^4, counted by deduplicating spans of vector pairs.
        let f = Field::conway(2, 1).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for a in 1u32..16 {
            for b in 1u32..16 {
                if a == b {
                    continue;
                }
                let va: Vec<u32> = (0..4).map(|i| (a >> i) & 1).collect();
                let vb: Vec<u32> = (0..4).map(|i| (b >> i) & 1).collect();
                let mut rows = vec![va, vb];
                matrix::rref(&f, &mut rows);
                if rows.len() == 2 {
                    seen.insert(rows);
                }
            }
        }
        assert_eq!(seen.len(), 35);
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), BigUint::from(35u32));
    }

    #[test]
    fn point_counts_and_rank_order() {
        assert_eq!(pg(2, 3, 2).num_points(), 91);
        assert_eq!(pg(1, 3, 1).num_points(), 4);
        assert_eq!(pg(3, 7, 2).num_points(), 120100);
        let s = pg(2, 3, 2);
        let pts: Vec<ProjPoint> = s.points().collect();
        for w in pts.windows(2) {
            assert!(w[0] < w[1], "lexicographic order");
        }
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(s.rank(p), i as u32);
            assert_eq!(p.coords().iter().find(|&&c| c != 0), Some(&1));
        }
    }

    #[test]
    fn normalization_is_idempotent() {
        let s = pg(2, 7, 2);
        let p = s.point(&[0, 13, 40]).unwrap();
        let again = s.point(p.coords()).unwrap();
        assert_eq!(p, again);
        let f = s.field();
        let scaled: Vec<u32> = [0, 13, 40].iter().map(|&c| f.mul(c, 17)).collect();
        assert_eq!(s.point(&scaled).unwrap(), p);
        assert!(s.point(&[0, 0, 0]).is_err());
    }

    #[test]
    fn span_basics() {
        let s = pg(2, 3, 2);
        let a = s.point_at(3);
        let b = s.point_at(50);
        let c = s.point_at(90);
        assert_eq!(s.span_points(&[&a, &b]).unwrap().dim(), 1);
        assert_eq!(s.span_points(&[&a, &a]).unwrap().dim(), 0);
        let e0 = s.point(&[1, 0, 0]).unwrap();
        let e1 = s.point(&[0, 1, 0]).unwrap();
        let e2 = s.point(&[0, 0, 1]).unwrap();
        assert_eq!(s.span_points(&[&e0, &e1, &e2]).unwrap(), s.whole());
        let _ = c;
        assert_eq!(s.span(&[]).unwrap_err(), Error::EmptyInput);
    }

    #[test]
    fn meet_basics() {
        let s = pg(2, 3, 2);
        let l1 = s.line_through(&s.unrank(0), &s.unrank(5));
        let l2 = s.line_through(&s.unrank(20), &s.unrank(77));
        assert_ne!(l1, l2);
        assert_eq!(s.meet(&l1, &l2).unwrap().dim(), 0);
        let p = s.point_subspace(&s.point_at(0));
        assert_eq!(s.meet(&p, &l1).unwrap(), p);
        let s3 = pg(3, 2, 1);
        let a = s3.line_through(&[1, 0, 0, 0], &[0, 1, 0, 0]);
        let b = s3.line_through(&[0, 0, 1, 0], &[0, 0, 0, 1]);
        assert!(s3.meet(&a, &b).is_none());
    }

    #[test]
    fn enumeration_counts() {
        let s = pg(2, 3, 2);
        assert_eq!(s.subspaces(1).unwrap().count(), 91);
        let s3 = pg(3, 3, 2);
        let lines: Vec<Subspace> = s3.subspaces(1).unwrap().collect();
        assert_eq!(lines.len(), 7462);
        let uniq: std::collections::HashSet<_> = lines.iter().collect();
        assert_eq!(uniq.len(), 7462);
        let l = &lines[1234];
        assert_eq!(s3.subspaces_through(2, l).unwrap().count(), 10);
        for pl in s3.subspaces_through(2, l).unwrap() {
            assert!(s3.contains(&pl, l));
        }
        let p = s3.point_subspace(&s3.point_at(100));
        assert_eq!(s3.subspaces_through(1, &p).unwrap().count(), 91);
        assert!(s3.subspaces(4).is_err());
        assert!(s3.subspaces_through(0, l).is_err());
    }

    #[test]
    fn subspace_points_are_members() {
        let s = pg(3, 2, 2);
        let pl = s.subspaces(2).unwrap().nth(17).unwrap();
        let pts: Vec<_> = s.subspace_points(&pl).collect();
        assert_eq!(pts.len(), 21);
        for v in &pts {
            assert!(s.contains_point(&pl, v));
            assert_eq!(v.iter().find(|&&c| c != 0), Some(&1));
        }
    }

    #[test]
    fn hyperplane_duality() {
        let s = pg(2, 3, 2);
        let p = s.unrank(40);
        let hs = s.hyperplanes_through(&p);
        assert_eq!(hs.len(), 10);
        for r in hs {
            let h = s.hyperplane(&s.unrank(r)).unwrap();
            assert!(s.contains_point(&h, &p));
            assert_eq!(s.rank_of(&s.normal_of(&h).unwrap()), r);
        }
    }

    #[test]
    fn projection_of_single_point_and_points_in_target() {
        let s = pg(2, 3, 2);
        let h = s.hyperplane(&[1, 0, 0]).unwrap();
        let q = s.point(&[1, 0, 0]).unwrap();
        let r = s.point(&[1, 1, 1]).unwrap();
        let b = PointSet::from_points(s.clone(), [&r]);
        let img = s.project(&b, &q, &h).unwrap();
        let expected = s.meet(&s.span_points(&[&q, &r]).unwrap(), &h).unwrap();
        assert_eq!(img.ranks(), &[s.rank_of(&expected.basis()[0])]);

        let inside: Vec<ProjPoint> = [[0, 1, 0], [0, 1, 5], [0, 0, 1]].iter().map(|c| s.point(c).unwrap()).collect();
        let b = PointSet::from_points(s.clone(), inside.iter());
        assert_eq!(s.project(&b, &q, &h).unwrap(), b);

        assert_eq!(s.project(&b, &inside[0], &s.hyperplane(&[1, 1, 0]).unwrap()).unwrap_err(), Error::QInB);
        let q_in_h = s.point(&[0, 1, 1]).unwrap();
        assert_eq!(s.project(&b.without_rank(s.rank(&inside[0])), &q_in_h, &h).unwrap_err(), Error::QInH);
        let line = s.point_subspace(&q);
        assert_eq!(s.project(&b, &r, &line).unwrap_err(), Error::NotHyperplane);
    }

    #[test]
    fn restrict_to_plane() {
        let s = pg(3, 3, 1);
        let plane = s.hyperplane(&[0, 0, 0, 1]).unwrap();
        let b = PointSet::from_ranks(s.clone(), s.subspace_point_ranks(&plane));
        let r = b.restrict_to(&plane).unwrap();
        assert_eq!(r.len(), 13);
        assert_eq!(r.space().dim(), 2);
    }
}
