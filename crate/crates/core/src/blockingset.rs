//! Predicates and counting on point sets: blocking, minimality, smallness,
//! exponent, Rédei type, intersection spectra, secant statistics, the
//! small/large gap and tangent extension.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds;
use crate::error::{Error, Result};
use crate::matrix;
use crate::projspace::{gaussian_binomial, gaussian_binomial_or_zero, num_points_of, PointSet, ProjSpace, Subspace};

/// `x[i]`: number of subspaces of the given dimension meeting B in exactly i points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionSpectrum {
    pub dim: i64,
    pub counts: BTreeMap<usize, u64>,
}

impl IntersectionSpectrum {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn get(&self, i: usize) -> u64 {
        self.counts.get(&i).copied().unwrap_or(0)
    }

    /// Sizes that actually occur.
    pub fn sizes(&self) -> Vec<usize> {
        self.counts.iter().filter(|(_, &c)| c > 0).map(|(&i, _)| i).collect()
    }

    /// The three standard double-counting identities for a set of `b` points in PG(n,q).
    pub fn identities(&self, n: i64, q: u64, b: u64) -> [(BigUint, BigUint); 3] {
        let d = self.dim;
        let mut s0 = BigUint::from(0u32);
        let mut s1 = BigUint::from(0u32);
        let mut s2 = BigUint::from(0u32);
        for (&i, &x) in &self.counts {
            let (i, x) = (BigUint::from(i as u64), BigUint::from(x));
            s0 += &x;
            s1 += &i * &x;
            if i > BigUint::from(0u32) {
                s2 += &i * (&i - 1u32) * &x;
            }
        }
        let bb = BigUint::from(b);
        let r0 = gaussian_binomial_or_zero(n + 1, d + 1, q);
        let r1 = &bb * gaussian_binomial_or_zero(n, d, q);
        let r2 = if b == 0 { BigUint::from(0u32) } else { &bb * (&bb - 1u32) * gaussian_binomial_or_zero(n - 1, d - 1, q) };
        [(s0, r0), (s1, r1), (s2, r2)]
    }

    pub fn identities_hold(&self, n: i64, q: u64, b: u64) -> bool {
        self.identities(n, q, b).iter().all(|(l, r)| l == r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumRoute {
    Auto,
    /// Enumerate every subspace.
    Direct,
    /// Lines only: group the other points of B around each point of B.
    Pairs,
    /// Hyperplanes only: accumulate hyperplane incidences of the points of B.
    Dual,
}

/// For each point of B, the other points of B grouped by the line joining them.
pub struct SecantIndex {
    space: ProjSpace,
    ranks: Vec<u32>,
    /// `groups[i]`: for point `ranks[i]`, sorted rank lists of the other B points on each secant
    groups: Vec<Vec<Vec<u32>>>,
}

impl SecantIndex {
    pub fn build(b: &PointSet) -> SecantIndex {
        let sp = b.space().clone();
        let f = sp.field().clone();
        let pts: Vec<Vec<u32>> = b.ranks().iter().map(|&r| sp.unrank(r)).collect();
        let groups = (0..pts.len())
            .into_par_iter()
            .map(|i| {
                let p = &pts[i];
                let piv = p.iter().position(|&x| x != 0).unwrap();
                let mut keyed: Vec<(u32, u32)> = Vec::with_capacity(pts.len() - 1);
                for (j, r) in pts.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    // direction of R seen from P: R - R_piv P, normalized
                    let mut d = r.clone();
                    matrix::axpy(&f, &mut d, f.neg(r[piv]), p);
                    let key = sp.rank_vector(&mut d).expect("distinct points");
                    keyed.push((key, b.ranks()[j]));
                }
                keyed.sort_unstable();
                let mut out: Vec<Vec<u32>> = Vec::new();
                let mut last = None;
                for (k, r) in keyed {
                    if last != Some(k) {
                        out.push(Vec::new());
                        last = Some(k);
                    }
                    out.last_mut().unwrap().push(r);
                }
                for g in out.iter_mut() {
                    g.sort_unstable();
                }
                out.sort();
                out
            })
            .collect();
        SecantIndex { space: sp, ranks: b.ranks().to_vec(), groups }
    }

    pub fn lines_through_a_point(&self) -> u64 {
        num_points_of(self.space.dim() as i64 - 1, self.space.q() as u64)
    }

    /// Secants through the i-th point of B, as the other B points on each.
    pub fn groups(&self, i: usize) -> &[Vec<u32>] {
        &self.groups[i]
    }

    pub fn point_ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn index_of(&self, rank: u32) -> Option<usize> {
        self.ranks.binary_search(&rank).ok()
    }

    /// Every secant line once, as its sorted B-point ranks, ordered.
    pub fn secant_lines(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for (i, gs) in self.groups.iter().enumerate() {
            let p = self.ranks[i];
            for g in gs {
                if g[0] > p {
                    let mut line = Vec::with_capacity(g.len() + 1);
                    line.push(p);
                    line.extend_from_slice(g);
                    out.push(line);
                }
            }
        }
        out.sort();
        out
    }

    pub fn line_spectrum(&self) -> IntersectionSpectrum {
        let mut incid: BTreeMap<usize, u64> = BTreeMap::new();
        let mut tangents = 0u64;
        let through = self.lines_through_a_point();
        for gs in &self.groups {
            tangents += through - gs.len() as u64;
            for g in gs {
                *incid.entry(g.len() + 1).or_default() += 1;
            }
        }
        let mut counts = BTreeMap::new();
        let mut covered = 0u64;
        if tangents > 0 {
            counts.insert(1, tangents);
            covered += tangents;
        }
        for (size, inc) in incid {
            let x = inc / size as u64;
            covered += x;
            counts.insert(size, x);
        }
        let total = num_points_of(self.space.dim() as i64, self.space.q() as u64)
            * num_points_of(self.space.dim() as i64 - 1, self.space.q() as u64)
            / (self.space.q() as u64 + 1);
        if total > covered {
            counts.insert(0, total - covered);
        }
        IntersectionSpectrum { dim: 1, counts }
    }
}

/// Per-hyperplane counts `|B ∩ H|`, indexed by the dual rank of H.
pub fn hyperplane_counts(b: &PointSet) -> Vec<u32> {
    let sp = b.space();
    let mut counts = vec![0u32; sp.num_points() as usize];
    let per_point: Vec<Vec<u32>> = b.ranks().par_iter().map(|&r| sp.hyperplanes_through(&sp.unrank(r))).collect();
    for hs in per_point {
        for h in hs {
            counts[h as usize] += 1;
        }
    }
    counts
}

fn total_subspaces(sp: &ProjSpace, dim: i64) -> Result<u64> {
    let g = gaussian_binomial(sp.dim() as i64 + 1, dim + 1, sp.q() as u64)?;
    u64::try_from(g).map_err(|_| Error::TooLarge("subspace count exceeds 64 bits".into()))
}

pub fn spectrum(b: &PointSet, dim: i64) -> Result<IntersectionSpectrum> {
    spectrum_with(b, dim, SpectrumRoute::Auto)
}

pub fn spectrum_with(b: &PointSet, dim: i64, route: SpectrumRoute) -> Result<IntersectionSpectrum> {
    let sp = b.space();
    let n = sp.dim() as i64;
    if dim < 0 || dim > n - 1 {
        return Err(Error::Range(format!("spectrum dimension {dim} outside 0..{}", n - 1)));
    }
    let route = match route {
        SpectrumRoute::Auto if dim == n - 1 => SpectrumRoute::Dual,
        SpectrumRoute::Auto if dim == 1 => SpectrumRoute::Pairs,
        SpectrumRoute::Auto => SpectrumRoute::Direct,
        r => r,
    };
    if dim == 0 {
        let mut counts = BTreeMap::new();
        let rest = sp.num_points() as u64 - b.len() as u64;
        if rest > 0 {
            counts.insert(0, rest);
        }
        if !b.is_empty() {
            counts.insert(1, b.len() as u64);
        }
        return Ok(IntersectionSpectrum { dim, counts });
    }
    match route {
        SpectrumRoute::Pairs => {
            if dim != 1 {
                return Err(Error::Range("pair route counts lines only".into()));
            }
            Ok(SecantIndex::build(b).line_spectrum())
        }
        SpectrumRoute::Dual => {
            if dim != n - 1 {
                return Err(Error::Range("dual route counts hyperplanes only".into()));
            }
            let mut counts = BTreeMap::new();
            for c in hyperplane_counts(b) {
                *counts.entry(c as usize).or_default() += 1;
            }
            Ok(IntersectionSpectrum { dim, counts })
        }
        _ => {
            let counts = sp
                .subspaces(dim)?
                .par_bridge()
                .fold(BTreeMap::new, |mut m: BTreeMap<usize, u64>, s| {
                    *m.entry(b.intersection_size(&s)).or_default() += 1;
                    m
                })
                .reduce(BTreeMap::new, |mut a, c| {
                    for (k, v) in c {
                        *a.entry(k).or_default() += v;
                    }
                    a
                });
            let spec = IntersectionSpectrum { dim, counts };
            debug_assert_eq!(spec.total(), total_subspaces(sp, dim)?);
            Ok(spec)
        }
    }
}

fn check_k(sp: &ProjSpace, k: i64) -> Result<()> {
    let n = sp.dim() as i64;
    if k < 1 || k > n - 1 {
        return Err(Error::Range(format!("k = {k} outside 1..{}", n - 1)));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockingCheck {
    pub blocking: bool,
    /// An (n-k)-space missing B, when not blocking.
    pub witness: Option<Subspace>,
}

pub fn is_k_blocking(b: &PointSet, k: i64) -> Result<BlockingCheck> {
    let sp = b.space();
    check_k(sp, k)?;
    let dim = sp.dim() as i64 - k;
    let witness = find_skew(b, dim)?;
    Ok(BlockingCheck { blocking: witness.is_none(), witness })
}

/// Some dim-subspace disjoint from B, if one exists.
pub fn find_skew(b: &PointSet, dim: i64) -> Result<Option<Subspace>> {
    let sp = b.space();
    let n = sp.dim() as i64;
    if dim == n - 1 {
        let counts = hyperplane_counts(b);
        return Ok(counts.iter().position(|&c| c == 0).map(|r| sp.hyperplane(&sp.unrank(r as u32)).expect("nonzero")));
    }
    if dim == 1 {
        let x0 = SecantIndex::build(b).line_spectrum().get(0);
        if x0 == 0 {
            return Ok(None);
        }
        // some line through some point off B misses B
        let f = sp.field();
        let pts: Vec<Vec<u32>> = b.ranks().iter().map(|&r| sp.unrank(r)).collect();
        for qr in 0..sp.num_points() {
            if b.contains_rank(qr) {
                continue;
            }
            let qv = sp.unrank(qr);
            let piv = qv.iter().position(|&x| x != 0).unwrap();
            let hit: HashSet<u32> = pts
                .iter()
                .map(|r| {
                    let mut d = r.clone();
                    matrix::axpy(f, &mut d, f.neg(r[piv]), &qv);
                    sp.rank_vector(&mut d).expect("Q not in B")
                })
                .collect();
            if (hit.len() as u64) < num_points_of(n - 1, sp.q() as u64) {
                let qs = sp.point_subspace(&sp.point_at(qr));
                for line in sp.subspaces_through(1, &qs)? {
                    if b.intersection_size(&line) == 0 {
                        return Ok(Some(line));
                    }
                }
                unreachable!("a direction from Q avoids B");
            }
        }
        unreachable!("line spectrum reported a skew line");
    }
    Ok(sp.subspaces(dim)?.find(|s| b.intersection_size(s) == 0))
}

/// `|B| < 3(q^k+1)/2`.
pub fn is_small(b: &PointSet, k: i64) -> bool {
    let q = b.space().q() as u64;
    BigRational::from_integer((b.len() as i64).into()) < bounds::small_threshold(q, k)
}

/// Largest e <= t with every size in `sizes` congruent to 1 mod p^e, or 0.
pub fn exponent_of_sizes(sizes: &[usize], p: u32, t: u32) -> u32 {
    (1..=t)
        .rev()
        .find(|&e| {
            let m = (p as u64).pow(e);
            sizes.iter().all(|&i| (i as u64) % m == 1 % m)
        })
        .unwrap_or(0)
}

/// Exponent of a k-blocking set: every (n-k)-space meets B in 1 mod p^e points.
pub fn exponent(b: &PointSet, k: i64) -> Result<u32> {
    let sp = b.space();
    check_k(sp, k)?;
    let spec = spectrum(b, sp.dim() as i64 - k)?;
    if spec.get(0) > 0 {
        return Err(Error::NotBlocking);
    }
    let f = sp.field();
    Ok(exponent_of_sizes(&spec.sizes(), f.characteristic(), f.degree()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimalityMethod {
    Direct,
    Criterion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityCheck {
    pub minimal: bool,
    /// A point on no tangent (n-k)-space, when not minimal.
    pub removable: Option<u32>,
}

pub fn is_minimal(b: &PointSet, k: i64, method: MinimalityMethod) -> Result<MinimalityCheck> {
    let sp = b.space();
    check_k(sp, k)?;
    let n = sp.dim() as i64;
    let dim = n - k;
    if !is_k_blocking(b, k)?.blocking {
        return Err(Error::NotBlocking);
    }
    match method {
        MinimalityMethod::Criterion => {
            let q = sp.q() as u64;
            let p = sp.field().characteristic() as u64;
            if (b.len() as u64) > 2 * q.pow(k as u32) {
                return Err(Error::NotApplicable("|B| > 2q^k".into()));
            }
            let spec = spectrum(b, dim)?;
            if spec.sizes().iter().any(|&i| (i as u64) % p != 1 % p) {
                return Err(Error::NotApplicable("some (n-k)-space meets B in a size not 1 mod p".into()));
            }
            Ok(MinimalityCheck { minimal: true, removable: None })
        }
        MinimalityMethod::Direct => {
            let removable = points_without_tangent(b, dim)?.into_iter().next();
            Ok(MinimalityCheck { minimal: removable.is_none(), removable })
        }
    }
}

/// Points of B lying on no dim-subspace that meets B in that point alone.
pub fn points_without_tangent(b: &PointSet, dim: i64) -> Result<Vec<u32>> {
    let sp = b.space();
    let n = sp.dim() as i64;
    if dim == n - 1 {
        let counts = hyperplane_counts(b);
        return Ok(b
            .ranks()
            .iter()
            .copied()
            .filter(|&r| !sp.hyperplanes_through(&sp.unrank(r)).iter().any(|&h| counts[h as usize] == 1))
            .collect());
    }
    if dim == 1 {
        let idx = SecantIndex::build(b);
        let through = idx.lines_through_a_point();
        return Ok((0..b.len()).filter(|&i| idx.groups(i).len() as u64 == through).map(|i| b.ranks()[i]).collect());
    }
    let mut out = Vec::new();
    for &r in b.ranks() {
        let ps = sp.point_subspace(&sp.point_at(r));
        if !sp.subspaces_through(dim, &ps)?.any(|s| b.intersection_size(&s) == 1) {
            out.push(r);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedeiCheck {
    pub redei: bool,
    pub hyperplane: Option<Subspace>,
}

/// Some hyperplane holds exactly `|B| - q^k` points of B.
pub fn is_redei(b: &PointSet, k: i64) -> Result<RedeiCheck> {
    let sp = b.space();
    check_k(sp, k)?;
    let qk = (sp.q() as u64).pow(k as u32);
    if (b.len() as u64) < qk {
        return Ok(RedeiCheck { redei: false, hyperplane: None });
    }
    let target = (b.len() as u64 - qk) as u32;
    let counts = hyperplane_counts(b);
    let hyperplane =
        counts.iter().position(|&c| c == target).map(|r| sp.hyperplane(&sp.unrank(r as u32)).expect("nonzero"));
    Ok(RedeiCheck { redei: hyperplane.is_some(), hyperplane })
}

/// All j-spaces whose points all lie in B.
pub fn full_subspaces(b: &PointSet, j: i64) -> Result<Vec<Subspace>> {
    let sp = b.space();
    if j < 0 || j > sp.dim() as i64 {
        return Err(Error::Range(format!("no {j}-spaces")));
    }
    let mut level: Vec<Subspace> = b.ranks().iter().map(|&r| sp.point_subspace(&sp.point_at(r))).collect();
    for d in 1..=j {
        let need = num_points_of(d, sp.q() as u64) as usize;
        let mut next: Vec<Subspace> = level
            .par_iter()
            .flat_map_iter(|s| {
                let mut cands: Vec<Subspace> = b
                    .ranks()
                    .iter()
                    .filter(|&&r| !sp.contains_point(s, &sp.unrank(r)))
                    .map(|&r| sp.join_point(s, &sp.point_at(r)))
                    .collect();
                cands.sort();
                cands.dedup();
                cands.into_iter().filter(|t| b.intersection_size(t) == need)
            })
            .collect();
        next.sort();
        next.dedup();
        level = next;
        if level.is_empty() {
            break;
        }
    }
    Ok(level)
}

/// A k-blocking set is trivial when it contains a k-space.
pub fn is_trivial(b: &PointSet, k: i64) -> Result<bool> {
    Ok(!full_subspaces(b, k)?.is_empty())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Small,
    Large,
}

/// Small/large classification of (n-k+s)-spaces, valid when p0 >= 7 and every
/// (n-k)-space meets B in 1 mod p0 points.
pub struct Classifier<'a> {
    b: &'a PointSet,
    k: i64,
    p0: u64,
    h: i64,
}

impl<'a> Classifier<'a> {
    pub fn new(b: &'a PointSet, k: i64, p0: u32) -> Result<Classifier<'a>> {
        let sp = b.space();
        check_k(sp, k)?;
        let h = subfield_index(sp, p0)?;
        if p0 < 7 {
            return Err(Error::NotApplicable(format!("p0 = {p0} < 7")));
        }
        let spec = spectrum(b, sp.dim() as i64 - k)?;
        if spec.sizes().iter().any(|&i| i as u64 % p0 as u64 != 1) {
            return Err(Error::NotApplicable("some (n-k)-space meets B in a size not 1 mod p0".into()));
        }
        Ok(Classifier { b, k, p0: p0 as u64, h })
    }

    pub fn classify(&self, pi: &Subspace) -> Result<Side> {
        self.classify_size(pi.dim(), self.b.intersection_size(pi))
    }

    pub fn classify_size(&self, dim: i64, size: usize) -> Result<Side> {
        let n = self.b.space().dim() as i64;
        let s = dim - (n - self.k);
        if s < 0 || s > self.k {
            return Err(Error::Range(format!("dimension {dim} is not n-k+s with 0 <= s <= k")));
        }
        let sz = bounds::int(size as i64);
        if sz < bounds::gap_low(self.p0, self.h, s) {
            return Ok(Side::Small);
        }
        if s < self.k && sz > bounds::gap_high(self.p0, self.h, s) {
            return Ok(Side::Large);
        }
        Err(Error::GapViolation { size, s: s as usize })
    }
}

pub fn classify_small_large(b: &PointSet, k: i64, p0: u32, pi: &Subspace) -> Result<Side> {
    Classifier::new(b, k, p0)?.classify(pi)
}

/// `h` with `p0^h = q`, or BadParams.
pub fn subfield_index(sp: &ProjSpace, p0: u32) -> Result<i64> {
    let f = sp.field();
    let p = f.characteristic();
    let mut e = 0;
    let mut v = 1u32;
    while v < p0 {
        v *= p;
        e += 1;
    }
    if v != p0 || e == 0 || f.degree() % e != 0 {
        return Err(Error::BadParams(format!("{p0} is not a subfield order of GF({})", f.order())));
    }
    Ok((f.degree() / e) as i64)
}

/// An i-space through `l` meeting B only in B ∩ l, by depth-first extension
/// in enumeration order.
pub fn tangent_extension(b: &PointSet, k: i64, l: &Subspace, i: i64) -> Result<Subspace> {
    let sp = b.space();
    check_k(sp, k)?;
    let base = b.intersection_size(l);
    if l.dim() != 1 || base <= 1 || base >= sp.q() as usize + 1 {
        return Err(Error::BadParams("L must be a line with 1 < |B ∩ L| < q+1".into()));
    }
    if i < 1 || i > sp.dim() as i64 - k {
        return Err(Error::Range(format!("i = {i} outside 1..n-k")));
    }
    fn extend(b: &PointSet, cur: &Subspace, i: i64, base: usize) -> Result<Option<Subspace>> {
        if cur.dim() == i {
            return Ok(Some(cur.clone()));
        }
        for next in b.space().subspaces_through(cur.dim() + 1, cur)? {
            if b.intersection_size(&next) == base {
                if let Some(found) = extend(b, &next, i, base)? {
                    return Ok(Some(found));
                }
            }
        }
        Ok(None)
    }
    extend(b, l, i, base)?.ok_or_else(|| Error::NotFound(format!("no {i}-space through L meets B only in B ∩ L")))
}

#[derive(Debug, Clone, Serialize)]
pub struct PointSecants {
    pub rank: u32,
    /// secant size -> number of secant lines of that size through the point
    pub sizes: BTreeMap<usize, u64>,
    pub tangent_lines: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SecantReport {
    pub size: usize,
    pub kappa: i64,
    pub p0: u32,
    pub points: Vec<PointSecants>,
    /// Number of (p0+1)-secant lines.
    pub subline_secants: u64,
    /// Points off B lying on no secant line.
    pub off_secant_points: u64,
    pub line_spectrum: IntersectionSpectrum,
}

impl SecantReport {
    /// (p0+1)-secants through the point of the given rank.
    pub fn subline_secants_through(&self, rank: u32) -> u64 {
        self.points
            .iter()
            .find(|p| p.rank == rank)
            .map(|p| p.sizes.get(&(self.p0 as usize + 1)).copied().unwrap_or(0))
            .unwrap_or(0)
    }
}

pub fn secant_analysis(b: &PointSet, k: i64, p0: u32) -> Result<SecantReport> {
    let sp = b.space();
    check_k(sp, k)?;
    let idx = SecantIndex::build(b);
    Ok(secant_report(b, k, p0, &idx))
}

pub fn secant_report(b: &PointSet, k: i64, p0: u32, idx: &SecantIndex) -> SecantReport {
    let sp = b.space();
    let through = idx.lines_through_a_point();
    let points: Vec<PointSecants> = (0..b.len())
        .map(|i| {
            let mut sizes = BTreeMap::new();
            for g in idx.groups(i) {
                *sizes.entry(g.len() + 1).or_default() += 1;
            }
            PointSecants { rank: b.ranks()[i], sizes, tangent_lines: through - idx.groups(i).len() as u64 }
        })
        .collect();
    let subline_secants = idx.secant_lines().iter().filter(|l| l.len() == p0 as usize + 1).count() as u64;
    let off_secant_points = off_secant_points(b, idx).len() as u64;
    let qk = (sp.q() as i64).pow(k as u32);
    SecantReport {
        size: b.len(),
        kappa: b.len() as i64 - qk,
        p0,
        points,
        subline_secants,
        off_secant_points,
        line_spectrum: idx.line_spectrum(),
    }
}

/// Ranks of points off B lying on no secant line, in increasing order.
pub fn off_secant_points(b: &PointSet, idx: &SecantIndex) -> Vec<u32> {
    let sp = b.space();
    let mut on_secant = vec![false; sp.num_points() as usize];
    for l in idx.secant_lines() {
        let line = sp.line_through(&sp.unrank(l[0]), &sp.unrank(l[1]));
        for v in sp.subspace_points(&line) {
            on_secant[sp.rank_of(&v) as usize] = true;
        }
    }
    (0..sp.num_points()).filter(|&r| !on_secant[r as usize] && !b.contains_rank(r)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockingReport {
    pub size: usize,
    pub k: i64,
    pub is_blocking: bool,
    pub is_small: bool,
    pub exponent: Option<u32>,
    pub is_minimal: Option<bool>,
    pub is_redei: bool,
    pub is_trivial: Option<bool>,
    pub uncovered: Option<Vec<Vec<u32>>>,
    pub removable: Option<u32>,
    pub redei_hyperplane: Option<Vec<Vec<u32>>>,
}

pub fn analyze(b: &PointSet, k: i64) -> Result<BlockingReport> {
    let blocking = is_k_blocking(b, k)?;
    let redei = is_redei(b, k)?;
    let (exp, minimal, removable, trivial) = if blocking.blocking {
        let m = is_minimal(b, k, MinimalityMethod::Direct)?;
        (Some(exponent(b, k)?), Some(m.minimal), m.removable, Some(is_trivial(b, k)?))
    } else {
        (None, None, None, None)
    };
    Ok(BlockingReport {
        size: b.len(),
        k,
        is_blocking: blocking.blocking,
        is_small: is_small(b, k),
        exponent: exp,
        is_minimal: minimal,
        is_redei: redei.redei,
        is_trivial: trivial,
        uncovered: blocking.witness.map(|s| s.basis().to_vec()),
        removable,
        redei_hyperplane: redei.hyperplane.map(|s| s.basis().to_vec()),
    })
}
