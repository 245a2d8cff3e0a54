//! Recovering the F_{p0}-linear structure of a blocking set from its
//! (p0+1)-secants through one point.
//!
//! Fix a point P of B on a (p0+1)-secant and a point x of S(P). Every
//! (p0+1)-secant L through P whose trace is a subline has a unique
//! transversal line through x; W is the span of these lines. For a linear
//! small minimal k-blocking set, W has dimension hk and B(W) = B.

use rayon::prelude::*;
use serde::Serialize;

use crate::blockingset::{self, SecantIndex};
use crate::bounds;
use crate::error::{Error, Result};
use crate::fieldreduction::SpreadContext;
use crate::projspace::{PointSet, ProjSpace, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointPolicy {
    First,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ImageRelation {
    Equal,
    ProperSubset,
    Overflow,
    Mismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Success,
    DimTooSmall,
    DimTooLarge,
    ImageProperSubset,
    ImageOverflow,
    ImageMismatch,
}

/// Transversal lines through x for the (p0+1)-secants through P.
#[derive(Debug, Clone)]
pub struct TransversalSpan {
    pub p: u32,
    pub x: u32,
    /// B-point ranks of each secant used, in order
    pub secants_used: Vec<Vec<u32>>,
    /// secants whose trace is not a subline
    pub skipped: Vec<Vec<u32>>,
    pub transversals: Vec<Subspace>,
    pub w: Subspace,
}

/// Computes the transversal span at P (big rank) through x (small rank).
pub fn transversal_span(ctx: &SpreadContext, b: &PointSet, idx: &SecantIndex, p: u32, x: u32) -> Result<TransversalSpan> {
    let i = idx.index_of(p).ok_or_else(|| Error::BadParams("P is not a point of B".into()))?;
    if ctx.element_of(x) != p {
        return Err(Error::XNotOnElement);
    }
    let small = ctx.small();
    let xp = small.point_at(x);
    let p0 = ctx.p0() as usize;
    let secants: Vec<Vec<u32>> = idx
        .groups(i)
        .iter()
        .filter(|g| g.len() == p0)
        .map(|g| {
            let mut l = g.clone();
            l.push(p);
            l.sort_unstable();
            l
        })
        .collect();
    let results: Vec<Result<Subspace>> = secants
        .par_iter()
        .map(|l| ctx.transversal_line(&PointSet::from_ranks(b.space().clone(), l.iter().copied()), &xp))
        .collect();
    let mut secants_used = Vec::new();
    let mut skipped = Vec::new();
    let mut transversals = Vec::new();
    for (l, r) in secants.into_iter().zip(results) {
        match r {
            Ok(line) => {
                secants_used.push(l);
                transversals.push(line);
            }
            Err(Error::NotASubline) => skipped.push(l),
            Err(e) => return Err(e),
        }
    }
    let mut rows = vec![xp.coords().to_vec()];
    for t in &transversals {
        rows.extend(t.basis().iter().cloned());
    }
    let w = small.subspace_from_rows(rows)?;
    Ok(TransversalSpan { p, x, secants_used, skipped, transversals, w })
}

#[derive(Debug, Clone, Serialize)]
pub struct ReconstructionResult {
    pub p: u32,
    pub x: u32,
    pub secants_used: Vec<Vec<u32>>,
    pub skipped: Vec<Vec<u32>>,
    pub transversals: Vec<Vec<Vec<u32>>>,
    pub w: Vec<Vec<u32>>,
    pub dim_w: i64,
    pub expected_dim: i64,
    pub image_size: usize,
    pub image: ImageRelation,
    pub image_equal: bool,
    pub status: Status,
    /// (p0+1)-secants through P and the secant-count bound that applies, as an exact string.
    pub secant_count: usize,
    pub secant_bound: String,
}

impl ReconstructionResult {
    pub fn success(&self) -> bool {
        self.status == Status::Success
    }
}

fn relation(image: &[u32], b: &PointSet) -> ImageRelation {
    let inside = image.iter().all(|&r| b.contains_rank(r));
    if inside && image.len() == b.len() {
        ImageRelation::Equal
    } else if inside {
        ImageRelation::ProperSubset
    } else if b.ranks().iter().all(|r| image.binary_search(r).is_ok()) {
        ImageRelation::Overflow
    } else {
        ImageRelation::Mismatch
    }
}

fn secant_bound(ctx: &SpreadContext, k: i64) -> bounds::Q {
    let (p0, h) = (ctx.p0() as u64, ctx.h() as i64);
    if k == 1 {
        bounds::lemma1(p0, h)
    } else {
        bounds::aantalsecanten(p0, h, k)
    }
}

/// Points of B lying on at least one (p0+1)-secant, in rank order.
pub fn admissible_points(idx: &SecantIndex, p0: u32) -> Vec<u32> {
    (0..idx.point_ranks().len())
        .filter(|&i| idx.groups(i).iter().any(|g| g.len() == p0 as usize))
        .map(|i| idx.point_ranks()[i])
        .collect()
}

pub fn reconstruct(b: &PointSet, k: i64, p0: u32, policy: PointPolicy) -> Result<Vec<ReconstructionResult>> {
    let ctx = context_for(b.space(), p0)?;
    reconstruct_with(&ctx, b, k, policy)
}

/// Spread context for the subfield of order p0.
pub fn context_for(sp: &ProjSpace, p0: u32) -> Result<SpreadContext> {
    let h = blockingset::subfield_index(sp, p0)?;
    let e = sp.field().degree() / h as u32;
    SpreadContext::new(sp.clone(), e)
}

pub fn reconstruct_with(ctx: &SpreadContext, b: &PointSet, k: i64, policy: PointPolicy) -> Result<Vec<ReconstructionResult>> {
    if b.space() != ctx.big() {
        return Err(Error::DimensionMismatch("point set is not in the context's big space".into()));
    }
    let expected_dim = ctx.h() as i64 * k;
    if k < 1 || expected_dim > ctx.small().dim() as i64 {
        return Err(Error::BadParams(format!("hk = {expected_dim} exceeds the small space dimension")));
    }
    if !blockingset::is_k_blocking(b, k)?.blocking {
        return Err(Error::NotBlocking);
    }
    let idx = SecantIndex::build(b);
    let candidates = admissible_points(&idx, ctx.p0());
    if candidates.is_empty() {
        return Err(Error::NoSublineSecant);
    }
    let chosen: Vec<u32> = match policy {
        PointPolicy::First => vec![candidates[0]],
        PointPolicy::All => candidates,
    };
    let bound = bounds::show(&secant_bound(ctx, k));
    chosen
        .into_iter()
        .map(|p| {
            let x = ctx.element_ranks(p)[0];
            let span = transversal_span(ctx, b, &idx, p, x)?;
            let image = ctx.linear_set_ranks(&span.w);
            let rel = relation(&image, b);
            let dim_w = span.w.dim();
            let status = if dim_w < expected_dim {
                Status::DimTooSmall
            } else if dim_w > expected_dim {
                Status::DimTooLarge
            } else {
                match rel {
                    ImageRelation::Equal => Status::Success,
                    ImageRelation::ProperSubset => Status::ImageProperSubset,
                    ImageRelation::Overflow => Status::ImageOverflow,
                    ImageRelation::Mismatch => Status::ImageMismatch,
                }
            };
            Ok(ReconstructionResult {
                p,
                x,
                secant_count: span.secants_used.len() + span.skipped.len(),
                secants_used: span.secants_used,
                skipped: span.skipped,
                transversals: span.transversals.iter().map(|t| t.basis().to_vec()).collect(),
                w: span.w.basis().to_vec(),
                dim_w,
                expected_dim,
                image_size: image.len(),
                image: rel,
                image_equal: rel == ImageRelation::Equal,
                status,
                secant_bound: bound.clone(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SpanLemmaReport {
    pub p: u32,
    pub x: u32,
    pub transversals: usize,
    pub pairs_checked: usize,
    /// index pairs (i, j) into the transversal list with B(<l_i, l_j>) not inside B
    pub failing: Vec<(usize, usize)>,
}

/// Checks B(<l_i, l_j>) ⊆ B for every pair of transversals through x.
pub fn check_span_lemma(ctx: &SpreadContext, b: &PointSet, k: i64, p: u32, x: u32) -> Result<SpanLemmaReport> {
    if k < 1 || ctx.h() as i64 * k > ctx.small().dim() as i64 {
        return Err(Error::BadParams("hk exceeds the small space dimension".into()));
    }
    if !blockingset::is_k_blocking(b, k)?.blocking {
        return Err(Error::NotBlocking);
    }
    let idx = SecantIndex::build(b);
    if admissible_points(&idx, ctx.p0()).is_empty() {
        return Err(Error::NoSublineSecant);
    }
    let span = transversal_span(ctx, b, &idx, p, x)?;
    let t = &span.transversals;
    let pairs: Vec<(usize, usize)> = (0..t.len()).flat_map(|i| (i + 1..t.len()).map(move |j| (i, j))).collect();
    let small = ctx.small();
    let failing: Vec<(usize, usize)> = pairs
        .par_iter()
        .copied()
        .filter(|&(i, j)| {
            let plane = small.span(&[&t[i], &t[j]]).expect("same space");
            !ctx.linear_set_ranks(&plane).iter().all(|&r| b.contains_rank(r))
        })
        .collect();
    Ok(SpanLemmaReport { p, x, transversals: t.len(), pairs_checked: pairs.len(), failing })
}

#[derive(Debug, Clone, Serialize)]
pub struct SecantCountReport {
    pub k: i64,
    pub p0: u32,
    pub bound: String,
    /// which statement the bound comes from
    pub source: &'static str,
    pub hypotheses_met: bool,
    pub hypotheses: Vec<String>,
    pub points_checked: usize,
    pub min_observed: Option<u64>,
    /// (rank, count) for points below the bound
    pub violations: Vec<(u32, u64)>,
}

/// Compares each point's (p0+1)-secant count against the applicable lower bound.
pub fn secant_count_bounds(b: &PointSet, k: i64, p0: u32) -> Result<SecantCountReport> {
    let sp = b.space();
    let h = blockingset::subfield_index(sp, p0)?;
    let idx = SecantIndex::build(b);
    let (bound, source) = if k == 1 {
        (bounds::lemma1(p0 as u64, h), "lemma1")
    } else {
        (bounds::aantalsecanten(p0 as u64, h, k), "aantalsecanten")
    };
    let mut hyps = Vec::new();
    if p0 < 7 {
        hyps.push(format!("p0 = {p0} < 7"));
    }
    let counts: Vec<(u32, u64)> = (0..b.len())
        .map(|i| (b.ranks()[i], idx.groups(i).iter().filter(|g| g.len() == p0 as usize).count() as u64))
        .filter(|&(_, c)| c > 0)
        .collect();
    let violations: Vec<(u32, u64)> =
        counts.iter().copied().filter(|&(_, c)| bounds::int(c as i64) < bound).collect();
    Ok(SecantCountReport {
        k,
        p0,
        bound: bounds::show(&bound),
        source,
        hypotheses_met: hyps.is_empty(),
        hypotheses: hyps,
        points_checked: counts.len(),
        min_observed: counts.iter().map(|&(_, c)| c).min(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn baer() -> PointSet {
        let sp = ProjSpace::new(2, Field::conway(3, 2).unwrap()).unwrap();
        let ranks: Vec<u32> = sp.points().filter(|p| p.coords().iter().all(|&c| c < 3)).map(|p| sp.rank(&p)).collect();
        PointSet::from_ranks(sp, ranks)
    }

    #[test]
    fn baer_reconstructs() {
        let b = baer();
        let r = reconstruct(&b, 1, 3, PointPolicy::First).unwrap();
        assert_eq!(r.len(), 1);
        let r = &r[0];
        assert_eq!(r.dim_w, 2);
        assert!(r.image_equal);
        assert_eq!(r.secants_used.len(), 4);
        assert!(r.skipped.is_empty());
        assert!(r.success());
        let all = reconstruct(&b, 1, 3, PointPolicy::All).unwrap();
        assert_eq!(all.len(), 13);
        assert!(all.iter().all(|r| r.success()));
    }

    #[test]
    fn trivial_line_has_no_subline_secant() {
        let sp = ProjSpace::new(2, Field::conway(3, 2).unwrap()).unwrap();
        let l = sp.subspaces(1).unwrap().next().unwrap();
        let b = PointSet::from_ranks(sp.clone(), sp.subspace_point_ranks(&l));
        assert_eq!(reconstruct(&b, 1, 3, PointPolicy::First).unwrap_err(), Error::NoSublineSecant);
    }

    #[test]
    fn bad_params_and_not_blocking() {
        let b = baer();
        assert!(matches!(reconstruct(&b, 1, 2, PointPolicy::First), Err(Error::BadParams(_))));
        let less = b.without_rank(b.ranks()[0]);
        assert_eq!(reconstruct(&less, 1, 3, PointPolicy::First).unwrap_err(), Error::NotBlocking);
    }

    #[test]
    fn span_lemma_on_baer() {
        let b = baer();
        let ctx = context_for(b.space(), 3).unwrap();
        let p = b.ranks()[0];
        let x = ctx.element_ranks(p)[0];
        let rep = check_span_lemma(&ctx, &b, 1, p, x).unwrap();
        assert_eq!(rep.pairs_checked, 6);
        assert!(rep.failing.is_empty());
    }

    #[test]
    fn secant_counts_outside_hypotheses_still_reported() {
        let rep = secant_count_bounds(&baer(), 1, 3).unwrap();
        assert!(!rep.hypotheses_met);
        assert_eq!(rep.min_observed, Some(4));
        assert_eq!(rep.points_checked, 13);
    }
}
