//! Linear sets: constructors, known families, the linearity decision and
//! subline tools.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blockingset::SecantIndex;
use crate::error::{Error, Result};
use crate::fieldreduction::SpreadContext;
use crate::matrix::Row;
use crate::projspace::{PointSet, Subspace};
use crate::reconstruct;

/// Exhaustive linearity search refuses small spaces larger than this.
pub const EXHAUSTIVE_LIMIT: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSetWitness {
    pub pi: Subspace,
    pub points: PointSet,
    pub rank: usize,
}

pub fn build_linear_set(ctx: &SpreadContext, pi: &Subspace) -> LinearSetWitness {
    LinearSetWitness { pi: pi.clone(), points: ctx.linear_set_of(pi), rank: pi.rank() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    /// canonical PG(m, p0) in the first m+1 coordinates
    Subgeometry { m: usize },
    /// `{(x_1..x_k, Tr(x_1)+...+Tr(x_k), l) : x_i in GF(q), l in GF(p0)}` in PG(k+1, q)
    RedeiTrace { k: usize },
    /// join of S(V), V spanned by the first `vertex_dim + 1` coordinate points,
    /// with a canonical PG(base_m, p0) in the following coordinates
    Cone { vertex_dim: usize, base_m: usize },
    /// span of random small vectors, retried until the rank is r
    RandomRankR { r: usize, seed: u64 },
}

fn unit(len: usize, at: usize) -> Row {
    let mut v = vec![0; len];
    v[at] = 1;
    v
}

pub fn build_family(ctx: &SpreadContext, spec: FamilySpec) -> Result<LinearSetWitness> {
    let n = ctx.big().dim();
    let h = ctx.h();
    let big_len = n + 1;
    let small = ctx.small();
    let small_len = small.dim() + 1;
    let rows: Vec<Row> = match spec {
        FamilySpec::Subgeometry { m } => {
            if m < 1 || m > n {
                return Err(Error::BadParams(format!("subgeometry dimension {m} not in 1..={n}")));
            }
            (0..=m).map(|i| unit(small_len, h * i)).collect()
        }
        FamilySpec::RedeiTrace { k } => {
            if k < 1 || n != k + 1 {
                return Err(Error::BadParams(format!("trace family needs n = k + 1, got n = {n}, k = {k}")));
            }
            let bf = ctx.big_field();
            let sub = ctx.subfield();
            let mut rows = Vec::with_capacity(h * k + 1);
            for i in 0..k {
                for j in 0..h {
                    let a = bf.exp(j as u64);
                    let mut v = vec![0; big_len];
                    v[i] = a;
                    v[k] = bf.trace(a, &sub);
                    rows.push(ctx.blow_up_vector(&v));
                }
            }
            rows.push(ctx.blow_up_vector(&unit(big_len, k + 1)));
            rows
        }
        FamilySpec::Cone { vertex_dim, base_m } => {
            if base_m < 1 || vertex_dim + base_m + 2 > big_len {
                return Err(Error::BadParams(format!("cone with vertex dimension {vertex_dim} and base dimension {base_m} does not fit in PG({n}, q)")));
            }
            let mut rows: Vec<Row> = Vec::new();
            for i in 0..=vertex_dim {
                let v = ctx.big().subspace_from_rows(vec![unit(big_len, i)])?;
                rows.extend(ctx.subspace_blow_up(&v).basis().iter().cloned());
            }
            rows.extend((0..=base_m).map(|i| unit(small_len, h * (vertex_dim + 1 + i))));
            rows
        }
        FamilySpec::RandomRankR { r, seed } => {
            if r == 0 || r > small_len {
                return Err(Error::BadParams(format!("rank {r} not in 1..={small_len}")));
            }
            let p0 = ctx.p0();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            loop {
                let rows: Vec<Row> = (0..r).map(|_| (0..small_len).map(|_| rng.random_range(0..p0)).collect()).collect();
                if small.subspace_from_rows(rows.clone())?.rank() == r {
                    break rows;
                }
            }
        }
    };
    let pi = small.subspace_from_rows(rows)?;
    Ok(build_linear_set(ctx, &pi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    ReconstructFirst,
    Exhaustive,
}

/// Record of a search that found no witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotLinearCertificate {
    pub p0: u32,
    /// small rank of the fixed point of S(P) every candidate passes through
    pub x: u32,
    pub rank_cap: usize,
    /// small points lying on spread elements of B
    pub allowed_points: usize,
    /// distinct candidate subspaces examined, by rank 1, 2, ...
    pub examined: Vec<usize>,
}

#[derive(Debug, Clone)]
pub enum Linearity {
    Linear(LinearSetWitness),
    NotLinear(NotLinearCertificate),
}

impl Linearity {
    pub fn is_linear(&self) -> bool {
        matches!(self, Linearity::Linear(_))
    }

    pub fn witness(&self) -> Option<&LinearSetWitness> {
        match self {
            Linearity::Linear(w) => Some(w),
            Linearity::NotLinear(_) => None,
        }
    }
}

/// Decides whether B = B(U) for some GF(p0)-subspace U.
///
/// With `k` given the exhaustive search stops at vector rank hk+1.
pub fn is_linear(ctx: &SpreadContext, b: &PointSet, strategy: Strategy, k: Option<i64>) -> Result<Linearity> {
    if b.is_empty() {
        return Err(Error::EmptyInput);
    }
    if b.space() != ctx.big() {
        return Err(Error::DimensionMismatch("point set is not in the context's big space".into()));
    }
    if b.len() == 1 {
        let x = ctx.element_ranks(b.ranks()[0])[0];
        let pi = ctx.small().point_subspace(&ctx.small().point_at(x));
        return Ok(Linearity::Linear(build_linear_set(ctx, &pi)));
    }
    if strategy == Strategy::ReconstructFirst {
        if let Some(w) = via_transversals(ctx, b)? {
            return Ok(Linearity::Linear(w));
        }
    }
    exhaustive(ctx, b, k)
}

fn via_transversals(ctx: &SpreadContext, b: &PointSet) -> Result<Option<LinearSetWitness>> {
    let idx = SecantIndex::build(b);
    let Some(&p) = reconstruct::admissible_points(&idx, ctx.p0()).first() else {
        return Ok(None);
    };
    let x = ctx.element_ranks(p)[0];
    let span = reconstruct::transversal_span(ctx, b, &idx, p, x)?;
    let w = build_linear_set(ctx, &span.w);
    Ok((w.points == *b).then_some(w))
}

fn exhaustive(ctx: &SpreadContext, b: &PointSet, k: Option<i64>) -> Result<Linearity> {
    let small = ctx.small();
    if small.num_points() > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge(format!(
            "exhaustive linearity search over {} small points (limit {EXHAUSTIVE_LIMIT})",
            small.num_points()
        )));
    }
    let allowed = ctx.blow_up_point_set(b);
    let full = small.dim() + 1;
    let rank_cap = match k {
        Some(k) if k >= 1 => (ctx.h() * k as usize + 1).min(full),
        _ => full,
    };
    let x = ctx.element_ranks(b.ranks()[0])[0];
    let mut level = vec![small.point_subspace(&small.point_at(x))];
    let mut examined = Vec::new();
    for r in 1..=rank_cap {
        examined.push(level.len());
        let hit = level.par_iter().find_first(|u| ctx.linear_set_ranks(u) == b.ranks());
        if let Some(u) = hit {
            return Ok(Linearity::Linear(build_linear_set(ctx, u)));
        }
        if r == rank_cap {
            break;
        }
        let next: Vec<Vec<Subspace>> = level
            .par_iter()
            .map(|u| {
                allowed
                    .ranks()
                    .iter()
                    .filter_map(|&y| {
                        let yv = small.unrank(y);
                        if small.contains_point(u, &yv) {
                            return None;
                        }
                        let mut rows = u.basis().to_vec();
                        rows.push(yv);
                        let s = small.subspace_from_rows(rows).expect("same space");
                        let ok = small.subspace_points(&s).all(|w| allowed.contains_rank(small.rank_of(&w)));
                        ok.then_some(s)
                    })
                    .collect()
            })
            .collect();
        let mut seen = HashSet::new();
        level = next.into_iter().flatten().filter(|s| seen.insert(s.clone())).collect();
        level.sort();
        if level.is_empty() {
            break;
        }
    }
    Ok(Linearity::NotLinear(NotLinearCertificate {
        p0: ctx.p0(),
        x,
        rank_cap,
        allowed_points: allowed.len(),
        examined,
    }))
}

/// Every GF(p0)-subline of a line of the big space, each once, as sorted big ranks.
///
/// For points a < b of the line and x the first point of S(a), the sublines
/// through a and b are the images of the small lines <x, y>, y in S(b). A
/// subline is emitted from the pair of its two smallest points.
pub fn enumerate_sublines(ctx: &SpreadContext, line: &Subspace) -> Result<Vec<Vec<u32>>> {
    let big = ctx.big();
    if line.dim() != 1 || line.basis()[0].len() != big.dim() + 1 {
        return Err(Error::DimensionMismatch("expected a line of the big space".into()));
    }
    let small = ctx.small();
    let pts = big.subspace_point_ranks(line);
    let pairs: Vec<(u32, u32)> =
        pts.iter().enumerate().flat_map(|(i, &a)| pts[i + 1..].iter().map(move |&b| (a, b))).collect();
    let out: Vec<Vec<Vec<u32>>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let x = small.unrank(ctx.element_ranks(a)[0]);
            ctx.element_ranks(b)
                .iter()
                .filter_map(|&y| {
                    let l = small.line_through(&x, &small.unrank(y));
                    let s = ctx.linear_set_ranks(&l);
                    (s[0] == a && s[1] == b).then_some(s)
                })
                .collect()
        })
        .collect();
    Ok(out.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct SublineMeetReport {
    pub rank: usize,
    pub p0: u32,
    pub allowed: Vec<usize>,
    pub lines_checked: usize,
    pub sublines_checked: u64,
    /// intersection size -> number of (line, subline) pairs
    pub sizes: BTreeMap<usize, u64>,
    /// (subline, intersection size) outside the allowed sizes
    pub violations: Vec<(Vec<u32>, usize)>,
}

impl SublineMeetReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Intersection sizes of S with every subline of every secant line of S.
pub fn subline_meet_check(ctx: &SpreadContext, s: &LinearSetWitness) -> Result<SublineMeetReport> {
    let big = ctx.big();
    let p0 = ctx.p0();
    let mut allowed: Vec<usize> = (0..=s.rank).collect();
    allowed.push(p0 as usize + 1);
    allowed.sort_unstable();
    allowed.dedup();
    let lines = SecantIndex::build(&s.points).secant_lines();
    let per_line: Vec<Result<(u64, BTreeMap<usize, u64>, Vec<(Vec<u32>, usize)>)>> = lines
        .par_iter()
        .map(|pts| {
            let line = big.line_through(&big.unrank(pts[0]), &big.unrank(pts[1]));
            let subs = enumerate_sublines(ctx, &line)?;
            let mut sizes = BTreeMap::new();
            let mut bad = Vec::new();
            for sub in &subs {
                let m = sub.iter().filter(|&&r| s.points.contains_rank(r)).count();
                *sizes.entry(m).or_insert(0) += 1;
                if allowed.binary_search(&m).is_err() {
                    bad.push((sub.clone(), m));
                }
            }
            Ok((subs.len() as u64, sizes, bad))
        })
        .collect();
    let mut report = SublineMeetReport {
        rank: s.rank,
        p0,
        allowed,
        lines_checked: lines.len(),
        sublines_checked: 0,
        sizes: BTreeMap::new(),
        violations: Vec::new(),
    };
    for r in per_line {
        let (c, sizes, bad) = r?;
        report.sublines_checked += c;
        for (m, v) in sizes {
            *report.sizes.entry(m).or_insert(0) += v;
        }
        report.violations.extend(bad);
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct SecantLinearityReport {
    pub k: i64,
    pub p0: u32,
    pub hypotheses_met: bool,
    pub hypotheses: Vec<String>,
    pub secants_checked: usize,
    /// (p0+1)-secant traces that are not sublines
    pub failing: Vec<Vec<u32>>,
}

impl SecantLinearityReport {
    pub fn holds(&self) -> bool {
        self.failing.is_empty()
    }
}

/// Decides for every (p0+1)-secant whether its trace on B is a subline.
pub fn secant_linearity_check(ctx: &SpreadContext, b: &PointSet, k: i64) -> Result<SecantLinearityReport> {
    let p0 = ctx.p0();
    let small = ctx.small();
    let secants: Vec<Vec<u32>> =
        SecantIndex::build(b).secant_lines().into_iter().filter(|l| l.len() == p0 as usize + 1).collect();
    let failing: Vec<Vec<u32>> = secants
        .par_iter()
        .filter_map(|l| {
            let trace = PointSet::from_ranks(b.space().clone(), l.iter().copied());
            let x = small.point_at(ctx.element_ranks(l[0])[0]);
            match ctx.transversal_line(&trace, &x) {
                Ok(_) => None,
                Err(_) => Some(l.clone()),
            }
        })
        .collect();
    let mut hyps = Vec::new();
    if p0 < 7 {
        hyps.push(format!("p0 = {p0} < 7"));
    }
    Ok(SecantLinearityReport {
        k,
        p0,
        hypotheses_met: hyps.is_empty(),
        hypotheses: hyps,
        secants_checked: secants.len(),
        failing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockingset;
    use crate::field::Field;
    use crate::projspace::ProjSpace;

    fn ctx(p: u32, t: u32, n: usize, e: u32) -> SpreadContext {
        SpreadContext::new(ProjSpace::new(n, Field::conway(p, t).unwrap()).unwrap(), e).unwrap()
    }

    fn baer_by_coords(sp: &ProjSpace) -> Vec<u32> {
        let mut r: Vec<u32> = sp.points().filter(|p| p.coords().iter().all(|&c| c < 3)).map(|p| sp.rank(&p)).collect();
        r.sort_unstable();
        r
    }

    #[test]
    fn subgeometry_is_the_coordinate_baer_subplane() {
        let c = ctx(3, 2, 2, 1);
        let w = build_family(&c, FamilySpec::Subgeometry { m: 2 }).unwrap();
        assert_eq!(w.rank, 3);
        assert_eq!(w.points.ranks(), &baer_by_coords(c.big())[..]);
    }

    #[test]
    fn small_constructions() {
        let c = ctx(3, 2, 2, 1);
        let sm = c.small();
        let line = sm.line_through(&sm.unrank(0), &sm.unrank(7));
        let w = build_linear_set(&c, &line);
        assert!(w.points.len() == 4 || w.points.len() == 1);
        let inside = c.spread_element(&c.big().point_at(5)).unwrap();
        assert_eq!(build_linear_set(&c, &inside).points.ranks(), &[5]);
    }

    #[test]
    fn linear_set_sizes_are_one_mod_p0() {
        let c = ctx(3, 2, 2, 1);
        for seed in 0..20 {
            for r in 1..=6 {
                let w = build_family(&c, FamilySpec::RandomRankR { r, seed }).unwrap();
                assert_eq!(w.points.len() % 3, 1, "rank {r} seed {seed}");
            }
        }
    }

    #[test]
    fn trace_family_is_redei_blocking() {
        let c = ctx(3, 2, 2, 1);
        let w = build_family(&c, FamilySpec::RedeiTrace { k: 1 }).unwrap();
        assert_eq!(w.rank, 3);
        assert_eq!(w.points.len(), 13);
        assert!(blockingset::is_k_blocking(&w.points, 1).unwrap().blocking);
        assert!(blockingset::is_redei(&w.points, 1).unwrap().redei);
    }

    #[test]
    fn cone_size() {
        let c = ctx(3, 2, 3, 1);
        let w = build_family(&c, FamilySpec::Cone { vertex_dim: 0, base_m: 2 }).unwrap();
        assert_eq!(w.rank, 5);
        assert_eq!(w.points.len(), 1 + 13 * 9);
    }

    #[test]
    fn family_parameter_errors() {
        let c = ctx(3, 2, 2, 1);
        assert!(matches!(build_family(&c, FamilySpec::RandomRankR { r: 0, seed: 1 }), Err(Error::BadParams(_))));
        assert!(matches!(build_family(&c, FamilySpec::RandomRankR { r: 7, seed: 1 }), Err(Error::BadParams(_))));
        assert!(matches!(build_family(&c, FamilySpec::RedeiTrace { k: 2 }), Err(Error::BadParams(_))));
        assert!(matches!(build_family(&c, FamilySpec::Cone { vertex_dim: 1, base_m: 2 }), Err(Error::BadParams(_))));
    }

    #[test]
    fn subline_counts() {
        // three distinct points lie in exactly one subline
        let c = ctx(3, 2, 1, 1);
        let l = c.big().whole();
        let subs = enumerate_sublines(&c, &l).unwrap();
        assert_eq!(subs.len(), 30);
        assert!(subs.iter().all(|s| s.len() == 4));
        let mut triples = HashSet::new();
        for s in &subs {
            for i in 0..4 {
                for j in i + 1..4 {
                    for k in j + 1..4 {
                        assert!(triples.insert((s[i], s[j], s[k])));
                    }
                }
            }
        }
        assert_eq!(triples.len(), 120);
        let whole = ctx(3, 1, 1, 1);
        assert_eq!(enumerate_sublines(&whole, &whole.big().whole()).unwrap().len(), 1);
    }

    #[test]
    fn baer_subline_meets() {
        let c = ctx(3, 2, 2, 1);
        let w = build_family(&c, FamilySpec::Subgeometry { m: 2 }).unwrap();
        let rep = subline_meet_check(&c, &w).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.lines_checked, 13);
        assert_eq!(rep.sublines_checked, 13 * 30);
        assert_eq!(rep.sizes.get(&4), Some(&13));
    }

    #[test]
    fn baer_is_linear_both_ways() {
        let c = ctx(3, 2, 2, 1);
        let b = PointSet::from_ranks(c.big().clone(), baer_by_coords(c.big()));
        for s in [Strategy::ReconstructFirst, Strategy::Exhaustive] {
            let w = is_linear(&c, &b, s, Some(1)).unwrap();
            let w = w.witness().unwrap();
            assert_eq!(w.rank, 3);
            assert_eq!(w.points, b);
        }
        let one = PointSet::from_ranks(c.big().clone(), [17]);
        assert_eq!(is_linear(&c, &one, Strategy::Exhaustive, None).unwrap().witness().unwrap().rank, 1);
    }

    #[test]
    fn random_points_are_not_linear() {
        let c = ctx(3, 2, 2, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut ranks = HashSet::new();
        while ranks.len() < 13 {
            ranks.insert(rng.random_range(0..c.big().num_points()));
        }
        let b = PointSet::from_ranks(c.big().clone(), ranks);
        let r = is_linear(&c, &b, Strategy::ReconstructFirst, None).unwrap();
        assert!(!r.is_linear());
    }

    #[test]
    fn exhaustive_refuses_large_spaces() {
        let c = ctx(7, 2, 2, 1);
        let b = PointSet::from_ranks(c.big().clone(), [0, 1]);
        assert!(matches!(is_linear(&c, &b, Strategy::Exhaustive, None), Err(Error::TooLarge(_))));
    }

    #[test]
    fn secant_linearity_on_baer_and_a_mutation() {
        let c = ctx(3, 2, 2, 1);
        let ranks = baer_by_coords(c.big());
        let b = PointSet::from_ranks(c.big().clone(), ranks.clone());
        let rep = secant_linearity_check(&c, &b, 1).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.secants_checked, 13);
        assert!(!rep.hypotheses_met);
        // move one point along a 4-secant to a point outside the subplane
        let sp = c.big();
        let l = sp.line_through(&sp.unrank(ranks[0]), &sp.unrank(ranks[1]));
        let on_line = b.ranks_in(&l);
        let outside = sp.subspace_point_ranks(&l).into_iter().find(|r| !b.contains_rank(*r)).unwrap();
        let moved = b.without_rank(on_line[3]).with_rank(outside);
        assert!(!secant_linearity_check(&c, &moved, 1).unwrap().holds());
    }
}
