//! Field reduction: PG(n, p0^h) read over the subfield GF(p0) as
//! PG(h(n+1)-1, p0), with its Desarguesian spread.
//!
//! A big-field element `a` has coordinates `(c_0, ..., c_{h-1})` over GF(p0)
//! with `a = sum c_j alpha^j`, where `alpha` is the root of the big field's
//! modulus. A big vector becomes a small vector by writing these
//! coordinates block after block.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Subfield};
use crate::matrix::{self, Row};
use crate::projspace::{PointSet, ProjPoint, ProjSpace, Subspace};

pub struct SpreadContext {
    big: ProjSpace,
    small: ProjSpace,
    sub: Subfield,
    h: usize,
    /// small-field element -> the same element inside the big field
    embed: Vec<u32>,
    /// tuple index `sum c_j p0^j` -> big-field element
    to_big: Vec<u32>,
    /// big-field element -> tuple index
    from_big: Vec<u32>,
    /// small point rank -> big point rank
    small_to_big: Vec<u32>,
    /// CSR layout of the spread: element of big rank `r` is `elem_points[elem_start[r]..elem_start[r+1]]`
    elem_start: Vec<u32>,
    elem_points: Vec<u32>,
}

impl std::fmt::Debug for SpreadContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SpreadContext({:?} -> {:?})", self.big, self.small)
    }
}

impl SpreadContext {
    /// Context for `big` over its subfield of degree `e` over the prime field.
    pub fn new(big: ProjSpace, e: u32) -> Result<SpreadContext> {
        let bf = big.field().clone();
        let sub = bf.subfield(e)?;
        let h = sub.index_in(&bf) as usize;
        let kf = Field::conway(bf.characteristic(), e)?;
        let small_dim = h * (big.dim() + 1) - 1;
        let small = ProjSpace::new(small_dim, kf.clone())?;
        let embed = embedding(&bf, &kf, &sub)?;

        let p0 = sub.p0 as usize;
        let alpha = if bf.degree() == 1 { 1 } else { bf.characteristic() };
        let alpha_pows: Vec<u32> = (0..h).map(|j| bf.pow(alpha, j as u64)).collect();
        let q = bf.order() as usize;
        let mut to_big = vec![0u32; q];
        let mut from_big = vec![u32::MAX; q];
        for (idx, slot) in to_big.iter_mut().enumerate() {
            let mut rest = idx;
            let mut acc = 0u32;
            for ap in &alpha_pows {
                let c = embed[rest % p0];
                rest /= p0;
                acc = bf.add(acc, bf.mul(c, *ap));
            }
            *slot = acc;
            if from_big[acc as usize] != u32::MAX {
                return Err(Error::BadModulus("powers of the modulus root are not a subfield basis".into()));
            }
            from_big[acc as usize] = idx as u32;
        }

        let mut ctx = SpreadContext {
            big,
            small,
            sub,
            h,
            embed,
            to_big,
            from_big,
            small_to_big: Vec::new(),
            elem_start: Vec::new(),
            elem_points: Vec::new(),
        };
        ctx.build_cache();
        Ok(ctx)
    }

    fn build_cache(&mut self) {
        let ns = self.small.num_points();
        let small_to_big: Vec<u32> = (0..ns)
            .map(|r| {
                let w = self.small.unrank(r);
                let mut v = self.blow_down_vector(&w);
                self.big.rank_vector(&mut v).expect("nonzero")
            })
            .collect();
        let nb = self.big.num_points() as usize;
        let mut start = vec![0u32; nb + 1];
        for &b in &small_to_big {
            start[b as usize + 1] += 1;
        }
        for i in 0..nb {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut points = vec![0u32; ns as usize];
        // small ranks are visited in increasing order, so each element list comes out sorted
        for (r, &b) in small_to_big.iter().enumerate() {
            points[fill[b as usize] as usize] = r as u32;
            fill[b as usize] += 1;
        }
        self.small_to_big = small_to_big;
        self.elem_start = start;
        self.elem_points = points;
    }

    pub fn big(&self) -> &ProjSpace {
        &self.big
    }
    pub fn small(&self) -> &ProjSpace {
        &self.small
    }
    pub fn subfield(&self) -> Subfield {
        self.sub
    }
    pub fn h(&self) -> usize {
        self.h
    }
    pub fn p0(&self) -> u32 {
        self.sub.p0
    }
    pub fn big_field(&self) -> &Arc<Field> {
        self.big.field()
    }
    pub fn small_field(&self) -> &Arc<Field> {
        self.small.field()
    }

    /// The small-field element `c` as an element of the big field.
    pub fn embed(&self, c: u32) -> u32 {
        self.embed[c as usize]
    }

    /// Coordinates of a big-field element over the subfield basis.
    pub fn coordinates(&self, a: u32) -> Vec<u32> {
        let p0 = self.sub.p0;
        let mut idx = self.from_big[a as usize];
        (0..self.h)
            .map(|_| {
                let c = idx % p0;
                idx /= p0;
                c
            })
            .collect()
    }

    pub fn blow_up_vector(&self, v: &[u32]) -> Row {
        let mut out = Vec::with_capacity(v.len() * self.h);
        for &a in v {
            out.extend(self.coordinates(a));
        }
        out
    }

    pub fn blow_down_vector(&self, w: &[u32]) -> Row {
        let p0 = self.sub.p0;
        w.chunks(self.h)
            .map(|block| {
                let idx = block.iter().rev().fold(0u32, |acc, &c| acc * p0 + c);
                self.to_big[idx as usize]
            })
            .collect()
    }

    /// Big point rank of the spread element containing a small point.
    #[inline]
    pub fn element_of(&self, small_rank: u32) -> u32 {
        self.small_to_big[small_rank as usize]
    }

    /// Sorted small ranks of S(P), P given by big rank.
    pub fn element_ranks(&self, big_rank: u32) -> &[u32] {
        let a = self.elem_start[big_rank as usize] as usize;
        let b = self.elem_start[big_rank as usize + 1] as usize;
        &self.elem_points[a..b]
    }

    /// S(P) as a subspace of the small space.
    pub fn spread_element(&self, p: &ProjPoint) -> Result<Subspace> {
        if p.coords().len() != self.big.dim() + 1 {
            return Err(Error::DimensionMismatch(format!("expected a point of {:?}", self.big)));
        }
        Ok(self.blow_up_rows(&[p.coords().to_vec()]))
    }

    fn blow_up_rows(&self, rows: &[Row]) -> Subspace {
        let bf = self.big.field();
        let alpha = if bf.degree() == 1 { 1 } else { bf.characteristic() };
        let mut out = Vec::with_capacity(rows.len() * self.h);
        for v in rows {
            let mut cur = v.clone();
            for _ in 0..self.h {
                out.push(self.blow_up_vector(&cur));
                matrix::scale(bf, &mut cur, alpha);
            }
        }
        self.small.subspace_from_rows(out).expect("small dimension")
    }

    /// S(H): the small subspace covered by the spread elements of the points of H.
    pub fn subspace_blow_up(&self, s: &Subspace) -> Subspace {
        self.blow_up_rows(s.basis())
    }

    /// Sorted big ranks of B(pi).
    pub fn linear_set_ranks(&self, pi: &Subspace) -> Vec<u32> {
        let mut out: Vec<u32> = self.small.subspace_points(pi).map(|w| self.element_of(self.small.rank_of(&w))).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// B(pi): big points whose spread element meets pi.
    pub fn linear_set_of(&self, pi: &Subspace) -> PointSet {
        PointSet::from_ranks(self.big.clone(), self.linear_set_ranks(pi))
    }

    /// The unique small line through `x` whose linear set is the given subline.
    pub fn transversal_line(&self, subline: &PointSet, x: &ProjPoint) -> Result<Subspace> {
        if subline.space() != &self.big || x.coords().len() != self.small.dim() + 1 {
            return Err(Error::DimensionMismatch("subline and x must live on the two sides of this context".into()));
        }
        if subline.len() != self.p0() as usize + 1 {
            return Err(Error::NotASubline);
        }
        let xr = self.small.rank(x);
        let p = self.element_of(xr);
        if !subline.contains_rank(p) {
            return Err(Error::XNotOnElement);
        }
        let other = *subline.ranks().iter().find(|&&r| r != p).expect("at least two points");
        let mut found: Option<Subspace> = None;
        for &y in self.element_ranks(other) {
            let line = self.small.line_through(x.coords(), &self.small.unrank(y));
            let ok = self.small.subspace_points(&line).all(|w| subline.contains_rank(self.element_of(self.small.rank_of(&w))));
            if ok {
                // p0+1 points on p0+1 distinct elements, all inside the subline
                assert!(found.is_none(), "two transversal lines through one point");
                found = Some(line);
            }
        }
        found.ok_or(Error::NotASubline)
    }

    /// Writes a big point set as the union of its spread elements.
    pub fn blow_up_point_set(&self, b: &PointSet) -> PointSet {
        let ranks = b.ranks().iter().flat_map(|&r| self.element_ranks(r).iter().copied());
        PointSet::from_ranks(self.small.clone(), ranks)
    }
}

/// Image of the small field GF(p^e) inside the big field: maps each small
/// encoding to its big encoding, via a root of the small field's modulus.
fn embedding(bf: &Field, kf: &Field, sub: &Subfield) -> Result<Vec<u32>> {
    let p = bf.characteristic();
    if sub.e == 1 {
        return Ok((0..p).collect());
    }
    let km = kf.modulus();
    let eval = |b: u32| km.iter().rev().fold(0u32, |acc, &c| bf.add(bf.mul(acc, b), c));
    let q = bf.order();
    let preferred = bf.exp(((q - 1) / (sub.p0 - 1)) as u64);
    let beta = if eval(preferred) == 0 {
        preferred
    } else {
        bf.subfield_elements(sub)?
            .into_iter()
            .find(|&b| eval(b) == 0)
            .ok_or_else(|| Error::BadModulus("no root of the subfield modulus".into()))?
    };
    Ok((0..kf.order())
        .map(|c| {
            let digits = kf.coefficients(c);
            digits.iter().rev().fold(0u32, |acc, &d| bf.add(bf.mul(acc, beta), d))
        })
        .collect())
}
