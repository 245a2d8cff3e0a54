//! Plain-text point-set and witness files, and JSON sidecars.
//!
//! Point file: a header line `p t n`, then one point per line as n+1
//! field elements in their integer encoding. Lines starting with `#` are
//! comments. Points are written normalized and in rank order.
//!
//! Witness file: `linset-witness 1`, then `p t e n`, then `rank r`, then r
//! rows of the small-side basis with entries in GF(p^e).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fieldreduction::SpreadContext;
use crate::linearset::{build_linear_set, LinearSetWitness};
use crate::projspace::{PointSet, ProjSpace};

pub const WITNESS_MAGIC: &str = "linset-witness 1";

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(lineno: usize, line: &str) -> Result<Vec<u32>> {
    line.split_whitespace()
        .map(|w| w.parse::<u32>().map_err(|_| Error::Parse(format!("line {lineno}: bad integer {w:?}"))))
        .collect()
}

fn space_for(p: u32, t: u32, n: u32) -> Result<ProjSpace> {
    if n == 0 {
        return Err(Error::Parse("dimension must be at least 1".into()));
    }
    ProjSpace::new(n as usize, Field::conway(p, t)?)
}

pub fn format_points(b: &PointSet) -> String {
    let sp = b.space();
    let f = sp.field();
    let mut out = format!("{} {} {}\n", f.characteristic(), f.degree(), sp.dim());
    for r in b.ranks() {
        let v: Vec<String> = sp.unrank(*r).iter().map(u32::to_string).collect();
        out.push_str(&v.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_points(text: &str) -> Result<PointSet> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::Parse("missing header `p t n`".into()))?;
    let h = numbers(hl, header)?;
    let [p, t, n] = h[..] else {
        return Err(Error::Parse(format!("line {hl}: header must be `p t n`")));
    };
    let sp = space_for(p, t, n)?;
    let q = sp.q();
    let mut ranks = Vec::new();
    for (ln, line) in lines {
        let mut v = numbers(ln, line)?;
        if v.len() != sp.dim() + 1 {
            return Err(Error::Parse(format!("line {ln}: expected {} coordinates", sp.dim() + 1)));
        }
        if v.iter().any(|&c| c >= q) {
            return Err(Error::Parse(format!("line {ln}: coordinate not in GF({q})")));
        }
        let r = sp.rank_vector(&mut v).ok_or_else(|| Error::Parse(format!("line {ln}: zero vector")))?;
        ranks.push(r);
    }
    let count = ranks.len();
    let b = PointSet::from_ranks(sp, ranks);
    if b.len() != count {
        return Err(Error::Parse("duplicate point".into()));
    }
    Ok(b)
}

pub fn read_points(path: &Path) -> Result<PointSet> {
    parse_points(&std::fs::read_to_string(path)?)
}

pub fn write_points(path: &Path, b: &PointSet) -> Result<()> {
    std::fs::write(path, format_points(b))?;
    Ok(())
}

pub fn format_witness(ctx: &SpreadContext, w: &LinearSetWitness) -> String {
    let bf = ctx.big_field();
    let mut out = format!("{WITNESS_MAGIC}\n");
    let _ = writeln!(out, "{} {} {} {}", bf.characteristic(), bf.degree(), ctx.small_field().degree(), ctx.big().dim());
    let _ = writeln!(out, "rank {}", w.rank);
    for row in w.pi.basis() {
        let v: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&v.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_witness(text: &str) -> Result<(SpreadContext, LinearSetWitness)> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, WITNESS_MAGIC)) => {}
        _ => return Err(Error::Parse(format!("missing `{WITNESS_MAGIC}` header"))),
    }
    let (pl, params) = lines.next().ok_or_else(|| Error::Parse("missing `p t e n` line".into()))?;
    let [p, t, e, n] = numbers(pl, params)?[..] else {
        return Err(Error::Parse(format!("line {pl}: expected `p t e n`")));
    };
    let ctx = SpreadContext::new(space_for(p, t, n)?, e)?;
    let (rl, rank_line) = lines.next().ok_or_else(|| Error::Parse("missing `rank r` line".into()))?;
    let r: usize = rank_line
        .strip_prefix("rank ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("line {rl}: expected `rank r`")))?;
    let len = ctx.small().dim() + 1;
    let p0 = ctx.p0();
    let mut rows = Vec::with_capacity(r);
    for (ln, line) in lines {
        let v = numbers(ln, line)?;
        if v.len() != len || v.iter().any(|&c| c >= p0) {
            return Err(Error::Parse(format!("line {ln}: expected {len} entries in GF({p0})")));
        }
        rows.push(v);
    }
    let pi = ctx.small().subspace_from_rows(rows)?;
    if pi.rank() != r {
        return Err(Error::Parse(format!("declared rank {r}, rows have rank {}", pi.rank())));
    }
    let w = build_linear_set(&ctx, &pi);
    Ok((ctx, w))
}

pub fn read_witness(path: &Path) -> Result<(SpreadContext, LinearSetWitness)> {
    parse_witness(&std::fs::read_to_string(path)?)
}

pub fn write_witness(path: &Path, ctx: &SpreadContext, w: &LinearSetWitness) -> Result<()> {
    std::fs::write(path, format_witness(ctx, w))?;
    Ok(())
}

/// `foo.pts` -> `foo.pts.meta.json`
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn write_sidecar<T: Serialize>(path: &Path, meta: &T) -> Result<()> {
    std::fs::write(sidecar_path(path), to_json(meta))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linearset::{build_family, FamilySpec};

    #[test]
    fn points_round_trip() {
        let sp = ProjSpace::new(2, Field::conway(3, 2).unwrap()).unwrap();
        let b = PointSet::from_ranks(sp, [0, 5, 17, 90]);
        let text = format_points(&b);
        assert!(text.starts_with("3 2 2\n"));
        assert_eq!(parse_points(&text).unwrap(), b);
    }

    #[test]
    fn points_are_normalized_on_read() {
        let b = parse_points("# a comment\n3 1 2\n2 2 0\n0 0 1\n").unwrap();
        assert_eq!(format_points(&b), "3 1 2\n0 0 1\n1 1 0\n");
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "# only comments\n", "3 2\n", "3 2 2\n1 0\n", "3 2 2\n0 0 0\n", "3 2 2\n9 0 0\n", "3 2 2\n1 0 0\n2 0 0\n", "3 2 x\n"] {
            assert!(matches!(parse_points(bad), Err(Error::Parse(_))), "{bad:?}");
        }
        assert!(matches!(parse_points("4 1 2\n"), Err(Error::NotPrime(4))));
    }

    #[test]
    fn witness_round_trip() {
        let ctx = SpreadContext::new(ProjSpace::new(2, Field::conway(3, 2).unwrap()).unwrap(), 1).unwrap();
        let w = build_family(&ctx, FamilySpec::Subgeometry { m: 2 }).unwrap();
        let text = format_witness(&ctx, &w);
        assert!(text.starts_with("linset-witness 1\n3 2 1 2\nrank 3\n"));
        let (_, back) = parse_witness(&text).unwrap();
        assert_eq!(back, w);
        assert!(matches!(parse_witness("linset-witness 1\n3 2 1 2\nrank 2\n1 0 0 0 0 0\n"), Err(Error::Parse(_))));
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(sidecar_path(Path::new("a/b.pts")), PathBuf::from("a/b.pts.meta.json"));
    }
}
