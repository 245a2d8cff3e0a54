//! Instance-level checks of the quantitative lemmas, collected into a
//! deterministic JSON scorecard.
//!
//! Every bound is evaluated exactly. A check whose hypotheses fail on an
//! instance is still computed but reported as `not_applicable`; only checks
//! with all hypotheses met can be `violated`, and those carry a witness.

use std::collections::{BTreeSet, HashMap};
use std::path::{Path, PathBuf};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::blockingset::{self, SecantIndex};
use crate::bounds::{self, int, show, Q};
use crate::error::{Error, Result};
use crate::field::conway_table_version;
use crate::fieldreduction::SpreadContext;
use crate::io;
use crate::linearset::{self, FamilySpec, Linearity, Strategy};
use crate::matrix::{self, Row};
use crate::projspace::{PointSet, ProjSpace, Subspace};
use crate::reconstruct::{self, PointPolicy};

pub const SCHEMA_VERSION: u32 = 1;

/// Subline checks are skipped above this many (line, subline) pairs.
pub const SUBLINE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    GroottesIdentities,
    GrootteBound,
    SzonyiIv,
    GroottesGap,
    Rechte1modp,
    SziklaiI,
    SublineThm,
    Projection,
    Lemma6Nonsecant,
    Lemma1Secants,
    LargeCount,
    Aantalsecanten,
    Pplus1k,
    SpanLemma,
    Reconstruct,
    HypervlakkenI,
    Situatie,
    HandigI,
    HandigIv,
    EssSubset,
    DeclaredClaims,
}

impl LemmaId {
    pub const ALL: [LemmaId; 21] = [
        LemmaId::GroottesIdentities,
        LemmaId::GrootteBound,
        LemmaId::SzonyiIv,
        LemmaId::GroottesGap,
        LemmaId::Rechte1modp,
        LemmaId::SziklaiI,
        LemmaId::SublineThm,
        LemmaId::Projection,
        LemmaId::Lemma6Nonsecant,
        LemmaId::Lemma1Secants,
        LemmaId::LargeCount,
        LemmaId::Aantalsecanten,
        LemmaId::Pplus1k,
        LemmaId::SpanLemma,
        LemmaId::Reconstruct,
        LemmaId::HypervlakkenI,
        LemmaId::Situatie,
        LemmaId::HandigI,
        LemmaId::HandigIv,
        LemmaId::EssSubset,
        LemmaId::DeclaredClaims,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::GroottesIdentities => "groottes_identities",
            LemmaId::GrootteBound => "grootte_bound",
            LemmaId::SzonyiIv => "szonyi_iv",
            LemmaId::GroottesGap => "groottes_gap",
            LemmaId::Rechte1modp => "rechte1modp",
            LemmaId::SziklaiI => "sziklai_i",
            LemmaId::SublineThm => "subline_thm",
            LemmaId::Projection => "projection",
            LemmaId::Lemma6Nonsecant => "lemma6_nonsecant",
            LemmaId::Lemma1Secants => "lemma1_secants",
            LemmaId::LargeCount => "large_count",
            LemmaId::Aantalsecanten => "aantalsecanten",
            LemmaId::Pplus1k => "pplus1k",
            LemmaId::SpanLemma => "span_lemma",
            LemmaId::Reconstruct => "reconstruct",
            LemmaId::HypervlakkenI => "hypervlakken_i",
            LemmaId::Situatie => "situatie",
            LemmaId::HandigI => "handig_i",
            LemmaId::HandigIv => "handig_iv",
            LemmaId::EssSubset => "ess_subset",
            LemmaId::DeclaredClaims => "declared_claims",
        }
    }

    pub fn parse(s: &str) -> Option<LemmaId> {
        LemmaId::ALL.into_iter().find(|l| l.name() == s)
    }
}

/// Serializes as the lemma's snake_case name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaIdName(pub LemmaId);

impl Serialize for LemmaIdName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.0.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub met: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaCheck {
    pub instance: String,
    pub id: LemmaIdName,
    pub hypotheses_met: bool,
    pub hypotheses: Vec<Hypothesis>,
    /// hypotheses taken on faith, not checked on the instance
    pub assumed: Vec<String>,
    pub bound: Option<String>,
    /// bound recomputed from the proof's own inequality, when it differs
    pub sharp_bound: Option<String>,
    pub observed: Option<String>,
    pub verdict: Verdict,
    pub witness: Option<Value>,
    pub note: Option<String>,
}

impl LemmaCheck {
    fn new(instance: &str, id: LemmaId, hypotheses: Vec<Hypothesis>) -> LemmaCheck {
        LemmaCheck {
            instance: instance.to_string(),
            id: LemmaIdName(id),
            hypotheses_met: hypotheses.iter().all(|h| h.met),
            hypotheses,
            assumed: Vec::new(),
            bound: None,
            sharp_bound: None,
            observed: None,
            verdict: Verdict::NotApplicable,
            witness: None,
            note: None,
        }
    }

    /// Sets the verdict from the outcome; unmet hypotheses force not_applicable.
    fn decide(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        if !self.hypotheses_met {
            self.verdict = Verdict::NotApplicable;
            if !ok {
                self.note.get_or_insert_with(|| "bound fails outside the hypotheses".into());
                self.witness = Some(witness());
            }
        } else if ok {
            self.verdict = Verdict::Holds;
        } else {
            self.verdict = Verdict::Violated;
            self.witness = Some(witness());
        }
    }

    fn skip(mut self, note: impl Into<String>) -> LemmaCheck {
        self.verdict = Verdict::NotApplicable;
        self.note = Some(note.into());
        self
    }

    pub fn name(&self) -> &'static str {
        self.id.0.name()
    }
}

fn hyp(name: impl Into<String>, met: bool) -> Hypothesis {
    Hypothesis { name: name.into(), met }
}

/// Sidecar metadata of a catalogue point file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub id: String,
    pub k: i64,
    pub p0: u32,
    #[serde(default)]
    pub slow: bool,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub family: Option<FamilySpec>,
    /// witness file name, relative to the point file
    #[serde(default)]
    pub witness: Option<String>,
    #[serde(default)]
    pub declared_linear: Option<bool>,
    /// blocking-set report at the declared k, written by the generator
    #[serde(default)]
    pub flags: Option<Value>,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub meta: InstanceMeta,
    pub points: PointSet,
    pub witness: Option<Subspace>,
}

impl Instance {
    pub fn new(id: &str, points: PointSet, k: i64, p0: u32) -> Instance {
        Instance {
            meta: InstanceMeta {
                id: id.into(),
                k,
                p0,
                slow: false,
                description: String::new(),
                family: None,
                witness: None,
                declared_linear: None,
                flags: None,
            },
            points,
            witness: None,
        }
    }

    pub fn id(&self) -> &str {
        &self.meta.id
    }
}

/// Loads every `*.pts` file of `dir` with its sidecar, sorted by file name.
pub fn load_catalogue(dir: &Path, include_slow: bool) -> Result<Vec<Instance>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "pts"))
        .collect();
    files.sort();
    let mut out = Vec::new();
    for f in files {
        let meta: InstanceMeta = serde_json::from_str(&std::fs::read_to_string(io::sidecar_path(&f))?)
            .map_err(|e| Error::Parse(format!("{}: {e}", io::sidecar_path(&f).display())))?;
        if meta.slow && !include_slow {
            continue;
        }
        let points = io::read_points(&f)?;
        let witness = match &meta.witness {
            Some(w) => {
                let (_, wit) = io::read_witness(&f.with_file_name(w))?;
                if wit.points != points {
                    return Err(Error::Parse(format!("{w}: witness does not reproduce {}", f.display())));
                }
                Some(wit.pi)
            }
            None => None,
        };
        out.push(Instance { meta, points, witness });
    }
    Ok(out)
}

/// Per-instance data shared by all checks.
struct Prep<'a> {
    inst: &'a Instance,
    b: &'a PointSet,
    k: i64,
    p0: u64,
    h: i64,
    n: i64,
    p: u64,
    q: u64,
    report: blockingset::BlockingReport,
    ctx: SpreadContext,
    idx: SecantIndex,
    hyper: Vec<u32>,
}

impl Prep<'_> {
    fn blocking(&self) -> bool {
        self.report.is_blocking
    }
    fn minimal(&self) -> bool {
        self.report.is_minimal == Some(true)
    }
    fn nontrivial(&self) -> bool {
        self.report.is_trivial == Some(false)
    }
    fn exponent(&self) -> u32 {
        self.report.exponent.unwrap_or(0)
    }

    /// small minimal k-blocking set with exponent e and p0 = p^e
    fn base(&self) -> Vec<Hypothesis> {
        let e = self.exponent();
        vec![
            hyp(format!("{}-blocking", self.k), self.blocking()),
            hyp("small", self.report.is_small),
            hyp("minimal", self.minimal()),
            hyp(format!("p0 = p^e with e = exponent ({e})"), e >= 1 && self.p.pow(e) == self.p0),
        ]
    }

    fn with(&self, extra: &[(&str, bool)]) -> Vec<Hypothesis> {
        let mut v = self.base();
        v.extend(extra.iter().map(|&(n, m)| hyp(n, m)));
        v
    }

    fn check(&self, id: LemmaId, hyps: Vec<Hypothesis>) -> LemmaCheck {
        LemmaCheck::new(self.inst.id(), id, hyps)
    }

    fn subline_secants_through(&self, i: usize) -> u64 {
        self.idx.groups(i).iter().filter(|g| g.len() as u64 == self.p0).count() as u64
    }
}

fn prepare(inst: &Instance) -> Result<Prep<'_>> {
    let b = &inst.points;
    let sp = b.space();
    let k = inst.meta.k;
    let p0 = inst.meta.p0;
    let h = blockingset::subfield_index(sp, p0)?;
    let report = blockingset::analyze(b, k)?;
    let ctx = reconstruct::context_for(sp, p0)?;
    Ok(Prep {
        inst,
        b,
        k,
        p0: p0 as u64,
        h,
        n: sp.dim() as i64,
        p: sp.field().characteristic() as u64,
        q: sp.q() as u64,
        report,
        ctx,
        idx: SecantIndex::build(b),
        hyper: blockingset::hyperplane_counts(b),
    })
}

/// Runs the selected checks on every instance; output ordered by instance, then lemma.
pub fn run_suite(instances: &[Instance], lemmas: &[LemmaId]) -> Vec<LemmaCheck> {
    let mut lemmas = lemmas.to_vec();
    lemmas.sort();
    lemmas.dedup();
    let preps: Vec<std::result::Result<Prep<'_>, Error>> = instances.par_iter().map(prepare).collect();
    let cells: Vec<(usize, LemmaId)> =
        (0..instances.len()).flat_map(|i| lemmas.iter().map(move |&l| (i, l))).collect();
    cells
        .par_iter()
        .map(|&(i, l)| match &preps[i] {
            Ok(prep) => run_check(prep, l).unwrap_or_else(|e| {
                LemmaCheck::new(instances[i].id(), l, Vec::new()).skip(format!("error: {e}"))
            }),
            Err(e) => LemmaCheck::new(instances[i].id(), l, Vec::new()).skip(format!("instance rejected: {e}")),
        })
        .collect()
}

fn run_check(pr: &Prep<'_>, id: LemmaId) -> Result<LemmaCheck> {
    match id {
        LemmaId::GroottesIdentities => groottes_identities(pr),
        LemmaId::GrootteBound => size_bound(pr, id),
        LemmaId::SzonyiIv => size_bound(pr, id),
        LemmaId::GroottesGap => groottes_gap(pr),
        LemmaId::Rechte1modp => rechte1modp(pr),
        LemmaId::SziklaiI => sziklai_i(pr),
        LemmaId::SublineThm => subline_thm(pr),
        LemmaId::Projection => projection(pr),
        LemmaId::Lemma6Nonsecant => lemma6_nonsecant(pr),
        LemmaId::Lemma1Secants => secant_counts(pr, id),
        LemmaId::Aantalsecanten => secant_counts(pr, id),
        LemmaId::LargeCount => large_through(pr, id),
        LemmaId::HypervlakkenI => large_through(pr, id),
        LemmaId::Pplus1k => pplus1k(pr),
        LemmaId::SpanLemma => span_lemma(pr),
        LemmaId::Reconstruct => reconstruct_check(pr),
        LemmaId::Situatie => situatie(pr),
        LemmaId::HandigI => handig_i(pr),
        LemmaId::HandigIv => handig_iv(pr),
        LemmaId::EssSubset => ess_subset(pr),
        LemmaId::DeclaredClaims => declared_claims(pr),
    }
}

fn groottes_identities(pr: &Prep<'_>) -> Result<LemmaCheck> {
    let mut c = pr.check(LemmaId::GroottesIdentities, Vec::new());
    let spec = blockingset::spectrum(pr.b, pr.n - pr.k)?;
    let ids = spec.identities(pr.n, pr.q, pr.b.len() as u64);
    let ok = ids.iter().all(|(l, r)| l == r);
    c.bound = Some(ids.iter().map(|(_, r)| r.to_string()).collect::<Vec<_>>().join(", "));
    c.observed = Some(ids.iter().map(|(l, _)| l.to_string()).collect::<Vec<_>>().join(", "));
    c.decide(ok, || json!({ "spectrum": spec.counts }));
    Ok(c)
}

fn size_bound(pr: &Prep<'_>, id: LemmaId) -> Result<LemmaCheck> {
    let e = pr.exponent() as i64;
    let hyps = vec![
        hyp(format!("{}-blocking", pr.k), pr.blocking()),
        hyp("non-trivial", pr.nontrivial()),
        hyp("exponent e >= 1", e >= 1),
    ];
    let mut c = pr.check(id, hyps);
    if e == 0 {
        return Ok(c.skip("no exponent"));
    }
    let t = pr.b.space().field().degree() as i64;
    let bound = match id {
        LemmaId::GrootteBound => bounds::grootte(pr.p, t, pr.k, e),
        _ => bounds::szonyi_iv(pr.p, t, pr.k, e),
    };
    let size = int(pr.b.len() as i64);
    c.bound = Some(show(&bound));
    c.observed = Some(pr.b.len().to_string());
    c.decide(size >= bound, || json!({ "size": pr.b.len() }));
    Ok(c)
}

fn groottes_gap(pr: &Prep<'_>) -> Result<LemmaCheck> {
    let spec0 = blockingset::spectrum(pr.b, pr.n - pr.k)?;
    let one_mod = spec0.sizes().iter().all(|&i| i as u64 % pr.p0 == 1);
    let mut c = pr.check(
        LemmaId::GroottesGap,
        vec![hyp("p0 >= 7", pr.p0 >= 7), hyp("every (n-k)-space meets B in 1 mod p0 points", one_mod)],
    );
    let mut bound = Vec::new();
    let mut observed = Vec::new();
    let mut bad: Option<Value> = None;
    for s in 0..pr.k {
        let dim = pr.n - pr.k + s;
        let spec = if s == 0 { spec0.clone() } else { blockingset::spectrum(pr.b, dim)? };
        let (lo, hi) = (bounds::gap_low(pr.p0, pr.h, s), bounds::gap_high(pr.p0, pr.h, s));
        let sizes = spec.sizes();
        let small: Vec<usize> = sizes.iter().copied().filter(|&i| int(i as i64) < lo).collect();
        let large: Vec<usize> = sizes.iter().copied().filter(|&i| int(i as i64) > hi).collect();
        if bad.is_none() {
            if let Some(&g) = sizes.iter().find(|&&i| int(i as i64) >= lo && int(i as i64) <= hi) {
                let sp = pr.b.space();
                let w = sp.subspaces(dim)?.find(|x| pr.b.intersection_size(x) == g);
                bad = Some(json!({ "s": s, "size": g, "subspace": w.map(|w| json!(w.basis())) }));
            }
        }
        bound.push(format!("s={s}: < {} or > {}", show(&lo), show(&hi)));
        observed.push(format!(
            "s={s}: max small {}, min large {}",
            small.last().map_or("-".into(), |v| v.to_string()),
            large.first().map_or("-".into(), |v| v.to_string())
        ));
    }
    let top = bounds::gap_low(pr.p0, pr.h, pr.k);
    bound.push(format!("|B| < {}", show(&top)));
    observed.push(format!("|B| = {}", pr.b.len()));
    if bad.is_none() && int(pr.b.len() as i64) >= top {
        bad = Some(json!({ "s": pr.k, "size": pr.b.len() }));
    }
    c.bound = Some(bound.join("; "));
    c.observed = Some(observed.join("; "));
    let ok = bad.is_none();
    c.decide(ok, || bad.unwrap_or(Value::Null));
    Ok(c)
}

fn rechte1modp(pr: &Prep<'_>) -> Result<LemmaCheck> {
    let mut c = pr.check(LemmaId::Rechte1modp, pr.base());
    let e = pr.exponent();
    if e == 0 {
        return Ok(c.skip("no exponent"));
    }
    let m = pr.p.pow(e);
    let spec = pr.idx.line_spectrum();
    let sizes = spec.sizes();
    let bad = sizes.iter().copied().find(|&i| i != 0 && i as u64 % m != 1);
    c.bound = Some(format!("0 or 1 mod {m}"));
    c.observed = Some(format!("{sizes:?}"));
    c.decide(bad.is_none(), || {
        let line = pr.idx.secant_lines().into_iter().find(|l| Some(l.len()) == bad);
        json!({ "size": bad, "line_points": line })
    });
    Ok(c)
}

fn min_subline_secants(pr: &Prep<'_>) -> Option<(u32, u64)> {
    (0..pr.b.len())
        .map(|i| (pr.b.ranks()[i], pr.subline_secants_through(i)))
        .filter(|&(_, c)| c > 0)
        .min_by_key(|&(r, c)| (c, r))
}

fn sziklai_i(pr: &Prep<'_>) -> Result<LemmaCheck> {
    let mut hyps = vec![hyp("n = 2", pr.n == 2)];
    hyps.extend(pr.base());
    let mut c = pr.check(LemmaId::SziklaiI, hyps);
    let kappa = pr.b.len() as i64 - pr.q as i64;
    let bound = bounds::sziklai_i(pr.q, pr.p0, kappa);
    c.bound = Some(show(&bound));
    let Some((r, m)) = min_subline_secants(pr) else {
        return Ok(c.skip("no (p0+1)-secant"));
    };
    c.observed = Some(m.to_string());
    c.decide(int(m as i64) >= bound, || json!({ "point": r, "subline_secants": m }));
    Ok(c)
}

fn subline_thm(pr: &Prep<'_>) -> Result<LemmaCheck> {
    let mut c = pr.check(LemmaId::SublineThm, Vec::new());
    let pi = match &pr.inst.witness {
        Some(pi) => pi.clone(),
        None => match linearset::is_linear(&pr.ctx, pr.b, Strategy::ReconstructFirst, Some(pr.k)) {
            Ok(Linearity::Linear(w)) => w.pi,
            Ok(Linearity::NotLinear(_)) => return Ok(c.skip("no linear witness: the set is not linear")),
            Err(e) => return Ok(c.skip(format!("no linear witness: {e}"))),
        },
    };
    let (q, p0) = (pr.q, pr.p0);
    let per_line = (q + 1) * q * (q - 1) / ((p0 + 1) * p0 * (p0 - 1));
    let lines = pr.idx.secant_lines().len() as u64;
    if lines * per_line > SUBLINE_BUDGET {
        return Ok(c.skip(format!("{lines} secant lines x {per_line} sublines exceeds the budget of {SUBLINE_BUDGET}")));
    }
    let w = linearset::build_linear_set(&pr.ctx, &pi);
    let rep = linearset::subline_meet_check(&pr.ctx, &w)?;
    c.hypotheses = vec![hyp(format!("GF({p0})-linear of rank {}", w.rank), w.points == *pr.b)];
    c.hypotheses_met = w.points == *pr.b;
    c.bound = Some(format!("{:?}", rep.allowed));
    c.observed = Some(format!("{:?}", rep.sizes.keys().collect::<Vec<_>>()));
    let first = rep.violations.first().cloned();
    c.decide(rep.holds(), || json!({ "subline": first.as_ref().map(|v| &v.0), "size": first.map(|v| v.1) }));
    Ok(c)
}

fn projection(pr: &Prep<'_>) -> Result<LemmaCheck> {
    let fits = pr.k <= pr.n - 2;
    let mut hyps = vec![hyp(format!("{}-blocking", pr.k), pr.blocking()), hyp("small", pr.report.is_small), hyp("minimal", pr.minimal())];
    hyps.push(hyp("k <= n - 2", fits));
    let mut c = pr.check(LemmaId::Projection, hyps);
    if !fits {
        return Ok(c.skip("a hyperplane cannot carry a k-blocking set"));
    }
    let sp = pr.b.space();
    let Some(&qr) = blockingset::off_secant_points(pr.b, &pr.idx).first() else {
        return Ok(c.skip("no point off B and off all secants"));
    };
    let qv = sp.unrank(qr);
    let i = qv.iter().position(|&x| x != 0).expect("nonzero");
    let mut normal = vec![0; qv.len()];
    normal[i] = 1;
    let hplane = sp.hyperplane(&normal)?;
    let image = sp.project(pr.b, &sp.point_at(qr), &hplane)?;
    let local = image.restrict_to(&hplane)?;
    let blocking = blockingset::is_k_blocking(&local, pr.k)?.blocking;
    let small = blockingset::is_small(&local, pr.k);
    let minimal = blocking && blockingset::is_minimal(&local, pr.k, blockingset::MinimalityMethod::Direct)?.minimal;
    c.bound = Some(format!("blocking, small, minimal, size {}", pr.b.len()));
    c.observed = Some(format!("blocking {blocking}, small {small}, minimal {minimal}, size {}", local.len()));
    let ok = blocking && small && minimal && local.len() == pr.b.len();
    c.decide(ok, || json!({ "centre": qv, "hyperplane_normal": normal }));
    c.note = Some(format!("centre rank {qr}, hyperplane x_{i} = 0"));
    Ok(c)
}

fn lemma6_nonsecant(pr: &Prep<'_>) -> Result<LemmaCheck> {
    let mut c = pr.check(LemmaId::Lemma6Nonsecant, pr.with(&[("p0 >= 7", pr.p0 >= 7), ("n >= 2k+1", pr.n >= 2 * pr.k + 1)]));
    let printed = bounds::lemma6_printed(pr.p0, pr.h, pr.n, pr.k);
    let sharp = bounds::lemma6_sharp(pr.p0, pr.h, pr.n, pr.k);
    let count = blockingset::off_secant_points(pr.b, &pr.idx).len();
    c.bound = Some(show(&printed));
    c.sharp_bound = Some(show(&sharp));
    c.observed = Some(count.to_string());
    let hp = bounds::hyperplane_points(pr.p0, pr.h, pr.n);
    let rel = if printed > hp { "exceeds" } else { "does not exceed" };
    c.note = Some(format!("printed bound {rel} |PG(n-1, q)| = {}", show(&hp)));
    c.decide(int(count as i64) >= printed, || json!({ "off_secant_points": count }));
    Ok(c)
}

fn secant_counts(pr: &Prep<'_>, id: LemmaId) -> Result<LemmaCheck> {
    let k_ok = if id == LemmaId::Lemma1Secants { pr.k == 1 } else { pr.k > 1 };
    let kname = if id == LemmaId::Lemma1Secants { "k = 1" } else { "k > 1" };
    let mut c = pr.check(id, pr.with(&[(kname, k_ok), ("p0 >= 7", pr.p0 >= 7)]));
    let bound = if id == LemmaId::Lemma1Secants {
        bounds::lemma1(pr.p0, pr.h)
    } else {
        bounds::aantalsecanten(pr.p0, pr.h, pr.k)
    };
    c.bound = Some(show(&bound));
    let Some((r, m)) = min_subline_secants(pr) else {
        return Ok(c.skip("no (p0+1)-secant"));
    };
    c.observed = Some(m.to_string());
    c.decide(int(m as i64) >= bound, || json!({ "point": r, "subline_secants": m }));
    Ok(c)
}

/// The dim-spaces meeting B in at least `thr` points.
fn large_spaces(pr: &Prep<'_>, dim: i64, thr: &Q) -> Result<Vec<Subspace>> {
    let sp = pr.b.space();
    if dim == pr.n - 1 {
        return pr
            .hyper
            .iter()
            .enumerate()
            .filter(|(_, &c)| int(c as i64) >= *thr)
            .map(|(r, _)| sp.hyperplane(&sp.unrank(r as u32)))
            .collect();
    }
    let mut v: Vec<Subspace> = sp.subspaces(dim)?.par_bridge().filter(|s| int(pr.b.intersection_size(s) as i64) >= *thr).collect();
    v.sort();
    Ok(v)
}

/// Over d-spaces whose B-points satisfy `pred`, the largest number of
/// (d+1)-spaces with at least `thr` points of B through one of them.
fn max_large_through(
    pr: &Prep<'_>,
    d: i64,
    thr: &Q,
    pred: impl Fn(&[u32]) -> bool + Sync,
) -> Result<Option<(u64, Subspace, Vec<Subspace>)>> {
    let sp = pr.b.space();
    let large = large_spaces(pr, d + 1, thr)?;
    let local = ProjSpace::new(d as usize + 1, sp.field().clone())?;
    let f = sp.field();
    let hits: Vec<Vec<Subspace>> = large
        .par_iter()
        .map(|hs| -> Result<Vec<Subspace>> {
            let ranks = pr.b.ranks_in(hs);
            let coords: Vec<Vec<u32>> = ranks.iter().map(|&r| sp.coordinates_in(hs, &sp.unrank(r)).expect("in H")).collect();
            let mut out = Vec::new();
            for sl in local.subspaces(d)? {
                let inside: Vec<u32> =
                    ranks.iter().zip(&coords).filter(|(_, c)| local.contains_point(&sl, c)).map(|(&r, _)| r).collect();
                if pred(&inside) {
                    let rows: Vec<Row> = sl
                        .basis()
                        .iter()
                        .map(|lr| {
                            let mut g = vec![0; sp.dim() + 1];
                            for (a, hr) in lr.iter().zip(hs.basis()) {
                                matrix::axpy(f, &mut g, *a, hr);
                            }
                            g
                        })
                        .collect();
                    out.push(sp.subspace_from_rows(rows)?);
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut count: HashMap<Subspace, Vec<usize>> = HashMap::new();
    for (i, v) in hits.into_iter().enumerate() {
        for s in v {
            count.entry(s).or_default().push(i);
        }
    }
    Ok(count
        .into_iter()
        .max_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| b.0.cmp(&a.0)))
        .map(|(s, hs)| (hs.len() as u64, s, hs.into_iter().map(|i| large[i].clone()).collect())))
}

fn large_through(pr: &Prep<'_>, id: LemmaId) -> Result<LemmaCheck> {
    let mut c = pr.check(id, pr.with(&[("p0 >= 7", pr.p0 >= 7), ("k > 1", pr.k > 1)]));
    if pr.k < 2 {
        return Ok(c.skip("needs k > 1"));
    }
    let (bound, sharp, want) = if id == LemmaId::LargeCount {
        (bounds::large(pr.p0, pr.h, pr.k), bounds::large_from_proof(pr.p0, pr.h, pr.k), pr.p0 as usize + 1)
    } else {
        (bounds::hypervlakken_i(pr.p0, pr.h, pr.k), bounds::hypervlakken_i_from_proof(pr.p0, pr.h, pr.k), 1)
    };
    c.bound = Some(show(&bound));
    c.sharp_bound = Some(sharp.to_string());
    let thr = bounds::gap_low(pr.p0, pr.h, 1);
    let found = max_large_through(pr, pr.n - pr.k, &thr, |ins| ins.len() == want)?;
    let (y, witness) = match found {
        Some((y, pi, hs)) => (y, json!({ "pi": pi.basis(), "large": hs.iter().map(|h| h.basis()).collect::<Vec<_>>() })),
        None => (0, Value::Null),
    };
    c.observed = Some(y.to_string());
    c.note = Some(format!("large means at least {} points", show(&thr)));
    c.decide(int(y as i64) <= bound, || witness);
    Ok(c)
}

fn pplus1k(pr: &Prep<'_>) -> Result<LemmaCheck> {
    let mut c = pr.check(LemmaId::Pplus1k, pr.with(&[("p0 >= 7", pr.p0 >= 7)]));
    let rep = linearset::secant_linearity_check(&pr.ctx, pr.b, pr.k)?;
    c.bound = Some("every (p0+1)-secant trace is a subline".into());
    c.observed = Some(format!("{} of {} secants fail", rep.failing.len(), rep.secants_checked));
    let first = rep.failing.first().cloned();
    c.decide(rep.holds(), || json!({ "secant": first }));
    Ok(c)
}

fn main_theorem_hyps(pr: &Prep<'_>) -> Vec<Hypothesis> {
    pr.with(&[("p0 >= 7", pr.p0 >= 7), ("n - 1 >= 2k", pr.n - 1 >= 2 * pr.k)])
}

fn span_lemma(pr: &Prep<'_>) -> Result<LemmaCheck> {
    let mut c = pr.check(LemmaId::SpanLemma, main_theorem_hyps(pr));
    c.assumed = vec!["(H_{k,n-1})".into()];
    let Some(&p) = reconstruct::admissible_points(&pr.idx, pr.p0 as u32).first() else {
        return Ok(c.skip("no (p0+1)-secant"));
    };
    if !pr.blocking() {
        return Ok(c.skip("not blocking"));
    }
    let x = pr.ctx.element_ranks(p)[0];
    let rep = reconstruct::check_span_lemma(&pr.ctx, pr.b, pr.k, p, x)?;
    c.bound = Some("0 failing pairs".into());
    c.observed = Some(format!("{} of {} pairs fail", rep.failing.len(), rep.pairs_checked));
    let first = rep.failing.first().copied();
    c.decide(rep.failing.is_empty(), || json!({ "p": p, "x": x, "pair": first }));
    Ok(c)
}

fn reconstruct_check(pr: &Prep<'_>) -> Result<LemmaCheck> {
    let mut c = pr.check(LemmaId::Reconstruct, main_theorem_hyps(pr));
    c.assumed = vec!["(H_{k,n-1})".into()];
    c.bound = Some(format!("dim W = {}, B(W) = B", pr.h * pr.k));
    let r = match reconstruct::reconstruct_with(&pr.ctx, pr.b, pr.k, PointPolicy::First) {
        Ok(r) => r.into_iter().next().expect("one point"),
        Err(e @ (Error::NoSublineSecant | Error::NotBlocking | Error::BadParams(_))) => return Ok(c.skip(e.to_string())),
        Err(e) => return Err(e),
    };
    c.observed = Some(format!("dim W = {}, image {:?}", r.dim_w, r.image));
    let ok = r.success();
    c.decide(ok, || json!({ "p": r.p, "x": r.x, "w": r.w, "status": r.status }));
    Ok(c)
}

/// Tangent (n-k)-spaces through the point of rank `p`.
fn tangents_through(pr: &Prep<'_>, p: u32) -> Result<Vec<Subspace>> {
    let sp = pr.b.space();
    let ps = sp.point_subspace(&sp.point_at(p));
    Ok(sp.subspaces_through(pr.n - pr.k, &ps)?.filter(|s| pr.b.intersection_size(s) == 1).collect())
}

/// Small (n-k+1)-spaces through the tangent space `pi` that carry a (p0+1)-secant through the i-th point.
fn small_with_secant(pr: &Prep<'_>, i: usize, pi: &Subspace) -> Result<Vec<Subspace>> {
    let sp = pr.b.space();
    let p = pr.b.ranks()[i];
    let lo = bounds::gap_low(pr.p0, pr.h, 1);
    let mut out = BTreeSet::new();
    for g in pr.idx.groups(i).iter().filter(|g| g.len() as u64 == pr.p0) {
        let l = sp.line_through(&sp.unrank(p), &sp.unrank(g[0]));
        let hs = sp.span(&[pi, &l])?;
        if int(pr.b.intersection_size(&hs) as i64) < lo {
            out.insert(hs);
        }
    }
    Ok(out.into_iter().collect())
}

fn situatie(pr: &Prep<'_>) -> Result<LemmaCheck> {
    let mut c = pr.check(LemmaId::Situatie, pr.with(&[("p0 >= 7", pr.p0 >= 7), ("k > 1", pr.k > 1), ("non-trivial", pr.nontrivial())]));
    if pr.k < 2 {
        return Ok(c.skip("needs k > 1"));
    }
    let bound = bounds::situatie(pr.p0, pr.h, pr.k);
    c.bound = Some(show(&bound));
    let mut best: Option<(usize, u32, Subspace)> = None;
    'search: for i in 0..pr.b.len() {
        if pr.subline_secants_through(i) == 0 {
            continue;
        }
        let p = pr.b.ranks()[i];
        for pi in tangents_through(pr, p)? {
            let m = small_with_secant(pr, i, &pi)?.len();
            if best.as_ref().is_none_or(|b| m > b.0) {
                best = Some((m, p, pi));
            }
            if int(best.as_ref().unwrap().0 as i64) >= bound {
                break 'search;
            }
        }
    }
    let Some((m, p, pi)) = best else {
        return Ok(c.skip("no point on a (p0+1)-secant has a tangent space"));
    };
    c.observed = Some(m.to_string());
    c.note = Some("search: points by rank, tangent spaces in enumeration order, first configuration reaching the bound".into());
    c.decide(int(m as i64) >= bound, || json!({ "exhaustive": true, "best_point": p, "best_tangent": pi.basis() }));
    Ok(c)
}

fn handig_i(pr: &Prep<'_>) -> Result<LemmaCheck> {
    let mut c = pr.check(LemmaId::HandigI, pr.with(&[("p0 >= 7", pr.p0 >= 7), ("k > 1", pr.k > 1), ("non-trivial", pr.nontrivial())]));
    c.assumed = vec!["(H)".into()];
    if pr.k < 2 {
        return Ok(c.skip("needs k > 1"));
    }
    let mut bound = Vec::new();
    let mut observed = Vec::new();
    let mut bad = None;
    for s in 1..pr.k {
        let cap = bounds::handig_i(pr.p0, pr.h, s);
        let lo = bounds::gap_low(pr.p0, pr.h, s);
        let spec = blockingset::spectrum(pr.b, pr.n - pr.k + s)?;
        let max_small = spec.sizes().into_iter().filter(|&i| int(i as i64) < lo).max();
        if let Some(m) = max_small {
            if int(m as i64) > cap && bad.is_none() {
                bad = Some(json!({ "s": s, "size": m }));
            }
        }
        bound.push(format!("s={s}: {}", show(&cap)));
        observed.push(format!("s={s}: {}", max_small.map_or("-".into(), |m| m.to_string())));
    }
    c.bound = Some(bound.join("; "));
    c.observed = Some(observed.join("; "));
    let ok = bad.is_none();
    c.decide(ok, || bad.unwrap_or(Value::Null));
    Ok(c)
}

fn handig_iv(pr: &Prep<'_>) -> Result<LemmaCheck> {
    let mut c = pr.check(LemmaId::HandigIv, pr.with(&[("p0 >= 7", pr.p0 >= 7), ("k > 1", pr.k > 1), ("non-trivial", pr.nontrivial())]));
    c.assumed = vec!["(H)".into()];
    if pr.k < 2 {
        return Ok(c.skip("needs k > 1"));
    }
    let bound = bounds::handig_iv(pr.p0, pr.h);
    c.bound = Some(show(&bound));
    let small_lo = bounds::gap_low(pr.p0, pr.h, pr.k - 2);
    if small_lo <= int(pr.p0 as i64 + 1) {
        c.observed = Some("0".into());
        c.note = Some(format!("vacuous: a small (n-2)-space has fewer than {} points of B", show(&small_lo)));
        c.decide(true, || Value::Null);
        return Ok(c);
    }
    let secants: Vec<Vec<u32>> = pr.idx.secant_lines().into_iter().filter(|l| l.len() as u64 == pr.p0 + 1).collect();
    let thr = bounds::gap_low(pr.p0, pr.h, pr.k - 1);
    let found = max_large_through(pr, pr.n - 2, &thr, |ins| {
        int(ins.len() as i64) < small_lo && secants.iter().any(|l| l.iter().all(|r| ins.binary_search(r).is_ok()))
    })?;
    let (y, witness) = match found {
        Some((y, pi, hs)) => (y, json!({ "pi": pi.basis(), "large": hs.iter().map(|h| h.basis()).collect::<Vec<_>>() })),
        None => (0, Value::Null),
    };
    c.observed = Some(y.to_string());
    c.decide(int(y as i64) <= bound, || witness);
    Ok(c)
}

fn ess_subset(pr: &Prep<'_>) -> Result<LemmaCheck> {
    let mut c = pr.check(LemmaId::EssSubset, pr.with(&[("p0 >= 7", pr.p0 >= 7), ("k > 1", pr.k > 1), ("non-trivial", pr.nontrivial())]));
    c.assumed = vec!["(H)".into()];
    if pr.k < 2 {
        return Ok(c.skip("needs k > 1"));
    }
    let sp = pr.b.space();
    let small = pr.ctx.small();
    let Some(i) = (0..pr.b.len()).find(|&i| pr.subline_secants_through(i) > 0) else {
        return Ok(c.skip("no (p0+1)-secant"));
    };
    let p = pr.b.ranks()[i];
    let Some(pi) = tangents_through(pr, p)?.into_iter().next() else {
        return Ok(c.skip("no tangent space at the chosen point"));
    };
    let x = pr.ctx.element_ranks(p)[0];
    // H with B ∩ H = B(pi_H), pi_H an h-space through x
    let mut witnessed: Vec<(Subspace, Subspace)> = Vec::new();
    for hs in small_with_secant(pr, i, &pi)? {
        let bh = PointSet::from_ranks(sp.clone(), pr.b.ranks_in(&hs));
        let idx = SecantIndex::build(&bh);
        let span = reconstruct::transversal_span(&pr.ctx, &bh, &idx, p, x)?;
        if span.w.dim() == pr.h && pr.ctx.linear_set_ranks(&span.w) == bh.ranks() {
            witnessed.push((hs, span.w));
        }
    }
    let pairs: Vec<(usize, usize)> =
        (0..witnessed.len()).flat_map(|a| (a + 1..witnessed.len()).map(move |b| (a, b))).collect();
    let failing: Vec<(usize, usize)> = pairs
        .par_iter()
        .copied()
        .filter(|&(a, b)| {
            let j = small.span(&[&witnessed[a].1, &witnessed[b].1]).expect("same space");
            !pr.ctx.linear_set_ranks(&j).iter().all(|&r| pr.b.contains_rank(r))
        })
        .collect();
    c.bound = Some("B(<pi_1, pi_2>) inside B for every witnessed pair".into());
    c.observed = Some(format!("{} witnessed spaces, {} of {} pairs fail", witnessed.len(), failing.len(), pairs.len()));
    if pairs.is_empty() {
        return Ok(c.skip("fewer than two witnessed (n-k+1)-spaces"));
    }
    let first = failing.first().copied();
    c.decide(failing.is_empty(), || {
        let (a, b) = first.expect("a failing pair");
        json!({ "p": p, "x": x, "tangent": pi.basis(), "h1": witnessed[a].0.basis(), "h2": witnessed[b].0.basis() })
    });
    Ok(c)
}

fn declared_claims(pr: &Prep<'_>) -> Result<LemmaCheck> {
    let mut c = pr.check(LemmaId::DeclaredClaims, Vec::new());
    let Some(true) = pr.inst.meta.declared_linear else {
        return Ok(c.skip("no declared claims"));
    };
    c.hypotheses = vec![hyp("declared GF(p0)-linear", true)];
    c.hypotheses_met = true;
    c.bound = Some("linear".into());
    let mut failures = serde_json::Map::new();
    let sec = linearset::secant_linearity_check(&pr.ctx, pr.b, pr.k)?;
    if !sec.holds() {
        failures.insert("secant_linearity".into(), json!({ "secant": sec.failing[0] }));
    }
    match reconstruct::reconstruct_with(&pr.ctx, pr.b, pr.k, PointPolicy::First) {
        Ok(r) if !r[0].image_equal => {
            failures.insert("reconstruct".into(), json!({ "p": r[0].p, "x": r[0].x, "w": r[0].w, "status": r[0].status }));
        }
        Ok(_) => {}
        Err(e) => {
            failures.insert("reconstruct".into(), json!({ "error": e.to_string() }));
        }
    }
    match linearset::is_linear(&pr.ctx, pr.b, Strategy::ReconstructFirst, Some(pr.k)) {
        Ok(Linearity::NotLinear(cert)) => {
            failures.insert("is_linear".into(), serde_json::to_value(cert).expect("serializable"));
        }
        Ok(Linearity::Linear(_)) | Err(Error::TooLarge(_)) => {}
        Err(e) => return Err(e),
    }
    c.observed = Some(if failures.is_empty() {
        "linear".into()
    } else {
        format!("fails: {}", failures.keys().cloned().collect::<Vec<_>>().join(", "))
    });
    let ok = failures.is_empty();
    c.decide(ok, || Value::Object(failures));
    Ok(c)
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceSummary {
    pub id: String,
    pub description: String,
    pub p: u32,
    pub t: u32,
    pub n: usize,
    pub k: i64,
    pub p0: u32,
    pub size: usize,
    pub slow: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub holds: usize,
    pub violated: usize,
    pub not_applicable: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Scorecard {
    pub schema_version: u32,
    pub conway_table: String,
    pub instances: Vec<InstanceSummary>,
    pub checks: Vec<LemmaCheck>,
    pub summary: Summary,
}

impl Scorecard {
    pub fn any_violated(&self) -> bool {
        self.summary.violated > 0
    }

    pub fn to_json(&self) -> String {
        io::to_json(self)
    }
}

pub fn scorecard(instances: &[Instance], lemmas: &[LemmaId]) -> Scorecard {
    let checks = run_suite(instances, lemmas);
    let mut summary = Summary { checks: checks.len(), ..Default::default() };
    for c in &checks {
        match c.verdict {
            Verdict::Holds => summary.holds += 1,
            Verdict::Violated => summary.violated += 1,
            Verdict::NotApplicable => summary.not_applicable += 1,
        }
    }
    let instances = instances
        .iter()
        .map(|i| {
            let sp = i.points.space();
            InstanceSummary {
                id: i.meta.id.clone(),
                description: i.meta.description.clone(),
                p: sp.field().characteristic(),
                t: sp.field().degree(),
                n: sp.dim(),
                k: i.meta.k,
                p0: i.meta.p0,
                size: i.points.len(),
                slow: i.meta.slow,
            }
        })
        .collect();
    Scorecard { schema_version: SCHEMA_VERSION, conway_table: conway_table_version().to_string(), instances, checks, summary }
}

/// Writes the scorecard and its `.meta.json` sidecar.
pub fn write_scorecard(path: &Path, card: &Scorecard, slow: bool) -> Result<()> {
    std::fs::write(path, card.to_json())?;
    let meta = json!({
        "schema_version": SCHEMA_VERSION,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "conway_table": conway_table_version(),
        "slow": slow,
        "instances": card.instances.iter().map(|i| &i.id).collect::<Vec<_>>(),
        "violated": card.summary.violated,
    });
    io::write_sidecar(path, &meta)
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub q: u32,
    pub dim: i64,
    pub trials: usize,
    pub seed: u64,
    /// (trial, |B|) for every trial where an identity failed
    pub failures: Vec<(usize, usize)>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the three counting identities of the dim-space spectrum on
/// `trials` seeded random point sets of random size.
pub fn counting_identities(sp: &ProjSpace, dim: i64, trials: usize, seed: u64) -> Result<IdentityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = sp.num_points() as usize;
    let sets: Vec<Vec<u32>> = (0..trials)
        .map(|_| {
            let m = rng.random_range(0..=total);
            let mut v: Vec<u32> = sample(&mut rng, total, m).into_iter().map(|r| r as u32).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let results: Vec<Result<Option<(usize, usize)>>> = sets
        .into_par_iter()
        .enumerate()
        .map(|(i, ranks)| {
            let b = PointSet::from_ranks(sp.clone(), ranks);
            let spec = blockingset::spectrum(&b, dim)?;
            Ok((!spec.identities_hold(sp.dim() as i64, sp.q() as u64, b.len() as u64)).then_some((i, b.len())))
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        failures.extend(r?);
    }
    Ok(IdentityReport { n: sp.dim(), q: sp.q(), dim, trials, seed, failures })
}

/// One catalogue entry to generate.
#[derive(Debug, Clone)]
pub struct CatalogueEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub p: u32,
    pub t: u32,
    pub e: u32,
    pub n: usize,
    pub k: i64,
    pub family: FamilySpec,
    pub slow: bool,
}

/// The shipped instance catalogue.
pub fn standard_catalogue() -> Vec<CatalogueEntry> {
    vec![
        CatalogueEntry {
            id: "baer_pg2_9",
            description: "Baer subplane PG(2,3) in PG(2,9)",
            p: 3,
            t: 2,
            e: 1,
            n: 2,
            k: 1,
            family: FamilySpec::Subgeometry { m: 2 },
            slow: false,
        },
        CatalogueEntry {
            id: "rank4_pg2_27",
            description: "random rank-4 GF(3)-linear set in PG(2,27), seed 1",
            p: 3,
            t: 3,
            e: 1,
            n: 2,
            k: 1,
            family: FamilySpec::RandomRankR { r: 4, seed: 1 },
            slow: false,
        },
        CatalogueEntry {
            id: "subplane_pg2_49",
            description: "subplane PG(2,7) in PG(2,49)",
            p: 7,
            t: 2,
            e: 1,
            n: 2,
            k: 1,
            family: FamilySpec::Subgeometry { m: 2 },
            slow: false,
        },
        CatalogueEntry {
            id: "subplane_pg3_49",
            description: "subplane PG(2,7) in a plane of PG(3,49), a 1-blocking set",
            p: 7,
            t: 2,
            e: 1,
            n: 3,
            k: 1,
            family: FamilySpec::Subgeometry { m: 2 },
            slow: false,
        },
        CatalogueEntry {
            id: "cone_pg3_9",
            description: "cone with a point vertex over a Baer subplane in PG(3,9), a 2-blocking set",
            p: 3,
            t: 2,
            e: 1,
            n: 3,
            k: 2,
            family: FamilySpec::Cone { vertex_dim: 0, base_m: 2 },
            slow: false,
        },
        CatalogueEntry {
            id: "cone_pg3_49",
            description: "cone with a point vertex over a PG(2,7) subplane in PG(3,49), a 2-blocking set",
            p: 7,
            t: 2,
            e: 1,
            n: 3,
            k: 2,
            family: FamilySpec::Cone { vertex_dim: 0, base_m: 2 },
            slow: true,
        },
    ]
}

/// Writes `<id>.pts`, `<id>.wit` and `<id>.pts.meta.json` for each entry.
pub fn write_catalogue(dir: &Path, entries: &[CatalogueEntry]) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for e in entries {
        let big = ProjSpace::new(e.n, crate::field::Field::conway(e.p, e.t)?)?;
        let ctx = SpreadContext::new(big, e.e)?;
        let w = linearset::build_family(&ctx, e.family)?;
        let pts = dir.join(format!("{}.pts", e.id));
        let wit = format!("{}.wit", e.id);
        io::write_points(&pts, &w.points)?;
        io::write_witness(&dir.join(&wit), &ctx, &w)?;
        let meta = InstanceMeta {
            id: e.id.into(),
            k: e.k,
            p0: ctx.p0(),
            slow: e.slow,
            description: e.description.into(),
            family: Some(e.family),
            witness: Some(wit),
            declared_linear: Some(true),
            flags: Some(serde_json::to_value(blockingset::analyze(&w.points, e.k)?).expect("serializable")),
        };
        io::write_sidecar(&pts, &meta)?;
    }
    Ok(())
}

/// The Baer subplane of PG(2,9) with one point moved along a 4-secant to a
/// point outside the subplane, declared linear.
pub fn negative_control() -> Result<Instance> {
    let big = ProjSpace::new(2, crate::field::Field::conway(3, 2)?)?;
    let ctx = SpreadContext::new(big, 1)?;
    let b = linearset::build_family(&ctx, FamilySpec::Subgeometry { m: 2 })?.points;
    let sp = b.space();
    let r = b.ranks();
    let l = sp.line_through(&sp.unrank(r[0]), &sp.unrank(r[1]));
    let on = b.ranks_in(&l);
    let outside = sp.subspace_point_ranks(&l).into_iter().find(|x| !b.contains_rank(*x)).expect("q > p0");
    let moved = b.without_rank(on[on.len() - 1]).with_rank(outside);
    let mut inst = Instance::new("baer_moved_pg2_9", moved, 1, 3);
    inst.meta.description = "Baer subplane of PG(2,9) with one point moved along a 4-secant".into();
    inst.meta.declared_linear = Some(true);
    inst.meta.flags = Some(serde_json::to_value(blockingset::analyze(&inst.points, 1)?).expect("serializable"));
    Ok(inst)
}

pub fn write_instance(dir: &Path, inst: &Instance) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let pts = dir.join(format!("{}.pts", inst.id()));
    io::write_points(&pts, &inst.points)?;
    io::write_sidecar(&pts, &inst.meta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn baer_instance() -> Instance {
        let ctx = SpreadContext::new(ProjSpace::new(2, Field::conway(3, 2).unwrap()).unwrap(), 1).unwrap();
        let w = linearset::build_family(&ctx, FamilySpec::Subgeometry { m: 2 }).unwrap();
        let mut i = Instance::new("baer", w.points, 1, 3);
        i.witness = Some(w.pi);
        i
    }

    fn find<'a>(checks: &'a [LemmaCheck], id: LemmaId) -> &'a LemmaCheck {
        checks.iter().find(|c| c.id.0 == id).unwrap()
    }

    #[test]
    fn lemma_names_round_trip() {
        for l in LemmaId::ALL {
            assert_eq!(LemmaId::parse(l.name()), Some(l));
        }
    }

    #[test]
    fn baer_suite() {
        let checks = run_suite(&[baer_instance()], &LemmaId::ALL);
        assert_eq!(checks.len(), LemmaId::ALL.len());
        assert!(checks.iter().all(|c| c.verdict != Verdict::Violated), "{checks:#?}");
        let s = find(&checks, LemmaId::SziklaiI);
        assert_eq!(s.verdict, Verdict::Holds);
        assert_eq!(s.bound.as_deref(), Some("2"));
        assert_eq!(s.observed.as_deref(), Some("4"));
        assert_eq!(find(&checks, LemmaId::GroottesIdentities).verdict, Verdict::Holds);
        assert_eq!(find(&checks, LemmaId::SublineThm).verdict, Verdict::Holds);
        // p0 = 3 is outside the p0 >= 7 hypotheses
        assert_eq!(find(&checks, LemmaId::Lemma1Secants).verdict, Verdict::NotApplicable);
        assert_eq!(find(&checks, LemmaId::LargeCount).verdict, Verdict::NotApplicable);
    }

    #[test]
    fn negative_control_is_flagged() {
        let inst = negative_control().unwrap();
        let checks = run_suite(&[inst], &[LemmaId::DeclaredClaims]);
        assert_eq!(checks[0].verdict, Verdict::Violated);
        assert!(checks[0].witness.is_some());
    }

    #[test]
    fn trivial_line_is_not_applicable_for_nontrivial_lemmas() {
        let sp = ProjSpace::new(2, Field::conway(3, 2).unwrap()).unwrap();
        let l = sp.subspaces(1).unwrap().next().unwrap();
        let b = PointSet::from_ranks(sp.clone(), sp.subspace_point_ranks(&l));
        let checks = run_suite(&[Instance::new("line", b, 1, 3)], &[LemmaId::GrootteBound, LemmaId::SzonyiIv]);
        assert!(checks.iter().all(|c| c.verdict == Verdict::NotApplicable));
    }

    #[test]
    fn identities_on_random_sets() {
        let sp = ProjSpace::new(2, Field::conway(3, 2).unwrap()).unwrap();
        let r = counting_identities(&sp, 1, 20, 5).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn scorecard_is_deterministic() {
        let a = scorecard(&[baer_instance()], &LemmaId::ALL).to_json();
        let b = scorecard(&[baer_instance()], &LemmaId::ALL).to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"schema_version\": 1"));
    }
}
