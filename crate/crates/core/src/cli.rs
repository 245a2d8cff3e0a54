//! Command-line surface.
//!
//! Exit codes: 0 success, 1 mathematical failure or violation, 2 usage,
//! 3 I/O or file format. Every error prints one line to stderr of the form
//! `error: <kind>: <message>`.

use std::io::Write;
use std::path::PathBuf;
use std::sync::OnceLock;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::blockingset::{self, SecantIndex};
use crate::error::Error;
use crate::field::{conway_table_version, Field};
use crate::fieldreduction::SpreadContext;
use crate::harness::{self, LemmaId};
use crate::io;
use crate::linearset::{self, FamilySpec, Linearity, Strategy};
use crate::projspace::ProjSpace;
use crate::reconstruct::{self, PointPolicy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

fn version() -> &'static str {
    static V: OnceLock<String> = OnceLock::new();
    V.get_or_init(|| format!("{} ({})", env!("CARGO_PKG_VERSION"), conway_table_version()))
}

#[derive(Debug, Parser)]
#[command(name = "linset", version = version(), about = "Linear sets and small minimal k-blocking sets over finite fields")]
pub struct Cli {
    /// Worker threads; defaults to the number of available cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a point-set file from a construction family.
    Gen(GenArgs),
    /// Print the blocking-set report of a point-set file.
    Check(CheckArgs),
    /// Rebuild the linear structure from transversal lines.
    Reconstruct(ReconstructArgs),
    /// Decide whether a point set is a linear set; writes a witness or a certificate.
    Islinear(IsLinearArgs),
    /// Lemma harness.
    #[command(subcommand)]
    Harness(HarnessCommand),
    /// Per-point secant counts and the non-secant point count.
    Secants(SecantsArgs),
    /// Project a point set from a point onto a hyperplane.
    Project(ProjectArgs),
    /// Spread utilities.
    #[command(subcommand)]
    Spread(SpreadCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Family {
    Subgeometry,
    RedeiTrace,
    Cone,
    RandomRankR,
    /// the standard instance catalogue, written into the --out directory
    Catalogue,
    /// the mutated Baer subplane, written into the --out directory
    Negative,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub t: u32,
    /// dimension n of PG(n, p^t)
    #[arg(long)]
    pub n: usize,
    /// p0 = p^e
    #[arg(long, default_value_t = 1)]
    pub e: u32,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    /// subgeometry dimension (defaults to n)
    #[arg(long)]
    pub m: Option<usize>,
    /// blocking parameter recorded in the sidecar; also the k of redei_trace
    #[arg(long, default_value_t = 1)]
    pub k: i64,
    #[arg(long, default_value_t = 0)]
    pub vertex_dim: usize,
    #[arg(long)]
    pub base_m: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// include slow catalogue instances
    #[arg(long)]
    pub slow: bool,
    /// point file, or directory for catalogue and negative
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub k: i64,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub k: i64,
    #[arg(long)]
    pub p0: u32,
    /// run from every admissible point instead of the first
    #[arg(long)]
    pub all_points: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum StrategyArg {
    ReconstructFirst,
    Exhaustive,
}

#[derive(Debug, Args)]
pub struct IsLinearArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub p0: u32,
    /// caps the rank at hk+1 when given
    #[arg(long)]
    pub k: Option<i64>,
    #[arg(long, value_enum, default_value = "reconstruct_first")]
    pub strategy: StrategyArg,
    /// witness file; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum HarnessCommand {
    /// Run the lemma suite over a catalogue directory.
    Run(HarnessRunArgs),
}

#[derive(Debug, Args)]
pub struct HarnessRunArgs {
    #[arg(long)]
    pub catalogue: PathBuf,
    /// include instances marked slow
    #[arg(long)]
    pub slow: bool,
    #[arg(long)]
    pub out: PathBuf,
    /// restrict to these lemma ids (comma separated)
    #[arg(long, value_delimiter = ',')]
    pub lemma: Vec<String>,
}

#[derive(Debug, Args)]
pub struct SecantsArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub p0: u32,
    #[arg(long, default_value_t = 1)]
    pub k: i64,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    pub file: PathBuf,
    /// projection centre; the first point off B and off all secants when absent
    #[arg(long, num_args = 1.., value_delimiter = ' ')]
    pub centre: Option<Vec<u32>>,
    /// hyperplane normal; a coordinate hyperplane missing the centre when absent
    #[arg(long, num_args = 1.., value_delimiter = ' ')]
    pub normal: Option<Vec<u32>>,
    /// point file of the image in hyperplane coordinates
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// report blocking, small and minimal for this k
    #[arg(long, default_value_t = 1)]
    pub k: i64,
}

#[derive(Debug, Subcommand)]
pub enum SpreadCommand {
    /// Print `big-rank : small-ranks` for every point.
    Dump(FieldArgs),
}

/// Failure of a subcommand, with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_USAGE, kind: "usage", message: message.into() }
    }
    fn math(kind: &'static str, message: impl Into<String>) -> Failure {
        Failure { code: EXIT_MATH, kind, message: message.into() }
    }
    pub fn line(&self) -> String {
        format!("error: {}: {}", self.kind, self.message.replace('\n', " "))
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotPrime(_) => "not_prime",
        Error::ReduciblePolynomial(_) => "reducible_polynomial",
        Error::BadModulus(_) => "bad_modulus",
        Error::NoTableEntry { .. } => "no_table_entry",
        Error::FieldTooLarge(_) => "field_too_large",
        Error::ZeroInverse => "zero_inverse",
        Error::SpecMismatch => "spec_mismatch",
        Error::BadDivisor { .. } => "bad_divisor",
        Error::Range(_) => "range",
        Error::EmptyInput => "empty_input",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::QInB => "centre_in_set",
        Error::QInH => "centre_in_hyperplane",
        Error::NotHyperplane => "not_hyperplane",
        Error::NotASubline => "not_a_subline",
        Error::XNotOnElement => "x_not_on_element",
        Error::NotBlocking => "not_blocking",
        Error::NotApplicable(_) => "not_applicable",
        Error::GapViolation { .. } => "gap_violation",
        Error::NotFound(_) => "not_found",
        Error::BadParams(_) => "bad_params",
        Error::TooLarge(_) => "too_large",
        Error::NoSublineSecant => "no_subline_secant",
        Error::Parse(_) => "parse",
        Error::Io(_) => "io",
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Parse(_) => EXIT_IO,
        Error::NotPrime(_)
        | Error::ReduciblePolynomial(_)
        | Error::BadModulus(_)
        | Error::NoTableEntry { .. }
        | Error::FieldTooLarge(_)
        | Error::BadDivisor { .. }
        | Error::Range(_)
        | Error::DimensionMismatch(_)
        | Error::BadParams(_)
        | Error::TooLarge(_)
        | Error::QInB
        | Error::QInH
        | Error::NotHyperplane
        | Error::SpecMismatch => EXIT_USAGE,
        _ => EXIT_MATH,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure { code: exit_code(&e), kind: error_kind(&e), message: e.to_string() }
    }
}

type Out<'a> = &'a mut Vec<u8>;
type CmdResult = Result<i32, Failure>;

fn emit(out: Out<'_>, text: &str) -> Result<(), Failure> {
    out.extend_from_slice(text.as_bytes());
    Ok(())
}

/// Parses `args` and runs the command, writing results to `out`.
/// Returns the exit code; errors are written to `err` as one line.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(text.as_bytes());
            } else {
                let first = text.lines().next().unwrap_or("").trim_start_matches("error: ");
                let _ = writeln!(err, "error: usage: {first}");
            }
            return code;
        }
    };
    let mut buf = Vec::new();
    let res = match cli.threads {
        Some(0) => Err(Failure::usage("--threads must be positive")),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Failure::usage(e.to_string()))
            .and_then(|pool| pool.install(|| dispatch(&cli.command, &mut buf))),
        None => dispatch(&cli.command, &mut buf),
    };
    if out.write_all(&buf).and_then(|_| out.flush()).is_err() {
        let _ = writeln!(err, "error: io: cannot write output");
        return EXIT_IO;
    }
    match res {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "{}", f.line());
            f.code
        }
    }
}

fn dispatch(cmd: &Command, out: Out<'_>) -> CmdResult {
    match cmd {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Check(a) => cmd_check(a, out),
        Command::Reconstruct(a) => cmd_reconstruct(a, out),
        Command::Islinear(a) => cmd_islinear(a, out),
        Command::Harness(HarnessCommand::Run(a)) => cmd_harness(a, out),
        Command::Secants(a) => cmd_secants(a, out),
        Command::Project(a) => cmd_project(a, out),
        Command::Spread(SpreadCommand::Dump(a)) => cmd_spread_dump(a, out),
    }
}

fn check_k(sp: &ProjSpace, k: i64) -> Result<(), Failure> {
    if k < 1 || k >= sp.dim() as i64 {
        return Err(Failure::usage(format!("k = {k} outside 1..={} for PG({}, q)", sp.dim() as i64 - 1, sp.dim())));
    }
    Ok(())
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::usage(format!("--{flag} is required")))
}

fn cmd_gen(a: &GenArgs, out: Out<'_>) -> CmdResult {
    match a.family {
        Family::Catalogue => {
            let entries: Vec<_> = harness::standard_catalogue().into_iter().filter(|e| a.slow || !e.slow).collect();
            harness::write_catalogue(&a.out, &entries)?;
            for e in &entries {
                emit(out, &format!("{}\n", a.out.join(format!("{}.pts", e.id)).display()))?;
            }
            return Ok(EXIT_OK);
        }
        Family::Negative => {
            let inst = harness::negative_control()?;
            harness::write_instance(&a.out, &inst)?;
            emit(out, &format!("{}\n", a.out.join(format!("{}.pts", inst.id())).display()))?;
            return Ok(EXIT_OK);
        }
        _ => {}
    }
    let (p, t, n) = (need(a.p, "p")?, need(a.t, "t")?, need(a.n, "n")?);
    let spec = match a.family {
        Family::Subgeometry => FamilySpec::Subgeometry { m: a.m.unwrap_or(n) },
        Family::RedeiTrace => FamilySpec::RedeiTrace { k: a.k as usize },
        Family::Cone => FamilySpec::Cone { vertex_dim: a.vertex_dim, base_m: need(a.base_m, "base-m")? },
        Family::RandomRankR => FamilySpec::RandomRankR { r: need(a.r, "r")?, seed: a.seed },
        Family::Catalogue | Family::Negative => unreachable!(),
    };
    let ctx = SpreadContext::new(ProjSpace::new(n, Field::conway(p, t)?)?, a.e)?;
    check_k(ctx.big(), a.k)?;
    let w = linearset::build_family(&ctx, spec)?;
    io::write_points(&a.out, &w.points)?;
    let stem = a.out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let wit = a.out.with_extension("wit");
    io::write_witness(&wit, &ctx, &w)?;
    let meta = harness::InstanceMeta {
        id: stem,
        k: a.k,
        p0: ctx.p0(),
        slow: false,
        description: String::new(),
        family: Some(spec),
        witness: wit.file_name().map(|s| s.to_string_lossy().into_owned()),
        declared_linear: Some(true),
        flags: Some(serde_json::to_value(blockingset::analyze(&w.points, a.k)?).expect("serializable")),
    };
    io::write_sidecar(&a.out, &meta)?;
    emit(out, &format!("{} points, rank {}\n", w.points.len(), w.rank))?;
    Ok(EXIT_OK)
}

fn cmd_check(a: &CheckArgs, out: Out<'_>) -> CmdResult {
    let b = io::read_points(&a.file)?;
    check_k(b.space(), a.k)?;
    if b.is_empty() {
        return Err(Error::Parse(format!("{}: no points", a.file.display())).into());
    }
    let report = blockingset::analyze(&b, a.k)?;
    emit(out, &io::to_json(&report))?;
    Ok(EXIT_OK)
}

fn cmd_reconstruct(a: &ReconstructArgs, out: Out<'_>) -> CmdResult {
    let b = io::read_points(&a.file)?;
    check_k(b.space(), a.k)?;
    let policy = if a.all_points { PointPolicy::All } else { PointPolicy::First };
    let results = reconstruct::reconstruct(&b, a.k, a.p0, policy)?;
    emit(out, &io::to_json(&results))?;
    match results.iter().find(|r| !r.success()) {
        Some(r) => Err(Failure::math(
            "reconstruction_failed",
            format!("base point {}: {:?}, dim W = {} (expected {})", r.p, r.status, r.dim_w, r.expected_dim),
        )),
        None => Ok(EXIT_OK),
    }
}

fn cmd_islinear(a: &IsLinearArgs, out: Out<'_>) -> CmdResult {
    let b = io::read_points(&a.file)?;
    if let Some(k) = a.k {
        check_k(b.space(), k)?;
    }
    let ctx = reconstruct::context_for(b.space(), a.p0)?;
    let strategy = match a.strategy {
        StrategyArg::ReconstructFirst => Strategy::ReconstructFirst,
        StrategyArg::Exhaustive => Strategy::Exhaustive,
    };
    match linearset::is_linear(&ctx, &b, strategy, a.k)? {
        Linearity::Linear(w) => {
            match &a.out {
                Some(path) => {
                    io::write_witness(path, &ctx, &w)?;
                    emit(out, &format!("linear, rank {}\n", w.rank))?;
                }
                None => emit(out, &io::format_witness(&ctx, &w))?,
            }
            Ok(EXIT_OK)
        }
        Linearity::NotLinear(cert) => {
            emit(out, &io::to_json(&json!({ "linear": false, "certificate": cert })))?;
            Err(Failure::math("not_linear", format!("no GF({}) subspace up to rank {} gives the set", cert.p0, cert.rank_cap)))
        }
    }
}

fn cmd_harness(a: &HarnessRunArgs, out: Out<'_>) -> CmdResult {
    let lemmas: Vec<LemmaId> = if a.lemma.is_empty() {
        LemmaId::ALL.to_vec()
    } else {
        a.lemma
            .iter()
            .map(|s| LemmaId::parse(s).ok_or_else(|| Failure::usage(format!("unknown lemma id {s:?}"))))
            .collect::<Result<_, _>>()?
    };
    let instances = harness::load_catalogue(&a.catalogue, a.slow)?;
    let card = harness::scorecard(&instances, &lemmas);
    harness::write_scorecard(&a.out, &card, a.slow)?;
    let s = &card.summary;
    emit(
        out,
        &format!(
            "{} instances, {} checks: {} holds, {} violated, {} not_applicable\n",
            card.instances.len(),
            s.checks,
            s.holds,
            s.violated,
            s.not_applicable
        ),
    )?;
    if card.any_violated() {
        let first = card.checks.iter().find(|c| c.verdict == harness::Verdict::Violated).expect("counted");
        return Err(Failure::math("violated", format!("{} on {} and {} more", first.name(), first.instance, s.violated - 1)));
    }
    Ok(EXIT_OK)
}

fn cmd_secants(a: &SecantsArgs, out: Out<'_>) -> CmdResult {
    let b = io::read_points(&a.file)?;
    check_k(b.space(), a.k)?;
    let idx = SecantIndex::build(&b);
    let report = blockingset::secant_report(&b, a.k, a.p0, &idx);
    emit(out, &io::to_json(&report))?;
    Ok(EXIT_OK)
}

fn cmd_project(a: &ProjectArgs, out: Out<'_>) -> CmdResult {
    let b = io::read_points(&a.file)?;
    let sp = b.space();
    check_k(sp, a.k)?;
    let centre = match &a.centre {
        Some(c) => sp.point(c)?,
        None => {
            let idx = SecantIndex::build(&b);
            let r = *blockingset::off_secant_points(&b, &idx)
                .first()
                .ok_or_else(|| Failure::math("not_found", "every point lies in B or on a secant"))?;
            sp.point_at(r)
        }
    };
    let normal = match &a.normal {
        Some(v) => v.clone(),
        None => {
            let i = centre.coords().iter().position(|&x| x != 0).expect("nonzero");
            let mut v = vec![0; sp.dim() + 1];
            v[i] = 1;
            v
        }
    };
    let h = sp.hyperplane(&normal)?;
    let image = sp.project(&b, &centre, &h)?.restrict_to(&h)?;
    if let Some(path) = &a.out {
        io::write_points(path, &image)?;
    }
    let kk = a.k.min(image.space().dim() as i64 - 1);
    let (blocking, small, minimal) = if kk >= 1 {
        let blocking = blockingset::is_k_blocking(&image, kk)?.blocking;
        let minimal = blocking && blockingset::is_minimal(&image, kk, blockingset::MinimalityMethod::Direct)?.minimal;
        (Some(blocking), Some(blockingset::is_small(&image, kk)), Some(minimal))
    } else {
        (None, None, None)
    };
    let summary = json!({
        "centre": centre.coords(),
        "normal": normal,
        "source_size": b.len(),
        "image_size": image.len(),
        "blocking": blocking,
        "small": small,
        "minimal": minimal,
    });
    emit(out, &io::to_json(&summary))?;
    Ok(EXIT_OK)
}

fn cmd_spread_dump(a: &FieldArgs, out: Out<'_>) -> CmdResult {
    let ctx = SpreadContext::new(ProjSpace::new(a.n, Field::conway(a.p, a.t)?)?, a.e)?;
    let mut text = String::new();
    for r in 0..ctx.big().num_points() {
        let small: Vec<String> = ctx.element_ranks(r).iter().map(u32::to_string).collect();
        text.push_str(&format!("{r} : {}\n", small.join(" ")));
    }
    emit(out, &text)?;
    Ok(EXIT_OK)
}

/// Entry point for the binary.
pub fn main_with_args() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    run(std::env::args_os(), &mut out, &mut err)
}
