//! Command-line surface. Every command writes one JSON document to stdout.
//!
//! Exit codes: 0 success, 1 verification or round-trip failure, 2 bad
//! arguments or input, 3 enumeration budget exceeded.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bijection::{mu, nu, tuple_profile, VectorTuple};
use crate::counting::{build_report, verify, CountReport, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::flags::{adapt_to_flag, image_flag, standard_basis, Flag};
use crate::format::{parse_blocks, write_map, write_matrix, Block};
use crate::gf::{Automorphism, FieldCtx};
use crate::linalg::{Matrix, Vector};
use crate::semilinear::{map_at, map_count, RankProfile, SemilinearMap};

#[derive(Debug, Parser)]
#[command(name = "semilin", version, about = "Count and enumerate semilinear endomorphisms over finite fields")]
pub struct Cli {
    /// Render tables (count, verify) or indented JSON instead of compact JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// `p^d`, `p^d/c_0,...,c_d`, or a prime power `q`.
    #[arg(long)]
    pub field: String,
    #[arg(long)]
    pub g: usize,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form counts for every rank profile.
    Count {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, requires = "s")]
        r: Option<usize>,
        #[arg(long, requires = "r")]
        s: Option<usize>,
    },
    /// Compare the closed forms with exhaustive enumeration.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 0)]
        tau: u32,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Adapt a basis to a flag read as matrix blocks (one vector per column).
    Adapt {
        /// Ordered basis to adapt; the standard basis when omitted.
        #[arg(long)]
        basis: Option<PathBuf>,
        input: Option<PathBuf>,
    },
    /// Map a semilinear endomorphism to its vector tuple.
    Mu { input: Option<PathBuf> },
    /// Rebuild the semilinear endomorphism from a vector tuple.
    Nu {
        /// Overrides a `tau` line in the input.
        #[arg(long)]
        tau: Option<u32>,
        input: Option<PathBuf>,
    },
    /// Check both compositions of the bijection, exhaustively when within budget.
    Roundtrip {
        #[command(flatten)]
        field: FieldArgs,
        /// Every automorphism when omitted.
        #[arg(long)]
        tau: Option<u32>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maps to sample when the space exceeds the budget.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// Describe a field: modulus and automorphisms.
    FieldInfo {
        #[arg(long)]
        field: String,
    },
}

#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub status: i32,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. } => 3,
        _ => 2,
    }
}

fn render<T: Serialize>(value: &T, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .expect("report serializes");
    s.push('\n');
    s
}

fn codes(vs: &[Vector]) -> Vec<Vec<u32>> {
    vs.iter().map(Vector::codes).collect()
}

fn one_based(pivots: &[usize]) -> Vec<usize> {
    pivots.iter().map(|j| j + 1).collect()
}

/// Aligned table for `count` and `verify` reports.
pub fn render_table(report: &CountReport) -> String {
    let mut rows = vec![vec!["r".to_string(), "s".into(), "theorem".into(), "staged".into(), "enumerated".into(), "match".into()]];
    for c in &report.cells {
        rows.push(vec![
            c.r.to_string(),
            c.s.to_string(),
            c.theorem.clone(),
            c.staged.clone(),
            c.enumerated.clone().unwrap_or_else(|| "-".into()),
            c.matches.to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..6).map(|i| rows.iter().map(|r| r[i].len()).max().unwrap()).collect();
    let tau = report.tau.map_or("-".to_string(), |t| t.to_string());
    let mut out = format!("field {}  g {}  tau {}\n", report.field, report.g, tau);
    for row in rows {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    let c = &report.corollaries;
    out.push_str(&format!(
        "total {} (expected {})  gl {}  nilpotent {}  total_mass {}\n",
        report.totals.theorem, report.totals.expected, c.gl, c.nilpotent, c.total_mass
    ));
    out
}

fn single_field(blocks: &[Block]) -> Result<FieldCtx> {
    let first = blocks.first().ok_or_else(|| Error::Parse("no input blocks".into()))?;
    if blocks.iter().any(|b| b.field != first.field) {
        return Err(Error::Parse("all blocks must use the same field".into()));
    }
    Ok(first.field.clone())
}

#[derive(Serialize)]
struct AdaptOutput {
    field: String,
    g: usize,
    dims: Vec<usize>,
    basis: Vec<Vec<u32>>,
    pivot_sets: Vec<Vec<usize>>,
}

fn cmd_adapt(basis: Option<&str>, input: &str) -> Result<AdaptOutput> {
    let blocks = parse_blocks(input)?;
    let ctx = single_field(&blocks)?;
    let g = blocks[0].matrix.rows();
    let members: Vec<Vec<Vector>> = blocks.iter().map(|b| b.matrix.columns()).collect();
    let e = match basis {
        Some(text) => {
            let b = parse_blocks(text)?;
            let bctx = single_field(&b)?;
            if bctx != ctx || b.len() != 1 {
                return Err(Error::Parse("basis must be one block over the flag's field".into()));
            }
            b[0].matrix.columns()
        }
        None => standard_basis(g),
    };
    let flag = Flag::new(&ctx, g, members)?;
    let adapted = adapt_to_flag(&ctx, &e, &flag)?;
    Ok(AdaptOutput {
        field: ctx.spec(),
        g,
        dims: flag.dims(),
        basis: codes(&adapted.vectors),
        pivot_sets: adapted.pivot_sets.iter().map(|p| one_based(p)).collect(),
    })
}

#[derive(Serialize)]
struct MuOutput {
    field: String,
    g: usize,
    tau: u32,
    profile: RankProfile,
    flag_dims: Vec<usize>,
    adapted_basis: Vec<Vec<u32>>,
    tuple: Vec<Vec<u32>>,
    block: String,
}

fn cmd_mu(input: &str) -> Result<MuOutput> {
    let blocks = parse_blocks(input)?;
    let [block] = <[Block; 1]>::try_from(blocks).map_err(|_| Error::Parse("expected exactly one map block".into()))?;
    let ctx = block.field.clone();
    let map = block.into_map()?;
    let flag = image_flag(&ctx, &map);
    let adapted = adapt_to_flag(&ctx, &standard_basis(map.dim()), &flag)?;
    let t = mu(&ctx, &map);
    Ok(MuOutput {
        field: ctx.spec(),
        g: map.dim(),
        tau: map.tau().exponent(),
        profile: map.profile(&ctx),
        flag_dims: flag.dims(),
        adapted_basis: codes(&adapted.vectors),
        tuple: codes(t.vectors()),
        block: write_matrix(&ctx, &t.to_matrix()),
    })
}

#[derive(Serialize)]
struct NuOutput {
    field: String,
    g: usize,
    tau: u32,
    profile: RankProfile,
    matrix: Vec<Vec<u32>>,
    block: String,
}

fn cmd_nu(tau: Option<u32>, input: &str) -> Result<NuOutput> {
    let blocks = parse_blocks(input)?;
    let [block] = <[Block; 1]>::try_from(blocks).map_err(|_| Error::Parse("expected exactly one tuple block".into()))?;
    let ctx = block.field.clone();
    let aut = ctx.automorphism(tau.or(block.tau).unwrap_or(0))?;
    let t = VectorTuple::from_matrix(&block.matrix)?;
    let profile = tuple_profile(&ctx, &t).ok_or(Error::NotInX)?;
    let map = nu(&ctx, &t, aut)?;
    Ok(NuOutput {
        field: ctx.spec(),
        g: map.dim(),
        tau: aut.exponent(),
        profile,
        matrix: codes(&map.matrix().row_vectors()),
        block: write_map(&ctx, &map),
    })
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ProfileTally {
    pub r: usize,
    pub s: usize,
    pub checked: u64,
    pub passed: u64,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CheckSummary {
    pub checked: u64,
    pub passed: u64,
    pub per_profile: Vec<ProfileTally>,
}

impl CheckSummary {
    fn from_counts(g: usize, counts: &[(u64, u64)]) -> Self {
        let width = g + 1;
        let per_profile: Vec<ProfileTally> = RankProfile::all(g)
            .map(|p| {
                let (checked, passed) = counts[p.r * width + p.s];
                ProfileTally { r: p.r, s: p.s, checked, passed }
            })
            .collect();
        CheckSummary {
            checked: per_profile.iter().map(|t| t.checked).sum(),
            passed: per_profile.iter().map(|t| t.passed).sum(),
            per_profile,
        }
    }

    pub fn ok(&self) -> bool {
        self.checked == self.passed
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RoundtripRun {
    pub tau: u32,
    pub mode: &'static str,
    /// `ν(μ(F)) = F`
    pub maps: CheckSummary,
    /// `μ(ν(x)) = x`
    pub tuples: CheckSummary,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RoundtripReport {
    pub field: String,
    pub g: usize,
    pub runs: Vec<RoundtripRun>,
    pub passed: bool,
}

const ROUNDTRIP_CHUNK: usize = 1 << 10;

fn tally<I>(g: usize, items: &[I], check: impl Fn(&I) -> (RankProfile, bool) + Sync) -> Vec<(u64, u64)>
where
    I: Sync,
{
    let width = g + 1;
    let partials: Vec<Vec<(u64, u64)>> = items
        .par_chunks(ROUNDTRIP_CHUNK)
        .map(|chunk| {
            let mut counts = vec![(0u64, 0u64); width * width];
            for item in chunk {
                let (p, ok) = check(item);
                let slot = &mut counts[p.r * width + p.s];
                slot.0 += 1;
                slot.1 += ok as u64;
            }
            counts
        })
        .collect();
    let mut counts = vec![(0u64, 0u64); width * width];
    for part in partials {
        for (acc, (c, p)) in counts.iter_mut().zip(part) {
            acc.0 += c;
            acc.1 += p;
        }
    }
    counts
}

fn random_matrix(ctx: &FieldCtx, g: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let codes: Vec<u32> = (0..g * g).map(|_| rng.gen_range(0..ctx.order())).collect();
    Matrix::from_codes(ctx, g, g, &codes).expect("codes are in range")
}

/// Checks `ν∘μ = id` on maps and `μ∘ν = id` on tuples for one automorphism.
pub fn roundtrip_run(ctx: &FieldCtx, g: usize, tau: Automorphism, budget: u64, seed: u64, samples: u64) -> RoundtripRun {
    let total = map_count(ctx.order(), g);
    let (mode, matrices): (&'static str, Vec<Matrix>) = if total <= budget as u128 {
        ("exhaustive", (0..total as u64).map(|i| map_at(ctx, g, tau, i).matrix().clone()).collect())
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ tau.exponent() as u64);
        ("sampled", (0..samples).map(|_| random_matrix(ctx, g, &mut rng)).collect())
    };
    let maps = tally(g, &matrices, |m| {
        let map = SemilinearMap::new(m.clone(), tau).expect("square");
        let back = nu(ctx, &mu(ctx, &map), tau);
        (map.profile(ctx), back.as_ref() == Ok(&map))
    });
    let tuples = tally(g, &matrices, |m| {
        let t = VectorTuple::from_matrix(m).expect("square");
        let profile = tuple_profile(ctx, &t).expect("every tuple lies in some X(r,s)");
        let ok = match nu(ctx, &t, tau) {
            Ok(map) => mu(ctx, &map) == t && map.profile(ctx) == profile,
            Err(_) => false,
        };
        (profile, ok)
    });
    RoundtripRun {
        tau: tau.exponent(),
        mode,
        maps: CheckSummary::from_counts(g, &maps),
        tuples: CheckSummary::from_counts(g, &tuples),
    }
}

fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool").install(f),
        None => f(),
    }
}

#[derive(Serialize)]
struct AutomorphismInfo {
    exponent: u32,
    fixed_field_order: u64,
}

#[derive(Serialize)]
struct FieldInfo {
    field: String,
    p: u32,
    d: u32,
    q: u32,
    modulus: Vec<u32>,
    automorphisms: Vec<AutomorphismInfo>,
}

fn read_source(path: Option<&PathBuf>, stdin: &mut dyn std::io::Read) -> Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

/// Runs a parsed command; `stdin` feeds commands whose input path is omitted.
pub fn execute(cli: &Cli, stdin: &mut dyn std::io::Read) -> Result<Output> {
    let pretty = cli.pretty;
    let ok = |text| Ok(Output { text, status: 0 });
    match &cli.command {
        Command::Count { field, r, s } => {
            let ctx: FieldCtx = field.field.parse()?;
            let mut report = build_report(ctx.spec(), field.g, ctx.order() as u64, None, None)?;
            if let (Some(r), Some(s)) = (r, s) {
                RankProfile::new(*r, *s, field.g)?;
                report.cells.retain(|c| c.r == *r && c.s == *s);
            }
            let status = if report.passed() { 0 } else { 1 };
            let text = if pretty { render_table(&report) } else { render(&report, false) };
            Ok(Output { text, status })
        }
        Command::Verify { field, tau, run } => {
            let ctx: FieldCtx = field.field.parse()?;
            let aut = ctx.automorphism(*tau)?;
            let report = verify(&ctx, field.g, aut, run.budget, run.threads)?;
            let status = if report.passed() { 0 } else { 1 };
            let text = if pretty { render_table(&report) } else { render(&report, false) };
            Ok(Output { text, status })
        }
        Command::Adapt { basis, input } => {
            let text = read_source(input.as_ref(), stdin)?;
            let basis_text = basis.as_ref().map(|p| read_source(Some(p), stdin)).transpose()?;
            ok(render(&cmd_adapt(basis_text.as_deref(), &text)?, pretty))
        }
        Command::Mu { input } => ok(render(&cmd_mu(&read_source(input.as_ref(), stdin)?)?, pretty)),
        Command::Nu { tau, input } => ok(render(&cmd_nu(*tau, &read_source(input.as_ref(), stdin)?)?, pretty)),
        Command::Roundtrip { field, tau, run, seed, samples } => {
            let ctx: FieldCtx = field.field.parse()?;
            let auts: Vec<Automorphism> = match tau {
                Some(t) => vec![ctx.automorphism(*t)?],
                None => ctx.automorphisms().collect(),
            };
            let runs: Vec<RoundtripRun> = in_pool(run.threads, || {
                auts.iter().map(|&a| roundtrip_run(&ctx, field.g, a, run.budget, *seed, *samples)).collect()
            });
            let passed = runs.iter().all(|r| r.maps.ok() && r.tuples.ok());
            let report = RoundtripReport { field: ctx.spec(), g: field.g, runs, passed };
            Ok(Output { text: render(&report, pretty), status: if passed { 0 } else { 1 } })
        }
        Command::FieldInfo { field } => {
            let ctx: FieldCtx = field.parse()?;
            let automorphisms = ctx
                .automorphisms()
                .map(|a| AutomorphismInfo {
                    exponent: a.exponent(),
                    fixed_field_order: ctx.elements().filter(|&x| ctx.frobenius(x, a) == x).count() as u64,
                })
                .collect();
            let info = FieldInfo {
                field: ctx.spec(),
                p: ctx.characteristic(),
                d: ctx.degree(),
                q: ctx.order(),
                modulus: ctx.modulus().to_vec(),
                automorphisms,
            };
            ok(render(&info, pretty))
        }
    }
}
