//! The `balsim` command line: orbit dumps, simplex reports, arithmetic
//! multiplicity tables, decompositions, theorem suites, exhaustive searches,
//! PGM rendering and the closed-form/cone benchmark.
//!
//! Exit codes: 0 success/pass, 1 verified failure or witness found, 2 usage
//! error. JSON reports echo their configuration so a run can be replayed.

use std::fmt::Write as _;
use std::io::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::{analytic_degenerate, analytic_period2, decompose, ArithSimplex};
use crate::automaton::WeightScheme;
use crate::orbit::{ClosedFormOrbit, ConeOrbit, GridOrbit, OrbitSource, Seed, DEFAULT_CELL_BUDGET};
use crate::residue::{Modulus, Residue};
use crate::search::{search_balanced, shard_bounds, SearchOptions, SearchShard};
use crate::simplex::{extract, ResidueMultiset, SimplexSpec};
use crate::verify::{self, TheoremId, Verdict, DEFAULT_RNG_SEED};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "balsim",
    about = "Balanced simplices in orbits of additive cellular automata over Z/mZ",
    version
)]
pub struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Cell budget for cone evaluation (env SIMPLEX_BUDGET overrides the
    /// default; this flag overrides both).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Seed for randomized suites; echoed in reports.
    #[arg(long, global = true, default_value_t = DEFAULT_RNG_SEED)]
    pub rng_seed: u64,
    /// Worker threads for sharded searches (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print orbit values over a space/time window.
    Orbit(OrbitArgs),
    /// Extract one oriented simplex as a residue multiset.
    Simplex(SimplexArgs),
    /// Multiplicity table of an arithmetic simplex AS(a, d, s).
    Arith(ArithArgs),
    /// Decompose an orbit simplex into arithmetic subsimplices.
    Decompose(DecomposeArgs),
    /// Run a theorem verifier.
    Check(CheckArgs),
    /// Exhaustive Steinhaus-triangle search.
    Search(SearchCmd),
    /// Render a 1-D orbit as a binary PGM image.
    Render(RenderArgs),
    /// Compare closed-form and cone evaluation on growing simplices.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct OrbitArgs {
    #[arg(long = "mod")]
    pub modulus: u32,
    /// Stencil: `q=1;r=1;w=2,1,1`, `pascal:2`, or a bare 1-D list `2,1,1`.
    #[arg(long)]
    pub weights: String,
    /// Seed: `ap:a,d`, `aa:a:d1,...`, `delta`, `interlace`, `periodic:...`.
    #[arg(long)]
    pub seed: String,
    /// Space range lo:hi (inclusive), e.g. `-4:12`.
    #[arg(long, default_value = "0:15", allow_hyphen_values = true)]
    pub space: String,
    /// Time range lo:hi (inclusive).
    #[arg(long, default_value = "0:15")]
    pub time: String,
}

#[derive(Args, Debug, Serialize)]
pub struct SimplexArgs {
    #[arg(long = "mod")]
    pub modulus: u32,
    #[arg(long)]
    pub weights: String,
    #[arg(long)]
    pub seed: String,
    /// Apex coordinates `i_1,...,i_q,j` (last entry is time).
    #[arg(long, allow_hyphen_values = true)]
    pub apex: String,
    /// Orientation string such as `++`, `-+` or `+-+`.
    #[arg(long, allow_hyphen_values = true)]
    pub orient: String,
    #[arg(long)]
    pub size: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct ArithArgs {
    #[arg(long = "mod")]
    pub modulus: u32,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub a: i64,
    /// Common differences, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub d: String,
    #[arg(long)]
    pub size: u64,
    /// Also emit the analytic table (degenerate or period-2 form) when the
    /// shape allows it.
    #[arg(long, default_value_t = false)]
    pub analytic: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct DecomposeArgs {
    #[arg(long = "mod")]
    pub modulus: u32,
    #[arg(long)]
    pub weights: String,
    /// Arithmetic seed (`ap:` or `aa:`).
    #[arg(long)]
    pub seed: String,
    #[arg(long, allow_hyphen_values = true)]
    pub apex: String,
    #[arg(long, allow_hyphen_values = true)]
    pub orient: String,
    #[arg(long)]
    pub size: u64,
    /// Extraction step; must be a multiple of ord(sigma).
    #[arg(long)]
    pub alpha: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct CheckArgs {
    /// Theorem id (e.g. `main-orbit`/`thm1`, `arith-balanced`/`thm2`,
    /// `tetra-even`/`thm5`, `chap1`, `chap2`, ...).
    pub theorem: String,
    #[arg(long = "mod")]
    pub modulus: Option<u32>,
    /// Moduli list for the sweep verifiers.
    #[arg(long)]
    pub moduli: Option<String>,
    /// Stencil text; defaults to `pascal:q` where a stencil is needed.
    #[arg(long)]
    pub weights: Option<String>,
    /// Simplex dimension n for arith/pascal suites.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub a: i64,
    /// Common differences, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub orient: Option<String>,
    /// Explicit sizes, comma separated (arith-balanced only).
    #[arg(long)]
    pub sizes: Option<String>,
    /// How many admissible sizes to test.
    #[arg(long, default_value_t = 2)]
    pub size_count: usize,
    /// Multiples of the period per congruence class (tetra-even).
    #[arg(long, default_value_t = 2)]
    pub periods: usize,
    /// Sampled apexes per size.
    #[arg(long, default_value_t = 16)]
    pub apexes: usize,
    /// Minimum discovered instances before an antisym run counts.
    #[arg(long, default_value_t = 5)]
    pub min_instances: u64,
    /// Largest simplex size for sigma-necessity.
    #[arg(long)]
    pub bound: Option<u64>,
    /// Apex window half-width for scans.
    #[arg(long, default_value_t = 4)]
    pub window: u64,
    /// Exhaustive difference sweep (arith-balanced).
    #[arg(long, default_value_t = false)]
    pub exhaustive: bool,
    /// Random difference tuples when not exhaustive.
    #[arg(long, default_value_t = 25)]
    pub samples: usize,
    /// Sizes per class for chap1 / steinhaus sizes for chap2.
    #[arg(long, default_value_t = 2)]
    pub count: usize,
    /// Sizes of the both-orientations class for chap2.
    #[arg(long, default_value_t = 1)]
    pub both_sizes: usize,
    /// Largest time for the pascal multinomial scan.
    #[arg(long, default_value_t = 12)]
    pub time_max: u64,
    /// Antisymmetry pair, paper-style vertex indices.
    #[arg(long, default_value_t = 0)]
    pub u: usize,
    #[arg(long, default_value_t = 1)]
    pub v: usize,
}

#[derive(Args, Debug)]
pub struct SearchCmd {
    #[command(subcommand)]
    pub shape: SearchShape,
}

#[derive(Subcommand, Debug)]
pub enum SearchShape {
    /// Enumerate balanced Steinhaus triangles over all first rows.
    Steinhaus(SteinhausArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct SteinhausArgs {
    #[arg(long = "mod")]
    pub modulus: u32,
    #[arg(long)]
    pub size: u64,
    /// Number of contiguous shards run on the thread pool.
    #[arg(long, default_value_t = 1)]
    pub shards: usize,
    /// `on` canonicalizes first rows under unit scaling (exact counts).
    #[arg(long, default_value = "off")]
    pub symmetry: String,
    /// Only count; do not collect the balanced rows.
    #[arg(long, default_value_t = false)]
    pub count_only: bool,
    /// Run one explicit shard `start:end` instead of the full space.
    #[arg(long, allow_hyphen_values = true)]
    pub shard: Option<String>,
    /// Checkpoint file (`start end status count` per line); completed
    /// shards are skipped on resume.
    #[arg(long)]
    pub checkpoint: Option<String>,
    /// Unsharded size cap on m^s.
    #[arg(long)]
    pub limit: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct RenderArgs {
    #[arg(long = "mod")]
    pub modulus: u32,
    #[arg(long)]
    pub weights: String,
    #[arg(long)]
    pub seed: String,
    #[arg(long)]
    pub width: usize,
    #[arg(long)]
    pub height: usize,
    /// Leftmost space coordinate of the image.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub x0: i64,
    #[arg(long)]
    pub out: String,
}

#[derive(Args, Debug, Serialize)]
pub struct BenchArgs {
    #[arg(long = "mod")]
    pub modulus: u32,
    #[arg(long)]
    pub weights: String,
    /// Arithmetic seed (`ap:` or `aa:`).
    #[arg(long)]
    pub seed: String,
    /// Simplex sizes to time, comma separated.
    #[arg(long, default_value = "10,50,200")]
    pub sizes: String,
    #[arg(long, allow_hyphen_values = true)]
    pub orient: Option<String>,
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I>(argv: I) -> i32
where
    I: IntoIterator<Item = String>,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) | Error::ZeroModulus => 2,
                _ => 1,
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let budget = cli
        .budget
        .or_else(|| {
            std::env::var("SIMPLEX_BUDGET")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_CELL_BUDGET);
    match &cli.command {
        Command::Orbit(args) => cmd_orbit(cli, args, budget),
        Command::Simplex(args) => cmd_simplex(cli, args, budget),
        Command::Arith(args) => cmd_arith(cli, args),
        Command::Decompose(args) => cmd_decompose(cli, args),
        Command::Check(args) => cmd_check(cli, args),
        Command::Search(cmd) => match &cmd.shape {
            SearchShape::Steinhaus(args) => cmd_search(cli, args),
        },
        Command::Render(args) => cmd_render(cli, args),
        Command::Bench(args) => cmd_bench(cli, args, budget),
    }
}

pub fn parse_weights(text: &str, modulus: Modulus) -> Result<WeightScheme> {
    let text = text.trim();
    if text.contains(';') || text.starts_with("pascal:") {
        WeightScheme::parse(text, modulus)
    } else {
        let weights: Vec<i64> = text
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<_>>()?;
        WeightScheme::line(&weights, modulus)
    }
}

fn parse_csv<T: std::str::FromStr>(text: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    text.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

fn parse_range(text: &str) -> Result<(i64, i64)> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected lo:hi, got {text:?}")))?;
    let lo: i64 = lo.trim().parse().map_err(|e: std::num::ParseIntError| Error::Parse(e.to_string()))?;
    let hi: i64 = hi.trim().parse().map_err(|e: std::num::ParseIntError| Error::Parse(e.to_string()))?;
    if hi < lo {
        return Err(Error::Parse(format!("empty range {text:?}")));
    }
    Ok((lo, hi))
}

fn parse_apex(text: &str) -> Result<(Vec<i64>, u64)> {
    let coords: Vec<i64> = parse_csv(text)?;
    if coords.len() < 2 {
        return Err(Error::Parse("apex needs at least space and time".into()));
    }
    let time = *coords.last().unwrap();
    if time < 0 {
        return Err(Error::Parse("apex time must be non-negative".into()));
    }
    Ok((coords[..coords.len() - 1].to_vec(), time as u64))
}

fn residues(modulus: Modulus, raw: &[i64]) -> Vec<Residue> {
    raw.iter().map(|&v| modulus.residue(v as i128)).collect()
}

/// Multiset counts serialized as (residue, count) pairs in residue order.
#[derive(Serialize)]
struct MultisetReport {
    counts: Vec<(u32, u64)>,
    total: u64,
    balanced: bool,
    witness: Option<(u32, u32)>,
}

impl MultisetReport {
    fn new(ms: &ResidueMultiset) -> Self {
        let witness = ms.balance_witness().map(|(a, b)| (a.value(), b.value()));
        MultisetReport {
            counts: ms.nonzero_counts(),
            total: ms.total(),
            balanced: witness.is_none(),
            witness,
        }
    }

    fn csv(&self, modulus: u32) -> String {
        let mut out = String::from("residue,count\n");
        let table: std::collections::BTreeMap<u32, u64> = self.counts.iter().copied().collect();
        for x in 0..modulus {
            let c = table.get(&x).copied().unwrap_or(0);
            let _ = writeln!(out, "{x},{c}");
        }
        out
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable report"));
}

fn cmd_orbit(cli: &Cli, args: &OrbitArgs, budget: u64) -> Result<i32> {
    let modulus = Modulus::new(args.modulus)?;
    let scheme = parse_weights(&args.weights, modulus)?;
    let seed = Seed::parse(&args.seed, scheme.dim(), modulus)?;
    if scheme.dim() != 1 {
        return Err(Error::Parse("orbit dumps are one-dimensional; use the library for q > 1".into()));
    }
    let (lo, hi) = parse_range(&args.space)?;
    let (t0, t1) = parse_range(&args.time)?;
    if t0 < 0 {
        return Err(Error::Parse("time range must be non-negative".into()));
    }
    let width = (hi - lo + 1) as usize;
    let grid = GridOrbit::build(&scheme, &seed, &[lo], &[width], (t1 + 1) as usize)?;
    let _ = budget;
    let mut rows = Vec::new();
    for j in t0..=t1 {
        let mut row = Vec::with_capacity(width);
        for i in lo..=hi {
            row.push(grid.value(&[i], j as u64)?.value());
        }
        rows.push(row);
    }
    match cli.format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                config: &'a OrbitArgs,
                rng_seed: u64,
                rows: &'a [Vec<u32>],
            }
            print_json(&Report { config: args, rng_seed: cli.rng_seed, rows: &rows });
        }
        OutputFormat::Csv | OutputFormat::Text => {
            let sep = if cli.format == OutputFormat::Csv { "," } else { " " };
            for row in &rows {
                println!(
                    "{}",
                    row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
                );
            }
        }
    }
    Ok(0)
}

fn cmd_simplex(cli: &Cli, args: &SimplexArgs, budget: u64) -> Result<i32> {
    let modulus = Modulus::new(args.modulus)?;
    let scheme = parse_weights(&args.weights, modulus)?;
    let seed = Seed::parse(&args.seed, scheme.dim(), modulus)?;
    let (space, time) = parse_apex(&args.apex)?;
    let orientation = SimplexSpec::parse_orientation(&args.orient)?;
    let spec = SimplexSpec::new(space, time, orientation, args.size)?;
    let ms = match &seed {
        Seed::Arithmetic { first, diffs } if scheme.sigma().is_invertible() => {
            let orbit = ClosedFormOrbit::new(&scheme, *first, diffs.clone())?;
            extract(&orbit, &spec)?
        }
        _ => {
            let orbit = ConeOrbit::new(&scheme, seed, budget);
            extract(&orbit, &spec)?
        }
    };
    let report = MultisetReport::new(&ms);
    match cli.format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                config: &'a SimplexArgs,
                rng_seed: u64,
                #[serde(flatten)]
                multiset: &'a MultisetReport,
            }
            print_json(&Report { config: args, rng_seed: cli.rng_seed, multiset: &report });
        }
        OutputFormat::Csv => print!("{}", report.csv(args.modulus)),
        OutputFormat::Text => {
            println!("total {} balanced {}", report.total, report.balanced);
            for (x, c) in &report.counts {
                println!("{x}: {c}");
            }
        }
    }
    Ok(0)
}

fn cmd_arith(cli: &Cli, args: &ArithArgs) -> Result<i32> {
    let modulus = Modulus::new(args.modulus)?;
    let d_raw: Vec<i64> = parse_csv(&args.d)?;
    let diffs = residues(modulus, &d_raw);
    let t = ArithSimplex::new(modulus.residue(args.a as i128), diffs.clone(), args.size)?;
    let ms = t.as_multiset()?;
    let report = MultisetReport::new(&ms);
    let analytic = if args.analytic {
        analytic_table(&t)
    } else {
        None
    };
    match cli.format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                config: &'a ArithArgs,
                rng_seed: u64,
                #[serde(flatten)]
                multiset: &'a MultisetReport,
                #[serde(skip_serializing_if = "Option::is_none")]
                analytic: Option<Vec<u64>>,
            }
            print_json(&Report {
                config: args,
                rng_seed: cli.rng_seed,
                multiset: &report,
                analytic,
            });
        }
        OutputFormat::Csv => print!("{}", report.csv(args.modulus)),
        OutputFormat::Text => {
            println!("total {} balanced {}", report.total, report.balanced);
            for (x, c) in &report.counts {
                println!("{x}: {c}");
            }
        }
    }
    Ok(0)
}

/// Analytic table for the shapes the closed formulas cover.
fn analytic_table(t: &ArithSimplex) -> Option<Vec<u64>> {
    if t.dimension() != 2 {
        return None;
    }
    let (d1, d2) = (t.diffs[0], t.diffs[1]);
    if d1.is_zero() && d2.is_invertible() {
        return analytic_degenerate(t.first, d2, t.size).ok().map(|tab| tab.by_residue);
    }
    analytic_period2(t.first, d1, d2, t.size).ok().map(|tab| tab.by_residue)
}

fn cmd_decompose(cli: &Cli, args: &DecomposeArgs) -> Result<i32> {
    let modulus = Modulus::new(args.modulus)?;
    let scheme = parse_weights(&args.weights, modulus)?;
    let seed = Seed::parse(&args.seed, scheme.dim(), modulus)?;
    let Seed::Arithmetic { first, diffs } = seed else {
        return Err(Error::Parse("decompose needs an arithmetic seed (ap: or aa:)".into()));
    };
    let (space, time) = parse_apex(&args.apex)?;
    let orientation = SimplexSpec::parse_orientation(&args.orient)?;
    let spec = SimplexSpec::new(space, time, orientation, args.size)?;
    let dec = decompose(&scheme, first, &diffs, &spec, args.alpha)?;
    #[derive(Serialize)]
    struct PartReport {
        index: Vec<u64>,
        first: u32,
        diffs: Vec<u32>,
        size: u64,
    }
    #[derive(Serialize)]
    struct Report<'a> {
        config: &'a DecomposeArgs,
        rng_seed: u64,
        alpha: u64,
        tail: u64,
        verified: bool,
        parts: Vec<PartReport>,
    }
    let report = Report {
        config: args,
        rng_seed: cli.rng_seed,
        alpha: dec.alpha,
        tail: dec.tail,
        verified: dec.verified,
        parts: dec
            .parts
            .iter()
            .map(|p| PartReport {
                index: p.index.clone(),
                first: p.simplex.first.value(),
                diffs: p.simplex.diffs.iter().map(|d| d.value()).collect(),
                size: p.simplex.size,
            })
            .collect(),
    };
    match cli.format {
        OutputFormat::Json => print_json(&report),
        OutputFormat::Csv | OutputFormat::Text => {
            println!("alpha {} tail {} verified {}", report.alpha, report.tail, report.verified);
            for p in &report.parts {
                println!(
                    "{:?} AS({},{:?},{})",
                    p.index, p.first, p.diffs, p.size
                );
            }
        }
    }
    Ok(if dec.verified { 0 } else { 1 })
}

fn required<T: Copy>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::Parse(format!("missing required flag --{flag}")))
}

fn cmd_check(cli: &Cli, args: &CheckArgs) -> Result<i32> {
    let theorem = TheoremId::parse(&args.theorem)
        .ok_or_else(|| Error::Parse(format!("unknown theorem id {:?}", args.theorem)))?;

    // antisym-constraints reports clauses rather than a verdict
    if theorem == TheoremId::AntisymConstraints {
        let modulus = Modulus::new(required(args.modulus, "mod")?)?;
        let scheme = match &args.weights {
            Some(w) => parse_weights(w, modulus)?,
            None => WeightScheme::pascal(1, modulus),
        };
        let d_raw: Vec<i64> = parse_csv(args.d.as_deref().unwrap_or("1"))?;
        let diffs = residues(modulus, &d_raw);
        let orientation = SimplexSpec::parse_orientation(
            args.orient.as_deref().unwrap_or("++"),
        )?;
        let report = verify::antisym_constraints(&scheme, &diffs, &orientation, args.u, args.v)?;
        match cli.format {
            OutputFormat::Json => {
                #[derive(Serialize)]
                struct Report<'a> {
                    config: &'a CheckArgs,
                    rng_seed: u64,
                    #[serde(flatten)]
                    constraints: &'a verify::ConstraintReport,
                }
                print_json(&Report { config: args, rng_seed: cli.rng_seed, constraints: &report });
            }
            _ => {
                for c in &report.clauses {
                    println!("{} {}", if c.holds { "ok  " } else { "FAIL" }, c.name);
                }
                if let Some(w) = &report.weight_form {
                    println!("weight form {w:?}");
                }
            }
        }
        return Ok(if report.satisfied() { 0 } else { 1 });
    }

    let verdict = run_verifier(theorem, cli, args)?;
    match cli.format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                config: &'a CheckArgs,
                rng_seed: u64,
                #[serde(flatten)]
                verdict: &'a Verdict,
                passed: bool,
            }
            print_json(&Report {
                config: args,
                rng_seed: cli.rng_seed,
                verdict: &verdict,
                passed: verdict.passed(),
            });
        }
        _ => {
            println!(
                "{}: {} ({} instances, {} failures{})",
                verdict.theorem.name(),
                if verdict.passed() { "PASS" } else { "FAIL" },
                verdict.instances,
                verdict.failures.len(),
                if verdict.inconclusive { ", inconclusive" } else { "" }
            );
            for note in &verdict.notes {
                println!("  note: {note}");
            }
            for f in &verdict.failures {
                println!("  FAIL {} -> {}", f.parameters, f.witness);
            }
        }
    }
    Ok(if verdict.passed() { 0 } else { 1 })
}

fn run_verifier(theorem: TheoremId, cli: &Cli, args: &CheckArgs) -> Result<Verdict> {
    let moduli = |fallback: Vec<u32>| -> Result<Vec<u32>> {
        match &args.moduli {
            Some(list) => parse_csv(list),
            None => match args.modulus {
                Some(m) => Ok(vec![m]),
                None => Ok(fallback),
            },
        }
    };
    match theorem {
        TheoremId::MainOrbit => {
            let modulus = Modulus::new(required(args.modulus, "mod")?)?;
            let scheme = match &args.weights {
                Some(w) => parse_weights(w, modulus)?,
                None => WeightScheme::pascal(1, modulus),
            };
            let d_raw: Vec<i64> = parse_csv(args.d.as_deref().unwrap_or("1"))?;
            let diffs = residues(modulus, &d_raw);
            let orientation = SimplexSpec::parse_orientation(
                args.orient.as_deref().unwrap_or(&"+".repeat(scheme.dim() + 1)),
            )?;
            verify::verify_thm1(
                &scheme,
                modulus.residue(args.a as i128),
                &diffs,
                &orientation,
                args.size_count,
                args.apexes,
                cli.rng_seed,
            )
        }
        TheoremId::ArithBalanced => {
            let modulus = Modulus::new(required(args.modulus, "mod")?)?;
            let n = required(args.n, "n")?;
            let sizes = match &args.sizes {
                Some(list) => Some(parse_csv(list)?),
                None => None,
            };
            verify::verify_thm2(modulus, n, args.exhaustive, args.samples, sizes, cli.rng_seed)
        }
        TheoremId::TriangleNecessary => {
            verify::verify_triangle_necessary(&moduli((4..=10).collect())?)
        }
        TheoremId::TetraNecessary => verify::verify_tetra_necessary(&moduli((4..=10).collect())?),
        TheoremId::TetraMod3Impossible => verify::verify_tetra_mod3(&moduli(vec![3, 9])?),
        TheoremId::TetraEven => {
            let modulus = Modulus::new(required(args.modulus, "mod")?)?;
            let d_raw: Vec<i64> = parse_csv(args.d.as_deref().unwrap_or("2,1,3"))?;
            if d_raw.len() != 3 {
                return Err(Error::Parse("tetra-even needs --d d1,d2,d3".into()));
            }
            let d = residues(modulus, &d_raw);
            verify::verify_thm5(
                modulus,
                modulus.residue(args.a as i128),
                [d[0], d[1], d[2]],
                args.periods,
            )
        }
        TheoremId::OrbitTetraEven => {
            let modulus = Modulus::new(required(args.modulus, "mod")?)?;
            let scheme = match &args.weights {
                Some(w) => parse_weights(w, modulus)?,
                None => WeightScheme::pascal(2, modulus),
            };
            let d_raw: Vec<i64> = parse_csv(args.d.as_deref().unwrap_or("2,1"))?;
            if d_raw.len() != 2 {
                return Err(Error::Parse("orbit-tetra-even needs --d d1,d2".into()));
            }
            let d = residues(modulus, &d_raw);
            let orientation =
                SimplexSpec::parse_orientation(args.orient.as_deref().unwrap_or("+++"))?;
            verify::verify_thm6(
                &scheme,
                modulus.residue(args.a as i128),
                &[d[0], d[1]],
                &orientation,
                args.size_count,
                args.apexes,
                cli.rng_seed,
            )
        }
        TheoremId::AntisymTriangle => {
            let modulus = Modulus::new(required(args.modulus, "mod")?)?;
            let scheme = match &args.weights {
                Some(w) => parse_weights(w, modulus)?,
                None => WeightScheme::line(&[0, 1, 1], modulus)?,
            };
            let d_raw: Vec<i64> = parse_csv(args.d.as_deref().unwrap_or("1"))?;
            let orientation =
                SimplexSpec::parse_orientation(args.orient.as_deref().unwrap_or("++"))?;
            verify::verify_antisym(
                &scheme,
                modulus.residue(args.a as i128),
                modulus.residue(d_raw[0] as i128),
                &orientation,
                args.size_count,
                args.min_instances,
            )
        }
        TheoremId::SigmaNecessity => {
            let modulus = Modulus::new(required(args.modulus, "mod")?)?;
            let scheme = match &args.weights {
                Some(w) => parse_weights(w, modulus)?,
                None => return Err(Error::Parse("sigma-necessity needs --weights".into())),
            };
            let d_raw: Vec<i64> = parse_csv(args.d.as_deref().unwrap_or("1"))?;
            let diffs = residues(modulus, &d_raw);
            let n = scheme.dim() as u64 + 1;
            let bound = args.bound.unwrap_or((5 * n + 3).div_ceil(2) + 3);
            verify::verify_sigma_necessity(
                &scheme,
                modulus.residue(args.a as i128),
                &diffs,
                bound,
                args.window,
            )
        }
        TheoremId::PascalCorollary => {
            let modulus = Modulus::new(required(args.modulus, "mod")?)?;
            match args.n {
                // without --n, check the multinomial-coefficient remark
                None => verify::verify_pascal_multinomial(1, modulus, args.time_max),
                Some(n) if args.orient.is_none() && n <= 3 => {
                    verify::verify_pascal_multinomial(n.max(2) - 1, modulus, args.time_max)
                }
                Some(n) => {
                    let orientation = SimplexSpec::parse_orientation(
                        args.orient.as_deref().unwrap_or(&"+".repeat(n)),
                    )?;
                    verify::verify_pascal_corollary(
                        n,
                        modulus,
                        &orientation,
                        args.size_count,
                        args.apexes,
                        cli.rng_seed,
                    )
                }
            }
        }
        TheoremId::Chap1 => {
            let modulus = Modulus::new(required(args.modulus, "mod")?)?;
            let d_raw: Vec<i64> = parse_csv(args.d.as_deref().unwrap_or("1"))?;
            search::verify_chap1(
                modulus,
                modulus.residue(args.a as i128),
                modulus.residue(d_raw[0] as i128),
                args.count,
            )
        }
        TheoremId::Chap2 => {
            let modulus = Modulus::new(required(args.modulus, "mod")?)?;
            search::verify_chap2(modulus, args.count, args.both_sizes)
        }
        TheoremId::AntisymConstraints => unreachable!("handled by cmd_check"),
    }
}

use crate::search;

fn cmd_search(cli: &Cli, args: &SteinhausArgs) -> Result<i32> {
    let modulus = Modulus::new(args.modulus)?;
    let symmetry = match args.symmetry.as_str() {
        "on" => true,
        "off" => false,
        other => return Err(Error::Parse(format!("--symmetry wants on|off, got {other:?}"))),
    };
    let opts = SearchOptions {
        symmetry,
        collect: !args.count_only,
        limit: args.limit.unwrap_or(crate::search::DEFAULT_SEARCH_LIMIT),
    };
    let started = Instant::now();
    let outcome = if let Some(range) = &args.shard {
        let (lo, hi) = parse_range(range)?;
        if lo < 0 {
            return Err(Error::Parse("shard bounds must be non-negative".into()));
        }
        search_balanced(
            modulus,
            args.size,
            Some(SearchShard { start: lo as u64, end: hi as u64 }),
            &opts,
        )?
    } else if let Some(path) = &args.checkpoint {
        run_with_checkpoint(modulus, args, &opts, path)?
    } else if args.shards > 1 {
        search::search_balanced_parallel(modulus, args.size, args.shards, &opts)?
    } else {
        search_balanced(modulus, args.size, None, &opts)?
    };
    let elapsed_ms = started.elapsed().as_millis() as u64;
    #[derive(Serialize)]
    struct Report<'a> {
        config: &'a SteinhausArgs,
        rng_seed: u64,
        space: u64,
        balanced: u64,
        #[serde(skip_serializing_if = "Option::is_none")]
        skipped: Option<String>,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        rows: Vec<Vec<u32>>,
        elapsed_ms: u64,
    }
    let report = Report {
        config: args,
        rng_seed: cli.rng_seed,
        space: outcome.space,
        balanced: outcome.balanced,
        skipped: outcome.skipped.clone(),
        rows: outcome.rows.clone(),
        elapsed_ms,
    };
    match cli.format {
        OutputFormat::Json => print_json(&report),
        OutputFormat::Csv | OutputFormat::Text => {
            println!("space {} balanced {}", outcome.space, outcome.balanced);
            if let Some(reason) = &outcome.skipped {
                println!("skipped: {reason}");
            }
            for row in &outcome.rows {
                println!(
                    "{}",
                    row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                );
            }
        }
    }
    Ok(0)
}

/// Runs the sharded search with a plain-text checkpoint: one
/// `start end status count` line per finished shard; finished shards are
/// skipped when resuming.
fn run_with_checkpoint(
    modulus: Modulus,
    args: &SteinhausArgs,
    opts: &SearchOptions,
    path: &str,
) -> Result<crate::search::SearchOutcome> {
    use std::collections::HashMap;
    let space_u128 = (modulus.get() as u128).pow(args.size as u32);
    if space_u128 > u64::MAX as u128 {
        return Err(Error::BudgetExceeded { needed: space_u128, budget: u64::MAX });
    }
    let space = space_u128 as u64;
    let mut done: HashMap<(u64, u64), u64> = HashMap::new();
    if let Ok(text) = std::fs::read_to_string(path) {
        for line in text.lines() {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() == 4 && fields[2] == "done" {
                if let (Ok(a), Ok(b), Ok(c)) =
                    (fields[0].parse(), fields[1].parse(), fields[3].parse())
                {
                    done.insert((a, b), c);
                }
            }
        }
    }
    let mut file = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
    let mut outcome = crate::search::SearchOutcome {
        space,
        balanced: 0,
        rows: Vec::new(),
        skipped: None,
    };
    for (start, end) in shard_bounds(space, args.shards.max(1)) {
        if let Some(&count) = done.get(&(start, end)) {
            outcome.balanced += count;
            continue;
        }
        let part = search_balanced(modulus, args.size, Some(SearchShard { start, end }), opts)?;
        outcome.balanced += part.balanced;
        outcome.rows.extend(part.rows);
        outcome.skipped = outcome.skipped.or(part.skipped);
        writeln!(file, "{start} {end} done {}", part.balanced)?;
    }
    Ok(outcome)
}

fn cmd_render(cli: &Cli, args: &RenderArgs) -> Result<i32> {
    let modulus = Modulus::new(args.modulus)?;
    let scheme = parse_weights(&args.weights, modulus)?;
    if scheme.dim() != 1 {
        return Err(Error::Parse("render needs a one-dimensional stencil".into()));
    }
    if args.width == 0 || args.height == 0 {
        return Err(Error::Parse("width and height must be >= 1".into()));
    }
    let seed = Seed::parse(&args.seed, 1, modulus)?;
    let grid = GridOrbit::build(&scheme, &seed, &[args.x0], &[args.width], args.height)?;
    let m = modulus.get();
    let scale = if m <= 1 { 0 } else { 255 / (m as u64 - 1) };
    let mut pixels = Vec::with_capacity(args.width * args.height);
    for j in 0..args.height as u64 {
        for i in 0..args.width as i64 {
            let v = grid.value(&[args.x0 + i], j)?.value() as u64;
            pixels.push((v * scale).min(255) as u8);
        }
    }
    write_pgm(&args.out, args.width, args.height, &pixels)?;
    if cli.format == OutputFormat::Json {
        #[derive(Serialize)]
        struct Report<'a> {
            config: &'a RenderArgs,
            rng_seed: u64,
            bytes: usize,
        }
        print_json(&Report { config: args, rng_seed: cli.rng_seed, bytes: pixels.len() });
    } else {
        println!("wrote {} ({}x{})", args.out, args.width, args.height);
    }
    Ok(0)
}

/// Binary PGM (P5), maxval 255, top row first.
pub fn write_pgm(path: &str, width: usize, height: usize, pixels: &[u8]) -> Result<()> {
    assert_eq!(pixels.len(), width * height);
    let mut data = format!("P5\n{width} {height}\n255\n").into_bytes();
    data.extend_from_slice(pixels);
    std::fs::write(path, data)?;
    Ok(())
}

/// Reads back a binary PGM written by `write_pgm`.
pub fn read_pgm(path: &str) -> Result<(usize, usize, Vec<u8>)> {
    let data = std::fs::read(path)?;
    let header_end = data
        .windows(1)
        .enumerate()
        .scan(0u32, |newlines, (i, w)| {
            if w[0] == b'\n' {
                *newlines += 1;
            }
            Some((i, *newlines))
        })
        .find(|&(_, n)| n == 3)
        .map(|(i, _)| i + 1)
        .ok_or_else(|| Error::Parse("truncated PGM header".into()))?;
    let header = std::str::from_utf8(&data[..header_end])
        .map_err(|e| Error::Parse(e.to_string()))?;
    let mut lines = header.lines();
    if lines.next() != Some("P5") {
        return Err(Error::Parse("not a P5 PGM".into()));
    }
    let dims = lines.next().ok_or_else(|| Error::Parse("missing dimensions".into()))?;
    let (w, h) = dims
        .split_once(' ')
        .ok_or_else(|| Error::Parse("bad dimension line".into()))?;
    let width: usize = w.parse().map_err(|e: std::num::ParseIntError| Error::Parse(e.to_string()))?;
    let height: usize = h.parse().map_err(|e: std::num::ParseIntError| Error::Parse(e.to_string()))?;
    if lines.next() != Some("255") {
        return Err(Error::Parse("unsupported maxval".into()));
    }
    let pixels = data[header_end..].to_vec();
    if pixels.len() != width * height {
        return Err(Error::Parse(format!(
            "pixel payload {} does not match {width}x{height}",
            pixels.len()
        )));
    }
    Ok((width, height, pixels))
}

fn cmd_bench(cli: &Cli, args: &BenchArgs, budget: u64) -> Result<i32> {
    let modulus = Modulus::new(args.modulus)?;
    let scheme = parse_weights(&args.weights, modulus)?;
    let seed = Seed::parse(&args.seed, scheme.dim(), modulus)?;
    let Seed::Arithmetic { first, diffs } = seed.clone() else {
        return Err(Error::Parse("bench needs an arithmetic seed".into()));
    };
    let sizes: Vec<u64> = parse_csv(&args.sizes)?;
    let orientation = SimplexSpec::parse_orientation(
        args.orient.as_deref().unwrap_or(&"+".repeat(scheme.dim() + 1)),
    )?;
    let closed = scheme.sigma().is_invertible();
    #[derive(Serialize)]
    struct Line {
        size: u64,
        cells: u64,
        closed_form_us: Option<u128>,
        cone_us: u128,
        equal: Option<bool>,
    }
    let mut lines = Vec::new();
    for &s in &sizes {
        let spec = SimplexSpec::new(vec![0; scheme.dim()], 0, orientation.clone(), s)?;
        let t0 = Instant::now();
        let via_cone = {
            let orbit = ConeOrbit::new(&scheme, seed.clone(), budget);
            extract(&orbit, &spec)?
        };
        let cone_us = t0.elapsed().as_micros();
        let (closed_form_us, equal) = if closed {
            let orbit = ClosedFormOrbit::new(&scheme, first, diffs.clone())?;
            let t1 = Instant::now();
            let via_closed = extract(&orbit, &spec)?;
            (
                Some(t1.elapsed().as_micros()),
                Some(via_closed.counts_table() == via_cone.counts_table()),
            )
        } else {
            (None, None)
        };
        lines.push(Line {
            size: s,
            cells: crate::simplex::cardinality(scheme.dim() + 1, s)?,
            closed_form_us,
            cone_us,
            equal,
        });
    }
    let all_equal = lines.iter().all(|l| l.equal.unwrap_or(true));
    match cli.format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                config: &'a BenchArgs,
                rng_seed: u64,
                closed_form_available: bool,
                lines: &'a [Line],
            }
            print_json(&Report {
                config: args,
                rng_seed: cli.rng_seed,
                closed_form_available: closed,
                lines: &lines,
            });
        }
        _ => {
            for l in &lines {
                println!(
                    "size {:>6} cells {:>10} cone {:>10}us closed {} equal {}",
                    l.size,
                    l.cells,
                    l.cone_us,
                    l.closed_form_us.map_or("n/a".into(), |t| format!("{t:>10}us")),
                    l.equal.map_or("n/a".into(), |e| e.to_string()),
                );
            }
        }
    }
    Ok(if all_equal { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_shorthand_forms() {
        let m5 = Modulus::new(5).unwrap();
        assert_eq!(parse_weights("2,1,1", m5).unwrap().sigma().value(), 4);
        assert_eq!(parse_weights("pascal:2", m5).unwrap().sigma().value(), 3);
        assert_eq!(parse_weights("q=1;r=1;w=2,1,1", m5).unwrap().sigma().value(), 4);
        assert!(parse_weights("2,1", m5).is_err());
    }

    #[test]
    fn apex_parsing() {
        assert_eq!(parse_apex("2,2").unwrap(), (vec![2], 2));
        assert_eq!(parse_apex("-3,4,7").unwrap(), (vec![-3, 4], 7));
        assert!(parse_apex("5").is_err());
        assert!(parse_apex("1,-2").is_err());
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("0:15").unwrap(), (0, 15));
        assert_eq!(parse_range("-4:4").unwrap(), (-4, 4));
        assert!(parse_range("4:1").is_err());
        assert!(parse_range("7").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["balsim".to_string(), "nonsense".into()]), 2);
        assert_eq!(
            run(["balsim".to_string(), "arith".into(), "--mod".into(), "12".into()]),
            2
        );
    }
}
