//! Command-line front end.
//!
//! Data goes to stdout (bare decimal lines, or one JSON object with `--json`);
//! diagnostics go to stderr. Exit codes: 0 success, 1 internal error,
//! 2 bad input, 3 oracle limit, 4 parameter below family minimum,
//! 5 method/shape mismatch, 6 no recurrence ansatz fits the guard,
//! 7 reference mismatch.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::count::{
    brute_force_count_with_limit, count_solid_syt, hook_count, hook_lengths, involutions,
    k_catalan, y3_seq, MemoCache, DEFAULT_ORACLE_LIMIT,
};
use crate::guess::{
    search_recurrence, GuessOutcome, Refutation, SearchOptions, Sequence, DEFAULT_GUARD,
};
use crate::par::Parallelism;
use crate::parse::{parse_family, parse_partition, parse_shape, ParseError};
use crate::sampler::{sample_gnw2, sample_gnw3, sample_uniform, RandomSource};
use crate::seqfile::{compare, parse_sequence};
use crate::shape::{Partition, PlanePartition, ShapeError};
use crate::walk::{sidra, sidra_from, Engine};

pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ORACLE_LIMIT: i32 = 3;
pub const EXIT_BELOW_MIN: i32 = 4;
pub const EXIT_METHOD_MISMATCH: i32 = 5;
pub const EXIT_NO_TESTABLE_PAIR: i32 = 6;
pub const EXIT_MISMATCH: i32 = 7;

const CACHE_FILE: &str = "memo.bin";

#[derive(Debug, Parser)]
#[command(
    name = "solid-syt",
    version,
    about = "Count, sample and analyse (solid) standard Young tableaux"
)]
pub struct Cli {
    /// Emit one JSON record instead of bare lines.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (1 = sequential). Output never depends on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for a persistent memo cache.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Memoize on raw shapes instead of orientation representatives.
    #[arg(long, global = true)]
    no_canonical: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EngineArg {
    Walk,
    Memo,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Method {
    Uniform,
    Gnw3,
    Gnw2,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of solid standard Young tableaux of a shape, e.g. "[[3,3,3],[3,3,3],[3,3,3]]".
    Count {
        shape: String,
        /// Cross-check with brute-force enumeration.
        #[arg(long)]
        brute: bool,
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        oracle_limit: u64,
    },
    /// Totals over all plane partitions of n = 1..K.
    Total { k: u32 },
    /// Counting sequence of a shape family such as "[[n,n],[n,1]]".
    Sequence {
        family: String,
        terms: u32,
        #[arg(long, value_enum, default_value = "walk")]
        engine: EngineArg,
        /// First parameter value (default: the family's minimum).
        #[arg(long)]
        from: Option<u32>,
    },
    /// Random tableaux of a shape.
    Sample {
        shape: String,
        #[arg(long, value_enum, default_value = "uniform")]
        method: Method,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Search for a polynomial-coefficient recurrence satisfied by a sequence file.
    Guess {
        input: PathBuf,
        #[arg(long, default_value_t = 30)]
        max_budget: usize,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
        /// Refute candidate pairs by exact elimination only.
        #[arg(long)]
        exact_only: bool,
    },
    /// Compare a computed sequence with a b-file. SOURCE is one of
    /// involutions:K, total:K, catalan:k:K, sequence:FAMILY:K, or a sequence file path.
    Check { source: String, bfile: PathBuf },
    /// Hook lengths and hook-formula count of a partition, e.g. 3,2,2,1.
    Hook { partition: String },
    /// First K involution numbers.
    Involutions { k: usize },
}

#[derive(Debug, Serialize)]
struct OutputRecord {
    command: String,
    inputs: Map<String, Value>,
    results: Vec<String>,
    timing_ms: f64,
    stats: Map<String, Value>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn input_error(e: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_INPUT, e.to_string())
}

fn shape_error(e: ParseError) -> Failure {
    match e {
        ParseError::Shape(ShapeError::BelowMinParameter { .. }) => {
            Failure::new(EXIT_BELOW_MIN, e.to_string())
        }
        other => input_error(other),
    }
}

struct Ctx {
    par: Parallelism,
    cache: MemoCache,
    cache_path: Option<PathBuf>,
    stats: Map<String, Value>,
}

impl Ctx {
    fn save_cache(&mut self) {
        let s = self.cache.stats();
        self.stats.insert("cache_entries".into(), json!(s.entries));
        self.stats.insert("cache_hits".into(), json!(s.hits));
        self.stats.insert("cache_misses".into(), json!(s.misses));
        if let Some(path) = &self.cache_path {
            if let Err(e) = self.cache.save(path) {
                eprintln!("warning: could not write cache {}: {e}", path.display());
            }
        }
    }
}

fn open_cache(dir: Option<&Path>, canonical: bool) -> (MemoCache, Option<PathBuf>) {
    let Some(dir) = dir else {
        return (MemoCache::with_canonical(canonical), None);
    };
    if let Err(e) = std::fs::create_dir_all(dir) {
        eprintln!(
            "warning: cannot create cache directory {}: {e}",
            dir.display()
        );
        return (MemoCache::with_canonical(canonical), None);
    }
    let path = dir.join(CACHE_FILE);
    if !path.exists() {
        return (MemoCache::with_canonical(canonical), Some(path));
    }
    match MemoCache::load(&path, canonical) {
        Ok(cache) => (cache, Some(path)),
        Err(e) => {
            eprintln!("warning: ignoring cache {}: {e}", path.display());
            (MemoCache::with_canonical(canonical), Some(path))
        }
    }
}

fn to_strings<T: ToString>(values: &[T]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

/// Parses a concrete shape or, for text without brackets, a partition.
fn parse_shape_or_partition(text: &str) -> Result<(PlanePartition, Option<Partition>), Failure> {
    if text.trim_start().starts_with('[') {
        let shape = parse_shape(text).map_err(shape_error)?;
        let lambda = shape.is_flat().then(|| shape.floor());
        Ok((shape, lambda))
    } else {
        let lambda = parse_partition(text).map_err(input_error)?;
        Ok((lambda.to_flat_shape(), Some(lambda)))
    }
}

fn source_sequence(source: &str, ctx: &mut Ctx) -> Result<Sequence, Failure> {
    let bad = || input_error(format!("unrecognised sequence source `{source}`"));
    let parse_k = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    let (kind, rest) = source.split_once(':').unwrap_or(("file", source));
    let seq = match kind {
        "involutions" => Sequence::from_unsigned(1, &involutions(parse_k(rest)? as usize)),
        "total" => Sequence::from_unsigned(1, &y3_seq(parse_k(rest)?, &ctx.cache, ctx.par)),
        "catalan" => {
            let (k, count) = rest.split_once(':').ok_or_else(bad)?;
            let (k, count) = (parse_k(k)?, parse_k(count)?);
            if k == 0 {
                return Err(bad());
            }
            let terms: Vec<BigUint> = (0..count).map(|n| k_catalan(k, n)).collect();
            Sequence::from_unsigned(0, &terms)
        }
        "sequence" => {
            let (family, count) = rest.rsplit_once(':').ok_or_else(bad)?;
            let family = parse_family(family).map_err(shape_error)?;
            let terms = sidra(&family, parse_k(count)?, Engine::Walk, &ctx.cache, ctx.par)
                .map_err(|e| shape_error(e.into()))?;
            Sequence::from_unsigned(family.n_min() as i64, &terms)
        }
        "file" => {
            let text =
                std::fs::read_to_string(rest).map_err(|e| input_error(format!("{rest}: {e}")))?;
            return parse_sequence(&text).map_err(|e| input_error(format!("{rest}: {e}")));
        }
        _ => return Err(bad()),
    };
    seq.map_err(input_error)
}

fn execute(
    command: &Command,
    ctx: &mut Ctx,
    inputs: &mut Map<String, Value>,
) -> Result<Vec<String>, Failure> {
    match command {
        Command::Count {
            shape,
            brute,
            oracle_limit,
        } => {
            inputs.insert("shape".into(), json!(shape));
            let shape = parse_shape(shape).map_err(shape_error)?;
            let count = count_solid_syt(&shape, &ctx.cache);
            ctx.save_cache();
            let mut out = vec![count.to_string()];
            if *brute {
                let oracle = brute_force_count_with_limit(&shape, *oracle_limit)
                    .map_err(|e| Failure::new(EXIT_ORACLE_LIMIT, e.to_string()))?;
                if oracle != count {
                    return Err(Failure::new(
                        EXIT_INTERNAL,
                        format!("oracle disagrees: memo {count}, brute force {oracle}"),
                    ));
                }
                out.push("oracle-agree".into());
            }
            Ok(out)
        }
        Command::Total { k } => {
            inputs.insert("k".into(), json!(k));
            if *k == 0 {
                return Err(input_error("K must be at least 1"));
            }
            let seq = y3_seq(*k, &ctx.cache, ctx.par);
            ctx.save_cache();
            Ok(to_strings(&seq))
        }
        Command::Sequence {
            family,
            terms,
            engine,
            from,
        } => {
            inputs.insert("family".into(), json!(family));
            inputs.insert("terms".into(), json!(terms));
            let engine = match engine {
                EngineArg::Walk => Engine::Walk,
                EngineArg::Memo => Engine::Memo,
            };
            inputs.insert("engine".into(), json!(format!("{engine:?}").to_lowercase()));
            if *terms == 0 {
                return Err(input_error("terms must be at least 1"));
            }
            let family = parse_family(family).map_err(shape_error)?;
            let first = from.unwrap_or(family.n_min());
            inputs.insert("from".into(), json!(first));
            let seq = sidra_from(&family, first, *terms, engine, &ctx.cache, ctx.par)
                .map_err(|e| shape_error(e.into()))?;
            if engine == Engine::Memo {
                ctx.save_cache();
            }
            Ok(to_strings(&seq))
        }
        Command::Sample {
            shape,
            method,
            seed,
            count,
        } => {
            inputs.insert("shape".into(), json!(shape));
            inputs.insert("method".into(), json!(format!("{method:?}").to_lowercase()));
            inputs.insert("seed".into(), json!(seed));
            inputs.insert("count".into(), json!(count));
            let (shape, lambda) = parse_shape_or_partition(shape)?;
            if shape.is_empty() {
                return Err(input_error("cannot sample from the empty shape"));
            }
            let mut rng = RandomSource::new(*seed);
            let mut out = Vec::new();
            for _ in 0..*count {
                let (text, valid) = match method {
                    Method::Uniform => {
                        let t = sample_uniform(&shape, &mut rng, &ctx.cache);
                        (t.to_string(), t.check().is_ok())
                    }
                    Method::Gnw3 => {
                        let t = sample_gnw3(&shape, &mut rng);
                        (t.to_string(), t.check().is_ok())
                    }
                    Method::Gnw2 => {
                        let lambda = lambda.as_ref().ok_or_else(|| {
                            Failure::new(
                                EXIT_METHOD_MISMATCH,
                                "gnw2 needs a height-1 shape or a partition",
                            )
                        })?;
                        let t = sample_gnw2(lambda, &mut rng);
                        (t.to_string(), t.check().is_ok())
                    }
                };
                out.push(format!(
                    "{text}\n{}",
                    if valid { "valid" } else { "INVALID" }
                ));
            }
            if *method == Method::Uniform {
                ctx.save_cache();
            }
            Ok(out)
        }
        Command::Guess {
            input,
            max_budget,
            guard,
            exact_only,
        } => {
            inputs.insert("input".into(), json!(input.display().to_string()));
            inputs.insert("max_budget".into(), json!(max_budget));
            inputs.insert("guard".into(), json!(guard));
            let text = std::fs::read_to_string(input)
                .map_err(|e| input_error(format!("{}: {e}", input.display())))?;
            let seq = parse_sequence(&text)
                .map_err(|e| input_error(format!("{}: {e}", input.display())))?;
            let options = SearchOptions {
                refutation: if *exact_only {
                    Refutation::ExactOnly
                } else {
                    Refutation::ModularCertificate
                },
                par: ctx.par,
            };
            let report = search_recurrence(&seq, *max_budget, *guard, options)
                .map_err(|e| Failure::new(EXIT_INTERNAL, e.to_string()))?;
            ctx.stats
                .insert("pairs_tested".into(), json!(report.pairs_tested));
            let lines = report.lines();
            if report.pairs_tested == 0 && matches!(report.outcome, GuessOutcome::NoneFound { .. })
            {
                for l in &lines {
                    eprintln!("{l}");
                }
                return Err(Failure::new(
                    EXIT_NO_TESTABLE_PAIR,
                    format!(
                        "no (order, degree) pair leaves {guard} surplus equations with {} terms",
                        seq.len()
                    ),
                ));
            }
            Ok(lines)
        }
        Command::Check { source, bfile } => {
            inputs.insert("source".into(), json!(source));
            inputs.insert("bfile".into(), json!(bfile.display().to_string()));
            let computed = source_sequence(source, ctx)?;
            let text = std::fs::read_to_string(bfile)
                .map_err(|e| input_error(format!("{}: {e}", bfile.display())))?;
            let reference = parse_sequence(&text)
                .map_err(|e| input_error(format!("{}: {e}", bfile.display())))?;
            match compare(&computed, &reference) {
                Ok(0) => Err(Failure::new(EXIT_MISMATCH, "no overlapping indices")),
                Ok(n) => Ok(vec![format!("OK {n} terms")]),
                Err(m) => Err(Failure::new(
                    EXIT_MISMATCH,
                    format!(
                        "mismatch at index {}: computed {}, reference {}",
                        m.index, m.computed, m.reference
                    ),
                )),
            }
        }
        Command::Hook { partition } => {
            inputs.insert("partition".into(), json!(partition));
            let lambda = parse_partition(partition).map_err(input_error)?;
            Ok(vec![
                hook_lengths(&lambda).to_string(),
                hook_count(&lambda).to_string(),
            ])
        }
        Command::Involutions { k } => {
            inputs.insert("k".into(), json!(k));
            if *k == 0 {
                return Err(input_error("K must be at least 1"));
            }
            Ok(to_strings(&involutions(*k)))
        }
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Count { .. } => "count",
        Command::Total { .. } => "total",
        Command::Sequence { .. } => "sequence",
        Command::Sample { .. } => "sample",
        Command::Guess { .. } => "guess",
        Command::Check { .. } => "check",
        Command::Hook { .. } => "hook",
        Command::Involutions { .. } => "involutions",
    }
}

pub fn run() -> i32 {
    run_with(Cli::parse())
}

pub fn run_with(cli: Cli) -> i32 {
    let par = match cli.threads {
        Some(1) => Parallelism::Sequential,
        _ => Parallelism::Parallel,
    };
    #[cfg(feature = "parallel")]
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("warning: thread pool already configured: {e}");
        }
    }
    let (cache, cache_path) = open_cache(cli.cache_dir.as_deref(), !cli.no_canonical);
    let mut ctx = Ctx {
        par,
        cache,
        cache_path,
        stats: Map::new(),
    };
    let mut inputs = Map::new();
    let started = Instant::now();
    let result = execute(&cli.command, &mut ctx, &mut inputs);
    let elapsed = started.elapsed().as_secs_f64() * 1000.0;
    match result {
        Ok(results) => {
            if cli.json {
                let record = OutputRecord {
                    command: command_name(&cli.command).into(),
                    inputs,
                    results,
                    timing_ms: elapsed,
                    stats: ctx.stats,
                };
                match serde_json::to_string(&record) {
                    Ok(s) => println!("{s}"),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return EXIT_INTERNAL;
                    }
                }
            } else {
                for line in results {
                    println!("{line}");
                }
                eprintln!("{}: {elapsed:.1} ms", command_name(&cli.command));
            }
            0
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
