//! `beauville` — count, list, classify, and cross-check Beauville structures
//! on the square of a cyclic group of order n, for levels n >= 5 coprime to 6.
//!
//! Levels are given either as a single number (`beauville count 35`) or an
//! inclusive range (`beauville table 5..55`); ranges skip inadmissible numbers
//! automatically, while a single inadmissible level is a usage error (except
//! for `verify`, which reports it as a skipped row).
//!
//! Exit codes: 0 on success, 1 when a cross-check reports a mismatch or an
//! internal failure occurs, 2 for usage errors (inadmissible single level,
//! level beyond `--budget`, malformed arguments).

mod cache;
mod output;

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context as _;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use beauville::classifier;
use beauville::formulas;
use beauville::modular;
use beauville::oracle;

use cache::Cache;
use output::{ClassifyRow, CountRow, CsvRow, EnumerateRow, NoSwapRow, TableRow, VerifyRow};

const CLASSIFY_MODE: &str = "classify";
const NOSWAP_MODE: &str = "classify-noswap";

#[derive(Parser)]
#[command(
    name = "beauville",
    version,
    about = "Count, enumerate, and classify Beauville structures on Z_n x Z_n",
    long_about = "Count, enumerate, and classify unmixed Beauville structures on the square of \
                  a cyclic group of order n, for levels n >= 5 coprime to 6.\n\n\
                  Closed-form counts (`count`) are instant for any admissible level up to the \
                  modulus cap.  The enumeration-based commands (`enumerate`, `classify`, \
                  `verify`, `table`) walk all matrices at a level and are gated by --budget."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for classification sweeps (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Largest level the enumeration-based commands will attempt.
    #[arg(long, global = true, default_value_t = 101, value_name = "N")]
    budget: u64,

    /// Bypass the on-disk result cache (see BEAUVILLE_CACHE_DIR).
    #[arg(long, global = true)]
    no_cache: bool,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form counts: total matrices and orbit count, with the
    /// per-symmetry-type subtotals the orbit count is assembled from.
    Count {
        /// Level n, or inclusive range a..b.
        #[arg(value_parser = parse_levels)]
        levels: LevelSpec,
    },
    /// List every member matrix at a level in lexicographic order.
    /// Memory-bound: intended for small levels.
    Enumerate {
        /// Level n, or inclusive range a..b.
        #[arg(value_parser = parse_levels)]
        levels: LevelSpec,
    },
    /// Orbits of the 72-element symmetry group: representatives, orbit sizes,
    /// stabilizer types, and the per-class fixed-point breakdown.
    Classify {
        /// Level n, or inclusive range a..b.
        #[arg(value_parser = parse_levels)]
        levels: LevelSpec,
        /// Classify under the 36-element subgroup that never exchanges the
        /// two generating triples (reports the orbit count only).
        #[arg(long)]
        no_swap: bool,
    },
    /// Cross-check every counting path at each level: closed form, Burnside
    /// average, orbit partition, and (small levels) an independent union-find.
    Verify {
        /// Level n, or inclusive range a..b.
        #[arg(value_parser = parse_levels)]
        levels: LevelSpec,
    },
    /// One summary line per level: closed-form counts plus, within budget,
    /// the enumerated orbit count and stabilizer histogram.
    Table {
        /// Level n, or inclusive range a..b.
        #[arg(value_parser = parse_levels)]
        levels: LevelSpec,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// A single level or an inclusive range of levels.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
enum LevelSpec {
    Single(u64),
    Range(u64, u64),
}

fn parse_levels(text: &str) -> Result<LevelSpec, String> {
    let text = text.trim();
    if let Some((lo, hi)) = text.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: u64 = lo
            .parse()
            .map_err(|_| format!("invalid range start {lo:?}"))?;
        let hi: u64 = hi.parse().map_err(|_| format!("invalid range end {hi:?}"))?;
        if lo > hi {
            return Err(format!("empty range: {lo} > {hi}"));
        }
        Ok(LevelSpec::Range(lo, hi))
    } else {
        text.parse()
            .map(LevelSpec::Single)
            .map_err(|_| format!("invalid level {text:?} (expected a number or a..b)"))
    }
}

/// Error that should exit with the usage code 2 rather than 1.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(message: impl Into<String>) -> anyhow::Result<T> {
    Err(UsageError(message.into()).into())
}

/// Wraps a library error, marking input-shaped ones as usage errors.
fn domain(err: beauville::Error) -> anyhow::Error {
    use beauville::Error as E;
    match err {
        E::InvalidLevel { .. } | E::LevelTooLarge { .. } | E::BudgetExceeded { .. } => {
            UsageError(err.to_string()).into()
        }
        other => anyhow::Error::new(other),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return usage("--threads must be at least 1");
        }
        // Ignore the error when a global pool already exists: the pool set
        // first wins, which only happens if --threads is processed twice.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let cache = if cli.no_cache {
        Cache::disabled()
    } else {
        Cache::from_env()
    };

    let mut exit = ExitCode::SUCCESS;
    let text = match cli.command {
        Command::Count { levels } => {
            let resolved = resolve_levels(levels)?;
            run_count(&resolved.levels, resolved.single, cli.format)?
        }
        Command::Enumerate { levels } => {
            let resolved = resolve_levels(levels)?;
            enforce_budget(&resolved.levels, cli.budget)?;
            run_enumerate(&resolved.levels, resolved.single, cli.format)?
        }
        Command::Classify { levels, no_swap } => {
            let resolved = resolve_levels(levels)?;
            enforce_budget(&resolved.levels, cli.budget)?;
            if no_swap {
                run_classify_no_swap(&resolved.levels, resolved.single, cli.format, &cache)?
            } else {
                run_classify(&resolved.levels, resolved.single, cli.format, &cache)?
            }
        }
        Command::Verify { levels } => {
            let (text, all_ok) = run_verify(levels, cli.budget, cli.format)?;
            if !all_ok {
                exit = ExitCode::from(1);
            }
            text
        }
        Command::Table { levels } => {
            let resolved = resolve_levels(levels)?;
            run_table(&resolved.levels, resolved.single, cli.budget, cli.format, &cache)?
        }
    };

    emit(&text, cli.output.as_deref())?;
    Ok(exit)
}

struct ResolvedLevels {
    levels: Vec<u64>,
    /// Whether the request was a single level (JSON then prints one object,
    /// not a one-element array).
    single: bool,
}

/// Expands a level spec: a single level must be admissible, a range keeps its
/// admissible members and must contain at least one.
fn resolve_levels(spec: LevelSpec) -> anyhow::Result<ResolvedLevels> {
    match spec {
        LevelSpec::Single(n) => {
            if modular::is_valid_level(n) {
                Ok(ResolvedLevels {
                    levels: vec![n],
                    single: true,
                })
            } else {
                usage(format!(
                    "level {n} is not admissible: need n >= 5 and gcd(n, 6) = 1, \
                     but gcd({n}, 6) = {}",
                    modular::gcd(n, 6)
                ))
            }
        }
        LevelSpec::Range(lo, hi) => {
            let levels: Vec<u64> = modular::valid_levels(lo, hi).collect();
            if levels.is_empty() {
                usage(format!(
                    "no admissible levels in {lo}..{hi} (need n >= 5 and gcd(n, 6) = 1)"
                ))
            } else {
                Ok(ResolvedLevels {
                    levels,
                    single: false,
                })
            }
        }
    }
}

fn enforce_budget(levels: &[u64], budget: u64) -> anyhow::Result<()> {
    match levels.iter().find(|&&n| n > budget) {
        Some(&n) => usage(format!(
            "level {n} exceeds the enumeration budget {budget}; raise --budget \
             or use `beauville count` for the closed-form counts"
        )),
        None => Ok(()),
    }
}

fn render<T: Serialize + CsvRow>(
    format: Format,
    rows: &[T],
    single: bool,
) -> anyhow::Result<String> {
    match format {
        Format::Json => output::render_json(rows, single),
        Format::Csv => Ok(output::render_csv(rows)),
    }
}

fn emit(text: &str, target: Option<&Path>) -> anyhow::Result<()> {
    match target {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run_count(levels: &[u64], single: bool, format: Format) -> anyhow::Result<String> {
    let mut rows = Vec::with_capacity(levels.len());
    for &n in levels {
        let breakdown = formulas::theta(n).map_err(domain)?;
        rows.push(CountRow::from(&breakdown));
    }
    render(format, &rows, single)
}

fn run_enumerate(levels: &[u64], single: bool, format: Format) -> anyhow::Result<String> {
    let mut rows = Vec::with_capacity(levels.len());
    for &n in levels {
        let matrices: Vec<[u64; 4]> = beauville::enumerate_beauville(n)
            .map_err(domain)?
            .map(|m| m.entries())
            .collect();
        rows.push(EnumerateRow {
            n,
            count: matrices.len() as u64,
            matrices,
        });
    }
    render(format, &rows, single)
}

fn classify_cached(n: u64, cache: &Cache) -> anyhow::Result<ClassifyRow> {
    if let Some(row) = cache.read::<ClassifyRow>(CLASSIFY_MODE, n) {
        return Ok(row);
    }
    let report = classifier::orbits(n).map_err(domain)?;
    let row = ClassifyRow::from(&report);
    cache.write(CLASSIFY_MODE, n, &row);
    Ok(row)
}

fn run_classify(
    levels: &[u64],
    single: bool,
    format: Format,
    cache: &Cache,
) -> anyhow::Result<String> {
    let mut rows = Vec::with_capacity(levels.len());
    for &n in levels {
        rows.push(classify_cached(n, cache)?);
    }
    render(format, &rows, single)
}

fn run_classify_no_swap(
    levels: &[u64],
    single: bool,
    format: Format,
    cache: &Cache,
) -> anyhow::Result<String> {
    let mut rows = Vec::with_capacity(levels.len());
    for &n in levels {
        let row = match cache.read::<NoSwapRow>(NOSWAP_MODE, n) {
            Some(row) => row,
            None => {
                let orbit_count = classifier::orbits_unswapped(n).map_err(domain)?;
                let total = formulas::theta1(n).map_err(domain)?;
                let row = NoSwapRow {
                    n,
                    no_swap: true,
                    total_matrices: u64::try_from(total)
                        .expect("matrix count fits u64 below the modulus cap"),
                    orbit_count,
                };
                cache.write(NOSWAP_MODE, n, &row);
                row
            }
        };
        rows.push(row);
    }
    render(format, &rows, single)
}

/// Runs every counting path at one level and compares the results.  A level
/// that cannot be checked (inadmissible, beyond budget or cap) becomes a
/// skipped row instead of an error, so range sweeps always complete.
fn verify_level(n: u64, budget: u64) -> VerifyRow {
    let skip = |detail: String| VerifyRow {
        n,
        status: "skipped".to_owned(),
        detail: Some(detail),
        theta: None,
        burnside: None,
        partition: None,
        union_find: None,
    };
    if !modular::is_valid_level(n) {
        return skip(format!(
            "inadmissible level: need n >= 5 and gcd(n, 6) = 1, but gcd({n}, 6) = {}",
            modular::gcd(n, 6)
        ));
    }
    if n > budget {
        return skip(format!(
            "beyond the enumeration budget {budget}; raise --budget to include it"
        ));
    }
    let closed = match formulas::theta(n) {
        Ok(breakdown) => breakdown,
        Err(err) => return skip(err.to_string()),
    };
    let theta =
        u64::try_from(closed.theta).expect("orbit count fits u64 below the modulus cap");
    let partition = classifier::orbits(n)
        .expect("level already validated")
        .theta;
    let burnside = classifier::burnside_orbit_count(n).expect("level already validated");
    let union_find = (n <= oracle::MAX_ORACLE_LEVEL)
        .then(|| oracle::naive_orbit_count(n).expect("level already validated"));
    let agree = partition == theta
        && burnside == theta
        && union_find.is_none_or(|count| count == theta);
    VerifyRow {
        n,
        status: if agree { "ok" } else { "mismatch" }.to_owned(),
        detail: None,
        theta: Some(theta),
        burnside: Some(burnside),
        partition: Some(partition),
        union_find,
    }
}

fn run_verify(spec: LevelSpec, budget: u64, format: Format) -> anyhow::Result<(String, bool)> {
    // A single level always gets a row, even an inadmissible one (reported as
    // skipped); a range keeps only its admissible members.
    let (levels, single) = match spec {
        LevelSpec::Single(n) => (vec![n], true),
        LevelSpec::Range(lo, hi) => {
            let levels: Vec<u64> = modular::valid_levels(lo, hi).collect();
            if levels.is_empty() {
                return usage(format!(
                    "no admissible levels in {lo}..{hi} (need n >= 5 and gcd(n, 6) = 1)"
                ));
            }
            (levels, false)
        }
    };
    let rows: Vec<VerifyRow> = levels.iter().map(|&n| verify_level(n, budget)).collect();
    let all_ok = rows.iter().all(|row| row.status != "mismatch");
    Ok((render(format, &rows, single)?, all_ok))
}

fn run_table(
    levels: &[u64],
    single: bool,
    budget: u64,
    format: Format,
    cache: &Cache,
) -> anyhow::Result<String> {
    let mut rows = Vec::with_capacity(levels.len());
    for &n in levels {
        let breakdown = formulas::theta(n).map_err(domain)?;
        let row = if n > budget {
            TableRow {
                n,
                theta1: breakdown.theta1,
                theta: breakdown.theta,
                orbits: None,
                stabilizers: None,
                verified: None,
            }
        } else {
            let classified = classify_cached(n, cache)?;
            TableRow {
                n,
                theta1: breakdown.theta1,
                theta: breakdown.theta,
                orbits: Some(classified.theta),
                stabilizers: Some(classified.stabilizers.clone()),
                verified: Some(u128::from(classified.theta) == breakdown.theta),
            }
        };
        rows.push(row);
    }
    render(format, &rows, single)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_specs_parse() {
        assert_eq!(parse_levels("35"), Ok(LevelSpec::Single(35)));
        assert_eq!(parse_levels("5..55"), Ok(LevelSpec::Range(5, 55)));
        assert_eq!(parse_levels("5..=55"), Ok(LevelSpec::Range(5, 55)));
        assert!(parse_levels("ten").is_err());
        assert!(parse_levels("9..5").is_err());
        assert!(parse_levels("5..x").is_err());
    }

    #[test]
    fn single_levels_must_be_admissible_but_ranges_filter() {
        assert!(resolve_levels(LevelSpec::Single(9)).is_err());
        let resolved = resolve_levels(LevelSpec::Range(5, 14)).unwrap();
        assert_eq!(resolved.levels, vec![5, 7, 11, 13]);
        assert!(!resolved.single);
        assert!(resolve_levels(LevelSpec::Range(8, 10)).is_err());
    }

    #[test]
    fn budget_gate_names_the_offending_level() {
        assert!(enforce_budget(&[5, 7, 11], 101).is_ok());
        let err = enforce_budget(&[5, 103], 101).unwrap_err();
        assert!(err.is::<UsageError>());
        assert!(err.to_string().contains("103"));
    }

    #[test]
    fn verify_rows_for_good_bad_and_unaffordable_levels() {
        let good = verify_level(5, 101);
        assert_eq!(good.status, "ok");
        assert_eq!(good.theta, Some(1));
        assert_eq!(good.union_find, Some(1));

        let bad = verify_level(9, 101);
        assert_eq!(bad.status, "skipped");
        assert!(bad.detail.unwrap().contains("gcd(9, 6) = 3"));

        let unaffordable = verify_level(103, 101);
        assert_eq!(unaffordable.status, "skipped");
        assert!(unaffordable.detail.unwrap().contains("budget"));
    }
}
