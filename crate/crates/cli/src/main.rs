//! `majpat`: major index tables, degree reports and verification runs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use majpat::enumeration::down_set_spot_check;
use majpat::oeis::{compare_triangle, parse_reference};
use majpat::{
    admissible_units, core_set, degree_report, maj_table, verify_monotonicity, Algorithm, BigTable, Error,
    PatternSet, SearchConfig, SeriesSource, Verdict,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "majpat", version, about = "Major index distributions over pattern-avoiding permutations")]
struct Cli {
    #[command(flatten)]
    search: SearchArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SearchArgs {
    /// Worker threads for exhaustive enumeration.
    #[arg(long, global = true, env = "MAJPAT_THREADS", default_value_t = 1)]
    threads: usize,
    /// Abort a search after visiting this many nodes (exit code 3).
    #[arg(long, global = true, env = "MAJPAT_NODE_LIMIT", default_value_t = 2_000_000_000)]
    node_limit: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the table of M_n^m(Π) for 1 <= n <= max-n, 0 <= m <= max-maj.
    Table {
        #[arg(long, default_value = "")]
        patterns: PatternSet,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        max_maj: usize,
        #[arg(long, default_value = "brute")]
        algorithm: Algorithm,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Predicted and detected degree of the column m; exit 1 on a mismatch.
    Degree {
        #[arg(long, default_value = "")]
        patterns: PatternSet,
        #[arg(long = "maj")]
        m: u64,
        /// Last n of the series; chosen from the onset bound when omitted.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = majpat::asymptotics::DEFAULT_WINDOW)]
        window: usize,
        /// Build the series by exhaustive enumeration instead of core counting.
        #[arg(long, requires = "max_n")]
        brute: bool,
    },
    /// Check the injection M_n^m(σ) -> M_{n+1}^m(σ) exhaustively for every m <= max-maj.
    VerifyMonotonic {
        #[arg(long)]
        patterns: PatternSet,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_maj: usize,
    },
    /// List the cores C(m, Π) with their admissible unit profiles.
    Cores {
        #[arg(long = "maj")]
        m: usize,
        #[arg(long, default_value = "")]
        patterns: PatternSet,
        /// Random down-set probes to run alongside the listing.
        #[arg(long, default_value_t = 0)]
        down_set_samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare the unrestricted table with a local triangle file.
    CheckOeis {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

enum Failure {
    /// A check ran and failed.
    Verification(String),
    Input(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::ResourceLimit { .. } => Failure::Resource(msg),
            Error::Disagreement { .. } | Error::Witness(_) => Failure::Verification(msg),
            _ => Failure::Input(msg),
        }
    }
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("values serialise"));
}

fn table(
    patterns: &PatternSet,
    max_n: usize,
    max_maj: usize,
    algorithm: Algorithm,
    format: Format,
    config: &SearchConfig,
) -> Result<(), Failure> {
    let t: BigTable = maj_table(max_n, max_maj, patterns, algorithm, config)?;
    match format {
        Format::Csv => print!("{}", t.to_csv()),
        Format::Json => println!("{}", t.to_json()),
    }
    Ok(())
}

fn degree(
    patterns: &PatternSet,
    m: u64,
    max_n: Option<usize>,
    window: usize,
    brute: bool,
    config: &SearchConfig,
) -> Result<(), Failure> {
    let source = match (max_n, brute) {
        (Some(n), true) => SeriesSource::Brute(n),
        (Some(n), false) => SeriesSource::Cores(n),
        (None, _) => SeriesSource::Automatic,
    };
    let report = degree_report(m, patterns, source, window, config)?;
    print_json(&report.to_json_value());
    if report.verdict == Verdict::Mismatch {
        return Err(Failure::Verification(format!(
            "predicted {}, detected degree {:?}",
            report.prediction,
            report.detected.degree()
        )));
    }
    Ok(())
}

fn verify(patterns: &PatternSet, n: usize, max_maj: usize, config: &SearchConfig) -> Result<(), Failure> {
    let [sigma] = patterns.patterns() else {
        return Err(Failure::Input(format!(
            "verify-monotonic takes exactly one pattern, got {}",
            patterns.len()
        )));
    };
    let report = verify_monotonicity(sigma, n, max_maj, config)?;
    print_json(&report.to_json_value());
    match report.counterexample {
        None => Ok(()),
        Some(c) => Err(Failure::Verification(format!("{} (m = {}): {}", c.pi, c.m, c.reason))),
    }
}

fn cores(m: usize, patterns: &PatternSet, samples: usize, seed: u64, config: &SearchConfig) -> Result<(), Failure> {
    let set = core_set(m, patterns, config)?;
    println!("# core\tmaj+\tadmissible unit coordinates");
    for gamma in &set.cores {
        let units: Vec<String> = admissible_units(gamma, patterns).iter().map(|i| i.to_string()).collect();
        let text = if gamma.is_empty() { "-".to_string() } else { gamma.to_string() };
        println!("{text}\t{}\t{}", gamma.maj_plus(), units.join(","));
    }
    if samples > 0 {
        let max_len = set.cores.iter().map(|g| g.len()).max().unwrap_or(0).max(1);
        let check = down_set_spot_check(patterns, max_len, patterns.cap(), samples, seed);
        println!("# down-set probes: {} tested, seed {seed}", check.tested);
        if let Some((g, a, b)) = check.violation {
            return Err(Failure::Verification(format!("{g}·{a} avoids the patterns but {g}·{b} does not")));
        }
    }
    Ok(())
}

fn check_oeis(file: &PathBuf, max_n: usize, config: &SearchConfig) -> Result<(), Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let terms = parse_reference(&text).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let full = max_n * max_n.saturating_sub(1) / 2;
    let t: BigTable = maj_table(max_n, full, &PatternSet::empty(), Algorithm::Brute, config)?;
    let cmp = compare_triangle(&terms, &t)?;
    let mismatch = cmp.mismatch.as_ref().map(|m| {
        json!({
            "n": m.n,
            "m": m.m,
            "line": m.expected.as_ref().map(|t| t.line),
            "expected": m.expected.as_ref().map(|t| t.value.to_string()),
            "actual": m.actual.to_string(),
        })
    });
    print_json(&json!({
        "schema": 1,
        "file": file.display().to_string(),
        "max_n": max_n,
        "compared": cmp.compared,
        "match": cmp.mismatch.is_none(),
        "mismatch": mismatch,
    }));
    match cmp.mismatch {
        None => Ok(()),
        Some(m) => Err(Failure::Verification(format!("first mismatch at n = {}, m = {}", m.n, m.m))),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = SearchConfig {
        node_limit: cli.search.node_limit,
        threads: cli.search.threads.max(1),
    };
    match cli.command {
        Command::Table { patterns, max_n, max_maj, algorithm, format } => {
            table(&patterns, max_n, max_maj, algorithm, format, &config)
        }
        Command::Degree { patterns, m, max_n, window, brute } => degree(&patterns, m, max_n, window, brute, &config),
        Command::VerifyMonotonic { patterns, n, max_maj } => verify(&patterns, n, max_maj, &config),
        Command::Cores { m, patterns, down_set_samples, seed } => cores(m, &patterns, down_set_samples, seed, &config),
        Command::CheckOeis { file, max_n } => check_oeis(&file, max_n, &config),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("majpat: verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("majpat: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("majpat: {msg}");
            ExitCode::from(3)
        }
    }
}
