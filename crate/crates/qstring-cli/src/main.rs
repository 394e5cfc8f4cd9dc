//! `qstring`: factorize, index, compare, benchmark, and verify from the shell.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qstring::applications::{
    longest_common_substring, lyndon_factorization, maximal_unique_matches, qgram_frequencies,
    qgrams_to_tsv,
};
use qstring::bench::{run_suite, write_csv, BenchConfig, Suite};
use qstring::bwt_index::{load_bundle, save_bundle, BwtIndex};
use qstring::edit_distance::{solve, SolveConfig};
use qstring::par::Execution;
use qstring::pipeline::{factorize, Algorithm};
use qstring::verify::{run_all, summary, Level, VerifyConfig};
use qstring::{Ledger, OracleText, Sym};

#[derive(Parser)]
#[command(name = "qstring", version, about)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for generated corpora.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Charge each simulated quantum step this many times.
    #[arg(long, global = true, default_value_t = 1)]
    repetition_factor: u64,
    /// Write the query ledger as CSV to this path.
    #[arg(long, global = true)]
    ledger: Option<PathBuf>,
    /// Run case-level work on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Factorize a file and print the number of phrases.
    Factorize {
        input: PathBuf,
        #[arg(long, default_value = "lz77")]
        algo: String,
        #[arg(long)]
        tau: Option<usize>,
        /// Write the factorization as JSON lines.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build or query a run-length BWT index bundle.
    Index {
        #[command(subcommand)]
        action: IndexAction,
    },
    /// Print the edit distance between two files.
    Ed {
        x: PathBuf,
        y: PathBuf,
        /// Also print an optimal edit script.
        #[arg(long)]
        script: bool,
    },
    /// Run a benchmark suite over planted corpora and write CSV.
    Bench {
        #[arg(long, default_value = "lz")]
        suite: String,
        /// Comma-separated sizes; `2^e` is accepted.
        #[arg(long, default_value = "2^10,2^11,2^12,2^13,2^14")]
        sizes: String,
        #[arg(long, default_value_t = 16)]
        z: usize,
        #[arg(long, default_value_t = 4)]
        k: usize,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Fill the wall-time column.
        #[arg(long)]
        timings: bool,
    },
    /// Run the acceptance suites and print a summary table.
    Verify {
        #[arg(long, default_value = "quick")]
        level: String,
    },
}

#[derive(Subcommand)]
enum IndexAction {
    /// Build a bundle directory from a text file.
    Build {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        tau: Option<usize>,
    },
    /// Answer a query against a bundle.
    Query {
        bundle: PathBuf,
        #[command(subcommand)]
        query: Query,
    },
}

#[derive(Subcommand)]
enum Query {
    Count {
        pattern: String,
    },
    Locate {
        pattern: String,
    },
    Sa {
        row: usize,
    },
    Isa {
        position: usize,
    },
    /// Longest common substring with another file.
    Lcs {
        other: PathBuf,
    },
    /// Maximal unique matches with another file.
    Mum {
        other: PathBuf,
    },
    /// Start positions of the Lyndon factors.
    Lyndon,
    Qgrams {
        q: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification,
}

impl From<qstring::Error> for Failure {
    fn from(e: qstring::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn read_input(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn syms(bytes: &[u8]) -> Vec<Sym> {
    bytes.iter().map(|&b| Sym::from(b)).collect()
}

fn parse_sizes(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|part| {
            let part = part.trim();
            let parsed = match part.strip_prefix("2^") {
                Some(e) => e.parse::<u32>().ok().and_then(|e| 1usize.checked_shl(e)),
                None => part.parse().ok(),
            };
            parsed.ok_or_else(|| Failure::Usage(format!("bad size {part}")))
        })
        .collect()
}

fn parse<T: std::str::FromStr<Err = qstring::Error>>(s: &str) -> Result<T, Failure> {
    s.parse().map_err(Failure::from)
}

fn write_ledger(g: &Global, ledger: &Ledger) -> CliResult {
    if let Some(path) = &g.ledger {
        ledger.snapshot().write_csv(File::create(path)?)?;
    }
    Ok(())
}

fn cmd_factorize(
    g: &Global,
    ledger: &Ledger,
    input: &Path,
    algo: &str,
    tau: Option<usize>,
    out: Option<&Path>,
) -> CliResult {
    let algo: Algorithm = parse(algo)?;
    let o = OracleText::from_bytes(&read_input(input)?, ledger.clone());
    let f = factorize(&o, algo, tau)?;
    if let Some(out) = out {
        f.write_jsonl(BufWriter::new(File::create(out)?))?;
        if g.ledger.is_none() {
            let mut path = out.as_os_str().to_owned();
            path.push(".ledger.csv");
            ledger.snapshot().write_csv(File::create(path)?)?;
        }
    }
    println!("{}", f.len());
    Ok(())
}

fn cmd_query(ledger: &Ledger, bundle: &Path, query: &Query) -> CliResult {
    if !bundle.is_dir() {
        return Err(Failure::Usage(format!(
            "no index bundle at {}",
            bundle.display()
        )));
    }
    let idx = load_bundle(bundle)?;
    let mut out = io::stdout().lock();
    match query {
        Query::Count { pattern } => writeln!(out, "{}", idx.count(&syms(pattern.as_bytes()))?)?,
        Query::Locate { pattern } => {
            for p in idx.locate(&syms(pattern.as_bytes()))? {
                writeln!(out, "{p}")?;
            }
        }
        Query::Sa { row } => writeln!(out, "{}", idx.sa(*row)?)?,
        Query::Isa { position } => writeln!(out, "{}", idx.isa(*position)?)?,
        Query::Lcs { other } => {
            let m = longest_common_substring(&idx.text(), &syms(&read_input(other)?))?;
            writeln!(out, "{}", m.to_tsv())?;
        }
        Query::Mum { other } => {
            for m in maximal_unique_matches(&idx.text(), &syms(&read_input(other)?))? {
                writeln!(out, "{}", m.to_tsv())?;
            }
        }
        Query::Lyndon => {
            let starts = lyndon_factorization(&idx, ledger)?;
            let cols: Vec<String> = starts.iter().map(|s| s.to_string()).collect();
            writeln!(out, "{}", cols.join("\t"))?;
        }
        Query::Qgrams { q } => {
            let grams = qgram_frequencies(&idx, *q)?;
            write!(out, "{}", qgrams_to_tsv(&idx.text(), *q, &grams))?;
        }
    }
    Ok(())
}

fn cmd_ed(ledger: &Ledger, x: &Path, y: &Path, script: bool) -> CliResult {
    let ox = OracleText::from_bytes(&read_input(x)?, ledger.clone());
    let oy = OracleText::from_bytes(&read_input(y)?, ledger.clone());
    let sol = solve(&ox, &oy, &SolveConfig::default())?;
    println!("{}", sol.distance);
    if script {
        print!("{}", sol.script.to_text());
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    let g = &cli.global;
    let ledger = Ledger::new(g.repetition_factor.max(1));
    let execution = if g.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match &cli.command {
        Command::Factorize {
            input,
            algo,
            tau,
            out,
        } => cmd_factorize(g, &ledger, input, algo, *tau, out.as_deref())?,
        Command::Index { action } => match action {
            IndexAction::Build { input, out, tau } => {
                let o = OracleText::from_bytes(&read_input(input)?, ledger.clone());
                let f = factorize(&o, Algorithm::Lz77, None)?;
                let idx = BwtIndex::from_factorization(&f, *tau)?;
                save_bundle(&idx, out)?;
                println!("{}\t{}", idx.rlbwt().text_len(), idx.rlbwt().run_count());
            }
            IndexAction::Query { bundle, query } => cmd_query(&ledger, bundle, query)?,
        },
        Command::Ed { x, y, script } => cmd_ed(&ledger, x, y, *script)?,
        Command::Bench {
            suite,
            sizes,
            z,
            k,
            out,
            timings,
        } => {
            let cfg = BenchConfig {
                suite: parse::<Suite>(suite)?,
                sizes: parse_sizes(sizes)?,
                seed: g.seed,
                z: *z,
                k: *k,
                repetition_factor: g.repetition_factor.max(1),
                execution,
                timings: *timings,
            };
            let records = run_suite(&cfg)?;
            for r in &records {
                ledger.charge("bench/total", r.ledger_total);
            }
            match out {
                Some(path) => write_csv(&records, BufWriter::new(File::create(path)?))?,
                None => write_csv(&records, io::stdout().lock())?,
            }
        }
        Command::Verify { level } => {
            let cfg = VerifyConfig {
                level: parse::<Level>(level)?,
                seed: g.seed,
                execution,
            };
            let results = run_all(&cfg);
            print!("{}", summary(&results));
            write_ledger(g, &ledger)?;
            if results.iter().any(|r| !r.passed) {
                return Err(Failure::Verification);
            }
            return Ok(());
        }
    }
    write_ledger(g, &ledger)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("qstring: {msg}");
            ExitCode::from(2)
        }
    }
}
