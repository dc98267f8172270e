use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use swapmatch::cli::{self, OutputFormat, SearchConfig, EXIT_ERROR, EXIT_MATCH, EXIT_NO_MATCH};
use swapmatch::verify::{run_verify, Fault, VerifyConfig};
use swapmatch::{EngineKind, Pattern};

#[derive(Parser)]
#[command(name = "swapmatch", version, about = "Pattern matching with swaps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every position where a swapped version of the pattern ends.
    Search(SearchArgs),
    /// Cross-check all engines on random inputs.
    Verify(VerifyArgs),
    /// Time engines on a corpus and print CSV.
    Bench(BenchArgs),
    /// Show the derived strings, factorizations and automaton of a pattern.
    Inspect(InspectArgs),
}

#[derive(Args)]
struct SearchArgs {
    #[arg(short, long)]
    pattern: String,
    #[arg(short, long, default_value = "encoded-swap", value_parser = parse_engine)]
    engine: EngineKind,
    /// Print a JSON array of {"file", "position"} objects.
    #[arg(long, conflicts_with = "count")]
    json: bool,
    /// Print only the number of matches.
    #[arg(short, long)]
    count: bool,
    /// Report start positions (j - m + 1) instead of end positions.
    #[arg(long)]
    start_positions: bool,
    /// Files to search; standard input when omitted.
    files: Vec<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated alphabet sizes.
    #[arg(long, value_delimiter = ',', default_value = "2,4")]
    sigma: Vec<usize>,
    #[arg(long, default_value_t = 25)]
    m_max: usize,
    #[arg(short, long, default_value_t = 2000)]
    n: usize,
    #[arg(short, long, default_value_t = 200)]
    iterations: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Run the harness against a deliberately broken engine.
    #[arg(long, hide = true)]
    inject_fault: Option<FaultArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    DropCUnion,
}

#[derive(Args)]
struct BenchArgs {
    /// Pattern to time; repeatable.
    #[arg(short, long = "pattern")]
    patterns: Vec<String>,
    /// File with one pattern per line.
    #[arg(long)]
    patterns_file: Option<PathBuf>,
    /// Text to search.
    #[arg(long)]
    corpus: PathBuf,
    #[arg(short, long, default_value_t = 3)]
    repeat: usize,
    /// Comma-separated engine names.
    #[arg(
        short,
        long,
        value_delimiter = ',',
        default_value = "plain-swap,encoded-swap,shift-and,encoded-prefix",
        value_parser = parse_engine
    )]
    engines: Vec<EngineKind>,
}

#[derive(Args)]
struct InspectArgs {
    pattern: String,
    /// Also print the swap automaton in Graphviz DOT.
    #[arg(long)]
    dot: bool,
}

fn parse_engine(s: &str) -> Result<EngineKind, String> {
    s.parse().map_err(|e: swapmatch::Error| e.to_string())
}

fn pattern(s: &str) -> Result<Pattern, String> {
    Pattern::new(s.as_bytes()).map_err(|e| e.to_string())
}

fn search(args: SearchArgs) -> Result<i32, String> {
    let cfg = SearchConfig {
        pattern: pattern(&args.pattern)?,
        engine: args.engine,
        inputs: args.files,
        format: if args.json {
            OutputFormat::Json
        } else {
            OutputFormat::Text
        },
        count_only: args.count,
        start_positions: args.start_positions,
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    Ok(cli::cmd_search(&cfg, &mut io::stdin().lock(), &mut out, &mut io::stderr()))
}

fn verify(args: VerifyArgs) -> Result<i32, String> {
    if let Some(&s) = args.sigma.iter().find(|&&s| !(1..=256).contains(&s)) {
        return Err(format!("alphabet size {s} must be between 1 and 256"));
    }
    let cfg = VerifyConfig {
        sigmas: args.sigma,
        m_max: args.m_max,
        n: args.n,
        iterations: args.iterations,
        seed: args.seed,
        fault: args.inject_fault.map(|FaultArg::DropCUnion| Fault::DropCUnion),
    };
    let report = run_verify(&cfg);
    match report.failure {
        None => {
            println!("ok: {} cases, all checks agree", report.cases);
            Ok(EXIT_MATCH)
        }
        Some(cx) => {
            println!("FAILED after {} cases", report.cases);
            println!("{cx}");
            Ok(EXIT_NO_MATCH)
        }
    }
}

fn bench(args: BenchArgs) -> Result<i32, String> {
    let mut raw = args.patterns;
    if let Some(path) = &args.patterns_file {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        raw.extend(text.lines().filter(|l| !l.is_empty()).map(str::to_owned));
    }
    if raw.is_empty() {
        return Err("no patterns given".into());
    }
    let patterns = raw.iter().map(|s| pattern(s)).collect::<Result<Vec<_>, _>>()?;
    let corpus = if args.corpus.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).map(|_| buf)
    } else {
        fs::read(&args.corpus)
    }
    .map_err(|e| format!("{}: {e}", args.corpus.display()))?;
    match cli::run_bench(&patterns, &corpus, &args.engines, args.repeat) {
        Ok(records) => {
            let mut out = io::stdout().lock();
            cli::write_csv(&records, &mut out).map_err(|e| e.to_string())?;
            Ok(EXIT_MATCH)
        }
        Err(e) => {
            eprintln!("swapmatch: {e}");
            Ok(EXIT_NO_MATCH)
        }
    }
}

fn inspect(args: InspectArgs) -> Result<i32, String> {
    let p = pattern(&args.pattern)?;
    let mut out = io::stdout().lock();
    cli::cmd_inspect(&p, args.dot, &mut out)
        .and_then(|_| out.flush())
        .map_err(|e| e.to_string())?;
    Ok(EXIT_MATCH)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR as u8 } else { 0 });
        }
    };
    let res = match cli.command {
        Command::Search(a) => search(a),
        Command::Verify(a) => verify(a),
        Command::Bench(a) => bench(a),
        Command::Inspect(a) => inspect(a),
    };
    match res {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("swapmatch: {msg}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
