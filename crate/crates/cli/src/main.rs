use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cycgroups::record::OutputRecord;
use cycgroups::search::{self, SearchBounds};
use cycgroups::verify::{self, Suite, VerifyOptions};
use cycgroups::HParams;

const EXIT_USAGE: u8 = 1;
const EXIT_INTERNAL: u8 = 2;
const EXIT_VERIFY_FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "cycgroups",
    version,
    about = "Abelianization invariants and connected-LOG classification of H(r,n,s)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Abelian invariants of H(r,n,s)
    Ab(TripleArgs),
    /// Connected-LOG classification of H(r,n,s)
    Classify(TripleArgs),
    /// Search a parameter box for perfect groups and case (c) candidates
    Search(SearchArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Args)]
struct TripleArgs {
    #[arg(long)]
    r: u64,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    s: u64,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    r_max: u64,
    #[arg(long)]
    n_max: u64,
    #[arg(long)]
    s_max: u64,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Report file; the report goes to stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of thmB, lemma41, shift, freeprod, detxcheck
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 10)]
    r_max: u64,
    #[arg(long, default_value_t = 20)]
    n_max: u64,
    #[arg(long, default_value_t = 10)]
    s_max: u64,
    /// Random exponent vectors for detxcheck (length up to --n-max)
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

enum Failure {
    Usage(String),
    Internal(String),
    Verification,
}

impl From<cycgroups::Error> for Failure {
    fn from(e: cycgroups::Error) -> Self {
        use cycgroups::Error::*;
        match e {
            InvalidParams { .. } | InvalidBounds(_) | BoundOverflow(_) | UnknownSuite(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Internal(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Ab(args) => cmd_triple(args, false),
        Command::Classify(args) => cmd_triple(args, true),
        Command::Search(args) => cmd_search(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
        Err(Failure::Verification) => ExitCode::from(EXIT_VERIFY_FAILED),
    }
}

fn render(records: &[OutputRecord], format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Json => {
            let mut out = String::new();
            for rec in records {
                out += &rec.to_json()?;
                out.push('\n');
            }
            out
        }
        Format::Csv => OutputRecord::to_csv(records)?,
        Format::Plain => records.iter().map(OutputRecord::to_plain).collect(),
    })
}

fn emit(text: &str) -> Result<(), Failure> {
    io::stdout()
        .write_all(text.as_bytes())
        .map_err(|e| Failure::Internal(format!("writing stdout: {e}")))
}

fn cmd_triple(args: TripleArgs, classify: bool) -> Result<(), Failure> {
    let p = HParams::new(args.r, args.n, args.s)?;
    let record = if classify {
        OutputRecord::classified(p)
    } else {
        OutputRecord::abelian(p)
    };
    emit(&render(&[record], args.format)?)
}

fn cmd_search(args: SearchArgs) -> Result<(), Failure> {
    if args.jobs == 0 {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    let bounds = SearchBounds::new(args.r_max, args.n_max, args.s_max)?;
    let report = search::search_perfect(bounds, args.jobs)?;
    let body = match args.format {
        Format::Json => {
            let mut s = report.to_json()?;
            s.push('\n');
            s
        }
        Format::Csv => report.to_csv()?,
        Format::Plain => plain_report(&report),
    };
    let summary = format!(
        "{} ({:.2}s, {} jobs)",
        report.summary(),
        report.wall_time.as_secs_f64(),
        args.jobs
    );
    match &args.out {
        Some(path) => {
            fs::write(path, body)
                .map_err(|e| Failure::Internal(format!("cannot write {}: {e}", path.display())))?;
            println!("{summary}");
        }
        None => {
            emit(&body)?;
            eprintln!("{summary}");
        }
    }
    if !report.is_sound() {
        return Err(Failure::Internal(
            "a reported finding failed independent re-verification".into(),
        ));
    }
    Ok(())
}

fn plain_report(report: &search::SearchReport) -> String {
    let mut out = format!(
        "search r<={} n<={} s<={}: {}\n",
        report.bounds.r_max,
        report.bounds.n_max,
        report.bounds.s_max,
        report.summary()
    );
    for p in &report.perfect {
        out += &format!(
            "perfect {}{}\n",
            p.params,
            if p.conjecture_relevant {
                " (conjecture-relevant)"
            } else {
                ""
            }
        );
    }
    for c in &report.candidates_case_c {
        out += &format!("candidate case (c) {}\n", c.params);
    }
    out
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let suite: Suite = args.suite.parse()?;
    let bounds = SearchBounds::new(args.r_max, args.n_max, args.s_max)?;
    let mut opts = VerifyOptions::new(bounds);
    opts.random_samples = args.samples;
    opts.random_n_max = args.n_max as usize;
    opts.seed = args.seed;
    let report = verify::run_suite(suite, &opts)?;

    let status = if report.passed() { "PASS" } else { "FAIL" };
    let records: Vec<OutputRecord> = report
        .counterexamples
        .iter()
        .filter_map(|c| c.params.map(OutputRecord::classified))
        .collect();
    match args.format {
        Format::Json => {
            let line = serde_json::to_string(&report)
                .map_err(|e| Failure::Internal(e.to_string()))?;
            emit(&format!("{line}\n"))?;
        }
        Format::Csv | Format::Plain => {
            emit(&format!(
                "{status} {}: {} cases, {} counterexamples\n",
                report.suite,
                report.examined,
                report.counterexamples.len()
            ))?;
            for c in &report.counterexamples {
                let what = match (&c.params, &c.vector) {
                    (Some(p), _) => p.to_string(),
                    (None, Some(v)) => format!("circ({})", v.join(",")),
                    (None, None) => "?".to_string(),
                };
                emit(&format!("{what}: {}\n", c.detail))?;
            }
        }
    }
    if !records.is_empty() {
        emit(&render(&records, args.format)?)?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
