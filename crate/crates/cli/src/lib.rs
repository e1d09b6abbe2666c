//! Command-line front end for `trinomia`.
//!
//! ```text
//! trinomia gen {tnk|tbc|laurent|motzkin|triangle} [flags]
//! trinomia verify {hankel|interlace|tp|sm|criteria|riordan|binomial|tli|motzkin|limits|fundamental} [flags]
//! trinomia report all [--profile quick|full]
//! ```
//!
//! Exit status is 0 when every check passes, 1 when any check fails or is
//! inconclusive, and 2 on a usage error.

mod gen;
mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use trinomia::report::Report;
use trinomia::Rational;

pub use suites::{run_suite, Params, Profile, Suite, UsageError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest matrix accepted by `verify tp`; full-order scans grow like
/// `C(2n, n)`.
pub const TP_MAX_ROWS: usize = 10;

#[derive(Parser, Debug)]
#[command(name = "trinomia", version, about = "Generate and verify generalized central trinomial coefficients")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; `gen` defaults to csv, `verify` and `report` to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Worker threads (default: available cores).
    #[arg(long, global = true, env = "TRINOMIA_JOBS", value_name = "K",
          value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a sequence or triangle.
    Gen {
        #[arg(value_enum)]
        what: GenKind,
        #[command(flatten)]
        flags: Flags,
    },
    /// Run one verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        flags: Flags,
    },
    /// Run every suite.
    Report {
        #[arg(value_enum)]
        what: ReportKind,
        #[arg(long, value_enum, default_value = "quick")]
        profile: Profile,
        /// Comma-separated subset of suites; an empty value runs none.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        suites: Option<Vec<String>>,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum GenKind {
    Tnk,
    Tbc,
    Laurent,
    Motzkin,
    Triangle,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum ReportKind {
    All,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Flags {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub max_sum: Option<usize>,
    /// Integer or fraction such as `3/2`.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub b: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub c: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub a: Option<Rational>,
    #[arg(long)]
    pub depth: Option<usize>,
    /// Work over symbolic `b` and `c` (and symbolic `a` for `binomial`).
    #[arg(long)]
    pub symbolic: bool,
    /// Ascending list of `n` for `verify limits`.
    #[arg(long, value_delimiter = ',')]
    pub n_ladder: Option<Vec<usize>>,
    /// Corrupt the suite input before checking (for exercising failures).
    #[arg(long, hide = true, env = "TRINOMIA_INJECT_FAULT")]
    pub inject_fault: bool,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| format!("not an integer or fraction: {e}"))
}

impl Flags {
    fn params(&self) -> Params {
        Params {
            n: self.n,
            rows: self.rows,
            max_n: self.max_n,
            max_sum: self.max_sum,
            b: self.b.clone(),
            c: self.c.clone(),
            a: self.a.clone(),
            depth: self.depth,
            symbolic: self.symbolic,
            n_ladder: self.n_ladder.clone(),
            fault: self.inject_fault,
        }
    }
}

/// Output text and exit status of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub status: i32,
    pub output: String,
}

fn usage(msg: impl std::fmt::Display) -> Outcome {
    Outcome {
        status: EXIT_USAGE,
        output: format!("error: {msg}\n"),
    }
}

fn render_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("suite,check,verdict,witness\n");
            for c in &report.checks {
                let witness = c.witness.as_ref().map(|w| match w {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                });
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    gen::csv_field(&report.suite),
                    gen::csv_field(&c.name),
                    c.verdict,
                    gen::csv_field(witness.as_deref().unwrap_or(""))
                ));
            }
            s
        }
    }
}

fn report_status(report: &Report) -> i32 {
    if report.all_passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn run_command(cli: &Cli) -> Outcome {
    let started = Instant::now();
    let elapsed = || started.elapsed().as_millis() as u64;
    match &cli.command {
        Command::Gen { what, flags } => {
            let format = cli.format.unwrap_or(Format::Csv);
            match gen::generate(*what, &flags.params(), format) {
                Ok(output) => Outcome {
                    status: EXIT_PASS,
                    output,
                },
                Err(e) => usage(e),
            }
        }
        Command::Verify { suite, flags } => {
            let params = flags.params();
            if *suite == Suite::Tp && params.rows.unwrap_or(8) > TP_MAX_ROWS {
                return usage(format!("--rows is capped at {TP_MAX_ROWS} for verify tp"));
            }
            match run_suite(*suite, &params) {
                Ok(checks) => {
                    let report = Report::new(suite.name(), checks, elapsed());
                    Outcome {
                        status: report_status(&report),
                        output: render_report(&report, cli.format.unwrap_or(Format::Json)),
                    }
                }
                Err(e) => usage(e),
            }
        }
        Command::Report {
            what: ReportKind::All,
            profile,
            suites,
        } => {
            let selected = match suites {
                None => Suite::ALL.to_vec(),
                Some(names) => {
                    let mut out = Vec::new();
                    for name in names.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
                        match Suite::from_str(name, true) {
                            Ok(s) => out.push(s),
                            Err(_) => return usage(format!("unknown suite `{name}`")),
                        }
                    }
                    out
                }
            };
            match suites::report_all(*profile, &selected) {
                Ok(checks) => {
                    let report = Report::new("all", checks, elapsed());
                    Outcome {
                        status: report_status(&report),
                        output: render_report(&report, cli.format.unwrap_or(Format::Json)),
                    }
                }
                Err(e) => usage(e),
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the output instead of printing it.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return Outcome {
                status: e.exit_code(),
                output: e.render().to_string(),
            }
        }
    };
    let pool = match cli.jobs {
        Some(k) => rayon::ThreadPoolBuilder::new().num_threads(k as usize).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    match pool {
        Ok(pool) => pool.install(|| run_command(&cli)),
        Err(e) => usage(e),
    }
}

/// Runs the command and writes its output to stdout, stderr or `--out`;
/// returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let out_path = Cli::try_parse_from(&args).ok().and_then(|c| c.out);
    let outcome = run(args);
    if outcome.status == EXIT_USAGE {
        eprint!("{}", outcome.output);
        return outcome.status;
    }
    let written = match out_path {
        Some(path) => std::fs::write(&path, &outcome.output)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(outcome.output.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| e.to_string())
        }
    };
    match written {
        Ok(()) => outcome.status,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
