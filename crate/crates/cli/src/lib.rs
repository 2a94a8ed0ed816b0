//! Library side of the `rg` binary: argument parsing, job execution and
//! output. [`run`] does everything except touch the process exit code.

mod commands;
pub mod job;
pub mod number;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use dwpf_core::checks::Suite;
use dwpf_core::numerics::Mode;
use dwpf_core::Error;
use serde_json::json;

pub use commands::Outcome;
pub use job::{Command, Format, JobSpec, MethodChoice};

pub const SCHEMA: &str = "rg-dwpf/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum ModeArg {
    Exact,
    F64,
}

#[derive(Parser, Debug)]
#[command(name = "rg", version, about = "Domain-wall partition functions of rational Richardson-Gaudin models")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Debug)]
struct Common {
    /// Arithmetic: exact rationals or double-precision complex.
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    /// Write the document here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Partition function of one instance.
    Pf {
        #[command(flatten)]
        common: Common,
        /// Twice the large spin.
        #[arg(long)]
        two_s: u32,
        /// Comma-separated inhomogeneities; the first carries the large spin.
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        /// Comma-separated rapidities, 2S + N - 1 of them.
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, value_enum, default_value = "det")]
        method: MethodChoice,
    },
    /// Randomized verification sweep.
    Verify {
        #[command(flatten)]
        common: Common,
        /// identity, spin-half, residues, limit, borchardt or boson.
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        two_s: u32,
        #[arg(long)]
        n: usize,
        /// Extra rapidities for the boson suite.
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Gamma table at one point.
    Gamma {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Structure coefficients of the determinant.
    Coeffs {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        two_s: u32,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
    },
    /// Quadratic Bethe equations and Richardson rapidities for spins 1/2.
    Bethe {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        /// Comma-separated 0/1 flags, one per level.
        #[arg(long)]
        occupation: String,
    },
}

fn split(list: &str) -> Vec<String> {
    if list.trim().is_empty() {
        Vec::new()
    } else {
        list.split(',').map(|s| s.trim().to_owned()).collect()
    }
}

fn occupation(s: &str) -> Result<Vec<bool>, Error> {
    split(s)
        .iter()
        .map(|x| match x.as_str() {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(Error::InvalidInput(format!("occupation flags are 0 or 1, got {other:?}"))),
        })
        .collect()
}

fn start(command: Command, common: &Common) -> JobSpec {
    let mode = match common.mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::F64 => Mode::F64,
    };
    let mut job = JobSpec::new(command, mode);
    job.out = common.out.as_ref().map(|p| p.display().to_string());
    job
}

fn job_from(sub: Sub) -> Result<JobSpec, Error> {
    let job = match sub {
        Sub::Pf { common, two_s, eps, nu, method } => {
            let mut job = start(Command::Pf, &common);
            job.two_s = Some(two_s);
            job.epsilons = split(&eps);
            job.rapidities = split(&nu);
            job.method = Some(method);
            job
        }
        Sub::Verify { common, suite, two_s, n, m, trials, seed, format } => {
            let mut job = start(Command::Verify, &common);
            job.suite = Some(suite);
            job.two_s = Some(two_s);
            job.n = Some(n);
            job.m = Some(m);
            job.trials = Some(trials);
            job.seed = Some(seed);
            job.format = Some(format);
            job
        }
        Sub::Gamma { common, nu, z, order } => {
            let mut job = start(Command::Gamma, &common);
            job.rapidities = split(&nu);
            job.z = Some(z);
            job.order = Some(order);
            job
        }
        Sub::Coeffs { common, two_s, eps } => {
            let mut job = start(Command::Coeffs, &common);
            job.two_s = Some(two_s);
            job.epsilons = split(&eps);
            job
        }
        Sub::Bethe { common, g, eps, occupation: occ } => {
            let mut job = start(Command::Bethe, &common);
            job.g = Some(g);
            job.epsilons = split(&eps);
            job.occupation = Some(occupation(&occ)?);
            job
        }
    };
    job.canonicalize()
}

/// Parses a command line into a canonical job.
pub fn parse_args<I, A>(argv: I) -> Result<JobSpec, clap::Error>
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    job_from(cli.command).map_err(|e| clap::Error::raw(clap::error::ErrorKind::ValueValidation, e.to_string()))
}

/// What the process should print and exit with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn error_document(kind: &str, detail: &str) -> String {
    let doc = json!({ "schema": SCHEMA, "error": { "kind": kind, "detail": detail } });
    serde_json::to_string_pretty(&doc).expect("json") + "\n"
}

fn failure(e: &Error) -> Response {
    let code = if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_USAGE };
    Response { code, stdout: error_document(e.kind(), &e.to_string()), stderr: String::new() }
}

/// Executes a job and renders its document, honouring `out`.
pub fn run_job(job: &JobSpec) -> Response {
    let outcome = match commands::execute(job) {
        Ok(o) => o,
        Err(e) => return failure(&e),
    };
    let text = match outcome.csv {
        Some(csv) => csv,
        None => {
            let mut doc = json!({ "schema": SCHEMA, "job": job });
            if let (Some(doc), Some(body)) = (doc.as_object_mut(), outcome.document.as_object()) {
                doc.extend(body.clone());
            }
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
    };
    let code = if outcome.checks_failed { EXIT_CHECK_FAILED } else { EXIT_OK };
    match &job.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Response { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Response {
                code: EXIT_USAGE,
                stdout: error_document("Io", &format!("cannot write {path}: {e}")),
                stderr: String::new(),
            },
        },
        None => Response { code, stdout: text, stderr: String::new() },
    }
}

fn usage_detail(e: &clap::Error) -> String {
    let text = e.to_string();
    let first = text.lines().next().unwrap_or_default();
    first.strip_prefix("error: ").unwrap_or(first).to_owned()
}

/// Full command-line entry point.
pub fn run<I, A>(argv: I) -> Response
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(job) => run_job(&job),
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            Response { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() }
        }
        Err(e) => Response {
            code: EXIT_USAGE,
            stdout: error_document("Usage", &usage_detail(&e)),
            stderr: e.render().to_string(),
        },
    }
}
