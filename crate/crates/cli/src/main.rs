use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use expsumlab::job::read_json;
use expsumlab::{exit_code, run_job, CliError, Command, JobSpec, Overrides, Report};
use serde_json::json;

/// Exponential-sum L-series over finite fields, degree predictions and
/// p-adic radius profiles.
#[derive(Parser)]
#[command(name = "expsumlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Ceiling on point evaluations for one power-sum table.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Number of symbols b_0..b_s computed for radius estimates.
    #[arg(long, global = true)]
    smax: Option<usize>,
    /// Comma-separated lambda values, e.g. 1/4,1/2,1.
    #[arg(long, global = true, value_delimiter = ',')]
    grid: Option<Vec<String>>,
    /// Worker threads.
    #[arg(long, global = true, env = "EXPSUMLAB_THREADS")]
    threads: Option<usize>,
    /// Write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write the power-sum table or radius profile as CSV.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Print the JSON report instead of the text table.
    #[arg(long, global = true)]
    json: bool,
    /// Log progress to stderr (repeat for more).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand)]
enum Cmd {
    /// S_1..S_M for a variety and function (payload file, `-` for stdin).
    Sum { payload: PathBuf },
    /// Power sums, reconstructed L-series and an optional prediction check.
    Lfun { payload: PathBuf },
    /// Degree prediction from topological or combinatorial data.
    Predict { payload: PathBuf },
    /// Radius profile of a rank-one differential system.
    Radius { payload: PathBuf },
    /// Radius profile plus the index from its endpoint slopes.
    Index { payload: PathBuf },
    /// Runs a named case (or `all`) against its bundled expected record.
    Verify { case: String },
    /// Runs a job file: {"command", "payload", optional overrides}.
    Run { job: PathBuf },
    /// Lists the verify cases.
    Cases,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.opts.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Some(n) = cli.opts.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("cannot set thread count: {e}");
        }
    }
    if let Cmd::Cases = cli.command {
        for c in expsumlab::verify::CASES {
            println!("{c}");
        }
        return ExitCode::SUCCESS;
    }
    let outcome = job(&cli.command).and_then(|spec| {
        let flags = Overrides { budget: cli.opts.budget, s_max: cli.opts.smax, grid: cli.opts.grid.clone() };
        run_job(spec, flags)
    });
    let outcome = outcome.and_then(|r| emit(&r, &cli.opts).map(|_| r));
    if let Err(e) = &outcome {
        eprintln!("expsumlab: {e}");
    }
    ExitCode::from(exit_code(&outcome) as u8)
}

fn job(cmd: &Cmd) -> Result<JobSpec, CliError> {
    let wrap = |command: Command, path: &Path| -> Result<JobSpec, CliError> {
        Ok(JobSpec { command, payload: read_json(path)?, budget: None, s_max: None, grid: None })
    };
    match cmd {
        Cmd::Sum { payload } => wrap(Command::Sum, payload),
        Cmd::Lfun { payload } => wrap(Command::Lfun, payload),
        Cmd::Predict { payload } => wrap(Command::Predict, payload),
        Cmd::Radius { payload } => wrap(Command::Radius, payload),
        Cmd::Index { payload } => wrap(Command::Index, payload),
        Cmd::Verify { case } => Ok(JobSpec {
            command: Command::Verify,
            payload: json!({ "case": case }),
            budget: None,
            s_max: None,
            grid: None,
        }),
        Cmd::Run { job } => JobSpec::from_file(job),
        Cmd::Cases => unreachable!("handled before dispatch"),
    }
}

fn emit(r: &Report, opts: &Opts) -> Result<(), CliError> {
    if let Some(path) = &opts.out {
        r.write_json(path)?;
    }
    if let Some(path) = &opts.csv {
        r.write_csv(path)?;
    }
    if opts.json {
        print!("{}", r.to_json());
    } else {
        print!("{}", r.text);
    }
    Ok(())
}
