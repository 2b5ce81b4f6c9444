//! Front end for `expsumlab-core`: job files, the `sum -> reconstruct ->
//! compare` pipelines and the named verification cases.

pub mod error;
pub mod job;
pub mod report;
pub mod run;
pub mod verify;

pub use error::{exit, CliError};
pub use job::{Command, JobSpec, Overrides, Task};
pub use report::{Report, Status};

/// Runs a parsed job file. Settings in `flags` take precedence over the
/// job's own overrides.
pub fn run_job(spec: JobSpec, flags: Overrides) -> Result<Report, CliError> {
    let ov = flags.or(Overrides { budget: spec.budget, s_max: spec.s_max, grid: spec.grid.clone() });
    let task = Task::parse(spec.command, spec.payload)?;
    run::run_task(&task, &ov)
}

pub fn exit_code(outcome: &Result<Report, CliError>) -> i32 {
    match outcome {
        Ok(r) if r.status == Status::Ok => exit::OK,
        Ok(_) => exit::FAILED,
        Err(e) => e.exit_code(),
    }
}
