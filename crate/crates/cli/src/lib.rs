//! Library surface of the CLI: request resolution, execution and rendering.
//! `main` is a thin shell over these pieces; the acceptance tests drive them
//! directly.

pub mod exec;
pub mod output;
pub mod request;

pub use exec::{determinism_check, run, RunError};
pub use request::{build_request, Cli, CommandArg, RunRequest, UsageError, TOL_ENV};
