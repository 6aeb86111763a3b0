//! JSON formats, table generation and the `wkring` command-line tool built
//! on [`wkring_core`].

pub mod commands;
pub mod error;
pub mod json;

pub use commands::{run, Outcome, Progress, Request, Verb};
pub use error::CliError;
pub use wkring_core as core;
