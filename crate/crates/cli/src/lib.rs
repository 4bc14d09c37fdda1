//! Command-line front end: argument types, command dispatch and report
//! rendering. The `kissing` binary is a thin wrapper around [`execute`].

pub mod args;
mod commands;

use std::fmt::Display;
use std::time::Instant;

use serde_json::{json, Value};

pub use args::{Cli, Format};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] kissing_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    fn io(path: impl Display, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_string(),
            source,
        }
    }
}

/// Result of one command before rendering.
#[derive(Debug)]
pub struct Outcome {
    command: &'static str,
    inputs: Value,
    outputs: Value,
    text: String,
    exit: u8,
}

impl Outcome {
    fn new(command: &'static str, inputs: Value, outputs: Value) -> Self {
        Self {
            command,
            inputs,
            outputs,
            text: String::new(),
            exit: 0,
        }
    }

    fn text(mut self, text: String) -> Self {
        self.text = text;
        self
    }

    fn exit(mut self, code: u8) -> Self {
        self.exit = code;
        self
    }

    pub fn command(&self) -> &'static str {
        self.command
    }

    pub fn outputs(&self) -> &Value {
        &self.outputs
    }

    pub fn exit_code(&self) -> u8 {
        self.exit
    }

    /// The run report; serde_json maps are ordered by key, so it is canonical.
    pub fn report(&self, elapsed: f64) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "elapsed": elapsed,
            "version": env!("CARGO_PKG_VERSION"),
        })
    }
}

/// A finished run: what goes to stdout and the process exit code.
#[derive(Debug)]
pub struct Rendered {
    pub outcome: Outcome,
    pub stdout: String,
}

pub fn execute(cli: &Cli) -> Result<Rendered, CliError> {
    let start = Instant::now();
    let outcome = commands::run(&cli.command)?;
    let stdout = match cli.format {
        Format::Text => outcome.text.clone(),
        Format::Json => {
            let report = outcome.report(start.elapsed().as_secs_f64());
            format!(
                "{}\n",
                serde_json::to_string_pretty(&report).expect("report serializes")
            )
        }
    };
    Ok(Rendered { outcome, stdout })
}
