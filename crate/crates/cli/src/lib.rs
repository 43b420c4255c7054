//! Command-line front end: `verify`, `compare`, `audit`, `constants` and `bench`.
//!
//! Exit codes: 0 when everything checked holds, 1 when a violation is found,
//! 2 on usage errors.

pub mod args;
pub mod commands;
pub mod output;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::Parser;
use thiserror::Error;

use trigbounds::oracle::OracleError;
use trigbounds::verifier::VerifyError;

use args::{Cli, Command};

pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                0
            };
        }
    };
    let result = match &cli.command {
        Command::Verify(a) => commands::verify(a, stdout, stderr),
        Command::Compare(a) => commands::compare(a, stdout),
        Command::Audit(a) => commands::audit(a, stdout),
        Command::Constants(a) => commands::constants(a, stdout),
        Command::Bench(a) => commands::bench(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("trigbounds").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify"));
    }

    #[test]
    fn bad_usage_exits_two() {
        assert_eq!(run_capture(&["verify", "--chain", "C9"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["verify", "--tol", "-1"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
        let (code, _, err) = run_capture(&["verify", "--chain", "C3", "--variant", "printed"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("C3"), "{err}");
    }

    #[test]
    fn corrected_chain_passes_and_printed_chain_fails() {
        let (code, out, _) = run_capture(&["verify", "--chain", "C6", "--grid", "500", "--emit", "csv"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("chain,variant,pair,x,alpha,lhs,rhs,gap"));
        let (code, _, _) = run_capture(&["verify", "--chain", "C5", "--variant", "printed", "--grid", "500"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn compare_requires_alpha_for_alpha_bounds() {
        let (code, _, err) = run_capture(&["compare", "--a", "B1", "--b", "B2"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("alpha"), "{err}");
        let (code, out, _) = run_capture(&["compare", "--a", "B8", "--b", "B7", "--grid", "50"]);
        assert_eq!(code, 0);
        let json: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(json["tool"], "trigbounds");
        assert_eq!(json["command"], "compare");
    }

    #[test]
    fn json_output_is_stable_apart_from_timestamp() {
        let args = ["verify", "--chain", "C1", "--grid", "200", "--alphas", "1.0,1.2"];
        let strip = |s: String| {
            let mut v: serde_json::Value = serde_json::from_str(&s).unwrap();
            v.as_object_mut().unwrap().remove("timestamp");
            v
        };
        let first = strip(run_capture(&args).1);
        let second = strip(run_capture(&args).1);
        assert_eq!(first, second);
    }
}
