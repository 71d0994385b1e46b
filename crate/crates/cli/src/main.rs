//! `coxsmooth` command-line tool.
//!
//! Exit status: 0 on success, 1 for user errors (bad input, unmet
//! preconditions, caps), 2 for internal failures and theorem violations.

mod commands;
mod selfcheck;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use coxsmooth::CoxError;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "coxsmooth", version, about = "Bruhat intervals, Poincare polynomials and palindromic elements of Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify rank-3 parabolics and decide finiteness of the palindromic set.
    GroupCheck {
        /// Group file, or `@NAME` for a built-in (e.g. `@FIG1`, `@W(4,3)`).
        #[arg(long)]
        group: String,
        #[arg(long)]
        json: bool,
    },
    /// Poincare polynomial of a lower interval.
    Poincare {
        #[arg(long)]
        group: String,
        /// Comma-separated generator names.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Relative polynomial with respect to these generators.
        #[arg(long)]
        relative: Option<String>,
        /// Evaluate through the closed-form factorization.
        #[arg(long)]
        fast: bool,
        /// With --fast, also build the interval and compare.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Grassmannian chain and separable factors of an element.
    Factorize {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Count palindromic elements by length.
    Census {
        #[arg(long)]
        group: String,
        #[arg(long)]
        max_length: usize,
        #[arg(long, value_enum, default_value_t = Mode::Palindromic)]
        mode: Mode,
        /// Also list the elements.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        json: bool,
    },
    /// Generating series of palindromic elements in uniform groups.
    Series {
        /// Bond label, an integer >= 2 or `inf`.
        #[arg(long)]
        m: String,
        #[arg(long, default_value_t = 64)]
        q_order: usize,
        #[arg(long, default_value_t = 8)]
        t_order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Table of palindromic-element totals in W(m, n).
    Figure3 {
        /// `A..B` (inclusive) or a comma-separated list.
        #[arg(long, default_value = "4..8")]
        m_range: String,
        #[arg(long, default_value = "1..7")]
        n_range: String,
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        json: bool,
    },
    /// Replay the built-in worked examples and tables.
    Selfcheck {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Palindromic,
    TwoPalindromic,
}

/// What a command produced.
pub struct Report {
    pub json: Value,
    pub text: String,
    /// Replayed checks failed; reported with status 2.
    pub failed: bool,
}

impl Report {
    pub fn ok(json: Value, text: String) -> Self {
        Report { json, text, failed: false }
    }
}

pub enum Failure {
    User(String),
    Internal(String),
}

impl From<CoxError> for Failure {
    fn from(e: CoxError) -> Self {
        match e {
            CoxError::TheoremViolation(_) => Failure::Internal(e.to_string()),
            _ => Failure::User(e.to_string()),
        }
    }
}

pub type CmdResult = Result<Report, Failure>;

fn dispatch(command: Command) -> (CmdResult, bool) {
    match command {
        Command::GroupCheck { group, json } => (commands::group_check(&group), json),
        Command::Poincare { group, word, relative, fast, verify, json } => (
            commands::poincare(&group, &word, relative.as_deref(), fast, verify),
            json,
        ),
        Command::Factorize { group, word, json } => (commands::factorize(&group, &word), json),
        Command::Census { group, max_length, mode, list, json } => {
            let mode = match mode {
                Mode::Palindromic => coxsmooth::census::CensusMode::Palindromic,
                Mode::TwoPalindromic => coxsmooth::census::CensusMode::TwoPalindromic,
            };
            (commands::census(&group, max_length, mode, list), json)
        }
        Command::Series { m, q_order, t_order, json } => (commands::series(&m, q_order, t_order), json),
        Command::Figure3 { m_range, n_range, csv, json } => {
            (commands::figure3(&m_range, &n_range, csv), json)
        }
        Command::Selfcheck { json } => (Ok(selfcheck::run()), json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = std::panic::catch_unwind(move || dispatch(cli.command));
    match outcome {
        Ok((Ok(report), json)) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("JSON values serialize"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(if report.failed { 2 } else { 0 })
        }
        Ok((Err(Failure::User(msg)), _)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Ok((Err(Failure::Internal(msg)), _)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
        // the panic hook has already printed the message
        Err(_) => ExitCode::from(2),
    }
}
