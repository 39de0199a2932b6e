//! `cfred` — exact continued-fraction reduction and verification.

mod config;
mod grammar;
mod report;
mod suite;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use cfred::cf_classic::expand;
use cfred::cf_slow::slow_expand;
use cfred::hurwitz::{equiv_witness, n_of, sync_indices_with_bound};
use cfred::membership::{verify_theorem1, verify_theorem2};
use cfred::Error as CoreError;

use config::RunConfig;
use grammar::{parse_matrix, parse_number};
use report::{
    matrix_json, membership_report_json, quad_json, sync_bound_json, sync_result_json,
};

#[derive(Parser)]
#[command(
    name = "cfred",
    version,
    about = "Exact continued-fraction reduction over PGL(2,Z): expansions, \
             inequality-cut transformation sets, synchronization bounds",
    after_help = "Numbers: -3, 355/113, or quad(a,b,d,c) for (a + b*sqrt(d))/c.\n\
                  Matrices: [[a,b],[c,d]] with determinant +1 or -1.\n\
                  Exit codes: 0 success, 1 verification failure, 2 usage error."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classic expansion: one JSON line per step with the partial quotient,
    /// convergent, reduction delta, and transformation matrix
    Expand {
        /// Number to expand
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Number of partial quotients
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Slow additive expansion: one JSON line per unit move
    Slow {
        /// Number to expand
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Number of unit moves
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
    /// Minimal indices (s, t) at which the expansions of x and gamma(x)
    /// reach a common remainder, searched up to the bound N(gamma)
    Sync {
        /// Transformation matrix
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        /// Irrational number
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// The synchronization bound N(gamma): 3 when gamma fixes infinity,
    /// otherwise the larger of the two convergent-count bounds at
    /// gamma(inf) and gamma^{-1}(inf)
    Bound {
        /// Transformation matrix
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
    },
    /// Search for a transformation mapping x to y by matching expansion
    /// tails; absence at finite depth is inconclusive
    Witness {
        /// Irrational number
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Irrational number
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Search window for the matching indices
        #[arg(long, default_value_t = 40)]
        depth: usize,
    },
    /// Verify that the classic transformation set of x equals the set cut
    /// out by -1 <= gamma(inf) <= 0, gamma(x) > 1 minus its two exceptional
    /// elements, over all matrices up to a height bound
    VerifyT1 {
        /// Irrational number
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Box bound: every matrix with entries of absolute value <= height
        #[arg(long, default_value_t = 25)]
        height: i64,
        /// Partial quotients to generate; the last convergent denominator
        /// must exceed the height bound
        #[arg(long, default_value_t = 12)]
        depth: usize,
    },
    /// Verify that the slow transformation set of x (translation prefix
    /// excluded) equals the set cut out by gamma(inf) <= -1, gamma(x) > 0
    /// minus its one exceptional element, over a height-bounded box
    VerifyT2 {
        /// Irrational number
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Box bound: every matrix with entries of absolute value <= height
        #[arg(long, default_value_t = 25)]
        height: i64,
        /// Slow steps to generate; must complete a classic level whose
        /// convergent denominator exceeds the height bound
        #[arg(long, default_value_t = 400)]
        depth: usize,
    },
    /// Verify synchronization bounds for every transformation up to a
    /// height against each number in a corpus file (one number per line,
    /// `#` comments)
    VerifyT4 {
        /// Box bound for the transformation grid
        #[arg(long, default_value_t = 10)]
        height: i64,
        /// File with one number per line
        #[arg(long)]
        corpus: PathBuf,
    },
    /// Run the whole verification suite from a config file and emit one
    /// JSON record per check
    Suite {
        /// Key-value config file with `corpus =` lines
        #[arg(long)]
        config: PathBuf,
        /// Write the report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Verification(String),
}

impl CliError {
    fn code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Verification(_) => ExitCode::from(1),
        }
    }
}

impl From<grammar::GrammarError> for CliError {
    fn from(e: grammar::GrammarError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<config::ConfigError> for CliError {
    fn from(e: config::ConfigError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::SyncNotFound { .. } => CliError::Verification(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            let (msg, code) = match &e {
                CliError::Usage(m) | CliError::Verification(m) => (m.clone(), e.code()),
            };
            eprintln!("error: {}", msg);
            code
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode, CliError> {
    match cmd {
        Cmd::Expand { x, depth } => {
            if depth == 0 {
                return Err(CliError::Usage("depth must be positive".into()));
            }
            let x = parse_number(&x)?;
            for s in expand(&x, depth - 1).states {
                let line = json!({
                    "i": s.i,
                    "n_i": s.n.to_string(),
                    "p_i": s.p.to_string(),
                    "q_i": s.q.to_string(),
                    "delta_i": quad_json(&s.delta),
                    "gamma_i": matrix_json(&s.gamma),
                });
                println!("{}", line);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Slow { x, steps } => {
            let x = parse_number(&x)?;
            for s in slow_expand(&x, steps) {
                let line = json!({
                    "i": s.i,
                    "move": s.mv.expect("post-seed state").to_string(),
                    "x_i": quad_json(&s.x),
                    "gamma_prime_i": matrix_json(&s.gamma_prime),
                });
                println!("{}", line);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sync { gamma, x } => {
            let gamma = parse_matrix(&gamma)?;
            let x = parse_number(&x)?;
            let bound = n_of(&gamma);
            let cap = bound.n_floor;
            let r = sync_indices_with_bound(&gamma, &x, cap, bound)?;
            println!("{}", sync_result_json(&r));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bound { gamma } => {
            let gamma = parse_matrix(&gamma)?;
            println!("{}", sync_bound_json(&n_of(&gamma)));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Witness { x, y, depth } => {
            let x = parse_number(&x)?;
            let y = parse_number(&y)?;
            if x.is_rational() || y.is_rational() {
                return Err(CliError::Usage("witness search needs irrational inputs".into()));
            }
            let found = equiv_witness(&x, &y, depth);
            let line = json!({
                "found": found.is_some(),
                "gamma": found.as_ref().map(matrix_json),
                "depth": depth,
            });
            println!("{}", line);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::VerifyT1 { x, height, depth } => {
            let x = parse_number(&x)?;
            let r = verify_theorem1(&x, height, depth)?;
            println!("{}", membership_report_json(&r));
            Ok(exit_by(r.is_clean()))
        }
        Cmd::VerifyT2 { x, height, depth } => {
            let x = parse_number(&x)?;
            let r = verify_theorem2(&x, height, depth)?;
            println!("{}", membership_report_json(&r));
            Ok(exit_by(r.is_clean()))
        }
        Cmd::VerifyT4 { height, corpus } => {
            let text = fs::read_to_string(&corpus)?;
            let mut xs = Vec::new();
            for raw in text.lines() {
                let content = raw.split('#').next().unwrap_or("").trim();
                if content.is_empty() {
                    continue;
                }
                xs.push(parse_number(content)?);
            }
            if xs.is_empty() {
                return Err(CliError::Usage("corpus file has no numbers".into()));
            }
            for x in &xs {
                if x.is_rational() {
                    return Err(CliError::Usage(format!("corpus entry {} is rational", x)));
                }
            }
            let (lines, ok) = suite::verify_t4_records(&xs, height);
            for line in lines {
                println!("{}", line);
            }
            Ok(exit_by(ok))
        }
        Cmd::Suite { config, output } => {
            let cfg = RunConfig::parse(&fs::read_to_string(&config)?)?;
            let (lines, ok) = suite::run_suite(&cfg)?;
            let target = output.or_else(|| cfg.output.clone());
            match target {
                Some(path) => fs::write(path, lines.join("\n") + "\n")?,
                None => {
                    for line in &lines {
                        println!("{}", line);
                    }
                }
            }
            Ok(exit_by(ok))
        }
    }
}

fn exit_by(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
