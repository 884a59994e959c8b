//! `valflock`: JSON front end for the valflock library.

mod commands;
mod report;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use valflock::Error;

#[derive(Parser)]
#[command(name = "valflock", version, about = "Valuated matroids, matroid flocks and Lindstrom valuations")]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for window scans (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check the basis axioms of a matroid.
    CheckMatroid { file: PathBuf },
    /// Check the valuation axioms.
    CheckValuation { file: PathBuf },
    /// Support matroid of a valuation.
    Support { file: PathBuf },
    /// The matroid of optimal bases at alpha.
    MatroidAt {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Difference constraints of the cell at alpha, or an SVG of a 2-D slice.
    Cells {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Render the slice through the first (and, for |E| = 4, last)
        /// coordinate equal to 0.
        #[arg(long)]
        svg: bool,
        /// Half-width of the rendered window.
        #[arg(long)]
        radius: Option<i64>,
    },
    /// Distinct matroids M_alpha in a window, with a representative alpha each.
    Leaders {
        file: PathBuf,
        #[arg(long)]
        radius: Option<i64>,
    },
    /// The potential g at alpha.
    GValue {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Fenchel dual of a window function (or of a valuation's 0/1 function).
    Fenchel {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<String>,
    },
    /// Check the flock axioms on a window.
    CheckFlock {
        file: PathBuf,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 2)]
        radius: i64,
        /// Also check the set form M_a / I = M_{a+e_I} \ I.
        #[arg(long)]
        sets: bool,
        /// Also run the window lemma checks.
        #[arg(long)]
        lemmas: bool,
    },
    /// Recover the valuation of a flock.
    ExtractValuation {
        file: PathBuf,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        cutoff: Option<i64>,
    },
    /// p-adic valuation of the maximal minors of an integer matrix.
    LindstromToric {
        file: PathBuf,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Matroid of the twisted toric representation at alpha.
    ToricMatroidAt {
        file: PathBuf,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Matroid (or tangent space) of a linearized parametrization at alpha.
    FlockFromLinearized {
        file: PathBuf,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Print the tangent space as a matrix instead.
        #[arg(long)]
        tangent: bool,
    },
    /// Check the Frobenius flock axioms of a linearized parametrization.
    CheckFf {
        file: PathBuf,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 2)]
        radius: i64,
    },
    /// Rigidity certificate from the exchange-relation constraints.
    Rigidity { file: PathBuf },
    /// The Lazarson matroid M_n or M_n^-.
    Lazarson {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "full")]
        variant: String,
    },
    /// Determinant of the y-columns of the Lazarson matrix and its divisibility by p.
    LazarsonCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
    },
}

/// Exit status classes.
pub enum Failure {
    /// Unreadable or malformed input: exit 2.
    Input(String),
    /// Valid input on which the operation is undefined: exit 1.
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Input(_) | Error::NotPrime(_) => Failure::Input(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

pub enum Output {
    Json(serde_json::Value),
    Svg(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = commands::dispatch(&cli.command).and_then(|out| {
        let text = match out {
            Output::Json(v) => {
                let mut s = serde_json::to_string_pretty(&v).expect("serializable");
                s.push('\n');
                s
            }
            Output::Svg(s) => s,
        };
        match &cli.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {}", msg.replace('\n', " "));
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {}", msg.replace('\n', " "));
            ExitCode::from(2)
        }
    }
}
