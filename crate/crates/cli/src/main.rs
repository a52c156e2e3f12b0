mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::{Format, Outcome};

#[derive(Parser, Debug)]
#[command(name = "ncalg", version, about = "Exact computations with finitely presented graded algebras")]
pub struct Cli {
    /// Output style: readable text or key=value lines.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BettiMethod {
    Resolution,
    Bar,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Complete the relations to a rewriting system up to a degree.
    Complete {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_deg: i64,
    },
    /// Hilbert series coefficients.
    Hilbert {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_deg: i64,
    },
    /// Normal form of an expression.
    Nf {
        file: PathBuf,
        #[arg(long)]
        expr: String,
    },
    /// Decide whether an element is normal, or search a bidegree for normal elements.
    Normal {
        file: PathBuf,
        #[arg(long, conflicts_with = "search_bidegree", required_unless_present = "search_bidegree")]
        element: Option<String>,
        /// Bidegree `a,b`.
        #[arg(long)]
        search_bidegree: Option<String>,
        #[arg(long, default_value_t = 10)]
        max_deg: i64,
    },
    /// Check that generator images respect the source relations.
    Hom {
        src: PathBuf,
        tgt: PathBuf,
        /// `z1=EXPR`, once per source generator.
        #[arg(long = "map", required = true)]
        maps: Vec<String>,
        #[arg(long, default_value_t = 10)]
        max_deg: i64,
    },
    /// Check that a sequence of free-module maps is a complex and report its homology.
    VerifyComplex {
        file: PathBuf,
        maps: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_deg: i64,
    },
    /// Anick chains and the resulting series.
    Anick {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Ext dimensions of the trivial module.
    Betti {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_s: usize,
        #[arg(long, default_value_t = 10)]
        max_adams: i64,
        /// Also test the symmetric shape of a resolution of length d.
        #[arg(long)]
        shape: Option<usize>,
        #[arg(long, value_enum, default_value_t = BettiMethod::Resolution)]
        method: BettiMethod,
    },
    /// Minimal A-infinity model on Ext, written to a tables file.
    Aext {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_s: usize,
        #[arg(long, default_value_t = 7)]
        max_adams: i64,
        #[arg(long, default_value = "structured")]
        policy: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the A-infinity identities of a tables file.
    Stasheff {
        tables: PathBuf,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Recover relations from the higher products and compare with the presentation.
    Keller {
        file: PathBuf,
        #[arg(long)]
        max_adams: Option<i64>,
        #[arg(long, default_value = "echelon")]
        policy: String,
    },
    /// Frobenius pairing data of a tables file.
    Frobenius { tables: PathBuf },
    /// Write a presentation from the built-in catalog.
    Catalog {
        name: String,
        /// `k=v`, repeatable.
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a solution family against the identity residuals.
    Solution {
        id: String,
        #[arg(long = "param")]
        params: Vec<String>,
    },
    /// Series, Ext and Frobenius screen for regularity of type 12221.
    Screen {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_deg: i64,
    },
    /// Which cases of the classification admit given Frobenius data.
    Case {
        #[arg(long, allow_hyphen_values = true)]
        g1: String,
        #[arg(long, allow_hyphen_values = true)]
        g2: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// Field, e.g. `Q` or `Q[u]/(u^2-u+1)`.
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(mut rep) => {
            print!("{}", rep.render());
            match rep.outcome {
                Outcome::Success => ExitCode::SUCCESS,
                Outcome::Fail => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
