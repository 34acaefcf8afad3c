//! The `orbidim` command line tool as a library: argument parsing, the
//! bundled corpus, text and JSON reports, and diagram rendering.
//!
//! [`run_command`] never panics on bad input and never exits the process;
//! the binary forwards its exit code.

pub mod commands;
pub mod corpus;
pub mod render;
pub mod suite;

use clap::{Parser, Subcommand, ValueEnum};
pub use commands::Report;
pub use corpus::Corpus;

/// Exit code for a successful run or a verified property.
pub const EXIT_OK: i32 = 0;
/// Exit code when the input fails a validation or a check does not hold.
pub const EXIT_INVALID: i32 = 1;
/// Exit code for malformed command lines and unreadable inputs.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "orbidim", version, about = "Orbifold diagrams, their quivers with potential and boundary algebra modules")]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LabelMethod {
    Cover,
    Direct,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RenderFormat {
    Svg,
    Tikz,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the diagram axioms (and the orbifold winding bound).
    Validate { file: String },
    /// Loop and pair windings around the cone point.
    Winding {
        /// Test the winding bound against this order instead of the file's.
        #[arg(long)]
        order: Option<usize>,
        file: String,
    },
    /// The d-fold symmetric cover of an orbifold diagram, as .osd text.
    Cover {
        #[arg(long)]
        d: usize,
        file: String,
    },
    /// The quotient of a rotation-symmetric diagram, as .osd text.
    Quotient {
        #[arg(long)]
        order: usize,
        file: String,
    },
    /// Face labels, computed on the cover, directly, or both and compared.
    Labels {
        #[arg(long, value_enum, default_value = "both")]
        method: LabelMethod,
        file: String,
    },
    /// Quiver with potential and its grading.
    Qp {
        /// Exponent of the root of unity in the fixed-point potential.
        #[arg(long, default_value_t = 1)]
        zeta: i64,
        file: String,
    },
    /// Filtered dimensions of the frozen Jacobian algebra.
    Jacobian {
        #[arg(long, default_value_t = 6)]
        maxdeg: usize,
        file: String,
    },
    /// Radical filtration of the boundary algebra against B(k, n) or B_G.
    Boundary {
        #[arg(long, default_value_t = 8)]
        jmax: usize,
        file: String,
    },
    /// Filtered dimensions of A(O) against the basic skew group algebra of the cover.
    Skew {
        /// Rotation order, for a symmetric Postnikov diagram.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = 6)]
        maxdeg: usize,
        file: String,
    },
    /// Rank-one and class modules, their endomorphisms and the skew-end bridge.
    Modules {
        #[arg(long = "N", default_value_t = 12)]
        truncation: usize,
        file: String,
    },
    /// Certificate that End_{B_G}(T) realizes the frozen Jacobian algebra.
    VerifyMain {
        #[arg(long, default_value_t = 6)]
        m: usize,
        #[arg(long = "N", default_value_t = 12)]
        truncation: usize,
        /// Flip the sign of one relation (a negative control).
        #[arg(long)]
        flip: Option<usize>,
        file: String,
    },
    /// Draw the diagram.
    Render {
        #[arg(long, value_enum, default_value = "svg")]
        format: RenderFormat,
        /// Overlay the quiver.
        #[arg(long)]
        quiver: bool,
        file: String,
    },
    /// The bundled corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CorpusAction {
    /// List corpus files.
    List,
    /// Run the acceptance suite over the corpus.
    Run {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
    },
}

/// Exit code and the text destined for standard output and standard error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and runs the command against the
/// corpus named by the environment.
pub fn run_command<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_corpus(argv, &Corpus::from_env())
}

pub fn run_with_corpus<I, T>(argv: I, corpus: &Corpus) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Output { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Output { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    match commands::execute(&cli.command, corpus) {
        Ok(report) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&report.json).expect("reports serialize");
                s.push('\n');
                s
            } else {
                report.text
            };
            Output { code: report.code, stdout, stderr: String::new() }
        }
        Err(e) => Output { code: e.code(), stdout: String::new(), stderr: format!("orbidim: {e}\n") },
    }
}

#[cfg(feature = "parallel")]
pub(crate) fn map_par<T: Send, F: Fn(usize) -> T + Sync + Send>(n: usize, f: F) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_par<T: Send, F: Fn(usize) -> T + Sync + Send>(n: usize, f: F) -> Vec<T> {
    (0..n).map(f).collect()
}
