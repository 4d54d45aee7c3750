use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "imbalance", version, about = "Imbalance lattice of binary-tree path-length sequences")]
pub struct Cli {
    /// Largest n accepted by commands that enumerate a whole universe.
    #[arg(long, global = true, default_value_t = imbalance_lattice::DEFAULT_CEILING)]
    pub max_n: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a sequence and print it back in canonical syntax.
    Validate { seq: String },
    /// Number of equal trailing components.
    Suffix { seq: String },
    /// Partial sums of the leaf weights scaled by 2^scale.
    Sums {
        seq: String,
        #[arg(long)]
        scale: Option<u32>,
    },
    /// Sum of the components (external path length).
    Sum { seq: String },
    /// Imbalance-order verdict for two sequences.
    Compare { s: String, t: String },
    /// Split a leaf.
    Expand {
        seq: String,
        #[command(flatten)]
        at: ExpandAt,
    },
    /// Merge the first two leaves of the deepest run.
    Contract { seq: String },
    /// All sequences with n components.
    Enumerate {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Lines)]
        format: Format,
        /// Print only the number of sequences.
        #[arg(long)]
        count: bool,
        /// Use the independent depth-first partition search.
        #[arg(long)]
        oracle: bool,
    },
    /// Greatest lower bound.
    Meet {
        s: String,
        t: String,
        /// Compute by exhaustive search instead of recursion.
        #[arg(long)]
        oracle: bool,
    },
    /// Least upper bound.
    Join {
        s: String,
        t: String,
        /// Compute by exhaustive search instead of folding meets.
        #[arg(long)]
        oracle: bool,
    },
    /// Most balanced sequence with n components.
    Bottom { n: usize },
    /// Least balanced sequence with n components.
    Top { n: usize },
    /// Excess indices (1-based).
    Excess { seq: String },
    /// Balancing moves bal[l, j], for one excess index or all of them.
    Bal {
        seq: String,
        #[arg(long)]
        index: Option<usize>,
    },
    /// The minimal balancing relation on the length-n universe.
    Balancing {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Lines)]
        format: Format,
    },
    /// Covering pairs, lower element first.
    Covers { n: usize },
    /// Hasse diagram as JSON (stdout unless --json is given) and optional DOT.
    Hasse {
        n: usize,
        #[arg(long, value_name = "PATH")]
        dot: Option<std::path::PathBuf>,
        #[arg(long, value_name = "PATH")]
        json: Option<std::path::PathBuf>,
    },
    /// Join-irreducible elements of the length-n universe.
    Irreducibles {
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Greedy u·v·w decomposition and its condition verdicts.
    Decompose { seq: String },
    /// Near-constancy of an arbitrary comma-separated segment (may be empty).
    NearConstant {
        #[arg(default_value = "")]
        segment: String,
    },
    /// Canonical code tree.
    Tree {
        seq: String,
        #[arg(long, value_enum, default_value_t = TreeStyle::Ascii)]
        style: TreeStyle,
        /// Write the rendering here instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<std::path::PathBuf>,
    },
    /// Canonical prefix code, one codeword per line.
    Code { seq: String },
    /// Read codewords (comma-separated) as a tree and print its sequence.
    FromCode { codewords: String },
    /// Number of tree nodes at depth at most d.
    Nodes { seq: String, depth: u32 },
    /// Reflexive-transitive closure of the balancing relation against the order.
    Closure { n: usize },
    /// Run the exhaustive property suite for every size up to n.
    Verify {
        n: usize,
        /// Property names; defaults to all.
        #[arg(long = "property", value_name = "NAME")]
        properties: Vec<String>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// List property names and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct ExpandAt {
    /// 1-based position.
    #[arg(long)]
    pub position: Option<usize>,
    #[arg(long)]
    pub upper: bool,
    #[arg(long)]
    pub lower: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Lines,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Bruteforce,
    Prop2,
    Prop3,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeStyle {
    Ascii,
    Dot,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
