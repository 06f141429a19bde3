use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mintough::ExactRational;

#[derive(Parser, Debug)]
#[command(name = "mintough", version, about = "Exact toughness, minimally tough graphs and reduction gadgets")]
pub struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, env = "MINTOUGH_JOBS")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the toughness of a graph and a tough set.
    Tau {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Decide a class; exit 0 if the graph is in it, 1 if not.
    Check {
        #[arg(value_enum)]
        class: Class,
        #[command(flatten)]
        input: Input,
        /// Toughness threshold, as "a/b" or an integer.
        #[arg(long)]
        t: Option<ExactRational>,
        /// Independence bound for alpha-critical.
        #[arg(long)]
        k: Option<usize>,
        /// Write the JSON certificate here.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Build a gadget and print it.
    Construct {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        vertex: Option<usize>,
        #[arg(long)]
        size: Option<usize>,
        /// Write the vertex-role sidecar JSON here.
        #[arg(long)]
        labels: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Run a verification sweep; exit 0 iff nothing failed.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct Input {
    /// Graph file, or "-" for standard input.
    pub path: Option<PathBuf>,
    /// Inline graph6 string.
    #[arg(long, conflicts_with = "path")]
    pub g6: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Graph6)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct Output {
    /// Output file (default: standard output).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub check: CheckName,
    #[arg(long, default_value_t = 1)]
    pub n_min: usize,
    #[arg(long)]
    pub n_max: Option<usize>,
    /// graph6 stream to sweep instead of enumerating.
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    pub input: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub alpha: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    #[arg(long, default_value_t = 1)]
    pub a: usize,
    #[arg(long, default_value_t = 2)]
    pub b: usize,
    #[arg(long, default_value_t = 1)]
    pub size_min: usize,
    #[arg(long, default_value_t = 3)]
    pub size_max: usize,
    #[arg(long, default_value_t = 24)]
    pub max_vertices: usize,
    /// Per-case time budget in seconds.
    #[arg(long)]
    pub time_budget: Option<f64>,
    /// Also write a CSV summary here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Class {
    TTough,
    MinTough,
    #[value(name = "almost-min-1")]
    AlmostMin1,
    AlphaCritical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    GAlpha,
    #[value(name = "g-t-alpha")]
    GTAlpha,
    Pendants,
    #[value(name = "H")]
    H,
    #[value(name = "H-prime")]
    HPrime,
    Glue,
    Blowup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    ReductionMin1tough,
    ReductionMinTTough,
    ReductionOneOverB,
    ReductionAOverB,
    LemmaGAlphaTough,
    BlowupAlphaCritical,
    Structural,
}
