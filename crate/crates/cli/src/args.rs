use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(name = "anqie", version, about = "Block-counting entropy experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Parameters shared by every experiment. Unset flags fall back to the config file, then
/// to the experiment's default.
#[derive(Args, Debug, Serialize)]
pub struct Common {
    #[arg(long)]
    pub seed: Option<u64>,
    /// Sequence length (or indicator length for `bounds`).
    #[arg(long)]
    pub length: Option<usize>,
    #[arg(long)]
    pub jmax: Option<usize>,
    /// Quantization grid size N.
    #[arg(long)]
    pub grid: Option<u64>,
    /// Fixed-point precision P in bits.
    #[arg(long)]
    pub precision: Option<u32>,
    /// Sieve limit.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Occurrence threshold for effective blocks.
    #[arg(long)]
    pub tau: Option<u32>,
}

/// Output controls; never echoed into results.
#[derive(Args, Debug)]
pub struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Emit JSON instead of CSV.
    #[arg(long)]
    pub json: bool,
    /// `key = value` file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Omit the timestamp so re-runs are byte-identical.
    #[arg(long)]
    pub no_timestamp: bool,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

macro_rules! experiment_args {
    ($(#[$m:meta])* $name:ident { $($(#[$fm:meta])* $field:ident: $ty:ty),* $(,)? }) => {
        $(#[$m])*
        #[derive(Args, Debug, Serialize)]
        pub struct $name {
            #[command(flatten)]
            #[serde(flatten)]
            pub common: Common,
            #[command(flatten)]
            #[serde(skip)]
            pub output: Output,
            $($(#[$fm])* #[arg(long)] pub $field: $ty,)*
        }
    };
}

experiment_args!(EntropyArgs {
    /// Digit stream spec (`prng:SEED[:BASE]`, `fib`, `sqrt:M`, `rational:P/Q[:BASE]`,
    /// `const:D[:BASE]`, `file:PATH[:BASE]`) or `lines:PATH` with one symbol per line.
    source: Option<String>,
});

experiment_args!(VdcArgs {
    /// Increments are uniform on [-bound, bound].
    bound: Option<u32>,
    /// Digit stream for x.
    x: Option<String>,
});

experiment_args!(SqfreeArgs {
    /// Largest block length for the gap census of the square-free numbers.
    gap_jmax: Option<usize>,
});

experiment_args!(PlainArgs {});

experiment_args!(DualArgs {
    /// `bounded-diff`, `geometric` or `exm1`.
    family: Option<String>,
    samples: Option<usize>,
    /// Comma-separated digit streams for x, overriding the seeded defaults.
    x: Option<String>,
    p: Option<u64>,
    pprime: Option<u32>,
    bound: Option<u32>,
    /// Truncation depth L for the digit identity.
    depth: Option<u32>,
});

experiment_args!(ReconstructArgs {
    /// `rotation`, `quadratic`, `random` or `constant`.
    family: Option<String>,
    d: Option<usize>,
    x: Option<String>,
});

experiment_args!(BoundsArgs {
    /// `fibonacci-zeros`, `fibonacci-ones`, `periodic:K` or `prng:SEED:L`.
    support: Option<String>,
    x: Option<String>,
});

experiment_args!(FurstenbergArgs {
    p: Option<u64>,
    pprime: Option<u32>,
    q: Option<u64>,
    qprime: Option<u32>,
    seed2: Option<u64>,
    x: Option<String>,
});

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Block census and finite-J entropy curve of one sequence.
    Entropy(EntropyArgs),
    /// Block counts of a bounded-difference sequence against its scaled differences.
    Vdc(VdcArgs),
    /// Square-free indicator against exhaustive admissible-block counts.
    Sqfree(SqfreeArgs),
    /// Partial sums of the Möbius-correlated pair.
    Sarnak(PlainArgs),
    /// Entropy of a(n)·x mod 1 across sampled x.
    Dual(DualArgs),
    /// Rebuild a torus sequence from quantized differences.
    Reconstruct(ReconstructArgs),
    /// Gap-sequence versus indicator block counts for bounded-gap sets.
    Bounds(BoundsArgs),
    /// Ratio-sum bound for two perturbed geometric sequences.
    Furstenberg(FurstenbergArgs),
    /// Exhaustive count of admissible 0/1 blocks.
    AdmissibleCount(PlainArgs),
}

fn entries<T: Serialize>(args: &T) -> Vec<(String, String)> {
    let Value::Object(map) = serde_json::to_value(args).expect("arguments serialize") else {
        unreachable!("argument structs serialize to objects")
    };
    map.into_iter()
        .filter_map(|(k, v)| match v {
            Value::Null => None,
            Value::String(s) => Some((k, s)),
            other => Some((k, other.to_string())),
        })
        .collect()
}

impl Command {
    /// Experiment name, output controls and the flags that were set.
    pub fn split(&self) -> (&'static str, &Output, Vec<(String, String)>) {
        match self {
            Command::Entropy(a) => ("entropy", &a.output, entries(a)),
            Command::Vdc(a) => ("vdc", &a.output, entries(a)),
            Command::Sqfree(a) => ("sqfree", &a.output, entries(a)),
            Command::Sarnak(a) => ("sarnak", &a.output, entries(a)),
            Command::Dual(a) => ("dual", &a.output, entries(a)),
            Command::Reconstruct(a) => ("reconstruct", &a.output, entries(a)),
            Command::Bounds(a) => ("bounds", &a.output, entries(a)),
            Command::Furstenberg(a) => ("furstenberg", &a.output, entries(a)),
            Command::AdmissibleCount(a) => ("admissible-count", &a.output, entries(a)),
        }
    }
}
