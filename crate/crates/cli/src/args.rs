use clap::{Args, Parser, Subcommand, ValueEnum};

use hlskit::{Limits, PosetSpec};

#[derive(Debug, Parser)]
#[command(name = "hlskit", version, about = "Exact skew Hall-Littlewood-Schubert series and their identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Comma-separated `n_1,...,n_g`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub n: Option<Vec<u32>>,

    /// Comma-separated `r_1,...,r_g`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub r: Option<Vec<u32>>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[arg(long, global = true, default_value_t = Limits::default().max_elements, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_elements: u64,

    #[arg(long, global = true, default_value_t = Limits::default().max_chains, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_chains: u64,

    #[arg(long, global = true, default_value_t = Limits::default().max_subsets, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_subsets: u64,

    /// Leave elapsed times out of JSON output.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Numerator and denominator of HLS (or HLS' with --modified).
    Compute {
        #[arg(long)]
        modified: bool,
        #[arg(long)]
        stats_only: bool,
    },
    /// Truncated power series coefficients up to a total X-degree.
    Expand {
        #[arg(long)]
        max_degree: u32,
        #[arg(long)]
        modified: bool,
        #[arg(long, value_enum, default_value_t = Via::Multichain)]
        via: Via,
    },
    /// Projected tableaux and weights of a chain literal.
    Project {
        /// e.g. "2 < 25 < 03" or "4|- < 24|2"; "-" is the empty multiset.
        chain: String,
        #[arg(long)]
        modified: bool,
    },
    /// Hasse diagram of the poset.
    Hasse,
    /// A classical function built from its own definition.
    Specialize {
        #[arg(value_enum)]
        kind: Special,
        /// Size of the ground set for weak-order.
        #[arg(long)]
        g: Option<u32>,
    },
    /// Checks an identity exactly; exits 3 when it fails.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[arg(long)]
        modified: bool,
        /// Truncation degree for dual-expansion.
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Via {
    Multichain,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Special {
    /// Generalized Igusa function of `--r` (classical for a single entry).
    Igusa,
    /// Weak order Igusa function of `--g`.
    WeakOrder,
    /// Univariate series of `--n` (one entry).
    MvHls,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Reciprocity,
    Relation,
    ZetaMobius,
    MobiusChains,
    OrderComplex,
    Igusa,
    DualExpansion,
}

impl Common {
    pub fn limits(&self) -> Limits {
        Limits { max_elements: self.max_elements, max_chains: self.max_chains, max_subsets: self.max_subsets }
    }

    pub fn spec(&self) -> Result<PosetSpec, String> {
        match (&self.n, &self.r) {
            (Some(n), Some(r)) => PosetSpec::new(n.clone(), r.clone()).map_err(|e| e.to_string()),
            (None, Some(r)) => Err(format!("--n is required (e.g. --n {})", vec!["0"; r.len()].join(","))),
            (Some(_), None) => Err("--r is required".into()),
            (None, None) => Err("--n and --r are required".into()),
        }
    }

    /// `--r` with `--n` defaulting to zeros.
    pub fn r_only(&self) -> Result<Vec<u32>, String> {
        let r = self.r.clone().ok_or("--r is required")?;
        match &self.n {
            Some(n) if n.len() != r.len() || n.iter().any(|&x| x != 0) => {
                Err("this command needs --n to be all zeros or omitted".into())
            }
            _ => Ok(r),
        }
    }
}
