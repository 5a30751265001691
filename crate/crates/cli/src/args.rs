use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use rookdecomp::decomposition::DEFAULT_MAX_TABLE_N;
use rookdecomp::oeis::FIXTURE_DIR_ENV;
use rookdecomp::rook::DEFAULT_MAX_BOARD_CELLS;

#[derive(Debug, Parser)]
#[command(name = "rookdecomp", version, about = "Rook decomposition of the partition function")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Directory holding the OEIS b-file fixtures.
    #[arg(long, env = FIXTURE_DIR_ENV, global = true)]
    pub fixture_dir: Option<PathBuf>,

    /// Largest n the partition enumerator may be asked for.
    #[arg(long, default_value_t = DEFAULT_MAX_TABLE_N, global = true)]
    pub max_table_n: u32,

    /// Largest board the exhaustive rook recursion accepts.
    #[arg(long, default_value_t = DEFAULT_MAX_BOARD_CELLS, global = true)]
    pub max_board_cells: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// R_k(n) and P(n) for 1 <= n <= N by enumeration.
    Table(NOnly),
    /// Decomposition, generating-function and oracle suites up to N.
    Verify(NOnly),
    /// Coefficients of the generating function up to q^N.
    Gf(GfArgs),
    /// Closed-form values of R_k(n) for n or a range A..B.
    Formula(KRange),
    /// Parity classification of R_k(n) up to N.
    Parity(KRange),
    /// Residue periodicity of R_k modulo p up to N.
    Period(PeriodArgs),
    /// Growth ratio R_k(n) / (c_k n^(k-1)) and the finite-difference estimate of c_k.
    Asym(KRange),
    /// Cross-check the OEIS sequences against local computation.
    OeisCheck(OeisArgs),
}

#[derive(Debug, Args)]
pub struct NOnly {
    #[arg(long)]
    pub n: NRange,
}

#[derive(Debug, Args)]
pub struct KRange {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub n: NRange,
}

#[derive(Debug, Args)]
pub struct GfArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub n: NRange,
    /// Count by Durfee square size instead of Durfee triangle size.
    #[arg(long)]
    pub square: bool,
}

#[derive(Debug, Args)]
pub struct PeriodArgs {
    #[arg(long)]
    pub k: u32,
    /// Modulus; all of 2, 3, 5, 7 when omitted.
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub n: NRange,
}

#[derive(Debug, Args)]
pub struct OeisArgs {
    /// Download from oeis.org instead of reading fixtures.
    #[arg(long)]
    pub network: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// `N` or the inclusive range `A..B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: Option<u64>,
    pub end: u64,
}

impl NRange {
    pub fn first(&self) -> u64 {
        self.start.unwrap_or(self.end)
    }

    pub fn is_range(&self) -> bool {
        self.start.is_some()
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("expected N or A..B, got `{s}`"))
        };
        match s.split_once("..") {
            None => Ok(Self { start: None, end: num(s)? }),
            Some((a, b)) => {
                let (start, end) = (num(a)?, num(b.trim_start_matches('='))?);
                if start > end {
                    return Err(format!("empty range {start}..{end}"));
                }
                Ok(Self { start: Some(start), end })
            }
        }
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.start {
            Some(a) => write!(f, "{a}..{}", self.end),
            None => write!(f, "{}", self.end),
        }
    }
}

impl Cli {
    /// Rejects flag combinations clap cannot express, before any computation.
    pub fn validate(&self) -> Result<(), clap::Error> {
        let usage = |msg: String| Err(Cli::command().error(ErrorKind::ArgumentConflict, msg));
        let (name, n, csv_ok) = match &self.command {
            Command::Table(a) => ("table", Some(a.n), true),
            Command::Verify(a) => ("verify", Some(a.n), false),
            Command::Gf(a) => ("gf", Some(a.n), true),
            Command::Formula(_) => ("formula", None, true),
            Command::Parity(a) => ("parity", Some(a.n), false),
            Command::Period(a) => ("period", Some(a.n), false),
            Command::Asym(_) => ("asym", None, true),
            Command::OeisCheck(_) => ("oeis-check", None, false),
        };
        if let Some(n) = n {
            if n.is_range() {
                return usage(format!("`{name}` takes a single --n, not the range {n}"));
            }
        }
        if self.format == Format::Csv && !csv_ok {
            return usage(format!("`{name}` produces a report; use --format text or json"));
        }
        if let Command::Period(PeriodArgs { p: Some(p), .. }) = &self.command {
            if *p < 2 {
                return usage(format!("--p must be at least 2, got {p}"));
            }
        }
        Ok(())
    }
}
