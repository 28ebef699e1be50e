//! Command-line front end.

pub mod format;
pub mod report;
pub mod sweep;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::equivalence_report;
use crate::code::RankCode;
use crate::error::{Error, Result};
use crate::weights::{enumerator, grw, Definition, WeightConfig};

use self::sweep::{run_sweep, SweepOptions};

#[derive(Debug, Parser)]
#[command(
    name = "rank-weights",
    version,
    about = "Generalized rank weights of rank-metric codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Codewords a max-scan may visit per subcode before giving up.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    pub cutoff: u64,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generalized rank weights under the selected definitions.
    Weights {
        file: PathBuf,
        /// Comma-separated subset of jp, kmu, os, ducoat, closure.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "jp,kmu,os,ducoat,closure"
        )]
        defs: Vec<Definition>,
        /// `all` or a single dimension.
        #[arg(long, default_value = "all")]
        r: RankArg,
    },
    /// Generalized rank weight enumerator coefficients `A_0..A_n`.
    Enumerator {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        r: RankArg,
    },
    /// Degeneracy, duality and definition-equivalence report.
    Analyze { file: PathBuf },
    /// Check every property on exhaustive and random small codes.
    Sweep(SweepArgs),
    /// Print the built-in example code file.
    Example,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Base field size (a prime power).
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Largest extension degree.
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    /// Largest code length.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Largest code dimension.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of random codes.
    #[arg(long, default_value_t = 50)]
    pub count: usize,
    /// Also run every code within the bounds.
    #[arg(long)]
    pub exhaustive: bool,
    /// Random isometries per code.
    #[arg(long, default_value_t = 5)]
    pub isometries: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankArg {
    All,
    One(usize),
}

impl std::str::FromStr for RankArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(RankArg::All);
        }
        s.parse()
            .map(RankArg::One)
            .map_err(|_| format!("expected `all` or a nonnegative integer, found `{s}`"))
    }
}

impl RankArg {
    fn ranks(self, k: usize) -> Result<Vec<usize>> {
        match self {
            RankArg::All => Ok((0..=k).collect()),
            RankArg::One(r) if r > k => Err(Error::RankOutOfRange { r, k }),
            RankArg::One(r) => Ok(vec![r]),
        }
    }
}

/// What a command produced: text for stdout and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

/// Exit code for an error: 2 when an enumeration hit the cutoff, else 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Infeasible { .. } => 2,
        _ => 1,
    }
}

pub fn load(path: &Path) -> Result<RankCode> {
    let src =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    format::parse_code(&src)
}

pub fn run(cli: &Cli) -> Result<Output> {
    let cfg = WeightConfig { cutoff: cli.cutoff };
    let ok = |stdout: String| Ok(Output { stdout, code: 0 });
    match &cli.command {
        Command::Example => ok(if cli.json {
            format::to_json(&format::parse_code(format::example_text())?) + "\n"
        } else {
            format::example_text().to_string()
        }),
        Command::Weights { file, defs, r } => {
            let c = load(file)?;
            let ranks = r.ranks(c.k())?;
            if cli.json {
                return ok(report::document(&c, &cfg)?);
            }
            let mut out = String::new();
            for r in ranks {
                let mut line = format!("r={r}");
                for &def in defs {
                    write!(line, " {def}:{}", grw(def, &c, r, &cfg)?).unwrap();
                }
                out += &line;
                out.push('\n');
            }
            ok(out)
        }
        Command::Enumerator { file, r } => {
            let c = load(file)?;
            let ranks = r.ranks(c.k())?;
            if cli.json {
                return ok(report::document(&c, &cfg)?);
            }
            let mut out = String::new();
            for &rank in &ranks {
                let coeffs = serde_json::to_string(&enumerator(&c, rank)?).unwrap();
                if ranks.len() == 1 {
                    out += &coeffs;
                } else {
                    write!(out, "r={rank} {coeffs}").unwrap();
                }
                out.push('\n');
            }
            ok(out)
        }
        Command::Analyze { file } => {
            let c = load(file)?;
            if cli.json {
                return ok(report::document(&c, &cfg)?);
            }
            let rep = equivalence_report(&c, &cfg)?;
            ok(report::analysis_text(&c, &rep))
        }
        Command::Sweep(args) => {
            let opts = SweepOptions {
                q: args.q,
                m_max: args.m,
                n_max: args.n,
                k_max: args.k,
                seed: args.seed,
                count: args.count,
                exhaustive: args.exhaustive,
                isometries: args.isometries,
                cfg,
            };
            let summary = run_sweep(&opts)?;
            let stdout = if cli.json {
                report::sweep_json(&summary)
            } else {
                report::sweep_text(&summary)
            };
            Ok(Output {
                stdout,
                code: if summary.passed() { 0 } else { 1 },
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let infeasible = Error::Infeasible {
            definition: Definition::Os,
            r: 2,
            cutoff: 10,
        };
        assert_eq!(exit_code(&infeasible), 2);
        assert_eq!(exit_code(&Error::RankOutOfRange { r: 3, k: 2 }), 1);
        assert_eq!(
            exit_code(&Error::Parse {
                line: 1,
                col: 1,
                msg: "x".into()
            }),
            1
        );
    }

    #[test]
    fn rank_argument() {
        assert_eq!("all".parse::<RankArg>().unwrap(), RankArg::All);
        assert_eq!("2".parse::<RankArg>().unwrap(), RankArg::One(2));
        assert!("-1".parse::<RankArg>().is_err());
        assert_eq!(RankArg::All.ranks(2).unwrap(), vec![0, 1, 2]);
        assert!(RankArg::One(3).ranks(2).is_err());
    }
}
