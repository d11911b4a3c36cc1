use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::commands::{
    cmd_alpha, cmd_conjecture, cmd_janet, cmd_mki, cmd_quotient, cmd_remark17, cmd_sat, cmd_sdepth,
    cmd_verify, OutputFormat, Output, RunConfig,
};
use crate::error::LabError;

#[derive(Debug, Parser)]
#[command(name = "sdepth", version, about = "Exact Stanley depth of monomial ideals and quotients")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Ideal file (text or JSON).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Denominator ideal file for quotients.
    #[arg(long = "input-j", global = true)]
    pub input_j: Option<PathBuf>,

    /// Box corner `k1,...,kn`; defaults to the lcm of all generators.
    #[arg(long, global = true)]
    pub g: Option<Corner>,

    /// Seconds allowed per search call.
    #[arg(long, global = true, default_value_t = 60,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub timeout: u64,

    #[arg(long, global = true, default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,

    /// Directory for cached certificates.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,

    /// Where to write the output document.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stanley depth of an ideal, with a certificate.
    Sdepth {
        /// Only decide whether this value is attained.
        #[arg(long)]
        target: Option<usize>,
    },
    /// Stanley depth of I/J (S/J without --input).
    Quotient {
        #[arg(long)]
        target: Option<usize>,
    },
    /// Saturation test for Stanley depth zero.
    Sat,
    /// Janet decomposition of S/I.
    Janet,
    /// Level sizes of the poset of m^k.
    Alpha {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// sdepth(m^k) against ceil(n/(k+1)) over a grid.
    Conjecture {
        #[arg(long, default_value = "1-4")]
        n: Span,
        #[arg(long, default_value = "1-3")]
        k: Span,
    },
    /// sdepth(m^k I) and |G(m^k I)| over a range of k.
    Mki {
        #[arg(long, default_value = "0-4")]
        k: Span,
    },
    /// sdepth(I) against sdepth(S/I) + 1.
    Remark17,
    /// Re-check a certificate given by --input.
    Verify,
}

/// Inclusive range written `3` or `1-4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: u32,
    pub hi: u32,
}

impl Span {
    pub fn range(self) -> RangeInclusive<u32> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("`{t}` is not a non-negative integer"))
        };
        let (lo, hi) = match s.split_once('-') {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {lo}-{hi}"));
        }
        Ok(Span { lo, hi })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// Exponent vector written `k1,...,kn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corner(pub Vec<u32>);

impl FromStr for Corner {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| format!("`{t}` is not a non-negative integer"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Corner)
    }
}

impl Cli {
    pub fn run_config(&self) -> RunConfig {
        let c = &self.common;
        let target = match self.command {
            Command::Sdepth { target } | Command::Quotient { target } => target,
            _ => None,
        };
        RunConfig {
            input: c.input.clone(),
            input_j: c.input_j.clone(),
            g: c.g.as_ref().map(|g| g.0.clone()),
            target,
            timeout: Duration::from_secs(c.timeout),
            threads: c.threads as usize,
            cache: c.cache.clone(),
            format: c.format,
        }
    }

    pub fn run(&self) -> Result<Output, LabError> {
        let cfg = self.run_config();
        match &self.command {
            Command::Sdepth { .. } => cmd_sdepth(&cfg),
            Command::Quotient { .. } => cmd_quotient(&cfg),
            Command::Sat => cmd_sat(&cfg),
            Command::Janet => cmd_janet(&cfg),
            Command::Alpha { n, k } => cmd_alpha(*n, *k, cfg.format),
            Command::Conjecture { n, k } => cmd_conjecture(n.range(), k.range(), &cfg),
            Command::Mki { k } => cmd_mki(k.range(), &cfg),
            Command::Remark17 => cmd_remark17(&cfg),
            Command::Verify => match &cfg.input {
                Some(p) => cmd_verify(p),
                None => Err(LabError::Invalid("--input is required".into())),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn spans_and_corners() {
        assert_eq!("1-4".parse::<Span>().unwrap().range(), 1..=4);
        assert_eq!("3".parse::<Span>().unwrap().range(), 3..=3);
        assert!("4-1".parse::<Span>().is_err());
        assert!("a".parse::<Span>().is_err());
        assert_eq!("2,0,1".parse::<Corner>().unwrap(), Corner(vec![2, 0, 1]));
        assert!("2,,1".parse::<Corner>().is_err());
    }

    #[test]
    fn flags_after_subcommand() {
        let cli = Cli::try_parse_from([
            "sdepth", "sdepth", "--input", "i.txt", "--timeout", "5", "--threads", "2",
            "--target", "2",
        ])
        .unwrap();
        let cfg = cli.run_config();
        assert_eq!(cfg.timeout, Duration::from_secs(5));
        assert_eq!(cfg.threads, 2);
        assert_eq!(cfg.target, Some(2));
        assert!(Cli::try_parse_from(["sdepth", "sdepth", "--timeout", "0"]).is_err());
    }
}
