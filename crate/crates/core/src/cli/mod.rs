//! Command-line front end: each subcommand runs a suite of checks and
//! returns a [`RunReport`], printed as a table or as JSON.

mod commands;
mod report;

use std::time::Instant;

use clap::{Parser, Subcommand};

pub use commands::{
    cmd_classgroup, cmd_cosets, cmd_hecke, cmd_hsub, cmd_kernel, cmd_kernel_test, cmd_level_change,
    cmd_level_change_search, cmd_oracle, cmd_theta, cmd_verify,
};
pub use report::{RunReport, Status, Verdict};

use crate::modgroup::{group_bound, GROUP_BOUND_ENV};

pub const DEFAULT_PRECISION: u64 = 60;

#[derive(Debug, Parser)]
#[command(name = "isoforms", version, about = "Exact checks for modular forms on Hecke-isomorphism surfaces")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// q-expansion precision M.
    #[arg(long, global = true)]
    pub prec: Option<u64>,
    /// Largest N for which SL2(Z/N) is enumerated.
    #[arg(long = "max-N", global = true, env = GROUP_BOUND_ENV)]
    pub max_n: Option<u64>,
    /// Include wall-clock timing in the report; JSON is then no longer reproducible.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced forms and ideal classes of Q(sqrt(-p)).
    Classgroup {
        #[arg(long)]
        p: u64,
    },
    /// Rationality and CM support of the class theta series.
    Theta {
        #[arg(long)]
        p: u64,
    },
    /// Rank, distinctness and vanishing of the Hecke kernel basis.
    Kernel {
        #[arg(long)]
        p: u64,
    },
    /// Every suite for one prime.
    Verify {
        #[arg(long)]
        p: u64,
    },
    /// T(n1, n2) on the lift of g(7).
    Hecke {
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        n2: u64,
    },
    /// Finite kernel-membership scans.
    KernelTest {
        #[arg(long)]
        p: u64,
        /// Component to test; defaults to every eps with -eps a non-residue.
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<i64>,
    },
    /// The subgroup H of eigenform lifts.
    Hsub {
        #[arg(long)]
        p: u64,
    },
    /// Normal closure of tau_{N/d} against the reduction kernel.
    LevelChange {
        #[arg(long = "N", required_unless_present = "search")]
        n: Option<u64>,
        #[arg(long, required_unless_present = "search")]
        d: Option<u64>,
        /// Scan every (N, d) up to the group bound.
        #[arg(long)]
        search: bool,
    },
    /// Hecke coset decomposition and random reductions.
    Cosets {
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        n2: u64,
        #[arg(long = "N", default_value_t = 7)]
        n: u64,
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        eps: i64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Newform coefficients of the conductor-49 curve from point counts.
    Oracle,
}

/// Runs the parsed command and returns its report.
pub fn run(cli: &Cli) -> RunReport {
    let start = Instant::now();
    let prec = cli.prec.unwrap_or(DEFAULT_PRECISION);
    let bound = cli.max_n.unwrap_or_else(group_bound);
    let mut report = match &cli.command {
        Command::Classgroup { p } => cmd_classgroup(*p),
        Command::Theta { p } => cmd_theta(*p, prec),
        Command::Kernel { p } => cmd_kernel(*p, prec),
        Command::Verify { p } => cmd_verify(*p, prec),
        Command::Hecke { n1, n2 } => cmd_hecke(*n1, *n2, cli.prec.unwrap_or(100)),
        Command::KernelTest { p, eps } => cmd_kernel_test(*p, *eps, prec),
        Command::Hsub { p } => cmd_hsub(*p, prec),
        Command::LevelChange { search: true, .. } => cmd_level_change_search(bound),
        Command::LevelChange { n, d, .. } => {
            cmd_level_change(n.expect("required by clap"), d.expect("required by clap"), bound)
        }
        Command::Cosets { n1, n2, n, eps, samples } => cmd_cosets(*n1, *n2, *n, *eps, *samples, cli.seed),
        Command::Oracle => cmd_oracle(cli.prec.unwrap_or(500)),
    };
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_global_flags_after_subcommand() {
        let cli = Cli::try_parse_from(["isoforms", "verify", "--p", "7", "--prec", "40", "--json"]).unwrap();
        assert!(cli.json);
        assert_eq!(cli.prec, Some(40));
        assert!(matches!(cli.command, Command::Verify { p: 7 }));
        let cli = Cli::try_parse_from(["isoforms", "kernel-test", "--p", "7", "--eps", "-1"]).unwrap();
        assert!(matches!(cli.command, Command::KernelTest { p: 7, eps: Some(-1) }));
        let cli = Cli::try_parse_from(["isoforms", "level-change", "--N", "9", "--d", "3", "--max-N", "16"]).unwrap();
        assert_eq!(cli.max_n, Some(16));
        assert!(Cli::try_parse_from(["isoforms", "level-change"]).is_err());
        assert!(Cli::try_parse_from(["isoforms", "level-change", "--search"]).is_ok());
    }

    #[test]
    fn run_is_reproducible() {
        let cli = Cli::try_parse_from(["isoforms", "cosets", "--n1", "2", "--n2", "2", "--samples", "30", "--seed", "5"]).unwrap();
        let a = run(&cli).to_json();
        assert_eq!(a, run(&cli).to_json());
        assert!(a.contains("\"seed\": 5"));
    }
}
