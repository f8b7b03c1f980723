use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand};
use mock_theta::partitions::rank_counts;
use mock_theta::verify::{run_checks, select, CheckReport, Suite};

use crate::config::{check_order, parse_samples, Config, Format, Jobs};
use crate::expr::{eval, parse};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNEXPECTED: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

const EXPAND_ORDER: i64 = 20;

#[derive(Debug, Parser)]
#[command(name = "mock-theta", version, about = "Exact q-series and mock theta identity checks")]
pub struct Cli {
    /// Flat TOML settings file; defaults to $MOCK_THETA_CONFIG.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand an expression such as "j(-q, q^2)/J(1)".
    Expand {
        expr: String,
        #[arg(long)]
        order: Option<i64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Run identity checks.
    Verify {
        /// all, prelim, props, entries, entry1..entry4
        #[arg(long, default_value = "all")]
        suite: String,
        /// Order for every check, replacing its default.
        #[arg(long)]
        order: Option<i64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Entry parameter(s), replacing the configured samples; each must pass.
        #[arg(long = "t", value_name = "EXPR")]
        t: Vec<String>,
        /// Worker count or "auto".
        #[arg(long)]
        jobs: Option<Jobs>,
    },
    /// Print N(m, n) for n up to N as tab-separated rows.
    RankTable { n_max: i64 },
}

/// Runs one command, writing to stdout, and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let mut out = std::io::stdout().lock();
    match dispatch(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_INTERNAL
        }
    }
}

pub fn dispatch(cli: Cli, out: &mut impl Write) -> anyhow::Result<i32> {
    let cfg = Config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Expand { expr, order, format } => {
            let n = order.or(cfg.default_order).unwrap_or(EXPAND_ORDER);
            let e = parse(&expr)?;
            let s = eval(&e, n)?;
            match format.unwrap_or(cfg.format) {
                Format::Text => writeln!(out, "{s}")?,
                Format::Json => writeln!(out, "{}", serde_json::to_string(&s)?)?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify { suite, order, format, t, jobs } => {
            let suite: Suite = suite.parse().map_err(anyhow::Error::msg)?;
            let order = match order {
                Some(n) => Some(check_order(n)?),
                None => cfg.default_order,
            };
            let mut samples = cfg.samples.clone();
            if !t.is_empty() {
                let pts = parse_samples(&t).context("--t")?;
                samples.entry1 = pts.clone();
                samples.entry2 = pts;
            }
            let checks = select(suite, &samples);
            let reports = match jobs.unwrap_or(cfg.jobs) {
                Jobs::Auto => run_checks(&checks, order),
                Jobs::Count(k) => rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build()?
                    .install(|| run_checks(&checks, order)),
            };
            write_reports(&reports, format.unwrap_or(cfg.format), out)?;
            Ok(exit_code(&reports))
        }
        Command::RankTable { n_max } => {
            let table = rank_table(n_max)?;
            write!(out, "{table}")?;
            Ok(EXIT_OK)
        }
    }
}

pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().all(CheckReport::as_expected) {
        EXIT_OK
    } else {
        EXIT_UNEXPECTED
    }
}

pub fn write_reports(reports: &[CheckReport], format: Format, out: &mut impl Write) -> anyhow::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(reports)?)?,
        Format::Text => {
            for r in reports {
                writeln!(out, "{r}")?;
            }
            let bad = reports.iter().filter(|r| !r.as_expected()).count();
            writeln!(out, "{} checks, {} as expected, {} unexpected", reports.len(), reports.len() - bad, bad)?;
        }
    }
    Ok(())
}

/// Header `n\tm\tcount`, then one row per nonzero N(m, n).
pub fn rank_table(n_max: i64) -> anyhow::Result<String> {
    if n_max < 0 {
        // rank_counts reports the range
        rank_counts(n_max)?;
    }
    let mut s = String::from("n\tm\tcount\n");
    for n in 0..=n_max {
        for (m, c) in rank_counts(n)? {
            s.push_str(&format!("{n}\t{m}\t{c}\n"));
        }
    }
    Ok(s)
}
