mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Config, OutputFormat};

#[derive(Parser, Debug)]
#[command(name = "permstat", version, about = "Restricted permutation statistics and their distributions")]
struct Cli {
    /// Configuration file (defaults to ./permstat.toml when present).
    #[arg(long, global = true, env = "PERMSTAT_CONFIG")]
    config: Option<PathBuf>,
    /// Output format, overriding the configuration.
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
    /// Enumeration cap, overriding the configuration.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a statistic on one permutation.
    Stat {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        stat: String,
    },
    /// Print a distribution row by one or every method.
    Dist {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        n: usize,
        /// brute, rec, formula, formula2 or all.
        #[arg(long, default_value = "all")]
        method: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Apply the first fundamental transformation or its inverse.
    Foata {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        invert: bool,
        /// Also print the cycle form and the blocks.
        #[arg(long)]
        trace: bool,
    },
    /// Dump the adjacency-to-value bijection table.
    Theta {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// List insertions that raise gamma by two.
    GammaDemo {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value = "odd|res:4,4")]
        x: String,
        #[arg(long, default_value = "even")]
        y: String,
    },
    /// Test the two symmetry conjectures exhaustively.
    Conjectures {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// 1, 2 or both.
        #[arg(long, default_value = "both")]
        which: String,
    },
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let mut cfg = Config::load(cli.config.as_deref())?;
    if let Some(f) = cli.format {
        cfg.output_format = f;
    }
    if let Some(c) = cli.cap {
        cfg.enumeration_cap = c;
    }
    cfg.init_thread_pool()?;
    let out = &mut std::io::stdout().lock();
    let code = match cli.command {
        Command::Stat { perm, stat } => commands::stat(out, &perm, &stat)?,
        Command::Dist { poly, x, y, n, method } => commands::dist(out, &cfg, &poly, &x, &y, n, &method)?,
        Command::Verify { suite, max_n } => commands::verify(out, &cfg, &suite, max_n)?,
        Command::Foata { perm, invert, trace } => commands::foata(out, &cfg, &perm, invert, trace)?,
        Command::Theta { n, x, y } => commands::theta(out, &cfg, n, &x, &y)?,
        Command::GammaDemo { n, x, y } => commands::gamma_demo(out, &cfg, n, &x, &y)?,
        Command::Conjectures { max_n, which } => commands::conjectures(out, &cfg, max_n, &which)?,
    };
    Ok(ExitCode::from(code))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
