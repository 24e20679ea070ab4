use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twinspace::commands::{self, Command, Method, RunConfig};
use twinspace::format::Format;
use twinspace_core::PairKind;

/// Generative sieves for twin and cousin prime pairs.
#[derive(Parser)]
#[command(name = "twinspace", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Write records here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Twin,
    Cousin,
}

impl From<KindArg> for PairKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Twin => PairKind::Twin,
            KindArg::Cousin => PairKind::Cousin,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Forms,
    Threads,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Surviving pair indices up to --limit and their prime pairs.
    Sieve {
        #[arg(long, value_enum, default_value_t = KindArg::Twin)]
        kind: KindArg,
        #[arg(long)]
        limit: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cross-checks the forms sieve, the prime-thread sieve and a plain
    /// Eratosthenes oracle.
    Verify {
        #[arg(long, value_enum, default_value_t = KindArg::Twin)]
        kind: KindArg,
        #[arg(long)]
        limit: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact survivor-density recurrence, step by step.
    Density {
        #[arg(long, value_enum, default_value_t = KindArg::Twin)]
        kind: KindArg,
        #[arg(long)]
        steps: usize,
        /// Count survivors over a full period (steps <= 7).
        #[arg(long)]
        period: bool,
        /// Count survivors over k in [1, W].
        #[arg(long, value_name = "W")]
        window: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Pair counts against the three lower bounds.
    Bounds {
        #[arg(long, value_enum, default_value_t = KindArg::Twin)]
        kind: KindArg,
        #[arg(long)]
        max: u64,
        #[arg(long, default_value_t = 1)]
        step: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Consecutive primes p < p' with p' >= 2p, for p <= --max.
    Gaps {
        #[arg(long)]
        max: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn config(cmd: Cmd) -> RunConfig {
    let (command, output) = match cmd {
        Cmd::Sieve { kind, limit, method, output } => {
            let method = match method {
                MethodArg::Forms => Method::Forms,
                MethodArg::Threads => Method::Threads,
                MethodArg::Both => Method::Both,
            };
            (Command::Sieve { kind: kind.into(), limit, method }, output)
        }
        Cmd::Verify { kind, limit, output } => (Command::Verify { kind: kind.into(), limit }, output),
        Cmd::Density { kind, steps, period, window, output } => {
            (Command::Density { kind: kind.into(), steps, period, window }, output)
        }
        Cmd::Bounds { kind, max, step, output } => (Command::Bounds { kind: kind.into(), max, step }, output),
        Cmd::Gaps { max, output } => (Command::Gaps { max }, output),
    };
    let format = match output.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    RunConfig { command, format, out: output.out }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&config(cli.command)) {
        Ok(outcome) => {
            eprintln!("{}", outcome.summary.trim_end());
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            eprintln!("twinspace: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
