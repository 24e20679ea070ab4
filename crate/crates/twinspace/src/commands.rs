//! The five commands. Each streams its records to the configured output and
//! returns an exit code plus a human-readable summary for stderr.
//!
//! Exit codes: 0 success, 1 a checked claim failed, 2 usage or configuration
//! error.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use thiserror::Error;
use twinspace_core::analytics::{self, BoundContext, DensitySteps, MAX_PERIOD_STEPS};
use twinspace_core::sieve::{self, MAX_INDEX};
use twinspace_core::{oracle, PairKind};

use crate::format::{Field, Format, RecordWriter};
use crate::parallel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Forms,
    Threads,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Sieve { kind: PairKind, limit: u64, method: Method },
    Verify { kind: PairKind, limit: u64 },
    Density { kind: PairKind, steps: usize, period: bool, window: Option<u64> },
    Bounds { kind: PairKind, max: u64, step: u64 },
    Gaps { max: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    /// `None` writes to stdout.
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit: u8,
    pub summary: String,
}

impl Outcome {
    fn ok(summary: String) -> Self {
        Outcome { exit: 0, summary }
    }

    fn failed(summary: String) -> Self {
        Outcome { exit: 1, summary }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] twinspace_core::Error),
    #[error("output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(twinspace_core::Error::CompositeSurvivor { .. }) => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn check_limit(limit: u64) -> Result<()> {
    if limit == 0 || limit > MAX_INDEX {
        return Err(usage(format!("--limit must be in 1..={MAX_INDEX}, got {limit}")));
    }
    Ok(())
}

/// Validates the configuration, then runs it against the configured output.
pub fn run(config: &RunConfig) -> Result<Outcome> {
    validate(&config.command)?;
    match &config.out {
        Some(path) => {
            let file = File::create(path)?;
            run_to(&config.command, config.format, BufWriter::new(file))
        }
        None => {
            let stdout = io::stdout();
            run_to(&config.command, config.format, BufWriter::new(stdout.lock()))
        }
    }
}

fn validate(command: &Command) -> Result<()> {
    match *command {
        Command::Sieve { limit, .. } | Command::Verify { limit, .. } => check_limit(limit),
        Command::Density { steps, period, window, .. } => {
            if steps == 0 {
                return Err(usage("--steps must be at least 1"));
            }
            if period && steps > MAX_PERIOD_STEPS {
                return Err(usage(format!(
                    "--period enumerates Π p5 residues and needs --steps <= {MAX_PERIOD_STEPS}"
                )));
            }
            if window == Some(0) {
                return Err(usage("--window must be at least 1"));
            }
            Ok(())
        }
        Command::Bounds { max, step, kind } => {
            if step == 0 || max == 0 {
                return Err(usage("--max and --step must be at least 1"));
            }
            if kind.max_index_with_large_at_most(max) > MAX_INDEX {
                return Err(usage(format!("--max {max} exceeds sieve capacity")));
            }
            Ok(())
        }
        Command::Gaps { max } => {
            if max < 3 || 2 * max + 1 > oracle::MAX_LIMIT {
                return Err(usage(format!(
                    "--max must be in 3..={}, got {max}",
                    (oracle::MAX_LIMIT - 1) / 2
                )));
            }
            Ok(())
        }
    }
}

/// Runs `command`, writing records to `out`.
pub fn run_to<W: Write>(command: &Command, format: Format, out: W) -> Result<Outcome> {
    validate(command)?;
    match *command {
        Command::Sieve { kind, limit, method } => cmd_sieve(kind, limit, method, format, out),
        Command::Verify { kind, limit } => cmd_verify(kind, limit, format, out),
        Command::Density { kind, steps, period, window } => {
            cmd_density(kind, steps, period, window, format, out)
        }
        Command::Bounds { kind, max, step } => cmd_bounds(kind, max, step, format, out),
        Command::Gaps { max } => cmd_gaps(max, format, out),
    }
}

fn cmd_sieve<W: Write>(kind: PairKind, limit: u64, method: Method, format: Format, out: W) -> Result<Outcome> {
    let window = match method {
        Method::Forms => sieve::sieve_forms(kind, limit)?,
        Method::Threads => parallel::par_sieve_prime_threads(kind, limit)?,
        Method::Both => {
            let forms = sieve::sieve_forms(kind, limit)?;
            let threads = parallel::par_sieve_prime_threads(kind, limit)?;
            if !forms.same_bits(&threads) {
                let diff = discrepancies(&[("forms", &sieve::survivors(&forms)), ("threads", &sieve::survivors(&threads))]);
                return Ok(Outcome::failed(format!(
                    "forms and threads sieves disagree for {kind} k <= {limit}\n{diff}"
                )));
            }
            threads
        }
    };
    let ks = sieve::survivors(&window);
    let table = oracle::primes_up_to(kind.pair(limit).1)?;
    let pairs = sieve::pairs_from_survivors(kind, &ks, &table)?;
    let mut w = RecordWriter::new(out, format, &["k", "small", "large"])?;
    for p in &pairs {
        w.write(&[Field::Int(p.k), Field::Int(p.small), Field::Int(p.large)])?;
    }
    w.finish()?;
    Ok(Outcome::ok(format!("{} {kind} pairs for k <= {limit}", pairs.len())))
}

/// Lists up to ten indices on which the named survivor lists disagree.
fn discrepancies(lists: &[(&str, &[u64])]) -> String {
    let sets: Vec<BTreeSet<u64>> = lists.iter().map(|(_, l)| l.iter().copied().collect()).collect();
    let union: BTreeSet<u64> = sets.iter().flatten().copied().collect();
    let mut text = String::new();
    let mut shown = 0;
    for k in union {
        let member: Vec<bool> = sets.iter().map(|s| s.contains(&k)).collect();
        if member.iter().all(|&m| m) {
            continue;
        }
        if shown == 10 {
            text.push_str("  …\n");
            break;
        }
        let cells: Vec<String> = lists
            .iter()
            .zip(&member)
            .map(|((name, _), &m)| format!("{name}={}", if m { "survivor" } else { "excluded" }))
            .collect();
        let _ = writeln!(text, "  k={k}: {}", cells.join(" "));
        shown += 1;
    }
    text
}

fn cmd_verify<W: Write>(kind: PairKind, limit: u64, format: Format, out: W) -> Result<Outcome> {
    let forms = sieve::survivors(&sieve::sieve_forms(kind, limit)?);
    let threads = sieve::survivors(&parallel::par_sieve_prime_threads(kind, limit)?);
    let table = oracle::primes_up_to(kind.pair(limit).1)?;
    let truth = oracle::oracle_survivors(kind, limit, &table)?;

    let mut w = RecordWriter::new(out, format, &["strategy", "survivors", "agrees_with_oracle"])?;
    for (name, list) in [("forms", &forms), ("threads", &threads), ("oracle", &truth)] {
        w.write(&[Field::Text(name), Field::Int(list.len() as u64), Field::Bool(*list == truth)])?;
    }
    w.finish()?;

    if forms == truth && threads == truth {
        let mut summary = format!("3 strategies agree: {} {kind} survivors for k <= {limit}", truth.len());
        if truth.len() <= 20 {
            let ks: Vec<String> = truth.iter().map(u64::to_string).collect();
            let _ = write!(summary, " {{{}}}", ks.join(","));
        }
        Ok(Outcome::ok(summary))
    } else {
        let diff = discrepancies(&[("forms", &forms), ("threads", &threads), ("oracle", &truth)]);
        Ok(Outcome::failed(format!("strategies disagree for {kind} k <= {limit}\n{diff}")))
    }
}

const DENSITY_HEADER: [&str; 11] = [
    "step", "p5", "form", "alpha", "p5r", "c_num", "c_den", "c_float", "true_num", "true_den", "true_float",
];

fn cmd_density<W: Write>(
    kind: PairKind,
    steps: usize,
    period: bool,
    window: Option<u64>,
    format: Format,
    out: W,
) -> Result<Outcome> {
    let mut header: Vec<&'static str> = DENSITY_HEADER.to_vec();
    if period {
        header.extend(["period_modulus", "period_count", "thread_count"]);
    }
    if window.is_some() {
        header.extend(["window", "empirical_count", "empirical_float"]);
    }
    let mut w = RecordWriter::new(out, format, &header)?;
    let mut modulus = 1u64;
    let mut thread_count = 1u64;
    let mut last = None;
    for s in DensitySteps::new(oracle::primes_above_three(steps).into_iter()) {
        let mut row = vec![
            Field::Int(s.step as u64),
            Field::Int(s.p5),
            Field::Text(s.form.label()),
            Field::Int(s.alpha),
            Field::Int(s.p5r),
            Field::Big(s.available.numer().to_string()),
            Field::Big(s.available.denom().to_string()),
            Field::Float(s.c_float),
            Field::Big(s.density_true.numer().to_string()),
            Field::Big(s.density_true.denom().to_string()),
            Field::Float(s.true_float),
        ];
        if period {
            modulus *= s.p5;
            thread_count *= s.p5r;
            let count = analytics::full_period_survivor_count(kind, s.step)?;
            debug_assert_eq!(count.modulus, modulus);
            row.extend([Field::Int(modulus), Field::Int(count.survivors), Field::Int(thread_count)]);
        }
        if let Some(win) = window {
            let c = analytics::empirical_survivors(kind, s.step, win)?;
            row.extend([Field::Int(win), Field::Int(c), Field::Float(c as f64 / win as f64)]);
        }
        w.write(&row)?;
        last = Some((s.step, s.c_float, s.true_float));
    }
    w.finish()?;
    let (m, c, t) = last.expect("steps >= 1");
    let mut summary = format!("{m} steps: c ≈ {c:.6e}, true density ≈ {t:.6e}");
    if kind == PairKind::Cousin {
        summary.push_str(" (cousin c reuses the twin α rules: extrapolated)");
    }
    Ok(Outcome::ok(summary))
}

const BOUNDS_HEADER: [&str; 8] = ["n", "pi", "bound9", "bound11", "bound20", "ok9", "ok11", "ok20"];

/// Multiples of `step` up to `max`, and `max` itself.
pub fn bound_samples(max: u64, step: u64) -> impl Iterator<Item = u64> {
    let tail = (max % step != 0).then_some(max);
    (1..=max / step).map(move |i| i * step).chain(tail)
}

fn cmd_bounds<W: Write>(kind: PairKind, max: u64, step: u64, format: Format, out: W) -> Result<Outcome> {
    let ctx = BoundContext::new(kind, max)?;
    let mut w = RecordWriter::new(out, format, &BOUNDS_HEADER)?;
    let mut violations = Vec::new();
    for n in bound_samples(max, step) {
        let r = ctx.report(n)?;
        w.write(&[
            Field::Int(r.n),
            Field::Int(r.pi),
            Field::Float(r.bound9),
            Field::Float(r.bound11),
            r.bound20.map_or(Field::Missing, Field::Float),
            Field::Bool(r.ok9),
            Field::Bool(r.ok11),
            r.ok20.map_or(Field::Missing, Field::Bool),
        ])?;
        if r.is_log_bound_violation() {
            violations.push(r);
        }
    }
    let rows = w.rows();
    w.finish()?;
    if violations.is_empty() {
        Ok(Outcome::ok(format!(
            "{rows} samples, no n/(15 ln²(n/6)) violation for n >= {}",
            analytics::LOG_BOUND_THRESHOLD
        )))
    } else {
        let mut s = format!("{} violations of n/(15 ln²(n/6)):\n", violations.len());
        for r in violations.iter().take(10) {
            let _ = writeln!(s, "  n={} pi={} bound={:.4}", r.n, r.pi, r.bound20.unwrap_or(f64::NAN));
        }
        Ok(Outcome::failed(s))
    }
}

fn cmd_gaps<W: Write>(max: u64, format: Format, out: W) -> Result<Outcome> {
    let violations = oracle::prime_gap_check(max);
    let mut w = RecordWriter::new(out, format, &["prime", "next"])?;
    for v in &violations {
        w.write(&[Field::Int(v.prime), v.next.map_or(Field::Missing, Field::Int)])?;
    }
    w.finish()?;
    if violations.is_empty() {
        Ok(Outcome::ok(format!("no consecutive primes with p' >= 2p for p <= {max}")))
    } else {
        Ok(Outcome::failed(format!("{} gap violations up to {max}", violations.len())))
    }
}

/// Convenience for tests: runs into a buffer.
pub fn run_to_string(command: &Command, format: Format) -> Result<(Outcome, String)> {
    let mut buf = Vec::new();
    let outcome = run_to(command, format, &mut buf)?;
    Ok((outcome, String::from_utf8(buf).expect("records are UTF-8")))
}
