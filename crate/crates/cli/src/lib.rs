//! The `fanram` command line. [`run`] does all the work and returns what a
//! process would print, so tests can drive it without spawning.
//!
//! Exit codes: 0 success, 1 negative verification or extraction result,
//! 2 usage or precondition error, 3 a branch the extraction argument rules
//! out (or any other internal failure).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use fanram::covering::{compute_cover, CoverOutcome};
use fanram::extractor::BRANCHES;
use fanram::format::{parse_any, write_2col};
use fanram::matching::MatchingMode;
use fanram::oracle::{adversarial_coloring, bipartite_lower_bound, exhaustive_ramsey_check, random_coloring, AdversarialKind};
use fanram::{
    extract_fan, find_mono_fan, theorem_order, verify_fan, CliqueWitness, Color, Coloring, ExtractError, FanCertificate,
    Mode, VertexSet,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNREACHABLE: i32 = 3;

/// Environment variable capping the `trials` worker pool.
pub const WORKERS_VAR: &str = "FANRAM_WORKERS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    /// JSON document, newline terminated, or empty.
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn json(exit_code: i32, payload: &impl Serialize) -> Self {
        let mut stdout = serde_json::to_string_pretty(payload).expect("payloads serialize");
        stdout.push('\n');
        Self {
            exit_code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(exit_code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        stderr.push('\n');
        Self {
            exit_code,
            stdout: String::new(),
            stderr,
        }
    }

    fn note(mut self, msg: impl AsRef<str>) -> Self {
        self.stderr.push_str(msg.as_ref());
        self.stderr.push('\n');
        self
    }
}

#[derive(Parser, Debug)]
#[command(name = "fanram", version, about = "Monochromatic fan extraction and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Extract a monochromatic F_n certificate from a coloring.
    Extract {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "faithful")]
        mode: Mode,
        /// Also write the extraction trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check a fan certificate against a coloring.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Exhaustive checks at small order.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// Write and check the K_(2n,2n) construction.
    Lowerbound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the S/C records and greedy cover of a monochromatic clique.
    Cover {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated vertex list.
        #[arg(long, value_delimiter = ',')]
        clique: Vec<usize>,
        #[arg(long, value_parser = parse_color)]
        color: Color,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "greedy", value_parser = parse_matching_mode)]
        matching: MatchingMode,
    },
    /// Run seeded extractions at the theorem order and report branch coverage.
    Trials {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "random")]
        family: String,
        /// Black probability for the random family.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value = "faithful")]
        mode: Mode,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Whether every coloring of K_N contains a monochromatic F_n.
    Ramsey {
        #[arg(long = "N")]
        order: usize,
        #[arg(long)]
        n: usize,
    },
}

fn parse_color(s: &str) -> Result<Color, String> {
    let mut chars = s.chars();
    match (chars.next().and_then(Color::from_letter), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(format!("expected B or W, got {s:?}")),
    }
}

fn parse_matching_mode(s: &str) -> Result<MatchingMode, String> {
    match s {
        "greedy" => Ok(MatchingMode::Greedy),
        "maximum" => Ok(MatchingMode::Maximum),
        _ => Err(format!("expected greedy or maximum, got {s:?}")),
    }
}

/// Runs the command line `argv`, including the program name.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                CommandResult {
                    exit_code: code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CommandResult::error(code, text.trim_end())
            };
        }
    };
    match cli.command {
        Command::Extract { input, n, mode, trace } => extract(&input, n, mode, trace.as_deref()),
        Command::Verify { input, cert } => verify(&input, &cert),
        Command::Oracle {
            which: OracleCommand::Ramsey { order, n },
        } => ramsey(order, n),
        Command::Lowerbound { n, out } => lowerbound(n, out.as_deref()),
        Command::Cover {
            input,
            clique,
            color,
            n,
            matching,
        } => cover(&input, clique, color, n, matching),
        Command::Trials {
            n,
            count,
            seed,
            family,
            p,
            mode,
        } => trials(n, count, seed, &family, p, mode),
    }
}

fn read_coloring(path: &Path) -> Result<Coloring, CommandResult> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CommandResult::error(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    parse_any(&text).map_err(|e| CommandResult::error(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CommandResult> {
    std::fs::write(path, text).map_err(|e| CommandResult::error(EXIT_USAGE, format!("cannot write {}: {e}", path.display())))
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(r) => return r,
        }
    };
}

fn extract(input: &Path, n: usize, mode: Mode, trace_path: Option<&Path>) -> CommandResult {
    let c = tri!(read_coloring(input));
    let write_trace = |trace: &fanram::ExtractionTrace| -> Result<(), CommandResult> {
        match trace_path {
            Some(p) => write_file(p, &(serde_json::to_string_pretty(trace).expect("trace serializes") + "\n")),
            None => Ok(()),
        }
    };
    match extract_fan(&c, n, mode) {
        Ok((cert, trace)) => {
            tri!(write_trace(&trace));
            let branch = trace.branch.clone().unwrap_or_default();
            CommandResult::json(EXIT_OK, &cert).note(format!("verified F_{n} at vertex {} via {branch}", cert.center))
        }
        Err(ExtractError::PreconditionViolated(m)) => CommandResult::error(EXIT_USAGE, format!("precondition violated: {m}")),
        Err(ExtractError::Unreachable { label, trace }) => {
            tri!(write_trace(&trace));
            CommandResult::error(EXIT_UNREACHABLE, format!("unreachable branch {label}; this is a bug"))
        }
        Err(ExtractError::Internal(m)) => CommandResult::error(EXIT_UNREACHABLE, format!("internal error: {m}")),
    }
}

#[derive(Serialize)]
struct Verdict {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn verify(input: &Path, cert_path: &Path) -> CommandResult {
    let c = tri!(read_coloring(input));
    let text = tri!(std::fs::read_to_string(cert_path)
        .map_err(|e| CommandResult::error(EXIT_USAGE, format!("cannot read {}: {e}", cert_path.display()))));
    let cert: FanCertificate = tri!(serde_json::from_str(&text)
        .map_err(|e| CommandResult::error(EXIT_USAGE, format!("{}: not a fan certificate: {e}", cert_path.display()))));
    match verify_fan(&c, &cert) {
        Ok(()) => CommandResult::json(EXIT_OK, &Verdict { valid: true, error: None }),
        Err(e) => CommandResult::json(
            EXIT_NEGATIVE,
            &Verdict {
                valid: false,
                error: Some(e.to_string()),
            },
        ),
    }
}

fn ramsey(order: usize, n: usize) -> CommandResult {
    match exhaustive_ramsey_check(order, n) {
        Ok(report) => {
            let code = if report.all_contain { EXIT_OK } else { EXIT_NEGATIVE };
            CommandResult::json(code, &report)
        }
        Err(e) => CommandResult::error(EXIT_USAGE, e.to_string()),
    }
}

#[derive(Serialize)]
struct LowerBoundReport {
    n: usize,
    order: usize,
    fan_free: bool,
    /// A fan found in the construction, which would refute it.
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<FanCertificate>,
}

fn lowerbound(n: usize, out: Option<&Path>) -> CommandResult {
    if n == 0 {
        return CommandResult::error(EXIT_USAGE, "n must be at least 1");
    }
    let c = bipartite_lower_bound(n);
    if let Some(p) = out {
        tri!(write_file(p, &write_2col(&c)));
    }
    let counterexample = Color::BOTH.iter().find_map(|&col| find_mono_fan(&c, col, n));
    let report = LowerBoundReport {
        n,
        order: c.order(),
        fan_free: counterexample.is_none(),
        counterexample,
    };
    CommandResult::json(if report.fan_free { EXIT_OK } else { EXIT_NEGATIVE }, &report)
}

#[derive(Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
enum CoverPayload {
    Cover { cover: fanram::CoverRecord },
    Fan { certificate: FanCertificate },
}

fn cover(input: &Path, clique: Vec<usize>, color: Color, n: usize, mode: MatchingMode) -> CommandResult {
    let c = tri!(read_coloring(input));
    let vertices: VertexSet = clique.iter().copied().collect();
    if vertices.len() != clique.len() {
        return CommandResult::error(EXIT_USAGE, "clique lists a vertex twice");
    }
    let a = CliqueWitness { color, vertices };
    if !a.is_valid(&c) {
        return CommandResult::error(EXIT_USAGE, format!("the listed vertices are not a {color:?} clique of this coloring"));
    }
    match compute_cover(&c, &a, n, mode) {
        Ok(CoverOutcome::Cover(cover)) => CommandResult::json(EXIT_OK, &CoverPayload::Cover { cover }),
        Ok(CoverOutcome::Fan(certificate)) => CommandResult::json(EXIT_OK, &CoverPayload::Fan { certificate }),
        Err(fanram::covering::CoverError::PreconditionViolated(m)) => {
            CommandResult::error(EXIT_USAGE, format!("precondition violated: {m}"))
        }
        Err(e) => CommandResult::error(EXIT_UNREACHABLE, e.to_string()),
    }
}

#[derive(Serialize)]
struct TrialFailure {
    seed: u64,
    error: String,
}

#[derive(Serialize)]
struct TrialsReport {
    n: usize,
    order: usize,
    family: String,
    mode: Mode,
    first_seed: u64,
    count: usize,
    successes: usize,
    unreachable: usize,
    failures: Vec<TrialFailure>,
    /// Every known branch label with the number of trials it closed.
    branches: BTreeMap<String, usize>,
}

enum Family {
    Random(f64),
    Adversarial(AdversarialKind),
}

fn workers() -> Result<Option<usize>, String> {
    match std::env::var(WORKERS_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(Some(k)),
            _ => Err(format!("{WORKERS_VAR} must be a positive integer, got {v:?}")),
        },
        Err(_) => Ok(None),
    }
}

fn trials(n: usize, count: usize, seed: u64, family: &str, p: f64, mode: Mode) -> CommandResult {
    if n == 0 {
        return CommandResult::error(EXIT_USAGE, "n must be at least 1");
    }
    let fam = if family == "random" {
        if !(0.0..=1.0).contains(&p) {
            return CommandResult::error(EXIT_USAGE, format!("p = {p} outside [0, 1]"));
        }
        Family::Random(p)
    } else {
        match family.parse() {
            Ok(k) => Family::Adversarial(k),
            Err(e) => return CommandResult::error(EXIT_USAGE, format!("{e}")),
        }
    };
    let order = theorem_order(n);
    let threads = match workers() {
        Ok(w) => w.unwrap_or(0),
        Err(m) => return CommandResult::error(EXIT_USAGE, m),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(e) => return CommandResult::error(EXIT_UNREACHABLE, format!("thread pool: {e}")),
    };
    let one = |i: usize| {
        let s = seed.wrapping_add(i as u64);
        let c = match fam {
            Family::Random(p) => random_coloring(order, s, p),
            Family::Adversarial(k) => adversarial_coloring(k, order, s).expect("theorem order is at least 5"),
        };
        let out = extract_fan(&c, n, mode).and_then(|(cert, trace)| match verify_fan(&c, &cert) {
            Ok(()) => Ok(trace.branch.unwrap_or_default()),
            Err(e) => Err(ExtractError::Internal(format!("certificate fails verification: {e}"))),
        });
        (s, out)
    };
    let results: Vec<(u64, Result<String, ExtractError>)> = pool.install(|| (0..count).into_par_iter().map(one).collect());

    let mut branches: BTreeMap<String, usize> = BRANCHES.iter().map(|b| (b.to_string(), 0)).collect();
    let mut failures = Vec::new();
    let mut unreachable = 0;
    for (s, r) in results {
        match r {
            Ok(b) => *branches.entry(b).or_default() += 1,
            Err(e) => {
                if matches!(e, ExtractError::Unreachable { .. }) {
                    unreachable += 1;
                }
                failures.push(TrialFailure {
                    seed: s,
                    error: e.to_string(),
                });
            }
        }
    }
    let report = TrialsReport {
        n,
        order,
        family: family.to_string(),
        mode,
        first_seed: seed,
        count,
        successes: count - failures.len(),
        unreachable,
        failures,
        branches,
    };
    let code = if report.failures.is_empty() { EXIT_OK } else { EXIT_UNREACHABLE };
    CommandResult::json(code, &report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn color_and_mode_flags() {
        assert_eq!(parse_color("B"), Ok(Color::Black));
        assert_eq!(parse_color("W"), Ok(Color::White));
        assert!(parse_color("BW").is_err());
        assert!(parse_color("").is_err());
        assert_eq!(parse_matching_mode("maximum"), Ok(MatchingMode::Maximum));
        assert!(parse_matching_mode("best").is_err());
    }

    #[test]
    fn json_payloads_end_with_a_newline() {
        let r = CommandResult::json(EXIT_OK, &Verdict { valid: true, error: None });
        assert_eq!(r.stdout, "{\n  \"valid\": true\n}\n");
        assert!(r.stderr.is_empty());
    }
}
