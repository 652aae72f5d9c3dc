//! `homog find|count|verify|gen`.
//!
//! Exit codes: 0 homogeneous set, 2 evidence, 1 usage or I/O, 3 parse,
//! 4 scale, 5 exhaustion, 6 verification failure or digest mismatch,
//! 7 capacity, 8 contract violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::family::{read_family, FamilySpec};
use crate::graph::{check_eps, read_graph, write_graph, write_graph_file};
use crate::induced::{count_induced_exact, estimate_induced};
use crate::oracle::{generate, verify_outcome, GeneratorKind, GeneratorSpec};
use crate::pipeline::{read_certificate, run, write_certificate, Certificate, RunConfig};
use crate::rational::{int, parse_rational, ratio, Rational};
use crate::regularity::DEFAULT_EVIDENCE_TARGET;

pub const EXIT_HOMOGENEOUS: i32 = 0;
pub const EXIT_EVIDENCE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 6;

#[derive(Parser, Debug)]
#[command(
    name = "homog",
    version,
    about = "Certified homogeneous sets or induced-copy evidence"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Find a homogeneous set or induced copies of a family member.
    Find(FindArgs),
    /// Count induced copies of each family member, exactly or by sampling.
    Count(CountArgs),
    /// Check a certificate against a graph.
    Verify(VerifyArgs),
    /// Write a generated graph.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
pub struct Common {
    /// Family name (`p4`) or path to a family file.
    #[arg(long, default_value = "p4")]
    pub family: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker thread cap.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(short, long)]
    pub verbose: bool,
}

#[derive(Args, Debug)]
pub struct FindArgs {
    pub graph: PathBuf,
    /// Tolerance as `p/q`, strictly between 0 and 1/2.
    #[arg(long)]
    pub eps: String,
    #[command(flatten)]
    pub common: Common,
    /// Certificate path; printed to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_EVIDENCE_TARGET)]
    pub evidence_target: usize,
    /// Smallest accepted vertex count; defaults to ceil(4/eps).
    #[arg(long)]
    pub min_n: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    pub graph: PathBuf,
    #[command(flatten)]
    pub common: Common,
    /// Samples per member when the exact count is over budget.
    #[arg(long, default_value_t = 20_000)]
    pub samples: u64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    pub certificate: PathBuf,
    #[arg(short, long)]
    pub verbose: bool,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// cograph, split, gnp, planted_homogeneous or two_cliques.
    pub kind: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "1/2")]
    pub p: String,
    #[arg(long, default_value_t = 0)]
    pub plant: usize,
    #[arg(long, default_value = "0/1")]
    pub plant_density: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Parses `p/q` and checks `0 < eps < 1/2`.
pub fn parse_eps(text: &str) -> Result<Rational> {
    if !text.contains('/') {
        return Err(Error::arg(format!("eps must be written p/q, got {text:?}")));
    }
    let eps = parse_rational(text)?;
    check_eps(&eps)?;
    Ok(eps)
}

pub fn load_family(spec: &str) -> Result<FamilySpec> {
    match FamilySpec::builtin(spec) {
        Some(f) => Ok(f),
        None if Path::new(spec).exists() => read_family(spec),
        None => Err(Error::arg(format!(
            "unknown family {spec:?} (not a builtin name or a file)"
        ))),
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::arg(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn cmd_find(a: &FindArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let eps = parse_eps(&a.eps)?;
    let fam = load_family(&a.common.family)?;
    let g = read_graph(&a.graph)?;
    let config = RunConfig {
        seed: a.common.seed,
        k_max: a.k_max,
        evidence_target: a.evidence_target,
        min_n: a.min_n,
    };
    let outcome = with_threads(a.common.threads, || run(&g, &eps, &fam, &config))??;
    let text = write_certificate(&outcome);
    let summary = outcome.summary();
    match &a.out {
        Some(path) => {
            std::fs::write(path, &text)?;
            writeln!(out, "{summary}")?;
        }
        None => {
            out.write_all(text.as_bytes())?;
            writeln!(err, "{summary}")?;
        }
    }
    if a.common.verbose {
        let t = &outcome.trace;
        writeln!(
            err,
            "n={} k={} rounds={} bad={} |A|={:?} |B|={:?} clamped={}",
            t.n,
            t.k,
            t.rounds.len(),
            t.bad_count,
            t.a_size,
            t.b_size,
            t.k_clamped
        )?;
    }
    Ok(match outcome.certificate {
        Certificate::Homogeneous(_) => EXIT_HOMOGENEOUS,
        Certificate::Evidence(_) => EXIT_EVIDENCE,
    })
}

fn cmd_count(a: &CountArgs, out: &mut dyn Write) -> Result<i32> {
    let fam = load_family(&a.common.family)?;
    let g = read_graph(&a.graph)?;
    for (i, member) in fam.members.iter().enumerate() {
        match count_induced_exact(&g, &member.graph) {
            Ok(c) => writeln!(out, "{} exact {c}", member.name)?,
            Err(Error::Capacity(_)) => {
                let seed = a.common.seed.wrapping_add(i as u64);
                let e = with_threads(a.common.threads, || {
                    estimate_induced(&g, &member.graph, a.samples, seed)
                })??;
                writeln!(
                    out,
                    "{} estimated {:.1} interval [{:.1}, {:.1}] samples {} hits {}",
                    member.name, e.estimate, e.lower, e.upper, e.samples, e.hits
                )?;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let g = read_graph(&a.graph)?;
    let outcome = read_certificate(&a.certificate)?;
    let report = verify_outcome(&g, &outcome, &outcome.parameters.eps);
    if a.verbose || !report.passed() {
        writeln!(out, "{report}")?;
    }
    if report.digest_mismatch() {
        return Err(Error::DigestMismatch(format!(
            "certificate was issued for a graph with n={} edges={}, this graph has n={} edges={}",
            outcome.digest.n,
            outcome.digest.edge_count,
            g.n(),
            g.edge_count()
        )));
    }
    if report.passed() {
        writeln!(out, "verified: {}", outcome.summary())?;
        Ok(0)
    } else {
        Ok(EXIT_VERIFY_FAILED)
    }
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<i32> {
    let kind = GeneratorKind::from_tag(&a.kind)
        .ok_or_else(|| Error::arg(format!("unknown generator {:?}", a.kind)))?;
    let spec = GeneratorSpec {
        kind,
        n: a.n,
        p: parse_rational(&a.p)?,
        plant_size: a.plant,
        plant_density: parse_rational(&a.plant_density)?,
        seed: a.seed,
    };
    if spec.p < int(0)
        || spec.p > int(1)
        || spec.plant_density < ratio(0, 1)
        || spec.plant_density > int(1)
    {
        return Err(Error::arg("probabilities must lie in [0, 1]"));
    }
    let g = with_threads(a.threads, || generate(&spec))??;
    match &a.out {
        Some(path) => {
            write_graph_file(&g, path)?;
            writeln!(out, "{spec}: {} vertices, {} edges", g.n(), g.edge_count())?;
        }
        None => out.write_all(write_graph(&g).as_bytes())?,
    }
    Ok(0)
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code; messages go to `out` and `err`.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Find(a) => cmd_find(a, out, err),
        Command::Count(a) => cmd_count(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Gen(a) => cmd_gen(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_must_be_a_fraction_in_range() {
        assert_eq!(parse_eps("1/10").unwrap(), ratio(1, 10));
        assert!(parse_eps("0.1").is_err());
        assert!(parse_eps("1/2").is_err());
        assert!(parse_eps("0/3").is_err());
        assert!(parse_eps("3/5").is_err());
    }

    #[test]
    fn family_lookup() {
        assert_eq!(load_family("p4").unwrap().members.len(), 1);
        assert!(load_family("no-such-family").is_err());
    }
}
