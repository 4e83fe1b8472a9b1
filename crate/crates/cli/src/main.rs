//! Command-line front end for the random-complex laboratory.
//!
//! Every subcommand is a thin adapter over the library: it resolves
//! parameters (file, then flag overrides), calls one library entry point,
//! and formats the result. Exit codes: 0 = ran, 1 = usage or config error,
//! 2 = internal invariant violation.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use randcomplex::{
    build_pattern, check_conditions, event_expectation, expand_to_fixpoint, is_seed,
    log_expected_ch, mc_estimate, sample_complex, count_pattern_occurrences, ConditionReport,
    Error, ExpansionTrace, ExpectationReport, McEstimate, McEvent, ModelParams, ParamFile,
    SimplicialComplex,
};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "randcomplex",
    version,
    about = "Sample multiparametric random complexes, check parameter domains, run rigid \
             expansions, count chain patterns, and sweep expectation reports"
)]
struct Cli {
    /// Parameter file (key = value; keys g, n, N, r, alpha, p, seed, star)
    #[arg(long, global = true, value_name = "FILE")]
    params: Option<PathBuf>,

    /// Genus
    #[arg(long, global = true)]
    g: Option<u32>,

    /// Scale parameter (default 2^g)
    #[arg(long, global = true)]
    n: Option<u64>,

    /// Ambient vertex count (default n)
    #[arg(long = "N", visible_alias = "ambient", global = true)]
    ambient: Option<usize>,

    /// Dimension cap (default 3g - 3)
    #[arg(long, global = true)]
    r: Option<usize>,

    /// Exponents alpha_0..alpha_r, comma separated; p_i = n^-alpha_i
    #[arg(long, global = true, value_delimiter = ',', num_args = 1..)]
    alpha: Option<Vec<f64>>,

    /// Explicit probabilities p_0..p_r, comma separated
    #[arg(long = "p", visible_alias = "probs", global = true, value_delimiter = ',', num_args = 1..)]
    probs: Option<Vec<f64>>,

    /// RNG seed (default 0)
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write the result here instead of stdout
    #[arg(long, short = 'o', global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable lines (the complex text format for `sample`)
    Text,
    /// Comma-separated rows (sweep only)
    Csv,
    /// JSON
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Draw one complex and emit it in the text format
    Sample,
    /// Evaluate the parameter-domain conditions
    Check,
    /// Run rigid expansion stages from a start set and report a seed verdict
    Expand {
        /// Complex in the text format
        #[arg(long, value_name = "FILE")]
        complex: PathBuf,
        /// Comma-separated vertex ids of the start set
        #[arg(long, value_name = "IDS")]
        start: String,
        /// Stop after this many stages (default: vertex count + 1)
        #[arg(long)]
        max_stages: Option<usize>,
    },
    /// Count pattern occurrences in a stored complex, or export the pattern
    Count {
        /// Complex in the text format
        #[arg(long, value_name = "FILE")]
        complex: Option<PathBuf>,
        /// Host clique size (default 2g + 4; the estimate formula uses 4g + 2)
        #[arg(long)]
        clique_size: Option<usize>,
        /// Write the pattern graph A here (text format)
        #[arg(long, value_name = "FILE")]
        export_a: Option<PathBuf>,
        /// Write the flag pattern B here (text format)
        #[arg(long, value_name = "FILE")]
        export_b: Option<PathBuf>,
    },
    /// Monte Carlo estimate of an event against its closed form
    Mc {
        #[arg(long, value_enum, default_value_t = EventKind::Sandwich)]
        event: EventKind,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        /// Subset size for the clique-count event
        #[arg(long)]
        clique_size: Option<usize>,
    },
    /// Expectation reports over a genus range, one CSV row per genus
    Sweep {
        #[arg(long, default_value_t = 2)]
        g_from: u32,
        #[arg(long, default_value_t = 30)]
        g_to: u32,
        /// Keep n = 2^g even when that starves the host cliques
        #[arg(long)]
        strict_n: bool,
        /// Distance of alpha_0 below its technical-condition bound
        #[arg(long, default_value_t = 0.01)]
        alpha0_margin: f64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EventKind {
    /// Indicator of the pattern sandwich A <= Y <= B (needs N = 2g + 4)
    Sandwich,
    /// Labeled pattern occurrences
    PatternCount,
    /// Subsets spanning a complete skeleton
    CliqueCount,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn internal(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let resolved = resolve(&cli)?;
    match &cli.command {
        Command::Sample => cmd_sample(&cli, &resolved),
        Command::Check => cmd_check(&cli, &resolved),
        Command::Expand { complex, start, max_stages } => {
            cmd_expand(&cli, complex, start, *max_stages)
        }
        Command::Count { complex, clique_size, export_a, export_b } => {
            cmd_count(&cli, &resolved, complex.as_deref(), *clique_size, export_a, export_b)
        }
        Command::Mc { event, trials, clique_size } => {
            cmd_mc(&cli, &resolved, *event, *trials, *clique_size)
        }
        Command::Sweep { g_from, g_to, strict_n, alpha0_margin } => {
            cmd_sweep(&cli, *g_from, *g_to, *strict_n, *alpha0_margin)
        }
    }
}

/// Parameter file first, then flag overrides.
fn resolve(cli: &Cli) -> Result<ParamFile, Failure> {
    let base = match &cli.params {
        Some(path) => ParamFile::parse(&read(path)?)?,
        None => ParamFile::default(),
    };
    let flags = ParamFile {
        g: cli.g,
        n: cli.n,
        ambient: cli.ambient,
        r: cli.r,
        alpha: cli.alpha.clone(),
        probs: cli.probs.clone(),
        seed: cli.seed,
        star: None,
    };
    Ok(base.merge(flags))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, payload: &str) -> Result<(), Failure> {
    fs::write(path, payload).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

/// Routes the payload to `--output` or stdout.
fn emit(cli: &Cli, payload: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => write_file(path, payload),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| internal(format!("serialization failed: {e}")))
}

fn reject_csv(cli: &Cli) -> Result<(), Failure> {
    if cli.format == Format::Csv {
        Err(usage("the csv format applies to the sweep subcommand only"))
    } else {
        Ok(())
    }
}

fn fmt_set(set: &BTreeSet<usize>) -> String {
    let items: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

#[derive(Serialize)]
struct SampleReport {
    seed: u64,
    ambient: usize,
    cap: usize,
    f_vector: Vec<usize>,
    complex: String,
}

fn cmd_sample(cli: &Cli, resolved: &ParamFile) -> Result<(), Failure> {
    reject_csv(cli)?;
    let params = resolved.build_params()?;
    let seed = resolved.seed.unwrap_or(0);
    let y = sample_complex(&params, seed);
    let payload = match cli.format {
        Format::Text => y.to_text(),
        Format::Structured => to_json(&SampleReport {
            seed,
            ambient: y.ambient(),
            cap: y.cap(),
            f_vector: y.f_vector(),
            complex: y.to_text(),
        })?,
        Format::Csv => unreachable!(),
    };
    emit(cli, &payload)?;
    eprintln!("seed: {seed}");
    eprintln!("f-vector: {:?}", y.f_vector());
    eprintln!("total faces: {}", y.total_faces());
    Ok(())
}

#[derive(Serialize)]
struct CheckReport<'a> {
    params: &'a ModelParams,
    conditions: &'a ConditionReport,
}

fn cmd_check(cli: &Cli, resolved: &ParamFile) -> Result<(), Failure> {
    reject_csv(cli)?;
    let params = resolved.build_params()?;
    let report = check_conditions(&params);
    let payload = match cli.format {
        Format::Text => {
            let mut out = String::new();
            let alpha: Vec<String> =
                (0..=params.r()).map(|i| params.alpha_at(i).to_string()).collect();
            let _ = writeln!(
                out,
                "g = {}, n = {}, N = {}, r = {}",
                params.g(),
                params.n(),
                params.ambient(),
                params.r()
            );
            let _ = writeln!(out, "alpha: {}", alpha.join(" "));
            for (k, value) in report.psi.iter().enumerate() {
                let _ = writeln!(out, "psi_{k} = {value}");
            }
            match report.critical_dimension {
                Some(k) => {
                    let _ = writeln!(out, "critical dimension: {k}");
                }
                None => {
                    let _ = writeln!(out, "critical dimension: none");
                }
            }
            let _ = writeln!(
                out,
                "hyperbolic (alpha0 + 3 alpha1 + 2 alpha2 > 1 variant): {}",
                report.hyperbolic_gt
            );
            let _ = writeln!(
                out,
                "hyperbolic (alpha0 + 3 alpha1 + 2 alpha2 < 1 variant): {}",
                report.hyperbolic_lt
            );
            let _ = writeln!(out, "technical: {}", report.technical);
            out
        }
        Format::Structured => to_json(&CheckReport { params: &params, conditions: &report })?,
        Format::Csv => unreachable!(),
    };
    emit(cli, &payload)
}

#[derive(Serialize)]
struct ExpandReport<'a> {
    trace: &'a ExpansionTrace,
    is_seed: bool,
}

fn parse_vertex_list(raw: &str) -> Result<BTreeSet<usize>, Failure> {
    let mut set = BTreeSet::new();
    for tok in raw.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = tok.parse().map_err(|_| usage(format!("bad vertex id {tok:?}")))?;
        set.insert(v);
    }
    if set.is_empty() {
        return Err(usage("the start set must contain at least one vertex"));
    }
    Ok(set)
}

fn cmd_expand(
    cli: &Cli,
    complex: &Path,
    start: &str,
    max_stages: Option<usize>,
) -> Result<(), Failure> {
    reject_csv(cli)?;
    let gamma = SimplicialComplex::from_text(&read(complex)?)?;
    let start = parse_vertex_list(start)?;
    let cap = max_stages.unwrap_or(gamma.ambient() + 1);
    let trace = expand_to_fixpoint(&gamma, &start, cap)?;
    let seeded = is_seed(&gamma, &start)?;
    let payload = match cli.format {
        Format::Text => {
            let mut out = String::new();
            for (k, stage) in trace.stages.iter().enumerate() {
                let _ = writeln!(out, "stage {k}: {}", fmt_set(stage));
                if k < trace.witnesses.len() {
                    for (v, a) in &trace.witnesses[k] {
                        let _ = writeln!(out, "  {v} determined by {}", fmt_set(a));
                    }
                }
            }
            let _ = writeln!(out, "truncated: {}", trace.truncated);
            let _ = writeln!(out, "is_seed: {seeded}");
            out
        }
        Format::Structured => to_json(&ExpandReport { trace: &trace, is_seed: seeded })?,
        Format::Csv => unreachable!(),
    };
    emit(cli, &payload)
}

#[derive(Serialize)]
struct CountReport {
    g: u32,
    clique_size: usize,
    subsets: u64,
    labelings: u64,
    subsets_inside_clique: u64,
}

fn cmd_count(
    cli: &Cli,
    resolved: &ParamFile,
    complex: Option<&Path>,
    clique_size: Option<usize>,
    export_a: &Option<PathBuf>,
    export_b: &Option<PathBuf>,
) -> Result<(), Failure> {
    reject_csv(cli)?;
    let g = resolved.g.ok_or_else(|| usage("the genus g is required"))?;
    let pair = build_pattern(g)?;
    if let Some(path) = export_a {
        write_file(path, &pair.a.to_text())?;
    }
    if let Some(path) = export_b {
        write_file(path, &pair.b.to_text())?;
    }
    let Some(path) = complex else {
        if export_a.is_none() && export_b.is_none() {
            return Err(usage("nothing to do: pass --complex or an export path"));
        }
        return Ok(());
    };
    let y = SimplicialComplex::from_text(&read(path)?)?;
    let m = clique_size.unwrap_or(2 * g as usize + 4);
    let counts = count_pattern_occurrences(&y, g, m)?;
    let payload = match cli.format {
        Format::Text => format!(
            "pattern: g = {g} ({} vertices)\nclique size: {m}\nsubsets: {}\nlabelings: {}\n\
             subsets inside a {m}-clique: {}\n",
            2 * g as usize + 4,
            counts.subsets,
            counts.labelings,
            counts.subsets_inside_clique,
        ),
        Format::Structured => to_json(&CountReport {
            g,
            clique_size: m,
            subsets: counts.subsets,
            labelings: counts.labelings,
            subsets_inside_clique: counts.subsets_inside_clique,
        })?,
        Format::Csv => unreachable!(),
    };
    emit(cli, &payload)
}

#[derive(Serialize)]
struct McReport<'a> {
    event: &'a str,
    estimate: &'a McEstimate,
    closed_form: f64,
    within_four_stderr: bool,
}

fn cmd_mc(
    cli: &Cli,
    resolved: &ParamFile,
    kind: EventKind,
    trials: u64,
    clique_size: Option<usize>,
) -> Result<(), Failure> {
    reject_csv(cli)?;
    let params = resolved.build_params()?;
    let seed = resolved.seed.unwrap_or(0);
    let (event, label) = match kind {
        EventKind::Sandwich => {
            let g = resolved.g.ok_or_else(|| usage("the genus g is required"))?;
            (McEvent::Sandwich { pair: build_pattern(g)? }, "sandwich")
        }
        EventKind::PatternCount => {
            let g = resolved.g.ok_or_else(|| usage("the genus g is required"))?;
            (McEvent::PatternCount { g }, "pattern-count")
        }
        EventKind::CliqueCount => {
            let m = clique_size
                .ok_or_else(|| usage("the clique-count event needs --clique-size"))?;
            (McEvent::CliqueCount { m }, "clique-count")
        }
    };
    let estimate = mc_estimate(&event, &params, trials, seed)?;
    let closed = event_expectation(&event, &params)?;
    let pass = (estimate.mean - closed).abs() <= 4.0 * estimate.stderr;
    let payload = match cli.format {
        Format::Text => format!(
            "event: {label}\ntrials: {}\nseed: {}\nmean: {}\nvariance: {}\nstderr: {}\n\
             closed form: {closed}\nwithin 4 stderr: {}\n",
            estimate.trials,
            estimate.seed,
            estimate.mean,
            estimate.variance,
            estimate.stderr,
            if pass { "PASS" } else { "FAIL" },
        ),
        Format::Structured => to_json(&McReport {
            event: label,
            estimate: &estimate,
            closed_form: closed,
            within_four_stderr: pass,
        })?,
        Format::Csv => unreachable!(),
    };
    emit(cli, &payload)
}

/// The sweep's parameter rule: alpha_0 sits just below its technical-
/// condition bound, alpha_1 at half its bound, everything higher vanishes.
fn sweep_point(g: u32, strict_n: bool, margin: f64) -> Result<ModelParams, Error> {
    let gsq = f64::from(g) * f64::from(g);
    let r = 3 * g as usize - 3;
    let mut alpha = vec![0.0; r + 1];
    alpha[0] = (gsq - 1.0) / gsq - margin;
    alpha[1] = 1.0 / (2.0 * gsq);
    let m = 4 * g as u64 + 2;
    let pow = 1u64
        .checked_shl(g)
        .ok_or_else(|| Error::InvalidParams(format!("scale 2^{g} overflows")))?;
    let n = if strict_n { pow } else { pow.max(m) };
    let ambient = usize::try_from(n.max(m))
        .map_err(|_| Error::InvalidParams(format!("scale {n} exceeds the address space")))?;
    ModelParams::builder(g).n(n).r(r).ambient(ambient).alpha(alpha).build()
}

fn sweep_flags(report: &ExpectationReport) -> String {
    let mut flags: Vec<String> = Vec::new();
    if report.clique_infeasible {
        flags.push("clique_infeasible".into());
    }
    if let Some(k) = report.conditions.critical_dimension {
        flags.push(format!("critical_k={k}"));
    }
    if report.conditions.hyperbolic_gt {
        flags.push("hyperbolic_gt".into());
    }
    if report.conditions.hyperbolic_lt {
        flags.push("hyperbolic_lt".into());
    }
    if report.conditions.technical {
        flags.push("technical".into());
    }
    if flags.is_empty() {
        "none".into()
    } else {
        flags.join(";")
    }
}

fn cmd_sweep(
    cli: &Cli,
    g_from: u32,
    g_to: u32,
    strict_n: bool,
    margin: f64,
) -> Result<(), Failure> {
    if g_from < 2 {
        return Err(usage("the expectation report needs genus at least 2"));
    }
    if g_from > g_to {
        return Err(usage(format!("empty genus range {g_from}..={g_to}")));
    }
    let mut reports = Vec::new();
    for g in g_from..=g_to {
        let params = sweep_point(g, strict_n, margin)?;
        reports.push(log_expected_ch(&params)?);
    }
    let payload = match cli.format {
        Format::Text | Format::Csv => {
            let mut out = String::from(
                "g,n,alpha0,alpha1,clique_term,pattern_term,tail,log_n_E_CH,lower_bound,flags\n",
            );
            for report in &reports {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    report.g,
                    report.n,
                    report.alpha[0],
                    report.alpha[1],
                    report.log_n_clique_term,
                    report.log_n_pattern_term,
                    report.log_n_tail_term,
                    report.log_n_e_ch,
                    report.lower_bound,
                    sweep_flags(report),
                );
            }
            out
        }
        Format::Structured => to_json(&reports)?,
    };
    emit(cli, &payload)
}
