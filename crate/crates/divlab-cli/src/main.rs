//! `divlab` — compute divergence measures between two histograms, audit
//! the inequality chains over seeded random corpora, and certify the
//! sharp bound constants numerically.
//!
//! Exit codes: 0 success, 1 violations or unverified certificates,
//! 2 argument/parse/validation errors.

mod ingest;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use divlab::bounds::{certify_fixture, constant_fixtures, ConstantFixture, CurvatureSource, GridSpec};
use divlab::chains::{self, BaseMeasures, Chain};
use divlab::dist::{PairSampler, ProbabilityDistribution};
use divlab::measures::{self, MeasureId};

use ingest::WeightFormat;
use report::{CertificateReport, ChainReport, Config, Report, ViolationRecord};

#[derive(Parser)]
#[command(name = "divlab", version, about = "Divergence measures, inequality audits, and bound certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute measures between two weight files.
    Compute {
        /// First distribution (JSON array or one-number-per-line CSV).
        #[arg(long)]
        p: PathBuf,
        /// Second distribution.
        #[arg(long)]
        q: PathBuf,
        /// Comma-separated measure ids, or "all".
        #[arg(long, default_value = "all")]
        measures: String,
        /// Smoothing epsilon added to every raw weight before normalization.
        #[arg(long, default_value_t = 0.0)]
        smooth: f64,
        /// Output format.
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Input format for both files.
        #[arg(long, value_enum, default_value_t = WeightFormat::Auto)]
        input_format: WeightFormat,
    },
    /// Audit the inequality chains over a seeded random corpus.
    Audit {
        #[arg(long)]
        seed: u64,
        /// Number of pairs to sample (at least 1).
        #[arg(long)]
        pairs: u64,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 64)]
        n_max: usize,
        /// Maximum adversarial p/q ratio magnitude.
        #[arg(long, default_value_t = 1e6)]
        skew: f64,
        /// Comma-separated chain ids, or "all".
        #[arg(long, default_value = "all")]
        chains: String,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate ratio extrema and certify them against the known constants.
    Bounds {
        /// Comma-separated "NUM/DEN" ratio ids from the fixture table, or "all".
        #[arg(long, default_value = "all")]
        ratio: String,
        #[arg(long, default_value_t = 1e-8)]
        grid_min: f64,
        #[arg(long, default_value_t = 1e8)]
        grid_max: f64,
        #[arg(long, default_value_t = 200_001)]
        points: usize,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Compute { p, q, measures, smooth, format, input_format } => {
            cmd_compute(&p, &q, &measures, smooth, format, input_format)
        }
        Command::Audit { seed, pairs, n_min, n_max, skew, chains, out } => {
            cmd_audit(seed, pairs, n_min, n_max, skew, &chains, out.as_deref())
        }
        Command::Bounds { ratio, grid_min, grid_max, points, out } => {
            cmd_bounds(&ratio, grid_min, grid_max, points, out.as_deref())
        }
    }
}

// -- compute -------------------------------------------------------------

fn cmd_compute(
    p_path: &std::path::Path,
    q_path: &std::path::Path,
    selection: &str,
    smooth: f64,
    format: OutputFormat,
    input_format: WeightFormat,
) -> Result<ExitCode, String> {
    let load = |path: &std::path::Path| -> Result<ProbabilityDistribution, String> {
        let raw = ingest::read_weights(path, input_format)
            .map_err(|e| format!("{}: {e}", path.display()))?;
        ProbabilityDistribution::normalized(&raw, smooth)
            .map_err(|e| format!("{}: {e}", path.display()))
    };
    let p = load(p_path)?;
    let q = load(q_path)?;
    if p.n() != q.n() {
        return Err(format!(
            "{} has {} atoms but {} has {}",
            p_path.display(),
            p.n(),
            q_path.display(),
            q.n()
        ));
    }

    let selected = parse_measures(selection)?;
    let mut results = Vec::with_capacity(selected.len());
    for id in selected {
        let value = measures::evaluate(id, &p, &q).map_err(|e| e.to_string())?;
        results.push((id.key(), value.value));
    }

    match format {
        OutputFormat::Json => {
            let map: serde_json::Map<String, serde_json::Value> = results
                .iter()
                .map(|(key, value)| {
                    ((*key).to_string(), serde_json::Number::from_f64(*value).map_or(
                        serde_json::Value::Null,
                        serde_json::Value::Number,
                    ))
                })
                .collect();
            let mut text = serde_json::to_string_pretty(&serde_json::Value::Object(map))
                .expect("measure map serializes");
            text.push('\n');
            print!("{text}");
        }
        OutputFormat::Csv => {
            println!("measure,value");
            for (key, value) in results {
                println!("{key},{value:?}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_measures(selection: &str) -> Result<Vec<MeasureId>, String> {
    if selection.trim().eq_ignore_ascii_case("all") {
        return Ok(MeasureId::ALL.to_vec());
    }
    let mut out = Vec::new();
    for token in selection.split(',') {
        let id = MeasureId::parse(token)
            .ok_or_else(|| format!("unknown measure id '{}'", token.trim()))?;
        if !out.contains(&id) {
            out.push(id);
        }
    }
    if out.is_empty() {
        return Err("empty measure selection".to_string());
    }
    Ok(out)
}

// -- audit ---------------------------------------------------------------

fn cmd_audit(
    seed: u64,
    pairs: u64,
    n_min: usize,
    n_max: usize,
    skew: f64,
    chain_selection: &str,
    out: Option<&std::path::Path>,
) -> Result<ExitCode, String> {
    if pairs == 0 {
        return Err("--pairs must be at least 1".to_string());
    }
    let sampler = PairSampler::new(seed, (n_min, n_max), skew).map_err(|e| e.to_string())?;
    let selected = parse_chains(chain_selection)?;

    struct Tally {
        min_slack: f64,
        violations: Vec<ViolationRecord>,
    }
    let mut tallies: Vec<Tally> = selected
        .iter()
        .map(|_| Tally { min_slack: f64::INFINITY, violations: Vec::new() })
        .collect();

    for index in 0..pairs {
        let (p, q) = sampler.pair(index);
        let base = BaseMeasures::compute(&p, &q).map_err(|e| e.to_string())?;
        for (chain, tally) in selected.iter().zip(tallies.iter_mut()) {
            let outcome = chain.check(&base);
            tally.min_slack = tally.min_slack.min(outcome.min_slack);
            for v in outcome.violations {
                tally.violations.push(ViolationRecord {
                    pair: index,
                    chain: chain.id.to_string(),
                    link: v.link,
                    lhs: v.lhs,
                    rhs: v.rhs,
                    slack: v.slack,
                });
            }
        }
    }

    let mut report = Report::new(Config {
        command: "audit".to_string(),
        seed: Some(seed),
        pairs: Some(pairs),
        n_min: Some(n_min),
        n_max: Some(n_max),
        skew: Some(skew),
        chains: Some(selected.iter().map(|c| c.id.to_string()).collect()),
        ..Config::empty("audit")
    });
    let mut total_violations = 0usize;
    for (chain, tally) in selected.iter().zip(tallies) {
        total_violations += tally.violations.len();
        eprintln!(
            "{}: {} pairs, min slack {:e}, {} violation(s)",
            chain.id,
            pairs,
            tally.min_slack,
            tally.violations.len()
        );
        report.chains.push(ChainReport {
            id: chain.id.to_string(),
            pairs,
            min_slack: tally.min_slack,
            violations: tally.violations,
        });
    }

    emit(&report, out)?;
    Ok(if total_violations == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn parse_chains(selection: &str) -> Result<Vec<Chain>, String> {
    if selection.trim().eq_ignore_ascii_case("all") {
        return Ok(chains::chain_definitions());
    }
    let names: Vec<String> = selection.split(',').map(|s| s.to_string()).collect();
    chains::select_chains(&names).map_err(|unknown| format!("unknown chain id '{unknown}'"))
}

// -- bounds --------------------------------------------------------------

fn cmd_bounds(
    ratio_selection: &str,
    grid_min: f64,
    grid_max: f64,
    points: usize,
    out: Option<&std::path::Path>,
) -> Result<ExitCode, String> {
    let bounds_ok = grid_min.is_finite() && grid_max.is_finite() && grid_min > 0.0 && grid_max > grid_min;
    if !bounds_ok {
        return Err("grid bounds must satisfy 0 < grid-min < grid-max".to_string());
    }
    if points < 3 {
        return Err("--points must be at least 3".to_string());
    }
    let grid = GridSpec { x_min: grid_min, x_max: grid_max, points, ..GridSpec::default() };
    let selected = parse_ratios(ratio_selection)?;

    let mut report = Report::new(Config {
        command: "bounds".to_string(),
        ratios: Some(
            selected
                .iter()
                .map(|f| format!("{}/{}", f.numerator.key(), f.denominator.key()))
                .collect(),
        ),
        grid: Some(grid),
        ..Config::empty("bounds")
    });

    let mut all_verified = true;
    for fixture in &selected {
        let cert = certify_fixture(fixture, &grid).map_err(|e| e.to_string())?;
        all_verified &= cert.verified;
        eprintln!(
            "{}/{}: {} {:.9} at x = {:.9} [{}]",
            cert.numerator,
            cert.denominator,
            cert.kind.key(),
            cert.estimate,
            cert.attaining_x,
            if cert.verified { "verified" } else { "NOT verified" }
        );
        report.certificates.push(CertificateReport::from(&cert));
    }

    emit(&report, out)?;
    Ok(if all_verified { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn parse_ratios(selection: &str) -> Result<Vec<ConstantFixture>, String> {
    let table = constant_fixtures();
    if selection.trim().eq_ignore_ascii_case("all") {
        return Ok(table);
    }
    let mut out = Vec::new();
    for token in selection.split(',') {
        let token = token.trim();
        let (num, den) = token
            .split_once('/')
            .ok_or_else(|| format!("ratio '{token}' is not of the form NUM/DEN"))?;
        let num = CurvatureSource::parse(num).ok_or_else(|| format!("unknown ratio id '{token}'"))?;
        let den = CurvatureSource::parse(den).ok_or_else(|| format!("unknown ratio id '{token}'"))?;
        let fixture = table
            .iter()
            .find(|f| f.numerator == num && f.denominator == den)
            .ok_or_else(|| format!("ratio '{token}' is not in the fixture table"))?;
        out.push(*fixture);
    }
    Ok(out)
}

// -- shared --------------------------------------------------------------

fn emit(report: &Report, out: Option<&std::path::Path>) -> Result<(), String> {
    let text = report.to_json();
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
