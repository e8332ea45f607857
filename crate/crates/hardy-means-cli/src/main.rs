//! `hardy-means`: evaluate generalized means, stream their averaging
//! operators, classify Hardy/weak-Hardy properties, probe the necessary
//! conditions numerically, estimate Hardy constants from below, and re-run
//! the whole quantitative reproduction suite.
//!
//! Exit codes: 0 success, 2 domain/parameter/parse errors (the message
//! names the offending input), 1 internal failure or a failed
//! reproduction item.

mod output;
mod reproduce;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hardy_means::estimate::{estimate_hardy_lower_bound, SequenceFamily};
use hardy_means::grammar::{parse_mean, parse_sequence};
use hardy_means::means::{eval, MeanSpec};
use hardy_means::probes::{
    d_sequence_check, log_growth_fit, mulholland_search, weak_hardy_exclusion_probe, LogGrowthFit,
};
use hardy_means::stream::{conjugate_transform, transform, SequenceSpec};
use hardy_means::Error;

use output::{constant_field, csv_field, csv_table, emit, fmt17, to_json};

#[derive(Parser)]
#[command(
    name = "hardy-means",
    version,
    about = "Generalized means, averaging operators, and Hardy-property analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ProbeKind {
    /// Evidence for the three conditions ruling out the weak-Hardy property.
    WeakHardyExclusion,
    /// Fit n·M(1,…,1/n) to C·(ln n)^D.
    LogGrowth,
    /// Nearly-increasing check on d_n = M(n/1,…,n/n).
    DSequence,
    /// Empirical domination search QA_f <= C·P_alpha.
    Mulholland,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a mean on the leading terms of a sequence.
    Eval {
        /// Mean description: power:<a>, gini:<p>,<q>, qa:power:<p>, qa:log, qa:paper-example
        #[arg(long)]
        mean: String,
        /// Sequence description: explicit:@file.csv, explicit:<v,..>, harmonic,
        /// geometric:<c>,<r>, powerlaw:<c>,<beta>, scaledsquares:<N>, truncharmonic:<N>,<delta>
        #[arg(long)]
        seq: String,
        /// Number of leading terms (defaults to the full explicit sequence).
        #[arg(long = "n-max")]
        n_max: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        output: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stream prefix means: n, a_n, M(a_1..a_n) per row.
    Transform {
        #[arg(long)]
        mean: String,
        #[arg(long)]
        seq: String,
        #[arg(long = "n-max")]
        n_max: u64,
        /// Conjugate the operator for l_p: outputs M(a_1^p..a_n^p)^(1/p); p > 1.
        #[arg(long = "conjugate-p")]
        conjugate_p: Option<f64>,
        #[arg(long, value_enum, default_value_t)]
        output: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form Hardy / weak-Hardy classification with constants.
    Classify {
        #[arg(long)]
        mean: String,
        #[arg(long, value_enum, default_value_t)]
        output: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numerical evidence probes.
    Probe {
        #[arg(long, value_enum)]
        kind: ProbeKind,
        #[arg(long)]
        mean: String,
        #[arg(long)]
        seq: Option<String>,
        /// Comma-separated condition-(3) exponents for weak-hardy-exclusion.
        #[arg(long = "s-grid", default_value = "1,2")]
        s_grid: String,
        /// Comma-separated domination exponents (< 1) for mulholland.
        #[arg(long = "alpha-grid")]
        alpha_grid: Option<String>,
        #[arg(long = "n-max")]
        n_max: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        trials: u32,
        /// Seed for randomized searches (required by mulholland).
        #[arg(long)]
        seed: Option<u64>,
        /// Entry range lo,hi for mulholland samples.
        #[arg(long, default_value = "0.001,1000")]
        range: String,
        /// Write the probe's (n, b_n) or (n, d_n) table to a CSV file.
        #[arg(long = "dump-csv")]
        dump_csv: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        output: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical Hardy-constant lower bounds over a sequence family.
    Estimate {
        #[arg(long)]
        mean: String,
        /// geometric_r, powerlaw_beta, or truncharmonic_N
        #[arg(long)]
        family: String,
        /// Comma-separated family parameters.
        #[arg(long)]
        grid: String,
        #[arg(long = "n-max", default_value_t = 10_000)]
        n_max: u64,
        /// Write the (param, ratio) curve to a CSV file.
        #[arg(long = "curve-csv")]
        curve_csv: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        output: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run the quantitative reproduction suite (pass/fail per item).
    Reproduce {
        /// Run a single named item (see --list).
        #[arg(long)]
        case: Option<String>,
        /// Filter the full suite to one named item.
        #[arg(long)]
        only: Option<String>,
        /// Override N for the counterexample case.
        #[arg(long = "N")]
        n_big: Option<u64>,
        /// Shrink window sizes for smoke runs (e.g. 0.1).
        #[arg(long = "n-scale", default_value_t = 1.0)]
        n_scale: f64,
        /// List the item names and exit.
        #[arg(long)]
        list: bool,
    },
}

enum CliError {
    Usage(Error),
    Io(std::io::Error),
    Failed(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
            CliError::Failed(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Failed(_) => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn parse_f64_list(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(Error::Parse(format!("{what}: invalid value '{t}'"))))
        })
        .collect()
}

fn leading_terms(seq: &SequenceSpec, n_max: Option<u64>) -> Result<Vec<f64>, CliError> {
    let n = match (n_max, seq.len()) {
        (Some(n), Some(len)) => n.min(len),
        (Some(n), None) => n,
        (None, Some(len)) => len,
        (None, None) => {
            return Err(CliError::Usage(Error::Parameter(format!(
                "sequence '{}' is generated; pass --n-max",
                seq.describe()
            ))))
        }
    };
    if n == 0 {
        return Err(CliError::Usage(Error::Parameter(
            "--n-max must be >= 1".into(),
        )));
    }
    let mut v = Vec::with_capacity(n as usize);
    for k in 1..=n {
        v.push(seq.term(k).map_err(CliError::Usage)?);
    }
    Ok(v)
}

#[derive(Serialize)]
struct EvalReport {
    mean: String,
    seq: String,
    n: u64,
    value: f64,
}

#[derive(Serialize)]
struct TransformRow {
    n: u64,
    a_n: f64,
    prefix_mean: f64,
}

#[derive(Serialize)]
struct TransformReport {
    mean: String,
    seq: String,
    n_max: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    conjugate_p: Option<f64>,
    /// Partial Hardy quotient over the window (plain transforms only).
    #[serde(skip_serializing_if = "Option::is_none")]
    window_quotient: Option<hardy_means::stream::HardyRatio>,
    rows: Vec<TransformRow>,
}

#[derive(Serialize)]
struct LogGrowthReport {
    mean: String,
    n_max: u64,
    #[serde(flatten)]
    fit: LogGrowthFit,
}

#[derive(Serialize)]
struct EstimateReport {
    mean: String,
    #[serde(flatten)]
    result: hardy_means::estimate::FamilySearchResult,
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Eval {
            mean,
            seq,
            n_max,
            output,
            out,
        } => {
            let mean = parse_mean(&mean)?;
            let seq = parse_sequence(&seq)?;
            let terms = leading_terms(&seq, n_max)?;
            let value = eval(&mean, &terms)?;
            let report = EvalReport {
                mean: mean.describe(),
                seq: seq.describe(),
                n: terms.len() as u64,
                value,
            };
            let doc = match output {
                OutputFormat::Json => to_json(&report),
                OutputFormat::Csv => csv_table(
                    "mean,seq,n,value",
                    [format!(
                        "{},{},{},{}",
                        csv_field(&report.mean),
                        csv_field(&report.seq),
                        report.n,
                        fmt17(report.value)
                    )],
                ),
            };
            emit(out.as_deref(), &doc)?;
            Ok(())
        }

        Command::Transform {
            mean,
            seq,
            n_max,
            conjugate_p,
            output,
            out,
        } => {
            let mean = parse_mean(&mean)?;
            let seq = parse_sequence(&seq)?;
            let values = match conjugate_p {
                Some(p) => conjugate_transform(&mean, p, &seq, n_max)?,
                None => transform(&mean, &seq, n_max)?,
            };
            let rows: Vec<TransformRow> = values
                .iter()
                .enumerate()
                .map(|(i, &m)| {
                    let n = (i + 1) as u64;
                    Ok(TransformRow {
                        n,
                        a_n: seq.term(n)?,
                        prefix_mean: m,
                    })
                })
                .collect::<Result<_, Error>>()?;
            let window_quotient = match conjugate_p {
                None => Some(hardy_means::stream::hardy_ratio(&mean, &seq, n_max)?),
                Some(_) => None,
            };
            let report = TransformReport {
                mean: mean.describe(),
                seq: seq.describe(),
                n_max,
                conjugate_p,
                window_quotient,
                rows,
            };
            let doc = match output {
                OutputFormat::Json => to_json(&report),
                OutputFormat::Csv => csv_table(
                    "n,a_n,prefix_mean",
                    report
                        .rows
                        .iter()
                        .map(|r| format!("{},{},{}", r.n, fmt17(r.a_n), fmt17(r.prefix_mean))),
                ),
            };
            emit(out.as_deref(), &doc)?;
            Ok(())
        }

        Command::Classify { mean, output, out } => {
            let mean = parse_mean(&mean)?;
            let report = hardy_means::classify::classify(&mean);
            let doc = match output {
                OutputFormat::Json => to_json(&report),
                OutputFormat::Csv => csv_table(
                    "mean,hardy,weak_hardy,hardy_constant,monotone,rationale",
                    [format!(
                        "{},{:?},{:?},{},{:?},{}",
                        csv_field(&report.mean),
                        report.hardy,
                        report.weak_hardy,
                        constant_field(&report.hardy_constant),
                        report.monotone,
                        csv_field(&report.rationale)
                    )
                    .to_lowercase()],
                ),
            };
            emit(out.as_deref(), &doc)?;
            Ok(())
        }

        Command::Probe {
            kind,
            mean,
            seq,
            s_grid,
            alpha_grid,
            n_max,
            trials,
            seed,
            range,
            dump_csv,
            output,
            out,
        } => {
            let mean = parse_mean(&mean)?;
            match kind {
                ProbeKind::WeakHardyExclusion => {
                    let seq_str = seq.ok_or_else(|| {
                        CliError::Usage(Error::Parameter(
                            "probe --kind weak-hardy-exclusion needs --seq".into(),
                        ))
                    })?;
                    let seq = parse_sequence(&seq_str)?;
                    let s_values = parse_f64_list(&s_grid, "--s-grid")?;
                    let report = weak_hardy_exclusion_probe(
                        &mean,
                        &seq,
                        &s_values,
                        n_max.unwrap_or(100_000),
                    )?;
                    let b_csv = || {
                        csv_table(
                            "n,b_n",
                            report
                                .ratio_sequence_sample
                                .iter()
                                .map(|&(n, b)| format!("{n},{}", fmt17(b))),
                        )
                    };
                    if let Some(path) = &dump_csv {
                        emit(Some(path), &b_csv())?;
                    }
                    let doc = match output {
                        OutputFormat::Json => to_json(&report),
                        OutputFormat::Csv => b_csv(),
                    };
                    emit(out.as_deref(), &doc)?;
                }
                ProbeKind::LogGrowth => {
                    let n_max = n_max.unwrap_or(1_000_000);
                    let fit = log_growth_fit(&mean, n_max)?;
                    let report = LogGrowthReport {
                        mean: mean.describe(),
                        n_max,
                        fit,
                    };
                    let doc = match output {
                        OutputFormat::Json => to_json(&report),
                        OutputFormat::Csv => csv_table(
                            "c,d,residual,window_lo,window_hi",
                            [format!(
                                "{},{},{},{},{}",
                                fmt17(fit.c),
                                fmt17(fit.d),
                                fmt17(fit.residual),
                                fit.window.0,
                                fit.window.1
                            )],
                        ),
                    };
                    emit(out.as_deref(), &doc)?;
                }
                ProbeKind::DSequence => {
                    let report = d_sequence_check(&mean, n_max.unwrap_or(300))?;
                    let d_csv = || {
                        csv_table(
                            "n,d_n",
                            report
                                .d
                                .iter()
                                .enumerate()
                                .map(|(i, &d)| format!("{},{}", i + 1, fmt17(d))),
                        )
                    };
                    if let Some(path) = &dump_csv {
                        emit(Some(path), &d_csv())?;
                    }
                    let doc = match output {
                        OutputFormat::Json => to_json(&report),
                        OutputFormat::Csv => d_csv(),
                    };
                    emit(out.as_deref(), &doc)?;
                }
                ProbeKind::Mulholland => {
                    let gen = match &mean {
                        MeanSpec::QuasiArithmetic(gen) => gen.clone(),
                        other => {
                            return Err(CliError::Usage(Error::Parameter(format!(
                                "probe --kind mulholland needs a qa: mean, got '{}'",
                                other.describe()
                            ))))
                        }
                    };
                    let alphas = parse_f64_list(
                        &alpha_grid.ok_or_else(|| {
                            CliError::Usage(Error::Parameter(
                                "probe --kind mulholland needs --alpha-grid".into(),
                            ))
                        })?,
                        "--alpha-grid",
                    )?;
                    let seed = seed.ok_or_else(|| {
                        CliError::Usage(Error::Parameter(
                            "randomized searches need an explicit --seed".into(),
                        ))
                    })?;
                    let range_vals = parse_f64_list(&range, "--range")?;
                    if range_vals.len() != 2 {
                        return Err(CliError::Usage(Error::Parameter(format!(
                            "--range needs 'lo,hi', got '{range}'"
                        ))));
                    }
                    let report = mulholland_search(
                        &gen,
                        &alphas,
                        trials,
                        seed,
                        (range_vals[0], range_vals[1]),
                    )?;
                    let doc = match output {
                        OutputFormat::Json => to_json(&report),
                        OutputFormat::Csv => csv_table(
                            "alpha,empirical_c",
                            report.per_alpha.iter().map(|row| {
                                format!("{},{}", fmt17(row.alpha), fmt17(row.empirical_c))
                            }),
                        ),
                    };
                    emit(out.as_deref(), &doc)?;
                }
            }
            Ok(())
        }

        Command::Estimate {
            mean,
            family,
            grid,
            n_max,
            curve_csv,
            output,
            out,
        } => {
            let mean = parse_mean(&mean)?;
            let family: SequenceFamily = family.parse()?;
            let params = parse_f64_list(&grid, "--grid")?;
            let result = estimate_hardy_lower_bound(&mean, family, &params, n_max)?;
            let curve = || {
                csv_table(
                    "param,ratio",
                    result
                        .ratio_curve
                        .iter()
                        .map(|&(p, r)| format!("{},{}", fmt17(p), fmt17(r))),
                )
            };
            if let Some(path) = &curve_csv {
                emit(Some(path), &curve())?;
            }
            let doc = match output {
                OutputFormat::Json => to_json(&EstimateReport {
                    mean: mean.describe(),
                    result,
                }),
                OutputFormat::Csv => curve(),
            };
            emit(out.as_deref(), &doc)?;
            Ok(())
        }

        Command::Reproduce {
            case,
            only,
            n_big,
            n_scale,
            list,
        } => {
            if list {
                for name in reproduce::ITEM_NAMES {
                    println!("{name}");
                }
                return Ok(());
            }
            if !(n_scale > 0.0 && n_scale.is_finite()) {
                return Err(CliError::Usage(Error::Parameter(format!(
                    "--n-scale must be a positive real, got {n_scale}"
                ))));
            }
            let selected: Vec<&str> = match (&case, &only) {
                (Some(c), _) => vec![c.as_str()],
                (None, Some(o)) => vec![o.as_str()],
                (None, None) => reproduce::ITEM_NAMES.to_vec(),
            };
            let mut failures = 0usize;
            for name in selected {
                let item = reproduce::run_item(name, n_scale, n_big)?;
                println!(
                    "{}: {} — {}",
                    item.name,
                    if item.passed { "PASS" } else { "FAIL" },
                    item.detail
                );
                if !item.passed {
                    failures += 1;
                }
            }
            if failures > 0 {
                return Err(CliError::Failed(format!(
                    "{failures} reproduction item(s) failed"
                )));
            }
            Ok(())
        }
    }
}
