//! `lcflat` — run identity checks, the acceptance suite and parameter sweeps.
//!
//! Exit codes: 0 pass, 1 identity failure, 2 usage or configuration error.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lcflat::verify::{
    default_suite, run_check_with, run_suite, sample_points, CheckSpec, Identity, Verdict,
};
use lcflat::zoo::spec::parse_real;
use lcflat::{Error, HopfParams, MetricSpec, Options};

use output::{write_output, Payload, SweepRow};

const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(name = "lcflat", version, about = "Levi-Civita Ricci curvature identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args)]
struct Common {
    /// Sample seed.
    #[arg(long, env = "LCFLAT_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the report here (atomically) instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Output format; defaults to json with --output, pretty otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Flip the sign of the mixed Levi-Civita symbols (mutation testing).
    #[arg(long, hide = true)]
    corrupt_christoffel_sign: bool,
}

impl Common {
    fn format(&self, fallback: Format) -> Format {
        self.format.unwrap_or(if self.output.is_some() { Format::Json } else { fallback })
    }

    fn options(&self) -> Options {
        Options {
            flip_mixed_christoffel: self.corrupt_christoffel_sign,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one identity check on one metric.
    Verify {
        #[arg(long)]
        identity: String,
        #[arg(long)]
        metric: String,
        #[arg(long, default_value_t = 50)]
        points: usize,
        /// Pass threshold; defaults to the identity's tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the full acceptance suite and write one aggregate report.
    Suite {
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Max residual per (a, b[, λ]) grid cell.
    Sweep {
        /// Comma-separated |a| values (`e`, `e^1.5`, decimals).
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<String>,
        /// Comma-separated |b| values.
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<String>,
        /// λ values; when given the metric is ω_λ, otherwise the
        /// Levi-Civita Ricci-flat metric.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<String>,
        #[arg(long, default_value = "lc-ricci-flat")]
        identity: String,
        #[arg(long, default_value_t = 50)]
        points: usize,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Print the sample points a check would use.
    DumpSamples {
        #[arg(long)]
        metric: String,
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Usage(String),
    Identity,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_check(identity: &str, metric: &str, points: usize, seed: u64, tol: Option<f64>) -> Result<CheckSpec, Failure> {
    let identity: Identity = identity.parse()?;
    let metric: MetricSpec = metric.parse()?;
    let mut c = CheckSpec::new(identity, metric, points, seed);
    if let Some(t) = tol {
        c = c.with_tol(t);
    }
    c.validate()?;
    Ok(c)
}

fn parse_list(field: &str, values: &[String]) -> Result<Vec<f64>, Failure> {
    values
        .iter()
        .map(|v| parse_real(field, v.trim()).map_err(Failure::from))
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify {
            identity,
            metric,
            points,
            tol,
            common,
        } => {
            let c = parse_check(&identity, &metric, points, common.seed, tol)?;
            let report = match run_check_with(&c, common.options()) {
                Ok(r) => r,
                Err(Error::TooManyFailures { failed, total }) => {
                    eprintln!("error: {failed} of {total} sample points failed to construct");
                    return Err(Failure::Identity);
                }
                Err(e) => return Err(e.into()),
            };
            write_output(&common, common.format(Format::Pretty), &Payload::Report(&report))?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Identity)
            }
        }
        Command::Suite { points, common } => {
            if points == 0 {
                return Err(Failure::Usage("invalid value for `points`: must be at least 1".into()));
            }
            let entries = default_suite(points, common.seed);
            let report = run_suite(&entries, common.seed, points, common.options());
            write_output(&common, common.format(Format::Pretty), &Payload::Suite(&report))?;
            if report.all_as_expected {
                Ok(())
            } else {
                Err(Failure::Identity)
            }
        }
        Command::Sweep {
            a,
            b,
            lambda,
            identity,
            points,
            tol,
            common,
        } => {
            let a_vals = parse_list("a", &a)?;
            let b_vals = parse_list("b", &b)?;
            let lambdas = parse_list("lambda", &lambda)?;
            for (field, vals) in [("a", &a_vals), ("b", &b_vals)] {
                if let Some(v) = vals.iter().find(|v| !(**v > 1.0)) {
                    return Err(Failure::Usage(format!(
                        "invalid value for `{field}`: {v} must exceed 1"
                    )));
                }
            }
            if let Some(l) = lambdas.iter().find(|l| !(**l > -1.0)) {
                return Err(Failure::Usage(format!("invalid value for `lambda`: {l} must exceed -1")));
            }
            let identity: Identity = identity.parse()?;
            let mut rows = Vec::new();
            for &av in &a_vals {
                for &bv in &b_vals {
                    if bv > av {
                        continue;
                    }
                    let hopf = HopfParams::real(av, bv)?;
                    let cells: Vec<(Option<f64>, MetricSpec)> = if lambdas.is_empty() {
                        vec![(None, MetricSpec::HopfLcFlat { hopf })]
                    } else {
                        lambdas
                            .iter()
                            .map(|&l| (Some(l), MetricSpec::HopfOmegaLambda { hopf, lambda: l }))
                            .collect()
                    };
                    for (l, metric) in cells {
                        let mut c = CheckSpec::new(identity, metric, points, common.seed);
                        if let Some(t) = tol {
                            c = c.with_tol(t);
                        }
                        c.validate()?;
                        let (max_residual, verdict) = match run_check_with(&c, common.options()) {
                            Ok(r) => (r.stats.max, r.verdict),
                            Err(Error::TooManyFailures { .. }) => (f64::NAN, Verdict::Fail),
                            Err(e) => return Err(e.into()),
                        };
                        rows.push(SweepRow {
                            a: av,
                            b: bv,
                            alpha: hopf.alpha(),
                            lambda: l,
                            identity: identity.tag().to_string(),
                            max_residual,
                            verdict,
                        });
                    }
                }
            }
            if rows.is_empty() {
                return Err(Failure::Usage(
                    "invalid grid: no cell satisfies |a| >= |b| > 1".into(),
                ));
            }
            let pass = rows.iter().all(|r| r.verdict == Verdict::Pass);
            let fmt = match (common.format, &common.output) {
                (Some(f), _) => f,
                (None, Some(_)) => Format::Csv,
                (None, None) => Format::Pretty,
            };
            write_output(&common, fmt, &Payload::Sweep(&rows))?;
            if pass {
                Ok(())
            } else {
                Err(Failure::Identity)
            }
        }
        Command::DumpSamples {
            metric,
            points,
            common,
        } => {
            let c = parse_check("key-relation", &metric, points, common.seed, None)?;
            let pts = sample_points(&c.domain(), points, common.seed);
            write_output(&common, common.format(Format::Pretty), &Payload::Samples(&pts))?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identity) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
