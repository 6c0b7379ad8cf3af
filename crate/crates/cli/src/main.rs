//! `psc`: decides whether cohomogeneity one group diagrams and homogeneous
//! spaces admit invariant metrics of positive scalar curvature, names the
//! flat type when they do not, and builds and certifies the warped invariant
//! metrics.
//!
//! Exit codes: `0` success (classification verdicts of either sign count as
//! success), `1` validation or parameter error, `2` numerical certificate
//! failure, `3` parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use psc_core::classify::{classify_cohom1, classify_homogeneous, effective_reduction, Tolerances};
use psc_core::io::{parse_classify_input, verdict_to_json, ClassifyInput};
use psc_core::warp::{
    build_gz_profile, build_modified_profile, fd_oracle, profile_csv, smooth_profile,
    verify_profile,
};

const EXIT_INVALID: u8 = 1;
const EXIT_CERTIFICATE: u8 = 2;
const EXIT_PARSE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "psc",
    version,
    about = "Positive scalar curvature on cohomogeneity one manifolds and homogeneous spaces",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a group diagram or homogeneous pair from a JSON file
    Classify {
        /// input JSON file
        #[arg(long = "in")]
        input: PathBuf,
        /// output file for the verdict JSON (stdout when omitted)
        #[arg(long = "out")]
        output: Option<PathBuf>,
        /// subspace rank tolerance
        #[arg(long, default_value_t = psc_core::lie::DEFAULT_RANK_TOL)]
        rank_tol: f64,
        /// algebra identity tolerance
        #[arg(long, default_value_t = psc_core::lie::DEFAULT_IDENTITY_TOL)]
        identity_tol: f64,
    },
    /// Build or verify warped invariant metrics
    Metric {
        #[command(subcommand)]
        command: MetricCommand,
    },
    /// List the built-in catalog
    Catalog {
        /// machine-readable listing
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum MetricCommand {
    /// Build a profile and emit CSV samples
    Build {
        #[command(flatten)]
        params: MetricParams,
        /// CSV output file (stdout when omitted)
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// Build a profile and certify its curvature on a grid
    Verify {
        #[command(flatten)]
        params: MetricParams,
        /// require uniform positivity instead of non-negativity
        #[arg(long)]
        require_uniform: bool,
        /// certification tolerance (default 1e-6; PSC_TOL overrides)
        #[arg(long)]
        tol: Option<f64>,
        /// report output file (stdout when omitted)
        #[arg(long = "out")]
        output: Option<PathBuf>,
        /// also write CSV samples here
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Variant {
    /// sine-then-constant construction (non-negative Ricci)
    Gz,
    /// concave rational tails (uniformly positive scalar curvature)
    Modified,
}

#[derive(Args)]
struct MetricParams {
    #[arg(long, value_enum)]
    variant: Variant,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    c: f64,
    #[arg(long)]
    d0: usize,
    #[arg(long)]
    d1: usize,
    #[arg(long)]
    d2: usize,
    /// early-stop offset of the modified construction (default 0.05)
    #[arg(long)]
    epsilon: Option<f64>,
    /// smoothing window half-width (default epsilon/5)
    #[arg(long)]
    delta: Option<f64>,
    /// evaluation horizon (default 3c)
    #[arg(long)]
    tmax: Option<f64>,
    /// grid size (default 4096)
    #[arg(long, default_value_t = 4096)]
    grid: usize,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            message: msg.into(),
        }
    }
    fn parse(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_PARSE,
            message: msg.into(),
        }
    }
    fn certificate(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_CERTIFICATE,
            message: msg.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(EXIT_INVALID)
                }
            };
        }
    };
    let result = match cli.command {
        Command::Classify {
            input,
            output,
            rank_tol,
            identity_tol,
        } => cmd_classify(&input, output.as_deref(), rank_tol, identity_tol),
        Command::Metric { command } => match command {
            MetricCommand::Build { params, output } => cmd_metric_build(&params, output.as_deref()),
            MetricCommand::Verify {
                params,
                require_uniform,
                tol,
                output,
                csv,
            } => cmd_metric_verify(
                &params,
                require_uniform,
                tol,
                output.as_deref(),
                csv.as_deref(),
            ),
        },
        Command::Catalog { json } => cmd_catalog(json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("psc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn write_output(path: Option<&std::path::Path>, content: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", p.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            // a closed pipe downstream is not our failure
            match writeln!(stdout, "{content}") {
                Ok(()) => Ok(()),
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                Err(e) => Err(Failure::invalid(format!("cannot write to stdout: {e}"))),
            }
        }
    }
}

fn cmd_classify(
    input: &std::path::Path,
    output: Option<&std::path::Path>,
    rank_tol: f64,
    identity_tol: f64,
) -> Result<(), Failure> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", input.display())))?;
    let parsed = parse_classify_input(&text).map_err(|e| Failure::parse(e.to_string()))?;
    let tols = Tolerances {
        identity: identity_tol,
        rank: rank_tol,
    };
    let verdict = match parsed {
        ClassifyInput::Pair(p) => {
            classify_homogeneous(&p, tols).map_err(|e| Failure::invalid(e.to_string()))?
        }
        ClassifyInput::Diagram(d) => {
            // tori with finite principal isotropy act with a kernel; quotient
            // it away before validating
            let d = if d.algebra.is_abelian(tols.rank) && d.h.dim() == 0 && !d.h.is_trivial() {
                effective_reduction(&d, tols).map_err(|e| Failure::invalid(e.to_string()))?
            } else {
                d
            };
            classify_cohom1(&d, tols).map_err(|e| Failure::invalid(e.to_string()))?
        }
    };
    let json = serde_json::to_string_pretty(&verdict_to_json(&verdict)).expect("verdict json");
    write_output(output, &json)
}

struct BuiltProfile {
    profile: psc_core::Profile,
    grid: usize,
}

fn build_from_params(params: &MetricParams) -> Result<BuiltProfile, Failure> {
    let epsilon = params.epsilon.unwrap_or(0.05);
    let delta = params.delta.unwrap_or(epsilon / 5.0);
    let t_max = params.tmax.unwrap_or(3.0 * params.c);
    if params.grid < 2 {
        return Err(Failure::invalid("grid must be at least 2"));
    }
    let profile = match params.variant {
        Variant::Gz => build_gz_profile(
            params.a, params.b, params.c, params.d0, params.d1, params.d2, t_max,
        ),
        Variant::Modified => build_modified_profile(
            params.a, params.b, params.c, params.d0, params.d1, params.d2, epsilon, t_max,
        ),
    }
    .map_err(|e| Failure::invalid(e.to_string()))?;
    let profile = smooth_profile(&profile, delta).map_err(|e| Failure::invalid(e.to_string()))?;
    Ok(BuiltProfile {
        profile,
        grid: params.grid,
    })
}

fn cmd_metric_build(
    params: &MetricParams,
    output: Option<&std::path::Path>,
) -> Result<(), Failure> {
    let built = build_from_params(params)?;
    let csv =
        profile_csv(&built.profile, built.grid).map_err(|e| Failure::invalid(e.to_string()))?;
    write_output(output, &csv)
}

fn default_tol(explicit: Option<f64>) -> f64 {
    if let Some(t) = explicit {
        return t;
    }
    if let Ok(env) = std::env::var("PSC_TOL") {
        if let Ok(v) = env.parse::<f64>() {
            if v > 0.0 {
                return v;
            }
        }
    }
    1e-6
}

fn cmd_metric_verify(
    params: &MetricParams,
    require_uniform: bool,
    tol: Option<f64>,
    output: Option<&std::path::Path>,
    csv: Option<&std::path::Path>,
) -> Result<(), Failure> {
    let tol = default_tol(tol);
    let built = build_from_params(params)?;
    let report = verify_profile(&built.profile, built.grid, tol)
        .map_err(|e| Failure::invalid(e.to_string()))?;
    let oracle =
        fd_oracle(&built.profile, built.grid).map_err(|e| Failure::invalid(e.to_string()))?;
    if let Some(path) = csv {
        let samples =
            profile_csv(&built.profile, built.grid).map_err(|e| Failure::invalid(e.to_string()))?;
        std::fs::write(path, samples)
            .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    let json = serde_json::json!({ "curvature": report, "oracle": oracle });
    write_output(
        output,
        &serde_json::to_string_pretty(&json).expect("report json"),
    )?;

    let property_ok = if require_uniform {
        report.uniformly_positive
    } else {
        report.non_negative
    };
    if !property_ok {
        return Err(Failure::certificate(format!(
            "requested curvature property fails: uniform lower bound {:.6e} against tolerance {tol:.1e}",
            report.uniform_lower_bound
        )));
    }
    if !report.f_in_unit_interval || !report.ordering_ok {
        return Err(Failure::certificate(
            "profile shape audit failed (f range or ordering)",
        ));
    }
    if !oracle.fd_pass || !oracle.oracle_pass {
        return Err(Failure::certificate(format!(
            "independent oracle disagreement: fd errors ({:.3e}, {:.3e}), warped-product radial {:.3e}",
            oracle.fd_max_err_d1, oracle.fd_max_err_d2, oracle.oracle_max_err_radial
        )));
    }
    Ok(())
}

fn cmd_catalog(json: bool) -> Result<(), Failure> {
    let names = psc_core::catalog::catalog_names();
    if json {
        let entries: Vec<serde_json::Value> = names
            .iter()
            .map(|(name, description)| serde_json::json!({ "name": name, "description": description }))
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&entries).expect("catalog json")
        );
    } else {
        for (name, description) in names {
            println!("{name:28} {description}");
        }
    }
    Ok(())
}
