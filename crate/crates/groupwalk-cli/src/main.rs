//! groupwalk: hitting and cover times for random walks on finite groups.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use groupwalk::cover::{cover_report, CoverOptions};
use groupwalk::error::{Error, Result};
use groupwalk::group::{validate_irreps, FiniteGroup, IrrepSet};
use groupwalk::oracle::{default_step_cap, empirical_cover};
use groupwalk::report::{
    hitting_csv, simulation_csv, to_json, volume_csv, HitReport, SimulationJson, VolumeReport,
};
use groupwalk::solver::solve_hitting;
use groupwalk::spectral::{first_return, StepDistribution};

mod reproduce;

#[derive(Parser)]
#[command(
    name = "groupwalk",
    about = "Hitting and cover times for random walks on finite groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct WalkArgs {
    /// Group spec: cyclic:<n> | product:<n1>,<n2>,... | hypercube:<m> |
    /// torus:<n>^<m> | table:<path>
    #[arg(long)]
    group: String,
    /// Distribution spec: uniform-generators | file:<path>
    #[arg(long)]
    dist: String,
    /// Irrep file (JSON) for table groups
    #[arg(long)]
    irreps: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the exact hitting-time profile h(g) = E_e[tau_g]
    Hit {
        #[command(flatten)]
        walk: WalkArgs,
        /// Solver: auto | abelian | general | solve
        #[arg(long, default_value = "auto")]
        method: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate the cover time via the selected estimators
    Cover {
        #[command(flatten)]
        walk: WalkArgs,
        /// Comma-separated estimators: fernique,matthews,gp,empirical
        #[arg(long, default_value = "fernique,matthews")]
        estimators: String,
        /// Monte Carlo trials for the empirical estimator
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Gaussian-process samples for the gp estimator
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// RNG seed; required when gp or empirical estimators run
        #[arg(long)]
        seed: Option<u64>,
        /// Per-trial step cap (default 10^6 * |G|)
        #[arg(long)]
        step_cap: Option<u64>,
        /// Attach the volume-growth curve to the report
        #[arg(long)]
        include_volume: bool,
        /// Attach the greedy packing table to the report
        #[arg(long)]
        include_packing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the volume-growth curve of the commute metric
    Volume {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate the walk and report empirical cover statistics
    Simulate {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        step_cap: Option<u64>,
        /// Attach per-trial cover steps to the JSON report
        #[arg(long)]
        include_samples: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a group spec and optionally an irrep set or distribution
    Validate {
        #[arg(long)]
        group: String,
        #[arg(long)]
        irreps: Option<PathBuf>,
        #[arg(long)]
        dist: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run a walk family at preset sizes and emit its scaling table
    Reproduce {
        /// cycle | hypercube | torus
        family: reproduce::Family,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion)
                || e.exit_code() == 0 =>
        {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string();
            let first = first.lines().next().unwrap_or("invalid arguments");
            eprintln!("parse: {first}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}: {e}", e.category());
            let code = match e.category() {
                "parse" => 1,
                "validation" => 2,
                "reducible" => 3,
                "singular" => 4,
                _ => 5,
            };
            ExitCode::from(code)
        }
    }
}

fn load_walk(walk: &WalkArgs) -> Result<(FiniteGroup, StepDistribution, Option<IrrepSet>)> {
    let group = FiniteGroup::from_spec(&walk.group)?;
    let dist = StepDistribution::from_spec(&group, &walk.dist)?;
    let irreps = match &walk.irreps {
        Some(path) => {
            let set = IrrepSet::from_file(path)?;
            let report = validate_irreps(&group, &set);
            if let Some(err) = report.into_error() {
                return Err(err);
            }
            Some(set)
        }
        None => None,
    };
    Ok((group, dist, irreps))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None if text.ends_with('\n') => print!("{text}"),
        None => println!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Hit { walk, method, format, out } => {
            let (group, dist, irreps) = load_walk(&walk)?;
            let h = solve_hitting(&group, &dist, irreps.as_ref(), &method)?;
            let text = match format {
                Format::Json => to_json(&HitReport {
                    group: walk.group.clone(),
                    distribution: walk.dist.clone(),
                    method,
                    first_return: first_return(&group, &dist, &h),
                    h: h.values().to_vec(),
                }),
                Format::Csv => hitting_csv(&h),
            };
            emit(&out, &text)
        }
        Command::Cover {
            walk,
            estimators,
            trials,
            samples,
            seed,
            step_cap,
            include_volume,
            include_packing,
            out,
        } => {
            let names: Vec<String> = estimators
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            let stochastic = names.iter().any(|n| n == "gp" || n == "empirical");
            let seed = match (seed, stochastic) {
                (Some(s), _) => s,
                (None, false) => 0,
                (None, true) => {
                    return Err(Error::Parse(
                        "--seed is required when gp or empirical estimators run".into(),
                    ))
                }
            };
            let (group, dist, irreps) = load_walk(&walk)?;
            let options = CoverOptions {
                estimators: names,
                trials,
                samples,
                seed,
                step_cap,
                include_volume,
                include_packing,
            };
            let report = cover_report(&group, &dist, irreps.as_ref(), &options)?;
            emit(&out, &to_json(&report))
        }
        Command::Volume { walk, format, out } => {
            let (group, dist, irreps) = load_walk(&walk)?;
            let h = solve_hitting(&group, &dist, irreps.as_ref(), "auto")?;
            let vg = groupwalk::volume_growth(&groupwalk::commute_profile(&group, &h));
            let text = match format {
                Format::Json => to_json(&VolumeReport {
                    group: walk.group.clone(),
                    distribution: walk.dist.clone(),
                    volume_growth: vg.points(),
                }),
                Format::Csv => volume_csv(&vg),
            };
            emit(&out, &text)
        }
        Command::Simulate { walk, trials, seed, step_cap, include_samples, format, out } => {
            let (group, dist, _) = load_walk(&walk)?;
            let cap = step_cap.unwrap_or_else(|| default_step_cap(group.order()));
            let report = empirical_cover(&group, &dist, trials, seed, cap)?;
            if report.truncated {
                return Err(Error::Truncated(format!(
                    "simulation hit the step cap {cap} before covering"
                )));
            }
            let text = match format {
                Format::Json => to_json(&SimulationJson::from_report(&report, include_samples)),
                Format::Csv => simulation_csv(&report),
            };
            emit(&out, &text)
        }
        Command::Validate { group, irreps, dist, out } => {
            let parsed = FiniteGroup::parse_spec(&group)?;
            let mut checks = Vec::new();
            let group_report = parsed.validate();
            for c in &group_report.checks {
                checks.push(CheckJson {
                    subject: "group".into(),
                    name: c.name.into(),
                    pass: c.pass,
                    detail: c.detail.clone(),
                });
            }
            if group_report.pass() {
                if let Some(path) = &irreps {
                    let set = IrrepSet::from_file(path)?;
                    for c in validate_irreps(&parsed, &set).checks {
                        checks.push(CheckJson {
                            subject: "irreps".into(),
                            name: c.name.into(),
                            pass: c.pass,
                            detail: c.detail,
                        });
                    }
                }
                if let Some(spec) = &dist {
                    match StepDistribution::from_spec(&parsed, spec) {
                        Ok(d) => {
                            checks.push(CheckJson {
                                subject: "distribution".into(),
                                name: "measure".into(),
                                pass: true,
                                detail: None,
                            });
                            checks.push(CheckJson {
                                subject: "distribution".into(),
                                name: "irreducible".into(),
                                pass: d.is_irreducible(),
                                detail: (!d.is_irreducible())
                                    .then(|| "support does not generate the group".into()),
                            });
                            checks.push(CheckJson {
                                subject: "distribution".into(),
                                name: "reversible".into(),
                                pass: true,
                                detail: Some(format!("reversible = {}", d.is_reversible())),
                            });
                        }
                        Err(Error::Validation(msg)) => checks.push(CheckJson {
                            subject: "distribution".into(),
                            name: "measure".into(),
                            pass: false,
                            detail: Some(msg),
                        }),
                        Err(other) => return Err(other),
                    }
                }
            }
            let pass = checks.iter().all(|c| c.pass);
            let text = to_json(&ValidateReport { group, pass, checks });
            emit(&out, &text)?;
            if pass {
                Ok(())
            } else {
                Err(Error::Validation("validation failed; see report".into()))
            }
        }
        Command::Reproduce { family, seed, out } => {
            let text = reproduce::run(family, seed)?;
            emit(&out, &text)
        }
    }
}

#[derive(serde::Serialize)]
struct CheckJson {
    subject: String,
    name: String,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

#[derive(serde::Serialize)]
struct ValidateReport {
    group: String,
    pass: bool,
    checks: Vec<CheckJson>,
}
