//! Command-line surface for the value-of-information engine.
//!
//! Exit codes: 0 success, 1 model validation failure, 2 usage errors,
//! 3 computation errors (limits exceeded and the like). Errors go to
//! stderr with machine-readable codes.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use voi_core::{
    clt_subset_voi, exact_subset_voi, myopic_ranking, nonmyopic_step, simulate, validate_model,
    DiagnosisModel, EvidenceGroup, EvidenceVariable, MethodChoice, Observations, PolicyKind,
    RecommendedAction, SetCost, SimSettings, SubsetConfig, UtilityModel, VoiError, VoiResult,
};

const SCHEMA_VERSION: u32 = 1;

/// On-disk model document: a schema version plus the diagnosis model.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    schema_version: u32,
    prior: f64,
    utility: UtilityModel,
    evidence: Vec<EvidenceVariable>,
    #[serde(default)]
    groups: Vec<EvidenceGroup>,
    #[serde(default)]
    set_costs: Vec<SetCost>,
}

impl From<ModelFile> for DiagnosisModel {
    fn from(f: ModelFile) -> Self {
        DiagnosisModel {
            prior: f.prior,
            utility: f.utility,
            evidence: f.evidence,
            groups: f.groups,
            set_costs: f.set_costs,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "voi",
    about = "Value-of-information analysis for diagnosis models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Path to a JSON model file.
    model: PathBuf,
    /// Condition on an observed outcome, `id=outcome`; repeatable.
    #[arg(long = "observe", value_name = "ID=OUTCOME")]
    observe: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check every model invariant and report violations.
    Validate { model: PathBuf },
    /// Rank unobserved variables by myopic net value of information.
    Myopic {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Value of information of observing a set of variables before acting.
    Subset {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated variable ids.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
        #[arg(long, default_value = "exact")]
        method: MethodChoice,
        /// Enumeration limit in binary-equivalent variables.
        #[arg(long, default_value_t = 20)]
        enum_limit: u32,
    },
    /// Run the nonmyopic prefix scan and print its recommendation.
    Plan {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value = "auto")]
        method: MethodChoice,
        #[arg(long, default_value_t = 20)]
        enum_limit: u32,
    },
    /// Exact versus CLT tails and VI over growing prefixes of a set.
    Compare {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
        /// Largest prefix length to evaluate.
        #[arg(long = "max-m")]
        max_m: Option<usize>,
        #[arg(long, default_value_t = 20)]
        enum_limit: u32,
    },
    /// Monte Carlo policy comparison on synthetic cases.
    Simulate {
        model: PathBuf,
        /// Comma-separated policies: act-now, myopic, nonmyopic.
        #[arg(long, value_delimiter = ',', required = true)]
        policies: Vec<PolicyKind>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "auto")]
        method: MethodChoice,
        /// Also write the report as CSV to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

enum CliError {
    Validation(Vec<String>),
    Usage(String),
    Compute(VoiError),
}

impl CliError {
    fn report(&self) -> ExitCode {
        match self {
            CliError::Validation(violations) => {
                for v in violations {
                    eprintln!("error[E_VALIDATION]: {v}");
                }
                ExitCode::from(1)
            }
            CliError::Usage(msg) => {
                eprintln!("error[E_USAGE]: {msg}");
                ExitCode::from(2)
            }
            CliError::Compute(err) => {
                eprintln!("error[E_COMPUTE]: {err}");
                ExitCode::from(3)
            }
        }
    }
}

impl From<VoiError> for CliError {
    fn from(err: VoiError) -> Self {
        match err {
            VoiError::UnknownVariable(_)
            | VoiError::UnknownOutcome { .. }
            | VoiError::AlreadyObserved(_) => CliError::Usage(err.to_string()),
            other => CliError::Compute(other),
        }
    }
}

fn load_model(path: &PathBuf) -> Result<DiagnosisModel, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let file: ModelFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(vec![format!("model file does not parse: {e}")]))?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(CliError::Validation(vec![format!(
            "unsupported schema_version {} (expected {SCHEMA_VERSION})",
            file.schema_version
        )]));
    }
    Ok(file.into())
}

fn load_valid_model(path: &PathBuf) -> Result<DiagnosisModel, CliError> {
    let model = load_model(path)?;
    let report = validate_model(&model);
    if !report.is_valid() {
        return Err(CliError::Validation(report.violations));
    }
    Ok(model)
}

fn parse_observations(flags: &[String]) -> Result<Observations, CliError> {
    let mut obs = BTreeMap::new();
    for flag in flags {
        let (id, outcome) = flag.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("--observe expects `id=outcome`, got `{flag}`"))
        })?;
        obs.insert(id.to_string(), outcome.to_string());
    }
    Ok(obs)
}

fn print_voi_result(r: &VoiResult) {
    println!("method,{}", r.method);
    println!("eu_phi,{}", r.eu_phi);
    println!("eu_obs,{}", r.eu_obs);
    println!("ce_phi,{}", r.ce_phi);
    println!("ce_obs,{}", r.ce_obs);
    println!("vi,{}", r.vi);
    println!("cost,{}", r.cost);
    println!("nvi,{}", r.nvi);
    if let Some(t) = r.tail_h {
        println!("tail_h,{t}");
    }
    if let Some(t) = r.tail_not_h {
        println!("tail_not_h,{t}");
    }
    for w in &r.warnings {
        println!("warning,{w}");
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { model } => {
            let model = load_model(&model)?;
            let report = validate_model(&model);
            if report.is_valid() {
                println!("ok: model passes validation");
                Ok(())
            } else {
                for v in &report.violations {
                    println!("violation: {v}");
                }
                Err(CliError::Validation(report.violations))
            }
        }
        Command::Myopic { common } => {
            let model = load_valid_model(&common.model)?;
            let obs = parse_observations(&common.observe)?;
            let ranking = myopic_ranking(&model, &obs)?;
            println!("id,vi,cost,nvi");
            for (id, r) in &ranking {
                println!("{id},{},{},{}", r.vi, r.cost, r.nvi);
            }
            Ok(())
        }
        Command::Subset {
            common,
            set,
            method,
            enum_limit,
        } => {
            let model = load_valid_model(&common.model)?;
            let obs = parse_observations(&common.observe)?;
            let config = SubsetConfig {
                enumeration_limit: enum_limit,
                ..SubsetConfig::default()
            };
            let result = match method {
                MethodChoice::Exact => exact_subset_voi(&model, &obs, &set, &config)?,
                MethodChoice::Clt => clt_subset_voi(&model, &obs, &set, &config)?,
                MethodChoice::Auto => match exact_subset_voi(&model, &obs, &set, &config) {
                    Err(VoiError::EnumerationLimitExceeded { .. }) => {
                        clt_subset_voi(&model, &obs, &set, &config)?
                    }
                    other => other?,
                },
            };
            print_voi_result(&result);
            Ok(())
        }
        Command::Plan {
            common,
            method,
            enum_limit,
        } => {
            let model = load_valid_model(&common.model)?;
            let obs = parse_observations(&common.observe)?;
            let config = SubsetConfig {
                enumeration_limit: enum_limit,
                ..SubsetConfig::default()
            };
            let rec = nonmyopic_step(&model, &obs, method, &config)?;
            println!("m,set,vi,cost,nvi");
            for row in &rec.scan {
                println!(
                    "{},{},{},{},{}",
                    row.m,
                    row.set.join("+"),
                    row.vi,
                    row.cost,
                    row.nvi
                );
            }
            match &rec.action {
                RecommendedAction::Observe(id) => println!("recommendation,observe,{id}"),
                RecommendedAction::ActNow => println!("recommendation,act-now,"),
            }
            Ok(())
        }
        Command::Compare {
            common,
            set,
            max_m,
            enum_limit,
        } => {
            let model = load_valid_model(&common.model)?;
            let obs = parse_observations(&common.observe)?;
            let config = SubsetConfig {
                enumeration_limit: enum_limit,
                ..SubsetConfig::default()
            };
            let upper = max_m.unwrap_or(set.len()).min(set.len());
            println!("m,tail_h_exact,tail_h_clt,tail_not_h_exact,tail_not_h_clt,vi_exact,vi_clt");
            for m in 1..=upper {
                let prefix = &set[..m];
                let exact = exact_subset_voi(&model, &obs, prefix, &config)?;
                let clt = clt_subset_voi(&model, &obs, prefix, &config)?;
                println!(
                    "{m},{},{},{},{},{},{}",
                    exact.tail_h.unwrap_or(f64::NAN),
                    clt.tail_h.unwrap_or(f64::NAN),
                    exact.tail_not_h.unwrap_or(f64::NAN),
                    clt.tail_not_h.unwrap_or(f64::NAN),
                    exact.vi,
                    clt.vi
                );
            }
            Ok(())
        }
        Command::Simulate {
            model,
            policies,
            trials,
            seed,
            method,
            csv,
        } => {
            if trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".to_string()));
            }
            let model = load_valid_model(&model)?;
            let settings = SimSettings {
                method,
                subset: SubsetConfig::default(),
            };
            let report = simulate(&model, &policies, trials, seed, &settings)?;
            let mut csv_text = String::from(
                "policy,trials,mean_net_value,std_dev,std_error,mean_observations,mean_cost,seed,model_digest\n",
            );
            for s in &report.policies {
                csv_text.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    s.policy,
                    s.trials,
                    s.mean_net_value,
                    s.std_dev,
                    s.std_error,
                    s.mean_observations,
                    s.mean_cost,
                    report.seed,
                    report.model_digest
                ));
            }
            print!("{csv_text}");
            if let Some(path) = csv {
                std::fs::write(&path, csv_text).map_err(|e| {
                    CliError::Usage(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => err.report(),
    }
}
