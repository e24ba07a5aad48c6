//! Test-selection procedures: the myopic loop and the nonmyopic prefix-scan
//! approximation, plus a sequential policy driver.

use serde::Serialize;

use crate::model::{act_decision, posterior_odds, threshold, Action, DiagnosisModel, Observations};
use crate::myopic::{myopic_ranking, VoiResult};
use crate::subset::{clt_subset_voi, exact_subset_voi, SubsetConfig};
use crate::VoiError;

/// How subset values of information are computed during planning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    Exact,
    Clt,
    /// Exact enumeration while the instantiation count stays within the
    /// enumeration limit, CLT beyond it.
    Auto,
}

impl std::str::FromStr for MethodChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(MethodChoice::Exact),
            "clt" => Ok(MethodChoice::Clt),
            "auto" => Ok(MethodChoice::Auto),
            other => Err(format!(
                "unknown method `{other}` (expected exact|clt|auto)"
            )),
        }
    }
}

/// Information-gathering policies the simulator can compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyKind {
    ActNow,
    Myopic,
    Nonmyopic,
}

impl std::str::FromStr for PolicyKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "act-now" => Ok(PolicyKind::ActNow),
            "myopic" => Ok(PolicyKind::Myopic),
            "nonmyopic" => Ok(PolicyKind::Nonmyopic),
            other => Err(format!(
                "unknown policy `{other}` (expected act-now|myopic|nonmyopic)"
            )),
        }
    }
}

impl std::fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PolicyKind::ActNow => write!(f, "act-now"),
            PolicyKind::Myopic => write!(f, "myopic"),
            PolicyKind::Nonmyopic => write!(f, "nonmyopic"),
        }
    }
}

/// One row of the nonmyopic prefix scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    /// Prefix length.
    pub m: usize,
    /// The prefix set, in scan order.
    pub set: Vec<String>,
    pub vi: f64,
    pub cost: f64,
    pub nvi: f64,
}

/// What the planner recommends.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "variable")]
pub enum RecommendedAction {
    Observe(String),
    ActNow,
}

/// A planning recommendation with its supporting evaluation: the singleton
/// or prefix that triggered it, and for nonmyopic runs the full scan table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Recommendation {
    pub action: RecommendedAction,
    /// The evaluated set behind the recommendation and its result.
    pub supporting: Option<(Vec<String>, VoiResult)>,
    /// Full prefix-scan table (empty for myopic recommendations).
    pub scan: Vec<ScanRow>,
}

/// One myopic step: observe the best singleton when its net value of
/// information is positive, otherwise act now.
pub fn myopic_step(
    model: &DiagnosisModel,
    observations: &Observations,
) -> Result<Recommendation, VoiError> {
    let ranking = myopic_ranking(model, observations)?;
    match ranking.into_iter().next() {
        Some((id, result)) if result.nvi > 0.0 => Ok(Recommendation {
            action: RecommendedAction::Observe(id.clone()),
            supporting: Some((vec![id], result)),
            scan: Vec::new(),
        }),
        best => Ok(Recommendation {
            action: RecommendedAction::ActNow,
            supporting: best.map(|(id, r)| (vec![id], r)),
            scan: Vec::new(),
        }),
    }
}

fn subset_voi_by_method(
    model: &DiagnosisModel,
    observations: &Observations,
    set: &[String],
    method: MethodChoice,
    config: &SubsetConfig,
) -> Result<VoiResult, VoiError> {
    match method {
        MethodChoice::Exact => exact_subset_voi(model, observations, set, config),
        MethodChoice::Clt => clt_subset_voi(model, observations, set, config),
        MethodChoice::Auto => {
            let vars = crate::subset::effective_variables(model, set)?;
            let mut count: u128 = 1;
            for v in &vars {
                count = count.saturating_mul(v.outcomes.len() as u128);
            }
            if count <= 1u128 << config.enumeration_limit {
                exact_subset_voi(model, observations, set, config)
            } else {
                clt_subset_voi(model, observations, set, config)
            }
        }
    }
}

/// One nonmyopic step.
///
/// If some singleton has positive net value of information, it is
/// recommended directly. Otherwise the unobserved variables are ordered by
/// singleton NVI (descending, ties by id) and the net value of information
/// of every prefix of that ordering is computed; any positive prefix makes
/// the first-ranked variable cost effective to observe. The full scan table
/// is attached either way.
pub fn nonmyopic_step(
    model: &DiagnosisModel,
    observations: &Observations,
    method: MethodChoice,
    config: &SubsetConfig,
) -> Result<Recommendation, VoiError> {
    let ranking = myopic_ranking(model, observations)?;
    if let Some((id, result)) = ranking.first() {
        if result.nvi > 0.0 {
            return Ok(Recommendation {
                action: RecommendedAction::Observe(id.clone()),
                supporting: Some((vec![id.clone()], result.clone())),
                scan: Vec::new(),
            });
        }
    }

    let ordered: Vec<String> = ranking.iter().map(|(id, _)| id.clone()).collect();
    let mut scan = Vec::with_capacity(ordered.len());
    let mut trigger: Option<(Vec<String>, VoiResult)> = None;
    for m in 1..=ordered.len() {
        let prefix = ordered[..m].to_vec();
        let result = subset_voi_by_method(model, observations, &prefix, method, config)?;
        scan.push(ScanRow {
            m,
            set: prefix.clone(),
            vi: result.vi,
            cost: result.cost,
            nvi: result.nvi,
        });
        if result.nvi > 0.0 && trigger.is_none() {
            trigger = Some((prefix, result));
        }
    }

    match trigger {
        Some(supporting) => Ok(Recommendation {
            action: RecommendedAction::Observe(ordered[0].clone()),
            supporting: Some(supporting),
            scan,
        }),
        None => Ok(Recommendation {
            action: RecommendedAction::ActNow,
            supporting: None,
            scan,
        }),
    }
}

/// One observation made while running a policy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceStep {
    pub variable_id: String,
    pub outcome: String,
    /// Posterior odds after incorporating this observation.
    pub posterior_odds: f64,
}

/// The observation/decision history of one policy run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolicyTrace {
    pub steps: Vec<TraceStep>,
    pub terminal_action: Action,
    /// Sum of the observed variables' costs, in value units.
    pub observation_cost: f64,
}

/// Runs a policy to completion, pulling outcomes from `oracle` whenever the
/// policy observes a variable. Terminates in at most `n + 1` steps since
/// each observation consumes one variable.
pub fn run_policy<F>(
    model: &DiagnosisModel,
    policy: PolicyKind,
    mut oracle: F,
    method: MethodChoice,
    config: &SubsetConfig,
) -> Result<PolicyTrace, VoiError>
where
    F: FnMut(&str) -> Option<String>,
{
    let mut observations = Observations::new();
    let mut steps = Vec::new();
    let mut observation_cost = 0.0;
    loop {
        let recommendation = match policy {
            PolicyKind::ActNow => Recommendation {
                action: RecommendedAction::ActNow,
                supporting: None,
                scan: Vec::new(),
            },
            PolicyKind::Myopic => myopic_step(model, &observations)?,
            PolicyKind::Nonmyopic => nonmyopic_step(model, &observations, method, config)?,
        };
        match recommendation.action {
            RecommendedAction::Observe(id) => {
                let outcome = oracle(&id).ok_or_else(|| VoiError::OracleFailure(id.clone()))?;
                let var = model.variable(&id)?;
                if var.outcome_index(&outcome).is_none() {
                    return Err(VoiError::UnknownOutcome {
                        variable: id.clone(),
                        outcome,
                    });
                }
                observation_cost += var.cost;
                observations.insert(id.clone(), outcome.clone());
                let odds = posterior_odds(model, &observations)?;
                steps.push(TraceStep {
                    variable_id: id,
                    outcome,
                    posterior_odds: odds,
                });
            }
            RecommendedAction::ActNow => {
                let odds = posterior_odds(model, &observations)?;
                let p_star = threshold(model, &observations)?.p_star;
                return Ok(PolicyTrace {
                    steps,
                    terminal_action: act_decision(odds, p_star),
                    observation_cost,
                });
            }
        }
    }
}
