//! Monte Carlo comparison of information-gathering policies.
//!
//! Cases are sampled from the model's generative side (hypothesis from the
//! prior, outcomes from the conditional distributions) and every policy is
//! run against the identical pre-sampled case, so comparisons are paired.
//!
//! RNG contract: each trial uses a ChaCha8 stream whose 256-bit key is
//! derived from (seed, trial index) as documented in [`sample_case`].
//! Trials are therefore order-independent and reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::model::{DiagnosisModel, Observations};
use crate::planner::{run_policy, MethodChoice, PolicyKind};
use crate::subset::SubsetConfig;
use crate::VoiError;

/// A fully sampled synthetic case: the true hypothesis state and an outcome
/// for every evidence variable.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCase {
    pub truth: bool,
    pub outcomes: Observations,
}

/// Settings shared by all policies in one simulation run.
#[derive(Debug, Clone, Copy)]
pub struct SimSettings {
    pub method: MethodChoice,
    pub subset: SubsetConfig,
}

impl Default for SimSettings {
    fn default() -> Self {
        SimSettings {
            method: MethodChoice::Auto,
            subset: SubsetConfig::default(),
        }
    }
}

/// Aggregate statistics for one policy over the trial stream.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolicyStats {
    pub policy: PolicyKind,
    pub trials: u64,
    /// Mean of outcome value minus observation cost, in value units.
    pub mean_net_value: f64,
    /// Sample standard deviation of the net value.
    pub std_dev: f64,
    /// Standard error of the mean.
    pub std_error: f64,
    pub mean_observations: f64,
    pub mean_cost: f64,
}

/// Result of a paired policy comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub seed: u64,
    pub trials: u64,
    /// SHA-256 of the model's canonical JSON serialization.
    pub model_digest: String,
    pub policies: Vec<PolicyStats>,
}

fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&index.to_le_bytes());
    key[16..].copy_from_slice(b"voi-substream-v1");
    ChaCha8Rng::from_seed(key)
}

fn sample_from(rng: &mut ChaCha8Rng, dist: &[f64]) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (k, &p) in dist.iter().enumerate() {
        acc += p;
        if u < acc {
            return k;
        }
    }
    dist.len() - 1
}

/// Samples one case deterministically from `(seed, index)`.
///
/// The truth is drawn with probability `p(H)`; group members are drawn
/// jointly from their group's joint table, all other variables
/// independently from their conditional distributions.
pub fn sample_case(model: &DiagnosisModel, seed: u64, index: u64) -> SampledCase {
    let mut rng = trial_rng(seed, index);
    let truth = rng.gen::<f64>() < model.prior;
    let mut outcomes = Observations::new();
    for group in &model.groups {
        let joint = if truth {
            &group.joint_h
        } else {
            &group.joint_not_h
        };
        let mut idx = sample_from(&mut rng, joint);
        let members: Vec<&crate::model::EvidenceVariable> = group
            .member_ids
            .iter()
            .filter_map(|id| model.variable(id).ok())
            .collect();
        let mut comps = vec![0usize; members.len()];
        for (j, m) in members.iter().enumerate().rev() {
            comps[j] = idx % m.outcomes.len();
            idx /= m.outcomes.len();
        }
        for (j, m) in members.iter().enumerate() {
            outcomes.insert(m.id.clone(), m.outcomes[comps[j]].clone());
        }
    }
    for var in &model.evidence {
        if outcomes.contains_key(&var.id) {
            continue;
        }
        let dist = if truth {
            &var.likelihood_h
        } else {
            &var.likelihood_not_h
        };
        let k = sample_from(&mut rng, dist);
        outcomes.insert(var.id.clone(), var.outcomes[k].clone());
    }
    SampledCase { truth, outcomes }
}

/// Hex SHA-256 of the model's JSON serialization; recorded in reports so a
/// report can be tied back to the exact model it was produced from.
pub fn model_digest(model: &DiagnosisModel) -> String {
    let json = serde_json::to_string(model).expect("model serialization cannot fail");
    let mut hasher = Sha256::new();
    hasher.update(json.as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs every policy against the same sampled case stream and aggregates
/// paired statistics. Deterministic given `(model, policies, trials, seed,
/// settings)`.
pub fn simulate(
    model: &DiagnosisModel,
    policies: &[PolicyKind],
    trials: u64,
    seed: u64,
    settings: &SimSettings,
) -> Result<SimulationReport, VoiError> {
    let mut net_values = vec![Vec::with_capacity(trials as usize); policies.len()];
    let mut observation_counts = vec![0u64; policies.len()];
    let mut observation_costs = vec![0.0f64; policies.len()];

    for index in 0..trials {
        let case = sample_case(model, seed, index);
        for (pi, &policy) in policies.iter().enumerate() {
            let trace = run_policy(
                model,
                policy,
                |id| case.outcomes.get(id).cloned(),
                settings.method,
                &settings.subset,
            )?;
            let acted = trace.terminal_action == crate::model::Action::Act;
            let value = model.utility.value(case.truth, acted) - trace.observation_cost;
            net_values[pi].push(value);
            observation_counts[pi] += trace.steps.len() as u64;
            observation_costs[pi] += trace.observation_cost;
        }
    }

    let mut stats = Vec::with_capacity(policies.len());
    for (pi, &policy) in policies.iter().enumerate() {
        let values = &net_values[pi];
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = if values.len() > 1 {
            values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        let std_dev = var.sqrt();
        stats.push(PolicyStats {
            policy,
            trials,
            mean_net_value: mean,
            std_dev,
            std_error: std_dev / n.sqrt(),
            mean_observations: observation_counts[pi] as f64 / n,
            mean_cost: observation_costs[pi] / n,
        });
    }

    Ok(SimulationReport {
        seed,
        trials,
        model_digest: model_digest(model),
        policies: stats,
    })
}
