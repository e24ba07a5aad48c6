//! Value-of-information engine for binary-hypothesis diagnosis models.
//!
//! The library computes myopic (single-test) value of information, exact and
//! central-limit-theorem-approximated value of information for sets of tests,
//! runs the nonmyopic prefix-scan selection procedure, and benchmarks
//! policies against each other by Monte Carlo simulation.

pub mod model;
pub mod myopic;
pub mod planner;
pub mod sim;
pub mod subset;

use thiserror::Error;

/// Errors shared across the engine.
#[derive(Debug, Clone, Error)]
pub enum VoiError {
    #[error("unknown evidence variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown outcome `{outcome}` for variable `{variable}`")]
    UnknownOutcome { variable: String, outcome: String },
    #[error("variable `{0}` is already observed")]
    AlreadyObserved(String),
    #[error("observations confirm both hypotheses with certainty")]
    ContradictoryEvidence,
    #[error("expected utility {0} lies outside the utility function's range")]
    UtilityOutOfRange(f64),
    #[error("enumeration limit exceeded: {found} instantiations, limit {limit}")]
    EnumerationLimitExceeded { found: u128, limit: u128 },
    #[error("degenerate-enumeration limit exceeded: {found} degenerate variables, limit {limit}")]
    DegenerateLimitExceeded { found: usize, limit: usize },
    #[error("no non-degenerate variable remains for the CLT approximation")]
    EmptyEffectiveSet,
    #[error("variance must be nonnegative, got {0}")]
    NegativeVariance(f64),
    #[error("cannot aggregate degenerate weight moments for `{0}`")]
    DegenerateAggregate(String),
    #[error("query set does not intersect the group")]
    EmptyGroupIntersection,
    #[error("outcome oracle failed for variable `{0}`")]
    OracleFailure(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
}

pub use model::{
    act_decision, log_odds, posterior_log_odds, posterior_odds, prob_from_log_odds, threshold,
    validate_model, weight_exceeds_threshold, weight_of_evidence, Action, DiagnosisModel,
    EvidenceGroup, EvidenceVariable, Observations, RiskModel, SetCost, ThresholdSummary,
    UtilityModel, ValidationReport, WeightOfEvidence, WEIGHT_TIE_TOL,
};
pub use myopic::{
    certain_equivalent, eu_act_now, eu_observe, myopic_ranking, value_of_information, VoiMethod,
    VoiResult,
};
pub use planner::{
    myopic_step, nonmyopic_step, run_policy, MethodChoice, PolicyKind, PolicyTrace, Recommendation,
    RecommendedAction, ScanRow, TraceStep,
};
pub use sim::{
    model_digest, sample_case, simulate, PolicyStats, SampledCase, SimSettings, SimulationReport,
};
pub use subset::{
    aggregate_moments, clt_subset_voi, cluster_group, degenerate_split, exact_subset_voi,
    normal_tail, weight_moments, AggregateWeight, CltWarning, DegenerateBranch, DegenerateSplit,
    SubsetConfig, WeightMoments,
};
