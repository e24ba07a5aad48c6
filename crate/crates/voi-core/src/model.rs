//! Binary-hypothesis diagnosis model: odds updating, weights of evidence,
//! and the action-threshold machinery.
//!
//! Probabilities are combined in log space throughout. Weights of evidence
//! live on the extended real line; `f64::INFINITY` and `f64::NEG_INFINITY`
//! are first-class values, never clamped.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::VoiError;

/// Absolute tolerance for distribution normalization checks.
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Absolute tolerance for joint-table marginal consistency checks.
pub const MARGINAL_TOL: f64 = 1e-9;

/// Observed outcomes, keyed by evidence-variable id.
pub type Observations = BTreeMap<String, String>;

/// One observable test or piece of evidence.
///
/// Outcome `k` has likelihood `likelihood_h[k]` given the hypothesis and
/// `likelihood_not_h[k]` given its negation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvidenceVariable {
    pub id: String,
    pub outcomes: Vec<String>,
    pub likelihood_h: Vec<f64>,
    pub likelihood_not_h: Vec<f64>,
    /// Cost of observing this variable, in value units.
    #[serde(default)]
    pub cost: f64,
}

impl EvidenceVariable {
    /// Convenience constructor for a binary variable with outcomes
    /// `pos`/`neg`, `alpha = p(pos|H)` and `beta = p(pos|¬H)`.
    pub fn binary(id: impl Into<String>, alpha: f64, beta: f64, cost: f64) -> Self {
        EvidenceVariable {
            id: id.into(),
            outcomes: vec!["pos".to_string(), "neg".to_string()],
            likelihood_h: vec![alpha, 1.0 - alpha],
            likelihood_not_h: vec![beta, 1.0 - beta],
            cost,
        }
    }

    pub fn outcome_index(&self, label: &str) -> Option<usize> {
        self.outcomes.iter().position(|o| o == label)
    }
}

/// Risk attitude of the decision maker. Both families satisfy the delta
/// property (adding Δ to every outcome value adds Δ to the certain
/// equivalent), which the planner relies on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[derive(Default)]
pub enum RiskModel {
    #[default]
    Linear,
    Exponential {
        rho: f64,
    },
}

impl RiskModel {
    /// Maps an outcome value to the decision maker's utility for it.
    pub fn utility(&self, value: f64) -> f64 {
        match *self {
            RiskModel::Linear => value,
            RiskModel::Exponential { rho } => -(-value / rho).exp(),
        }
    }

    /// Inverse of [`RiskModel::utility`]; errors when `utility` lies outside
    /// the function's range (possible only for the exponential family).
    pub fn inverse_utility(&self, utility: f64) -> Result<f64, VoiError> {
        match *self {
            RiskModel::Linear => Ok(utility),
            RiskModel::Exponential { rho } => {
                if utility >= 0.0 {
                    return Err(VoiError::UtilityOutOfRange(utility));
                }
                Ok(-rho * (-utility).ln())
            }
        }
    }
}

/// Outcome values for the four (hypothesis, decision) combinations plus the
/// risk model mapping values to utilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UtilityModel {
    pub value_h_d: f64,
    pub value_h_not_d: f64,
    pub value_not_h_d: f64,
    pub value_not_h_not_d: f64,
    #[serde(default)]
    pub risk: RiskModel,
}

impl UtilityModel {
    /// Utility of outcome (h, act) under the risk model.
    pub fn utility(&self, h: bool, act: bool) -> f64 {
        self.risk.utility(self.value(h, act))
    }

    /// Raw outcome value, in value units.
    pub fn value(&self, h: bool, act: bool) -> f64 {
        match (h, act) {
            (true, true) => self.value_h_d,
            (true, false) => self.value_h_not_d,
            (false, true) => self.value_not_h_d,
            (false, false) => self.value_not_h_not_d,
        }
    }

    /// Benefit of acting when the hypothesis holds: `U(H,D) − U(H,¬D)`.
    pub fn benefit(&self) -> f64 {
        self.utility(true, true) - self.utility(true, false)
    }

    /// Cost of acting when the hypothesis fails: `U(¬H,¬D) − U(¬H,D)`.
    pub fn decision_cost(&self) -> f64 {
        self.utility(false, false) - self.utility(false, true)
    }
}

/// A set of mutually dependent evidence variables with explicit joint
/// conditional distributions. Groups are conditionally independent of all
/// evidence outside the group, given the hypothesis.
///
/// Joint tables are flat, row-major over member outcome tuples with the
/// last member's outcome varying fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvidenceGroup {
    pub member_ids: Vec<String>,
    pub joint_h: Vec<f64>,
    pub joint_not_h: Vec<f64>,
}

/// Explicit cost override for observing a particular set of variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetCost {
    pub members: Vec<String>,
    pub cost: f64,
}

/// The full diagnosis model: a binary hypothesis with prior `p(H)`, a binary
/// decision with its utility table, and conditionally independent evidence
/// (optionally grouped).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagnosisModel {
    pub prior: f64,
    pub utility: UtilityModel,
    pub evidence: Vec<EvidenceVariable>,
    #[serde(default)]
    pub groups: Vec<EvidenceGroup>,
    #[serde(default)]
    pub set_costs: Vec<SetCost>,
}

impl DiagnosisModel {
    pub fn variable(&self, id: &str) -> Result<&EvidenceVariable, VoiError> {
        self.evidence
            .iter()
            .find(|v| v.id == id)
            .ok_or_else(|| VoiError::UnknownVariable(id.to_string()))
    }

    /// The group containing `id`, if any.
    pub fn group_of(&self, id: &str) -> Option<&EvidenceGroup> {
        self.groups
            .iter()
            .find(|g| g.member_ids.iter().any(|m| m == id))
    }

    /// Cost of observing a set of variables: an explicit override when one
    /// matches the set exactly, otherwise the sum of member costs.
    pub fn set_cost(&self, ids: &[String]) -> Result<f64, VoiError> {
        let mut sorted: Vec<&str> = ids.iter().map(String::as_str).collect();
        sorted.sort_unstable();
        sorted.dedup();
        for sc in &self.set_costs {
            let mut members: Vec<&str> = sc.members.iter().map(String::as_str).collect();
            members.sort_unstable();
            members.dedup();
            if members == sorted {
                return Ok(sc.cost);
            }
        }
        let mut total = 0.0;
        for id in &sorted {
            total += self.variable(id)?.cost;
        }
        Ok(total)
    }
}

/// Per-outcome weights of evidence for one variable: `w = ln λ`, on the
/// extended real line.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightOfEvidence {
    pub variable_id: String,
    pub weights: Vec<f64>,
}

/// The action threshold expressed both as a probability and as a total
/// weight of evidence relative to the current posterior odds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdSummary {
    pub p_star: f64,
    pub w_star: f64,
}

/// The decision maker's two alternatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    Act,
    NoAct,
}

impl std::fmt::Display for Action {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Action::Act => write!(f, "act"),
            Action::NoAct => write!(f, "no-act"),
        }
    }
}

/// Outcome of model validation: either clean or a list of violations.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_distribution(report: &mut ValidationReport, what: &str, dist: &[f64], n: usize) {
    if dist.len() != n {
        report.violations.push(format!(
            "{what}: expected {n} entries, found {}",
            dist.len()
        ));
        return;
    }
    if dist.iter().any(|p| !(0.0..=1.0).contains(p)) {
        report
            .violations
            .push(format!("{what}: entry outside [0,1]"));
    }
    let sum: f64 = dist.iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOL {
        report.violations.push(format!(
            "{what}: distribution not normalized (sums to {sum})"
        ));
    }
}

/// Checks every model invariant and returns the full list of violations
/// rather than stopping at the first.
// Negated comparisons are deliberate: `!(x > 0.0)` flags NaN as a violation
// where `x <= 0.0` would silently pass it.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn validate_model(model: &DiagnosisModel) -> ValidationReport {
    let mut report = ValidationReport::default();

    if !(model.prior > 0.0 && model.prior < 1.0) {
        report.violations.push(format!(
            "prior must lie strictly in (0,1), got {}",
            model.prior
        ));
    }

    if model.utility.benefit() <= 0.0 {
        report
            .violations
            .push("benefit must be positive: U(H,D) must exceed U(H,¬D)".to_string());
    }
    if model.utility.decision_cost() <= 0.0 {
        report
            .violations
            .push("cost must be positive: U(¬H,¬D) must exceed U(¬H,D)".to_string());
    }
    if let RiskModel::Exponential { rho } = model.utility.risk {
        if !(rho > 0.0) {
            report
                .violations
                .push(format!("risk tolerance must be positive, got {rho}"));
        }
    }

    let mut seen = std::collections::BTreeSet::new();
    for var in &model.evidence {
        if !seen.insert(var.id.as_str()) {
            report
                .violations
                .push(format!("duplicate evidence id `{}`", var.id));
        }
        if var.outcomes.len() < 2 {
            report
                .violations
                .push(format!("variable `{}` needs at least 2 outcomes", var.id));
        }
        let mut labels = var.outcomes.clone();
        labels.sort();
        labels.dedup();
        if labels.len() != var.outcomes.len() {
            report.violations.push(format!(
                "variable `{}` has duplicate outcome labels",
                var.id
            ));
        }
        check_distribution(
            &mut report,
            &format!("variable `{}` likelihood_h", var.id),
            &var.likelihood_h,
            var.outcomes.len(),
        );
        check_distribution(
            &mut report,
            &format!("variable `{}` likelihood_not_h", var.id),
            &var.likelihood_not_h,
            var.outcomes.len(),
        );
        if var.likelihood_h.len() == var.outcomes.len()
            && var.likelihood_not_h.len() == var.outcomes.len()
        {
            for (k, label) in var.outcomes.iter().enumerate() {
                if var.likelihood_h[k] == 0.0 && var.likelihood_not_h[k] == 0.0 {
                    report.violations.push(format!(
                        "variable `{}` outcome `{}` has zero likelihood under both hypotheses",
                        var.id, label
                    ));
                }
            }
        }
        if !(var.cost >= 0.0) {
            report
                .violations
                .push(format!("variable `{}` has negative cost", var.id));
        }
    }

    let mut group_membership = std::collections::BTreeSet::new();
    for (gi, group) in model.groups.iter().enumerate() {
        let mut members = Vec::new();
        let mut ok = true;
        for id in &group.member_ids {
            if !group_membership.insert(id.clone()) {
                report
                    .violations
                    .push(format!("variable `{id}` appears in more than one group"));
            }
            match model.variable(id) {
                Ok(v) => members.push(v),
                Err(_) => {
                    report
                        .violations
                        .push(format!("group {gi} references unknown variable `{id}`"));
                    ok = false;
                }
            }
        }
        if !ok {
            continue;
        }
        let size: usize = members.iter().map(|m| m.outcomes.len()).product();
        check_distribution(
            &mut report,
            &format!("group {gi} joint_h"),
            &group.joint_h,
            size,
        );
        check_distribution(
            &mut report,
            &format!("group {gi} joint_not_h"),
            &group.joint_not_h,
            size,
        );
        if group.joint_h.len() == size && group.joint_not_h.len() == size {
            // Marginals of the joint tables must match the members' declared
            // per-variable likelihoods.
            for (mi, member) in members.iter().enumerate() {
                for k in 0..member.outcomes.len() {
                    let (mut marg_h, mut marg_not_h) = (0.0, 0.0);
                    for (idx, (&jh, &jnh)) in
                        group.joint_h.iter().zip(&group.joint_not_h).enumerate()
                    {
                        if tuple_component(idx, mi, &members) == k {
                            marg_h += jh;
                            marg_not_h += jnh;
                        }
                    }
                    if (marg_h - member.likelihood_h[k]).abs() > MARGINAL_TOL
                        || (marg_not_h - member.likelihood_not_h[k]).abs() > MARGINAL_TOL
                    {
                        report.violations.push(format!(
                            "group {gi} joint table marginal for `{}` outcome `{}` \
                             does not match the member's likelihoods",
                            member.id, member.outcomes[k]
                        ));
                    }
                }
            }
        }
    }

    for sc in &model.set_costs {
        for id in &sc.members {
            if model.variable(id).is_err() {
                report
                    .violations
                    .push(format!("set cost references unknown variable `{id}`"));
            }
        }
        if !(sc.cost >= 0.0) {
            report
                .violations
                .push("set cost must be nonnegative".to_string());
        }
    }

    report
}

/// Outcome index of member `mi` in the flat joint-table index `idx`
/// (last member varies fastest).
pub(crate) fn tuple_component(idx: usize, mi: usize, members: &[&EvidenceVariable]) -> usize {
    let mut rem = idx;
    let mut component = 0;
    for (j, m) in members.iter().enumerate().rev() {
        let k = rem % m.outcomes.len();
        rem /= m.outcomes.len();
        if j == mi {
            component = k;
        }
    }
    component
}

/// `ln(p / (1 − p))`, the log odds of a probability.
pub fn log_odds(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

/// Probability corresponding to a log odds, tolerating ±∞.
pub fn prob_from_log_odds(lo: f64) -> f64 {
    if lo == f64::INFINITY {
        1.0
    } else if lo == f64::NEG_INFINITY {
        0.0
    } else {
        1.0 / (1.0 + (-lo).exp())
    }
}

/// Per-outcome weights of evidence `w = ln(p(o|H) / p(o|¬H))`.
///
/// A zero likelihood under exactly one hypothesis yields ±∞; validation
/// rejects outcomes with zero likelihood under both.
pub fn weight_of_evidence(variable: &EvidenceVariable) -> WeightOfEvidence {
    let weights = variable
        .likelihood_h
        .iter()
        .zip(&variable.likelihood_not_h)
        .map(|(&a, &b)| outcome_weight(a, b))
        .collect();
    WeightOfEvidence {
        variable_id: variable.id.clone(),
        weights,
    }
}

pub(crate) fn outcome_weight(alpha: f64, beta: f64) -> f64 {
    if alpha == 0.0 && beta > 0.0 {
        f64::NEG_INFINITY
    } else if beta == 0.0 && alpha > 0.0 {
        f64::INFINITY
    } else {
        (alpha / beta).ln()
    }
}

/// Posterior log odds `ln O(H|observations)`: prior log odds plus the sum of
/// observed weights of evidence.
pub fn posterior_log_odds(
    model: &DiagnosisModel,
    observations: &Observations,
) -> Result<f64, VoiError> {
    let mut total = log_odds(model.prior);
    let mut pos_inf = false;
    let mut neg_inf = false;
    for (id, outcome) in observations {
        let var = model.variable(id)?;
        let k = var
            .outcome_index(outcome)
            .ok_or_else(|| VoiError::UnknownOutcome {
                variable: id.clone(),
                outcome: outcome.clone(),
            })?;
        let w = outcome_weight(var.likelihood_h[k], var.likelihood_not_h[k]);
        if w == f64::INFINITY {
            pos_inf = true;
        } else if w == f64::NEG_INFINITY {
            neg_inf = true;
        } else {
            total += w;
        }
    }
    match (pos_inf, neg_inf) {
        (true, true) => Err(VoiError::ContradictoryEvidence),
        (true, false) => Ok(f64::INFINITY),
        (false, true) => Ok(f64::NEG_INFINITY),
        (false, false) => Ok(total),
    }
}

/// Posterior odds `O(H)·∏λ`, on the extended real line.
pub fn posterior_odds(
    model: &DiagnosisModel,
    observations: &Observations,
) -> Result<f64, VoiError> {
    posterior_log_odds(model, observations).map(f64::exp)
}

/// The threshold probability `p* = C/(C+B)` and the corresponding weight
/// threshold `W* = ln(p*/(1−p*)) − ln O(H|observations)`.
pub fn threshold(
    model: &DiagnosisModel,
    observations: &Observations,
) -> Result<ThresholdSummary, VoiError> {
    let b = model.utility.benefit();
    let c = model.utility.decision_cost();
    let p_star = c / (c + b);
    let current = posterior_log_odds(model, observations)?;
    let w_star = if current == f64::INFINITY {
        f64::NEG_INFINITY
    } else if current == f64::NEG_INFINITY {
        f64::INFINITY
    } else {
        log_odds(p_star) - current
    };
    Ok(ThresholdSummary { p_star, w_star })
}

/// Act iff the odds strictly exceed `p*/(1−p*)`; a tie yields `NoAct`
/// (expected utility is identical at the tie).
pub fn act_decision(odds: f64, p_star: f64) -> Action {
    if odds > p_star / (1.0 - p_star) {
        Action::Act
    } else {
        Action::NoAct
    }
}

/// Tolerance below which a weight sitting at the decision threshold is
/// treated as a tie. Weight sums carry rounding noise of a few ulps, so an
/// exact-arithmetic tie (which must classify as no-act) can land a hair
/// above `W*`.
pub const WEIGHT_TIE_TOL: f64 = 1e-12;

/// Classifies a total weight of evidence against the threshold `W*`:
/// act iff `weight` exceeds `w_star` by more than the tie tolerance.
pub fn weight_exceeds_threshold(weight: f64, w_star: f64) -> bool {
    weight - w_star > WEIGHT_TIE_TOL
}
