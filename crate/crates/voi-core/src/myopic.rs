//! Myopic (single-test) value-of-information analysis.
//!
//! The myopic computation assumes the decision maker observes one more
//! variable and then acts. Expected utilities are converted to certain
//! equivalents so values of information come out in value units.

use serde::Serialize;

use crate::model::{
    posterior_log_odds, prob_from_log_odds, threshold, DiagnosisModel, Observations, RiskModel,
};
use crate::VoiError;

/// Which computation produced a [`VoiResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VoiMethod {
    Myopic,
    Exact,
    Clt,
}

impl std::fmt::Display for VoiMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VoiMethod::Myopic => write!(f, "myopic"),
            VoiMethod::Exact => write!(f, "exact"),
            VoiMethod::Clt => write!(f, "clt"),
        }
    }
}

/// Value-of-information result in both utility and value units.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VoiResult {
    /// Expected utility of acting immediately.
    pub eu_phi: f64,
    /// Expected utility of observing, then acting.
    pub eu_obs: f64,
    /// Certain equivalent of acting immediately, in value units.
    pub ce_phi: f64,
    /// Certain equivalent of observing then acting, in value units.
    pub ce_obs: f64,
    /// Value of information: `ce_obs − ce_phi`.
    pub vi: f64,
    /// Observation cost, in value units.
    pub cost: f64,
    /// Net value of information: `vi − cost`.
    pub nvi: f64,
    pub method: VoiMethod,
    /// `p(W > W* | H)`: probability of acting given the hypothesis.
    /// Populated by the subset methods, absent for myopic results.
    pub tail_h: Option<f64>,
    /// `p(W > W* | ¬H)`.
    pub tail_not_h: Option<f64>,
    /// Quality warnings raised by the CLT approximation.
    pub warnings: Vec<crate::subset::CltWarning>,
}

/// The unique value whose utility equals `eu` under the given risk family.
pub fn certain_equivalent(eu: f64, risk: RiskModel) -> Result<f64, VoiError> {
    risk.inverse_utility(eu)
}

/// Expected utility of acting immediately at the current posterior: the
/// not-act branch when `p(H) ≤ p*`, the act branch otherwise.
pub fn eu_act_now(model: &DiagnosisModel, observations: &Observations) -> Result<f64, VoiError> {
    let t = threshold(model, observations)?;
    let p = prob_from_log_odds(posterior_log_odds(model, observations)?);
    let act = p > t.p_star;
    Ok(p * model.utility.utility(true, act) + (1.0 - p) * model.utility.utility(false, act))
}

/// Expected utility of observing `variable_id` and then acting.
///
/// Each outcome's posterior is classified against `p*` and credited the
/// corresponding act/not-act utility; the per-hypothesis mixtures are then
/// averaged with the current posterior probability of the hypothesis.
pub fn eu_observe(
    model: &DiagnosisModel,
    observations: &Observations,
    variable_id: &str,
) -> Result<f64, VoiError> {
    if observations.contains_key(variable_id) {
        return Err(VoiError::AlreadyObserved(variable_id.to_string()));
    }
    let var = model.variable(variable_id)?;
    let t = threshold(model, observations)?;
    let p = prob_from_log_odds(posterior_log_odds(model, observations)?);

    let mut eu_h = 0.0;
    let mut eu_not_h = 0.0;
    for k in 0..var.outcomes.len() {
        let w = crate::model::outcome_weight(var.likelihood_h[k], var.likelihood_not_h[k]);
        let act = crate::model::weight_exceeds_threshold(w, t.w_star);
        eu_h += var.likelihood_h[k] * model.utility.utility(true, act);
        eu_not_h += var.likelihood_not_h[k] * model.utility.utility(false, act);
    }
    Ok(p * eu_h + (1.0 - p) * eu_not_h)
}

/// Myopic value of information of a single variable.
pub fn value_of_information(
    model: &DiagnosisModel,
    observations: &Observations,
    variable_id: &str,
) -> Result<VoiResult, VoiError> {
    let eu_phi = eu_act_now(model, observations)?;
    let eu_obs = eu_observe(model, observations, variable_id)?;
    let risk = model.utility.risk;
    let ce_phi = certain_equivalent(eu_phi, risk)?;
    let ce_obs = certain_equivalent(eu_obs, risk)?;
    let vi = ce_obs - ce_phi;
    let cost = model.variable(variable_id)?.cost;
    Ok(VoiResult {
        eu_phi,
        eu_obs,
        ce_phi,
        ce_obs,
        vi,
        cost,
        nvi: vi - cost,
        method: VoiMethod::Myopic,
        tail_h: None,
        tail_not_h: None,
        warnings: Vec::new(),
    })
}

/// All unobserved variables with their myopic results, sorted by net value
/// of information descending; ties break lexicographically by id.
pub fn myopic_ranking(
    model: &DiagnosisModel,
    observations: &Observations,
) -> Result<Vec<(String, VoiResult)>, VoiError> {
    let mut rows = Vec::new();
    for var in &model.evidence {
        if observations.contains_key(&var.id) {
            continue;
        }
        rows.push((
            var.id.clone(),
            value_of_information(model, observations, &var.id)?,
        ));
    }
    rows.sort_by(|(ida, a), (idb, b)| {
        b.nvi
            .partial_cmp(&a.nvi)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| ida.cmp(idb))
    });
    Ok(rows)
}
