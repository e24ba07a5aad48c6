//! Value of information for a set of evidence: exact enumeration over
//! instantiations and the central-limit-theorem approximation built from
//! summed weight-of-evidence moments.

use serde::Serialize;

use crate::model::{
    outcome_weight, posterior_log_odds, prob_from_log_odds, threshold, DiagnosisModel,
    EvidenceGroup, EvidenceVariable, Observations,
};
use crate::myopic::{certain_equivalent, eu_act_now, VoiMethod, VoiResult};
use crate::VoiError;

/// Tunable limits for the subset computations.
#[derive(Debug, Clone, Copy)]
pub struct SubsetConfig {
    /// Enumeration limit in binary-equivalent variables: exact enumeration
    /// refuses sets with more than `2^enumeration_limit` instantiations.
    pub enumeration_limit: u32,
    /// Maximum number of degenerate variables the split will enumerate.
    pub degenerate_limit: usize,
    /// CLT validity floor: a warning is raised when fewer effective
    /// variables than this enter the normal approximation.
    pub clt_size_floor: usize,
    /// A warning is raised when one variable contributes more than this
    /// share of the total weight variance.
    pub clt_variance_share: f64,
}

impl Default for SubsetConfig {
    fn default() -> Self {
        SubsetConfig {
            enumeration_limit: 20,
            degenerate_limit: 10,
            clt_size_floor: 10,
            clt_variance_share: 0.5,
        }
    }
}

/// Advisory warnings attached to CLT results.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CltWarning {
    /// Fewer effective variables than the configured validity floor.
    SmallSet { effective: usize, floor: usize },
    /// A single variable dominates the total weight variance.
    DominantVariance { variable: String },
}

impl std::fmt::Display for CltWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CltWarning::SmallSet { effective, floor } => write!(
                f,
                "clt validity: only {effective} effective variables (floor {floor})"
            ),
            CltWarning::DominantVariance { variable } => write!(
                f,
                "clt validity: variable `{variable}` contributes more than half the weight variance"
            ),
        }
    }
}

/// Mean and variance of one variable's weight of evidence under each
/// hypothesis. For a binary variable these are the standard closed forms
/// in `alpha` and `beta`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightMoments {
    pub variable_id: String,
    pub ev_h: f64,
    pub var_h: f64,
    pub ev_not_h: f64,
    pub var_not_h: f64,
    /// Set when some outcome has zero likelihood under exactly one
    /// hypothesis; infinite contributions are excluded from the sums.
    pub degenerate: bool,
}

/// Summed weight moments over a set of non-degenerate variables.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct AggregateWeight {
    pub mu_h: f64,
    pub var_h: f64,
    pub mu_not_h: f64,
    pub var_not_h: f64,
}

/// One branch of a degenerate split: the fixed weight contributed by a
/// particular combination of degenerate-variable outcomes, and the
/// probability of that combination under the branch's hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegenerateBranch {
    /// Total weight of the fixed outcomes; may be ±∞.
    pub fixed_weight: f64,
    pub probability: f64,
}

/// Result of splitting a query set into degenerate outcome branches and a
/// residual set of non-degenerate variables.
#[derive(Debug, Clone)]
pub struct DegenerateSplit {
    /// Variables with finite weights on every outcome; shared by all
    /// branches.
    pub residual: Vec<EvidenceVariable>,
    /// Branches conditioned on the hypothesis.
    pub branches_h: Vec<DegenerateBranch>,
    /// Branches conditioned on the negated hypothesis.
    pub branches_not_h: Vec<DegenerateBranch>,
}

/// Weight-of-evidence mean and variance for one variable under each
/// hypothesis, skipping zero-probability outcomes. Outcomes with infinite
/// weight set the `degenerate` flag instead of entering the sums.
pub fn weight_moments(variable: &EvidenceVariable) -> WeightMoments {
    let mut m = WeightMoments {
        variable_id: variable.id.clone(),
        ev_h: 0.0,
        var_h: 0.0,
        ev_not_h: 0.0,
        var_not_h: 0.0,
        degenerate: false,
    };
    let mut sq_h = 0.0;
    let mut sq_not_h = 0.0;
    for k in 0..variable.outcomes.len() {
        let (a, b) = (variable.likelihood_h[k], variable.likelihood_not_h[k]);
        let w = outcome_weight(a, b);
        if w.is_infinite() {
            m.degenerate = true;
            continue;
        }
        if a > 0.0 {
            m.ev_h += a * w;
            sq_h += a * w * w;
        }
        if b > 0.0 {
            m.ev_not_h += b * w;
            sq_not_h += b * w * w;
        }
    }
    m.var_h = (sq_h - m.ev_h * m.ev_h).max(0.0);
    m.var_not_h = (sq_not_h - m.ev_not_h * m.ev_not_h).max(0.0);
    m
}

/// Componentwise sums of per-variable moments. Degenerate inputs are
/// rejected; split them out with [`degenerate_split`] first.
pub fn aggregate_moments(moments: &[WeightMoments]) -> Result<AggregateWeight, VoiError> {
    let mut agg = AggregateWeight::default();
    for m in moments {
        if m.degenerate {
            return Err(VoiError::DegenerateAggregate(m.variable_id.clone()));
        }
        agg.mu_h += m.ev_h;
        agg.var_h += m.var_h;
        agg.mu_not_h += m.ev_not_h;
        agg.var_not_h += m.var_not_h;
    }
    Ok(agg)
}

/// `p(W > w_star)` for `W ~ N(mu, variance)`.
///
/// With zero variance the distribution is a point mass: 1 if `mu > w_star`,
/// else 0. The standard deviation is `sqrt(variance)`.
pub fn normal_tail(mu: f64, variance: f64, w_star: f64) -> Result<f64, VoiError> {
    if variance < 0.0 {
        return Err(VoiError::NegativeVariance(variance));
    }
    if w_star == f64::NEG_INFINITY {
        return Ok(1.0);
    }
    if w_star == f64::INFINITY {
        return Ok(0.0);
    }
    if variance == 0.0 {
        return Ok(if mu > w_star { 1.0 } else { 0.0 });
    }
    Ok(0.5 * libm::erfc((w_star - mu) / (2.0 * variance).sqrt()))
}

/// The effective, conditionally independent variables implied by a query
/// set: group intersections are clustered into single multi-valued
/// variables; ungrouped members pass through unchanged. Order follows the
/// model's evidence order, with each cluster at its first member's slot.
pub fn effective_variables(
    model: &DiagnosisModel,
    set: &[String],
) -> Result<Vec<EvidenceVariable>, VoiError> {
    let mut query: Vec<String> = Vec::new();
    for id in set {
        model.variable(id)?;
        if !query.contains(id) {
            query.push(id.clone());
        }
    }
    let mut out = Vec::new();
    let mut consumed: Vec<String> = Vec::new();
    for id in &query {
        if consumed.contains(id) {
            continue;
        }
        if let Some(group) = model.group_of(id) {
            let members: Vec<String> = query
                .iter()
                .filter(|q| group.member_ids.contains(q))
                .cloned()
                .collect();
            consumed.extend(members.iter().cloned());
            out.push(cluster_group(model, group, &members)?);
        } else {
            out.push(model.variable(id)?.clone());
        }
    }
    Ok(out)
}

/// Merges the members of `set ∩ group` into a single multi-valued variable,
/// averaging out group members that are not in the set. The result is
/// conditionally independent of everything outside the group.
pub fn cluster_group(
    model: &DiagnosisModel,
    group: &EvidenceGroup,
    set: &[String],
) -> Result<EvidenceVariable, VoiError> {
    let members: Vec<&EvidenceVariable> = group
        .member_ids
        .iter()
        .map(|id| model.variable(id))
        .collect::<Result<_, _>>()?;
    let kept: Vec<usize> = (0..members.len())
        .filter(|&i| set.iter().any(|s| *s == members[i].id))
        .collect();
    if kept.is_empty() {
        return Err(VoiError::EmptyGroupIntersection);
    }
    let total: usize = members.iter().map(|m| m.outcomes.len()).product();
    if group.joint_h.len() != total || group.joint_not_h.len() != total {
        return Err(VoiError::InvalidModel(
            "group joint table size does not match member outcome counts".to_string(),
        ));
    }

    // Single member kept and nothing to marginalize beyond the joint:
    // return the member itself so singleton clustering is a strict no-op.
    if kept.len() == 1 && members.len() == 1 {
        return Ok(members[0].clone());
    }

    let kept_size: usize = kept.iter().map(|&i| members[i].outcomes.len()).product();
    let mut likelihood_h = vec![0.0; kept_size];
    let mut likelihood_not_h = vec![0.0; kept_size];
    for idx in 0..total {
        // project the full tuple index onto the kept members
        let mut rem = idx;
        let mut comps = vec![0usize; members.len()];
        for (j, m) in members.iter().enumerate().rev() {
            comps[j] = rem % m.outcomes.len();
            rem /= m.outcomes.len();
        }
        let mut kidx = 0;
        for &i in &kept {
            kidx = kidx * members[i].outcomes.len() + comps[i];
        }
        likelihood_h[kidx] += group.joint_h[idx];
        likelihood_not_h[kidx] += group.joint_not_h[idx];
    }

    let mut outcomes = Vec::with_capacity(kept_size);
    for kidx in 0..kept_size {
        let mut rem = kidx;
        let mut parts = vec![String::new(); kept.len()];
        for (pos, &i) in kept.iter().enumerate().rev() {
            let k = rem % members[i].outcomes.len();
            rem /= members[i].outcomes.len();
            parts[pos] = format!("{}={}", members[i].id, members[i].outcomes[k]);
        }
        outcomes.push(parts.join(","));
    }

    if kept.len() == 1 {
        // Marginalizing to a single member must reproduce the member's own
        // likelihoods; keep its id and labels so downstream lookups work.
        let m = members[kept[0]];
        return Ok(EvidenceVariable {
            id: m.id.clone(),
            outcomes: m.outcomes.clone(),
            likelihood_h,
            likelihood_not_h,
            cost: m.cost,
        });
    }

    let ids: Vec<&str> = kept.iter().map(|&i| members[i].id.as_str()).collect();
    Ok(EvidenceVariable {
        id: format!("cluster({})", ids.join("+")),
        outcomes,
        likelihood_h,
        likelihood_not_h,
        cost: kept.iter().map(|&i| members[i].cost).sum(),
    })
}

struct SubsetContext {
    w_star: f64,
    /// Posterior probability of the hypothesis given current observations.
    p: f64,
    eu_phi: f64,
}

fn subset_context(
    model: &DiagnosisModel,
    observations: &Observations,
) -> Result<SubsetContext, VoiError> {
    let t = threshold(model, observations)?;
    let p = prob_from_log_odds(posterior_log_odds(model, observations)?);
    Ok(SubsetContext {
        w_star: t.w_star,
        p,
        eu_phi: eu_act_now(model, observations)?,
    })
}

fn voi_from_tails(
    model: &DiagnosisModel,
    ctx: &SubsetContext,
    tail_h: f64,
    tail_not_h: f64,
    cost: f64,
    method: VoiMethod,
    warnings: Vec<CltWarning>,
) -> Result<VoiResult, VoiError> {
    let u = &model.utility;
    let eu_h = tail_h * u.utility(true, true) + (1.0 - tail_h) * u.utility(true, false);
    let eu_not_h =
        tail_not_h * u.utility(false, true) + (1.0 - tail_not_h) * u.utility(false, false);
    let eu_obs = ctx.p * eu_h + (1.0 - ctx.p) * eu_not_h;
    let risk = model.utility.risk;
    let ce_phi = certain_equivalent(ctx.eu_phi, risk)?;
    let ce_obs = certain_equivalent(eu_obs, risk)?;
    let vi = ce_obs - ce_phi;
    Ok(VoiResult {
        eu_phi: ctx.eu_phi,
        eu_obs,
        ce_phi,
        ce_obs,
        vi,
        cost,
        nvi: vi - cost,
        method,
        tail_h: Some(tail_h),
        tail_not_h: Some(tail_not_h),
        warnings,
    })
}

fn check_disjoint(observations: &Observations, set: &[String]) -> Result<(), VoiError> {
    for id in set {
        if observations.contains_key(id) {
            return Err(VoiError::AlreadyObserved(id.clone()));
        }
    }
    Ok(())
}

/// Exact value of information of observing every variable in `set` before
/// acting, by enumeration of all outcome tuples.
///
/// Each instantiation is classified by its total weight against `W*`
/// (strictly greater means act); the conditional tail masses feed the
/// expected-utility mixture and the certain-equivalent difference.
pub fn exact_subset_voi(
    model: &DiagnosisModel,
    observations: &Observations,
    set: &[String],
    config: &SubsetConfig,
) -> Result<VoiResult, VoiError> {
    check_disjoint(observations, set)?;
    let vars = effective_variables(model, set)?;
    let ctx = subset_context(model, observations)?;
    let cost = model.set_cost(set)?;

    let mut count: u128 = 1;
    for v in &vars {
        count = count.saturating_mul(v.outcomes.len() as u128);
    }
    let limit = 1u128 << config.enumeration_limit;
    if count > limit {
        return Err(VoiError::EnumerationLimitExceeded {
            found: count,
            limit,
        });
    }

    let weights: Vec<Vec<f64>> = vars
        .iter()
        .map(|v| crate::model::weight_of_evidence(v).weights)
        .collect();

    let mut tail_h = 0.0;
    let mut tail_not_h = 0.0;
    for idx in 0..count as usize {
        let mut rem = idx;
        let mut prob_h = 1.0;
        let mut prob_not_h = 1.0;
        let mut weight = 0.0;
        let mut pos_inf = false;
        let mut neg_inf = false;
        for (i, var) in vars.iter().enumerate().rev() {
            let k = rem % var.outcomes.len();
            rem /= var.outcomes.len();
            prob_h *= var.likelihood_h[k];
            prob_not_h *= var.likelihood_not_h[k];
            match weights[i][k] {
                w if w == f64::INFINITY => pos_inf = true,
                w if w == f64::NEG_INFINITY => neg_inf = true,
                w => weight += w,
            }
        }
        let total_weight = match (pos_inf, neg_inf) {
            (true, false) => f64::INFINITY,
            (false, true) => f64::NEG_INFINITY,
            // conflicting certainties: zero probability under both hypotheses
            (true, true) => f64::NAN,
            (false, false) => weight,
        };
        if crate::model::weight_exceeds_threshold(total_weight, ctx.w_star) {
            tail_h += prob_h;
            tail_not_h += prob_not_h;
        }
    }

    voi_from_tails(
        model,
        &ctx,
        tail_h,
        tail_not_h,
        cost,
        VoiMethod::Exact,
        Vec::new(),
    )
}

/// Splits the query set into its degenerate variables (those with some
/// infinite-weight outcome) and a residual non-degenerate set, enumerating
/// the degenerate outcome combinations per hypothesis.
///
/// Combinations with infinite total weight resolve immediately (tail 1 for
/// +∞, 0 for −∞); finite combinations contribute a fixed weight with zero
/// added variance. Zero-probability combinations are dropped per branch.
pub fn degenerate_split(
    model: &DiagnosisModel,
    observations: &Observations,
    set: &[String],
) -> Result<DegenerateSplit, VoiError> {
    degenerate_split_with(model, observations, set, &SubsetConfig::default())
}

/// [`degenerate_split`] with an explicit configuration.
pub fn degenerate_split_with(
    model: &DiagnosisModel,
    observations: &Observations,
    set: &[String],
    config: &SubsetConfig,
) -> Result<DegenerateSplit, VoiError> {
    check_disjoint(observations, set)?;
    let vars = effective_variables(model, set)?;
    let (degenerate, residual): (Vec<_>, Vec<_>) =
        vars.into_iter().partition(|v| weight_moments(v).degenerate);
    if degenerate.len() > config.degenerate_limit {
        return Err(VoiError::DegenerateLimitExceeded {
            found: degenerate.len(),
            limit: config.degenerate_limit,
        });
    }

    let weights: Vec<Vec<f64>> = degenerate
        .iter()
        .map(|v| crate::model::weight_of_evidence(v).weights)
        .collect();

    let mut branches_h = Vec::new();
    let mut branches_not_h = Vec::new();
    let count: usize = degenerate.iter().map(|v| v.outcomes.len()).product();
    for idx in 0..count {
        let mut rem = idx;
        let mut prob_h = 1.0;
        let mut prob_not_h = 1.0;
        let mut weight = 0.0;
        let mut pos_inf = false;
        let mut neg_inf = false;
        for (i, var) in degenerate.iter().enumerate().rev() {
            let k = rem % var.outcomes.len();
            rem /= var.outcomes.len();
            prob_h *= var.likelihood_h[k];
            prob_not_h *= var.likelihood_not_h[k];
            match weights[i][k] {
                w if w == f64::INFINITY => pos_inf = true,
                w if w == f64::NEG_INFINITY => neg_inf = true,
                w => weight += w,
            }
        }
        let fixed_weight = match (pos_inf, neg_inf) {
            (true, false) => f64::INFINITY,
            (false, true) => f64::NEG_INFINITY,
            (true, true) => f64::NAN, // zero probability under both hypotheses
            (false, false) => weight,
        };
        if prob_h > 0.0 {
            branches_h.push(DegenerateBranch {
                fixed_weight,
                probability: prob_h,
            });
        }
        if prob_not_h > 0.0 {
            branches_not_h.push(DegenerateBranch {
                fixed_weight,
                probability: prob_not_h,
            });
        }
    }
    Ok(DegenerateSplit {
        residual,
        branches_h,
        branches_not_h,
    })
}

/// Central-limit-theorem approximation of subset value of information.
///
/// Degenerate variables are split out first; each finite branch shifts the
/// aggregate mean by its fixed weight, and the residual sum of weights is
/// approximated by a normal distribution whose tail above `W*` gives the
/// probability of acting.
pub fn clt_subset_voi(
    model: &DiagnosisModel,
    observations: &Observations,
    set: &[String],
    config: &SubsetConfig,
) -> Result<VoiResult, VoiError> {
    let split = degenerate_split_with(model, observations, set, config)?;
    if split.residual.is_empty() {
        return Err(VoiError::EmptyEffectiveSet);
    }
    let ctx = subset_context(model, observations)?;
    let cost = model.set_cost(set)?;

    let moments: Vec<WeightMoments> = split.residual.iter().map(weight_moments).collect();
    let agg = aggregate_moments(&moments)?;

    let mut warnings = Vec::new();
    if split.residual.len() < config.clt_size_floor {
        warnings.push(CltWarning::SmallSet {
            effective: split.residual.len(),
            floor: config.clt_size_floor,
        });
    }
    if agg.var_h > 0.0 || agg.var_not_h > 0.0 {
        for m in &moments {
            let share_h = if agg.var_h > 0.0 {
                m.var_h / agg.var_h
            } else {
                0.0
            };
            let share_not_h = if agg.var_not_h > 0.0 {
                m.var_not_h / agg.var_not_h
            } else {
                0.0
            };
            if share_h > config.clt_variance_share || share_not_h > config.clt_variance_share {
                warnings.push(CltWarning::DominantVariance {
                    variable: m.variable_id.clone(),
                });
            }
        }
    }

    let branch_tail = |branch: &DegenerateBranch, mu: f64, var: f64| -> Result<f64, VoiError> {
        if branch.fixed_weight == f64::INFINITY {
            Ok(1.0)
        } else if branch.fixed_weight == f64::NEG_INFINITY {
            Ok(0.0)
        } else {
            normal_tail(mu + branch.fixed_weight, var, ctx.w_star)
        }
    };

    let mut tail_h = 0.0;
    for b in &split.branches_h {
        tail_h += b.probability * branch_tail(b, agg.mu_h, agg.var_h)?;
    }
    let mut tail_not_h = 0.0;
    for b in &split.branches_not_h {
        tail_not_h += b.probability * branch_tail(b, agg.mu_not_h, agg.var_not_h)?;
    }

    voi_from_tails(
        model,
        &ctx,
        tail_h,
        tail_not_h,
        cost,
        VoiMethod::Clt,
        warnings,
    )
}
