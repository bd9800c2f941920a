//! Node-sequence generation and weighted-gap verification.
//!
//! Sequences are finite windows of bi-infinite node sets. Generators either
//! saturate a weighted gap condition (every weighted gap exactly 1/2), or
//! produce the classical square-root pair, or evaluate the closed-form
//! asymmetric pair built from `S(t) = 2 pi e^{4 pi t^s}`.

use crate::error::{Error, Result};
use crate::numerics::{DoubleDouble, LinearTable};
use crate::weights::WeightSpec;
use serde::{Deserialize, Serialize};

/// A finite, strictly increasing window of a node set.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct NodeSequence {
    /// Strictly increasing node values.
    pub values: Vec<f64>,
    /// Index `j` of the first element.
    pub index_offset: i64,
    /// Whether the window is closed under negation (within 1e-12).
    pub symmetric: bool,
    /// Generator name and parameters.
    pub provenance: String,
}

impl NodeSequence {
    pub fn new(values: Vec<f64>, index_offset: i64, provenance: impl Into<String>) -> Result<Self> {
        for w in values.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::Parameter(format!(
                    "node values must strictly increase; saw {} then {}",
                    w[0], w[1]
                )));
            }
        }
        let symmetric = is_symmetric(&values);
        Ok(NodeSequence { values, index_offset, symmetric, provenance: provenance.into() })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the element at position `i`.
    pub fn index_of(&self, i: usize) -> i64 {
        self.index_offset + i as i64
    }

    /// New sequence with every value multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<NodeSequence> {
        if !(c > 0.0) {
            return Err(Error::Parameter(format!("scale must be positive, got {c}")));
        }
        NodeSequence::new(
            self.values.iter().map(|v| c * v).collect(),
            self.index_offset,
            format!("{} * {c}", self.provenance),
        )
    }

    /// New sequence with the value nearest `at` removed.
    pub fn with_node_removed(&self, at: f64) -> Result<NodeSequence> {
        if self.values.is_empty() {
            return Err(Error::Parameter("cannot remove from empty sequence".into()));
        }
        let i = self
            .values
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - at).abs().partial_cmp(&(b.1 - at).abs()).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let mut values = self.values.clone();
        values.remove(i);
        NodeSequence::new(values, self.index_offset, format!("{} \\ {{{at}}}", self.provenance))
    }
}

fn is_symmetric(values: &[f64]) -> bool {
    if values.is_empty() {
        return false;
    }
    let lo = values[0];
    let hi = *values.last().unwrap();
    values.iter().all(|&v| {
        let m = -v;
        if m < lo - 1e-12 || m > hi + 1e-12 {
            return true; // mirror outside the window: vacuous
        }
        match values.binary_search_by(|x| x.partial_cmp(&m).unwrap()) {
            Ok(_) => true,
            Err(i) => {
                let near = |k: usize| k < values.len() && (values[k] - m).abs() <= 1e-12;
                near(i) || (i > 0 && near(i - 1))
            }
        }
    })
}

/// Which endpoint of a consecutive pair feeds the weight.
///
/// `Left` evaluates at the endpoint nearer the origin - for windows of
/// non-negative nodes this is literally the left endpoint `lambda_j`, and on
/// a mirrored half it is the reflection-symmetric choice. `Max` evaluates at
/// the endpoint farther from the origin, matching `max{|l_j|, |l_{j+1}|}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndpointRule {
    Left,
    Max,
}

impl EndpointRule {
    fn base(self, a: f64, b: f64) -> f64 {
        let (lo, hi) = if a.abs() <= b.abs() { (a.abs(), b.abs()) } else { (b.abs(), a.abs()) };
        match self {
            EndpointRule::Left => lo,
            EndpointRule::Max => hi,
        }
    }
}

/// Offset function `nu` applied inside the weight argument.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum OffsetFn {
    Constant(f64),
    /// `nu(t) = eps * t`.
    Linear(f64),
    /// Tabulated offsets with linear interpolation.
    Table(LinearTable),
}

impl OffsetFn {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            OffsetFn::Constant(d) => *d,
            OffsetFn::Linear(eps) => eps * t,
            OffsetFn::Table(tab) => tab.eval(t),
        }
    }
}

/// The weight half of a gap criterion: a weight-family spec raised to a
/// power, or an arbitrary callable for criteria built from composed maps.
pub enum GapWeight {
    Spec { spec: WeightSpec, exponent: f64 },
    Func(Box<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl std::fmt::Debug for GapWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GapWeight::Spec { spec, exponent } => {
                write!(f, "Spec({}, ^{exponent})", spec.family_name())
            }
            GapWeight::Func(_) => write!(f, "Func(..)"),
        }
    }
}

impl GapWeight {
    fn eval(&self, arg: f64) -> Result<f64> {
        match self {
            GapWeight::Spec { spec, exponent } => Ok(spec.eval(arg)?.powf(*exponent)),
            GapWeight::Func(f) => Ok(f(arg)),
        }
    }
}

/// How the report's pass flag reads the per-index data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapMode {
    /// Supremum over every pair in the window.
    Sup,
    /// Tail estimate: supremum over pairs with |j| >= N.
    LimsupTail(i64),
}

/// A weighted-gap criterion `w(base + nu(base)) * (l_{j+1} - l_j) <= threshold`.
#[derive(Debug)]
pub struct GapCondition {
    pub weight: GapWeight,
    pub offset: OffsetFn,
    pub endpoint_rule: EndpointRule,
    /// Clamp the weight value from below at 1 (`max{w, 1}`).
    pub clamp_min_one: bool,
    /// Optional multiplicative `(1 + eps(base))` factor.
    pub epsilon_factor: Option<OffsetFn>,
    pub threshold: f64,
    pub mode: GapMode,
}

impl GapCondition {
    /// The plain criterion `S(base + shift)^exponent * gap <= 1/2`.
    pub fn standard(spec: WeightSpec, shift: f64, exponent: f64, rule: EndpointRule) -> Self {
        GapCondition {
            weight: GapWeight::Spec { spec, exponent },
            offset: OffsetFn::Constant(shift),
            endpoint_rule: rule,
            clamp_min_one: false,
            epsilon_factor: None,
            threshold: 0.5,
            mode: GapMode::Sup,
        }
    }

    /// Criterion with an arbitrary weight function.
    pub fn with_fn(
        w: impl Fn(f64) -> f64 + Send + Sync + 'static,
        rule: EndpointRule,
        threshold: f64,
    ) -> Self {
        GapCondition {
            weight: GapWeight::Func(Box::new(w)),
            offset: OffsetFn::Constant(0.0),
            endpoint_rule: rule,
            clamp_min_one: false,
            epsilon_factor: None,
            threshold,
            mode: GapMode::Sup,
        }
    }
}

/// Per-index evaluation of a gap criterion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapReport {
    /// `(j, weighted gap)` per consecutive pair, indexed by the left index.
    pub per_index: Vec<(i64, f64)>,
    pub sup_value: f64,
    pub argsup: i64,
    pub pass: bool,
    /// Supremum over |j| >= N (N from the mode, or half the window).
    pub tail_estimate: f64,
    /// Pairs excluded from the supremum because the weight vanished there.
    pub excluded_zero_weight: Vec<i64>,
}

pub const GAP_PASS_TOL: f64 = 1e-12;

/// Evaluate a weighted-gap criterion over every consecutive pair.
pub fn verify_gap_condition(seq: &NodeSequence, cond: &GapCondition) -> Result<GapReport> {
    if seq.len() < 2 {
        return Err(Error::Parameter("gap verification needs >= 2 nodes".into()));
    }
    if !(cond.threshold > 0.0) {
        return Err(Error::Parameter("threshold must be positive".into()));
    }
    let mut per_index = Vec::with_capacity(seq.len() - 1);
    let mut excluded = Vec::new();
    for i in 0..seq.len() - 1 {
        let j = seq.index_of(i);
        let a = seq.values[i];
        let b = seq.values[i + 1];
        let base = cond.endpoint_rule.base(a, b);
        let arg = (base + cond.offset.eval(base)).max(0.0);
        let mut w = cond.weight.eval(arg).map_err(|e| {
            Error::Precondition(format!("weight evaluation failed at index {j}: {e}"))
        })?;
        if cond.clamp_min_one {
            w = w.max(1.0);
        }
        if let Some(eps) = &cond.epsilon_factor {
            w *= 1.0 + eps.eval(base);
        }
        if w == 0.0 {
            excluded.push(j);
            continue;
        }
        per_index.push((j, w * (b - a)));
    }
    if per_index.is_empty() {
        return Err(Error::Precondition("every pair had zero weight".into()));
    }
    let (argsup, sup_value) = per_index
        .iter()
        .fold((per_index[0].0, f64::NEG_INFINITY), |(aj, av), &(j, v)| {
            if v > av {
                (j, v)
            } else {
                (aj, av)
            }
        });
    let tail_n = match cond.mode {
        GapMode::LimsupTail(n) => n,
        GapMode::Sup => {
            let max_abs = per_index.iter().map(|(j, _)| j.abs()).max().unwrap_or(0);
            max_abs / 2
        }
    };
    let tail_estimate = per_index
        .iter()
        .filter(|(j, _)| j.abs() >= tail_n)
        .map(|&(_, v)| v)
        .fold(f64::NEG_INFINITY, f64::max);
    let pass = match cond.mode {
        GapMode::Sup => sup_value <= cond.threshold + GAP_PASS_TOL,
        GapMode::LimsupTail(_) => tail_estimate <= cond.threshold + GAP_PASS_TOL,
    };
    Ok(GapReport { per_index, sup_value, argsup, pass, tail_estimate, excluded_zero_weight: excluded })
}

/// Saturated recurrence against an arbitrary weight function, with the
/// compensated-arithmetic audit of `max |w * gap - 1/2|`.
///
/// `implicit_max = false` runs the explicit recurrence
/// `l_{j+1} = l_j + 1/(2 w(l_j))` (gap weighted at the inner endpoint);
/// `implicit_max = true` solves `l_{j+1} = l_j + 1/(2 w(l_{j+1}))` by fixed
/// point so the criterion saturates at the outer endpoint instead.
pub fn generate_saturated_fn(
    w: &dyn Fn(f64) -> Result<f64>,
    seed: f64,
    j_max: usize,
    symmetric: bool,
    implicit_max: bool,
    provenance: impl Into<String>,
) -> Result<(NodeSequence, f64)> {
    let w0 = w(seed)?;
    if !(w0 > 0.0) || !w0.is_finite() {
        return Err(Error::DegenerateSeed);
    }
    let mut positive = Vec::with_capacity(j_max + 1);
    let mut pos = DoubleDouble::new(seed);
    positive.push(seed);
    let mut audit: f64 = 0.0;
    for _ in 0..j_max {
        let x = pos.value();
        let gap = if implicit_max {
            // root of g = 1/(2 w(x+g)); phi(g) = g - 1/(2 w(x+g)) is strictly
            // increasing, with the root bracketed by the two one-sided gaps
            let g_hi = 0.5 / w(x)?;
            let mut lo = 0.5 / w(x + g_hi)?;
            let mut hi = g_hi;
            if !(lo > 0.0) || !(hi >= lo) {
                return Err(Error::DegenerateSeed);
            }
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if mid - 0.5 / w(x + mid)? >= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            hi
        } else {
            let wx = w(x)?;
            if !(wx > 0.0) || !wx.is_finite() {
                return Err(Error::DegenerateSeed);
            }
            0.5 / wx
        };
        if !gap.is_finite() || gap <= 0.0 {
            return Err(Error::Numeric(format!("non-finite gap at position {x}")));
        }
        let next = pos.add_f64(gap);
        // audited in double-double: weight at the rounded endpoint times the
        // exact recurrence gap
        let w_at = if implicit_max { w(next.value())? } else { w(x)? };
        let dev = (next - pos).mul_f64(w_at).add_f64(-0.5).value();
        audit = audit.max(dev.abs());
        pos = next;
        positive.push(pos.value());
    }
    let values = if symmetric {
        let mut v: Vec<f64> = positive.iter().rev().map(|x| -x).collect();
        if seed == 0.0 {
            v.pop(); // seed mirrors onto itself
        }
        v.extend(positive.iter().copied());
        v
    } else {
        positive
    };
    let offset = if symmetric { -(j_max as i64) - if seed == 0.0 { 0 } else { 1 } } else { 0 };
    Ok((NodeSequence::new(values, offset, provenance)?, audit))
}

/// Generate the sequence saturating `S(|l| + shift)^exponent * gap = 1/2`
/// from `l_0 = seed`, mirrored to negative indices when `symmetric`.
pub fn generate_saturated(
    weight: &WeightSpec,
    shift: f64,
    exponent: f64,
    seed: f64,
    j_max: usize,
    symmetric: bool,
) -> Result<NodeSequence> {
    generate_saturated_audited(weight, shift, exponent, seed, j_max, symmetric).map(|(s, _)| s)
}

/// [`generate_saturated`] plus the compensated-recurrence saturation audit
/// (maximum deviation of any weighted gap from 1/2, measured inside the
/// double-double arithmetic).
pub fn generate_saturated_audited(
    weight: &WeightSpec,
    shift: f64,
    exponent: f64,
    seed: f64,
    j_max: usize,
    symmetric: bool,
) -> Result<(NodeSequence, f64)> {
    let prov = format!(
        "saturated(weight={}, shift={shift}, exponent={exponent}, seed={seed})",
        weight.family_name()
    );
    let w = move |x: f64| -> Result<f64> {
        Ok(weight.eval((x.abs() + shift).max(0.0))?.powf(exponent))
    };
    generate_saturated_fn(&w, seed, j_max, symmetric, false, prov)
}

/// The square-root node set `{±sqrt(j) : 0 <= j <= j_max}`.
pub fn generate_rv(j_max: usize) -> Result<NodeSequence> {
    if j_max < 1 {
        return Err(Error::Parameter("j_max must be >= 1".into()));
    }
    let mut values = Vec::with_capacity(2 * j_max + 1);
    for j in (1..=j_max).rev() {
        values.push(-(j as f64).sqrt());
    }
    values.push(0.0);
    for j in 1..=j_max {
        values.push((j as f64).sqrt());
    }
    NodeSequence::new(values, -(j_max as i64), format!("rv(j_max={j_max})"))
}

/// The closed-form asymmetric pair: for `J <= j <= j_max`,
///
/// `lambda_j = (log j/(4pi) - (1-s)/(4pi s) log(log j/(4pi)) + log s/(4pi))^(1/s) - d_tilde`
/// `mu_j     = (j/2) (4pi/log j)^(1/s) - d`.
///
/// Errors with the smallest valid start index when either formula is
/// negative or non-increasing at the requested `J`.
pub fn generate_closed_form_brs(
    s: f64,
    d: f64,
    d_tilde: f64,
    j_start: u64,
    j_max: u64,
) -> Result<(NodeSequence, NodeSequence)> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::Parameter(format!("s must lie in (0, 1], got {s}")));
    }
    if j_start < 2 || j_max <= j_start {
        return Err(Error::Parameter("need 2 <= J < j_max".into()));
    }
    let eval = |j: u64| -> Option<(f64, f64)> {
        let lj = (j as f64).ln();
        let big_l = lj / (4.0 * std::f64::consts::PI);
        if big_l <= 0.0 {
            return None;
        }
        let inner = big_l - (1.0 - s) / (4.0 * std::f64::consts::PI * s) * big_l.ln()
            + s.ln() / (4.0 * std::f64::consts::PI);
        if inner < 0.0 {
            return None;
        }
        let lambda = inner.powf(1.0 / s) - d_tilde;
        let mu = (j as f64 / 2.0) * (4.0 * std::f64::consts::PI / lj).powf(1.0 / s) - d;
        if lambda < 0.0 || mu < 0.0 {
            return None;
        }
        Some((lambda, mu))
    };

    let mut lambdas = Vec::with_capacity((j_max - j_start + 1) as usize);
    let mut mus = Vec::with_capacity((j_max - j_start + 1) as usize);
    for j in j_start..=j_max {
        match eval(j) {
            Some((l, m)) => {
                if let (Some(&pl), Some(&pm)) = (lambdas.last(), mus.last()) {
                    if l <= pl || m <= pm {
                        return Err(smallest_valid_j(&eval, j_start, j_max));
                    }
                }
                lambdas.push(l);
                mus.push(m);
            }
            None => return Err(smallest_valid_j(&eval, j_start, j_max)),
        }
    }
    let prov_l = format!("brs-lambda(s={s}, d_tilde={d_tilde}, J={j_start})");
    let prov_m = format!("brs-mu(s={s}, d={d}, J={j_start})");
    Ok((
        NodeSequence::new(lambdas, j_start as i64, prov_l)?,
        NodeSequence::new(mus, j_start as i64, prov_m)?,
    ))
}

fn smallest_valid_j(eval: &dyn Fn(u64) -> Option<(f64, f64)>, j_start: u64, j_max: u64) -> Error {
    // smallest J from which both formulas stay valid and increasing
    let mut candidate = None;
    let mut prev: Option<(f64, f64)> = None;
    for j in 2..=j_max {
        match eval(j) {
            Some((l, m)) => {
                let increasing = prev.map(|(pl, pm)| l > pl && m > pm).unwrap_or(true);
                if increasing {
                    if candidate.is_none() {
                        candidate = Some(j);
                    }
                } else {
                    candidate = None;
                }
                prev = Some((l, m));
            }
            None => {
                candidate = None;
                prev = None;
            }
        }
    }
    Error::InvalidRange {
        j: j_start as i64,
        min_valid_j: candidate.map(|j| j as i64).unwrap_or(i64::MAX),
    }
}

/// Criticality classification of a pair against exponents `p, q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criticality {
    Supercritical,
    Subcritical,
    Critical,
    Indeterminate,
}

/// Tail estimates backing a classification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub class: Criticality,
    pub alpha_sup: f64,
    pub alpha_inf: f64,
    pub beta_sup: f64,
    pub beta_inf: f64,
}

/// Estimate the tail limits of `|l_j|^{p-1} gap` and `|m_j|^{q-1} gap` over
/// `|j| >= tail_n` and classify the pair.
pub fn classify_pair(
    lambda: &NodeSequence,
    mu: &NodeSequence,
    p: f64,
    q: f64,
    tail_n: i64,
    margin: f64,
) -> Result<ClassifyReport> {
    if (1.0 / p + 1.0 / q - 1.0).abs() > 1e-12 {
        return Err(Error::Parameter(format!("need 1/p + 1/q = 1, got p={p}, q={q}")));
    }
    if !(p > 1.0 && q > 1.0) {
        return Err(Error::Parameter("need 1 < p, q < inf".into()));
    }
    let (alpha_sup, alpha_inf) = tail_gap_range(lambda, p - 1.0, tail_n)?;
    let (beta_sup, beta_inf) = tail_gap_range(mu, q - 1.0, tail_n)?;

    let half = 0.5;
    let sup_product = alpha_sup.powf(1.0 / p) * beta_sup.powf(1.0 / q);
    let inf_product = alpha_inf.powf(1.0 / p) * beta_inf.powf(1.0 / q);
    let class = if sup_product < half - margin {
        Criticality::Supercritical
    } else if inf_product > half + margin {
        Criticality::Subcritical
    } else if (alpha_sup - half).abs() <= margin
        && (alpha_inf - half).abs() <= margin
        && (beta_sup - half).abs() <= margin
        && (beta_inf - half).abs() <= margin
    {
        Criticality::Critical
    } else {
        Criticality::Indeterminate
    };
    Ok(ClassifyReport { class, alpha_sup, alpha_inf, beta_sup, beta_inf })
}

fn tail_gap_range(seq: &NodeSequence, exponent: f64, tail_n: i64) -> Result<(f64, f64)> {
    let mut sup = f64::NEG_INFINITY;
    let mut inf = f64::INFINITY;
    for i in 0..seq.len().saturating_sub(1) {
        let j = seq.index_of(i);
        if j.abs() < tail_n {
            continue;
        }
        let a = seq.values[i];
        let b = seq.values[i + 1];
        let base = a.abs().min(b.abs());
        let wg = base.powf(exponent) * (b - a);
        sup = sup.max(wg);
        inf = inf.min(wg);
    }
    if !sup.is_finite() && sup < 0.0 {
        return Err(Error::Parameter(format!(
            "no pairs with |j| >= {tail_n}; window has indices {}..{}",
            seq.index_offset,
            seq.index_of(seq.len().saturating_sub(1))
        )));
    }
    Ok((sup, inf))
}

/// Ratio of sequence values to a model of the index.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RatioTable {
    pub rows: Vec<(i64, f64)>,
    /// Mean ratio over the final decade of indices.
    pub final_decade_mean: f64,
    /// Least-squares slope of ratio against log10(j) over the final decade.
    pub final_decade_slope: f64,
}

/// Compare values against `model(j)`, skipping indices where the model is
/// not positive and finite.
pub fn asymptotic_ratio(seq: &NodeSequence, model: &dyn Fn(i64) -> f64) -> RatioTable {
    let mut rows = Vec::new();
    for (i, &v) in seq.values.iter().enumerate() {
        let j = seq.index_of(i);
        let m = model(j);
        if m.is_finite() && m > 0.0 {
            rows.push((j, v / m));
        }
    }
    let j_hi = rows.iter().map(|&(j, _)| j).max().unwrap_or(0);
    let decade: Vec<&(i64, f64)> = rows.iter().filter(|(j, _)| *j >= j_hi / 10).collect();
    let n = decade.len() as f64;
    let (mean, slope) = if decade.len() >= 2 {
        let mean_y = decade.iter().map(|(_, r)| r).sum::<f64>() / n;
        let mean_x = decade.iter().map(|(j, _)| (*j as f64).log10()).sum::<f64>() / n;
        let mut sxy = 0.0;
        let mut sxx = 0.0;
        for (j, r) in &decade {
            let x = (*j as f64).log10() - mean_x;
            sxy += x * (r - mean_y);
            sxx += x * x;
        }
        (mean_y, if sxx > 0.0 { sxy / sxx } else { 0.0 })
    } else {
        (decade.first().map(|(_, r)| *r).unwrap_or(f64::NAN), 0.0)
    };
    RatioTable { rows, final_decade_mean: mean, final_decade_slope: slope }
}
