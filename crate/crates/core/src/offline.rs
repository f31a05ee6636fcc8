//! Composed offline schemes: deterministic packing, conversion, the two
//! large-item regimes, the top-level estimator, and the constant-time
//! schemes for inputs without tiny items.

use crate::bins::BinSpec;
use crate::configlp::{pack_large_items, pack_large_items_capped, BinType, LargePacking};
use crate::crucial::{MAX_SAMPLE_SIZE, check_population, crucial_sample_size, select_crucial_items, CrucialSet};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::materialize::materialize;
use crate::oracle::FIT_TOL;
use crate::params::{derive_params_with, epsilon1_of, m_of, mu_of, ParamLedger, ScaledConstants};
use crate::sampling::{approximate_intervals, EstimatorReport, Rng};
use serde::{Deserialize, Serialize};

/// Type cap for the deterministic path before it falls back to FFD.
pub const LINEAR_Q_CAP: usize = 20_000;

/// Distinct large sizes above which the deterministic path goes straight
/// to FFD.
pub const LINEAR_CLASS_CAP: usize = 48;

/// Whole-batch retries when too few large samples survive filtering.
pub const RESAMPLE_RETRIES: usize = 3;

/// Configuration counts plus a small-item fill plan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct PackingTemplate {
    pub delta: f64,
    /// Slot sizes indexed by the counts in `types_used`.
    pub class_sizes: Vec<f64>,
    pub types_used: Vec<(BinType, u64)>,
    /// Residual `h_i` per entry of `types_used`.
    pub small_fill: Vec<f64>,
    pub fresh_small_bins: u64,
    /// Bins reserved for large items outside the typed slots.
    pub large_fresh_bins: u64,
    pub reported_cost: f64,
}

impl PackingTemplate {
    /// `sum x_i + fresh bins`, every kind costing 1.
    pub fn accounted_cost(&self) -> f64 {
        let typed: u64 = self.types_used.iter().map(|(_, x)| x).sum();
        (typed + self.fresh_small_bins + self.large_fresh_bins) as f64
    }

    pub fn is_consistent(&self) -> bool {
        (self.reported_cost - self.accounted_cost()).abs() <= 1e-9
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    LinearFallback,
    ManyLarge,
    FewLarge,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::LinearFallback => "linear_fallback",
            Branch::ManyLarge => "many_large",
            Branch::FewLarge => "few_large",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxResult {
    pub app: f64,
    pub template: PackingTemplate,
    pub report: EstimatorReport,
    pub branch: Branch,
    /// Item reads over the whole run.
    pub samples_used: u64,
    /// Preconditions that did not hold for this run.
    pub notes: Vec<String>,
}

/// Deterministic large-item packing.
#[derive(Debug, Clone, PartialEq)]
pub struct DeterministicLarge {
    pub app: f64,
    pub h: usize,
    /// Surrogate sizes `y_1 <= ... <= y_m`, or the distinct sizes when
    /// no grouping happened.
    pub surrogate: Vec<f64>,
    /// Items above rank `mh`.
    pub remainder: Vec<f64>,
    pub packing: LargePacking,
}

impl DeterministicLarge {
    /// One load per bin opened by the rounded LP.
    pub fn bin_loads(&self) -> Vec<f64> {
        let mut loads = Vec::new();
        for (ty, x) in self.packing.types_used() {
            let l = ty.load(&self.packing.set.sizes);
            loads.extend(std::iter::repeat(l).take(x as usize));
        }
        loads
    }
}

/// Group `l0` into `m` runs of `h = floor(n/m)` and pack the surrogate
/// `y_1^h ... y_m^h`, `y_i` the `ih`-th smallest. The cost is
/// `App(L1) + max(2h, |R|)`. With `h = 0` the list is packed as is.
pub fn packing_deterministic_large(l0: &[f64], bins: &BinSpec, m: usize, delta: f64) -> Result<DeterministicLarge> {
    packing_deterministic_large_capped(l0, bins, m, delta, crate::configlp::DEFAULT_Q_CAP)
}

fn packing_deterministic_large_capped(
    l0: &[f64],
    bins: &BinSpec,
    m: usize,
    delta: f64,
    q_cap: usize,
) -> Result<DeterministicLarge> {
    if let Some(&a) = l0.iter().find(|&&a| a < delta) {
        return Err(Error::Precondition(format!("item {a} is below delta {delta}")));
    }
    if m == 0 {
        return Err(Error::Parameter("group count must be positive".into()));
    }
    let mut sorted = l0.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let h = n / m;
    if h == 0 {
        let packing = pack_large_items_capped(bins, &sorted, &vec![1; n], delta, q_cap)?;
        return Ok(DeterministicLarge {
            app: packing.cost,
            h: 0,
            surrogate: packing.set.sizes.clone(),
            remainder: vec![],
            packing,
        });
    }
    let surrogate: Vec<f64> = (1..=m).map(|i| sorted[i * h - 1]).collect();
    let remainder = sorted[m * h..].to_vec();
    let packing = pack_large_items_capped(bins, &surrogate, &vec![h; m], delta, q_cap)?;
    let app = packing.cost + (2 * h).max(remainder.len()) as f64;
    Ok(DeterministicLarge {
        app,
        h,
        surrogate,
        remainder,
        packing,
    })
}

/// `(1+eps) (app_L1 + (mu + 2 theta) m h + 2h)`.
pub fn packing_conversion(h: usize, m: usize, app_l1: f64, eps: f64, mu: f64, theta: f64) -> f64 {
    let (h, m) = (h as f64, m as f64);
    (1.0 + eps) * (app_l1 + (mu + 2.0 * theta) * m * h + 2.0 * h)
}

/// [`packing_conversion`] with `h = floor(n_large_est / m)` and the
/// ledger's constants.
pub fn packing_conversion_ledger(n_large_est: usize, app_l1: f64, ledger: &ParamLedger) -> f64 {
    let m = ledger.m_sampling();
    packing_conversion(n_large_est / m, m, app_l1, ledger.epsilon, ledger.mu, ledger.theta)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmallFill {
    pub total_bins: f64,
    pub fresh_bins: u64,
    /// `h_i = max(1 - delta - t_i, 0)` per type.
    pub residuals: Vec<f64>,
    /// Mass left for the fresh bins.
    pub leftover: f64,
}

/// Least `k` with `k (1 - delta) >= s`.
pub fn least_bins(s: f64, delta: f64) -> u64 {
    if s <= 0.0 {
        return 0;
    }
    let k = (s / (1.0 - delta) - FIT_TOL).ceil().max(0.0) as u64;
    if (k as f64) * (1.0 - delta) + FIT_TOL >= s {
        k
    } else {
        k + 1
    }
}

/// Spread small mass `s1` over the residuals of the typed bins in order,
/// then open the least number of fresh bins for the rest.
pub fn packing_small_items(sizes: &[f64], types: &[(BinType, u64)], s1: f64, delta: f64) -> Result<SmallFill> {
    if s1 < 0.0 || !s1.is_finite() {
        return Err(Error::Parameter(format!("s1 must be a nonnegative number, got {s1}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Parameter(format!("delta must lie in (0,1), got {delta}")));
    }
    let mut left = s1;
    let mut residuals = Vec::with_capacity(types.len());
    let mut typed = 0u64;
    for (ty, x) in types {
        let h = (1.0 - delta - ty.load(sizes)).max(0.0);
        residuals.push(h);
        left = (left - *x as f64 * h).max(0.0);
        typed += x;
    }
    let k = least_bins(left, delta);
    Ok(SmallFill {
        total_bins: (typed + k) as f64,
        fresh_bins: k,
        residuals,
        leftover: left,
    })
}

fn few_large_app(xi: f64, x: u64, s1: f64, delta: f64) -> (f64, u64) {
    let k = least_bins(s1, delta);
    ((1.0 + xi) / (1.0 - delta) * (k + x + 1) as f64, k)
}

/// `((1+xi)/(1-delta)) (k + x + 1)` with `k` least such that
/// `k (1-delta) >= s1`.
pub fn packing_with_few_large(xi: f64, x: u64, s1: f64, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta <= 0.25) {
        return Err(Error::Precondition(format!("delta must lie in (0, 1/4], got {delta}")));
    }
    if !(0.0..=0.25).contains(&xi) {
        return Err(Error::Precondition(format!("xi must lie in [0, 1/4], got {xi}")));
    }
    if s1 < 0.0 || !s1.is_finite() {
        return Err(Error::Precondition(format!("s1 must be a nonnegative number, got {s1}")));
    }
    Ok(few_large_app(xi, x, s1, delta).0)
}

fn template_from(
    delta: f64,
    class_sizes: Vec<f64>,
    types_used: Vec<(BinType, u64)>,
    small_fill: Vec<f64>,
    fresh_small_bins: u64,
    large_fresh_bins: u64,
) -> PackingTemplate {
    let mut t = PackingTemplate {
        delta,
        class_sizes,
        types_used,
        small_fill,
        fresh_small_bins,
        large_fresh_bins,
        reported_cost: 0.0,
    };
    t.reported_cost = t.accounted_cost();
    t
}

/// Deterministic packing of the whole list: the large items through
/// [`packing_deterministic_large`] with `delta = beta / 4`, the small items
/// poured into bins until less than `delta` room is left. The LP solution
/// is rounded both up and down, items left over by the floor going to
/// fresh bins first fit decreasing; `app` is the number of bins the better
/// plan actually uses.
pub fn linear_time_packing(inst: &Instance, beta: f64) -> Result<(f64, PackingTemplate)> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::Parameter(format!("beta must lie in (0,1), got {beta}")));
    }
    let delta = beta / 4.0;
    let large = inst.at_least(delta);
    let bins = BinSpec::classical();
    let m = usize::try_from(m_of(beta, delta, 1.0)).unwrap_or(usize::MAX);
    let mut distinct = large.clone();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    let planned = if distinct.len().min(m) > LINEAR_CLASS_CAP {
        Err(Error::Capacity(format!("{} distinct large sizes", distinct.len())))
    } else {
        packing_deterministic_large_capped(&large, &bins, m, delta, LINEAR_Q_CAP)
    };
    let candidates = match planned {
        Ok(det) => {
            let sizes = &det.packing.set.sizes;
            let floored: Vec<(BinType, u64)> = det
                .packing
                .set
                .types
                .iter()
                .zip(&det.packing.cover.lp.x_star)
                .map(|(t, &x)| (t.clone(), (x + FIT_TOL).floor() as u64))
                .filter(|(_, x)| *x > 0)
                .collect();
            [det.packing.types_used(), floored]
                .into_iter()
                .map(|types| {
                    let fill = types.iter().map(|(t, _)| (1.0 - delta - t.load(sizes)).max(0.0)).collect();
                    template_from(delta, sizes.clone(), types, fill, 0, det.remainder.len() as u64)
                })
                .collect()
        }
        Err(Error::Capacity(_)) => vec![template_from(delta, vec![], vec![], vec![], 0, large.len() as u64)],
        Err(e) => return Err(e),
    };
    let (used, template) = candidates
        .into_iter()
        .map(|t| (materialize(inst, &t).bins_used, t))
        .min_by_key(|(u, _)| *u)
        .expect("at least one candidate");
    Ok((used as f64, template))
}

/// Outcome of one large-item regime.
#[derive(Debug, Clone, PartialEq)]
pub struct RegimeOutcome {
    pub app: f64,
    pub template: PackingTemplate,
    pub samples_used: u64,
    pub notes: Vec<String>,
    pub crucial: Option<CrucialSet>,
}

/// Sample `ceil(2 d1 (n/n') u)` items, keep those at least `delta`, select
/// crucial items, LP-pack `y'_1^{h'} ... y'_m^{h'}` with
/// `h' = floor(n'/m)`, add the small mass, convert and scale by
/// `(1+xi)/(1-delta)`.
pub fn packing_with_many_large(
    ledger: &ParamLedger,
    inst: &Instance,
    s1: f64,
    n_large_est: usize,
    xi: f64,
    rng: &mut Rng,
) -> Result<RegimeOutcome> {
    if n_large_est == 0 {
        return Err(Error::Precondition("many-large path needs a positive large-item estimate".into()));
    }
    let n = inst.len();
    let m = ledger.m_sampling();
    let h = n_large_est / m;
    if h == 0 {
        return Err(Error::Precondition(format!(
            "large-item estimate {n_large_est} is below m = {m}"
        )));
    }
    let delta = ledger.delta;
    let (u_derived, _, _) = crucial_sample_size(m, ledger.alpha, ledger.mu)?;
    let u = ledger.overrides.u.unwrap_or(u_derived);
    let want_f = (2.0 * ledger.d1 as f64 * (n as f64 / n_large_est as f64) * u as f64).ceil();
    if !(want_f < MAX_SAMPLE_SIZE) {
        return Err(Error::Capacity(format!("many-large path wants {want_f:.3e} samples")));
    }
    let want = want_f as usize;
    let mut probe = inst.probe();
    let mut notes = Vec::new();
    if let Err(e) = check_population(n_large_est, m, ledger.mu) {
        notes.push(e.to_string());
    }
    let mut got = 0;
    let mut crucial = None;
    for _ in 0..=RESAMPLE_RETRIES {
        let mut l2 = Vec::with_capacity(u);
        for _ in 0..want {
            let (_, a) = probe.sample(rng)?;
            if a >= delta {
                l2.push(a);
            }
        }
        got = l2.len();
        if let Some(c) = select_crucial_items(m, ledger.alpha, ledger.mu, &l2, Some(u))? {
            crucial = Some(c);
            break;
        }
    }
    let Some(crucial) = crucial else {
        return Err(Error::ResampleExhausted {
            attempts: RESAMPLE_RETRIES + 1,
            got,
            needed: u,
        });
    };
    let mut out = many_large_from_crucial(ledger, crucial, s1, n_large_est, xi)?;
    out.samples_used = probe.reads();
    out.notes.splice(0..0, notes);
    Ok(out)
}

/// Second half of the many-large regime, from selected crucial items on.
pub fn many_large_from_crucial(
    ledger: &ParamLedger,
    crucial: CrucialSet,
    s1: f64,
    n_large: usize,
    xi: f64,
) -> Result<RegimeOutcome> {
    let m = crucial.m;
    let h = n_large / m;
    if h == 0 {
        return Err(Error::Precondition(format!("large-item count {n_large} is below m = {m}")));
    }
    let delta = ledger.delta;
    let packing = pack_large_items(&BinSpec::classical(), &crucial.values, &vec![h; m], delta)?;
    let types = packing.types_used();
    let small = packing_small_items(&packing.set.sizes, &types, s1, delta)?;
    let converted = packing_conversion(h, m, small.total_bins, ledger.epsilon, ledger.mu, ledger.theta);
    let app = (1.0 + xi) / (1.0 - delta) * converted;
    let slack = ((ledger.mu + 2.0 * ledger.theta) * (m * h) as f64 + 2.0 * h as f64).ceil() as u64;
    let template = template_from(
        delta,
        packing.set.sizes.clone(),
        types,
        small.residuals.clone(),
        small.fresh_bins,
        slack,
    );
    Ok(RegimeOutcome {
        app,
        template,
        samples_used: 0,
        notes: vec![],
        crucial: Some(crucial),
    })
}

/// `xi` used by the many-large regime.
pub fn many_large_xi(ledger: &ParamLedger) -> f64 {
    let d = ledger.delta;
    (d * d).max(ledger.theta + d.powi(3))
}

/// Branch selected from the estimator's output. Pure in its arguments.
pub fn choose_branch(s: f64, n_large_est: f64, ledger: &ParamLedger) -> Branch {
    let d = ledger.delta;
    if s < ledger.s_threshold() {
        Branch::LinearFallback
    } else if n_large_est >= d * d / 4.0 * s {
        if (n_large_est as usize) / ledger.m_sampling() == 0 {
            Branch::LinearFallback
        } else {
            Branch::ManyLarge
        }
    } else {
        Branch::FewLarge
    }
}

/// `(x, xi)` for the few-large branch.
pub fn few_large_inputs(s: f64, n_large_est: f64, ledger: &ParamLedger) -> (u64, f64) {
    let (th, d) = (ledger.theta, ledger.delta);
    if n_large_est > 0.0 {
        ((n_large_est / (1.0 - th)).ceil() as u64, (d * d).max(th + d.powi(3)))
    } else {
        ((6.0 * d * s).ceil() as u64, (12.0 * d).max(th + d.powi(3)))
    }
}

/// The top-level scheme with derived constants.
pub fn approximate_bin_packing(tau: f64, inst: &Instance, rng: &mut Rng) -> Result<ApproxResult> {
    approximate_bin_packing_with(tau, inst, ScaledConstants::default(), rng)
}

/// The top-level scheme with an override block.
pub fn approximate_bin_packing_with(
    tau: f64,
    inst: &Instance,
    overrides: ScaledConstants,
    rng: &mut Rng,
) -> Result<ApproxResult> {
    let ledger = derive_params_with(tau, &BinSpec::classical(), overrides)?;
    approximate_with_ledger(&ledger, inst, rng)
}

pub fn approximate_with_ledger(ledger: &ParamLedger, inst: &Instance, rng: &mut Rng) -> Result<ApproxResult> {
    if inst.is_empty() {
        return Ok(ApproxResult {
            app: 0.0,
            template: PackingTemplate {
                delta: ledger.delta,
                ..Default::default()
            },
            report: EstimatorReport {
                app_w: 0.0,
                app_w_small: 0.0,
                c_hat_large: 0.0,
                c_hat: vec![],
                samples_used: 0,
                phases: 0,
                exact_fallback: true,
                final_m: 0,
                z: 0,
            },
            branch: Branch::LinearFallback,
            samples_used: 0,
            notes: vec![],
        });
    }
    let part = ledger.partition(inst.len())?;
    let report = approximate_intervals(ledger, &part, inst, rng)?;
    let s = report.app_w;
    let s1 = report.app_w_small;
    let n_large = report.c_hat_large;
    let branch = choose_branch(s, n_large, ledger);
    let mut notes = Vec::new();
    let (app, template, extra) = match branch {
        Branch::LinearFallback => {
            let (app, t) = linear_time_packing(inst, ledger.beta)?;
            (app, t, inst.len() as u64)
        }
        Branch::ManyLarge => {
            let xi = many_large_xi(ledger);
            let out = packing_with_many_large(ledger, inst, s1, n_large as usize, xi, rng)?;
            notes.extend(out.notes);
            (out.app, out.template, out.samples_used)
        }
        Branch::FewLarge => {
            let (x, xi) = few_large_inputs(s, n_large, ledger);
            if xi > 0.25 || ledger.delta > 0.25 {
                notes.push(format!("few-large precondition xi <= 1/4 fails: xi = {xi}"));
            }
            let (app, k) = few_large_app(xi, x, s1, ledger.delta);
            let t = template_from(ledger.delta, vec![], vec![], vec![], k, x + 1);
            (app, t, 0)
        }
    };
    Ok(ApproxResult {
        app,
        template,
        samples_used: report.samples_used + extra,
        report,
        branch,
        notes,
    })
}

/// Parameters of the constant-time scheme for inputs without tiny items.
#[derive(Debug, Clone, PartialEq)]
pub struct SdeltaParams {
    pub eps: f64,
    pub delta: f64,
    pub alpha: f64,
    pub m: Option<usize>,
    pub u: Option<usize>,
}

impl SdeltaParams {
    pub fn new(eps: f64, delta: f64) -> Self {
        SdeltaParams {
            eps,
            delta,
            alpha: 1.0 / 12.0,
            m: None,
            u: None,
        }
    }

    pub fn scaled(mut self, c: &ScaledConstants) -> Self {
        self.m = c.m.or(self.m);
        self.u = c.u.or(self.u);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdeltaOutcome {
    pub app: f64,
    pub queries: u64,
    pub m: usize,
    pub u: usize,
    pub h: usize,
    pub crucial: CrucialSet,
    /// Set when the population is below the rank guarantee's threshold.
    pub note: Option<String>,
}

/// Constant-query scheme for `n` items all at least `delta`, read through
/// `sample`. Reads exactly `u` items.
pub fn constant_time_sdelta(
    params: &SdeltaParams,
    bins: &BinSpec,
    n: usize,
    sample: &mut dyn FnMut(&mut Rng) -> Result<f64>,
    rng: &mut Rng,
) -> Result<SdeltaOutcome> {
    let (eps, delta) = (params.eps, params.delta);
    if !(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Parameter(format!("eps and delta must lie in (0,1), got {eps}, {delta}")));
    }
    let eta = bins.eta();
    let mu = mu_of(eps, delta, eta);
    let m = params
        .m
        .unwrap_or_else(|| usize::try_from(m_of(eps, delta, eta)).unwrap_or(usize::MAX));
    let (u_derived, _, _) = crucial_sample_size(m, params.alpha, mu)?;
    let u = params.u.unwrap_or(u_derived);
    let h = n / m;
    if h == 0 {
        return Err(Error::Precondition(format!("{n} items is fewer than m = {m}")));
    }
    let note = check_population(n, m, mu).err().map(|e| e.to_string());
    let mut xs = Vec::with_capacity(u);
    for _ in 0..u {
        let a = sample(rng)?;
        if a < delta {
            return Err(Error::Precondition(format!("item {a} is below delta {delta}")));
        }
        xs.push(a);
    }
    let crucial = select_crucial_items(m, params.alpha, mu, &xs, Some(u))?
        .ok_or_else(|| Error::Precondition("not enough samples".into()))?;
    let packing = pack_large_items(bins, &crucial.values, &vec![h; m], delta)?;
    let app = packing_conversion(h, m, packing.cost, eps, mu, 0.0);
    Ok(SdeltaOutcome {
        app,
        queries: u as u64,
        m,
        u,
        h,
        crucial,
        note,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomInputOutcome {
    pub app: f64,
    pub b1: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub queries: u64,
}

/// Check the small-versus-large count property by a full count, then
/// approximate the items at least `delta1` and add `(eps/3) eta b1'`.
pub fn random_input_scheme(
    delta1: f64,
    delta2: f64,
    params: &SdeltaParams,
    bins: &BinSpec,
    inst: &Instance,
    rng: &mut Rng,
) -> Result<RandomInputOutcome> {
    if !(delta1 > 0.0 && delta2 >= delta1) {
        return Err(Error::Parameter(format!("need delta2 >= delta1 > 0, got {delta1}, {delta2}")));
    }
    let c = bins.c();
    if delta2 >= c {
        return Err(Error::Parameter(format!("delta2 {delta2} must be below c = {c}")));
    }
    let eps = params.eps;
    let eta = bins.eta();
    let small = inst.items().iter().filter(|&&a| a <= delta2).count();
    let large = inst.items().iter().filter(|&&a| a >= delta1).count();
    let lhs = (delta2 / (c - delta2) * small as f64).ceil();
    let rhs = eps / 3.0 * eta * delta1 * large as f64;
    if lhs > rhs {
        return Err(Error::PropertyViolation { lhs, rhs });
    }
    let sub = SdeltaParams {
        eps: eps / 3.0,
        delta: delta1,
        ..params.clone()
    };
    let mut probe = inst.probe();
    let limit = 1000 * inst.len().max(1);
    let mut sample = |r: &mut Rng| -> Result<f64> {
        for _ in 0..limit {
            let (_, a) = probe.sample(r)?;
            if a >= delta1 {
                return Ok(a);
            }
        }
        Err(Error::Precondition("no item at least delta1 was drawn".into()))
    };
    let out = constant_time_sdelta(&sub, bins, large, &mut sample, rng)?;
    Ok(RandomInputOutcome {
        app: out.app * (1.0 + eps * eta / 3.0),
        b1: out.app,
        lhs,
        rhs,
        queries: probe.reads(),
    })
}

/// The property's small-item threshold `eps1 eta delta1`, with `eps1`
/// the relative accuracy used by the grouping.
pub fn property_ratio(eps: f64, eta: f64, delta1: f64) -> f64 {
    epsilon1_of(eps) * eta * delta1
}
