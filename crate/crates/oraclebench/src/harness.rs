//! Monte Carlo experiments: the optimization-to-hypothesis-testing
//! reduction, empirical complexity, rate fits, diminishing returns along
//! anytime runs, and threshold active learning.
//!
//! Every cell `(hypothesis, trial)` draws from its own stream seeded by
//! `hash(base_seed, hypothesis, trial)`. Cells run in parallel and are
//! reduced in a fixed order, so results do not depend on the thread count.

use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::algorithms::{canonical_estimate, drive, ActiveBisection, Algorithm};
use crate::error::{out_of_range, Error, Result};
use crate::geometry::Domain;
use crate::infobounds::{fano_lower, ir_upper, lf_term, moment_capacity, plugin_mi, MiEstimate, SupMethod};
use crate::instances::{build_ensemble, EnsembleSpec, Family, Instance, InstanceEnsemble};
use crate::oracles::OracleModel;
use crate::seed::{derive_seed, stream};

pub const MIN_TRIALS: usize = 30;
pub const BOOTSTRAP_RESAMPLES: usize = 200;
const BOOTSTRAP_Z: f64 = 1.959_963_984_540_054;
const BOOTSTRAP_TAG: u64 = 0xB0_07;
const THETA_TAG: u64 = 0x7E7A;
const CHUNK: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriterionMode {
    /// `max_i P(err_i^r ≥ ε) ≤ δ`
    Probability,
    /// `max_i E[err_i^r] < ε`
    MeanError,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Criterion {
    pub eps: f64,
    pub delta: f64,
    pub r: f64,
    pub mode: CriterionMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub ensemble: EnsembleSpec,
    pub oracle: OracleModel,
    pub algorithm: Algorithm,
    pub horizons: Vec<usize>,
    pub trials: usize,
    pub base_seed: u64,
    pub criterion: Criterion,
}

impl ExperimentConfig {
    /// All invariant violations, not just the first.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.trials < MIN_TRIALS {
            v.push(format!(
                "trials = {} violates trials ≥ {MIN_TRIALS} (minimum 30 per cell)",
                self.trials
            ));
        }
        if self.horizons.first() == Some(&0) {
            v.push("horizons must be ≥ 1".into());
        }
        if self.horizons.windows(2).any(|w| w[0] >= w[1]) {
            v.push("horizons must be strictly increasing".into());
        }
        let c = &self.criterion;
        if !(c.eps > 0.0) {
            v.push(format!("eps = {} violates ε > 0", c.eps));
        }
        if !(c.delta > 0.0 && c.delta < 0.5) {
            v.push(format!("delta = {} violates δ ∈ (0,1/2)", c.delta));
        }
        if !(c.r >= 1.0) {
            v.push(format!("r = {} violates r ≥ 1", c.r));
        }
        v
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(v))
        }
    }
}

#[derive(Debug, Clone)]
struct TrialOutcome {
    hypothesis: usize,
    errs: Vec<f64>,
    estimates: Vec<usize>,
}

fn trial_seed(base: u64, hypothesis: usize, trial: usize) -> u64 {
    derive_seed(&[base, hypothesis as u64, trial as u64])
}

/// Runs every `(hypothesis, trial)` cell and records, for each configured
/// horizon `T`, the excess value and canonical estimate of the candidate
/// after `T` queries.
fn simulate(cfg: &ExperimentConfig, ensemble: &InstanceEnsemble) -> Result<Vec<TrialOutcome>> {
    let cells: Vec<(usize, usize)> = (0..ensemble.len())
        .flat_map(|h| (0..cfg.trials).map(move |t| (h, t)))
        .collect();
    let horizons = &cfg.horizons;
    if horizons.is_empty() {
        return Ok(Vec::new());
    }
    cells
        .par_iter()
        .map(|&(h, trial)| -> Result<TrialOutcome> {
            let inst = &ensemble.instances[h];
            let mut errs = Vec::with_capacity(horizons.len());
            let mut estimates = Vec::with_capacity(horizons.len());
            if cfg.algorithm.is_anytime() {
                let mut rng = stream(&[trial_seed(cfg.base_seed, h, trial)]);
                let mut next = 0;
                let last = *horizons.last().unwrap_or(&1);
                drive(&cfg.algorithm, &cfg.oracle, inst, last, &mut rng, |t, x, _| {
                    if next < horizons.len() && t == horizons[next] + 1 {
                        errs.push(inst.excess_unchecked(x));
                        estimates.push(canonical_estimate(ensemble, x));
                        next += 1;
                    }
                })?;
            } else {
                for (k, &horizon) in horizons.iter().enumerate() {
                    let mut rng = stream(&[trial_seed(cfg.base_seed, h, trial), k as u64]);
                    let x = drive(&cfg.algorithm, &cfg.oracle, inst, horizon, &mut rng, |_, _, _| {})?;
                    errs.push(inst.excess_unchecked(&x));
                    estimates.push(canonical_estimate(ensemble, &x));
                }
            }
            Ok(TrialOutcome {
                hypothesis: h,
                errs,
                estimates,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct HorizonRow {
    pub horizon: usize,
    /// Mean excess over all trials.
    pub mean_err: f64,
    /// Largest per-hypothesis mean excess.
    pub max_err: f64,
    /// Largest per-hypothesis `P(err^r ≥ ε)`.
    pub p_err: f64,
    /// `P(M̂ ≠ M)` with `M` uniform.
    pub p_mismatch: f64,
    pub per_hypothesis_mismatch: Vec<f64>,
    pub confusion: Vec<Vec<u64>>,
    pub mi: MiEstimate,
    pub mi_lo: f64,
    pub mi_hi: f64,
    pub ir_upper: f64,
    pub fano_lower: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub hypotheses: usize,
    pub trials: usize,
    pub rows: Vec<HorizonRow>,
}

/// Per-step information bound for the configured oracle: the
/// information-radius max-KL, or `p·ln 2` for the moment-bounded oracle.
pub fn per_step_information(ensemble: &InstanceEnsemble, oracle: &OracleModel) -> Result<f64> {
    match oracle {
        OracleModel::MomentBounded { .. } => moment_capacity(oracle),
        _ => Ok(ir_upper(ensemble, oracle, 1, &SupMethod::Auto)?.per_step),
    }
}

fn bootstrap_mi(pairs: &[(usize, usize)], n: usize, seed: u64) -> Result<(f64, f64)> {
    use rand::Rng;
    let mut rng = stream(&[seed]);
    let mut values = Vec::with_capacity(BOOTSTRAP_RESAMPLES);
    for _ in 0..BOOTSTRAP_RESAMPLES {
        let mut conf = vec![vec![0u64; n]; n];
        for _ in 0..pairs.len() {
            let (m, e) = pairs[rng.random_range(0..pairs.len())];
            conf[m][e] += 1;
        }
        values.push(plugin_mi(&conf)?.plugin);
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (values.len() - 1) as f64;
    Ok((mean, var.sqrt()))
}

/// Runs the hypothesis-testing reduction: nature picks `f_M`, the algorithm
/// runs `T` steps, and the canonical estimator guesses `M̂`. Each hypothesis
/// receives exactly `trials` runs, so `M` is uniform in the empirical joint.
pub fn hypothesis_test(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let ensemble = build_ensemble(&cfg.ensemble)?;
    let outcomes = simulate(cfg, &ensemble)?;
    let per_step = per_step_information(&ensemble, &cfg.oracle).unwrap_or(f64::NAN);
    let n = ensemble.len();
    let r = cfg.criterion.r;
    let mut rows = Vec::with_capacity(cfg.horizons.len());
    for (k, &horizon) in cfg.horizons.iter().enumerate() {
        let mut confusion = vec![vec![0u64; n]; n];
        let mut err_sum = vec![0.0; n];
        let mut fail = vec![0usize; n];
        let mut pairs = Vec::with_capacity(outcomes.len());
        for o in &outcomes {
            let e = o.errs[k];
            confusion[o.hypothesis][o.estimates[k]] += 1;
            err_sum[o.hypothesis] += e;
            if e.powf(r) >= cfg.criterion.eps {
                fail[o.hypothesis] += 1;
            }
            pairs.push((o.hypothesis, o.estimates[k]));
        }
        let trials = cfg.trials as f64;
        let total = outcomes.len() as f64;
        let per_hypothesis_mismatch: Vec<f64> = (0..n).map(|h| 1.0 - confusion[h][h] as f64 / trials).collect();
        let p_mismatch = per_hypothesis_mismatch.iter().sum::<f64>() / n as f64;
        let mi = plugin_mi(&confusion)?;
        let (_, se) = bootstrap_mi(&pairs, n, derive_seed(&[cfg.base_seed, BOOTSTRAP_TAG, k as u64]))?;
        let fano = if p_mismatch >= 0.5 {
            0.0
        } else {
            fano_lower(n, p_mismatch).unwrap_or(f64::NAN)
        };
        rows.push(HorizonRow {
            horizon,
            mean_err: err_sum.iter().sum::<f64>() / total,
            max_err: err_sum.iter().map(|s| s / trials).fold(f64::NEG_INFINITY, f64::max),
            p_err: fail.iter().map(|&f| f as f64 / trials).fold(0.0, f64::max),
            p_mismatch,
            per_hypothesis_mismatch,
            confusion,
            mi,
            mi_lo: mi.plugin - BOOTSTRAP_Z * se,
            mi_hi: mi.plugin + BOOTSTRAP_Z * se,
            ir_upper: per_step * horizon as f64,
            fano_lower: fano,
        });
    }
    Ok(ExperimentResult {
        hypotheses: n,
        trials: cfg.trials,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityEstimate {
    pub eps: f64,
    /// Smallest configured horizon meeting the criterion.
    pub first_pass: Option<usize>,
    /// Largest failing horizon: the one preceding `first_pass`, or the last
    /// configured horizon when the criterion is never met.
    pub last_fail: Option<usize>,
    pub resolved: bool,
}

/// Empirical `T̂(ε)` for each target `ε`, by a scan over the configured
/// horizons. The criterion mode and `δ`, `r` come from `cfg.criterion`.
pub fn estimate_complexity(cfg: &ExperimentConfig, targets: &[f64]) -> Result<Vec<ComplexityEstimate>> {
    cfg.validate()?;
    if targets.iter().any(|e| !(*e > 0.0)) {
        return Err(out_of_range("target ε", "ε > 0"));
    }
    let ensemble = build_ensemble(&cfg.ensemble)?;
    let outcomes = simulate(cfg, &ensemble)?;
    let n = ensemble.len();
    let r = cfg.criterion.r;
    Ok(targets
        .iter()
        .map(|&eps| {
            let passes = |k: usize| -> bool {
                let mut acc = vec![0.0; n];
                for o in &outcomes {
                    let e = o.errs[k].powf(r);
                    acc[o.hypothesis] += match cfg.criterion.mode {
                        CriterionMode::MeanError => e,
                        CriterionMode::Probability => (e >= eps) as u8 as f64,
                    };
                }
                let worst = acc.iter().fold(0.0f64, |m, v| m.max(*v)) / cfg.trials as f64;
                match cfg.criterion.mode {
                    CriterionMode::MeanError => worst < eps,
                    CriterionMode::Probability => worst <= cfg.criterion.delta,
                }
            };
            let first = (0..cfg.horizons.len()).find(|&k| passes(k));
            ComplexityEstimate {
                eps,
                first_pass: first.map(|k| cfg.horizons[k]),
                last_fail: match first {
                    Some(k) => k.checked_sub(1).map(|k| cfg.horizons[k]),
                    None => cfg.horizons.last().copied(),
                },
                resolved: first.is_some(),
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_se: f64,
    /// 95% Student-t interval for the slope.
    pub ci: (f64, f64),
    pub r_squared: f64,
}

/// Ordinary least squares of `ys` on `xs`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<Fit> {
    let n = xs.len();
    if n != ys.len() || n < 3 {
        return Err(out_of_range(format!("{n} points"), "at least 3 paired points"));
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(out_of_range("abscissae", "not all equal"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - intercept - slope * x;
            e * e
        })
        .sum();
    let slope_se = (sse / (nf - 2.0) / sxx).sqrt();
    let t = StudentsT::new(0.0, 1.0, nf - 2.0)
        .map(|d| d.inverse_cdf(0.975))
        .unwrap_or(BOOTSTRAP_Z);
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - sse / syy };
    Ok(Fit {
        slope,
        intercept,
        slope_se,
        ci: (slope - t * slope_se, slope + t * slope_se),
        r_squared,
    })
}

/// Log-log least squares on `(scale, value)` pairs.
pub fn fit_exponent(points: &[(f64, f64)]) -> Result<Fit> {
    if points.len() < 4 {
        return Err(out_of_range(format!("{} points", points.len()), "at least 4 points"));
    }
    if points.iter().any(|(s, v)| !(*s > 0.0) || !(*v > 0.0)) {
        return Err(out_of_range("scales and values", "all positive"));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    linear_fit(&xs, &ys)
}

/// About `count` log-spaced integers in `[lo, hi]`, deduplicated.
pub fn log_spaced(lo: usize, hi: usize, count: usize) -> Vec<usize> {
    let (a, b) = ((lo.max(1) as f64).ln(), (hi.max(lo) as f64).ln());
    let mut out: Vec<usize> = (0..count)
        .map(|i| {
            let f = if count > 1 { i as f64 / (count - 1) as f64 } else { 0.0 };
            (a + f * (b - a)).exp().round() as usize
        })
        .collect();
    out.dedup();
    out
}

/// Constant `(L/κ)²(D_X² + 1)/σ²` relating per-step information to the
/// error of the current query, for quadratic ensembles under Gaussian oracles.
pub fn lf_constant(ensemble: &InstanceEnsemble, oracle: &OracleModel) -> Option<f64> {
    let quadratic = ensemble
        .instances
        .iter()
        .all(|f| matches!(f.family, Family::Quadratic { .. }));
    match oracle {
        OracleModel::Fog { sigma } | OracleModel::Sog { sigma } if quadratic => {
            let d = ensemble.domain().diameter();
            Some((d * d + 1.0) / (sigma * sigma))
        }
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiminishingReturns {
    /// Steps `t = 1..=T`; entry `t − 1` of each trace refers to query `X_t`.
    pub horizon: usize,
    pub err_mean: Vec<f64>,
    pub err_se: Vec<f64>,
    pub lf_mean: Vec<f64>,
    pub lf_se: Vec<f64>,
    /// `K` from [`lf_constant`], when it applies.
    pub constant: Option<f64>,
    /// Steps where `lf_mean > K·err_mean + 2·se(lf − K·err)`.
    pub violations: Vec<usize>,
    pub err_fit: Fit,
    pub lf_fit: Fit,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceWindow {
    pub lo: usize,
    pub hi: usize,
    pub points: usize,
}

#[derive(Clone)]
struct Moments {
    err: Vec<f64>,
    err2: Vec<f64>,
    lf: Vec<f64>,
    lf2: Vec<f64>,
    diff: Vec<f64>,
    diff2: Vec<f64>,
}

impl Moments {
    fn zeros(t: usize) -> Self {
        let z = vec![0.0; t];
        Moments {
            err: z.clone(),
            err2: z.clone(),
            lf: z.clone(),
            lf2: z.clone(),
            diff: z.clone(),
            diff2: z,
        }
    }

    fn add(&mut self, o: &Moments) {
        for (dst, src) in [
            (&mut self.err, &o.err),
            (&mut self.err2, &o.err2),
            (&mut self.lf, &o.lf),
            (&mut self.lf2, &o.lf2),
            (&mut self.diff, &o.diff),
            (&mut self.diff2, &o.diff2),
        ] {
            for (a, b) in dst.iter_mut().zip(src) {
                *a += b;
            }
        }
    }
}

/// Monte Carlo means of `err(X_t)^r` and of the Lyapunov terms along anytime
/// runs of length `cfg.horizons.last()`, with rate fits over `window`.
pub fn diminishing_returns(cfg: &ExperimentConfig, window: TraceWindow) -> Result<DiminishingReturns> {
    cfg.validate()?;
    if !cfg.algorithm.is_anytime() {
        return Err(Error::Unsupported(
            "diminishing returns needs an anytime algorithm".into(),
        ));
    }
    let ensemble = build_ensemble(&cfg.ensemble)?;
    let c_star = ensemble
        .common_min
        .ok_or_else(|| Error::Unsupported("ensemble has no common minimum".into()))?;
    let horizon = *cfg.horizons.last().unwrap_or(&1);
    let k_const = lf_constant(&ensemble, &cfg.oracle);
    let kk = k_const.unwrap_or(0.0);
    let r = cfg.criterion.r;
    let cells: Vec<(usize, usize)> = (0..ensemble.len())
        .flat_map(|h| (0..cfg.trials).map(move |t| (h, t)))
        .collect();
    let partials: Vec<Moments> = cells
        .par_chunks(CHUNK)
        .map(|chunk| -> Result<Moments> {
            let mut m = Moments::zeros(horizon);
            for &(h, trial) in chunk {
                let inst = &ensemble.instances[h];
                let mut rng = stream(&[trial_seed(cfg.base_seed, h, trial)]);
                let mut failure = None;
                drive(&cfg.algorithm, &cfg.oracle, inst, horizon, &mut rng, |t, x, _| {
                    if t > horizon {
                        return;
                    }
                    let i = t - 1;
                    let e = inst.excess_unchecked(x).powf(r);
                    let l = match lf_term(&cfg.oracle, inst, x, c_star) {
                        Ok(l) => l,
                        Err(err) => {
                            failure = Some(err);
                            return;
                        }
                    };
                    let d = l - kk * e;
                    m.err[i] += e;
                    m.err2[i] += e * e;
                    m.lf[i] += l;
                    m.lf2[i] += l * l;
                    m.diff[i] += d;
                    m.diff2[i] += d * d;
                })?;
                if let Some(err) = failure {
                    return Err(err);
                }
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = Moments::zeros(horizon);
    for p in &partials {
        total.add(p);
    }
    let count = cells.len() as f64;
    let mean = |s: &[f64]| s.iter().map(|v| v / count).collect::<Vec<_>>();
    let se = |s: &[f64], s2: &[f64]| {
        s.iter()
            .zip(s2)
            .map(|(a, b)| {
                let m = a / count;
                ((b / count - m * m).max(0.0) * count / (count - 1.0) / count).sqrt()
            })
            .collect::<Vec<_>>()
    };
    let err_mean = mean(&total.err);
    let lf_mean = mean(&total.lf);
    let diff_se = se(&total.diff, &total.diff2);
    let violations = match k_const {
        Some(k) => (0..horizon)
            .filter(|&i| lf_mean[i] > k * err_mean[i] + 2.0 * diff_se[i])
            .map(|i| i + 1)
            .collect(),
        None => Vec::new(),
    };
    let steps = log_spaced(window.lo, window.hi.min(horizon), window.points);
    let pick = |v: &[f64]| steps.iter().map(|&t| (t as f64, v[t - 1])).collect::<Vec<_>>();
    Ok(DiminishingReturns {
        horizon,
        err_se: se(&total.err, &total.err2),
        lf_se: se(&total.lf, &total.lf2),
        err_fit: fit_exponent(&pick(&err_mean))?,
        lf_fit: fit_exponent(&pick(&lf_mean))?,
        err_mean,
        lf_mean,
        constant: k_const,
        violations,
    })
}

/// Excess classification risk of the threshold estimate `θ + u` under the
/// label profile `η = clamp(1/2 + sign(u)·C|u|^{κ−1})`: the integral of
/// `|2η − 1| = min(2C s^{κ−1}, 1)` over `s ∈ [0, |u|]`.
pub fn excess_risk(kappa: f64, big_c: f64, u: f64) -> f64 {
    let a = u.abs();
    if kappa == 1.0 {
        return (2.0 * big_c).min(1.0) * a;
    }
    let s_star = (1.0 / (2.0 * big_c)).powf(1.0 / (kappa - 1.0));
    if a <= s_star {
        2.0 * big_c / kappa * a.powf(kappa)
    } else {
        2.0 * big_c / kappa * s_star.powf(kappa) + (a - s_star)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ActiveLearningReport {
    pub horizons: Vec<usize>,
    pub mean_excess: Vec<f64>,
    /// Log-log fit for `κ > 1`; for `κ = 1`, a fit of `ln(excess)` on `t`.
    pub fit: Fit,
    pub exponential: bool,
}

pub struct ActiveLearningSetup {
    pub kappa: f64,
    pub c: f64,
    pub big_c: f64,
    pub learner: ActiveBisection,
    pub horizons: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
}

/// Runs the learner against the label oracle with thresholds drawn uniformly
/// from `[0,1]` and reports the mean exact excess risk after each horizon.
pub fn active_learning_run(setup: &ActiveLearningSetup) -> Result<ActiveLearningReport> {
    let ActiveLearningSetup {
        kappa,
        c,
        big_c,
        learner,
        ref horizons,
        trials,
        seed,
    } = *setup;
    if !(1.0..=2.0).contains(&kappa) {
        return Err(Error::Unsupported(format!("κ = {kappa} outside [1, 2]")));
    }
    if trials < MIN_TRIALS {
        return Err(out_of_range(format!("trials = {trials}"), "minimum 30"));
    }
    if horizons.is_empty() || horizons[0] == 0 || horizons.windows(2).any(|w| w[0] >= w[1]) {
        return Err(out_of_range("horizons", "nonempty, ≥ 1, strictly increasing"));
    }
    let oracle = OracleModel::bernoulli_label(kappa, c, big_c)?;
    let domain = Domain::interval(0.0, 1.0)?;
    let alg = Algorithm::ActiveBisection(learner);
    let last = *horizons.last().unwrap_or(&1);
    let per_trial: Vec<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<Vec<f64>> {
            use rand::Rng;
            let theta = stream(&[seed, THETA_TAG, trial as u64]).random::<f64>();
            let inst = Instance::threshold(&domain, theta)?;
            let mut rng = stream(&[trial_seed(seed, 0, trial)]);
            let mut out = Vec::with_capacity(horizons.len());
            let mut next = 0;
            drive(&alg, &oracle, &inst, last, &mut rng, |t, x, _| {
                if next < horizons.len() && t == horizons[next] + 1 {
                    out.push(excess_risk(kappa, big_c, x[0] - theta));
                    next += 1;
                }
            })?;
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let mean_excess: Vec<f64> = (0..horizons.len())
        .map(|k| per_trial.iter().map(|v| v[k]).sum::<f64>() / trials as f64)
        .collect();
    let exponential = kappa == 1.0;
    let fit = if exponential {
        let xs: Vec<f64> = horizons.iter().map(|&t| t as f64).collect();
        let ys: Vec<f64> = mean_excess.iter().map(|v| v.ln()).collect();
        if ys.iter().any(|y| !y.is_finite()) {
            return Err(out_of_range("mean excess risk", "positive at every horizon"));
        }
        linear_fit(&xs, &ys)?
    } else {
        let pts: Vec<(f64, f64)> = horizons
            .iter()
            .map(|&t| t as f64)
            .zip(mean_excess.iter().copied())
            .collect();
        fit_exponent(&pts)?
    };
    Ok(ActiveLearningReport {
        horizons: horizons.clone(),
        mean_excess,
        fit,
        exponential,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law_fit() {
        let pts: Vec<(f64, f64)> = (1..=8)
            .map(|i| {
                let s = i as f64;
                (s, 3.0 * s.powi(-2))
            })
            .collect();
        let f = fit_exponent(&pts).unwrap();
        assert!((f.slope + 2.0).abs() < 1e-9);
        let flat: Vec<(f64, f64)> = (1..=5).map(|i| (i as f64, 4.0)).collect();
        assert!(fit_exponent(&flat).unwrap().slope.abs() < 1e-12);
        assert!(fit_exponent(&pts[..3]).is_err());
        assert!(fit_exponent(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0), (4.0, 1.0)]).is_err());
    }

    #[test]
    fn excess_risk_examples() {
        assert!((excess_risk(2.0, 0.4, 0.1) - 0.004).abs() < 1e-15);
        assert_eq!(excess_risk(2.0, 0.4, 0.0), 0.0);
        assert!((excess_risk(1.0, 0.4, -0.25) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn log_spacing() {
        let s = log_spaced(10, 1000, 3);
        assert_eq!(s, vec![10, 100, 1000]);
    }
}
