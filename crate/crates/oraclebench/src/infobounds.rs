//! Information bounds: Fano lower bounds, information-radius and
//! Lyapunov-function upper bounds, closed-form complexity lower bounds, the
//! functional-recurrence checker and the plug-in mutual information.
//!
//! Everything is in nats; formulas quoted with "log 2" use `ln 2`.

use std::collections::BTreeMap;
use std::f64::consts::LN_2;

use serde::Serialize;
use serde_json::Value;

use crate::algorithms::Transcript;
use crate::error::{out_of_range, Error, Result};
use crate::geometry::{Domain, DomainKind};
use crate::instances::{grid, Family, Instance, InstanceEnsemble};
use crate::oracles::{binary_entropy, binary_kl, OracleModel};
use crate::seed::stream;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Precondition {
    pub condition: String,
    pub satisfied: bool,
}

/// An evaluated bound with the inputs that produced it. Complexity bounds
/// report a query count in `value_nats`; information bounds report nats.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    #[serde(rename = "value_nats")]
    pub value: f64,
    pub inputs: BTreeMap<String, Value>,
    pub validity: Vec<Precondition>,
}

impl BoundReport {
    pub fn new(name: impl Into<String>, value: f64) -> Self {
        BoundReport {
            name: name.into(),
            value,
            inputs: BTreeMap::new(),
            validity: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), v.into());
        self
    }

    pub fn require(mut self, condition: impl Into<String>, satisfied: bool) -> Self {
        self.validity.push(Precondition {
            condition: condition.into(),
            satisfied,
        });
        self
    }

    pub fn is_valid(&self) -> bool {
        self.validity.iter().all(|p| p.satisfied)
    }
}

/// Fano lower bound on `I(M; M̂)` for `N` equiprobable hypotheses recovered
/// with error probability `δ`.
///
/// `N > 4` uses `(1−δ)ln N − ln 2`; `N = 2` uses `ln 2 − h₂(δ)`. The closed
/// endpoints `δ = 0` and `δ = 1/2` are accepted as limits.
pub fn fano_lower(n: usize, delta: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&delta) {
        return Err(out_of_range(format!("δ = {delta}"), "δ ∈ (0,1/2)"));
    }
    match n {
        2 => Ok(LN_2 - binary_entropy(delta)),
        n if n > 4 => Ok((1.0 - delta) * (n as f64).ln() - LN_2),
        n => Err(Error::UnsupportedCount(n)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SupMethod {
    /// Closed form when the ensemble admits one, otherwise the default grid.
    Auto,
    /// Maximum over the given points.
    Points(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IrBound {
    /// `max_{i,j} sup_x KL(P(·|f_i,x) ‖ P(·|f_j,x))`.
    pub per_step: f64,
    /// `T · per_step`.
    pub value: f64,
    pub closed_form: bool,
    /// Number of query points evaluated; zero for the closed form.
    pub points: usize,
}

impl IrBound {
    pub fn report(&self, horizon: usize) -> BoundReport {
        BoundReport::new("ir_upper", self.value)
            .input("horizon", horizon as u64)
            .input("per_step_nats", self.per_step)
            .input(
                "sup",
                if self.closed_form {
                    "closed_form".to_string()
                } else {
                    format!("grid_{}", self.points)
                },
            )
            .require("finite per-step KL", self.per_step.is_finite())
    }
}

pub const IR_GRID_1D: usize = 10_000;
pub const IR_RANDOM_POINTS: usize = 100_000;
const IR_RANDOM_SEED: u64 = 0x1f2e_3d4c;

fn dual_norm(domain: &Domain, v: &[f64]) -> f64 {
    match domain.kind {
        DomainKind::BoxInf => v.iter().map(|x| x.abs()).sum(),
        DomainKind::Ball2 => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `sup_x KL` for one pair when the integrand is affine or constant in `x`.
fn closed_form_pair(oracle: &OracleModel, a: &Instance, b: &Instance) -> Option<f64> {
    let domain = &a.domain;
    let sigma = match oracle {
        OracleModel::Fog { sigma } | OracleModel::Sog { sigma } => *sigma,
        OracleModel::StatEstimation { sigma } => {
            let d: f64 = a
                .minimizer()
                .iter()
                .zip(b.minimizer())
                .map(|(p, q)| (p - q) * (p - q))
                .sum();
            return Some(d / (2.0 * sigma * sigma));
        }
        _ => return None,
    };
    // f_a − f_b = vᵀx + w and g_a − g_b = v for both families below.
    let (v, w): (Vec<f64>, f64) = match (&a.family, &b.family) {
        (Family::Quadratic { center: ta }, Family::Quadratic { center: tb }) => {
            let v: Vec<f64> = tb.iter().zip(ta).map(|(p, q)| p - q).collect();
            let w = 0.5 * (dot(ta, ta) - dot(tb, tb));
            (v, w)
        }
        (Family::Linear { slope: xa, sign: sa }, Family::Linear { slope: xb, sign: sb }) => {
            (xa.iter().zip(xb).map(|(p, q)| sa * p - sb * q).collect(), 0.0)
        }
        _ => return None,
    };
    let grad_gap = dot(&v, &v);
    let value_gap = match oracle {
        OracleModel::Fog { .. } => {
            let sup = (dot(&v, &domain.center) + w).abs() + domain.radius * dual_norm(domain, &v);
            sup * sup
        }
        _ => 0.0,
    };
    Some((value_gap + grad_gap) / (2.0 * sigma * sigma))
}

fn default_points(domain: &Domain) -> Vec<Vec<f64>> {
    if domain.dim() == 1 {
        let (lo, hi) = domain.axis_bounds(0);
        grid(lo, hi, IR_GRID_1D).map(|x| vec![x]).collect()
    } else {
        let mut rng = stream(&[IR_RANDOM_SEED]);
        (0..IR_RANDOM_POINTS).map(|_| domain.sample_uniform(&mut rng)).collect()
    }
}

/// Information-radius bound `T · max_{i,j} sup_x KL`. With [`SupMethod::Auto`]
/// the supremum is exact for quadratic and linear ensembles under Gaussian
/// oracles; otherwise it is a maximum over a grid (10⁴ points for `n = 1`,
/// 10⁵ uniform points for `n > 1`) and hence a lower estimate of the sup.
pub fn ir_upper(ensemble: &InstanceEnsemble, oracle: &OracleModel, horizon: usize, sup: &SupMethod) -> Result<IrBound> {
    let inst = &ensemble.instances;
    if matches!(oracle, OracleModel::MomentBounded { .. }) {
        return Err(Error::Unsupported(
            "moment-bounded oracle has no per-pair KL; use moment_capacity".into(),
        ));
    }
    if *sup == SupMethod::Auto {
        let mut best = 0.0f64;
        let mut all = true;
        'outer: for i in 0..inst.len() {
            for j in (i + 1)..inst.len() {
                match closed_form_pair(oracle, &inst[i], &inst[j]) {
                    Some(v) => best = best.max(v),
                    None => {
                        all = false;
                        break 'outer;
                    }
                }
            }
        }
        if all {
            return Ok(IrBound {
                per_step: best,
                value: horizon as f64 * best,
                closed_form: true,
                points: 0,
            });
        }
    }
    let points = match sup {
        SupMethod::Points(p) => p.clone(),
        SupMethod::Auto => default_points(ensemble.domain()),
    };
    let mut best = 0.0f64;
    for x in &points {
        ensemble.domain().check(x)?;
        for i in 0..inst.len() {
            for j in 0..inst.len() {
                if i != j {
                    best = best.max(oracle.response_kl_unchecked(&inst[i], &inst[j], x)?);
                }
            }
        }
    }
    Ok(IrBound {
        per_step: best,
        value: horizon as f64 * best,
        closed_form: false,
        points: points.len(),
    })
}

/// Per-step FOG and SOG bounds on the pairwise KL of the Lipschitz
/// sign-vector ensemble: `(16ε^{2/r}/σ²)(1 + 1/(n s_X²))` and
/// `16ε^{2/r}/(σ² n s_X²)`.
pub fn lipschitz_vg_kl_bound(eps: f64, r: f64, sigma: f64, n: usize, s_x: f64) -> (f64, f64) {
    let base = 16.0 * eps.powf(2.0 / r) / (sigma * sigma);
    let tail = 1.0 / (n as f64 * s_x * s_x);
    (base * (1.0 + tail), base * tail)
}

/// Per-step information of the moment-bounded oracle, at most `p·ln 2`.
pub fn moment_capacity(oracle: &OracleModel) -> Result<f64> {
    oracle
        .moment_probability()
        .map(|p| p * LN_2)
        .ok_or_else(|| Error::Unsupported("capacity closed form is for the moment-bounded oracle".into()))
}

/// KL divergence between the response law at `x` and the law at a
/// minimizer, where the oracle returns pure noise around `c*`.
pub fn lf_term(oracle: &OracleModel, inst: &Instance, x: &[f64], c_star: f64) -> Result<f64> {
    match oracle {
        OracleModel::Fog { sigma } => {
            let dv = inst.value_unchecked(x) - c_star;
            let g = inst.subgradient_unchecked(x);
            Ok((dv * dv + dot(&g, &g)) / (2.0 * sigma * sigma))
        }
        OracleModel::Sog { sigma } => {
            let g = inst.subgradient_unchecked(x);
            Ok(dot(&g, &g) / (2.0 * sigma * sigma))
        }
        OracleModel::BernoulliLabel { .. } => Ok(binary_kl(oracle.eta(inst, x[0])?, 0.5)),
        _ => Err(Error::Unsupported(format!(
            "Lyapunov terms need a fog, sog or label oracle, not {}",
            oracle.name()
        ))),
    }
}

/// Quadratic upper bound `4(η − 1/2)²` on `d(η ‖ 1/2)`.
pub fn lf_label_bound(eta: f64) -> f64 {
    4.0 * (eta - 0.5) * (eta - 0.5)
}

/// Lyapunov-function terms along a transcript, one per query `X_1..X_T`.
pub fn lf_terms(
    transcript: &Transcript,
    ensemble: &InstanceEnsemble,
    oracle: &OracleModel,
    chosen: usize,
) -> Result<Vec<f64>> {
    let c_star = ensemble
        .common_min
        .ok_or_else(|| Error::Unsupported("ensemble has no common minimum".into()))?;
    let inst = ensemble
        .instances
        .get(chosen)
        .ok_or_else(|| out_of_range(format!("index {chosen}"), format!("< {}", ensemble.len())))?;
    transcript
        .queries
        .iter()
        .map(|x| lf_term(oracle, inst, x, c_star))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gaussian {
    Fog,
    Sog,
}

/// Closed-form lower bounds on oracle complexity.
#[derive(Debug, Clone, PartialEq)]
pub enum Theorem {
    /// `(1/C*)[(1−δ)ln N − ln 2]`, or with `expected_error` the form
    /// `(1/C*)[(2/3)ln N − ln 2]` where `N` is the packing number at `(3ε)^{1/r}`.
    Thm1 {
        capacity: f64,
        packing_number: f64,
        delta: f64,
        expected_error: bool,
    },
    /// Lipschitz class on a domain with inscribed scale `s_X`.
    Thm2 {
        oracle: Gaussian,
        n: usize,
        s_x: f64,
        delta: f64,
        sigma: f64,
        eps: f64,
        r: f64,
    },
    /// Strongly convex class on a domain with diameter `D_X`.
    Thm3 {
        oracle: Gaussian,
        n: usize,
        s_x: f64,
        d_x: f64,
        delta: f64,
        sigma: f64,
        eps: f64,
        r: f64,
    },
    /// Moment-bounded oracle: `(ln 2 − h₂(δ))/(c·ln 2)·ε^{−α/(α−1)}`.
    Thm4 {
        alpha: f64,
        delta: f64,
        c: f64,
        eps: f64,
        lipschitz: f64,
    },
    /// Active learning with `κ = 1`: after `T` labels the distance to the
    /// threshold is at least `2^{−5C²/2}·e^{−6C²T}`.
    Thm8Kappa1 { big_c: f64, horizon: usize },
}

fn delta_ok(delta: f64) -> bool {
    delta > 0.0 && delta < 0.5
}

pub fn thm_lower(which: &Theorem) -> BoundReport {
    match *which {
        Theorem::Thm1 {
            capacity,
            packing_number,
            delta,
            expected_error,
        } => {
            let lead = if expected_error { 2.0 / 3.0 } else { 1.0 - delta };
            let value = (lead * packing_number.ln() - LN_2) / capacity;
            let mut rep = BoundReport::new(if expected_error { "thm1_expected" } else { "thm1" }, value)
                .input("capacity_nats", capacity)
                .input("packing_number", packing_number)
                .require("C* > 0", capacity > 0.0)
                .require("N > 4", packing_number > 4.0);
            if !expected_error {
                rep = rep.input("delta", delta).require("δ ∈ (0,1/2)", delta_ok(delta));
            }
            rep
        }
        Theorem::Thm2 {
            oracle,
            n,
            s_x,
            delta,
            sigma,
            eps,
            r,
        } => {
            let nf = n as f64;
            let s2 = s_x * s_x;
            let mut value = ((1.0 - delta) * nf - 8.0) * nf * s2 * LN_2 / 128.0 * sigma * sigma / eps.powf(2.0 / r);
            if oracle == Gaussian::Fog {
                value /= nf * s2 + 1.0;
            }
            let admissible = (s_x * (nf / 8.0).sqrt()).powf(r);
            BoundReport::new(
                if oracle == Gaussian::Fog {
                    "thm2_fog"
                } else {
                    "thm2_sog"
                },
                value,
            )
            .input("n", n as u64)
            .input("s_x", s_x)
            .input("delta", delta)
            .input("sigma", sigma)
            .input("eps", eps)
            .input("r", r)
            .require("n ≥ 16", n >= 16)
            .require(
                format!("ε ≤ (s_X√(n/8))^r = {admissible}"),
                eps > 0.0 && eps <= admissible,
            )
            .require("δ ∈ (0,1/2)", delta_ok(delta))
            .require("r ≥ 1", r >= 1.0)
        }
        Theorem::Thm3 {
            oracle,
            n,
            s_x,
            d_x,
            delta,
            sigma,
            eps,
            r,
        } => {
            let nf = n as f64;
            let denom = if oracle == Gaussian::Fog {
                256.0 * (d_x * d_x + 1.0)
            } else {
                256.0
            };
            let value = ((1.0 - delta) * nf - 8.0) * LN_2 / denom * sigma * sigma / eps.powf(1.0 / r);
            let admissible = (nf * s_x * s_x / 16.0).powf(r);
            let mut rep = BoundReport::new(
                if oracle == Gaussian::Fog {
                    "thm3_fog"
                } else {
                    "thm3_sog"
                },
                value,
            )
            .input("n", n as u64)
            .input("s_x", s_x)
            .input("delta", delta)
            .input("sigma", sigma)
            .input("eps", eps)
            .input("r", r);
            if oracle == Gaussian::Fog {
                rep = rep.input("d_x", d_x);
            }
            rep.require("n ≥ 16", n >= 16)
                .require(
                    format!("ε ≤ (n·s_X²/16)^r = {admissible}"),
                    eps > 0.0 && eps <= admissible,
                )
                .require("δ ∈ (0,1/2)", delta_ok(delta))
                .require("r ≥ 1", r >= 1.0)
        }
        Theorem::Thm4 {
            alpha,
            delta,
            c,
            eps,
            lipschitz,
        } => {
            let value = (LN_2 - binary_entropy(delta)) / (c * LN_2) * eps.powf(-alpha / (alpha - 1.0));
            let eps_max = (lipschitz / 2f64.powf(1.0 / alpha)).min(1.0);
            let envelope = (lipschitz.powf(alpha) / 2.0).min(1.0);
            BoundReport::new("thm4", value)
                .input("alpha", alpha)
                .input("delta", delta)
                .input("c", c)
                .input("eps", eps)
                .input("lipschitz", lipschitz)
                .require("α > 1", alpha > 1.0)
                .require(format!("ε < min(L/2^(1/α), 1) = {eps_max}"), eps > 0.0 && eps < eps_max)
                .require(
                    format!("c^(1−α) < min(L^α/2, 1) = {envelope}"),
                    c > 0.0 && c.powf(1.0 - alpha) < envelope,
                )
                .require("δ ∈ (0,1/2)", delta_ok(delta))
        }
        Theorem::Thm8Kappa1 { big_c, horizon } => {
            let c2 = big_c * big_c;
            let value = (-6.0 * c2 * horizon as f64 - 2.5 * c2 * LN_2).exp();
            BoundReport::new("thm8_kappa1", value)
                .input("big_c", big_c)
                .input("horizon", horizon as u64)
                .require("0 < C < 1/2", big_c > 0.0 && big_c < 0.5)
                .require("T ≥ 1", horizon >= 1)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceReport {
    /// Largest `T` such that the inequality holds for every `t ≤ T`.
    pub holds_up_to: usize,
    pub holds_for_all: bool,
    pub first_violation: Option<usize>,
    /// Times `t` with `ε_t ≥ c·t^{−1/α}` for the candidate rate, if given.
    pub witnesses: Vec<usize>,
}

/// Checks `K·ln(1/ε_T) − L ≤ Σ_{t≤T} ε_t^α` for each prefix of `eps_seq`
/// (indexed from `T = 1`).
pub fn recurrence_check(
    k: f64,
    l: f64,
    alpha: f64,
    eps_seq: &[f64],
    candidate: Option<f64>,
) -> Result<RecurrenceReport> {
    if !(k > 0.0 && alpha > 0.0) {
        return Err(out_of_range("K, α", "K > 0, α > 0"));
    }
    if let Some(e) = eps_seq.iter().find(|e| !(**e >= 0.0)) {
        return Err(out_of_range(format!("ε_t = {e}"), "ε_t ≥ 0"));
    }
    let mut sum = 0.0;
    let mut first_violation = None;
    for (i, &e) in eps_seq.iter().enumerate() {
        sum += e.powf(alpha);
        let lhs = if e == 0.0 {
            f64::INFINITY
        } else {
            k * (1.0 / e).ln() - l
        };
        if !(lhs <= sum) {
            first_violation = Some(i + 1);
            break;
        }
    }
    let witnesses = match candidate {
        Some(c) => eps_seq
            .iter()
            .enumerate()
            .filter(|(i, e)| **e >= c * ((i + 1) as f64).powf(-1.0 / alpha))
            .map(|(i, _)| i + 1)
            .collect(),
        None => Vec::new(),
    };
    Ok(RecurrenceReport {
        holds_up_to: first_violation.map_or(eps_seq.len(), |t| t - 1),
        holds_for_all: first_violation.is_none(),
        first_violation,
        witnesses,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiEstimate {
    /// Plug-in mutual information of the empirical joint law.
    pub plugin: f64,
    /// Miller–Madow corrected value, `plugin − [(K_xy − 1) − (K_x − 1) − (K_y − 1)]/(2n)`
    /// with `K` counting nonzero cells and margins.
    pub miller_madow: f64,
}

pub fn plugin_mi(confusion: &[Vec<u64>]) -> Result<MiEstimate> {
    let n = confusion.len();
    if n == 0 || confusion.iter().any(|r| r.len() != n) {
        return Err(out_of_range("confusion matrix shape", "square, N ≥ 1"));
    }
    let total: u64 = confusion.iter().flatten().sum();
    if total == 0 {
        return Err(out_of_range("confusion total", "> 0"));
    }
    let tf = total as f64;
    let rows: Vec<f64> = confusion.iter().map(|r| r.iter().sum::<u64>() as f64).collect();
    let cols: Vec<f64> = (0..n)
        .map(|j| confusion.iter().map(|r| r[j]).sum::<u64>() as f64)
        .collect();
    let mut mi = 0.0;
    let mut cells = 0usize;
    for i in 0..n {
        for j in 0..n {
            let c = confusion[i][j] as f64;
            if c > 0.0 {
                cells += 1;
                mi += c / tf * (c * tf / (rows[i] * cols[j])).ln();
            }
        }
    }
    let mi = mi.max(0.0);
    let kx = rows.iter().filter(|v| **v > 0.0).count();
    let ky = cols.iter().filter(|v| **v > 0.0).count();
    let correction = (cells as f64 - kx as f64 - ky as f64 + 1.0) / (2.0 * tf);
    Ok(MiEstimate {
        plugin: mi,
        miller_madow: mi - correction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{build_ensemble, EnsembleSpec};

    #[test]
    fn fano_values() {
        assert!((fano_lower(32, 0.1).unwrap() - 2.426_015_131_959_808_6).abs() < 1e-12);
        assert!((fano_lower(2, 0.25).unwrap() - 0.130_812_035_941_137).abs() < 1e-12);
        assert!(fano_lower(2, 0.5).unwrap().abs() < 1e-15);
        assert!(matches!(fano_lower(3, 0.1), Err(Error::UnsupportedCount(3))));
        assert!(matches!(fano_lower(4, 0.1), Err(Error::UnsupportedCount(4))));
        assert!(fano_lower(8, 0.7).is_err());
    }

    #[test]
    fn pair_ir_closed_form() {
        let e = build_ensemble(&EnsembleSpec::QuadraticPair { eps: 0.02 }).unwrap();
        let o = OracleModel::fog(1.0).unwrap();
        let ir = ir_upper(&e, &o, 10, &SupMethod::Auto).unwrap();
        assert!(ir.closed_form);
        assert!((ir.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lf_examples() {
        let d = Domain::interval(0.0, 1.0).unwrap();
        let f = Instance::quadratic(&d, vec![0.3]).unwrap();
        let o = OracleModel::fog(1.0).unwrap();
        assert!((lf_term(&o, &f, &[0.7], 0.0).unwrap() - 0.0832).abs() < 1e-15);
        assert_eq!(lf_term(&o, &f, &[0.3], 0.0).unwrap(), 0.0);
        assert!(lf_term(&OracleModel::NoiselessFirstOrder, &f, &[0.3], 0.0).is_err());
    }

    #[test]
    fn theorem_examples() {
        let r = thm_lower(&Theorem::Thm3 {
            oracle: Gaussian::Fog,
            n: 16,
            s_x: 1.0,
            d_x: 8.0,
            delta: 1.0 / 3.0,
            sigma: 1.0,
            eps: 0.01,
            r: 1.0,
        });
        assert!((r.value - 0.011_108_127_893_588_867).abs() < 1e-12);
        assert!(r.is_valid());
        let r = thm_lower(&Theorem::Thm2 {
            oracle: Gaussian::Sog,
            n: 16,
            s_x: 1.0,
            delta: 0.5,
            sigma: 1.0,
            eps: 0.01,
            r: 1.0,
        });
        assert_eq!(r.value, 0.0);
        assert!(!r.is_valid());
        let r = thm_lower(&Theorem::Thm4 {
            alpha: 2.0,
            delta: 0.25,
            c: 1.0,
            eps: 0.1,
            lipschitz: 2.0,
        });
        assert!((r.value - 18.872_187_554_086_714).abs() < 1e-9);
    }

    #[test]
    fn recurrence_examples() {
        let ones = vec![1.0; 1000];
        let rep = recurrence_check(1.0, 0.0, 1.0, &ones, None).unwrap();
        assert!(rep.holds_for_all && rep.first_violation.is_none());
        let zero = vec![1.0, 0.0];
        assert_eq!(
            recurrence_check(1.0, 0.0, 1.0, &zero, None).unwrap().first_violation,
            Some(2)
        );
    }

    #[test]
    fn mi_extremes() {
        let diag: Vec<Vec<u64>> = (0..4)
            .map(|i| (0..4).map(|j| if i == j { 25 } else { 0 }).collect())
            .collect();
        assert!((plugin_mi(&diag).unwrap().plugin - 4f64.ln()).abs() < 1e-12);
        let flat = vec![vec![7u64; 3]; 3];
        assert!(plugin_mi(&flat).unwrap().plugin.abs() < 1e-15);
        let single = vec![vec![10, 0], vec![0, 0]];
        assert_eq!(plugin_mi(&single).unwrap().plugin, 0.0);
    }
}
