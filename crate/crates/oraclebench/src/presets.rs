//! Named reproductions: a pinned experiment config plus the closed-form
//! bounds that go with it, and evaluation of single named bound formulas.

use std::collections::BTreeMap;

use crate::config::parse_config;
use crate::error::{out_of_range, Error, Result};
use crate::harness::{hypothesis_test, lf_constant, per_step_information, ExperimentConfig, ExperimentResult};
use crate::infobounds::{
    fano_lower, ir_upper, lipschitz_vg_kl_bound, moment_capacity, thm_lower, BoundReport, Gaussian, SupMethod, Theorem,
};
use crate::instances::{build_ensemble, EnsembleSpec, InstanceEnsemble};
use crate::oracles::OracleModel;

pub const NAMES: [&str; 8] = ["sec41", "thm2", "thm3", "thm4", "thm5", "thm6", "thm7", "thm8"];

pub fn preset_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "sec41" => include_str!("../presets/sec41.toml"),
        "thm2" => include_str!("../presets/thm2.toml"),
        "thm3" => include_str!("../presets/thm3.toml"),
        "thm4" => include_str!("../presets/thm4.toml"),
        "thm5" => include_str!("../presets/thm5.toml"),
        "thm6" => include_str!("../presets/thm6.toml"),
        "thm7" => include_str!("../presets/thm7.toml"),
        "thm8" => include_str!("../presets/thm8.toml"),
        _ => return None,
    })
}

pub fn preset_config(name: &str) -> Result<ExperimentConfig> {
    let text = preset_text(name).ok_or_else(|| out_of_range(format!("preset `{name}`"), NAMES.join(", ")))?;
    parse_config(text)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub result: ExperimentResult,
    pub reports: Vec<BoundReport>,
}

fn ir_reports(cfg: &ExperimentConfig, ensemble: &InstanceEnsemble) -> Result<Vec<BoundReport>> {
    if matches!(cfg.oracle, OracleModel::MomentBounded { .. }) {
        let cap = moment_capacity(&cfg.oracle)?;
        return Ok(cfg
            .horizons
            .iter()
            .map(|&t| {
                BoundReport::new("moment_information_upper", cap * t as f64)
                    .input("horizon", t as u64)
                    .input("per_step_nats", cap)
                    .require("0 < p ≤ 1", cap > 0.0 && cap <= std::f64::consts::LN_2)
            })
            .collect());
    }
    let ir = ir_upper(ensemble, &cfg.oracle, 1, &SupMethod::Auto)?;
    Ok(cfg
        .horizons
        .iter()
        .map(|&t| {
            let mut scaled = ir.clone();
            scaled.value = ir.per_step * t as f64;
            scaled.report(t)
        })
        .collect())
}

/// Closed-form bounds accompanying a config: the per-horizon information
/// bound and, for known ensembles, the matching complexity lower bounds.
pub fn bound_reports(cfg: &ExperimentConfig) -> Result<Vec<BoundReport>> {
    let ensemble = build_ensemble(&cfg.ensemble)?;
    let mut out = ir_reports(cfg, &ensemble)?;
    let delta = cfg.criterion.delta;
    let sigma = match cfg.oracle {
        OracleModel::Fog { sigma } | OracleModel::Sog { sigma } => Some(sigma),
        _ => None,
    };
    match (&cfg.ensemble, sigma) {
        (EnsembleSpec::LipschitzVg { domain, eps, r, .. }, Some(sigma)) => {
            let (n, s) = (domain.dim(), domain.inscribed_scale());
            for k in 0..4 {
                let e = eps / 2f64.powi(k);
                for g in [Gaussian::Fog, Gaussian::Sog] {
                    out.push(thm_lower(&Theorem::Thm2 {
                        oracle: g,
                        n,
                        s_x: s,
                        delta,
                        sigma,
                        eps: e,
                        r: *r,
                    }));
                }
            }
            let (fog, sog) = lipschitz_vg_kl_bound(*eps, *r, sigma, n, s);
            let measured = per_step_information(&ensemble, &cfg.oracle)?;
            let bound = if matches!(cfg.oracle, OracleModel::Fog { .. }) {
                fog
            } else {
                sog
            };
            out.push(
                BoundReport::new("lipschitz_vg_kl_bound", bound)
                    .input("eps", *eps)
                    .input("measured_max_kl", measured)
                    .require("sampled max-KL ≤ closed-form bound", measured <= bound * (1.0 + 1e-12)),
            );
        }
        (EnsembleSpec::StronglyConvexVg { domain, eps, r, .. }, Some(sigma)) => {
            let (n, s, d) = (domain.dim(), domain.inscribed_scale(), domain.diameter());
            for k in 0..4 {
                let e = eps / 2f64.powi(k);
                for g in [Gaussian::Fog, Gaussian::Sog] {
                    out.push(thm_lower(&Theorem::Thm3 {
                        oracle: g,
                        n,
                        s_x: s,
                        d_x: d,
                        delta,
                        sigma,
                        eps: e,
                        r: *r,
                    }));
                }
            }
        }
        (EnsembleSpec::MomentPair { .. }, _) => {
            if let OracleModel::MomentBounded {
                alpha,
                c,
                eps,
                lipschitz,
            } = cfg.oracle
            {
                out.push(thm_lower(&Theorem::Thm4 {
                    alpha,
                    delta,
                    c,
                    eps,
                    lipschitz,
                }));
            }
        }
        (EnsembleSpec::QuadraticLattice { .. }, _) => {
            if let Some(k) = lf_constant(&ensemble, &cfg.oracle) {
                out.push(
                    BoundReport::new("lf_constant", k)
                        .input("diameter", ensemble.domain().diameter())
                        .require("quadratic ensemble with common minimum", ensemble.common_min.is_some()),
                );
            }
        }
        (EnsembleSpec::ThresholdLattice { .. }, _) => {
            if let OracleModel::BernoulliLabel { kappa, big_c, .. } = cfg.oracle {
                if kappa == 1.0 {
                    for &t in &cfg.horizons {
                        out.push(thm_lower(&Theorem::Thm8Kappa1 { big_c, horizon: t }));
                    }
                }
            }
        }
        _ => {}
    }
    Ok(out)
}

pub fn run_config(cfg: &ExperimentConfig) -> Result<RunOutput> {
    Ok(RunOutput {
        result: hypothesis_test(cfg)?,
        reports: bound_reports(cfg)?,
    })
}

pub fn repro(name: &str, seed: Option<u64>) -> Result<RunOutput> {
    let mut cfg = preset_config(name)?;
    if let Some(s) = seed {
        cfg.base_seed = s;
    }
    run_config(&cfg)
}

fn param(params: &BTreeMap<String, f64>, key: &str) -> Result<f64> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| out_of_range(format!("missing parameter `{key}`"), "key=value"))
}

fn gaussian_of(name: &str) -> Gaussian {
    if name.ends_with("_sog") {
        Gaussian::Sog
    } else {
        Gaussian::Fog
    }
}

pub const BOUND_NAMES: [&str; 9] = [
    "fano",
    "thm1",
    "thm1_expected",
    "thm2_fog",
    "thm2_sog",
    "thm3_fog",
    "thm3_sog",
    "thm4",
    "thm8_kappa1",
];

/// Evaluates a single named formula from `key = value` parameters.
pub fn named_bound(name: &str, params: &BTreeMap<String, f64>) -> Result<BoundReport> {
    let p = |k: &str| param(params, k);
    let opt = |k: &str, d: f64| params.get(k).copied().unwrap_or(d);
    let theorem = match name {
        "fano" => {
            let n = p("n")?;
            let delta = p("delta")?;
            if n.fract() != 0.0 || n < 1.0 {
                return Err(out_of_range(format!("n = {n}"), "a positive integer"));
            }
            return Ok(match fano_lower(n as usize, delta) {
                Ok(v) => BoundReport::new("fano", v)
                    .input("n", n)
                    .input("delta", delta)
                    .require("δ ∈ (0,1/2)", delta > 0.0 && delta < 0.5),
                Err(Error::UnsupportedCount(_)) => BoundReport::new("fano", f64::NAN)
                    .input("n", n)
                    .input("delta", delta)
                    .require("N = 2 or N > 4", false),
                Err(e) => return Err(e),
            });
        }
        "thm1" | "thm1_expected" => Theorem::Thm1 {
            capacity: p("capacity")?,
            packing_number: p("packing_number")?,
            delta: opt("delta", 0.0),
            expected_error: name == "thm1_expected",
        },
        "thm2_fog" | "thm2_sog" => Theorem::Thm2 {
            oracle: gaussian_of(name),
            n: p("n")? as usize,
            s_x: p("s_x")?,
            delta: p("delta")?,
            sigma: p("sigma")?,
            eps: p("eps")?,
            r: opt("r", 1.0),
        },
        "thm3_fog" | "thm3_sog" => Theorem::Thm3 {
            oracle: gaussian_of(name),
            n: p("n")? as usize,
            s_x: p("s_x")?,
            d_x: opt("d_x", 0.0),
            delta: p("delta")?,
            sigma: p("sigma")?,
            eps: p("eps")?,
            r: opt("r", 1.0),
        },
        "thm4" => Theorem::Thm4 {
            alpha: p("alpha")?,
            delta: p("delta")?,
            c: p("c")?,
            eps: p("eps")?,
            lipschitz: p("lipschitz")?,
        },
        "thm8_kappa1" => Theorem::Thm8Kappa1 {
            big_c: p("big_c")?,
            horizon: p("horizon")? as usize,
        },
        other => {
            return Err(out_of_range(format!("bound `{other}`"), BOUND_NAMES.join(", ")));
        }
    };
    Ok(thm_lower(&theorem))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse() {
        for name in NAMES {
            let cfg = preset_config(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            build_ensemble(&cfg.ensemble).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert!(preset_config("nope").is_err());
    }

    #[test]
    fn named_fano() {
        let mut p = BTreeMap::new();
        p.insert("n".to_string(), 32.0);
        p.insert("delta".to_string(), 0.1);
        let r = named_bound("fano", &p).unwrap();
        assert!((r.value - 2.426_015_131_959_808_6).abs() < 1e-12);
        p.insert("n".to_string(), 3.0);
        assert!(!named_bound("fano", &p).unwrap().is_valid());
    }
}
