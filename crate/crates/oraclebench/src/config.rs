//! Experiment configuration files.
//!
//! A config is TOML restricted to four flat sections:
//!
//! ```toml
//! [ensemble]
//! family = "quadratic_pair"
//! eps = 0.02
//!
//! [oracle]
//! kind = "fog"
//! sigma = 1.0
//!
//! [algorithm]
//! kind = "sgd"
//! step = "harmonic"
//! a = 1.0
//!
//! [sweep]
//! horizons = [10, 100]
//! trials = 100
//! seed = 1
//! ```
//!
//! Parsing reports every violation at once. Keys that the chosen family or
//! kind does not use are rejected as unknown.

use std::fmt::Write as _;

use toml::{Table, Value};

use crate::algorithms::{ActiveBisection, Algorithm, StepRule};
use crate::error::{Error, Result};
use crate::geometry::{Domain, DomainKind};
use crate::harness::{Criterion, CriterionMode, ExperimentConfig};
use crate::instances::EnsembleSpec;
use crate::oracles::OracleModel;

const SECTIONS: [&str; 4] = ["ensemble", "oracle", "algorithm", "sweep"];

struct Section<'a> {
    name: &'static str,
    table: Option<&'a Table>,
    used: Vec<&'static str>,
}

struct Ctx {
    errors: Vec<String>,
}

impl Ctx {
    fn err(&mut self, msg: String) {
        self.errors.push(msg);
    }

    fn raw<'a>(&mut self, s: &mut Section<'a>, key: &'static str) -> Option<&'a Value> {
        s.used.push(key);
        s.table.and_then(|t| t.get(key))
    }

    fn float(&mut self, s: &mut Section, key: &'static str) -> Option<f64> {
        let name = s.name;
        match self.raw(s, key)? {
            Value::Float(f) => Some(*f),
            Value::Integer(i) => Some(*i as f64),
            other => {
                self.err(format!("[{name}] {key}: expected a number, found {}", other.type_str()));
                None
            }
        }
    }

    fn float_or(&mut self, s: &mut Section, key: &'static str, default: f64) -> f64 {
        self.float(s, key).unwrap_or(default)
    }

    fn req_float(&mut self, s: &mut Section, key: &'static str) -> f64 {
        let name = s.name;
        let present = s.table.is_some_and(|t| t.contains_key(key));
        match self.float(s, key) {
            Some(v) => v,
            None => {
                if !present {
                    self.err(format!("[{name}] missing required key `{key}`"));
                }
                f64::NAN
            }
        }
    }

    fn uint(&mut self, s: &mut Section, key: &'static str) -> Option<u64> {
        let name = s.name;
        match self.raw(s, key)? {
            Value::Integer(i) if *i >= 0 => Some(*i as u64),
            other => {
                self.err(format!("[{name}] {key}: expected a nonnegative integer, found {other}"));
                None
            }
        }
    }

    fn req_uint(&mut self, s: &mut Section, key: &'static str) -> u64 {
        let name = s.name;
        let present = s.table.is_some_and(|t| t.contains_key(key));
        match self.uint(s, key) {
            Some(v) => v,
            None => {
                if !present {
                    self.err(format!("[{name}] missing required key `{key}`"));
                }
                0
            }
        }
    }

    fn string(&mut self, s: &mut Section, key: &'static str) -> Option<String> {
        let name = s.name;
        match self.raw(s, key) {
            Some(Value::String(v)) => Some(v.clone()),
            Some(other) => {
                self.err(format!("[{name}] {key}: expected a string, found {}", other.type_str()));
                None
            }
            None => {
                self.err(format!("[{name}] missing required key `{key}`"));
                None
            }
        }
    }

    fn floats(&mut self, s: &mut Section, key: &'static str) -> Option<Vec<f64>> {
        let name = s.name;
        match self.raw(s, key)? {
            Value::Float(f) => Some(vec![*f]),
            Value::Integer(i) => Some(vec![*i as f64]),
            Value::Array(a) => {
                let v: Option<Vec<f64>> = a
                    .iter()
                    .map(|x| match x {
                        Value::Float(f) => Some(*f),
                        Value::Integer(i) => Some(*i as f64),
                        _ => None,
                    })
                    .collect();
                if v.is_none() {
                    self.err(format!("[{name}] {key}: expected numbers"));
                }
                v
            }
            other => {
                self.err(format!(
                    "[{name}] {key}: expected a number or array, found {}",
                    other.type_str()
                ));
                None
            }
        }
    }

    fn finish(&mut self, s: &Section, qualifier: &str) {
        if let Some(t) = s.table {
            for key in t.keys() {
                if !s.used.iter().any(|u| u == key) {
                    self.err(format!("unknown key `{key}` in [{}]{qualifier}", s.name));
                }
            }
        }
    }
}

fn section<'a>(root: &'a Table, name: &'static str, ctx: &mut Ctx) -> Section<'a> {
    let table = match root.get(name) {
        Some(Value::Table(t)) => Some(t),
        Some(_) => {
            ctx.err(format!("[{name}] must be a table"));
            None
        }
        None => {
            ctx.err(format!("missing section [{name}]"));
            None
        }
    };
    Section {
        name,
        table,
        used: Vec::new(),
    }
}

fn parse_domain(ctx: &mut Ctx, s: &mut Section) -> Option<Domain> {
    let kind = ctx.string(s, "domain")?;
    let d = match kind.as_str() {
        "interval" => {
            let lo = ctx.req_float(s, "lo");
            let hi = ctx.req_float(s, "hi");
            Domain::interval(lo, hi)
        }
        "cube" | "ball" => {
            let n = ctx.req_uint(s, "dim") as usize;
            let rho = ctx.req_float(s, "radius");
            if kind == "cube" {
                Domain::cube(n, rho)
            } else {
                Domain::ball(n, rho)
            }
        }
        other => {
            ctx.err(format!(
                "[ensemble] domain: unknown domain `{other}` (interval, cube, ball)"
            ));
            return None;
        }
    };
    match d {
        Ok(d) => Some(d),
        Err(e) => {
            ctx.err(format!("[ensemble] {e}"));
            None
        }
    }
}

fn parse_ensemble(ctx: &mut Ctx, s: &mut Section) -> Option<EnsembleSpec> {
    let family = ctx.string(s, "family")?;
    let spec = match family.as_str() {
        "quadratic_pair" => EnsembleSpec::QuadraticPair {
            eps: ctx.req_float(s, "eps"),
        },
        "norm_distance_pair" => EnsembleSpec::NormDistancePair {
            eps: ctx.req_float(s, "eps"),
        },
        "quadratic_lattice" => {
            let eps = ctx.req_float(s, "eps");
            let r = ctx.float_or(s, "r", 1.0);
            EnsembleSpec::QuadraticLattice {
                domain: parse_domain(ctx, s)?,
                eps,
                r,
            }
        }
        "lipschitz_vg" | "strongly_convex_vg" => {
            let eps = ctx.req_float(s, "eps");
            let r = ctx.float_or(s, "r", 1.0);
            let seed = ctx.uint(s, "packing_seed").unwrap_or(1);
            let domain = parse_domain(ctx, s)?;
            if family == "lipschitz_vg" {
                EnsembleSpec::LipschitzVg { domain, eps, r, seed }
            } else {
                EnsembleSpec::StronglyConvexVg { domain, eps, r, seed }
            }
        }
        "even_power_pair" | "even_power_lattice" => {
            let degree = ctx.req_uint(s, "degree") as u32;
            let eps = ctx.req_float(s, "eps");
            if family == "even_power_pair" {
                EnsembleSpec::EvenPowerPair { degree, eps }
            } else {
                EnsembleSpec::EvenPowerLattice { degree, eps }
            }
        }
        "moment_pair" => {
            let eps = ctx.req_float(s, "eps");
            EnsembleSpec::MomentPair {
                domain: parse_domain(ctx, s)?,
                eps,
            }
        }
        "threshold_lattice" => EnsembleSpec::ThresholdLattice {
            eps: ctx.req_float(s, "eps"),
        },
        other => {
            ctx.err(format!("[ensemble] family: unknown family `{other}`"));
            return None;
        }
    };
    ctx.finish(s, &format!(" (family = \"{family}\")"));
    Some(spec)
}

fn parse_oracle(ctx: &mut Ctx, s: &mut Section) -> Option<OracleModel> {
    let kind = ctx.string(s, "kind")?;
    let built = match kind.as_str() {
        "noiseless" => Ok(OracleModel::NoiselessFirstOrder),
        "fog" => OracleModel::fog(ctx.req_float(s, "sigma")),
        "sog" => OracleModel::sog(ctx.req_float(s, "sigma")),
        "stat_estimation" => OracleModel::stat_estimation(ctx.req_float(s, "sigma")),
        "moment_bounded" => {
            let alpha = ctx.req_float(s, "alpha");
            let l = ctx.req_float(s, "lipschitz");
            let eps = ctx.req_float(s, "eps");
            match ctx.float(s, "c") {
                Some(c) => OracleModel::moment_bounded_with_c(alpha, c, l, eps),
                None => OracleModel::moment_bounded(alpha, l, eps),
            }
        }
        "bernoulli_label" => {
            let kappa = ctx.req_float(s, "kappa");
            let c = ctx.req_float(s, "c");
            let big_c = ctx.req_float(s, "big_c");
            OracleModel::bernoulli_label(kappa, c, big_c)
        }
        other => {
            ctx.err(format!("[oracle] kind: unknown oracle `{other}`"));
            return None;
        }
    };
    ctx.finish(s, &format!(" (kind = \"{kind}\")"));
    match built {
        Ok(o) => Some(o),
        Err(e) => {
            ctx.err(format!("[oracle] {e}"));
            None
        }
    }
}

fn parse_algorithm(ctx: &mut Ctx, s: &mut Section) -> Option<(Algorithm, Option<Vec<f64>>)> {
    let kind = ctx.string(s, "kind")?;
    let mut x1 = None;
    let alg = match kind.as_str() {
        "sgd" => {
            let step = ctx.string(s, "step")?;
            let a = ctx.float(s, "a");
            x1 = ctx.floats(s, "x1");
            let rule = match (step.as_str(), a) {
                ("harmonic", a) => StepRule::Harmonic { a: a.unwrap_or(1.0) },
                ("inv_sqrt", Some(a)) => StepRule::InvSqrt { a },
                ("inv_sqrt", None) => StepRule::InvSqrtHorizon,
                (other, _) => {
                    ctx.err(format!(
                        "[algorithm] step: unknown step rule `{other}` (harmonic, inv_sqrt)"
                    ));
                    return None;
                }
            };
            if let StepRule::Harmonic { a } | StepRule::InvSqrt { a } = rule {
                if !(a > 0.0) {
                    ctx.err(format!("[algorithm] a = {a} violates a > 0"));
                }
            }
            Algorithm::ProjectedSgd {
                step: rule,
                x1: Vec::new(),
            }
        }
        "bisection" => Algorithm::Bisection,
        "grid_search" => Algorithm::GridSearch {
            points: ctx.req_uint(s, "points") as usize,
        },
        "active_bisection" => {
            let d = ActiveBisection::default();
            Algorithm::ActiveBisection(ActiveBisection {
                k: ctx.float_or(s, "k", d.k),
                eps_target: ctx.float_or(s, "eps_target", d.eps_target),
                contraction: ctx.float_or(s, "contraction", d.contraction),
                kappa: ctx.float_or(s, "kappa", d.kappa),
            })
        }
        other => {
            ctx.err(format!("[algorithm] kind: unknown algorithm `{other}`"));
            return None;
        }
    };
    ctx.finish(s, &format!(" (kind = \"{kind}\")"));
    Some((alg, x1))
}

fn parse_sweep(ctx: &mut Ctx, s: &mut Section) -> (Vec<usize>, usize, u64, Criterion) {
    let name = s.name;
    let horizons = match ctx.raw(s, "horizons") {
        Some(Value::Array(a)) => a
            .iter()
            .filter_map(|v| match v {
                Value::Integer(i) if *i >= 1 => Some(*i as usize),
                other => {
                    ctx.err(format!("[{name}] horizons: {other} violates integer T ≥ 1"));
                    None
                }
            })
            .collect(),
        Some(other) => {
            ctx.err(format!(
                "[{name}] horizons: expected an array, found {}",
                other.type_str()
            ));
            Vec::new()
        }
        None => {
            ctx.err(format!("[{name}] missing required key `horizons`"));
            Vec::new()
        }
    };
    let trials = ctx.req_uint(s, "trials") as usize;
    let seed = ctx.req_uint(s, "seed");
    let eps = ctx.float_or(s, "eps", 0.1);
    let delta = ctx.float_or(s, "delta", 0.1);
    let r = ctx.float_or(s, "r", 1.0);
    let mode = match ctx.raw(s, "criterion") {
        None => CriterionMode::Probability,
        Some(Value::String(m)) if m == "probability" => CriterionMode::Probability,
        Some(Value::String(m)) if m == "mean_error" => CriterionMode::MeanError,
        Some(other) => {
            ctx.err(format!(
                "[{name}] criterion: {other} is not \"probability\" or \"mean_error\""
            ));
            CriterionMode::Probability
        }
    };
    ctx.finish(s, "");
    (horizons, trials, seed, Criterion { eps, delta, r, mode })
}

fn ensemble_domain(spec: &EnsembleSpec) -> Result<Domain> {
    Ok(match spec {
        EnsembleSpec::LipschitzVg { domain, .. }
        | EnsembleSpec::StronglyConvexVg { domain, .. }
        | EnsembleSpec::QuadraticLattice { domain, .. }
        | EnsembleSpec::MomentPair { domain, .. } => domain.clone(),
        EnsembleSpec::QuadraticPair { .. }
        | EnsembleSpec::NormDistancePair { .. }
        | EnsembleSpec::ThresholdLattice { .. } => Domain::interval(0.0, 1.0)?,
        EnsembleSpec::EvenPowerPair { .. } | EnsembleSpec::EvenPowerLattice { .. } => Domain::interval(-1.0, 1.0)?,
    })
}

/// Parses and validates a config, collecting all violations.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let root: Table = text
        .parse()
        .map_err(|e: toml::de::Error| Error::InvalidConfig(vec![format!("syntax: {e}")]))?;
    let mut ctx = Ctx { errors: Vec::new() };
    for key in root.keys() {
        if !SECTIONS.contains(&key.as_str()) {
            ctx.err(format!("unknown section [{key}]"));
        }
    }
    let mut es = section(&root, "ensemble", &mut ctx);
    let mut os = section(&root, "oracle", &mut ctx);
    let mut als = section(&root, "algorithm", &mut ctx);
    let mut ss = section(&root, "sweep", &mut ctx);
    let ensemble = if es.table.is_some() {
        parse_ensemble(&mut ctx, &mut es)
    } else {
        None
    };
    let oracle = if os.table.is_some() {
        parse_oracle(&mut ctx, &mut os)
    } else {
        None
    };
    let algorithm = if als.table.is_some() {
        parse_algorithm(&mut ctx, &mut als)
    } else {
        None
    };
    let (horizons, trials, base_seed, criterion) = parse_sweep(&mut ctx, &mut ss);

    let mut algorithm = algorithm.map(|(mut alg, x1)| {
        if let (Algorithm::ProjectedSgd { x1: slot, .. }, Some(spec)) = (&mut alg, &ensemble) {
            match ensemble_domain(spec) {
                Ok(d) => {
                    let v = match x1 {
                        Some(v) if v.len() == 1 && d.dim() > 1 => vec![v[0]; d.dim()],
                        Some(v) => v,
                        None => d.center.clone(),
                    };
                    if !d.contains(&v) {
                        ctx.err(format!("[algorithm] x1 = {v:?} violates x1 ∈ {}", d.describe()));
                    }
                    *slot = v;
                }
                Err(e) => ctx.err(format!("[ensemble] {e}")),
            }
        }
        alg
    });
    if let (Some(Algorithm::ProjectedSgd { x1, .. }), None) = (&algorithm, &ensemble) {
        if x1.is_empty() {
            algorithm = None;
        }
    }
    let cfg = match (ensemble, oracle, algorithm) {
        (Some(ensemble), Some(oracle), Some(algorithm)) => Some(ExperimentConfig {
            ensemble,
            oracle,
            algorithm,
            horizons: horizons.clone(),
            trials,
            base_seed,
            criterion,
        }),
        _ => None,
    };
    if let Some(c) = &cfg {
        ctx.errors
            .extend(c.violations().into_iter().map(|v| format!("[sweep] {v}")));
    } else {
        let probe = ExperimentConfig {
            ensemble: EnsembleSpec::QuadraticPair { eps: 1.0 },
            oracle: OracleModel::NoiselessFirstOrder,
            algorithm: Algorithm::Bisection,
            horizons,
            trials,
            base_seed,
            criterion,
        };
        ctx.errors
            .extend(probe.violations().into_iter().map(|v| format!("[sweep] {v}")));
    }
    match cfg {
        Some(c) if ctx.errors.is_empty() => Ok(c),
        _ => Err(Error::InvalidConfig(ctx.errors)),
    }
}

fn num(v: f64) -> String {
    format!("{v:?}")
}

fn write_domain(out: &mut String, d: &Domain) {
    match (d.kind, d.dim()) {
        (DomainKind::BoxInf, 1) => {
            let (lo, hi) = d.axis_bounds(0);
            let _ = writeln!(out, "domain = \"interval\"\nlo = {}\nhi = {}", num(lo), num(hi));
        }
        (kind, n) => {
            let name = if kind == DomainKind::BoxInf { "cube" } else { "ball" };
            let _ = writeln!(out, "domain = \"{name}\"\ndim = {n}\nradius = {}", num(d.radius));
        }
    }
}

/// Canonical text of a config; parsing it yields an equal config.
pub fn to_normal_form(cfg: &ExperimentConfig) -> String {
    let mut out = String::from("[ensemble]\n");
    match &cfg.ensemble {
        EnsembleSpec::QuadraticPair { eps } => {
            let _ = writeln!(out, "family = \"quadratic_pair\"\neps = {}", num(*eps));
        }
        EnsembleSpec::NormDistancePair { eps } => {
            let _ = writeln!(out, "family = \"norm_distance_pair\"\neps = {}", num(*eps));
        }
        EnsembleSpec::QuadraticLattice { domain, eps, r } => {
            let _ = writeln!(
                out,
                "family = \"quadratic_lattice\"\neps = {}\nr = {}",
                num(*eps),
                num(*r)
            );
            write_domain(&mut out, domain);
        }
        EnsembleSpec::LipschitzVg { domain, eps, r, seed }
        | EnsembleSpec::StronglyConvexVg { domain, eps, r, seed } => {
            let fam = if matches!(cfg.ensemble, EnsembleSpec::LipschitzVg { .. }) {
                "lipschitz_vg"
            } else {
                "strongly_convex_vg"
            };
            let _ = writeln!(
                out,
                "family = \"{fam}\"\neps = {}\nr = {}\npacking_seed = {seed}",
                num(*eps),
                num(*r)
            );
            write_domain(&mut out, domain);
        }
        EnsembleSpec::EvenPowerPair { degree, eps } | EnsembleSpec::EvenPowerLattice { degree, eps } => {
            let fam = if matches!(cfg.ensemble, EnsembleSpec::EvenPowerPair { .. }) {
                "even_power_pair"
            } else {
                "even_power_lattice"
            };
            let _ = writeln!(out, "family = \"{fam}\"\ndegree = {degree}\neps = {}", num(*eps));
        }
        EnsembleSpec::MomentPair { domain, eps } => {
            let _ = writeln!(out, "family = \"moment_pair\"\neps = {}", num(*eps));
            write_domain(&mut out, domain);
        }
        EnsembleSpec::ThresholdLattice { eps } => {
            let _ = writeln!(out, "family = \"threshold_lattice\"\neps = {}", num(*eps));
        }
    }
    out.push_str("\n[oracle]\n");
    let _ = match &cfg.oracle {
        OracleModel::NoiselessFirstOrder => writeln!(out, "kind = \"noiseless\""),
        OracleModel::Fog { sigma } => writeln!(out, "kind = \"fog\"\nsigma = {}", num(*sigma)),
        OracleModel::Sog { sigma } => writeln!(out, "kind = \"sog\"\nsigma = {}", num(*sigma)),
        OracleModel::StatEstimation { sigma } => {
            writeln!(out, "kind = \"stat_estimation\"\nsigma = {}", num(*sigma))
        }
        OracleModel::MomentBounded {
            alpha,
            c,
            eps,
            lipschitz,
        } => writeln!(
            out,
            "kind = \"moment_bounded\"\nalpha = {}\nc = {}\neps = {}\nlipschitz = {}",
            num(*alpha),
            num(*c),
            num(*eps),
            num(*lipschitz)
        ),
        OracleModel::BernoulliLabel { kappa, c, big_c } => writeln!(
            out,
            "kind = \"bernoulli_label\"\nkappa = {}\nc = {}\nbig_c = {}",
            num(*kappa),
            num(*c),
            num(*big_c)
        ),
    };
    out.push_str("\n[algorithm]\n");
    let _ = match &cfg.algorithm {
        Algorithm::ProjectedSgd { step, x1 } => {
            let xs: Vec<String> = x1.iter().map(|v| num(*v)).collect();
            let rule = match step {
                StepRule::Harmonic { a } => format!("step = \"harmonic\"\na = {}", num(*a)),
                StepRule::InvSqrt { a } => format!("step = \"inv_sqrt\"\na = {}", num(*a)),
                StepRule::InvSqrtHorizon => "step = \"inv_sqrt\"".to_string(),
            };
            writeln!(out, "kind = \"sgd\"\n{rule}\nx1 = [{}]", xs.join(", "))
        }
        Algorithm::Bisection => writeln!(out, "kind = \"bisection\""),
        Algorithm::GridSearch { points } => writeln!(out, "kind = \"grid_search\"\npoints = {points}"),
        Algorithm::ActiveBisection(p) => writeln!(
            out,
            "kind = \"active_bisection\"\nk = {}\neps_target = {}\ncontraction = {}\nkappa = {}",
            num(p.k),
            num(p.eps_target),
            num(p.contraction),
            num(p.kappa)
        ),
    };
    let hs: Vec<String> = cfg.horizons.iter().map(|h| h.to_string()).collect();
    let c = &cfg.criterion;
    let mode = match c.mode {
        CriterionMode::Probability => "probability",
        CriterionMode::MeanError => "mean_error",
    };
    let _ = writeln!(
        out,
        "\n[sweep]\nhorizons = [{}]\ntrials = {}\nseed = {}\neps = {}\ndelta = {}\nr = {}\ncriterion = \"{mode}\"",
        hs.join(", "),
        cfg.trials,
        cfg.base_seed,
        num(c.eps),
        num(c.delta),
        num(c.r)
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
[ensemble]
family = "quadratic_pair"
eps = 0.02

[oracle]
kind = "fog"
sigma = 1.0

[algorithm]
kind = "sgd"
step = "harmonic"

[sweep]
horizons = [10, 100]
trials = 100
seed = 1
"#;

    #[test]
    fn minimal_round_trip() {
        let cfg = parse_config(MINIMAL).unwrap();
        assert_eq!(cfg.horizons, vec![10, 100]);
        assert_eq!(
            cfg.algorithm,
            Algorithm::ProjectedSgd {
                step: StepRule::Harmonic { a: 1.0 },
                x1: vec![0.5]
            }
        );
        let again = parse_config(&to_normal_form(&cfg)).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(to_normal_form(&cfg), to_normal_form(&again));
    }

    fn messages(text: &str) -> Vec<String> {
        match parse_config(text) {
            Err(Error::InvalidConfig(v)) => v,
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn delta_out_of_range() {
        let text = MINIMAL.replace("seed = 1", "seed = 1\ndelta = 0.7");
        assert!(messages(&text).iter().any(|m| m.contains("δ ∈ (0,1/2)")));
    }

    #[test]
    fn too_few_trials() {
        let text = MINIMAL.replace("trials = 100", "trials = 10");
        assert!(messages(&text).iter().any(|m| m.contains("minimum 30")));
    }

    #[test]
    fn unknown_keys_and_all_violations() {
        let text = MINIMAL
            .replace("sigma = 1.0", "sigma = 1.0\nsigmaa = 2.0")
            .replace("trials = 100", "trials = 10\nfoo = 1");
        let m = messages(&text);
        assert!(m.iter().any(|x| x.contains("`sigmaa`") && x.contains("[oracle]")));
        assert!(m.iter().any(|x| x.contains("`foo`") && x.contains("[sweep]")));
        assert!(m.iter().any(|x| x.contains("minimum 30")));
    }

    #[test]
    fn kind_specific_keys() {
        let text = MINIMAL.replace("kind = \"fog\"\nsigma = 1.0", "kind = \"noiseless\"\nsigma = 1.0");
        assert!(messages(&text)
            .iter()
            .any(|m| m.contains("`sigma`") && m.contains("noiseless")));
    }
}
