//! Stochastic oracles `P(dy | f, x)` and their per-query KL divergences.
//!
//! All information quantities are in nats.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{out_of_range, Error, Result};
use crate::geometry::dist2;
use crate::instances::{Family, Instance};

#[derive(Debug, Clone, PartialEq)]
pub enum OracleResponse {
    FirstOrder { value: f64, grad: Vec<f64> },
    GradOnly { grad: Vec<f64> },
    Label(i8),
    Raw(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleModel {
    NoiselessFirstOrder,
    /// `(f(x) + W, g(x) + Z)` with `W ~ N(0,σ²)`, `Z ~ N(0,σ²I)`.
    Fog {
        sigma: f64,
    },
    /// `g(x) + Z` with `Z ~ N(0,σ²I)`.
    Sog {
        sigma: f64,
    },
    /// Returns `(0, 0)` with probability `1 − p` and `p⁻¹(f(x), ∇f(x))`
    /// otherwise, where `p = c·ε^{α/(α−1)}`. Linear instances only.
    MomentBounded {
        alpha: f64,
        c: f64,
        eps: f64,
        lipschitz: f64,
    },
    /// `±1` labels with `P(+1) = η(x) = clamp(1/2 + sign(x−θ)·C|x−θ|^{κ−1})`.
    /// Threshold instances only; `c` is the lower noise envelope.
    BernoulliLabel {
        kappa: f64,
        c: f64,
        big_c: f64,
    },
    /// Draws from `N(θ, σ²I)` regardless of the query.
    StatEstimation {
        sigma: f64,
    },
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R, sigma: f64) -> f64 {
    let z: f64 = StandardNormal.sample(rng);
    sigma * z
}

/// Binary KL divergence `d(p‖q)` in nats.
pub fn binary_kl(p: f64, q: f64) -> f64 {
    let term = |a: f64, b: f64| {
        if a == 0.0 {
            0.0
        } else if b == 0.0 {
            f64::INFINITY
        } else {
            a * (a / b).ln()
        }
    };
    term(p, q) + term(1.0 - p, 1.0 - q)
}

/// Binary entropy `h₂(δ)` in nats.
pub fn binary_entropy(d: f64) -> f64 {
    let t = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.ln() };
    t(d) + t(1.0 - d)
}

impl OracleModel {
    pub fn fog(sigma: f64) -> Result<Self> {
        check_sigma(sigma)?;
        Ok(OracleModel::Fog { sigma })
    }

    pub fn sog(sigma: f64) -> Result<Self> {
        check_sigma(sigma)?;
        Ok(OracleModel::Sog { sigma })
    }

    pub fn stat_estimation(sigma: f64) -> Result<Self> {
        check_sigma(sigma)?;
        Ok(OracleModel::StatEstimation { sigma })
    }

    /// Moment-bounded oracle with `c = 2·min(L^α/2, 1)^{−1/(α−1)}`, which
    /// makes `c^{1−α} = 2^{1−α}·min(L^α/2, 1)` strictly below the envelope.
    pub fn moment_bounded(alpha: f64, lipschitz: f64, eps: f64) -> Result<Self> {
        if !(alpha > 1.0) {
            return Err(out_of_range(format!("α = {alpha}"), "α > 1"));
        }
        let m = (lipschitz.powf(alpha) / 2.0).min(1.0);
        let c = 2.0 * m.powf(-1.0 / (alpha - 1.0));
        Self::moment_bounded_with_c(alpha, c, lipschitz, eps)
    }

    pub fn moment_bounded_with_c(alpha: f64, c: f64, lipschitz: f64, eps: f64) -> Result<Self> {
        if !(alpha > 1.0) {
            return Err(out_of_range(format!("α = {alpha}"), "α > 1"));
        }
        if !(lipschitz > 0.0 && eps > 0.0 && c > 0.0) {
            return Err(out_of_range("moment-bounded parameters", "L > 0, ε > 0, c > 0"));
        }
        let envelope = (lipschitz.powf(alpha) / 2.0).min(1.0);
        if !(c.powf(1.0 - alpha) < envelope) {
            return Err(out_of_range(
                format!("c = {c}"),
                format!("c^(1−α) < min(L^α/2, 1) = {envelope}"),
            ));
        }
        let o = OracleModel::MomentBounded {
            alpha,
            c,
            eps,
            lipschitz,
        };
        let p = o.moment_probability().unwrap_or(f64::NAN);
        if !(p > 0.0 && p <= 1.0) {
            return Err(out_of_range(format!("p = c·ε^(α/(α−1)) = {p}"), "0 < p ≤ 1"));
        }
        Ok(o)
    }

    pub fn bernoulli_label(kappa: f64, c: f64, big_c: f64) -> Result<Self> {
        if !(kappa >= 1.0) {
            return Err(out_of_range(format!("κ = {kappa}"), "κ ≥ 1"));
        }
        if !(0.0 < c && c < big_c && big_c < 0.5) {
            return Err(out_of_range(format!("c = {c}, C = {big_c}"), "0 < c < C < 1/2"));
        }
        Ok(OracleModel::BernoulliLabel { kappa, c, big_c })
    }

    /// `p_{ε,α}` for the moment-bounded oracle.
    pub fn moment_probability(&self) -> Option<f64> {
        match self {
            OracleModel::MomentBounded { alpha, c, eps, .. } => Some(c * eps.powf(alpha / (alpha - 1.0))),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            OracleModel::NoiselessFirstOrder => "noiseless",
            OracleModel::Fog { .. } => "fog",
            OracleModel::Sog { .. } => "sog",
            OracleModel::MomentBounded { .. } => "moment_bounded",
            OracleModel::BernoulliLabel { .. } => "bernoulli_label",
            OracleModel::StatEstimation { .. } => "stat_estimation",
        }
    }

    fn check_instance(&self, inst: &Instance) -> Result<()> {
        match (self, &inst.family) {
            (OracleModel::MomentBounded { .. }, Family::Linear { .. }) => Ok(()),
            (OracleModel::MomentBounded { .. }, _) => Err(Error::Unsupported(
                "moment-bounded oracle is defined for the linear pair only".into(),
            )),
            (OracleModel::BernoulliLabel { .. }, Family::Threshold { .. }) => Ok(()),
            (OracleModel::BernoulliLabel { .. }, _) => {
                Err(Error::Unsupported("label oracle needs a threshold instance".into()))
            }
            _ => Ok(()),
        }
    }

    /// `P(Y = +1)` for the label oracle at `x`.
    pub fn eta(&self, inst: &Instance, x: f64) -> Result<f64> {
        match (self, &inst.family) {
            (OracleModel::BernoulliLabel { kappa, big_c, .. }, Family::Threshold { center }) => {
                Ok(eta_profile(*kappa, *big_c, x - center))
            }
            _ => Err(Error::Unsupported(
                "η is defined for the label oracle on thresholds".into(),
            )),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, inst: &Instance, x: &[f64], rng: &mut R) -> Result<OracleResponse> {
        inst.domain.check(x)?;
        self.check_instance(inst)?;
        Ok(self.sample_unchecked(inst, x, rng))
    }

    pub(crate) fn sample_unchecked<R: Rng + ?Sized>(&self, inst: &Instance, x: &[f64], rng: &mut R) -> OracleResponse {
        match self {
            OracleModel::NoiselessFirstOrder => OracleResponse::FirstOrder {
                value: inst.value_unchecked(x),
                grad: inst.subgradient_unchecked(x),
            },
            OracleModel::Fog { sigma } => {
                let value = inst.value_unchecked(x) + gaussian(rng, *sigma);
                let grad = inst
                    .subgradient_unchecked(x)
                    .into_iter()
                    .map(|g| g + gaussian(rng, *sigma))
                    .collect();
                OracleResponse::FirstOrder { value, grad }
            }
            OracleModel::Sog { sigma } => OracleResponse::GradOnly {
                grad: inst
                    .subgradient_unchecked(x)
                    .into_iter()
                    .map(|g| g + gaussian(rng, *sigma))
                    .collect(),
            },
            OracleModel::MomentBounded { .. } => {
                let p = self.moment_probability().unwrap_or(1.0);
                if rng.random::<f64>() < p {
                    OracleResponse::FirstOrder {
                        value: inst.value_unchecked(x) / p,
                        grad: inst.subgradient_unchecked(x).into_iter().map(|g| g / p).collect(),
                    }
                } else {
                    OracleResponse::FirstOrder {
                        value: 0.0,
                        grad: vec![0.0; x.len()],
                    }
                }
            }
            OracleModel::BernoulliLabel { kappa, big_c, .. } => {
                let theta = inst.scalar_center().unwrap_or(0.0);
                let eta = eta_profile(*kappa, *big_c, x[0] - theta);
                OracleResponse::Label(if rng.random::<f64>() < eta { 1 } else { -1 })
            }
            OracleModel::StatEstimation { sigma } => OracleResponse::Raw(
                inst.minimizer()
                    .into_iter()
                    .map(|t| t + gaussian(rng, *sigma))
                    .collect(),
            ),
        }
    }

    /// KL divergence between the response laws of two instances at `x`.
    pub fn response_kl(&self, a: &Instance, b: &Instance, x: &[f64]) -> Result<f64> {
        a.domain.check(x)?;
        b.domain.check(x)?;
        self.check_instance(a)?;
        self.check_instance(b)?;
        self.response_kl_unchecked(a, b, x)
    }

    pub(crate) fn response_kl_unchecked(&self, a: &Instance, b: &Instance, x: &[f64]) -> Result<f64> {
        match self {
            OracleModel::Fog { sigma } => {
                let dv = a.value_unchecked(x) - b.value_unchecked(x);
                let dg = dist2(&a.subgradient_unchecked(x), &b.subgradient_unchecked(x));
                Ok((dv * dv + dg) / (2.0 * sigma * sigma))
            }
            OracleModel::Sog { sigma } => {
                let dg = dist2(&a.subgradient_unchecked(x), &b.subgradient_unchecked(x));
                Ok(dg / (2.0 * sigma * sigma))
            }
            OracleModel::NoiselessFirstOrder => {
                let same = a.value_unchecked(x) == b.value_unchecked(x)
                    && a.subgradient_unchecked(x) == b.subgradient_unchecked(x);
                Ok(if same { 0.0 } else { f64::INFINITY })
            }
            OracleModel::BernoulliLabel { kappa, big_c, .. } => {
                let (ta, tb) = (a.scalar_center().unwrap_or(0.0), b.scalar_center().unwrap_or(0.0));
                Ok(binary_kl(
                    eta_profile(*kappa, *big_c, x[0] - ta),
                    eta_profile(*kappa, *big_c, x[0] - tb),
                ))
            }
            OracleModel::StatEstimation { sigma } => Ok(dist2(&a.minimizer(), &b.minimizer()) / (2.0 * sigma * sigma)),
            OracleModel::MomentBounded { .. } => Err(Error::Unsupported(
                "moment-bounded oracle has no per-pair KL; its information is bounded by p·ln 2".into(),
            )),
        }
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(out_of_range(format!("σ = {sigma}"), "σ > 0"))
    }
}

/// `clamp(1/2 + sign(u)·C|u|^{κ−1}, 0, 1)` with `sign(0) = 0`.
pub fn eta_profile(kappa: f64, big_c: f64, u: f64) -> f64 {
    if u == 0.0 {
        return 0.5;
    }
    let mag = big_c * u.abs().powf(kappa - 1.0);
    (0.5 + u.signum() * mag).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Domain;
    use crate::seed::stream;

    fn pair() -> (Instance, Instance) {
        let d = Domain::interval(0.0, 1.0).unwrap();
        (
            Instance::quadratic(&d, vec![0.3]).unwrap(),
            Instance::quadratic(&d, vec![0.7]).unwrap(),
        )
    }

    #[test]
    fn fog_kl_at_left_end() {
        let (a, b) = pair();
        let o = OracleModel::fog(1.0).unwrap();
        // value gap 0.045 − 0.245 = −0.2, gradient gap 0.4
        assert!((o.response_kl(&a, &b, &[0.0]).unwrap() - 0.1).abs() < 1e-15);
        assert_eq!(o.response_kl(&a, &a, &[0.4]).unwrap(), 0.0);
    }

    #[test]
    fn sog_kl_is_constant() {
        let d = Domain::interval(0.0, 1.0).unwrap();
        let a = Instance::quadratic(&d, vec![0.0]).unwrap();
        let b = Instance::quadratic(&d, vec![1.0]).unwrap();
        let o = OracleModel::sog(2.0).unwrap();
        for x in [0.0, 0.3, 1.0] {
            assert_eq!(o.response_kl(&a, &b, &[x]).unwrap(), 0.125);
        }
    }

    #[test]
    fn near_noiseless_fog() {
        let (a, _) = pair();
        let o = OracleModel::fog(1e-12).unwrap();
        let mut rng = stream(&[1]);
        match o.sample(&a, &[0.7], &mut rng).unwrap() {
            OracleResponse::FirstOrder { value, grad } => {
                assert!((value - 0.08).abs() < 1e-6);
                assert!((grad[0] - 0.4).abs() < 1e-6);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn moment_bounded_with_unit_probability_is_exact() {
        let d = Domain::cube(2, 1.0).unwrap();
        let f = Instance::linear(&d, vec![0.5, 0.5], 1.0).unwrap();
        // α = 2, ε = 1, c = 1 ⇒ p = 1; envelope min(L²/2, 1) = 1 needs c^{-1} < 1, so use L large and c just above 1.
        let o = OracleModel::moment_bounded_with_c(2.0, 1.0 + 1e-12, 10.0, 1.0 - 1e-12).unwrap();
        let p = o.moment_probability().unwrap();
        assert!(p <= 1.0 && p > 1.0 - 1e-9);
        let mut rng = stream(&[2]);
        for _ in 0..100 {
            match o.sample(&f, &[0.2, -0.4], &mut rng).unwrap() {
                OracleResponse::FirstOrder { value, grad } => {
                    assert!((value * p - (-0.1)).abs() < 1e-9);
                    assert!((grad[0] * p - 0.5).abs() < 1e-9);
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn moment_bounded_rejects_other_families() {
        let (a, _) = pair();
        let o = OracleModel::moment_bounded(2.0, 1.0, 0.1).unwrap();
        assert!(o.sample(&a, &[0.5], &mut stream(&[0])).is_err());
        assert!(matches!(o.response_kl(&a, &a, &[0.5]), Err(Error::Unsupported(_))));
    }

    #[test]
    fn binary_kl_example() {
        assert!((binary_kl(0.75, 0.5) - 0.130_812_035_941_137).abs() < 1e-12);
        assert!(binary_kl(0.75, 0.5) <= 4.0 * 0.25 * 0.25);
        assert_eq!(binary_kl(0.3, 0.3), 0.0);
    }

    #[test]
    fn eta_profile_sign() {
        assert_eq!(eta_profile(2.0, 0.4, 0.0), 0.5);
        assert!(eta_profile(2.0, 0.4, -0.1) < 0.5);
        assert!(eta_profile(2.0, 0.4, 0.1) > 0.5);
        assert!((eta_profile(1.0, 0.4, 0.3) - 0.9).abs() < 1e-15);
    }

    #[test]
    fn label_oracle_parameter_checks() {
        assert!(OracleModel::bernoulli_label(2.0, 0.4, 0.3).is_err());
        assert!(OracleModel::bernoulli_label(0.5, 0.1, 0.3).is_err());
        assert!(OracleModel::fog(0.0).is_err());
    }
}
