//! Parametric convex objective families and the ensembles built from them.

use crate::error::{out_of_range, Error, Result};
use crate::geometry::{dist2, lattice_packing, vg_packing, Domain, DomainKind};

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `c·‖x − θ‖`
    NormDistance { scale: f64, center: Vec<f64> },
    /// `½‖x − θ‖²`
    Quadratic { center: Vec<f64> },
    /// `(x − θ)^m`, one-dimensional, `m ∈ {2,4,6,8}`
    EvenPower { degree: u32, center: f64 },
    /// `s·ξᵀx`
    Linear { slope: Vec<f64>, sign: f64 },
    /// `|x − θ|`, one-dimensional
    Threshold { center: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub family: Family,
    pub domain: Domain,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

impl Instance {
    pub fn norm_distance(domain: &Domain, scale: f64, center: Vec<f64>) -> Result<Self> {
        if !(scale > 0.0) {
            return Err(out_of_range(format!("scale c = {scale}"), "c > 0"));
        }
        domain.check(&center)?;
        Ok(Self::raw(domain, Family::NormDistance { scale, center }))
    }

    pub fn quadratic(domain: &Domain, center: Vec<f64>) -> Result<Self> {
        domain.check(&center)?;
        Ok(Self::raw(domain, Family::Quadratic { center }))
    }

    pub fn even_power(domain: &Domain, degree: u32, center: f64) -> Result<Self> {
        if ![2, 4, 6, 8].contains(&degree) {
            return Err(out_of_range(format!("degree m = {degree}"), "m ∈ {2, 4, 6, 8}"));
        }
        Self::scalar_domain(domain)?;
        domain.check(&[center])?;
        Ok(Self::raw(domain, Family::EvenPower { degree, center }))
    }

    pub fn linear(domain: &Domain, slope: Vec<f64>, sign: f64) -> Result<Self> {
        if slope.len() != domain.dim() {
            return Err(out_of_range("slope length", format!("= dimension {}", domain.dim())));
        }
        if sign != 1.0 && sign != -1.0 {
            return Err(out_of_range(format!("sign s = {sign}"), "s ∈ {−1, +1}"));
        }
        Ok(Self::raw(domain, Family::Linear { slope, sign }))
    }

    pub fn threshold(domain: &Domain, center: f64) -> Result<Self> {
        Self::scalar_domain(domain)?;
        domain.check(&[center])?;
        Ok(Self::raw(domain, Family::Threshold { center }))
    }

    fn raw(domain: &Domain, family: Family) -> Self {
        Instance {
            family,
            domain: domain.clone(),
        }
    }

    fn scalar_domain(domain: &Domain) -> Result<()> {
        if domain.dim() != 1 {
            return Err(out_of_range(format!("dimension n = {}", domain.dim()), "n = 1"));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    /// Value without the domain check; used on hot paths after the caller
    /// has validated `x`.
    pub(crate) fn value_unchecked(&self, x: &[f64]) -> f64 {
        match &self.family {
            Family::NormDistance { scale, center } => scale * dist2(x, center).sqrt(),
            Family::Quadratic { center } => 0.5 * dist2(x, center),
            Family::EvenPower { degree, center } => (x[0] - center).powi(*degree as i32),
            Family::Linear { slope, sign } => sign * slope.iter().zip(x).map(|(a, b)| a * b).sum::<f64>(),
            Family::Threshold { center } => (x[0] - center).abs(),
        }
    }

    pub(crate) fn subgradient_unchecked(&self, x: &[f64]) -> Vec<f64> {
        match &self.family {
            Family::NormDistance { scale, center } => {
                let r = dist2(x, center).sqrt();
                if r == 0.0 {
                    vec![0.0; x.len()]
                } else {
                    x.iter().zip(center).map(|(a, b)| scale * (a - b) / r).collect()
                }
            }
            Family::Quadratic { center } => x.iter().zip(center).map(|(a, b)| a - b).collect(),
            Family::EvenPower { degree, center } => {
                let m = *degree as i32;
                vec![m as f64 * (x[0] - center).powi(m - 1)]
            }
            Family::Linear { slope, sign } => slope.iter().map(|a| sign * a).collect(),
            Family::Threshold { center } => {
                let u = x[0] - center;
                vec![if u > 0.0 {
                    1.0
                } else if u < 0.0 {
                    -1.0
                } else {
                    0.0
                }]
            }
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        self.domain.check(x)?;
        Ok(self.value_unchecked(x))
    }

    /// Gradient where differentiable; the zero vector at the kink of the
    /// norm-distance and threshold families.
    pub fn subgradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.domain.check(x)?;
        Ok(self.subgradient_unchecked(x))
    }

    pub fn minimizer(&self) -> Vec<f64> {
        match &self.family {
            Family::NormDistance { center, .. } | Family::Quadratic { center } => center.clone(),
            Family::EvenPower { center, .. } | Family::Threshold { center } => vec![*center],
            Family::Linear { slope, sign } => {
                let d = &self.domain;
                match d.kind {
                    DomainKind::BoxInf => slope
                        .iter()
                        .zip(&d.center)
                        .map(|(a, c)| {
                            let g = sign * a;
                            if g > 0.0 {
                                c - d.radius
                            } else if g < 0.0 {
                                c + d.radius
                            } else {
                                *c
                            }
                        })
                        .collect(),
                    DomainKind::Ball2 => {
                        let nrm = norm(slope);
                        if nrm == 0.0 {
                            return d.center.clone();
                        }
                        slope
                            .iter()
                            .zip(&d.center)
                            .map(|(a, c)| c - d.radius * sign * a / nrm)
                            .collect()
                    }
                }
            }
        }
    }

    pub fn minimum(&self) -> f64 {
        match &self.family {
            Family::Linear { slope, sign } => {
                let d = &self.domain;
                let at_center = sign * slope.iter().zip(&d.center).map(|(a, c)| a * c).sum::<f64>();
                match d.kind {
                    DomainKind::BoxInf => at_center - d.radius * slope.iter().map(|a| a.abs()).sum::<f64>(),
                    DomainKind::Ball2 => at_center - d.radius * norm(slope),
                }
            }
            _ => 0.0,
        }
    }

    /// Excess value `f(x) − f*` without the domain check.
    pub(crate) fn excess_unchecked(&self, x: &[f64]) -> f64 {
        self.value_unchecked(x) - self.minimum()
    }

    pub fn excess(&self, x: &[f64]) -> Result<f64> {
        self.domain.check(x)?;
        Ok(self.excess_unchecked(x))
    }

    /// One-dimensional center, for families that have one.
    pub fn scalar_center(&self) -> Option<f64> {
        match &self.family {
            Family::EvenPower { center, .. } | Family::Threshold { center } => Some(*center),
            Family::Quadratic { center } | Family::NormDistance { center, .. } if center.len() == 1 => Some(center[0]),
            _ => None,
        }
    }
}

/// Family-specific exclusion measure `d(a, b)`, equal to
/// `inf_x [a(x) + b(x)] − [a* + b*]` for each family.
pub fn separation(a: &Instance, b: &Instance) -> Result<f64> {
    if a.domain != b.domain {
        return Err(Error::IncompatibleInstances("different domains".into()));
    }
    match (&a.family, &b.family) {
        (Family::NormDistance { scale: ca, center: ta }, Family::NormDistance { scale: cb, center: tb }) => {
            if ca != cb {
                return Err(Error::IncompatibleInstances(format!(
                    "norm-distance scales differ ({ca} vs {cb})"
                )));
            }
            Ok(ca * dist2(ta, tb).sqrt())
        }
        (Family::Quadratic { center: ta }, Family::Quadratic { center: tb }) => Ok(0.25 * dist2(ta, tb)),
        (Family::EvenPower { degree: ma, center: ta }, Family::EvenPower { degree: mb, center: tb }) => {
            if ma != mb {
                return Err(Error::IncompatibleInstances(format!(
                    "even-power degrees differ ({ma} vs {mb})"
                )));
            }
            Ok(2f64.powi(1 - *ma as i32) * (ta - tb).powi(*ma as i32))
        }
        (Family::Threshold { center: ta }, Family::Threshold { center: tb }) => Ok((ta - tb).abs()),
        (Family::Linear { slope: xa, sign: sa }, Family::Linear { slope: xb, sign: sb }) => {
            let d = &a.domain;
            let v: Vec<f64> = xa.iter().zip(xb).map(|(p, q)| sa * p + sb * q).collect();
            let nrm = |w: &[f64]| match d.kind {
                DomainKind::BoxInf => w.iter().map(|x| x.abs()).sum::<f64>(),
                DomainKind::Ball2 => norm(w),
            };
            Ok(d.radius * (nrm(xa) + nrm(xb) - nrm(&v)))
        }
        _ => Err(Error::IncompatibleInstances("family mismatch".into())),
    }
}

/// Grid minimization of `a(x) + b(x) − a* − b*` for one-dimensional
/// instances; the reference against which [`separation`] is checked.
pub fn separation_on_grid(a: &Instance, b: &Instance, points: usize) -> Result<f64> {
    if a.dim() != 1 || b.dim() != 1 {
        return Err(Error::Unsupported("grid separation is one-dimensional".into()));
    }
    let (lo, hi) = a.domain.axis_bounds(0);
    let base = a.minimum() + b.minimum();
    Ok(grid(lo, hi, points)
        .map(|x| a.value_unchecked(&[x]) + b.value_unchecked(&[x]) - base)
        .fold(f64::INFINITY, f64::min))
}

/// `points` equally spaced values covering `[lo, hi]`, both ends included.
pub fn grid(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let step = if points > 1 {
        (hi - lo) / (points - 1) as f64
    } else {
        0.0
    };
    (0..points).map(move |i| if i + 1 == points { hi } else { lo + i as f64 * step })
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceEnsemble {
    pub instances: Vec<Instance>,
    /// Certified lower bound on `d(f_i, f_j)` over all pairs, when one exists.
    pub separation: Option<f64>,
    /// Common minimum value shared by all instances.
    pub common_min: Option<f64>,
}

impl InstanceEnsemble {
    pub fn new(instances: Vec<Instance>, separation: Option<f64>, common_min: Option<f64>) -> Result<Self> {
        if instances.len() < 2 {
            return Err(out_of_range(format!("ensemble size N = {}", instances.len()), "N ≥ 2"));
        }
        let domain = &instances[0].domain;
        if instances.iter().any(|f| &f.domain != domain) {
            return Err(Error::IncompatibleInstances("ensemble mixes domains".into()));
        }
        Ok(InstanceEnsemble {
            instances,
            separation,
            common_min,
        })
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn domain(&self) -> &Domain {
        &self.instances[0].domain
    }

    /// Smallest pairwise `d` over the ensemble.
    pub fn min_pairwise_separation(&self) -> Result<f64> {
        let mut best = f64::INFINITY;
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                best = best.min(separation(&self.instances[i], &self.instances[j])?);
            }
        }
        Ok(best)
    }
}

/// Construction recipes for the ensembles used by the lower-bound arguments.
#[derive(Debug, Clone, PartialEq)]
pub enum EnsembleSpec {
    /// Scaled norm-distance functions centered at `s_X·ξ_i` for a sign-vector
    /// code `ξ`; 1-Lipschitz with pairwise `d ≥ 2ε^{1/r}`.
    LipschitzVg {
        domain: Domain,
        eps: f64,
        r: f64,
        seed: u64,
    },
    /// Quadratics centered at `√(16ε^{1/r}/n)·ξ_i`; pairwise `d ≥ 2ε^{1/r}`.
    StronglyConvexVg {
        domain: Domain,
        eps: f64,
        r: f64,
        seed: u64,
    },
    /// Two quadratics on `[0,1]` centered at `1/2 ∓ √(2ε)` (or `0`, `1` when `ε ≥ 1/8`).
    QuadraticPair { eps: f64 },
    /// `|x − 1/2 ± ε|` on `[0,1]`, with `d = 2ε`.
    NormDistancePair { eps: f64 },
    /// Quadratics centered on a grid with spacing `2√(2ε^{1/r})`.
    QuadraticLattice { domain: Domain, eps: f64, r: f64 },
    /// `(x ∓ ε^{1/2m})^m` on `[−1,1]`, with `d = 2√ε`.
    EvenPowerPair { degree: u32, eps: f64 },
    /// Even powers on `[−1,1]` centered on a grid with spacing `2ε^{1/2m}`.
    EvenPowerLattice { degree: u32, eps: f64 },
    /// `∓ξᵀx` with `ξ = (ε/n, …, ε/n)` on `domain`.
    MomentPair { domain: Domain, eps: f64 },
    /// Thresholds on `[0,1]` centered on a grid with spacing `2ε`.
    ThresholdLattice { eps: f64 },
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(out_of_range(format!("{name} = {v}"), format!("{name} > 0")))
    }
}

fn check_r(r: f64) -> Result<()> {
    if r >= 1.0 && r.is_finite() {
        Ok(())
    } else {
        Err(out_of_range(format!("r = {r}"), "r ≥ 1"))
    }
}

pub fn build_ensemble(spec: &EnsembleSpec) -> Result<InstanceEnsemble> {
    match spec {
        EnsembleSpec::LipschitzVg { domain, eps, r, seed } => {
            positive("ε", *eps)?;
            check_r(*r)?;
            let n = domain.dim() as f64;
            let s = domain.inscribed_scale();
            let admissible = (s * (n / 8.0).sqrt()).powf(*r);
            if *eps > admissible {
                return Err(out_of_range(
                    format!("ε = {eps}"),
                    format!("ε ≤ (s_X√(n/8))^r = {admissible}"),
                ));
            }
            let code = vg_packing(domain.dim(), *seed)?;
            let e = eps.powf(1.0 / r);
            let scale = (e / s) * (8.0 / n).sqrt();
            let instances = code
                .points
                .iter()
                .map(|xi| {
                    let c = xi.iter().zip(&domain.center).map(|(v, c0)| c0 + s * v).collect();
                    Instance::norm_distance(domain, scale, c)
                })
                .collect::<Result<Vec<_>>>()?;
            InstanceEnsemble::new(instances, Some(2.0 * e), Some(0.0))
        }
        EnsembleSpec::StronglyConvexVg { domain, eps, r, seed } => {
            positive("ε", *eps)?;
            check_r(*r)?;
            let n = domain.dim() as f64;
            let s = domain.inscribed_scale();
            let admissible = (n * s * s / 16.0).powf(*r);
            if *eps > admissible * (1.0 + 1e-12) {
                return Err(out_of_range(
                    format!("ε = {eps}"),
                    format!("ε ≤ (n·s_X²/16)^r = {admissible}"),
                ));
            }
            let code = vg_packing(domain.dim(), *seed)?;
            let e = eps.powf(1.0 / r);
            let a = (16.0 * e / n).sqrt();
            let instances = code
                .points
                .iter()
                .map(|xi| {
                    let c = xi.iter().zip(&domain.center).map(|(v, c0)| c0 + a * v).collect();
                    Instance::quadratic(domain, c)
                })
                .collect::<Result<Vec<_>>>()?;
            InstanceEnsemble::new(instances, Some(2.0 * e), Some(0.0))
        }
        EnsembleSpec::QuadraticPair { eps } => {
            positive("ε", *eps)?;
            let d = Domain::interval(0.0, 1.0)?;
            let (c0, c1) = if *eps < 0.125 {
                let h = (2.0 * eps).sqrt();
                (0.5 - h, 0.5 + h)
            } else {
                (0.0, 1.0)
            };
            let pair = vec![Instance::quadratic(&d, vec![c0])?, Instance::quadratic(&d, vec![c1])?];
            let sep = 0.25 * (c1 - c0) * (c1 - c0);
            InstanceEnsemble::new(pair, Some(sep), Some(0.0))
        }
        EnsembleSpec::NormDistancePair { eps } => {
            positive("ε", *eps)?;
            if *eps > 0.5 {
                return Err(out_of_range(format!("ε = {eps}"), "ε ≤ 1/2"));
            }
            let d = Domain::interval(0.0, 1.0)?;
            let pair = vec![
                Instance::norm_distance(&d, 1.0, vec![0.5 - eps])?,
                Instance::norm_distance(&d, 1.0, vec![0.5 + eps])?,
            ];
            InstanceEnsemble::new(pair, Some(2.0 * eps), Some(0.0))
        }
        EnsembleSpec::QuadraticLattice { domain, eps, r } => {
            positive("ε", *eps)?;
            check_r(*r)?;
            let e = eps.powf(1.0 / r);
            let packing = lattice_packing(domain, 2.0 * (2.0 * e).sqrt())?;
            let instances = packing
                .points
                .into_iter()
                .map(|c| Instance::quadratic(domain, c))
                .collect::<Result<Vec<_>>>()?;
            InstanceEnsemble::new(instances, Some(2.0 * e), Some(0.0))
        }
        EnsembleSpec::EvenPowerPair { degree, eps } => {
            positive("ε", *eps)?;
            if *eps > 1.0 {
                return Err(out_of_range(format!("ε = {eps}"), "ε ≤ 1"));
            }
            let d = Domain::interval(-1.0, 1.0)?;
            let h = eps.powf(1.0 / (2.0 * *degree as f64));
            let pair = vec![
                Instance::even_power(&d, *degree, h)?,
                Instance::even_power(&d, *degree, -h)?,
            ];
            InstanceEnsemble::new(pair, Some(2.0 * eps.sqrt()), Some(0.0))
        }
        EnsembleSpec::EvenPowerLattice { degree, eps } => {
            positive("ε", *eps)?;
            let d = Domain::interval(-1.0, 1.0)?;
            let sep = 2.0 * eps.powf(1.0 / (2.0 * *degree as f64));
            let packing = lattice_packing(&d, sep)?;
            let instances = packing
                .points
                .into_iter()
                .map(|c| Instance::even_power(&d, *degree, c[0]))
                .collect::<Result<Vec<_>>>()?;
            InstanceEnsemble::new(instances, Some(2.0 * eps.sqrt()), Some(0.0))
        }
        EnsembleSpec::MomentPair { domain, eps } => {
            positive("ε", *eps)?;
            let n = domain.dim();
            let xi = vec![eps / n as f64; n];
            let pair = vec![
                Instance::linear(domain, xi.clone(), -1.0)?,
                Instance::linear(domain, xi, 1.0)?,
            ];
            InstanceEnsemble::new(pair, None, None)
        }
        EnsembleSpec::ThresholdLattice { eps } => {
            positive("ε", *eps)?;
            let d = Domain::interval(0.0, 1.0)?;
            let packing = lattice_packing(&d, 2.0 * eps)?;
            let instances = packing
                .points
                .into_iter()
                .map(|c| Instance::threshold(&d, c[0]))
                .collect::<Result<Vec<_>>>()?;
            InstanceEnsemble::new(instances, Some(2.0 * eps), Some(0.0))
        }
    }
}

/// Checks the exclusion property at the given points: wherever some `f_i`
/// has excess below `level`, every other instance has excess above it.
pub fn exclusion_holds(ensemble: &InstanceEnsemble, points: &[Vec<f64>], level: f64) -> bool {
    points.iter().all(|x| {
        let ex: Vec<f64> = ensemble.instances.iter().map(|f| f.excess_unchecked(x)).collect();
        ex.iter()
            .enumerate()
            .all(|(i, &ei)| ei >= level || ex.iter().enumerate().all(|(j, &ej)| j == i || ej > level))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Domain {
        Domain::interval(0.0, 1.0).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let q = Instance::quadratic(&unit(), vec![0.3]).unwrap();
        assert_eq!(q.evaluate(&[0.3]).unwrap(), 0.0);
        let t = Instance::threshold(&unit(), 0.5).unwrap();
        assert!((t.evaluate(&[0.2]).unwrap() - 0.3).abs() < 1e-15);
        let e = Instance::even_power(&Domain::interval(-1.0, 1.0).unwrap(), 4, -0.5).unwrap();
        assert_eq!(e.evaluate(&[0.5]).unwrap(), 1.0);
        assert!(q.evaluate(&[1.5]).is_err());
    }

    #[test]
    fn subgradient_examples() {
        let q = Instance::quadratic(&unit(), vec![0.3]).unwrap();
        assert!((q.subgradient(&[0.7]).unwrap()[0] - 0.4).abs() < 1e-15);
        let ball = Domain::ball(2, 1.0).unwrap();
        let nd = Instance::norm_distance(&ball, 1.0, vec![0.0, 0.0]).unwrap();
        let g = nd.subgradient(&[0.6, 0.8]).unwrap();
        assert!((g[0] - 0.6).abs() < 1e-15 && (g[1] - 0.8).abs() < 1e-15);
        let t = Instance::threshold(&unit(), 0.5).unwrap();
        assert_eq!(t.subgradient(&[0.5]).unwrap(), vec![0.0]);
    }

    #[test]
    fn linear_minimum_at_corner() {
        let d = Domain::cube(3, 2.0).unwrap();
        let f = Instance::linear(&d, vec![1.0, -2.0, 0.5], 1.0).unwrap();
        assert_eq!(f.minimum(), -2.0 * 3.5);
        assert_eq!(f.minimizer(), vec![-2.0, 2.0, -2.0]);
        assert!((f.evaluate(&f.minimizer()).unwrap() - f.minimum()).abs() < 1e-12);
    }

    #[test]
    fn quadratic_separation_matches_grid_minimization() {
        let a = Instance::quadratic(&unit(), vec![0.3]).unwrap();
        let b = Instance::quadratic(&unit(), vec![0.7]).unwrap();
        let closed = separation(&a, &b).unwrap();
        assert!((closed - 0.04).abs() < 1e-15);
        let reference = separation_on_grid(&a, &b, 10_001).unwrap();
        assert!((closed - reference).abs() < 1e-9);
    }

    #[test]
    fn even_power_separation() {
        let d = Domain::interval(-1.0, 1.0).unwrap();
        let a = Instance::even_power(&d, 2, -0.5).unwrap();
        let b = Instance::even_power(&d, 2, 0.5).unwrap();
        assert_eq!(separation(&a, &b).unwrap(), 0.5);
        assert_eq!(separation(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn mismatched_families_rejected() {
        let a = Instance::quadratic(&unit(), vec![0.3]).unwrap();
        let b = Instance::threshold(&unit(), 0.3).unwrap();
        assert!(matches!(separation(&a, &b), Err(Error::IncompatibleInstances(_))));
    }

    #[test]
    fn pair_centers() {
        let e = build_ensemble(&EnsembleSpec::QuadraticPair { eps: 0.02 }).unwrap();
        let c: Vec<f64> = e.instances.iter().map(|f| f.scalar_center().unwrap()).collect();
        assert!((c[0] - 0.3).abs() < 1e-15 && (c[1] - 0.7).abs() < 1e-15);
        assert!((e.separation.unwrap() - 0.04).abs() < 1e-15);
    }

    #[test]
    fn even_power_pair_separation() {
        let e = build_ensemble(&EnsembleSpec::EvenPowerPair { degree: 2, eps: 0.04 }).unwrap();
        let c = e.instances[0].scalar_center().unwrap();
        assert!((c - 0.04f64.powf(0.25)).abs() < 1e-15);
        assert!((e.min_pairwise_separation().unwrap() - 0.4).abs() < 1e-12);
    }

    #[test]
    fn lipschitz_precondition_reports_bound() {
        let d = Domain::cube(16, 1.0).unwrap();
        let err = build_ensemble(&EnsembleSpec::LipschitzVg {
            domain: d,
            eps: 2.0,
            r: 1.0,
            seed: 1,
        })
        .unwrap_err();
        match err {
            Error::ParameterOutOfRange { bound, .. } => assert!(bound.contains("1.414")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn single_instance_rejected() {
        let q = Instance::quadratic(&unit(), vec![0.3]).unwrap();
        assert!(InstanceEnsemble::new(vec![q], None, None).is_err());
    }

    #[test]
    fn moment_pair_has_no_certified_separation() {
        let d = Domain::cube(4, 1.0).unwrap();
        let e = build_ensemble(&EnsembleSpec::MomentPair { domain: d, eps: 0.1 }).unwrap();
        assert!(e.separation.is_none() && e.common_min.is_none());
        assert_eq!(e.instances[0].minimum(), e.instances[1].minimum());
    }
}
