//! Convex domains (ℓ∞ boxes and Euclidean balls) and packing sets on them.
//!
//! One-dimensional intervals are boxes with an offset center, so `[0,1]` is
//! `BoxInf` with radius 1/2 centered at 1/2.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{out_of_range, Error, Result};
use crate::seed::derive_seed;

/// Slack used by membership checks so that projected points and grid
/// endpoints computed in floating point are accepted.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Largest dimension accepted by [`vg_packing`]. The target cardinality
/// grows like `2^{n/8}`, so `n = 96` already asks for 4097 sign vectors.
pub const VG_MAX_DIM: usize = 96;

const VG_DRAWS_PER_RESTART: usize = 1_000_000;
const VG_RESTARTS: u64 = 10;
const LATTICE_MAX_CANDIDATES: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainKind {
    BoxInf,
    Ball2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    pub kind: DomainKind,
    pub radius: f64,
    pub center: Vec<f64>,
}

impl Domain {
    fn new(kind: DomainKind, radius: f64, center: Vec<f64>) -> Result<Self> {
        if center.is_empty() {
            return Err(out_of_range("dimension n", "n ≥ 1"));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(out_of_range(format!("radius ρ = {radius}"), "ρ > 0"));
        }
        if center.iter().any(|c| !c.is_finite()) {
            return Err(out_of_range("center", "finite coordinates"));
        }
        Ok(Domain { kind, radius, center })
    }

    /// `ρ·B^n_∞` centered at the origin.
    pub fn cube(n: usize, radius: f64) -> Result<Self> {
        Self::new(DomainKind::BoxInf, radius, vec![0.0; n])
    }

    /// `ρ·B^n_2` centered at the origin.
    pub fn ball(n: usize, radius: f64) -> Result<Self> {
        Self::new(DomainKind::Ball2, radius, vec![0.0; n])
    }

    /// The interval `[a, b]` as a one-dimensional box.
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        if !(b > a) {
            return Err(out_of_range(format!("interval [{a}, {b}]"), "a < b"));
        }
        Self::new(DomainKind::BoxInf, (b - a) / 2.0, vec![(a + b) / 2.0])
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// ℓ2 diameter `D_X`.
    pub fn diameter(&self) -> f64 {
        match self.kind {
            DomainKind::BoxInf => 2.0 * self.radius * (self.dim() as f64).sqrt(),
            DomainKind::Ball2 => 2.0 * self.radius,
        }
    }

    /// Largest `s` with `center + s·B^n_∞ ⊆ X`.
    pub fn inscribed_scale(&self) -> f64 {
        match self.kind {
            DomainKind::BoxInf => self.radius,
            DomainKind::Ball2 => self.radius / (self.dim() as f64).sqrt(),
        }
    }

    /// Lower and upper ends of the bounding box along axis `k`.
    pub fn axis_bounds(&self, k: usize) -> (f64, f64) {
        (self.center[k] - self.radius, self.center[k] + self.radius)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        if x.len() != self.dim() || x.iter().any(|v| !v.is_finite()) {
            return false;
        }
        let tol = MEMBERSHIP_TOL * self.radius.max(1.0);
        match self.kind {
            DomainKind::BoxInf => x
                .iter()
                .zip(&self.center)
                .all(|(xi, ci)| (xi - ci).abs() <= self.radius + tol),
            DomainKind::Ball2 => dist2(x, &self.center).sqrt() <= self.radius + tol,
        }
    }

    pub fn check(&self, x: &[f64]) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::DomainViolation(format!("{x:?} ∉ {}", self.describe())))
        }
    }

    /// Euclidean projection: coordinate clamp for boxes, radial for balls.
    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        match self.kind {
            DomainKind::BoxInf => x
                .iter()
                .zip(&self.center)
                .map(|(xi, ci)| xi.clamp(ci - self.radius, ci + self.radius))
                .collect(),
            DomainKind::Ball2 => {
                let r = dist2(x, &self.center).sqrt();
                if r <= self.radius {
                    x.to_vec()
                } else {
                    let s = self.radius / r;
                    x.iter().zip(&self.center).map(|(xi, ci)| ci + s * (xi - ci)).collect()
                }
            }
        }
    }

    /// Uniform draw from the domain.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let n = self.dim();
        match self.kind {
            DomainKind::BoxInf => self
                .center
                .iter()
                .map(|c| c + self.radius * rng.random_range(-1.0..=1.0))
                .collect(),
            DomainKind::Ball2 => {
                let dir: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
                let norm = dir.iter().map(|d| d * d).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
                let r = self.radius * rng.random::<f64>().powf(1.0 / n as f64);
                dir.iter().zip(&self.center).map(|(d, c)| c + r * d / norm).collect()
            }
        }
    }

    /// Lebesgue volume.
    pub fn volume(&self) -> f64 {
        let n = self.dim() as i32;
        match self.kind {
            DomainKind::BoxInf => (2.0 * self.radius).powi(n),
            DomainKind::Ball2 => unit_ball_volume(self.dim()) * self.radius.powi(n),
        }
    }

    pub fn describe(&self) -> String {
        match (self.kind, self.dim()) {
            (DomainKind::BoxInf, 1) => {
                let (a, b) = self.axis_bounds(0);
                format!("[{a}, {b}]")
            }
            (DomainKind::BoxInf, n) => format!("BoxInf(ρ={}, n={n})", self.radius),
            (DomainKind::Ball2, n) => format!("Ball2(ρ={}, n={n})", self.radius),
        }
    }
}

/// Volume of the unit Euclidean ball, `π^{n/2}/Γ(n/2+1)`, via the exact
/// recurrence `v_n = (2π/n)·v_{n−2}`.
pub fn unit_ball_volume(n: usize) -> f64 {
    let mut v = if n.is_multiple_of(2) { 1.0 } else { 2.0 };
    let mut k = if n.is_multiple_of(2) { 2 } else { 3 };
    while k <= n {
        v *= 2.0 * std::f64::consts::PI / k as f64;
        k += 2;
    }
    v
}

pub(crate) fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub enum PackingMeta {
    VarshamovGilbert {
        seed: u64,
        restarts: u64,
        min_hamming: usize,
        target: usize,
    },
    Lattice {
        sep: f64,
        shifted: bool,
        /// Volume-counting estimate `vol(X)/(v_n·sep^n)` for a maximal packing.
        volume_bound: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PackingSet {
    pub points: Vec<Vec<f64>>,
    pub min_sq_dist: f64,
    pub meta: PackingMeta,
}

impl PackingSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn exhaustive_min_sq_dist(points: &[Vec<f64>]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            best = best.min(dist2(&points[i], &points[j]));
        }
    }
    best
}

/// Greedy random sign-vector code in `{−1,+1}^n` with pairwise Hamming
/// distance at least `⌈n/8⌉` and `⌈2^{n/8}⌉ + 1` codewords.
pub fn vg_packing(n: usize, rng_seed: u64) -> Result<PackingSet> {
    if n < 16 {
        return Err(out_of_range(format!("dimension n = {n}"), "n ≥ 16"));
    }
    if n > VG_MAX_DIM {
        return Err(out_of_range(format!("dimension n = {n}"), format!("n ≤ {VG_MAX_DIM}")));
    }
    let min_hamming = n.div_ceil(8);
    let target = 2f64.powf(n as f64 / 8.0).ceil() as usize + 1;
    let words = n.div_ceil(64);
    let tail_mask = if n.is_multiple_of(64) {
        u64::MAX
    } else {
        (1u64 << (n % 64)) - 1
    };

    for restart in 0..VG_RESTARTS {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(&[rng_seed, restart]));
        let mut kept: Vec<Vec<u64>> = Vec::with_capacity(target);
        let mut draws = 0;
        while kept.len() < target && draws < VG_DRAWS_PER_RESTART {
            draws += 1;
            let mut cand: Vec<u64> = (0..words).map(|_| rng.random()).collect();
            if let Some(last) = cand.last_mut() {
                *last &= tail_mask;
            }
            let far = kept.iter().all(|w| {
                w.iter()
                    .zip(&cand)
                    .map(|(a, b)| (a ^ b).count_ones() as usize)
                    .sum::<usize>()
                    >= min_hamming
            });
            if far {
                kept.push(cand);
            }
        }
        if kept.len() == target {
            let points: Vec<Vec<f64>> = kept
                .iter()
                .map(|w| {
                    (0..n)
                        .map(|k| if (w[k / 64] >> (k % 64)) & 1 == 1 { 1.0 } else { -1.0 })
                        .collect()
                })
                .collect();
            let min_sq_dist = exhaustive_min_sq_dist(&points);
            return Ok(PackingSet {
                points,
                min_sq_dist,
                meta: PackingMeta::VarshamovGilbert {
                    seed: rng_seed,
                    restarts: restart + 1,
                    min_hamming,
                    target,
                },
            });
        }
    }
    Err(Error::ConstructionFailure(format!(
        "no {target}-word code with Hamming distance {min_hamming} in dimension {n} after {VG_RESTARTS} restarts"
    )))
}

/// Axis-aligned grid packing with pairwise ℓ2 distance at least `sep`.
///
/// Boxes use a corner-anchored grid. Balls use the better of a centered grid
/// and one shifted by `sep/2` along the first axis.
pub fn lattice_packing(domain: &Domain, sep: f64) -> Result<PackingSet> {
    let diameter = domain.diameter();
    if !(sep > 0.0) {
        return Err(out_of_range(format!("sep = {sep}"), "sep > 0"));
    }
    if sep > diameter * (1.0 + 1e-12) {
        return Err(Error::SinglePoint { sep, diameter });
    }
    let n = domain.dim();
    let (points, shifted) = match domain.kind {
        DomainKind::BoxInf => {
            let per_axis = ((2.0 * domain.radius) / sep + 1e-9).floor() as usize + 1;
            if (per_axis as f64).powi(n as i32) > LATTICE_MAX_CANDIDATES as f64 {
                return Err(out_of_range(
                    format!("grid of {per_axis}^{n} points"),
                    format!("at most {LATTICE_MAX_CANDIDATES} points"),
                ));
            }
            let axes: Vec<Vec<f64>> = (0..n)
                .map(|k| {
                    let (a, _) = domain.axis_bounds(k);
                    (0..per_axis).map(|i| a + i as f64 * sep).collect()
                })
                .collect();
            (cartesian(&axes), false)
        }
        DomainKind::Ball2 => {
            let plain = ball_grid(domain, sep, false)?;
            let shifted = ball_grid(domain, sep, true)?;
            if shifted.len() > plain.len() {
                (shifted, true)
            } else {
                (plain, false)
            }
        }
    };
    if points.len() < 2 {
        return Err(Error::SinglePoint { sep, diameter });
    }
    let min_sq_dist = exhaustive_min_sq_dist(&points);
    let volume_bound = domain.volume() / (unit_ball_volume(n) * sep.powi(n as i32));
    Ok(PackingSet {
        points,
        min_sq_dist,
        meta: PackingMeta::Lattice {
            sep,
            shifted,
            volume_bound,
        },
    })
}

fn cartesian(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = vec![Vec::new()];
    for axis in axes {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for prefix in &out {
            for &v in axis {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn ball_grid(domain: &Domain, sep: f64, shift: bool) -> Result<Vec<Vec<f64>>> {
    let n = domain.dim();
    let m = (domain.radius / sep).floor() as i64 + 1;
    let side = (2 * m + 1) as f64;
    if side.powi(n as i32) > LATTICE_MAX_CANDIDATES as f64 {
        return Err(out_of_range(
            format!("ball grid with {}^{n} candidates", 2 * m + 1),
            format!("at most {LATTICE_MAX_CANDIDATES} candidates"),
        ));
    }
    let axes: Vec<Vec<f64>> = (0..n)
        .map(|k| {
            let off = if shift && k == 0 { 0.5 } else { 0.0 };
            (-m..=m).map(|i| domain.center[k] + (i as f64 + off) * sep).collect()
        })
        .collect();
    Ok(cartesian(&axes).into_iter().filter(|p| domain.contains(p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_constants() {
        let c = Domain::cube(16, 1.0).unwrap();
        assert_eq!(c.diameter(), 8.0);
        assert_eq!(c.inscribed_scale(), 1.0);
        let b = Domain::ball(4, 2.0).unwrap();
        assert_eq!(b.diameter(), 4.0);
        assert_eq!(b.inscribed_scale(), 1.0);
        let i = Domain::interval(0.0, 1.0).unwrap();
        assert_eq!(i.diameter(), 1.0);
        assert_eq!(i.axis_bounds(0), (0.0, 1.0));
    }

    #[test]
    fn rejects_degenerate_domains() {
        assert!(Domain::cube(0, 1.0).is_err());
        assert!(Domain::ball(2, 0.0).is_err());
        assert!(Domain::interval(1.0, 1.0).is_err());
    }

    #[test]
    fn ball_volume_matches_gamma_form() {
        // π^{n/2}/Γ(n/2+1) with Γ from statrs as the independent reference.
        for n in 1..=20 {
            let reference =
                std::f64::consts::PI.powf(n as f64 / 2.0) / statrs::function::gamma::gamma(n as f64 / 2.0 + 1.0);
            let got = unit_ball_volume(n);
            assert!((got / reference - 1.0).abs() < 1e-12, "n={n}: {got} vs {reference}");
        }
    }

    #[test]
    fn interval_lattice() {
        let d = Domain::interval(0.0, 1.0).unwrap();
        let p = lattice_packing(&d, 0.25).unwrap();
        assert_eq!(p.points, vec![vec![0.0], vec![0.25], vec![0.5], vec![0.75], vec![1.0]]);
        // 2ε-separated grid with ε = 0.1 has 6 ≥ 1/(2ε) points.
        let p = lattice_packing(&d, 0.2).unwrap();
        assert_eq!(p.len(), 6);
    }

    #[test]
    fn ball_lattice_at_full_diameter() {
        let d = Domain::ball(2, 1.0).unwrap();
        let p = lattice_packing(&d, 2.0).unwrap();
        assert!(p.len() >= 2);
        assert!(p.min_sq_dist >= 4.0 - 1e-12);
    }

    #[test]
    fn lattice_rejects_oversized_separation() {
        let d = Domain::interval(0.0, 1.0).unwrap();
        assert!(matches!(lattice_packing(&d, 1.5), Err(Error::SinglePoint { .. })));
    }

    #[test]
    fn vg_small_dimension() {
        let p = vg_packing(16, 3).unwrap();
        assert!(p.len() >= 5);
        assert!(p.min_sq_dist >= 8.0);
        assert!(vg_packing(15, 3).is_err());
        assert!(vg_packing(VG_MAX_DIM + 1, 3).is_err());
    }

    #[test]
    fn antipodal_sign_vectors() {
        let a = vec![1.0; 16];
        let b = vec![-1.0; 16];
        assert_eq!(dist2(&a, &b), 64.0);
    }
}
