//! Sequential algorithms and the recorded interaction protocol.
//!
//! Every algorithm is a state machine that sees only oracle responses. Under
//! weak infinite-step semantics the candidate after `t` queries is the next
//! query `X_{t+1}`; grid search is the one exception and reports its best
//! grid point instead.

use rand::Rng;

use crate::error::{out_of_range, Error, Result};
use crate::geometry::Domain;
use crate::instances::{Instance, InstanceEnsemble};
use crate::oracles::{OracleModel, OracleResponse};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepRule {
    /// `a/t`
    Harmonic { a: f64 },
    /// `a/√t`
    InvSqrt { a: f64 },
    /// `(D_X/√T)/√t`, tied to the horizon `T`.
    InvSqrtHorizon,
}

/// Epoch-based majority-vote search for a one-dimensional threshold.
///
/// Epoch `j` repeats `L_j = ⌈k·ln(1/ε_target)·(s_0/s_j)^{2(κ−1)}⌉` queries at
/// the current point `x`, then moves `x` by the step `s_j` against the
/// majority label and shrinks the step to `s_{j+1} = ρ·s_j`. With `ρ = 1/2`
/// and `κ = 1` this is plain interval halving with constant epochs. Larger `ρ`
/// lets later epochs undo a wrong vote, and the growing epochs match the
/// vote budget to the flatter label noise near the threshold when `κ > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActiveBisection {
    pub k: f64,
    pub eps_target: f64,
    pub contraction: f64,
    pub kappa: f64,
}

impl Default for ActiveBisection {
    fn default() -> Self {
        ActiveBisection {
            k: 8.0,
            eps_target: 1e-3,
            contraction: 0.5,
            kappa: 1.0,
        }
    }
}

impl ActiveBisection {
    fn base_len(&self) -> f64 {
        self.k * (1.0 / self.eps_target).ln()
    }

    fn epoch_len(&self, ratio: f64) -> usize {
        let len = (self.base_len() * ratio.powf(2.0 * (self.kappa - 1.0))).ceil();
        if len.is_finite() && len < 1e15 {
            len.max(1.0) as usize
        } else {
            usize::MAX / 2
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Algorithm {
    ProjectedSgd {
        step: StepRule,
        x1: Vec<f64>,
    },
    /// Interval halving on the sign of the (sub)gradient; `n = 1`.
    Bisection,
    /// Round-robin over `points` equally spaced values; `n = 1`, needs values.
    GridSearch {
        points: usize,
    },
    ActiveBisection(ActiveBisection),
}

#[derive(Debug, Clone)]
enum State {
    Sgd {
        x: Vec<f64>,
        t: u64,
        step: StepRule,
        a: f64,
    },
    Bisection {
        lo: f64,
        hi: f64,
    },
    Grid {
        grid: Vec<f64>,
        sums: Vec<f64>,
        counts: Vec<u64>,
        t: usize,
    },
    Active(ActiveState),
}

#[derive(Debug, Clone)]
struct ActiveState {
    params: ActiveBisection,
    lo: f64,
    hi: f64,
    x: f64,
    s: f64,
    s0: f64,
    votes: i64,
    remaining: usize,
}

/// A running algorithm.
#[derive(Debug, Clone)]
pub struct Policy {
    domain: Domain,
    state: State,
    query: Vec<f64>,
}

fn scalar_domain(domain: &Domain, what: &str) -> Result<(f64, f64)> {
    if domain.dim() != 1 {
        return Err(Error::Unsupported(format!("{what} needs a one-dimensional domain")));
    }
    Ok(domain.axis_bounds(0))
}

/// Gradient part of a response; `x − y` for raw location samples and the
/// label itself for label responses.
fn gradient_estimate(x: &[f64], y: &OracleResponse) -> Vec<f64> {
    match y {
        OracleResponse::FirstOrder { grad, .. } | OracleResponse::GradOnly { grad } => grad.clone(),
        OracleResponse::Raw(v) => x.iter().zip(v).map(|(a, b)| a - b).collect(),
        OracleResponse::Label(l) => vec![*l as f64],
    }
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::ProjectedSgd { .. } => "sgd",
            Algorithm::Bisection => "bisection",
            Algorithm::GridSearch { .. } => "grid_search",
            Algorithm::ActiveBisection(_) => "active_bisection",
        }
    }

    /// Whether the query sequence is independent of the horizon, so that one
    /// run of length `T` yields the candidates of every shorter run.
    pub fn is_anytime(&self) -> bool {
        !matches!(
            self,
            Algorithm::GridSearch { .. }
                | Algorithm::ProjectedSgd {
                    step: StepRule::InvSqrtHorizon,
                    ..
                }
        )
    }

    pub fn start(&self, domain: &Domain, horizon: usize) -> Result<Policy> {
        let (state, query) = match self {
            Algorithm::ProjectedSgd { step, x1 } => {
                domain.check(x1)?;
                let a = match *step {
                    StepRule::Harmonic { a } | StepRule::InvSqrt { a } => a,
                    StepRule::InvSqrtHorizon => domain.diameter() / (horizon.max(1) as f64).sqrt(),
                };
                if !(a > 0.0 && a.is_finite()) {
                    return Err(out_of_range(format!("step constant a = {a}"), "a > 0"));
                }
                (
                    State::Sgd {
                        x: x1.clone(),
                        t: 1,
                        step: *step,
                        a,
                    },
                    x1.clone(),
                )
            }
            Algorithm::Bisection => {
                let (lo, hi) = scalar_domain(domain, "bisection")?;
                (State::Bisection { lo, hi }, vec![0.5 * (lo + hi)])
            }
            Algorithm::GridSearch { points } => {
                let (lo, hi) = scalar_domain(domain, "grid search")?;
                if *points < 2 {
                    return Err(out_of_range(format!("grid points = {points}"), "≥ 2"));
                }
                let grid: Vec<f64> = crate::instances::grid(lo, hi, *points).collect();
                let q = vec![grid[0]];
                (
                    State::Grid {
                        sums: vec![0.0; grid.len()],
                        counts: vec![0; grid.len()],
                        grid,
                        t: 0,
                    },
                    q,
                )
            }
            Algorithm::ActiveBisection(p) => {
                let (lo, hi) = scalar_domain(domain, "active bisection")?;
                if !(p.k > 0.0 && p.eps_target > 0.0 && p.eps_target < 1.0) {
                    return Err(out_of_range("active bisection k, ε_target", "k > 0, 0 < ε_target < 1"));
                }
                if !(p.contraction >= 0.5 && p.contraction < 1.0) {
                    return Err(out_of_range(
                        format!("contraction ρ = {}", p.contraction),
                        "1/2 ≤ ρ < 1",
                    ));
                }
                if !(p.kappa >= 1.0) {
                    return Err(out_of_range(format!("κ = {}", p.kappa), "κ ≥ 1"));
                }
                let x = 0.5 * (lo + hi);
                let s0 = 0.25 * (hi - lo);
                let st = ActiveState {
                    params: *p,
                    lo,
                    hi,
                    x,
                    s: s0,
                    s0,
                    votes: 0,
                    remaining: p.epoch_len(1.0),
                };
                (State::Active(st), vec![x])
            }
        };
        Ok(Policy {
            domain: domain.clone(),
            state,
            query,
        })
    }
}

impl Policy {
    /// The next query point.
    pub fn query(&self) -> &[f64] {
        &self.query
    }

    /// Feeds the response to the current query and advances.
    pub fn observe(&mut self, y: &OracleResponse) -> Result<()> {
        let x = &self.query;
        match &mut self.state {
            State::Sgd { x: cur, t, step, a } => {
                let g = gradient_estimate(x, y);
                if g.len() != cur.len() {
                    return Err(Error::Unsupported("response dimension mismatch".into()));
                }
                let tf = *t as f64;
                let eta = match step {
                    StepRule::Harmonic { .. } => *a / tf,
                    StepRule::InvSqrt { .. } | StepRule::InvSqrtHorizon => *a / tf.sqrt(),
                };
                let moved: Vec<f64> = cur.iter().zip(&g).map(|(xi, gi)| xi - eta * gi).collect();
                *cur = self.domain.project(&moved);
                *t += 1;
                self.query = cur.clone();
            }
            State::Bisection { lo, hi } => {
                let g = gradient_estimate(x, y)[0];
                let mid = 0.5 * (*lo + *hi);
                if g > 0.0 {
                    *hi = mid;
                } else if g < 0.0 {
                    *lo = mid;
                } else {
                    *lo = mid;
                    *hi = mid;
                }
                self.query = vec![0.5 * (*lo + *hi)];
            }
            State::Grid { grid, sums, counts, t } => {
                let value = match y {
                    OracleResponse::FirstOrder { value, .. } => *value,
                    _ => return Err(Error::Unsupported("grid search needs function values".into())),
                };
                let i = *t % grid.len();
                sums[i] += value;
                counts[i] += 1;
                *t += 1;
                self.query = vec![grid[*t % grid.len()]];
            }
            State::Active(st) => {
                let g = gradient_estimate(x, y)[0];
                st.votes += if g > 0.0 {
                    1
                } else if g < 0.0 {
                    -1
                } else {
                    0
                };
                st.remaining -= 1;
                if st.remaining == 0 {
                    if st.votes > 0 {
                        st.x -= st.s;
                    } else if st.votes < 0 {
                        st.x += st.s;
                    }
                    st.x = st.x.clamp(st.lo, st.hi);
                    st.s *= st.params.contraction;
                    st.votes = 0;
                    st.remaining = st.params.epoch_len(st.s0 / st.s);
                }
                self.query = vec![st.x];
            }
        }
        Ok(())
    }

    /// The algorithm's current answer: the next query, except for grid
    /// search, which answers with its best-average grid point.
    pub fn candidate(&self) -> Vec<f64> {
        match &self.state {
            State::Grid { grid, sums, counts, .. } => {
                let mut best = 0;
                let mut best_avg = f64::INFINITY;
                for i in 0..grid.len() {
                    if counts[i] > 0 {
                        let avg = sums[i] / counts[i] as f64;
                        if avg < best_avg {
                            best_avg = avg;
                            best = i;
                        }
                    }
                }
                vec![grid[best]]
            }
            _ => self.query.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transcript {
    pub queries: Vec<Vec<f64>>,
    pub responses: Vec<OracleResponse>,
    /// `X_{T+1}`.
    pub final_point: Vec<f64>,
    /// `err_trace[i]` is the excess value of `X_{i+1}` for `i < T`, and
    /// `err_trace[T]` is that of the final point.
    pub err_trace: Vec<f64>,
    pub div_trace: Option<Vec<f64>>,
}

/// Drives the protocol for `horizon` steps, calling `visit(t, X_t)` for each
/// query `t = 1..=T` and `visit(T+1, final)` at the end.
pub fn drive<R: Rng + ?Sized>(
    alg: &Algorithm,
    oracle: &OracleModel,
    inst: &Instance,
    horizon: usize,
    rng: &mut R,
    mut visit: impl FnMut(usize, &[f64], Option<&OracleResponse>),
) -> Result<Vec<f64>> {
    if horizon < 1 {
        return Err(out_of_range("horizon T = 0", "T ≥ 1"));
    }
    let mut policy = alg.start(&inst.domain, horizon)?;
    for t in 1..=horizon {
        let y = oracle.sample(inst, policy.query(), rng)?;
        visit(t, policy.query(), Some(&y));
        policy.observe(&y)?;
    }
    let last = policy.candidate();
    visit(horizon + 1, &last, None);
    Ok(last)
}

pub fn run<R: Rng + ?Sized>(
    alg: &Algorithm,
    oracle: &OracleModel,
    inst: &Instance,
    horizon: usize,
    rng: &mut R,
) -> Result<Transcript> {
    let mut queries = Vec::with_capacity(horizon);
    let mut responses = Vec::with_capacity(horizon);
    let mut err_trace = Vec::with_capacity(horizon + 1);
    let final_point = drive(alg, oracle, inst, horizon, rng, |_, x, y| {
        err_trace.push(inst.excess_unchecked(x));
        if let Some(y) = y {
            queries.push(x.to_vec());
            responses.push(y.clone());
        }
    })?;
    Ok(Transcript {
        queries,
        responses,
        final_point,
        err_trace,
        div_trace: None,
    })
}

/// Re-runs the algorithm on the recorded responses and reports whether it
/// reproduces the recorded queries and final point bit-exactly.
pub fn replay(alg: &Algorithm, domain: &Domain, transcript: &Transcript) -> Result<bool> {
    let mut policy = alg.start(domain, transcript.queries.len())?;
    for (x, y) in transcript.queries.iter().zip(&transcript.responses) {
        if !bit_equal(policy.query(), x) {
            return Ok(false);
        }
        policy.observe(y)?;
    }
    Ok(bit_equal(&policy.candidate(), &transcript.final_point))
}

fn bit_equal(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
}

/// Index of the instance with the smallest excess at `point`, ties to the
/// lowest index. Excesses within a few ulps of each other count as ties, so
/// a point equidistant from two centers resolves the same way regardless of
/// rounding in the centers.
pub fn canonical_estimate(ensemble: &InstanceEnsemble, point: &[f64]) -> usize {
    let mut best = 0;
    let mut best_err = f64::INFINITY;
    for (i, f) in ensemble.instances.iter().enumerate() {
        let e = f.excess_unchecked(point);
        if i == 0 || e < best_err - 8.0 * f64::EPSILON * best_err {
            best_err = e;
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{build_ensemble, EnsembleSpec};
    use crate::seed::stream;

    fn unit() -> Domain {
        Domain::interval(0.0, 1.0).unwrap()
    }

    #[test]
    fn noiseless_bisection_halves() {
        let f = Instance::threshold(&unit(), 0.5).unwrap();
        // midpoint query hits the kink at once; use an off-center threshold as well
        for theta in [0.5, 0.123_456] {
            let f = Instance::threshold(&f.domain, theta).unwrap();
            let tr = run(
                &Algorithm::Bisection,
                &OracleModel::NoiselessFirstOrder,
                &f,
                20,
                &mut stream(&[0]),
            )
            .unwrap();
            assert!((tr.final_point[0] - theta).abs() <= 2f64.powi(-20));
        }
    }

    #[test]
    fn sgd_one_step_lands_on_minimizer() {
        let f = Instance::quadratic(&unit(), vec![0.3]).unwrap();
        let alg = Algorithm::ProjectedSgd {
            step: StepRule::Harmonic { a: 1.0 },
            x1: vec![1.0],
        };
        let tr = run(&alg, &OracleModel::NoiselessFirstOrder, &f, 3, &mut stream(&[0])).unwrap();
        assert_eq!(tr.queries[0], vec![1.0]);
        for q in tr.queries.iter().skip(1).chain([&tr.final_point]) {
            assert!((q[0] - 0.3).abs() < 1e-15);
        }
        assert_eq!(tr.err_trace.len(), 4);
        assert!((tr.err_trace[0] - 0.245).abs() < 1e-15);
    }

    #[test]
    fn replay_reproduces_queries() {
        let f = Instance::quadratic(&unit(), vec![0.3]).unwrap();
        let alg = Algorithm::ProjectedSgd {
            step: StepRule::Harmonic { a: 1.0 },
            x1: vec![0.5],
        };
        let o = OracleModel::fog(1.0).unwrap();
        let tr = run(&alg, &o, &f, 50, &mut stream(&[9])).unwrap();
        assert!(replay(&alg, &f.domain, &tr).unwrap());
        let mut tampered = tr.clone();
        tampered.responses[3] = OracleResponse::FirstOrder {
            value: 0.0,
            grad: vec![-5.0],
        };
        assert!(!replay(&alg, &f.domain, &tampered).unwrap());
    }

    #[test]
    fn canonical_estimate_examples() {
        let e = build_ensemble(&EnsembleSpec::QuadraticPair { eps: 0.02 }).unwrap();
        assert_eq!(canonical_estimate(&e, &[0.4]), 0);
        assert_eq!(canonical_estimate(&e, &[0.7]), 1);
        assert_eq!(canonical_estimate(&e, &[0.3]), 0);
        assert_eq!(canonical_estimate(&e, &[0.5]), 0);
        let tie = InstanceEnsemble::new(
            vec![
                Instance::quadratic(&unit(), vec![0.25]).unwrap(),
                Instance::quadratic(&unit(), vec![0.75]).unwrap(),
            ],
            None,
            None,
        )
        .unwrap();
        assert_eq!(canonical_estimate(&tie, &[0.5]), 0);
    }

    #[test]
    fn grid_search_picks_best_average() {
        let f = Instance::quadratic(&unit(), vec![0.3]).unwrap();
        let alg = Algorithm::GridSearch { points: 11 };
        let tr = run(&alg, &OracleModel::NoiselessFirstOrder, &f, 22, &mut stream(&[0])).unwrap();
        assert!((tr.final_point[0] - 0.3).abs() < 1e-12);
        assert!(!alg.is_anytime());
        let sog = OracleModel::sog(1.0).unwrap();
        assert!(run(&alg, &sog, &f, 5, &mut stream(&[0])).is_err());
    }

    #[test]
    fn active_bisection_epochs() {
        let p = ActiveBisection {
            k: 2.0,
            eps_target: 0.01,
            contraction: 0.5,
            kappa: 2.0,
        };
        assert_eq!(p.epoch_len(1.0), 10);
        assert_eq!(p.epoch_len(2.0), 37);
        let flat = ActiveBisection { kappa: 1.0, ..p };
        assert_eq!(flat.epoch_len(1024.0), 10);
    }

    #[test]
    fn initial_point_outside_domain_rejected() {
        let alg = Algorithm::ProjectedSgd {
            step: StepRule::Harmonic { a: 1.0 },
            x1: vec![2.0],
        };
        assert!(alg.start(&unit(), 10).is_err());
    }
}
