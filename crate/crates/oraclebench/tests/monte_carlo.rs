use approx::assert_relative_eq;
use oraclebench::algorithms::{run, Algorithm, StepRule};
use oraclebench::geometry::Domain;
use oraclebench::harness::{
    diminishing_returns, estimate_complexity, hypothesis_test, Criterion, CriterionMode, ExperimentConfig, TraceWindow,
};
use oraclebench::infobounds::fano_lower;
use oraclebench::instances::{EnsembleSpec, Instance};
use oraclebench::oracles::{OracleModel, OracleResponse};
use oraclebench::seed::stream;

fn unit() -> Domain {
    Domain::interval(0.0, 1.0).unwrap()
}

fn sgd(a: f64, x1: f64) -> Algorithm {
    Algorithm::ProjectedSgd {
        step: StepRule::Harmonic { a },
        x1: vec![x1],
    }
}

fn pair_config(oracle: OracleModel, algorithm: Algorithm, horizons: Vec<usize>, trials: usize) -> ExperimentConfig {
    ExperimentConfig {
        ensemble: EnsembleSpec::QuadraticPair { eps: 0.02 },
        oracle,
        algorithm,
        horizons,
        trials,
        base_seed: 17,
        criterion: Criterion {
            eps: 0.01,
            delta: 0.1,
            r: 1.0,
            mode: CriterionMode::MeanError,
        },
    }
}

fn normal_logpdf(y: f64, mean: f64, sigma: f64) -> f64 {
    let z = (y - mean) / sigma;
    -0.5 * z * z - sigma.ln() - 0.5 * (2.0 * std::f64::consts::PI).ln()
}

#[test]
fn label_at_threshold_is_a_fair_coin() {
    let d = unit();
    let f = Instance::threshold(&d, 0.5).unwrap();
    let o = OracleModel::bernoulli_label(2.0, 0.2, 0.4).unwrap();
    assert_eq!(o.eta(&f, 0.5).unwrap(), 0.5);
    let mut rng = stream(&[2024]);
    let n = 100_000;
    let mut sum = 0i64;
    for _ in 0..n {
        match o.sample(&f, &[0.5], &mut rng).unwrap() {
            OracleResponse::Label(l) => sum += l as i64,
            other => panic!("unexpected {other:?}"),
        }
    }
    let mean = sum as f64 / n as f64;
    assert!(mean.abs() <= 3.0 * 10f64.powf(-2.5), "mean label {mean}");
}

#[test]
fn fog_kl_matches_log_likelihood_ratio() {
    let d = unit();
    let a = Instance::quadratic(&d, vec![0.3]).unwrap();
    let b = Instance::quadratic(&d, vec![0.7]).unwrap();
    let sigma = 1.0;
    let o = OracleModel::fog(sigma).unwrap();
    for x in [0.0, 0.25, 1.0] {
        let kl = o.response_kl(&a, &b, &[x]).unwrap();
        let (fa, ga) = (a.evaluate(&[x]).unwrap(), a.subgradient(&[x]).unwrap()[0]);
        let (fb, gb) = (b.evaluate(&[x]).unwrap(), b.subgradient(&[x]).unwrap()[0]);
        let mut rng = stream(&[5, x.to_bits()]);
        let n = 100_000;
        let mut llr = 0.0;
        for _ in 0..n {
            let OracleResponse::FirstOrder { value, grad } = o.sample(&a, &[x], &mut rng).unwrap() else {
                panic!("FOG returns value and gradient");
            };
            llr += normal_logpdf(value, fa, sigma) + normal_logpdf(grad[0], ga, sigma)
                - normal_logpdf(value, fb, sigma)
                - normal_logpdf(grad[0], gb, sigma);
        }
        assert_relative_eq!(llr / n as f64, kl, max_relative = 0.05);
    }
}

#[test]
fn identical_seeds_give_identical_streams() {
    let d = unit();
    let f = Instance::quadratic(&d, vec![0.3]).unwrap();
    for o in [
        OracleModel::fog(1.0).unwrap(),
        OracleModel::sog(0.5).unwrap(),
        OracleModel::stat_estimation(2.0).unwrap(),
    ] {
        let draw = |seed| {
            let mut rng = stream(&[seed]);
            (0..50)
                .map(|_| o.sample(&f, &[0.9], &mut rng).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(3), draw(3));
        assert_ne!(draw(3), draw(4));
    }
}

#[test]
fn noiseless_bisection_identifies_the_pair() {
    let cfg = pair_config(OracleModel::NoiselessFirstOrder, Algorithm::Bisection, vec![20], 30);
    let res = hypothesis_test(&cfg).unwrap();
    let row = &res.rows[0];
    assert_eq!(row.confusion, vec![vec![30, 0], vec![0, 30]]);
    assert_eq!(row.p_mismatch, 0.0);
    assert_relative_eq!(row.mi.plugin, std::f64::consts::LN_2, max_relative = 1e-12);
}

#[test]
fn one_very_noisy_step_carries_almost_nothing() {
    let cfg = pair_config(OracleModel::fog(10.0).unwrap(), sgd(1.0, 0.5), vec![1], 1000);
    let res = hypothesis_test(&cfg).unwrap();
    let row = &res.rows[0];
    // max-KL per step is 0.1/σ² = 0.001 nats
    assert_relative_eq!(row.ir_upper, 0.001, max_relative = 1e-12);
    assert!(row.mi_lo <= row.ir_upper);
    assert!(row.mi.plugin < 0.005, "{}", row.mi.plugin);
    assert!((row.p_mismatch - 0.5).abs() < 0.05, "{}", row.p_mismatch);
}

#[test]
fn result_invariants_and_sandwich() {
    let cfg = pair_config(
        OracleModel::fog(1.0).unwrap(),
        sgd(1.0, 0.5),
        vec![1, 3, 10, 30, 100],
        300,
    );
    let a = hypothesis_test(&cfg).unwrap();
    assert_eq!(a, hypothesis_test(&cfg).unwrap());
    for row in &a.rows {
        for (h, r) in row.confusion.iter().enumerate() {
            assert_eq!(r.iter().sum::<u64>(), cfg.trials as u64);
            assert!((0.0..=1.0).contains(&row.per_hypothesis_mismatch[h]));
        }
        let worst = row.per_hypothesis_mismatch.iter().cloned().fold(0.0, f64::max);
        assert!(worst >= row.p_mismatch);
        assert!((0.0..=1.0).contains(&row.p_err));
        if row.p_mismatch < 0.5 {
            assert!(fano_lower(2, row.p_mismatch).unwrap() <= row.mi_hi);
        }
        assert!(row.mi_lo <= row.ir_upper);
    }
}

#[test]
fn noiseless_sgd_needs_one_query() {
    let cfg = pair_config(OracleModel::NoiselessFirstOrder, sgd(1.0, 0.5), vec![1, 2, 5], 30);
    for est in estimate_complexity(&cfg, &[0.01, 1e-4, 1e-9]).unwrap() {
        assert_eq!(est.first_pass, Some(1));
        assert!(est.resolved);
    }
}

#[test]
fn complexity_estimates_are_monotone() {
    let cfg = pair_config(
        OracleModel::fog(1.0).unwrap(),
        sgd(1.0, 0.5),
        vec![1, 2, 4, 8, 16, 32, 64, 128, 256],
        200,
    );
    let targets = [0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 1e-6];
    let est = estimate_complexity(&cfg, &targets).unwrap();
    for w in est.windows(2) {
        let first = |e: &oraclebench::harness::ComplexityEstimate| e.first_pass.unwrap_or(usize::MAX);
        assert!(first(&w[1]) >= first(&w[0]), "{:?}", w);
    }
    let last = est.last().unwrap();
    assert!(!last.resolved);
    assert_eq!(last.first_pass, None);
    assert_eq!(last.last_fail, Some(256));
}

#[test]
fn mean_error_pass_implies_probability_pass() {
    // Markov: P(err ≥ ε/δ) ≤ δ whenever E err < ε
    let eps = 0.002;
    let delta = 0.2;
    let mut cfg = pair_config(
        OracleModel::fog(1.0).unwrap(),
        sgd(1.0, 0.5),
        vec![1, 10, 100, 1000],
        300,
    );
    let mean = estimate_complexity(&cfg, &[eps]).unwrap()[0]
        .first_pass
        .expect("resolved");
    cfg.criterion = Criterion {
        eps: eps / delta,
        delta,
        r: 1.0,
        mode: CriterionMode::Probability,
    };
    let prob = estimate_complexity(&cfg, &[eps / delta]).unwrap()[0]
        .first_pass
        .expect("resolved");
    assert!(
        prob <= mean,
        "probability criterion first passes at {prob}, mean at {mean}"
    );
}

#[test]
fn sgd_error_approaches_the_noise_floor() {
    let f = Instance::quadratic(&unit(), vec![0.3]).unwrap();
    let o = OracleModel::fog(1.0).unwrap();
    let t = 10_000;
    let mut sum = 0.0;
    let seeds = 200;
    for s in 0..seeds {
        let tr = run(&sgd(1.0, 1.0), &o, &f, t, &mut stream(&[77, s])).unwrap();
        sum += tr.err_trace[t];
    }
    let mean = sum / seeds as f64;
    let floor = 1.0 / (2.0 * t as f64);
    assert!((0.3 * floor..=3.0 * floor).contains(&mean), "{mean} vs {floor}");
}

#[test]
fn sgd_error_trace_is_monotone_in_expectation() {
    let cfg = pair_config(OracleModel::fog(1.0).unwrap(), sgd(1.0, 0.5), vec![10_000], 200);
    let rep = diminishing_returns(
        &cfg,
        TraceWindow {
            lo: 100,
            hi: 10_000,
            points: 12,
        },
    )
    .unwrap();
    for t in 11..rep.horizon {
        let slack = 2.0 * (rep.err_se[t - 1] + rep.err_se[t]);
        assert!(rep.err_mean[t] <= rep.err_mean[t - 1] + slack, "t = {}", t + 1);
    }
    assert!((rep.err_fit.slope + 1.0).abs() <= 0.15, "slope {}", rep.err_fit.slope);
}
