//! Cross-checking suites that pit independent implementations against each
//! other: the closed-form optimal coefficient against a grid search, the
//! quadratic gain threshold against the direct rate condition and a
//! bisection, the analytic SINRs against the symbol simulator, and
//! quadrature against Monte Carlo.
//!
//! Each suite returns a machine-readable report; a check passes when its
//! observed figure stays within its limit. Suites are deterministic in the
//! seed.

use crate::closedform::{
    en_residual, g1_threshold, hx_star, rate_condition, sinr_bob, sinr_eve,
    CancellationCoefficient,
};
use crate::fading::{
    ergodic_secrecy_capacity_mc, ergodic_secrecy_capacity_quadrature, outage_probability_mc,
    outage_probability_quadrature, OutageTest, QuadratureConfig,
};
use crate::model::{ChannelState, FadingModel, SystemParams, TargetRate};
use crate::waveform::{bob_cancel, eve_cancel, run_phase1, run_phase2, SimConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// One comparison with its measured figure and the bound it must stay
/// under.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub observed: f64,
    pub limit: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.observed <= self.limit
    }
}

/// Outcome of one verification suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

/// The available verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Grid search around the closed-form optimal coefficient.
    CoefficientGrid,
    /// Direct rate condition vs. the quadratic gain threshold.
    ThresholdEquivalence,
    /// Symbol-simulator SINRs vs. the closed forms.
    WaveformSinr,
    /// Quadrature vs. Monte Carlo for outage and ergodic capacity.
    McVsQuadrature,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::CoefficientGrid,
        Suite::ThresholdEquivalence,
        Suite::WaveformSinr,
        Suite::McVsQuadrature,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::CoefficientGrid => "coefficient-grid",
            Suite::ThresholdEquivalence => "threshold-equivalence",
            Suite::WaveformSinr => "waveform-sinr",
            Suite::McVsQuadrature => "mc-vs-quadrature",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.iter().copied().find(|s| s.name() == name)
    }
}

/// Runs a suite at its standard size; `samples` overrides the dominant
/// count (scenarios, draws, symbols per run, or Monte Carlo samples).
pub fn run_suite(suite: Suite, seed: u64, samples: Option<u64>) -> SuiteReport {
    match suite {
        Suite::CoefficientGrid => {
            coefficient_grid(seed, samples.unwrap_or(1000) as usize, 100)
        }
        Suite::ThresholdEquivalence => threshold_equivalence(seed, samples.unwrap_or(1_000_000)),
        Suite::WaveformSinr => waveform_sinr(seed, 20, samples.unwrap_or(1_000_000) as usize),
        Suite::McVsQuadrature => mc_vs_quadrature(seed, 10, samples.unwrap_or(10_000_000)),
    }
}

fn random_params(rng: &mut ChaCha8Rng) -> SystemParams {
    SystemParams::new(
        rng.random_range(0.0..500.0),
        rng.random_range(0.0..500.0),
        rng.random_range(0.0..500.0),
        rng.random_range(0.1..2.0),
        rng.random_range(0.0..0.1),
    )
    .expect("ranges satisfy the parameter invariants")
}

fn random_channel(rng: &mut ChaCha8Rng) -> ChannelState {
    ChannelState::from_gains(
        rng.random_range(0.0..4.0),
        rng.random_range(0.0..4.0),
        rng.random_range(0.0..4.0),
        rng.random_range(-PI..PI),
        rng.random_range(-PI..PI),
        rng.random_range(-PI..PI),
    )
    .expect("ranges satisfy the channel invariants")
}

/// Checks that no coefficient on a square grid around the closed-form
/// optimum achieves a lower residual variance, across random scenarios.
pub fn coefficient_grid(seed: u64, scenarios: usize, grid_per_axis: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_gap = f64::INFINITY;
    for _ in 0..scenarios {
        let params = random_params(&mut rng);
        let ch = random_channel(&mut rng);
        let star = hx_star(&params, &ch);
        let at_star = en_residual(&params, &ch, &star);
        let span = star.magnitude().max(0.5);
        for i in 0..grid_per_axis {
            let dre = span * (2.0 * i as f64 / (grid_per_axis - 1) as f64 - 1.0);
            for j in 0..grid_per_axis {
                let dim = span * (2.0 * j as f64 / (grid_per_axis - 1) as f64 - 1.0);
                let cand = CancellationCoefficient::new(
                    star.value() + Complex64::new(dre, dim),
                );
                let gap = en_residual(&params, &ch, &cand) - at_star;
                if gap < min_gap {
                    min_gap = gap;
                }
            }
        }
    }
    SuiteReport {
        suite: Suite::CoefficientGrid.name(),
        checks: vec![CheckResult {
            name: format!(
                "worst grid-vs-closed-form residual gap over {scenarios} scenarios"
            ),
            observed: -min_gap,
            limit: 1e-9,
        }],
    }
}

/// Smallest g1 at which the direct rate condition first holds, by
/// bisection on [0, hi]; the condition is monotone in g1.
pub fn bisect_threshold(
    params: &SystemParams,
    g2: f64,
    g3: f64,
    rate: &TargetRate,
    hi: f64,
) -> f64 {
    let mut lo = 0.0;
    let mut hi = hi;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if rate_condition(params, mid, g2, g3, rate) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Checks the quadratic threshold against the direct condition on random
/// draws, and against a bisection on the worked reference scenario.
pub fn threshold_equivalence(seed: u64, draws: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disagreements = 0u64;
    for _ in 0..draws {
        let params = random_params(&mut rng);
        let g1 = rng.random_range(0.0..8.0);
        let g2 = rng.random_range(0.0..8.0);
        let g3 = rng.random_range(1e-3..8.0);
        let rate = TargetRate::new(rng.random_range(0.0..5.0)).expect("non-negative");
        let t = g1_threshold(&params, g2, g3, &rate).expect("g3 > 0");
        let band = 1e-9 * t.g1l.max(1.0);
        if t.g1l.is_finite() && (g1 - t.g1l).abs() <= band {
            continue;
        }
        if rate_condition(&params, g1, g2, g3, &rate) != (g1 >= t.g1l) {
            disagreements += 1;
        }
    }

    let params = SystemParams::new(200.0, 200.0, 200.0, 1.0, 1e-4).expect("valid");
    let rate = TargetRate::new(1.0).expect("valid");
    let closed = g1_threshold(&params, 0.7, 0.6, &rate).expect("g3 > 0").g1l;
    let bisected = bisect_threshold(&params, 0.7, 0.6, &rate, 10.0);

    SuiteReport {
        suite: Suite::ThresholdEquivalence.name(),
        checks: vec![
            CheckResult {
                name: format!("threshold/direct disagreements outside band over {draws} draws"),
                observed: disagreements as f64,
                limit: 0.0,
            },
            CheckResult {
                name: "bisection vs closed-form threshold on reference scenario".into(),
                observed: (bisected - closed).abs(),
                limit: 1e-6,
            },
        ],
    }
}

/// Runs the symbol simulator on random scenarios and compares empirical
/// SINRs (Bob after his cancellation, Eve under the optimal coefficient)
/// with the closed forms.
pub fn waveform_sinr(seed: u64, scenarios: usize, n_symbols: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_bob: f64 = 0.0;
    let mut worst_eve: f64 = 0.0;
    for _ in 0..scenarios {
        // Keep both links alive so relative SINR error is well-defined.
        let params = SystemParams::new(
            rng.random_range(50.0..500.0),
            rng.random_range(10.0..400.0),
            rng.random_range(10.0..400.0),
            rng.random_range(0.5..2.0),
            rng.random_range(0.0..0.01),
        )
        .expect("valid");
        let ch = ChannelState::from_gains(
            rng.random_range(0.05..3.0),
            rng.random_range(0.05..3.0),
            rng.random_range(0.05..3.0),
            rng.random_range(-PI..PI),
            rng.random_range(-PI..PI),
            rng.random_range(-PI..PI),
        )
        .expect("valid");
        let cfg = SimConfig::new(n_symbols, rng.random()).expect("n_symbols >= 1");
        let p1 = run_phase1(&params, &ch, &cfg);
        let p2 = run_phase2(&params, &ch, &p1, &cfg);

        let bob = bob_cancel(&ch, &params, &p1, &p2);
        let bob_rel = (bob.empirical_sinr / sinr_bob(&params, ch.g1()) - 1.0).abs();
        worst_bob = worst_bob.max(bob_rel);

        let eve = eve_cancel(&ch, &params, &p1, &p2, &hx_star(&params, &ch));
        let eve_rel =
            (eve.empirical_sinr / sinr_eve(&params, ch.g1(), ch.g2(), ch.g3()) - 1.0).abs();
        worst_eve = worst_eve.max(eve_rel);
    }
    SuiteReport {
        suite: Suite::WaveformSinr.name(),
        checks: vec![
            CheckResult {
                name: format!(
                    "bob empirical vs analytic sinr, worst of {scenarios} runs at {n_symbols} symbols"
                ),
                observed: worst_bob,
                limit: 0.02,
            },
            CheckResult {
                name: format!(
                    "eve empirical vs analytic sinr, worst of {scenarios} runs at {n_symbols} symbols"
                ),
                observed: worst_eve,
                limit: 0.02,
            },
        ],
    }
}

fn agreement_sigmas(quadrature: f64, mc_value: f64, mc_std_error: f64) -> f64 {
    let dist = (quadrature - mc_value).abs();
    if dist == 0.0 {
        0.0
    } else if mc_std_error > 0.0 {
        dist / mc_std_error
    } else {
        f64::INFINITY
    }
}

/// Compares quadrature and Monte Carlo for outage probability and ergodic
/// secrecy capacity on the default sweep operating point plus random
/// configurations.
pub fn mc_vs_quadrature(seed: u64, random_configs: usize, n: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = QuadratureConfig {
        rel_tol: 1e-6,
        ..QuadratureConfig::default()
    };
    let mut checks = Vec::new();
    let push =
        |checks: &mut Vec<CheckResult>,
         label: String,
         params: &SystemParams,
         fading: &FadingModel,
         rate: &TargetRate,
         seed: u64| {
            match outage_probability_quadrature(params, fading, rate, &cfg) {
                Ok(q) => {
                    let mc = outage_probability_mc(params, fading, rate, seed, n, OutageTest::Direct);
                    checks.push(CheckResult {
                        name: format!("outage quad-vs-mc sigmas, {label}"),
                        observed: agreement_sigmas(q, mc.value, mc.std_error),
                        limit: 3.0,
                    });
                }
                Err(_) => checks.push(CheckResult {
                    name: format!("outage quadrature convergence, {label}"),
                    observed: f64::INFINITY,
                    limit: 3.0,
                }),
            }
            match ergodic_secrecy_capacity_quadrature(params, fading, &cfg, false) {
                Ok(q) => {
                    let mc = ergodic_secrecy_capacity_mc(params, fading, seed ^ 0x9e37, n, false);
                    checks.push(CheckResult {
                        name: format!("ergodic quad-vs-mc sigmas, {label}"),
                        observed: agreement_sigmas(q, mc.value, mc.std_error),
                        limit: 3.0,
                    });
                }
                Err(_) => checks.push(CheckResult {
                    name: format!("ergodic quadrature convergence, {label}"),
                    observed: f64::INFINITY,
                    limit: 3.0,
                }),
            }
        };

    // Default operating point of the ergodic and outage sweeps.
    let defaults = SystemParams::new(400.0, 200.0, 200.0, 1.0, 1e-4).expect("valid");
    let unit = FadingModel::new(1.0, 1.0, 1.0).expect("valid");
    let rs1 = TargetRate::new(1.0).expect("valid");
    push(&mut checks, "default sweep point".into(), &defaults, &unit, &rs1, seed);

    for i in 0..random_configs {
        let params = SystemParams::new(
            rng.random_range(100.0..600.0),
            rng.random_range(50.0..400.0),
            rng.random_range(50.0..400.0),
            rng.random_range(0.5..2.0),
            rng.random_range(1e-4..1e-2),
        )
        .expect("valid");
        let fading = FadingModel::new(
            rng.random_range(0.5..2.0),
            rng.random_range(0.5..2.0),
            rng.random_range(0.5..2.0),
        )
        .expect("valid");
        let rate = TargetRate::new(rng.random_range(0.25..2.0)).expect("valid");
        let sub_seed = rng.random();
        push(
            &mut checks,
            format!("random config {}", i + 1),
            &params,
            &fading,
            &rate,
            sub_seed,
        );
    }

    SuiteReport {
        suite: Suite::McVsQuadrature.name(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("nope"), None);
    }

    #[test]
    fn coefficient_grid_small_run_passes() {
        let report = coefficient_grid(1, 50, 30);
        assert!(report.passed(), "{:?}", report.checks);
    }

    #[test]
    fn threshold_equivalence_small_run_passes() {
        let report = threshold_equivalence(2, 20_000);
        assert!(report.passed(), "{:?}", report.checks);
    }

    #[test]
    fn waveform_sinr_small_run_passes() {
        // Fewer symbols than the acceptance-grade run, wider sampling
        // error, still comfortably inside the 2% limit.
        let report = waveform_sinr(3, 4, 400_000);
        assert!(report.passed(), "{:?}", report.checks);
    }

    #[test]
    fn mc_vs_quadrature_small_run_passes() {
        let report = mc_vs_quadrature(4, 2, 500_000);
        assert!(report.passed(), "{:?}", report.checks);
        assert_eq!(report.checks.len(), 6);
    }

    #[test]
    fn bisection_is_monotone_consistent() {
        let params = SystemParams::new(200.0, 200.0, 200.0, 1.0, 1e-4).unwrap();
        let rate = TargetRate::new(1.0).unwrap();
        let t = bisect_threshold(&params, 0.7, 0.6, &rate, 10.0);
        assert!(rate_condition(&params, t * (1.0 + 1e-9), 0.7, 0.6, &rate));
        assert!(!rate_condition(&params, t * (1.0 - 1e-9), 0.7, 0.6, &rate));
    }
}
