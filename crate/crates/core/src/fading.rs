//! Rayleigh-fading statistics: gain sampling, secrecy outage probability,
//! and ergodic secrecy capacity, each by deterministic quadrature and by
//! Monte Carlo, plus the no-AN baseline estimators.
//!
//! Monte Carlo estimators of every kind draw the gain triples from the same
//! seeded kernel, so two estimators called with the same seed see the same
//! channel realizations. Proposed-vs-baseline comparisons rely on this
//! common-random-numbers pairing.

use crate::closedform::{baseline_no_an, g1_threshold, rate_condition, sinr_bob, sinr_eve};
use crate::model::{FadingModel, SystemParams, TargetRate};
use crate::quad::{converge_1d, converge_2d, GaussRule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;
use std::cell::Cell;
use thiserror::Error;

/// Numerical failure in a fading statistic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FadingError {
    /// Panel doubling hit the per-axis node budget before two successive
    /// estimates agreed.
    #[error("quadrature did not reach rel_tol within max_nodes_per_axis")]
    NonConvergence,
}

/// Monte Carlo point estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateWithError {
    pub value: f64,
    /// Sample standard deviation divided by sqrt(n_samples); 0 for n = 1.
    pub std_error: f64,
    pub n_samples: u64,
}

/// Settings for the semi-infinite quadratures.
///
/// Axes are truncated where the gain density tail mass drops below
/// `truncation_eps`; panels double until successive estimates agree to
/// `rel_tol`, up to `max_nodes_per_axis` nodes per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub truncation_eps: f64,
    pub max_nodes_per_axis: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-4,
            truncation_eps: 1e-12,
            max_nodes_per_axis: 512,
        }
    }
}

/// Which per-sample outage test the Monte Carlo estimator applies. The two
/// are algebraically equivalent; keeping both implemented lets the
/// verification suites check one against the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutageTest {
    /// Compare g1 to the closed-form threshold gain.
    Threshold,
    /// Evaluate the capacity-ratio condition directly from the SINRs.
    Direct,
}

const GAUSS_ORDER: usize = 16;

fn sigma_sq(fading: &FadingModel, channel: usize) -> f64 {
    match channel {
        1 => fading.sigma1_sq,
        2 => fading.sigma2_sq,
        3 => fading.sigma3_sq,
        _ => panic!("channel index must be 1, 2, or 3"),
    }
}

/// Density of the gain of channel `channel` (1, 2, or 3): exponential with
/// mean sigma_j^2. Zero below the support.
pub fn gain_pdf(fading: &FadingModel, channel: usize, g: f64) -> f64 {
    let s = sigma_sq(fading, channel);
    if g < 0.0 {
        0.0
    } else {
        (-g / s).exp() / s
    }
}

/// `n` independent gain triples (g1, g2, g3) from the fading model.
/// Deterministic in `seed`; each triple is drawn in channel order.
pub fn sample_gains(fading: &FadingModel, seed: u64, n: usize) -> Vec<(f64, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let e1: f64 = rng.sample(Exp1);
            let e2: f64 = rng.sample(Exp1);
            let e3: f64 = rng.sample(Exp1);
            (
                fading.sigma1_sq * e1,
                fading.sigma2_sq * e2,
                fading.sigma3_sq * e3,
            )
        })
        .collect()
}

/// Samples per Monte Carlo batch. Batches are fixed-size and seeded by
/// batch index, so results do not depend on the worker count.
const MC_BATCH: u64 = 1 << 16;

fn mc_estimate<F>(fading: &FadingModel, seed: u64, n: u64, f: F) -> EstimateWithError
where
    F: Fn(f64, f64, f64) -> f64 + Sync,
{
    assert!(n >= 1, "n_samples must be at least 1");
    let n_batches = n.div_ceil(MC_BATCH);
    let partials: Vec<(f64, f64)> = (0..n_batches)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let count = MC_BATCH.min(n - k * MC_BATCH);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..count {
                let e1: f64 = rng.sample(Exp1);
                let e2: f64 = rng.sample(Exp1);
                let e3: f64 = rng.sample(Exp1);
                let x = f(
                    fading.sigma1_sq * e1,
                    fading.sigma2_sq * e2,
                    fading.sigma3_sq * e3,
                );
                sum += x;
                sum_sq += x * x;
            }
            (sum, sum_sq)
        })
        .collect();
    // Sequential merge in batch order keeps the result bit-stable.
    let (sum, sum_sq) = partials
        .iter()
        .fold((0.0, 0.0), |(a, b), (s, q)| (a + s, b + q));
    let nf = n as f64;
    let value = sum / nf;
    let std_error = if n > 1 {
        (((sum_sq - nf * value * value) / (nf - 1.0)).max(0.0) / nf).sqrt()
    } else {
        0.0
    };
    EstimateWithError {
        value,
        std_error,
        n_samples: n,
    }
}

fn truncation_limit(sigma_sq: f64, cfg: &QuadratureConfig) -> f64 {
    sigma_sq * (1.0 / cfg.truncation_eps).ln()
}

/// Integration window for one gain axis, in log space. The discarded head
/// [0, sigma^2 eps] and tail beyond sigma^2 ln(1/eps) each hold at most
/// `truncation_eps` of the density mass.
///
/// The gain integrands have features at scales set by power ratios (for
/// example the Bob SINR knee near N0/P_s), orders of magnitude narrower
/// than the truncated axis. Substituting g = e^t makes those features
/// unit-width wherever they sit, so panel doubling converges on a node
/// budget that a linear axis would exhaust.
fn log_axis(sigma_sq: f64, cfg: &QuadratureConfig) -> (f64, f64) {
    let head = sigma_sq * cfg.truncation_eps;
    (head.ln(), truncation_limit(sigma_sq, cfg).ln())
}

/// Secrecy outage probability P(g1 < g1L(g2, g3)) by quadrature.
///
/// The g1 dimension is integrated analytically (the gain is exponential,
/// so achieving the threshold has probability e^{-g1L/sigma1^2}), leaving
/// a 2-D integral of the achievability probability; the outage value is
/// its complement, which keeps the P_s = 0 case exactly 1.
pub fn outage_probability_quadrature(
    params: &SystemParams,
    fading: &FadingModel,
    rate: &TargetRate,
    cfg: &QuadratureConfig,
) -> Result<f64, FadingError> {
    let rule = GaussRule::with_order(GAUSS_ORDER);
    let (t2_lo, t2_hi) = log_axis(fading.sigma2_sq, cfg);
    let (t3_lo, t3_hi) = log_axis(fading.sigma3_sq, cfg);
    let inv_s1 = 1.0 / fading.sigma1_sq;
    let mut f = |t2: f64, t3: f64| {
        let g2 = t2.exp();
        let g3 = t3.exp();
        let t = g1_threshold(params, g2, g3, rate)
            .expect("quadrature nodes are interior, so g3 > 0");
        // exp(-inf) = 0 covers the unreachable-rate branch.
        let reach = (-t.g1l * inv_s1).exp();
        // Trailing g2 g3 is the log-substitution Jacobian.
        gain_pdf(fading, 2, g2) * gain_pdf(fading, 3, g3) * reach * g2 * g3
    };
    let achievable = converge_2d(
        &rule,
        t2_lo,
        t2_hi,
        t3_lo,
        t3_hi,
        cfg.rel_tol,
        cfg.max_nodes_per_axis,
        &mut f,
    )
    .map_err(|_| FadingError::NonConvergence)?;
    Ok((1.0 - achievable).clamp(0.0, 1.0))
}

/// Secrecy outage probability by Monte Carlo: the fraction of sampled
/// triples that cannot support the target rate.
pub fn outage_probability_mc(
    params: &SystemParams,
    fading: &FadingModel,
    rate: &TargetRate,
    seed: u64,
    n: u64,
    test: OutageTest,
) -> EstimateWithError {
    mc_estimate(fading, seed, n, |g1, g2, g3| {
        let achieved = match test {
            OutageTest::Threshold => match g1_threshold(params, g2, g3, rate) {
                Ok(t) => g1 >= t.g1l,
                // g3 can only be 0 by underflow; the direct test still works.
                Err(_) => rate_condition(params, g1, g2, g3, rate),
            },
            OutageTest::Direct => rate_condition(params, g1, g2, g3, rate),
        };
        if achieved {
            0.0
        } else {
            1.0
        }
    })
}

/// Ergodic secrecy capacity by nested quadrature.
///
/// For each (g2, g3) the g1 integral runs from the zero-rate threshold
/// (below it the clamped capacity is identically zero) to the truncation
/// limit; `half_time` halves the result to account for the AN phase.
pub fn ergodic_secrecy_capacity_quadrature(
    params: &SystemParams,
    fading: &FadingModel,
    cfg: &QuadratureConfig,
    half_time: bool,
) -> Result<f64, FadingError> {
    let rule = GaussRule::with_order(GAUSS_ORDER);
    let (t1_head, t1_hi) = log_axis(fading.sigma1_sq, cfg);
    let (t2_lo, t2_hi) = log_axis(fading.sigma2_sq, cfg);
    let (t3_lo, t3_hi) = log_axis(fading.sigma3_sq, cfg);
    let zero_rate = TargetRate::new(0.0).expect("zero is a valid rate");
    let inner_tol = cfg.rel_tol * 0.1;
    let inner_failed = Cell::new(false);
    let mut f = |t2: f64, t3: f64| {
        let g2 = t2.exp();
        let g3 = t3.exp();
        let lo = g1_threshold(params, g2, g3, &zero_rate)
            .expect("quadrature nodes are interior, so g3 > 0")
            .g1l;
        // Below the zero-rate threshold the clamped gap is identically 0,
        // so the inner axis starts at the threshold (or the head cutoff).
        let t1_lo = lo.ln().max(t1_head);
        let mut inner = |t1: f64| {
            let g1 = t1.exp();
            let gap = (1.0 + sinr_bob(params, g1)).log2()
                - (1.0 + sinr_eve(params, g1, g2, g3)).log2();
            gain_pdf(fading, 1, g1) * gap.max(0.0) * g1
        };
        match converge_1d(
            &rule,
            t1_lo,
            t1_hi,
            inner_tol,
            cfg.max_nodes_per_axis,
            &mut inner,
        ) {
            Ok(v) => gain_pdf(fading, 2, g2) * gain_pdf(fading, 3, g3) * v * g2 * g3,
            Err(_) => {
                inner_failed.set(true);
                0.0
            }
        }
    };
    let mean = converge_2d(
        &rule,
        t2_lo,
        t2_hi,
        t3_lo,
        t3_hi,
        cfg.rel_tol,
        cfg.max_nodes_per_axis,
        &mut f,
    )
    .map_err(|_| FadingError::NonConvergence)?;
    if inner_failed.get() {
        return Err(FadingError::NonConvergence);
    }
    Ok(if half_time { 0.5 * mean } else { mean })
}

/// Ergodic secrecy capacity by Monte Carlo: the sample mean of the clamped
/// capacity gap. The clamp makes explicit threshold gating unnecessary.
pub fn ergodic_secrecy_capacity_mc(
    params: &SystemParams,
    fading: &FadingModel,
    seed: u64,
    n: u64,
    half_time: bool,
) -> EstimateWithError {
    let mut est = mc_estimate(fading, seed, n, |g1, g2, g3| {
        let gap = (1.0 + sinr_bob(params, g1)).log2()
            - (1.0 + sinr_eve(params, g1, g2, g3)).log2();
        gap.max(0.0)
    });
    if half_time {
        est.value *= 0.5;
        est.std_error *= 0.5;
    }
    est
}

/// Mean secrecy capacity of the no-AN baseline over the fading model.
/// Shares the sampling kernel, so the same seed pairs the draws with the
/// proposed-scheme estimators.
pub fn baseline_ergodic_mc(
    params: &SystemParams,
    fading: &FadingModel,
    seed: u64,
    n: u64,
) -> EstimateWithError {
    mc_estimate(fading, seed, n, |g1, _g2, g3| baseline_no_an(params, g1, g3))
}

/// Fraction of fading states where the no-AN baseline falls short of the
/// target rate. Strict comparison, so a zero target is never in outage.
pub fn baseline_outage_mc(
    params: &SystemParams,
    fading: &FadingModel,
    rate: &TargetRate,
    seed: u64,
    n: u64,
) -> EstimateWithError {
    let r_s = rate.r_s();
    mc_estimate(fading, seed, n, |g1, _g2, g3| {
        if baseline_no_an(params, g1, g3) < r_s {
            1.0
        } else {
            0.0
        }
    })
}
