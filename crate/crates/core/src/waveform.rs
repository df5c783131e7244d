//! Symbol-level simulation of the two-phase protocol.
//!
//! Phase 1: Bob and Alan radiate unit-variance Gaussian noise waveforms
//! while full-duplex Alan records his receive chain. Phase 2: Alan replays
//! what he heard with the confidential symbols superimposed; Bob subtracts
//! the noise he transmitted, Eve combines her two observations with a
//! coefficient of her choice.
//!
//! Every stochastic term is drawn from a counter-based generator seeded by
//! `SimConfig`, with one stream per phase, so blocks are reproducible and
//! the two phases stay independent. All mixing equations are evaluated
//! sample-wise exactly as written in the type invariants.

use crate::closedform::CancellationCoefficient;
use crate::model::{ChannelState, SystemParams};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use thiserror::Error;

/// Simulation failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WaveformError {
    /// A block must contain at least one symbol.
    #[error("n_symbols must be at least 1")]
    EmptyBlock,
    /// A coordinate search needs at least two steps per axis and a
    /// positive magnitude range.
    #[error("search grid needs at least two steps per axis and mag_max > 0")]
    EmptyGrid,
}

/// Block length and seed for one protocol run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    n_symbols: usize,
    seed: u64,
}

impl SimConfig {
    pub fn new(n_symbols: usize, seed: u64) -> Result<Self, WaveformError> {
        if n_symbols == 0 {
            return Err(WaveformError::EmptyBlock);
        }
        Ok(Self { n_symbols, seed })
    }

    pub fn n_symbols(&self) -> usize {
        self.n_symbols
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Phase-1 waveforms. `n_b`, `n_a`, `n_0` are unit-variance transmit and
/// self-interference waveforms (powers are applied in the mixing
/// equations); `n_a1`, `n_e1` are receiver noise carrying variance N0.
///
/// y_a = h1 sqrt(P_B) n_b + sqrt(lambda P_A) n_0 + n_a1
/// y_e1 = h2 sqrt(P_B) n_b + h3 sqrt(P_A) n_a + n_e1
#[derive(Debug, Clone)]
pub struct PhaseOneBlock {
    pub n_b: Vec<Complex64>,
    pub n_a: Vec<Complex64>,
    pub n_0: Vec<Complex64>,
    pub n_a1: Vec<Complex64>,
    pub n_e1: Vec<Complex64>,
    pub y_a: Vec<Complex64>,
    pub y_e1: Vec<Complex64>,
}

/// Phase-2 waveforms. `s_a` is the unit-variance confidential symbol
/// stream; `n_b2`, `n_e2` are receiver noise with variance N0.
///
/// x_a = sqrt(P_s) s_a + y_a;  y_b = h1 x_a + n_b2;  y_e2 = h3 x_a + n_e2
#[derive(Debug, Clone)]
pub struct PhaseTwoBlock {
    pub s_a: Vec<Complex64>,
    pub n_b2: Vec<Complex64>,
    pub n_e2: Vec<Complex64>,
    pub x_a: Vec<Complex64>,
    pub y_b: Vec<Complex64>,
    pub y_e2: Vec<Complex64>,
}

/// A receiver's post-cancellation block with its ground-truth split.
///
/// `interference_part` is defined as `post_cancel - signal_part`, which
/// makes the decomposition identity exact in floating point; it equals the
/// expanded noise sum to rounding.
#[derive(Debug, Clone)]
pub struct ReceiverOutput {
    pub post_cancel: Vec<Complex64>,
    pub signal_part: Vec<Complex64>,
    pub interference_part: Vec<Complex64>,
    pub empirical_sinr: f64,
}

/// Unit-variance circular Gaussian draws scaled by `scale`.
fn draw_block(rng: &mut ChaCha8Rng, scale: f64, n: usize) -> Vec<Complex64> {
    let s = scale * FRAC_1_SQRT_2;
    (0..n)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * s, im * s)
        })
        .collect()
}

fn mean_power(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>() / v.len() as f64
}

fn phase_rng(cfg: &SimConfig, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    rng
}

/// Generates the phase-1 noise waveforms and both received blocks.
///
/// Draw order (n_b, n_a, n_0, n_a1, n_e1, one full vector each) is part of
/// the determinism contract.
pub fn run_phase1(params: &SystemParams, ch: &ChannelState, cfg: &SimConfig) -> PhaseOneBlock {
    let mut rng = phase_rng(cfg, 0);
    let n = cfg.n_symbols;
    let n_b = draw_block(&mut rng, 1.0, n);
    let n_a = draw_block(&mut rng, 1.0, n);
    let n_0 = draw_block(&mut rng, 1.0, n);
    let n_a1 = draw_block(&mut rng, params.n0.sqrt(), n);
    let n_e1 = draw_block(&mut rng, params.n0.sqrt(), n);

    let cb_a = ch.h1() * params.p_b.sqrt();
    let rsi = (params.lambda * params.p_a).sqrt();
    let cb_e = ch.h2() * params.p_b.sqrt();
    let ca_e = ch.h3() * params.p_a.sqrt();
    let y_a = (0..n)
        .map(|i| cb_a * n_b[i] + rsi * n_0[i] + n_a1[i])
        .collect();
    let y_e1 = (0..n)
        .map(|i| cb_e * n_b[i] + ca_e * n_a[i] + n_e1[i])
        .collect();
    PhaseOneBlock {
        n_b,
        n_a,
        n_0,
        n_a1,
        n_e1,
        y_a,
        y_e1,
    }
}

/// Superimposes the confidential symbols on Alan's phase-1 capture and
/// forms both phase-2 received blocks. Phase-2 draws come from their own
/// generator stream, independent of phase 1.
pub fn run_phase2(
    params: &SystemParams,
    ch: &ChannelState,
    p1: &PhaseOneBlock,
    cfg: &SimConfig,
) -> PhaseTwoBlock {
    let mut rng = phase_rng(cfg, 1);
    let n = cfg.n_symbols;
    let s_a = draw_block(&mut rng, 1.0, n);
    let n_b2 = draw_block(&mut rng, params.n0.sqrt(), n);
    let n_e2 = draw_block(&mut rng, params.n0.sqrt(), n);

    let sqrt_ps = params.p_s.sqrt();
    let x_a: Vec<Complex64> = (0..n).map(|i| sqrt_ps * s_a[i] + p1.y_a[i]).collect();
    let y_b = (0..n).map(|i| ch.h1() * x_a[i] + n_b2[i]).collect();
    let y_e2 = (0..n).map(|i| ch.h3() * x_a[i] + n_e2[i]).collect();
    PhaseTwoBlock {
        s_a,
        n_b2,
        n_e2,
        x_a,
        y_b,
        y_e2,
    }
}

fn receiver_output(
    post_cancel: Vec<Complex64>,
    signal_part: Vec<Complex64>,
) -> ReceiverOutput {
    let interference_part: Vec<Complex64> = post_cancel
        .iter()
        .zip(&signal_part)
        .map(|(p, s)| p - s)
        .collect();
    let empirical_sinr = mean_power(&signal_part) / mean_power(&interference_part);
    ReceiverOutput {
        post_cancel,
        signal_part,
        interference_part,
        empirical_sinr,
    }
}

/// Bob subtracts the noise he transmitted (he knows n_b and h1):
/// post_cancel = y_b - h1 h1 sqrt(P_B) n_b. What remains is the signal
/// plus forwarded RSI, forwarded Alan receiver noise, and his own noise.
pub fn bob_cancel(
    ch: &ChannelState,
    params: &SystemParams,
    p1: &PhaseOneBlock,
    p2: &PhaseTwoBlock,
) -> ReceiverOutput {
    let coef = ch.h1() * ch.h1() * params.p_b.sqrt();
    let sig = ch.h1() * params.p_s.sqrt();
    let post_cancel = (0..p2.y_b.len())
        .map(|i| p2.y_b[i] - coef * p1.n_b[i])
        .collect();
    let signal_part = p2.s_a.iter().map(|s| sig * s).collect();
    receiver_output(post_cancel, signal_part)
}

/// Eve combines her two observations: post_cancel = y_e2 - hx y_e1.
pub fn eve_cancel(
    ch: &ChannelState,
    params: &SystemParams,
    p1: &PhaseOneBlock,
    p2: &PhaseTwoBlock,
    hx: &CancellationCoefficient,
) -> ReceiverOutput {
    let w = hx.value();
    let sig = ch.h3() * params.p_s.sqrt();
    let post_cancel = (0..p2.y_e2.len())
        .map(|i| p2.y_e2[i] - w * p1.y_e1[i])
        .collect();
    let signal_part = p2.s_a.iter().map(|s| sig * s).collect();
    receiver_output(post_cancel, signal_part)
}

/// Two-stage coordinate search for Eve's combining weight, using only her
/// own observations (never the channel coefficients): stage 1 sweeps the
/// phase at unit magnitude, stage 2 fixes the phase and sweeps the
/// magnitude over [0, mag_max], minimizing the sample variance of
/// y_e2 - hx y_e1 at every candidate.
///
/// The candidate variance is evaluated through the sufficient statistics
/// mean|y_e1|^2, mean|y_e2|^2, mean(y_e2 conj(y_e1)), so the sweep costs
/// O(n + steps) instead of O(n * steps); the minimized expression is
/// identical.
pub fn eve_exhaust_search(
    p1: &PhaseOneBlock,
    p2: &PhaseTwoBlock,
    phase_steps: usize,
    mag_steps: usize,
    mag_max: f64,
) -> Result<CancellationCoefficient, WaveformError> {
    // The negated comparison also rejects a NaN magnitude bound.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if phase_steps < 2 || mag_steps < 2 || !(mag_max > 0.0) {
        return Err(WaveformError::EmptyGrid);
    }
    let n = p1.y_e1.len() as f64;
    let mut s11 = 0.0;
    let mut s22 = 0.0;
    let mut s21 = Complex64::new(0.0, 0.0);
    for (e2, e1) in p2.y_e2.iter().zip(&p1.y_e1) {
        s11 += e1.norm_sqr();
        s22 += e2.norm_sqr();
        s21 += e2 * e1.conj();
    }
    s11 /= n;
    s22 /= n;
    s21 /= n;

    let residual = |m: f64, theta: f64| {
        s22 + m * m * s11 - 2.0 * m * (Complex64::from_polar(1.0, -theta) * s21).re
    };

    let mut best_theta = -PI;
    let mut best = f64::INFINITY;
    for k in 0..phase_steps {
        let theta = -PI + 2.0 * PI * k as f64 / phase_steps as f64;
        let v = residual(1.0, theta);
        if v < best {
            best = v;
            best_theta = theta;
        }
    }

    let mut best_mag = 0.0;
    best = f64::INFINITY;
    for j in 0..mag_steps {
        let m = mag_max * j as f64 / (mag_steps - 1) as f64;
        let v = residual(m, best_theta);
        if v < best {
            best = v;
            best_mag = m;
        }
    }
    Ok(CancellationCoefficient::from_polar(best_mag, best_theta))
}

/// Sample variance of `y_e2 - hx y_e1`, the quantity the exhaust search
/// minimizes; exposed so callers can compare candidates.
pub fn eve_residual_variance(
    p1: &PhaseOneBlock,
    p2: &PhaseTwoBlock,
    hx: &CancellationCoefficient,
) -> f64 {
    let w = hx.value();
    p2.y_e2
        .iter()
        .zip(&p1.y_e1)
        .map(|(e2, e1)| (e2 - w * e1).norm_sqr())
        .sum::<f64>()
        / p1.y_e1.len() as f64
}
