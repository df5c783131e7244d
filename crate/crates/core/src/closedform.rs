//! Closed-form secrecy expressions for the two-phase AN protocol.
//!
//! Pure functions of `SystemParams` and channel state. Several quantities
//! exist in two algebraically equal forms (direct rate condition vs. the
//! quadratic threshold, residual variance vs. its minimized closed form);
//! the test suites cross-check each pair, and the waveform simulator checks
//! both against sampled symbols.

use crate::model::{wrap_angle, ChannelState, SecrecyMetrics, SystemParams, TargetRate};
use num_complex::Complex64;
use thiserror::Error;

/// Failure of a closed-form reduction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    /// The threshold reduction divides by g3; a dead eavesdropper channel
    /// has no finite reduction (and measure zero under fading).
    #[error("g3 must be strictly positive for the g1 threshold")]
    DegenerateChannel,
}

/// Eve's combining weight for the phase-1 observation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CancellationCoefficient {
    hx: Complex64,
}

impl CancellationCoefficient {
    pub fn new(hx: Complex64) -> Self {
        Self { hx }
    }

    pub fn from_polar(magnitude: f64, theta: f64) -> Self {
        Self {
            hx: Complex64::from_polar(magnitude, theta),
        }
    }

    pub fn value(&self) -> Complex64 {
        self.hx
    }

    pub fn magnitude(&self) -> f64 {
        self.hx.norm()
    }

    /// Phase in `(-pi, pi]`.
    pub fn theta(&self) -> f64 {
        wrap_angle(self.hx.arg())
    }
}

impl From<Complex64> for CancellationCoefficient {
    fn from(hx: Complex64) -> Self {
        Self::new(hx)
    }
}

/// Intermediates of the g1-threshold reduction, kept for inspection.
///
/// `g1l` is the smallest main-channel gain at which the target secrecy rate
/// is achievable for the given (g2, g3); `f64::INFINITY` when no gain
/// reaches it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdIntermediates {
    pub m: f64,
    pub y: f64,
    pub z: f64,
    pub quad_a: f64,
    pub quad_b: f64,
    pub quad_c: f64,
    pub g1l: f64,
}

/// Bob's post-cancellation SINR: g1 P_s / (g1 lambda P_A + g1 N0 + N0).
///
/// The denominator is at least N0 > 0, so the value is always finite.
pub fn sinr_bob(params: &SystemParams, g1: f64) -> f64 {
    g1 * params.p_s / (g1 * params.lambda * params.p_a + g1 * params.n0 + params.n0)
}

/// The cancellation benefit factor M = P_B^2 g2 g3 / (g2 P_B + g3 P_A + N0).
pub fn m_factor(params: &SystemParams, g2: f64, g3: f64) -> f64 {
    params.p_b * params.p_b * g2 * g3 / (g2 * params.p_b + g3 * params.p_a + params.n0)
}

/// Y = P_B - M/g3, written as P_B (g3 P_A + N0) / (g2 P_B + g3 P_A + N0)
/// so it cannot round below zero.
fn y_factor(params: &SystemParams, g2: f64, g3: f64) -> f64 {
    let t = g3 * params.p_a + params.n0;
    params.p_b * t / (g2 * params.p_b + t)
}

/// Eve's interference-plus-noise power after the optimal coefficient:
/// g3 Z + N0 + g1 g3 Y with Z = lambda P_A + N0. Strictly positive.
fn en_min(params: &SystemParams, g1: f64, g2: f64, g3: f64) -> f64 {
    let z = params.lambda * params.p_a + params.n0;
    g3 * z + params.n0 + g1 * g3 * y_factor(params, g2, g3)
}

/// Eve's SINR under her optimal cancellation coefficient.
pub fn sinr_eve(params: &SystemParams, g1: f64, g2: f64, g3: f64) -> f64 {
    g3 * params.p_s / en_min(params, g1, g2, g3)
}

/// Instantaneous secrecy metrics for one channel realization.
pub fn secrecy_capacity(params: &SystemParams, ch: &ChannelState) -> SecrecyMetrics {
    SecrecyMetrics::from_sinrs(
        sinr_bob(params, ch.g1()),
        sinr_eve(params, ch.g1(), ch.g2(), ch.g3()),
    )
}

/// Eve's optimal coefficient: magnitude P_B |h1 h2 h3| divided by
/// (g2 P_B + g3 P_A + N0), phase theta1 + theta3 - theta2. Computed as
/// one complex product so magnitude and phase stay consistent.
pub fn hx_star(params: &SystemParams, ch: &ChannelState) -> CancellationCoefficient {
    let den = ch.g2() * params.p_b + ch.g3() * params.p_a + params.n0;
    CancellationCoefficient::new(ch.h1() * ch.h3() * ch.h2().conj() * (params.p_b / den))
}

/// Residual interference-plus-noise power at Eve for an arbitrary
/// coefficient hx:
///
/// |h3 h1 - hx h2|^2 P_B + |hx|^2 (g3 P_A + N0) + g3 (lambda P_A + N0) + N0
///
/// Convex in hx with minimum at `hx_star`, where it equals the `sinr_eve`
/// denominator.
pub fn en_residual(params: &SystemParams, ch: &ChannelState, hx: &CancellationCoefficient) -> f64 {
    let leak = ch.h3() * ch.h1() - hx.value() * ch.h2();
    leak.norm_sqr() * params.p_b
        + hx.value().norm_sqr() * (ch.g3() * params.p_a + params.n0)
        + ch.g3() * (params.lambda * params.p_a + params.n0)
        + params.n0
}

/// Smallest non-negative g1 satisfying a monotone condition written as
/// a g1^2 + b g1 + c >= 0, or +inf when no g1 does.
///
/// a < 0, and a = 0 with b <= 0 (except the all-zero case), occur exactly
/// when the condition fails in the large-g1 limit, so the up-set reading
/// stays exact. The larger quadratic root is taken in the form without
/// subtractive cancellation.
fn up_set_threshold(a: f64, b: f64, c: f64) -> f64 {
    if a > 0.0 {
        let disc = b * b - 4.0 * a * c;
        if disc <= 0.0 {
            return 0.0;
        }
        let sq = disc.sqrt();
        let root = if b > 0.0 {
            -2.0 * c / (b + sq)
        } else {
            (sq - b) / (2.0 * a)
        };
        root.max(0.0)
    } else if a == 0.0 {
        if b > 0.0 {
            (-c / b).max(0.0)
        } else if b == 0.0 && c >= 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        f64::INFINITY
    }
}

/// Reduces the target-rate condition to a quadratic in g1 and solves for
/// the achievability threshold.
///
/// For fixed (g2, g3) the capacity gap is non-decreasing in g1, so the
/// condition holds exactly for g1 >= g1l.
pub fn g1_threshold(
    params: &SystemParams,
    g2: f64,
    g3: f64,
    rate: &TargetRate,
) -> Result<ThresholdIntermediates, ClosedFormError> {
    if g3 <= 0.0 {
        return Err(ClosedFormError::DegenerateChannel);
    }
    let m = m_factor(params, g2, g3);
    let y = y_factor(params, g2, g3);
    let z = params.lambda * params.p_a + params.n0;
    let r = rate.ratio_bound();
    let shrink = 1.0 - r;
    let (p_s, n0) = (params.p_s, params.n0);
    let quad_a = shrink * y * z + y * p_s;
    let quad_b = shrink * (z * z + z * n0 / g3 + y * n0 + z * p_s) + p_s * n0 / g3;
    let quad_c = shrink * (z * n0 + n0 * n0 / g3) - r * p_s * n0;
    Ok(ThresholdIntermediates {
        m,
        y,
        z,
        quad_a,
        quad_b,
        quad_c,
        g1l: up_set_threshold(quad_a, quad_b, quad_c),
    })
}

/// Direct form of the achievability test: (1 + SINR_B) >= 2^{R_s} (1 +
/// SINR_E), with no quadratic reduction. Well-defined for g3 = 0 too.
pub fn rate_condition(
    params: &SystemParams,
    g1: f64,
    g2: f64,
    g3: f64,
    rate: &TargetRate,
) -> bool {
    1.0 + sinr_bob(params, g1) >= rate.ratio_bound() * (1.0 + sinr_eve(params, g1, g2, g3))
}

/// Secrecy capacity of full-time direct transmission with no AN and no
/// full-duplex capture: [log2(1 + g1 P_s/N0) - log2(1 + g3 P_s/N0)]^+.
pub fn baseline_no_an(params: &SystemParams, g1: f64, g3: f64) -> f64 {
    let ratio = (params.n0 + g1 * params.p_s) / (params.n0 + g3 * params.p_s);
    ratio.log2().max(0.0)
}

#[cfg(test)]
mod tests {
    // Reference constants keep every digit of the values they were
    // frozen from.
    #![allow(clippy::excessive_precision)]

    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn reference_params() -> SystemParams {
        SystemParams::new(200.0, 200.0, 200.0, 1.0, 1e-4).unwrap()
    }

    fn reference_channel() -> ChannelState {
        ChannelState::from_gains(0.4, 0.7, 0.6, 0.0, 0.0, 0.0).unwrap()
    }

    fn assert_close(got: f64, want: f64, rel: f64) {
        assert!(
            (got - want).abs() <= rel * want.abs().max(1e-300),
            "got {got}, want {want}"
        );
    }

    #[test]
    fn sinr_bob_reference_value() {
        assert_close(sinr_bob(&reference_params(), 0.4), 56.818181818181818, 1e-14);
    }

    #[test]
    fn sinr_bob_zero_cases() {
        let mut p = reference_params();
        assert_eq!(sinr_bob(&p, 0.0), 0.0);
        p.p_s = 0.0;
        assert_eq!(sinr_bob(&p, 0.4), 0.0);
    }

    #[test]
    fn m_factor_reference_value() {
        assert_close(
            m_factor(&reference_params(), 0.7, 0.6),
            64.367816091954023,
            1e-14,
        );
    }

    #[test]
    fn m_factor_zero_cases() {
        let mut p = reference_params();
        assert_eq!(m_factor(&p, 0.0, 0.6), 0.0);
        p.p_b = 0.0;
        assert_eq!(m_factor(&p, 0.7, 0.6), 0.0);
    }

    #[test]
    fn sinr_eve_reference_value() {
        assert_close(
            sinr_eve(&reference_params(), 0.4, 0.7, 0.6),
            5.0283107380442761,
            1e-13,
        );
    }

    #[test]
    fn sinr_eve_dead_main_channel() {
        let p = SystemParams::new(200.0, 200.0, 200.0, 1.0, 0.0).unwrap();
        assert_close(sinr_eve(&p, 0.0, 0.7, 0.6), 75.0, 1e-14);
    }

    #[test]
    fn sinr_eve_zero_signal() {
        let mut p = reference_params();
        p.p_s = 0.0;
        assert_eq!(sinr_eve(&p, 0.4, 0.7, 0.6), 0.0);
    }

    #[test]
    fn secrecy_capacity_reference_value() {
        let m = secrecy_capacity(&reference_params(), &reference_channel());
        assert_close(m.c_b(), 5.8534513366470581, 1e-13);
        assert_close(m.c_e(), 2.5917537846665183, 1e-13);
        assert_close(m.c_s(), 3.2616975519805398, 1e-13);
    }

    #[test]
    fn secrecy_capacity_clamps_symmetric_channels() {
        let p = SystemParams::new(200.0, 200.0, 0.0, 1.0, 0.0).unwrap();
        let ch = ChannelState::from_gains(0.5, 0.9, 0.5, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(secrecy_capacity(&p, &ch).c_s(), 0.0);
        let dead = ChannelState::from_gains(0.0, 0.9, 0.5, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(secrecy_capacity(&reference_params(), &dead).c_s(), 0.0);
    }

    #[test]
    fn hx_star_reference_value() {
        let ch = ChannelState::from_gains(0.4, 0.7, 0.6, 0.0, PI / 4.0, PI / 3.0).unwrap();
        let hx = hx_star(&reference_params(), &ch);
        assert_close(hx.magnitude(), 0.31408278209837849, 1e-13);
        assert_close(hx.theta(), 0.26179938779914944, 1e-12);
    }

    #[test]
    fn hx_star_zero_without_bob_noise() {
        let mut p = reference_params();
        p.p_b = 0.0;
        let hx = hx_star(&p, &reference_channel());
        assert_eq!(hx.value(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn hx_star_phase_identity() {
        let ch = ChannelState::from_gains(0.5, 1.0, 1.0, 1.1, 0.0, 0.0).unwrap();
        let hx = hx_star(&reference_params(), &ch);
        assert_close(hx.theta(), 1.1, 1e-13);
    }

    #[test]
    fn en_residual_at_optimum_matches_sinr_denominator() {
        let p = reference_params();
        let ch = reference_channel();
        let at_star = en_residual(&p, &ch, &hx_star(&p, &ch));
        assert_close(at_star, 23.864873563218391, 1e-12);
        assert_close(at_star, en_min(&p, 0.4, 0.7, 0.6), 1e-12);
    }

    #[test]
    fn en_residual_without_cancellation() {
        let p = reference_params();
        let zero = CancellationCoefficient::new(Complex64::new(0.0, 0.0));
        assert_close(en_residual(&p, &reference_channel(), &zero), 49.612, 1e-14);
    }

    #[test]
    fn en_residual_minimal_under_perturbation() {
        let p = reference_params();
        let ch = ChannelState::from_gains(0.4, 0.7, 0.6, 1.0, -0.5, 2.0).unwrap();
        let star = hx_star(&p, &ch);
        let at_star = en_residual(&p, &ch, &star);
        for (dre, dim) in [(1e-3, 0.0), (-1e-3, 0.0), (0.0, 1e-3), (0.0, -1e-3)] {
            let moved =
                CancellationCoefficient::new(star.value() + Complex64::new(dre, dim));
            assert!(en_residual(&p, &ch, &moved) >= at_star);
        }
    }

    #[test]
    fn g1_threshold_reference_scenario() {
        let rate = TargetRate::new(1.0).unwrap();
        let t = g1_threshold(&reference_params(), 0.7, 0.6, &rate).unwrap();
        assert_close(t.m, 64.367816091954023, 1e-14);
        assert_close(t.y, 92.720306513409962, 1e-14);
        assert_close(t.z, 1.02, 1e-15);
        assert_close(t.quad_a, 18449.486590038314, 1e-13);
        assert_close(t.quad_b, 33.872626819923372, 1e-12);
        assert_close(t.quad_c, -402.68666666666667, 1e-14);
        assert_close(t.g1l, 0.14682261966942995, 1e-12);
    }

    #[test]
    fn g1_threshold_unreachable_rate() {
        let rate = TargetRate::new(60.0).unwrap();
        let t = g1_threshold(&reference_params(), 0.7, 0.6, &rate).unwrap();
        assert!(t.quad_a < 0.0);
        assert_eq!(t.g1l, f64::INFINITY);
    }

    #[test]
    fn g1_threshold_rejects_dead_eve_channel() {
        let rate = TargetRate::new(1.0).unwrap();
        assert_eq!(
            g1_threshold(&reference_params(), 0.7, 0.0, &rate),
            Err(ClosedFormError::DegenerateChannel)
        );
    }

    #[test]
    fn g1_threshold_zero_rate_marks_sign_change() {
        let p = reference_params();
        let rate = TargetRate::new(0.0).unwrap();
        let t = g1_threshold(&p, 0.7, 0.6, &rate).unwrap();
        assert!(t.g1l > 0.0 && t.g1l.is_finite());
        let above = t.g1l * (1.0 + 1e-6);
        let below = t.g1l * (1.0 - 1e-6);
        assert!(rate_condition(&p, above, 0.7, 0.6, &rate));
        assert!(!rate_condition(&p, below, 0.7, 0.6, &rate));
        let ch = ChannelState::from_gains(above, 0.7, 0.6, 0.0, 0.0, 0.0).unwrap();
        assert!(secrecy_capacity(&p, &ch).c_s() > 0.0);
    }

    #[test]
    fn g1_threshold_no_bob_noise_linear_branch() {
        // With P_B = 0 the quadratic degenerates to a line; at vanishing
        // rate the threshold tends to g3.
        let p = SystemParams::new(200.0, 0.0, 0.0, 1.0, 0.0).unwrap();
        let rate = TargetRate::new(1e-9).unwrap();
        let t = g1_threshold(&p, 0.7, 0.6, &rate).unwrap();
        assert_eq!(t.quad_a, 0.0);
        assert_close(t.g1l, 0.6, 1e-6);
    }

    #[test]
    fn up_set_threshold_degenerate_branches() {
        assert_eq!(up_set_threshold(0.0, 2.0, -1.0), 0.5);
        assert_eq!(up_set_threshold(0.0, 2.0, 1.0), 0.0);
        assert_eq!(up_set_threshold(0.0, 0.0, 1.0), 0.0);
        assert_eq!(up_set_threshold(0.0, 0.0, 0.0), 0.0);
        assert_eq!(up_set_threshold(0.0, 0.0, -1.0), f64::INFINITY);
        assert_eq!(up_set_threshold(0.0, -2.0, -1.0), f64::INFINITY);
        assert_eq!(up_set_threshold(-1.0, 2.0, -1.0), f64::INFINITY);
        assert_eq!(up_set_threshold(1.0, 0.0, 1.0), 0.0);
    }

    #[test]
    fn rate_condition_reference_scenario() {
        let p = reference_params();
        assert!(rate_condition(&p, 0.4, 0.7, 0.6, &TargetRate::new(1.0).unwrap()));
        assert!(!rate_condition(&p, 0.01, 0.7, 0.6, &TargetRate::new(1.0).unwrap()));
    }

    #[test]
    fn baseline_no_an_values() {
        let p = reference_params();
        assert_eq!(baseline_no_an(&p, 0.4, 0.6), 0.0);
        assert_eq!(baseline_no_an(&p, 0.5, 0.5), 0.0);
        assert_close(baseline_no_an(&p, 0.6, 0.4), 0.57901323438996979, 1e-13);
    }

    fn arb_params() -> impl Strategy<Value = SystemParams> {
        (
            0.0f64..1000.0,
            0.0f64..1000.0,
            0.0f64..1000.0,
            0.01f64..10.0,
            0.0f64..0.5,
        )
            .prop_map(|(p_s, p_a, p_b, n0, lambda)| {
                SystemParams::new(p_s, p_a, p_b, n0, lambda).unwrap()
            })
    }

    proptest! {
        #[test]
        fn eve_denominator_strictly_positive(
            p in arb_params(),
            g1 in 0.0f64..10.0,
            g2 in 0.0f64..10.0,
            g3 in 0.0f64..10.0,
        ) {
            prop_assert!(en_min(&p, g1, g2, g3) >= p.n0);
        }

        #[test]
        fn en_identity_random_draws(
            p in arb_params(),
            g1 in 0.0f64..10.0,
            g2 in 0.0f64..10.0,
            g3 in 0.0f64..10.0,
            t1 in -PI..PI,
            t2 in -PI..PI,
            t3 in -PI..PI,
        ) {
            let ch = ChannelState::from_gains(g1, g2, g3, t1, t2, t3).unwrap();
            let star = hx_star(&p, &ch);
            let direct = en_residual(&p, &ch, &star);
            let closed = en_min(&p, ch.g1(), ch.g2(), ch.g3());
            prop_assert!((direct - closed).abs() <= 1e-10 * closed);
        }

        #[test]
        fn an_never_helps_eve(
            p in arb_params(),
            g1 in 0.0f64..10.0,
            g2 in 0.0f64..10.0,
            g3 in 0.0f64..10.0,
        ) {
            let with_an = sinr_eve(&p, g1, g2, g3);
            let floor = g3 * p.p_s / (g3 * (p.lambda * p.p_a + p.n0) + p.n0);
            prop_assert!(with_an <= floor * (1.0 + 1e-14));
        }

        #[test]
        fn sinr_eve_non_increasing_in_g1(
            p in arb_params(),
            g1 in 0.0f64..10.0,
            step in 0.0f64..5.0,
            g2 in 0.0f64..10.0,
            g3 in 0.0f64..10.0,
        ) {
            prop_assert!(
                sinr_eve(&p, g1 + step, g2, g3) <= sinr_eve(&p, g1, g2, g3) * (1.0 + 1e-14)
            );
        }

        #[test]
        fn capacity_gap_non_decreasing_in_g1(
            p in arb_params(),
            g1 in 0.0f64..10.0,
            step in 0.0f64..5.0,
            g2 in 0.0f64..10.0,
            g3 in 0.001f64..10.0,
        ) {
            let gap = |g: f64| {
                (1.0 + sinr_bob(&p, g)).log2() - (1.0 + sinr_eve(&p, g, g2, g3)).log2()
            };
            prop_assert!(gap(g1 + step) >= gap(g1) - 1e-10);
        }

        #[test]
        fn threshold_matches_direct_condition(
            p in arb_params(),
            g1 in 0.0f64..10.0,
            g2 in 0.0f64..10.0,
            g3 in 0.001f64..10.0,
            rs in 0.0f64..4.0,
        ) {
            let rate = TargetRate::new(rs).unwrap();
            let t = g1_threshold(&p, g2, g3, &rate).unwrap();
            let band = 1e-9 * t.g1l.max(1.0);
            if t.g1l.is_infinite() || (g1 - t.g1l).abs() > band {
                prop_assert_eq!(
                    rate_condition(&p, g1, g2, g3, &rate),
                    g1 >= t.g1l,
                    "g1 {} vs threshold {}", g1, t.g1l
                );
            }
        }

        #[test]
        fn quad_c_negative_when_quad_a_positive(
            p in arb_params(),
            g2 in 0.0f64..10.0,
            g3 in 0.001f64..10.0,
            rs in 0.0f64..4.0,
        ) {
            let t = g1_threshold(&p, g2, g3, &TargetRate::new(rs).unwrap()).unwrap();
            if t.quad_a > 0.0 && p.p_s > 0.0 {
                prop_assert!(t.quad_c < 0.0);
                prop_assert!(t.g1l > 0.0);
            }
        }

        #[test]
        fn baseline_clamped_and_antisymmetric(
            p in arb_params(),
            g1 in 0.0f64..10.0,
            g3 in 0.0f64..10.0,
        ) {
            let fwd = baseline_no_an(&p, g1, g3);
            prop_assert!(fwd >= 0.0);
            if g1 <= g3 {
                prop_assert_eq!(fwd, 0.0);
            }
        }
    }
}
