//! Parameter and channel-state value types shared by every other module.
//!
//! All types here are immutable value objects: cheap to copy, safe to share
//! between threads. Channel gains are always derived from the complex
//! coefficients, never stored separately, so `g = |h|^2` cannot drift.

use num_complex::Complex64;
use thiserror::Error;

/// Validation failure for a parameter or channel value.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    /// A field is NaN or infinite.
    #[error("{field} must be finite")]
    NonFinite { field: &'static str },
    /// A power, gain, or rate is below zero.
    #[error("{field} must be non-negative")]
    Negative { field: &'static str },
    /// The AWGN power must be strictly positive.
    #[error("noise power n0 must be strictly positive")]
    ZeroNoisePower,
    /// A Rayleigh variance must be strictly positive.
    #[error("{field} must be strictly positive")]
    NonPositiveVariance { field: &'static str },
}

fn check_finite(value: f64, field: &'static str) -> Result<(), ModelError> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(ModelError::NonFinite { field })
    }
}

fn check_non_negative(value: f64, field: &'static str) -> Result<(), ModelError> {
    check_finite(value, field)?;
    if value < 0.0 {
        return Err(ModelError::Negative { field });
    }
    Ok(())
}

/// Transmit powers, AWGN power, and the residual self-interference gain.
///
/// `lambda = 0` models perfect self-interference cancellation at the
/// full-duplex transmitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Confidential signal power P_s.
    pub p_s: f64,
    /// Alan's artificial-noise power P_A.
    pub p_a: f64,
    /// Bob's artificial-noise power P_B.
    pub p_b: f64,
    /// AWGN power N_0 at every receiver.
    pub n0: f64,
    /// Residual self-interference channel gain lambda = |h_SI|^2.
    pub lambda: f64,
}

impl SystemParams {
    /// Builds a validated parameter set.
    pub fn new(p_s: f64, p_a: f64, p_b: f64, n0: f64, lambda: f64) -> Result<Self, ModelError> {
        Self {
            p_s,
            p_a,
            p_b,
            n0,
            lambda,
        }
        .validated()
    }

    /// Returns the parameters unchanged if every invariant holds.
    pub fn validated(self) -> Result<Self, ModelError> {
        check_non_negative(self.p_s, "p_s")?;
        check_non_negative(self.p_a, "p_a")?;
        check_non_negative(self.p_b, "p_b")?;
        check_non_negative(self.lambda, "lambda")?;
        check_finite(self.n0, "n0")?;
        if self.n0 <= 0.0 {
            return Err(ModelError::ZeroNoisePower);
        }
        Ok(self)
    }
}

/// Wraps an angle into `(-pi, pi]`.
pub(crate) fn wrap_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut t = theta % two_pi;
    if t <= -std::f64::consts::PI {
        t += two_pi;
    } else if t > std::f64::consts::PI {
        t -= two_pi;
    }
    t
}

/// One realization of the three complex channel coefficients.
///
/// `h1` is the main channel (Alan to Bob), `h2` connects Bob to Eve, and
/// `h3` is the eavesdropper channel (Alan to Eve). Gains and phases are
/// recomputed from the coefficients on every access.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelState {
    h1: Complex64,
    h2: Complex64,
    h3: Complex64,
}

impl ChannelState {
    /// Builds a channel state directly from complex coefficients.
    pub fn new(h1: Complex64, h2: Complex64, h3: Complex64) -> Result<Self, ModelError> {
        for (h, field) in [(h1, "h1"), (h2, "h2"), (h3, "h3")] {
            if !h.re.is_finite() || !h.im.is_finite() {
                return Err(ModelError::NonFinite { field });
            }
        }
        Ok(Self { h1, h2, h3 })
    }

    /// Builds coefficients `h_j = sqrt(g_j) * exp(i * theta_j)` from gains
    /// and phases.
    pub fn from_gains(
        g1: f64,
        g2: f64,
        g3: f64,
        theta1: f64,
        theta2: f64,
        theta3: f64,
    ) -> Result<Self, ModelError> {
        for (g, field) in [(g1, "g1"), (g2, "g2"), (g3, "g3")] {
            check_non_negative(g, field)?;
        }
        for (t, field) in [(theta1, "theta1"), (theta2, "theta2"), (theta3, "theta3")] {
            check_finite(t, field)?;
        }
        Ok(Self {
            h1: Complex64::from_polar(g1.sqrt(), theta1),
            h2: Complex64::from_polar(g2.sqrt(), theta2),
            h3: Complex64::from_polar(g3.sqrt(), theta3),
        })
    }

    pub fn h1(&self) -> Complex64 {
        self.h1
    }

    pub fn h2(&self) -> Complex64 {
        self.h2
    }

    pub fn h3(&self) -> Complex64 {
        self.h3
    }

    /// Main-channel gain |h1|^2.
    pub fn g1(&self) -> f64 {
        self.h1.norm_sqr()
    }

    /// Bob-to-Eve gain |h2|^2.
    pub fn g2(&self) -> f64 {
        self.h2.norm_sqr()
    }

    /// Eavesdropper-channel gain |h3|^2.
    pub fn g3(&self) -> f64 {
        self.h3.norm_sqr()
    }

    /// Phase of h1 in `(-pi, pi]`.
    pub fn theta1(&self) -> f64 {
        wrap_angle(self.h1.arg())
    }

    /// Phase of h2 in `(-pi, pi]`.
    pub fn theta2(&self) -> f64 {
        wrap_angle(self.h2.arg())
    }

    /// Phase of h3 in `(-pi, pi]`.
    pub fn theta3(&self) -> f64 {
        wrap_angle(self.h3.arg())
    }
}

/// SINRs and capacities for one channel realization.
///
/// Construction guarantees `c_b = log2(1 + sinr_b)`, `c_e = log2(1 +
/// sinr_e)` and `c_s = max(c_b - c_e, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecrecyMetrics {
    sinr_b: f64,
    sinr_e: f64,
    c_b: f64,
    c_e: f64,
    c_s: f64,
}

impl SecrecyMetrics {
    /// Derives all capacities from the two SINRs.
    pub fn from_sinrs(sinr_b: f64, sinr_e: f64) -> Self {
        let c_b = (1.0 + sinr_b).log2();
        let c_e = (1.0 + sinr_e).log2();
        Self {
            sinr_b,
            sinr_e,
            c_b,
            c_e,
            c_s: (c_b - c_e).max(0.0),
        }
    }

    /// Bob's post-cancellation SINR.
    pub fn sinr_b(&self) -> f64 {
        self.sinr_b
    }

    /// Eve's post-cancellation SINR under her best coefficient.
    pub fn sinr_e(&self) -> f64 {
        self.sinr_e
    }

    /// Main-channel capacity in bits/symbol.
    pub fn c_b(&self) -> f64 {
        self.c_b
    }

    /// Eavesdropper-channel capacity in bits/symbol.
    pub fn c_e(&self) -> f64 {
        self.c_e
    }

    /// Instantaneous secrecy capacity `[c_b - c_e]^+` in bits/symbol.
    pub fn c_s(&self) -> f64 {
        self.c_s
    }
}

/// Rayleigh variances of the three channels; each gain `g_j` is then
/// exponential with mean `sigma_j^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingModel {
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
    pub sigma3_sq: f64,
}

impl FadingModel {
    pub fn new(sigma1_sq: f64, sigma2_sq: f64, sigma3_sq: f64) -> Result<Self, ModelError> {
        for (s, field) in [
            (sigma1_sq, "sigma1_sq"),
            (sigma2_sq, "sigma2_sq"),
            (sigma3_sq, "sigma3_sq"),
        ] {
            check_finite(s, field)?;
            if s <= 0.0 {
                return Err(ModelError::NonPositiveVariance { field });
            }
        }
        Ok(Self {
            sigma1_sq,
            sigma2_sq,
            sigma3_sq,
        })
    }
}

/// Target secrecy rate R_s in bits/symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetRate {
    r_s: f64,
}

impl TargetRate {
    pub fn new(r_s: f64) -> Result<Self, ModelError> {
        check_non_negative(r_s, "r_s")?;
        Ok(Self { r_s })
    }

    pub fn r_s(&self) -> f64 {
        self.r_s
    }

    /// The rate expressed as the capacity ratio bound `2^{R_s}`.
    pub fn ratio_bound(&self) -> f64 {
        self.r_s.exp2()
    }
}

#[cfg(test)]
mod tests {
    // Reference constants keep every digit of the values they were
    // frozen from.
    #![allow(clippy::excessive_precision)]

    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn accepts_reference_parameters() {
        let p = SystemParams::new(200.0, 200.0, 200.0, 1.0, 1e-4).unwrap();
        assert_eq!(p.p_a, 200.0);
    }

    #[test]
    fn accepts_all_zero_powers() {
        assert!(SystemParams::new(0.0, 0.0, 0.0, 1.0, 0.0).is_ok());
    }

    #[test]
    fn rejects_zero_noise_power() {
        assert_eq!(
            SystemParams::new(200.0, 200.0, 200.0, 0.0, 1e-4),
            Err(ModelError::ZeroNoisePower)
        );
    }

    #[test]
    fn rejects_negative_power_by_name() {
        assert_eq!(
            SystemParams::new(200.0, -1.0, 200.0, 1.0, 0.0),
            Err(ModelError::Negative { field: "p_a" })
        );
    }

    #[test]
    fn rejects_non_finite_field() {
        assert_eq!(
            SystemParams::new(f64::NAN, 0.0, 0.0, 1.0, 0.0),
            Err(ModelError::NonFinite { field: "p_s" })
        );
        assert_eq!(
            SystemParams::new(0.0, f64::INFINITY, 0.0, 1.0, 0.0),
            Err(ModelError::NonFinite { field: "p_a" })
        );
    }

    #[test]
    fn channel_from_gains_matches_square_roots() {
        let ch = ChannelState::from_gains(0.4, 0.7, 0.6, 0.0, 0.0, 0.0).unwrap();
        assert!((ch.h1().re - 0.63245553203367587).abs() < 1e-15);
        assert!((ch.h2().re - 0.83666002653407555).abs() < 1e-15);
        assert!((ch.h3().re - 0.77459666924148338).abs() < 1e-15);
        assert!(ch.h1().im.abs() < 1e-15);
    }

    #[test]
    fn channel_from_zero_gains_is_zero() {
        let ch = ChannelState::from_gains(0.0, 0.0, 0.0, 1.0, -2.0, 3.0).unwrap();
        assert_eq!(ch.h1(), Complex64::new(0.0, 0.0));
        assert_eq!(ch.g2(), 0.0);
    }

    #[test]
    fn channel_unit_gains_keep_phases() {
        let ch = ChannelState::from_gains(1.0, 1.0, 1.0, PI / 2.0, PI, -PI / 2.0).unwrap();
        assert!((ch.g1() - 1.0).abs() < 1e-15);
        assert!((ch.theta1() - PI / 2.0).abs() < 1e-15);
        assert!((ch.theta2() - PI).abs() < 1e-15);
        assert!((ch.theta3() + PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn channel_rejects_negative_gain() {
        assert_eq!(
            ChannelState::from_gains(-0.1, 0.0, 0.0, 0.0, 0.0, 0.0),
            Err(ModelError::Negative { field: "g1" })
        );
    }

    #[test]
    fn metrics_clamp_to_zero() {
        let m = SecrecyMetrics::from_sinrs(1.0, 3.0);
        assert_eq!(m.c_s(), 0.0);
        assert!((m.c_b() - 1.0).abs() < 1e-15);
        assert!((m.c_e() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn fading_model_rejects_zero_variance() {
        assert_eq!(
            FadingModel::new(1.0, 0.0, 1.0),
            Err(ModelError::NonPositiveVariance { field: "sigma2_sq" })
        );
    }

    #[test]
    fn target_rate_rejects_negative() {
        assert!(TargetRate::new(-0.5).is_err());
        assert!((TargetRate::new(1.0).unwrap().ratio_bound() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn wrap_angle_half_open_interval() {
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-12);
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!(wrap_angle(0.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn gain_phase_round_trip(
            g1 in 0.0f64..10.0,
            g2 in 0.0f64..10.0,
            g3 in 0.0f64..10.0,
            t1 in -PI..PI,
            t2 in -PI..PI,
            t3 in -PI..PI,
        ) {
            let ch = ChannelState::from_gains(g1, g2, g3, t1, t2, t3).unwrap();
            for (g, got) in [(g1, ch.g1()), (g2, ch.g2()), (g3, ch.g3())] {
                prop_assert!((got - g).abs() <= 1e-12 * g.max(1.0));
            }
            for (t, got, g) in [(t1, ch.theta1(), g1), (t2, ch.theta2(), g2), (t3, ch.theta3(), g3)] {
                if g > 1e-12 {
                    let diff = wrap_angle(got - t).abs();
                    prop_assert!(diff <= 1e-12, "phase {} vs {}", got, t);
                }
            }
        }

        #[test]
        fn metrics_secrecy_capacity_never_negative(
            sinr_b in 0.0f64..1e6,
            sinr_e in 0.0f64..1e6,
        ) {
            let m = SecrecyMetrics::from_sinrs(sinr_b, sinr_e);
            prop_assert!(m.c_s() >= 0.0);
            if sinr_b <= sinr_e {
                prop_assert_eq!(m.c_s(), 0.0);
            }
        }
    }
}
