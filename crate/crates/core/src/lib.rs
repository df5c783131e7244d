//! Two-phase artificial-noise (AN) secure transmission with a full-duplex
//! source.
//!
//! The scheme under study: in Phase 1 the transmitter (Alan) and the
//! receiver (Bob) both radiate artificial Gaussian noise while Alan,
//! being full-duplex, captures Bob's noise over the air. In Phase 2 Alan
//! superimposes the confidential signal on the captured noise and forwards
//! the mix. Bob knows his own noise and cancels it; the eavesdropper (Eve)
//! only ever saw that noise polluted by Alan's, so she cannot, and her SINR
//! is degraded.
//!
//! The crate is organised in four layers:
//!
//! - [`model`] — parameter and channel-state value types with validation.
//! - [`closedform`] — the analytical engine: SINRs, capacities, Eve's
//!   optimal cancellation coefficient, the achievable-rate threshold on the
//!   main-channel gain, and the no-AN comparison baseline.
//! - [`waveform`] — a seeded symbol-level simulator of the two-phase
//!   protocol, used as an independent oracle for the closed forms.
//! - [`fading`] — Rayleigh block-fading statistics: secrecy outage
//!   probability and ergodic secrecy capacity, each by deterministic
//!   quadrature and by Monte Carlo.
//!
//! [`verify`] bundles the cross-validation suites (closed form vs. grid
//! search, threshold vs. direct rate test, analytics vs. waveform, MC vs.
//! quadrature) behind a report type that the CLI exposes.

pub mod closedform;
pub mod fading;
pub mod model;
pub mod verify;
pub mod waveform;

mod quad;

pub use model::{
    ChannelState, FadingModel, ModelError, SecrecyMetrics, SystemParams, TargetRate,
};
