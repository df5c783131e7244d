//! Config-file sweeps. The file is TOML parsed strictly: unknown keys
//! are rejected with line/column diagnostics, and cross-section rules
//! (exactly one of [channel] or [fading], the swept parameter matching
//! the mode) are checked before anything runs.
//!
//! ```toml
//! [sweep]
//! parameter = "lambda"   # ps pa pb n0 lambda g1 g2 g3 sigma1sq sigma2sq sigma3sq rs
//! start = 1e-5
//! stop = 1e-1
//! count = 17
//! scale = "log"          # or "linear"
//!
//! [system]
//! ps = 200.0
//! pa = 200.0
//! pb = 200.0
//! n0 = 1.0
//! lambda = 1e-4
//!
//! [fading]               # or a [channel] section with g1/g2/g3
//! sigma1sq = 1.0
//! sigma2sq = 1.0
//! sigma3sq = 1.0
//!
//! [rates]
//! rs = [0.5, 1.0]
//!
//! [estimator]
//! kind = "both"          # quadrature | mc | both
//! samples = 1000000
//! seed = 42
//! half_time = true
//! ```

use crate::figures::metrics_at;
use crate::output::{Axis, Cell, Table};
use crate::{check_nonneg, non_convergence, CliError};
use ansec::closedform::{baseline_no_an, g1_threshold, hx_star, rate_condition};
use ansec::fading::{
    baseline_ergodic_mc, baseline_outage_mc, ergodic_secrecy_capacity_mc,
    ergodic_secrecy_capacity_quadrature, outage_probability_mc, outage_probability_quadrature,
    OutageTest, QuadratureConfig,
};
use ansec::waveform::{bob_cancel, eve_cancel, run_phase1, run_phase2, SimConfig};
use ansec::{ChannelState, FadingModel, SystemParams, TargetRate};
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub sweep: SweepSection,
    pub system: SystemSection,
    pub channel: Option<ChannelSection>,
    pub fading: Option<FadingSection>,
    pub rates: Option<RatesSection>,
    #[serde(default)]
    pub estimator: EstimatorSection,
    pub waveform: Option<WaveformSection>,
    pub output: Option<OutputSection>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub parameter: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default)]
    pub scale: Scale,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSection {
    pub ps: f64,
    pub pa: f64,
    pub pb: f64,
    pub n0: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSection {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FadingSection {
    pub sigma1sq: f64,
    pub sigma2sq: f64,
    pub sigma3sq: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatesSection {
    pub rs: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimatorSection {
    #[serde(default)]
    pub kind: EstimatorKind,
    #[serde(default = "default_samples")]
    pub samples: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_half_time")]
    pub half_time: bool,
}

fn default_samples() -> u64 {
    1_000_000
}
fn default_seed() -> u64 {
    42
}
fn default_half_time() -> bool {
    true
}

impl Default for EstimatorSection {
    fn default() -> Self {
        EstimatorSection {
            kind: EstimatorKind::default(),
            samples: default_samples(),
            seed: default_seed(),
            half_time: default_half_time(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorKind {
    Quadrature,
    Mc,
    #[default]
    Both,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveformSection {
    pub n_symbols: usize,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub path: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Param {
    Ps,
    Pa,
    Pb,
    N0,
    Lambda,
    G1,
    G2,
    G3,
    Sigma1Sq,
    Sigma2Sq,
    Sigma3Sq,
    Rs,
}

const PARAM_NAMES: [(&str, Param); 12] = [
    ("ps", Param::Ps),
    ("pa", Param::Pa),
    ("pb", Param::Pb),
    ("n0", Param::N0),
    ("lambda", Param::Lambda),
    ("g1", Param::G1),
    ("g2", Param::G2),
    ("g3", Param::G3),
    ("sigma1sq", Param::Sigma1Sq),
    ("sigma2sq", Param::Sigma2Sq),
    ("sigma3sq", Param::Sigma3Sq),
    ("rs", Param::Rs),
];

impl Param {
    fn parse(name: &str) -> Result<Param, CliError> {
        PARAM_NAMES
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, p)| *p)
            .ok_or_else(|| {
                let known: Vec<&str> = PARAM_NAMES.iter().map(|(n, _)| *n).collect();
                CliError::Usage(format!(
                    "sweep.parameter {name:?} is not recognized; expected one of {}",
                    known.join(", ")
                ))
            })
    }

    fn column(&self) -> &'static str {
        match self {
            Param::Ps => "p_s",
            Param::Pa => "p_a",
            Param::Pb => "p_b",
            Param::N0 => "n0",
            Param::Lambda => "lambda",
            Param::G1 => "g1",
            Param::G2 => "g2",
            Param::G3 => "g3",
            Param::Sigma1Sq => "sigma1_sq",
            Param::Sigma2Sq => "sigma2_sq",
            Param::Sigma3Sq => "sigma3_sq",
            Param::Rs => "r_s",
        }
    }
}

impl SweepSpec {
    pub fn load(path: &Path) -> Result<SweepSpec, CliError> {
        let text = std::fs::read_to_string(path)?;
        SweepSpec::parse(&text)
    }

    /// Parses and validates; parse errors keep toml's line/column text.
    pub fn parse(text: &str) -> Result<SweepSpec, CliError> {
        let spec: SweepSpec =
            toml::from_str(text).map_err(|e| CliError::Usage(format!("sweep file: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    fn param(&self) -> Result<Param, CliError> {
        Param::parse(&self.sweep.parameter)
    }

    fn axis(&self) -> Axis {
        Axis {
            start: self.sweep.start,
            stop: self.sweep.stop,
            count: self.sweep.count,
            log: self.sweep.scale == Scale::Log,
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        let param = self.param()?;
        self.axis().validate("sweep grid")?;
        match (&self.channel, &self.fading) {
            (Some(_), Some(_)) => {
                return Err(CliError::Usage(
                    "[channel] and [fading] are mutually exclusive; keep exactly one".into(),
                ))
            }
            (None, None) => {
                return Err(CliError::Usage(
                    "one of [channel] or [fading] is required".into(),
                ))
            }
            _ => {}
        }
        let gain_param = matches!(param, Param::G1 | Param::G2 | Param::G3);
        if gain_param && self.channel.is_none() {
            return Err(CliError::Usage(format!(
                "sweep.parameter {:?} requires a [channel] section",
                self.sweep.parameter
            )));
        }
        let sigma_param = matches!(param, Param::Sigma1Sq | Param::Sigma2Sq | Param::Sigma3Sq);
        if sigma_param && self.fading.is_none() {
            return Err(CliError::Usage(format!(
                "sweep.parameter {:?} requires a [fading] section",
                self.sweep.parameter
            )));
        }
        if param == Param::Rs && self.rates.is_some() {
            return Err(CliError::Usage(
                "[rates] may not be combined with sweeping rs".into(),
            ));
        }
        if let Some(rates) = &self.rates {
            if rates.rs.is_empty() {
                return Err(CliError::Usage("rates.rs must not be empty".into()));
            }
        }
        if self.waveform.is_some() && self.channel.is_none() {
            return Err(CliError::Usage(
                "[waveform] requires a [channel] section (fixed gains)".into(),
            ));
        }
        if self.estimator.samples == 0 {
            return Err(CliError::Usage("estimator.samples must be at least 1".into()));
        }
        if let Some(ch) = &self.channel {
            check_nonneg("channel.g1", ch.g1)?;
            check_nonneg("channel.g2", ch.g2)?;
            check_nonneg("channel.g3", ch.g3)?;
        }
        Ok(())
    }
}

/// One sweep point after the swept parameter has been substituted in.
struct Point {
    params: SystemParams,
    channel: Option<(f64, f64, f64)>,
    fading: Option<FadingModel>,
    rs: Option<f64>,
}

fn materialize(spec: &SweepSpec, param: Param, value: f64, rs: Option<f64>) -> Result<Point, CliError> {
    let s = &spec.system;
    let (mut ps, mut pa, mut pb, mut n0, mut lambda) = (s.ps, s.pa, s.pb, s.n0, s.lambda);
    let mut channel = spec.channel.as_ref().map(|c| (c.g1, c.g2, c.g3));
    let mut sigmas = spec
        .fading
        .as_ref()
        .map(|f| (f.sigma1sq, f.sigma2sq, f.sigma3sq));
    let mut rs = rs;
    match param {
        Param::Ps => ps = value,
        Param::Pa => pa = value,
        Param::Pb => pb = value,
        Param::N0 => n0 = value,
        Param::Lambda => lambda = value,
        Param::G1 => channel.as_mut().expect("validated").0 = value,
        Param::G2 => channel.as_mut().expect("validated").1 = value,
        Param::G3 => channel.as_mut().expect("validated").2 = value,
        Param::Sigma1Sq => sigmas.as_mut().expect("validated").0 = value,
        Param::Sigma2Sq => sigmas.as_mut().expect("validated").1 = value,
        Param::Sigma3Sq => sigmas.as_mut().expect("validated").2 = value,
        Param::Rs => rs = Some(value),
    }
    let fading = match sigmas {
        Some((s1, s2, s3)) => Some(FadingModel::new(s1, s2, s3)?),
        None => None,
    };
    Ok(Point {
        params: SystemParams::new(ps, pa, pb, n0, lambda)?,
        channel,
        fading,
        rs,
    })
}

/// Rate values attached to each grid point: the swept values themselves
/// when rs is the parameter, the [rates] list otherwise, or a single
/// "no rate" slot.
fn rate_slots(spec: &SweepSpec, param: Param) -> Vec<Option<f64>> {
    if param == Param::Rs {
        vec![None] // filled per point from the grid value
    } else if let Some(rates) = &spec.rates {
        rates.rs.iter().copied().map(Some).collect()
    } else {
        vec![None]
    }
}

pub fn cmd_sweep(spec: &SweepSpec) -> Result<Table, CliError> {
    spec.validate()?;
    let param = spec.param()?;
    let points = spec.axis().points();
    if spec.channel.is_some() {
        sweep_channel(spec, param, &points)
    } else {
        sweep_fading(spec, param, &points)
    }
}

fn sweep_channel(spec: &SweepSpec, param: Param, points: &[f64]) -> Result<Table, CliError> {
    let with_rates = param == Param::Rs || spec.rates.is_some();
    let mut columns: Vec<&str> = vec![param.column()];
    if with_rates && param != Param::Rs {
        columns.push("r_s");
    }
    columns.extend(["c_b", "c_e", "c_s", "c_s_no_an"]);
    if with_rates {
        columns.extend(["g1_threshold", "rate_ok"]);
    }
    if spec.waveform.is_some() {
        columns.extend(["sinr_bob_sim", "sinr_eve_sim"]);
    }
    let mut table = Table::new(&columns);
    for slot in rate_slots(spec, param) {
        for &value in points {
            let point = materialize(spec, param, value, slot)?;
            let (g1, g2, g3) = point.channel.expect("channel mode");
            let metrics = metrics_at(&point.params, g1, g2, g3)?;
            let mut row: Vec<Cell> = vec![value.into()];
            if with_rates && param != Param::Rs {
                row.push(slot.expect("rates listed").into());
            }
            row.extend([
                Cell::Num(metrics.c_b()),
                Cell::Num(metrics.c_e()),
                Cell::Num(metrics.c_s()),
                Cell::Num(baseline_no_an(&point.params, g1, g3)),
            ]);
            if with_rates {
                let rate = TargetRate::new(point.rs.expect("rate slot"))?;
                let threshold = g1_threshold(&point.params, g2, g3, &rate)
                    .map(|t| t.g1l)
                    .unwrap_or(f64::INFINITY);
                let ok = rate_condition(&point.params, g1, g2, g3, &rate);
                row.push(threshold.into());
                row.push(if ok { 1.0 } else { 0.0 }.into());
            }
            if let Some(wf) = &spec.waveform {
                let (bob, eve) = simulate_point(&point.params, g1, g2, g3, wf, spec)?;
                row.push(bob.into());
                row.push(eve.into());
            }
            table.push_row(row);
        }
    }
    Ok(table)
}

fn simulate_point(
    params: &SystemParams,
    g1: f64,
    g2: f64,
    g3: f64,
    wf: &WaveformSection,
    spec: &SweepSpec,
) -> Result<(f64, f64), CliError> {
    let ch = ChannelState::from_gains(g1, g2, g3, 0.0, 0.0, 0.0)?;
    let cfg = SimConfig::new(wf.n_symbols, wf.seed.unwrap_or(spec.estimator.seed))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let p1 = run_phase1(params, &ch, &cfg);
    let p2 = run_phase2(params, &ch, &p1, &cfg);
    let bob = bob_cancel(&ch, params, &p1, &p2);
    let hx = hx_star(params, &ch);
    let eve = eve_cancel(&ch, params, &p1, &p2, &hx);
    Ok((bob.empirical_sinr, eve.empirical_sinr))
}

fn sweep_fading(spec: &SweepSpec, param: Param, points: &[f64]) -> Result<Table, CliError> {
    let kind = spec.estimator.kind;
    let with_rates = param == Param::Rs || spec.rates.is_some();
    let quad_cols = kind != EstimatorKind::Mc;
    let mc_cols = kind != EstimatorKind::Quadrature;
    let mut columns: Vec<&str> = vec![param.column()];
    if with_rates && param != Param::Rs {
        columns.push("r_s");
    }
    if quad_cols {
        columns.push("ergodic_cs_quadrature");
    }
    if mc_cols {
        columns.extend(["ergodic_cs_mc", "ergodic_mc_stderr"]);
    }
    columns.push("baseline_ergodic_cs");
    if with_rates {
        if quad_cols {
            columns.push("p_out_quadrature");
        }
        if mc_cols {
            columns.extend(["p_out_mc", "p_out_mc_stderr"]);
        }
        columns.push("p_out_baseline");
    }
    let mut table = Table::new(&columns);
    let quad_cfg = QuadratureConfig::default();
    let est = &spec.estimator;
    for slot in rate_slots(spec, param) {
        for &value in points {
            let point = materialize(spec, param, value, slot)?;
            let fading = point.fading.as_ref().expect("fading mode");
            let mut row: Vec<Cell> = vec![value.into()];
            if with_rates && param != Param::Rs {
                row.push(slot.expect("rates listed").into());
            }
            if quad_cols {
                let q = ergodic_secrecy_capacity_quadrature(
                    &point.params,
                    fading,
                    &quad_cfg,
                    est.half_time,
                )
                .map_err(non_convergence("ergodic secrecy capacity"))?;
                row.push(q.into());
            }
            if mc_cols {
                let mc = ergodic_secrecy_capacity_mc(
                    &point.params,
                    fading,
                    est.seed,
                    est.samples,
                    est.half_time,
                );
                row.push(mc.value.into());
                row.push(mc.std_error.into());
            }
            let base = baseline_ergodic_mc(&point.params, fading, est.seed, est.samples);
            row.push(base.value.into());
            if with_rates {
                let rate = TargetRate::new(point.rs.expect("rate slot"))?;
                if quad_cols {
                    let q =
                        outage_probability_quadrature(&point.params, fading, &rate, &quad_cfg)
                            .map_err(non_convergence("outage probability"))?;
                    row.push(q.into());
                }
                if mc_cols {
                    let mc = outage_probability_mc(
                        &point.params,
                        fading,
                        &rate,
                        est.seed,
                        est.samples,
                        OutageTest::Threshold,
                    );
                    row.push(mc.value.into());
                    row.push(mc.std_error.into());
                }
                let base =
                    baseline_outage_mc(&point.params, fading, &rate, est.seed, est.samples);
                row.push(base.value.into());
            }
            table.push_row(row);
        }
    }
    Ok(table)
}
