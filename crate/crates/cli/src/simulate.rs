//! One-shot waveform run: simulate both phases at fixed gains, apply
//! each receiver's cancellation, and report empirical quantities next to
//! their closed-form values, including the coefficient recovered by the
//! eavesdropper's two-stage sweep.

use crate::output::{Cell, Table};
use crate::{check_nonneg, CliError};
use ansec::closedform::{en_residual, hx_star, sinr_bob, sinr_eve};
use ansec::waveform::{
    bob_cancel, eve_cancel, eve_exhaust_search, eve_residual_variance, run_phase1, run_phase2,
    SimConfig,
};
use ansec::{ChannelState, SystemParams};

#[derive(Debug, Clone)]
pub struct SimulateCfg {
    pub ps: f64,
    pub pa: f64,
    pub pb: f64,
    pub n0: f64,
    pub lambda: f64,
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub n_symbols: usize,
    pub seed: u64,
    pub phase_steps: usize,
    pub mag_steps: usize,
    pub mag_max: f64,
}

impl Default for SimulateCfg {
    fn default() -> Self {
        SimulateCfg {
            ps: 200.0,
            pa: 200.0,
            pb: 200.0,
            n0: 1.0,
            lambda: 1e-4,
            g1: 0.4,
            g2: 0.7,
            g3: 0.6,
            n_symbols: 100_000,
            seed: 42,
            phase_steps: 720,
            mag_steps: 2000,
            mag_max: 2.0,
        }
    }
}

pub fn cmd_simulate(cfg: &SimulateCfg) -> Result<Table, CliError> {
    check_nonneg("g1", cfg.g1)?;
    check_nonneg("g2", cfg.g2)?;
    check_nonneg("g3", cfg.g3)?;
    let params = SystemParams::new(cfg.ps, cfg.pa, cfg.pb, cfg.n0, cfg.lambda)?;
    let ch = ChannelState::from_gains(cfg.g1, cfg.g2, cfg.g3, 0.0, 0.0, 0.0)?;
    let sim = SimConfig::new(cfg.n_symbols, cfg.seed).map_err(|e| CliError::Usage(e.to_string()))?;

    let p1 = run_phase1(&params, &ch, &sim);
    let p2 = run_phase2(&params, &ch, &p1, &sim);
    let bob = bob_cancel(&ch, &params, &p1, &p2);
    let best = hx_star(&params, &ch);
    let eve = eve_cancel(&ch, &params, &p1, &p2, &best);
    let found = eve_exhaust_search(&p1, &p2, cfg.phase_steps, cfg.mag_steps, cfg.mag_max)
        .map_err(|e| CliError::Usage(e.to_string()))?;

    let mut table = Table::new(&["quantity", "analytic", "observed"]);
    let mut push = |name: &str, analytic: f64, observed: f64| {
        table.push_row(vec![Cell::Text(name.to_string()), analytic.into(), observed.into()]);
    };
    push("sinr_bob", sinr_bob(&params, cfg.g1), bob.empirical_sinr);
    push(
        "sinr_eve",
        sinr_eve(&params, cfg.g1, cfg.g2, cfg.g3),
        eve.empirical_sinr,
    );
    push("hx_magnitude", best.magnitude(), found.magnitude());
    push("hx_phase", best.theta(), found.theta());
    push(
        "eve_residual_power",
        en_residual(&params, &ch, &best),
        eve_residual_variance(&p1, &p2, &found),
    );
    Ok(table)
}
