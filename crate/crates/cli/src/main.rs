use ansec_cli::{
    cmd_fig2, cmd_fig3, cmd_fig4, cmd_fig5, cmd_simulate, cmd_sweep, cmd_verify, Axis, CliError,
    Fig2Cfg, Fig3Cfg, Fig4Cfg, Fig5Cfg, Format, SimulateCfg, SweepSpec, Table,
};
use ansec::FadingModel;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "ansec",
    version,
    about = "Secrecy-analysis toolkit: canned figure sweeps, verification suites, \
             config-file sweeps, and one-shot waveform runs"
)]
struct Cli {
    /// Write the table to this path instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Toggle {
    On,
    Off,
}

impl Toggle {
    fn is_on(self) -> bool {
        matches!(self, Toggle::On)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Secrecy capacity versus source power, one curve per g2 value.
    Fig2(Fig2Args),
    /// Secrecy capacity over the (P_A, P_B) plane.
    Fig3(Fig3Args),
    /// Ergodic secrecy capacity versus source power under fading.
    Fig4(Fig4Args),
    /// Secrecy outage probability versus the AN power budget.
    Fig5(Fig5Args),
    /// Run a verification suite and report per-check margins.
    Verify(VerifyArgs),
    /// Execute a sweep described by a TOML file.
    Sweep(SweepArgs),
    /// One-shot waveform run: empirical versus analytic quantities.
    Simulate(SimulateArgs),
}

fn axis(base: Axis, start: Option<f64>, stop: Option<f64>, points: Option<usize>) -> Axis {
    Axis {
        start: start.unwrap_or(base.start),
        stop: stop.unwrap_or(base.stop),
        count: points.unwrap_or(base.count),
        log: base.log,
    }
}

#[derive(Args)]
struct Fig2Args {
    /// AN power at the helper.
    #[arg(long)]
    pa: Option<f64>,
    /// AN power at the receiver.
    #[arg(long)]
    pb: Option<f64>,
    /// Noise power.
    #[arg(long)]
    n0: Option<f64>,
    /// Residual self-interference gain.
    #[arg(long)]
    lambda: Option<f64>,
    /// Main-channel gain.
    #[arg(long)]
    g1: Option<f64>,
    /// Receiver-to-eavesdropper gain; repeat the flag for several curves.
    #[arg(long)]
    g2: Vec<f64>,
    /// Eavesdropper-channel gain.
    #[arg(long)]
    g3: Option<f64>,
    #[arg(long)]
    ps_start: Option<f64>,
    #[arg(long)]
    ps_stop: Option<f64>,
    #[arg(long)]
    ps_points: Option<usize>,
}

#[derive(Args)]
struct Fig3Args {
    /// Source power.
    #[arg(long)]
    ps: Option<f64>,
    #[arg(long)]
    n0: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    g1: Option<f64>,
    #[arg(long)]
    g2: Option<f64>,
    #[arg(long)]
    g3: Option<f64>,
    #[arg(long)]
    pa_start: Option<f64>,
    #[arg(long)]
    pa_stop: Option<f64>,
    #[arg(long)]
    pa_points: Option<usize>,
    #[arg(long)]
    pb_start: Option<f64>,
    #[arg(long)]
    pb_stop: Option<f64>,
    #[arg(long)]
    pb_points: Option<usize>,
}

#[derive(Args)]
struct Fig4Args {
    #[arg(long)]
    pa: Option<f64>,
    #[arg(long)]
    pb: Option<f64>,
    #[arg(long)]
    n0: Option<f64>,
    /// Residual self-interference gain; repeat the flag for several curves.
    #[arg(long)]
    lambda: Vec<f64>,
    #[arg(long)]
    sigma1sq: Option<f64>,
    #[arg(long)]
    sigma2sq: Option<f64>,
    #[arg(long)]
    sigma3sq: Option<f64>,
    /// Monte Carlo sample count per row.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Halve the capacity to account for the AN phase.
    #[arg(long, value_enum, default_value_t = Toggle::On)]
    half_time: Toggle,
    #[arg(long)]
    ps_start: Option<f64>,
    #[arg(long)]
    ps_stop: Option<f64>,
    #[arg(long)]
    ps_points: Option<usize>,
}

#[derive(Args)]
struct Fig5Args {
    #[arg(long)]
    ps: Option<f64>,
    #[arg(long)]
    n0: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    sigma1sq: Option<f64>,
    #[arg(long)]
    sigma2sq: Option<f64>,
    #[arg(long)]
    sigma3sq: Option<f64>,
    /// Target secrecy rate; repeat the flag for several curves.
    #[arg(long)]
    rs: Vec<f64>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    pan_start: Option<f64>,
    #[arg(long)]
    pan_stop: Option<f64>,
    #[arg(long)]
    pan_points: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or "all".
    #[arg(default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Override the suite's dominant sample count.
    #[arg(long)]
    samples: Option<u64>,
}

#[derive(Args)]
struct SweepArgs {
    /// TOML sweep description.
    spec_file: PathBuf,
    /// Override the estimator seed from the file.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the estimator sample count from the file.
    #[arg(long)]
    samples: Option<u64>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    ps: Option<f64>,
    #[arg(long)]
    pa: Option<f64>,
    #[arg(long)]
    pb: Option<f64>,
    #[arg(long)]
    n0: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    g1: Option<f64>,
    #[arg(long)]
    g2: Option<f64>,
    #[arg(long)]
    g3: Option<f64>,
    /// Symbols per phase.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    phase_steps: Option<usize>,
    #[arg(long)]
    mag_steps: Option<usize>,
    /// Upper magnitude bound of the eavesdropper's sweep.
    #[arg(long)]
    mag_max: Option<f64>,
}

fn fading_override(
    base: &FadingModel,
    s1: Option<f64>,
    s2: Option<f64>,
    s3: Option<f64>,
) -> Result<FadingModel, CliError> {
    FadingModel::new(
        s1.unwrap_or(base.sigma1_sq),
        s2.unwrap_or(base.sigma2_sq),
        s3.unwrap_or(base.sigma3_sq),
    )
    .map_err(CliError::from)
}

fn emit(table: &Table, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let text = table.render(format);
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let format: Format = cli.format.into();
    let out = cli.out.as_deref();
    match cli.command {
        Cmd::Fig2(a) => {
            let d = Fig2Cfg::default();
            let cfg = Fig2Cfg {
                ps: axis(d.ps, a.ps_start, a.ps_stop, a.ps_points),
                g2_values: if a.g2.is_empty() { d.g2_values } else { a.g2 },
                pa: a.pa.unwrap_or(d.pa),
                pb: a.pb.unwrap_or(d.pb),
                n0: a.n0.unwrap_or(d.n0),
                lambda: a.lambda.unwrap_or(d.lambda),
                g1: a.g1.unwrap_or(d.g1),
                g3: a.g3.unwrap_or(d.g3),
            };
            emit(&cmd_fig2(&cfg)?, format, out)?;
        }
        Cmd::Fig3(a) => {
            let d = Fig3Cfg::default();
            let cfg = Fig3Cfg {
                pa: axis(d.pa, a.pa_start, a.pa_stop, a.pa_points),
                pb: axis(d.pb, a.pb_start, a.pb_stop, a.pb_points),
                ps: a.ps.unwrap_or(d.ps),
                n0: a.n0.unwrap_or(d.n0),
                lambda: a.lambda.unwrap_or(d.lambda),
                g1: a.g1.unwrap_or(d.g1),
                g2: a.g2.unwrap_or(d.g2),
                g3: a.g3.unwrap_or(d.g3),
            };
            emit(&cmd_fig3(&cfg)?, format, out)?;
        }
        Cmd::Fig4(a) => {
            let d = Fig4Cfg::default();
            let cfg = Fig4Cfg {
                ps: axis(d.ps, a.ps_start, a.ps_stop, a.ps_points),
                lambdas: if a.lambda.is_empty() { d.lambdas } else { a.lambda },
                pa: a.pa.unwrap_or(d.pa),
                pb: a.pb.unwrap_or(d.pb),
                n0: a.n0.unwrap_or(d.n0),
                fading: fading_override(&d.fading, a.sigma1sq, a.sigma2sq, a.sigma3sq)?,
                samples: a.samples.unwrap_or(d.samples),
                seed: a.seed.unwrap_or(d.seed),
                half_time: a.half_time.is_on(),
                quad: d.quad,
            };
            emit(&cmd_fig4(&cfg)?, format, out)?;
        }
        Cmd::Fig5(a) => {
            let d = Fig5Cfg::default();
            let cfg = Fig5Cfg {
                pan: axis(d.pan, a.pan_start, a.pan_stop, a.pan_points),
                rs_values: if a.rs.is_empty() { d.rs_values } else { a.rs },
                ps: a.ps.unwrap_or(d.ps),
                n0: a.n0.unwrap_or(d.n0),
                lambda: a.lambda.unwrap_or(d.lambda),
                fading: fading_override(&d.fading, a.sigma1sq, a.sigma2sq, a.sigma3sq)?,
                samples: a.samples.unwrap_or(d.samples),
                seed: a.seed.unwrap_or(d.seed),
                quad: d.quad,
            };
            emit(&cmd_fig5(&cfg)?, format, out)?;
        }
        Cmd::Verify(a) => {
            let (table, passed) = cmd_verify(&a.suite, a.seed, a.samples)?;
            emit(&table, format, out)?;
            eprintln!("verify: {}", if passed { "PASS" } else { "FAIL" });
            if !passed {
                return Ok(2);
            }
        }
        Cmd::Sweep(a) => {
            let mut spec = SweepSpec::load(&a.spec_file)?;
            if let Some(seed) = a.seed {
                spec.estimator.seed = seed;
            }
            if let Some(samples) = a.samples {
                spec.estimator.samples = samples;
            }
            let table = cmd_sweep(&spec)?;
            // --out wins over the file's own output path.
            let file_out = spec.output.as_ref().map(|o| PathBuf::from(&o.path));
            emit(&table, format, out.or(file_out.as_deref()))?;
        }
        Cmd::Simulate(a) => {
            let d = SimulateCfg::default();
            let cfg = SimulateCfg {
                ps: a.ps.unwrap_or(d.ps),
                pa: a.pa.unwrap_or(d.pa),
                pb: a.pb.unwrap_or(d.pb),
                n0: a.n0.unwrap_or(d.n0),
                lambda: a.lambda.unwrap_or(d.lambda),
                g1: a.g1.unwrap_or(d.g1),
                g2: a.g2.unwrap_or(d.g2),
                g3: a.g3.unwrap_or(d.g3),
                n_symbols: a.samples.unwrap_or(d.n_symbols),
                seed: a.seed.unwrap_or(d.seed),
                phase_steps: a.phase_steps.unwrap_or(d.phase_steps),
                mag_steps: a.mag_steps.unwrap_or(d.mag_steps),
                mag_max: a.mag_max.unwrap_or(d.mag_max),
            };
            emit(&cmd_simulate(&cfg)?, format, out)?;
        }
    }
    Ok(0)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
