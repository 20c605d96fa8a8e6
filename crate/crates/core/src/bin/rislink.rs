use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rislink::cli::{
    cmd_metric, cmd_validate, preset_fig1, preset_fig2, preset_fig3, CliError, MethodSel, Metric, MetricRequest,
    PresetOptions, RawConfig, SettingsOverride, Sweep, SweepTable, ValidateOptions,
};
use rislink::Modulation;

/// Outage, BER and ergodic capacity of RIS-assisted links.
#[derive(Parser)]
#[command(name = "rislink", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one metric, optionally over a parameter sweep.
    Metric(MetricArgs),
    /// Compare the analytical results with Monte-Carlo; exit 3 on |z| > 4.
    Validate(ValidateArgs),
    /// OP and EC vs transmit power, random phase shifting, N in {16, 32, 64, 128}.
    Fig1(PresetArgs),
    /// BPSK BER vs transmit power for both designs, with and without direct link.
    Fig2(PresetArgs),
    /// EC vs source-RIS distance on a 100 m path, three phase designs.
    Fig3(PresetArgs),
}

#[derive(Args)]
struct MetricArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value = "op")]
    metric: String,
    #[arg(long, default_value = "all")]
    method: String,
    /// key=start:stop:steps[:log]
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    gamma_th_db: Option<f64>,
    #[arg(long)]
    modulation: Option<String>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Scale the analytical model's first-hop power (self-test of the detector).
    #[arg(long, hide = true, default_value_t = 1.0)]
    lambda_scale: f64,
}

#[derive(Args)]
struct PresetArgs {
    #[arg(long, default_value_t = 100_000)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn finish_table(table: SweepTable, out: Option<&PathBuf>) -> Result<(), CliError> {
    emit(&table.to_csv(), out)?;
    for r in &table.rows {
        if let Err(msg) = &r.estimate {
            eprintln!("{} = {}: {} {}: {msg}", table.param, r.x, r.metric, r.method.name());
        }
    }
    match table.failures() {
        0 => Ok(()),
        n => Err(CliError::Numerical(format!("{n} row(s) failed"))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Metric(a) => {
            let raw = RawConfig::from_file(&a.config)?;
            let modulation = a
                .modulation
                .as_deref()
                .map(|s| s.parse::<Modulation>())
                .transpose()
                .map_err(CliError::Usage)?;
            let req = MetricRequest {
                metric: Metric::parse(&a.metric)?,
                methods: MethodSel::parse(&a.method)?,
                sweep: a.sweep.as_deref().map(Sweep::parse).transpose()?,
                flags: SettingsOverride {
                    gamma_th_db: a.gamma_th_db,
                    modulation,
                    trials: a.trials,
                    seed: a.seed,
                },
            };
            finish_table(cmd_metric(&raw, &req)?, a.out.as_ref())
        }
        Command::Validate(a) => {
            let raw = RawConfig::from_file(&a.config)?;
            let opts = ValidateOptions {
                trials: a.trials,
                seed: a.seed,
                lambda_scale: a.lambda_scale,
            };
            let report = cmd_validate(&raw, &opts)?;
            emit(&report.to_csv(), a.out.as_ref())?;
            match report.failures() {
                0 => Ok(()),
                n => Err(CliError::Validation(n)),
            }
        }
        Command::Fig1(a) | Command::Fig2(a) | Command::Fig3(a) if a.trials == 0 => {
            Err(CliError::Usage("--trials must be positive".into()))
        }
        Command::Fig1(a) => finish_table(preset_fig1(&preset(&a))?, a.out.as_ref()),
        Command::Fig2(a) => finish_table(preset_fig2(&preset(&a))?, a.out.as_ref()),
        Command::Fig3(a) => finish_table(preset_fig3(&preset(&a))?, a.out.as_ref()),
    }
}

fn preset(a: &PresetArgs) -> PresetOptions {
    PresetOptions {
        trials: a.trials,
        seed: a.seed,
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("RISLINK_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("RISLINK_THREADS='{value}' is not a positive integer")))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rislink: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
