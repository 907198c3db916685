//! `fewbit` — rate analysis and Monte Carlo experiments for MIMO links with
//! few-bit ADCs and limited feedback.

mod config;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use fewbit_core::correlation::CorrelationMap;
use fewbit_core::quantizer::{estimate_nmse, AdcSpec, Resolution};
use fewbit_core::rate::{
    bound_mu_rate_loss, db_to_linear, linear_to_db, rate_miso_multibit,
    rate_miso_multibit_rvq_approx, rate_miso_multibit_rvq_bound,
};
use fewbit_core::simulate::{preset, run_sweep, ExperimentConfig, DEFAULT_SEED};
use fewbit_core::Error as CoreError;

use config::{parse_config, parse_resolution, parse_snr_spec};
use table::{fmt_value, OutputTable};

const USAGE: &str = "\
fewbit - achievable rates of MIMO links with few-bit ADCs and limited feedback

USAGE:
  fewbit constants [--verify N] [--seed S] [--output PATH]
      Quantizer constants table (stepsize, NMSE, derived rates per resolution);
      --verify N appends a Monte Carlo NMSE estimate from N samples.

  fewbit fmap --b B [--points N] [--output PATH]
      Correlation transfer f(phi) of the B-bit quantizer against the linear
      approximation (1 - eta) phi. Default 201 grid points.

  fewbit rate --scenario miso-multibit --nt N --b B [--B F] --snr SPEC [--output PATH]
  fewbit rate --scenario mu-bound --nt N --k K --b B --B F --snr SPEC [--output PATH]
      Closed-form rate and bound curves (no Monte Carlo).

  fewbit experiment (--preset NAME | --config PATH) [--seed S] [--trials N] [--output PATH]
      Monte Carlo sweep. Presets: fig4 fig5a fig5b fig6 fig7 fig8 fig9 fig10 fig11.
      Config files use flat key=value lines (see README).

COMMON:
  --seed S     Master seed (default: env FEWBIT_SEED, else 1).
  --output P   Write the table to P atomically instead of stdout.
  SNR SPEC     start:step:stop (dB) or a comma-separated list.

EXIT CODES:
  0 success, 1 I/O failure, 2 usage error, 3 config error, 4 numerical failure.
";

enum CliError {
    Usage(String),
    Config(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Config(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Config(m) | CliError::Numerical(m) | CliError::Io(m) => {
                m
            }
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Config { .. } | CoreError::UnknownPreset(_) => {
                CliError::Config(e.to_string())
            }
            CoreError::Domain(_) | CoreError::Dimension(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            if matches!(e, CliError::Usage(_)) {
                eprintln!("\n{USAGE}");
            }
            ExitCode::from(e.code())
        }
    }
}

/// Minimal flag scanner: every flag takes one value.
struct Flags {
    pairs: Vec<(String, String)>,
}

impl Flags {
    fn parse(args: &[String]) -> Result<Self, CliError> {
        let mut pairs = Vec::new();
        let mut it = args.iter();
        while let Some(arg) = it.next() {
            let key = arg
                .strip_prefix("--")
                .ok_or_else(|| CliError::Usage(format!("unexpected argument `{arg}`")))?;
            let value = it
                .next()
                .ok_or_else(|| CliError::Usage(format!("flag --{key} needs a value")))?;
            pairs.push((key.to_string(), value.clone()));
        }
        Ok(Self { pairs })
    }

    fn take(&mut self, key: &str) -> Option<String> {
        let pos = self.pairs.iter().position(|(k, _)| k == key)?;
        Some(self.pairs.remove(pos).1)
    }

    fn finish(self) -> Result<(), CliError> {
        if let Some((k, _)) = self.pairs.first() {
            return Err(CliError::Usage(format!("unknown flag --{k}")));
        }
        Ok(())
    }
}

fn parse_num<T: std::str::FromStr>(value: &str, what: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    value
        .parse::<T>()
        .map_err(|e| CliError::Usage(format!("bad {what} `{value}`: {e}")))
}

fn default_seed() -> Result<u64, CliError> {
    match std::env::var("FEWBIT_SEED") {
        Ok(v) => v
            .parse::<u64>()
            .map_err(|e| CliError::Config(format!("FEWBIT_SEED is not a seed: {e}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn seed_from(flags: &mut Flags) -> Result<u64, CliError> {
    match flags.take("seed") {
        Some(v) => parse_num::<u64>(&v, "seed"),
        None => default_seed(),
    }
}

fn emit(table: &OutputTable, output: Option<PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => table
            .write_to(&path)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{}", table.render());
            Ok(())
        }
    }
}

fn run(args: &[String]) -> Result<(), CliError> {
    let Some(command) = args.first() else {
        return Err(CliError::Usage("missing subcommand".into()));
    };
    if command == "--help" || command == "-h" || command == "help" {
        print!("{USAGE}");
        return Ok(());
    }
    let mut flags = Flags::parse(&args[1..])?;
    let output = flags.take("output").map(PathBuf::from);
    match command.as_str() {
        "constants" => cmd_constants(flags, output),
        "fmap" => cmd_fmap(flags, output),
        "rate" => cmd_rate(flags, output),
        "experiment" => cmd_experiment(flags, output),
        other => Err(CliError::Usage(format!("unknown subcommand `{other}`"))),
    }
}

fn cmd_constants(mut flags: Flags, output: Option<PathBuf>) -> Result<(), CliError> {
    let verify: Option<u64> = match flags.take("verify") {
        Some(v) => {
            // Accept scientific notation like 1e7.
            let samples = parse_num::<f64>(&v, "sample count")?;
            if !samples.is_finite() || samples < 1.0e4 {
                return Err(CliError::Usage(
                    "--verify needs at least 1e4 samples".into(),
                ));
            }
            Some(samples.round() as u64)
        }
        None => None,
    };
    let seed = seed_from(&mut flags)?;
    flags.finish()?;

    let mut columns = vec!["b", "stepsize", "nmse", "gain_db", "sqr_bits"];
    if verify.is_some() {
        columns.push("nmse_estimate");
    }
    let mut table = OutputTable::new(&columns);
    table.meta("tool", format!("fewbit {}", env!("CARGO_PKG_VERSION")));
    table.meta("command", "constants");
    table.meta("seed", seed);
    if let Some(n) = verify {
        table.meta("verify_samples", n);
    }
    for bits in 1..=8u8 {
        let spec = AdcSpec::new(bits).map_err(CliError::from)?;
        let mut row = vec![
            bits.to_string(),
            fmt_value(spec.stepsize),
            fmt_value(spec.nmse),
            fmt_value(linear_to_db(1.0 - spec.nmse)),
            fmt_value((1.0 / spec.nmse).log2()),
        ];
        if let Some(samples) = verify {
            let estimate = estimate_nmse(bits, samples, seed).map_err(CliError::from)?;
            row.push(fmt_value(estimate));
        }
        table.push_row(row);
    }
    emit(&table, output)
}

fn cmd_fmap(mut flags: Flags, output: Option<PathBuf>) -> Result<(), CliError> {
    let bits: u8 = parse_num(
        &flags
            .take("b")
            .ok_or_else(|| CliError::Usage("fmap needs --b".into()))?,
        "resolution",
    )?;
    let points: usize = match flags.take("points") {
        Some(v) => parse_num(&v, "point count")?,
        None => 201,
    };
    flags.finish()?;
    if points < 3 {
        return Err(CliError::Usage("--points must be at least 3".into()));
    }
    let spec = AdcSpec::new(bits).map_err(CliError::from)?;
    let gain = 1.0 - spec.nmse;
    let map = CorrelationMap::new(Resolution::Bits(bits)).map_err(CliError::from)?;

    let mut table = OutputTable::new(&["phi", "f", "linear_approx"]);
    table.meta("tool", format!("fewbit {}", env!("CARGO_PKG_VERSION")));
    table.meta("command", "fmap");
    table.meta("b", bits);
    table.meta("output_gain", fmt_value(map.output_gain()));
    for k in 0..points {
        let phi = -1.0 + 2.0 * k as f64 / (points - 1) as f64;
        table.push_row(vec![
            fmt_value(phi),
            fmt_value(map.eval(phi)),
            fmt_value(gain * phi),
        ]);
    }
    emit(&table, output)
}

fn cmd_rate(mut flags: Flags, output: Option<PathBuf>) -> Result<(), CliError> {
    let scenario = flags
        .take("scenario")
        .ok_or_else(|| CliError::Usage("rate needs --scenario".into()))?;
    let resolution = parse_resolution(
        &flags
            .take("b")
            .ok_or_else(|| CliError::Usage("rate needs --b".into()))?,
    )
    .map_err(CliError::Usage)?;
    let nt: usize = parse_num(
        &flags
            .take("nt")
            .ok_or_else(|| CliError::Usage("rate needs --nt".into()))?,
        "antenna count",
    )?;
    let snr = parse_snr_spec(
        &flags
            .take("snr")
            .ok_or_else(|| CliError::Usage("rate needs --snr".into()))?,
    )
    .map_err(CliError::Usage)?;
    let fb: Option<u32> = match flags.take("B") {
        Some(v) => Some(parse_num(&v, "feedback bits")?),
        None => None,
    };

    match scenario.as_str() {
        "miso-multibit" => {
            flags.finish()?;
            let columns: Vec<&str> = if fb.is_some() {
                vec!["snr_db", "rate_csit", "rate_rvq_beta", "rate_rvq_lb"]
            } else {
                vec!["snr_db", "rate_csit"]
            };
            let mut table = OutputTable::new(&columns);
            table.meta("tool", format!("fewbit {}", env!("CARGO_PKG_VERSION")));
            table.meta("command", "rate miso-multibit");
            table.meta("nt", nt);
            table.meta("b", resolution);
            if let Some(b) = fb {
                table.meta("B", b);
            }
            for &snr_db in &snr {
                let gamma = db_to_linear(snr_db);
                let mut row = vec![
                    fmt_value(snr_db),
                    fmt_value(rate_miso_multibit(gamma, nt as f64, resolution)),
                ];
                if let Some(b) = fb {
                    row.push(fmt_value(
                        rate_miso_multibit_rvq_approx(gamma, nt, b, resolution)
                            .map_err(CliError::from)?,
                    ));
                    row.push(fmt_value(
                        rate_miso_multibit_rvq_bound(gamma, nt, b, resolution)
                            .map_err(CliError::from)?,
                    ));
                }
                table.push_row(row);
            }
            emit(&table, output)
        }
        "mu-bound" => {
            let users: usize = parse_num(
                &flags
                    .take("k")
                    .ok_or_else(|| CliError::Usage("mu-bound needs --k".into()))?,
                "user count",
            )?;
            let fb = fb.ok_or_else(|| CliError::Usage("mu-bound needs --B".into()))?;
            flags.finish()?;
            let mut table = OutputTable::new(&[
                "snr_db",
                "rate_zf_csit_ub",
                "rate_zf_fb_lb",
                "rate_loss_ub",
                "power_loss_db",
            ]);
            table.meta("tool", format!("fewbit {}", env!("CARGO_PKG_VERSION")));
            table.meta("command", "rate mu-bound");
            table.meta("nt", nt);
            table.meta("k", users);
            table.meta("b", resolution);
            table.meta("B", fb);
            let probe =
                bound_mu_rate_loss(resolution, fb, nt, users, 1.0).map_err(CliError::from)?;
            table.meta("c1", fmt_value(probe.c1));
            table.meta("c2", fmt_value(probe.c2));
            table.meta("high_snr_rate_loss", fmt_value(probe.high_snr_limit));
            let m = (nt - users + 1) as f64;
            for &snr_db in &snr {
                let rho = db_to_linear(snr_db) / users as f64;
                let loss =
                    bound_mu_rate_loss(resolution, fb, nt, users, rho).map_err(CliError::from)?;
                let csit = rate_miso_multibit(rho, m, resolution);
                table.push_row(vec![
                    fmt_value(snr_db),
                    fmt_value(csit),
                    fmt_value(csit - loss.rate_loss),
                    fmt_value(loss.rate_loss),
                    fmt_value(loss.low_snr_power_loss_db),
                ]);
            }
            emit(&table, output)
        }
        other => Err(CliError::Usage(format!(
            "unknown rate scenario `{other}` (expected miso-multibit or mu-bound)"
        ))),
    }
}

fn cmd_experiment(mut flags: Flags, output: Option<PathBuf>) -> Result<(), CliError> {
    let preset_name = flags.take("preset");
    let config_path = flags.take("config");
    let seed_override = flags.take("seed");
    let trials_override: Option<u32> = match flags.take("trials") {
        Some(v) => Some(parse_num(&v, "trial count")?),
        None => None,
    };
    flags.finish()?;

    let seed = match &seed_override {
        Some(v) => parse_num::<u64>(v, "seed")?,
        None => default_seed()?,
    };

    let mut curves: Vec<(String, ExperimentConfig)> = match (&preset_name, &config_path) {
        (Some(name), None) => {
            let p = preset(name).map_err(CliError::from)?;
            p.curves.into_iter().map(|c| (c.label, c.config)).collect()
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {path}: {e}")))?;
            let config = parse_config(&text, seed).map_err(CliError::from)?;
            vec![("sweep".to_string(), config)]
        }
        _ => {
            return Err(CliError::Usage(
                "experiment needs exactly one of --preset or --config".into(),
            ))
        }
    };
    for (_, config) in curves.iter_mut() {
        if preset_name.is_some() || seed_override.is_some() {
            config.seed = seed;
        }
        if let Some(t) = trials_override {
            config.trials = t;
        }
    }

    let mut table = OutputTable::new(&["curve", "snr_db", "mean_rate", "std_err", "trials"]);
    table.meta("tool", format!("fewbit {}", env!("CARGO_PKG_VERSION")));
    match (&preset_name, &config_path) {
        (Some(name), _) => table.meta("preset", name),
        (_, Some(path)) => table.meta("config", path),
        _ => unreachable!(),
    }
    table.meta("seed", seed);
    let mut body = Vec::new();
    let mut total_redraws = 0u64;
    for (label, config) in &curves {
        let result = run_sweep(config).map_err(CliError::from)?;
        table.meta(
            &format!("curve.{label}"),
            format!(
                "digest={:016x} trials={}",
                result.config_digest, config.trials
            ),
        );
        if result.zf_redraws > 0 {
            table.meta(&format!("zf_redraws.{label}"), result.zf_redraws);
        }
        total_redraws += result.zf_redraws;
        for row in &result.rows {
            body.push(vec![
                label.clone(),
                fmt_value(row.snr_db),
                fmt_value(row.mean_rate),
                fmt_value(row.std_err),
                row.trials.to_string(),
            ]);
        }
    }
    table.meta("zf_redraws_total", total_redraws);
    for row in body {
        table.push_row(row);
    }
    emit(&table, output)
}
