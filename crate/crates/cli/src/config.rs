//! Flat key=value experiment config files.
//!
//! `#` starts a comment, keys are case-sensitive and mirror the experiment
//! fields, lists are comma-separated, and SNR grids also accept the
//! `start:step:stop` shorthand.
//!
//! ```text
//! scenario = miso_multibit
//! nt = 16
//! b = 2
//! B = 8
//! snr = -20:2.5:30
//! trials = 1000
//! csit = limited
//! ```

use fewbit_core::quantizer::Resolution;
use fewbit_core::simulate::{CsitMode, ExperimentConfig, MimoBound, Scenario};
use fewbit_core::Error;

/// Parse an SNR spec: either `start:step:stop` or a comma-separated list.
pub fn parse_snr_spec(spec: &str) -> Result<Vec<f64>, String> {
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected start:step:stop, got `{spec}`"));
        }
        let nums: Vec<f64> = parts
            .iter()
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| format!("bad number in `{spec}`: {e}"))?;
        let (start, step, stop) = (nums[0], nums[1], nums[2]);
        if !step.is_finite() || step <= 0.0 || stop < start {
            return Err(format!("need step > 0 and stop >= start in `{spec}`"));
        }
        Ok(fewbit_core::simulate::snr_grid(start, step, stop))
    } else {
        let grid: Vec<f64> = spec
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| format!("bad number in `{spec}`: {e}"))?;
        if grid.is_empty() {
            return Err("empty SNR list".into());
        }
        Ok(grid)
    }
}

/// Parse an ADC resolution: `1`..`8` or `inf`.
pub fn parse_resolution(spec: &str) -> Result<Resolution, String> {
    if spec == "inf" || spec == "infinite" {
        return Ok(Resolution::Infinite);
    }
    spec.parse::<u8>()
        .map_err(|e| format!("bad ADC resolution `{spec}`: {e}"))
        .map(Resolution::Bits)
}

/// Parse the config file body into an experiment description.
pub fn parse_config(text: &str, default_seed: u64) -> Result<ExperimentConfig, Error> {
    let fail = |line: usize, message: String| Error::Config { line, message };

    // First pass: find the scenario so defaults are right.
    let mut entries: Vec<(usize, String, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| fail(line_no, format!("expected key = value, got `{line}`")))?;
        entries.push((line_no, key.trim().to_string(), value.trim().to_string()));
    }
    let scenario = entries
        .iter()
        .find(|(_, k, _)| k == "scenario")
        .ok_or_else(|| fail(0, "missing required key `scenario`".into()))
        .and_then(|(line, _, v)| {
            Scenario::parse(v).ok_or_else(|| fail(*line, format!("unknown scenario `{v}`")))
        })?;

    let mut config = ExperimentConfig::new(scenario);
    config.seed = default_seed;
    for (line, key, value) in entries {
        let bad_num = |e: std::num::ParseIntError| fail(line, format!("`{key}`: {e}"));
        match key.as_str() {
            "scenario" => {}
            "nt" => config.nt = value.parse().map_err(bad_num)?,
            "nr" => config.nr = value.parse().map_err(bad_num)?,
            "k" => config.users = value.parse().map_err(bad_num)?,
            "b" => config.resolution = parse_resolution(&value).map_err(|m| fail(line, m))?,
            "B" => match scenario {
                Scenario::Siso1Bit => config.fb_phase = value.parse().map_err(bad_num)?,
                Scenario::Miso1Bit => {
                    return Err(fail(
                        line,
                        "miso_1bit splits feedback: use B1 (direction) and B2 (phase)".into(),
                    ))
                }
                _ => config.fb_direction = value.parse().map_err(bad_num)?,
            },
            "B1" => config.fb_direction = value.parse().map_err(bad_num)?,
            "B2" => config.fb_phase = value.parse().map_err(bad_num)?,
            "snr" => config.snr_db = parse_snr_spec(&value).map_err(|m| fail(line, m))?,
            "trials" => config.trials = value.parse().map_err(bad_num)?,
            "seed" => config.seed = value.parse().map_err(bad_num)?,
            "csit" => {
                config.csit = CsitMode::parse(&value)
                    .ok_or_else(|| fail(line, format!("unknown csit mode `{value}`")))?
            }
            "bound" => {
                config.mimo_bound = MimoBound::parse(&value)
                    .ok_or_else(|| fail(line, format!("unknown bound `{value}`")))?
            }
            other => return Err(fail(line, format!("unknown key `{other}`"))),
        }
    }
    config
        .validate()
        .map_err(|e| fail(0, format!("invalid experiment: {e}")))?;
    Ok(config)
}
