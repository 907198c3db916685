//! Monte Carlo sweep engine and preset experiments.
//!
//! A sweep runs `trials` independent channel realizations over an SNR grid.
//! Trial `t` draws everything random from `RngStream::new(seed, t)`
//! substreams, so results do not depend on evaluation order and all curves
//! of an experiment family share channel realizations (common random
//! numbers); the channel substream is also independent of the SNR grid.

use num_complex::Complex64;

use crate::codebook::{
    conjugate_beamformer, eigen_beamformer, phase_codebook, quantize_residual_phase, rvq_codebook,
    select_mimo, select_miso, zf_precoder,
};
use crate::correlation::CorrelationMap;
use crate::error::{Error, Result};
use crate::numerics::{inner, norm_sqr, CMatrix, RngStream};
use crate::quantizer::Resolution;
use crate::rate::{
    db_to_linear, rate_mimo_approx, rate_mimo_exact, rate_miso_multibit, rate_mu_zf, rate_siso_1bit,
};

/// Substream tags within one trial; attempts after a precoding failure
/// shift by `ATTEMPT_SPAN`.
const SUB_CHANNEL: u64 = 0;
const SUB_CODEBOOK: u64 = 1; // user k draws from SUB_CODEBOOK + k
const ATTEMPT_SPAN: u64 = 4096;
const MAX_ATTEMPTS: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    Siso1Bit,
    Miso1Bit,
    MisoMultibit,
    Mimo,
    MuMiso,
}

impl Scenario {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scenario::Siso1Bit => "siso_1bit",
            Scenario::Miso1Bit => "miso_1bit",
            Scenario::MisoMultibit => "miso_multibit",
            Scenario::Mimo => "mimo",
            Scenario::MuMiso => "mu_miso",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "siso_1bit" => Some(Scenario::Siso1Bit),
            "miso_1bit" => Some(Scenario::Miso1Bit),
            "miso_multibit" => Some(Scenario::MisoMultibit),
            "mimo" => Some(Scenario::Mimo),
            "mu_miso" => Some(Scenario::MuMiso),
            _ => None,
        }
    }
}

/// How the transmitter learns the channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CsitMode {
    Perfect,
    Limited,
    None,
}

impl CsitMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            CsitMode::Perfect => "perfect",
            CsitMode::Limited => "limited",
            CsitMode::None => "none",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "perfect" => Some(CsitMode::Perfect),
            "limited" => Some(CsitMode::Limited),
            "none" => Some(CsitMode::None),
            _ => None,
        }
    }
}

/// Which MIMO achievable-rate bound the sweep reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MimoBound {
    Exact,
    Approx,
}

impl MimoBound {
    pub fn as_str(&self) -> &'static str {
        match self {
            MimoBound::Exact => "exact",
            MimoBound::Approx => "approx",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "exact" => Some(MimoBound::Exact),
            "approx" => Some(MimoBound::Approx),
            _ => None,
        }
    }
}

pub const DEFAULT_TRIALS: u32 = 1000;
pub const DEFAULT_SEED: u64 = 1;

/// One Monte Carlo experiment: scenario, link dimensions, feedback budget,
/// SNR grid and reproducibility knobs.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub nt: usize,
    pub nr: usize,
    pub users: usize,
    pub resolution: Resolution,
    /// Channel-direction feedback bits (B, or B1 for 1-bit MISO).
    pub fb_direction: u32,
    /// Residual-phase feedback bits (B2; 1-bit scenarios only).
    pub fb_phase: u32,
    pub snr_db: Vec<f64>,
    pub trials: u32,
    pub seed: u64,
    pub csit: CsitMode,
    pub mimo_bound: MimoBound,
}

impl ExperimentConfig {
    /// A minimal valid config for the given scenario; callers adjust fields.
    pub fn new(scenario: Scenario) -> Self {
        let (nt, nr, users) = match scenario {
            Scenario::Siso1Bit => (1, 1, 1),
            Scenario::Miso1Bit | Scenario::MisoMultibit => (4, 1, 1),
            Scenario::Mimo => (4, 2, 1),
            Scenario::MuMiso => (4, 1, 2),
        };
        let resolution = match scenario {
            Scenario::Siso1Bit | Scenario::Miso1Bit => Resolution::Bits(1),
            _ => Resolution::Bits(2),
        };
        Self {
            scenario,
            nt,
            nr,
            users,
            resolution,
            fb_direction: 0,
            fb_phase: 0,
            snr_db: snr_grid(-10.0, 2.0, 20.0),
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            csit: CsitMode::Perfect,
            mimo_bound: MimoBound::Approx,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.snr_db.is_empty() {
            return Err(Error::Domain("SNR grid must be nonempty".into()));
        }
        if self.trials < 1 {
            return Err(Error::Domain("trials must be >= 1".into()));
        }
        if self.fb_direction > 24 || self.fb_phase > 24 {
            return Err(Error::Domain(
                "feedback budgets above 24 bits per codebook are not supported".into(),
            ));
        }
        match self.scenario {
            Scenario::Siso1Bit => {
                if self.nt != 1 || self.nr != 1 || self.users != 1 {
                    return Err(Error::Domain("siso_1bit requires Nt = Nr = K = 1".into()));
                }
                if self.resolution != Resolution::Bits(1) {
                    return Err(Error::Domain("siso_1bit requires b = 1".into()));
                }
            }
            Scenario::Miso1Bit => {
                if self.nt < 2 || self.nr != 1 || self.users != 1 {
                    return Err(Error::Domain(
                        "miso_1bit requires Nt >= 2, Nr = K = 1".into(),
                    ));
                }
                if self.resolution != Resolution::Bits(1) {
                    return Err(Error::Domain("miso_1bit requires b = 1".into()));
                }
            }
            Scenario::MisoMultibit => {
                if self.nt < 2 || self.nr != 1 || self.users != 1 {
                    return Err(Error::Domain(
                        "miso_multibit requires Nt >= 2, Nr = K = 1".into(),
                    ));
                }
            }
            Scenario::Mimo => {
                if self.nt < 2 || self.nr < 1 || self.users != 1 {
                    return Err(Error::Domain(
                        "mimo requires Nt >= 2, Nr >= 1, K = 1".into(),
                    ));
                }
            }
            Scenario::MuMiso => {
                if self.users < 2 || self.users > self.nt {
                    return Err(Error::Domain("mu_miso requires 2 <= K <= Nt".into()));
                }
                if self.nr != 1 {
                    return Err(Error::Domain("mu_miso receivers are single-antenna".into()));
                }
            }
        }
        if self.csit == CsitMode::None
            && !matches!(self.scenario, Scenario::Siso1Bit | Scenario::Miso1Bit)
        {
            return Err(Error::Domain(
                "csit = none is only defined for the 1-bit scenarios".into(),
            ));
        }
        Ok(())
    }

    /// FNV-1a digest of the canonical key=value form, for provenance lines.
    pub fn digest(&self) -> u64 {
        let mut hash = 0xcbf2_9ce4_8422_2325u64;
        for byte in self.canonical_string().bytes() {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(0x100_0000_01b3);
        }
        hash
    }

    /// Canonical key=value serialization (also the config-file format).
    pub fn canonical_string(&self) -> String {
        let grid = self
            .snr_db
            .iter()
            .map(|x| format!("{x}"))
            .collect::<Vec<_>>()
            .join(",");
        format!(
            "scenario={}\nnt={}\nnr={}\nk={}\nb={}\nB1={}\nB2={}\nsnr={}\ntrials={}\nseed={}\ncsit={}\nbound={}\n",
            self.scenario.as_str(),
            self.nt,
            self.nr,
            self.users,
            self.resolution,
            self.fb_direction,
            self.fb_phase,
            grid,
            self.trials,
            self.seed,
            self.csit.as_str(),
            self.mimo_bound.as_str(),
        )
    }
}

/// Inclusive SNR grid `start, start+step, ..., stop`.
pub fn snr_grid(start_db: f64, step_db: f64, stop_db: f64) -> Vec<f64> {
    assert!(step_db > 0.0 && stop_db >= start_db);
    let n = ((stop_db - start_db) / step_db).round() as usize;
    (0..=n).map(|k| start_db + k as f64 * step_db).collect()
}

/// Mean rate at one SNR point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub snr_db: f64,
    pub mean_rate: f64,
    pub std_err: f64,
    pub trials: u32,
}

/// Aggregated sweep output with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub seed: u64,
    pub config_digest: u64,
    /// Trials redrawn after a zero-forcing failure (expected 0 for
    /// continuous channel draws).
    pub zf_redraws: u64,
}

/// Everything one trial draws before seeing the SNR grid.
enum TrialDraw {
    /// Effective scalar gain |h^* v|^2 and residual phase error.
    OneBit { gain: f64, theta: f64 },
    /// Effective beamforming gain |h^* v|^2.
    Sqnr { gain: f64 },
    /// Channel rows and the beamformer candidate set.
    Mimo {
        h: CMatrix,
        candidates: Vec<Vec<Complex64>>,
    },
    /// True channel rows and zero-forcing beams.
    MuMiso {
        h: CMatrix,
        beams: Vec<Vec<Complex64>>,
    },
}

fn draw_channel_vector(stream: &RngStream, attempt: u64, nt: usize) -> Vec<Complex64> {
    stream
        .substream(attempt * ATTEMPT_SPAN + SUB_CHANNEL)
        .complex_gaussian_vec(nt)
}

fn draw_channel_matrix(stream: &RngStream, attempt: u64, rows: usize, cols: usize) -> CMatrix {
    let mut rng = stream.substream(attempt * ATTEMPT_SPAN + SUB_CHANNEL);
    CMatrix::from_rows(
        &(0..rows)
            .map(|_| rng.complex_gaussian_vec(cols))
            .collect::<Vec<_>>(),
    )
}

impl TrialDraw {
    fn draw(config: &ExperimentConfig, stream: &RngStream) -> Result<(Self, u64)> {
        match config.scenario {
            Scenario::Siso1Bit => {
                let h = draw_channel_vector(stream, 0, 1)[0];
                let theta = match config.csit {
                    CsitMode::Perfect => 0.0,
                    // B = 0 reduces to the fixed pilot phase pi/4, which is
                    // also the no-CSIT fallback.
                    CsitMode::Limited | CsitMode::None => {
                        let bits = if config.csit == CsitMode::None {
                            0
                        } else {
                            config.fb_phase
                        };
                        let cb = phase_codebook(bits);
                        quantize_residual_phase(h.arg(), &cb).2
                    }
                };
                Ok((
                    TrialDraw::OneBit {
                        gain: h.norm_sqr(),
                        theta,
                    },
                    0,
                ))
            }
            Scenario::Miso1Bit => {
                let h = draw_channel_vector(stream, 0, config.nt);
                let (eff, theta) = match config.csit {
                    CsitMode::Perfect => (inner(&h, &conjugate_beamformer(&h)?), 0.0),
                    CsitMode::Limited => {
                        let mut rng = stream.substream(SUB_CODEBOOK);
                        let cb = rvq_codebook(config.nt, config.fb_direction, &mut rng)?;
                        let idx = select_miso(&h, &cb)?;
                        let eff = inner(&h, cb.codeword(idx));
                        let pcb = phase_codebook(config.fb_phase);
                        let theta = quantize_residual_phase(eff.arg(), &pcb).2;
                        (eff, theta)
                    }
                    CsitMode::None => {
                        // Fixed beam e1 with the pilot phase pi/4.
                        let eff = h[0].conj();
                        let pcb = phase_codebook(0);
                        let theta = quantize_residual_phase(eff.arg(), &pcb).2;
                        (eff, theta)
                    }
                };
                Ok((
                    TrialDraw::OneBit {
                        gain: eff.norm_sqr(),
                        theta,
                    },
                    0,
                ))
            }
            Scenario::MisoMultibit => {
                let h = draw_channel_vector(stream, 0, config.nt);
                let gain = match config.csit {
                    CsitMode::Perfect => norm_sqr(&h),
                    CsitMode::Limited => {
                        let mut rng = stream.substream(SUB_CODEBOOK);
                        let cb = rvq_codebook(config.nt, config.fb_direction, &mut rng)?;
                        let idx = select_miso(&h, &cb)?;
                        inner(&h, cb.codeword(idx)).norm_sqr()
                    }
                    CsitMode::None => unreachable!("rejected by validate"),
                };
                Ok((TrialDraw::Sqnr { gain }, 0))
            }
            Scenario::Mimo => {
                let h = draw_channel_matrix(stream, 0, config.nr, config.nt);
                let mut rng = stream.substream(SUB_CODEBOOK);
                let cb = rvq_codebook(config.nt, config.fb_direction, &mut rng)?;
                let mut candidates = cb.codewords().to_vec();
                if config.csit == CsitMode::Perfect {
                    candidates.push(eigen_beamformer(&h)?);
                }
                Ok((TrialDraw::Mimo { h, candidates }, 0))
            }
            Scenario::MuMiso => {
                let mut redraws = 0u64;
                for attempt in 0..MAX_ATTEMPTS {
                    let h = draw_channel_matrix(stream, attempt, config.users, config.nt);
                    let hhat = match config.csit {
                        CsitMode::Perfect => h.clone(),
                        CsitMode::Limited => {
                            let mut rows = Vec::with_capacity(config.users);
                            for k in 0..config.users {
                                let mut rng = stream
                                    .substream(attempt * ATTEMPT_SPAN + SUB_CODEBOOK + k as u64);
                                let cb = rvq_codebook(config.nt, config.fb_direction, &mut rng)?;
                                // Row k holds h_k^*; select against h_k.
                                let h_k: Vec<Complex64> =
                                    h.row(k).iter().map(|z| z.conj()).collect();
                                let idx = select_miso(&h_k, &cb)?;
                                rows.push(
                                    cb.codeword(idx)
                                        .iter()
                                        .map(|z| z.conj())
                                        .collect::<Vec<_>>(),
                                );
                            }
                            CMatrix::from_rows(&rows)
                        }
                        CsitMode::None => unreachable!("rejected by validate"),
                    };
                    match zf_precoder(&hhat) {
                        Ok(beams) => return Ok((TrialDraw::MuMiso { h, beams }, redraws)),
                        Err(Error::PrecodingFailure(_)) => {
                            redraws += 1;
                            continue;
                        }
                        Err(e) => return Err(e),
                    }
                }
                Err(Error::PrecodingFailure(format!(
                    "zero forcing failed {MAX_ATTEMPTS} times in one trial"
                )))
            }
        }
    }
}

/// Per-sweep shared state (the correlation map is expensive to build).
struct SweepContext {
    map: Option<CorrelationMap>,
}

impl SweepContext {
    fn new(config: &ExperimentConfig) -> Result<Self> {
        let map = if config.scenario == Scenario::Mimo && config.mimo_bound == MimoBound::Exact {
            Some(CorrelationMap::new(config.resolution)?)
        } else {
            None
        };
        Ok(Self { map })
    }
}

fn eval_trial(
    config: &ExperimentConfig,
    ctx: &SweepContext,
    draw: &TrialDraw,
    snr_db: f64,
) -> Result<f64> {
    let gamma = db_to_linear(snr_db);
    match draw {
        TrialDraw::OneBit { gain, theta } => rate_siso_1bit(gamma * gain, *theta),
        TrialDraw::Sqnr { gain } => Ok(rate_miso_multibit(gamma, *gain, config.resolution)),
        TrialDraw::Mimo { h, candidates } => {
            let idx = select_mimo(h, candidates, gamma, config.resolution)?;
            let v = &candidates[idx];
            match config.mimo_bound {
                MimoBound::Exact => {
                    let map = ctx.map.as_ref().expect("exact bound requires a map");
                    rate_mimo_exact(h, v, gamma, map)
                }
                MimoBound::Approx => rate_mimo_approx(h, v, gamma, config.resolution),
            }
        }
        TrialDraw::MuMiso { h, beams } => {
            let rho = gamma / config.users as f64;
            Ok(rate_mu_zf(h, beams, rho, config.resolution)?.rate)
        }
    }
}

/// Rate of a single trial at one SNR point. Deterministic given
/// `(config.seed, trial_index, snr_db)`; the random draws do not depend on
/// `snr_db`, which is what makes curves over a grid comparable point by
/// point (common random numbers).
pub fn run_trial(config: &ExperimentConfig, snr_db: f64, trial_index: u64) -> Result<f64> {
    config.validate()?;
    let ctx = SweepContext::new(config)?;
    let stream = RngStream::new(config.seed, trial_index);
    let (draw, _) = TrialDraw::draw(config, &stream)?;
    eval_trial(config, &ctx, &draw, snr_db)
}

/// Run the full sweep and keep the per-trial samples:
/// `samples[snr_index][trial_index]`.
pub fn run_sweep_with_samples(config: &ExperimentConfig) -> Result<(SweepResult, Vec<Vec<f64>>)> {
    config.validate()?;
    let ctx = SweepContext::new(config)?;
    let grid = &config.snr_db;
    let mut samples = vec![Vec::with_capacity(config.trials as usize); grid.len()];
    let mut zf_redraws = 0u64;
    for trial in 0..config.trials as u64 {
        let stream = RngStream::new(config.seed, trial);
        let (draw, redraws) = TrialDraw::draw(config, &stream)?;
        zf_redraws += redraws;
        for (gi, &snr) in grid.iter().enumerate() {
            samples[gi].push(eval_trial(config, &ctx, &draw, snr)?);
        }
    }
    let rows = grid
        .iter()
        .zip(&samples)
        .map(|(&snr_db, vals)| {
            let mean = compensated_mean(vals);
            let std_err = if vals.len() > 1 {
                let ss: f64 = vals.iter().map(|v| (v - mean) * (v - mean)).sum();
                (ss / (vals.len() as f64 - 1.0)).sqrt() / (vals.len() as f64).sqrt()
            } else {
                0.0
            };
            SweepRow {
                snr_db,
                mean_rate: mean,
                std_err,
                trials: config.trials,
            }
        })
        .collect();
    Ok((
        SweepResult {
            rows,
            seed: config.seed,
            config_digest: config.digest(),
            zf_redraws,
        },
        samples,
    ))
}

/// Run the full sweep: mean rate and standard error per SNR point.
pub fn run_sweep(config: &ExperimentConfig) -> Result<SweepResult> {
    run_sweep_with_samples(config).map(|(result, _)| result)
}

/// Kahan-compensated mean in trial order, so the reported value is
/// independent of any internal evaluation parallelism.
fn compensated_mean(values: &[f64]) -> f64 {
    let mut acc = 0.0f64;
    let mut comp = 0.0f64;
    for &v in values {
        let y = v - comp;
        let t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    acc / values.len() as f64
}

/// One labelled curve of a preset experiment.
#[derive(Debug, Clone)]
pub struct Curve {
    pub label: String,
    pub config: ExperimentConfig,
}

/// A named experiment family reproducing one figure.
#[derive(Debug, Clone)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub curves: Vec<Curve>,
}

pub fn preset_names() -> &'static [&'static str] {
    &[
        "fig4", "fig5a", "fig5b", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11",
    ]
}

/// Build a preset experiment family by name (`fig4` .. `fig11`).
pub fn preset(name: &str) -> Result<Preset> {
    match name {
        "fig4" => {
            let base = {
                let mut c = ExperimentConfig::new(Scenario::Siso1Bit);
                c.snr_db = snr_grid(-10.0, 2.0, 20.0);
                c
            };
            let mut curves = vec![Curve {
                label: "perfect".into(),
                config: base.clone(),
            }];
            for b in [2u32, 1, 0] {
                let mut c = base.clone();
                c.csit = CsitMode::Limited;
                c.fb_phase = b;
                curves.push(Curve {
                    label: if b == 0 {
                        "B=0 (no CSIT)".into()
                    } else {
                        format!("B={b}")
                    },
                    config: c,
                });
            }
            Ok(Preset {
                name: "fig4",
                description: "1-bit SISO rate vs SNR: perfect CSIT, phase feedback, no CSIT",
                curves,
            })
        }
        "fig5a" | "fig5b" => {
            let nt = if name == "fig5a" { 4 } else { 16 };
            let base = {
                let mut c = ExperimentConfig::new(Scenario::Miso1Bit);
                c.nt = nt;
                c.snr_db = snr_grid(-10.0, 2.0, 20.0);
                c
            };
            let mut curves = vec![Curve {
                label: "perfect".into(),
                config: base.clone(),
            }];
            let total = nt as u32;
            for split in 0..5u32 {
                let (b1, b2) = (total - split, split);
                let mut c = base.clone();
                c.csit = CsitMode::Limited;
                c.fb_direction = b1;
                c.fb_phase = b2;
                curves.push(Curve {
                    label: format!("B1={b1},B2={b2}"),
                    config: c,
                });
            }
            let mut none = base.clone();
            none.csit = CsitMode::None;
            curves.push(Curve {
                label: "no CSIT".into(),
                config: none,
            });
            Ok(Preset {
                name: if name == "fig5a" { "fig5a" } else { "fig5b" },
                description: "1-bit MISO rate vs SNR for feedback-bit allocations (B = Nt)",
                curves,
            })
        }
        "fig6" => {
            let base = {
                let mut c = ExperimentConfig::new(Scenario::Miso1Bit);
                c.nt = 4;
                c.snr_db = snr_grid(-10.0, 3.0, 20.0);
                c
            };
            let mut curves = vec![Curve {
                label: "perfect".into(),
                config: base.clone(),
            }];
            for (b1, b2) in [(1u32, 1u32), (2, 2), (3, 1)] {
                let mut c = base.clone();
                c.csit = CsitMode::Limited;
                c.fb_direction = b1;
                c.fb_phase = b2;
                curves.push(Curve {
                    label: format!("B1={b1},B2={b2}"),
                    config: c,
                });
            }
            Ok(Preset {
                name: "fig6",
                description: "1-bit MISO rate loss vs SNR for several feedback splits (Nt = 4)",
                curves,
            })
        }
        "fig7" => {
            let base = {
                let mut c = ExperimentConfig::new(Scenario::MisoMultibit);
                c.nt = 16;
                c.snr_db = snr_grid(-10.0, 2.5, 30.0);
                c
            };
            let mut curves = Vec::new();
            for b in 1..=4u8 {
                let mut perfect = base.clone();
                perfect.resolution = Resolution::Bits(b);
                curves.push(Curve {
                    label: format!("b={b} perfect"),
                    config: perfect,
                });
                let mut limited = base.clone();
                limited.resolution = Resolution::Bits(b);
                limited.csit = CsitMode::Limited;
                limited.fb_direction = 8;
                curves.push(Curve {
                    label: format!("b={b} B=8"),
                    config: limited,
                });
            }
            Ok(Preset {
                name: "fig7",
                description: "Multi-bit MISO rate vs SNR, Nt = 16, B = 8, b = 1..4",
                curves,
            })
        }
        "fig8" => {
            let base = {
                let mut c = ExperimentConfig::new(Scenario::MisoMultibit);
                c.nt = 16;
                c.resolution = Resolution::Bits(2);
                c.snr_db = snr_grid(-20.0, 2.5, 30.0);
                c
            };
            let mut curves = Vec::new();
            for b in [0u32, 2, 4, 8, 16] {
                let mut c = base.clone();
                c.csit = CsitMode::Limited;
                c.fb_direction = b;
                curves.push(Curve {
                    label: if b == 0 {
                        "B=0 (no CSIT)".into()
                    } else {
                        format!("B={b}")
                    },
                    config: c,
                });
            }
            curves.push(Curve {
                label: "perfect".into(),
                config: base,
            });
            Ok(Preset {
                name: "fig8",
                description: "2-bit MISO rate vs SNR for feedback budgets B, Nt = 16",
                curves,
            })
        }
        "fig9" => {
            let base = {
                let mut c = ExperimentConfig::new(Scenario::Mimo);
                c.nt = 16;
                c.nr = 4;
                c.resolution = Resolution::Bits(2);
                c.fb_direction = 4;
                c.snr_db = snr_grid(-10.0, 2.5, 20.0);
                c
            };
            let mut curves = Vec::new();
            for bound in [MimoBound::Exact, MimoBound::Approx] {
                for csit in [CsitMode::Perfect, CsitMode::Limited] {
                    let mut c = base.clone();
                    c.mimo_bound = bound;
                    c.csit = csit;
                    curves.push(Curve {
                        label: format!("{} {}", bound.as_str(), csit.as_str()),
                        config: c,
                    });
                }
            }
            Ok(Preset {
                name: "fig9",
                description: "MIMO exact vs approximate bounds, Nt = 16, Nr = 4, b = 2, B = 4",
                curves,
            })
        }
        "fig10" => {
            let base = {
                let mut c = ExperimentConfig::new(Scenario::Mimo);
                c.nt = 16;
                c.resolution = Resolution::Bits(2);
                c.fb_direction = 4;
                c.mimo_bound = MimoBound::Approx;
                c.snr_db = snr_grid(-10.0, 5.0, 40.0);
                c
            };
            let mut curves = Vec::new();
            for nr in [1usize, 4, 16] {
                for csit in [CsitMode::Perfect, CsitMode::Limited] {
                    let mut c = base.clone();
                    c.nr = nr;
                    c.csit = csit;
                    curves.push(Curve {
                        label: format!("Nr={nr} {}", csit.as_str()),
                        config: c,
                    });
                }
            }
            Ok(Preset {
                name: "fig10",
                description: "MIMO rate vs SNR for Nr in {1, 4, 16}, Nt = 16, b = 2, B = 4",
                curves,
            })
        }
        "fig11" => {
            let base = {
                let mut c = ExperimentConfig::new(Scenario::MuMiso);
                c.nt = 4;
                c.users = 2;
                c.snr_db = snr_grid(-10.0, 2.5, 30.0);
                c
            };
            let mut curves = Vec::new();
            for (b, fb) in [(3u8, 6u32), (4, 12), (5, 18)] {
                let mut perfect = base.clone();
                perfect.resolution = Resolution::Bits(b);
                curves.push(Curve {
                    label: format!("b={b} perfect"),
                    config: perfect,
                });
                let mut limited = base.clone();
                limited.resolution = Resolution::Bits(b);
                limited.csit = CsitMode::Limited;
                limited.fb_direction = fb;
                curves.push(Curve {
                    label: format!("b={b} B={fb}"),
                    config: limited,
                });
            }
            Ok(Preset {
                name: "fig11",
                description: "Two-user ZF rates with B = 6b - 12, Nt = 4",
                curves,
            })
        }
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}
