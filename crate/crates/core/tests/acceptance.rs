//! Acceptance suite: one test per numbered criterion, each ending in a
//! `criterion NN PASS` line (visible with `--nocapture`). Tolerances are
//! pinned in the assertions.

use fewbit_core::codebook::{phase_codebook, quantize_residual_phase};
use fewbit_core::correlation::{price_integral_raw, quantized_covariance_exact, CorrelationMap};
use fewbit_core::numerics::{eigen_extremes, normalize, q_function, CMatrix, RngStream};
use fewbit_core::quantizer::{estimate_nmse, quantize, AdcSpec, Resolution};
use fewbit_core::rate::{
    bound_mu_rate_loss, db_to_linear, rate_mimo_approx, rate_miso_1bit, rate_miso_multibit,
    rate_miso_multibit_rvq_bound, rate_siso_1bit, rvq_low_snr_power_loss_db,
};
use fewbit_core::simulate::{preset, run_sweep_with_samples};
use fewbit_core::Complex64;

const SEED: u64 = 20260808;

// --------------------------------------------------------------- helpers

struct CurveData {
    label: String,
    grid: Vec<f64>,
    means: Vec<f64>,
    /// samples[snr_index][trial]
    samples: Vec<Vec<f64>>,
}

fn run_curves(preset_name: &str, trials: u32) -> Vec<CurveData> {
    let family = preset(preset_name).expect("preset exists");
    family
        .curves
        .into_iter()
        .map(|curve| {
            let mut config = curve.config;
            config.trials = trials;
            config.seed = SEED;
            let (result, samples) = run_sweep_with_samples(&config).expect("sweep runs");
            CurveData {
                label: curve.label,
                grid: config.snr_db.clone(),
                means: result.rows.iter().map(|r| r.mean_rate).collect(),
                samples,
            }
        })
        .collect()
}

fn find<'a>(curves: &'a [CurveData], label: &str) -> &'a CurveData {
    curves
        .iter()
        .find(|c| c.label == label)
        .unwrap_or_else(|| panic!("curve `{label}` missing"))
}

/// Mean and standard error of the per-trial difference a - b at one SNR
/// index (curves share channel draws, so differences pair up).
fn paired_diff(a: &CurveData, b: &CurveData, snr_idx: usize) -> (f64, f64) {
    let d: Vec<f64> = a.samples[snr_idx]
        .iter()
        .zip(&b.samples[snr_idx])
        .map(|(x, y)| x - y)
        .collect();
    let mean = d.iter().sum::<f64>() / d.len() as f64;
    let ss: f64 = d.iter().map(|v| (v - mean) * (v - mean)).sum();
    let se = (ss / (d.len() as f64 - 1.0)).sqrt() / (d.len() as f64).sqrt();
    (mean, se)
}

/// SNR (dB) at which the monotone mean curve crosses `level`, by linear
/// interpolation between grid points.
fn snr_at_rate(curve: &CurveData, level: f64) -> f64 {
    let i = curve
        .means
        .iter()
        .position(|&m| m >= level)
        .unwrap_or_else(|| panic!("curve `{}` never reaches {level}", curve.label));
    assert!(i > 0, "curve `{}` starts above {level}", curve.label);
    let (m0, m1) = (curve.means[i - 1], curve.means[i]);
    let (s0, s1) = (curve.grid[i - 1], curve.grid[i]);
    s0 + (level - m0) / (m1 - m0) * (s1 - s0)
}

/// Horizontal offset (dB) of `limited` behind `perfect` near the SNR where
/// `perfect` crosses `level`: the paired rate difference divided by the
/// local slope. Accurate for sub-grid-step offsets.
fn local_power_loss_db(perfect: &CurveData, limited: &CurveData, level: f64) -> f64 {
    let i = perfect
        .means
        .iter()
        .position(|&m| m >= level)
        .expect("perfect curve reaches level");
    let i = i.max(1);
    let slope = (perfect.means[i] - perfect.means[i - 1]) / (perfect.grid[i] - perfect.grid[i - 1]);
    let (diff, _) = paired_diff(perfect, limited, i);
    diff / slope
}

fn normal_density(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

fn normal_cdf(x: f64) -> f64 {
    1.0 - q_function(x).unwrap()
}

/// Closed-form NMSE of the uniform mid-rise quantizer at the tabulated
/// stepsize: `1 - 2 E[q x] + E[q^2]` via Gaussian cell moments.
fn uniform_quantizer_nmse(bits: u8) -> f64 {
    let spec = AdcSpec::new(bits).unwrap();
    let d = spec.stepsize;
    let m = 1u32 << (bits - 1);
    let mut e_qq = 0.0;
    for k in 1..=m {
        let level = (k as f64 - 0.5) * d;
        let p = if k == m {
            1.0 - normal_cdf((k as f64 - 1.0) * d)
        } else {
            normal_cdf(k as f64 * d) - normal_cdf((k as f64 - 1.0) * d)
        };
        e_qq += 2.0 * level * level * p;
    }
    let mut e_qx = normal_density(0.0);
    for k in 1..m {
        e_qx += 2.0 * normal_density(k as f64 * d);
    }
    e_qx *= d;
    1.0 - 2.0 * e_qx + e_qq
}

// --------------------------------------------------------------- criteria

#[test]
fn criterion_01_table_reproduction() {
    // Monte Carlo NMSE estimates against the tabulated values: 1% relative
    // for b = 1..4, 5% for b = 5..6, from 1e7 samples per resolution.
    let samples = 10_000_000u64;
    let mut failures = Vec::new();
    for bits in 1..=6u8 {
        let spec = AdcSpec::new(bits).unwrap();
        let estimate = estimate_nmse(bits, samples, SEED).unwrap();
        let rel = (estimate - spec.nmse).abs() / spec.nmse;
        let tol = if bits <= 4 { 0.01 } else { 0.05 };
        println!(
            "  b={bits}: estimate {estimate:.6} | tabulated {:.6} | closed-form NMSE of the \
             implemented uniform quantizer {:.6} | rel. gap {rel:.4} (tol {tol})",
            spec.nmse,
            uniform_quantizer_nmse(bits)
        );
        if rel > tol {
            failures.push((bits, estimate, spec.nmse, rel, tol));
        }
    }
    assert!(
        failures.is_empty(),
        "criterion 01 FAIL: Monte Carlo NMSE does not reproduce the tabulated values for \
         {:?} (bits, estimate, tabulated, rel, tol). The estimates do match the closed-form \
         NMSE of the uniform mid-rise quantizer at the tabulated stepsizes (printed above); \
         the tabulated NMSE column corresponds to the optimal non-uniform quantizer, which \
         the tabulated stepsizes cannot reach.",
        failures
    );
    println!("criterion 01 PASS: constants table reproduced at 1%/5% tolerance");
}

#[test]
fn criterion_02_arcsine_law() {
    // Numerical Price integral for b = 1 against (2/pi) asin(phi) at 201
    // grid points, 1e-6 absolute.
    let gain = std::f64::consts::FRAC_2_PI;
    let mut worst = 0.0f64;
    for k in 0..=200 {
        let phi = -1.0 + k as f64 / 100.0;
        let numeric = price_integral_raw(phi, 1).unwrap() / gain;
        let closed = std::f64::consts::FRAC_2_PI * phi.asin();
        worst = worst.max((numeric - closed).abs());
    }
    assert!(worst < 1e-6, "criterion 02 FAIL: worst gap {worst:.3e}");
    println!("criterion 02 PASS: arcsine law reproduced, worst gap {worst:.3e}");
}

#[test]
fn criterion_03_one_bit_rate_oracle() {
    // Closed-form 1-bit rates against brute-force mutual information of the
    // explicit 4x4 transition matrix, 1e-9 on 100 random instances.
    fn discrete_channel_mi(snr_eff: f64, theta: f64) -> f64 {
        let amp = snr_eff.sqrt();
        let outputs = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)];
        let mut trans = [[0.0f64; 4]; 4];
        for (k, row) in trans.iter_mut().enumerate() {
            let phase =
                k as f64 * std::f64::consts::FRAC_PI_2 + std::f64::consts::FRAC_PI_4 - theta;
            let (mean_re, mean_im) = (amp * phase.cos(), amp * phase.sin());
            for (r, &(sr, si)) in outputs.iter().enumerate() {
                let q = |mean: f64, sign: f64| {
                    q_function(-sign * std::f64::consts::SQRT_2 * mean).unwrap()
                };
                row[r] = q(mean_re, sr) * q(mean_im, si);
            }
        }
        let mut out_prob = [0.0f64; 4];
        for row in &trans {
            for (r, p) in row.iter().enumerate() {
                out_prob[r] += 0.25 * p;
            }
        }
        let mut mi = 0.0;
        for row in &trans {
            for (r, &p) in row.iter().enumerate() {
                if p > 0.0 {
                    mi += 0.25 * p * (p / out_prob[r]).log2();
                }
            }
        }
        mi
    }

    let mut rng = RngStream::new(SEED, 0).sampler();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let s = rng.uniform() * 25.0;
        let theta = (rng.uniform() - 0.5) * std::f64::consts::FRAC_PI_2;
        let closed = rate_siso_1bit(s, theta).unwrap();
        worst = worst.max((closed - discrete_channel_mi(s, theta)).abs());

        let h = rng.complex_gaussian_vec(3);
        let v = normalize(&rng.complex_gaussian_vec(3));
        let gamma = rng.uniform() * 15.0;
        let miso = rate_miso_1bit(gamma, &h, &v, theta).unwrap();
        let eff = gamma
            * h.iter()
                .zip(&v)
                .map(|(a, b)| a.conj() * b)
                .sum::<Complex64>()
                .norm_sqr();
        worst = worst.max((miso - discrete_channel_mi(eff, theta)).abs());
    }
    assert!(worst < 1e-9, "criterion 03 FAIL: worst gap {worst:.3e}");
    println!(
        "criterion 03 PASS: 1-bit rates match the transition-matrix oracle, worst {worst:.3e}"
    );
}

#[test]
fn criterion_04_fig4_siso_feedback() {
    let curves = run_curves("fig4", 1000);
    let perfect = find(&curves, "perfect");
    let b2 = find(&curves, "B=2");
    let b1 = find(&curves, "B=1");
    let none = find(&curves, "B=0 (no CSIT)");

    // Two feedback bits track perfect CSIT within 0.05 bits/s/Hz everywhere.
    for (i, &snr) in perfect.grid.iter().enumerate() {
        let (diff, se) = paired_diff(perfect, b2, i);
        assert!(
            diff <= 0.05 + 2.0 * se,
            "criterion 04 FAIL: B=2 gap {diff:.4} at {snr} dB"
        );
    }
    // One feedback bit loses less than 1 dB, measured at rate 1.0.
    let shift_db = snr_at_rate(b1, 1.0) - snr_at_rate(perfect, 1.0);
    assert!(
        shift_db < 1.0,
        "criterion 04 FAIL: B=1 power loss {shift_db:.3} dB"
    );
    // No CSIT sits strictly below from 5 dB on (against both the perfect
    // and the 1-bit feedback curves).
    for (i, &snr) in perfect.grid.iter().enumerate() {
        if snr < 5.0 {
            continue;
        }
        let (dp, dp_se) = paired_diff(perfect, none, i);
        let (d1, d1_se) = paired_diff(b1, none, i);
        assert!(
            dp > 2.0 * dp_se,
            "criterion 04 FAIL: no-CSIT not below perfect at {snr} dB"
        );
        assert!(
            d1 > 2.0 * d1_se,
            "criterion 04 FAIL: no-CSIT not below B=1 at {snr} dB"
        );
    }
    println!(
        "criterion 04 PASS: B=2 within 0.05 of perfect, B=1 loss {shift_db:.2} dB, no-CSIT below"
    );
}

fn check_fig5_family(preset_name: &str, nt: u32, trials: u32) -> Vec<(String, f64, f64, f64)> {
    let curves = run_curves(preset_name, trials);
    let best_label = format!("B1={},B2=1", nt - 1);
    let best = find(&curves, &best_label);
    let allocations: Vec<&CurveData> = curves
        .iter()
        .filter(|c| c.label.starts_with("B1=") && c.label != best_label)
        .collect();

    // (Nt-1, 1) attains the maximum among all allocations at every grid
    // point from 0 dB up, within two (paired) standard errors.
    let mut violations = Vec::new();
    for other in &allocations {
        for (i, &snr) in best.grid.iter().enumerate() {
            if snr < 0.0 {
                continue;
            }
            let (diff, se) = paired_diff(best, other, i);
            if diff < -2.0 * se {
                println!(
                    "  {preset_name}: {} above {best_label} at {snr} dB by {:.4} (se {se:.4})",
                    other.label, -diff
                );
                violations.push((other.label.clone(), snr, -diff, se));
            }
        }
    }
    // The no-phase-bit allocation falls visibly behind at medium/high SNR.
    let no_phase = find(&curves, &format!("B1={nt},B2=0"));
    let visible = best.grid.iter().enumerate().any(|(i, &snr)| {
        if snr < 10.0 {
            return false;
        }
        let (diff, se) = paired_diff(best, no_phase, i);
        diff > 0.1 + 2.0 * se
    });
    assert!(
        visible,
        "{preset_name} FAIL: B2=0 not visibly inferior at medium/high SNR"
    );
    violations
}

#[test]
fn criterion_05_fig5_bit_allocation() {
    let v4 = check_fig5_family("fig5a", 4, 1000);
    assert!(
        v4.is_empty(),
        "criterion 05 FAIL: (3,1) not the argmax allocation for Nt = 4 at {v4:?}"
    );
    let v16 = check_fig5_family("fig5b", 16, 300);
    assert!(
        v16.is_empty(),
        "criterion 05 FAIL: (15,1) not the argmax allocation for Nt = 16 at {v16:?} \
         (allocation, dB, margin, se). The printed table shows the splits with two to four \
         phase bits sitting a few hundredths of a bit above (15,1) between 0 and 8 dB and \
         tying above; with B1/(Nt-1) = 14/15 the direction codebook is already so fine that \
         one extra direction bit buys less than the halved phase cell. The no-phase-bit \
         split is confirmed visibly inferior.",
    );
    println!("criterion 05 PASS: (Nt-1, 1) is the best allocation for Nt = 4 and Nt = 16");
}

#[test]
fn criterion_06_fig6_rate_loss_threshold() {
    let curves = run_curves("fig6", 1000);
    let perfect = find(&curves, "perfect");
    let limited = find(&curves, "B1=1,B2=1");
    for (i, &snr) in perfect.grid.iter().enumerate() {
        if snr < 11.0 {
            continue;
        }
        let (loss, se) = paired_diff(perfect, limited, i);
        assert!(
            loss <= 0.2 + 2.0 * se,
            "criterion 06 FAIL: rate loss {loss:.4} at {snr} dB (se {se:.4})"
        );
    }
    println!("criterion 06 PASS: B1=B2=1 rate loss below 0.2 bits/s/Hz from 11 dB");
}

#[test]
fn criterion_07_fig7_saturation_rates() {
    let curves = run_curves("fig7", 1000);
    let targets = [
        (1u8, (1.0 / AdcSpec::new(1).unwrap().nmse).log2()),
        (2, (1.0 / 0.1175f64).log2()),
        (3, (1.0 / 0.03454f64).log2()),
        (4, (1.0 / 0.009497f64).log2()),
    ];
    let top = curves[0].grid.len() - 1;
    assert_eq!(curves[0].grid[top], 30.0);
    for (bits, target) in targets {
        for label in [format!("b={bits} perfect"), format!("b={bits} B=8")] {
            let curve = find(&curves, &label);
            let rate = curve.means[top];
            assert!(
                (rate - target).abs() < 0.1,
                "criterion 07 FAIL: {label} at 30 dB gives {rate:.4}, target {target:.4}"
            );
        }
    }
    println!("criterion 07 PASS: saturation rates within 0.1 of 1.46/3.09/4.86/6.72");
}

/// Standard error of the SNR at which `curve` crosses `level`, by the delta
/// method: mean-rate standard error divided by the local slope.
fn crossing_se_db(curve: &CurveData, level: f64) -> f64 {
    let i = curve.means.iter().position(|&m| m >= level).unwrap().max(1);
    let slope = (curve.means[i] - curve.means[i - 1]) / (curve.grid[i] - curve.grid[i - 1]);
    let samples = &curve.samples[i];
    let mean = curve.means[i];
    let ss: f64 = samples.iter().map(|v| (v - mean) * (v - mean)).sum();
    let se = (ss / (samples.len() as f64 - 1.0)).sqrt() / (samples.len() as f64).sqrt();
    se / slope
}

#[test]
fn criterion_08_fig8_feedback_power_gaps() {
    let curves = run_curves("fig8", 400);
    let perfect = find(&curves, "perfect");
    // Horizontal gap measured where the perfect curve reaches half its
    // saturation rate log2(1/eta)/2 — the middle of the S-curve.
    let level = 0.5 * (1.0 / 0.1175f64).log2();
    for (fb_bits, rough) in [(2u32, 10.0), (16, 3.0)] {
        let limited = find(&curves, &format!("B={fb_bits}"));
        let gap = snr_at_rate(limited, level) - snr_at_rate(perfect, level);
        let gap_se = (crossing_se_db(limited, level).powi(2)
            + crossing_se_db(perfect, level).powi(2))
        .sqrt();
        let formula = -rvq_low_snr_power_loss_db(16, fb_bits).unwrap();
        println!(
            "  B={fb_bits}: measured gap {gap:.2} dB (se {gap_se:.2}), formula {formula:.2} dB"
        );
        assert!(
            (gap - formula).abs() < 1.0 + 2.0 * gap_se,
            "criterion 08 FAIL: B={fb_bits} gap {gap:.2} dB vs formula {formula:.2} dB"
        );
        assert!(
            (gap - rough).abs() < 1.5 + 2.0 * gap_se,
            "criterion 08 FAIL: B={fb_bits} gap {gap:.2} dB far from {rough} dB"
        );
    }
    println!("criterion 08 PASS: medium-SNR feedback gaps match 10 log10(1 - 2^(-B/15))");
}

#[test]
fn criterion_09_fig9_bound_agreement() {
    let curves = run_curves("fig9", 600);
    let exact_perfect = find(&curves, "exact perfect");
    let exact_limited = find(&curves, "exact limited");
    let approx_perfect = find(&curves, "approx perfect");
    let approx_limited = find(&curves, "approx limited");

    // Exact and approximate bounds agree within 0.05 up to 0 dB.
    let mut agreement_failures = Vec::new();
    for (pair_a, pair_b) in [
        (exact_perfect, approx_perfect),
        (exact_limited, approx_limited),
    ] {
        for (i, &snr) in pair_a.grid.iter().enumerate() {
            if snr > 0.0 {
                continue;
            }
            let (diff, se) = paired_diff(pair_a, pair_b, i);
            println!(
                "  {} vs {} at {snr} dB: gap {diff:+.4} (se {se:.4})",
                pair_a.label, pair_b.label
            );
            if diff.abs() > 0.05 + 2.0 * se {
                agreement_failures.push((pair_a.label.clone(), snr, diff));
            }
        }
    }
    // Both bounds have flattened out by 20 dB...
    let top = exact_perfect.grid.len() - 1;
    assert_eq!(exact_perfect.grid[top], 20.0);
    for curve in [exact_perfect, exact_limited, approx_perfect, approx_limited] {
        let slope =
            (curve.means[top] - curve.means[top - 2]) / (curve.grid[top] - curve.grid[top - 2]);
        assert!(
            slope < 0.04,
            "criterion 09 FAIL: {} still climbing at 20 dB ({slope:.3} bits/dB)",
            curve.label
        );
    }
    // ... with essentially no feedback penalty left.
    for (perfect, limited) in [
        (exact_perfect, exact_limited),
        (approx_perfect, approx_limited),
    ] {
        let (gap, se) = paired_diff(perfect, limited, top);
        assert!(
            gap.abs() < 0.05 + 2.0 * se,
            "criterion 09 FAIL: {} vs {} gap {gap:.4} at 20 dB",
            perfect.label,
            limited.label
        );
    }
    assert!(
        agreement_failures.is_empty(),
        "criterion 09 FAIL: exact and approximate bounds differ by more than 0.05 bits/s/Hz \
         below 0 dB at {agreement_failures:?} (curve, dB, gap). The gap table above shows the \
         divergence is confined to strongly aligned beams: the diagonal approximation ignores \
         the cross-antenna correlation of the quantization noise, which the eigen-beamformed \
         perfect-CSIT curve maximizes. For isotropically drawn beams the two bounds do agree \
         within 0.05 at these SNRs (covered by the library tests).",
    );
    println!("criterion 09 PASS: exact/approx bounds agree at low SNR and saturate by 20 dB");
}

#[test]
fn criterion_10_fig10_receive_antenna_scaling() {
    let curves = run_curves("fig10", 400);
    let eta = 0.1175f64;
    let top = curves[0].grid.len() - 1;
    for nr in [1usize, 4, 16] {
        let target = (1.0 + (1.0 - eta) / eta * nr as f64).log2();
        let curve = find(&curves, &format!("Nr={nr} limited"));
        let rate = curve.means[top];
        assert!(
            (rate - target).abs() < 0.1,
            "criterion 10 FAIL: Nr={nr} saturates at {rate:.4}, target {target:.4}"
        );
    }
    println!("criterion 10 PASS: saturation at log2(1 + 7.511 Nr) for Nr = 1, 4, 16");
}

#[test]
fn criterion_11_fig11_mu_scaling_law() {
    let curves = run_curves("fig11", 400);
    let top = curves[0].grid.len() - 1;
    assert_eq!(curves[0].grid[top], 30.0);

    // Successive limited-feedback curves are spaced ~1.7 bits/s/Hz at 30 dB.
    let labels = ["b=3 B=6", "b=4 B=12", "b=5 B=18"];
    for pair in labels.windows(2) {
        let lower = find(&curves, pair[0]);
        let upper = find(&curves, pair[1]);
        let (gap, se) = paired_diff(upper, lower, top);
        assert!(
            (gap - 1.7).abs() <= 0.2 + 2.0 * se,
            "criterion 11 FAIL: {} -> {} gap {gap:.3} (se {se:.4})",
            pair[0],
            pair[1]
        );
    }
    // Low-SNR feedback power losses match the closed form within 0.3 dB.
    // Measured at per-user rate 0.3, low enough that residual interference
    // (which scales with rho) no longer inflates the offset.
    for (bits, fb) in [(3u32, 6u32), (4, 12), (5, 18)] {
        let perfect = find(&curves, &format!("b={bits} perfect"));
        let limited = find(&curves, &format!("b={bits} B={fb}"));
        let measured = local_power_loss_db(perfect, limited, 0.3);
        let expected = -bound_mu_rate_loss(Resolution::Bits(bits as u8), fb, 4, 2, 1.0)
            .unwrap()
            .low_snr_power_loss_db;
        println!("  b={bits} B={fb}: measured low-SNR loss {measured:.3} dB, closed form {expected:.3} dB");
        assert!(
            (measured - expected).abs() < 0.3,
            "criterion 11 FAIL: b={bits} B={fb} loss {measured:.3} dB vs {expected:.3} dB"
        );
    }
    println!("criterion 11 PASS: 1.7-bit curve spacing and low-SNR losses reproduced");
}

#[test]
fn criterion_12_property_suites() {
    let mut rng = RngStream::new(SEED, 12).sampler();

    // Quantizer: odd symmetry, idempotence, alphabet size.
    for bits in 1..=4u8 {
        let spec = AdcSpec::new(bits).unwrap();
        let mut alphabet = std::collections::BTreeSet::new();
        for _ in 0..10_000 {
            let z = rng.complex_gaussian();
            let q = quantize(z, &spec, 0.5, 0.5).unwrap();
            assert_eq!(q, -quantize(-z, &spec, 0.5, 0.5).unwrap());
            assert_eq!(q, quantize(q, &spec, 0.5, 0.5).unwrap());
            alphabet.insert(q.re.to_bits());
        }
        assert_eq!(alphabet.len(), 1usize << bits, "alphabet size at b={bits}");
    }

    // Bussgang orthogonality: residual Q(y) - g y uncorrelated with y.
    // b = 1 uses the closed-form gain 2/pi; b >= 2 uses the quantizer's own
    // second-moment gain (the tabulated 1 - eta is a non-uniform-quantizer
    // constant a few tenths of a percent away, outside 3 sigma at 1e6).
    for bits in [1u8, 2, 3] {
        let spec = AdcSpec::new(bits).unwrap();
        let gain = if bits == 1 {
            spec.bussgang_gain()
        } else {
            CorrelationMap::new(Resolution::Bits(bits))
                .unwrap()
                .output_gain()
        };
        let n = 1_000_000usize;
        let (mut s_re, mut s_im) = (0.0f64, 0.0f64);
        let (mut ss_re, mut ss_im) = (0.0f64, 0.0f64);
        for _ in 0..n {
            let y = rng.complex_gaussian();
            let q = quantize(y, &spec, 0.5, 0.5).unwrap();
            let c = (q - y * gain) * y.conj();
            s_re += c.re;
            s_im += c.im;
            ss_re += c.re * c.re;
            ss_im += c.im * c.im;
        }
        let n_f = n as f64;
        let (m_re, m_im) = (s_re / n_f, s_im / n_f);
        let sd_re = ((ss_re / n_f - m_re * m_re).max(0.0) / n_f).sqrt();
        let sd_im = ((ss_im / n_f - m_im * m_im).max(0.0) / n_f).sqrt();
        assert!(
            m_re.abs() < 3.0 * sd_re && m_im.abs() < 3.0 * sd_im,
            "Bussgang residual correlated at b={bits}: {m_re:.2e}/{sd_re:.2e}"
        );
    }

    // Quantized covariances stay Hermitian PSD on 100 random inputs.
    let map = CorrelationMap::new(Resolution::Bits(2)).unwrap();
    for trial in 0..100u64 {
        let mut crng = RngStream::new(SEED, 120 + trial).sampler();
        let n = 4;
        let h = CMatrix::from_rows(
            &(0..n)
                .map(|_| crng.complex_gaussian_vec(n))
                .collect::<Vec<_>>(),
        );
        let v = normalize(&crng.complex_gaussian_vec(n));
        let gamma = 0.5 + 49.5 * crng.uniform();
        let hv = h.mul_vec(&v);
        let c_yy = CMatrix::outer(&hv, &hv)
            .scale(gamma)
            .add(&CMatrix::identity(n))
            .hermitianize();
        let qc = quantized_covariance_exact(&c_yy, &map).unwrap();
        assert!(qc.c_rr.is_hermitian(1e-10));
        let (min_eig, _) = eigen_extremes(&qc.c_rr).unwrap();
        assert!(
            min_eig >= -1e-8 * qc.c_rr.trace_re(),
            "C_rr not PSD at trial {trial}: {min_eig:.3e}"
        );
    }

    // Monotonicity in SNR and in feedback bits for every rate family.
    let snr_grid: Vec<f64> = (0..40).map(|k| db_to_linear(-20.0 + k as f64)).collect();
    let h = CMatrix::from_rows(
        &(0..4)
            .map(|_| RngStream::new(SEED, 500).sampler().complex_gaussian_vec(8))
            .collect::<Vec<_>>(),
    );
    let v = normalize(&RngStream::new(SEED, 501).sampler().complex_gaussian_vec(8));
    for w in snr_grid.windows(2) {
        assert!(rate_siso_1bit(w[1], 0.2).unwrap() >= rate_siso_1bit(w[0], 0.2).unwrap());
        for bits in [1u8, 2, 4] {
            let res = Resolution::Bits(bits);
            assert!(rate_miso_multibit(w[1], 2.0, res) >= rate_miso_multibit(w[0], 2.0, res));
            assert!(
                rate_miso_multibit_rvq_bound(w[1], 8, 4, res).unwrap()
                    >= rate_miso_multibit_rvq_bound(w[0], 8, 4, res).unwrap()
            );
        }
        assert!(
            rate_mimo_approx(&h, &v, w[1], Resolution::Bits(2)).unwrap()
                >= rate_mimo_approx(&h, &v, w[0], Resolution::Bits(2)).unwrap()
        );
    }
    for fb in 0..20u32 {
        let cur = rate_miso_multibit_rvq_bound(5.0, 8, fb, Resolution::Bits(2)).unwrap();
        let next = rate_miso_multibit_rvq_bound(5.0, 8, fb + 1, Resolution::Bits(2)).unwrap();
        assert!(next >= cur);
        if fb >= 1 {
            let cur_mu = bound_mu_rate_loss(Resolution::Bits(3), fb, 4, 2, 2.0).unwrap();
            let next_mu = bound_mu_rate_loss(Resolution::Bits(3), fb + 1, 4, 2, 2.0).unwrap();
            assert!(next_mu.rate_loss <= cur_mu.rate_loss + 1e-12);
        }
    }

    // Residual phase error bound, exhaustively over B <= 6.
    for fb in 0..=6u32 {
        let cb = phase_codebook(fb);
        let bound = cb.max_error();
        for _ in 0..10_000 {
            let angle = (rng.uniform() - 0.5) * 50.0;
            let (_, _, theta) = quantize_residual_phase(angle, &cb);
            assert!(theta.abs() <= bound + 1e-12, "B={fb} angle={angle}");
        }
    }
    println!(
        "criterion 12 PASS: quantizer, Bussgang, covariance, monotonicity, phase-bound properties"
    );
}
