use criterion::{black_box, criterion_group, criterion_main, Criterion};

use fewbit_bench::{beam, channel};
use fewbit_core::correlation::CorrelationMap;
use fewbit_core::quantizer::Resolution;
use fewbit_core::rate::{rate_mimo_approx, rate_mimo_exact};
use fewbit_core::simulate::{run_trial, CsitMode, ExperimentConfig, Scenario};

fn bench_correlation_map(c: &mut Criterion) {
    let mut group = c.benchmark_group("correlation_map_build");
    for bits in [2u8, 4, 6] {
        group.bench_function(format!("b{bits}"), |b| {
            b.iter(|| CorrelationMap::new(Resolution::Bits(black_box(bits))).unwrap())
        });
    }
    group.finish();

    let map = CorrelationMap::new(Resolution::Bits(2)).unwrap();
    c.bench_function("correlation_map_eval", |b| {
        b.iter(|| map.eval(black_box(0.6789)))
    });
}

fn bench_mimo_rates(c: &mut Criterion) {
    let h = channel(4, 16, 7);
    let v = beam(16, 8);
    let map = CorrelationMap::new(Resolution::Bits(2)).unwrap();
    c.bench_function("rate_mimo_exact_4x16", |b| {
        b.iter(|| rate_mimo_exact(&h, &v, black_box(10.0), &map).unwrap())
    });
    c.bench_function("rate_mimo_approx_4x16", |b| {
        b.iter(|| rate_mimo_approx(&h, &v, black_box(10.0), Resolution::Bits(2)).unwrap())
    });
}

fn bench_trials(c: &mut Criterion) {
    let mut miso = ExperimentConfig::new(Scenario::MisoMultibit);
    miso.nt = 16;
    miso.csit = CsitMode::Limited;
    miso.fb_direction = 8;
    c.bench_function("trial_miso_multibit_b8", |b| {
        let mut t = 0u64;
        b.iter(|| {
            t += 1;
            run_trial(&miso, black_box(10.0), t).unwrap()
        })
    });

    let mut mu = ExperimentConfig::new(Scenario::MuMiso);
    mu.resolution = fewbit_core::quantizer::Resolution::Bits(3);
    mu.csit = CsitMode::Limited;
    mu.fb_direction = 6;
    c.bench_function("trial_mu_miso_zf_b6", |b| {
        let mut t = 0u64;
        b.iter(|| {
            t += 1;
            run_trial(&mu, black_box(10.0), t).unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_correlation_map,
    bench_mimo_rates,
    bench_trials
);
criterion_main!(benches);
