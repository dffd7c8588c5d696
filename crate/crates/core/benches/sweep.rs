use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use supercong::runner::{resolve_families, run, Format, RunConfig};
use supercong::sums::{sum_eval, Family, SumSpec, Weight};

fn sweep_config(jobs: usize) -> RunConfig {
    RunConfig {
        families: resolve_families("all").unwrap(),
        p_min: 5,
        p_max: 61,
        powers: vec![2],
        proof_steps: false,
        identities_n_max: 0,
        t_samples: 16,
        seed: 0,
        format: Format::Csv,
        fail_fast: false,
        jobs,
        stream: false,
    }
}

/// Full sweep with one worker against one worker per core. Built without
/// the `parallel` feature both run the same sequential path.
fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep_p_le_61");
    group.sample_size(10);
    for (label, jobs) in [("sequential", 1usize), ("parallel", 0)] {
        group.bench_with_input(BenchmarkId::from_parameter(label), &jobs, |b, &jobs| {
            b.iter(|| {
                let cfg = sweep_config(jobs);
                let mut sink = std::io::sink();
                assert!(run(&cfg, &mut sink).unwrap());
            })
        });
    }
    group.finish();
}

/// The hot kernel: one prime-power sum over ~p^2 terms.
fn bench_sum_kernel(c: &mut Criterion) {
    c.bench_function("central_squared_p97_a2", |b| {
        let pa = 97u64 * 97;
        let spec = SumSpec {
            family: Family::CentralSquared,
            weight: Weight::Unit,
            k_lo: 0,
            k_hi: 3 * pa / 4,
            p: 97,
            prec: 3,
        };
        b.iter(|| sum_eval(&spec))
    });
}

criterion_group!(benches, bench_sweep, bench_sum_kernel);
criterion_main!(benches);
