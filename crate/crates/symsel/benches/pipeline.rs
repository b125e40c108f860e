//! Pipeline benchmarks: the kernel hot loop and the full experiment
//! grid. With the `parallel` feature the grid is measured both on the
//! default rayon pool and pinned to one thread, which isolates the
//! gain from cell-level parallelism; without the feature only the
//! sequential path exists.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symsel::classify::{ClassifierConfig, ClassifierKind};
use symsel::dataset;
use symsel::experiment::{run_experiment, ExperimentConfig};
use symsel::interval::{ssk, Interval, IntervalVector};

fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> IntervalVector {
    (0..dim)
        .map(|_| {
            let lo: f64 = rng.gen_range(-10.0..10.0);
            let len: f64 = rng.gen_range(0.0..5.0);
            Interval::new(lo, lo + len).unwrap()
        })
        .collect()
}

fn bench_kernel(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pairs: Vec<(IntervalVector, IntervalVector)> = (0..256)
        .map(|_| (random_vector(&mut rng, 48), random_vector(&mut rng, 48)))
        .collect();
    c.bench_function("ssk_dim48_x256", |b| {
        b.iter(|| pairs.iter().map(|(a, v)| ssk(a, v).get()).sum::<f64>())
    });
}

fn grid() -> ExperimentConfig {
    ExperimentConfig {
        classifier: ClassifierConfig::new(ClassifierKind::C2),
        fractions: vec![0.3, 0.4, 0.5, 0.6, 0.7],
        k_values: vec![2, 3],
        repetitions: 4,
        seed: 7,
    }
}

fn bench_experiment(c: &mut Criterion) {
    let matrix = dataset::iris();
    let cfg = grid();
    let mut group = c.benchmark_group("experiment_iris");
    group.sample_size(20);

    #[cfg(feature = "parallel")]
    {
        group.bench_function("default_pool", |b| {
            b.iter_batched(
                || (),
                |()| run_experiment(&matrix, "iris", &cfg).unwrap(),
                BatchSize::SmallInput,
            )
        });
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .expect("pool");
        group.bench_function("single_thread_pool", |b| {
            b.iter_batched(
                || (),
                |()| single.install(|| run_experiment(&matrix, "iris", &cfg).unwrap()),
                BatchSize::SmallInput,
            )
        });
    }

    #[cfg(not(feature = "parallel"))]
    group.bench_function("sequential", |b| {
        b.iter_batched(
            || (),
            |()| run_experiment(&matrix, "iris", &cfg).unwrap(),
            BatchSize::SmallInput,
        )
    });

    group.finish();
}

criterion_group!(benches, bench_kernel, bench_experiment);
criterion_main!(benches);
