use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use colsym::matrix_ring::symmetrize_exec;
use colsym::selftest::{self, SelftestConfig};
use colsym::{random, Execution, RingShape};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn bench_symmetrize(c: &mut Criterion) {
    let mut group = c.benchmark_group("symmetrize");
    group.sample_size(10);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [5u32, 6, 7] {
        let shape = RingShape::new(3, n).unwrap();
        let p = random::admissible_poly(&mut rng, shape, 6);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &p, |b, p| {
                b.iter(|| symmetrize_exec(p, shape, n, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_selftest(c: &mut Criterion) {
    let mut group = c.benchmark_group("selftest");
    group.sample_size(10);
    let config = SelftestConfig {
        m: 3,
        n: 4,
        seed: 1,
        cases: 5,
    };
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| selftest::run(&config, exec)));
    }
    group.finish();
}

criterion_group!(benches, bench_symmetrize, bench_selftest);
criterion_main!(benches);
