use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hypkonvex::mobius::rho_act_with;
use hypkonvex::verify::{case_rng, random, run_suite, Suite, SuiteConfig};
use hypkonvex::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn rho(c: &mut Criterion) {
    let mut group = c.benchmark_group("rho_act");
    for grid in [1024, 8192] {
        let mut rng = case_rng(0, Suite::Equivariance, 0);
        let h = random::random_band_limited(&mut rng, grid, 16, 1.5).unwrap();
        let m = random::random_mobius(&mut rng, 2.0);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, grid), &h, |b, h| b.iter(|| rho_act_with(&m, h, exec).unwrap()));
        }
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    for suite in [Suite::Minkowski, Suite::Encadrement, Suite::GramRank] {
        for (name, exec) in MODES {
            let cfg = SuiteConfig { exec, ..SuiteConfig::default() };
            group.bench_function(BenchmarkId::new(name, suite.name()), |b| b.iter(|| run_suite(suite, &cfg).unwrap()));
        }
    }
    group.finish();
}

criterion_group!(benches, rho, suites);
criterion_main!(benches);
