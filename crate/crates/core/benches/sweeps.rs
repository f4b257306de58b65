use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ordvar::finposet::{coinserter_universal_sweep, poset_bank};
use ordvar::monad::{check_monad_laws, WordMonad, WordOrder};
use ordvar::{Execution, Guards};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn universal_sweep(c: &mut Criterion) {
    let bank = poset_bank(3);
    let mut g = c.benchmark_group("coinserter-universal-bank3");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| coinserter_universal_sweep(&bank, &bank, mode))
        });
    }
    g.finish();
}

fn law_sweep(c: &mut Criterion) {
    let bank = poset_bank(3);
    let m = WordMonad::new(WordOrder::BottomUnit, 2);
    let mut g = c.benchmark_group("word-laws-bank3");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| check_monad_laws(&m, &bank, &Guards::default(), mode))
        });
    }
    g.finish();
}

criterion_group!(benches, universal_sweep, law_sweep);
criterion_main!(benches);
