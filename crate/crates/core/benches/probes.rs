use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hvir::algebra::axiom_report_with;
use hvir::probe::{module_axiom_check, simplicity_probe};
use hvir::{make_onedim, Exec, InducedModule, Scalar};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn axioms(c: &mut Criterion) {
    let mut g = c.benchmark_group("axioms");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 6), &6i64, |b, &w| {
            b.iter(|| black_box(axiom_report_with(w, exec)))
        });
    }
    g.finish();
}

fn simplicity(c: &mut Criterion) {
    let mut g = c.benchmark_group("simplicity_probe");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, 6), |b| {
            b.iter(|| {
                // Fresh module each iteration so the action cache starts cold.
                let m = InducedModule::new(make_onedim(
                    Scalar::one(),
                    Scalar::from_int(2),
                    Scalar::zero(),
                ));
                black_box(simplicity_probe(&m, 6, 50, 0, exec))
            })
        });
    }
    g.finish();
}

fn representation(c: &mut Criterion) {
    let mut g = c.benchmark_group("module_axiom_check");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, 4), |b| {
            b.iter(|| {
                let m = InducedModule::new(make_onedim(
                    Scalar::from_int(3),
                    Scalar::from_int(-1),
                    Scalar::one(),
                ));
                black_box(module_axiom_check(&m, 3, 4, 10, 0, exec))
            })
        });
    }
    g.finish();
}

criterion_group!(benches, axioms, simplicity, representation);
criterion_main!(benches);
