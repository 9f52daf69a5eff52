use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qdent::ensemble::{haar_unitary, m_c3_quadrature, mc_chaotic_volume, McOptions, PolarGrid};
use qdent::exec::Backend;
use qdent::maxent::{pvm_dynamical_entropy, MaxEntOptions};

const BACKENDS: [(&str, Backend); 2] = [("sequential", Backend::Sequential), ("parallel", Backend::Parallel)];

fn monte_carlo(c: &mut Criterion) {
    let mut g = c.benchmark_group("mc_chaotic_volume_d3");
    g.sample_size(10);
    for (name, backend) in BACKENDS {
        let opts = McOptions { backend, ..McOptions::new(20_000, 7) };
        g.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, o| {
            b.iter(|| mc_chaotic_volume(3, o).unwrap())
        });
    }
    g.finish();
}

fn multistart(c: &mut Criterion) {
    let mut g = c.benchmark_group("maxent_multistart_d3");
    g.sample_size(10);
    // a generic non-chaotic sample runs all starts
    let u = haar_unitary(3, 11);
    for (name, backend) in BACKENDS {
        let opts = MaxEntOptions { backend, ..Default::default() };
        g.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, o| {
            b.iter(|| pvm_dynamical_entropy(&u, o).unwrap())
        });
    }
    g.finish();
}

fn quadrature(c: &mut Criterion) {
    let mut g = c.benchmark_group("m_c3_quadrature");
    g.sample_size(10);
    let grid = PolarGrid { r_points: 256, theta_points: 512 };
    for (name, backend) in BACKENDS {
        g.bench_with_input(BenchmarkId::from_parameter(name), &backend, |b, &be| {
            b.iter(|| m_c3_quadrature(&grid, be).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, monte_carlo, multistart, quadrature);
criterion_main!(benches);
