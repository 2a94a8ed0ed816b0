use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dwpf_core::checks::{random_instance, trial_rng};
use dwpf_core::numerics::{BigRational, Complex64};
use dwpf_core::{build_gamma_table, z_determinant, z_permanent, Scalar};

fn routes<T: Scalar>(c: &mut Criterion, label: &str, two_s: u32, sizes: &[usize], permanent_up_to: usize) {
    let mut group = c.benchmark_group(format!("{label}/2S={two_s}"));
    for &n in sizes {
        let (system, nu) = random_instance::<T>(two_s, n, &mut trial_rng(7, two_s, n, 0)).unwrap();
        group.bench_with_input(BenchmarkId::new("determinant", n), &n, |b, _| {
            b.iter(|| z_determinant(&system, &nu).unwrap())
        });
        if system.omega() <= permanent_up_to {
            group.bench_with_input(BenchmarkId::new("permanent", n), &n, |b, _| {
                b.iter(|| z_permanent(&system, &nu).unwrap())
            });
        }
    }
    group.finish();
}

fn exact(c: &mut Criterion) {
    routes::<BigRational>(c, "exact", 1, &[2, 4, 6, 8], 8);
    routes::<BigRational>(c, "exact", 3, &[2, 3, 4], 8);
}

fn float(c: &mut Criterion) {
    routes::<Complex64>(c, "f64", 2, &[4, 8, 12, 20, 40], 13);
}

fn gamma(c: &mut Criterion) {
    let mut group = c.benchmark_group("gamma-table");
    for two_s in [2u32, 4, 6] {
        let (system, nu) = random_instance::<BigRational>(two_s, 3, &mut trial_rng(8, two_s, 3, 0)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(two_s), &two_s, |b, _| {
            b.iter(|| build_gamma_table(&system, &nu).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, exact, float, gamma);
criterion_main!(benches);
